//! Data-parallel map with a sequential fallback. `jobs = 1` forces the
//! sequential path; `jobs = 0` uses the global thread pool; any other value
//! bounds a scoped pool. Output order is the input order in every mode.

#[cfg(feature = "parallel")]
pub fn par_map<T, U, F>(items: Vec<T>, jobs: usize, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    use rayon::prelude::*;
    if jobs == 1 || items.len() <= 1 {
        return items.into_iter().map(f).collect();
    }
    if jobs == 0 {
        return items.into_par_iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.into_par_iter().map(f).collect()),
        Err(_) => items.into_iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, U, F>(items: Vec<T>, _jobs: usize, f: F) -> Vec<U>
where
    F: Fn(T) -> U,
{
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preserves_order() {
        let v: Vec<i64> = (0..100).collect();
        let out = par_map(v.clone(), 0, |x| x * x);
        assert_eq!(out, v.iter().map(|x| x * x).collect::<Vec<_>>());
        let out = par_map(v.clone(), 1, |x| x * x);
        assert_eq!(out.len(), 100);
        let out = par_map(v, 3, |x| x + 1);
        assert_eq!(out[99], 100);
    }
}
