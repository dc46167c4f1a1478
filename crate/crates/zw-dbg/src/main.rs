use zw_core::highprec::*;
use zw_core::gamma::*;
fn main() {
    let z = Real::from_i64(1).div(&Real::from_i64(3), 256);
    match reflection_defect(&z, 192) {
        Ok(d) => println!("defect 1/3 log2: {:.1}", d.abs_up().log2()),
        Err(e) => println!("defect err: {}", e),
    }
    let x = Real::one().sub(&z, 232);
    match gamma_real(&x, 232) {
        Ok(g) => println!("G(2/3) rel err 2^{:.1}", g.error_bound().log2() - g.abs_low().log2()),
        Err(e) => println!("G(2/3) err: {}", e),
    }
}
