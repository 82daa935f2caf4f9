//! The logarithm of w_{p,m}(z) against (m-1)! (1-ζ)^{p-m} £_{p,m}(z^{1/p}) / (z-1).

use fpolylog::etale_congruence::{Prepared, ZArg};
use fpolylog::padic_cyclotomic::CycRing;

fn main() -> fpolylog::Result<()> {
    let cases = [(5, 2, "32"), (7, 3, "-1"), (11, 4, "2^p"), (23, 6, "10^p"), (97, 8, "3^p")];
    println!("{:>4} {:>3} {:>6} {:>2}  required  main  via £*", "p", "m", "z", "j");
    for (p, m, z) in cases {
        let ring = CycRing::new(p, 3)?;
        let z: ZArg = z.parse()?;
        for j in 0..3 {
            let prep = Prepared::new(&ring, m, z, j)?;
            let main = prep.main_congruence()?;
            let fmp = prep.log_fmp()?;
            println!(
                "{p:>4} {m:>3} {:>6} {j:>2}  {:>8}  {:>4}  {:>5}",
                z.to_string(),
                main.modulus_exponent,
                main.observed.to_string(),
                fmp.observed.to_string()
            );
            assert!(main.passed && fmp.passed);
        }
    }
    Ok(())
}
