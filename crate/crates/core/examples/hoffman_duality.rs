//! Hoffman duals of small indices, and the duality congruence for star polylogarithms.

use fpolylog::finite_polylogs::{check_hoffman_congruence, fsmp_star_tilde};
use fpolylog::Index;

fn main() -> fpolylog::Result<()> {
    for s in ["3", "1,2", "2,1,1", "1,1,1,1"] {
        let k: Index = s.parse()?;
        println!("({k})^∨ = ({})   reversed: ({})", k.hoffman_dual(), k.reverse());
    }

    let k: Index = "1,2".parse()?;
    let p = 7;
    println!("\n£~*_{{7,(1,2)}}(t) = {}", fsmp_star_tilde(p, &k)?);

    let mut checked = 0;
    for p in fpolylog::arith::odd_primes(3, 60) {
        for k in Index::up_to_weight(5) {
            assert!(check_hoffman_congruence(p, &k)?);
            checked += 1;
        }
    }
    println!("duality congruence holds in all {checked} cases with p < 60, weight <= 5");
    Ok(())
}
