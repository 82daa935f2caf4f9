//! Exact rational check of the binomial-weighted duality behind the mod-p functional equations.

use fpolylog::exact_identities::{check_dilcher, dilcher_lhs, dilcher_rhs};
use fpolylog::Index;

fn main() -> fpolylog::Result<()> {
    let k: Index = "2,1".parse()?;
    let lhs = dilcher_lhs(4, &k);
    println!("N=4, k=({k}):\n  lhs = {lhs}\n  rhs = {}", dilcher_rhs(4, &k));

    let mut n_checked = 0;
    for n in 1..=15 {
        for k in Index::up_to_weight(4) {
            assert!(check_dilcher(n, &k), "N={n} k=({k})");
            n_checked += 1;
        }
    }
    println!("identity holds for {n_checked} pairs with N <= 15, weight <= 4");
    Ok(())
}
