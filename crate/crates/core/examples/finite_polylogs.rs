//! Finite polylogarithms mod p: values, Bernoulli congruences and the vanishing at 1/2.

use fpolylog::finite_polylogs::{
    bernoulli_polylog_sides, fmzv_star, fpl, fsmp_star, half_value, is_regular, new_fn_eq_rhs,
};
use fpolylog::Index;

fn main() -> fpolylog::Result<()> {
    println!("£_{{5,2}}(t) = {}", fpl(5, 2)?);
    let k: Index = "2,1".parse()?;
    println!("£*_{{11,(2,1)}}(t) = {}", fsmp_star(11, &k)?);
    println!("functional equation rhs agrees: {}", new_fn_eq_rhs(11, &k)? == fsmp_star(11, &k)?);
    println!("ζ*_13(1,2) = {}", fmzv_star(13, &"1,2".parse()?)?);

    println!("\n£_{{p,m}}(-1) vs (1-2^(m-1))/(2^(m-2) m) B_(p-m):");
    for (p, m) in [(7, 3), (11, 5), (37, 5), (59, 15)] {
        let (lhs, rhs) = bernoulli_polylog_sides(p, m)?;
        println!("  p={p:<3} m={m:<3} {:>3} {:>3}   regular: {}", lhs.value, rhs.value, is_regular(p)?);
    }

    println!("\n£*_{{p,(1,1,1,1)}}(1/2):");
    for p in [7, 11, 13, 101] {
        println!("  p={p:<4} {}", half_value(p, 4)?);
    }
    Ok(())
}
