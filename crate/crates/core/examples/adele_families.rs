//! Prime-indexed families and equality at all but finitely many primes.

use fpolylog::adele_ring::{check_family_identity, family_build, family_eq, FamilyIdentity, FamilyKind};
use fpolylog::etale_congruence::ZArg;

fn main() -> fpolylog::Result<()> {
    let fam = family_build(&FamilyKind::APolylog(2), 13)?;
    println!("£_A,2 on primes <= 13 (threshold {}):", fam.threshold);
    for (p, entry) in &fam.values {
        println!("  {p:>2}: {entry:?}");
    }

    let k = "1,2".parse()?;
    let lhs = family_build(&FamilyKind::AStar(k), 199)?;
    let rhs = family_build(&FamilyKind::KeyFnEqRhs("1,2".parse()?), 199)?;
    println!("\nfunctional equation as families: {:?}", family_eq(&lhs, &rhs)?);

    let z = ZArg::Rational { num: 32, den: 1 };
    let fam = check_family_identity(&FamilyIdentity::MainCongruence { m: 2, z }, 61)?;
    println!("\nmain congruence, m = 2, z = 32: holds above threshold: {}", fam.holds_in_a());
    for (p, reason) in fam.skipped() {
        println!("  skipped {p}: {reason}");
    }
    Ok(())
}
