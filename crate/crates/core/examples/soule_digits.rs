//! π-adic digits of log w_{p,m}(-1)/(m-1)! and the leading-digit test.

use fpolylog::etale_congruence::check_soule_nonvanishing;
use fpolylog::finite_polylogs::is_regular;
use fpolylog::padic_cyclotomic::CycRing;

fn main() -> fpolylog::Result<()> {
    for (p, m) in [(7, 3), (11, 5), (37, 5), (37, 7), (31, 11), (97, 49)] {
        let rec = check_soule_nonvanishing(&CycRing::new(p, 3)?, m)?;
        println!(
            "p={p:<3} m={m:<3} regular={:<5} a_1=0: {:<5} a_(p-m)={:<3} expected={:<3} other digits nonzero: {}",
            is_regular(p)?,
            rec.a1_zero,
            rec.leading_digit,
            rec.expected_leading,
            rec.nonvanishing
        );
    }
    // (31, 11) and (97, 49) have 2^(m-1) = 1 mod p, which forces £_{p,m}(-1) = 0 mod p
    Ok(())
}
