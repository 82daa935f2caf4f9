//! Arithmetic in Z_p[ζ_p] mod p^M: valuations, Teichmüller digits, log and exp.

use fpolylog::padic_cyclotomic::{pth_root_unit, CycRing, ZpValue};

fn main() -> fpolylog::Result<()> {
    let ring = CycRing::new(7, 3)?;
    let pi = ring.pi();
    println!("p = 7, M = 3: {} π-adic digits", ring.pi_precision());

    let p = ring.scalar(7);
    println!("v(7) = {}, v(π^3) = {}", p.v_pi(), pi.pow(3).v_pi());
    println!("(ζ-1)^6 + 7 has valuation {}", (&pi.pow(6) + &p).v_pi());

    let u = &ring.one() - &ring.zeta_pow(2).scale(3);
    let digits = u.pi_digits(10)?;
    println!("digits of 1 - 3ζ^2: {:?} (from index {})", digits.digits, digits.start);

    let log = u.plog()?;
    println!("v(log(1 - 3ζ^2)) = {}", log.v_pi());
    let v = &ring.one() + &pi.pow(3);
    println!("exp(log(1 + π^3)) == 1 + π^3: {}", v.plog()?.pexp()? == v);

    let z = ZpValue::new(5, 4, 32);
    println!("\n5-adic 5th root of 32: {:?}", pth_root_unit(z)?.map(|r| r.value));
    println!("5-adic 5th root of 3: {:?}", pth_root_unit(ZpValue::new(5, 4, 3))?);
    Ok(())
}
