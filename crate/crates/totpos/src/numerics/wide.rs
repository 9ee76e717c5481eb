//! Opt-in extended-precision floats (192-bit significand) for near-degenerate
//! witnesses. Thin wrapper around `astro_float::BigFloat` with a fixed
//! precision and rounding mode so arithmetic stays deterministic.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, RoundingMode};
use num::BigRational;

pub const WIDE_PRECISION: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

#[derive(Clone, Debug)]
pub struct Wide(pub BigFloat);

impl Wide {
    pub fn from_f64(v: f64) -> Self {
        Wide(BigFloat::from_f64(v, WIDE_PRECISION))
    }

    pub fn from_i64(v: i64) -> Self {
        Wide(BigFloat::from_i64(v, WIDE_PRECISION))
    }

    /// Exact conversion up to the working precision.
    pub fn from_rational(r: &BigRational) -> Self {
        let num = Wide::from_bigint_str(&r.numer().to_string());
        let den = Wide::from_bigint_str(&r.denom().to_string());
        num.div(&den)
    }

    fn from_bigint_str(s: &str) -> Self {
        CONSTS.with(|c| {
            let mut cc = c.borrow_mut();
            Wide(BigFloat::parse(s, astro_float::Radix::Dec, WIDE_PRECISION, RM, &mut cc))
        })
    }

    pub fn to_f64(&self) -> f64 {
        // BigFloat -> f64 via formatting would lose the sign of tiny values;
        // use the dedicated conversion.
        let mut v = self.0.clone();
        v.set_precision(64, RM).ok();
        format!("{}", v).parse::<f64>().unwrap_or(f64::NAN)
    }

    pub fn zero() -> Self {
        Wide(BigFloat::from_i64(0, WIDE_PRECISION))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn add(&self, rhs: &Wide) -> Wide {
        Wide(self.0.add(&rhs.0, WIDE_PRECISION, RM))
    }
    pub fn sub(&self, rhs: &Wide) -> Wide {
        Wide(self.0.sub(&rhs.0, WIDE_PRECISION, RM))
    }
    pub fn mul(&self, rhs: &Wide) -> Wide {
        Wide(self.0.mul(&rhs.0, WIDE_PRECISION, RM))
    }
    pub fn div(&self, rhs: &Wide) -> Wide {
        Wide(self.0.div(&rhs.0, WIDE_PRECISION, RM))
    }
    pub fn neg(&self) -> Wide {
        Wide(self.0.neg())
    }
    pub fn abs(&self) -> Wide {
        Wide(self.0.abs())
    }

    pub fn exp(&self) -> Wide {
        CONSTS.with(|c| Wide(self.0.exp(WIDE_PRECISION, RM, &mut c.borrow_mut())))
    }
    pub fn ln(&self) -> Wide {
        CONSTS.with(|c| Wide(self.0.ln(WIDE_PRECISION, RM, &mut c.borrow_mut())))
    }
    pub fn cos(&self) -> Wide {
        CONSTS.with(|c| Wide(self.0.cos(WIDE_PRECISION, RM, &mut c.borrow_mut())))
    }
    pub fn tan(&self) -> Wide {
        CONSTS.with(|c| Wide(self.0.tan(WIDE_PRECISION, RM, &mut c.borrow_mut())))
    }
    pub fn atan(&self) -> Wide {
        CONSTS.with(|c| Wide(self.0.atan(WIDE_PRECISION, RM, &mut c.borrow_mut())))
    }
    pub fn sqrt(&self) -> Wide {
        Wide(self.0.sqrt(WIDE_PRECISION, RM))
    }

    /// Real power with positive base: `self^e = exp(e ln self)`.
    pub fn powf(&self, e: &Wide) -> Wide {
        CONSTS.with(|c| Wide(self.0.pow(&e.0, WIDE_PRECISION, RM, &mut c.borrow_mut())))
    }

    pub fn cmp(&self, rhs: &Wide) -> Ordering {
        self.0.partial_cmp(&rhs.0).unwrap_or(Ordering::Equal)
    }
}

impl PartialEq for Wide {
    fn eq(&self, rhs: &Wide) -> bool {
        self.cmp(rhs) == Ordering::Equal
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_arithmetic() {
        let a = Wide::from_f64(1.5);
        let b = Wide::from_f64(2.25);
        assert_eq!(a.mul(&b).to_f64(), 3.375);
        assert!(Wide::from_f64(-0.5).is_negative());
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(1.into(), 3.into());
        let w = Wide::from_rational(&r);
        assert!((w.to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn elementary_functions() {
        let x = Wide::from_f64(1.0);
        assert!((x.exp().to_f64() - std::f64::consts::E).abs() < 1e-15);
        assert!((x.atan().to_f64() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
    }
}
