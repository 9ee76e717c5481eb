//! Three-level scalar tower used throughout the checkers.
//!
//! `Exact` carries arbitrary-precision rationals (for kernels and sample
//! points that stay rational), `Float` is plain f64, and `Wide` is the
//! 192-bit float used to re-examine verdicts that land inside the float
//! zero band. Mixed arithmetic promotes: Exact+Exact stays exact, anything
//! touching Float becomes Float, Exact+Wide becomes Wide.

use std::cmp::Ordering;
use std::fmt;

use num::{BigRational, Signed, ToPrimitive, Zero};

use super::wide::Wide;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
    Wide(Wide),
}

/// Evaluation mode requested on the command line / config.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
    Extended,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Float => write!(f, "float"),
            Mode::Extended => write!(f, "extended"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            "extended" => Ok(Mode::Extended),
            other => Err(Error::usage(format!("unknown mode `{other}` (expected exact|float|extended)"))),
        }
    }
}

impl Scalar {
    pub fn from_int(v: i64) -> Scalar {
        Scalar::Exact(BigRational::from_integer(v.into()))
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::Exact(BigRational::new(n.into(), d.into()))
    }

    pub fn zero_in(mode: Mode) -> Scalar {
        match mode {
            Mode::Exact => Scalar::from_int(0),
            Mode::Float => Scalar::Float(0.0),
            Mode::Extended => Scalar::Wide(Wide::zero()),
        }
    }

    pub fn one_in(mode: Mode) -> Scalar {
        match mode {
            Mode::Exact => Scalar::from_int(1),
            Mode::Float => Scalar::Float(1.0),
            Mode::Extended => Scalar::Wide(Wide::from_i64(1)),
        }
    }

    /// An f64 constant carried in the same representation as `self`
    /// (exact inputs demote to float: the constant is already inexact).
    pub fn float_like(&self, v: f64) -> Scalar {
        match self {
            Scalar::Wide(_) => Scalar::Wide(Wide::from_f64(v)),
            _ => Scalar::Float(v),
        }
    }

    /// Zero carrying the same representation as `self`.
    pub fn zero_like(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => Scalar::from_int(0),
            Scalar::Float(_) => Scalar::Float(0.0),
            Scalar::Wide(_) => Scalar::Wide(Wide::zero()),
        }
    }

    pub fn one_like(&self) -> Scalar {
        match self {
            Scalar::Exact(_) => Scalar::from_int(1),
            Scalar::Float(_) => Scalar::Float(1.0),
            Scalar::Wide(_) => Scalar::Wide(Wide::from_i64(1)),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => r.to_f64().unwrap_or_else(|| {
                // Fall back to a dual-BigInt division for huge rationals.
                let n = r.numer().to_f64().unwrap_or(f64::NAN);
                let d = r.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }),
            Scalar::Float(v) => *v,
            Scalar::Wide(w) => w.to_f64(),
        }
    }

    pub fn to_wide(&self) -> Wide {
        match self {
            Scalar::Exact(r) => Wide::from_rational(r),
            Scalar::Float(v) => Wide::from_f64(*v),
            Scalar::Wide(w) => w.clone(),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            _ => None,
        }
    }

    /// Reinterpret in the given mode (exact values demote losslessly to wide,
    /// lossily to float; float cannot promote to exact).
    pub fn in_mode(&self, mode: Mode) -> Result<Scalar> {
        Ok(match (self, mode) {
            (Scalar::Exact(r), Mode::Exact) => Scalar::Exact(r.clone()),
            (s, Mode::Float) => Scalar::Float(s.to_f64()),
            (s, Mode::Extended) => Scalar::Wide(s.to_wide()),
            (Scalar::Float(_) | Scalar::Wide(_), Mode::Exact) => {
                return Err(Error::domain("cannot promote an inexact value to exact mode"))
            }
        })
    }

    fn binop(
        &self,
        rhs: &Scalar,
        fe: impl Fn(&BigRational, &BigRational) -> BigRational,
        ff: impl Fn(f64, f64) -> f64,
        fw: impl Fn(&Wide, &Wide) -> Wide,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(fe(a, b)),
            (Scalar::Float(_), _) | (_, Scalar::Float(_)) => Scalar::Float(ff(self.to_f64(), rhs.to_f64())),
            _ => Scalar::Wide(fw(&self.to_wide(), &rhs.to_wide())),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a + b, |a, b| a + b, Wide::add)
    }
    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a - b, |a, b| a - b, Wide::sub)
    }
    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a * b, |a, b| a * b, Wide::mul)
    }
    pub fn div(&self, rhs: &Scalar) -> Scalar {
        self.binop(rhs, |a, b| a / b, |a, b| a / b, Wide::div)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(-r),
            Scalar::Float(v) => Scalar::Float(-v),
            Scalar::Wide(w) => Scalar::Wide(w.neg()),
        }
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(r.abs()),
            Scalar::Float(v) => Scalar::Float(v.abs()),
            Scalar::Wide(w) => Scalar::Wide(w.abs()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Float(v) => *v == 0.0,
            Scalar::Wide(w) => w.is_zero(),
        }
    }

    pub fn cmp_zero(&self) -> Ordering {
        match self {
            Scalar::Exact(r) => r.numer().sign().into_ordering(),
            Scalar::Float(v) => v.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
            Scalar::Wide(w) => {
                if w.is_zero() {
                    Ordering::Equal
                } else if w.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn cmp(&self, rhs: &Scalar) -> Ordering {
        self.sub(rhs).cmp_zero()
    }

    fn unary(&self, ff: impl Fn(f64) -> f64, fw: impl Fn(&Wide) -> Wide) -> Scalar {
        match self {
            Scalar::Wide(w) => Scalar::Wide(fw(w)),
            s => Scalar::Float(ff(s.to_f64())),
        }
    }

    /// Transcendentals demote exact rationals to float; wide inputs stay
    /// wide so near-degenerate witnesses can be re-examined at 192 bits.
    pub fn exp(&self) -> Scalar {
        self.unary(f64::exp, Wide::exp)
    }
    pub fn cos(&self) -> Scalar {
        self.unary(f64::cos, Wide::cos)
    }
    pub fn tan(&self) -> Scalar {
        self.unary(f64::tan, Wide::tan)
    }
    pub fn atan(&self) -> Scalar {
        self.unary(f64::atan, Wide::atan)
    }
    pub fn sqrt(&self) -> Scalar {
        self.unary(f64::sqrt, Wide::sqrt)
    }

    /// Integer power, exact when the base is exact.
    pub fn powi(&self, e: u32) -> Scalar {
        let mut acc = match self {
            Scalar::Exact(_) => Scalar::from_int(1),
            Scalar::Float(_) => Scalar::Float(1.0),
            Scalar::Wide(_) => Scalar::Wide(Wide::from_i64(1)),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Real power `self^alpha` for nonnegative base; the result is exact
    /// only when `alpha` is a nonnegative integer and the base is exact
    /// (with the convention 0^0 = 0 handled by callers that need it).
    pub fn powf(&self, alpha: f64) -> Result<Scalar> {
        if alpha.fract() == 0.0 && alpha >= 0.0 && alpha <= u32::MAX as f64 {
            return Ok(self.powi(alpha as u32));
        }
        match self.cmp_zero() {
            Ordering::Less => Err(Error::domain(format!(
                "fractional power {alpha} of a negative value"
            ))),
            Ordering::Equal => Ok(match self {
                Scalar::Wide(_) => Scalar::Wide(Wide::zero()),
                _ => Scalar::Float(0.0),
            }),
            Ordering::Greater => Ok(match self {
                Scalar::Wide(w) => Scalar::Wide(w.powf(&Wide::from_f64(alpha))),
                s => Scalar::Float(s.to_f64().powf(alpha)),
            }),
        }
    }
}

// JSON form: exact rationals as "num/den" strings (lossless round trip),
// floats as plain numbers. Wide values serialize through f64 — reports only
// need them at display precision.
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Exact(r) => ser.serialize_str(&format!("{}/{}", r.numer(), r.denom())),
            s => ser.serialize_f64(s.to_f64()),
        }
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Scalar, D::Error> {
        use serde::de::Error as _;
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Rat(String),
        }
        match Repr::deserialize(de)? {
            Repr::Num(v) => Ok(Scalar::Float(v)),
            Repr::Rat(s) => {
                let (n, d) = s.split_once('/').unwrap_or((s.as_str(), "1"));
                let n: num::BigInt = n.parse().map_err(D::Error::custom)?;
                let d: num::BigInt = d.parse().map_err(D::Error::custom)?;
                if d.is_zero() {
                    return Err(D::Error::custom("zero denominator"));
                }
                Ok(Scalar::Exact(BigRational::new(n, d)))
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, rhs: &Scalar) -> bool {
        self.cmp(rhs) == Ordering::Equal
    }
}

trait SignExt {
    fn into_ordering(self) -> Ordering;
}
impl SignExt for num::bigint::Sign {
    fn into_ordering(self) -> Ordering {
        match self {
            num::bigint::Sign::Minus => Ordering::Less,
            num::bigint::Sign::NoSign => Ordering::Equal,
            num::bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

/// Three-valued sign with an explicit zero band for inexact arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign3 {
    Negative,
    Zero,
    Positive,
}

impl Sign3 {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign3::Negative => -1,
            Sign3::Zero => 0,
            Sign3::Positive => 1,
        }
    }
}

/// Tolerances for classifying inexact values as zero/positive/negative.
/// `magnitude` passed to [`sign3`] should estimate the scale of the
/// computation that produced the value (e.g. the pivot-magnitude product of
/// an LU factorization), so that heavily cancelled determinants near zero
/// are flagged as Zero rather than given a spurious sign.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct ToleranceProfile {
    pub abs_eps: f64,
    pub rel_eps: f64,
    pub zero_band: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile {
            abs_eps: 1e-12,
            rel_eps: 1e-9,
            zero_band: 1e-9,
        }
    }
}

impl ToleranceProfile {
    pub fn sign3(&self, value: &Scalar, magnitude: f64) -> Sign3 {
        match value {
            Scalar::Exact(r) => match r.numer().sign().into_ordering() {
                Ordering::Less => Sign3::Negative,
                Ordering::Equal => Sign3::Zero,
                Ordering::Greater => Sign3::Positive,
            },
            Scalar::Wide(_) => {
                // 192-bit arithmetic resolves ~57 decimal digits; leave a
                // wide margin above its roundoff floor instead of the f64
                // bands.
                let v = value.to_f64();
                let band = 1e-50f64.max(1e-45 * magnitude.abs());
                if v.abs() <= band {
                    Sign3::Zero
                } else if v < 0.0 {
                    Sign3::Negative
                } else {
                    Sign3::Positive
                }
            }
            Scalar::Float(v) => {
                let band = self.abs_eps.max(self.zero_band * magnitude.abs());
                if v.abs() <= band {
                    Sign3::Zero
                } else if *v < 0.0 {
                    Sign3::Negative
                } else {
                    Sign3::Positive
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn promotion_rules() {
        let e = Scalar::ratio(1, 3);
        let f = Scalar::Float(0.5);
        let w = Scalar::Wide(Wide::from_f64(0.25));
        assert!(matches!(e.add(&e), Scalar::Exact(_)));
        assert!(matches!(e.add(&f), Scalar::Float(_)));
        assert!(matches!(e.add(&w), Scalar::Wide(_)));
        assert!(matches!(w.mul(&f), Scalar::Float(_)));
    }

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Scalar::ratio(1, 3);
        let b = Scalar::ratio(1, 6);
        let s = a.add(&b);
        assert_eq!(s.as_exact().unwrap(), &BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn sign3_zero_band() {
        let tol = ToleranceProfile::default();
        assert_eq!(tol.sign3(&Scalar::Float(1e-13), 1.0), Sign3::Zero);
        assert_eq!(tol.sign3(&Scalar::Float(1e-6), 1.0), Sign3::Positive);
        assert_eq!(tol.sign3(&Scalar::Float(-1e-6), 1e6), Sign3::Zero);
        assert_eq!(tol.sign3(&Scalar::ratio(-1, 1_000_000_000_000), 1.0), Sign3::Negative);
    }

    #[test]
    fn powers() {
        assert_eq!(
            Scalar::ratio(2, 3).powi(2).as_exact().unwrap(),
            &BigRational::new(4.into(), 9.into())
        );
        let v = Scalar::Float(4.0).powf(0.5).unwrap().to_f64();
        assert!((v - 2.0).abs() < 1e-15);
        assert!(Scalar::Float(-1.0).powf(0.5).is_err());
    }
}
