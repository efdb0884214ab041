//! Fixed-point extended-precision arithmetic (256 fractional bits) on top
//! of `BigInt`, with natural logarithm and base-10 logarithm.
//!
//! The exponent formulas this crate reports underflow f64 catastrophically
//! (values like 10^−1400), so they are evaluated in log space at this
//! precision and reported as (mantissa, log10) pairs.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::sync::OnceLock;

/// Fractional bits. 256 bits ≈ 77 decimal digits, far beyond the 12
/// significant digits the exponent tables are checked to.
pub const FRAC_BITS: u64 = 256;

/// Fixed-point real: value = `v` / 2^FRAC_BITS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpFix {
    v: BigInt,
}

impl MpFix {
    pub fn zero() -> Self {
        Self { v: BigInt::zero() }
    }

    pub fn from_u64(x: u64) -> Self {
        Self {
            v: BigInt::from(x) << FRAC_BITS,
        }
    }

    pub fn from_i64(x: i64) -> Self {
        Self {
            v: BigInt::from(x) << FRAC_BITS,
        }
    }

    /// Exact embedding of an f64 (every finite f64 is a dyadic rational).
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "MpFix::from_f64: non-finite input");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_raw = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_raw == 0 {
            (frac, -1074i64) // subnormal
        } else {
            (frac | (1u64 << 52), exp_raw - 1075)
        };
        let shift = exp + FRAC_BITS as i64;
        let m = BigInt::from(mant) * sign;
        let v = match shift.cmp(&0) {
            Ordering::Less => m >> (-shift) as u64,
            _ => m << shift as u64,
        };
        Self { v }
    }

    pub fn from_ratio(num: u64, den: u64) -> Self {
        assert!(den != 0);
        Self {
            v: (BigInt::from(num) << FRAC_BITS) / BigInt::from(den),
        }
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn neg(&self) -> Self {
        Self { v: -&self.v }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { v: &self.v + &o.v }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { v: &self.v - &o.v }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            v: (&self.v * &o.v) >> FRAC_BITS,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        assert!(!o.v.is_zero(), "MpFix division by zero");
        Self {
            v: (&self.v << FRAC_BITS) / &o.v,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        Self { v: &self.v * k }
    }

    pub fn to_f64(&self) -> f64 {
        // The division by 2^FRAC_BITS is exact in f64, so the only rounding
        // is in the BigInt conversion itself.
        self.v.to_f64().unwrap_or(f64::NAN) / 2f64.powi(FRAC_BITS as i32)
    }

    /// Natural logarithm for strictly positive values. Argument reduction
    /// x = m·2^e with m ∈ [1, 2), then the atanh series at z = (m−1)/(m+1)
    /// (|z| ≤ 1/3, ~130 terms for 256 bits).
    pub fn ln(&self) -> Self {
        assert!(
            !self.is_negative() && !self.is_zero(),
            "MpFix::ln needs a positive argument"
        );
        let bits = self.v.bits() as i64; // value in [2^(bits-1), 2^bits)
        let e = bits - 1 - FRAC_BITS as i64;
        let m = match e.cmp(&0) {
            Ordering::Greater => Self {
                v: &self.v >> e as u64,
            },
            Ordering::Less => Self {
                v: &self.v << (-e) as u64,
            },
            Ordering::Equal => self.clone(),
        };
        ln_mantissa(&m).add(&ln2().mul_i64(e))
    }

    pub fn log10(&self) -> Self {
        self.ln().div(ln10())
    }
}

/// atanh-series log, intended for m ∈ [1, 2).
fn ln_mantissa(m: &MpFix) -> MpFix {
    let one = MpFix::from_u64(1);
    atanh_series(&m.sub(&one).div(&m.add(&one))).mul_i64(2)
}

fn atanh_series(z: &MpFix) -> MpFix {
    let z2 = z.mul(z);
    let mut term = z.clone();
    let mut sum = z.clone();
    let mut k: i64 = 1;
    loop {
        term = term.mul(&z2);
        k += 2;
        let add = term.div(&MpFix::from_i64(k));
        if add.v.magnitude().bits() == 0 {
            break;
        }
        sum = sum.add(&add);
    }
    sum
}

pub fn ln2() -> &'static MpFix {
    static LN2: OnceLock<MpFix> = OnceLock::new();
    // ln 2 = 2 atanh(1/3).
    LN2.get_or_init(|| atanh_series(&MpFix::from_ratio(1, 3)).mul_i64(2))
}

pub fn ln10() -> &'static MpFix {
    static LN10: OnceLock<MpFix> = OnceLock::new();
    // ln 10 = ln(10/8) + 3 ln 2 keeps the series argument small.
    LN10.get_or_init(|| ln_mantissa(&MpFix::from_ratio(10, 8)).add(&ln2().mul_i64(3)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_f64() {
        for x in [0.0, 1.0, -2.5, 0.1, 1e-12, 12345.6789, -3.0e8] {
            let m = MpFix::from_f64(x);
            assert_eq!(m.to_f64(), x, "{x}");
        }
    }

    #[test]
    fn arithmetic() {
        let a = MpFix::from_f64(1.5);
        let b = MpFix::from_f64(2.25);
        assert_eq!(a.mul(&b).to_f64(), 3.375);
        assert_eq!(b.div(&a).to_f64(), 1.5);
        assert_eq!(a.sub(&b).to_f64(), -0.75);
    }

    #[test]
    fn ln_reference_values() {
        let cases = [
            (2.0, 0.693_147_180_559_945_3f64),
            (10.0, 2.302_585_092_994_046),
            (0.5, -0.693_147_180_559_945_3),
            (1.0, 0.0),
            (41472.0, 10.632_773_779_711_946_6),
        ];
        for (x, want) in cases {
            let got = MpFix::from_f64(x).ln().to_f64();
            assert!((got - want).abs() < 1e-14, "ln({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn log10_of_powers() {
        for p in 1..12u32 {
            let got = MpFix::from_u64(10u64.pow(p)).log10().to_f64();
            assert!((got - p as f64).abs() < 1e-13, "p={p} got {got}");
        }
    }

    #[test]
    fn ln_precision_beyond_f64() {
        // log10(5^640) = 640·log10 5, 22-digit reference value.
        let l = MpFix::from_u64(5).log10().mul_i64(640).to_f64();
        assert!((l - 447.340_802_775_052_035_063_2).abs() < 1e-11, "{l}");
    }
}
