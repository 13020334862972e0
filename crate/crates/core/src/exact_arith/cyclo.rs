use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `c0 + c1·ζ + c2·ζ² + c3·ζ³` of `Q(ζ)` with `ζ = e^{iπ/4}`.
///
/// The power basis is reduced with `ζ⁴ = -1` only, so two values are equal
/// exactly when their coefficients are. `BigRational` keeps every coefficient
/// in lowest terms with a positive denominator, which makes the derived
/// `Hash`/`Eq` canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloNumber {
    c: [BigRational; 4],
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl CycloNumber {
    pub fn new(c: [BigRational; 4]) -> Self {
        Self { c }
    }

    /// Builds from `(numerator, denominator)` pairs. Panics on a zero denominator.
    pub fn from_ratios(c: [(i64, i64); 4]) -> Self {
        Self::new(c.map(|(n, d)| rat(n, d)))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_ratios([(n, 1), (0, 1), (0, 1), (0, 1)])
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::new([
            r,
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        ])
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let sign = if k >= 4 { -1 } else { 1 };
        let mut c = [(0, 1); 4];
        c[k % 4] = (sign, 1);
        Self::from_ratios(c)
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// The imaginary unit, `ζ²`.
    pub fn i() -> Self {
        Self::zeta_pow(2)
    }

    /// `√2 = ζ - ζ³`.
    pub fn sqrt2() -> Self {
        Self::from_ratios([(0, 1), (1, 1), (0, 1), (-1, 1)])
    }

    /// `1/√2 = (ζ - ζ³)/2`.
    pub fn inv_sqrt2() -> Self {
        Self::from_ratios([(0, 1), (1, 2), (0, 1), (-1, 2)])
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.c[i]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(Zero::is_zero)
    }

    /// Complex conjugation, `ζ ↦ ζ⁷ = -ζ³`.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Self::new([c0.clone(), -c3, -c2, -c1])
    }

    /// Galois automorphism `ζ ↦ -ζ` (that is `ζ ↦ ζ⁵`).
    fn sigma5(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Self::new([c0.clone(), -c1, c2.clone(), -c3])
    }

    /// Multiplicative inverse.
    ///
    /// `a·σ₅(a)` has no odd powers of `ζ`, so it is `p + q·i`; multiplying by
    /// `p - q·i` leaves the rational norm `p² + q²`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let s5 = self.sigma5();
        let half = self * &s5;
        debug_assert!(half.c[1].is_zero() && half.c[3].is_zero());
        let (p, q) = (&half.c[0], &half.c[2]);
        let norm = p * p + q * q;
        let partner = Self::new([p.clone(), BigRational::zero(), -q, BigRational::zero()]);
        let numer = &s5 * &partner;
        Ok(numer.scale(&norm.recip()))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new([
            &self.c[0] * r,
            &self.c[1] * r,
            &self.c[2] * r,
            &self.c[3] * r,
        ])
    }

    /// `|a|² = a·conj(a)`, an element of `Q(√2)`.
    pub fn abs_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn is_unit_modulus(&self) -> bool {
        self.abs_sq().is_one()
    }

    /// `Some(k)` when the value is exactly `ζ^k`, `0 <= k < 8`.
    pub fn as_zeta_power(&self) -> Option<u8> {
        (0u8..8).find(|&k| *self == Self::zeta_pow(k as i64))
    }

    /// Numerical embedding at `ζ = e^{iπ/4}`.
    pub fn to_complex(&self) -> Complex64 {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let powers = [
            Complex64::new(1.0, 0.0),
            Complex64::new(h, h),
            Complex64::new(0.0, 1.0),
            Complex64::new(-h, h),
        ];
        self.c
            .iter()
            .zip(powers)
            .map(|(c, p)| p * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Canonical lookup key: lowest-terms `n/d` quadruple, denominators positive.
    pub fn canonical_key(&self) -> String {
        self.c
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl Default for CycloNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a> Add<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn add(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::new(std::array::from_fn(|i| &self.c[i] + &rhs.c[i]))
    }
}

impl<'a> Sub<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn sub(self, rhs: &CycloNumber) -> CycloNumber {
        CycloNumber::new(std::array::from_fn(|i| &self.c[i] - &rhs.c[i]))
    }
}

impl<'a> Mul<&'a CycloNumber> for &'a CycloNumber {
    type Output = CycloNumber;
    fn mul(self, rhs: &CycloNumber) -> CycloNumber {
        let mut acc: [BigRational; 4] = Default::default();
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = a * b;
                let k = i + j;
                if k < 4 {
                    acc[k] += p;
                } else {
                    acc[k - 4] -= p;
                }
            }
        }
        CycloNumber::new(acc)
    }
}

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        CycloNumber::new(std::array::from_fn(|i| -&self.c[i]))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $f(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $f(self, rhs: &CycloNumber) -> CycloNumber {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.c.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let a = c.abs();
            let unit_coeff = a.is_one();
            match (k, unit_coeff) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                (_, false) => write!(f, "{a}*")?,
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}
