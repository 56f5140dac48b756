//! Exact arithmetic in the cyclotomic field Q(ζ₁₂).
//!
//! Every scalar appearing in the invariant bases lives here: signs ±1, the
//! imaginary unit i = ζ³ and the cubic root of unity ξ₃ = ζ⁴ = ζ² − 1.
//! Elements are stored on the basis {1, ζ, ζ², ζ³} reduced modulo the
//! minimal polynomial ζ⁴ − ζ² + 1.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed rational literal `{0}`")]
    BadLiteral(String),
}

/// An element c₀ + c₁ζ + c₂ζ² + c₃ζ³ of Q(ζ₁₂), ζ a primitive 12th root of
/// unity, reduced modulo ζ⁴ = ζ² − 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclo {
    c: [Rational; 4],
}

impl Cyclo {
    pub fn new(c: [Rational; 4]) -> Self {
        Cyclo { c }
    }

    pub fn zero() -> Self {
        Cyclo {
            c: [
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
                Rational::zero(),
            ],
        }
    }

    pub fn one() -> Self {
        Cyclo::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        let mut out = Cyclo::zero();
        out.c[0] = Rational::from_integer(BigInt::from(v));
        out
    }

    pub fn from_rational(v: Rational) -> Self {
        let mut out = Cyclo::zero();
        out.c[0] = v;
        out
    }

    /// num/den with den > 0.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Cyclo::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The generator ζ = ζ₁₂.
    pub fn zeta() -> Self {
        let mut out = Cyclo::zero();
        out.c[1] = Rational::one();
        out
    }

    /// ζ^p for any integer power, reduced.
    pub fn zeta_pow(p: i64) -> Self {
        let p = p.rem_euclid(12) as u32;
        let mut out = Cyclo::one();
        for _ in 0..p {
            out = &out * &Cyclo::zeta();
        }
        out
    }

    /// The imaginary unit i = ζ³.
    pub fn i() -> Self {
        Cyclo::zeta_pow(3)
    }

    /// The primitive cubic root of unity ξ₃ = e^{2πi/3} = ζ⁴ = ζ² − 1.
    pub fn xi3() -> Self {
        Cyclo::zeta_pow(4)
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &Cyclo::one()
    }

    pub fn coefficients(&self) -> &[Rational; 4] {
        &self.c
    }

    /// True when the element is rational (no ζ component at all).
    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero() && self.c[3].is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Complex conjugation, i.e. the field automorphism ζ ↦ ζ¹¹ = ζ⁻¹.
    ///
    /// On the basis: 1 ↦ 1, ζ ↦ ζ − ζ³, ζ² ↦ 1 − ζ², ζ³ ↦ −ζ³.
    pub fn conjugate(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Cyclo {
            c: [c0 + c2, c1.clone(), -c2, -(c1 + c3)],
        }
    }

    /// Fixed by conjugation, hence a real number.
    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Multiplicative inverse via the 4×4 multiplication matrix.
    pub fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        // Columns of the matrix are self·ζ^j on the basis; solve M x = e₀.
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); 4]; 4];
        let mut pow = self.clone();
        for col in 0..4 {
            for i in 0..4 {
                m[i][col] = pow.c[i].clone();
            }
            if col < 3 {
                pow = &pow * &Cyclo::zeta();
            }
        }
        let mut rhs = [
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        // Gaussian elimination with partial (first nonzero) pivoting.
        let mut perm = [0usize, 1, 2, 3];
        let mut row = 0;
        for col in 0..4 {
            let pivot = (row..4).find(|&i| !m[perm[i]][col].is_zero());
            let Some(p) = pivot else { continue };
            perm.swap(row, p);
            let inv = m[perm[row]][col].recip();
            for c in col..4 {
                m[perm[row]][c] = &m[perm[row]][c] * &inv;
            }
            rhs[perm[row]] = &rhs[perm[row]] * &inv;
            for i in 0..4 {
                if i != row && !m[perm[i]][col].is_zero() {
                    let f = m[perm[i]][col].clone();
                    for c in col..4 {
                        let sub = &m[perm[row]][c] * &f;
                        m[perm[i]][c] = &m[perm[i]][c] - sub;
                    }
                    let sub = &rhs[perm[row]] * &f;
                    rhs[perm[i]] = &rhs[perm[i]] - sub;
                }
            }
            row += 1;
        }
        debug_assert_eq!(row, 4, "multiplication matrix of a unit is invertible");
        let mut out = Cyclo::zero();
        for i in 0..4 {
            out.c[i] = rhs[perm[i]].clone();
        }
        debug_assert!((&out * self).is_one());
        Ok(out)
    }

    /// Display-only decimal rendering; never used in comparisons.
    pub fn approx(&self) -> (f64, f64) {
        let f = |r: &Rational| -> f64 {
            let n = r.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = r.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        };
        // ζ = cos(π/6) + i sin(π/6)
        let (re, im) = (3f64.sqrt() / 2.0, 0.5);
        let mut z = (1.0, 0.0);
        let mut acc = (0.0, 0.0);
        for j in 0..4 {
            let cj = f(&self.c[j]);
            acc.0 += cj * z.0;
            acc.1 += cj * z.1;
            z = (z.0 * re - z.1 * im, z.0 * im + z.1 * re);
        }
        acc
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["", "z", "z^2", "z^3"];
        let mut first = true;
        for j in 0..4 {
            let c = &self.c[j];
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if j == 0 || !a.is_one() {
                write!(f, "{}", a)?;
                if j > 0 {
                    write!(f, "*")?;
                }
            }
            write!(f, "{}", names[j])?;
        }
        Ok(())
    }
}

fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rational_from_string(s: &str) -> Result<Rational, ScalarError> {
    let bad = || ScalarError::BadLiteral(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d <= BigInt::zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

impl Serialize for Cyclo {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.c.iter().map(rational_to_string).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyclo {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let strings = <[String; 4]>::deserialize(deserializer)?;
        let mut c = [
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
            Rational::zero(),
        ];
        for (slot, s) in c.iter_mut().zip(strings.iter()) {
            *slot = rational_from_string(s).map_err(D::Error::custom)?;
        }
        Ok(Cyclo::new(c))
    }
}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let mut out = self.clone();
        for j in 0..4 {
            out.c[j] += &rhs.c[j];
        }
        out
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        let mut out = self.clone();
        for j in 0..4 {
            out.c[j] -= &rhs.c[j];
        }
        out
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        let mut out = self.clone();
        for j in 0..4 {
            out.c[j] = -out.c[j].clone();
        }
        out
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        // Convolve to degree 6, then fold with ζ⁴ = ζ²−1, ζ⁵ = ζ³−ζ, ζ⁶ = −1.
        let mut raw = vec![Rational::zero(); 7];
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if rhs.c[j].is_zero() {
                    continue;
                }
                raw[i + j] += &self.c[i] * &rhs.c[j];
            }
        }
        let mut c = [
            raw[0].clone(),
            raw[1].clone(),
            raw[2].clone(),
            raw[3].clone(),
        ];
        c[2] += &raw[4];
        c[0] -= &raw[4];
        c[3] += &raw[5];
        c[1] -= &raw[5];
        c[0] -= &raw[6];
        Cyclo::new(c)
    }
}

impl Div for &Cyclo {
    type Output = Cyclo;
    fn div(self, rhs: &Cyclo) -> Cyclo {
        self * &rhs.inverse().expect("division by zero")
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Cyclo {
            type Output = Cyclo;
            fn $method(self, rhs: Cyclo) -> Cyclo {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

impl AddAssign<&Cyclo> for Cyclo {
    fn add_assign(&mut self, rhs: &Cyclo) {
        for j in 0..4 {
            self.c[j] += &rhs.c[j];
        }
    }
}

impl SubAssign<&Cyclo> for Cyclo {
    fn sub_assign(&mut self, rhs: &Cyclo) {
        for j in 0..4 {
            self.c[j] -= &rhs.c[j];
        }
    }
}

impl MulAssign<&Cyclo> for Cyclo {
    fn mul_assign(&mut self, rhs: &Cyclo) {
        *self = &*self * rhs;
    }
}

/// Checked division used by operation tables that must report errors.
pub fn cyclo_div(a: &Cyclo, b: &Cyclo) -> Result<Cyclo, ScalarError> {
    Ok(a * &b.inverse()?)
}
