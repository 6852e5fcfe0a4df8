//! Scalar backends: exact Gaussian rationals and approximate complex doubles.
//!
//! All higher modules are generic over [`Scalar`], a plain field-operations
//! contract. The exact backend [`GaussianRational`] is the field Q(i) with
//! arbitrary-precision reduced rational coordinates, so equality there is
//! decidable and structural. The approximate backend [`ApproxComplex`] is a
//! pair of finite doubles compared within an explicit [`Tolerance`]; it is
//! the home of [`principal_log`], which has no exact counterpart.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
// f64 math (hypot, atan2, exp, ln) comes from this trait in no_std builds;
// test builds link std, whose inherent methods shadow it.
#[cfg_attr(test, allow(unused_imports))]
use num_traits::Float;

use crate::linalg::{LinAlgError, Matrix};

/// Which arithmetic a scalar type performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    /// Gaussian rationals: decidable, structural equality.
    Exact,
    /// Complex doubles: comparisons within a tolerance.
    Approx,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Approx => f.write_str("approx"),
        }
    }
}

/// Comparison tolerance for the approximate backend.
///
/// Exact comparisons ignore it. The default of `1e-9` is what every
/// approximate operation uses unless a caller overrides it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    eps: f64,
}

pub const DEFAULT_EPS: f64 = 1e-9;

impl Tolerance {
    pub fn new(eps: f64) -> Result<Self, NumericError> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(NumericError::Domain("tolerance must be finite and positive"));
        }
        Ok(Tolerance { eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: DEFAULT_EPS }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NumericError {
    /// Division by exact zero, or by a scalar of magnitude at most eps.
    DivisionByZero,
    /// Input outside an operation's domain (for example, log of zero).
    Domain(&'static str),
    /// A NaN or infinity tried to enter the system.
    NonFinite,
    /// A scalar literal did not match the textual grammar.
    Parse(String),
}

impl fmt::Display for NumericError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumericError::DivisionByZero => f.write_str("division by zero"),
            NumericError::Domain(msg) => write!(f, "domain error: {msg}"),
            NumericError::NonFinite => f.write_str("non-finite value rejected"),
            NumericError::Parse(msg) => write!(f, "scalar parse error: {msg}"),
        }
    }
}

/// Field operations shared by the two backends.
///
/// Methods take references: exact scalars own heap integers and are not
/// `Copy`. `is_zero` and `eq_within` are the only places the backends'
/// notions of equality differ, and every pivoting or comparison decision in
/// the crate funnels through them.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, NumericError>;
    fn div(&self, rhs: &Self) -> Result<Self, NumericError>;

    /// Exact: structural zero. Approximate: magnitude at most the default eps.
    fn is_zero(&self) -> bool;

    /// Exact: structural equality (the tolerance is ignored).
    /// Approximate: `|self - rhs| <= tol`.
    fn eq_within(&self, rhs: &Self, tol: Tolerance) -> bool;

    /// Order-of-magnitude bound used to scale rounding-error budgets when
    /// comparing computed products. Exact scalars report 1 — their
    /// comparisons ignore tolerances anyway.
    fn magnitude(&self) -> f64 {
        1.0
    }

    /// Matrix exponential appropriate to the backend: the finite nilpotent
    /// series over the exact field, scaling-and-squaring over doubles.
    fn matrix_exp(m: &Matrix<Self>) -> Result<Matrix<Self>, LinAlgError<Self>>;
}

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// An element of Q(i): real and imaginary parts are reduced big rationals.
///
/// `BigRational` keeps numerators and denominators coprime with positive
/// denominator, so derived `PartialEq` is true structural equality of the
/// canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// The exact rational p/q. Fails on q = 0.
    pub fn ratio(p: i64, q: i64) -> Result<Self, NumericError> {
        if q == 0 {
            return Err(NumericError::DivisionByZero);
        }
        Ok(GaussianRational {
            re: BigRational::new(BigInt::from(p), BigInt::from(q)),
            im: BigRational::zero(),
        })
    }

    /// The exact complex rational pr/qr + pi/qi * i. Fails on a zero denominator.
    pub fn ratio_complex(pr: i64, qr: i64, pi: i64, qi: i64) -> Result<Self, NumericError> {
        if qr == 0 || qi == 0 {
            return Err(NumericError::DivisionByZero);
        }
        Ok(GaussianRational {
            re: BigRational::new(BigInt::from(pr), BigInt::from(qr)),
            im: BigRational::new(BigInt::from(pi), BigInt::from(qi)),
        })
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |z|^2 = re^2 + im^2, an ordinary rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Nearest-double image, for lifting exact data into the approximate
    /// backend. Values outside double range are a caller bug at this
    /// library's scale.
    pub fn to_approx(&self) -> ApproxComplex {
        let re = self.re.to_f64().expect("exact scalar out of f64 range");
        let im = self.im.to_f64().expect("exact scalar out of f64 range");
        ApproxComplex::new(re, im).expect("exact scalar lifted to non-finite double")
    }
}

impl Scalar for GaussianRational {
    const BACKEND: Backend = Backend::Exact;

    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    fn from_i64(n: i64) -> Self {
        GaussianRational::from_int(n)
    }

    fn add(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn neg(&self) -> Self {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn inv(&self) -> Result<Self, NumericError> {
        let n = self.norm_sq();
        if n.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        Ok(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    fn div(&self, rhs: &Self) -> Result<Self, NumericError> {
        Ok(Scalar::mul(self, &rhs.inv()?))
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn eq_within(&self, rhs: &Self, _tol: Tolerance) -> bool {
        self == rhs
    }

    fn matrix_exp(m: &Matrix<Self>) -> Result<Matrix<Self>, LinAlgError<Self>> {
        m.exp_nilpotent()
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        Scalar::add(self, rhs)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: Self) -> GaussianRational {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        Scalar::neg(self)
    }
}

fn fmt_big_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// Canonical text form: `p[/q]`, `r[/s]*i`, or `p[/q]±r[/s]*i`.
    /// Parsing this form returns a structurally equal scalar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return fmt_big_rational(&self.re, f);
        }
        if self.re.is_zero() {
            fmt_big_rational(&self.im, f)?;
            return f.write_str("*i");
        }
        fmt_big_rational(&self.re, f)?;
        if self.im.is_negative() {
            f.write_str("-")?;
            fmt_big_rational(&-self.im.clone(), f)?;
        } else {
            f.write_str("+")?;
            fmt_big_rational(&self.im, f)?;
        }
        f.write_str("*i")
    }
}

/// Splits a complex literal into real- and imaginary-part substrings.
///
/// A trailing `*i` marks the imaginary term. The separating sign is the last
/// `+`/`-` that is neither leading nor an exponent sign, so double literals
/// like `1e-3` survive intact.
fn split_real_imag(s: &str) -> (Option<&str>, Option<&str>) {
    let t = s.trim();
    let Some(body) = t.strip_suffix("*i") else {
        return (Some(t), None);
    };
    let bytes = body.as_bytes();
    let mut split = None;
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    match split {
        Some(p) => (Some(&body[..p]), Some(&body[p..])),
        None => (None, Some(body)),
    }
}

fn parse_big_rational(s: &str) -> Result<BigRational, NumericError> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || NumericError::Parse(s.to_string());
    match s.split_once('/') {
        None => {
            let n = BigInt::from_str(s).map_err(|_| bad())?;
            Ok(BigRational::from_integer(n))
        }
        Some((p, q)) => {
            let num = BigInt::from_str(p).map_err(|_| bad())?;
            let den = BigInt::from_str(q).map_err(|_| bad())?;
            if den.is_zero() {
                return Err(NumericError::Parse(s.to_string()));
            }
            Ok(BigRational::new(num, den))
        }
    }
}

impl FromStr for GaussianRational {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, NumericError> {
        let (re, im) = split_real_imag(s);
        let re = match re {
            Some(part) => parse_big_rational(part)?,
            None => BigRational::zero(),
        };
        let im = match im {
            Some(part) => parse_big_rational(part)?,
            None => BigRational::zero(),
        };
        Ok(GaussianRational { re, im })
    }
}

// ---------------------------------------------------------------------------
// Approximate backend
// ---------------------------------------------------------------------------

/// A complex double. Both coordinates are finite by construction; negative
/// zeros are normalised away so stored values have a single representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxComplex {
    re: f64,
    im: f64,
}

impl ApproxComplex {
    pub fn new(re: f64, im: f64) -> Result<Self, NumericError> {
        if !(re.is_finite() && im.is_finite()) {
            return Err(NumericError::NonFinite);
        }
        // +0.0 == -0.0 under IEEE comparison but not bitwise; normalise so
        // that Display and atan2 branch behaviour are deterministic.
        let re = if re == 0.0 { 0.0 } else { re };
        let im = if im == 0.0 { 0.0 } else { im };
        Ok(ApproxComplex { re, im })
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn conj(&self) -> Self {
        ApproxComplex {
            re: self.re,
            im: -self.im,
        }
    }

    /// The complex exponential e^re (cos im + i sin im).
    pub fn exp(&self) -> Result<Self, NumericError> {
        let m = self.re.exp();
        ApproxComplex::new(m * self.im.cos(), m * self.im.sin())
    }

    fn checked(re: f64, im: f64) -> Self {
        debug_assert!(re.is_finite() && im.is_finite(), "non-finite arithmetic result");
        let re = if re == 0.0 { 0.0 } else { re };
        let im = if im == 0.0 { 0.0 } else { im };
        ApproxComplex { re, im }
    }
}

/// Principal-branch complex logarithm: the imaginary part lies in (-pi, pi].
///
/// Inputs of magnitude at most `tol` are rejected: the branch point is a
/// genuine singularity, not a numerical accident.
pub fn principal_log(c: ApproxComplex, tol: Tolerance) -> Result<ApproxComplex, NumericError> {
    let mag = c.abs();
    if mag <= tol.eps() {
        return Err(NumericError::Domain("log of (numerically) zero"));
    }
    // atan2 returns values in (-pi, pi] for our normalised inputs: the
    // constructor has already turned -0.0 imaginary parts into +0.0.
    ApproxComplex::new(mag.ln(), c.im.atan2(c.re))
}

impl Scalar for ApproxComplex {
    const BACKEND: Backend = Backend::Approx;

    fn zero() -> Self {
        ApproxComplex { re: 0.0, im: 0.0 }
    }

    fn one() -> Self {
        ApproxComplex { re: 1.0, im: 0.0 }
    }

    fn from_i64(n: i64) -> Self {
        ApproxComplex {
            re: n as f64,
            im: 0.0,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        ApproxComplex::checked(self.re + rhs.re, self.im + rhs.im)
    }

    fn sub(&self, rhs: &Self) -> Self {
        ApproxComplex::checked(self.re - rhs.re, self.im - rhs.im)
    }

    fn mul(&self, rhs: &Self) -> Self {
        ApproxComplex::checked(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }

    fn neg(&self) -> Self {
        ApproxComplex::checked(-self.re, -self.im)
    }

    fn inv(&self) -> Result<Self, NumericError> {
        if self.abs() <= DEFAULT_EPS {
            return Err(NumericError::DivisionByZero);
        }
        let n = self.re * self.re + self.im * self.im;
        Ok(ApproxComplex::checked(self.re / n, -self.im / n))
    }

    fn div(&self, rhs: &Self) -> Result<Self, NumericError> {
        Ok(Scalar::mul(self, &rhs.inv()?))
    }

    fn is_zero(&self) -> bool {
        self.abs() <= DEFAULT_EPS
    }

    fn eq_within(&self, rhs: &Self, tol: Tolerance) -> bool {
        (self.re - rhs.re).hypot(self.im - rhs.im) <= tol.eps()
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn matrix_exp(m: &Matrix<Self>) -> Result<Matrix<Self>, LinAlgError<Self>> {
        Ok(m.expm())
    }
}

impl Add for ApproxComplex {
    type Output = ApproxComplex;
    fn add(self, rhs: Self) -> ApproxComplex {
        Scalar::add(&self, &rhs)
    }
}

impl Sub for ApproxComplex {
    type Output = ApproxComplex;
    fn sub(self, rhs: Self) -> ApproxComplex {
        Scalar::sub(&self, &rhs)
    }
}

impl Mul for ApproxComplex {
    type Output = ApproxComplex;
    fn mul(self, rhs: Self) -> ApproxComplex {
        Scalar::mul(&self, &rhs)
    }
}

impl Neg for ApproxComplex {
    type Output = ApproxComplex;
    fn neg(self) -> ApproxComplex {
        Scalar::neg(&self)
    }
}

fn fmt_f64(x: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    // `{}` on f64 prints the shortest decimal that parses back to the same
    // bits, which is exactly the round-trip guarantee the text form needs.
    write!(f, "{x}")
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            return fmt_f64(self.re, f);
        }
        if self.re == 0.0 {
            fmt_f64(self.im, f)?;
            return f.write_str("*i");
        }
        fmt_f64(self.re, f)?;
        if self.im < 0.0 {
            f.write_str("-")?;
            fmt_f64(-self.im, f)?;
        } else {
            f.write_str("+")?;
            fmt_f64(self.im, f)?;
        }
        f.write_str("*i")
    }
}

fn parse_f64(s: &str) -> Result<f64, NumericError> {
    let s = s.strip_prefix('+').unwrap_or(s);
    f64::from_str(s).map_err(|_| NumericError::Parse(s.to_string()))
}

impl FromStr for ApproxComplex {
    type Err = NumericError;

    fn from_str(s: &str) -> Result<Self, NumericError> {
        let (re, im) = split_real_imag(s);
        let re = match re {
            Some(part) => parse_f64(part)?,
            None => 0.0,
        };
        let im = match im {
            Some(part) => parse_f64(part)?,
            None => 0.0,
        };
        ApproxComplex::new(re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(p: i64, q_: i64) -> GaussianRational {
        GaussianRational::ratio(p, q_).unwrap()
    }

    fn qc(pr: i64, qr: i64, pi: i64, qi: i64) -> GaussianRational {
        GaussianRational::ratio_complex(pr, qr, pi, qi).unwrap()
    }

    #[test]
    fn exact_field_arithmetic() {
        // (1/2 + i)(1/2 - i) = 1/4 + 1 = 5/4
        let a = qc(1, 2, 1, 1);
        let b = a.conj();
        assert_eq!(&a * &b, q(5, 4));
        // 2/3 + 1/3 = 1
        assert_eq!(&q(2, 3) + &q(1, 3), GaussianRational::one());
        // inv(i) = -i
        assert_eq!(GaussianRational::i().inv().unwrap(), -&GaussianRational::i());
    }

    #[test]
    fn exact_inverse_of_zero_fails() {
        assert_eq!(
            GaussianRational::zero().inv(),
            Err(NumericError::DivisionByZero)
        );
    }

    #[test]
    fn exact_inverse_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = qc(
                rng.gen_range(-9..=9),
                rng.gen_range(1..=9),
                rng.gen_range(-9..=9),
                rng.gen_range(1..=9),
            );
            if Scalar::is_zero(&a) {
                continue;
            }
            assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        }
    }

    #[test]
    fn exact_display_forms() {
        assert_eq!(format!("{}", q(1, 2)), "1/2");
        assert_eq!(format!("{}", q(-3, 1)), "-3");
        assert_eq!(format!("{}", qc(0, 1, 2, 3)), "2/3*i");
        assert_eq!(format!("{}", qc(1, 2, -1, 3)), "1/2-1/3*i");
        assert_eq!(format!("{}", qc(1, 1, 1, 1)), "1+1*i");
    }

    #[test]
    fn exact_parse_forms() {
        assert_eq!("1/2".parse::<GaussianRational>().unwrap(), q(1, 2));
        assert_eq!("-7".parse::<GaussianRational>().unwrap(), q(-7, 1));
        assert_eq!("3/4*i".parse::<GaussianRational>().unwrap(), qc(0, 1, 3, 4));
        assert_eq!("-1*i".parse::<GaussianRational>().unwrap(), qc(0, 1, -1, 1));
        assert_eq!(
            "1/2+1/2*i".parse::<GaussianRational>().unwrap(),
            qc(1, 2, 1, 2)
        );
        assert_eq!("2-3*i".parse::<GaussianRational>().unwrap(), qc(2, 1, -3, 1));
        // Non-canonical input still normalises.
        assert_eq!("4/2".parse::<GaussianRational>().unwrap(), q(2, 1));
        assert!("i".parse::<GaussianRational>().is_err());
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("".parse::<GaussianRational>().is_err());
        assert!("1+2".parse::<GaussianRational>().is_err());
    }

    #[test]
    fn exact_print_parse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let a = qc(
                rng.gen_range(-50..=50),
                rng.gen_range(1..=50),
                rng.gen_range(-50..=50),
                rng.gen_range(1..=50),
            );
            let s = format!("{a}");
            assert_eq!(s.parse::<GaussianRational>().unwrap(), a, "string {s}");
        }
    }

    #[test]
    fn approx_print_parse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..500 {
            let a = ApproxComplex::new(
                rng.gen_range(-1.0e3..1.0e3),
                rng.gen_range(-1.0e3..1.0e3),
            )
            .unwrap();
            let s = format!("{a}");
            assert_eq!(s.parse::<ApproxComplex>().unwrap(), a, "string {s}");
        }
    }

    #[test]
    fn approx_parse_exponent_forms() {
        let a = "1.5e-3+2e4*i".parse::<ApproxComplex>().unwrap();
        assert_eq!(a, ApproxComplex::new(1.5e-3, 2e4).unwrap());
        let b = "-1e-3*i".parse::<ApproxComplex>().unwrap();
        assert_eq!(b, ApproxComplex::new(0.0, -1e-3).unwrap());
    }

    #[test]
    fn approx_rejects_non_finite() {
        assert_eq!(
            ApproxComplex::new(f64::NAN, 0.0),
            Err(NumericError::NonFinite)
        );
        assert_eq!(
            ApproxComplex::new(0.0, f64::INFINITY),
            Err(NumericError::NonFinite)
        );
    }

    #[test]
    fn principal_log_known_values() {
        let tol = Tolerance::default();
        let one = ApproxComplex::one();
        assert_eq!(principal_log(one, tol).unwrap(), ApproxComplex::zero());

        // log(-1) = i*pi on the principal branch, including for a -0.0
        // imaginary part (the constructor normalises it away).
        let minus_one = ApproxComplex::new(-1.0, -0.0).unwrap();
        let l = principal_log(minus_one, tol).unwrap();
        assert!(l.re.abs() < 1e-15);
        assert!((l.im - core::f64::consts::PI).abs() < 1e-15);

        // log(2i) = ln 2 + i*pi/2
        let l = principal_log(ApproxComplex::new(0.0, 2.0).unwrap(), tol).unwrap();
        assert!((l.re - 2.0_f64.ln()).abs() < 1e-15);
        assert!((l.im - core::f64::consts::FRAC_PI_2).abs() < 1e-15);

        assert!(principal_log(ApproxComplex::zero(), tol).is_err());
    }

    #[test]
    fn principal_log_exp_round_trip() {
        let tol = Tolerance::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            // Magnitudes across six decades, all angles.
            let mag = 10f64.powf(rng.gen_range(-3.0..3.0));
            let arg = rng.gen_range(-core::f64::consts::PI..core::f64::consts::PI);
            let c = ApproxComplex::new(mag * arg.cos(), mag * arg.sin()).unwrap();
            let back = principal_log(c, tol).unwrap().exp().unwrap();
            let err = (back.re - c.re).hypot(back.im - c.im);
            assert!(
                err <= 10.0 * DEFAULT_EPS * mag.max(1.0),
                "round trip error {err} at {c}"
            );
        }
    }

    #[test]
    fn principal_branch_is_half_open() {
        let tol = Tolerance::default();
        // Angles of log must stay in (-pi, pi].
        let samples = [
            ApproxComplex::new(-2.0, 1e-12).unwrap(),
            ApproxComplex::new(-2.0, -1e-12).unwrap(),
            ApproxComplex::new(-5.0, 0.0).unwrap(),
        ];
        for c in samples {
            let l = principal_log(c, tol).unwrap();
            assert!(
                l.im > -core::f64::consts::PI && l.im <= core::f64::consts::PI,
                "branch violation at {c}"
            );
        }
    }
}
