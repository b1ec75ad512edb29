//! Coefficient backends for the *-polynomial layer.
//!
//! Every symbolic object in this crate is generic over a [`Ring`] of
//! coefficients.  Two backends are provided:
//!
//! * [`Exact`] — Laurent polynomials in the deformation parameter `q` and
//!   ordinary polynomials in the sphere parameter `c`, with Gaussian
//!   rational coefficients (`a + b·i`, `a, b ∈ ℚ`).  Equality is exact;
//!   this backend certifies algebraic identities.
//! * [`Floats`] — complex `f64` coefficients with `q` (and optionally `c`)
//!   fixed to numeric values and a tolerance `eps` used by equality tests.
//!   This backend feeds the matrix oracles.
//!
//! The trait is deliberately object-free: the ring value itself carries the
//! numeric context (`q`, `c`, `eps` for [`Floats`]), so mixing elements from
//! different contexts is detectable and reported as an error.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Complex double-precision scalar, re-exported for convenience.
pub type C64 = num_complex::Complex64;

/// Gaussian rational: complex number with rational real and imaginary parts.
pub type GaussRat = Complex<BigRational>;

/// Default tolerance used by the float backend when none is configured.
pub const DEFAULT_EPS: f64 = 1e-10;

/// A commutative coefficient *-ring.
///
/// The ring value acts as a context object; all arithmetic goes through it
/// so that the float backend can consult its numeric `q`, `c` and `eps`.
// The `from_*` constructors take `&self`: which element they build depends
// on the ring context (numeric parameters, tolerance).
#[allow(clippy::wrong_self_convention)]
pub trait Ring: Clone + PartialEq + fmt::Debug {
    /// Ring element representation.
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    /// Exact ratio `num/den`; `den` must be nonzero.
    fn from_ratio(&self, num: i64, den: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Complex conjugation (the ring's *-structure).
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse of a scalar, if it exists.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The deformation parameter `q` raised to an integer power.
    fn q_pow(&self, k: i64) -> Self::Elem;
    /// The sphere parameter `c`, when the context provides one.
    fn c(&self) -> Option<Self::Elem>;
    /// The imaginary unit.
    fn i(&self) -> Self::Elem;

    /// Structural zero test, used to prune stored terms.  Never
    /// tolerance-based: float coefficients are pruned only at exactly `0`.
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Tolerance-aware zero test, used by equality checks.  Coincides with
    /// [`Ring::is_zero`] on the exact backend.
    fn is_negligible(&self, a: &Self::Elem) -> bool;

    /// Human-readable context description for mismatch errors.
    fn describe(&self) -> String;
    /// Format an element so that the expression parser reads it back.
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    /// If the element would display more naturally after a minus sign,
    /// return its negation (used for `a - b` folding in element display).
    fn display_negated(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// Exact coefficient: a Laurent polynomial in `q`, polynomial in `c`, with
/// Gaussian rational coefficients.  Keys are `(q exponent, c exponent)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QcPoly {
    terms: BTreeMap<(i64, u32), GaussRat>,
}

fn gauss_zero() -> GaussRat {
    Complex::new(BigRational::zero(), BigRational::zero())
}

fn gauss_from_ratio(num: i64, den: i64) -> GaussRat {
    assert!(den != 0, "zero denominator");
    Complex::new(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        BigRational::zero(),
    )
}

impl QcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, gauss_from_ratio(1, 1))
    }

    pub fn from_int(n: i64) -> Self {
        Self::monomial(0, 0, gauss_from_ratio(n, 1))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::monomial(0, 0, gauss_from_ratio(num, den))
    }

    /// The monomial `coeff · q^qexp · c^cexp`.
    pub fn monomial(qexp: i64, cexp: u32, coeff: GaussRat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((qexp, cexp), coeff);
        }
        QcPoly { terms }
    }

    /// `q^k` (Laurent: `k` may be negative).
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(k, 0, gauss_from_ratio(1, 1))
    }

    /// The free symbol `c`.
    pub fn c_sym() -> Self {
        Self::monomial(0, 1, gauss_from_ratio(1, 1))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::monomial(
            0,
            0,
            Complex::new(BigRational::zero(), BigRational::one()),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (key, coeff) in &other.terms {
            let entry = terms.entry(*key).or_insert_with(gauss_zero);
            *entry = entry.clone() + coeff.clone();
            if entry.is_zero() {
                terms.remove(key);
            }
        }
        QcPoly { terms }
    }

    pub fn neg(&self) -> Self {
        QcPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, -v.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<(i64, u32), GaussRat> = BTreeMap::new();
        for ((qa, ca), va) in &self.terms {
            for ((qb, cb), vb) in &other.terms {
                let key = (qa + qb, ca + cb);
                let entry = terms.entry(key).or_insert_with(gauss_zero);
                *entry = entry.clone() + va.clone() * vb.clone();
            }
        }
        terms.retain(|_, v| !v.is_zero());
        QcPoly { terms }
    }

    pub fn conj(&self) -> Self {
        QcPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v.conj()))
                .collect(),
        }
    }

    /// Inverse exists only for single Gaussian-rational monomials.
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let ((qe, ce), v) = self.terms.iter().next().unwrap();
        if *ce != 0 {
            return None;
        }
        let norm = v.norm_sqr();
        if norm.is_zero() {
            return None;
        }
        let inv = v.conj() / norm;
        Some(QcPoly::monomial(-qe, 0, inv))
    }

    /// Evaluate at numeric `q` (and `c`, when the polynomial involves it).
    pub fn eval(&self, q: f64, c: Option<f64>) -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for ((qe, ce), v) in &self.terms {
            let mut factor = q.powi(*qe as i32);
            if *ce > 0 {
                let cv = c.ok_or_else(|| {
                    Error::InvalidParams(
                        "polynomial involves c but no numeric c was supplied".into(),
                    )
                })?;
                factor *= cv.powi(*ce as i32);
            }
            let re = v.re.to_f64().ok_or_else(|| {
                Error::InvalidParams("rational coefficient does not fit in f64".into())
            })?;
            let im = v.im.to_f64().ok_or_else(|| {
                Error::InvalidParams("rational coefficient does not fit in f64".into())
            })?;
            acc += C64::new(re, im) * factor;
        }
        Ok(acc)
    }

    /// Iterate `(q exponent, c exponent, coefficient)` triples.
    pub fn iter(&self) -> impl Iterator<Item = (i64, u32, &GaussRat)> {
        self.terms.iter().map(|((qe, ce), v)| (*qe, *ce, v))
    }
}

/// Render a nonnegative rational exactly: as an integer, as a terminating
/// decimal when the denominator is of the form `2^a·5^b`, or as `p/q`.
fn rat_str(r: &BigRational) -> String {
    assert!(!r.is_negative(), "rat_str expects a nonnegative value");
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut den = r.denom().clone();
    let mut twos = 0u32;
    let mut fives = 0u32;
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if den.is_one() {
        // Terminating decimal: numer / (2^a 5^b) = numer·scale / 10^k.
        let k = twos.max(fives);
        let scale = two.pow(k - twos) * five.pow(k - fives);
        let digits = (r.numer() * scale).to_string();
        let k = k as usize;
        if digits.len() > k {
            let (int_part, frac_part) = digits.split_at(digits.len() - k);
            format!("{int_part}.{frac_part}")
        } else {
            format!("0.{}{}", "0".repeat(k - digits.len()), digits)
        }
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render a signed rational (used inside parenthesised complex parts).
fn rat_str_signed(r: &BigRational) -> String {
    if r.is_negative() {
        format!("-{}", rat_str(&-r.clone()))
    } else {
        rat_str(r)
    }
}

/// Render a Gaussian rational as a parser-compatible scalar expression.
/// `1` and `-1` multipliers against `tail` (a q/c monomial) are folded.
fn gauss_str(v: &GaussRat, has_tail: bool) -> String {
    let re_zero = v.re.is_zero();
    let im_zero = v.im.is_zero();
    if im_zero {
        if v.re.is_one() && has_tail {
            return String::new();
        }
        return rat_str_signed(&v.re);
    }
    if re_zero {
        if v.im.is_one() {
            return "i".into();
        }
        if (-v.im.clone()).is_one() {
            return "-i".into();
        }
        return format!("{}*i", rat_str_signed(&v.im));
    }
    let im_part = if v.im.is_one() {
        "i".into()
    } else if (-v.im.clone()).is_one() {
        "- i".into()
    } else if v.im.is_negative() {
        format!("- {}*i", rat_str(&-v.im.clone()))
    } else {
        format!("{}*i", rat_str(&v.im))
    };
    let joiner = if im_part.starts_with('-') { " " } else { " + " };
    format!("({}{}{})", rat_str_signed(&v.re), joiner, im_part)
}

impl fmt::Display for QcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((qe, ce), v) in &self.terms {
            // Fold the sign of real and pure-imaginary coefficients into
            // the +/- separator so no bare `-` follows an operator.
            let negated = (v.im.is_zero() && v.re.is_negative())
                || (v.re.is_zero() && v.im.is_negative());
            let (sign_neg, vv) = if negated {
                (true, -v.clone())
            } else {
                (false, v.clone())
            };
            let mut parts: Vec<String> = Vec::new();
            let has_tail = *qe != 0 || *ce != 0;
            let coeff = gauss_str(&vv, has_tail);
            if !coeff.is_empty() {
                parts.push(coeff);
            }
            if *qe == 1 {
                parts.push("q".into());
            } else if *qe != 0 {
                parts.push(format!("q^{qe}"));
            }
            if *ce == 1 {
                parts.push("c".into());
            } else if *ce != 0 {
                parts.push(format!("c^{ce}"));
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            let body = parts.join("*");
            if first {
                if sign_neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if sign_neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// The exact coefficient ring (unit context: `q` and `c` stay symbolic).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Exact;

impl Ring for Exact {
    type Elem = QcPoly;

    fn zero(&self) -> QcPoly {
        QcPoly::zero()
    }
    fn one(&self) -> QcPoly {
        QcPoly::one()
    }
    fn from_int(&self, n: i64) -> QcPoly {
        QcPoly::from_int(n)
    }
    fn from_ratio(&self, num: i64, den: i64) -> QcPoly {
        QcPoly::from_ratio(num, den)
    }
    fn add(&self, a: &QcPoly, b: &QcPoly) -> QcPoly {
        a.add(b)
    }
    fn neg(&self, a: &QcPoly) -> QcPoly {
        a.neg()
    }
    fn mul(&self, a: &QcPoly, b: &QcPoly) -> QcPoly {
        a.mul(b)
    }
    fn conj(&self, a: &QcPoly) -> QcPoly {
        a.conj()
    }
    fn inv(&self, a: &QcPoly) -> Option<QcPoly> {
        a.inv()
    }
    fn q_pow(&self, k: i64) -> QcPoly {
        QcPoly::q_pow(k)
    }
    fn c(&self) -> Option<QcPoly> {
        Some(QcPoly::c_sym())
    }
    fn i(&self) -> QcPoly {
        QcPoly::i()
    }
    fn is_zero(&self, a: &QcPoly) -> bool {
        a.is_zero()
    }
    fn is_negligible(&self, a: &QcPoly) -> bool {
        a.is_zero()
    }
    fn describe(&self) -> String {
        "exact (q, c symbolic)".into()
    }
    fn fmt_elem(&self, a: &QcPoly) -> String {
        match a.terms.len() {
            0 => "0".into(),
            1 => a.to_string(),
            _ => format!("({a})"),
        }
    }
    fn display_negated(&self, a: &QcPoly) -> Option<QcPoly> {
        if a.terms.len() != 1 {
            return None;
        }
        let v = a.terms.values().next().unwrap();
        let negated = (v.im.is_zero() && v.re.is_negative())
            || (v.re.is_zero() && v.im.is_negative());
        if negated {
            Some(a.neg())
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Float backend
// ---------------------------------------------------------------------------

/// Floating-point coefficient context: numeric `q`, optional numeric `c`
/// (absent for the equatorial sphere, the disc and the projective plane),
/// and the tolerance used by equality tests.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Floats {
    pub q: f64,
    pub c: Option<f64>,
    pub eps: f64,
}

impl Floats {
    /// Context without a sphere parameter (equator, disc, projective plane).
    pub fn new(q: f64, eps: f64) -> Result<Self> {
        Self::with_c_opt(q, None, eps)
    }

    /// Context carrying a finite sphere parameter `c ≥ 0`.
    pub fn with_c(q: f64, c: f64, eps: f64) -> Result<Self> {
        Self::with_c_opt(q, Some(c), eps)
    }

    pub fn with_c_opt(q: f64, c: Option<f64>, eps: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParams(format!(
                "q must lie strictly between 0 and 1, got {q}"
            )));
        }
        if let Some(c) = c {
            if !(c >= 0.0 && c.is_finite()) {
                return Err(Error::InvalidParams(format!(
                    "c must be finite and nonnegative, got {c}"
                )));
            }
        }
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "tolerance must be positive, got {eps}"
            )));
        }
        Ok(Floats { q, c, eps })
    }
}

/// Format an `f64` so the expression parser reads it back (Rust's `Display`
/// for floats never uses scientific notation).
fn f64_str(x: f64) -> String {
    format!("{x}")
}

impl Ring for Floats {
    type Elem = C64;

    fn zero(&self) -> C64 {
        C64::new(0.0, 0.0)
    }
    fn one(&self) -> C64 {
        C64::new(1.0, 0.0)
    }
    fn from_int(&self, n: i64) -> C64 {
        C64::new(n as f64, 0.0)
    }
    fn from_ratio(&self, num: i64, den: i64) -> C64 {
        assert!(den != 0, "zero denominator");
        C64::new(num as f64 / den as f64, 0.0)
    }
    fn add(&self, a: &C64, b: &C64) -> C64 {
        a + b
    }
    fn neg(&self, a: &C64) -> C64 {
        -a
    }
    fn mul(&self, a: &C64, b: &C64) -> C64 {
        a * b
    }
    fn conj(&self, a: &C64) -> C64 {
        a.conj()
    }
    fn inv(&self, a: &C64) -> Option<C64> {
        if a.norm() == 0.0 {
            None
        } else {
            Some(a.inv())
        }
    }
    fn q_pow(&self, k: i64) -> C64 {
        C64::new(self.q.powi(k as i32), 0.0)
    }
    fn c(&self) -> Option<C64> {
        self.c.map(|c| C64::new(c, 0.0))
    }
    fn i(&self) -> C64 {
        C64::new(0.0, 1.0)
    }
    fn is_zero(&self, a: &C64) -> bool {
        a.re == 0.0 && a.im == 0.0
    }
    fn is_negligible(&self, a: &C64) -> bool {
        a.norm() <= self.eps
    }
    fn describe(&self) -> String {
        match self.c {
            Some(c) => format!("float (q={}, c={}, eps={})", self.q, c, self.eps),
            None => format!("float (q={}, eps={})", self.q, self.eps),
        }
    }
    fn fmt_elem(&self, a: &C64) -> String {
        if a.im == 0.0 {
            f64_str(a.re)
        } else if a.re == 0.0 {
            if a.im == 1.0 {
                "i".into()
            } else if a.im == -1.0 {
                "-i".into()
            } else {
                format!("{}*i", f64_str(a.im))
            }
        } else {
            let im_part = if a.im == 1.0 {
                "+ i".into()
            } else if a.im == -1.0 {
                "- i".into()
            } else if a.im < 0.0 {
                format!("- {}*i", f64_str(-a.im))
            } else {
                format!("+ {}*i", f64_str(a.im))
            };
            format!("({} {})", f64_str(a.re), im_part)
        }
    }
    fn display_negated(&self, a: &C64) -> Option<C64> {
        if (a.im == 0.0 && a.re < 0.0) || (a.re == 0.0 && a.im < 0.0) {
            Some(-a)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_and_conjugation() {
        let r = Exact;
        // (1 - q^4) · (1 + q^4) = 1 - q^8
        let a = r.add(&r.one(), &r.neg(&r.q_pow(4)));
        let b = r.add(&r.one(), &r.q_pow(4));
        let prod = r.mul(&a, &b);
        let expected = r.add(&r.one(), &r.neg(&r.q_pow(8)));
        assert_eq!(prod, expected);

        // conj(i·q) = -i·q
        let iq = r.mul(&r.i(), &r.q_pow(1));
        assert_eq!(r.conj(&iq), r.neg(&iq));

        // i² = -1
        assert_eq!(r.mul(&r.i(), &r.i()), r.from_int(-1));
    }

    #[test]
    fn exact_eval_matches_float() {
        let r = Exact;
        // 1 - q^4 + c·q^{-2} at q = 0.5, c = 2
        let e = r.add(
            &r.add(&r.one(), &r.neg(&r.q_pow(4))),
            &r.mul(&r.c().unwrap(), &r.q_pow(-2)),
        );
        let v = e.eval(0.5, Some(2.0)).unwrap();
        let expected = 1.0 - 0.5f64.powi(4) + 2.0 * 0.5f64.powi(-2);
        assert!((v.re - expected).abs() < 1e-15);
        assert_eq!(v.im, 0.0);

        // c required but missing
        assert!(r.c().unwrap().eval(0.5, None).is_err());
    }

    #[test]
    fn exact_display_is_exact() {
        let r = Exact;
        let e = r.add(&r.one(), &r.neg(&r.q_pow(4)));
        assert_eq!(e.to_string(), "1 - q^4");
        assert_eq!(QcPoly::from_ratio(1, 2).to_string(), "0.5");
        assert_eq!(QcPoly::from_ratio(-3, 4).to_string(), "-0.75");
        assert_eq!(QcPoly::from_ratio(1, 3).to_string(), "1/3");
        assert_eq!(QcPoly::q_pow(-4).to_string(), "q^-4");
        assert_eq!(r.mul(&QcPoly::i(), &QcPoly::c_sym()).to_string(), "i*c");
        assert_eq!(QcPoly::zero().to_string(), "0");
    }

    #[test]
    fn float_context_validation() {
        assert!(Floats::new(0.5, 1e-10).is_ok());
        assert!(Floats::new(0.0, 1e-10).is_err());
        assert!(Floats::new(1.0, 1e-10).is_err());
        assert!(Floats::with_c(0.5, -1.0, 1e-10).is_err());
        assert!(Floats::new(0.5, 0.0).is_err());
    }

    #[test]
    fn float_negligible_respects_eps() {
        let r = Floats::new(0.5, 1e-6).unwrap();
        assert!(r.is_negligible(&C64::new(1e-7, 0.0)));
        assert!(!r.is_negligible(&C64::new(1e-5, 0.0)));
        // structural zero test is exact
        assert!(!r.is_zero(&C64::new(1e-300, 0.0)));
    }

    #[test]
    fn rational_decimal_rendering() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rat_str(&half), "0.5");
        let r = BigRational::new(BigInt::from(7), BigInt::from(40));
        assert_eq!(rat_str(&r), "0.175");
        let r = BigRational::new(BigInt::from(1), BigInt::from(1000));
        assert_eq!(rat_str(&r), "0.001");
    }
}
