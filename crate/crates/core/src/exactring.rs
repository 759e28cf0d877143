//! Exact Laurent polynomials in `v = q^{1/2}` with big-integer coefficients.
//!
//! Every character value and every Hecke-algebra coefficient in this crate is a
//! [`LaurentPoly`]. Exponents are powers of `v`, so `q^k` is stored under the
//! key `2k` and half-integral powers of `q` are odd keys.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite sum `sum c_n v^n` with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * v^n`. A zero coefficient yields the zero polynomial.
    pub fn monomial(c: impl Into<BigInt>, n: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        Self { terms }
    }

    /// `v^n`.
    pub fn v_pow(n: i64) -> Self {
        Self::monomial(1, n)
    }

    /// `q^k = v^{2k}`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial(1, 2 * k)
    }

    /// The element `q` itself.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero();
        for (n, c) in terms {
            out.add_term(n, c.into());
        }
        out
    }

    /// Adds `c * v^n` in place, keeping the canonical form.
    pub fn add_term(&mut self, n: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(n).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Number of nonzero terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    /// Coefficient of `v^n` (zero if absent).
    pub fn coeff(&self, n: i64) -> BigInt {
        self.terms.get(&n).cloned().unwrap_or_default()
    }

    /// The term of maximal `v`-exponent.
    pub fn leading(&self) -> Result<(i64, BigInt)> {
        self.terms
            .iter()
            .next_back()
            .map(|(&n, c)| (n, c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// The term of minimal `v`-exponent.
    pub fn trailing(&self) -> Result<(i64, BigInt)> {
        self.terms
            .iter()
            .next()
            .map(|(&n, c)| (n, c.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Returns `(c, n)` if this is a single term `c * v^n`.
    pub fn as_monomial(&self) -> Option<(BigInt, i64)> {
        if self.terms.len() == 1 {
            let (&n, c) = self.terms.iter().next()?;
            Some((c.clone(), n))
        } else {
            None
        }
    }

    /// True when every exponent is even, i.e. the value is a Laurent polynomial in `q`.
    pub fn is_integral_in_q(&self) -> bool {
        self.terms.keys().all(|n| n % 2 == 0)
    }

    /// Multiplies by `v^n`.
    pub fn shift(&self, n: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e + n, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, a)| (e, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Integer value at `v = value`. Negative exponents must divide out exactly.
    pub fn eval_v(&self, value: &BigInt) -> Option<BigInt> {
        if value.is_zero() {
            return if self.terms.keys().all(|&n| n >= 0) {
                Some(self.coeff(0))
            } else {
                None
            };
        }
        let min = self.terms.keys().next().copied().unwrap_or(0).min(0);
        let mut num = BigInt::zero();
        for (&n, c) in &self.terms {
            num += c * num_traits::pow(value.clone(), (n - min) as usize);
        }
        let den = num_traits::pow(value.clone(), (-min) as usize);
        if (&num % &den).is_zero() {
            Some(num / den)
        } else {
            None
        }
    }

    /// JSON form: `[[exponent, "coefficient"], ...]` sorted by exponent.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms.iter().map(|(&n, c)| (n, c.to_string())).collect()
    }

    pub fn from_pairs(pairs: &[(i64, String)]) -> Result<Self> {
        let mut out = Self::zero();
        for (n, s) in pairs {
            let c: BigInt = s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
            out.add_term(*n, c);
        }
        Ok(out)
    }

    /// Renders in `v`, e.g. `v^3 - 2*v^-1`.
    pub fn to_v_string(&self) -> String {
        self.render('v', 1)
    }

    /// Renders in `q`; falls back to `v` when an odd exponent is present.
    pub fn to_q_string(&self) -> String {
        if self.is_integral_in_q() {
            self.render('q', 2)
        } else {
            self.to_v_string()
        }
    }

    fn render(&self, var: char, step: i64) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (&n, c)) in self.terms.iter().rev().enumerate() {
            let e = n / step;
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let var_part = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if var_part.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&var_part);
            } else {
                out.push_str(&format!("{abs}*{var_part}"));
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_q_string())
    }
}

/// Parses the text forms produced by [`LaurentPoly::to_q_string`] and
/// [`LaurentPoly::to_v_string`], e.g. `2*q^2 - 1`, `-3*v`, `q^-1 + v^3`.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        // Split into signed terms; a sign right after '^' or '{' belongs to the exponent.
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !matches!(prev, Some('^') | Some('{')) {
                if !cur.is_empty() {
                    pieces.push((neg, std::mem::take(&mut cur)));
                } else if prev.is_some() {
                    return Err(bad("dangling sign"));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        if cur.is_empty() {
            return Err(bad("trailing sign"));
        }
        pieces.push((neg, cur));

        let mut out = Self::zero();
        for (neg, piece) in pieces {
            let (coef_str, var_str) = match piece.find(['q', 'v']) {
                Some(pos) => {
                    let (c, rest) = piece.split_at(pos);
                    let c = c.strip_suffix('*').unwrap_or(c);
                    if c.ends_with('*') {
                        return Err(bad("doubled '*'"));
                    }
                    (c, Some(rest))
                }
                None => (piece.as_str(), None),
            };
            let mut coef: BigInt = if coef_str.is_empty() {
                if var_str.is_none() {
                    return Err(bad("missing coefficient"));
                }
                BigInt::one()
            } else {
                coef_str
                    .parse()
                    .map_err(|_| bad(&format!("bad coefficient {coef_str:?}")))?
            };
            if neg {
                coef = -coef;
            }
            let exp = match var_str {
                None => 0,
                Some(rest) => {
                    let mut chars = rest.chars();
                    let step = match chars.next() {
                        Some('q') => 2,
                        _ => 1,
                    };
                    let tail = chars.as_str();
                    let e: i64 = if tail.is_empty() {
                        1
                    } else {
                        let digits = tail
                            .strip_prefix('^')
                            .ok_or_else(|| bad(&format!("bad exponent {tail:?}")))?;
                        let digits = digits
                            .strip_prefix('{')
                            .and_then(|d| d.strip_suffix('}'))
                            .unwrap_or(digits);
                        digits
                            .parse()
                            .map_err(|_| bad(&format!("bad exponent {digits:?}")))?
                    };
                    e * step
                }
            };
            out.add_term(exp, coef);
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(i64, String)>::deserialize(deserializer)?;
        LaurentPoly::from_pairs(&pairs).map_err(D::Error::custom)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&n, c) in &rhs.terms {
            self.add_term(n, c.clone());
        }
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (&n, c) in &rhs.terms {
            self.add_term(n, -c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&n, c)| (n, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn inverse_monomials_cancel() {
        assert_eq!(&LaurentPoly::v_pow(2) * &LaurentPoly::v_pow(-2), LaurentPoly::one());
    }

    #[test]
    fn q_minus_one_plus_one_is_q() {
        let a = LaurentPoly::q() - LaurentPoly::one();
        assert_eq!(a + LaurentPoly::one(), LaurentPoly::v_pow(2));
    }

    #[test]
    fn square_of_v_plus_inverse() {
        let a = LaurentPoly::v_pow(1) + LaurentPoly::v_pow(-1);
        let expected = LaurentPoly::from_terms([(2, 1), (0, 2), (-2, 1)]);
        assert_eq!(&a * &a, expected);
        assert_eq!(a.pow(2), expected);
    }

    #[test]
    fn monomial_examples() {
        assert_eq!(LaurentPoly::monomial(1, -4), LaurentPoly::q_pow(-2));
        let z = LaurentPoly::monomial(0, 7);
        assert!(z.is_zero());
        assert_eq!(z.num_terms(), 0);
        let m = LaurentPoly::monomial(-3, 1);
        assert_eq!(m.as_monomial(), Some((BigInt::from(-3), 1)));
        assert_eq!(m.to_string(), "-3*v");
    }

    #[test]
    fn leading_terms() {
        let a = lp("2*q - 1");
        assert_eq!(a.leading().unwrap(), (2, BigInt::from(2)));
        for m in 1..5 {
            assert_eq!(LaurentPoly::q_pow(-2 * m).leading().unwrap(), (-4 * m, BigInt::one()));
        }
        assert_eq!(LaurentPoly::constant(-1).leading().unwrap(), (0, BigInt::from(-1)));
        assert!(matches!(LaurentPoly::zero().leading(), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn rendering() {
        assert_eq!(LaurentPoly::from_terms([(4, 2), (0, -1)]).to_string(), "2*q^2 - 1");
        assert_eq!(LaurentPoly::v_pow(3).to_string(), "v^3");
        assert_eq!(LaurentPoly::q_pow(-1).to_string(), "q^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from_terms([(2, 1), (1, -1)]).to_string(), "v^2 - v");
        assert_eq!(LaurentPoly::q_pow(3).to_v_string(), "v^6");
    }

    #[test]
    fn parsing() {
        assert_eq!(lp("2*q^2 - 1"), LaurentPoly::from_terms([(4, 2), (0, -1)]));
        assert_eq!(lp("q^-1"), LaurentPoly::q_pow(-1));
        assert_eq!(lp("q^{-4}"), LaurentPoly::q_pow(-4));
        assert_eq!(lp("-v + 3v^-3"), LaurentPoly::from_terms([(1, -1), (-3, 3)]));
        assert_eq!(lp("0"), LaurentPoly::zero());
        assert_eq!(lp("q - q"), LaurentPoly::zero());
        for bad in ["", "2*", "q^", "+", "1 +", "x", "2**q"] {
            assert!(bad.parse::<LaurentPoly>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn json_shape() {
        let a = lp("2*q - 1");
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"[[0,"-1"],[2,"2"]]"#);
        let back: LaurentPoly = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        let summed: LaurentPoly = serde_json::from_str(r#"[[1,"1"],[1,"-1"]]"#).unwrap();
        assert!(summed.is_zero());
        assert!(serde_json::from_str::<LaurentPoly>(r#"[[0,"x"]]"#).is_err());
    }

    #[test]
    fn big_coefficients_stay_exact() {
        let a = LaurentPoly::from_terms([(1, 1), (0, 1)]).pow(80);
        let (n, c) = a.leading().unwrap();
        assert_eq!((n, c), (80, BigInt::one()));
        // middle binomial coefficient C(80, 40)
        let expected: BigInt = "107507208733336176461620".parse().unwrap();
        assert_eq!(a.coeff(40), expected);
    }

    #[test]
    fn evaluation() {
        let a = lp("2*q - 1");
        assert_eq!(a.eval_v(&BigInt::from(3)), Some(BigInt::from(17)));
        assert_eq!(LaurentPoly::q_pow(-1).eval_v(&BigInt::from(2)), None);
        assert_eq!(lp("v^-1 + v").eval_v(&BigInt::one()), Some(BigInt::from(2)));
    }
}
