//! Values of the Steinberg character on split very regular and topologically
//! unipotent elements, plus the split-case facet count and parabolic cross-check.
//!
//! A split very regular element `t` is represented only through its valuation
//! datum `y` (with `t` in `T(K)_y`). For dominant `y` three routes are provided:
//!
//! - [`SteinbergCalculator::alternating_sum`] sums over pairs `(J, w)` with
//!   `w` a minimal coset representative, taking every exponent from the
//!   valuations of `beta(t')` and `1 - beta(t')` for `t' = w_0(t)`;
//! - [`SteinbergCalculator::xw_form`] uses the collapsed weights `x_w` and
//!   coefficients `c_w`;
//! - [`SteinbergCalculator::closed_form`] is `q^{-<y^+, 2 rho>}`.
//!
//! For `<y, alpha> = 0` the valuation rule `v(1 - beta(t')) = v(beta(t'))` relies on
//! `alpha(t)` avoiding `1 + p`, which is part of the very regular hypothesis and
//! cannot be checked symbolically.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::LaurentPoly;
use crate::rootdatum::{Character, Cochar, RootDatum};
use crate::weyl::{NodeSet, WeylGroup, WeylId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ClosedForm,
    AlternatingSum,
    XwCollapse,
    Cor34,
    Thm43,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::AlternatingSum => "alternating-sum",
            Method::XwCollapse => "xw-collapse",
            Method::Cor34 => "cor34",
            Method::Thm43 => "thm43",
        })
    }
}

/// A character value with its provenance; serializes as `{datum, y, method, value}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharResult {
    pub datum: String,
    /// `y` in the declared basis of `Y`.
    pub y: Vec<i64>,
    pub method: Method,
    pub value: LaurentPoly,
}

/// `x_w = 2 sum_{a > 0, w^{-1} a < 0} w^{-1} a`.
pub fn x_w(weyl: &WeylGroup, w: WeylId) -> Character {
    let d = weyl.datum();
    let winv = weyl.elt(weyl.inverse(w));
    let mut x = Character::zero(d.rank());
    for k in d.positive_roots() {
        let b = winv.act_root(k);
        if !d.is_positive(b) {
            x.add_scaled(d.root(b), 2);
        }
    }
    x
}

/// `c_w = sum_{J subset L(w)} (-1)^{|J|}`, by the literal subset sum.
pub fn c_w(weyl: &WeylGroup, w: WeylId) -> i64 {
    weyl.ascent_set(w)
        .subsets()
        .map(|j| if j.len() % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// `v(1 - beta(t'))` for `t'` with valuation datum `y'`, `-y'` dominant:
/// equal to `v(beta(t')) = <y', beta>` for positive `beta`, and 0 for negative `beta`.
fn valuation_one_minus(d: &RootDatum, pairings: &[i64], beta: usize) -> i64 {
    if d.is_positive(beta) {
        pairings[beta]
    } else {
        0
    }
}

/// One summand `(J, w)` of the alternating sum, recorded as the roots
/// `w^{-1} a` entering the modulus of `Ad(w(t'))` on `n_J` and on `g / l_J`.
#[derive(Clone, Debug)]
pub struct AltTerm {
    pub j: NodeSet,
    pub w: WeylId,
    /// `w^{-1} a` for `a` in `R^+ - R_J^+`.
    pub nilradical_roots: Vec<usize>,
    /// `w^{-1} a` for `a` in `R - R_J`.
    pub quotient_roots: Vec<usize>,
}

impl AltTerm {
    /// `x_{w,J} = sum_{R^+ - R_J^+} w^{-1}a - sum_{a in R - R_J, w^{-1}a > 0} w^{-1}a`.
    pub fn x_wj(&self, d: &RootDatum) -> Character {
        let mut x = Character::zero(d.rank());
        for &b in &self.nilradical_roots {
            x.add_scaled(d.root(b), 1);
        }
        for &b in &self.quotient_roots {
            if d.is_positive(b) {
                x.add_scaled(d.root(b), -1);
            }
        }
        x
    }

    /// Exponent of `v` in `delta_J(w t')^{1/2} D_{I,J}(w t')^{-1/2}`.
    fn exponent(&self, d: &RootDatum, pairings: &[i64]) -> i64 {
        // delta_J = prod q^{-v(beta(t'))}, D_{I,J} = prod q^{-v(1 - beta(t'))}
        let delta: i64 = self.nilradical_roots.iter().map(|&b| -pairings[b]).sum();
        let disc: i64 = self
            .quotient_roots
            .iter()
            .map(|&b| -valuation_one_minus(d, pairings, b))
            .sum();
        delta - disc
    }
}

/// Cached per-datum tables for repeated character evaluation.
#[derive(Clone, Debug)]
pub struct SteinbergCalculator {
    weyl: Arc<WeylGroup>,
    terms: Vec<AltTerm>,
    xw: Vec<(WeylId, i64, Character)>,
}

impl SteinbergCalculator {
    pub fn new(weyl: Arc<WeylGroup>) -> Self {
        let d = weyl.datum().clone();
        let rank = d.rank();
        let mut terms = Vec::new();
        for j in NodeSet::full(rank).subsets() {
            let pr = weyl.parabolic_roots(j);
            let mut in_rj = vec![false; d.num_roots()];
            for &k in &pr.all {
                in_rj[k] = true;
            }
            for w in weyl.min_coset_reps(j) {
                let winv = weyl.elt(weyl.inverse(w));
                let nilradical_roots = d
                    .positive_roots()
                    .filter(|&k| !in_rj[k])
                    .map(|k| winv.act_root(k))
                    .collect();
                let quotient_roots = (0..d.num_roots())
                    .filter(|&k| !in_rj[k])
                    .map(|k| winv.act_root(k))
                    .collect();
                terms.push(AltTerm { j, w, nilradical_roots, quotient_roots });
            }
        }
        let xw = weyl
            .ids()
            .map(|w| (w, c_w(&weyl, w), x_w(&weyl, w)))
            .filter(|(_, c, _)| *c != 0)
            .collect();
        Self { weyl, terms, xw }
    }

    pub fn weyl(&self) -> &Arc<WeylGroup> {
        &self.weyl
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        self.weyl.datum()
    }

    /// The `(J, w)` summands of the alternating sum.
    pub fn terms(&self) -> &[AltTerm] {
        &self.terms
    }

    fn check_y(&self, y: &Cochar) -> Result<()> {
        let d = self.datum();
        if y.0.len() != d.rank() {
            return Err(Error::DimensionMismatch { expected: d.rank(), got: y.0.len() });
        }
        if !d.y_lattice().contains(&y.0) {
            return Err(Error::NotInLattice(y.0.clone()));
        }
        Ok(())
    }

    fn check_dominant(&self, y: &Cochar) -> Result<()> {
        self.check_y(y)?;
        if self.datum().dominance(y).is_dominant() {
            Ok(())
        } else {
            Err(Error::NotDominant(y.0.clone()))
        }
    }

    fn result(&self, y: &Cochar, method: Method, value: LaurentPoly) -> CharResult {
        let d = self.datum();
        CharResult {
            datum: d.spec().to_string(),
            y: d.basis_coords(y).expect("y was checked to lie in Y"),
            method,
            value,
        }
    }

    /// `sum_J (-1)^{|J|} sum_{w in ^J W} delta_J(w t')^{1/2} D_{I,J}(w t')^{-1/2}`, `y` dominant.
    pub fn alternating_sum(&self, y: &Cochar) -> Result<CharResult> {
        self.check_dominant(y)?;
        let d = self.datum();
        let y_prime = self.weyl.act_cochar(self.weyl.longest(), y);
        let pairings: Vec<i64> = (0..d.num_roots()).map(|k| d.pair_root(&y_prime, k)).collect();
        let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
        for t in &self.terms {
            let sign = if t.j.len() % 2 == 0 { 1 } else { -1 };
            *acc.entry(t.exponent(d, &pairings)).or_default() += sign;
        }
        let value = LaurentPoly::from_terms(acc.into_iter().map(|(n, c)| (n, BigInt::from(c))));
        Ok(self.result(y, Method::AlternatingSum, value))
    }

    /// `sum_w c_w sqrt(q)^{-<y', x_w>}`, `y` dominant.
    pub fn xw_form(&self, y: &Cochar) -> Result<CharResult> {
        self.check_dominant(y)?;
        let d = self.datum();
        let y_prime = self.weyl.act_cochar(self.weyl.longest(), y);
        let mut value = LaurentPoly::zero();
        for (_, c, x) in &self.xw {
            let e = -d.pairing(&y_prime, x)?;
            value.add_term(e, BigInt::from(*c));
        }
        Ok(self.result(y, Method::XwCollapse, value))
    }

    /// `q^{-<y^+, 2 rho>}` where `y^+` is the dominant conjugate of `y`.
    pub fn closed_form(&self, y: &Cochar) -> Result<CharResult> {
        self.check_y(y)?;
        let (_, dom) = self.weyl.dominant_conjugate(y);
        let value = LaurentPoly::q_pow(-self.datum().pair_two_rho(&dom));
        Ok(self.result(y, Method::ClosedForm, value))
    }

    /// Split case of `(-1)^{dim T - dim A'} delta_{P_gamma}(gamma)`: with `y^+` dominant
    /// and `J = {i : <y^+, alpha_i> = 0}`, returns `q^{-sum_{a in R^+ - R_J^+} <y^+, a>}`.
    pub fn corollary34_split(&self, y: &Cochar) -> Result<CharResult> {
        self.check_y(y)?;
        let d = self.datum();
        let (_, dom) = self.weyl.dominant_conjugate(y);
        let j = NodeSet::from_indices(
            &(0..d.rank()).filter(|&i| dom.0[i] == 0).collect::<Vec<_>>(),
        );
        let levi = self.weyl.parabolic_roots(j);
        let exponent: i64 = d
            .positive_roots()
            .filter(|k| !levi.positive.contains(k))
            .map(|k| d.pair_root(&dom, k))
            .sum();
        let sign = cvr_sign(d.rank() as i64, d.rank() as i64)?;
        let value = LaurentPoly::monomial(sign, -2 * exponent);
        Ok(self.result(y, Method::Cor34, value))
    }

    /// The three routes for dominant `y`, in the order closed form, alternating sum, `x_w` form.
    pub fn all_methods(&self, y: &Cochar) -> Result<[CharResult; 3]> {
        Ok([self.closed_form(y)?, self.alternating_sum(y)?, self.xw_form(y)?])
    }
}

/// `(-1)^{dim T - dim A'}`.
pub fn cvr_sign(dim_t: i64, dim_a: i64) -> Result<i64> {
    if dim_a < 0 || dim_a > dim_t {
        return Err(Error::SignRange { dim_t, dim_a });
    }
    Ok(if (dim_t - dim_a) % 2 == 0 { 1 } else { -1 })
}

/// Valuations `n_a = v(a(tau) - 1) >= 1` on positive roots, extended by `n_{-a} = n_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnipotentData {
    /// Indexed by positive-root index in the datum's root list.
    n: Vec<u64>,
}

impl UnipotentData {
    pub fn new(d: &RootDatum, n: Vec<u64>) -> Result<Self> {
        let npos = d.positive_roots().count();
        if n.len() != npos {
            return Err(Error::InvalidUnipotent(format!("expected {npos} values, got {}", n.len())));
        }
        if let Some(k) = n.iter().position(|&x| x == 0) {
            return Err(Error::InvalidUnipotent(format!("n for positive root {k} must be >= 1")));
        }
        Ok(Self { n })
    }

    pub fn uniform(d: &RootDatum, n: u64) -> Result<Self> {
        Self::new(d, vec![n; d.positive_roots().count()])
    }

    /// From a map positive-root index -> `n_a`; every positive root must appear.
    pub fn from_map(d: &RootDatum, map: &BTreeMap<usize, u64>) -> Result<Self> {
        let npos = d.positive_roots().count();
        if let Some(k) = map.keys().find(|&&k| k >= npos) {
            return Err(Error::InvalidUnipotent(format!("{k} is not a positive-root index (0..{npos})")));
        }
        let n = (0..npos)
            .map(|k| {
                map.get(&k)
                    .copied()
                    .ok_or_else(|| Error::InvalidUnipotent(format!("missing n for positive root {k}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(d, n)
    }

    /// `n_a` for any root index (negative roots use `n_{-a}`).
    pub fn n(&self, d: &RootDatum, k: usize) -> u64 {
        let p = if d.is_positive(k) { k } else { d.negate(k) };
        self.n[p]
    }

    pub fn values(&self) -> &[u64] {
        &self.n
    }

    /// `sum_{a in R} n_a`.
    pub fn total(&self) -> u64 {
        2 * self.n.iter().sum::<u64>()
    }
}

/// `sum_J (-1)^{|J|} sum_{w in ^J W} q^{sum_R n_a / 2 - sum_{a in R_J} n_{w^{-1} a} / 2}`.
pub fn unipotent_expansion(weyl: &WeylGroup, u: &UnipotentData) -> LaurentPoly {
    let d = weyl.datum();
    let total = u.total() as i64;
    let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
    for j in NodeSet::full(d.rank()).subsets() {
        let rj = weyl.parabolic_roots(j).all;
        let sign = if j.len() % 2 == 0 { 1 } else { -1 };
        for w in weyl.min_coset_reps(j) {
            let winv = weyl.elt(weyl.inverse(w));
            let levi: u64 = rj.iter().map(|&k| u.n(d, winv.act_root(k))).sum();
            *acc.entry(total - levi as i64).or_default() += sign;
        }
    }
    LaurentPoly::from_terms(acc.into_iter().map(|(n, c)| (n, BigInt::from(c))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerRow {
    /// One-based rendering of `J`.
    pub j: String,
    pub subgroup_order: usize,
    /// `|W| / |W_J|`
    pub facets: usize,
    /// `(-1)^{|I| - |J|}`
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub datum: String,
    pub rows: Vec<EulerRow>,
    pub total: i64,
    pub expected: i64,
    pub holds: bool,
}

/// Signed facet count `sum_J (-1)^{|I|-|J|} |W|/|W_J|` against `(-1)^{|I|}`.
pub fn facet_euler_check(weyl: &WeylGroup) -> EulerReport {
    let rank = weyl.rank();
    let order = weyl.order();
    let mut rows = Vec::new();
    let mut total = 0i64;
    for j in NodeSet::full(rank).subsets() {
        let sub = weyl.parabolic_subgroup(j).len();
        let sign = if (rank - j.len()).is_multiple_of(2) { 1 } else { -1 };
        let facets = order / sub;
        total += sign * facets as i64;
        rows.push(EulerRow { j: j.to_string(), subgroup_order: sub, facets, sign });
    }
    let expected = if rank.is_multiple_of(2) { 1 } else { -1 };
    EulerReport {
        datum: weyl.datum().spec().to_string(),
        rows,
        total,
        expected,
        holds: total == expected,
    }
}
