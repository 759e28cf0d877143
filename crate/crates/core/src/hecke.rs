//! The Iwahori-Hecke algebra of the extended affine Weyl group with parameter `q`,
//! its finite-dimensional modules given by generator matrices, and traces of `T_y`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::affweyl::{AffineElt, AffineWeylGroup};
use crate::error::{Error, Result};
use crate::exactring::LaurentPoly;
use crate::rootdatum::{Cochar, RootDatum};

/// A finite combination `sum c_x T_x` with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElt {
    terms: BTreeMap<AffineElt, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `T_x`.
    pub fn basis(x: AffineElt) -> Self {
        Self::term(x, LaurentPoly::one())
    }

    /// `c T_x`.
    pub fn term(x: AffineElt, c: LaurentPoly) -> Self {
        let mut out = Self::zero();
        out.add_term(x, c);
        out
    }

    pub fn add_term(&mut self, x: AffineElt, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(cur) => {
                *cur += &c;
                if cur.is_zero() {
                    self.terms.remove(&x);
                }
            }
            None => {
                self.terms.insert(x, c);
            }
        }
    }

    pub fn add(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (x, a) in &self.terms {
            out.add_term(x.clone(), a * c);
        }
        out
    }

    pub fn coeff(&self, x: &AffineElt) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis elements in the support.
    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AffineElt, &LaurentPoly)> {
        self.terms.iter()
    }

    /// `Some(x)` when this is exactly `T_x`.
    pub fn as_basis_element(&self) -> Option<&AffineElt> {
        match self.terms.iter().next() {
            Some((x, c)) if self.terms.len() == 1 && c.is_one() => Some(x),
            _ => None,
        }
    }
}

/// The Hecke algebra `H` over `Z[v, v^{-1}]`, `q = v^2`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    group: Arc<AffineWeylGroup>,
}

impl HeckeAlgebra {
    pub fn new(group: Arc<AffineWeylGroup>) -> Self {
        Self { group }
    }

    pub fn group(&self) -> &Arc<AffineWeylGroup> {
        &self.group
    }

    pub fn one(&self) -> HeckeElt {
        HeckeElt::basis(self.group.identity())
    }

    /// `T_{s_k} h` via `T_s T_x = T_{sx}` if `l(sx) > l(x)`, else `q T_{sx} + (q-1) T_x`.
    pub fn left_mul_generator(&self, k: usize, h: &HeckeElt) -> HeckeElt {
        let q = LaurentPoly::q();
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = HeckeElt::zero();
        for (x, c) in h.iter() {
            let sx = self.group.left_mul_generator(k, x);
            if self.group.im_length(&sx) > self.group.im_length(x) {
                out.add_term(sx, c.clone());
            } else {
                out.add_term(sx, c * &q);
                out.add_term(x.clone(), c * &q_minus_one);
            }
        }
        out
    }

    /// `T_x T_z`, by writing `x = s_{k1} .. s_{kn} omega` and multiplying on the left.
    pub fn mul_basis(&self, x: &AffineElt, z: &AffineElt) -> HeckeElt {
        let dec = self.group.decompose(x);
        let omega = &self.group.omega()[dec.omega];
        let mut acc = HeckeElt::basis(self.group.mul(omega, z));
        for &k in dec.word.iter().rev() {
            acc = self.left_mul_generator(k, &acc);
        }
        acc
    }

    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (x, cx) in a.iter() {
            for (z, cz) in b.iter() {
                let coeff = cx * cz;
                for (u, cu) in self.mul_basis(x, z).iter() {
                    out.add_term(u.clone(), cu * &coeff);
                }
            }
        }
        out
    }

    /// Checked product: every support element must belong to this group.
    pub fn try_mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt> {
        for (x, _) in a.iter().chain(b.iter()) {
            self.group.try_mul(x, &self.group.identity())?;
        }
        Ok(self.mul(a, b))
    }
}

/// A square matrix over [`LaurentPoly`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentMatrix {
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: vec![LaurentPoly::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, &LaurentPoly::one())
    }

    pub fn scalar(dim: usize, c: &LaurentPoly) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Module(format!("matrix is not square ({dim} rows)")));
        }
        Ok(Self { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.entries.chunks(self.dim.max(1)).take(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix {
            dim: self.dim,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn trace(&self) -> LaurentPoly {
        let mut t = LaurentPoly::zero();
        for i in 0..self.dim {
            t += self.get(i, i);
        }
        t
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &LaurentMatrix) -> LaurentMatrix {
        let n = self.dim + other.dim;
        let mut out = Self::zero(n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                out.entries[(self.dim + i) * n + self.dim + j] = other.get(i, j).clone();
            }
        }
        out
    }
}

/// On-disk module description:
/// `{"dim": d, "generators": {"s0": M, "s1": M, ..., "omega_1": M, ...}}`, each `M` a
/// nested array of serialized [`LaurentPoly`]s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub dim: usize,
    pub generators: BTreeMap<String, Vec<Vec<LaurentPoly>>>,
}

/// A validated finite-dimensional `H`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    name: String,
    dim: usize,
    /// Matrix of `T_{s_k}`, `k = 0..=rank`.
    generators: Vec<LaurentMatrix>,
    /// Matrix of `T_omega` for each canonical `Omega` element (index 0 is the identity).
    omega: Vec<LaurentMatrix>,
}

impl ModuleSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self, k: usize) -> &LaurentMatrix {
        &self.generators[k]
    }

    pub fn omega(&self, k: usize) -> &LaurentMatrix {
        &self.omega[k]
    }

    pub fn to_file(&self) -> ModuleFile {
        let mut generators = BTreeMap::new();
        for (k, m) in self.generators.iter().enumerate() {
            generators.insert(format!("s{k}"), m.rows());
        }
        for (k, m) in self.omega.iter().enumerate().skip(1) {
            generators.insert(format!("omega_{k}"), m.rows());
        }
        ModuleFile { dim: self.dim, generators }
    }
}

/// The sign module: `T_s -> -1` and `T_omega -> (-1)^{<y_omega, 2 rho>}`, so every
/// dominant `T_y` acts as the identity. This module is the Iwahori-fixed line of
/// the Steinberg representation.
pub fn steinberg_module(group: &AffineWeylGroup) -> ModuleSpec {
    let d = group.datum();
    let minus_one = LaurentMatrix::scalar(1, &LaurentPoly::constant(-1));
    let omega = group
        .omega()
        .iter()
        .map(|o| {
            let sign = if omega_parity(d, &o.y) == 0 { 1 } else { -1 };
            LaurentMatrix::scalar(1, &LaurentPoly::constant(sign))
        })
        .collect();
    ModuleSpec {
        name: "sign".to_string(),
        dim: 1,
        generators: vec![minus_one; group.num_generators()],
        omega,
    }
}

/// Parity of `<y, 2 rho>`; constant on cosets of `Y'` because `<alpha_i^vee, 2 rho> = 2`.
pub fn omega_parity(d: &RootDatum, y: &Cochar) -> i64 {
    d.pair_two_rho(y).rem_euclid(2)
}

/// The trivial module: `T_s -> q`, `T_omega -> 1`.
pub fn trivial_module(group: &AffineWeylGroup) -> ModuleSpec {
    ModuleSpec {
        name: "trivial".to_string(),
        dim: 1,
        generators: vec![LaurentMatrix::scalar(1, &LaurentPoly::q()); group.num_generators()],
        omega: vec![LaurentMatrix::identity(1); group.omega().len()],
    }
}

/// Block-diagonal direct sum of two modules of the same algebra.
pub fn direct_sum(a: &ModuleSpec, b: &ModuleSpec) -> ModuleSpec {
    ModuleSpec {
        name: format!("{}+{}", a.name, b.name),
        dim: a.dim + b.dim,
        generators: a.generators.iter().zip(&b.generators).map(|(x, y)| x.direct_sum(y)).collect(),
        omega: a.omega.iter().zip(&b.omega).map(|(x, y)| x.direct_sum(y)).collect(),
    }
}

/// Validates generator matrices against the defining relations of `H`.
///
/// `generators[k]` is the matrix of `T_{s_k}` and `omega[k]` the matrix of the
/// `k`-th canonical `Omega` element (`omega[0]` must be the identity).
pub fn load_module(
    group: &AffineWeylGroup,
    name: &str,
    dim: usize,
    generators: Vec<LaurentMatrix>,
    omega: Vec<LaurentMatrix>,
) -> Result<ModuleSpec> {
    let ngen = group.num_generators();
    let nomega = group.omega().len();
    if generators.len() != ngen {
        return Err(Error::Module(format!("expected {ngen} generator matrices, got {}", generators.len())));
    }
    if omega.len() != nomega {
        return Err(Error::Module(format!("expected {nomega} Omega matrices, got {}", omega.len())));
    }
    for (k, m) in generators.iter().enumerate() {
        if m.dim() != dim {
            return Err(Error::Module(format!("s{k} is {0}x{0}, expected {dim}x{dim}", m.dim())));
        }
    }
    for (k, m) in omega.iter().enumerate() {
        if m.dim() != dim {
            return Err(Error::Module(format!("omega_{k} is {0}x{0}, expected {dim}x{dim}", m.dim())));
        }
    }
    let id = LaurentMatrix::identity(dim);
    let q_id = LaurentMatrix::scalar(dim, &LaurentPoly::q());

    for (k, m) in generators.iter().enumerate() {
        if !m.add(&id).mul(&m.sub(&q_id)).is_zero() {
            return Err(Error::Module(format!("quadratic relation (T_s{k} + 1)(T_s{k} - q) = 0 fails")));
        }
    }
    for s in 0..ngen {
        for t in s + 1..ngen {
            let Some(m) = group.coxeter_entry(s, t) else { continue };
            let alt = |a: usize, b: usize| {
                (0..m).fold(LaurentMatrix::identity(dim), |acc, i| {
                    acc.mul(&generators[if i % 2 == 0 { a } else { b }])
                })
            };
            if alt(s, t) != alt(t, s) {
                return Err(Error::Module(format!("braid relation of length {m} between s{s} and s{t} fails")));
            }
        }
    }
    if omega[0] != id {
        return Err(Error::Module("omega_0 must act as the identity".to_string()));
    }
    for a in 0..nomega {
        for b in 0..nomega {
            let c = group.omega_mul(a, b);
            if omega[a].mul(&omega[b]) != omega[c] {
                return Err(Error::Module(format!("group law omega_{a} * omega_{b} = omega_{c} fails")));
            }
        }
    }
    for (k, om) in omega.iter().enumerate().skip(1) {
        for (s, gs) in generators.iter().enumerate() {
            let t = group.conjugate_generator(k, s);
            if om.mul(gs) != generators[t].mul(om) {
                return Err(Error::Module(format!(
                    "conjugation omega_{k} T_s{s} omega_{k}^-1 = T_s{t} fails"
                )));
            }
        }
    }
    Ok(ModuleSpec { name: name.to_string(), dim, generators, omega })
}

/// Validates a [`ModuleFile`]; every `s_k` and every nontrivial `omega_k` must be present.
pub fn load_module_file(group: &AffineWeylGroup, name: &str, file: &ModuleFile) -> Result<ModuleSpec> {
    let ngen = group.num_generators();
    let nomega = group.omega().len();
    let allowed: Vec<String> = (0..ngen)
        .map(|k| format!("s{k}"))
        .chain((0..nomega).map(|k| format!("omega_{k}")))
        .collect();
    if let Some(extra) = file.generators.keys().find(|k| !allowed.contains(k)) {
        return Err(Error::Module(format!("unknown generator {extra:?}")));
    }
    let fetch = |key: &str| -> Result<LaurentMatrix> {
        let rows = file
            .generators
            .get(key)
            .ok_or_else(|| Error::Module(format!("missing matrix for {key}")))?;
        LaurentMatrix::from_rows(rows.clone()).map_err(|e| Error::Module(format!("{key}: {e}")))
    };
    let generators = (0..ngen).map(|k| fetch(&format!("s{k}"))).collect::<Result<Vec<_>>>()?;
    let mut omega = vec![match file.generators.get("omega_0") {
        Some(_) => fetch("omega_0")?,
        None => LaurentMatrix::identity(file.dim),
    }];
    for k in 1..nomega {
        omega.push(fetch(&format!("omega_{k}"))?);
    }
    load_module(group, name, file.dim, generators, omega)
}

/// Trace of `T_{s_{word[0]}} ... T_{s_{word[n-1]}} T_{omega}` in `m`.
pub fn trace_word(word: &[usize], omega: usize, m: &ModuleSpec) -> LaurentPoly {
    let mut acc = LaurentMatrix::identity(m.dim);
    for &k in word {
        acc = acc.mul(&m.generators[k]);
    }
    acc.mul(&m.omega[omega]).trace()
}

/// `tr(T_a)` in `m`, along the reduced decomposition of `a`.
pub fn trace_t(group: &AffineWeylGroup, a: &AffineElt, m: &ModuleSpec) -> LaurentPoly {
    let dec = group.decompose(a);
    trace_word(&dec.word, dec.omega, m)
}

/// `q^{-<y, 2 rho>} tr(T_y)` for dominant `y`.
pub fn char_thm43(group: &AffineWeylGroup, y: &Cochar, m: &ModuleSpec) -> Result<LaurentPoly> {
    let d = group.datum();
    if y.0.len() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: y.0.len() });
    }
    if !d.y_lattice().contains(&y.0) {
        return Err(Error::NotInLattice(y.0.clone()));
    }
    if !d.dominance(y).is_dominant() {
        return Err(Error::NotDominant(y.0.clone()));
    }
    let tr = trace_t(group, &group.translation(y), m);
    Ok(LaurentPoly::q_pow(-d.pair_two_rho(y)) * tr)
}

impl fmt::Display for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(x, c)| format!("({c})*T[{:?},{}]", x.y.0, x.w.0))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
