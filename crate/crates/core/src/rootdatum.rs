//! Split root data of irreducible types A-G.
//!
//! Conventions:
//! - the Cartan matrix is `cartan[i][j] = <alpha_i^vee, alpha_j>` (Bourbaki numbering);
//! - elements of `X` that occur here (roots, sums of roots, `2 rho`) are stored in
//!   simple-root coordinates as [`Character`];
//! - elements of `Y` are stored as [`Cochar`] in fundamental-coweight coordinates,
//!   i.e. the coordinate `j` of `y` is `<y, alpha_j>`. The lattice `Y` itself sits
//!   between the coroot lattice and the coweight lattice and is described by an
//!   [`IntLattice`] basis in those coordinates.
//!
//! With these conventions `<y, x> = sum_j y_j x_j`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{determinant, IntLattice};

/// Weyl-group enumeration is refused above this rank unless the caller raises the cap.
pub const DEFAULT_RANK_CAP: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A type label such as `A2`, `G2`, `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank}")))
        }
    }

    /// Every irreducible type of rank at most `max_rank`, each isomorphism class once
    /// (so `C2` is omitted in favour of `B2`).
    pub fn all_up_to_rank(max_rank: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for rank in 1..=max_rank {
            for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
                if family == Family::C && rank == 2 {
                    continue;
                }
                if let Ok(t) = Self::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..n.saturating_sub(1) {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            // alpha_n short
            Family::B => a[n - 1][n - 2] = -2,
            // alpha_n long
            Family::C => a[n - 2][n - 1] = -2,
            // alpha_3 short, alpha_2 long
            Family::F => a[2][1] = -2,
            // alpha_1 short, alpha_2 long
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Order of the Weyl group from the classical formulas (used only as a test reference).
    pub fn weyl_order(&self) -> u64 {
        let fact = |k: u64| (1..=k).product::<u64>();
        let n = self.rank as u64;
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1_152,
            Family::G => 12,
        }
    }

    /// Number of positive roots from the classical formulas.
    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        Self::new(family, rank)
    }
}

/// Which lattice between the coroot lattice `Y'` and the coweight lattice plays the role of `Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeChoice {
    /// `Y = Y'` (simply connected group).
    Coroot,
    /// `Y` = coweight lattice (adjoint group).
    Coweight,
    /// Rows are a basis of `Y` in fundamental-coweight coordinates.
    Basis(Vec<Vec<i64>>),
}

impl LatticeChoice {
    pub fn label(&self) -> String {
        match self {
            LatticeChoice::Coroot => "sc".to_string(),
            LatticeChoice::Coweight => "adjoint".to_string(),
            LatticeChoice::Basis(b) => format!(
                "basis={}",
                serde_json::to_string(b).expect("integer matrix serializes")
            ),
        }
    }
}

impl FromStr for LatticeChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "sc" | "coroot" | "simply-connected" => Ok(LatticeChoice::Coroot),
            "adjoint" | "ad" | "coweight" => Ok(LatticeChoice::Coweight),
            other => {
                let body = other
                    .strip_prefix("basis=")
                    .ok_or_else(|| Error::Parse(format!("unknown lattice choice {other:?}")))?;
                let rows: Vec<Vec<i64>> = serde_json::from_str(body)
                    .map_err(|e| Error::Parse(format!("lattice basis {body:?}: {e}")))?;
                Ok(LatticeChoice::Basis(rows))
            }
        }
    }
}

/// Descriptor `TYPE[:LATTICE]`, e.g. `A2`, `A1:adjoint`, `B2:basis=[[1,0],[0,2]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatumSpec {
    pub cartan_type: CartanType,
    pub lattice: LatticeChoice,
}

impl DatumSpec {
    pub fn new(cartan_type: CartanType, lattice: LatticeChoice) -> Self {
        Self { cartan_type, lattice }
    }

    pub fn build(&self) -> Result<RootDatum> {
        RootDatum::build(self.cartan_type, self.lattice.clone())
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<RootDatum> {
        RootDatum::build_with_cap(self.cartan_type, self.lattice.clone(), cap)
    }
}

impl fmt::Display for DatumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.lattice {
            LatticeChoice::Coroot => write!(f, "{}", self.cartan_type),
            _ => write!(f, "{}:{}", self.cartan_type, self.lattice.label()),
        }
    }
}

impl FromStr for DatumSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (ty, lat) = match s.split_once(':') {
            Some((t, l)) => (t, l.parse()?),
            None => (s, LatticeChoice::Coroot),
        };
        Ok(Self::new(ty.parse()?, lat))
    }
}

/// An element of `X` in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character(pub Vec<i64>);

impl Character {
    pub fn zero(rank: usize) -> Self {
        Character(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add_scaled(&mut self, other: &[i64], k: i64) {
        for (a, b) in self.0.iter_mut().zip(other) {
            *a += k * b;
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        Character(self.0.iter().map(|a| a * k).collect())
    }
}

/// An element of `Y` in fundamental-coweight coordinates (`coords[j] = <y, alpha_j>`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cochar(pub Vec<i64>);

impl Cochar {
    pub fn zero(rank: usize) -> Self {
        Cochar(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn add(&self, other: &Cochar) -> Cochar {
        Cochar(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Cochar) -> Cochar {
        Cochar(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Cochar {
        Cochar(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dominance {
    StrictlyDominant,
    Dominant,
    NonDominant,
}

impl Dominance {
    /// True for both dominant classes (`y` in `Y^+`).
    pub fn is_dominant(self) -> bool {
        !matches!(self, Dominance::NonDominant)
    }
}

/// Cartan data, the root and coroot systems, the lattice `Y` and `2 rho`.
#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    lattice_choice: LatticeChoice,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    positive: Vec<bool>,
    root_index: HashMap<Vec<i64>, usize>,
    simple: Vec<usize>,
    negation: Vec<usize>,
    /// `reflection[i][b]` = index of `s_i(root_b)`.
    reflection: Vec<Vec<usize>>,
    highest_root: usize,
    two_rho: Character,
    y_lattice: IntLattice,
    coroot_lattice: IntLattice,
    rank_cap: usize,
}

impl RootDatum {
    pub fn build(cartan_type: CartanType, lattice: LatticeChoice) -> Result<Self> {
        Self::build_with_cap(cartan_type, lattice, DEFAULT_RANK_CAP)
    }

    pub fn build_with_cap(cartan_type: CartanType, lattice: LatticeChoice, cap: usize) -> Result<Self> {
        let n = cartan_type.rank;
        if n > cap {
            return Err(Error::RankCap { rank: n, cap });
        }
        let cartan = cartan_type.cartan_matrix();

        // Orbit of the simple (root, coroot) pairs under simple reflections.
        let mut roots: Vec<Vec<i64>> = Vec::new();
        let mut coroots: Vec<Vec<i64>> = Vec::new();
        let mut root_index: HashMap<Vec<i64>, usize> = HashMap::new();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = 1;
            root_index.insert(r.clone(), roots.len());
            roots.push(r);
            coroots.push(cartan[i].clone());
        }
        let mut head = 0;
        while head < roots.len() {
            for i in 0..n {
                let beta = &roots[head];
                let pair: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let mut image = beta.clone();
                image[i] -= pair;
                if !root_index.contains_key(&image) {
                    let gamma = &coroots[head];
                    let gpair = gamma[i];
                    let cimage: Vec<i64> = (0..n).map(|j| gamma[j] - gpair * cartan[i][j]).collect();
                    root_index.insert(image.clone(), roots.len());
                    roots.push(image);
                    coroots.push(cimage);
                }
            }
            head += 1;
        }

        // Order: positive roots by height then lexicographically, then their negatives.
        let mut order: Vec<usize> = (0..roots.len()).collect();
        let height = |r: &Vec<i64>| r.iter().sum::<i64>();
        order.sort_by(|&a, &b| {
            let (ra, rb) = (&roots[a], &roots[b]);
            let pa = ra.iter().all(|&c| c >= 0);
            let pb = rb.iter().all(|&c| c >= 0);
            pb.cmp(&pa)
                .then_with(|| height(ra).abs().cmp(&height(rb).abs()))
                .then_with(|| if pa { ra.cmp(rb) } else { rb.cmp(ra) })
        });
        let roots: Vec<Vec<i64>> = order.iter().map(|&k| roots[k].clone()).collect();
        let coroots: Vec<Vec<i64>> = order.iter().map(|&k| coroots[k].clone()).collect();
        let root_index: HashMap<Vec<i64>, usize> =
            roots.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();

        let positive: Vec<bool> = roots.iter().map(|r| r.iter().all(|&c| c >= 0)).collect();
        let negation: Vec<usize> = roots
            .iter()
            .map(|r| root_index[&r.iter().map(|c| -c).collect::<Vec<_>>()])
            .collect();
        let simple: Vec<usize> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                root_index[&e]
            })
            .collect();
        let reflection: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                roots
                    .iter()
                    .map(|beta| {
                        let pair: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                        let mut image = beta.clone();
                        image[i] -= pair;
                        root_index[&image]
                    })
                    .collect()
            })
            .collect();
        let highest_root = (0..roots.len())
            .filter(|&k| positive[k])
            .max_by_key(|&k| height(&roots[k]))
            .expect("root system is nonempty");

        let mut two_rho = Character::zero(n);
        for (r, _) in roots.iter().zip(&positive).filter(|(_, &p)| p) {
            two_rho.add_scaled(r, 1);
        }

        let coroot_lattice = IntLattice::new(cartan.clone())
            .ok_or_else(|| Error::InvalidType(format!("{cartan_type} has a singular Cartan matrix")))?;
        let basis = match &lattice {
            LatticeChoice::Coroot => cartan.clone(),
            LatticeChoice::Coweight => (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
            LatticeChoice::Basis(b) => b.clone(),
        };
        if basis.len() != n || basis.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLattice(format!("basis must be {n}x{n}")));
        }
        let y_lattice = IntLattice::new(basis.clone())
            .ok_or_else(|| Error::InvalidLattice("basis is singular".to_string()))?;
        for (i, row) in cartan.iter().enumerate() {
            if !y_lattice.contains(row) {
                return Err(Error::InvalidLattice(format!(
                    "simple coroot {} is not in the span of the basis",
                    i + 1
                )));
            }
        }
        debug_assert_eq!(determinant(&cartan).abs() % y_lattice.index(), 0);

        let datum = Self {
            cartan_type,
            lattice_choice: lattice,
            cartan,
            roots,
            coroots,
            positive,
            root_index,
            simple,
            negation,
            reflection,
            highest_root,
            two_rho,
            y_lattice,
            coroot_lattice,
            rank_cap: cap,
        };
        datum.check_invariants()?;
        Ok(datum)
    }

    /// Re-verifies the structural invariants; a failure here is a construction bug.
    fn check_invariants(&self) -> Result<()> {
        let fail = |m: String| Err(Error::InvalidType(format!("{}: {m}", self.cartan_type)));
        let n = self.rank();
        let npos = self.positive.iter().filter(|&&p| p).count();
        if npos != self.cartan_type.num_positive_roots() || 2 * npos != self.roots.len() {
            return fail(format!("found {npos} positive roots"));
        }
        for (k, &m) in self.negation.iter().enumerate() {
            if self.positive[k] == self.positive[m] {
                return fail("R^- is not -R^+".to_string());
            }
        }
        for i in 0..n {
            for j in 0..n {
                let s = self.simple_coroot(i);
                if self.pair_root(&s, self.simple[j]) != self.cartan[i][j] {
                    return fail("coroot pairing disagrees with the Cartan matrix".to_string());
                }
            }
        }
        for (k, c) in self.coroots.iter().enumerate() {
            let p: i64 = c.iter().zip(&self.roots[k]).map(|(a, b)| a * b).sum();
            if p != 2 {
                return fail("<alpha^vee, alpha> != 2".to_string());
            }
            let t: i64 = c.iter().zip(&self.two_rho.0).map(|(a, b)| a * b).sum();
            if t % 2 != 0 {
                return fail("<alpha^vee, 2 rho> is odd".to_string());
            }
        }
        Ok(())
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn lattice_choice(&self) -> &LatticeChoice {
        &self.lattice_choice
    }

    pub fn spec(&self) -> DatumSpec {
        DatumSpec::new(self.cartan_type, self.lattice_choice.clone())
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn rank_cap(&self) -> usize {
        self.rank_cap
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// All roots in simple-root coordinates; positives come first.
    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, k: usize) -> &[i64] {
        &self.roots[k]
    }

    /// Coroot of root `k` in fundamental-coweight coordinates.
    pub fn coroot(&self, k: usize) -> Cochar {
        Cochar(self.coroots[k].clone())
    }

    pub fn is_positive(&self, k: usize) -> bool {
        self.positive[k]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&k| self.positive[k])
    }

    pub fn root_index(&self, r: &[i64]) -> Option<usize> {
        self.root_index.get(r).copied()
    }

    /// Index of the simple root `alpha_i` in the root list.
    pub fn simple_root(&self, i: usize) -> usize {
        self.simple[i]
    }

    pub fn simple_coroot(&self, i: usize) -> Cochar {
        Cochar(self.cartan[i].clone())
    }

    pub fn negate(&self, k: usize) -> usize {
        self.negation[k]
    }

    /// Index of `s_i(root_k)`.
    pub fn reflect_root(&self, i: usize, k: usize) -> usize {
        self.reflection[i][k]
    }

    pub fn reflection_table(&self, i: usize) -> &[usize] {
        &self.reflection[i]
    }

    pub fn highest_root(&self) -> usize {
        self.highest_root
    }

    pub fn two_rho(&self) -> &Character {
        &self.two_rho
    }

    pub fn y_lattice(&self) -> &IntLattice {
        &self.y_lattice
    }

    pub fn coroot_lattice(&self) -> &IntLattice {
        &self.coroot_lattice
    }

    /// `|Y / Y'|`.
    pub fn fundamental_group_order(&self) -> i64 {
        self.coroot_lattice.index() / self.y_lattice.index()
    }

    /// Converts coordinates in the declared basis of `Y` to a [`Cochar`].
    pub fn cochar(&self, basis_coords: &[i64]) -> Result<Cochar> {
        self.check_dim(basis_coords.len())?;
        Ok(Cochar(self.y_lattice.combine(basis_coords)))
    }

    /// Coordinates of `y` in the declared basis of `Y`.
    pub fn basis_coords(&self, y: &Cochar) -> Result<Vec<i64>> {
        self.check_dim(y.0.len())?;
        self.y_lattice
            .coords(&y.0)
            .ok_or_else(|| Error::NotInLattice(y.0.clone()))
    }

    /// Accepts a coweight-coordinate vector only if it lies in `Y`.
    pub fn cochar_from_coweights(&self, coords: Vec<i64>) -> Result<Cochar> {
        self.check_dim(coords.len())?;
        if self.y_lattice.contains(&coords) {
            Ok(Cochar(coords))
        } else {
            Err(Error::NotInLattice(coords))
        }
    }

    pub fn in_coroot_lattice(&self, y: &Cochar) -> bool {
        self.coroot_lattice.contains(&y.0)
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got == self.rank() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank(), got })
        }
    }

    /// `<y, x>`.
    pub fn pairing(&self, y: &Cochar, x: &Character) -> Result<i64> {
        self.check_dim(y.0.len())?;
        self.check_dim(x.0.len())?;
        Ok(dot(&y.0, &x.0))
    }

    /// `<y, root_k>`.
    pub fn pair_root(&self, y: &Cochar, k: usize) -> i64 {
        dot(&y.0, &self.roots[k])
    }

    /// `<y, 2 rho>`.
    pub fn pair_two_rho(&self, y: &Cochar) -> i64 {
        dot(&y.0, &self.two_rho.0)
    }

    pub fn dominance(&self, y: &Cochar) -> Dominance {
        let mut strict = true;
        for k in self.positive_roots() {
            let p = self.pair_root(y, k);
            if p < 0 {
                return Dominance::NonDominant;
            }
            if p == 0 {
                strict = false;
            }
        }
        if strict {
            Dominance::StrictlyDominant
        } else {
            Dominance::Dominant
        }
    }

    /// `s_i(y) = y - <y, alpha_i> alpha_i^vee`.
    pub fn reflect_cochar(&self, i: usize, y: &Cochar) -> Cochar {
        let p = y.0[i];
        Cochar(y.0.iter().zip(&self.cartan[i]).map(|(a, c)| a - p * c).collect())
    }

    /// `s_i(x) = x - <alpha_i^vee, x> alpha_i`.
    pub fn reflect_character(&self, i: usize, x: &Character) -> Character {
        let p = dot(&self.cartan[i], &x.0);
        let mut out = x.clone();
        out.0[i] -= p;
        out
    }

    /// Applies the word `s_{w[0]} s_{w[1]} ... s_{w[k-1]}` to `y`.
    pub fn apply_word_cochar(&self, word: &[usize], y: &Cochar) -> Cochar {
        word.iter().rev().fold(y.clone(), |acc, &i| self.reflect_cochar(i, &acc))
    }

    pub fn apply_word_character(&self, word: &[usize], x: &Character) -> Character {
        word.iter().rev().fold(x.clone(), |acc, &i| self.reflect_character(i, &acc))
    }

    /// A reduced word `w` (leftmost letter applied last) with `w(y)` dominant,
    /// together with `w(y)`. The element is the shortest one with this property.
    pub fn dominant_conjugate_word(&self, y: &Cochar) -> (Vec<usize>, Cochar) {
        let mut cur = y.clone();
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| cur.0[i] < 0) {
            cur = self.reflect_cochar(i, &cur);
            word.push(i);
        }
        word.reverse();
        (word, cur)
    }

    /// Debug dump of roots and coroots.
    pub fn to_json(&self) -> serde_json::Value {
        let roots: Vec<_> = (0..self.num_roots())
            .map(|k| {
                serde_json::json!({
                    "root": self.roots[k],
                    "coroot": self.coroots[k],
                    "positive": self.positive[k],
                })
            })
            .collect();
        serde_json::json!({
            "datum": self.spec().to_string(),
            "cartan": self.cartan,
            "two_rho": self.two_rho.0,
            "y_basis": self.y_lattice.basis(),
            "roots": roots,
        })
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn datum(s: &str) -> RootDatum {
        s.parse::<DatumSpec>().unwrap().build().unwrap()
    }

    /// Closure of the simple roots under reflections computed from the Cartan matrix
    /// alone, with no positivity bookkeeping.
    fn brute_force_roots(a: &[Vec<i64>]) -> HashSet<Vec<i64>> {
        let n = a.len();
        let mut set: HashSet<Vec<i64>> = HashSet::new();
        let mut frontier: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        while let Some(r) = frontier.pop() {
            if !set.insert(r.clone()) {
                continue;
            }
            for i in 0..n {
                let p: i64 = (0..n).map(|j| a[i][j] * r[j]).sum();
                let mut s = r.clone();
                s[i] -= p;
                frontier.push(s);
            }
        }
        set
    }

    #[test]
    fn a1_basics() {
        let d = datum("A1");
        assert_eq!(d.positive_roots().count(), 1);
        assert_eq!(d.two_rho().0, vec![1]);
        assert_eq!(d.pairing(&d.simple_coroot(0), &Character(vec![1])).unwrap(), 2);
    }

    #[test]
    fn a2_roots_and_rho() {
        let d = datum("A2");
        assert_eq!(d.positive_roots().count(), 3);
        assert_eq!(d.two_rho().0, vec![2, 2]);
        let oracle = brute_force_roots(d.cartan());
        let ours: HashSet<Vec<i64>> = d.roots().iter().cloned().collect();
        assert_eq!(oracle, ours);
    }

    #[test]
    fn g2_has_twelve_roots() {
        let d = datum("G2");
        assert_eq!(d.num_roots(), 12);
        assert_eq!(brute_force_roots(d.cartan()).len(), 12);
    }

    #[test]
    fn root_counts_all_types() {
        for t in CartanType::all_up_to_rank(6) {
            let d = RootDatum::build(t, LatticeChoice::Coroot).unwrap();
            assert_eq!(d.num_roots(), 2 * t.num_positive_roots(), "{t}");
            assert_eq!(brute_force_roots(d.cartan()).len(), d.num_roots(), "{t}");
            for i in 0..t.rank {
                assert_eq!(d.pair_two_rho(&d.simple_coroot(i)), 2, "{t}");
            }
            let mut sum = Character::zero(t.rank);
            for k in d.positive_roots() {
                sum.add_scaled(d.root(k), 1);
            }
            assert_eq!(&sum, d.two_rho());
        }
    }

    #[test]
    fn pairing_examples() {
        let d = datum("A2");
        let y = d.cochar(&[1, 1]).unwrap();
        assert_eq!(d.pairing(&y, &Character(vec![1, 0])).unwrap(), 1);
        assert_eq!(d.pairing(&y, d.two_rho()).unwrap(), 4);
        assert!(matches!(
            d.pairing(&y, &Character(vec![1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn dominance_examples() {
        let d = datum("A1");
        assert_eq!(d.dominance(&d.simple_coroot(0)), Dominance::StrictlyDominant);
        assert_eq!(d.dominance(&Cochar::zero(1)), Dominance::Dominant);
        assert_eq!(d.dominance(&d.simple_coroot(0).neg()), Dominance::NonDominant);
    }

    #[test]
    fn dominant_conjugate_word_examples() {
        let d = datum("A1");
        let (w, y) = d.dominant_conjugate_word(&d.simple_coroot(0).neg());
        assert_eq!(w, vec![0]);
        assert_eq!(y, d.simple_coroot(0));
        let d = datum("A2");
        let y = d.simple_coroot(0).neg();
        let (w, yp) = d.dominant_conjugate_word(&y);
        // -alpha_1^vee -> alpha_1^vee -> alpha_1^vee + alpha_2^vee
        assert_eq!(w, vec![1, 0]);
        assert_eq!(yp.coords(), &[1, 1]);
        assert!(d.dominance(&yp).is_dominant());
        assert_eq!(d.apply_word_cochar(&w, &y), yp);
    }

    #[test]
    fn rank_cap_and_invalid_types() {
        assert!(matches!(
            RootDatum::build("E7".parse().unwrap(), LatticeChoice::Coroot),
            Err(Error::RankCap { rank: 7, cap: 6 })
        ));
        assert!(RootDatum::build_with_cap("E8".parse().unwrap(), LatticeChoice::Coroot, 8).is_ok());
        for bad in ["D3", "G3", "F2", "E5", "B1", "A0", "X2", ""] {
            assert!(bad.parse::<CartanType>().is_err(), "{bad}");
        }
    }

    #[test]
    fn lattices() {
        let ad = datum("A1:adjoint");
        assert_eq!(ad.fundamental_group_order(), 2);
        let omega = ad.cochar(&[1]).unwrap();
        assert_eq!(ad.pair_root(&omega, ad.simple_root(0)), 1);
        assert!(!ad.in_coroot_lattice(&omega));
        assert_eq!(datum("A3").fundamental_group_order(), 1);
        assert_eq!(datum("D4:adjoint").fundamental_group_order(), 4);
        assert_eq!(datum("E6:adjoint").fundamental_group_order(), 3);
        // intermediate lattice of A3 between coroot and coweight lattices
        let mid = datum("A3:basis=[[0,1,0],[2,-1,0],[-1,2,-1]]");
        assert_eq!(mid.fundamental_group_order(), 2);
        // does not contain Y'
        let bad: DatumSpec = "A2:basis=[[2,0],[0,2]]".parse().unwrap();
        assert!(matches!(bad.build(), Err(Error::InvalidLattice(_))));
        let singular: DatumSpec = "A2:basis=[[1,0],[2,0]]".parse().unwrap();
        assert!(matches!(singular.build(), Err(Error::InvalidLattice(_))));
        let sc = datum("A2");
        assert!(matches!(
            sc.cochar_from_coweights(vec![1, 0]),
            Err(Error::NotInLattice(_))
        ));
        assert_eq!(sc.basis_coords(&Cochar(vec![1, 1])).unwrap(), vec![1, 1]);
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["A2", "A1:adjoint", "G2", "B3:basis=[[1,0,0],[0,1,0],[0,0,2]]"] {
            let spec: DatumSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn json_dump_lists_roots() {
        let d = datum("B2");
        let js = d.to_json();
        assert_eq!(js["roots"].as_array().unwrap().len(), 8);
        assert_eq!(js["datum"], "B2");
    }
}
