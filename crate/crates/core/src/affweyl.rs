//! The extended affine Weyl group `W = Y x| W_fin`.
//!
//! An element `y w` is stored as the pair `(y, w)` with product
//! `(y1, w1)(y2, w2) = (y1 + w1(y2), w1 w2)`. The affine simple reflections are
//! `s_1 .. s_r` from the finite group and `s_0 = t_{theta^vee} s_theta` for the
//! highest root `theta`; affine generator `k` is `s_k`, so index 0 is `s_0`.
//! `Omega` is the length-zero subgroup, one element per coset of `Y/Y'`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdatum::{Cochar, RootDatum};
use crate::weyl::{parse_word, WeylGroup, WeylId};

/// Default cap on the search radius of [`AffineWeylGroup::length_bfs_oracle`].
pub const DEFAULT_BFS_RADIUS_CAP: usize = 14;

/// The element `y w` of the extended affine Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineElt {
    pub y: Cochar,
    pub w: WeylId,
}

/// `element = s_{word[0]} ... s_{word[k-1]} * omega`, with `word` reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineDecomp {
    /// Affine generator indices (0 is `s_0`).
    pub word: Vec<usize>,
    /// Index into [`AffineWeylGroup::omega`]; 0 is the identity.
    pub omega: usize,
}

impl fmt::Display for AffineDecomp {
    /// `s0 s1 | omega=1`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = if self.word.is_empty() {
            "1".to_string()
        } else {
            self.word.iter().map(|k| format!("s{k}")).collect::<Vec<_>>().join(" ")
        };
        write!(f, "{word} | omega={}", self.omega)
    }
}

#[derive(Clone, Debug)]
pub struct AffineWeylGroup {
    weyl: Arc<WeylGroup>,
    generators: Vec<AffineElt>,
    omega: Vec<AffineElt>,
    /// `omega_perm[k][g]`: `omega_k s_g omega_k^{-1} = s_{omega_perm[k][g]}`.
    omega_perm: Vec<Vec<usize>>,
    /// `omega_table[a][b]` = index of `omega_a omega_b`.
    omega_table: Vec<Vec<usize>>,
    /// Coxeter matrix on affine generators; `None` is infinity.
    coxeter: Vec<Vec<Option<usize>>>,
    bfs_radius_cap: usize,
}

impl AffineWeylGroup {
    pub fn new(weyl: Arc<WeylGroup>) -> Result<Self> {
        let d = weyl.datum().clone();
        let r = d.rank();
        let theta = d.highest_root();
        let theta_refl = reflection_for_root(&weyl, theta);
        let mut generators = vec![AffineElt { y: d.coroot(theta), w: theta_refl }];
        for i in 0..r {
            generators.push(AffineElt { y: Cochar::zero(r), w: weyl.simple(i) });
        }

        let mut group = Self {
            weyl,
            generators,
            omega: Vec::new(),
            omega_perm: Vec::new(),
            omega_table: Vec::new(),
            coxeter: Vec::new(),
            bfs_radius_cap: DEFAULT_BFS_RADIUS_CAP,
        };
        for (k, g) in group.generators.iter().enumerate() {
            if group.im_length(g) != 1 {
                return Err(Error::InvalidType(format!("affine generator s{k} does not have length 1")));
            }
        }

        // Length-zero elements have minuscule (or zero) lattice part.
        let mut omega = Vec::new();
        let mut coords = vec![0i64; r];
        loop {
            let y = Cochar(coords.clone());
            if d.y_lattice().contains(&coords) && d.pair_root(&y, theta) <= 1 {
                for w in group.weyl.ids() {
                    let a = AffineElt { y: y.clone(), w };
                    if group.im_length(&a) == 0 {
                        omega.push(a);
                    }
                }
            }
            let mut k = 0;
            while k < r && coords[k] == 1 {
                coords[k] = 0;
                k += 1;
            }
            if k == r {
                break;
            }
            coords[k] = 1;
        }
        omega.sort_by(|a, b| {
            let na: i64 = a.y.0.iter().map(|c| c.abs()).sum();
            let nb: i64 = b.y.0.iter().map(|c| c.abs()).sum();
            na.cmp(&nb).then_with(|| a.y.cmp(&b.y))
        });
        if omega.len() as i64 != d.fundamental_group_order() {
            return Err(Error::InvalidLattice(format!(
                "found {} length-zero elements but |Y/Y'| = {}",
                omega.len(),
                d.fundamental_group_order()
            )));
        }
        group.omega = omega;

        let n_omega = group.omega.len();
        let mut omega_table = vec![vec![0; n_omega]; n_omega];
        for a in 0..n_omega {
            for b in 0..n_omega {
                let p = group.mul(&group.omega[a], &group.omega[b]);
                omega_table[a][b] = group
                    .omega
                    .iter()
                    .position(|o| *o == p)
                    .ok_or_else(|| Error::InvalidLattice("Omega is not closed under products".to_string()))?;
            }
        }
        group.omega_table = omega_table;

        let mut omega_perm = Vec::with_capacity(n_omega);
        for o in &group.omega {
            let oinv = group.inverse(o);
            let mut perm = Vec::with_capacity(r + 1);
            for g in &group.generators {
                let c = group.mul(&group.mul(o, g), &oinv);
                let k = group
                    .generators
                    .iter()
                    .position(|x| *x == c)
                    .ok_or_else(|| Error::InvalidLattice("Omega does not normalize S_aff".to_string()))?;
                perm.push(k);
            }
            omega_perm.push(perm);
        }
        group.omega_perm = omega_perm;

        let ngen = group.generators.len();
        let mut coxeter = vec![vec![Some(1); ngen]; ngen];
        for s in 0..ngen {
            for t in 0..ngen {
                if s != t {
                    coxeter[s][t] = group.product_order(s, t, 6);
                }
            }
        }
        group.coxeter = coxeter;
        Ok(group)
    }

    pub fn with_bfs_radius_cap(mut self, cap: usize) -> Self {
        self.bfs_radius_cap = cap;
        self
    }

    pub fn weyl(&self) -> &Arc<WeylGroup> {
        &self.weyl
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        self.weyl.datum()
    }

    pub fn rank(&self) -> usize {
        self.datum().rank()
    }

    pub fn identity(&self) -> AffineElt {
        AffineElt { y: Cochar::zero(self.rank()), w: self.weyl.identity() }
    }

    pub fn translation(&self, y: &Cochar) -> AffineElt {
        AffineElt { y: y.clone(), w: self.weyl.identity() }
    }

    pub fn finite(&self, w: WeylId) -> AffineElt {
        AffineElt { y: Cochar::zero(self.rank()), w }
    }

    /// Number of affine simple reflections, `rank + 1`.
    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// `s_k`; `k = 0` is the affine reflection.
    pub fn generator(&self, k: usize) -> &AffineElt {
        &self.generators[k]
    }

    /// Canonical representatives of `Omega`; index 0 is the identity.
    pub fn omega(&self) -> &[AffineElt] {
        &self.omega
    }

    /// Index of `omega_a omega_b`.
    pub fn omega_mul(&self, a: usize, b: usize) -> usize {
        self.omega_table[a][b]
    }

    /// Index of `omega_a^{-1}`.
    pub fn omega_inverse(&self, a: usize) -> usize {
        (0..self.omega.len())
            .find(|&b| self.omega_table[a][b] == 0)
            .expect("Omega is a group")
    }

    /// `omega_k s_g omega_k^{-1} = s_{conjugate_generator(k, g)}`.
    pub fn conjugate_generator(&self, k: usize, g: usize) -> usize {
        self.omega_perm[k][g]
    }

    /// Order of `s_a s_b`, `None` for infinite order.
    pub fn coxeter_entry(&self, a: usize, b: usize) -> Option<usize> {
        self.coxeter[a][b]
    }

    fn product_order(&self, s: usize, t: usize, max: usize) -> Option<usize> {
        let st = self.mul(&self.generators[s], &self.generators[t]);
        let mut acc = st.clone();
        for m in 1..=max {
            if acc == self.identity() {
                return Some(m);
            }
            acc = self.mul(&acc, &st);
        }
        None
    }

    pub fn mul(&self, a: &AffineElt, b: &AffineElt) -> AffineElt {
        let shifted = self.weyl.act_cochar(a.w, &b.y);
        AffineElt { y: a.y.add(&shifted), w: self.weyl.mul(a.w, b.w) }
    }

    /// Checked product: both factors must have lattice parts in `Y` of this datum.
    pub fn try_mul(&self, a: &AffineElt, b: &AffineElt) -> Result<AffineElt> {
        for e in [a, b] {
            if e.y.0.len() != self.rank() || e.w.index() >= self.weyl.order() {
                return Err(Error::DatumMismatch);
            }
            if !self.datum().y_lattice().contains(&e.y.0) {
                return Err(Error::NotInLattice(e.y.0.clone()));
            }
        }
        Ok(self.mul(a, b))
    }

    pub fn inverse(&self, a: &AffineElt) -> AffineElt {
        let winv = self.weyl.inverse(a.w);
        AffineElt { y: self.weyl.act_cochar(winv, &a.y).neg(), w: winv }
    }

    /// `s_k a`.
    pub fn left_mul_generator(&self, k: usize, a: &AffineElt) -> AffineElt {
        self.mul(&self.generators[k], a)
    }

    /// Iwahori-Matsumoto length:
    /// `sum_{a>0, w^{-1}a>0} |<y,a>| + sum_{a>0, w^{-1}a<0} |<y,a> - 1|`.
    pub fn im_length(&self, a: &AffineElt) -> usize {
        let d = self.datum();
        let winv = self.weyl.elt(self.weyl.inverse(a.w));
        let mut total = 0i64;
        for k in d.positive_roots() {
            let p = d.pair_root(&a.y, k);
            if d.is_positive(winv.act_root(k)) {
                total += p.abs();
            } else {
                total += (p - 1).abs();
            }
        }
        total as usize
    }

    /// Index of the `Omega` element in the same `W'`-coset as `a`.
    pub fn omega_part(&self, a: &AffineElt) -> usize {
        let d = self.datum();
        self.omega
            .iter()
            .position(|o| d.in_coroot_lattice(&a.y.sub(&o.y)))
            .expect("every coset of Y/Y' has an Omega representative")
    }

    /// Writes `a` as a reduced word in `S_aff` times an element of `Omega`.
    pub fn decompose(&self, a: &AffineElt) -> AffineDecomp {
        let omega = self.omega_part(a);
        let mut cur = self.mul(a, &self.inverse(&self.omega[omega]));
        let mut len = self.im_length(&cur);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let (k, next, next_len) = (0..self.generators.len())
                .map(|k| {
                    let n = self.left_mul_generator(k, &cur);
                    let l = self.im_length(&n);
                    (k, n, l)
                })
                .find(|(_, _, l)| *l < len)
                .expect("a nontrivial element of W' has a left descent");
            word.push(k);
            cur = next;
            len = next_len;
        }
        debug_assert_eq!(cur, self.identity());
        AffineDecomp { word, omega }
    }

    /// `s_{word[0]} ... s_{word[k-1]} * omega_{omega}`.
    pub fn compose(&self, word: &[usize], omega: usize) -> AffineElt {
        let mut acc = self.omega[omega].clone();
        for &k in word.iter().rev() {
            acc = self.left_mul_generator(k, &acc);
        }
        acc
    }

    /// All elements at Cayley-graph distance at most `radius` from the identity,
    /// with generators `S_aff` (weight 1) and `Omega` (weight 0). Independent of
    /// [`AffineWeylGroup::im_length`].
    pub fn ball(&self, radius: usize) -> Result<HashMap<AffineElt, usize>> {
        if radius > self.bfs_radius_cap {
            return Err(Error::RadiusCap { radius, cap: self.bfs_radius_cap });
        }
        Ok(self.bfs(radius, None))
    }

    fn bfs(&self, radius: usize, target: Option<&AffineElt>) -> HashMap<AffineElt, usize> {
        let mut dist: HashMap<AffineElt, usize> = HashMap::new();
        let mut queue: VecDeque<(AffineElt, usize)> = VecDeque::new();
        queue.push_back((self.identity(), 0));
        while let Some((x, dx)) = queue.pop_front() {
            if dist.get(&x).is_some_and(|&old| old <= dx) {
                continue;
            }
            dist.insert(x.clone(), dx);
            if target == Some(&x) {
                break;
            }
            for o in self.omega.iter().skip(1) {
                let y = self.mul(o, &x);
                if dist.get(&y).is_none_or(|&old| old > dx) {
                    queue.push_front((y, dx));
                }
            }
            if dx < radius {
                for g in &self.generators {
                    let y = self.mul(g, &x);
                    if !dist.contains_key(&y) {
                        queue.push_back((y, dx + 1));
                    }
                }
            }
        }
        dist
    }

    /// Word length of `a` by breadth-first search; `Ok(None)` when it exceeds `radius`.
    pub fn length_bfs_oracle(&self, a: &AffineElt, radius: usize) -> Result<Option<usize>> {
        if radius > self.bfs_radius_cap {
            return Err(Error::RadiusCap { radius, cap: self.bfs_radius_cap });
        }
        Ok(self.bfs(radius, Some(a)).get(a).copied())
    }

    /// A word obtained from `word` by one braid move, if any applies.
    pub fn braid_move(&self, word: &[usize]) -> Option<Vec<usize>> {
        for start in 0..word.len() {
            if start + 1 >= word.len() {
                break;
            }
            let (s, t) = (word[start], word[start + 1]);
            if s == t {
                continue;
            }
            let Some(m) = self.coxeter[s][t] else { continue };
            if start + m > word.len() {
                continue;
            }
            let alternating = (0..m).all(|k| word[start + k] == if k % 2 == 0 { s } else { t });
            if alternating {
                let mut out = word.to_vec();
                for k in 0..m {
                    out[start + k] = if k % 2 == 0 { t } else { s };
                }
                return Some(out);
            }
        }
        None
    }

    /// `y=[1,0] w=s1s2`, with `y` in the declared basis of `Y`.
    pub fn format(&self, a: &AffineElt) -> String {
        let y = self
            .datum()
            .basis_coords(&a.y)
            .expect("lattice part lies in Y");
        let coords: Vec<String> = y.iter().map(|c| c.to_string()).collect();
        let word = self.weyl.word(a.w);
        let w = if word.is_empty() {
            "1".to_string()
        } else {
            word.iter().map(|i| format!("s{}", i + 1)).collect::<String>()
        };
        format!("y=[{}] w={w}", coords.join(","))
    }

    /// Inverse of [`AffineWeylGroup::format`]; `w=` may be omitted.
    pub fn parse(&self, s: &str) -> Result<AffineElt> {
        let bad = || Error::Parse(format!("expected \"y=[..] w=..\", got {s:?}"));
        let mut y = None;
        let mut w = self.weyl.identity();
        let mut rest = s.trim();
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix("y=") {
                let r = r.trim_start().strip_prefix('[').ok_or_else(bad)?;
                let end = r.find(']').ok_or_else(bad)?;
                let coords = parse_int_list(&r[..end])?;
                y = Some(self.datum().cochar(&coords)?);
                rest = r[end + 1..].trim_start();
            } else if let Some(r) = rest.strip_prefix("w=") {
                let end = r.find("y=").unwrap_or(r.len());
                w = self.weyl.from_word(&parse_word(&r[..end])?)?;
                rest = r[end..].trim_start();
            } else {
                return Err(bad());
            }
        }
        Ok(AffineElt { y: y.unwrap_or_else(|| Cochar::zero(self.rank())), w })
    }
}

/// Parses `1,0,-2` (brackets and spaces allowed).
pub fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(vec![]);
    }
    t.split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {p:?} in {s:?}")))
        })
        .collect()
}

/// The reflection `s_beta` for root index `beta`, found through `beta = u(alpha_i)`.
fn reflection_for_root(weyl: &WeylGroup, beta: usize) -> WeylId {
    let d = weyl.datum();
    for u in weyl.ids() {
        for i in 0..d.rank() {
            if weyl.act_root(u, d.simple_root(i)) == beta {
                // s_beta = u s_i u^{-1}
                return weyl.mul(weyl.mul(u, weyl.simple(i)), weyl.inverse(u));
            }
        }
    }
    unreachable!("every root is conjugate to a simple root")
}
