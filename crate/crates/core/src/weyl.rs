//! The finite Weyl group as a permutation group on the root list.
//!
//! Elements are enumerated breadth-first by length; within a length they are
//! ordered lexicographically by their lexicographically least reduced word.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rootdatum::{Character, Cochar, RootDatum};

/// Handle to an element of a [`WeylGroup`]; index into its element table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylId(pub u32);

impl WeylId {
    pub const IDENTITY: WeylId = WeylId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of simple-reflection indices (a subset `J` of `I_0`), as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(pub u32);

impl NodeSet {
    pub fn empty() -> Self {
        NodeSet(0)
    }

    pub fn full(rank: usize) -> Self {
        NodeSet(((1u64 << rank) - 1) as u32)
    }

    pub fn from_indices(indices: &[usize]) -> Self {
        NodeSet(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = NodeSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(NodeSet(cur))
        })
    }

    /// Rejects indices outside `0..rank`.
    pub fn checked(indices: &[usize], rank: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i >= rank) {
            return Err(Error::InvalidSubset(format!(
                "node {} is outside 1..={rank}",
                bad + 1
            )));
        }
        Ok(Self::from_indices(indices))
    }
}

impl fmt::Display for NodeSet {
    /// One-based, e.g. `{1,2}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// One element: its action on root indices, a reduced word and its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElt {
    perm: Vec<u16>,
    word: Vec<u8>,
    length: usize,
}

impl WeylElt {
    /// Image of root `k`.
    pub fn act_root(&self, k: usize) -> usize {
        self.perm[k] as usize
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// Reduced word; `[i, j]` means `s_i s_j`.
    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&i| i as usize).collect()
    }

    pub fn length(&self) -> usize {
        self.length
    }
}

/// `R_J`, `R_J^+` and `R_J^-` as root indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicRoots {
    pub all: Vec<usize>,
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

/// The enumerated finite Weyl group of a root datum.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: Arc<RootDatum>,
    elements: Vec<WeylElt>,
    index: HashMap<Vec<u16>, u32>,
    inverse: Vec<u32>,
    /// `left[i][w] = s_i w`
    left: Vec<Vec<u32>>,
    /// `right[i][w] = w s_i`
    right: Vec<Vec<u32>>,
    longest: WeylId,
}

impl WeylGroup {
    /// Enumerates all elements by orbit closure over the simple reflections.
    pub fn enumerate(datum: Arc<RootDatum>) -> Result<Self> {
        let rank = datum.rank();
        if rank > datum.rank_cap() {
            return Err(Error::RankCap { rank, cap: datum.rank_cap() });
        }
        let nroots = datum.num_roots();
        let refl: Vec<&[usize]> = (0..rank).map(|i| datum.reflection_table(i)).collect();
        let count_inversions = |perm: &[u16]| {
            datum
                .positive_roots()
                .filter(|&k| !datum.is_positive(perm[k] as usize))
                .count()
        };

        let identity: Vec<u16> = (0..nroots as u16).collect();
        let mut elements = vec![WeylElt { perm: identity.clone(), word: vec![], length: 0 }];
        let mut index: HashMap<Vec<u16>, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut layer_start = 0;
        while layer_start < elements.len() {
            let layer_end = elements.len();
            for w in layer_start..layer_end {
                for (i, table) in refl.iter().enumerate() {
                    // w s_i
                    let perm: Vec<u16> = table.iter().map(|&b| elements[w].perm[b]).collect();
                    if index.contains_key(&perm) {
                        continue;
                    }
                    let length = count_inversions(&perm);
                    if length != elements[w].length + 1 {
                        continue;
                    }
                    let mut word = elements[w].word.clone();
                    word.push(i as u8);
                    index.insert(perm.clone(), elements.len() as u32);
                    elements.push(WeylElt { perm, word, length });
                }
            }
            layer_start = layer_end;
        }

        let lookup = |perm: &[u16]| index[perm];
        let inverse: Vec<u32> = elements
            .iter()
            .map(|e| {
                let mut inv = vec![0u16; nroots];
                for (k, &img) in e.perm.iter().enumerate() {
                    inv[img as usize] = k as u16;
                }
                lookup(&inv)
            })
            .collect();
        let left: Vec<Vec<u32>> = refl
            .iter()
            .map(|table| {
                elements
                    .iter()
                    .map(|e| {
                        let perm: Vec<u16> = e.perm.iter().map(|&b| table[b as usize] as u16).collect();
                        lookup(&perm)
                    })
                    .collect()
            })
            .collect();
        let right: Vec<Vec<u32>> = refl
            .iter()
            .map(|table| {
                elements
                    .iter()
                    .map(|e| {
                        let perm: Vec<u16> = table.iter().map(|&b| e.perm[b]).collect();
                        lookup(&perm)
                    })
                    .collect()
            })
            .collect();
        let npos = datum.positive_roots().count();
        let longest = elements
            .iter()
            .position(|e| e.length == npos)
            .map(|k| WeylId(k as u32))
            .expect("a longest element exists");

        Ok(Self { datum, elements, index, inverse, left, right, longest })
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn ids(&self) -> impl Iterator<Item = WeylId> {
        (0..self.elements.len() as u32).map(WeylId)
    }

    pub fn elt(&self, w: WeylId) -> &WeylElt {
        &self.elements[w.index()]
    }

    pub fn identity(&self) -> WeylId {
        WeylId::IDENTITY
    }

    /// The unique element of length `|R^+|`.
    pub fn longest(&self) -> WeylId {
        self.longest
    }

    pub fn simple(&self, i: usize) -> WeylId {
        WeylId(self.right[i][0])
    }

    pub fn length(&self, w: WeylId) -> usize {
        self.elements[w.index()].length
    }

    pub fn word(&self, w: WeylId) -> Vec<usize> {
        self.elements[w.index()].word()
    }

    pub fn inverse(&self, w: WeylId) -> WeylId {
        WeylId(self.inverse[w.index()])
    }

    pub fn mul(&self, a: WeylId, b: WeylId) -> WeylId {
        let pa = &self.elements[a.index()].perm;
        let pb = &self.elements[b.index()].perm;
        let perm: Vec<u16> = pb.iter().map(|&k| pa[k as usize]).collect();
        WeylId(self.index[&perm])
    }

    /// `s_i w`.
    pub fn left_mul(&self, i: usize, w: WeylId) -> WeylId {
        WeylId(self.left[i][w.index()])
    }

    /// `w s_i`.
    pub fn right_mul(&self, w: WeylId, i: usize) -> WeylId {
        WeylId(self.right[i][w.index()])
    }

    /// The element with the given word (not necessarily reduced).
    pub fn from_word(&self, word: &[usize]) -> Result<WeylId> {
        let mut w = self.identity();
        for &i in word {
            if i >= self.rank() {
                return Err(Error::InvalidSubset(format!("no simple reflection s{}", i + 1)));
            }
            w = self.right_mul(w, i);
        }
        Ok(w)
    }

    pub fn find_perm(&self, perm: &[u16]) -> Option<WeylId> {
        self.index.get(perm).map(|&k| WeylId(k))
    }

    /// Image of root `k` under `w`.
    pub fn act_root(&self, w: WeylId, k: usize) -> usize {
        self.elements[w.index()].act_root(k)
    }

    /// `w(y)`, using `<w(y), alpha_j> = <y, w^{-1} alpha_j>`.
    pub fn act_cochar(&self, w: WeylId, y: &Cochar) -> Cochar {
        let winv = &self.elements[self.inverse[w.index()] as usize];
        let d = &self.datum;
        Cochar(
            (0..self.rank())
                .map(|j| d.pair_root(y, winv.act_root(d.simple_root(j))))
                .collect(),
        )
    }

    pub fn act_character(&self, w: WeylId, x: &Character) -> Character {
        self.datum.apply_word_character(&self.word(w), x)
    }

    /// `{i : l(s_i w) > l(w)}`, the left ascents of `w`.
    pub fn ascent_set(&self, w: WeylId) -> NodeSet {
        let winv = self.inverse(w);
        let mut out = NodeSet::empty();
        for i in 0..self.rank() {
            if self.datum.is_positive(self.act_root(winv, self.datum.simple_root(i))) {
                out.insert(i);
            }
        }
        out
    }

    /// `{i : l(s_i w) < l(w)}`, the complement of [`WeylGroup::ascent_set`].
    pub fn left_descent_set(&self, w: WeylId) -> NodeSet {
        NodeSet(NodeSet::full(self.rank()).0 & !self.ascent_set(w).0)
    }

    /// Minimal-length representatives of the cosets `W_J w`, in enumeration order.
    pub fn min_coset_reps(&self, j: NodeSet) -> Vec<WeylId> {
        self.ids()
            .filter(|&w| (0..self.rank()).filter(|&i| j.contains(i)).all(|i| {
                self.length(self.left_mul(i, w)) > self.length(w)
            }))
            .collect()
    }

    /// The subgroup generated by `{s_i : i in J}`, by orbit closure from the identity.
    pub fn parabolic_subgroup(&self, j: NodeSet) -> Vec<WeylId> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![self.identity()];
        seen[0] = true;
        let mut head = 0;
        while head < out.len() {
            let w = out[head];
            for i in j.iter() {
                let x = self.right_mul(w, i);
                if !seen[x.index()] {
                    seen[x.index()] = true;
                    out.push(x);
                }
            }
            head += 1;
        }
        out
    }

    /// `R_J`: the `W_J`-orbit of `{alpha_i : i in J}`.
    pub fn parabolic_roots(&self, j: NodeSet) -> ParabolicRoots {
        let d = &self.datum;
        let mut seen = vec![false; d.num_roots()];
        let mut stack: Vec<usize> = j.iter().map(|i| d.simple_root(i)).collect();
        while let Some(k) = stack.pop() {
            if std::mem::replace(&mut seen[k], true) {
                continue;
            }
            for i in j.iter() {
                stack.push(d.reflect_root(i, k));
            }
        }
        let all: Vec<usize> = (0..d.num_roots()).filter(|&k| seen[k]).collect();
        let (positive, negative) = all.iter().partition(|&&k| d.is_positive(k));
        ParabolicRoots { all, positive, negative }
    }

    /// The shortest `w` with `w(y)` dominant, and `w(y)`.
    pub fn dominant_conjugate(&self, y: &Cochar) -> (WeylId, Cochar) {
        let (word, dom) = self.datum.dominant_conjugate_word(y);
        let w = self.from_word(&word).expect("word uses valid generators");
        (w, dom)
    }

    /// Renders a reduced word as `s1 s2 s1` (`1` for the identity).
    pub fn format_word(&self, w: WeylId) -> String {
        format_word(&self.word(w), "")
    }

    /// Length-indexed element table.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .ids()
            .map(|w| {
                serde_json::json!({
                    "id": w.0,
                    "length": self.length(w),
                    "word": self.word(w).iter().map(|i| i + 1).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "datum": self.datum.spec().to_string(),
            "order": self.order(),
            "elements": rows,
        })
    }
}

/// `s1 s2 s1`; generator `i` prints as `s{i+1}`, `1` for the empty word.
pub fn format_word(word: &[usize], sep: &str) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let parts: Vec<String> = word.iter().map(|i| format!("s{}", i + 1)).collect();
    parts.join(if sep.is_empty() { " " } else { sep })
}

/// Parses `s1 s2 s1`, `s1s2s1` or `1` into zero-based generator indices.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() || t == "1" || t == "e" {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for piece in t.split('s').skip(1) {
        let k: usize = piece
            .parse()
            .map_err(|_| Error::Parse(format!("bad reduced word {s:?}")))?;
        if k == 0 {
            return Err(Error::Parse(format!("finite word {s:?} uses s0")));
        }
        out.push(k - 1);
    }
    if !t.starts_with('s') {
        return Err(Error::Parse(format!("bad reduced word {s:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdatum::{CartanType, DatumSpec, LatticeChoice};

    fn group(s: &str) -> WeylGroup {
        let d = s.parse::<DatumSpec>().unwrap().build().unwrap();
        WeylGroup::enumerate(Arc::new(d)).unwrap()
    }

    #[test]
    fn small_orders_and_longest_lengths() {
        let a1 = group("A1");
        assert_eq!(a1.order(), 2);
        let lengths: Vec<_> = a1.ids().map(|w| a1.length(w)).collect();
        assert_eq!(lengths, vec![0, 1]);
        assert_eq!(a1.longest(), a1.simple(0));

        let a2 = group("A2");
        assert_eq!(a2.order(), 6);
        assert_eq!(a2.length(a2.longest()), 3);
        assert_eq!(a2.word(a2.longest()), vec![0, 1, 0]);
        assert_eq!(a2.from_word(&[1, 0, 1]).unwrap(), a2.longest());
        assert_eq!(a2.format_word(a2.longest()), "s1 s2 s1");

        let g2 = group("G2");
        assert_eq!(g2.order(), 12);
        assert_eq!(g2.length(g2.longest()), 6);

        let b2 = group("B2");
        assert_eq!(b2.length(b2.longest()), 4);
    }

    #[test]
    fn orders_match_classical_formulas() {
        for t in CartanType::all_up_to_rank(5) {
            let g = WeylGroup::enumerate(Arc::new(RootDatum::build(t, LatticeChoice::Coroot).unwrap())).unwrap();
            assert_eq!(g.order() as u64, t.weyl_order(), "{t}");
            let w0 = g.longest();
            assert_eq!(g.mul(w0, w0), g.identity(), "{t}");
        }
    }

    #[test]
    fn enumeration_order_is_by_length_then_word() {
        let g = group("B3");
        let keys: Vec<(usize, Vec<usize>)> = g.ids().map(|w| (g.length(w), g.word(w))).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn length_is_inversion_count_and_word_length() {
        let g = group("A3");
        let d = g.datum().clone();
        for w in g.ids() {
            let inversions = d
                .positive_roots()
                .filter(|&k| !d.is_positive(g.act_root(w, k)))
                .count();
            assert_eq!(inversions, g.length(w));
            assert_eq!(g.word(w).len(), g.length(w));
            assert_eq!(g.from_word(&g.word(w)).unwrap(), w);
            assert_eq!(g.length(g.inverse(w)), g.length(w));
        }
    }

    #[test]
    fn ascent_set_examples() {
        let g = group("A2");
        assert_eq!(g.ascent_set(g.identity()), NodeSet::from_indices(&[0, 1]));
        assert_eq!(g.ascent_set(g.longest()), NodeSet::empty());
        assert_eq!(g.ascent_set(g.simple(0)), NodeSet::from_indices(&[1]));
        assert_eq!(g.left_descent_set(g.simple(0)), NodeSet::from_indices(&[0]));
    }

    #[test]
    fn coset_representative_examples() {
        let g = group("A2");
        assert_eq!(g.min_coset_reps(NodeSet::full(2)), vec![g.identity()]);
        assert_eq!(g.min_coset_reps(NodeSet::empty()).len(), 6);
        let reps = g.min_coset_reps(NodeSet::from_indices(&[0]));
        let lengths: Vec<_> = reps.iter().map(|&w| g.length(w)).collect();
        assert_eq!(lengths, vec![0, 1, 2]);
    }

    /// Each representative is the unique shortest element of its coset `W_J w`,
    /// with cosets formed by brute-force multiplication.
    #[test]
    fn coset_reps_are_unique_minima() {
        for s in ["A3", "B3", "G2"] {
            let g = group(s);
            for j in NodeSet::full(g.rank()).subsets() {
                let sub = g.parabolic_subgroup(j);
                let reps = g.min_coset_reps(j);
                assert_eq!(reps.len() * sub.len(), g.order(), "{s} {j}");
                let mut covered = vec![false; g.order()];
                for &r in &reps {
                    let coset: Vec<WeylId> = sub.iter().map(|&u| g.mul(u, r)).collect();
                    let min = coset.iter().map(|&x| g.length(x)).min().unwrap();
                    assert_eq!(g.length(r), min);
                    assert_eq!(coset.iter().filter(|&&x| g.length(x) == min).count(), 1);
                    for x in coset {
                        assert!(!covered[x.index()]);
                        covered[x.index()] = true;
                    }
                }
                assert!(covered.iter().all(|&c| c));
            }
        }
    }

    #[test]
    fn parabolic_root_examples() {
        let g = group("A2");
        let d = g.datum().clone();
        assert!(g.parabolic_roots(NodeSet::empty()).all.is_empty());
        let r1 = g.parabolic_roots(NodeSet::from_indices(&[0]));
        let a1 = d.simple_root(0);
        let mut expected = vec![a1, d.negate(a1)];
        expected.sort();
        assert_eq!(r1.all, expected);
        assert_eq!(r1.positive, vec![a1]);
        assert_eq!(g.parabolic_roots(NodeSet::full(2)).all.len(), d.num_roots());
    }

    #[test]
    fn dominant_conjugate_is_minimal() {
        for s in ["A2", "B3", "G2", "A3:adjoint"] {
            let g = group(s);
            let d = g.datum().clone();
            let r = d.rank();
            let mut coords = vec![-2i64; r];
            loop {
                let y = d.cochar(&coords).unwrap();
                let (w, dom) = g.dominant_conjugate(&y);
                assert!(d.dominance(&dom).is_dominant());
                assert_eq!(g.act_cochar(w, &y), dom);
                let best = g
                    .ids()
                    .filter(|&x| d.dominance(&g.act_cochar(x, &y)).is_dominant())
                    .map(|x| g.length(x))
                    .min()
                    .unwrap();
                assert_eq!(g.length(w), best, "{s} {coords:?}");
                let (w2, dom2) = g.dominant_conjugate(&dom);
                assert_eq!((w2, &dom2), (g.identity(), &dom));
                // advance odometer over [-2, 2]^r
                let mut k = 0;
                while k < r && coords[k] == 2 {
                    coords[k] = -2;
                    k += 1;
                }
                if k == r {
                    break;
                }
                coords[k] += 1;
            }
        }
    }

    #[test]
    fn pairing_is_weyl_invariant() {
        let g = group("B3");
        let d = g.datum().clone();
        let y = d.cochar(&[1, -2, 3]).unwrap();
        let x = Character(vec![2, -1, 4]);
        let p = d.pairing(&y, &x).unwrap();
        for w in g.ids() {
            assert_eq!(d.pairing(&g.act_cochar(w, &y), &g.act_character(w, &x)).unwrap(), p);
            assert_eq!(g.act_cochar(w, &y), d.apply_word_cochar(&g.word(w), &y));
        }
    }

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("s1 s2 s1").unwrap(), vec![0, 1, 0]);
        assert_eq!(parse_word("s1s2").unwrap(), vec![0, 1]);
        assert_eq!(parse_word("1").unwrap(), Vec::<usize>::new());
        assert!(parse_word("s0").is_err());
        assert!(parse_word("x1").is_err());
        assert_eq!(format_word(&[0, 1], ""), "s1 s2");
    }

    #[test]
    fn node_set_subsets() {
        let all: Vec<NodeSet> = NodeSet::full(3).subsets().collect();
        assert_eq!(all.len(), 8);
        let some: Vec<NodeSet> = NodeSet::from_indices(&[0, 2]).subsets().collect();
        assert_eq!(some, vec![NodeSet(0), NodeSet(1), NodeSet(4), NodeSet(5)]);
        assert_eq!(NodeSet::from_indices(&[0, 2]).to_string(), "{1,3}");
        assert!(NodeSet::checked(&[3], 3).is_err());
    }
}
