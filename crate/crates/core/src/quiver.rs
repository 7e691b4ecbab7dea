//! Dynkin quivers, height functions and adapted reduced words.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{CartanType, Family, Root, RootSystem, WeylWord};

/// An orientation of a Dynkin diagram. Arrows are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DynkinQuiver {
    ty: CartanType,
    arrows: Vec<(usize, usize)>,
}

/// The serialized form `{"type":"D","rank":4,"arrows":[[1,2],[3,2],[4,2]]}`.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct QuiverJson {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub arrows: Vec<[usize; 2]>,
}

impl DynkinQuiver {
    pub fn new(ty: CartanType, arrows: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut arrows: Vec<_> = arrows.into_iter().collect();
        arrows.sort_unstable();
        let edges: BTreeSet<_> = ty.edges().into_iter().collect();
        let mut covered = BTreeSet::new();
        for &(s, t) in &arrows {
            ty.check_vertex(s)?;
            ty.check_vertex(t)?;
            let e = (s.min(t), s.max(t));
            if !edges.contains(&e) {
                return Err(Error::InvalidQuiver(format!("{s}->{t} is not an edge of {ty}")));
            }
            if !covered.insert(e) {
                return Err(Error::InvalidQuiver(format!("edge {}-{} oriented twice", e.0, e.1)));
            }
        }
        if covered.len() != edges.len() {
            let missing: Vec<_> = edges.difference(&covered).collect();
            return Err(Error::InvalidQuiver(format!("edges without orientation: {missing:?}")));
        }
        Ok(Self { ty, arrows })
    }

    /// Parse `"1-2,3-2"` where `a-b` is the arrow `a -> b`.
    pub fn parse(ty: CartanType, spec: &str) -> Result<Self> {
        let mut arrows = Vec::new();
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| Error::InvalidQuiver(format!("bad arrow {part:?}, expected a-b")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidQuiver(format!("bad vertex {s:?}")))
            };
            arrows.push((parse(a)?, parse(b)?));
        }
        Self::new(ty, arrows)
    }

    /// Inverse of [`DynkinQuiver::parse`].
    pub fn arrow_spec(&self) -> String {
        let a: Vec<String> = self.arrows.iter().map(|(s, t)| format!("{s}-{t}")).collect();
        a.join(",")
    }

    pub fn from_json(j: &QuiverJson) -> Result<Self> {
        let ty = CartanType::new(j.family, j.rank)?;
        Self::new(ty, j.arrows.iter().map(|a| (a[0], a[1])))
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            family: self.ty.family,
            rank: self.ty.rank,
            arrows: self.arrows.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }

    /// Every edge oriented from smaller to larger label.
    pub fn linear(ty: CartanType) -> Self {
        Self::new(ty, ty.edges()).expect("edges form a valid orientation")
    }

    /// All `2^{#edges}` orientations, in a fixed canonical order.
    pub fn all_orientations(ty: CartanType) -> Vec<Self> {
        let edges = ty.edges();
        (0u64..1 << edges.len())
            .map(|mask| {
                let arrows = edges.iter().enumerate().map(|(k, &(a, b))| {
                    if mask >> k & 1 == 0 {
                        (a, b)
                    } else {
                        (b, a)
                    }
                });
                Self::new(ty, arrows).expect("valid orientation")
            })
            .collect()
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn has_arrow(&self, s: usize, t: usize) -> bool {
        self.arrows.binary_search(&(s, t)).is_ok()
    }

    pub fn is_source(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != i)
    }

    pub fn is_sink(&self, i: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != i)
    }

    pub fn sources(&self) -> Vec<usize> {
        self.ty.vertices().filter(|&i| self.is_source(i)).collect()
    }

    /// Flip every arrow incident to `i`.
    pub fn reflect(&self, i: usize) -> Self {
        let mut arrows: Vec<_> = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == i || t == i { (t, s) } else { (s, t) })
            .collect();
        arrows.sort_unstable();
        Self { ty: self.ty, arrows }
    }

    pub fn reversed(&self) -> Self {
        let mut arrows: Vec<_> = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        arrows.sort_unstable();
        Self { ty: self.ty, arrows }
    }

    /// Height function with `ξ_base = value`.
    pub fn height_function_at(&self, base: usize, value: i64) -> Result<HeightFunction> {
        self.ty.check_vertex(base)?;
        let n = self.rank();
        let mut xi: Vec<Option<i64>> = vec![None; n];
        xi[base - 1] = Some(value);
        let mut stack = vec![base];
        while let Some(u) = stack.pop() {
            let xu = xi[u - 1].expect("visited vertex has a height");
            for &(s, t) in &self.arrows {
                let (v, xv) = if s == u {
                    (t, xu - 1)
                } else if t == u {
                    (s, xu + 1)
                } else {
                    continue;
                };
                if xi[v - 1].is_none() {
                    xi[v - 1] = Some(xv);
                    stack.push(v);
                }
            }
        }
        Ok(HeightFunction(xi.into_iter().map(|x| x.expect("connected")).collect()))
    }

    /// The height function normalized to `min ξ = 0`.
    pub fn height_function(&self) -> HeightFunction {
        let h = self.height_function_at(1, 0).expect("vertex 1 exists");
        let m = h.0.iter().copied().min().unwrap_or(0);
        HeightFunction(h.0.iter().map(|x| x - m).collect())
    }

    /// The Coxeter word adapted to `self`: successive sources, smallest
    /// label first.
    pub fn adapted_coxeter(&self) -> WeylWord {
        let mut q = self.clone();
        let mut used = vec![false; self.rank() + 1];
        let mut word = Vec::with_capacity(self.rank());
        for _ in 0..self.rank() {
            let i = self
                .ty
                .vertices()
                .find(|&i| !used[i] && q.is_source(i))
                .expect("acyclic quivers always have a source");
            used[i] = true;
            word.push(i);
            q = q.reflect(i);
        }
        WeylWord(word)
    }

    /// A reduced word for `w_0` adapted to `self` together with its
    /// β-sequence.
    pub fn adapted_w0(&self, rs: &RootSystem) -> BetaSequence {
        let total = rs.num_positive();
        let mut q = self.clone();
        let mut word = WeylWord::default();
        let mut betas = Vec::with_capacity(total);
        while betas.len() < total {
            let (i, beta) = self
                .ty
                .vertices()
                .filter(|&i| q.is_source(i))
                .map(|i| (i, rs.apply_word(&word, &rs.simple(i))))
                .find(|(_, b)| b.is_positive())
                .expect("an adapted reduced extension exists until w0 is reached");
            word.0.push(i);
            betas.push(beta);
            q = q.reflect(i);
        }
        BetaSequence { word, betas }
    }

    /// Whether `word` is adapted: each letter is a source of the quiver
    /// reflected at all earlier letters.
    pub fn is_adapted(&self, word: &WeylWord) -> bool {
        let mut q = self.clone();
        for &i in word.letters() {
            if !q.is_source(i) {
                return false;
            }
            q = q.reflect(i);
        }
        true
    }
}

impl fmt::Display for DynkinQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.arrows.iter().map(|(s, t)| format!("{s}->{t}")).collect();
        write!(f, "{} [{}]", self.ty, a.join(", "))
    }
}

/// `ξ`, 1-based access; `ξ_j = ξ_i - 1` along `i -> j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct HeightFunction(pub Vec<i64>);

impl HeightFunction {
    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn min(&self) -> i64 {
        self.0.iter().copied().min().unwrap_or(0)
    }

    pub fn max(&self) -> i64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_compatible(&self, q: &DynkinQuiver) -> bool {
        q.arrows().iter().all(|&(s, t)| self.get(t) == self.get(s) - 1)
    }

    pub fn shifted(&self, c: i64) -> Self {
        HeightFunction(self.0.iter().map(|x| x + c).collect())
    }
}

/// A reduced word for `w_0` and its roots `β_k = s_{i_1} ⋯ s_{i_{k-1}}(α_{i_k})`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BetaSequence {
    pub word: WeylWord,
    pub betas: Vec<Root>,
}

impl BetaSequence {
    /// Rebuild the β-sequence of an arbitrary word.
    pub fn from_word(rs: &RootSystem, word: WeylWord) -> Self {
        let betas = (0..word.len())
            .map(|k| rs.apply_word(&WeylWord(word.0[..k].to_vec()), &rs.simple(word.0[k])))
            .collect();
        Self { word, betas }
    }

    pub fn len(&self) -> usize {
        self.betas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.betas.is_empty()
    }

    /// 0-based position of `β` in the sequence.
    pub fn position(&self, b: &Root) -> Option<usize> {
        self.betas.iter().position(|x| x == b)
    }

    /// Reduced, of length `|Δ₊|`, and enumerating every positive root once.
    pub fn is_valid_w0(&self, rs: &RootSystem) -> bool {
        if self.len() != rs.num_positive() {
            return false;
        }
        let set: BTreeSet<_> = self.betas.iter().collect();
        set.len() == self.len() && self.betas.iter().all(|b| rs.is_positive_root(b))
    }

    /// Convexity: whenever `β_k + β_ℓ = β_j` with `k < ℓ`, also `k < j < ℓ`.
    pub fn check_convexity(&self, rs: &RootSystem) -> bool {
        self.convexity_violation(rs).is_none()
    }

    /// First `(k, ℓ, j)` (0-based) breaking convexity.
    pub fn convexity_violation(&self, rs: &RootSystem) -> Option<(usize, usize, usize)> {
        for k in 0..self.len() {
            for l in k + 1..self.len() {
                let s = &self.betas[k] + &self.betas[l];
                if !rs.is_positive_root(&s) {
                    continue;
                }
                match self.position(&s) {
                    Some(j) if k < j && j < l => {}
                    Some(j) => return Some((k, l, j)),
                    None => return Some((k, l, usize::MAX)),
                }
            }
        }
        None
    }

    /// Minimal pairs `(k, ℓ)` of `β_j`, 1-based as in the usual notation.
    pub fn minimal_pairs(&self, j: usize) -> Result<Vec<(usize, usize)>> {
        if j == 0 || j > self.len() {
            return Err(Error::IndexOutOfRange(format!("root index {j} outside 1..={}", self.len())));
        }
        let target = &self.betas[j - 1];
        if target.height() < 2 {
            return Err(Error::SimpleRoot(j));
        }
        let pairs: Vec<(usize, usize)> = (1..=self.len())
            .flat_map(|k| (k + 1..=self.len()).map(move |l| (k, l)))
            .filter(|&(k, l)| &(&self.betas[k - 1] + &self.betas[l - 1]) == target)
            .collect();
        Ok(pairs
            .iter()
            .copied()
            .filter(|&(k, l)| {
                !pairs
                    .iter()
                    .any(|&(k2, l2)| k < k2 && k2 < j && j < l2 && l2 < l)
            })
            .collect())
    }

    /// All `a ∈ Z_{≥0}^r` with `Σ a_k β_k = Σ c_k β_k`, sorted decreasingly
    /// in the lexicographic total order.
    pub fn kostant_partitions(&self, c: &[u32]) -> Result<Vec<Vec<u32>>> {
        if c.len() != self.len() {
            return Err(Error::IndexOutOfRange(format!(
                "partition of length {} for {} roots",
                c.len(),
                self.len()
            )));
        }
        let rank = self.betas.first().map_or(0, Root::rank);
        let mut target = Root::zero(rank);
        for (ck, b) in c.iter().zip(&self.betas) {
            target = &target + &b.scaled(*ck as i64);
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.len()];
        self.kp_dfs(0, &target, &mut cur, &mut out);
        out.sort_by(|a, b| kp_cmp(b, a));
        Ok(out)
    }

    fn kp_dfs(&self, k: usize, rest: &Root, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest.is_zero() {
            out.push(cur.clone());
            return;
        }
        if k == self.len() {
            return;
        }
        let b = &self.betas[k];
        let mut r = rest.clone();
        let mut m = 0;
        while r.0.iter().all(|&x| x >= 0) {
            cur[k] = m;
            self.kp_dfs(k + 1, &r, cur, out);
            r = &r - b;
            m += 1;
        }
        cur[k] = 0;
    }
}

/// The lexicographic total order on Kostant partitions.
pub fn kp_cmp(a: &[u32], b: &[u32]) -> Ordering {
    a.cmp(b)
}
