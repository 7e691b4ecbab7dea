//! The repetition quiver, the bijection `φ` and the Auslander–Reiten quiver.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{BetaSequence, DynkinQuiver, HeightFunction};
use crate::roots::{Root, RootSystem, WeylWord};

/// A vertex `(i, p)` of the repetition quiver.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepVertex {
    pub i: usize,
    pub p: i64,
}

impl RepVertex {
    pub fn new(i: usize, p: i64) -> Self {
        Self { i, p }
    }
}

impl fmt::Display for RepVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.p)
    }
}

/// A Dynkin quiver with a height function and the data derived from its
/// adapted Coxeter element.
#[derive(Clone, Debug)]
pub struct Repetition {
    rs: RootSystem,
    quiver: DynkinQuiver,
    xi: HeightFunction,
    coxeter: WeylWord,
    coxeter_inv: WeylWord,
    gamma: Vec<Root>,
    m: Vec<i64>,
    star: Vec<usize>,
    dist: Vec<Vec<usize>>,
}

impl Repetition {
    pub fn new(quiver: &DynkinQuiver) -> Self {
        Self::with_height(quiver, quiver.height_function()).expect("canonical height is compatible")
    }

    pub fn with_height(quiver: &DynkinQuiver, xi: HeightFunction) -> Result<Self> {
        if xi.0.len() != quiver.rank() || !xi.is_compatible(quiver) {
            return Err(Error::InvalidQuiver(format!("height function {:?} does not fit {quiver}", xi.0)));
        }
        let ty = quiver.cartan_type();
        let rs = RootSystem::new(ty);
        let coxeter = quiver.adapted_coxeter();
        let coxeter_inv = WeylWord(coxeter.0.iter().rev().copied().collect());
        let gamma: Vec<Root> = ty.vertices().map(|i| gamma_of(quiver, i)).collect();
        let star = rs.star_table();
        let mut rep = Self {
            dist: ty.distance_matrix(),
            rs,
            quiver: quiver.clone(),
            xi,
            coxeter,
            coxeter_inv,
            gamma,
            m: Vec::new(),
            star,
        };
        rep.m = ty.vertices().map(|i| rep.compute_m(i)).collect();
        Ok(rep)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.quiver
    }

    pub fn height(&self) -> &HeightFunction {
        &self.xi
    }

    pub fn xi(&self, i: usize) -> i64 {
        self.xi.get(i)
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    pub fn coxeter_number(&self) -> i64 {
        self.quiver.cartan_type().coxeter_number()
    }

    pub fn coxeter(&self) -> &WeylWord {
        &self.coxeter
    }

    pub fn star(&self, i: usize) -> usize {
        self.star[i]
    }

    pub fn distance(&self, i: usize, j: usize) -> i64 {
        self.dist[i][j] as i64
    }

    /// The Coxeter element acting on roots.
    pub fn tau(&self, b: &Root) -> Root {
        self.rs.apply_word(&self.coxeter, b)
    }

    pub fn tau_inv(&self, b: &Root) -> Root {
        self.rs.apply_word(&self.coxeter_inv, b)
    }

    /// `γ_i`: the sum of `α_j` over vertices with a path `j -> ⋯ -> i`.
    pub fn gamma(&self, i: usize) -> &Root {
        &self.gamma[i - 1]
    }

    /// `m_i = max { k ≥ 0 : τ^k γ_i ∈ Δ₊ }`.
    pub fn m(&self, i: usize) -> i64 {
        self.m[i - 1]
    }

    fn compute_m(&self, i: usize) -> i64 {
        let mut b = self.gamma(i).clone();
        let mut k = 0;
        loop {
            let next = self.tau(&b);
            if !next.is_positive() {
                return k;
            }
            b = next;
            k += 1;
        }
    }

    pub fn check_parity(&self, v: RepVertex) -> Result<()> {
        self.quiver.cartan_type().check_vertex(v.i)?;
        if (v.p - self.xi(v.i)).rem_euclid(2) != 0 {
            return Err(Error::Parity { vertex: v.i, p: v.p });
        }
        Ok(())
    }

    /// `φ(i, p)`, walking from `(i, ξ_i)` in steps of two.
    pub fn phi(&self, v: RepVertex) -> Result<(Root, i64)> {
        self.check_parity(v)?;
        let mut beta = self.gamma(v.i).clone();
        let mut m = 0;
        let mut p = self.xi(v.i);
        while p > v.p {
            (beta, m) = self.step_down(&beta, m);
            p -= 2;
        }
        while p < v.p {
            (beta, m) = self.step_up(&beta, m);
            p += 2;
        }
        Ok((beta, m))
    }

    fn step_down(&self, b: &Root, m: i64) -> (Root, i64) {
        let t = self.tau(b);
        if t.is_positive() {
            (t, m)
        } else {
            (-&t, m - 1)
        }
    }

    fn step_up(&self, b: &Root, m: i64) -> (Root, i64) {
        let t = self.tau_inv(b);
        if t.is_positive() {
            (t, m)
        } else {
            (-&t, m + 1)
        }
    }

    /// `[min ξ - 2h, max ξ + 2h]`.
    pub fn default_window(&self) -> (i64, i64) {
        let h = self.coxeter_number();
        (self.xi.min() - 2 * h, self.xi.max() + 2 * h)
    }

    pub fn build_phi(&self, window: (i64, i64)) -> PhiTable {
        let (lo, hi) = window;
        let mut forward = BTreeMap::new();
        for i in self.quiver.cartan_type().vertices() {
            let x = self.xi(i);
            let mut beta = self.gamma(i).clone();
            let mut m = 0;
            let mut p = x;
            let mut down = Vec::new();
            while p >= lo {
                if p <= hi {
                    down.push((RepVertex::new(i, p), (beta.clone(), m)));
                }
                (beta, m) = self.step_down(&beta, m);
                p -= 2;
            }
            let (mut beta, mut m, mut p) = (self.gamma(i).clone(), 0, x);
            loop {
                (beta, m) = self.step_up(&beta, m);
                p += 2;
                if p > hi {
                    break;
                }
                if p >= lo {
                    forward.insert(RepVertex::new(i, p), (beta.clone(), m));
                }
            }
            forward.extend(down);
        }
        let backward = forward.iter().map(|(v, bm)| (bm.clone(), *v)).collect();
        PhiTable {
            window,
            forward,
            backward,
        }
    }

    /// `Γ_Q` as the preimage of `Δ₊ × {0}`.
    pub fn ar_quiver(&self) -> ARQuiver {
        let table = self.build_phi(self.default_window());
        let dims: BTreeMap<RepVertex, Root> = table
            .forward
            .iter()
            .filter(|(_, (_, m))| *m == 0)
            .map(|(v, (b, _))| (*v, b.clone()))
            .collect();
        ARQuiver::from_dims(self, dims)
    }

    /// `{ (i, p) : ξ_i - 2 m_i ≤ p ≤ ξ_i }`.
    pub fn described_vertices(&self) -> BTreeSet<RepVertex> {
        let mut out = BTreeSet::new();
        for i in self.quiver.cartan_type().vertices() {
            let x = self.xi(i);
            for s in 0..=self.m(i) {
                out.insert(RepVertex::new(i, x - 2 * s));
            }
        }
        out
    }

    pub fn is_extremal(&self, i: usize) -> bool {
        self.quiver.cartan_type().degree(i) == 1
    }

    /// Boundary set of `Γ_Q`: injectives, projectives and the rows of
    /// degree-one vertices.
    pub fn boundary(&self) -> BTreeSet<RepVertex> {
        let mut out = BTreeSet::new();
        for i in self.quiver.cartan_type().vertices() {
            let x = self.xi(i);
            let mi = self.m(i);
            out.insert(RepVertex::new(i, x));
            out.insert(RepVertex::new(i, x - 2 * mi));
            if self.is_extremal(i) {
                for s in 0..=mi {
                    out.insert(RepVertex::new(i, x - 2 * s));
                }
            }
        }
        out
    }

    /// `(−q)`-exponent `p + h` of the evaluation parameter attached to `(i, p)`.
    pub fn spectral_exponent(&self, v: RepVertex) -> Result<i64> {
        self.check_parity(v)?;
        Ok(v.p + self.coxeter_number())
    }

    /// `o(i) = -(-1)^{ξ_i}`.
    pub fn o(&self, i: usize) -> i64 {
        if self.xi(i).rem_euclid(2) == 0 {
            -1
        } else {
            1
        }
    }

    /// Drinfeld polynomial datum `1 + c q^{e} u` for the fundamental module at `i`.
    pub fn drinfeld_datum(&self, i: usize) -> DrinfeldDatum {
        let h = self.coxeter_number();
        let sign_h = if h % 2 == 0 { 1 } else { -1 };
        DrinfeldDatum {
            coefficient_sign: self.o(i) * sign_h,
            q_exponent: -h,
        }
    }
}

fn gamma_of(q: &DynkinQuiver, i: usize) -> Root {
    let n = q.rank();
    let mut reach = vec![false; n + 1];
    reach[i] = true;
    let mut stack = vec![i];
    while let Some(u) = stack.pop() {
        for &(s, t) in q.arrows() {
            if t == u && !reach[s] {
                reach[s] = true;
                stack.push(s);
            }
        }
    }
    Root((1..=n).map(|j| i64::from(reach[j])).collect())
}

/// `γ_i` for a quiver.
pub fn gamma_i(q: &DynkinQuiver, i: usize) -> Result<Root> {
    q.cartan_type().check_vertex(i)?;
    Ok(gamma_of(q, i))
}

/// Sign and `q`-exponent of the linear Drinfeld polynomial coefficient.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DrinfeldDatum {
    pub coefficient_sign: i64,
    pub q_exponent: i64,
}

/// One row of a [`PhiTable`] dump.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PhiEntry {
    pub vertex: RepVertex,
    pub root: Root,
    pub shift: i64,
}

/// `φ` restricted to a window of `p` values.
#[derive(Clone, Debug)]
pub struct PhiTable {
    pub window: (i64, i64),
    pub forward: BTreeMap<RepVertex, (Root, i64)>,
    pub backward: HashMap<(Root, i64), RepVertex>,
}

impl PhiTable {
    pub fn get(&self, v: RepVertex) -> Option<&(Root, i64)> {
        self.forward.get(&v)
    }

    pub fn inverse(&self, b: &Root, m: i64) -> Option<RepVertex> {
        self.backward.get(&(b.clone(), m)).copied()
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn is_bijective(&self) -> bool {
        self.backward.len() == self.forward.len()
            && self.forward.iter().all(|(v, bm)| self.backward.get(bm) == Some(v))
    }

    pub fn entries(&self) -> Vec<PhiEntry> {
        self.forward
            .iter()
            .map(|(v, (b, m))| PhiEntry {
                vertex: *v,
                root: b.clone(),
                shift: *m,
            })
            .collect()
    }
}

impl Serialize for PhiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PhiTable", 2)?;
        st.serialize_field("window", &self.window)?;
        st.serialize_field("entries", &self.entries())?;
        st.end()
    }
}

fn dims_as_list<S: serde::Serializer>(
    dims: &BTreeMap<RepVertex, Root>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(dims.iter())
}

/// The Auslander–Reiten quiver with dimension-vector labels.
#[derive(Clone, Debug, Serialize)]
pub struct ARQuiver {
    #[serde(serialize_with = "dims_as_list")]
    pub dims: BTreeMap<RepVertex, Root>,
    pub arrows: Vec<(RepVertex, RepVertex)>,
}

impl ARQuiver {
    fn from_dims(rep: &Repetition, dims: BTreeMap<RepVertex, Root>) -> Self {
        let ty = rep.quiver().cartan_type();
        let mut arrows = Vec::new();
        for v in dims.keys() {
            for j in ty.neighbors(v.i) {
                let w = RepVertex::new(j, v.p + 1);
                if dims.contains_key(&w) {
                    arrows.push((*v, w));
                }
            }
        }
        arrows.sort_unstable();
        Self { dims, arrows }
    }

    pub fn vertices(&self) -> impl Iterator<Item = &RepVertex> {
        self.dims.keys()
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn contains(&self, v: RepVertex) -> bool {
        self.dims.contains_key(&v)
    }

    pub fn dim(&self, v: RepVertex) -> Option<&Root> {
        self.dims.get(&v)
    }

    pub fn vertex_of(&self, b: &Root) -> Option<RepVertex> {
        self.dims.iter().find(|(_, d)| *d == b).map(|(v, _)| *v)
    }

    pub fn predecessors(&self, v: RepVertex) -> impl Iterator<Item = RepVertex> + '_ {
        self.arrows.iter().filter(move |(_, t)| *t == v).map(|(s, _)| *s)
    }

    /// Directed reachability; every vertex reaches itself.
    pub fn path_exists(&self, from: RepVertex, to: RepVertex) -> bool {
        if from == to {
            return true;
        }
        let mut seen = BTreeSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &(s, t) in &self.arrows {
                if s == u && t.p <= to.p && seen.insert(t) {
                    if t == to {
                        return true;
                    }
                    queue.push_back(t);
                }
            }
        }
        false
    }

    /// `dim X + dim τX = Σ_{Z → X} dim Z` wherever `τX = (i, p-2)` lies in
    /// the quiver.
    pub fn check_additivity(&self) -> bool {
        self.additivity_violation().is_none()
    }

    pub fn additivity_violation(&self) -> Option<RepVertex> {
        for (v, d) in &self.dims {
            let Some(dt) = self.dims.get(&RepVertex::new(v.i, v.p - 2)) else {
                continue;
            };
            let lhs = d + dt;
            let rhs = self
                .predecessors(*v)
                .fold(Root::zero(d.rank()), |acc, z| &acc + &self.dims[&z]);
            if lhs != rhs {
                return Some(*v);
            }
        }
        None
    }
}

/// Outcome of the combinatorial checks on one orientation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CombinatorialReport {
    pub phi_bijective: bool,
    pub description_matches: bool,
    pub vertex_count: bool,
    pub injectives_rev: bool,
    pub tau_compatible: bool,
    pub nakayama: bool,
    pub additivity: bool,
    pub distance_rows: bool,
    pub sum_paths: bool,
    pub boundary: bool,
    pub convexity: bool,
    pub adapted: bool,
}

impl CombinatorialReport {
    pub fn all(&self) -> bool {
        let s = self;
        [
            s.phi_bijective,
            s.description_matches,
            s.vertex_count,
            s.injectives_rev,
            s.tau_compatible,
            s.nakayama,
            s.additivity,
            s.distance_rows,
            s.sum_paths,
            s.boundary,
            s.convexity,
            s.adapted,
        ]
        .iter()
        .all(|&b| b)
    }

    /// Names of failed checks.
    pub fn failures(&self) -> Vec<&'static str> {
        let s = self;
        [
            ("phi_bijective", s.phi_bijective),
            ("description_matches", s.description_matches),
            ("vertex_count", s.vertex_count),
            ("injectives_rev", s.injectives_rev),
            ("tau_compatible", s.tau_compatible),
            ("nakayama", s.nakayama),
            ("additivity", s.additivity),
            ("distance_rows", s.distance_rows),
            ("sum_paths", s.sum_paths),
            ("boundary", s.boundary),
            ("convexity", s.convexity),
            ("adapted", s.adapted),
        ]
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(n, _)| n)
        .collect()
    }
}

impl Repetition {
    /// `ξ_{i*} - 2 m_{i*} = ξ_i - h + 2` for every `i`.
    pub fn check_nakayama(&self) -> bool {
        let h = self.coxeter_number();
        self.quiver.cartan_type().vertices().all(|i| {
            let s = self.star(i);
            self.xi(s) - 2 * self.m(s) == self.xi(i) - h + 2
        })
    }

    /// `(i, ξ_j - d(i,j))` and `(i, ξ_j - 2m_j + d(i,j))` lie in `Γ_Q`.
    pub fn check_distance_rows(&self, ar: &ARQuiver) -> bool {
        let ty = self.quiver.cartan_type();
        ty.vertices().all(|i| {
            ty.vertices().all(|j| {
                let d = self.distance(i, j);
                ar.contains(RepVertex::new(i, self.xi(j) - d))
                    && ar.contains(RepVertex::new(i, self.xi(j) - 2 * self.m(j) + d))
            })
        })
    }

    /// For `k < ℓ` with `β_k + β_ℓ ∈ Δ₊`: a path from `φ⁻¹(β_ℓ)` to
    /// `φ⁻¹(β_k)`, and `p_k > p_ℓ`.
    pub fn check_sum_paths(&self, ar: &ARQuiver, bs: &BetaSequence) -> bool {
        let pos: Vec<RepVertex> = match bs.betas.iter().map(|b| ar.vertex_of(b)).collect() {
            Some(v) => v,
            None => return false,
        };
        for k in 0..bs.len() {
            for l in k + 1..bs.len() {
                if !self.rs.is_positive_root(&(&bs.betas[k] + &bs.betas[l])) {
                    continue;
                }
                if !(pos[k].p > pos[l].p && ar.path_exists(pos[l], pos[k])) {
                    return false;
                }
            }
        }
        true
    }

    /// Every `φ⁻¹(α_k, 0)` lies on the boundary; off degree-one rows it is
    /// an injective or a projective.
    pub fn check_boundary(&self, ar: &ARQuiver) -> bool {
        let boundary = self.boundary();
        (1..=self.rank()).all(|k| {
            let Some(v) = ar.vertex_of(&self.rs.simple(k)) else {
                return false;
            };
            let in_boundary = boundary.contains(&v);
            let row_end = v.p == self.xi(v.i) || v.p == self.xi(v.i) - 2 * self.m(v.i);
            in_boundary && (self.is_extremal(v.i) || row_end)
        })
    }

    /// The injective vertices `(i, ξ_i)` span a copy of `Q^rev`.
    pub fn check_injectives(&self, ar: &ARQuiver) -> bool {
        let ty = self.quiver.cartan_type();
        let inj: BTreeMap<RepVertex, usize> = ty
            .vertices()
            .map(|i| (RepVertex::new(i, self.xi(i)), i))
            .collect();
        if !inj.keys().all(|v| ar.contains(*v)) {
            return false;
        }
        let mut induced: Vec<(usize, usize)> = ar
            .arrows
            .iter()
            .filter_map(|(s, t)| Some((*inj.get(s)?, *inj.get(t)?)))
            .collect();
        induced.sort_unstable();
        induced == self.quiver.reversed().arrows()
    }

    /// Translation on vertices agrees with the Coxeter element on labels.
    pub fn check_tau_compatible(&self, ar: &ARQuiver) -> bool {
        ar.dims.iter().all(|(v, d)| match ar.dim(RepVertex::new(v.i, v.p - 2)) {
            Some(dt) => &self.tau(d) == dt,
            None => true,
        })
    }

    /// Run every combinatorial invariant on this orientation.
    pub fn combinatorial_report(&self) -> CombinatorialReport {
        let table = self.build_phi(self.default_window());
        let ar = self.ar_quiver();
        let bs = self.quiver.adapted_w0(&self.rs);
        let described = self.described_vertices();
        let actual: BTreeSet<RepVertex> = ar.vertices().copied().collect();
        CombinatorialReport {
            phi_bijective: table.is_bijective()
                && self
                    .quiver
                    .cartan_type()
                    .vertices()
                    .all(|i| table.get(RepVertex::new(i, self.xi(i))) == Some(&(self.gamma(i).clone(), 0))),
            description_matches: described == actual,
            vertex_count: ar.len() == self.rs.num_positive(),
            injectives_rev: self.check_injectives(&ar),
            tau_compatible: self.check_tau_compatible(&ar),
            nakayama: self.check_nakayama(),
            additivity: ar.check_additivity(),
            distance_rows: self.check_distance_rows(&ar),
            sum_paths: self.check_sum_paths(&ar, &bs),
            boundary: self.check_boundary(&ar),
            convexity: bs.is_valid_w0(&self.rs) && bs.check_convexity(&self.rs),
            adapted: self.quiver.is_adapted(&bs.word),
        }
    }
}
