//! Simply-laced root systems of finite type and their Weyl groups.
//!
//! Vertices are 1-based. `D_n` forks at `n-2` with tines `n-1` and `n`;
//! `E_n` uses Bourbaki labels (`2` hangs off `4`).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}")
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "A" | "a" => Ok(Family::A),
            "D" | "d" => Ok(Family::D),
            "E" | "e" => Ok(Family::E),
            other => Err(format!("unknown Cartan family {other:?}; expected A, D or E")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize, PartialOrd, Ord)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let reason = match family {
            Family::A if rank < 1 => Some("type A needs rank >= 1"),
            Family::D if rank < 4 => Some("type D needs rank >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("type E needs rank 6, 7 or 8"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InvalidCartanType {
                family: family.to_string().chars().next().unwrap(),
                rank,
                reason,
            }),
            None => Ok(Self { family, rank }),
        }
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Family::A, rank).expect("valid A rank")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Family::D, rank).expect("valid D rank")
    }

    pub fn e(rank: usize) -> Self {
        Self::new(Family::E, rank).expect("valid E rank")
    }

    /// Undirected Dynkin edges `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n));
                e
            }
            Family::E => {
                let mut e = vec![(1, 3), (2, 4), (3, 4)];
                e.extend((4..n).map(|i| (i, i + 1)));
                e
            }
        }
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        self.edges()
            .into_iter()
            .filter_map(|(a, b)| match (a == i, b == i) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges().contains(&(a, b))
    }

    /// Symmetric Cartan matrix, 0-based.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            a[i - 1][j - 1] = -1;
            a[j - 1][i - 1] = -1;
        }
        a
    }

    pub fn coxeter_number(&self) -> i64 {
        let n = self.rank as i64;
        match self.family {
            Family::A => n + 1,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        let n = self.rank;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
        }
    }

    /// Graph distance on the Dynkin diagram, 1-based indices.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.rank;
        let adj: Vec<Vec<usize>> = (1..=n).map(|i| self.neighbors(i)).collect();
        let mut d = vec![vec![usize::MAX; n + 1]; n + 1];
        for s in 1..=n {
            let mut queue = VecDeque::from([s]);
            d[s][s] = 0;
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u - 1] {
                    if d[s][v] == usize::MAX {
                        d[s][v] = d[s][u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        d
    }

    pub fn check_vertex(&self, i: usize) -> Result<()> {
        if (1..=self.rank).contains(&i) {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                vertex: i,
                rank: self.rank,
            })
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// An element of the root lattice in simple-root coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub Vec<i64>);

impl Root {
    pub fn zero(rank: usize) -> Self {
        Root(vec![0; rank])
    }

    /// `α_i`, 1-based.
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Root(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|β| = Σ |m_i|`.
    pub fn height(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    /// The index `i` with `self = α_i`, if simple.
    pub fn simple_index(&self) -> Option<usize> {
        if self.height() != 1 || !self.is_positive() {
            return None;
        }
        self.0.iter().position(|&c| c == 1).map(|p| p + 1)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Root(self.0.iter().map(|c| c * k).collect())
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = if c.abs() == 1 { String::new() } else { c.abs().to_string() };
            write!(f, "{sign}{mag}a{}", i + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// A word in the simple reflections, 1-based letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Positive roots and reflection data for a fixed Cartan type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: CartanType,
    cartan: Vec<Vec<i64>>,
    positive: Vec<Root>,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    /// Closure of the simple roots under simple reflections, restricted to
    /// the positive cone. Roots are sorted by height, then coordinates.
    pub fn new(ty: CartanType) -> Self {
        let n = ty.rank;
        let cartan = ty.cartan_matrix();
        let mut seen: HashMap<Root, usize> = HashMap::new();
        let mut queue: VecDeque<Root> = (1..=n).map(|i| Root::simple(n, i)).collect();
        let mut found = Vec::new();
        while let Some(b) = queue.pop_front() {
            if seen.contains_key(&b) {
                continue;
            }
            seen.insert(b.clone(), 0);
            for i in 1..=n {
                let r = reflect_with(&cartan, i, &b);
                if r.is_positive() && !seen.contains_key(&r) {
                    queue.push_back(r);
                }
            }
            found.push(b);
        }
        found.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
        let index = found.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        Self {
            ty,
            cartan,
            positive: found,
            index,
        }
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn simple(&self, i: usize) -> Root {
        Root::simple(self.rank(), i)
    }

    pub fn index_of(&self, b: &Root) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn is_positive_root(&self, b: &Root) -> bool {
        self.index.contains_key(b)
    }

    pub fn is_root(&self, b: &Root) -> bool {
        self.is_positive_root(b) || self.is_positive_root(&-b)
    }

    pub fn highest_root(&self) -> &Root {
        self.positive.last().expect("nonempty root system")
    }

    /// `(β, γ)` for the symmetric form with `(α_i, α_j) = a_ij`.
    pub fn bilinear_form(&self, b: &Root, g: &Root) -> i64 {
        let mut s = 0;
        for (i, &bi) in b.0.iter().enumerate() {
            if bi == 0 {
                continue;
            }
            for (j, &gj) in g.0.iter().enumerate() {
                s += bi * gj * self.cartan[i][j];
            }
        }
        s
    }

    /// `s_i(β) = β - (β, α_i) α_i`.
    pub fn reflect(&self, i: usize, b: &Root) -> Root {
        reflect_with(&self.cartan, i, b)
    }

    /// Apply `s_{w_1} ⋯ s_{w_k}`; the rightmost letter acts first.
    pub fn apply_word(&self, w: &WeylWord, b: &Root) -> Root {
        w.0.iter().rev().fold(b.clone(), |acc, &i| self.reflect(i, &acc))
    }

    /// A reduced word for the longest element by greedy descent: append `i`
    /// while `w(α_i)` is still positive.
    pub fn longest_element(&self) -> WeylWord {
        let n = self.rank();
        let mut word = WeylWord::default();
        loop {
            let next = (1..=n).find(|&i| self.apply_word(&word, &self.simple(i)).is_positive());
            match next {
                Some(i) => word.0.push(i),
                None => return word,
            }
        }
    }

    /// `i*` defined by `w_0(α_i) = -α_{i*}`.
    pub fn star_table(&self) -> Vec<usize> {
        let w0 = self.longest_element();
        let mut out = vec![0; self.rank() + 1];
        for i in 1..=self.rank() {
            let img = -&self.apply_word(&w0, &self.simple(i));
            out[i] = img.simple_index().expect("w0 permutes -simple roots");
        }
        out
    }

    pub fn star(&self, i: usize) -> usize {
        self.star_table()[i]
    }
}

fn reflect_with(cartan: &[Vec<i64>], i: usize, b: &Root) -> Root {
    let pairing: i64 = b.0.iter().enumerate().map(|(j, &c)| c * cartan[j][i - 1]).sum();
    let mut out = b.clone();
    out.0[i - 1] -= pairing;
    out
}

/// `i*` for type `D_n` without building the root system.
pub fn star_d(n: usize, i: usize) -> usize {
    if n % 2 == 1 && i + 1 >= n {
        if i == n {
            n - 1
        } else {
            n
        }
    } else {
        i
    }
}

/// `i*` for type `A_n`.
pub fn star_a(n: usize, i: usize) -> usize {
    n + 1 - i
}
