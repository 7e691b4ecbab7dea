use super::module::{ModuleData, Weight};
use crate::algebra::{Field, SparseMatrix};
use crate::error::{Error, Result};
use crate::roots::Family;

fn check_d(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidCartanType {
            family: 'D',
            rank: n,
            reason: "rank must be at least 4",
        });
    }
    Ok(())
}

fn from_moves<F: Field>(
    family: Family,
    n: usize,
    labels: Vec<String>,
    weights: Vec<Weight>,
    moves: Vec<Vec<(usize, usize, i64)>>,
    extremal: usize,
    q: F,
) -> ModuleData<F> {
    let d = weights.len();
    let mut e = Vec::with_capacity(moves.len());
    let mut f = Vec::with_capacity(moves.len());
    for mv in moves {
        // (from, to, sign): e sends `from` to `to`, f sends it back.
        e.push(SparseMatrix::from_triplets(d, d, mv.iter().map(|&(s, t, c)| (t, s, F::from_i64(c)))));
        f.push(SparseMatrix::from_triplets(d, d, mv.iter().map(|&(s, t, c)| (s, t, F::from_i64(c)))));
    }
    ModuleData::new(family, n, labels, weights, e, f, extremal, q)
}

/// Position of `v_j` (`bar = false`) or `v_{j̄}` in the ordered basis
/// `1, …, n, n̄, …, 1̄` of the vector representation.
pub fn vector_index(n: usize, j: usize, bar: bool) -> usize {
    if bar {
        2 * n - j
    } else {
        j - 1
    }
}

/// Inverse of [`vector_index`].
pub fn vector_label(n: usize, idx: usize) -> (usize, bool) {
    if idx < n {
        (idx + 1, false)
    } else {
        (2 * n - idx, true)
    }
}

/// The `2n`-dimensional vector representation `V(ϖ_1)` of `U_q'(D_n^{(1)})`.
pub fn vector_rep<F: Field>(n: usize, q: F) -> Result<ModuleData<F>> {
    check_d(n)?;
    let d = 2 * n;
    let mut labels = Vec::with_capacity(d);
    let mut weights = Vec::with_capacity(d);
    for idx in 0..d {
        let (j, bar) = vector_label(n, idx);
        labels.push(if bar { format!("{j}̄") } else { j.to_string() });
        let mut w = vec![0; n];
        w[j - 1] = if bar { -2 } else { 2 };
        weights.push(w);
    }
    let v = |j, bar| vector_index(n, j, bar);
    let mut moves = vec![vec![(v(2, false), v(1, true), 1), (v(1, false), v(2, true), 1)]];
    for i in 1..n {
        moves.push(vec![(v(i + 1, false), v(i, false), 1), (v(i, true), v(i + 1, true), 1)]);
    }
    moves.push(vec![(v(n - 1, true), v(n, false), 1), (v(n, true), v(n - 1, false), 1)]);
    Ok(from_moves(Family::D, n, labels, weights, moves, 0, q))
}

fn sign_label(m: &[i64]) -> String {
    let s: Vec<&str> = m.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
    format!("({})", s.join(","))
}

/// The half-spin representation with sign product `sign`: `V(ϖ_n)` for
/// `+1`, `V(ϖ_{n-1})` for `-1`.
pub fn spin_rep<F: Field>(n: usize, sign: i64, q: F) -> Result<ModuleData<F>> {
    check_d(n)?;
    if sign != 1 && sign != -1 {
        return Err(Error::IndexOutOfRange(format!("spin sign {sign}")));
    }
    let mut basis: Vec<Vec<i64>> = (0..1u32 << n)
        .map(|mask| (0..n).map(|k| if mask >> (n - 1 - k) & 1 == 0 { 1 } else { -1 }).collect::<Vec<i64>>())
        .filter(|m| m.iter().product::<i64>() == sign)
        .collect();
    basis.sort_by(|a, b| b.cmp(a));
    let index = |m: &[i64]| basis.iter().position(|b| b == m).expect("basis vector");
    let mut moves = vec![Vec::new(); n + 1];
    for m in &basis {
        let mut flip = |gen: usize, a: usize, b: usize, from: (i64, i64)| {
            if (m[a], m[b]) == from {
                let mut t = m.clone();
                t[a] = -t[a];
                t[b] = -t[b];
                moves[gen].push((index(m), index(&t), 1));
            }
        };
        flip(0, 0, 1, (1, 1));
        for i in 1..n {
            flip(i, i - 1, i, (-1, 1));
        }
        flip(n, n - 2, n - 1, (-1, -1));
    }
    let labels = basis.iter().map(|m| sign_label(m)).collect();
    let weights = basis.clone();
    Ok(from_moves(Family::D, n, labels, weights, moves, 0, q))
}

/// The fundamental representation `∧^k` of `U_q'(A_n^{(1)})` on
/// `k`-subsets of `{1, …, n+1}`, every generator acting with coefficient 1.
pub fn wedge_rep<F: Field>(n: usize, k: usize, q: F) -> Result<ModuleData<F>> {
    if n < 1 || k < 1 || k > n {
        return Err(Error::IndexOutOfRange(format!("wedge power {k} for A{n}")));
    }
    let m = n + 1;
    let mut basis: Vec<u32> = (0..1u32 << m).filter(|s| s.count_ones() as usize == k).collect();
    // Extremal `{1, …, k}` first.
    basis.sort_by_key(|s| std::cmp::Reverse(s.reverse_bits()));
    let index = |s: u32| basis.iter().position(|&b| b == s).expect("basis subset");
    let has = |s: u32, j: usize| s >> (j - 1) & 1 == 1;
    let mut moves = vec![Vec::new(); n + 1];
    for &s in &basis {
        for i in 1..=n {
            if has(s, i + 1) && !has(s, i) {
                moves[i].push((index(s), index(s ^ (1 << i) ^ (1 << (i - 1))), 1));
            }
        }
        if has(s, 1) && !has(s, m) {
            moves[0].push((index(s), index(s ^ 1 ^ (1 << (m - 1))), 1));
        }
    }
    let labels = basis
        .iter()
        .map(|&s| {
            let v: Vec<String> = (1..=m).filter(|&j| has(s, j)).map(|j| j.to_string()).collect();
            format!("{{{}}}", v.join(","))
        })
        .collect();
    let weights = basis.iter().map(|&s| (1..=m).map(|j| if has(s, j) { 2 } else { 0 }).collect()).collect();
    Ok(from_moves(Family::A, n, labels, weights, moves, 0, q))
}
