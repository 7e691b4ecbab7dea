use std::collections::{BTreeMap, VecDeque};

use super::module::{ModuleData, Weight};
use super::reps::vector_label;
use crate::algebra::{lcm_denominators, Field, Frac, Poly, RatFunc, RatFuncZ, SparseMatrix, Q};
use crate::denominators::DenominatorSpec;
use crate::error::{Error, Result};
use crate::roots::Family;

pub(crate) type SparseVec<F> = BTreeMap<usize, F>;

pub(crate) fn apply<F: Field>(cols: &SparseMatrix<F>, v: &SparseVec<F>) -> SparseVec<F> {
    // `cols` is the transpose, so row `c` lists the column `c` entries.
    let mut out: SparseVec<F> = BTreeMap::new();
    for (&c, x) in v {
        for (&r, a) in cols.row(c) {
            let t = a.clone() * x;
            match out.get_mut(&r) {
                Some(acc) => {
                    *acc = acc.clone() + &t;
                    if acc.is_zero() {
                        out.remove(&r);
                    }
                }
                None => {
                    out.insert(r, t);
                }
            }
        }
    }
    out
}

fn axpy<F: Field>(y: &mut SparseVec<F>, a: &F, x: &SparseVec<F>) {
    for (&k, v) in x {
        let t = a.clone() * v;
        let sum = match y.get(&k) {
            Some(old) => old.clone() + &t,
            None => t,
        };
        if sum.is_zero() {
            y.remove(&k);
        } else {
            y.insert(k, sum);
        }
    }
}

fn scale_vec<F: Field>(v: &mut SparseVec<F>, a: &F) {
    for x in v.values_mut() {
        *x = x.clone() * a;
    }
}

/// Reduced row-echelon basis of pairs `(w, R w)` inside one weight space.
pub(crate) struct Block<F> {
    pivots: Vec<usize>,
    rows: Vec<(SparseVec<F>, SparseVec<F>)>,
}

impl<F: Field> Block<F> {
    pub(crate) fn new() -> Self {
        Self {
            pivots: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Insert `(w, r)`; returns whether `w` was independent.
    pub(crate) fn insert(&mut self, mut w: SparseVec<F>, mut r: SparseVec<F>) -> Result<bool> {
        for (p, (bw, br)) in self.pivots.iter().zip(&self.rows) {
            if let Some(c) = w.get(p).cloned() {
                let neg = -c;
                axpy(&mut w, &neg, bw);
                axpy(&mut r, &neg, br);
            }
        }
        let Some(p) = w
            .iter()
            .find(|(_, x)| x.is_atomic())
            .or_else(|| w.iter().next())
            .map(|(&k, _)| k)
        else {
            return Ok(false);
        };
        let inv = w[&p].inv()?;
        scale_vec(&mut w, &inv);
        scale_vec(&mut r, &inv);
        for (bw, br) in &mut self.rows {
            if let Some(c) = bw.get(&p).cloned() {
                let neg = -c;
                axpy(bw, &neg, &w);
                axpy(br, &neg, &r);
            }
        }
        self.pivots.push(p);
        self.rows.push((w, r));
        Ok(true)
    }
}

/// The unique intertwiner `R: M ⊗ N → N ⊗ M` sending `u_M ⊗ u_N` to
/// `u_N ⊗ u_M`, where `u` are the extremal vectors. `N` should already
/// carry its spectral parameter.
///
/// `R` is propagated from the extremal vector through the generators one
/// weight space at a time and then checked against every generator. Fails
/// with [`Error::IntertwinerDimension`] if the tensor product is not
/// cyclic on `u_M ⊗ u_N` or no intertwiner exists.
pub fn solve_intertwiner<F: Field>(m: &ModuleData<F>, n: &ModuleData<F>) -> Result<SparseMatrix<F>> {
    let src = m.tensor(n)?;
    let dst = n.tensor(m)?;
    let dim = src.dim();
    let g = src.generator_count();
    let src_ops: Vec<SparseMatrix<F>> = src.e.iter().chain(&src.f).map(|x| x.transpose()).collect();
    let dst_ops: Vec<SparseMatrix<F>> = dst.e.iter().chain(&dst.f).map(|x| x.transpose()).collect();

    let mut blocks: BTreeMap<Weight, Block<F>> = BTreeMap::new();
    let mut found = 0;
    let start_w: SparseVec<F> = [(src.extremal, F::one())].into_iter().collect();
    let start_r: SparseVec<F> = [(dst.extremal, F::one())].into_iter().collect();
    let mut queue = VecDeque::new();
    blocks
        .entry(src.weights[src.extremal].clone())
        .or_insert_with(Block::new)
        .insert(start_w.clone(), start_r.clone())?;
    found += 1;
    queue.push_back((start_w, start_r));
    while let Some((w, r)) = queue.pop_front() {
        if found == dim {
            break;
        }
        for op in 0..2 * g {
            let w2 = apply(&src_ops[op], &w);
            let Some((&k, _)) = w2.iter().next() else {
                continue;
            };
            let r2 = apply(&dst_ops[op], &r);
            let block = blocks.entry(src.weights[k].clone()).or_insert_with(Block::new);
            if block.insert(w2.clone(), r2.clone())? {
                found += 1;
                queue.push_back((w2, r2));
            }
        }
    }
    if found < dim {
        return Err(Error::IntertwinerDimension {
            dimension: format!("at least 2 (cyclic span {found} of {dim})"),
        });
    }
    let mut r = SparseMatrix::zeros(dim, dim);
    for block in blocks.values() {
        for (&p, (_, img)) in block.pivots.iter().zip(&block.rows) {
            for (&row, v) in img {
                r.set(row, p, v.clone());
            }
        }
    }
    if !is_intertwiner(&r, &src, &dst)? {
        return Err(Error::IntertwinerDimension { dimension: "0".into() });
    }
    Ok(r)
}

/// Whether `r` commutes with every `e_i`, `f_i` between `src` and `dst`.
pub fn is_intertwiner<F: Field>(r: &SparseMatrix<F>, src: &ModuleData<F>, dst: &ModuleData<F>) -> Result<bool> {
    for (a, b) in src.e.iter().chain(&src.f).zip(dst.e.iter().chain(&dst.f)) {
        if r.mul(a)? != b.mul(r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Order on the vector basis `1 ≺ … ≺ n, n̄ ≺ … ≺ 1̄` as basis positions;
/// `n` and `n̄` are incomparable.
fn precedes(n: usize, a: usize, b: usize) -> Option<bool> {
    if (a == n - 1 && b == n) || (a == n && b == n - 1) {
        return None;
    }
    Some(a < b)
}

fn abs_label(n: usize, idx: usize) -> i64 {
    let (j, bar) = vector_label(n, idx);
    if bar {
        2 * n as i64 - j as i64
    } else {
        j as i64
    }
}

/// The normalized R-matrix `R(z): V ⊗ V_z → V_z ⊗ V` on the vector
/// representation, in closed form. Rows index `V_z ⊗ V`, columns `V ⊗ V_z`.
pub fn rnorm_vector(n: usize) -> Result<SparseMatrix<RatFuncZ>> {
    if n < 4 {
        return Err(Error::InvalidCartanType {
            family: 'D',
            rank: n,
            reason: "rank must be at least 4",
        });
    }
    let d = 2 * n;
    let z = RatFuncZ::z();
    let one = RatFuncZ::one();
    let qz = |e: i64| RatFuncZ::from_ratfunc(RatFunc::q_pow(e));
    let q2 = qz(2);
    let top = qz(2 * n as i64 - 2);
    let bar = |i: usize| d - 1 - i;
    let pair_den = (z.clone() - &q2) * &(z.clone() - &top);
    let front = one.clone() - &q2;
    let c = |i: usize, k: usize| -> RatFuncZ {
        if i == k {
            return (q2.clone() * &z - &top) * &(z.clone() - &one);
        }
        let x = RatFuncZ::from_ratfunc(RatFunc::neg_q_pow(abs_label(n, k) - abs_label(n, i)));
        let delta = if i == bar(k) { z.clone() - &top } else { RatFuncZ::zero() };
        if precedes(n, i, k).unwrap_or(true) {
            front.clone() * &z * &(x * &(one.clone() - &z) + &delta)
        } else {
            front.clone() * &(top.clone() * &x * &(one.clone() - &z) + &delta)
        }
    };
    let mut r = SparseMatrix::zeros(d * d, d * d);
    let den = z.clone() - &q2;
    for k in 0..d {
        for l in 0..d {
            let col = k * d + l;
            if k == l {
                r.set(col, col, one.clone());
            } else if l != bar(k) {
                let zk = if precedes(n, k, l) == Some(false) { z.clone() } else { one.clone() };
                r.set(col, col, (front.clone() * &zk).div(&den)?);
                r.set(l * d + k, col, (qz(1) * &(z.clone() - &one)).div(&den)?);
            } else {
                for i in 0..d {
                    let v = c(i, k).div(&pair_den)?;
                    if !v.is_zero() {
                        r.set(bar(i) * d + i, col, v);
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Factor the lcm of the entry denominators of a normalized R-matrix as
/// `∏ (z - (-q)^s)` with `1 ≤ s ≤ 4n`.
pub fn extract_denominator(
    r: &SparseMatrix<RatFuncZ>,
    family: Family,
    n: usize,
    k: usize,
    l: usize,
) -> Result<DenominatorSpec> {
    let (_, mut p) = lcm_denominators(r).monic();
    let mut exps = Vec::new();
    for s in 1..=4 * n as i64 {
        let root = RatFunc::neg_q_pow(s);
        let lin = Poly::linear(root.clone());
        while p.degree().is_some_and(|d| d > 0) && p.eval(&root).is_zero() {
            p = p.exact_div(&lin)?;
            exps.push(s);
        }
    }
    if !p.is_constant() {
        return Err(Error::Unfactorable(format!("leftover factor of degree {:?}", p.degree())));
    }
    Ok(DenominatorSpec::from_exponents(family, n, k, l, exps))
}

/// `d(z) R(z)` with all entries polynomial in `z`.
pub fn clear_denominator(r: &SparseMatrix<RatFuncZ>, d: &DenominatorSpec) -> SparseMatrix<RatFuncZ> {
    let dz = RatFuncZ::from_poly(d.to_poly());
    r.map(|x| x.clone() * &dz)
}

/// Specialize a matrix over `Q(q)(z)` at `z = value ∈ Q(q)`.
pub fn specialize_z(r: &SparseMatrix<RatFuncZ>, value: &RatFunc) -> Result<SparseMatrix<RatFunc>> {
    Ok(r.try_map(|x| x.eval(value))?)
}

/// `d(z) R(z)` at `q = q0` and `z = value`, where `value` lives in
/// `Q(x)(y)`.
fn specialize_bivariate(
    r: &SparseMatrix<RatFuncZ>,
    q0: &Q,
    value: &Frac<RatFunc>,
) -> Result<SparseMatrix<Frac<RatFunc>>> {
    let embed = |c: &RatFunc| -> Frac<RatFunc> { Frac::from_const(RatFunc::from_const(c.eval(q0).expect("q0 is not a pole"))) };
    Ok(r.try_map(|f| f.substitute(value, &embed))?)
}

/// The braid form of the Yang–Baxter equation for `d(z) R(z)` on three
/// copies of the vector representation, with `q` specialized to `q0` and
/// spectral ratios `x`, `y` kept symbolic:
/// `Ř₁(y) Ř₂(xy) Ř₁(x) = Ř₂(x) Ř₁(xy) Ř₂(y)`.
pub fn check_ybe_vector(n: usize, q0: &Q) -> Result<bool> {
    let dr = clear_denominator(&rnorm_vector(n)?, &crate::denominators::denom_d(1, 1, n)?);
    let x = Frac::from_const(RatFunc::var());
    let y = Frac::<RatFunc>::var();
    let xy = x.clone() * &y;
    let d = 2 * n;
    let id = SparseMatrix::identity(d);
    let r1 = |v: &Frac<RatFunc>| -> Result<SparseMatrix<Frac<RatFunc>>> {
        Ok(specialize_bivariate(&dr, q0, v)?.kron(&id))
    };
    let r2 = |v: &Frac<RatFunc>| -> Result<SparseMatrix<Frac<RatFunc>>> {
        Ok(id.kron(&specialize_bivariate(&dr, q0, v)?))
    };
    let lhs = r1(&y)?.mul(&r2(&xy)?)?.mul(&r1(&x)?)?;
    let rhs = r2(&x)?.mul(&r1(&xy)?)?.mul(&r2(&y)?)?;
    Ok(lhs == rhs)
}
