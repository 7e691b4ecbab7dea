use std::collections::{BTreeMap, VecDeque};

use super::module::{ModuleData, Weight};
use super::reps::vector_rep;
use super::rmatrix::{apply, clear_denominator, is_intertwiner, rnorm_vector, specialize_z, Block, SparseVec};
use crate::algebra::{RatFunc, SparseMatrix};
use crate::denominators::denom_d;
use crate::error::{Error, Result};

/// Largest `(2n)^k` accepted by [`Fusion::new`].
pub const MAX_FUSION_DIM: usize = 1000;

/// The fusion map `T^(k): V^{⊗(k)} → V̄^{⊗(k)}` on `k` copies of the
/// vector representation of `U_q'(D_n^{(1)})` with spectral parameters
/// `(-q)^{1-k}, (-q)^{3-k}, …, (-q)^{k-1}`.
#[derive(Clone, Debug)]
pub struct Fusion {
    pub n: usize,
    pub k: usize,
    pub source: ModuleData<RatFunc>,
    pub target: ModuleData<RatFunc>,
    pub t: SparseMatrix<RatFunc>,
    /// `d(z) R(z)` on `V ⊗ V`, specialized at `z = q^{-2}`.
    pub w: SparseMatrix<RatFunc>,
}

fn chain(factors: &[ModuleData<RatFunc>]) -> Result<ModuleData<RatFunc>> {
    let mut it = factors.iter();
    let mut acc = it.next().expect("at least one factor").clone();
    for f in it {
        acc = acc.tensor(f)?;
    }
    Ok(acc)
}

fn embed(m: &SparseMatrix<RatFunc>, left: usize, right: usize) -> SparseMatrix<RatFunc> {
    SparseMatrix::identity(left).kron(m).kron(&SparseMatrix::identity(right))
}

/// Rank of the span of the columns of all `mats`, computed one weight
/// space at a time.
fn joint_rank(mats: &[&SparseMatrix<RatFunc>], spaces: &BTreeMap<Weight, Vec<usize>>) -> usize {
    spaces
        .values()
        .map(|idx| {
            let parts: Vec<SparseMatrix<RatFunc>> = mats.iter().map(|m| m.submatrix(idx, idx).transpose()).collect();
            SparseMatrix::vstack(&parts).expect("equal widths").rank()
        })
        .sum()
}

impl Fusion {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 2 || k + 1 > n {
            return Err(Error::IndexOutOfRange(format!("fusion length {k} for D{n}, need 2 ≤ k ≤ n-1")));
        }
        let total = (2 * n).checked_pow(k as u32).unwrap_or(usize::MAX);
        if total > MAX_FUSION_DIM {
            return Err(Error::TooLarge(format!("V^{{⊗{k}}} has dimension {total} > {MAX_FUSION_DIM}")));
        }
        let v = vector_rep(n, RatFunc::q())?;
        let d = 2 * n;
        let mut exps: Vec<i64> = (0..k as i64).map(|i| 2 * i + 1 - k as i64).collect();
        let factors = |exps: &[i64]| -> Result<Vec<ModuleData<RatFunc>>> {
            exps.iter().map(|&e| v.evaluate(&RatFunc::neg_q_pow(e))).collect()
        };
        let source = chain(&factors(&exps)?)?;
        let dr = clear_denominator(&rnorm_vector(n)?, &denom_d(1, 1, n)?);
        let at = |i: usize, exps: &[i64]| -> Result<SparseMatrix<RatFunc>> {
            let r = specialize_z(&dr, &RatFunc::neg_q_pow(exps[i + 1] - exps[i]))?;
            Ok(embed(&r, d.pow(i as u32), d.pow((k - 2 - i) as u32)))
        };
        let mut t = SparseMatrix::identity(d.pow(k as u32));
        for m in 1..k {
            for i in (0..m).rev() {
                t = at(i, &exps)?.mul(&t)?;
                exps.swap(i, i + 1);
            }
        }
        let target = chain(&factors(&exps)?)?;
        let w = specialize_z(&dr, &RatFunc::q_pow(-2))?;
        Ok(Self {
            n,
            k,
            source,
            target,
            t,
            w,
        })
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn is_intertwiner(&self) -> Result<bool> {
        is_intertwiner(&self.t, &self.source, &self.target)
    }

    pub fn rank(&self) -> usize {
        joint_rank(&[&self.t], &self.source.weight_spaces())
    }

    fn w_embeddings(&self) -> Vec<SparseMatrix<RatFunc>> {
        let d = 2 * self.n;
        (0..self.k - 1)
            .map(|j| embed(&self.w, d.pow(j as u32), d.pow((self.k - 2 - j) as u32)))
            .collect()
    }

    /// Whether `Ker T^(k)` is the sum of the subspaces
    /// `V^{⊗j} ⊗ W ⊗ V^{⊗(k-2-j)}` with `W = Im R(q^{-2})`.
    pub fn kernel_matches(&self) -> Result<bool> {
        let emb = self.w_embeddings();
        for e in &emb {
            if !self.t.mul(e)?.is_zero() {
                return Ok(false);
            }
        }
        let refs: Vec<&SparseMatrix<RatFunc>> = emb.iter().collect();
        Ok(joint_rank(&refs, &self.source.weight_spaces()) == self.dim() - self.rank())
    }

    /// `cl(ϖ_k) = ε_1 + … + ε_k` in doubled coordinates.
    pub fn top_weight(&self) -> Weight {
        (0..self.n).map(|i| if i < self.k { 2 } else { 0 }).collect()
    }

    /// Dimension of the `cl(ϖ_k)` weight space of `Im T^(k)`.
    pub fn top_weight_multiplicity(&self) -> usize {
        let spaces = self.source.weight_spaces();
        spaces.get(&self.top_weight()).map_or(0, |idx| self.t.submatrix(idx, idx).rank())
    }

    /// Dimension of the submodule of `V̄^{⊗(k)}` generated by the image
    /// of the `cl(ϖ_k)` weight space.
    pub fn generated_dim(&self) -> Result<usize> {
        let spaces = self.source.weight_spaces();
        let Some(idx) = spaces.get(&self.top_weight()) else {
            return Ok(0);
        };
        let ops: Vec<SparseMatrix<RatFunc>> =
            self.target.e.iter().chain(&self.target.f).map(|x| x.transpose()).collect();
        let tt = self.t.transpose();
        let mut blocks: BTreeMap<Weight, Block<RatFunc>> = BTreeMap::new();
        let mut queue = VecDeque::new();
        let mut found = 0;
        for &c in idx {
            let col: SparseVec<RatFunc> = tt.row(c).clone();
            if col.is_empty() {
                continue;
            }
            if blocks
                .entry(self.top_weight())
                .or_insert_with(Block::new)
                .insert(col.clone(), SparseVec::new())?
            {
                found += 1;
                queue.push_back(col);
            }
        }
        while let Some(w) = queue.pop_front() {
            for op in &ops {
                let w2 = apply(op, &w);
                let Some((&c, _)) = w2.iter().next() else {
                    continue;
                };
                let block = blocks.entry(self.target.weights[c].clone()).or_insert_with(Block::new);
                if block.insert(w2.clone(), SparseVec::new())? {
                    found += 1;
                    queue.push_back(w2);
                }
            }
        }
        Ok(found)
    }
}

/// Summary of the fusion checks for one `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FusionReport {
    pub n: usize,
    pub k: usize,
    pub dim: usize,
    pub rank: usize,
    pub intertwiner: bool,
    pub kernel_matches: bool,
    pub top_weight_multiplicity: usize,
    pub generated_dim: usize,
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        self.intertwiner && self.kernel_matches && self.top_weight_multiplicity == 1 && self.generated_dim == self.rank
    }
}

pub fn fusion_report(n: usize, k: usize) -> Result<FusionReport> {
    let f = Fusion::new(n, k)?;
    Ok(FusionReport {
        n,
        k,
        dim: f.dim(),
        rank: f.rank(),
        intertwiner: f.is_intertwiner()?,
        kernel_matches: f.kernel_matches()?,
        top_weight_multiplicity: f.top_weight_multiplicity(),
        generated_dim: f.generated_dim()?,
    })
}
