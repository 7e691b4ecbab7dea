use std::collections::BTreeMap;

use crate::algebra::{Field, RatFunc, RatFuncZ, SparseMatrix};
use crate::error::{Error, Result};
use crate::roots::Family;

/// A classical weight in doubled `ε`-coordinates (spin weights are
/// half-integral).
pub type Weight = Vec<i64>;

/// A finite-dimensional module of the quantum affine algebra of type
/// `A_n^{(1)}` or `D_n^{(1)}`, given by matrices for `e_i`, `f_i`
/// (`i = 0..=n`) over a field containing `q`.
#[derive(Clone, Debug)]
pub struct ModuleData<F> {
    pub family: Family,
    pub n: usize,
    pub labels: Vec<String>,
    pub weights: Vec<Weight>,
    pub e: Vec<SparseMatrix<F>>,
    pub f: Vec<SparseMatrix<F>>,
    /// Index of the distinguished extremal vector.
    pub extremal: usize,
    q: F,
}

/// A spectral twist: the generic parameter `z` or the power `(-q)^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Twist {
    Symbolic,
    NegQPow(i64),
}

impl ModuleData<RatFuncZ> {
    /// Twist over `Q(q)(z)`, where `Symbolic` means `z`.
    pub fn twisted_z(&self, twist: Twist) -> Result<Self> {
        match twist {
            Twist::Symbolic => self.evaluate(&RatFuncZ::z()),
            Twist::NegQPow(t) => self.evaluate(&RatFuncZ::from_ratfunc(RatFunc::neg_q_pow(t))),
        }
    }
}

/// Doubled `ε`-coordinates of `cl(α_i)`.
pub fn alpha(family: Family, n: usize, i: usize) -> Weight {
    let len = weight_len(family, n);
    let mut w = vec![0; len];
    match (family, i) {
        (Family::D, 0) => {
            w[0] = -2;
            w[1] = -2;
        }
        (Family::D, i) if i == n => {
            w[n - 2] = 2;
            w[n - 1] = 2;
        }
        (Family::A, 0) => {
            w[0] = -2;
            w[n] = 2;
        }
        (_, i) => {
            w[i - 1] = 2;
            w[i] = -2;
        }
    }
    w
}

pub fn weight_len(family: Family, n: usize) -> usize {
    match family {
        Family::A => n + 1,
        _ => n,
    }
}

/// `⟨h_i, λ⟩` for `λ` in doubled coordinates.
pub fn pairing(family: Family, n: usize, i: usize, wt: &[i64]) -> i64 {
    let a = alpha(family, n, i);
    let s: i64 = a.iter().zip(wt).map(|(x, y)| x * y).sum();
    debug_assert_eq!(s % 4, 0, "non-integral pairing");
    s / 4
}

pub fn add_weights(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<F: Field> ModuleData<F> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        family: Family,
        n: usize,
        labels: Vec<String>,
        weights: Vec<Weight>,
        e: Vec<SparseMatrix<F>>,
        f: Vec<SparseMatrix<F>>,
        extremal: usize,
        q: F,
    ) -> Self {
        Self {
            family,
            n,
            labels,
            weights,
            e,
            f,
            extremal,
            q,
        }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn q(&self) -> &F {
        &self.q
    }

    pub fn generator_count(&self) -> usize {
        self.n + 1
    }

    pub fn pairing(&self, i: usize, b: usize) -> i64 {
        pairing(self.family, self.n, i, &self.weights[b])
    }

    /// Diagonal of `K_i`.
    pub fn k_diag(&self, i: usize) -> Vec<F> {
        (0..self.dim())
            .map(|b| self.q.pow(self.pairing(i, b)).expect("q is invertible"))
            .collect()
    }

    pub fn k_matrix(&self, i: usize, inverse: bool) -> SparseMatrix<F> {
        let mut m = SparseMatrix::zeros(self.dim(), self.dim());
        for b in 0..self.dim() {
            let e = self.pairing(i, b);
            m.set(b, b, self.q.pow(if inverse { -e } else { e }).expect("q is invertible"));
        }
        m
    }

    /// Basis indices grouped by weight.
    pub fn weight_spaces(&self) -> BTreeMap<Weight, Vec<usize>> {
        let mut out: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (b, w) in self.weights.iter().enumerate() {
            out.entry(w.clone()).or_default().push(b);
        }
        out
    }

    /// The spectral twist: `e_0 ↦ x e_0`, `f_0 ↦ x^{-1} f_0`.
    pub fn evaluate(&self, x: &F) -> Result<Self> {
        let xinv = x.inv()?;
        let mut out = self.clone();
        out.e[0] = self.e[0].scale(x);
        out.f[0] = self.f[0].scale(&xinv);
        Ok(out)
    }

    /// `self ⊗ rhs` with `Δ(e) = e ⊗ K^{-1} + 1 ⊗ e` and
    /// `Δ(f) = f ⊗ 1 + K ⊗ f`. Basis `(a, b) ↦ a · dim(rhs) + b`.
    pub fn tensor(&self, rhs: &Self) -> Result<Self> {
        if self.family != rhs.family || self.n != rhs.n {
            return Err(Error::RelationViolated("tensor factors of different types".into()));
        }
        let id_l = SparseMatrix::identity(self.dim());
        let id_r = SparseMatrix::identity(rhs.dim());
        let mut e = Vec::with_capacity(self.generator_count());
        let mut f = Vec::with_capacity(self.generator_count());
        for i in 0..self.generator_count() {
            e.push(self.e[i].kron(&rhs.k_matrix(i, true)).add(&id_l.kron(&rhs.e[i]))?);
            f.push(self.f[i].kron(&id_r).add(&self.k_matrix(i, false).kron(&rhs.f[i]))?);
        }
        let mut labels = Vec::with_capacity(self.dim() * rhs.dim());
        let mut weights = Vec::with_capacity(self.dim() * rhs.dim());
        for a in 0..self.dim() {
            for b in 0..rhs.dim() {
                labels.push(format!("{}⊗{}", self.labels[a], rhs.labels[b]));
                weights.push(add_weights(&self.weights[a], &rhs.weights[b]));
            }
        }
        Ok(Self {
            family: self.family,
            n: self.n,
            labels,
            weights,
            e,
            f,
            extremal: self.extremal * rhs.dim() + rhs.extremal,
            q: self.q.clone(),
        })
    }

    /// Change the coefficient field along a ring map sending `q` to `q'`.
    pub fn map_field<G: Field>(&self, q: G, embed: impl Fn(&F) -> G) -> ModuleData<G> {
        ModuleData {
            family: self.family,
            n: self.n,
            labels: self.labels.clone(),
            weights: self.weights.clone(),
            e: self.e.iter().map(|m| m.map(&embed)).collect(),
            f: self.f.iter().map(|m| m.map(&embed)).collect(),
            extremal: self.extremal,
            q,
        }
    }

    /// Weight compatibility and `[e_i, f_j] = δ_ij [h_i]_q`, as exact
    /// matrix identities.
    pub fn check_relations(&self) -> Result<()> {
        let g = self.generator_count();
        for i in 0..g {
            let a = alpha(self.family, self.n, i);
            for (name, m, sign) in [("e", &self.e[i], 1), ("f", &self.f[i], -1)] {
                for (r, c, _) in m.iter() {
                    let expect: Weight = self.weights[c].iter().zip(&a).map(|(w, x)| w + sign * x).collect();
                    if self.weights[r] != expect {
                        return Err(Error::RelationViolated(format!(
                            "{name}_{i} maps {} to {} against the weight grading",
                            self.labels[c], self.labels[r]
                        )));
                    }
                }
            }
        }
        let qq = self.q.clone() - &self.q.inv()?;
        for i in 0..g {
            for j in 0..g {
                let comm = self.e[i].mul(&self.f[j])?.sub(&self.f[j].mul(&self.e[i])?)?;
                let expect = if i == j {
                    let mut m = SparseMatrix::zeros(self.dim(), self.dim());
                    for b in 0..self.dim() {
                        let k = self.pairing(i, b);
                        let v = (self.q.pow(k)? - &self.q.pow(-k)?).div(&qq)?;
                        m.set(b, b, v);
                    }
                    m
                } else {
                    SparseMatrix::zeros(self.dim(), self.dim())
                };
                if comm != expect {
                    return Err(Error::RelationViolated(format!("[e_{i}, f_{j}] has the wrong value")));
                }
            }
        }
        Ok(())
    }

    /// Quantum Serre relations for the affine Cartan matrix.
    pub fn check_serre(&self) -> Result<()> {
        let g = self.generator_count();
        let two = self.q.clone() + &self.q.inv()?;
        for i in 0..g {
            for j in 0..g {
                if i == j {
                    continue;
                }
                let a = affine_cartan_entry(self.family, self.n, i, j);
                for (name, x) in [("e", &self.e), ("f", &self.f)] {
                    let (xi, xj) = (&x[i], &x[j]);
                    let rel = match a {
                        0 => xi.mul(xj)?.sub(&xj.mul(xi)?)?,
                        -1 => {
                            let xii = xi.mul(xi)?;
                            xii.mul(xj)?
                                .sub(&xi.mul(xj)?.mul(xi)?.scale(&two))?
                                .add(&xj.mul(&xii)?)?
                        }
                        _ => continue,
                    };
                    if !rel.is_zero() {
                        return Err(Error::RelationViolated(format!("Serre relation for {name}_{i}, {name}_{j}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `a_ij` of the untwisted affine Cartan matrix (simply-laced).
pub fn affine_cartan_entry(family: Family, n: usize, i: usize, j: usize) -> i64 {
    if i == j {
        return 2;
    }
    let a = alpha(family, n, i);
    let b = alpha(family, n, j);
    a.iter().zip(&b).map(|(x, y)| x * y).sum::<i64>() / 4
}
