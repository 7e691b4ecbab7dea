//! Formal products of infinite `q`-Pochhammer symbols
//! `[m] = ((-q)^m z; q^{4n-4})_∞`, up to units of `k[z, z^{-1}]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::denominators::denom_d;
use crate::error::{Error, Result};
use crate::roots::star_d;

/// `∏ [m]^{e_m}` for a fixed rank `n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct PochExpr {
    pub n: usize,
    pub factors: BTreeMap<i64, i64>,
}

impl PochExpr {
    pub fn one(n: usize) -> Self {
        Self {
            n,
            factors: BTreeMap::new(),
        }
    }

    /// The single symbol `[m]`.
    pub fn sym(n: usize, m: i64) -> Self {
        Self::from_pairs(n, [(m, 1)])
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut out = Self::one(n);
        for (m, e) in pairs {
            out.bump(m, e);
        }
        out
    }

    /// `num / den` as lists of symbol indices (repeats allowed).
    pub fn ratio(n: usize, num: &[i64], den: &[i64]) -> Self {
        Self::from_pairs(n, num.iter().map(|&m| (m, 1)).chain(den.iter().map(|&m| (m, -1))))
    }

    fn bump(&mut self, m: i64, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.factors.entry(m).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&m);
        }
    }

    /// Period `4n - 4` of the pairing rule.
    pub fn period(&self) -> i64 {
        4 * self.n as i64 - 4
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "rank parameters differ");
        let mut out = self.clone();
        for (&m, &e) in &rhs.factors {
            out.bump(m, e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self {
            n: self.n,
            factors: self.factors.iter().map(|(&m, &e)| (m, -e)).collect(),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    /// Substitute `z -> (-q)^t z`, i.e. `[m] -> [m + t]`.
    pub fn scale_z(&self, t: i64) -> Self {
        Self {
            n: self.n,
            factors: self.factors.iter().map(|(&m, &e)| (m + t, e)).collect(),
        }
    }

    /// Rewrite as linear factors `z - (-q)^t` times a residual, using
    /// `[m] = (1 - (-q)^m z) [m + 4n - 4]` within each residue class.
    ///
    /// Every symbol of a class is pushed up to the largest index of that
    /// class; the residual keeps that top symbol with the class total.
    pub fn reduce(&self) -> LinearFactorForm {
        let period = self.period();
        let mut classes: BTreeMap<i64, Vec<(i64, i64)>> = BTreeMap::new();
        for (&m, &e) in &self.factors {
            classes.entry(m.rem_euclid(period)).or_default().push((m, e));
        }
        let mut factors: BTreeMap<i64, i64> = BTreeMap::new();
        let mut residual = PochExpr::one(self.n);
        for members in classes.values() {
            let top = members.iter().map(|(m, _)| *m).max().expect("nonempty class");
            let mut total = 0;
            for &(m, e) in members {
                total += e;
                let mut x = m;
                while x < top {
                    let slot = factors.entry(-x).or_insert(0);
                    *slot += e;
                    x += period;
                }
            }
            residual.bump(top, total);
        }
        factors.retain(|_, e| *e != 0);
        LinearFactorForm { factors, residual }
    }

    /// Equality up to a unit `c z^k`.
    pub fn equiv(&self, rhs: &Self) -> bool {
        self.div(rhs).reduce().is_unit()
    }

    fn check_bounds(&self) -> Result<()> {
        let bound = 8 * self.n as i64;
        match self.factors.keys().find(|m| m.abs() > bound) {
            Some(m) => Err(Error::TooLarge(format!("symbol index {m} exceeds 8n = {bound}"))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for PochExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |sign: i64| -> String {
            self.factors
                .iter()
                .filter(|(_, e)| e.signum() == sign)
                .map(|(m, e)| {
                    if e.abs() == 1 {
                        format!("[{m}]")
                    } else {
                        format!("[{m}]^{}", e.abs())
                    }
                })
                .collect()
        };
        let num = part(1);
        let den = part(-1);
        let num = if num.is_empty() { "1".to_string() } else { num };
        if den.is_empty() {
            write!(f, "{num}")
        } else {
            write!(f, "{num}/({den})")
        }
    }
}

/// `∏ (z - (-q)^t)^{e_t}` times an irreducible residual of symbols.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LinearFactorForm {
    pub factors: BTreeMap<i64, i64>,
    pub residual: PochExpr,
}

impl LinearFactorForm {
    pub fn is_unit(&self) -> bool {
        self.factors.is_empty() && self.residual.is_one()
    }

    /// Factor form of a rational function given by numerator and
    /// denominator root exponents.
    pub fn from_roots(n: usize, num: &[i64], den: &[i64]) -> Self {
        let mut factors = BTreeMap::new();
        for &t in num {
            *factors.entry(t).or_insert(0) += 1;
        }
        for &t in den {
            *factors.entry(t).or_insert(0) -= 1;
        }
        factors.retain(|_, e: &mut i64| *e != 0);
        Self {
            factors,
            residual: PochExpr::one(n),
        }
    }
}

fn is_spin(n: usize, k: usize) -> bool {
    k + 1 == n || k == n
}

/// Closed forms of the universal R-matrix scalars `a_{k,l}(z)`.
pub fn a_closed(k: usize, l: usize, n: usize) -> Result<PochExpr> {
    if n < 4 || k == 0 || l == 0 || k > n || l > n {
        return Err(Error::IndexOutOfRange(format!("a_({k},{l}) for n = {n}")));
    }
    let ni = n as i64;
    let e = match (is_spin(n, k), is_spin(n, l)) {
        (true, true) => {
            return Err(Error::IndexOutOfRange(format!(
                "no closed form for the spin pair ({k},{l})"
            )))
        }
        (true, false) | (false, true) => {
            let kk = if is_spin(n, k) { l } else { k } as i64;
            PochExpr::ratio(n, &[ni - kk - 1, 3 * ni + kk - 3], &[ni + kk - 1, 3 * ni - kk - 3])
        }
        (false, false) => {
            let (ki, li) = (k as i64, l as i64);
            let d = (ki - li).abs();
            PochExpr::ratio(
                n,
                &[d, 2 * ni + ki + li - 2, 2 * ni - ki - li - 2, 4 * ni - d - 4],
                &[ki + li, 2 * ni + ki - li - 2, 2 * ni - ki + li - 2, 4 * ni - ki - li - 4],
            )
        }
    };
    e.check_bounds()?;
    Ok(e)
}

/// `a_{k,l}(z)` built only from the two base cases and the recursions.
pub fn a_recursive(k: usize, l: usize, n: usize) -> Result<PochExpr> {
    if n < 4 || k == 0 || l == 0 || k > n || l > n {
        return Err(Error::IndexOutOfRange(format!("a_({k},{l}) for n = {n}")));
    }
    let ni = n as i64;
    let a11 = PochExpr::ratio(n, &[0, 2 * ni, 2 * ni - 4, 4 * ni - 4], &[2, 2 * ni - 2, 2 * ni - 2, 4 * ni - 6]);
    let an1 = PochExpr::ratio(n, &[ni - 2, 3 * ni - 2], &[ni, 3 * ni - 4]);
    match (is_spin(n, k), is_spin(n, l)) {
        (true, true) => Err(Error::IndexOutOfRange(format!(
            "no recursion for the spin pair ({k},{l})"
        ))),
        (true, false) | (false, true) => {
            let kk = if is_spin(n, k) { l } else { k };
            let mut acc = an1.clone();
            for j in 2..=kk as i64 {
                acc = acc.scale_z(-1).mul(&an1.scale_z(j - 1));
            }
            Ok(acc)
        }
        (false, false) => {
            let a1 = |k: usize| {
                let mut acc = a11.clone();
                for j in 2..=k as i64 {
                    let corr = PochExpr::ratio(n, &[j - 1, 4 * ni + j - 7], &[j - 3, 4 * ni + j - 5]);
                    acc = acc.scale_z(-1).mul(&a11.scale_z(j - 1)).mul(&corr);
                }
                acc
            };
            let (big, small) = if k >= l { (k, l) } else { (l, k) };
            let ak1 = a1(big);
            let mut acc = ak1.clone();
            for j in 2..=small as i64 {
                acc = acc.scale_z(-1).mul(&ak1.scale_z(j - 1));
            }
            Ok(acc)
        }
    }
}

/// Whether `a_{k,l}(z) a_{k*,l}(q^{-2n+2} z)` reduces to
/// `d_{k,l}(z) / d_{k*,l}(q^{2n-2} z^{-1})` up to units.
pub fn check_ad_identity(k: usize, l: usize, n: usize) -> Result<bool> {
    let ks = star_d(n, k);
    let shift = -(2 * n as i64 - 2);
    let lhs = a_closed(k, l, n)?.mul(&a_closed(ks, l, n)?.scale_z(shift));
    let d = denom_d(k, l, n)?;
    let dstar = denom_d(ks, l, n)?;
    let den: Vec<i64> = dstar.exponents.iter().map(|s| 2 * n as i64 - 2 - s).collect();
    Ok(lhs.reduce() == LinearFactorForm::from_roots(n, &d.exponents, &den))
}

/// Summary of the Pochhammer verification at one rank.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PochReport {
    pub n: usize,
    pub recursive_pairs: usize,
    pub recursive_failures: Vec<(usize, usize)>,
    pub ad_pairs: usize,
    pub ad_failures: Vec<(usize, usize)>,
}

impl PochReport {
    pub fn passed(&self) -> bool {
        self.recursive_failures.is_empty() && self.ad_failures.is_empty()
    }
}

/// Closed form against recursion, and the functional identity, for every
/// pair that is not two spin nodes.
pub fn verify_rank(n: usize) -> Result<PochReport> {
    let mut rep = PochReport {
        n,
        ..Default::default()
    };
    for k in 1..=n {
        for l in 1..=n {
            if is_spin(n, k) && is_spin(n, l) {
                continue;
            }
            rep.recursive_pairs += 1;
            if !a_recursive(k, l, n)?.equiv(&a_closed(k, l, n)?) {
                rep.recursive_failures.push((k, l));
            }
            rep.ad_pairs += 1;
            if !check_ad_identity(k, l, n)? {
                rep.ad_failures.push((k, l));
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scale_shifts_indices() {
        let e = PochExpr::sym(4, 0);
        assert_eq!(e.scale_z(0), e);
        assert_eq!(e.scale_z(2), PochExpr::sym(4, 2));
    }

    #[test]
    fn pairing_rule() {
        let n = 4;
        let l = 4 * n as i64 - 4;
        let f = PochExpr::ratio(n, &[0], &[l]).reduce();
        assert_eq!(f, LinearFactorForm::from_roots(n, &[0], &[]));
        let f = PochExpr::ratio(n, &[-2], &[l - 2]).reduce();
        assert_eq!(f, LinearFactorForm::from_roots(n, &[2], &[]));
    }

    #[test]
    fn residual_survives_unbalanced_class() {
        let f = PochExpr::sym(5, 3).reduce();
        assert!(f.factors.is_empty());
        assert_eq!(f.residual, PochExpr::sym(5, 3));
        assert!(!f.is_unit());
    }

    #[test]
    fn a11_closed_at_n4() {
        assert_eq!(
            a_closed(1, 1, 4).unwrap(),
            PochExpr::ratio(4, &[0, 8, 4, 12], &[2, 6, 6, 10])
        );
        assert_eq!(a_closed(1, 4, 4).unwrap(), PochExpr::ratio(4, &[2, 10], &[4, 8]));
    }

    #[test]
    fn recursion_base_cases() {
        for n in 4..=6 {
            assert_eq!(a_recursive(1, 1, n).unwrap(), a_closed(1, 1, n).unwrap());
            assert_eq!(a_recursive(n, 1, n).unwrap(), a_closed(n, 1, n).unwrap());
        }
    }

    #[test]
    fn an2_recursion() {
        let n = 6;
        let an1 = a_closed(n, 1, n).unwrap();
        let expect = an1.scale_z(-1).mul(&an1.scale_z(1));
        assert_eq!(a_recursive(n, 2, n).unwrap(), expect);
    }

    #[test]
    fn spin_pair_is_out_of_range() {
        assert!(a_closed(4, 4, 4).is_err());
        assert!(a_closed(3, 4, 4).is_err());
    }

    #[test]
    fn self_equivalence() {
        let e = a_closed(2, 3, 7).unwrap();
        assert!(e.equiv(&e));
    }
}
