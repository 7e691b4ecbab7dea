//! Exhaustive per-orientation checks, data-parallel when the `parallel`
//! feature is on.

use serde::Serialize;

use crate::denominators::{verify_lemma34, verify_sink_source_gap, verify_thm42};
use crate::error::Result;
use crate::quiver::DynkinQuiver;
use crate::repetition::Repetition;
use crate::roots::CartanType;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Parallel,
    Sequential,
}

/// Map over `items`, in order, on the rayon pool when available.
pub fn map_items<T, R, F>(items: &[T], mode: Mode, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match mode {
        #[cfg(feature = "parallel")]
        Mode::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub cartan_type: String,
    pub check: String,
    pub total: usize,
    /// Arrow lists (`a-b,…`) of failing orientations, with the reason.
    pub failures: Vec<String>,
}

impl ScanSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Run `check` on every orientation of `ty`.
pub fn scan_with<F>(ty: CartanType, mode: Mode, check: &str, f: F) -> ScanSummary
where
    F: Fn(&Repetition) -> std::result::Result<(), String> + Sync + Send,
{
    let quivers = DynkinQuiver::all_orientations(ty);
    let results = map_items(&quivers, mode, |q| f(&Repetition::new(q)).map_err(|e| format!("{}: {e}", q.arrow_spec())));
    ScanSummary {
        cartan_type: ty.to_string(),
        check: check.to_string(),
        total: quivers.len(),
        failures: results.into_iter().filter_map(|r| r.err()).collect(),
    }
}

fn lift(r: Result<bool>, what: &str) -> std::result::Result<(), String> {
    match r {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{what} fails")),
        Err(e) => Err(e.to_string()),
    }
}

/// `Γ^J ≅ Q^rev` and `A^J` is the Cartan matrix, for every orientation.
pub fn scan_thm42(ty: CartanType, mode: Mode) -> ScanSummary {
    scan_with(ty, mode, "thm42", |rep| lift(verify_thm42(rep), "gamma_j"))
}

/// Simple poles inside `J` together with the sink/source gap estimate.
pub fn scan_lemma34(ty: CartanType, mode: Mode) -> ScanSummary {
    scan_with(ty, mode, "lemma34", |rep| {
        lift(verify_lemma34(rep), "pole order")?;
        lift(Ok(verify_sink_source_gap(rep)), "sink/source gap")
    })
}

/// The full combinatorial report.
pub fn scan_combinatorial(ty: CartanType, mode: Mode) -> ScanSummary {
    scan_with(ty, mode, "combinatorial", |rep| {
        let r = rep.combinatorial_report();
        if r.all() {
            Ok(())
        } else {
            Err(r.failures().join(", "))
        }
    })
}
