//! Graphviz export for quivers.

use std::fmt::Write;

use crate::denominators::GammaJ;
use crate::quiver::DynkinQuiver;
use crate::repetition::{ARQuiver, PhiTable, RepVertex, Repetition};

fn node_id(v: RepVertex) -> String {
    format!("\"{}_{}\"", v.i, v.p)
}

fn open(name: &str) -> String {
    format!("digraph {name} {{\n")
}

/// The Dynkin quiver itself.
pub fn quiver_dot(q: &DynkinQuiver) -> String {
    let mut s = open("Q");
    for i in q.cartan_type().vertices() {
        let _ = writeln!(s, "  {i} [label=\"{i}\"];");
    }
    for (a, b) in q.arrows() {
        let _ = writeln!(s, "  {a} -> {b};");
    }
    s.push_str("}\n");
    s
}

/// The repetition quiver restricted to `p_lo ≤ p ≤ p_hi`, labelled by
/// `(i,p)` and the `φ`-image when it is defined.
pub fn window_dot(rep: &Repetition, phi: Option<&PhiTable>, window: (i64, i64)) -> String {
    let mut s = open("Qhat");
    let ty = rep.quiver().cartan_type();
    let mut verts = Vec::new();
    for p in window.0..=window.1 {
        for i in ty.vertices() {
            let v = RepVertex::new(i, p);
            if rep.check_parity(v).is_ok() {
                verts.push(v);
            }
        }
    }
    for &v in &verts {
        let label = match phi.and_then(|t| t.get(v)) {
            Some((b, m)) => format!("{v}\\n({b}, {m})"),
            None => v.to_string(),
        };
        let _ = writeln!(s, "  {} [label=\"{label}\"];", node_id(v));
    }
    for &v in &verts {
        for j in ty.neighbors(v.i) {
            let w = RepVertex::new(j, v.p + 1);
            if w.p <= window.1 {
                let _ = writeln!(s, "  {} -> {};", node_id(v), node_id(w));
            }
        }
    }
    s.push_str("}\n");
    s
}

/// `Γ_Q` with dimension-vector labels.
pub fn ar_dot(ar: &ARQuiver) -> String {
    let mut s = open("GammaQ");
    for (v, b) in &ar.dims {
        let _ = writeln!(s, "  {} [label=\"{v}\\n{b}\"];", node_id(*v));
    }
    for (a, b) in &ar.arrows {
        let _ = writeln!(s, "  {} -> {};", node_id(*a), node_id(*b));
    }
    s.push_str("}\n");
    s
}

/// `Γ^J`; an arrow of multiplicity `m` is drawn `m` times.
pub fn gamma_j_dot(g: &GammaJ) -> String {
    let mut s = open("GammaJ");
    for v in &g.vertices {
        let _ = writeln!(s, "  {} [label=\"{}\\n{}\"];", v.root, v.root, v.vertex);
    }
    for (a, b, m) in g.arrows() {
        for _ in 0..m {
            let _ = writeln!(s, "  {a} -> {b};");
        }
    }
    s.push_str("}\n");
    s
}

/// Number of nodes and edges in a DOT string produced here.
pub fn dot_counts(dot: &str) -> (usize, usize) {
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    (nodes, edges)
}
