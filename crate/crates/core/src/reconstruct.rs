//! Rebuilding a phirotope from its phased circuits by labelling the basis graph.
//!
//! For adjacent bases `B1`, `B2` with `B1 ∪ B2 = {x_0 < .. < x_d}`,
//! `B1 \ B2 = {x_i}` and `B2 \ B1 = {x_j}`, Cramer's rule on the circuit `X`
//! inside `B1 ∪ B2` gives `φ(B2) / φ(B1) = (-1)^(i+j) X(x_i) / X(x_j)`.
//! Propagating these quotients from one basis determines `φ` up to a unit.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::matroid::{BasisGraph, Matroid};
use crate::phase::Phase;
use crate::phirotope::{GpWitness, Phirotope};
use crate::signature::{
    circuits_from_phirotope, cocircuit_signature_from_circuits, cocircuits_from_phirotope, min_support_orthogonal,
    verify_circuit_axioms, verify_dual_pair, CircuitAxiomFailure, DualPairFailure, PhasedSignature,
};

/// Basis graph with the quotient `γ(B1, B2) = φ(B2)/φ(B1)` on every edge.
#[derive(Clone, Debug)]
pub struct EdgeLabeling {
    pub graph: BasisGraph,
    /// Label of each edge `(i, j)` read in the direction `i -> j`.
    labels: Vec<Phase>,
}

impl EdgeLabeling {
    pub fn new(m: &Matroid, c: &PhasedSignature) -> Result<Self> {
        let graph = m.basis_graph();
        let mut labels = Vec::with_capacity(graph.edges.len());
        for (k, &(i, j)) in graph.edges.iter().enumerate() {
            let (b1, b2) = (graph.vertices[i], graph.vertices[j]);
            let support = graph.edge_circuit[k];
            let x = c.member_on(support).ok_or(Error::MissingMember(support))?;
            labels.push(edge_label(b1, b2, |e| x.get(e))?);
        }
        Ok(EdgeLabeling { graph, labels })
    }

    /// `γ(from, to)` for adjacent vertex indices.
    pub fn gamma(&self, from: usize, to: usize) -> Option<Phase> {
        self.graph.adjacency[from]
            .iter()
            .find(|&&(w, _)| w == to)
            .map(|&(_, k)| {
                if self.graph.edges[k].0 == from {
                    self.labels[k].clone()
                } else {
                    self.labels[k].conj()
                }
            })
    }
}

/// `(-1)^(i+j) X(x_i) / X(x_j)` for the circuit phases `x` on `B1 ∪ B2`.
pub fn edge_label(
    b1: crate::set::ElemSet,
    b2: crate::set::ElemSet,
    x: impl Fn(usize) -> Phase,
) -> Result<Phase> {
    let union = b1.union(b2);
    let xi = b1.difference(b2).min().ok_or_else(|| Error::Internal("equal bases".into()))?;
    let xj = b2.difference(b1).min().ok_or_else(|| Error::Internal("equal bases".into()))?;
    let (i, j) = (union.rank_of(xi), union.rank_of(xj));
    Ok(x(xi).div(&x(xj))?.signed((i + j) % 2 == 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Traversal {
    BreadthFirst,
    DepthFirst,
}

/// Reconstruction from the lexicographically smallest basis along a breadth-first tree.
pub fn reconstruct_phirotope(m: &Matroid, c: &PhasedSignature) -> Result<Phirotope> {
    reconstruct_with(m, c, 0, Traversal::BreadthFirst)
}

/// Fixes `φ(B) = 1` at the basis with index `root`, propagates labels along a
/// spanning tree and then checks every remaining edge. An inconsistent edge
/// yields the closed walk through it.
pub fn reconstruct_with(m: &Matroid, c: &PhasedSignature, root: usize, order: Traversal) -> Result<Phirotope> {
    let lab = EdgeLabeling::new(m, c)?;
    let g = &lab.graph;
    let n = g.vertices.len();
    if root >= n {
        return Err(Error::Internal(format!("basepoint {root} out of range")));
    }
    let mut value: Vec<Option<Phase>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut tree_edge = vec![false; g.edges.len()];
    value[root] = Some(Phase::one());
    let mut frontier = VecDeque::from([root]);
    while let Some(v) = match order {
        Traversal::BreadthFirst => frontier.pop_front(),
        Traversal::DepthFirst => frontier.pop_back(),
    } {
        for &(w, k) in &g.adjacency[v] {
            if value[w].is_none() {
                let here = value[v].clone().expect("visited");
                value[w] = Some(&here * &lab.gamma(v, w).expect("adjacent"));
                parent[w] = Some(v);
                tree_edge[k] = true;
                frontier.push_back(w);
            }
        }
    }
    if value.iter().any(Option::is_none) {
        return Err(Error::Internal("basis graph is disconnected".into()));
    }
    let value: Vec<Phase> = value.into_iter().map(Option::unwrap).collect();
    for (k, &(i, j)) in g.edges.iter().enumerate() {
        if tree_edge[k] {
            continue;
        }
        if value[j] != &value[i] * &lab.gamma(i, j).expect("adjacent") {
            return Err(Error::CycleInconsistency(cycle_through(g, &parent, i, j)));
        }
    }
    Phirotope::new(m.ground(), m.rank(), g.vertices.iter().copied().zip(value))
}

/// Tree path `root -> i`, the edge `i -> j`, then the tree path `j -> root`.
fn cycle_through(g: &BasisGraph, parent: &[Option<usize>], i: usize, j: usize) -> Vec<crate::set::ElemSet> {
    let path = |mut v: usize| {
        let mut p = vec![v];
        while let Some(u) = parent[v] {
            p.push(u);
            v = u;
        }
        p
    };
    let mut up = path(i);
    up.reverse();
    let down = path(j);
    up.into_iter().chain(down).map(|v| g.vertices[v]).collect()
}

/// Outcome of a full round trip through every construction.
#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub circuits: PhasedSignature,
    pub cocircuits: PhasedSignature,
    pub reconstructed: Phirotope,
    /// `c` with `reconstructed = c · φ`.
    pub unit: Phase,
}

#[derive(Clone, Debug)]
pub enum RoundtripFailure {
    Gp(GpWitness),
    CircuitAxioms(CircuitAxiomFailure),
    DualPair(DualPairFailure),
    /// The cocircuit constructions disagree; names the pair that differs.
    CocircuitMismatch(&'static str),
    Reconstruction(Error),
    /// Reconstruction does not reproduce the circuits or is not a unit multiple of the input.
    NotReproduced(&'static str),
}

impl fmt::Display for RoundtripFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoundtripFailure::Gp(w) => write!(f, "Grassmann-Plücker relation fails: {w}"),
            RoundtripFailure::CircuitAxioms(w) => write!(f, "circuit axioms fail: {w}"),
            RoundtripFailure::DualPair(w) => write!(f, "dual pair fails: {w}"),
            RoundtripFailure::CocircuitMismatch(which) => write!(f, "cocircuit constructions disagree: {which}"),
            RoundtripFailure::Reconstruction(e) => write!(f, "reconstruction failed: {e}"),
            RoundtripFailure::NotReproduced(what) => write!(f, "round trip does not close: {what}"),
        }
    }
}

impl fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "circuits: {}", self.circuits.len())?;
        writeln!(f, "cocircuits: {}", self.cocircuits.len())?;
        writeln!(f, "dual pair: ok")?;
        write!(f, "reconstruction: ok, unit c={}", self.unit)
    }
}

/// Circuits, cocircuits (three ways), dual-pair check, reconstruction and comparison.
pub fn roundtrip_report(phi: &Phirotope) -> std::result::Result<RoundtripReport, RoundtripFailure> {
    phi.check_gp().map_err(RoundtripFailure::Gp)?;
    let m = phi.underlying_matroid();
    let c = circuits_from_phirotope(phi);
    verify_circuit_axioms(m, &c).map_err(RoundtripFailure::CircuitAxioms)?;
    let d = cocircuits_from_phirotope(phi);
    let d2 = cocircuit_signature_from_circuits(m, &c).map_err(RoundtripFailure::Reconstruction)?;
    if d2 != d {
        return Err(RoundtripFailure::CocircuitMismatch("dual phirotope vs circuit ratios"));
    }
    let d3 = min_support_orthogonal(&c).map_err(RoundtripFailure::Reconstruction)?;
    if d3 != d {
        return Err(RoundtripFailure::CocircuitMismatch("dual phirotope vs minimal orthogonal supports"));
    }
    verify_dual_pair(m, &c, &d).map_err(RoundtripFailure::DualPair)?;
    let rec = reconstruct_phirotope(m, &c).map_err(RoundtripFailure::Reconstruction)?;
    if circuits_from_phirotope(&rec) != c {
        return Err(RoundtripFailure::NotReproduced("circuits of the reconstruction differ"));
    }
    let unit = rec
        .unit_ratio(phi)
        .ok_or(RoundtripFailure::NotReproduced("reconstruction is not a unit multiple"))?;
    Ok(RoundtripReport {
        circuits: c,
        cocircuits: d,
        reconstructed: rec,
        unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::GaussMatrix;
    use crate::set::ElemSet;
    use crate::signature::SignatureKind;

    fn phi(rows: &[&[&str]]) -> Phirotope {
        Phirotope::from_matrix(&GaussMatrix::from_literals(rows)).unwrap()
    }

    #[test]
    fn phi3_round_trip() {
        let p = phi(&[&["1", "0", "1"], &["0", "1", "1"]]);
        let c = circuits_from_phirotope(&p);
        let rec = reconstruct_phirotope(p.underlying_matroid(), &c).unwrap();
        assert_eq!(rec, p);
    }

    #[test]
    fn free_matroid_has_a_single_value() {
        let m = Matroid::free(ElemSet::full(3)).unwrap();
        let c = PhasedSignature::empty(m.ground(), SignatureKind::Circuits);
        let rec = reconstruct_phirotope(&m, &c).unwrap();
        assert_eq!(rec.value(ElemSet::full(3)), Phase::one());
    }

    #[test]
    fn w1_round_trip_and_basepoints() {
        let p = phi(&[&["1", "1+i", "1", "0"], &["1+i", "3i", "0", "1"]]);
        let report = roundtrip_report(&p).unwrap();
        assert_eq!(report.reconstructed.scaled(&report.unit.conj()), p);
        let c = circuits_from_phirotope(&p);
        let m = p.underlying_matroid();
        for root in 0..m.bases().len() {
            let r = reconstruct_with(m, &c, root, Traversal::DepthFirst).unwrap();
            assert!(r.unit_ratio(&p).is_some());
        }
    }

    #[test]
    fn corrupted_signature_gives_a_cycle() {
        let p = phi(&[&["1", "1+i", "1", "0"], &["1+i", "3i", "0", "1"]]);
        let c = circuits_from_phirotope(&p);
        let x = c.members()[0].clone();
        let mut bad = x.clone();
        let g = x.support().iter().last().unwrap();
        bad.set(g, &x.get(g) * &Phase::i());
        let c_bad = c.replace(x.support(), bad).unwrap();
        match reconstruct_phirotope(p.underlying_matroid(), &c_bad) {
            Err(Error::CycleInconsistency(cycle)) => {
                assert!(cycle.len() >= 3);
                assert_eq!(cycle.first(), cycle.last());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corrupted_phirotope_reports_gp_witness() {
        let ground = ElemSet::full(4);
        let values = ground.subsets_of_size(2).map(|b| {
            let v = if b == ElemSet::from_elems([2, 3]) { Phase::i() } else { Phase::one() };
            (b, v)
        });
        let bad = Phirotope::new(ground, 2, values.collect::<Vec<_>>()).unwrap();
        assert!(matches!(roundtrip_report(&bad), Err(RoundtripFailure::Gp(_))));
    }
}
