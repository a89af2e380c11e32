//! Two worked counterexamples: phases of vectors are not determined by the
//! complex matroid, and no elimination rule can fix the phases of an eliminant.

use std::fmt::Write as _;

use crate::error::Result;
use crate::gauss::GaussRational;
use crate::linalg::{self, GaussMatrix};
use crate::matroid::Matroid;
use crate::phase::{phase_of, PhaseVector};
use crate::phirotope::Phirotope;
use crate::set::ElemSet;

pub fn w1() -> GaussMatrix {
    GaussMatrix::from_literals(&[&["1", "1+i", "1", "0"], &["1+i", "3i", "0", "1"]])
}

pub fn w2() -> GaussMatrix {
    GaussMatrix::from_literals(&[&["1", "1+i", "1", "0"], &["1+i", "4i", "0", "1"]])
}

/// The vector `(2+i, 1+4i, 1, 1)`, the sum of the two rows of `W1`.
pub fn w1_row_sum() -> Vec<GaussRational> {
    ["2+i", "1+4i", "1", "1"].iter().map(|s| s.parse().unwrap()).collect()
}

#[derive(Clone, Debug)]
pub struct NoVectorReport {
    pub first_name: &'static str,
    pub second_name: &'static str,
    pub first: GaussMatrix,
    pub second: GaussMatrix,
    pub first_rref: GaussMatrix,
    pub second_rref: GaussMatrix,
    pub target: PhaseVector,
    pub same_phirotope: bool,
    pub realizable_first: bool,
    pub realizable_second: bool,
}

/// Compares the two row spaces; `swap` puts `W2` first, `zero_target` asks for the zero vector instead.
pub fn no_vector_axioms(swap: bool, zero_target: bool) -> Result<NoVectorReport> {
    let (mut a, mut b) = (("W1", w1()), ("W2", w2()));
    if swap {
        std::mem::swap(&mut a, &mut b);
    }
    let target = if zero_target {
        PhaseVector::zero(ElemSet::full(4))
    } else {
        PhaseVector::from_dense(w1_row_sum().iter().map(phase_of).collect())
    };
    Ok(NoVectorReport {
        first_name: a.0,
        second_name: b.0,
        first_rref: linalg::rref(&a.1),
        second_rref: linalg::rref(&b.1),
        same_phirotope: Phirotope::from_matrix(&a.1)? == Phirotope::from_matrix(&b.1)?,
        realizable_first: linalg::phase_vector_realizable(&a.1, &target)?,
        realizable_second: linalg::phase_vector_realizable(&b.1, &target)?,
        first: a.1,
        second: b.1,
        target,
    })
}

fn indent(m: &GaussMatrix) -> String {
    m.to_string().lines().map(|l| format!("  {l}\n")).collect()
}

fn dense(v: &PhaseVector) -> String {
    let parts: Vec<String> = v.ground().iter().map(|e| v.get(e).to_string()).collect();
    format!("({})", parts.join(", "))
}

impl NoVectorReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let verdict = |ok: bool| if ok { "realizable" } else { "not realizable" };
        let _ = writeln!(s, "{} = row space of", self.first_name);
        s += &indent(&self.first);
        let _ = writeln!(s, "{} = row space of", self.second_name);
        s += &indent(&self.second);
        let _ = writeln!(s, "rref({}):", self.first_name);
        s += &indent(&self.first_rref);
        let _ = writeln!(s, "rref({}):", self.second_name);
        s += &indent(&self.second_rref);
        let _ = writeln!(s, "target phases: {}", dense(&self.target));
        let _ = writeln!(
            s,
            "(a) {}: phirotopes of {} and {}",
            if self.same_phirotope { "equal" } else { "different" },
            self.first_name,
            self.second_name
        );
        let _ = writeln!(s, "(b) {}: target in {}", verdict(self.realizable_first), self.first_name);
        let _ = writeln!(s, "(c) {}: target in {}", verdict(self.realizable_second), self.second_name);
        s
    }
}

/// The 4x7 matrix whose kernel contains `X = (1,1,1,1,1,0,0)` and `Y = (-1,0,0,1,1,1,1)`.
pub fn elimination_matrix() -> GaussMatrix {
    GaussMatrix::from_literals(&[
        &["1", "0", "-1", "0", "0", "i", "1-i"],
        &["2", "-1", "0", "-1", "0", "-i", "3+i"],
        &["-i", "0", "-i", "0", "2i", "-i", "-2i"],
        &["-1", "0", "0", "-i", "1+i", "0", "-2"],
    ])
}

pub fn elimination_x() -> Vec<GaussRational> {
    [1, 1, 1, 1, 1, 0, 0].iter().map(|&a| GaussRational::from_ints(a, 0)).collect()
}

pub fn elimination_y() -> Vec<GaussRational> {
    [-1, 0, 0, 1, 1, 1, 1].iter().map(|&a| GaussRational::from_ints(a, 0)).collect()
}

/// Column permutation used by the relabelling check: new column `k` is old column `PERM[k]`.
pub const PERM: [usize; 7] = [3, 6, 0, 5, 1, 4, 2];

#[derive(Clone, Debug)]
pub struct EliminationReport {
    pub permuted: bool,
    pub x_in_kernel: bool,
    pub y_in_kernel: bool,
    /// Circuits avoiding the first element, in original labels, with kernel
    /// vectors scaled so the first nonzero coefficient is `1`.
    pub circuits: Vec<(ElemSet, Vec<GaussRational>)>,
}

/// Lists every circuit of the column matroid avoiding element 1. With `permute`
/// the computation runs on a column-permuted copy and is translated back.
pub fn elimination(permute: bool) -> Result<EliminationReport> {
    let base = elimination_matrix();
    let perm: Vec<usize> = if permute { PERM.to_vec() } else { (0..7).collect() };
    let m = base.select_columns(&perm);
    let permute_vec = |v: &[GaussRational]| perm.iter().map(|&o| v[o].clone()).collect::<Vec<_>>();
    let x_in_kernel = linalg::is_in_kernel(&m, &permute_vec(&elimination_x()));
    let y_in_kernel = linalg::is_in_kernel(&m, &permute_vec(&elimination_y()));
    let matroid = Matroid::from_matrix(&m)?;
    let first = perm.iter().position(|&o| o == 0).expect("permutation");
    let mut circuits = Vec::new();
    for &c in matroid.circuits() {
        if c.contains(first) {
            continue;
        }
        let v = linalg::circuit_vector(&m, c)?;
        let mut orig = vec![GaussRational::zero(); 7];
        for (k, &o) in perm.iter().enumerate() {
            orig[o] = v[k].clone();
        }
        let lead = orig.iter().find(|z| !z.is_zero()).expect("nonzero").clone();
        let orig: Vec<GaussRational> = orig.iter().map(|z| z / &lead).collect();
        let support = ElemSet::from_elems(c.iter().map(|k| perm[k]));
        circuits.push((support, orig));
    }
    circuits.sort_by(|a, b| a.0.lex_cmp(b.0));
    Ok(EliminationReport {
        permuted: permute,
        x_in_kernel,
        y_in_kernel,
        circuits,
    })
}

impl EliminationReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        if self.permuted {
            let labels: Vec<String> = PERM.iter().map(|o| (o + 1).to_string()).collect();
            let _ = writeln!(s, "columns permuted as ({}), results relabelled", labels.join(" "));
        }
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "X = (1,1,1,1,1,0,0) in kernel: {}", yes(self.x_in_kernel));
        let _ = writeln!(s, "Y = (-1,0,0,1,1,1,1) in kernel: {}", yes(self.y_in_kernel));
        let _ = writeln!(s, "circuits with support in {{2,..,7}}: {}", self.circuits.len());
        for (support, v) in &self.circuits {
            let coeffs: Vec<String> = v.iter().map(|z| z.to_string()).collect();
            let phases: Vec<String> = v.iter().map(|z| phase_of(z).to_string()).collect();
            let _ = writeln!(s, "{support}: ({})", coeffs.join(", "));
            let _ = writeln!(s, "  phases: ({})", phases.join(", "));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_vector_verdicts() {
        let r = no_vector_axioms(false, false).unwrap();
        assert!(r.same_phirotope && r.realizable_first && !r.realizable_second);
        let swapped = no_vector_axioms(true, false).unwrap();
        assert!(swapped.same_phirotope && !swapped.realizable_first && swapped.realizable_second);
        let zero = no_vector_axioms(false, true).unwrap();
        assert!(zero.realizable_first && zero.realizable_second);
    }

    #[test]
    fn elimination_counts_six_circuits() {
        let r = elimination(false).unwrap();
        assert!(r.x_in_kernel && r.y_in_kernel);
        assert_eq!(r.circuits.len(), 6);
        let p = elimination(true).unwrap();
        assert_eq!(p.circuits, r.circuits);
    }
}
