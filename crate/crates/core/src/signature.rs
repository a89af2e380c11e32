//! Phased circuit and cocircuit signatures.
//!
//! A signature stores one canonical representative per `S^1` orbit: the member
//! whose smallest support element carries phase `1`.

use std::collections::VecDeque;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::phase::{orthogonal, pconv_contains, Phase, PhaseVector};
use crate::phirotope::{dual_phirotope, Phirotope, Verdict};
use crate::set::ElemSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SignatureKind {
    Circuits,
    Cocircuits,
}

impl SignatureKind {
    pub fn flip(self) -> Self {
        match self {
            SignatureKind::Circuits => SignatureKind::Cocircuits,
            SignatureKind::Cocircuits => SignatureKind::Circuits,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignatureKind::Circuits => "circuits",
            SignatureKind::Cocircuits => "cocircuits",
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct PhasedSignature {
    ground: ElemSet,
    kind: SignatureKind,
    /// Canonical members sorted by support in lexicographic order.
    members: Vec<PhaseVector>,
}

impl PhasedSignature {
    /// Canonicalizes the members; rejects zero vectors and distinct orbits sharing a support.
    pub fn new<I: IntoIterator<Item = PhaseVector>>(ground: ElemSet, kind: SignatureKind, members: I) -> Result<Self> {
        let mut out: Vec<PhaseVector> = Vec::new();
        for m in members {
            if m.ground() != ground {
                return Err(Error::OutsideGround {
                    set: m.ground(),
                    ground,
                });
            }
            if m.is_zero() {
                return Err(Error::ZeroVector);
            }
            let c = m.canonical();
            match out.iter().find(|o| o.support() == c.support()) {
                Some(o) if *o == c => {}
                Some(_) => return Err(Error::SupportConflict(c.support())),
                None => out.push(c),
            }
        }
        out.sort_by(|a, b| a.support().lex_cmp(b.support()));
        Ok(PhasedSignature {
            ground,
            kind,
            members: out,
        })
    }

    pub fn empty(ground: ElemSet, kind: SignatureKind) -> Self {
        PhasedSignature {
            ground,
            kind,
            members: Vec::new(),
        }
    }

    pub fn ground(&self) -> ElemSet {
        self.ground
    }

    pub fn kind(&self) -> SignatureKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: SignatureKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn members(&self) -> &[PhaseVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn supports(&self) -> Vec<ElemSet> {
        self.members.iter().map(PhaseVector::support).collect()
    }

    pub fn member_on(&self, support: ElemSet) -> Option<&PhaseVector> {
        self.members.iter().find(|m| m.support() == support)
    }

    /// Replaces the member on `support` by `v` (canonicalized); used to build corrupted inputs.
    pub fn replace(&self, support: ElemSet, v: PhaseVector) -> Result<Self> {
        let members = self
            .members
            .iter()
            .filter(|m| m.support() != support)
            .cloned()
            .chain(std::iter::once(v));
        PhasedSignature::new(self.ground, self.kind, members)
    }

    pub fn without_member(&self, support: ElemSet) -> Self {
        PhasedSignature {
            ground: self.ground,
            kind: self.kind,
            members: self.members.iter().filter(|m| m.support() != support).cloned().collect(),
        }
    }
}

impl fmt::Display for PhasedSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::write_signature(self))
    }
}

impl fmt::Debug for PhasedSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?}", self.kind.name(), self.members)
    }
}

/// Lexicographically first `A` outside `c` completing `c \ min(c)` to a basis.
fn completion(m: &Matroid, c: ElemSet) -> ElemSet {
    let base = c.without(c.min().expect("nonempty circuit"));
    m.ground()
        .difference(c)
        .subsets_of_size(m.rank() - base.len())
        .find(|a| m.is_basis(base.union(*a)))
        .expect("independent sets extend to bases")
}

/// The phased circuit on `c` read off `φ` with completion `a`:
/// `X(x_i) = (-1)^i φ(c \ x_i, a)` for `c = {x_0 < .. < x_k}`.
pub fn circuit_member(phi: &Phirotope, c: ElemSet, a: ElemSet) -> PhaseVector {
    let tail = a.to_vec();
    let entries = c.iter().enumerate().map(|(i, x)| {
        let mut t: Vec<usize> = c.iter().filter(|&y| y != x).collect();
        t.extend(&tail);
        (x, phi.eval(&t).signed(i % 2 == 1))
    });
    PhaseVector::new(phi.ground(), entries).expect("circuit inside the ground set")
}

/// One canonical member per circuit of the underlying matroid, by the pivot rule.
pub fn circuits_from_phirotope(phi: &Phirotope) -> PhasedSignature {
    let m = phi.underlying_matroid();
    let members = m
        .circuits()
        .iter()
        .map(|&c| circuit_member(phi, c, completion(m, c)));
    PhasedSignature::new(phi.ground(), SignatureKind::Circuits, members.collect::<Vec<_>>())
        .expect("circuits have distinct supports")
}

/// The phased circuits of the dual phirotope.
pub fn cocircuits_from_phirotope(phi: &Phirotope) -> PhasedSignature {
    circuits_from_phirotope(&dual_phirotope(phi)).with_kind(SignatureKind::Cocircuits)
}

/// First non-orthogonal pair `(X, Y)` with `X ∈ C`, `Y ∈ D`.
pub fn check_orthogonality(c: &PhasedSignature, d: &PhasedSignature) -> Verdict<(PhaseVector, PhaseVector)> {
    for x in &c.members {
        for y in &d.members {
            if !orthogonal(x, y) {
                return Err((x.clone(), y.clone()));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DualPairFailure {
    /// Supports differ from the expected family: `(missing, unexpected)`.
    CircuitSupports(Vec<ElemSet>, Vec<ElemSet>),
    CocircuitSupports(Vec<ElemSet>, Vec<ElemSet>),
    NotOrthogonal(PhaseVector, PhaseVector),
}

impl fmt::Display for DualPairFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[ElemSet]| v.iter().join(" ");
        match self {
            DualPairFailure::CircuitSupports(missing, extra) => write!(
                f,
                "circuit supports differ from the matroid: missing [{}] unexpected [{}]",
                list(missing),
                list(extra)
            ),
            DualPairFailure::CocircuitSupports(missing, extra) => write!(
                f,
                "cocircuit supports differ from the matroid: missing [{}] unexpected [{}]",
                list(missing),
                list(extra)
            ),
            DualPairFailure::NotOrthogonal(x, y) => {
                write!(f, "not orthogonal: X = {x} and Y = {y}")
            }
        }
    }
}

fn support_diff(actual: &[ElemSet], expected: &[ElemSet]) -> Option<(Vec<ElemSet>, Vec<ElemSet>)> {
    let missing: Vec<_> = expected.iter().filter(|s| !actual.contains(s)).copied().collect();
    let extra: Vec<_> = actual.iter().filter(|s| !expected.contains(s)).copied().collect();
    (!missing.is_empty() || !extra.is_empty()).then_some((missing, extra))
}

/// Checks that `C` and `D` have the circuits and cocircuits of `M` as supports and are orthogonal.
pub fn verify_dual_pair(m: &Matroid, c: &PhasedSignature, d: &PhasedSignature) -> Verdict<DualPairFailure> {
    if let Some((a, b)) = support_diff(&c.supports(), m.circuits()) {
        return Err(DualPairFailure::CircuitSupports(a, b));
    }
    if let Some((a, b)) = support_diff(&d.supports(), &m.cocircuits()) {
        return Err(DualPairFailure::CocircuitSupports(a, b));
    }
    check_orthogonality(c, d).map_err(|(x, y)| DualPairFailure::NotOrthogonal(x, y))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitAxiomFailure {
    Supports(Vec<ElemSet>, Vec<ElemSet>),
    /// No member is supported inside `(supp X ∪ supp Y) \ e` for a modular pair.
    NoEliminant { x: PhaseVector, y: PhaseVector, e: usize },
    /// The eliminant `Z` (rescaled) has the wrong phase at `g`.
    ModularElimination {
        x: PhaseVector,
        y: PhaseVector,
        e: usize,
        z: PhaseVector,
        g: usize,
    },
    /// No member `Z` with `f ∈ supp Z ⊆ (supp X ∪ supp Y) \ e`.
    StrongElimination {
        x: PhaseVector,
        y: PhaseVector,
        e: usize,
        f: usize,
    },
}

impl fmt::Display for CircuitAxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitAxiomFailure::Supports(missing, extra) => write!(
                f,
                "supports differ from the circuits of the matroid: missing [{}] unexpected [{}]",
                missing.iter().join(" "),
                extra.iter().join(" ")
            ),
            CircuitAxiomFailure::NoEliminant { x, y, e } => {
                write!(f, "(ME) no eliminant of {} between X = {x} and Y = {y}", e + 1)
            }
            CircuitAxiomFailure::ModularElimination { x, y, e, z, g } => write!(
                f,
                "(ME) eliminating {} between X = {x} and Y = {y}: Z = {z} fails at {}",
                e + 1,
                g + 1
            ),
            CircuitAxiomFailure::StrongElimination { x, y, e, f: ff } => write!(
                f,
                "(SE) eliminating {} between X = {x} and Y = {y}: no circuit through {}",
                e + 1,
                ff + 1
            ),
        }
    }
}

/// The rescaling `αY` with `αY(e) = -X(e)`.
fn align(x: &PhaseVector, y: &PhaseVector, e: usize) -> PhaseVector {
    let alpha = (-x.get(e)).div(&y.get(e)).expect("e in both supports");
    y.scaled(&alpha)
}

/// Modular elimination between `X` and `Y` at `e`, read uniformly: the eliminant
/// `Z` is the unique member inside `(supp X ∪ supp Y) \ e`, scaled to agree with
/// `X` at the first element of `supp X \ supp Y`; then at every other element
/// `βZ(g)` lies in `pconv{X(g), Y(g)}` on the common support and equals the one
/// nonzero value elsewhere.
fn modular_elimination(
    c: &PhasedSignature,
    x: &PhaseVector,
    y: &PhaseVector,
    e: usize,
) -> Verdict<CircuitAxiomFailure> {
    let y = align(x, y, e);
    let (sx, sy) = (x.support(), y.support());
    let region = sx.union(sy).without(e);
    let Some(z) = c.members.iter().find(|z| z.support().is_subset(region)) else {
        return Err(CircuitAxiomFailure::NoEliminant {
            x: x.clone(),
            y,
            e,
        });
    };
    let fail = |g: usize, z: PhaseVector| CircuitAxiomFailure::ModularElimination {
        x: x.clone(),
        y: y.clone(),
        e,
        z,
        g,
    };
    let g0 = sx.difference(sy).min().expect("distinct circuits are incomparable");
    let Ok(beta) = x.get(g0).div(&z.get(g0)) else {
        return Err(fail(g0, z.clone()));
    };
    let z = z.scaled(&beta);
    for g in region.iter() {
        let ok = match (sx.contains(g), sy.contains(g)) {
            (true, true) => pconv_contains(&[x.get(g), y.get(g)], &z.get(g)),
            (true, false) => z.get(g) == x.get(g),
            (false, true) => z.get(g) == y.get(g),
            (false, false) => unreachable!(),
        };
        if !ok {
            return Err(fail(g, z));
        }
    }
    Ok(())
}

/// Support-level elimination between members of distinct orbits.
fn strong_elimination(
    c: &PhasedSignature,
    x: &PhaseVector,
    y: &PhaseVector,
    e: usize,
) -> Verdict<CircuitAxiomFailure> {
    let y = align(x, y, e);
    let region = x.support().union(y.support()).without(e);
    for f in region.iter() {
        // after alignment the two cancel at f exactly when X(f) = -Y(f)
        if x.get(f) == -y.get(f) {
            continue;
        }
        let found = c
            .members
            .iter()
            .any(|z| z.support().contains(f) && z.support().is_subset(region));
        if !found {
            return Err(CircuitAxiomFailure::StrongElimination {
                x: x.clone(),
                y,
                e,
                f,
            });
        }
    }
    Ok(())
}

/// Checks the circuit axioms of `C` relative to `M`: supports are the circuits of
/// `M`, modular elimination over every modular pair, and strong elimination.
/// Orbit normalization and support uniqueness hold by construction.
pub fn verify_circuit_axioms(m: &Matroid, c: &PhasedSignature) -> Verdict<CircuitAxiomFailure> {
    if let Some((a, b)) = support_diff(&c.supports(), m.circuits()) {
        return Err(CircuitAxiomFailure::Supports(a, b));
    }
    for x in &c.members {
        for y in &c.members {
            if x.support() == y.support() {
                continue;
            }
            let common = x.support().intersection(y.support());
            let modular = m
                .is_modular_pair_circuits(x.support(), y.support())
                .expect("supports are circuits");
            for e in common.iter() {
                if modular {
                    modular_elimination(c, x, y, e)?;
                }
                strong_elimination(c, x, y, e)?;
            }
        }
    }
    Ok(())
}

/// Cocircuit signature built from circuits: for each cocircuit `D` with
/// hyperplane `H = E \ D`, `A` a maximal independent subset of `H`, `f = min D`
/// and `e ∈ D`, `W(e)/W(f) = -X(e)/X(f)` where `X` lives on the circuit in `A ∪ {e, f}`.
pub fn cocircuit_signature_from_circuits(m: &Matroid, c: &PhasedSignature) -> Result<PhasedSignature> {
    let mut members = Vec::new();
    for d in m.cocircuits() {
        let h = m.ground().difference(d);
        let a = h.iter().fold(ElemSet::EMPTY, |acc, x| {
            if m.is_independent(acc.with(x)) {
                acc.with(x)
            } else {
                acc
            }
        });
        members.push(cocircuit_member(m, c, d, a)?);
    }
    PhasedSignature::new(m.ground(), SignatureKind::Cocircuits, members)
}

/// The phased cocircuit on `d` using the hyperplane basis `a`.
pub fn cocircuit_member(m: &Matroid, c: &PhasedSignature, d: ElemSet, a: ElemSet) -> Result<PhaseVector> {
    let f = d.min().ok_or(Error::ZeroVector)?;
    let mut w = PhaseVector::zero(m.ground());
    w.set(f, Phase::one());
    for e in d.without(f).iter() {
        let support = m.basic_circuit(a.with(e), f)?;
        let x = c.member_on(support).ok_or(Error::MissingMember(support))?;
        let ratio = (-x.get(e)).div(&x.get(f))?;
        w.set(e, ratio);
    }
    Ok(w)
}

/// The support-minimal phase vectors orthogonal to every member of `C`.
///
/// Supports are the inclusion-minimal nonempty sets meeting no member's support
/// in exactly one element. Each is phased from the members meeting it in two
/// elements, which force `W(e)/W(f) = -X(e)/X(f)`; the result is then checked
/// against every member.
pub fn min_support_orthogonal(c: &PhasedSignature) -> Result<PhasedSignature> {
    let ground = c.ground;
    let supports = c.supports();
    let mut candidates: Vec<ElemSet> = ground
        .all_subsets()
        .filter(|a| !a.is_empty() && supports.iter().all(|s| s.intersection(*a).len() != 1))
        .collect();
    candidates.sort_by_key(|a| a.len());
    let mut minimal: Vec<ElemSet> = Vec::new();
    for a in candidates {
        if !minimal.iter().any(|m| m.is_subset(a)) {
            minimal.push(a);
        }
    }
    let mut members = Vec::new();
    for a in minimal {
        members.push(phase_support(c, a)?);
    }
    PhasedSignature::new(ground, c.kind.flip(), members)
}

fn phase_support(c: &PhasedSignature, a: ElemSet) -> Result<PhaseVector> {
    let constraints: Vec<(usize, usize, Phase)> = c
        .members
        .iter()
        .filter_map(|x| {
            let meet = x.support().intersection(a);
            if meet.len() != 2 {
                return None;
            }
            let (e, f) = meet.iter().collect_tuple()?;
            Some((e, f, (-x.get(e)).div(&x.get(f)).ok()?))
        })
        .collect();
    let root = a.min().expect("nonempty");
    let mut w = PhaseVector::zero(c.ground);
    w.set(root, Phase::one());
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for (e, f, ratio) in &constraints {
            // W(e) = ratio * W(f)
            let (known, other, value) = if *f == v {
                (*f, *e, &w.get(*f) * ratio)
            } else if *e == v {
                (*e, *f, w.get(*e).div(ratio)?)
            } else {
                continue;
            };
            debug_assert_eq!(known, v);
            if w.get(other).is_zero() {
                w.set(other, value);
                queue.push_back(other);
            }
        }
    }
    if w.support() != a {
        return Err(Error::UnphaseableSupport(a));
    }
    if c.members.iter().any(|x| !orthogonal(x, &w)) {
        return Err(Error::UnphaseableSupport(a));
    }
    Ok(w)
}

/// `C \ A`: members avoiding `A`, restricted to `E \ A`.
pub fn delete_signature(c: &PhasedSignature, a: ElemSet) -> Result<PhasedSignature> {
    if !a.is_subset(c.ground) {
        return Err(Error::OutsideGround { set: a, ground: c.ground });
    }
    let members = c
        .members
        .iter()
        .filter(|x| x.support().intersection(a).is_empty())
        .map(|x| x.restrict_away(a));
    PhasedSignature::new(c.ground.difference(a), c.kind, members.collect::<Vec<_>>())
}

/// `C / A`: support-minimal nonzero restrictions of members to `E \ A`.
pub fn contract_signature(c: &PhasedSignature, a: ElemSet) -> Result<PhasedSignature> {
    if !a.is_subset(c.ground) {
        return Err(Error::OutsideGround { set: a, ground: c.ground });
    }
    let restricted: Vec<PhaseVector> = c
        .members
        .iter()
        .map(|x| x.restrict_away(a))
        .filter(|x| !x.is_zero())
        .collect();
    let minimal = restricted.iter().filter(|x| {
        !restricted
            .iter()
            .any(|y| y.support() != x.support() && y.support().is_subset(x.support()))
    });
    PhasedSignature::new(c.ground.difference(a), c.kind, minimal.cloned().collect::<Vec<_>>())
}

/// Every `X ∈ C1` dominates some unit multiple of a `Y ∈ C2`.
pub fn weak_map_circuits(c1: &PhasedSignature, c2: &PhasedSignature) -> bool {
    c1.ground == c2.ground
        && c1.members.iter().all(|x| {
            c2.members.iter().any(|y| {
                let sy = y.support();
                if !sy.is_subset(x.support()) {
                    return false;
                }
                let g = sy.min().expect("nonzero member");
                let alpha = x.get(g).div(&y.get(g)).expect("nonzero");
                y.scaled(&alpha).le(x)
            })
        })
}

/// Why a weak map between phirotopes fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakMapFailure {
    GroundMismatch,
    RankMismatch,
    /// A basis on which `φ1 = c φ2` fails.
    Blocking(ElemSet),
}

/// The unit `c` with `φ1(B) = c φ2(B)` for every `B` where `φ2(B) ≠ 0`.
/// `c` is fixed on the first basis of `φ2` and then checked everywhere.
pub fn weak_map_phirotope_unit(phi1: &Phirotope, phi2: &Phirotope) -> std::result::Result<Phase, WeakMapFailure> {
    if phi1.ground() != phi2.ground() {
        return Err(WeakMapFailure::GroundMismatch);
    }
    if phi1.rank() != phi2.rank() {
        return Err(WeakMapFailure::RankMismatch);
    }
    let bases = phi2.underlying_matroid().bases();
    let b0 = bases[0];
    let c = phi1
        .value(b0)
        .div(&phi2.value(b0))
        .map_err(|_| WeakMapFailure::Blocking(b0))?;
    if c.is_zero() {
        return Err(WeakMapFailure::Blocking(b0));
    }
    for &b in bases {
        if phi1.value(b) != &c * &phi2.value(b) {
            return Err(WeakMapFailure::Blocking(b));
        }
    }
    Ok(c)
}

pub fn weak_map_phirotopes(phi1: &Phirotope, phi2: &Phirotope) -> bool {
    weak_map_phirotope_unit(phi1, phi2).is_ok()
}
