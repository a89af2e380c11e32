//! Phirotopes: alternating maps from ordered `d`-tuples to `S^1 ∪ {0}` satisfying
//! the phased Grassmann-Plücker condition.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::linalg::{self, GaussMatrix};
use crate::matroid::Matroid;
use crate::phase::{phase_of, zero_in_pconv, Phase};
use crate::set::{sort_sign, ElemSet};

#[derive(Clone)]
pub struct Phirotope {
    ground: ElemSet,
    rank: usize,
    values: HashMap<ElemSet, Phase>,
    matroid: Matroid,
}

impl PartialEq for Phirotope {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.rank == other.rank && self.values == other.values
    }
}

impl Eq for Phirotope {}

/// `Ok(())` on success, otherwise the first witness found.
pub type Verdict<W> = std::result::Result<(), W>;

/// A failing Grassmann-Plücker instance: sorted tuples `x` (length `d+1`) and `y`
/// (length `d-1`) with the term phases `(-1)^k φ(x \ x_k) φ(x_k, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub terms: Vec<Phase>,
}

impl fmt::Display for GpWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple = |v: &[usize]| format!("({})", v.iter().map(|e| e + 1).join(","));
        write!(
            f,
            "x={} y={} terms={{{}}}",
            tuple(&self.x),
            tuple(&self.y),
            self.terms.iter().join(", ")
        )
    }
}

impl Phirotope {
    /// Builds a phirotope from its values on sorted `rank`-subsets of `ground`
    /// (missing subsets are zero). Checks that some value is nonzero and that the
    /// support is the basis family of a matroid; the phased condition is left to
    /// [`Phirotope::check_gp`].
    pub fn new<I: IntoIterator<Item = (ElemSet, Phase)>>(ground: ElemSet, rank: usize, values: I) -> Result<Self> {
        let mut map = HashMap::new();
        for (s, p) in values {
            if !s.is_subset(ground) {
                return Err(Error::OutsideGround { set: s, ground });
            }
            if s.len() != rank {
                return Err(Error::Arity(format!("{s} has size {}, rank is {rank}", s.len())));
            }
            if !p.is_zero() {
                map.insert(s, p);
            }
        }
        if map.is_empty() {
            return Err(Error::ZeroPhirotope);
        }
        let matroid = Matroid::from_bases(ground, map.keys().copied())?;
        Ok(Phirotope {
            ground,
            rank,
            values: map,
            matroid,
        })
    }

    /// Phases of the maximal minors of a full-row-rank matrix.
    pub fn from_matrix(m: &GaussMatrix) -> Result<Self> {
        let r = linalg::rank(m);
        if r != m.nrows() {
            return Err(Error::RankDeficient { rank: r, rows: m.nrows() });
        }
        if m.ncols() > crate::set::MAX_GROUND {
            return Err(Error::GroundTooLarge(m.ncols()));
        }
        let ground = ElemSet::full(m.ncols());
        let mut values = Vec::new();
        for s in ground.subsets_of_size(r) {
            values.push((s, phase_of(&linalg::det(m, &s.to_vec())?)));
        }
        Phirotope::new(ground, r, values)
    }

    pub fn ground(&self) -> ElemSet {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn underlying_matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Value on a sorted subset (zero off the basis family).
    pub fn value(&self, s: ElemSet) -> Phase {
        self.values.get(&s).cloned().unwrap_or(Phase::Zero)
    }

    /// Values on all sorted `rank`-subsets of the ground set, in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (ElemSet, Phase)> + '_ {
        self.ground.subsets_of_size(self.rank).map(|s| (s, self.value(s)))
    }

    /// Value on an ordered tuple: zero on repeats, otherwise the sorted value times
    /// the sign of the sorting permutation.
    pub fn eval(&self, tuple: &[usize]) -> Phase {
        if tuple.len() != self.rank {
            return Phase::Zero;
        }
        match sort_sign(tuple) {
            None => Phase::Zero,
            Some(sign) => self.value(ElemSet::from_elems(tuple.iter().copied())).signed(sign < 0),
        }
    }

    /// The terms `(-1)^k φ(x \ x_k) φ(x_k, y)` of one Grassmann-Plücker relation.
    pub fn gp_terms(&self, x: &[usize], y: &[usize]) -> Vec<Phase> {
        (0..x.len())
            .map(|k| {
                let mut rest = x.to_vec();
                let xk = rest.remove(k);
                let mut tail = vec![xk];
                tail.extend(y);
                (&self.eval(&rest) * &self.eval(&tail)).signed(k % 2 == 1)
            })
            .collect()
    }

    /// Failing Grassmann-Plücker instances over sorted tuples, `x` in the outer
    /// loop, both in lexicographic order.
    pub fn gp_failures(&self) -> impl Iterator<Item = GpWitness> + '_ {
        let elems = self.ground.to_vec();
        let d = self.rank;
        let xs: Vec<Vec<usize>> = if d == 0 {
            Vec::new()
        } else {
            elems.iter().copied().combinations(d + 1).collect()
        };
        let ys: Vec<Vec<usize>> = if d == 0 {
            Vec::new()
        } else {
            elems.iter().copied().combinations(d - 1).collect()
        };
        xs.into_iter()
            .cartesian_product(ys)
            .filter_map(move |(x, y)| {
                let terms = self.gp_terms(&x, &y);
                (!zero_in_pconv(&terms)).then_some(GpWitness { x, y, terms })
            })
    }

    /// Checks the phased Grassmann-Plücker condition; reports the first failure.
    pub fn check_gp(&self) -> Verdict<GpWitness> {
        match self.gp_failures().next() {
            Some(w) => Err(w),
            None => Ok(()),
        }
    }

    pub fn is_phirotope(&self) -> bool {
        self.check_gp().is_ok()
    }

    /// `c · φ`.
    pub fn scaled(&self, c: &Phase) -> Phirotope {
        let mut out = self.clone();
        for v in out.values.values_mut() {
            *v = &*v * c;
        }
        out
    }

    /// The unit `c` with `self = c · other`, if there is one.
    pub fn unit_ratio(&self, other: &Phirotope) -> Option<Phase> {
        if self.ground != other.ground || self.rank != other.rank || self.matroid != other.matroid {
            return None;
        }
        let b = self.matroid.bases()[0];
        let c = self.value(b).div(&other.value(b)).ok()?;
        (other.scaled(&c) == *self).then_some(c)
    }

    /// Rescales element `e` by the unit `u`: every value on a set containing `e` is multiplied by `u`.
    pub fn reorient(&self, e: usize, u: &Phase) -> Phirotope {
        let mut out = self.clone();
        for (s, v) in out.values.iter_mut() {
            if s.contains(e) {
                *v = &*v * u;
            }
        }
        out
    }

    /// Image of the phirotope (as a set of phases, zero excluded).
    pub fn nonzero_values(&self) -> impl Iterator<Item = &Phase> {
        self.values.values()
    }
}

/// `φ*(S) = φ(E \ S)^{-1} · sign(S, E \ S)`, with both parts listed in increasing order.
pub fn dual_phirotope(phi: &Phirotope) -> Phirotope {
    let ground = phi.ground;
    let dual_rank = ground.len() - phi.rank;
    let values = ground.subsets_of_size(dual_rank).map(|s| {
        let comp = ground.difference(s);
        let v = phi.value(comp);
        if v.is_zero() {
            return (s, Phase::Zero);
        }
        let tuple: Vec<usize> = s.iter().chain(comp.iter()).collect();
        let sign = sort_sign(&tuple).expect("disjoint parts");
        (s, v.conj().signed(sign < 0))
    });
    Phirotope::new(ground, dual_rank, values.collect::<Vec<_>>()).expect("dual of a phirotope")
}

/// Lexicographically first maximal independent subset of `a`.
fn greedy_independent(m: &Matroid, a: ElemSet) -> ElemSet {
    a.iter().fold(ElemSet::EMPTY, |acc, e| {
        if m.is_independent(acc.with(e)) {
            acc.with(e)
        } else {
            acc
        }
    })
}

/// `(φ / A)(x) = φ(x, i_1, .., i_l)` where `I = {i_1 < .. < i_l}` is the
/// lexicographically first maximal independent subset of `A`.
pub fn contract_phirotope(phi: &Phirotope, a: ElemSet) -> Result<Phirotope> {
    if !a.is_subset(phi.ground) {
        return Err(Error::OutsideGround { set: a, ground: phi.ground });
    }
    let ind = greedy_independent(&phi.matroid, a);
    contract_with(phi, a, ind)
}

/// Contraction using an explicit maximal independent subset `ind` of `A`.
pub fn contract_with(phi: &Phirotope, a: ElemSet, ind: ElemSet) -> Result<Phirotope> {
    let ground = phi.ground.difference(a);
    let r = phi.rank - ind.len();
    let tail = ind.to_vec();
    let values: Vec<_> = ground
        .subsets_of_size(r)
        .map(|s| {
            let mut t = s.to_vec();
            t.extend(&tail);
            (s, phi.eval(&t))
        })
        .collect();
    Phirotope::new(ground, r, values)
}

/// `(φ \ A)(x) = φ(x, t_1, .., t_k)` where `T` is the lexicographically first
/// subset of `A` completing a basis of `E \ A` to a basis of the whole matroid.
pub fn delete_phirotope(phi: &Phirotope, a: ElemSet) -> Result<Phirotope> {
    if !a.is_subset(phi.ground) {
        return Err(Error::OutsideGround { set: a, ground: phi.ground });
    }
    let rest = phi.ground.difference(a);
    let m = &phi.matroid;
    let r = m.rank_of(rest);
    let k = phi.rank - r;
    let base = greedy_independent(m, rest);
    let completion = a
        .subsets_of_size(k)
        .find(|t| m.is_basis(base.union(*t)))
        .ok_or_else(|| Error::Internal("no spanning completion".into()))?;
    delete_with(phi, a, completion)
}

/// Deletion using an explicit spanning completion `t ⊆ A`.
pub fn delete_with(phi: &Phirotope, a: ElemSet, t: ElemSet) -> Result<Phirotope> {
    let ground = phi.ground.difference(a);
    let r = phi.rank - t.len();
    let tail = t.to_vec();
    let values: Vec<_> = ground
        .subsets_of_size(r)
        .map(|s| {
            let mut x = s.to_vec();
            x.extend(&tail);
            (s, phi.eval(&x))
        })
        .collect();
    Phirotope::new(ground, r, values)
}

/// Generalized cross ratio `φ(a,C) φ(b,D) / (φ(b,C) φ(a,D))`; `None` when the
/// denominator vanishes.
pub fn cross_ratio(phi: &Phirotope, a: usize, b: usize, c: &[usize], d: &[usize]) -> Option<Phase> {
    let with = |x: usize, t: &[usize]| {
        let mut v = vec![x];
        v.extend(t);
        phi.eval(&v)
    };
    let den = &with(b, c) * &with(a, d);
    if den.is_zero() {
        return None;
    }
    let num = &with(a, c) * &with(b, d);
    Some(num.div(&den).expect("nonzero denominator"))
}

/// `((a, b, C, D), cr)` as produced by [`all_cross_ratios`].
pub type CrossRatio = ((usize, usize, Vec<usize>, Vec<usize>), Phase);

/// All defined cross ratios over `a < b` and sorted `(d-1)`-tuples `C`, `D`.
pub fn all_cross_ratios(phi: &Phirotope) -> Vec<CrossRatio> {
    if phi.rank == 0 {
        return Vec::new();
    }
    let elems = phi.ground.to_vec();
    let tuples: Vec<Vec<usize>> = elems.iter().copied().combinations(phi.rank - 1).collect();
    let mut out = Vec::new();
    for (&a, &b) in elems.iter().tuple_combinations() {
        for c in &tuples {
            for d in &tuples {
                if let Some(cr) = cross_ratio(phi, a, b, c, d) {
                    out.push(((a, b, c.clone(), d.clone()), cr));
                }
            }
        }
    }
    out
}

/// Outcome of the bounded reorientation search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReorientSearch {
    /// Unit rescalings per element after which all values are real up to one global unit.
    Found(Vec<Phase>),
    NotFound,
    CapExceeded,
}

/// Searches unit rescalings drawn from the phases of the instance (their
/// inverses, negatives and `1`) for one making `φ` real up to a global unit.
/// The first element is held at `1`, since a common factor is absorbed by the
/// global unit. At most `cap` candidate assignments are tried.
pub fn reorientation_to_real(phi: &Phirotope, cap: usize) -> ReorientSearch {
    let mut cands: Vec<Phase> = vec![Phase::one()];
    for v in phi.nonzero_values() {
        for p in [v.clone(), v.conj(), -v, -v.conj()] {
            if !cands.contains(&p) {
                cands.push(p);
            }
        }
    }
    let elems = phi.ground.to_vec();
    let free = elems.len().saturating_sub(1);
    let total = (cands.len() as f64).powi(free as i32);
    if total > cap as f64 {
        return ReorientSearch::CapExceeded;
    }
    let bases = phi.matroid.bases().to_vec();
    let is_real_up_to_unit = |u: &[Phase]| {
        let scaled: Vec<Phase> = bases
            .iter()
            .map(|b| {
                b.iter()
                    .fold(phi.value(*b), |acc, e| &acc * &u[elems.iter().position(|&x| x == e).unwrap()])
            })
            .collect();
        let c = scaled[0].conj();
        scaled.iter().all(|v| (v * &c).is_real())
    };
    let mut choice = vec![0usize; free];
    loop {
        let mut u = vec![Phase::one()];
        u.extend(choice.iter().map(|&i| cands[i].clone()));
        if is_real_up_to_unit(&u) {
            return ReorientSearch::Found(u);
        }
        let mut k = 0;
        loop {
            if k == free {
                return ReorientSearch::NotFound;
            }
            choice[k] += 1;
            if choice[k] < cands.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `Some(true)` if a real reorientation was found among the candidates,
/// `Some(false)` if the candidate space was exhausted, `None` past the cap.
pub fn is_reorientable_to_real(phi: &Phirotope) -> Option<bool> {
    match reorientation_to_real(phi, 2_000_000) {
        ReorientSearch::Found(_) => Some(true),
        ReorientSearch::NotFound => Some(false),
        ReorientSearch::CapExceeded => None,
    }
}

impl fmt::Display for Phirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::write_phirotope(self))
    }
}

impl fmt::Debug for Phirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
