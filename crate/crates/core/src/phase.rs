//! Exact phases: elements of the unit circle together with zero.
//!
//! A nonzero phase is stored as the primitive integer point `(a, b)` on the ray
//! `R+ (a + b i)`. Every predicate on phases reduces to integer cross and dot
//! products, so all decisions are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::set::ElemSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Phase {
    Zero,
    Ray(BigInt, BigInt),
}

impl Phase {
    /// Normalizes `(a, b)` by the gcd of its entries. The sign is never flipped.
    pub fn ray(a: BigInt, b: BigInt) -> Self {
        if a.is_zero() && b.is_zero() {
            return Phase::Zero;
        }
        let g = a.gcd(&b);
        Phase::Ray(a / &g, b / &g)
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Phase::ray(a.into(), b.into())
    }

    pub fn one() -> Self {
        Phase::from_ints(1, 0)
    }

    pub fn minus_one() -> Self {
        Phase::from_ints(-1, 0)
    }

    pub fn i() -> Self {
        Phase::from_ints(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Phase::Zero)
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Phase::Ray(a, b) if a.is_one() && b.is_zero())
    }

    /// True for `0`, `1` and `-1`.
    pub fn is_real(&self) -> bool {
        match self {
            Phase::Zero => true,
            Phase::Ray(_, b) => b.is_zero(),
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Phase::Zero => Phase::Zero,
            Phase::Ray(a, b) => Phase::Ray(a.clone(), -b.clone()),
        }
    }

    /// Multiplicative inverse, i.e. the conjugate ray.
    pub fn inv(&self) -> Result<Self> {
        match self {
            Phase::Zero => Err(Error::ZeroPhaseInverse),
            _ => Ok(self.conj()),
        }
    }

    /// `self / other`; fails when `other` is zero.
    pub fn div(&self, other: &Phase) -> Result<Phase> {
        Ok(self * &other.inv()?)
    }

    /// Multiplies by `(-1)^k`.
    pub fn signed(&self, negate: bool) -> Self {
        if negate {
            -self
        } else {
            self.clone()
        }
    }

    /// The Gaussian integer `a + b i` on this ray (zero for the zero phase).
    pub fn to_gauss(&self) -> GaussRational {
        match self {
            Phase::Zero => GaussRational::zero(),
            Phase::Ray(a, b) => GaussRational::new(a.clone().into(), b.clone().into()),
        }
    }

    fn coords(&self) -> Option<(&BigInt, &BigInt)> {
        match self {
            Phase::Zero => None,
            Phase::Ray(a, b) => Some((a, b)),
        }
    }
}

/// The phase of a Gaussian rational: zero for zero, otherwise its ray.
pub fn phase_of(z: &GaussRational) -> Phase {
    if z.is_zero() {
        return Phase::Zero;
    }
    let l = z.re.denom().lcm(z.im.denom());
    let a = z.re.numer() * (&l / z.re.denom());
    let b = z.im.numer() * (&l / z.im.denom());
    Phase::ray(a, b)
}

impl Mul for &Phase {
    type Output = Phase;
    fn mul(self, o: &Phase) -> Phase {
        match (self, o) {
            (Phase::Ray(a, b), Phase::Ray(c, d)) => Phase::ray(a * c - b * d, a * d + b * c),
            _ => Phase::Zero,
        }
    }
}

impl Mul for Phase {
    type Output = Phase;
    fn mul(self, o: Phase) -> Phase {
        &self * &o
    }
}

impl Neg for &Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        match self {
            Phase::Zero => Phase::Zero,
            Phase::Ray(a, b) => Phase::Ray(-a.clone(), -b.clone()),
        }
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        -&self
    }
}

pub fn phase_mul(p: &Phase, q: &Phase) -> Phase {
    p * q
}

pub fn phase_inv(p: &Phase) -> Result<Phase> {
    p.inv()
}

pub fn phase_neg(p: &Phase) -> Phase {
    -p
}

/// `Im(conj(u) p)`: positive when `p` lies counterclockwise of `u` within a half turn.
fn cross(u: (&BigInt, &BigInt), p: (&BigInt, &BigInt)) -> BigInt {
    u.0 * p.1 - u.1 * p.0
}

/// Whether all nonzero phases lie in one closed half-circle. Zero entries are ignored.
///
/// The half-circles `{p : Im(conj(u) p) >= 0}` that contain a given set form an arc
/// of admissible `u` whose endpoints are elements or negated elements of the set,
/// so it is enough to test those candidates.
pub fn in_closed_half_circle(ps: &[Phase]) -> bool {
    let rays: Vec<_> = ps.iter().filter_map(Phase::coords).collect();
    if rays.is_empty() {
        return true;
    }
    let negs: Vec<(BigInt, BigInt)> = rays.iter().map(|(a, b)| (-(*a), -(*b))).collect();
    let candidates = rays
        .iter()
        .copied()
        .chain(negs.iter().map(|(a, b)| (a, b)));
    for u in candidates {
        if rays.iter().all(|&p| !cross(u, p).is_negative()) {
            return true;
        }
    }
    false
}

fn distinct_rays(ps: &[Phase]) -> Vec<Phase> {
    let mut out: Vec<Phase> = Vec::new();
    for p in ps.iter().filter(|p| !p.is_zero()) {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

/// Whether `0` lies in the phase convex hull of `ps` (all phases of strictly positive
/// real combinations of the distinct nonzero entries).
///
/// An empty input has empty hull; an input made only of zeros has hull `{0}`.
pub fn zero_in_pconv(ps: &[Phase]) -> bool {
    if ps.is_empty() {
        return false;
    }
    let rays = distinct_rays(ps);
    match rays.len() {
        0 => true,
        1 => false,
        2 => rays[0] == -&rays[1],
        _ => !in_closed_half_circle(&rays),
    }
}

/// Whether `p` lies in the phase convex hull of `ps`.
///
/// For nonzero `p` this holds iff some positive combination of `ps` equals a positive
/// multiple of `p`, i.e. iff `0` is in the hull of `ps` together with `-p`.
pub fn pconv_contains(ps: &[Phase], p: &Phase) -> bool {
    if p.is_zero() {
        return zero_in_pconv(ps);
    }
    if distinct_rays(ps).is_empty() {
        return false;
    }
    let mut ext = ps.to_vec();
    ext.push(-p);
    zero_in_pconv(&ext)
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_gauss())
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Phase {
    type Err = crate::gauss::ParseGaussError;

    /// Any Gaussian rational literal; the result is its phase.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(phase_of(&s.parse::<GaussRational>()?))
    }
}

/// A phased set: an assignment of phases to the elements of a ground set.
/// Only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhaseVector {
    ground: ElemSet,
    entries: BTreeMap<usize, Phase>,
}

impl PhaseVector {
    pub fn zero(ground: ElemSet) -> Self {
        PhaseVector {
            ground,
            entries: BTreeMap::new(),
        }
    }

    pub fn new<I: IntoIterator<Item = (usize, Phase)>>(ground: ElemSet, entries: I) -> Result<Self> {
        let mut v = PhaseVector::zero(ground);
        for (e, p) in entries {
            if !ground.contains(e) {
                return Err(Error::OutsideGround {
                    set: ElemSet::singleton(e),
                    ground,
                });
            }
            v.set(e, p);
        }
        Ok(v)
    }

    /// Builds a vector on `{0, .., n-1}` from a dense list.
    pub fn from_dense(ps: Vec<Phase>) -> Self {
        let ground = ElemSet::full(ps.len());
        let mut v = PhaseVector::zero(ground);
        for (e, p) in ps.into_iter().enumerate() {
            v.set(e, p);
        }
        v
    }

    pub fn ground(&self) -> ElemSet {
        self.ground
    }

    pub fn get(&self, e: usize) -> Phase {
        self.entries.get(&e).cloned().unwrap_or(Phase::Zero)
    }

    pub fn set(&mut self, e: usize, p: Phase) {
        debug_assert!(self.ground.contains(e));
        if p.is_zero() {
            self.entries.remove(&e);
        } else {
            self.entries.insert(e, p);
        }
    }

    pub fn support(&self) -> ElemSet {
        ElemSet::from_elems(self.entries.keys().copied())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Phase)> {
        self.entries.iter().map(|(&e, p)| (e, p))
    }

    pub fn scaled(&self, u: &Phase) -> Self {
        if u.is_zero() {
            return PhaseVector::zero(self.ground);
        }
        PhaseVector {
            ground: self.ground,
            entries: self.entries.iter().map(|(&e, p)| (e, p * u)).collect(),
        }
    }

    /// The unit multiple whose smallest support element carries phase `1`.
    pub fn canonical(&self) -> Self {
        match self.entries.values().next() {
            None => self.clone(),
            Some(first) => self.scaled(&first.conj()),
        }
    }

    /// Restriction to `ground \ a`.
    pub fn restrict_away(&self, a: ElemSet) -> Self {
        PhaseVector {
            ground: self.ground.difference(a),
            entries: self
                .entries
                .iter()
                .filter(|(e, _)| !a.contains(**e))
                .map(|(&e, p)| (e, p.clone()))
                .collect(),
        }
    }

    /// Componentwise order `self <= other` (zero below every unit, units incomparable).
    pub fn le(&self, other: &PhaseVector) -> bool {
        self.entries
            .iter()
            .all(|(e, p)| other.entries.get(e) == Some(p))
    }

    /// Returns `u` with `u * self == other`, if one exists.
    pub fn unit_ratio(&self, other: &PhaseVector) -> Option<Phase> {
        if self.support() != other.support() || self.ground != other.ground {
            return None;
        }
        let Some((&e, p)) = self.entries.iter().next() else {
            return Some(Phase::one());
        };
        let u = other.entries[&e].div(p).ok()?;
        (self.scaled(&u) == *other).then_some(u)
    }
}

impl fmt::Display for PhaseVector {
    /// Signature file notation `e1:<phase>,e2:<phase>,...` with one-based labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, p)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}:{}", e + 1, p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

/// The quotients `S(e) / T(e)` over the common support.
pub fn orthogonality_quotients(s: &PhaseVector, t: &PhaseVector) -> Vec<Phase> {
    s.entries
        .iter()
        .filter_map(|(e, p)| t.entries.get(e).map(|q| p * &q.conj()))
        .collect()
}

/// `S` and `T` are orthogonal when their quotient set is empty or has `0` in its hull.
pub fn orthogonal(s: &PhaseVector, t: &PhaseVector) -> bool {
    let quotients = orthogonality_quotients(s, t);
    quotients.is_empty() || zero_in_pconv(&quotients)
}
