//! Matroids on small ground sets, stored by their basis families.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{self, GaussMatrix};
use crate::set::{ElemSet, MAX_GROUND};

#[derive(Clone)]
pub struct Matroid {
    ground: ElemSet,
    rank: usize,
    bases: Vec<ElemSet>,
    lookup: HashSet<ElemSet>,
    circuits: OnceLock<Vec<ElemSet>>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.bases == other.bases
    }
}

impl Eq for Matroid {}

fn check_ground(ground: ElemSet) -> Result<()> {
    match ground.iter().last() {
        Some(top) if top >= MAX_GROUND => Err(Error::GroundTooLarge(top + 1)),
        _ => Ok(()),
    }
}

fn sort_lex(v: &mut [ElemSet]) {
    v.sort_by(|a, b| a.lex_cmp(*b));
}

impl Matroid {
    /// Validates the basis family (nonempty, equicardinal, exchange) and builds the matroid.
    pub fn from_bases<I: IntoIterator<Item = ElemSet>>(ground: ElemSet, bases: I) -> Result<Self> {
        let m = Matroid::from_bases_unchecked(ground, bases)?;
        if let Some((b1, b2, e)) = m.exchange_violation() {
            return Err(Error::ExchangeViolation { b1, b2, e });
        }
        Ok(m)
    }

    /// Structural checks only; the exchange axiom is not verified.
    fn from_bases_unchecked<I: IntoIterator<Item = ElemSet>>(ground: ElemSet, bases: I) -> Result<Self> {
        check_ground(ground)?;
        let lookup: HashSet<ElemSet> = bases.into_iter().collect();
        let mut list: Vec<ElemSet> = lookup.iter().copied().collect();
        sort_lex(&mut list);
        let first = *list.first().ok_or(Error::NoBases)?;
        for &b in &list {
            if !b.is_subset(ground) {
                return Err(Error::OutsideGround { set: b, ground });
            }
            if b.len() != first.len() {
                return Err(Error::UnequalBases(first, b));
            }
        }
        Ok(Matroid {
            ground,
            rank: first.len(),
            bases: list,
            lookup,
            circuits: OnceLock::new(),
        })
    }

    /// First triple `(B1, B2, e)` for which no `f` in `B2 \ B1` repairs `B1 - e`.
    fn exchange_violation(&self) -> Option<(ElemSet, ElemSet, usize)> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                for e in b1.difference(b2).iter() {
                    let ok = b2
                        .difference(b1)
                        .iter()
                        .any(|f| self.is_basis(b1.without(e).with(f)));
                    if !ok {
                        return Some((b1, b2, e));
                    }
                }
            }
        }
        None
    }

    /// The free matroid: the whole ground set is the only basis.
    pub fn free(ground: ElemSet) -> Result<Self> {
        Matroid::from_bases(ground, [ground])
    }

    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        let ground = ElemSet::full(n);
        Matroid::from_bases(ground, ground.subsets_of_size(d))
    }

    /// Column matroid of a matrix (of any row rank).
    pub fn from_matrix(m: &GaussMatrix) -> Result<Self> {
        if m.ncols() > MAX_GROUND {
            return Err(Error::GroundTooLarge(m.ncols()));
        }
        let m = linalg::row_basis(m);
        let ground = ElemSet::full(m.ncols());
        let r = m.nrows();
        let bases: Vec<_> = ground
            .subsets_of_size(r)
            .filter(|s| linalg::column_rank(&m, *s) == r)
            .collect();
        Matroid::from_bases(ground, bases)
    }

    /// The matroid whose circuits are `circuits`: bases are the maximal sets
    /// containing none of them. Fails if the result is not a matroid.
    pub fn from_circuits(ground: ElemSet, circuits: &[ElemSet]) -> Result<Self> {
        check_ground(ground)?;
        if let Some(c) = circuits.iter().find(|c| !c.is_subset(ground)) {
            return Err(Error::OutsideGround { set: *c, ground });
        }
        let independent = |s: ElemSet| !circuits.iter().any(|c| c.is_subset(s));
        let mut best: Vec<ElemSet> = Vec::new();
        for k in (0..=ground.len()).rev() {
            best = ground.subsets_of_size(k).filter(|s| independent(*s)).collect();
            if !best.is_empty() {
                break;
            }
        }
        let m = Matroid::from_bases(ground, best)?;
        let mut given = circuits.to_vec();
        sort_lex(&mut given);
        given.dedup();
        if given != m.circuits() {
            let bad = given
                .iter()
                .chain(m.circuits().iter())
                .find(|c| !given.contains(c) || !m.circuits().contains(c))
                .copied()
                .unwrap_or(ground);
            return Err(Error::NotACircuit(bad));
        }
        Ok(m)
    }

    pub fn ground(&self) -> ElemSet {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> &[ElemSet] {
        &self.bases
    }

    pub fn is_basis(&self, b: ElemSet) -> bool {
        self.lookup.contains(&b)
    }

    /// `max |A ∩ B|` over bases `B`.
    pub fn rank_of(&self, a: ElemSet) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(a).len())
            .max()
            .unwrap_or(0)
    }

    pub fn is_independent(&self, a: ElemSet) -> bool {
        self.bases.iter().any(|b| a.is_subset(*b))
    }

    pub fn closure(&self, a: ElemSet) -> ElemSet {
        let r = self.rank_of(a);
        self.ground
            .iter()
            .filter(|&e| a.contains(e) || self.rank_of(a.with(e)) == r)
            .fold(ElemSet::EMPTY, ElemSet::with)
    }

    /// Minimal dependent sets, in lexicographic order.
    pub fn circuits(&self) -> &[ElemSet] {
        self.circuits.get_or_init(|| {
            let mut out: Vec<ElemSet> = self
                .ground
                .all_subsets()
                .filter(|c| {
                    !c.is_empty()
                        && !self.is_independent(*c)
                        && c.iter().all(|x| self.is_independent(c.without(x)))
                })
                .collect();
            sort_lex(&mut out);
            out
        })
    }

    pub fn is_circuit(&self, c: ElemSet) -> bool {
        self.circuits().contains(&c)
    }

    pub fn dual(&self) -> Matroid {
        Matroid::from_bases_unchecked(self.ground, self.bases.iter().map(|b| self.ground.difference(*b)))
            .expect("complements of bases form a basis family")
    }

    pub fn cocircuits(&self) -> Vec<ElemSet> {
        self.dual().circuits().to_vec()
    }

    /// `M \ A`: bases are the maximal sets `B \ A`.
    pub fn delete(&self, a: ElemSet) -> Result<Matroid> {
        if !a.is_subset(self.ground) {
            return Err(Error::OutsideGround { set: a, ground: self.ground });
        }
        let r = self.rank_of(self.ground.difference(a));
        let bases = self
            .bases
            .iter()
            .map(|b| b.difference(a))
            .filter(|b| b.len() == r);
        Matroid::from_bases_unchecked(self.ground.difference(a), bases)
    }

    /// `M / A`: bases are the sets `B \ A` for bases meeting `A` in a maximal independent set.
    pub fn contract(&self, a: ElemSet) -> Result<Matroid> {
        if !a.is_subset(self.ground) {
            return Err(Error::OutsideGround { set: a, ground: self.ground });
        }
        let r = self.rank_of(a);
        let bases = self
            .bases
            .iter()
            .filter(|b| b.intersection(a).len() == r)
            .map(|b| b.difference(a));
        Matroid::from_bases_unchecked(self.ground.difference(a), bases)
    }

    pub fn loops(&self) -> ElemSet {
        self.ground
            .iter()
            .filter(|&e| !self.is_independent(ElemSet::singleton(e)))
            .fold(ElemSet::EMPTY, ElemSet::with)
    }

    /// The unique circuit inside `B ∪ {e}`.
    pub fn basic_circuit(&self, b: ElemSet, e: usize) -> Result<ElemSet> {
        if b.contains(e) {
            return Err(Error::ElementInBasis { element: e, basis: b });
        }
        if !self.is_basis(b) {
            return Err(Error::Internal(format!("{b} is not a basis")));
        }
        if !self.ground.contains(e) {
            return Err(Error::OutsideGround {
                set: ElemSet::singleton(e),
                ground: self.ground,
            });
        }
        Ok(b
            .iter()
            .filter(|&x| self.is_basis(b.without(x).with(e)))
            .fold(ElemSet::singleton(e), ElemSet::with))
    }

    /// `|C1 ∪ C2| - rank(C1 ∪ C2) = 2` for two distinct circuits.
    pub fn is_modular_pair_circuits(&self, c1: ElemSet, c2: ElemSet) -> Result<bool> {
        for c in [c1, c2] {
            if !self.is_circuit(c) {
                return Err(Error::NotACircuit(c));
            }
        }
        if c1 == c2 {
            return Err(Error::Internal("modular pair needs distinct circuits".into()));
        }
        let u = c1.union(c2);
        Ok(u.len() - self.rank_of(u) == 2)
    }

    pub fn basis_graph(&self) -> BasisGraph {
        let vertices = self.bases.clone();
        let index: HashMap<ElemSet, usize> = vertices.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut edges = Vec::new();
        let mut edge_circuit = Vec::new();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for (i, &b1) in vertices.iter().enumerate() {
            for x in b1.iter() {
                for y in self.ground.difference(b1).iter() {
                    let b2 = b1.without(x).with(y);
                    let Some(&j) = index.get(&b2) else { continue };
                    if j <= i {
                        continue;
                    }
                    let c = self.basic_circuit(b1, y).expect("adjacent bases");
                    adjacency[i].push((j, edges.len()));
                    adjacency[j].push((i, edges.len()));
                    edges.push((i, j));
                    edge_circuit.push(c);
                }
            }
        }
        BasisGraph {
            vertices,
            edges,
            edge_circuit,
            adjacency,
        }
    }
}

impl fmt::Display for Matroid {
    /// Text format: a `ground:` line followed by one `basis:` line per basis.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = |s: ElemSet| {
            s.iter()
                .map(|e| (e + 1).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "ground: {}", labels(self.ground))?;
        for b in &self.bases {
            writeln!(f, "basis: {}", labels(*b))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(rank {} on {}, bases {:?})", self.rank, self.ground, self.bases)
    }
}

/// Graph on the bases of a matroid; two bases are adjacent when they differ in one element.
#[derive(Clone, Debug)]
pub struct BasisGraph {
    pub vertices: Vec<ElemSet>,
    /// Pairs of vertex indices `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
    /// The unique circuit in the union of the two endpoints of each edge.
    pub edge_circuit: Vec<ElemSet>,
    /// `(neighbour, edge index)` lists per vertex.
    pub adjacency: Vec<Vec<(usize, usize)>>,
}

impl BasisGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}
