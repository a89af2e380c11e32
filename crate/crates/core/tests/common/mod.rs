#![allow(dead_code)]

use cmatroid::linalg::{self, GaussMatrix};
use cmatroid::{ElemSet, GaussRational, Phase, PhasedSignature, Phirotope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn entry(rng: &mut ChaCha8Rng, real: bool) -> GaussRational {
    if rng.gen_bool(0.3) {
        return GaussRational::zero();
    }
    let im = if real { 0 } else { rng.gen_range(-3..=3) };
    GaussRational::from_ints(rng.gen_range(-3..=3), im)
}

fn unit(rng: &mut ChaCha8Rng, real: bool) -> GaussRational {
    let k = rng.gen_range(0..if real { 2 } else { 4 });
    [(1, 0), (-1, 0), (0, 1), (0, -1)]
        .map(|(a, b)| GaussRational::from_ints(a, b))[k]
        .clone()
}

/// Random `d x n` matrix with entries in `[-3,3] + [-3,3]i`, biased towards
/// zero entries and parallel columns, redrawn until it has rank `d`.
pub fn random_matrix_with(rng: &mut ChaCha8Rng, d: usize, n: usize, real: bool) -> GaussMatrix {
    loop {
        let mut cols: Vec<Vec<GaussRational>> = Vec::with_capacity(n);
        for j in 0..n {
            if j > 0 && rng.gen_bool(0.15) {
                let src = rng.gen_range(0..j);
                let u = unit(rng, real);
                let col = cols[src].iter().map(|z| z * &u).collect();
                cols.push(col);
            } else {
                cols.push((0..d).map(|_| entry(rng, real)).collect());
            }
        }
        let rows: Vec<Vec<GaussRational>> = (0..d).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect();
        let m = GaussMatrix::new(rows).unwrap();
        if linalg::rank(&m) == d {
            return m;
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, real: bool) -> GaussMatrix {
    let d = rng.gen_range(1..=3);
    let n = rng.gen_range(d.max(2)..=6);
    random_matrix_with(rng, d, n, real)
}

/// `count` seeded instances, the shared benchmark family.
pub fn instances(seed: u64, count: usize) -> Vec<GaussMatrix> {
    let mut r = rng(seed);
    (0..count).map(|_| random_matrix(&mut r, false)).collect()
}

pub fn real_instances(seed: u64, count: usize) -> Vec<GaussMatrix> {
    let mut r = rng(seed);
    (0..count).map(|_| random_matrix(&mut r, true)).collect()
}

pub fn random_unit_phase(rng: &mut ChaCha8Rng) -> Phase {
    loop {
        let (a, b) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4));
        if (a, b) != (0, 0) {
            return Phase::from_ints(a, b);
        }
    }
}

/// A unit phase other than `1`.
pub fn nontrivial_unit(rng: &mut ChaCha8Rng) -> Phase {
    loop {
        let u = random_unit_phase(rng);
        if !u.is_one() {
            return u;
        }
    }
}

/// Changes one entry of `m` so that one nonzero maximal minor vanishes, keeping full rank.
pub fn zero_one_minor(m: &GaussMatrix, seed: u64) -> Option<Phirotope> {
    let mut r = rng(seed ^ 0x3a);
    let d = m.nrows();
    let bases: Vec<ElemSet> = ElemSet::full(m.ncols())
        .subsets_of_size(d)
        .filter(|b| !linalg::det(m, &b.to_vec()).unwrap().is_zero())
        .collect();
    for _ in 0..8 {
        let b = bases[r.gen_range(0..bases.len())].to_vec();
        let (row, k) = (r.gen_range(0..d), r.gen_range(0..d));
        let col = b[k];
        let det0 = linalg::det(m, &b).unwrap();
        let mut bumped = m.clone();
        bumped.set(row, col, m.get(row, col) + &GaussRational::one());
        // the minor is affine in the entry; its slope is the cofactor
        let slope = &linalg::det(&bumped, &b).unwrap() - &det0;
        if slope.is_zero() {
            continue;
        }
        let mut changed = m.clone();
        changed.set(row, col, m.get(row, col) - &(&det0 / &slope));
        if linalg::rank(&changed) == d {
            return Some(Phirotope::from_matrix(&changed).unwrap());
        }
    }
    None
}

/// Checks the triangle relation on every triple of bases `A+e, A+f, A+g`.
/// Returns `(checked, failures)`.
pub fn triangle_relations(p: &Phirotope, c: &PhasedSignature) -> (usize, usize) {
    let m = p.underlying_matroid();
    if m.rank() == 0 {
        return (0, 0);
    }
    let x = |a: ElemSet, u: usize, v: usize| {
        let s = m.basic_circuit(a.with(u), v).unwrap();
        let x = c.member_on(s).unwrap();
        x.get(u).div(&x.get(v)).unwrap()
    };
    let (mut checked, mut failed) = (0, 0);
    for a in m.ground().subsets_of_size(m.rank() - 1) {
        let outs: Vec<usize> = m.ground().difference(a).iter().filter(|&e| m.is_basis(a.with(e))).collect();
        for (i, &e) in outs.iter().enumerate() {
            for (j, &f) in outs.iter().enumerate() {
                for (k, &g) in outs.iter().enumerate() {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    checked += 1;
                    if &x(a, e, f) * &x(a, f, g) != -x(a, e, g) {
                        failed += 1;
                    }
                }
            }
        }
    }
    (checked, failed)
}

/// Checks the square relation
/// `(X1(e)/X1(f)) (X2'(h)/X2'(g)) = (X2(h)/X2(g)) (X1'(e)/X1'(f))`
/// for every independent `A` and distinct `e,f,g,h` with `A+fg, A+eg, A+fh, A+eh`
/// all bases, where `X1, X1', X2, X2'` live on `C(A+fg, e)`, `C(A+fh, e)`,
/// `C(A+fg, h)`, `C(A+eg, h)`. Returns `(checked, failures)`.
pub fn square_relations(p: &Phirotope, c: &PhasedSignature) -> (usize, usize) {
    let m = p.underlying_matroid();
    if m.rank() < 2 {
        return (0, 0);
    }
    let ratio = |b: ElemSet, out: usize, u: usize, v: usize| {
        let s = m.basic_circuit(b, out).unwrap();
        let x = c.member_on(s).unwrap();
        x.get(u).div(&x.get(v)).unwrap()
    };
    let (mut checked, mut failed) = (0, 0);
    let elems = m.ground().to_vec();
    for a in m.ground().subsets_of_size(m.rank() - 2) {
        for &e in &elems {
            for &f in &elems {
                for &g in &elems {
                    for &h in &elems {
                        let quad = ElemSet::from_elems([e, f, g, h]);
                        if quad.len() != 4 || !quad.intersection(a).is_empty() {
                            continue;
                        }
                        let b1 = a.with(f).with(g);
                        let b2 = a.with(e).with(g);
                        let b1p = a.with(f).with(h);
                        let b2p = a.with(e).with(h);
                        if ![b1, b2, b1p, b2p].iter().all(|b| m.is_basis(*b)) {
                            continue;
                        }
                        checked += 1;
                        let lhs = &ratio(b1, e, e, f) * &ratio(b2, h, h, g);
                        let rhs = &ratio(b1, h, h, g) * &ratio(b1p, e, e, f);
                        if lhs != rhs {
                            failed += 1;
                        }
                    }
                }
            }
        }
    }
    (checked, failed)
}
