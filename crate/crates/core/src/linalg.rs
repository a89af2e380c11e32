//! Dense exact linear algebra over the Gaussian rationals, plus an exact
//! Fourier-Motzkin feasibility test for mixed equality / strict inequality systems.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussRational;
use crate::phase::PhaseVector;
use crate::set::ElemSet;

#[derive(Clone, PartialEq, Eq)]
pub struct GaussMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<GaussRational>>,
}

impl GaussMatrix {
    pub fn new(entries: Vec<Vec<GaussRational>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if let Some(bad) = entries.iter().position(|r| r.len() != cols) {
            return Err(Error::Arity(format!(
                "row {} has {} entries, expected {}",
                bad + 1,
                entries[bad].len(),
                cols
            )));
        }
        Ok(GaussMatrix {
            rows: entries.len(),
            cols,
            entries,
        })
    }

    /// Matrix with integer entries given as `(re, im)` pairs.
    pub fn from_int_pairs(rows: &[&[(i64, i64)]]) -> Self {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&(a, b)| GaussRational::from_ints(a, b)).collect())
            .collect();
        GaussMatrix::new(entries).expect("rectangular literal")
    }

    /// Parses each row of string literals; panics on malformed input.
    pub fn from_literals(rows: &[&[&str]]) -> Self {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| s.parse().expect("Gaussian literal")).collect())
            .collect();
        GaussMatrix::new(entries).expect("rectangular literal")
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { GaussRational::one() } else { GaussRational::zero() })
                    .collect()
            })
            .collect();
        GaussMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussRational {
        &self.entries[r][c]
    }

    pub fn row(&self, r: usize) -> &[GaussRational] {
        &self.entries[r]
    }

    pub fn rows(&self) -> &[Vec<GaussRational>] {
        &self.entries
    }

    pub fn column(&self, c: usize) -> Vec<GaussRational> {
        self.entries.iter().map(|r| r[c].clone()).collect()
    }

    /// The submatrix on the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> GaussMatrix {
        GaussMatrix {
            rows: self.rows,
            cols: cols.len(),
            entries: self
                .entries
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect(),
        }
    }

    pub fn conj_transpose(&self) -> GaussMatrix {
        GaussMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: (0..self.cols)
                .map(|c| (0..self.rows).map(|r| self.entries[r][c].conj()).collect())
                .collect(),
        }
    }

    pub fn mul_vec(&self, x: &[GaussRational]) -> Vec<GaussRational> {
        self.entries
            .iter()
            .map(|r| {
                r.iter().zip(x).fold(GaussRational::zero(), |mut acc, (a, b)| {
                    acc += &(a * b);
                    acc
                })
            })
            .collect()
    }

    pub fn mul(&self, other: &GaussMatrix) -> Result<GaussMatrix> {
        if self.cols != other.rows {
            return Err(Error::Arity(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        (0..self.cols).fold(GaussRational::zero(), |mut acc, k| {
                            acc += &(&self.entries[i][k] * &other.entries[k][j]);
                            acc
                        })
                    })
                    .collect()
            })
            .collect();
        GaussMatrix::new(entries)
    }

    /// Multiplies column `c` by `s`.
    pub fn scale_column(&self, c: usize, s: &GaussRational) -> GaussMatrix {
        let mut out = self.clone();
        for r in &mut out.entries {
            r[c] = &r[c] * s;
        }
        out
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussRational) {
        self.entries[r][c] = v;
    }
}

impl fmt::Display for GaussMatrix {
    /// The matrix file format: whitespace-separated literals, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.entries {
            let line: Vec<String> = r.iter().map(|z| z.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Determinant of the column submatrix in the given order.
pub fn det(m: &GaussMatrix, cols: &[usize]) -> Result<GaussRational> {
    if cols.len() != m.rows {
        return Err(Error::Arity(format!(
            "determinant needs {} columns, got {}",
            m.rows,
            cols.len()
        )));
    }
    if let Some(&c) = cols.iter().find(|&&c| c >= m.cols) {
        return Err(Error::Arity(format!("column {} out of range", c + 1)));
    }
    let mut a = m.select_columns(cols).entries;
    let n = a.len();
    let mut d = GaussRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(GaussRational::zero());
        };
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        let piv = a[k][k].clone();
        d = &d * &piv;
        let inv = piv.inv().expect("nonzero pivot");
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let factor = &a[r][k] * &inv;
            let (top, bottom) = a.split_at_mut(r);
            for (z, p) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *z -= &(&factor * p);
            }
        }
    }
    Ok(d)
}

/// Reduced row echelon form together with the pivot columns.
pub fn rref_with_pivots(m: &GaussMatrix) -> (GaussMatrix, Vec<usize>) {
    let mut a = m.entries.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, row);
        let inv = a[row][col].inv().expect("nonzero pivot");
        for z in a[row][col..].iter_mut() {
            *z = &*z * &inv;
        }
        let pivot_row = a[row].clone();
        for (r, target) in a.iter_mut().enumerate() {
            if r == row || target[col].is_zero() {
                continue;
            }
            let factor = target[col].clone();
            for (z, p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
                *z -= &(&factor * p);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (
        GaussMatrix {
            rows: m.rows,
            cols: m.cols,
            entries: a,
        },
        pivots,
    )
}

pub fn rref(m: &GaussMatrix) -> GaussMatrix {
    rref_with_pivots(m).0
}

pub fn rank(m: &GaussMatrix) -> usize {
    rref_with_pivots(m).1.len()
}

/// Rank of the column set `cols`.
pub fn column_rank(m: &GaussMatrix, cols: ElemSet) -> usize {
    rank(&m.select_columns(&cols.to_vec()))
}

/// The nonzero rows of the reduced row echelon form: a full-row-rank matrix
/// with the same row space, hence the same kernel and column matroid.
pub fn row_basis(m: &GaussMatrix) -> GaussMatrix {
    let (r, pivots) = rref_with_pivots(m);
    GaussMatrix {
        rows: pivots.len(),
        cols: m.cols,
        entries: r.entries.into_iter().take(pivots.len()).collect(),
    }
}

/// A basis of `{x : m x = 0}`, one vector per free column.
pub fn kernel_basis(m: &GaussMatrix) -> Vec<Vec<GaussRational>> {
    let (r, pivots) = rref_with_pivots(m);
    let free = (0..m.cols).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut x = vec![GaussRational::zero(); m.cols];
        x[f] = GaussRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = -&r.entries[i][f];
        }
        x
    })
    .collect()
}

pub fn is_in_kernel(m: &GaussMatrix, x: &[GaussRational]) -> bool {
    x.len() == m.cols && m.mul_vec(x).iter().all(GaussRational::is_zero)
}

fn is_circuit_of(m: &GaussMatrix, support: ElemSet) -> bool {
    !support.is_empty()
        && column_rank(m, support) == support.len() - 1
        && support
            .iter()
            .all(|x| column_rank(m, support.without(x)) == support.len() - 1)
}

/// Kernel vector supported exactly on the circuit `support`, by Cramer's rule:
/// for `support = {x_0 < .. < x_k}` and a completion `A`,
/// `c_{x_i} = (-1)^i det(support \ x_i, A)`.
///
/// `A` is the lexicographically first set completing `support \ x_0` to a basis.
pub fn circuit_vector(m: &GaussMatrix, support: ElemSet) -> Result<Vec<GaussRational>> {
    let m = row_basis(m);
    if !is_circuit_of(&m, support) {
        return Err(Error::NotACircuit(support));
    }
    let x0 = support.min().expect("nonempty");
    let base = support.without(x0);
    let outside = ElemSet::full(m.cols).difference(support);
    let need = m.rows - base.len();
    let completion = outside
        .subsets_of_size(need)
        .find(|a| column_rank(&m, base.union(*a)) == m.rows)
        .ok_or_else(|| Error::Internal("no completion for an independent set".into()))?;
    circuit_vector_with(&m, support, completion)
}

/// Cramer vector for an explicit completion. `m` must have full row rank and
/// `(support \ x) ∪ completion` must be a basis for some (equivalently every) `x`.
pub fn circuit_vector_with(
    m: &GaussMatrix,
    support: ElemSet,
    completion: ElemSet,
) -> Result<Vec<GaussRational>> {
    let elems = support.to_vec();
    let tail = completion.to_vec();
    let mut x = vec![GaussRational::zero(); m.cols];
    for (i, &e) in elems.iter().enumerate() {
        let mut cols: Vec<usize> = elems.iter().copied().filter(|&y| y != e).collect();
        cols.extend(&tail);
        let d = det(m, &cols)?;
        x[e] = if i % 2 == 0 { d } else { -d };
    }
    if x.iter().all(GaussRational::is_zero) {
        return Err(Error::Internal(format!(
            "completion {completion} does not complete {support}"
        )));
    }
    Ok(x)
}

/// A real affine form `coeffs . x + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinForm {
    pub coeffs: Vec<BigRational>,
    pub constant: BigRational,
}

impl LinForm {
    pub fn zero(n: usize) -> Self {
        LinForm {
            coeffs: vec![BigRational::zero(); n],
            constant: BigRational::zero(),
        }
    }

    pub fn from_ints(coeffs: &[i64], constant: i64) -> Self {
        LinForm {
            coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
            constant: BigRational::from_integer(constant.into()),
        }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.coeffs
            .iter()
            .zip(x)
            .fold(self.constant.clone(), |acc, (a, b)| acc + a * b)
    }

    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn scaled(&self, s: &BigRational) -> Self {
        LinForm {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            constant: &self.constant * s,
        }
    }

    fn add(&self, o: &LinForm) -> Self {
        LinForm {
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &o.constant,
        }
    }

    /// Positive rescaling making the first nonzero coefficient `±1`.
    fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(c) => self.scaled(&c.abs().recip()),
            None => self.clone(),
        }
    }
}

/// Equalities `f = 0` and strict inequalities `g > 0` over named real variables.
#[derive(Clone, Debug, Default)]
pub struct LinSystem {
    pub variables: Vec<String>,
    pub equalities: Vec<LinForm>,
    pub strict: Vec<LinForm>,
}

impl LinSystem {
    pub fn new(variables: Vec<String>) -> Self {
        LinSystem {
            variables,
            ..Default::default()
        }
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }
}

/// Substitutes `x_k = -(rest of eq) / eq_k` into `f`.
fn substitute(f: &LinForm, eq: &LinForm, k: usize) -> LinForm {
    if f.coeffs[k].is_zero() {
        return f.clone();
    }
    let s = -(&f.coeffs[k] / &eq.coeffs[k]);
    let mut out = f.add(&eq.scaled(&s));
    out.coeffs[k] = BigRational::zero();
    out
}

/// Exact feasibility of a mixed system over the reals.
///
/// Equalities are eliminated by substitution; the remaining strict system is
/// projected one variable at a time by Fourier-Motzkin. For strict inequalities
/// the projection is exact: `x_k` has a value iff every lower bound lies strictly
/// below every upper bound, which is the positive combination of each pair.
pub fn fm_feasible(sys: &LinSystem) -> bool {
    let mut eqs = sys.equalities.clone();
    let mut ineqs = sys.strict.clone();
    while let Some(eq) = eqs.pop() {
        match eq.coeffs.iter().position(|c| !c.is_zero()) {
            None => {
                if !eq.constant.is_zero() {
                    return false;
                }
            }
            Some(k) => {
                for f in eqs.iter_mut() {
                    *f = substitute(f, &eq, k);
                }
                for g in ineqs.iter_mut() {
                    *g = substitute(g, &eq, k);
                }
            }
        }
    }
    for k in 0..sys.nvars() {
        let (mut lower, mut upper, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for g in ineqs {
            if g.coeffs[k].is_positive() {
                lower.push(g);
            } else if g.coeffs[k].is_negative() {
                upper.push(g);
            } else {
                rest.push(g);
            }
        }
        for lo in &lower {
            for up in &upper {
                let combined = lo.scaled(&-&up.coeffs[k]).add(&up.scaled(&lo.coeffs[k]));
                let combined = combined.normalized();
                if !rest.contains(&combined) {
                    rest.push(combined);
                }
            }
        }
        ineqs = rest;
    }
    ineqs
        .iter()
        .all(|g| g.is_constant() && g.constant.is_positive())
}

/// Whether some row combination `w = c^T m` with complex `c` has phase vector `target`.
///
/// Unknowns are the real and imaginary parts of `c`. Off the support both parts
/// of `w_e` vanish; on the support `w_e conj(tau_e)` is real and positive.
pub fn phase_vector_realizable(m: &GaussMatrix, target: &PhaseVector) -> Result<bool> {
    if target.ground() != ElemSet::full(m.cols) {
        return Err(Error::Arity(format!(
            "target ground {} does not match {} columns",
            target.ground(),
            m.cols
        )));
    }
    let vars = (0..m.rows)
        .flat_map(|r| [format!("re c{}", r + 1), format!("im c{}", r + 1)])
        .collect();
    let mut sys = LinSystem::new(vars);
    let n = sys.nvars();
    for e in 0..m.cols {
        // Re(w_e) and Im(w_e) as forms in (u_r, v_r)
        let mut re = LinForm::zero(n);
        let mut im = LinForm::zero(n);
        for r in 0..m.rows {
            let z = m.get(r, e);
            re.coeffs[2 * r] = z.re.clone();
            re.coeffs[2 * r + 1] = -z.im.clone();
            im.coeffs[2 * r] = z.im.clone();
            im.coeffs[2 * r + 1] = z.re.clone();
        }
        let t = target.get(e).to_gauss();
        if t.is_zero() {
            sys.equalities.push(re);
            sys.equalities.push(im);
        } else {
            // w * conj(t) = (a Re + b Im) + i (a Im - b Re)
            sys.strict.push(re.scaled(&t.re).add(&im.scaled(&t.im)));
            sys.equalities.push(im.scaled(&t.re).add(&re.scaled(&-&t.im)));
        }
    }
    Ok(fm_feasible(&sys))
}

/// Convenience: `BigRational` from a pair of machine integers.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{phase_of, Phase};

    fn g(s: &str) -> GaussRational {
        s.parse().unwrap()
    }

    fn w1() -> GaussMatrix {
        GaussMatrix::from_literals(&[&["1", "1+i", "1", "0"], &["1+i", "3i", "0", "1"]])
    }

    #[test]
    fn det_examples() {
        let id = GaussMatrix::identity(2);
        assert_eq!(det(&id, &[0, 1]).unwrap(), g("1"));
        assert_eq!(det(&id, &[1, 0]).unwrap(), g("-1"));
        let m = GaussMatrix::from_literals(&[&["1", "1+i"], &["1+i", "3i"]]);
        // 3i - (1+i)^2 = 3i - 2i
        assert_eq!(det(&m, &[0, 1]).unwrap(), g("i"));
        assert!(matches!(det(&id, &[0]), Err(Error::Arity(_))));
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = GaussMatrix::from_literals(&[
            &["1+i", "2", "-i"],
            &["3", "-1+2i", "1"],
            &["0", "i", "2-i"],
        ]);
        let a = |r: usize, c: usize| m.get(r, c).clone();
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &a(r1, c1) * &a(r2, c2) - &a(r1, c2) * &a(r2, c1);
        let expected = &a(0, 0) * &minor(1, 2, 1, 2) - &a(0, 1) * &minor(1, 2, 0, 2)
            + &a(0, 2) * &minor(1, 2, 0, 1);
        assert_eq!(det(&m, &[0, 1, 2]).unwrap(), expected);
        assert_eq!(det(&m, &[1, 0, 2]).unwrap(), -expected.clone());
        assert_eq!(det(&m, &[1, 2, 0]).unwrap(), expected);
    }

    #[test]
    fn rref_identity_is_fixed() {
        let id = GaussMatrix::identity(3);
        assert_eq!(rref(&id), id);
    }

    #[test]
    fn rref_of_w1() {
        let expected = GaussMatrix::from_literals(&[&["1", "0", "3", "-1+i"], &["0", "1", "-1+i", "-i"]]);
        assert_eq!(rref(&w1()), expected);
    }

    #[test]
    fn kernel_examples() {
        let m = GaussMatrix::from_int_pairs(&[&[(1, 0), (0, 0), (1, 0)], &[(0, 0), (1, 0), (1, 0)]]);
        let k = kernel_basis(&m);
        assert_eq!(k, vec![vec![g("-1"), g("-1"), g("1")]]);
        assert!(kernel_basis(&GaussMatrix::identity(2)).is_empty());
        let rk = rank(&w1());
        for v in kernel_basis(&w1()) {
            assert!(is_in_kernel(&w1(), &v));
        }
        assert_eq!(kernel_basis(&w1()).len(), 4 - rk);
    }

    #[test]
    fn circuit_vector_examples() {
        let m = GaussMatrix::from_int_pairs(&[&[(1, 0), (0, 0), (1, 0)], &[(0, 0), (1, 0), (1, 0)]]);
        let v = circuit_vector(&m, ElemSet::full(3)).unwrap();
        assert!(is_in_kernel(&m, &v));
        assert_eq!(v, vec![g("-1"), g("-1"), g("1")]);

        let row = GaussMatrix::from_int_pairs(&[&[(1, 0), (1, 0)]]);
        let v = circuit_vector(&row, ElemSet::full(2)).unwrap();
        assert_eq!(v, vec![g("1"), g("-1")]);

        let v = circuit_vector(&w1(), ElemSet::from_elems([0, 1, 2])).unwrap();
        assert!(is_in_kernel(&w1(), &v));
        let expect = [g("-3"), g("1-i"), g("1"), g("0")];
        let ratio = &v[2] / &expect[2];
        for (a, b) in v.iter().zip(&expect) {
            assert_eq!(a, &(b * &ratio));
        }
        assert_eq!(
            circuit_vector(&w1(), ElemSet::from_elems([0, 1])),
            Err(Error::NotACircuit(ElemSet::from_elems([0, 1])))
        );
    }

    #[test]
    fn circuit_vector_on_loop_and_rank_deficient_input() {
        let m = GaussMatrix::from_int_pairs(&[&[(1, 0), (0, 0), (2, 0)], &[(2, 0), (0, 0), (4, 0)]]);
        let v = circuit_vector(&m, ElemSet::singleton(1)).unwrap();
        assert!(is_in_kernel(&m, &v));
        let v = circuit_vector(&m, ElemSet::from_elems([0, 2])).unwrap();
        assert!(is_in_kernel(&m, &v));
        assert_eq!(phase_of(&v[0]), -phase_of(&v[2]));
    }

    #[test]
    fn fm_examples() {
        let mut s = LinSystem::new(vec!["x".into()]);
        s.strict.push(LinForm::from_ints(&[1], 0));
        s.strict.push(LinForm::from_ints(&[-1], 1));
        assert!(fm_feasible(&s));
        let mut s = LinSystem::new(vec!["x".into()]);
        s.strict.push(LinForm::from_ints(&[1], 0));
        s.strict.push(LinForm::from_ints(&[-1], 0));
        assert!(!fm_feasible(&s));
        let mut s = LinSystem::new(vec!["x".into(), "y".into()]);
        s.equalities.push(LinForm::from_ints(&[1, -1], 0));
        s.strict.push(LinForm::from_ints(&[1, 1], -1));
        s.strict.push(LinForm::from_ints(&[-1, 0], 1));
        assert!(fm_feasible(&s));
        s.equalities.push(LinForm::from_ints(&[0, 0], 3));
        assert!(!fm_feasible(&s));
    }

    #[test]
    fn realizability_on_w1() {
        let target = PhaseVector::from_dense(vec![
            phase_of(&g("2+i")),
            phase_of(&g("1+4i")),
            Phase::one(),
            Phase::one(),
        ]);
        assert!(phase_vector_realizable(&w1(), &target).unwrap());
        let zero = PhaseVector::zero(ElemSet::full(4));
        assert!(phase_vector_realizable(&w1(), &zero).unwrap());
        // witness c = (1, 1)
        let w: Vec<_> = (0..4).map(|e| w1().get(0, e) + w1().get(1, e)).collect();
        assert_eq!(w, vec![g("2+i"), g("1+4i"), g("1"), g("1")]);
    }
}
