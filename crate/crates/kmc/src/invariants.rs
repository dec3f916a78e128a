//! Invariant rings `P_J = H^*(BT; F)^{W_J}` computed degreewise as joint
//! kernels over the generators, the degree-4 special elements, and the
//! sum-identity checks.
//!
//! Invariance under the generators is exactly `W_J`-invariance, also for
//! infinite `W_J`, so nothing is ever enumerated. The [`Lattice`] caches
//! every subspace expression (invariant rings, sums, intersections) per
//! field and truncation; both assembly pipelines and the torsion scan
//! draw from it.

use crate::cartan::CartanMatrix;
use crate::field::{Field, Rationals};
use crate::graded::{GradedSubspace, MonomialBasis};
use crate::matrix::{LinalgError, Mat};
use crate::series::TruncatedSeries;
use crate::weyl::{ReflectionAction, SubstitutionTables};
use std::collections::BTreeMap;
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("the operation requires an indefinite Cartan matrix")]
    RequiresIndefinite,
    #[error("degree-4 full invariants have dimension {found} (symmetrizable = {symmetrizable}); contradicts the closed-form classification")]
    UnexpectedDimension { found: usize, symmetrizable: bool },
    #[error("the pair {{1,2}} is not infinite (a12*a21 = {product} < 4)")]
    PairNotInfinite { product: i64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Subspace expressions over the invariant-ring lattice. `P(mask)` is the
/// invariant ring of the subset encoded by the low three bits; `P(0)` is
/// the full polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Expr {
    P(u8),
    Sum(Vec<Expr>),
    Cap(Vec<Expr>),
}

impl Expr {
    pub fn p(indices: &[usize]) -> Expr {
        let mut mask = 0u8;
        for &i in indices {
            assert!(i < 3);
            mask |= 1 << i;
        }
        Expr::P(mask)
    }

    pub fn full() -> Expr {
        Expr::P(0)
    }

    pub fn sum(children: Vec<Expr>) -> Expr {
        let mut flat = Vec::new();
        for c in children {
            match c {
                Expr::Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort();
        flat.dedup();
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Expr::Sum(flat)
        }
    }

    pub fn cap(children: Vec<Expr>) -> Expr {
        let mut flat = Vec::new();
        for c in children {
            match c {
                Expr::Cap(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort();
        flat.dedup();
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Expr::Cap(flat)
        }
    }

    /// Render with indices translated back to the caller's labeling:
    /// canonical index `c` prints as `to_user[c] + 1`.
    pub fn render(&self, to_user: &[usize; 3]) -> String {
        match self {
            Expr::P(mask) => {
                if *mask == 0 {
                    "P".to_string()
                } else {
                    let mut idx: Vec<usize> =
                        (0..3).filter(|i| mask & (1 << i) != 0).map(|i| to_user[i] + 1).collect();
                    idx.sort_unstable();
                    let digits: String = idx.into_iter().map(|i| i.to_string()).collect();
                    format!("P_{digits}")
                }
            }
            Expr::Sum(children) => {
                let parts: Vec<String> = children.iter().map(|c| c.render(to_user)).collect();
                format!("({})", parts.join(" + "))
            }
            Expr::Cap(children) => {
                let parts: Vec<String> = children.iter().map(|c| c.render(to_user)).collect();
                parts.join(" ∩ ")
            }
        }
    }
}

/// An invariant ring with its per-even-degree dimensions.
#[derive(Clone, Debug)]
pub struct InvariantRing<F: Field> {
    pub subset: Vec<usize>,
    pub space: Rc<GradedSubspace<F>>,
    /// Dimension at polynomial degree `k` (cohomological degree `2k`).
    pub dims: Vec<usize>,
}

/// Memoized evaluator for subspace expressions over one reflection
/// action, field and truncation.
pub struct Lattice<F: Field> {
    field: F,
    trunc: usize,
    action: ReflectionAction,
    tables: Vec<SubstitutionTables<F>>,
    cache: BTreeMap<Expr, Rc<GradedSubspace<F>>>,
}

impl<F: Field> Lattice<F> {
    pub fn new(field: F, action: ReflectionAction, trunc: usize) -> Self {
        let tables = (0..3)
            .map(|j| SubstitutionTables::new(&field, action.generator(j)))
            .collect();
        Lattice { field, trunc, action, tables, cache: BTreeMap::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn action(&self) -> &ReflectionAction {
        &self.action
    }

    pub fn cartan(&self) -> &CartanMatrix {
        self.action.cartan()
    }

    /// Substitution matrix of generator `j` at polynomial degree `k`.
    pub fn substitution(&mut self, j: usize, k: usize) -> Mat<F> {
        self.tables[j].matrix(k).clone()
    }

    pub fn subspace(&mut self, expr: &Expr) -> Rc<GradedSubspace<F>> {
        if let Some(hit) = self.cache.get(expr) {
            return Rc::clone(hit);
        }
        let value = Rc::new(self.eval(expr));
        self.cache.insert(expr.clone(), Rc::clone(&value));
        value
    }

    fn eval(&mut self, expr: &Expr) -> GradedSubspace<F> {
        match expr {
            Expr::P(0) => GradedSubspace::full_ring(self.field.clone(), self.trunc),
            Expr::P(mask) => {
                let j = (0..3).rev().find(|j| mask & (1 << j) != 0).expect("nonzero mask");
                let base = self.subspace(&Expr::P(mask & !(1 << j)));
                self.restrict(&base, j)
            }
            Expr::Sum(children) => {
                let spaces: Vec<Rc<GradedSubspace<F>>> =
                    children.iter().map(|c| self.subspace(c)).collect();
                let mut acc = (*spaces[0]).clone();
                for s in &spaces[1..] {
                    acc = acc.sum(s).expect("lattice spaces share field and truncation");
                }
                acc
            }
            Expr::Cap(children) => {
                let spaces: Vec<Rc<GradedSubspace<F>>> =
                    children.iter().map(|c| self.subspace(c)).collect();
                let mut acc = (*spaces[0]).clone();
                for s in &spaces[1..] {
                    acc = acc.intersect(s).expect("lattice spaces share field and truncation");
                }
                acc
            }
        }
    }

    /// Cut `base` down to the part fixed by generator `j`: degreewise the
    /// kernel of `(S_j - I)` restricted to the given basis.
    fn restrict(&mut self, base: &GradedSubspace<F>, j: usize) -> GradedSubspace<F> {
        let f = self.field.clone();
        let mut bases = Vec::with_capacity(base.max_poly_degree() + 1);
        for k in 0..=base.max_poly_degree() {
            let v = base.basis(k);
            if v.cols() == 0 {
                bases.push(v.clone());
                continue;
            }
            let s = self.tables[j].matrix(k);
            let n = s.rows();
            let full_basis = v.cols() == n && *v == Mat::identity(&f, n);
            // (S - I) * V without materializing S - I; for the full ring
            // the product is S - I itself.
            let mut m = Mat::zero(&f, n, v.cols());
            for r in 0..n {
                for t in 0..n {
                    let a = s.at(r, t);
                    let a = if r == t { f.sub(a, &f.one()) } else { a.clone() };
                    if f.is_zero(&a) {
                        continue;
                    }
                    if full_basis {
                        *m.at_mut(r, t) = a;
                        continue;
                    }
                    for c in 0..v.cols() {
                        let b = v.at(t, c);
                        if f.is_zero(b) {
                            continue;
                        }
                        let prod = f.mul(&a, b);
                        let cur = m.at(r, c);
                        *m.at_mut(r, c) = f.add(cur, &prod);
                    }
                }
            }
            let ker = m.kernel(&f);
            if full_basis {
                bases.push(ker);
                continue;
            }
            let mut cols = Vec::with_capacity(ker.cols());
            for c in 0..ker.cols() {
                let x = ker.col(c);
                let mut out = vec![f.zero(); v.rows()];
                for (t, xt) in x.iter().enumerate() {
                    if f.is_zero(xt) {
                        continue;
                    }
                    for r in 0..v.rows() {
                        let e = v.at(r, t);
                        if f.is_zero(e) {
                            continue;
                        }
                        let prod = f.mul(e, xt);
                        out[r] = f.add(&out[r], &prod);
                    }
                }
                f.normalize_vec(&mut out);
                cols.push(out);
            }
            bases.push(Mat::from_cols(&f, v.rows(), &cols));
        }
        GradedSubspace::from_bases(f, self.trunc, bases)
    }

    pub fn dims(&mut self, expr: &Expr) -> Vec<usize> {
        self.subspace(expr).dims()
    }

    pub fn dims_series(&mut self, expr: &Expr) -> TruncatedSeries {
        self.subspace(expr).dims_series()
    }

    /// Quotient dimensions `big / small` per polynomial degree, verifying
    /// containment.
    pub fn quotient_dims(&mut self, big: &Expr, small: &Expr) -> Result<Vec<usize>, LinalgError> {
        let b = self.subspace(big);
        let s = self.subspace(small);
        b.quotient_dims(&s)
    }

    /// Whether generator `j` acts as the identity on the degree-2 piece
    /// (and hence everywhere): the degenerate mod-p case.
    pub fn generator_is_identity(&mut self, j: usize) -> bool {
        let f = self.field.clone();
        self.action.simple_root_in(j, &f).iter().all(|c| f.is_zero(c))
    }
}

/// `P_J` for an arbitrary subset, finite or infinite `W_J`.
pub fn invariant_subspace<F: Field>(lat: &mut Lattice<F>, subset: &[usize]) -> InvariantRing<F> {
    let expr = Expr::p(subset);
    let space = lat.subspace(&expr);
    let dims = space.dims();
    let mut sorted: Vec<usize> = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    InvariantRing { subset: sorted, space, dims }
}

/// Integer coordinates on the degree-4 monomial basis rendered as a
/// polynomial in the degree-2 generators.
pub fn quadratic_to_string(coords: &[i64]) -> String {
    let basis = MonomialBasis::new(2);
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in coords.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let m = basis.monomials()[i];
        let mut term = String::new();
        for (v, &e) in m.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !term.is_empty() {
                term.push('*');
            }
            if e == 1 {
                term.push_str(&format!("w{}", v + 1));
            } else {
                term.push_str(&format!("w{}^{}", v + 1, e));
            }
        }
        let piece = match c {
            1 => term,
            -1 => format!("-{term}"),
            c => format!("{c}*{term}"),
        };
        if parts.is_empty() {
            parts.push(piece);
        } else if c < 0 {
            parts.push(format!("- {}", piece.trim_start_matches('-')));
        } else {
            parts.push(format!("+ {piece}"));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

/// The degree-4 full invariant over `Q`, when the matrix is indefinite:
/// a primitive integer spanning vector for symmetrizable input, absent
/// for nonsymmetrizable input. Any other degree-4 dimension contradicts
/// the closed-form classification and is surfaced, not silently
/// accepted.
pub fn killing_form(lat: &mut Lattice<Rationals>) -> Result<Option<Vec<i64>>, InvariantError> {
    use crate::cartan::MatrixType;
    let cartan = lat.cartan().clone();
    if cartan.classify_type().map(|t| t != MatrixType::Indefinite).unwrap_or(true) {
        return Err(InvariantError::RequiresIndefinite);
    }
    assert!(lat.trunc() >= 4, "killing form needs the degree-4 piece");
    let symmetrizable = cartan.symmetrizable();
    let space = lat.subspace(&Expr::P(0b111));
    let basis = space.basis(2);
    match (symmetrizable, basis.cols()) {
        (false, 0) => Ok(None),
        (true, 1) => {
            let col = basis.col(0);
            let coords: Vec<i64> = col
                .iter()
                .map(|e| i64::try_from(e).expect("primitive vector fits i64"))
                .collect();
            Ok(Some(coords))
        }
        (symmetrizable, found) => Err(InvariantError::UnexpectedDimension { found, symmetrizable }),
    }
}

/// Report produced with the explicit degree-4 element of the infinite
/// pair `{1,2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaReport {
    /// Coordinates on the degree-4 monomial basis.
    pub kappa: Vec<i64>,
    pub fixed_by_sigma1: bool,
    pub fixed_by_sigma2: bool,
}

/// `kappa = a12 w1^2 + a12 a21 w1 w2 + a21 w2^2 + a12 a31 w1 w3
/// + a21 a32 w2 w3`, with an exact check that both generators of the
/// pair fix it over `Q`.
pub fn build_kappa(m: &CartanMatrix) -> Result<KappaReport, InvariantError> {
    let product = m.pair_product(0, 1);
    if product < 4 {
        return Err(InvariantError::PairNotInfinite { product });
    }
    let a12 = m.entry(0, 1);
    let a21 = m.entry(1, 0);
    let a31 = m.entry(2, 0);
    let a32 = m.entry(2, 1);
    let basis = MonomialBasis::new(2);
    let mut kappa = vec![0i64; basis.len()];
    kappa[basis.index_of([2, 0, 0])] = a12;
    kappa[basis.index_of([1, 1, 0])] = a12 * a21;
    kappa[basis.index_of([0, 2, 0])] = a21;
    kappa[basis.index_of([1, 0, 1])] = a12 * a31;
    kappa[basis.index_of([0, 1, 1])] = a21 * a32;

    let f = Rationals;
    let action = ReflectionAction::new(m);
    let vec: Vec<_> = kappa.iter().map(|&c| f.from_int(c)).collect();
    let fixed = |j: usize| {
        let s = crate::weyl::substitution_matrix(action.generator(j), 2, &f);
        let image: Vec<_> = (0..s.rows())
            .map(|r| {
                let mut acc = f.zero();
                for (t, vt) in vec.iter().enumerate() {
                    if f.is_zero(vt) {
                        continue;
                    }
                    let prod = f.mul(s.at(r, t), vt);
                    acc = f.add(&acc, &prod);
                }
                acc
            })
            .collect();
        image == vec
    };
    Ok(KappaReport { kappa, fixed_by_sigma1: fixed(0), fixed_by_sigma2: fixed(1) })
}

/// Outcome of comparing `P` with a sum of invariant rings degreewise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SumIdentityOutcome {
    HoldsAllDegrees,
    FirstFailure { degree: usize, sum_dim: usize, full_dim: usize },
    /// Some generator of the parts acts as the identity modulo p, so its
    /// invariant ring is trivially everything; the comparison would be
    /// vacuous and is reported as degenerate instead.
    DegenerateGenerator { indices: Vec<usize> },
}

/// Compare `dim (sum of P_J for J in parts)` with `dim P` for all even
/// degrees up to the lattice truncation.
pub fn check_sum_identity<F: Field>(lat: &mut Lattice<F>, parts: &[Vec<usize>]) -> SumIdentityOutcome {
    assert!(!parts.is_empty(), "parts must be nonempty");
    let mut used: Vec<usize> = parts.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let degenerate: Vec<usize> =
        used.into_iter().filter(|&j| lat.generator_is_identity(j)).collect();
    if !degenerate.is_empty() {
        return SumIdentityOutcome::DegenerateGenerator { indices: degenerate };
    }
    let sum_expr = Expr::sum(parts.iter().map(|p| Expr::p(p)).collect());
    let sum_dims = lat.dims(&sum_expr);
    let full_dims = lat.dims(&Expr::full());
    for (k, (s, f)) in sum_dims.iter().zip(&full_dims).enumerate() {
        if s != f {
            return SumIdentityOutcome::FirstFailure { degree: 2 * k, sum_dim: *s, full_dim: *f };
        }
    }
    SumIdentityOutcome::HoldsAllDegrees
}
