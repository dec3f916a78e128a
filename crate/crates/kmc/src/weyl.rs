//! The Weyl group action on the weight polynomial ring: reflection
//! matrices, induced substitutions on each graded piece, finite subgroup
//! enumeration, and Molien series.
//!
//! Convention: the generators act on the row vector of weights,
//! `(w1, w2, w3) -> (w1, w2, w3) (I - A_j)`, so the image of the variable
//! `w_r` is read off column `r` of the generator matrix, and the induced
//! substitution matrix at polynomial degree 1 is the generator matrix
//! itself. Substitution matrices act on coordinate vectors from the left
//! and compose covariantly: `sub(g * h) = sub(g) * sub(h)`.

use crate::cartan::CartanMatrix;
use crate::field::{Field, FieldSpec};
use crate::graded::MonomialBasis;
use crate::matrix::Mat;
use crate::series::TruncatedSeries;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("the subgroup generated by {0:?} is infinite")]
    InfiniteGroup(Vec<usize>),
    #[error("Molien series are only computed over the rationals (the averaging needs |G| invertible)")]
    ModularNotSupported,
}

/// Ceiling on closure size; the largest finite rank-3 Weyl group has
/// order 48.
const GROUP_CEILING: usize = 64;

pub type IMat3 = [[i128; 3]; 3];

pub const IDENTITY3: IMat3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// The three reflection generators of a Cartan matrix together with the
/// simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionAction {
    cartan: CartanMatrix,
    generators: [IMat3; 3],
}

impl ReflectionAction {
    pub fn new(cartan: &CartanMatrix) -> Self {
        let generators = [
            reflection_matrix(cartan, 0),
            reflection_matrix(cartan, 1),
            reflection_matrix(cartan, 2),
        ];
        ReflectionAction { cartan: cartan.clone(), generators }
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cartan
    }

    pub fn generator(&self, j: usize) -> &IMat3 {
        &self.generators[j]
    }

    /// Coordinates of the simple root `alpha_j = sum_i a_ij w_i`.
    pub fn simple_root(&self, j: usize) -> [i64; 3] {
        [self.cartan.entry(0, j), self.cartan.entry(1, j), self.cartan.entry(2, j)]
    }

    /// The simple root reduced into a field; zero for all `i` exactly when
    /// the generator acts as the identity there.
    pub fn simple_root_in<F: Field>(&self, j: usize, f: &F) -> Vec<F::Elem> {
        self.simple_root(j).iter().map(|&c| f.from_int(c)).collect()
    }
}

/// `I_3 - A_j`: the identity away from column `j`, and `e_j - (column j
/// of A)` there.
pub fn reflection_matrix(cartan: &CartanMatrix, j: usize) -> IMat3 {
    let mut m = IDENTITY3;
    for r in 0..3 {
        m[r][j] -= cartan.entry(r, j) as i128;
    }
    m
}

pub fn mat3_mul_checked(a: &IMat3, b: &IMat3) -> Option<IMat3> {
    let mut out = [[0i128; 3]; 3];
    for r in 0..3 {
        for c in 0..3 {
            let mut acc: i128 = 0;
            for k in 0..3 {
                acc = acc.checked_add(a[r][k].checked_mul(b[k][c])?)?;
            }
            out[r][c] = acc;
        }
    }
    Some(out)
}

pub fn mat3_mul(a: &IMat3, b: &IMat3) -> IMat3 {
    mat3_mul_checked(a, b).expect("3x3 integer product overflow")
}

/// Incrementally built matrices of the substitution induced by a fixed
/// 3x3 integer matrix on every graded piece. Table `k` is the matrix on
/// the degree-`k` monomial basis.
#[derive(Clone, Debug)]
pub struct SubstitutionTables<F: Field> {
    field: F,
    g: IMat3,
    /// `images[r]` = coordinates of the image of variable `w_r`.
    var_images: [[F::Elem; 3]; 3],
    tables: Vec<Mat<F>>,
}

impl<F: Field> SubstitutionTables<F> {
    pub fn new(f: &F, g: &IMat3) -> Self {
        let col = |c: usize| -> [F::Elem; 3] {
            [
                f.from_bigint(&BigInt::from(g[0][c])),
                f.from_bigint(&BigInt::from(g[1][c])),
                f.from_bigint(&BigInt::from(g[2][c])),
            ]
        };
        SubstitutionTables {
            field: f.clone(),
            g: *g,
            var_images: [col(0), col(1), col(2)],
            tables: vec![Mat::identity(f, 1)],
        }
    }

    pub fn matrix(&mut self, k: usize) -> &Mat<F> {
        self.ensure(k);
        &self.tables[k]
    }

    fn ensure(&mut self, k: usize) {
        let f = self.field.clone();
        while self.tables.len() <= k {
            let deg = self.tables.len();
            let prev_basis = MonomialBasis::new(deg - 1);
            let basis = MonomialBasis::new(deg);
            let prev = &self.tables[deg - 1];
            let mut next = Mat::zero(&f, basis.len(), basis.len());
            for (col, &mono) in basis.monomials().iter().enumerate() {
                // Split the monomial as (predecessor) * w_v and multiply
                // the predecessor's image by the image of w_v.
                let v = (0..3).find(|&i| mono[i] > 0).expect("positive degree");
                let mut pred = mono;
                pred[v] -= 1;
                let pred_col = prev_basis.index_of(pred);
                for (row, &pm) in prev_basis.monomials().iter().enumerate() {
                    let c = prev.at(row, pred_col);
                    if f.is_zero(c) {
                        continue;
                    }
                    for t in 0..3 {
                        let lv = &self.var_images[v][t];
                        if f.is_zero(lv) {
                            continue;
                        }
                        let mut target = pm;
                        target[t] += 1;
                        let ti = basis.index_of(target);
                        let add = f.mul(c, lv);
                        let cur = next.at(ti, col);
                        *next.at_mut(ti, col) = f.add(cur, &add);
                    }
                }
            }
            self.tables.push(next);
        }
    }

    pub fn generator_matrix(&self) -> &IMat3 {
        &self.g
    }
}

/// Matrix of the induced substitution of `g` on the degree-`k` monomial
/// basis, with entries reduced into `f`.
pub fn substitution_matrix<F: Field>(g: &IMat3, k: usize, f: &F) -> Mat<F> {
    let mut tables = SubstitutionTables::new(f, g);
    tables.matrix(k).clone()
}

/// A finite Weyl subgroup, enumerated as integer matrices closed under
/// multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteWeylGroup {
    pub generating_indices: Vec<usize>,
    pub elements: Vec<IMat3>,
}

impl FiniteWeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// Closure of the generators indexed by `J` under multiplication.
/// Refuses early when a pair has infinite Coxeter order; the element
/// ceiling and overflow checks guard every other divergence.
pub fn enumerate_group(action: &ReflectionAction, j_set: &[usize]) -> Result<FiniteWeylGroup, WeylError> {
    let mut indices: Vec<usize> = j_set.to_vec();
    indices.sort_unstable();
    indices.dedup();
    for (a, &i) in indices.iter().enumerate() {
        for &j in indices.iter().skip(a + 1) {
            if action.cartan().pair_product(i, j) >= 4 {
                return Err(WeylError::InfiniteGroup(indices.clone()));
            }
        }
    }
    let mut elements: Vec<IMat3> = vec![IDENTITY3];
    let mut frontier = vec![IDENTITY3];
    while let Some(e) = frontier.pop() {
        for &j in &indices {
            let Some(prod) = mat3_mul_checked(&e, action.generator(j)) else {
                return Err(WeylError::InfiniteGroup(indices.clone()));
            };
            if !elements.contains(&prod) {
                if elements.len() >= GROUP_CEILING {
                    return Err(WeylError::InfiniteGroup(indices.clone()));
                }
                elements.push(prod);
                frontier.push(prod);
            }
        }
    }
    Ok(FiniteWeylGroup { generating_indices: indices, elements })
}

/// Molien series of the group acting on the three degree-2 variables:
/// `(1/|G|) sum_g 1/det(I - t^2 g)`, expanded to `t^N`. Only defined over
/// the rationals; the coefficients are the invariant dimensions there.
pub fn molien_series(
    group: &FiniteWeylGroup,
    field: FieldSpec,
    trunc: usize,
) -> Result<TruncatedSeries, WeylError> {
    if field != FieldSpec::Rationals {
        return Err(WeylError::ModularNotSupported);
    }
    let mut total = vec![BigInt::zero(); trunc + 1];
    for g in &group.elements {
        // det(I - t^2 g) = 1 - tr(g) t^2 + m2(g) t^4 - det(g) t^6
        let tr = g[0][0] + g[1][1] + g[2][2];
        let m2 = principal_minor(g, 0, 1) + principal_minor(g, 0, 2) + principal_minor(g, 1, 2);
        let det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
            - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
            + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        let mut den = vec![BigInt::zero(); trunc + 1];
        den[0] = BigInt::one();
        if trunc >= 2 {
            den[2] = BigInt::from(-tr);
        }
        if trunc >= 4 {
            den[4] = BigInt::from(m2);
        }
        if trunc >= 6 {
            den[6] = BigInt::from(-det);
        }
        // Power series inverse of a polynomial with constant term 1.
        let mut inv = vec![BigInt::zero(); trunc + 1];
        inv[0] = BigInt::one();
        for n in 1..=trunc {
            let mut acc = BigInt::zero();
            for i in 1..=n.min(6) {
                if den[i].is_zero() {
                    continue;
                }
                acc += &den[i] * &inv[n - i];
            }
            inv[n] = -acc;
        }
        for (t, i) in total.iter_mut().zip(inv) {
            *t += i;
        }
    }
    let order = BigInt::from(group.order());
    let mut coeffs = Vec::with_capacity(trunc + 1);
    for t in total {
        let (q, r) = num_integer::Integer::div_rem(&t, &order);
        assert!(r.is_zero(), "Molien sum must be divisible by the group order");
        coeffs.push(i64::try_from(q).expect("Molien coefficient fits i64"));
    }
    Ok(TruncatedSeries::from_coeffs(coeffs))
}

fn principal_minor(g: &IMat3, i: usize, j: usize) -> i128 {
    g[i][i] * g[j][j] - g[i][j] * g[j][i]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::parse_matrix;
    use crate::field::{PrimeField, Rationals};

    const EXAMPLE: &str = "2,-1,-3;-3,2,-1;-2,-4,2";

    #[test]
    fn reflections_are_involutions() {
        for text in [EXAMPLE, "2,-2,-2;-2,2,-2;-2,-2,2", "2,-1,-1;-1,2,-1;-1,-1,2"] {
            let m = parse_matrix(text).unwrap();
            let action = ReflectionAction::new(&m);
            for j in 0..3 {
                let g = action.generator(j);
                assert_eq!(mat3_mul(g, g), IDENTITY3, "sigma_{}^2 != id for {}", j + 1, text);
            }
        }
    }

    #[test]
    fn example_simple_roots() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        assert_eq!(action.simple_root(2), [-3, -1, 2]);
        assert_eq!(action.simple_root(0), [2, -3, -2]);
        // sigma_3 sends w3 to 3 w1 + w2 - w3: column 3 of the generator.
        let g = action.generator(2);
        assert_eq!([g[0][2], g[1][2], g[2][2]], [3, 1, -1]);
    }

    #[test]
    fn coxeter_relations_hold_for_finite_pairs() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        // Pair {1,2} has product 3, Coxeter order 6: (s1 s2)^6 = 1.
        let s12 = mat3_mul(action.generator(0), action.generator(1));
        let mut p = IDENTITY3;
        for _ in 0..6 {
            p = mat3_mul(&p, &s12);
        }
        assert_eq!(p, IDENTITY3);
        // And no smaller power is the identity.
        let mut q = IDENTITY3;
        for _ in 0..5 {
            q = mat3_mul(&q, &s12);
            assert_ne!(q, IDENTITY3);
        }
    }

    #[test]
    fn substitution_degree_one_is_the_generator() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        let f = Rationals;
        let s = substitution_matrix(action.generator(2), 1, &f);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(*s.at(r, c), f.from_int(action.generator(2)[r][c] as i64));
            }
        }
    }

    #[test]
    fn substitution_of_identity_is_identity() {
        let f = PrimeField::new(5).unwrap();
        for k in 0..5 {
            let s = substitution_matrix(&IDENTITY3, k, &f);
            assert_eq!(s, Mat::identity(&f, MonomialBasis::count(k)));
        }
    }

    #[test]
    fn example_sigma3_mod_2_is_a_transvection() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        let f = PrimeField::new(2).unwrap();
        let s = substitution_matrix(action.generator(2), 1, &f);
        // w3 -> w3 + w1 + w2, w1 and w2 fixed.
        let expect = Mat::from_int_rows(&f, &[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        assert_eq!(s, expect);
    }

    #[test]
    fn substitution_is_functorial() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        let f = PrimeField::new(7).unwrap();
        let g = action.generator(0);
        let h = action.generator(1);
        let gh = mat3_mul(g, h);
        for k in 0..=4 {
            let left = substitution_matrix(&gh, k, &f);
            let right = substitution_matrix(g, k, &f).mul(&f, &substitution_matrix(h, k, &f));
            assert_eq!(left, right, "degree {k}");
        }
    }

    #[test]
    fn group_orders_match_the_type_table() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        assert_eq!(enumerate_group(&action, &[2]).unwrap().order(), 2);
        assert_eq!(enumerate_group(&action, &[0, 1]).unwrap().order(), 12); // G2
        assert_eq!(enumerate_group(&action, &[]).unwrap().order(), 1);

        let a2 = parse_matrix("2,-1,-1;-1,2,-1;-4,-1,2").unwrap();
        let a2_action = ReflectionAction::new(&a2);
        assert_eq!(enumerate_group(&a2_action, &[0, 1]).unwrap().order(), 6); // A2

        let b2 = parse_matrix("2,-2,-1;-1,2,-1;-1,-1,2").unwrap();
        let b2_action = ReflectionAction::new(&b2);
        assert_eq!(enumerate_group(&b2_action, &[0, 1]).unwrap().order(), 8); // B2

        let a1a1 = parse_matrix("2,0,-1;0,2,-1;-1,-1,2").unwrap();
        let a1a1_action = ReflectionAction::new(&a1a1);
        assert_eq!(enumerate_group(&a1a1_action, &[0, 1]).unwrap().order(), 4);

        let finite = parse_matrix("2,-1,0;-1,2,-1;0,-1,2").unwrap();
        let f_action = ReflectionAction::new(&finite);
        assert_eq!(enumerate_group(&f_action, &[0, 1, 2]).unwrap().order(), 24); // A3
    }

    #[test]
    fn infinite_pairs_are_refused() {
        let m = parse_matrix("2,-2,-2;-2,2,-2;-2,-2,2").unwrap();
        let action = ReflectionAction::new(&m);
        assert_eq!(
            enumerate_group(&action, &[0, 1]),
            Err(WeylError::InfiniteGroup(vec![0, 1]))
        );
    }

    #[test]
    fn infinite_triple_with_finite_pairs_hits_the_ceiling() {
        // All pairs finite but the whole group infinite (affine type).
        let m = parse_matrix("2,-1,-1;-1,2,-1;-1,-1,2").unwrap();
        let action = ReflectionAction::new(&m);
        assert_eq!(
            enumerate_group(&action, &[0, 1, 2]),
            Err(WeylError::InfiniteGroup(vec![0, 1, 2]))
        );
    }

    #[test]
    fn molien_of_trivial_group_is_the_full_ring() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        let g = enumerate_group(&action, &[]).unwrap();
        let s = molien_series(&g, FieldSpec::Rationals, 12).unwrap();
        let expect = crate::series::FactoredRational::inverse_product(vec![2, 2, 2]).expand(12);
        assert_eq!(s, expect);
    }

    #[test]
    fn molien_of_single_reflection() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        let g = enumerate_group(&action, &[2]).unwrap();
        let s = molien_series(&g, FieldSpec::Rationals, 40).unwrap();
        let expect = crate::series::FactoredRational::inverse_product(vec![2, 2, 4]).expand(40);
        assert_eq!(s, expect);
    }

    #[test]
    fn molien_of_g2_pair_with_spare_variable() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        let g = enumerate_group(&action, &[0, 1]).unwrap();
        let s = molien_series(&g, FieldSpec::Rationals, 40).unwrap();
        let expect = crate::series::FactoredRational::inverse_product(vec![2, 4, 12]).expand(40);
        assert_eq!(s, expect);
    }

    #[test]
    fn modular_molien_is_refused() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let action = ReflectionAction::new(&m);
        let g = enumerate_group(&action, &[2]).unwrap();
        assert_eq!(
            molien_series(&g, FieldSpec::PrimeField(3), 10),
            Err(WeylError::ModularNotSupported)
        );
    }
}
