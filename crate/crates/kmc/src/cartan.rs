//! Rank 3 generalized Cartan matrices: parsing, validation, the
//! finite/affine/indefinite trichotomy, and the parabolic profile with
//! its coarse (I-IV) and refined (i-x) class labels.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Largest admissible absolute value of an entry. Keeps all minor and
/// triple-product arithmetic inside i128.
pub const MAX_ENTRY: i64 = 1_000_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("matrix is not 3x3: {0}")]
    NotRank3(String),
    #[error("Cartan axiom violated: {0}")]
    AxiomViolation(String),
    #[error("entry {0} is out of the supported range [-{MAX_ENTRY}, {MAX_ENTRY}]")]
    EntryOutOfRange(i64),
    #[error("matrix is decomposable; the type trichotomy and the classification require an indecomposable matrix")]
    DecomposableInput,
    #[error("matrix is of finite type; no infinite-type classification applies")]
    FiniteTypeInput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixType {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for MatrixType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixType::Finite => write!(f, "finite"),
            MatrixType::Affine => write!(f, "affine"),
            MatrixType::Indefinite => write!(f, "indefinite"),
        }
    }
}

/// A validated rank 3 generalized Cartan matrix with its metadata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: [[i64; 3]; 3],
    indecomposable: bool,
    matrix_type: MatrixType,
    symmetrizable: bool,
}

impl CartanMatrix {
    /// Validate raw entries against the Cartan axioms and populate the
    /// metadata. The type label follows the principal-minor signs and is
    /// the standard trichotomy whenever the matrix is indecomposable.
    pub fn new(entries: [[i64; 3]; 3]) -> Result<Self, CartanError> {
        for row in &entries {
            for &e in row {
                if e.abs() > MAX_ENTRY {
                    return Err(CartanError::EntryOutOfRange(e));
                }
            }
        }
        for (i, row) in entries.iter().enumerate() {
            if row[i] != 2 {
                return Err(CartanError::AxiomViolation(format!(
                    "diagonal entry a{}{} = {} (must be 2)",
                    i + 1,
                    i + 1,
                    row[i]
                )));
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(CartanError::AxiomViolation(format!(
                        "off-diagonal entry a{}{} = {} (must be <= 0)",
                        i + 1,
                        j + 1,
                        entries[i][j]
                    )));
                }
                if entries[i][j] == 0 && entries[j][i] != 0 {
                    return Err(CartanError::AxiomViolation(format!(
                        "a{}{} = 0 but a{}{} = {} (zeros must pair)",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        entries[j][i]
                    )));
                }
            }
        }
        let indecomposable = is_connected(&entries);
        let matrix_type = type_from_minors(&entries);
        // At rank 3 the diagonal-rescaling definition reduces to equality
        // of the two triangle products.
        let symmetrizable = {
            let a = &entries;
            (a[0][1] as i128) * (a[1][2] as i128) * (a[2][0] as i128)
                == (a[0][2] as i128) * (a[2][1] as i128) * (a[1][0] as i128)
        };
        Ok(CartanMatrix { entries, indecomposable, matrix_type, symmetrizable })
    }

    pub fn entries(&self) -> &[[i64; 3]; 3] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn indecomposable(&self) -> bool {
        self.indecomposable
    }

    pub fn symmetrizable(&self) -> bool {
        self.symmetrizable
    }

    /// Raw type label from the principal-minor characterization.
    pub fn matrix_type_unchecked(&self) -> MatrixType {
        self.matrix_type
    }

    /// The finite/affine/indefinite trichotomy. Stated for indecomposable
    /// matrices; decomposable input is rejected.
    pub fn classify_type(&self) -> Result<MatrixType, CartanError> {
        if !self.indecomposable {
            return Err(CartanError::DecomposableInput);
        }
        Ok(self.matrix_type)
    }

    pub fn is_infinite_type(&self) -> Result<bool, CartanError> {
        Ok(self.classify_type()? != MatrixType::Finite)
    }

    /// Product `a_ij * a_ji` deciding the Coxeter order of the pair.
    pub fn pair_product(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j].checked_mul(self.entries[j][i]).expect("bounded entries")
    }

    /// Apply a relabeling of the index set: entry `(i, j)` of the input
    /// becomes entry `(perm[i], perm[j])` of the result.
    pub fn permuted(&self, perm: &[usize; 3]) -> CartanMatrix {
        let mut entries = [[0i64; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                entries[perm[i]][perm[j]] = self.entries[i][j];
            }
        }
        CartanMatrix::new(entries).expect("permutation preserves the axioms")
    }

    pub fn parabolic_profile(&self) -> Result<ParabolicProfile, CartanError> {
        ParabolicProfile::new(self)
    }
}

/// Matrix literal format: rows separated by ';', entries by ','.
pub fn parse_matrix(text: &str) -> Result<CartanMatrix, CartanError> {
    let rows: Vec<&str> = text.trim().split(';').collect();
    if rows.len() != 3 {
        return Err(CartanError::NotRank3(format!("{} rows", rows.len())));
    }
    let mut entries = [[0i64; 3]; 3];
    for (i, row) in rows.iter().enumerate() {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 3 {
            return Err(CartanError::NotRank3(format!("row {} has {} entries", i + 1, cells.len())));
        }
        for (j, cell) in cells.iter().enumerate() {
            entries[i][j] = cell
                .trim()
                .parse::<i64>()
                .map_err(|_| CartanError::Syntax(format!("bad integer {:?} at row {}, column {}", cell.trim(), i + 1, j + 1)))?;
        }
    }
    CartanMatrix::new(entries)
}

fn is_connected(a: &[[i64; 3]; 3]) -> bool {
    let mut seen = [false; 3];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..3 {
            if i != j && !seen[j] && a[i][j] != 0 {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn type_from_minors(a: &[[i64; 3]; 3]) -> MatrixType {
    // 1x1 principal minors are all 2 > 0.
    let pair_minor = |i: usize, j: usize| 4i128 - (a[i][j] as i128) * (a[j][i] as i128);
    let minors2 = [pair_minor(0, 1), pair_minor(0, 2), pair_minor(1, 2)];
    let det = det3(a);
    if minors2.iter().all(|&m| m > 0) && det > 0 {
        MatrixType::Finite
    } else if minors2.iter().all(|&m| m > 0) && det == 0 {
        MatrixType::Affine
    } else {
        MatrixType::Indefinite
    }
}

fn det3(a: &[[i64; 3]; 3]) -> i128 {
    let m = |i: usize, j: usize| a[i][j] as i128;
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Types of the rank 2 finite parabolic pairs, with their Coxeter data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rank2Kind {
    A1xA1,
    A2,
    B2,
    G2,
}

impl fmt::Display for Rank2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank2Kind::A1xA1 => write!(f, "A1xA1"),
            Rank2Kind::A2 => write!(f, "A2"),
            Rank2Kind::B2 => write!(f, "B2"),
            Rank2Kind::G2 => write!(f, "G2"),
        }
    }
}

/// Coxeter order and type data of one off-diagonal pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rank2Type {
    pub product: i64,
    /// `None` encodes an infinite Coxeter order.
    pub coxeter_order: Option<u32>,
    pub is_g2: bool,
}

impl Rank2Type {
    pub fn from_product(product: i64) -> Self {
        let coxeter_order = match product {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        };
        Rank2Type { product, coxeter_order, is_g2: product == 3 }
    }

    pub fn finite_kind(&self) -> Option<Rank2Kind> {
        match self.product {
            0 => Some(Rank2Kind::A1xA1),
            1 => Some(Rank2Kind::A2),
            2 => Some(Rank2Kind::B2),
            3 => Some(Rank2Kind::G2),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.coxeter_order.is_some()
    }
}

/// The four coarse classes, ordered by the number of rank 2 finite
/// parabolic pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::I => write!(f, "I"),
            ClassLabel::II => write!(f, "II"),
            ClassLabel::III => write!(f, "III"),
            ClassLabel::IV => write!(f, "IV"),
        }
    }
}

/// The ten refined classes distinguishing which finite pairs carry the
/// exceptional rank 2 group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[allow(non_camel_case_types)]
pub enum RefinedClass {
    i,
    ii,
    iii,
    iv,
    v,
    vi,
    vii,
    viii,
    ix,
    x,
}

impl RefinedClass {
    pub fn coarse(self) -> ClassLabel {
        match self {
            RefinedClass::i => ClassLabel::I,
            RefinedClass::ii | RefinedClass::iii => ClassLabel::II,
            RefinedClass::iv | RefinedClass::v | RefinedClass::vi => ClassLabel::III,
            RefinedClass::vii | RefinedClass::viii | RefinedClass::ix | RefinedClass::x => ClassLabel::IV,
        }
    }

    /// Canonical positions of the exceptional pairs, as pairs of
    /// zero-based canonical indices.
    fn canonical_g2_pairs(self) -> &'static [[usize; 2]] {
        match self {
            RefinedClass::iii | RefinedClass::v | RefinedClass::viii => &[[0, 1]],
            RefinedClass::vi | RefinedClass::ix => &[[0, 1], [0, 2]],
            RefinedClass::x => &[[0, 1], [0, 2], [1, 2]],
            _ => &[],
        }
    }
}

impl fmt::Display for RefinedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RefinedClass::i => "i",
            RefinedClass::ii => "ii",
            RefinedClass::iii => "iii",
            RefinedClass::iv => "iv",
            RefinedClass::v => "v",
            RefinedClass::vi => "vi",
            RefinedClass::vii => "vii",
            RefinedClass::viii => "viii",
            RefinedClass::ix => "ix",
            RefinedClass::x => "x",
        };
        write!(f, "{s}")
    }
}

const PAIRS: [[usize; 2]; 3] = [[0, 1], [0, 2], [1, 2]];

/// Which index subsets generate finite Weyl subgroups, the maximal ones
/// among them, the class labels, and the relabeling to canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicProfile {
    /// All `J` in `{1,2,3}` (zero-based bitmasks) with `W_J` finite,
    /// including the empty set.
    pub finite_subsets: Vec<u8>,
    /// The maximal elements of `finite_subsets` under inclusion.
    pub maximal_finite: Vec<u8>,
    pub class_label: ClassLabel,
    pub refined_label: RefinedClass,
    /// Pair types in the input labeling, indexed like `PAIRS`.
    pub rank2_types: [Rank2Type; 3],
    /// Relabeling onto canonical form: input index `i` plays the role of
    /// canonical index `permutation[i]` (zero-based).
    pub permutation: [usize; 3],
}

impl ParabolicProfile {
    pub fn new(m: &CartanMatrix) -> Result<Self, CartanError> {
        if m.classify_type()? == MatrixType::Finite {
            return Err(CartanError::FiniteTypeInput);
        }
        let rank2_types = [
            Rank2Type::from_product(m.pair_product(0, 1)),
            Rank2Type::from_product(m.pair_product(0, 2)),
            Rank2Type::from_product(m.pair_product(1, 2)),
        ];
        let mut finite_subsets: Vec<u8> = vec![0b000, 0b001, 0b010, 0b100];
        for (pair, t) in PAIRS.iter().zip(&rank2_types) {
            if t.is_finite() {
                finite_subsets.push((1 << pair[0]) | (1 << pair[1]));
            }
        }
        finite_subsets.sort_unstable();
        let maximal_finite: Vec<u8> = finite_subsets
            .iter()
            .copied()
            .filter(|&j| !finite_subsets.iter().any(|&k| k != j && k & j == j))
            .collect();

        let finite_pairs: Vec<[usize; 2]> = PAIRS
            .iter()
            .zip(&rank2_types)
            .filter(|(_, t)| t.is_finite())
            .map(|(p, _)| *p)
            .collect();
        let g2_pairs: Vec<[usize; 2]> = PAIRS
            .iter()
            .zip(&rank2_types)
            .filter(|(_, t)| t.is_g2)
            .map(|(p, _)| *p)
            .collect();

        let class_label = match finite_pairs.len() {
            0 => ClassLabel::I,
            1 => ClassLabel::II,
            2 => ClassLabel::III,
            3 => ClassLabel::IV,
            _ => unreachable!(),
        };
        let refined_label = match (class_label, g2_pairs.len()) {
            (ClassLabel::I, _) => RefinedClass::i,
            (ClassLabel::II, 0) => RefinedClass::ii,
            (ClassLabel::II, _) => RefinedClass::iii,
            (ClassLabel::III, 0) => RefinedClass::iv,
            (ClassLabel::III, 1) => RefinedClass::v,
            (ClassLabel::III, _) => RefinedClass::vi,
            (ClassLabel::IV, 0) => RefinedClass::vii,
            (ClassLabel::IV, 1) => RefinedClass::viii,
            (ClassLabel::IV, 2) => RefinedClass::ix,
            (ClassLabel::IV, _) => RefinedClass::x,
        };

        let permutation = canonical_permutation(&finite_pairs, &g2_pairs, refined_label);

        Ok(ParabolicProfile {
            finite_subsets,
            maximal_finite,
            class_label,
            refined_label,
            rank2_types,
            permutation,
        })
    }

    /// Canonical maximal finite subsets for each coarse class, as
    /// bitmasks.
    pub fn canonical_maximal(class: ClassLabel) -> &'static [u8] {
        match class {
            ClassLabel::I => &[0b001, 0b010, 0b100],
            ClassLabel::II => &[0b011, 0b100],
            ClassLabel::III => &[0b011, 0b101],
            ClassLabel::IV => &[0b011, 0b101, 0b110],
        }
    }

    /// The inverse relabeling: canonical index -> input index.
    pub fn inverse_permutation(&self) -> [usize; 3] {
        let mut inv = [0usize; 3];
        for (i, &p) in self.permutation.iter().enumerate() {
            inv[p] = i;
        }
        inv
    }

    /// Type of the pair `{i, j}` (zero-based input labels).
    pub fn pair_type(&self, i: usize, j: usize) -> Rank2Type {
        let key = [i.min(j), i.max(j)];
        let idx = PAIRS.iter().position(|p| *p == key).expect("a pair of distinct indices");
        self.rank2_types[idx]
    }
}

/// Lexicographically smallest relabeling that sends the maximal finite
/// subsets to the canonical configuration of the class and the
/// exceptional pairs to their canonical positions.
fn canonical_permutation(
    finite_pairs: &[[usize; 2]],
    g2_pairs: &[[usize; 2]],
    refined: RefinedClass,
) -> [usize; 3] {
    let target_pairs: Vec<[usize; 2]> = match refined.coarse() {
        ClassLabel::I => vec![],
        ClassLabel::II => vec![[0, 1]],
        ClassLabel::III => vec![[0, 1], [0, 2]],
        ClassLabel::IV => vec![[0, 1], [0, 2], [1, 2]],
    };
    let target_g2 = refined.canonical_g2_pairs();
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let maps_to = |perm: &[usize; 3], pairs: &[[usize; 2]], target: &[[usize; 2]]| {
        let mut mapped: Vec<[usize; 2]> = pairs
            .iter()
            .map(|p| {
                let a = perm[p[0]];
                let b = perm[p[1]];
                [a.min(b), a.max(b)]
            })
            .collect();
        mapped.sort_unstable();
        mapped == target
    };
    for perm in &perms {
        if maps_to(perm, finite_pairs, &target_pairs) && maps_to(perm, g2_pairs, target_g2) {
            return *perm;
        }
    }
    unreachable!("some relabeling always reaches the canonical form")
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE: &str = "2,-1,-3;-3,2,-1;-2,-4,2";

    #[test]
    fn example_matrix_is_indefinite_and_nonsymmetrizable() {
        let m = parse_matrix(EXAMPLE).unwrap();
        assert_eq!(m.classify_type().unwrap(), MatrixType::Indefinite);
        assert!(!m.symmetrizable());
        assert!(m.indecomposable());
    }

    #[test]
    fn axiom_violations_are_named() {
        assert!(matches!(
            parse_matrix("1,0,0;0,2,0;0,0,2"),
            Err(CartanError::AxiomViolation(msg)) if msg.contains("diagonal")
        ));
        assert!(matches!(
            parse_matrix("2,0,-1;-1,2,0;-1,0,2"),
            Err(CartanError::AxiomViolation(msg)) if msg.contains("zeros must pair")
        ));
        assert!(matches!(
            parse_matrix("2,1,-1;-1,2,-1;-1,-1,2"),
            Err(CartanError::AxiomViolation(msg)) if msg.contains("<= 0")
        ));
    }

    #[test]
    fn syntax_and_shape_errors() {
        assert!(matches!(parse_matrix("2,-1;-1,2"), Err(CartanError::NotRank3(_))));
        assert!(matches!(parse_matrix("2,-1,-1;-1,2;-1,-1,2"), Err(CartanError::NotRank3(_))));
        assert!(matches!(parse_matrix("2,x,-1;-1,2,-1;-1,-1,2"), Err(CartanError::Syntax(_))));
        assert!(matches!(parse_matrix(""), Err(CartanError::NotRank3(_))));
    }

    #[test]
    fn finite_and_affine_types() {
        let fin = parse_matrix("2,-1,0;-1,2,-1;0,-1,2").unwrap();
        assert_eq!(fin.classify_type().unwrap(), MatrixType::Finite);
        // det = 0 by direct cofactor expansion; proper minors 3, 3, 3 > 0.
        let aff = parse_matrix("2,-1,-1;-1,2,-1;-1,-1,2").unwrap();
        assert_eq!(aff.classify_type().unwrap(), MatrixType::Affine);
    }

    #[test]
    fn decomposable_is_rejected_by_classify() {
        let m = parse_matrix("2,0,0;0,2,-1;0,-1,2").unwrap();
        assert!(!m.indecomposable());
        assert_eq!(m.classify_type(), Err(CartanError::DecomposableInput));
        assert_eq!(m.parabolic_profile(), Err(CartanError::DecomposableInput));
    }

    #[test]
    fn example_profile_is_class_ii_refined_iii() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let p = m.parabolic_profile().unwrap();
        assert_eq!(p.maximal_finite, vec![0b011, 0b100]); // {1,2} and {3}
        assert_eq!(p.class_label, ClassLabel::II);
        assert_eq!(p.refined_label, RefinedClass::iii);
        assert_eq!(p.permutation, [0, 1, 2]);
        assert!(p.pair_type(0, 1).is_g2);
        assert_eq!(p.pair_type(0, 1).finite_kind(), Some(Rank2Kind::G2));
        assert_eq!(p.pair_type(0, 2).coxeter_order, None);
    }

    #[test]
    fn all_products_large_gives_class_i() {
        let m = parse_matrix("2,-2,-2;-2,2,-2;-2,-2,2").unwrap();
        let p = m.parabolic_profile().unwrap();
        assert_eq!(p.maximal_finite, vec![0b001, 0b010, 0b100]);
        assert_eq!(p.class_label, ClassLabel::I);
        assert_eq!(p.refined_label, RefinedClass::i);
    }

    #[test]
    fn class_iii_after_relabeling() {
        // Finite pairs {1,2} and {2,3} share vertex 2.
        let m = parse_matrix("2,-1,-1;-1,2,-1;-4,-1,2").unwrap();
        let p = m.parabolic_profile().unwrap();
        assert_eq!(p.class_label, ClassLabel::III);
        assert_eq!(p.refined_label, RefinedClass::iv);
        assert_eq!(p.permutation, [1, 0, 2]);
        // Applying the permutation to the maximal sets gives the
        // canonical class III configuration.
        let canon: Vec<u8> = p
            .maximal_finite
            .iter()
            .map(|&mask| {
                let mut out = 0u8;
                for i in 0..3 {
                    if mask & (1 << i) != 0 {
                        out |= 1 << p.permutation[i];
                    }
                }
                out
            })
            .collect();
        let mut canon_sorted = canon;
        canon_sorted.sort_unstable();
        assert_eq!(canon_sorted, ParabolicProfile::canonical_maximal(ClassLabel::III));
    }

    #[test]
    fn finite_type_input_is_rejected() {
        let m = parse_matrix("2,-1,0;-1,2,-1;0,-1,2").unwrap();
        assert_eq!(m.parabolic_profile(), Err(CartanError::FiniteTypeInput));
    }

    #[test]
    fn refined_projects_onto_coarse() {
        use RefinedClass::*;
        for (r, c) in [
            (i, ClassLabel::I),
            (ii, ClassLabel::II),
            (iii, ClassLabel::II),
            (iv, ClassLabel::III),
            (v, ClassLabel::III),
            (vi, ClassLabel::III),
            (vii, ClassLabel::IV),
            (viii, ClassLabel::IV),
            (ix, ClassLabel::IV),
            (x, ClassLabel::IV),
        ] {
            assert_eq!(r.coarse(), c);
        }
    }

    #[test]
    fn zero_pairing_patterns() {
        // All assignments of {0, -1} to the six off-diagonal slots:
        // accepted exactly when zeros pair up.
        for bits in 0..64u32 {
            let vals: Vec<i64> = (0..6).map(|b| if bits & (1 << b) != 0 { -1 } else { 0 }).collect();
            let entries = [
                [2, vals[0], vals[1]],
                [vals[2], 2, vals[3]],
                [vals[4], vals[5], 2],
            ];
            let ok = (vals[0] == 0) == (vals[2] == 0)
                && (vals[1] == 0) == (vals[4] == 0)
                && (vals[3] == 0) == (vals[5] == 0);
            assert_eq!(CartanMatrix::new(entries).is_ok(), ok, "pattern {bits:06b}");
        }
    }

    #[test]
    fn type_invariant_under_simultaneous_permutation() {
        let m = parse_matrix(EXAMPLE).unwrap();
        let base_class = m.parabolic_profile().unwrap().class_label;
        for perm in [[0usize, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [1, 0, 2], [2, 1, 0]] {
            let pm = m.permuted(&perm);
            assert_eq!(pm.classify_type().unwrap(), m.classify_type().unwrap());
            let pp = pm.parabolic_profile().unwrap();
            assert_eq!(pp.class_label, base_class);
            assert_eq!(pp.refined_label, RefinedClass::iii);
        }
    }

    #[test]
    fn g2_lands_on_the_canonical_pair() {
        // G2 pair at {2,3} of an affine matrix: class IV refined viii.
        let m = parse_matrix("2,-1,0;-1,2,-1;0,-3,2").unwrap();
        assert_eq!(m.classify_type().unwrap(), MatrixType::Affine);
        let p = m.parabolic_profile().unwrap();
        assert_eq!(p.class_label, ClassLabel::IV);
        assert_eq!(p.refined_label, RefinedClass::viii);
        // The G2 pair must map onto canonical {1,2}: indices 2,3 -> 1,2.
        let g2_canonical: Vec<usize> = [1usize, 2].iter().map(|&i| p.permutation[i]).collect();
        let mut sorted = g2_canonical;
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1]);
    }
}
