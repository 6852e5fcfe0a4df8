//! Explicit-cocycle group cohomology in degrees 0 and 1.
//!
//! For a free group on g generators a 1-cocycle is an arbitrary g-tuple of
//! module vectors; for a free abelian group the tuple must satisfy the
//! Koszul compatibility (rho(B_i) - 1) m_j = (rho(B_j) - 1) m_i. In both
//! cases coboundaries are the tuples ((rho(B_i) - 1) m)_i, so H^1 is a
//! concrete quotient of finite-dimensional vector spaces and every class
//! has a canonical representative: its reduction against the echelon basis
//! of the coboundary space.
//!
//! Nothing here touches degree 2 or higher; the free side vanishes there
//! and no caller needs the abelian side.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::GroupKind;
use crate::linalg::Matrix;
use crate::rep::{RepError, Representation};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum CohomError<S: Scalar> {
    /// Cohomology is computed for free and free abelian groups only.
    UnsupportedGroup(GroupKind),
    GroupMismatch(&'static str),
    /// Two cocycles live over different coefficient representations.
    CoefficientMismatch,
    LengthMismatch { expected: usize, got: usize },
    /// The Koszul compatibility fails; the residual is returned.
    InvalidCocycle { residual: Matrix<S> },
    /// The alleged short exact sequence is not exact; a residual of the
    /// first failing identity is returned.
    NotExact { residual: Matrix<S> },
    /// The vector handed to the connecting map is not invariant.
    NotInvariant,
    Rep(RepError<S>),
    Internal(&'static str),
}

impl<S: Scalar> fmt::Display for CohomError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomError::UnsupportedGroup(k) => {
                write!(f, "cohomology supports free and free_abelian groups, not {k}")
            }
            CohomError::GroupMismatch(msg) => write!(f, "group mismatch: {msg}"),
            CohomError::CoefficientMismatch => {
                f.write_str("cocycles have different coefficient representations")
            }
            CohomError::LengthMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            CohomError::InvalidCocycle { .. } => {
                f.write_str("Koszul compatibility fails for the given values")
            }
            CohomError::NotExact { .. } => {
                f.write_str("inclusion/projection do not form a short exact sequence")
            }
            CohomError::NotInvariant => f.write_str("vector is not invariant under the quotient"),
            CohomError::Rep(e) => write!(f, "representation error: {e}"),
            CohomError::Internal(msg) => write!(f, "internal invariant breach: {msg}"),
        }
    }
}

impl<S: Scalar> From<RepError<S>> for CohomError<S> {
    fn from(e: RepError<S>) -> Self {
        CohomError::Rep(e)
    }
}

fn check_supported<S: Scalar>(m: &Representation<S>) -> Result<(), CohomError<S>> {
    match m.group().kind() {
        GroupKind::Free | GroupKind::FreeAbelian => Ok(()),
        k => Err(CohomError::UnsupportedGroup(k)),
    }
}

/// Basis of the invariant subspace, in canonical echelon form.
pub fn h0<S: Scalar>(m: &Representation<S>) -> Result<Vec<Vec<S>>, CohomError<S>> {
    check_supported(m)?;
    let r = m.rank();
    let id = Matrix::identity(r);
    let mut system = Matrix::zeros(0, r);
    for u in m.images() {
        system = system.vstack(&(u - &id)).expect("widths agree");
    }
    Ok(system.kernel_basis())
}

/// The degree-1 cohomology data of a coefficient representation: bases of
/// the cocycle and coboundary spaces (vectors of length g * rank, values on
/// generators concatenated) and the dimension of their quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct H1Data<S: Scalar> {
    pub dimension: usize,
    pub cocycle_basis: Vec<Vec<S>>,
    pub coboundary_basis: Vec<Vec<S>>,
}

/// Computes Z^1, B^1 and dim H^1 = dim Z^1 - dim B^1.
///
/// Free group: Z^1 is everything, in the standard basis. Free abelian
/// group: Z^1 is the echelon kernel of the stacked Koszul conditions, one
/// block row per generator pair. Either way B^1 is the column space of the
/// stacked (rho(B_i) - 1), presented as the echelon row space of its
/// transpose so reduction against it is canonical.
pub fn h1<S: Scalar>(m: &Representation<S>) -> Result<H1Data<S>, CohomError<S>> {
    check_supported(m)?;
    let g = m.group().generator_count();
    let r = m.rank();
    let dim = g * r;
    let id = Matrix::identity(r);

    let cocycle_basis: Vec<Vec<S>> = match m.group().kind() {
        GroupKind::Free => (0..dim)
            .map(|k| {
                let mut e = vec![S::zero(); dim];
                e[k] = S::one();
                e
            })
            .collect(),
        GroupKind::FreeAbelian => {
            let pairs = g * (g.saturating_sub(1)) / 2;
            let mut koszul = Matrix::zeros(pairs * r, dim);
            let mut row = 0;
            for i in 0..g {
                let di = m.image(i) - &id;
                for j in (i + 1)..g {
                    let dj = m.image(j) - &id;
                    // (rho(B_i)-1) m_j - (rho(B_j)-1) m_i = 0
                    koszul.set_block(row, j * r, &di);
                    koszul.set_block(row, i * r, &dj.scale(&S::from_i64(-1)));
                    row += r;
                }
            }
            koszul.kernel_basis()
        }
        _ => unreachable!("checked above"),
    };

    let mut d = Matrix::zeros(0, r);
    for u in m.images() {
        d = d.vstack(&(u - &id)).expect("widths agree");
    }
    let (rref_t, pivots) = d.transpose().rref();
    let coboundary_basis: Vec<Vec<S>> = (0..pivots.len())
        .map(|i| rref_t.row(i).to_vec())
        .collect();

    let dimension = cocycle_basis.len() - coboundary_basis.len();
    Ok(H1Data {
        dimension,
        cocycle_basis,
        coboundary_basis,
    })
}

/// Ext^1(A, B) computed as H^1 with coefficients Hom(A, B) = dual(A) (x) B.
pub fn ext1<S: Scalar>(
    a: &Representation<S>,
    b: &Representation<S>,
) -> Result<H1Data<S>, CohomError<S>> {
    let hom = hom_rep(a, b)?;
    h1(&hom)
}

/// The coefficient representation Hom(A, B) = tensor(dual(A), B).
///
/// Under the row-major Kronecker convention its vectors are the row-major
/// entries of an rA x rB matrix X whose transpose T = X^T is the actual
/// homomorphism: the action sends T to B(g) T A(g)^{-1}.
pub fn hom_rep<S: Scalar>(
    a: &Representation<S>,
    b: &Representation<S>,
) -> Result<Representation<S>, CohomError<S>> {
    if a.group() != b.group() {
        return Err(CohomError::GroupMismatch("Hom needs one group"));
    }
    check_supported(a)?;
    Ok(a.dual()?.tensor(b)?)
}

fn value_to_hom<S: Scalar>(value: &[S], ra: usize, rb: usize) -> Matrix<S> {
    Matrix::new(ra, rb, value.to_vec())
        .expect("value length is ra*rb")
        .transpose()
}

fn hom_to_value<S: Scalar>(c: &Matrix<S>) -> Vec<S> {
    c.transpose().vec_row_major()
}

/// A 1-cocycle: one coefficient-space vector per generator, subject to the
/// Koszul compatibility over free abelian groups (nothing over free
/// groups).
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle<S: Scalar> {
    coefficients: Representation<S>,
    values: Vec<Vec<S>>,
}

impl<S: Scalar> Cocycle<S> {
    pub fn new(
        coefficients: Representation<S>,
        values: Vec<Vec<S>>,
    ) -> Result<Self, CohomError<S>> {
        check_supported(&coefficients)?;
        let g = coefficients.group().generator_count();
        if values.len() != g {
            return Err(CohomError::LengthMismatch {
                expected: g,
                got: values.len(),
            });
        }
        let r = coefficients.rank();
        for v in &values {
            if v.len() != r {
                return Err(CohomError::LengthMismatch {
                    expected: r,
                    got: v.len(),
                });
            }
        }
        let cocycle = Cocycle {
            coefficients,
            values,
        };
        if let GroupKind::FreeAbelian = cocycle.coefficients.group().kind() {
            let id = Matrix::identity(r);
            for i in 0..g {
                let di = cocycle.coefficients.image(i) - &id;
                let mi = Matrix::from_col(&cocycle.values[i]);
                for j in (i + 1)..g {
                    let dj = cocycle.coefficients.image(j) - &id;
                    let mj = Matrix::from_col(&cocycle.values[j]);
                    let residual = &(&di * &mj) - &(&dj * &mi);
                    if !residual.is_zero() {
                        return Err(CohomError::InvalidCocycle { residual });
                    }
                }
            }
        }
        Ok(cocycle)
    }

    pub fn zero(coefficients: Representation<S>) -> Result<Self, CohomError<S>> {
        let g = coefficients.group().generator_count();
        let r = coefficients.rank();
        Cocycle::new(coefficients, vec![vec![S::zero(); r]; g])
    }

    pub fn coefficients(&self) -> &Representation<S> {
        &self.coefficients
    }

    pub fn values(&self) -> &[Vec<S>] {
        &self.values
    }

    pub fn value(&self, generator: usize) -> &[S] {
        &self.values[generator]
    }

    /// The concatenated (generator-major) coordinate vector.
    pub fn flat(&self) -> Vec<S> {
        self.values.iter().flatten().cloned().collect()
    }

    /// Evaluates the cocycle on a word by the crossed-homomorphism rule
    /// c(uv) = c(u) + rho(u) c(v), with c(B^-1) = -rho(B)^-1 c(B).
    pub fn evaluate(&self, w: &crate::group::Word) -> Result<Vec<S>, CohomError<S>> {
        use crate::group::Word;
        let shape = self.coefficients.group().shape();
        if !w.valid_for(shape) {
            return Err(CohomError::Rep(RepError::Word(
                crate::group::GroupError::WordKindMismatch,
            )));
        }
        let r = self.coefficients.rank();
        let mut acc = Matrix::zeros(r, 1);
        let mut carrier = Matrix::identity(r);
        let step = |k: usize, e: i64, acc: &mut Matrix<S>, carrier: &mut Matrix<S>| {
            let rho = self.coefficients.image(k);
            let val = Matrix::from_col(&self.values[k]);
            if e >= 0 {
                for _ in 0..e {
                    *acc = &*acc + &(&*carrier * &val);
                    *carrier = &*carrier * rho;
                }
            } else {
                let rho_inv = rho.inverse().expect("validated image");
                let neg = (&rho_inv * &val).scale(&S::from_i64(-1));
                for _ in 0..(-e) {
                    *acc = &*acc + &(&*carrier * &neg);
                    *carrier = &*carrier * &rho_inv;
                }
            }
        };
        match w {
            Word::Free(runs) => {
                for &(k, e) in runs {
                    step(k, e, &mut acc, &mut carrier);
                }
            }
            Word::Abelian(v) => {
                for (k, &e) in v.iter().enumerate() {
                    step(k, e, &mut acc, &mut carrier);
                }
            }
        }
        Ok(acc.col(0))
    }

    /// Pullback along a morphism into this cocycle's group: the source
    /// generator k gets the value of this cocycle on its image word, and
    /// the coefficients pull back alongside.
    pub fn pullback(
        &self,
        alpha: &crate::group::Morphism,
        source: &crate::group::GroupSpec<S>,
    ) -> Result<Cocycle<S>, CohomError<S>> {
        let coefficients = self.coefficients.pullback(alpha, source)?;
        let values = alpha
            .images()
            .iter()
            .map(|w| self.evaluate(w))
            .collect::<Result<Vec<_>, _>>()?;
        Cocycle::new(coefficients, values)
    }

    /// The class of this cocycle: its canonical representative modulo
    /// coboundaries.
    pub fn class(&self) -> Result<ExtClass<S>, CohomError<S>> {
        let data = h1(&self.coefficients)?;
        let representative = reduce_against(&self.flat(), &data.coboundary_basis);
        Ok(ExtClass {
            coefficients: self.coefficients.clone(),
            representative,
        })
    }
}

/// Reduces a vector against an echelon basis (leading entries 1 at distinct
/// ascending positions), clearing its coordinates at the pivot positions.
fn reduce_against<S: Scalar>(vector: &[S], echelon: &[Vec<S>]) -> Vec<S> {
    let mut w = vector.to_vec();
    for b in echelon {
        let Some(p) = b.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let c = w[p].clone();
        if c.is_zero() {
            continue;
        }
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi = wi.sub(&c.mul(bi));
        }
    }
    w
}

/// A cohomology class with its canonical reduced representative.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtClass<S: Scalar> {
    coefficients: Representation<S>,
    representative: Vec<S>,
}

impl<S: Scalar> ExtClass<S> {
    pub fn coefficients(&self) -> &Representation<S> {
        &self.coefficients
    }

    /// The canonical representative, reduced against the echelon
    /// coboundary basis.
    pub fn representative(&self) -> &[S] {
        &self.representative
    }

    pub fn is_zero(&self) -> bool {
        self.representative.iter().all(Scalar::is_zero)
    }
}

/// Decides whether two cocycles are cohomologous, by the rank test: the
/// difference lies in the span of the coboundaries iff appending it to the
/// coboundary basis does not raise the rank.
pub fn class_eq<S: Scalar>(c1: &Cocycle<S>, c2: &Cocycle<S>) -> Result<bool, CohomError<S>> {
    if c1.coefficients != c2.coefficients {
        return Err(CohomError::CoefficientMismatch);
    }
    let data = h1(&c1.coefficients)?;
    let diff: Vec<S> = c1
        .flat()
        .iter()
        .zip(c2.flat())
        .map(|(a, b)| a.sub(&b))
        .collect();
    if diff.iter().all(Scalar::is_zero) {
        return Ok(true);
    }
    let mut rows = data.coboundary_basis.clone();
    let base_rank = rows.len(); // echelon basis, so rank = count
    rows.push(diff);
    let stacked = Matrix::from_rows(rows).expect("uniform lengths");
    Ok(stacked.rank() == base_rank)
}

/// A short exact sequence 0 -> B -> E -> A -> 0 with explicit witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct Extension<S: Scalar> {
    pub total: Representation<S>,
    pub sub: Representation<S>,
    pub quotient: Representation<S>,
    /// (rB + rA) x rB
    pub inclusion: Matrix<S>,
    /// rA x (rB + rA)
    pub projection: Matrix<S>,
}

/// Builds the extension of A by B classified by a cocycle with
/// coefficients Hom(A, B).
///
/// The generator image is [[B(gen), Γ(gen)], [0, A(gen)]] with corner
/// Γ(gen) = T(gen) A(gen), where T(gen) is the cocycle value in its
/// homomorphism shape. This corner satisfies Γ(gh) = B(g)Γ(h) + Γ(g)A(h),
/// and over free abelian groups the Koszul compatibility of the module
/// values is exactly the commutation of the block images.
pub fn build_extension<S: Scalar>(
    a: &Representation<S>,
    b: &Representation<S>,
    c: &Cocycle<S>,
) -> Result<Extension<S>, CohomError<S>> {
    let hom = hom_rep(a, b)?;
    if c.coefficients() != &hom {
        return Err(CohomError::CoefficientMismatch);
    }
    let (ra, rb) = (a.rank(), b.rank());
    let re = ra + rb;
    let images: Vec<Matrix<S>> = (0..a.group().generator_count())
        .map(|k| {
            let t = value_to_hom(c.value(k), ra, rb);
            let corner = &t * a.image(k);
            let mut e = Matrix::zeros(re, re);
            e.set_block(0, 0, b.image(k));
            e.set_block(0, rb, &corner);
            e.set_block(rb, rb, a.image(k));
            e
        })
        .collect();
    let total = Representation::new(a.group().clone(), images)
        .map_err(|_| CohomError::Internal("extension images failed validation"))?;
    let mut inclusion = Matrix::zeros(re, rb);
    inclusion.set_block(0, 0, &Matrix::identity(rb));
    let mut projection = Matrix::zeros(ra, re);
    projection.set_block(0, rb, &Matrix::identity(ra));
    Ok(Extension {
        total,
        sub: b.clone(),
        quotient: a.clone(),
        inclusion,
        projection,
    })
}

/// Verifies that inclusion/projection exhibit B -> E -> A as a short exact
/// sequence of representations: shapes, full ranks, vanishing composite,
/// and equivariance on every generator.
fn verify_exactness<S: Scalar>(
    e: &Representation<S>,
    a: &Representation<S>,
    b: &Representation<S>,
    inclusion: &Matrix<S>,
    projection: &Matrix<S>,
) -> Result<(), CohomError<S>> {
    if e.group() != a.group() || e.group() != b.group() {
        return Err(CohomError::GroupMismatch("sequence spans several groups"));
    }
    let (ra, rb, re) = (a.rank(), b.rank(), e.rank());
    if re != ra + rb
        || inclusion.rows() != re
        || inclusion.cols() != rb
        || projection.rows() != ra
        || projection.cols() != re
    {
        return Err(CohomError::LengthMismatch {
            expected: ra + rb,
            got: re,
        });
    }
    let composite = projection * inclusion;
    if !composite.is_zero() {
        return Err(CohomError::NotExact {
            residual: composite,
        });
    }
    if inclusion.rank() != rb || projection.rank() != ra {
        return Err(CohomError::NotExact {
            residual: Matrix::zeros(0, 0),
        });
    }
    for k in 0..e.group().generator_count() {
        let left = &(e.image(k) * inclusion) - &(inclusion * b.image(k));
        if !left.is_zero() {
            return Err(CohomError::NotExact { residual: left });
        }
        let right = &(projection * e.image(k)) - &(a.image(k) * projection);
        if !right.is_zero() {
            return Err(CohomError::NotExact { residual: right });
        }
    }
    Ok(())
}

/// Extracts the Ext^1 class of a short exact sequence.
///
/// The canonical splitting s solves projection * s = I with free
/// coordinates zero (the echelon complement); the corner cocycle
/// Γ(gen) = E(gen) s - s A(gen) lands in the image of the inclusion and is
/// pulled back through it, then converted to module values via
/// T(gen) = Γ(gen) A(gen)^{-1}. For a block-upper-triangular E with the
/// standard witnesses this recovers the corner block literally.
pub fn extract_class<S: Scalar>(
    e: &Representation<S>,
    a: &Representation<S>,
    b: &Representation<S>,
    inclusion: &Matrix<S>,
    projection: &Matrix<S>,
) -> Result<ExtClass<S>, CohomError<S>> {
    verify_exactness(e, a, b, inclusion, projection)?;
    let hom = hom_rep(a, b)?;
    let s = projection
        .solve_matrix(&Matrix::identity(a.rank()))
        .ok_or(CohomError::Internal("projection admits no section"))?;
    let values = (0..e.group().generator_count())
        .map(|k| {
            let gamma_total = &(e.image(k) * &s) - &(&s * a.image(k));
            let gamma = inclusion
                .solve_matrix(&gamma_total)
                .ok_or(CohomError::Internal("corner does not factor through the sub"))?;
            let a_inv = a
                .image(k)
                .inverse()
                .ok_or_else(|| CohomError::Rep(RepError::NotInvertible { index: k }))?;
            Ok(hom_to_value(&(&gamma * &a_inv)))
        })
        .collect::<Result<Vec<_>, CohomError<S>>>()?;
    let cocycle = Cocycle::new(hom, values)
        .map_err(|_| CohomError::Internal("extracted values violate the Koszul condition"))?;
    cocycle.class()
}

/// The connecting map of the snake lemma at the cocycle level: for an
/// invariant vector v of the quotient, the defect of the canonical
/// splitting, delta(v)(gen) = inclusion^+ (E(gen) s v - s v), valued in the
/// sub. Works generator-wise over any group kind; the result is a cocycle
/// whenever the inputs form an exact sequence.
pub fn connecting_cocycle<S: Scalar>(
    e: &Representation<S>,
    a: &Representation<S>,
    b: &Representation<S>,
    inclusion: &Matrix<S>,
    projection: &Matrix<S>,
    v: &[S],
) -> Result<Vec<Vec<S>>, CohomError<S>> {
    verify_exactness(e, a, b, inclusion, projection)?;
    if v.len() != a.rank() {
        return Err(CohomError::LengthMismatch {
            expected: a.rank(),
            got: v.len(),
        });
    }
    let vm = Matrix::from_col(v);
    for img in a.images() {
        if !(&(img * &vm) - &vm).is_zero() {
            return Err(CohomError::NotInvariant);
        }
    }
    let s = projection
        .solve_matrix(&Matrix::identity(a.rank()))
        .ok_or(CohomError::Internal("projection admits no section"))?;
    let sv = &s * &vm;
    (0..e.group().generator_count())
        .map(|k| {
            let defect = &(e.image(k) * &sv) - &sv;
            let pulled = inclusion
                .solve_matrix(&defect)
                .ok_or(CohomError::Internal("defect does not factor through the sub"))?;
            Ok(pulled.col(0))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::scalar::GaussianRational as Q;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Q> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Q::from_int).collect())
                .collect(),
        )
        .unwrap()
    }

    fn qv(v: Vec<i64>) -> Vec<Q> {
        v.into_iter().map(Q::from_int).collect()
    }

    fn free(g: usize) -> GroupSpec<Q> {
        GroupSpec::free(g).unwrap()
    }

    fn zn(g: usize) -> GroupSpec<Q> {
        GroupSpec::free_abelian(g).unwrap()
    }

    #[test]
    fn h0_of_small_modules() {
        let triv = Representation::trivial(free(2), 1);
        assert_eq!(h0(&triv).unwrap(), vec![qv(vec![1])]);

        let doubling = Representation::new(zn(1), vec![qm(vec![vec![2]])]).unwrap();
        assert!(h0(&doubling).unwrap().is_empty());

        let unip =
            Representation::new(free(1), vec![qm(vec![vec![1, 1], vec![0, 1]])]).unwrap();
        assert_eq!(h0(&unip).unwrap(), vec![qv(vec![1, 0])]);

        let lattice = GroupSpec::lattice(qm(vec![vec![1]]).map(|x| {
            // i on the diagonal to make Z invertible and symmetric
            x.mul(&Q::i())
        }))
        .unwrap();
        let rho = Representation::trivial(lattice, 1);
        assert!(matches!(
            h0(&rho),
            Err(CohomError::UnsupportedGroup(GroupKind::Lattice))
        ));
    }

    #[test]
    fn h1_dimensions_on_trivial_coefficients() {
        for g in 1..=4 {
            let data = h1(&Representation::trivial(free(g), 1)).unwrap();
            assert_eq!(data.dimension, g);
            let data = h1(&Representation::trivial(zn(g), 1)).unwrap();
            assert_eq!(data.dimension, g);
        }
        // Z^1 with the doubling character: everything is a coboundary
        let doubling = Representation::new(zn(1), vec![qm(vec![vec![2]])]).unwrap();
        let data = h1(&doubling).unwrap();
        assert_eq!(data.dimension, 0);
        assert_eq!(data.cocycle_basis.len(), 1);
        assert_eq!(data.coboundary_basis.len(), 1);
    }

    #[test]
    fn ext1_matches_h1_of_hom() {
        for g in 1..=3 {
            let triv = Representation::trivial(free(g), 1);
            assert_eq!(ext1(&triv, &triv).unwrap().dimension, g);
            let triv = Representation::trivial(zn(g), 1);
            assert_eq!(ext1(&triv, &triv).unwrap().dimension, g);
        }
        let triv = Representation::trivial(zn(1), 1);
        let doubling = Representation::new(zn(1), vec![qm(vec![vec![2]])]).unwrap();
        assert_eq!(ext1(&triv, &doubling).unwrap().dimension, 0);
    }

    #[test]
    fn koszul_condition_is_enforced() {
        // coefficients (2, 1) over Z^2: (M1-1)m2 = m2 must equal
        // (M2-1)m1 = 0, so m2 = 0 is forced
        let m = Representation::new(zn(2), vec![qm(vec![vec![2]]), qm(vec![vec![1]])]).unwrap();
        assert!(Cocycle::new(m.clone(), vec![qv(vec![5]), qv(vec![0])]).is_ok());
        assert!(matches!(
            Cocycle::new(m, vec![qv(vec![0]), qv(vec![1])]),
            Err(CohomError::InvalidCocycle { .. })
        ));
    }

    #[test]
    fn build_extension_examples() {
        let triv1 = Representation::trivial(free(1), 1);
        let hom = hom_rep(&triv1, &triv1).unwrap();
        let c = Cocycle::new(hom, vec![qv(vec![1])]).unwrap();
        let ext = build_extension(&triv1, &triv1, &c).unwrap();
        assert_eq!(ext.total.image(0), &qm(vec![vec![1, 1], vec![0, 1]]));
        assert_eq!(ext.inclusion, qm(vec![vec![1], vec![0]]));
        assert_eq!(ext.projection, qm(vec![vec![0, 1]]));

        // zero cocycle gives the split extension B ⊕ A
        let triv2 = Representation::trivial(free(1), 2);
        let c0 = Cocycle::zero(hom_rep(&triv2, &triv1).unwrap()).unwrap();
        let ext = build_extension(&triv2, &triv1, &c0).unwrap();
        assert_eq!(ext.total.image(0), &Matrix::identity(3));

        // over Z^2 with values (1, i) the images commute
        let triv = Representation::trivial(zn(2), 1);
        let hom = hom_rep(&triv, &triv).unwrap();
        let c = Cocycle::new(hom, vec![qv(vec![1]), vec![Q::i()]]).unwrap();
        let ext = build_extension(&triv, &triv, &c).unwrap();
        assert_eq!(ext.total.image(0), &qm(vec![vec![1, 1], vec![0, 1]]));
        let expect1 = Matrix::from_rows(vec![
            vec![Q::one(), Q::i()],
            vec![Q::zero(), Q::one()],
        ])
        .unwrap();
        assert_eq!(ext.total.image(1), &expect1);
        assert!(ext.total.validate().is_ok());
    }

    #[test]
    fn build_extension_with_nontrivial_quotient_action() {
        // A = doubling character, B = trivial over Z^1; corner = t*A
        let a = Representation::new(zn(1), vec![qm(vec![vec![2]])]).unwrap();
        let b = Representation::trivial(zn(1), 1);
        let hom = hom_rep(&a, &b).unwrap();
        let c = Cocycle::new(hom, vec![qv(vec![3])]).unwrap();
        let ext = build_extension(&a, &b, &c).unwrap();
        assert_eq!(ext.total.image(0), &qm(vec![vec![1, 6], vec![0, 2]]));
        // round trip recovers the same values exactly
        let class = extract_class(
            &ext.total,
            &ext.quotient,
            &ext.sub,
            &ext.inclusion,
            &ext.projection,
        )
        .unwrap();
        let direct = c.class().unwrap();
        assert_eq!(class, direct);
    }

    #[test]
    fn extract_class_reads_corner_blocks() {
        let triv = Representation::trivial(free(1), 1);
        let e = Representation::new(free(1), vec![qm(vec![vec![1, 5], vec![0, 1]])]).unwrap();
        let class = extract_class(
            &e,
            &triv,
            &triv,
            &qm(vec![vec![1], vec![0]]),
            &qm(vec![vec![0, 1]]),
        )
        .unwrap();
        assert_eq!(class.representative(), &qv(vec![5])[..]);
        assert!(!class.is_zero());

        // split extension has zero class
        let e = Representation::trivial(free(1), 2);
        let class = extract_class(
            &e,
            &triv,
            &triv,
            &qm(vec![vec![1], vec![0]]),
            &qm(vec![vec![0, 1]]),
        )
        .unwrap();
        assert!(class.is_zero());
    }

    #[test]
    fn extract_class_rejects_non_exact_witnesses() {
        let triv = Representation::trivial(free(1), 1);
        let e = Representation::new(free(1), vec![qm(vec![vec![1, 5], vec![0, 1]])]).unwrap();
        // projection that does not kill the inclusion
        let bad = extract_class(
            &e,
            &triv,
            &triv,
            &qm(vec![vec![1], vec![0]]),
            &qm(vec![vec![1, 0]]),
        );
        assert!(matches!(bad, Err(CohomError::NotExact { .. })));
    }

    #[test]
    fn class_eq_examples() {
        // over Z^1 with M(B1)=2: (1) and (0) are cohomologous
        let m = Representation::new(zn(1), vec![qm(vec![vec![2]])]).unwrap();
        let c1 = Cocycle::new(m.clone(), vec![qv(vec![1])]).unwrap();
        let c0 = Cocycle::zero(m).unwrap();
        assert!(class_eq(&c1, &c0).unwrap());
        assert!(class_eq(&c1, &c1).unwrap());

        // over F1 with trivial coefficients there are no coboundaries
        let t = Representation::trivial(free(1), 1);
        let c1 = Cocycle::new(t.clone(), vec![qv(vec![1])]).unwrap();
        let c0 = Cocycle::zero(t).unwrap();
        assert!(!class_eq(&c1, &c0).unwrap());

        // mismatched coefficients are an error
        let other = Representation::trivial(free(1), 2);
        let c2 = Cocycle::zero(other).unwrap();
        assert!(matches!(
            class_eq(&c1, &c2),
            Err(CohomError::CoefficientMismatch)
        ));
    }

    #[test]
    fn cocycle_evaluation_follows_the_crossed_rule() {
        let m = Representation::new(free(1), vec![qm(vec![vec![2]])]).unwrap();
        let c = Cocycle::new(m, vec![qv(vec![1])]).unwrap();
        use crate::group::Word;
        // c(B^2) = c(B) + 2 c(B) = 3
        assert_eq!(c.evaluate(&Word::free(vec![(0, 2)])).unwrap(), qv(vec![3]));
        // c(B^-1) = -2^{-1} c(B)
        assert_eq!(
            c.evaluate(&Word::free(vec![(0, -1)])).unwrap(),
            vec![Q::ratio(-1, 2).unwrap()]
        );
        // cocycle identity c(w w') = c(w) + rho(w) c(w')
        assert_eq!(c.evaluate(&Word::identity_free()).unwrap(), qv(vec![0]));
    }

    #[test]
    fn connecting_map_detects_nonsplit_extensions() {
        let triv = Representation::trivial(free(1), 1);
        let e = Representation::new(free(1), vec![qm(vec![vec![1, 1], vec![0, 1]])]).unwrap();
        let inclusion = qm(vec![vec![1], vec![0]]);
        let projection = qm(vec![vec![0, 1]]);
        let delta = connecting_cocycle(&e, &triv, &triv, &inclusion, &projection, &qv(vec![1]))
            .unwrap();
        assert_eq!(delta, vec![qv(vec![1])]);

        // non-invariant vectors are rejected
        let a = Representation::new(free(1), vec![qm(vec![vec![2]])]).unwrap();
        let e2 = Representation::new(free(1), vec![qm(vec![vec![1, 0], vec![0, 2]])]).unwrap();
        let bad = connecting_cocycle(&e2, &a, &triv, &inclusion, &projection, &qv(vec![1]));
        assert!(matches!(bad, Err(CohomError::NotInvariant)));
    }

    #[test]
    fn round_trip_preserves_classes() {
        // a nontrivial Hom-coefficient round trip over F2
        let a = Representation::new(
            free(2),
            vec![qm(vec![vec![1, 1], vec![0, 1]]), qm(vec![vec![1, 0], vec![2, 1]])],
        )
        .unwrap();
        let b = Representation::new(free(2), vec![qm(vec![vec![2]]), qm(vec![vec![3]])]).unwrap();
        let hom = hom_rep(&a, &b).unwrap();
        let c = Cocycle::new(hom, vec![qv(vec![1, 2]), qv(vec![0, -1])]).unwrap();
        let ext = build_extension(&a, &b, &c).unwrap();
        let class = extract_class(
            &ext.total,
            &ext.quotient,
            &ext.sub,
            &ext.inclusion,
            &ext.projection,
        )
        .unwrap();
        assert_eq!(class, c.class().unwrap());
        assert!(class_eq(
            &c,
            &Cocycle::new(c.coefficients().clone(), c.values().to_vec()).unwrap()
        )
        .unwrap());
    }
}
