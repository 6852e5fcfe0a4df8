//! Finite-dimensional representations and their calculus.
//!
//! A [`Representation`] stores one invertible matrix per generator of its
//! group. Construction validates the defining relations that are decidable:
//! pairwise commutation for free abelian and lattice groups, and the single
//! surface relation for surface groups. Free groups impose nothing.
//!
//! The deeper operations each return evidence rather than bare booleans:
//! unipotence produces a triangularizing change of basis or a concrete
//! stage at which the common fixed space dies; Jordan decomposition returns
//! the commuting pair together with the separable polynomial its semisimple
//! part annihilates; isomorphism returns an invertible intertwiner.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{GroupError, GroupKind, GroupSpec, Morphism, Word};
use crate::linalg::{LinAlgError, Matrix};
use crate::scalar::{GaussianRational, Scalar, Tolerance};

#[derive(Debug, Clone, PartialEq)]
pub enum RepError<S: Scalar> {
    WrongImageCount { expected: usize, got: usize },
    /// Image `index` is not square or does not match the common rank.
    ImageShape { index: usize },
    /// Image `index` is singular.
    NotInvertible { index: usize },
    /// Images of generators `i` and `j` fail to commute (indices 0-based).
    NonCommuting { i: usize, j: usize },
    SurfaceRelationViolated { residual: Matrix<S> },
    GroupMismatch(&'static str),
    Word(GroupError),
    NotUnipotent(NotUnipotentWitness),
    /// Jordan decomposition needs a square matrix.
    NotSquareInput,
    /// Jordan decomposition needs an invertible matrix.
    SingularInput,
    PositiveRankRequired(&'static str),
    Internal(&'static str),
}

impl<S: Scalar> fmt::Display for RepError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepError::WrongImageCount { expected, got } => {
                write!(f, "expected {expected} generator images, got {got}")
            }
            RepError::ImageShape { index } => {
                write!(f, "image of generator {} has the wrong shape", index + 1)
            }
            RepError::NotInvertible { index } => {
                write!(f, "NotInvertible({}): generator image is singular", index + 1)
            }
            RepError::NonCommuting { i, j } => {
                write!(f, "NonCommuting({},{}): images must commute", i + 1, j + 1)
            }
            RepError::SurfaceRelationViolated { .. } => {
                f.write_str("surface relation violated: commutator product is not the identity")
            }
            RepError::GroupMismatch(msg) => write!(f, "group mismatch: {msg}"),
            RepError::Word(e) => write!(f, "word error: {e}"),
            RepError::NotUnipotent(w) => write!(
                f,
                "not unipotent: common fixed space is zero at stage {} (remaining rank {})",
                w.stage, w.remaining_rank
            ),
            RepError::NotSquareInput => f.write_str("input matrix must be square"),
            RepError::SingularInput => f.write_str("input matrix must be invertible"),
            RepError::PositiveRankRequired(msg) => write!(f, "rank must be positive: {msg}"),
            RepError::Internal(msg) => write!(f, "internal invariant breach: {msg}"),
        }
    }
}

impl<S: Scalar> From<GroupError> for RepError<S> {
    fn from(e: GroupError) -> Self {
        RepError::Word(e)
    }
}

/// Evidence that a representation is not unipotent: at peeling stage
/// `stage` the remaining `remaining_rank`-dimensional pieces share no
/// nonzero fixed vector, which no simultaneous unitriangularization allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotUnipotentWitness {
    pub stage: usize,
    pub remaining_rank: usize,
}

/// A complete flag certificate: conjugating every generator image by
/// `triangularizer` yields unit upper triangular matrices, exhibiting the
/// standard flag with one new dimension per stage.
#[derive(Debug, Clone, PartialEq)]
pub struct UnipotenceCertificate<S: Scalar> {
    pub triangularizer: Matrix<S>,
    pub flag_dims: Vec<usize>,
}

impl<S: Scalar> UnipotenceCertificate<S> {
    /// Re-checks the certificate against a representation by conjugation.
    pub fn verify(&self, rep: &Representation<S>) -> bool {
        if self.flag_dims != (1..=rep.rank()).collect::<Vec<_>>() {
            return false;
        }
        let Some(p_inv) = self.triangularizer.inverse() else {
            return false;
        };
        rep.images().iter().all(|u| {
            let c = &(&p_inv * u) * &self.triangularizer;
            is_unit_upper_triangular(&c)
        })
    }
}

fn is_unit_upper_triangular<S: Scalar>(m: &Matrix<S>) -> bool {
    if !m.is_square() {
        return false;
    }
    for i in 0..m.rows() {
        if !m[(i, i)].sub(&S::one()).is_zero() {
            return false;
        }
        for j in 0..i {
            if !m[(i, j)].is_zero() {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq)]
pub enum FlagOutcome<S: Scalar> {
    Unipotent(UnipotenceCertificate<S>),
    NotUnipotent(NotUnipotentWitness),
}

/// The short exact sequence split off a unipotent representation: a trivial
/// rank-one subrepresentation spanned by a common fixed vector, and the
/// quotient on the complement.
#[derive(Debug, Clone, PartialEq)]
pub struct Peeled<S: Scalar> {
    pub sub: Representation<S>,
    pub quotient: Representation<S>,
    /// rank x 1: the fixed vector embedding the trivial sub.
    pub inclusion: Matrix<S>,
    /// (rank - 1) x rank: the projection onto the quotient coordinates.
    pub projection: Matrix<S>,
}

/// A multiplicative Jordan decomposition M = S U = U S with S semisimple
/// (annihilated by the separable part of the characteristic polynomial) and
/// U unipotent.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanPair {
    pub semisimple: Matrix<GaussianRational>,
    pub unipotent: Matrix<GaussianRational>,
    /// The separable (squarefree) part of the characteristic polynomial,
    /// coefficients in ascending degree; `semisimple` is a root of it.
    pub separable_poly: Vec<GaussianRational>,
}

/// A representation: one invertible matrix per generator, satisfying the
/// group's decidable relations.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<S: Scalar> {
    group: GroupSpec<S>,
    rank: usize,
    images: Vec<Matrix<S>>,
}

impl<S: Scalar> Representation<S> {
    /// Validating constructor: checks image count, shapes, invertibility,
    /// commutation where the group is abelian, and the surface relation.
    /// Comparisons use the default tolerance on the approximate backend.
    pub fn new(group: GroupSpec<S>, images: Vec<Matrix<S>>) -> Result<Self, RepError<S>> {
        let expected = group.generator_count();
        if images.len() != expected {
            return Err(RepError::WrongImageCount {
                expected,
                got: images.len(),
            });
        }
        let rank = images[0].rows();
        let rep = Representation { group, rank, images };
        rep.validate()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(group: GroupSpec<S>, rank: usize, images: Vec<Matrix<S>>) -> Self {
        Representation { group, rank, images }
    }

    /// The rank-r trivial representation.
    pub fn trivial(group: GroupSpec<S>, rank: usize) -> Self {
        let n = group.generator_count();
        Representation {
            group,
            rank,
            images: vec![Matrix::identity(rank); n],
        }
    }

    pub fn group(&self) -> &GroupSpec<S> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Matrix<S>] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Matrix<S> {
        &self.images[generator]
    }

    /// Re-runs the constructor checks.
    pub fn validate(&self) -> Result<(), RepError<S>> {
        let tol = Tolerance::default();
        for (k, m) in self.images.iter().enumerate() {
            if !m.is_square() || m.rows() != self.rank {
                return Err(RepError::ImageShape { index: k });
            }
            if m.rank() != self.rank {
                return Err(RepError::NotInvertible { index: k });
            }
        }
        if self.group.shape().is_abelian() {
            for i in 0..self.images.len() {
                for j in (i + 1)..self.images.len() {
                    let ab = &self.images[i] * &self.images[j];
                    let ba = &self.images[j] * &self.images[i];
                    // scaled: products of large numeric entries carry
                    // proportionally large rounding error
                    if !ab.eq_within_scaled(&ba, tol) {
                        return Err(RepError::NonCommuting { i, j });
                    }
                }
            }
        }
        if let GroupKind::Surface = self.group.kind() {
            let g = self.group.rank();
            let mut prod = Matrix::identity(self.rank);
            for i in 0..g {
                let a = &self.images[i];
                let b = &self.images[g + i];
                let a_inv = a.inverse().ok_or(RepError::NotInvertible { index: i })?;
                let b_inv = b.inverse().ok_or(RepError::NotInvertible { index: g + i })?;
                prod = &(&(&(&prod * a) * b) * &a_inv) * &b_inv;
            }
            if !prod.eq_within_scaled(&Matrix::identity(self.rank), tol) {
                return Err(RepError::SurfaceRelationViolated { residual: prod });
            }
        }
        Ok(())
    }

    /// The image of a word under the representation.
    pub fn evaluate(&self, w: &Word) -> Result<Matrix<S>, RepError<S>> {
        if !w.valid_for(self.group.shape()) {
            return Err(RepError::Word(GroupError::WordKindMismatch));
        }
        let pow = |k: usize, e: i64| -> Result<Matrix<S>, RepError<S>> {
            self.images[k].pow_signed(e).map_err(|err| match err {
                LinAlgError::Singular => RepError::NotInvertible { index: k },
                _ => RepError::Internal("power of validated image failed"),
            })
        };
        let mut acc = Matrix::identity(self.rank);
        match w {
            Word::Free(runs) => {
                for &(k, e) in runs {
                    acc = &acc * &pow(k, e)?;
                }
            }
            Word::Abelian(v) => {
                for (k, &e) in v.iter().enumerate() {
                    if e != 0 {
                        acc = &acc * &pow(k, e)?;
                    }
                }
            }
        }
        Ok(acc)
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, RepError<S>> {
        if self.group != other.group {
            return Err(RepError::GroupMismatch("direct sum needs one group"));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.direct_sum(b))
            .collect();
        Ok(Representation::new_unchecked(
            self.group.clone(),
            self.rank + other.rank,
            images,
        ))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self, RepError<S>> {
        if self.group != other.group {
            return Err(RepError::GroupMismatch("tensor product needs one group"));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| a.kron(b))
            .collect();
        Ok(Representation::new_unchecked(
            self.group.clone(),
            self.rank * other.rank,
            images,
        ))
    }

    /// The dual: generator images become inverse transposes.
    pub fn dual(&self) -> Result<Self, RepError<S>> {
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(k, m)| {
                m.inverse()
                    .map(|inv| inv.transpose())
                    .ok_or(RepError::NotInvertible { index: k })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Representation::new_unchecked(
            self.group.clone(),
            self.rank,
            images,
        ))
    }

    /// Pullback along a morphism into this representation's group: the
    /// source generator k acts by the image of alpha(k). Relations pull
    /// back along homomorphisms, so no revalidation is needed.
    pub fn pullback(
        &self,
        alpha: &Morphism,
        source: &GroupSpec<S>,
    ) -> Result<Representation<S>, RepError<S>> {
        if alpha.target() != self.group.shape() {
            return Err(RepError::GroupMismatch("morphism target is not this group"));
        }
        if alpha.source() != source.shape() {
            return Err(RepError::GroupMismatch("morphism source shape mismatch"));
        }
        let images = alpha
            .images()
            .iter()
            .map(|w| self.evaluate(w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Representation::new_unchecked(
            source.clone(),
            self.rank,
            images,
        ))
    }

    /// A canonical basis of the space of intertwiners T with
    /// T rho1(gen) = rho2(gen) T for every generator.
    ///
    /// Under row-major vectorisation the two sides become
    /// (I (x) rho1(gen)^T) vec(T) and (rho2(gen) (x) I) vec(T); the stacked
    /// difference's echelon kernel gives the basis, reshaped to
    /// rank2 x rank1 matrices.
    pub fn intertwiners(&self, other: &Self) -> Result<Vec<Matrix<S>>, RepError<S>> {
        if self.group != other.group {
            return Err(RepError::GroupMismatch("intertwiners need one group"));
        }
        let (r1, r2) = (self.rank, other.rank);
        let dim = r1 * r2;
        let mut system = Matrix::zeros(0, dim);
        for (a, b) in self.images.iter().zip(&other.images) {
            let lhs = Matrix::identity(r2).kron(&a.transpose());
            let rhs = b.kron(&Matrix::identity(r1));
            system = system.vstack(&(&lhs - &rhs)).expect("widths agree");
        }
        Ok(system
            .kernel_basis()
            .into_iter()
            .map(|v| Matrix::new(r2, r1, v).expect("kernel vector has length r1*r2"))
            .collect())
    }

    /// Decides isomorphism and returns an invertible intertwiner when one
    /// exists.
    ///
    /// The determinant of a combination sum(t_k T_k) of intertwiner basis
    /// elements is a polynomial of degree at most rank in each t_k, so it
    /// vanishes identically iff it vanishes on the integer grid
    /// {0..rank}^dim. The grid is scanned in a fixed odometer order and the
    /// first invertible combination is returned, making the witness
    /// deterministic. Cost is (rank+1)^dim matrix inversions in the worst
    /// case: fine for the small intertwiner spaces this library meets, and
    /// the reason identical inputs short-circuit to the identity first.
    pub fn is_isomorphic(&self, other: &Self) -> Result<Option<Matrix<S>>, RepError<S>> {
        if self.group != other.group {
            return Err(RepError::GroupMismatch("isomorphism needs one group"));
        }
        if self.rank != other.rank {
            return Ok(None);
        }
        if self.images == other.images {
            return Ok(Some(Matrix::identity(self.rank)));
        }
        let basis = self.intertwiners(other)?;
        let d = basis.len();
        if d == 0 {
            return Ok(None);
        }
        // An isomorphism makes Hom(1,2) and Hom(2,1) isomorphic by
        // composition, so unequal dimensions rule it out cheaply.
        if other.intertwiners(self)?.len() != d {
            return Ok(None);
        }
        let side = self.rank; // exponent bound per variable
        let mut t = vec![0usize; d];
        loop {
            // odometer increment, last coordinate fastest
            let mut i = d;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                if t[i] < side {
                    t[i] += 1;
                    for slot in t.iter_mut().skip(i + 1) {
                        *slot = 0;
                    }
                    break;
                }
            }
            let mut candidate = Matrix::zeros(self.rank, self.rank);
            for (k, m) in basis.iter().enumerate() {
                if t[k] != 0 {
                    candidate = &candidate + &m.scale(&S::from_i64(t[k] as i64));
                }
            }
            if candidate.inverse().is_some() {
                return Ok(Some(candidate));
            }
        }
    }

    /// Kolchin-style unipotence decision with certificate.
    ///
    /// At each stage the common fixed space of the remaining blocks is
    /// computed; if it is zero the representation cannot be simultaneously
    /// unitriangularized and the stage is returned as witness. Otherwise
    /// the first echelon kernel vector extends canonically to a basis (its
    /// trailing coordinate carries a structural 1, so swapping it for that
    /// standard vector is invertible), the images are conjugated, and the
    /// algorithm recurses on the quotient blocks. Generator-wise unipotence
    /// is not assumed anywhere: only the common fixed space argument is
    /// sound for tuples.
    pub fn unipotence_flag(&self) -> FlagOutcome<S> {
        let r = self.rank;
        let mut p = Matrix::identity(r);
        let mut current = self.images.clone();
        for stage in 0..r {
            let m = r - stage;
            let id = Matrix::identity(m);
            let mut system = Matrix::zeros(0, m);
            for u in &current {
                system = system.vstack(&(u - &id)).expect("widths agree");
            }
            let kernel = system.kernel_basis();
            let Some(v) = kernel.first() else {
                return FlagOutcome::NotUnipotent(NotUnipotentWitness {
                    stage,
                    remaining_rank: m,
                });
            };
            let f = v
                .iter()
                .rposition(|x| !x.is_zero())
                .expect("kernel vector is nonzero");
            let mut cols = Vec::with_capacity(m);
            cols.push(v.clone());
            for j in 0..m {
                if j != f {
                    let mut e = vec![S::zero(); m];
                    e[j] = S::one();
                    cols.push(e);
                }
            }
            let p1 = Matrix::from_cols(&cols).expect("columns share a length");
            let p1_inv = p1.inverse().expect("unit coordinate makes p1 invertible");
            current = current
                .iter()
                .map(|u| (&(&p1_inv * u) * &p1).block(1, 1, m - 1, m - 1))
                .collect();
            p = &p * &Matrix::identity(stage).direct_sum(&p1);
        }
        FlagOutcome::Unipotent(UnipotenceCertificate {
            triangularizer: p,
            flag_dims: (1..=r).collect(),
        })
    }

    /// Splits a unipotent representation as a trivial rank-one sub plus a
    /// quotient of rank one less, with explicit inclusion and projection.
    /// The sub is spanned by the first echelon basis vector of the common
    /// fixed space, the same canonical vector the flag algorithm uses.
    pub fn peel(&self) -> Result<Peeled<S>, RepError<S>> {
        if self.rank == 0 {
            return Err(RepError::PositiveRankRequired("cannot peel a rank-0 representation"));
        }
        if let FlagOutcome::NotUnipotent(w) = self.unipotence_flag() {
            return Err(RepError::NotUnipotent(w));
        }
        let r = self.rank;
        let id = Matrix::identity(r);
        let mut system = Matrix::zeros(0, r);
        for u in &self.images {
            system = system.vstack(&(u - &id)).expect("widths agree");
        }
        let kernel = system.kernel_basis();
        let v = kernel.first().expect("unipotent rep has a fixed vector");
        let f = v
            .iter()
            .rposition(|x| !x.is_zero())
            .expect("kernel vector is nonzero");
        let mut cols = Vec::with_capacity(r);
        cols.push(v.clone());
        for j in 0..r {
            if j != f {
                let mut e = vec![S::zero(); r];
                e[j] = S::one();
                cols.push(e);
            }
        }
        let p1 = Matrix::from_cols(&cols).expect("columns share a length");
        let p1_inv = p1.inverse().expect("unit coordinate makes p1 invertible");
        let quotient_images: Vec<Matrix<S>> = self
            .images
            .iter()
            .map(|u| (&(&p1_inv * u) * &p1).block(1, 1, r - 1, r - 1))
            .collect();
        Ok(Peeled {
            sub: Representation::trivial(self.group.clone(), 1),
            quotient: Representation::new_unchecked(self.group.clone(), r - 1, quotient_images),
            inclusion: Matrix::from_col(v),
            projection: p1_inv.block(1, 0, r - 1, r),
        })
    }

    /// The adjoint representation on endomorphisms: under row-major
    /// vectorisation, conjugation by g acts as kron(g, inverse-transpose(g)).
    pub fn adjoint_rep(&self) -> Result<Self, RepError<S>> {
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let inv_t = m
                    .inverse()
                    .ok_or(RepError::NotInvertible { index: k })?
                    .transpose();
                Ok(m.kron(&inv_t))
            })
            .collect::<Result<Vec<_>, RepError<S>>>()?;
        Ok(Representation::new_unchecked(
            self.group.clone(),
            self.rank * self.rank,
            images,
        ))
    }
}

impl Representation<GaussianRational> {
    /// Entrywise lift into the approximate backend.
    pub fn to_approx(&self) -> Representation<crate::scalar::ApproxComplex> {
        Representation {
            group: self.group.to_approx(),
            rank: self.rank,
            images: self
                .images
                .iter()
                .map(|m| m.map(GaussianRational::to_approx))
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Jordan decomposition
// ---------------------------------------------------------------------------

type Q = GaussianRational;
type Poly = Vec<Q>;

fn poly_trim(mut f: Poly) -> Poly {
    while f.last().is_some_and(Scalar::is_zero) {
        f.pop();
    }
    f
}

fn poly_derivative(f: &[Q]) -> Poly {
    poly_trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.mul(&Q::from_i64(k as i64)))
            .collect(),
    )
}

/// Quotient and remainder of polynomial division; the divisor must be
/// nonzero.
fn poly_divmod(num: &[Q], den: &[Q]) -> (Poly, Poly) {
    let den = poly_trim(den.to_vec());
    assert!(!den.is_empty(), "polynomial division by zero");
    let mut rem = poly_trim(num.to_vec());
    let dn = den.len() - 1;
    let lead_inv = den.last().unwrap().inv().expect("leading coefficient nonzero");
    if rem.len() <= dn {
        return (Vec::new(), rem);
    }
    let mut quo = vec![Q::zero(); rem.len() - dn];
    while rem.len() > dn {
        let k = rem.len() - 1 - dn;
        let c = rem.last().unwrap().mul(&lead_inv);
        quo[k] = c.clone();
        for (i, d) in den.iter().enumerate() {
            let delta = c.mul(d);
            rem[k + i] = rem[k + i].sub(&delta);
        }
        rem = poly_trim(rem);
        if rem.is_empty() {
            break;
        }
    }
    (poly_trim(quo), rem)
}

/// Monic greatest common divisor by the Euclidean algorithm.
fn poly_gcd(a: &[Q], b: &[Q]) -> Poly {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        let (_, r) = poly_divmod(&a, &b);
        a = b;
        b = r;
    }
    if a.is_empty() {
        return a;
    }
    let lead_inv = a.last().unwrap().inv().expect("leading coefficient nonzero");
    a.iter().map(|c| c.mul(&lead_inv)).collect()
}

fn poly_eval_matrix(f: &[Q], m: &Matrix<Q>) -> Matrix<Q> {
    let n = m.rows();
    let mut acc = Matrix::zeros(n, n);
    for c in f.iter().rev() {
        acc = &(&acc * m) + &Matrix::scalar_matrix(n, c);
    }
    acc
}

/// Monic characteristic polynomial by the Faddeev-LeVerrier recurrence,
/// coefficients in ascending degree. Exact over Q(i): the only divisions
/// are by the integers 1..r.
pub fn char_poly(m: &Matrix<Q>) -> Result<Poly, RepError<Q>> {
    if !m.is_square() {
        return Err(RepError::NotSquareInput);
    }
    let r = m.rows();
    let mut coeffs = vec![Q::zero(); r + 1];
    coeffs[r] = Q::one();
    if r == 0 {
        return Ok(coeffs);
    }
    let mut mk = m.clone();
    let mut c = mk.trace().expect("square").neg();
    coeffs[r - 1] = c.clone();
    for k in 2..=r {
        mk = m * &(&mk + &Matrix::scalar_matrix(r, &c));
        c = mk
            .trace()
            .expect("square")
            .neg()
            .mul(&Q::from_i64(k as i64).inv().expect("k nonzero"));
        coeffs[r - k] = c.clone();
    }
    Ok(coeffs)
}

/// Multiplicative Jordan decomposition over Q(i), without any factoring.
///
/// Write f for the characteristic polynomial and f_sep = f / gcd(f, f')
/// for its separable part; f_sep(M) is nilpotent. The Chevalley-Newton
/// iteration s := s - f_sep(s) f_sep'(s)^(-1) converges quadratically in
/// the nilpotent filtration, so ceil(log2 r) + 1 steps reach the exact
/// semisimple part. Q(i) is perfect, which is what makes the gcd compute
/// the separable part and keeps every step exact.
pub fn jordan_decompose(m: &Matrix<Q>) -> Result<JordanPair, RepError<Q>> {
    if !m.is_square() {
        return Err(RepError::NotSquareInput);
    }
    let r = m.rows();
    if r == 0 {
        return Ok(JordanPair {
            semisimple: m.clone(),
            unipotent: m.clone(),
            separable_poly: vec![Q::one()],
        });
    }
    if m.rank() != r {
        return Err(RepError::SingularInput);
    }
    let f = char_poly(m)?;
    let fp = poly_derivative(&f);
    let g = poly_gcd(&f, &fp);
    let (f_sep, rem) = poly_divmod(&f, &g);
    if !rem.is_empty() {
        return Err(RepError::Internal("gcd does not divide the characteristic polynomial"));
    }
    let f_sep_d = poly_derivative(&f_sep);

    let iterations = if r <= 1 { 1 } else { (usize::BITS - (r - 1).leading_zeros()) as usize + 1 };
    let mut s = m.clone();
    for _ in 0..iterations {
        let val = poly_eval_matrix(&f_sep, &s);
        if val.is_zero() {
            break;
        }
        let deriv = poly_eval_matrix(&f_sep_d, &s);
        let deriv_inv = deriv
            .inverse()
            .ok_or(RepError::Internal("Newton derivative is singular"))?;
        s = &s - &(&val * &deriv_inv);
    }
    if !poly_eval_matrix(&f_sep, &s).is_zero() {
        return Err(RepError::Internal("Newton iteration did not converge"));
    }
    let s_inv = s
        .inverse()
        .ok_or(RepError::Internal("semisimple part is singular"))?;
    let u = &s_inv * m;
    if &(&s * &u) != m || &(&u * &s) != m {
        return Err(RepError::Internal("Jordan factors do not commute with the input"));
    }
    let x = &u - &Matrix::identity(r);
    if x.nilpotency_index().is_err() {
        return Err(RepError::Internal("unipotent factor is not unipotent"));
    }
    Ok(JordanPair {
        semisimple: s,
        unipotent: u,
        separable_poly: f_sep,
    })
}
