//! Schottky-ization over a complex torus, with verifiable gauges.
//!
//! A torus is presented by a symmetric invertible period matrix Z: its
//! lattice group has generators lambda_1..lambda_g (the Z columns) and
//! lambda_{g+1}..lambda_{2g} (the standard columns), and the canonical
//! morphism alpha kills the standard half. A lattice representation is
//! *Schottky* when it factors through alpha.
//!
//! The constructions here turn a unipotent lattice representation (exactly)
//! or a character (numerically, principal branch) into a Schottky one, and
//! return the 1-form coefficients A_j of the meromorphic gauge
//! omega = A_1 dz_1 + ... + A_g dz_g that transports one to the other.
//! [`verify_gauge`] re-checks every identity the construction claims and
//! returns either a certificate or the first violated identity with its
//! residual — failure is a value, not a panic.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::group::{alpha_torus, GroupError, GroupSpec, Morphism};
use crate::linalg::Matrix;
use crate::rep::{FlagOutcome, NotUnipotentWitness, RepError, Representation};
use crate::scalar::{
    principal_log, ApproxComplex, Backend, GaussianRational, NumericError, Scalar, Tolerance,
};

#[derive(Debug, Clone, PartialEq)]
pub enum SchottkyError<S: Scalar> {
    Group(GroupError),
    GroupMismatch(&'static str),
    ShapeMismatch(&'static str),
    NotUnipotent(NotUnipotentWitness),
    BackendMismatch { expected: Backend, got: Backend },
    Numeric(NumericError),
    Rep(RepError<S>),
    Internal(&'static str),
}

impl<S: Scalar> fmt::Display for SchottkyError<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchottkyError::Group(e) => write!(f, "group error: {e}"),
            SchottkyError::GroupMismatch(msg) => write!(f, "group mismatch: {msg}"),
            SchottkyError::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            SchottkyError::NotUnipotent(w) => write!(
                f,
                "not unipotent: common fixed space is zero at stage {} (remaining rank {})",
                w.stage, w.remaining_rank
            ),
            SchottkyError::BackendMismatch { expected, got } => {
                write!(f, "backend mismatch: expected {expected}, got {got}")
            }
            SchottkyError::Numeric(e) => write!(f, "numeric error: {e}"),
            SchottkyError::Rep(e) => write!(f, "representation error: {e}"),
            SchottkyError::Internal(msg) => write!(f, "internal invariant breach: {msg}"),
        }
    }
}

impl<S: Scalar> From<GroupError> for SchottkyError<S> {
    fn from(e: GroupError) -> Self {
        SchottkyError::Group(e)
    }
}

impl<S: Scalar> From<NumericError> for SchottkyError<S> {
    fn from(e: NumericError) -> Self {
        SchottkyError::Numeric(e)
    }
}

impl<S: Scalar> From<RepError<S>> for SchottkyError<S> {
    fn from(e: RepError<S>) -> Self {
        SchottkyError::Rep(e)
    }
}

/// A complex torus presented by its period data: the lattice group built
/// from a symmetric invertible g x g matrix Z, together with the canonical
/// morphism onto the free abelian quotient.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusData<S: Scalar> {
    g: usize,
    lattice: GroupSpec<S>,
    alpha: Morphism,
}

impl<S: Scalar> TorusData<S> {
    pub fn new(z: Matrix<S>) -> Result<Self, SchottkyError<S>> {
        let g = z.rows();
        let lattice = GroupSpec::lattice(z)?;
        Ok(TorusData {
            g,
            alpha: alpha_torus(g),
            lattice,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn z(&self) -> &Matrix<S> {
        self.lattice.period().expect("lattice group carries its period")
    }

    pub fn lattice(&self) -> &GroupSpec<S> {
        &self.lattice
    }

    pub fn alpha(&self) -> &Morphism {
        &self.alpha
    }
}

impl TorusData<GaussianRational> {
    pub fn to_approx(&self) -> TorusData<ApproxComplex> {
        TorusData {
            g: self.g,
            lattice: self.lattice.to_approx(),
            alpha: self.alpha.clone(),
        }
    }
}

/// The 1-form coefficients omega = A_1 dz_1 + ... + A_g dz_g of a gauge
/// transporting a lattice representation to its Schottky form.
#[derive(Debug, Clone, PartialEq)]
pub struct SchottkyGauge<S: Scalar> {
    pub coefficients: Vec<Matrix<S>>,
}

impl<S: Scalar> SchottkyGauge<S> {
    pub fn backend(&self) -> Backend {
        S::BACKEND
    }
}

/// A passing gauge verification: every claimed identity was re-checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeCertificate {
    pub identities_checked: usize,
}

/// The first violated identity, with its residual matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeFailure<S: Scalar> {
    pub identity: String,
    pub residual: Matrix<S>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GaugeCheck<S: Scalar> {
    Verified(GaugeCertificate),
    Failed(GaugeFailure<S>),
}

impl<S: Scalar> GaugeCheck<S> {
    pub fn is_verified(&self) -> bool {
        matches!(self, GaugeCheck::Verified(_))
    }
}

/// Schottky-izes a unipotent lattice representation, exactly.
///
/// With A_j = -log(rho(lambda_{g+j})) the standard half of the lattice is
/// gauged to the identity, and the Schottky representation is read off the
/// period half: sigma(B_i) = exp(sum_j Z_ij A_j) rho(lambda_i). Every A_j
/// is a polynomial in one rho-image, so the A_j commute with each other and
/// with the whole image of rho; that commutation is what makes sigma a
/// homomorphism, and it is re-checked here rather than assumed.
pub fn schottkyize_unipotent(
    t: &TorusData<GaussianRational>,
    rho: &Representation<GaussianRational>,
) -> Result<
    (
        Representation<GaussianRational>,
        SchottkyGauge<GaussianRational>,
    ),
    SchottkyError<GaussianRational>,
> {
    if rho.group() != t.lattice() {
        return Err(SchottkyError::GroupMismatch(
            "representation is not over this torus's lattice",
        ));
    }
    if let FlagOutcome::NotUnipotent(w) = rho.unipotence_flag() {
        return Err(SchottkyError::NotUnipotent(w));
    }
    let g = t.g();
    let r = rho.rank();
    let coefficients: Vec<Matrix<GaussianRational>> = (0..g)
        .map(|j| {
            rho.image(g + j)
                .log_unipotent()
                .map(|l| -&l)
                .map_err(|_| SchottkyError::Internal("unipotent rep with non-unipotent image"))
        })
        .collect::<Result<_, _>>()?;

    // re-check the gauge invariants the construction relies on
    for (j, a) in coefficients.iter().enumerate() {
        let back = a
            .exp_nilpotent()
            .map_err(|_| SchottkyError::Internal("gauge coefficient is not nilpotent"))?;
        if &(&back * rho.image(g + j)) != &Matrix::identity(r) {
            return Err(SchottkyError::Internal("exp(A_j) is not the inverse image"));
        }
        for b in &coefficients[j + 1..] {
            if &(a * b) != &(b * a) {
                return Err(SchottkyError::Internal("gauge coefficients do not commute"));
            }
        }
        for img in rho.images() {
            if &(a * img) != &(img * a) {
                return Err(SchottkyError::Internal(
                    "gauge coefficient does not commute with the representation",
                ));
            }
        }
    }

    let z = t.z();
    let images: Vec<Matrix<GaussianRational>> = (0..g)
        .map(|i| {
            let mut sum = Matrix::zeros(r, r);
            for (j, a) in coefficients.iter().enumerate() {
                sum = &sum + &a.scale(&z[(i, j)]);
            }
            let transport = sum
                .exp_nilpotent()
                .map_err(|_| SchottkyError::Internal("sum of commuting nilpotents not nilpotent"))?;
            Ok(&transport * rho.image(i))
        })
        .collect::<Result<_, SchottkyError<GaussianRational>>>()?;
    let sigma = Representation::new(GroupSpec::free_abelian(g)?, images)
        .map_err(|_| SchottkyError::Internal("Schottky images failed validation"))?;
    Ok((sigma, SchottkyGauge { coefficients }))
}

/// Schottky-izes a character (rank-1 lattice representation) numerically,
/// on the principal branch: a_j = -Log chi(lambda_{g+j}).
///
/// Any other branch would change sigma by an exponential factor; the
/// principal choice is fixed here once and for all.
pub fn schottkyize_character(
    t: &TorusData<ApproxComplex>,
    chi: &Representation<ApproxComplex>,
) -> Result<
    (
        Representation<ApproxComplex>,
        SchottkyGauge<ApproxComplex>,
    ),
    SchottkyError<ApproxComplex>,
> {
    if chi.group() != t.lattice() {
        return Err(SchottkyError::GroupMismatch(
            "character is not over this torus's lattice",
        ));
    }
    if chi.rank() != 1 {
        return Err(SchottkyError::ShapeMismatch("character must have rank 1"));
    }
    let g = t.g();
    let tol = Tolerance::default();
    let logs: Vec<ApproxComplex> = (0..g)
        .map(|j| {
            let value = chi.image(g + j)[(0, 0)];
            principal_log(value, tol).map(|l| l.neg()).map_err(SchottkyError::from)
        })
        .collect::<Result<_, _>>()?;
    let z = t.z();
    let images: Vec<Matrix<ApproxComplex>> = (0..g)
        .map(|i| {
            let mut exponent = ApproxComplex::zero();
            for (j, a) in logs.iter().enumerate() {
                exponent = exponent.add(&z[(i, j)].mul(a));
            }
            let value = exponent.exp()?.mul(&chi.image(i)[(0, 0)]);
            Ok(Matrix::from_rows(vec![vec![value]]).expect("1x1"))
        })
        .collect::<Result<_, NumericError>>()
        .map_err(SchottkyError::from)?;
    let sigma = Representation::new(GroupSpec::free_abelian(g)?, images)
        .map_err(|_| SchottkyError::Internal("character Schottky images failed validation"))?;
    let coefficients = logs
        .into_iter()
        .map(|a| Matrix::from_rows(vec![vec![a]]).expect("1x1"))
        .collect();
    Ok((sigma, SchottkyGauge { coefficients }))
}

/// One indecomposable flat component: a character tensor a unipotent.
///
/// The decomposition itself is not computed here — it is an input. The
/// character lives on the approximate backend (its logs are
/// transcendental), the unipotent on the exact one (its logs are finite
/// series); the tensor is assembled in floats.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatComponent {
    pub character: Representation<ApproxComplex>,
    pub unipotent: Representation<GaussianRational>,
}

/// Schottky-izes a direct sum of character-tensor-unipotent components,
/// returning the block-diagonal Schottky representation and its gauge.
///
/// Per component the gauge coefficients combine as a_j I + A_j: the 1-form
/// of a tensor product of a line with a bundle is the sum of the scalar
/// form and the matrix form.
pub fn schottkyize_flat_sum(
    t: &TorusData<GaussianRational>,
    components: &[FlatComponent],
) -> Result<
    (
        Representation<ApproxComplex>,
        SchottkyGauge<ApproxComplex>,
    ),
    SchottkyError<ApproxComplex>,
> {
    let g = t.g();
    let t_approx = t.to_approx();
    let mut total_images = vec![Matrix::zeros(0, 0); g];
    let mut total_gauge = vec![Matrix::zeros(0, 0); g];
    for component in components {
        if component.unipotent.group() != t.lattice() {
            return Err(SchottkyError::GroupMismatch(
                "unipotent part is not over this torus's lattice",
            ));
        }
        let (sigma_u, gauge_u) = schottkyize_unipotent(t, &component.unipotent)
            .map_err(lift_error)?;
        let (sigma_chi, gauge_chi) = schottkyize_character(&t_approx, &component.character)?;
        let sigma_u = sigma_u.to_approx();
        let r = sigma_u.rank();
        for i in 0..g {
            let block = sigma_chi.image(i).kron(sigma_u.image(i));
            total_images[i] = total_images[i].direct_sum(&block);
        }
        for (j, target) in total_gauge.iter_mut().enumerate() {
            let a_val = gauge_chi.coefficients[j][(0, 0)];
            let block = &Matrix::scalar_matrix(r, &a_val)
                + &gauge_u.coefficients[j].map(GaussianRational::to_approx);
            *target = target.direct_sum(&block);
        }
    }
    let sigma = Representation::new(GroupSpec::free_abelian(g)?, total_images)
        .map_err(|_| SchottkyError::Internal("flat-sum Schottky images failed validation"))?;
    Ok((
        sigma,
        SchottkyGauge {
            coefficients: total_gauge,
        },
    ))
}

fn lift_error(e: SchottkyError<GaussianRational>) -> SchottkyError<ApproxComplex> {
    match e {
        SchottkyError::Group(g) => SchottkyError::Group(g),
        SchottkyError::GroupMismatch(m) => SchottkyError::GroupMismatch(m),
        SchottkyError::ShapeMismatch(m) => SchottkyError::ShapeMismatch(m),
        SchottkyError::NotUnipotent(w) => SchottkyError::NotUnipotent(w),
        SchottkyError::BackendMismatch { expected, got } => {
            SchottkyError::BackendMismatch { expected, got }
        }
        SchottkyError::Numeric(n) => SchottkyError::Numeric(n),
        SchottkyError::Rep(_) => SchottkyError::Internal("exact representation error in flat sum"),
        SchottkyError::Internal(m) => SchottkyError::Internal(m),
    }
}

/// Re-checks everything a Schottky gauge claims, on either backend.
///
/// Exact inputs are compared structurally, approximate ones within the
/// given tolerance. The identities: each A_j nilpotent (exact backend
/// only — float nilpotency is not decidable), pairwise commutation,
/// commutation with the whole image of rho, exp(A_j) rho(lambda_{g+j}) = I,
/// and the transport identity
/// exp(sum_j c(lambda)_j A_j) rho(lambda) = sigma(alpha(lambda)) for every
/// lattice generator, with c(lambda) the coordinate row from the period.
pub fn verify_gauge<S: Scalar>(
    t: &TorusData<S>,
    rho: &Representation<S>,
    sigma: &Representation<S>,
    gauge: &SchottkyGauge<S>,
    tol: Tolerance,
) -> GaugeCheck<S> {
    let g = t.g();
    let r = rho.rank();
    let fail = |identity: String, residual: Matrix<S>| {
        GaugeCheck::Failed(GaugeFailure { identity, residual })
    };
    if rho.group() != t.lattice() {
        return fail(format!("rho is not over this torus's lattice"), Matrix::zeros(0, 0));
    }
    let expected_sigma_group = match GroupSpec::free_abelian(g) {
        Ok(spec) => spec,
        Err(_) => return fail(format!("torus has rank 0"), Matrix::zeros(0, 0)),
    };
    if sigma.group() != &expected_sigma_group || sigma.rank() != r {
        return fail(
            format!("sigma must be a rank-{r} representation of the free abelian quotient"),
            Matrix::zeros(0, 0),
        );
    }
    if gauge.coefficients.len() != g
        || gauge
            .coefficients
            .iter()
            .any(|a| a.rows() != r || a.cols() != r)
    {
        return fail(format!("gauge must hold {g} coefficients of size {r}"), Matrix::zeros(0, 0));
    }

    let mut checked = 0usize;
    if S::BACKEND == Backend::Exact {
        for (j, a) in gauge.coefficients.iter().enumerate() {
            if a.nilpotency_index().is_err() {
                return fail(format!("A_{} is not nilpotent", j + 1), a.clone());
            }
            checked += 1;
        }
    }
    for (j, a) in gauge.coefficients.iter().enumerate() {
        for (k, b) in gauge.coefficients.iter().enumerate().skip(j + 1) {
            let residual = &(a * b) - &(b * a);
            if !residual.eq_within(&Matrix::zeros(r, r), tol) {
                return fail(format!("A_{} and A_{} do not commute", j + 1, k + 1), residual);
            }
            checked += 1;
        }
        for (k, img) in rho.images().iter().enumerate() {
            let residual = &(a * img) - &(img * a);
            if !residual.eq_within(&Matrix::zeros(r, r), tol) {
                return fail(
                    format!("A_{} does not commute with rho(lambda_{})", j + 1, k + 1),
                    residual,
                );
            }
            checked += 1;
        }
        let exp_a = match S::matrix_exp(a) {
            Ok(m) => m,
            Err(_) => return fail(format!("exp(A_{}) is undefined", j + 1), a.clone()),
        };
        let prod = &exp_a * rho.image(g + j);
        if !prod.eq_within(&Matrix::identity(r), tol) {
            return fail(
                format!("exp(A_{}) rho(lambda_{}) is not the identity", j + 1, g + j + 1),
                prod,
            );
        }
        checked += 1;
    }

    for k in 0..2 * g {
        let row = t
            .lattice()
            .coordinate_row(k)
            .expect("generator index in range");
        let mut sum = Matrix::zeros(r, r);
        for (j, a) in gauge.coefficients.iter().enumerate() {
            sum = &sum + &a.scale(&row[j]);
        }
        let transport = match S::matrix_exp(&sum) {
            Ok(m) => m,
            Err(_) => {
                return fail(
                    format!("transport exponential for lambda_{} is undefined", k + 1),
                    sum,
                )
            }
        };
        let lhs = &transport * rho.image(k);
        let rhs = match sigma.evaluate(t.alpha().image(k)) {
            Ok(m) => m,
            Err(_) => {
                return fail(
                    format!("sigma cannot evaluate alpha(lambda_{})", k + 1),
                    Matrix::zeros(0, 0),
                )
            }
        };
        if !lhs.eq_within(&rhs, tol) {
            return fail(
                format!(
                    "transport identity fails at lambda_{}: exp(sum c_j A_j) rho != sigma(alpha)",
                    k + 1
                ),
                &lhs - &rhs,
            );
        }
        checked += 1;
    }
    GaugeCheck::Verified(GaugeCertificate {
        identities_checked: checked,
    })
}

fn kernel_generator_images<'a, S: Scalar>(
    rho: &'a Representation<S>,
    alpha: &Morphism,
) -> Result<Vec<&'a Matrix<S>>, SchottkyError<S>> {
    if alpha.source() != rho.group().shape() {
        return Err(SchottkyError::GroupMismatch(
            "morphism source does not match the representation",
        ));
    }
    Ok(alpha
        .images()
        .iter()
        .enumerate()
        .filter(|(_, w)| w.is_identity())
        .map(|(k, _)| rho.image(k))
        .collect())
}

/// True iff rho kills every generator alpha kills — i.e. rho factors
/// through the quotient and is induced by a module on the torus.
pub fn is_schottky_module<S: Scalar>(
    rho: &Representation<S>,
    alpha: &Morphism,
    tol: Tolerance,
) -> Result<bool, SchottkyError<S>> {
    let id = Matrix::identity(rho.rank());
    Ok(kernel_generator_images(rho, alpha)?
        .into_iter()
        .all(|img| img.eq_within(&id, tol)))
}

/// True iff every alpha-kernel generator maps to a scalar matrix: the
/// principal-bundle analogue, where only the centre must be hit.
pub fn is_principal_schottky<S: Scalar>(
    rho: &Representation<S>,
    alpha: &Morphism,
    tol: Tolerance,
) -> Result<bool, SchottkyError<S>> {
    Ok(kernel_generator_images(rho, alpha)?
        .into_iter()
        .all(|img| img.is_scalar_within(tol)))
}

/// Whether the adjoint representation is a Schottky module: the criterion
/// for the adjoint bundle of a principal bundle to be Schottky.
pub fn ad_schottky_check<S: Scalar>(
    rho: &Representation<S>,
    alpha: &Morphism,
    tol: Tolerance,
) -> Result<bool, SchottkyError<S>> {
    let ad = rho.adjoint_rep()?;
    is_schottky_module(&ad, alpha, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational as Q;

    fn qm(rows: Vec<Vec<i64>>) -> Matrix<Q> {
        Matrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Q::from_int).collect())
                .collect(),
        )
        .unwrap()
    }

    fn torus_i() -> TorusData<Q> {
        // g = 1, Z = [[i]]
        TorusData::new(Matrix::from_rows(vec![vec![Q::i()]]).unwrap()).unwrap()
    }

    fn am(entries: Vec<Vec<(f64, f64)>>) -> Matrix<ApproxComplex> {
        Matrix::from_rows(
            entries
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|(re, im)| ApproxComplex::new(re, im).unwrap())
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn unipotent_worked_example() {
        let t = torus_i();
        let u = qm(vec![vec![1, 1], vec![0, 1]]);
        let rho = Representation::new(t.lattice().clone(), vec![u.clone(), u]).unwrap();
        let (sigma, gauge) = schottkyize_unipotent(&t, &rho).unwrap();
        assert_eq!(gauge.coefficients[0], qm(vec![vec![0, -1], vec![0, 0]]));
        let expect = Matrix::from_rows(vec![
            vec![Q::one(), Q::one().sub(&Q::i())],
            vec![Q::zero(), Q::one()],
        ])
        .unwrap();
        assert_eq!(sigma.image(0), &expect);
        assert!(verify_gauge(&t, &rho, &sigma, &gauge, Tolerance::default()).is_verified());
    }

    #[test]
    fn trivial_and_pullback_inputs_are_fixed_points() {
        let t = torus_i();
        let rho = Representation::trivial(t.lattice().clone(), 2);
        let (sigma, gauge) = schottkyize_unipotent(&t, &rho).unwrap();
        assert!(sigma.image(0).is_identity());
        assert!(gauge.coefficients[0].is_zero());

        // an already-Schottky input returns tau and a zero gauge, exactly
        let tau = Representation::new(
            GroupSpec::free_abelian(1).unwrap(),
            vec![qm(vec![vec![1, 1], vec![0, 1]])],
        )
        .unwrap();
        let rho = tau.pullback(t.alpha(), t.lattice()).unwrap();
        let (sigma, gauge) = schottkyize_unipotent(&t, &rho).unwrap();
        assert_eq!(&sigma, &tau);
        assert!(gauge.coefficients[0].is_zero());
    }

    #[test]
    fn non_unipotent_input_is_rejected() {
        let t = torus_i();
        let rho = Representation::new(
            t.lattice().clone(),
            vec![qm(vec![vec![2]]), qm(vec![vec![1]])],
        )
        .unwrap();
        assert!(matches!(
            schottkyize_unipotent(&t, &rho),
            Err(SchottkyError::NotUnipotent(_))
        ));
    }

    #[test]
    fn tampered_gauge_fails_verification() {
        let t = torus_i();
        let u = qm(vec![vec![1, 1], vec![0, 1]]);
        let rho = Representation::new(t.lattice().clone(), vec![u.clone(), u]).unwrap();
        let (sigma, mut gauge) = schottkyize_unipotent(&t, &rho).unwrap();
        gauge.coefficients[0] = &gauge.coefficients[0] + &qm(vec![vec![0, 1], vec![0, 0]]);
        match verify_gauge(&t, &rho, &sigma, &gauge, Tolerance::default()) {
            GaugeCheck::Failed(failure) => {
                assert!(failure.identity.contains("exp(A_1)"), "{}", failure.identity);
            }
            GaugeCheck::Verified(_) => panic!("tampered gauge must not verify"),
        }
    }

    #[test]
    fn character_worked_example() {
        // g = 1, Z = [[i]], chi(lambda_1) = c, chi(lambda_2) = -1:
        // A_1 = -i pi, sigma(B_1) = exp(i * (-i pi)) c = e^pi c
        let t = TorusData::new(am(vec![vec![(0.0, 1.0)]])).unwrap();
        let c = ApproxComplex::new(0.3, -0.7).unwrap();
        let chi = Representation::new(
            t.lattice().clone(),
            vec![
                Matrix::from_rows(vec![vec![c]]).unwrap(),
                am(vec![vec![(-1.0, 0.0)]]),
            ],
        )
        .unwrap();
        let (sigma, gauge) = schottkyize_character(&t, &chi).unwrap();
        let a1 = gauge.coefficients[0][(0, 0)];
        assert!((a1.re()).abs() < 1e-12);
        assert!((a1.im() + core::f64::consts::PI).abs() < 1e-12);
        let expect = c.mul(
            &ApproxComplex::new(core::f64::consts::PI, 0.0)
                .unwrap()
                .exp()
                .unwrap(),
        );
        assert!(sigma.image(0)[(0, 0)].eq_within(&expect, Tolerance::default()));
        assert!(verify_gauge(&t, &chi, &sigma, &gauge, Tolerance::default()).is_verified());

        // already-Schottky characters come back unchanged within eps
        let chi = Representation::new(
            t.lattice().clone(),
            vec![
                Matrix::from_rows(vec![vec![c]]).unwrap(),
                am(vec![vec![(1.0, 0.0)]]),
            ],
        )
        .unwrap();
        let (sigma, _) = schottkyize_character(&t, &chi).unwrap();
        assert!(sigma.image(0)[(0, 0)].eq_within(&c, Tolerance::default()));
    }

    #[test]
    fn flat_sum_combines_components() {
        let t = torus_i();
        let t_approx = t.to_approx();
        let u = qm(vec![vec![1, 1], vec![0, 1]]);
        let unipotent = Representation::new(t.lattice().clone(), vec![u.clone(), u]).unwrap();
        let trivial_chi = Representation::trivial(t_approx.lattice().clone(), 1);
        let component = FlatComponent {
            character: trivial_chi.clone(),
            unipotent: unipotent.clone(),
        };
        let (sigma, gauge) = schottkyize_flat_sum(&t, &[component.clone()]).unwrap();
        assert_eq!(sigma.rank(), 2);
        let expect = am(vec![vec![(1.0, 0.0), (1.0, -1.0)], vec![(0.0, 0.0), (1.0, 0.0)]]);
        assert!(sigma.image(0).eq_within(&expect, Tolerance::default()));

        // two components: block diagonal, ranks add, and the gauge verifies
        // against the assembled flat representation
        let (sigma2, gauge2) =
            schottkyize_flat_sum(&t, &[component.clone(), component]).unwrap();
        assert_eq!(sigma2.rank(), 4);
        let rho_lift = unipotent.to_approx();
        let mut images = Vec::new();
        for k in 0..2 {
            let block = trivial_chi.image(k).kron(rho_lift.image(k));
            images.push(block.direct_sum(&trivial_chi.image(k).kron(rho_lift.image(k))));
        }
        let rho_total = Representation::new(t_approx.lattice().clone(), images).unwrap();
        assert!(
            verify_gauge(&t_approx, &rho_total, &sigma2, &gauge2, Tolerance::default())
                .is_verified()
        );
        let _ = gauge;
    }

    #[test]
    fn schottky_predicates() {
        let t = torus_i();
        let tol = Tolerance::default();
        // pulled-back reps are Schottky modules
        let tau = Representation::new(
            GroupSpec::free_abelian(1).unwrap(),
            vec![qm(vec![vec![1, 1], vec![0, 1]])],
        )
        .unwrap();
        let rho = tau.pullback(t.alpha(), t.lattice()).unwrap();
        assert!(is_schottky_module(&rho, t.alpha(), tol).unwrap());
        assert!(is_principal_schottky(&rho, t.alpha(), tol).unwrap());

        // the worked example moves lambda_2, so it is not Schottky
        let u = qm(vec![vec![1, 1], vec![0, 1]]);
        let rho =
            Representation::new(t.lattice().clone(), vec![u.clone(), u.clone()]).unwrap();
        assert!(!is_schottky_module(&rho, t.alpha(), tol).unwrap());
        assert!(!is_principal_schottky(&rho, t.alpha(), tol).unwrap());
        assert!(!ad_schottky_check(&rho, t.alpha(), tol).unwrap());

        // scalar kernel images: principal but not Schottky; Ad kills them
        let rho = Representation::new(
            t.lattice().clone(),
            vec![u.clone(), qm(vec![vec![2, 0], vec![0, 2]])],
        )
        .unwrap();
        assert!(!is_schottky_module(&rho, t.alpha(), tol).unwrap());
        assert!(is_principal_schottky(&rho, t.alpha(), tol).unwrap());
        assert!(ad_schottky_check(&rho, t.alpha(), tol).unwrap());
    }
}
