//! Seeded random generators shared by the property and acceptance suites.
#![allow(dead_code)] // each suite compiles this module separately and uses its own subset
//!
//! Everything is driven by an explicit ChaCha stream so failures replay.
//! Commuting unipotent families are built honestly — by iterated rank-one
//! extensions whose compatibility system is solved with the linear-algebra
//! kernel, not by sampling upper-triangular matrices that happen to
//! commute — and then conjugated away from triangular form.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use schottky_core::cohomology::{h1, Cocycle};
use schottky_core::group::GroupSpec;
use schottky_core::linalg::Matrix;
use schottky_core::rep::Representation;
use schottky_core::scalar::{ApproxComplex, GaussianRational, Scalar};

pub type Q = GaussianRational;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A Gaussian rational with numerators and denominators bounded by 7.
pub fn small_q(rng: &mut ChaCha8Rng) -> Q {
    let nr = rng.gen_range(-7i64..=7);
    let dr = rng.gen_range(1i64..=7);
    let ni = rng.gen_range(-7i64..=7);
    let di = rng.gen_range(1i64..=7);
    Q::ratio_complex(nr, dr, ni, di).expect("denominators are nonzero")
}

/// A nonzero Gaussian rational with the same bounds.
pub fn small_q_nonzero(rng: &mut ChaCha8Rng) -> Q {
    loop {
        let q = small_q(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

pub fn small_int(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    Q::from_int(rng.gen_range(-bound..=bound))
}

/// A random product of elementary shear matrices: integer entries,
/// determinant one, deterministic from the stream. Used to conjugate
/// families away from upper-triangular form without blowing up entry
/// sizes.
pub fn random_unimodular(rng: &mut ChaCha8Rng, r: usize) -> Matrix<Q> {
    let mut p = Matrix::identity(r);
    if r < 2 {
        return p;
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..r);
        let j = rng.gen_range(0..r);
        if i == j {
            continue;
        }
        let mut e = Matrix::identity(r);
        e[(i, j)] = small_int(rng, 2);
        p = &p * &e;
    }
    p
}

/// n pairwise-commuting unipotent r x r matrices over Q(i).
///
/// Built by induction on the rank: a commuting family (A_k) of rank m
/// extends to ([[A_k, c_k], [0, 1]]) iff the columns satisfy
/// (A_i - I) c_j = (A_j - I) c_i for all pairs — the same compatibility
/// that makes block images of an extension commute. The solution space is
/// computed exactly and a random small-integer combination is taken, then
/// the finished family is conjugated by a random unimodular matrix.
pub fn commuting_unipotent_family(rng: &mut ChaCha8Rng, n: usize, r: usize) -> Vec<Matrix<Q>> {
    let mut family = vec![Matrix::identity(1); n];
    for m in 1..r {
        let dim = n * m;
        let id = Matrix::identity(m);
        let mut system = Matrix::zeros(0, dim);
        for i in 0..n {
            let di = &family[i] - &id;
            for j in (i + 1)..n {
                let dj = &family[j] - &id;
                let mut row_block = Matrix::zeros(m, dim);
                row_block.set_block(0, j * m, &di);
                row_block.set_block(0, i * m, &dj.scale(&Q::from_int(-1)));
                system = system.vstack(&row_block).expect("widths agree");
            }
        }
        let basis = system.kernel_basis();
        let mut c = vec![Q::zero(); dim];
        for b in &basis {
            let coef = small_int(rng, 2);
            if coef.is_zero() {
                continue;
            }
            for (ck, bk) in c.iter_mut().zip(b) {
                *ck = ck.add(&coef.mul(bk));
            }
        }
        family = family
            .iter()
            .enumerate()
            .map(|(k, a)| {
                let mut e = Matrix::zeros(m + 1, m + 1);
                e.set_block(0, 0, a);
                for row in 0..m {
                    e[(row, m)] = c[k * m + row].clone();
                }
                e[(m, m)] = Q::one();
                e
            })
            .collect();
    }
    let p = random_unimodular(rng, r);
    let p_inv = p.inverse().expect("unimodular");
    family.iter().map(|a| &(&p_inv * a) * &p).collect()
}

/// A random symmetric invertible g x g period matrix over Q(i).
pub fn random_period(rng: &mut ChaCha8Rng, g: usize) -> Matrix<Q> {
    loop {
        let mut z = Matrix::zeros(g, g);
        for i in 0..g {
            for j in i..g {
                let v = small_q(rng);
                z[(i, j)] = v.clone();
                z[(j, i)] = v;
            }
        }
        if z.rank() == g {
            return z;
        }
    }
}

/// A symmetric invertible period with entries of magnitude below one, for
/// the numeric suites: it keeps the transport exponentials within floating
/// range for any character with |chi| in [1e-2, 1e2].
pub fn random_mild_period(rng: &mut ChaCha8Rng, g: usize) -> Matrix<Q> {
    loop {
        let mut z = Matrix::zeros(g, g);
        for i in 0..g {
            for j in i..g {
                let nr = rng.gen_range(-1i64..=1);
                let ni = rng.gen_range(-1i64..=1);
                let d = rng.gen_range(2i64..=4);
                let v = Q::ratio_complex(nr, d, ni, d).unwrap();
                z[(i, j)] = v.clone();
                z[(j, i)] = v;
            }
        }
        if z.rank() == g {
            return z;
        }
    }
}

/// A random unipotent representation of a free abelian or lattice group.
pub fn random_commuting_unipotent_rep(
    rng: &mut ChaCha8Rng,
    group: GroupSpec<Q>,
    r: usize,
) -> Representation<Q> {
    let family = commuting_unipotent_family(rng, group.generator_count(), r);
    Representation::new(group, family).expect("family commutes by construction")
}

/// A random unipotent representation of a free group: no relations, so the
/// images are independent conjugated unitriangular matrices.
pub fn random_free_unipotent_rep(
    rng: &mut ChaCha8Rng,
    g: usize,
    r: usize,
) -> Representation<Q> {
    let p = random_unimodular(rng, r);
    let p_inv = p.inverse().expect("unimodular");
    let images = (0..g)
        .map(|_| {
            let u = Matrix::from_fn(r, r, |i, j| {
                if i == j {
                    Q::one()
                } else if j > i {
                    small_q(rng)
                } else {
                    Q::zero()
                }
            });
            &(&p_inv * &u) * &p
        })
        .collect();
    Representation::new(GroupSpec::free(g).unwrap(), images).expect("unipotent images invert")
}

/// A random invertible matrix with small entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, r: usize) -> Matrix<Q> {
    loop {
        let m = Matrix::from_fn(r, r, |_, _| small_q(rng));
        if m.rank() == r {
            return m;
        }
    }
}

pub fn values_from_flat(flat: &[Q], r: usize) -> Vec<Vec<Q>> {
    flat.chunks(r).map(|c| c.to_vec()).collect()
}

/// A random small-integer combination of the canonical cocycle basis, as
/// generator-wise values. Over a free group this is an arbitrary cocycle;
/// over a free abelian group the combination inherits the Koszul
/// compatibility from the basis.
pub fn random_cocycle(rng: &mut ChaCha8Rng, coefficients: &Representation<Q>) -> Cocycle<Q> {
    let basis = h1(coefficients).unwrap().cocycle_basis;
    let dim = coefficients.group().generator_count() * coefficients.rank();
    let mut flat = vec![Q::zero(); dim];
    for b in &basis {
        let coef = small_int(rng, 2);
        if coef.is_zero() {
            continue;
        }
        for (fk, bk) in flat.iter_mut().zip(b) {
            *fk = fk.add(&coef.mul(bk));
        }
    }
    Cocycle::new(
        coefficients.clone(),
        values_from_flat(&flat, coefficients.rank()),
    )
    .unwrap()
}

/// A random rank-1 character of a lattice group on the approximate
/// backend: magnitudes log-uniform in [1e-2, 1e2], uniform phase.
pub fn random_character(
    rng: &mut ChaCha8Rng,
    lattice: &GroupSpec<ApproxComplex>,
) -> Representation<ApproxComplex> {
    let n = lattice.generator_count();
    let images = (0..n)
        .map(|_| {
            let u: f64 = rng.gen_range(-2.0..=2.0);
            let theta: f64 = rng.gen_range(0.0..core::f64::consts::TAU);
            let m = 10f64.powf(u);
            Matrix::from_rows(vec![vec![
                ApproxComplex::new(m * theta.cos(), m * theta.sin()).unwrap(),
            ]])
            .unwrap()
        })
        .collect();
    Representation::new(lattice.clone(), images).expect("nonzero scalars commute")
}
