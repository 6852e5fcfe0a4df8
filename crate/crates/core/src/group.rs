//! Source groups, words, and comparison morphisms.
//!
//! Four group kinds appear: free groups F_g, free abelian groups Z^g,
//! period lattices of complex tori (free abelian of rank 2g, decorated with
//! a symmetric invertible period matrix Z so that generator k has the
//! coordinate row Z_k for k < g and e_(k-g) for k >= g), and surface groups
//! of genus g. Surface groups carry their single relation but no word
//! problem: words there are free words on the 2g generators, and nothing in
//! this crate ever needs to decide equality of two surface words.
//!
//! The two comparison morphisms are `alpha_torus` (lattice onto Z^g,
//! killing the second block of generators) and `alpha_surface` (surface
//! group onto F_g, killing the a-generators).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::Matrix;
use crate::scalar::{GaussianRational, Scalar, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Free,
    FreeAbelian,
    Lattice,
    Surface,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Free => f.write_str("free"),
            GroupKind::FreeAbelian => f.write_str("free_abelian"),
            GroupKind::Lattice => f.write_str("lattice"),
            GroupKind::Surface => f.write_str("surface"),
        }
    }
}

/// Kind plus rank (genus for surface groups): everything a word or a
/// morphism needs to know about a group. Lattices of every period share a
/// shape; the period matrix only matters to the torus operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupShape {
    pub kind: GroupKind,
    pub rank: usize,
}

impl GroupShape {
    pub fn new(kind: GroupKind, rank: usize) -> Self {
        GroupShape { kind, rank }
    }

    /// Free and free abelian groups have `rank` generators; lattices and
    /// surface groups have `2 * rank`.
    pub fn generator_count(&self) -> usize {
        match self.kind {
            GroupKind::Free | GroupKind::FreeAbelian => self.rank,
            GroupKind::Lattice | GroupKind::Surface => 2 * self.rank,
        }
    }

    /// Whether words are exponent vectors rather than free words.
    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, GroupKind::FreeAbelian | GroupKind::Lattice)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupError {
    InvalidRank(&'static str),
    InvalidPeriod(&'static str),
    GeneratorOutOfRange { index: usize, count: usize },
    WordKindMismatch,
    LengthMismatch { expected: usize, got: usize },
    RelationViolated,
    IllDefined(&'static str),
    Parse(String),
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::InvalidRank(msg) => write!(f, "invalid rank: {msg}"),
            GroupError::InvalidPeriod(msg) => write!(f, "invalid period matrix: {msg}"),
            GroupError::GeneratorOutOfRange { index, count } => {
                write!(f, "generator index {index} out of range (count {count})")
            }
            GroupError::WordKindMismatch => f.write_str("word kind does not match group kind"),
            GroupError::LengthMismatch { expected, got } => {
                write!(f, "expected {expected} entries, got {got}")
            }
            GroupError::RelationViolated => f.write_str("morphism does not respect the surface relation"),
            GroupError::IllDefined(msg) => write!(f, "ill-defined morphism: {msg}"),
            GroupError::Parse(msg) => write!(f, "word parse error: {msg}"),
        }
    }
}

/// A group presentation, carrying the period matrix in the lattice case.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec<S: Scalar> {
    Free { rank: usize },
    FreeAbelian { rank: usize },
    Lattice { rank: usize, period: Matrix<S> },
    Surface { genus: usize },
}

impl<S: Scalar> GroupSpec<S> {
    pub fn free(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidRank("free group rank must be >= 1"));
        }
        Ok(GroupSpec::Free { rank })
    }

    pub fn free_abelian(rank: usize) -> Result<Self, GroupError> {
        if rank == 0 {
            return Err(GroupError::InvalidRank("free abelian rank must be >= 1"));
        }
        Ok(GroupSpec::FreeAbelian { rank })
    }

    /// A period lattice; the matrix must be square, symmetric, and
    /// invertible (symmetry within the default tolerance on the approximate
    /// backend, structural over the exact one).
    pub fn lattice(period: Matrix<S>) -> Result<Self, GroupError> {
        let g = period.rows();
        if g == 0 {
            return Err(GroupError::InvalidRank("lattice rank must be >= 1"));
        }
        if !period.is_square() {
            return Err(GroupError::InvalidPeriod("period matrix must be square"));
        }
        if !period.eq_within(&period.transpose(), Tolerance::default()) {
            return Err(GroupError::InvalidPeriod("period matrix must be symmetric"));
        }
        if period.rank() != g {
            return Err(GroupError::InvalidPeriod("period matrix must be invertible"));
        }
        Ok(GroupSpec::Lattice { rank: g, period })
    }

    pub fn surface(genus: usize) -> Result<Self, GroupError> {
        if genus == 0 {
            return Err(GroupError::InvalidRank("surface genus must be >= 1"));
        }
        Ok(GroupSpec::Surface { genus })
    }

    pub fn kind(&self) -> GroupKind {
        match self {
            GroupSpec::Free { .. } => GroupKind::Free,
            GroupSpec::FreeAbelian { .. } => GroupKind::FreeAbelian,
            GroupSpec::Lattice { .. } => GroupKind::Lattice,
            GroupSpec::Surface { .. } => GroupKind::Surface,
        }
    }

    /// Rank, or genus for surface groups.
    pub fn rank(&self) -> usize {
        match self {
            GroupSpec::Free { rank }
            | GroupSpec::FreeAbelian { rank }
            | GroupSpec::Lattice { rank, .. } => *rank,
            GroupSpec::Surface { genus } => *genus,
        }
    }

    pub fn shape(&self) -> GroupShape {
        GroupShape::new(self.kind(), self.rank())
    }

    pub fn generator_count(&self) -> usize {
        self.shape().generator_count()
    }

    pub fn period(&self) -> Option<&Matrix<S>> {
        match self {
            GroupSpec::Lattice { period, .. } => Some(period),
            _ => None,
        }
    }

    /// Coordinate row of lattice generator k with respect to the standard
    /// basis of C^g: row k of the period matrix for k < g, the standard
    /// basis row e_(k-g) for k >= g.
    pub fn coordinate_row(&self, k: usize) -> Option<Vec<S>> {
        let GroupSpec::Lattice { rank, period } = self else {
            return None;
        };
        let g = *rank;
        if k < g {
            Some(period.row(k))
        } else if k < 2 * g {
            let mut row = vec![S::zero(); g];
            row[k - g] = S::one();
            Some(row)
        } else {
            None
        }
    }
}

impl GroupSpec<GaussianRational> {
    pub fn to_approx(&self) -> GroupSpec<crate::scalar::ApproxComplex> {
        match self {
            GroupSpec::Free { rank } => GroupSpec::Free { rank: *rank },
            GroupSpec::FreeAbelian { rank } => GroupSpec::FreeAbelian { rank: *rank },
            GroupSpec::Lattice { rank, period } => GroupSpec::Lattice {
                rank: *rank,
                period: period.map(GaussianRational::to_approx),
            },
            GroupSpec::Surface { genus } => GroupSpec::Surface { genus: *genus },
        }
    }
}

/// A group element in the only two shapes that admit canonical forms:
/// reduced free words (runs of generator powers, no zero exponents, no
/// adjacent runs on the same generator) and integer exponent vectors.
/// Surface-group elements are carried as free words on the 2g generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Word {
    Free(Vec<(usize, i64)>),
    Abelian(Vec<i64>),
}

fn reduce_runs(runs: impl IntoIterator<Item = (usize, i64)>) -> Vec<(usize, i64)> {
    let mut out: Vec<(usize, i64)> = Vec::new();
    for (g, e) in runs {
        if e == 0 {
            continue;
        }
        if let Some(last) = out.last_mut() {
            if last.0 == g {
                last.1 += e;
                if last.1 == 0 {
                    out.pop();
                }
                continue;
            }
        }
        out.push((g, e));
    }
    out
}

impl Word {
    /// The empty free word.
    pub fn identity_free() -> Self {
        Word::Free(Vec::new())
    }

    /// The zero exponent vector of the given length.
    pub fn identity_abelian(len: usize) -> Self {
        Word::Abelian(vec![0; len])
    }

    /// A reduced free word from arbitrary runs.
    pub fn free(runs: Vec<(usize, i64)>) -> Self {
        Word::Free(reduce_runs(runs))
    }

    pub fn abelian(v: Vec<i64>) -> Self {
        Word::Abelian(v)
    }

    /// The generator `index` as a word of the right kind for `shape`.
    pub fn generator(shape: GroupShape, index: usize) -> Result<Self, GroupError> {
        let count = shape.generator_count();
        if index >= count {
            return Err(GroupError::GeneratorOutOfRange { index, count });
        }
        if shape.is_abelian() {
            let mut v = vec![0; count];
            v[index] = 1;
            Ok(Word::Abelian(v))
        } else {
            Ok(Word::Free(vec![(index, 1)]))
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Word::Free(runs) => runs.is_empty(),
            Word::Abelian(v) => v.iter().all(|&n| n == 0),
        }
    }

    pub fn valid_for(&self, shape: GroupShape) -> bool {
        let count = shape.generator_count();
        match (self, shape.is_abelian()) {
            (Word::Free(runs), false) => runs.iter().all(|&(g, _)| g < count),
            (Word::Abelian(v), true) => v.len() == count,
            _ => false,
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Word::Free(runs) => {
                Word::Free(runs.iter().rev().map(|&(g, e)| (g, -e)).collect())
            }
            Word::Abelian(v) => Word::Abelian(v.iter().map(|&n| -n).collect()),
        }
    }

    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        match (self, other) {
            (Word::Free(a), Word::Free(b)) => {
                Ok(Word::Free(reduce_runs(a.iter().chain(b.iter()).copied())))
            }
            (Word::Abelian(a), Word::Abelian(b)) => {
                if a.len() != b.len() {
                    return Err(GroupError::LengthMismatch {
                        expected: a.len(),
                        got: b.len(),
                    });
                }
                Ok(Word::Abelian(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            _ => Err(GroupError::WordKindMismatch),
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        match self {
            Word::Abelian(v) => Word::Abelian(v.iter().map(|&x| x * n).collect()),
            Word::Free(_) => {
                let base = if n < 0 { self.inverse() } else { self.clone() };
                let mut acc = Word::identity_free();
                for _ in 0..n.unsigned_abs() {
                    acc = acc.compose(&base).expect("free words compose");
                }
                acc
            }
        }
    }
}

/// The surface relation word: the product of commutators
/// [a_1, b_1] ... [a_g, b_g], with a_i at index i and b_i at index g + i.
pub fn surface_relator(genus: usize) -> Word {
    let mut runs = Vec::with_capacity(4 * genus);
    for i in 0..genus {
        runs.push((i, 1));
        runs.push((genus + i, 1));
        runs.push((i, -1));
        runs.push((genus + i, -1));
    }
    Word::free(runs)
}

// ---------------------------------------------------------------------------
// Word text forms
// ---------------------------------------------------------------------------

fn generator_name(shape: GroupShape, index: usize) -> String {
    match shape.kind {
        GroupKind::Surface => {
            if index < shape.rank {
                alloc::format!("a{}", index + 1)
            } else {
                alloc::format!("b{}", index - shape.rank + 1)
            }
        }
        _ => alloc::format!("B{}", index + 1),
    }
}

/// Prints a word in its group's textual form: `B1^2*B2^-1` for free words
/// (generator names `a1..ag, b1..bg` for surface groups, identity `e`), and
/// `[2,-1]` for exponent vectors.
pub fn format_word(w: &Word, shape: GroupShape) -> String {
    match w {
        Word::Free(runs) => {
            if runs.is_empty() {
                return "e".to_string();
            }
            let mut parts = Vec::with_capacity(runs.len());
            for &(g, e) in runs {
                let name = generator_name(shape, g);
                if e == 1 {
                    parts.push(name);
                } else {
                    parts.push(alloc::format!("{name}^{e}"));
                }
            }
            parts.join("*")
        }
        Word::Abelian(v) => {
            let parts: Vec<String> = v.iter().map(|n| n.to_string()).collect();
            alloc::format!("[{}]", parts.join(","))
        }
    }
}

fn parse_generator(token: &str, shape: GroupShape) -> Result<usize, GroupError> {
    let bad = || GroupError::Parse(token.to_string());
    let (letter, digits) = token.split_at(1);
    let n: usize = digits.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    let index = match (shape.kind, letter) {
        (GroupKind::Surface, "a") => n - 1,
        (GroupKind::Surface, "b") => shape.rank + n - 1,
        (GroupKind::Surface, _) => return Err(bad()),
        (_, "B") => n - 1,
        _ => return Err(bad()),
    };
    let count = shape.generator_count();
    if index >= count {
        return Err(GroupError::GeneratorOutOfRange { index, count });
    }
    Ok(index)
}

/// Parses the textual word form accepted for `shape`; see [`format_word`].
pub fn parse_word(s: &str, shape: GroupShape) -> Result<Word, GroupError> {
    let t = s.trim();
    if shape.is_abelian() {
        let inner = t
            .strip_prefix('[')
            .and_then(|u| u.strip_suffix(']'))
            .ok_or_else(|| GroupError::Parse(t.to_string()))?;
        let v: Vec<i64> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| p.trim().parse().map_err(|_| GroupError::Parse(p.to_string())))
                .collect::<Result<_, _>>()?
        };
        if v.len() != shape.generator_count() {
            return Err(GroupError::LengthMismatch {
                expected: shape.generator_count(),
                got: v.len(),
            });
        }
        Ok(Word::Abelian(v))
    } else {
        if t.is_empty() || t == "e" {
            return Ok(Word::identity_free());
        }
        let mut runs = Vec::new();
        for token in t.split('*') {
            let token = token.trim();
            let (gen_part, exp) = match token.split_once('^') {
                None => (token, 1),
                Some((g, e)) => (
                    g,
                    e.parse::<i64>()
                        .map_err(|_| GroupError::Parse(token.to_string()))?,
                ),
            };
            if gen_part.len() < 2 {
                return Err(GroupError::Parse(token.to_string()));
            }
            runs.push((parse_generator(gen_part, shape)?, exp));
        }
        Ok(Word::free(runs))
    }
}

// ---------------------------------------------------------------------------
// Morphisms
// ---------------------------------------------------------------------------

/// A group morphism given by generator images.
///
/// Construction checks that each image lives in the target and, for surface
/// sources with a free or abelian target, that the surface relation maps to
/// the identity. Morphisms out of an abelian group into a non-abelian
/// target are rejected: they would be well defined only when the images
/// commute, which free words cannot certify.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    source: GroupShape,
    target: GroupShape,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(
        source: GroupShape,
        target: GroupShape,
        images: Vec<Word>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.generator_count() {
            return Err(GroupError::LengthMismatch {
                expected: source.generator_count(),
                got: images.len(),
            });
        }
        if source.is_abelian() && !target.is_abelian() {
            return Err(GroupError::IllDefined(
                "abelian source needs an abelian target",
            ));
        }
        for img in &images {
            if !img.valid_for(target) {
                return Err(GroupError::WordKindMismatch);
            }
        }
        let m = Morphism {
            source,
            target,
            images,
        };
        // A surface source must kill the relator. In a free or abelian
        // target this is decidable by canonical reduction. Surface targets
        // have no word problem, so nothing can be checked there.
        if source.kind == GroupKind::Surface && target.kind != GroupKind::Surface {
            let image = m.apply(&surface_relator(source.rank))?;
            if !image.is_identity() {
                return Err(GroupError::RelationViolated);
            }
        }
        Ok(m)
    }

    pub fn source(&self) -> GroupShape {
        self.source
    }

    pub fn target(&self) -> GroupShape {
        self.target
    }

    pub fn image(&self, generator: usize) -> &Word {
        &self.images[generator]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// The image of a word, reduced in the target.
    pub fn apply(&self, w: &Word) -> Result<Word, GroupError> {
        if !w.valid_for(self.source) {
            return Err(GroupError::WordKindMismatch);
        }
        let identity = if self.target.is_abelian() {
            Word::identity_abelian(self.target.generator_count())
        } else {
            Word::identity_free()
        };
        match w {
            Word::Free(runs) => {
                let mut acc = identity;
                for &(g, e) in runs {
                    acc = acc.compose(&self.images[g].pow(e))?;
                }
                Ok(acc)
            }
            Word::Abelian(v) => {
                let mut acc = identity;
                for (g, &n) in v.iter().enumerate() {
                    acc = acc.compose(&self.images[g].pow(n))?;
                }
                Ok(acc)
            }
        }
    }
}

/// The torus comparison morphism: lattice generator k maps to the k-th
/// generator of Z^g for k < g and to the identity for k >= g.
pub fn alpha_torus(g: usize) -> Morphism {
    assert!(g >= 1, "torus rank must be >= 1");
    let source = GroupShape::new(GroupKind::Lattice, g);
    let target = GroupShape::new(GroupKind::FreeAbelian, g);
    let mut images = Vec::with_capacity(2 * g);
    for i in 0..g {
        let mut v = vec![0; g];
        v[i] = 1;
        images.push(Word::Abelian(v));
    }
    for _ in 0..g {
        images.push(Word::identity_abelian(g));
    }
    Morphism::new(source, target, images).expect("alpha_torus is well formed")
}

/// The surface comparison morphism: a_i maps to the identity and b_i to the
/// i-th generator of F_g. The surface relation maps to a commutator in the
/// images of the a_i, hence to the identity.
pub fn alpha_surface(g: usize) -> Morphism {
    assert!(g >= 1, "surface genus must be >= 1");
    let source = GroupShape::new(GroupKind::Surface, g);
    let target = GroupShape::new(GroupKind::Free, g);
    let mut images = Vec::with_capacity(2 * g);
    for _ in 0..g {
        images.push(Word::identity_free());
    }
    for i in 0..g {
        images.push(Word::Free(vec![(i, 1)]));
    }
    Morphism::new(source, target, images).expect("alpha_surface kills the relator")
}
