//! Finite quivers, their path algebras and canonical string representations.
//!
//! Paths store their arrows in traversal order: the first arrow of the
//! vector is applied first. In word notation `p = α_n ⋯ α_1` this is
//! `[α_1, …, α_n]`. Multiplication composes right to left: `p1 · p2` is
//! nonzero only when `p2` ends where `p1` starts.

mod expm;
mod gamma2;
mod rep;

pub use expm::matrix_exponential;
pub use gamma2::{gamma2_demo, Gamma2Check, Gamma2Report, Gamma2Sample};
pub use rep::{canonical_representation, rep_apply, to_complex_matrix, CanonicalRep, ExactMatrix};

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::ComplexRational;

pub type Vertex = usize;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("arrow {arrow} has endpoint {vertex} outside the vertex set 0..{count}")]
    UnknownVertex { arrow: String, vertex: Vertex, count: usize },
    #[error("vertex {0} does not exist")]
    NoSuchVertex(Vertex),
    #[error("arrow id {0} does not exist")]
    NoSuchArrow(usize),
    #[error("arrows {first} and {second} are not composable")]
    NotComposable { first: String, second: String },
    #[error("a composite path needs at least one arrow")]
    EmptyPath,
    #[error("canonical representations need a path of length at least one")]
    TrivialPath,
}

/// `Γ = (Γ₀, Γ₁, s, e)` with vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self, QuiverError> {
        for a in &arrows {
            for v in [a.source, a.target] {
                if v >= vertex_count {
                    return Err(QuiverError::UnknownVertex {
                        arrow: a.name.clone(),
                        vertex: v,
                        count: vertex_count,
                    });
                }
            }
        }
        Ok(Self { vertex_count, arrows })
    }

    /// Two vertices and one arrow `α: 1 → 0`.
    pub fn gamma2() -> Self {
        Self::new(
            2,
            vec![Arrow {
                name: "alpha".into(),
                source: 1,
                target: 0,
            }],
        )
        .expect("valid")
    }

    /// `n−1 → ⋯ → 1 → 0` with arrows `a_i: i+1 → i`.
    pub fn linear(n: usize) -> Self {
        let arrows = (0..n.saturating_sub(1))
            .map(|i| Arrow {
                name: format!("a{i}"),
                source: i + 1,
                target: i,
            })
            .collect();
        Self::new(n, arrows).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> Result<&Arrow, QuiverError> {
        self.arrows.get(id.0).ok_or(QuiverError::NoSuchArrow(id.0))
    }

    pub fn arrow_id(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    /// Every path of length at most `max_len`, trivial ones included.
    pub fn paths_up_to(&self, max_len: usize) -> Vec<Path> {
        let mut all: Vec<Path> = self.vertices().map(Path::trivial_unchecked).collect();
        let mut frontier: Vec<Path> = (0..self.arrows.len())
            .map(|i| self.arrow_path(ArrowId(i)).expect("in range"))
            .collect();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.end {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ArrowId(i));
                        next.push(Path {
                            start: p.start,
                            end: a.target,
                            arrows,
                        });
                    }
                }
            }
            all.append(&mut frontier);
            frontier = next;
        }
        all
    }

    pub fn arrow_path(&self, id: ArrowId) -> Result<Path, QuiverError> {
        Path::new(self, vec![id])
    }

    /// The unit `Σ_i ε_i` of the path algebra.
    pub fn unit(&self) -> PathAlgebraElement {
        self.vertices()
            .map(|v| PathAlgebraElement::from_path(Path::trivial_unchecked(v)))
            .fold(PathAlgebraElement::zero(), |acc, e| &acc + &e)
    }
}

/// A path of a quiver: trivial `ε_i` when `arrows` is empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Path {
    start: Vertex,
    end: Vertex,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(q: &Quiver, v: Vertex) -> Result<Self, QuiverError> {
        if v >= q.vertex_count {
            return Err(QuiverError::NoSuchVertex(v));
        }
        Ok(Self::trivial_unchecked(v))
    }

    fn trivial_unchecked(v: Vertex) -> Self {
        Self {
            start: v,
            end: v,
            arrows: Vec::new(),
        }
    }

    /// Composite path from arrows in traversal order.
    pub fn new(q: &Quiver, arrows: Vec<ArrowId>) -> Result<Self, QuiverError> {
        let first = arrows.first().ok_or(QuiverError::EmptyPath)?;
        let start = q.arrow(*first)?.source;
        let mut end = start;
        for (k, id) in arrows.iter().enumerate() {
            let a = q.arrow(*id)?;
            if a.source != end {
                let prev = q.arrow(arrows[k - 1])?;
                return Err(QuiverError::NotComposable {
                    first: prev.name.clone(),
                    second: a.name.clone(),
                });
            }
            end = a.target;
        }
        Ok(Self { start, end, arrows })
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn end(&self) -> Vertex {
        self.end
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    /// Arrows in traversal order.
    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// Word notation, last arrow leftmost, e.g. `beta*alpha` or `e0`.
    pub fn describe(&self, q: &Quiver) -> String {
        if self.is_trivial() {
            return format!("e{}", self.start);
        }
        self.arrows
            .iter()
            .rev()
            .map(|id| q.arrows[id.0].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// `p1 · p2`: the path "`p2` then `p1`", or `None` (the zero of the
/// algebra) when `p2` does not end at the start of `p1`.
pub fn compose_paths(p1: &Path, p2: &Path) -> Option<Path> {
    if p1.start != p2.end {
        return None;
    }
    let mut arrows = p2.arrows.clone();
    arrows.extend_from_slice(&p1.arrows);
    Some(Path {
        start: p2.start,
        end: p1.end,
        arrows,
    })
}

/// Element of the path algebra `kΓ`: finite combination of paths.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PathAlgebraElement {
    terms: BTreeMap<Path, ComplexRational>,
}

impl PathAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_path(p: Path) -> Self {
        Self::term(p, ComplexRational::one())
    }

    pub fn term(p: Path, c: ComplexRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(p, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> ComplexRational {
        self.terms.get(p).cloned().unwrap_or_else(ComplexRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        let mut out = Self::zero();
        for (p, v) in &self.terms {
            out.accumulate(p.clone(), v * c);
        }
        out
    }

    fn accumulate(&mut self, p: Path, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(p).or_insert_with(ComplexRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }
}

impl Add for &PathAlgebraElement {
    type Output = PathAlgebraElement;
    fn add(self, rhs: &PathAlgebraElement) -> PathAlgebraElement {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.accumulate(p.clone(), c.clone());
        }
        out
    }
}

impl Neg for &PathAlgebraElement {
    type Output = PathAlgebraElement;
    fn neg(self) -> PathAlgebraElement {
        self.scale(&ComplexRational::from_integer(-1))
    }
}

impl Sub for &PathAlgebraElement {
    type Output = PathAlgebraElement;
    fn sub(self, rhs: &PathAlgebraElement) -> PathAlgebraElement {
        self + &(-rhs)
    }
}

/// Bilinear extension of [`compose_paths`].
impl Mul for &PathAlgebraElement {
    type Output = PathAlgebraElement;
    fn mul(self, rhs: &PathAlgebraElement) -> PathAlgebraElement {
        algebra_mul(self, rhs)
    }
}

pub fn algebra_mul(u: &PathAlgebraElement, v: &PathAlgebraElement) -> PathAlgebraElement {
    let mut out = PathAlgebraElement::zero();
    for (p1, c1) in &u.terms {
        for (p2, c2) in &v.terms {
            if let Some(p) = compose_paths(p1, p2) {
                out.accumulate(p, c1 * c2);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(q: &Quiver) -> Path {
        q.arrow_path(ArrowId(0)).unwrap()
    }

    #[test]
    fn trivial_paths_are_orthogonal_idempotents() {
        let q = Quiver::gamma2();
        let e0 = Path::trivial(&q, 0).unwrap();
        let e1 = Path::trivial(&q, 1).unwrap();
        assert_eq!(compose_paths(&e0, &e0), Some(e0.clone()));
        assert_eq!(compose_paths(&e0, &e1), None);
        assert_eq!(compose_paths(&e1, &e0), None);
        assert!(Path::trivial(&q, 2).is_err());
    }

    #[test]
    fn unit_action_on_alpha() {
        let q = Quiver::gamma2();
        let a = alpha(&q);
        let e0 = Path::trivial(&q, 0).unwrap();
        let e1 = Path::trivial(&q, 1).unwrap();
        assert_eq!(compose_paths(&a, &e1), Some(a.clone()));
        assert_eq!(compose_paths(&e0, &a), Some(a.clone()));
        assert_eq!(compose_paths(&a, &e0), None);
        assert_eq!(compose_paths(&a, &a), None);
    }

    #[test]
    fn expanded_square() {
        let q = Quiver::gamma2();
        let a = PathAlgebraElement::from_path(alpha(&q));
        let e1 = PathAlgebraElement::from_path(Path::trivial(&q, 1).unwrap());
        let x = &a + &e1;
        assert_eq!(&x * &x, x);
        assert_eq!(&q.unit() * &x, x);
        assert_eq!(&x * &q.unit(), x);
    }

    #[test]
    fn composability_enforced() {
        let q = Quiver::linear(3);
        let a0 = q.arrow_id("a0").unwrap();
        let a1 = q.arrow_id("a1").unwrap();
        let p = Path::new(&q, vec![a1, a0]).unwrap();
        assert_eq!((p.start(), p.end(), p.len()), (2, 0, 2));
        assert_eq!(p.describe(&q), "a0*a1");
        assert!(matches!(Path::new(&q, vec![a0, a1]), Err(QuiverError::NotComposable { .. })));
        assert!(matches!(Path::new(&q, vec![]), Err(QuiverError::EmptyPath)));
        let bad = Quiver::new(
            1,
            vec![Arrow {
                name: "x".into(),
                source: 0,
                target: 3,
            }],
        );
        assert!(matches!(bad, Err(QuiverError::UnknownVertex { vertex: 3, .. })));
    }

    #[test]
    fn path_enumeration() {
        let q = Quiver::linear(3);
        let paths = q.paths_up_to(2);
        // 3 trivial, 2 arrows, 1 path of length 2
        assert_eq!(paths.len(), 6);
        let loops = Quiver::new(
            1,
            vec![Arrow {
                name: "l".into(),
                source: 0,
                target: 0,
            }],
        )
        .unwrap();
        assert_eq!(loops.paths_up_to(2).len(), 3);
        assert_eq!(loops.paths_up_to(0).len(), 1);
    }
}
