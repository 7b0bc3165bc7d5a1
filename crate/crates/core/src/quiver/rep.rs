//! The canonical representation `φ_p` attached to a path `p` of length `n`.
//!
//! The module `M[p]` has basis `z_0, …, z_n` with `z_0` at the end of `p` and
//! `z_n` at its start. Counting arrows from the end of the path, the `j`-th
//! arrow `r_j` maps `z_j ↦ z_{j−1}`. Basis vector `z_j` sits at vertex
//! `v(j) = e(r_{j+1})` for `j < n` and `v(n) = s(r_n)`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{Path, PathAlgebraElement, Quiver, QuiverError, Vertex};
use crate::algebra::ComplexRational;

pub type ExactMatrix = DMatrix<ComplexRational>;

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalRep {
    path: Path,
    basis_vertices: Vec<Vertex>,
    vertex_matrices: Vec<ExactMatrix>,
    arrow_matrices: Vec<ExactMatrix>,
}

impl CanonicalRep {
    pub fn path(&self) -> &Path {
        &self.path
    }

    /// `n + 1` for a path of length `n`.
    pub fn dimension(&self) -> usize {
        self.basis_vertices.len()
    }

    /// The vertex assignment `v(j)` of each basis vector.
    pub fn basis_vertices(&self) -> &[Vertex] {
        &self.basis_vertices
    }

    /// `φ_p(ε_i)`.
    pub fn vertex_matrix(&self, v: Vertex) -> &ExactMatrix {
        &self.vertex_matrices[v]
    }

    /// `φ_p(γ)` for the arrow with index `id`.
    pub fn arrow_matrix(&self, id: super::ArrowId) -> &ExactMatrix {
        &self.arrow_matrices[id.0]
    }

    pub fn vertex_matrices(&self) -> &[ExactMatrix] {
        &self.vertex_matrices
    }

    pub fn arrow_matrices(&self) -> &[ExactMatrix] {
        &self.arrow_matrices
    }

    /// `φ_p` of a single path: vertex matrix for `ε_i`, otherwise the
    /// product of arrow matrices with the last arrow leftmost.
    pub fn path_matrix(&self, p: &Path) -> ExactMatrix {
        if p.is_trivial() {
            return self.vertex_matrices[p.start()].clone();
        }
        let d = self.dimension();
        p.arrows()
            .iter()
            .fold(ExactMatrix::identity(d, d), |acc, id| &self.arrow_matrices[id.0] * acc)
    }
}

pub fn canonical_representation(q: &Quiver, p: &Path) -> Result<CanonicalRep, QuiverError> {
    if p.is_trivial() {
        return Err(QuiverError::TrivialPath);
    }
    let n = p.len();
    // r[j-1] is the j-th arrow counted from the end of the path
    let r: Vec<_> = p.arrows().iter().rev().copied().collect();
    let mut basis_vertices = Vec::with_capacity(n + 1);
    for j in 0..n {
        basis_vertices.push(q.arrow(r[j])?.target);
    }
    basis_vertices.push(q.arrow(r[n - 1])?.source);

    let d = n + 1;
    let vertex_matrices = q
        .vertices()
        .map(|i| {
            ExactMatrix::from_fn(d, d, |a, b| {
                if a == b && basis_vertices[a] == i {
                    ComplexRational::one()
                } else {
                    ComplexRational::zero()
                }
            })
        })
        .collect();
    let arrow_matrices = (0..q.arrows().len())
        .map(|g| {
            let mut m = ExactMatrix::from_element(d, d, ComplexRational::zero());
            for j in 1..=n {
                if r[j - 1].0 == g {
                    m[(j - 1, j)] = ComplexRational::one();
                }
            }
            m
        })
        .collect();
    Ok(CanonicalRep {
        path: p.clone(),
        basis_vertices,
        vertex_matrices,
        arrow_matrices,
    })
}

/// `φ_p(u)` for an algebra element, extended linearly.
pub fn rep_apply(rep: &CanonicalRep, u: &PathAlgebraElement) -> ExactMatrix {
    let d = rep.dimension();
    u.terms().fold(
        ExactMatrix::from_element(d, d, ComplexRational::zero()),
        |acc, (p, c)| acc + rep.path_matrix(p).map(|x| &x * c),
    )
}

pub fn to_complex_matrix(m: &ExactMatrix) -> DMatrix<Complex64> {
    m.map(|x| x.to_complex64())
}
