//! Rational quadratic spaces and the induced form on their symmetric square.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exact::{LinAlgError, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("vector of length {found} does not match space of rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{labels} labels for a {rows}x{cols} Gram matrix")]
    LabelCount {
        labels: usize,
        rows: usize,
        cols: usize,
    },
    #[error("Gram matrix is not symmetric")]
    NotSymmetric,
    #[error("duplicate basis label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("basis is not orthogonal: q({0}, {1}) != 0")]
    NotOrthogonal(String, String),
    #[error("basis element {0} has zero square")]
    Degenerate(String),
    #[error("Gram matrix is degenerate")]
    Singular,
    #[error("symmetric-square vectors belong to a space of rank {found}, expected {expected}")]
    SpaceMismatch { expected: usize, found: usize },
    #[error("space is not flagged as a K3^[2]-type second cohomology")]
    NotK3Two,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// Numerical invariants of a K3^[2]-type manifold used by the Sym² model of
/// its degree-4 cohomology.
#[derive(Debug, Clone, PartialEq)]
pub struct K3TwoConstants<T> {
    /// `∫ γ⁴ = fujiki · q(γ, γ)²`.
    pub fujiki: T,
    /// Generalized Fujiki constant of the dual class: `∫ q̄·α·β = c · q(α, β)`.
    pub qbar_fujiki: T,
    /// `∫ q̄²`.
    pub qbar_square: T,
    /// `c₂ = ratio · q̄`.
    pub c2_over_qbar: T,
    /// Euler characteristic, the degree of `c₄`.
    pub euler: T,
}

/// A finite-rank quadratic space: labeled basis plus symmetric Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadSpace<T> {
    labels: Vec<String>,
    gram: Matrix<T>,
    k3two: Option<K3TwoConstants<T>>,
}

impl<T: Scalar> QuadSpace<T> {
    pub fn new(labels: Vec<String>, gram: Matrix<T>) -> Result<Self, QuadError> {
        if labels.len() != gram.rows() || labels.len() != gram.cols() {
            return Err(QuadError::LabelCount {
                labels: labels.len(),
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        if !gram.is_symmetric() {
            return Err(QuadError::NotSymmetric);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(QuadError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Self {
            labels,
            gram,
            k3two: None,
        })
    }

    /// Space with pairwise orthogonal basis of the given squares.
    pub fn diagonal(labels: Vec<String>, squares: Vec<T>) -> Result<Self, QuadError> {
        let n = squares.len();
        let gram = Matrix::from_fn(n, n, |i, j| {
            if i == j {
                squares[i].clone()
            } else {
                T::zero()
            }
        });
        Self::new(labels, gram)
    }

    /// Flags the space as `H²` of a K3^[2]-type manifold.
    pub fn with_k3two(mut self, constants: K3TwoConstants<T>) -> Self {
        self.k3two = Some(constants);
        self
    }

    pub fn k3two(&self) -> Option<&K3TwoConstants<T>> {
        self.k3two.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &Matrix<T> {
        &self.gram
    }

    pub fn index_of(&self, label: &str) -> Result<usize, QuadError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| QuadError::UnknownLabel(label.to_string()))
    }

    pub fn basis_vector(&self, index: usize) -> Vec<T> {
        let mut v = vec![T::zero(); self.rank()];
        v[index] = T::one();
        v
    }

    /// Vector `Σ cᵢ·aᵢ` from `(label, coefficient)` terms.
    pub fn vector(&self, terms: &[(&str, T)]) -> Result<Vec<T>, QuadError> {
        let mut v = vec![T::zero(); self.rank()];
        for (label, coeff) in terms {
            let i = self.index_of(label)?;
            v[i] = v[i].clone() + coeff.clone();
        }
        Ok(v)
    }

    pub fn is_nondegenerate(&self) -> bool
    where
        T: crate::exact::FastElimination,
    {
        self.gram.rank() == self.rank()
    }

    pub fn require_nondegenerate(&self) -> Result<(), QuadError>
    where
        T: crate::exact::FastElimination,
    {
        if self.is_nondegenerate() {
            Ok(())
        } else {
            Err(QuadError::Singular)
        }
    }

    fn check_len(&self, v: &[T]) -> Result<(), QuadError> {
        if v.len() != self.rank() {
            return Err(QuadError::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Bilinear value `aᵀ·G·b`.
    pub fn pair(&self, a: &[T], b: &[T]) -> Result<T, QuadError> {
        self.check_len(a)?;
        self.check_len(b)?;
        let mut total = T::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                let g = self.gram.get(i, j);
                if bj.is_zero() || g.is_zero() {
                    continue;
                }
                total = total + ai.clone() * g.clone() * bj.clone();
            }
        }
        Ok(total)
    }

    fn g(&self, i: usize, j: usize) -> &T {
        self.gram.get(i, j)
    }

    /// The dual class `q̄ = Σ aᵢ² / q(aᵢ, aᵢ)` of an orthogonal basis.
    pub fn qbar_dual(&self) -> Result<Sym2Vector<T>, QuadError> {
        for i in 0..self.rank() {
            for j in 0..i {
                if !self.g(i, j).is_zero() {
                    return Err(QuadError::NotOrthogonal(
                        self.labels[j].clone(),
                        self.labels[i].clone(),
                    ));
                }
            }
        }
        let mut out = Sym2Vector::zero(self.rank());
        for i in 0..self.rank() {
            let square = self.g(i, i);
            if square.is_zero() {
                return Err(QuadError::Degenerate(self.labels[i].clone()));
            }
            out.add_term(i, i, T::one() / square.clone());
        }
        Ok(out)
    }

    fn monomial_pair(&self, (a1, a2): (usize, usize), (a3, a4): (usize, usize)) -> T {
        let mut total = T::zero();
        for (x, y) in [
            (self.g(a1, a2), self.g(a3, a4)),
            (self.g(a1, a3), self.g(a2, a4)),
            (self.g(a1, a4), self.g(a2, a3)),
        ] {
            if !x.is_zero() && !y.is_zero() {
                total = total + x.clone() * y.clone();
            }
        }
        total
    }

    fn check_sym2(&self, v: &Sym2Vector<T>) -> Result<(), QuadError> {
        if v.rank != self.rank() {
            return Err(QuadError::SpaceMismatch {
                expected: self.rank(),
                found: v.rank,
            });
        }
        Ok(())
    }

    /// Intersection form on `Sym²`: the bilinear extension of
    /// `(a₁a₂, a₃a₄) = q(a₁,a₂)q(a₃,a₄) + q(a₁,a₃)q(a₂,a₄) + q(a₁,a₄)q(a₂,a₃)`.
    pub fn sym2_pair(&self, u: &Sym2Vector<T>, v: &Sym2Vector<T>) -> Result<T, QuadError> {
        self.check_sym2(u)?;
        self.check_sym2(v)?;
        let mut total = T::zero();
        for (&m1, c1) in &u.terms {
            for (&m2, c2) in &v.terms {
                let value = self.monomial_pair(m1, m2);
                if !value.is_zero() {
                    total = total + c1.clone() * c2.clone() * value;
                }
            }
        }
        Ok(total)
    }

    pub fn sym2_gram(&self, vectors: &[Sym2Vector<T>]) -> Result<Matrix<T>, QuadError> {
        for v in vectors {
            self.check_sym2(v)?;
        }
        let n = vectors.len();
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let value = self.sym2_pair(&vectors[i], &vectors[j])?;
                out.set(j, i, value.clone());
                out.set(i, j, value);
            }
        }
        Ok(out)
    }

    /// `∫ q̄·α·β` on a K3^[2]-type manifold.
    pub fn k3two_fujiki_pair(&self, a: &[T], b: &[T]) -> Result<T, QuadError> {
        let constants = self.k3two.as_ref().ok_or(QuadError::NotK3Two)?;
        Ok(constants.qbar_fujiki.clone() * self.pair(a, b)?)
    }
}

/// Element of `Sym²` of a quadratic space, stored on monomials `aᵢ·aⱼ` with
/// `i ≤ j`. A mixed monomial is a single basis element, not `½(aᵢaⱼ + aⱼaᵢ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sym2Vector<T> {
    rank: usize,
    terms: BTreeMap<(usize, usize), T>,
}

impl<T: Scalar> Sym2Vector<T> {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(rank: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zero(rank);
        out.add_term(i, j, T::one());
        out
    }

    /// The product `u·v` of two degree-two classes given in coordinates.
    pub fn product(u: &[T], v: &[T]) -> Result<Self, QuadError> {
        if u.len() != v.len() {
            return Err(QuadError::DimensionMismatch {
                expected: u.len(),
                found: v.len(),
            });
        }
        let mut out = Self::zero(u.len());
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if !vj.is_zero() {
                    out.add_term(i, j, ui.clone() * vj.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn square(u: &[T]) -> Self {
        Self::product(u, u).expect("equal lengths")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, i: usize, j: usize, coeff: T) {
        assert!(
            i < self.rank && j < self.rank,
            "monomial index out of range"
        );
        let key = (i.min(j), i.max(j));
        let entry = self.terms.entry(key).or_insert_with(T::zero);
        *entry = entry.clone() + coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coefficient(&self, i: usize, j: usize) -> T {
        self.terms
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &T)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, factor: &T) -> Self {
        let mut out = Self::zero(self.rank);
        if factor.is_zero() {
            return out;
        }
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, c.clone() * factor.clone());
        }
        out
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &T) {
        assert_eq!(
            self.rank, other.rank,
            "symmetric squares of different spaces"
        );
        for (&(i, j), c) in &other.terms {
            self.add_term(i, j, c.clone() * factor.clone());
        }
    }

    /// `Σ cₖ·vₖ`.
    pub fn combination<'a>(rank: usize, parts: impl IntoIterator<Item = (T, &'a Self)>) -> Self
    where
        T: 'a,
    {
        let mut out = Self::zero(rank);
        for (c, v) in parts {
            out.add_scaled(v, &c);
        }
        out
    }

    /// Image under the `Sym²` of the linear map sending basis vector `i` to
    /// `images[i]` (coordinates in a space of rank `target_rank`).
    pub fn map_linear(&self, images: &[Vec<T>], target_rank: usize) -> Result<Self, QuadError> {
        if images.len() != self.rank {
            return Err(QuadError::DimensionMismatch {
                expected: self.rank,
                found: images.len(),
            });
        }
        let mut out = Self::zero(target_rank);
        for (&(i, j), c) in &self.terms {
            for img in [&images[i], &images[j]] {
                if img.len() != target_rank {
                    return Err(QuadError::DimensionMismatch {
                        expected: target_rank,
                        found: img.len(),
                    });
                }
            }
            out.add_scaled(&Self::product(&images[i], &images[j])?, c);
        }
        Ok(out)
    }

    /// Coordinates on the monomial basis `(i, j)`, `i ≤ j`, in lexicographic order.
    pub fn dense(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.rank * (self.rank + 1) / 2);
        for i in 0..self.rank {
            for j in i..self.rank {
                out.push(self.coefficient(i, j));
            }
        }
        out
    }
}
