//! Hom spaces as solution spaces of the commuting-square system, and Ext¹
//! as the cokernel of the same linear map.
//!
//! For representations `x` and `y` the map
//!
//! ```text
//! d : ⊕_i Hom(x_i, y_i) -> ⊕_a Hom(x_{t(a)}, y_{h(a)}),   d(φ)_a = φ_{h(a)} x_a - y_a φ_{t(a)}
//! ```
//!
//! has `ker d = Hom(x, y)` and `coker d = Ext¹(x, y)`.

use crate::error::{Error, Result};
use crate::linalg::{FieldTag, Matrix, Scalar};

use super::Representation;

/// A homomorphism given by one matrix per vertex (`φ_i : x_i -> y_i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub components: Vec<Matrix>,
}

impl Morphism {
    /// Whether `φ_{h(a)} x_a = y_a φ_{t(a)}` for every arrow.
    pub fn is_homomorphism(&self, x: &Representation, y: &Representation) -> bool {
        x.quiver().arrows().iter().enumerate().all(|(k, a)| {
            let lhs = &self.components[a.head - 1] * x.map(k);
            let rhs = y.map(k) * &self.components[a.tail - 1];
            lhs == rhs
        })
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Morphism) -> Morphism {
        Morphism {
            components: self
                .components
                .iter()
                .zip(&first.components)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    /// Whether every component is square and invertible.
    pub fn is_isomorphism(&self) -> bool {
        self.components
            .iter()
            .all(|m| m.rows() == m.cols() && m.rank() == m.rows())
    }

    /// `sum_j coeffs[j] · elements[j]`.
    pub fn combination(field: FieldTag, elements: &[Morphism], coeffs: &[Scalar], shapes: &[(usize, usize)]) -> Morphism {
        let mut components: Vec<Matrix> = shapes
            .iter()
            .map(|&(r, c)| Matrix::zeros(field, r, c))
            .collect();
        for (e, c) in elements.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, part) in components.iter_mut().zip(&e.components) {
                *acc = &*acc + &part.scale(c);
            }
        }
        Morphism { components }
    }
}

#[derive(Debug, Clone)]
pub struct HomBasis {
    pub source: Representation,
    pub target: Representation,
    pub elements: Vec<Morphism>,
}

impl HomBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Per-vertex component shapes `(dim target_i, dim source_i)`.
    pub fn shapes(&self) -> Vec<(usize, usize)> {
        vertex_shapes(&self.source, &self.target)
    }
}

fn vertex_shapes(x: &Representation, y: &Representation) -> Vec<(usize, usize)> {
    (1..=x.quiver().vertex_count())
        .map(|v| (y.dim(v), x.dim(v)))
        .collect()
}

/// One representative cocycle: a matrix `f_a : x_{t(a)} -> y_{h(a)}` per arrow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cocycle {
    pub components: Vec<Matrix>,
}

#[derive(Debug, Clone)]
pub struct ExtCocycleBasis {
    pub source: Representation,
    pub target: Representation,
    pub cocycles: Vec<Cocycle>,
}

impl ExtCocycleBasis {
    pub fn dim(&self) -> usize {
        self.cocycles.len()
    }
}

/// Offsets of the per-vertex blocks of unknowns `φ_i` (row-major, `y_i x x_i`).
fn variable_offsets(x: &Representation, y: &Representation) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(x.quiver().vertex_count() + 1);
    let mut acc = 0;
    offsets.push(0);
    for v in 1..=x.quiver().vertex_count() {
        acc += y.dim(v) * x.dim(v);
        offsets.push(acc);
    }
    offsets
}

/// Offsets of the per-arrow blocks of `⊕_a Hom(x_{t(a)}, y_{h(a)})`.
fn equation_offsets(x: &Representation, y: &Representation) -> Vec<usize> {
    let mut offsets = vec![0];
    let mut acc = 0;
    for a in x.quiver().arrows() {
        acc += y.dim(a.head) * x.dim(a.tail);
        offsets.push(acc);
    }
    offsets
}

/// The matrix of `d` in the standard coordinates.
fn differential(x: &Representation, y: &Representation) -> Matrix {
    let field = x.field();
    let vars = variable_offsets(x, y);
    let eqs = equation_offsets(x, y);
    let mut d = Matrix::zeros(field, *eqs.last().unwrap(), *vars.last().unwrap());
    for (k, a) in x.quiver().arrows().iter().enumerate() {
        let (t, h) = (a.tail, a.head);
        let (xa, ya) = (x.map(k), y.map(k));
        let (xt, xh, yt, yh) = (x.dim(t), x.dim(h), y.dim(t), y.dim(h));
        for r in 0..yh {
            for c in 0..xt {
                let row = eqs[k] + r * xt + c;
                // φ_h[r, j] · x_a[j, c]
                for j in 0..xh {
                    let coeff = xa.get(j, c);
                    if !coeff.is_zero() {
                        let col = vars[h - 1] + r * xh + j;
                        let cur = d.get(row, col).clone();
                        d.set(row, col, &cur + coeff);
                    }
                }
                // - y_a[r, j] · φ_t[j, c]
                for j in 0..yt {
                    let coeff = ya.get(r, j);
                    if !coeff.is_zero() {
                        let col = vars[t - 1] + j * xt + c;
                        let cur = d.get(row, col).clone();
                        d.set(row, col, &cur - coeff);
                    }
                }
            }
        }
    }
    d
}

/// Splits a flat vector into per-block matrices of the given shapes.
fn unflatten(field: FieldTag, flat: &[Scalar], shapes: &[(usize, usize)]) -> Vec<Matrix> {
    let mut out = Vec::with_capacity(shapes.len());
    let mut pos = 0;
    for &(r, c) in shapes {
        let block = flat[pos..pos + r * c].to_vec();
        out.push(Matrix::from_entries(field, r, c, block).expect("block sizes match"));
        pos += r * c;
    }
    out
}

/// A basis of `Hom(x, y)`, echelonized in the flattened coordinates.
pub fn hom_basis(x: &Representation, y: &Representation) -> Result<HomBasis> {
    x.check_compatible(y)?;
    let field = x.field();
    let shapes = vertex_shapes(x, y);
    let elements: Vec<Morphism> = differential(x, y)
        .kernel_basis()
        .iter()
        .map(|v| Morphism {
            components: unflatten(field, v, &shapes),
        })
        .collect();
    if let Some(bad) = elements.iter().position(|m| !m.is_homomorphism(x, y)) {
        return Err(Error::Internal(format!(
            "hom basis element {bad} violates a commuting square"
        )));
    }
    Ok(HomBasis {
        source: x.clone(),
        target: y.clone(),
        elements,
    })
}

pub fn hom_dim(x: &Representation, y: &Representation) -> Result<usize> {
    Ok(hom_basis(x, y)?.dim())
}

pub fn end_dim(x: &Representation) -> Result<usize> {
    hom_dim(x, x)
}

/// `dim Ext¹(x, y) = dim Hom(x, y) - <dim x, dim y>`.
pub fn ext_dim_formula(x: &Representation, y: &Representation) -> Result<usize> {
    let hom = hom_dim(x, y)? as i64;
    let euler = x.quiver().euler_form(x.dims(), y.dims())?;
    let ext = hom - euler;
    if ext < 0 {
        return Err(Error::Internal(format!(
            "dim Hom = {hom} is below <x,y> = {euler}"
        )));
    }
    Ok(ext as usize)
}

/// Cocycle representatives for a basis of `Ext¹(x, y) = coker d`.
///
/// The image of `d` is echelonized; the representatives are the unit
/// vectors at its non-pivot coordinates, so the basis is determined by the
/// image alone. The count is cross-checked against [`ext_dim_formula`].
pub fn ext_cocycle_basis(x: &Representation, y: &Representation) -> Result<ExtCocycleBasis> {
    x.check_compatible(y)?;
    let field = x.field();
    let d = differential(x, y);
    let width = d.rows();
    let (_, pivots) = d.transpose().rref();
    let mut is_pivot = vec![false; width];
    for p in pivots {
        is_pivot[p] = true;
    }
    let shapes: Vec<(usize, usize)> = x
        .quiver()
        .arrows()
        .iter()
        .map(|a| (y.dim(a.head), x.dim(a.tail)))
        .collect();
    let cocycles: Vec<Cocycle> = (0..width)
        .filter(|&c| !is_pivot[c])
        .map(|c| {
            let mut flat = vec![field.zero(); width];
            flat[c] = field.one();
            Cocycle {
                components: unflatten(field, &flat, &shapes),
            }
        })
        .collect();

    let formula = ext_dim_formula(x, y)?;
    if formula != cocycles.len() {
        return Err(Error::ExtDisagreement {
            formula: formula as i64,
            cokernel: cocycles.len(),
        });
    }
    Ok(ExtCocycleBasis {
        source: x.clone(),
        target: y.clone(),
        cocycles,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};

    fn q() -> FieldTag {
        FieldTag::Rationals
    }

    #[test]
    fn simple_has_scalar_endomorphisms() {
        let k2 = Quiver::kronecker(2);
        let s1 = Representation::simple(&k2, q(), 1).unwrap();
        let s2 = Representation::simple(&k2, q(), 2).unwrap();
        assert_eq!(end_dim(&s1).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(ext_dim_formula(&s1, &s2).unwrap(), 2);
        assert_eq!(ext_dim_formula(&s2, &s1).unwrap(), 0);
        assert_eq!(ext_dim_formula(&s1, &s1).unwrap(), 0);
    }

    #[test]
    fn kronecker_ext_has_one_cocycle_per_arrow() {
        let k2 = Quiver::kronecker(2);
        let s1 = Representation::simple(&k2, q(), 1).unwrap();
        let s2 = Representation::simple(&k2, q(), 2).unwrap();
        let ext = ext_cocycle_basis(&s1, &s2).unwrap();
        assert_eq!(ext.dim(), 2);
        for (k, c) in ext.cocycles.iter().enumerate() {
            assert_eq!(c.components[k], Matrix::identity(q(), 1));
            assert!(c.components[1 - k].is_zero());
        }
        assert_eq!(ext_cocycle_basis(&s2, &s1).unwrap().dim(), 0);
    }

    #[test]
    fn direct_sum_has_matrix_algebra_endomorphisms() {
        let k2 = Quiver::kronecker(2);
        let s1 = Representation::simple(&k2, q(), 1).unwrap();
        let double = s1.direct_sum(&s1).unwrap();
        assert_eq!(end_dim(&double).unwrap(), 4);
    }

    #[test]
    fn zero_representation_has_zero_hom() {
        let k2 = Quiver::kronecker(2);
        let zero = Representation::zero(&k2, q());
        let s1 = Representation::simple(&k2, q(), 1).unwrap();
        assert_eq!(hom_dim(&zero, &s1).unwrap(), 0);
        assert_eq!(end_dim(&zero).unwrap(), 0);
        assert_eq!(ext_cocycle_basis(&zero, &s1).unwrap().dim(), 0);
    }

    #[test]
    fn preprojective_kronecker_module() {
        // P = (1,2) with the two arrows embedding k as the two coordinate lines.
        let k2 = Quiver::kronecker(2);
        let p = Representation::new(
            k2.clone(),
            q(),
            DimVector::from([1, 2]),
            vec![
                Matrix::from_int_rows(q(), &[[1], [0]]),
                Matrix::from_int_rows(q(), &[[0], [1]]),
            ],
        )
        .unwrap();
        assert_eq!(end_dim(&p).unwrap(), 1);
        assert_eq!(ext_dim_formula(&p, &p).unwrap(), 0);
        let s2 = Representation::simple(&k2, q(), 2).unwrap();
        assert_eq!(hom_dim(&s2, &p).unwrap(), 2);
        assert_eq!(hom_dim(&p, &s2).unwrap(), 0);
        let basis = hom_basis(&s2, &p).unwrap();
        assert!(basis.elements.iter().all(|m| m.is_homomorphism(&s2, &p)));
    }
}
