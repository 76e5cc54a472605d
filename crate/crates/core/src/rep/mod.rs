//! Representations of quivers over an exact field, with Hom and Ext¹.

mod hom;
mod indecomposable;
mod subquotient;

pub use hom::{
    end_dim, ext_cocycle_basis, ext_dim_formula, hom_basis, hom_dim, Cocycle, ExtCocycleBasis,
    HomBasis, Morphism,
};
pub use indecomposable::{
    find_invertible_hom, is_indecomposable_fp, is_indecomposable_fp_with, DEFAULT_SEARCH_BUDGET,
};
pub use subquotient::{image_sum_quotient, kernel_intersection, SubQuotient, SubQuotientKind};

use crate::error::{Error, Result};
use crate::linalg::{FieldTag, Matrix};
use crate::quiver::{DimVector, Quiver};

/// A representation `X`: a space `k^{dims[i]}` at every vertex and a matrix
/// `X_a : X_{t(a)} -> X_{h(a)}` for every arrow, acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    quiver: Quiver,
    field: FieldTag,
    dims: DimVector,
    maps: Vec<Matrix>,
}

impl Representation {
    /// Validates that `maps[a]` is `dims[h(a)] x dims[t(a)]` over `field`.
    pub fn new(quiver: Quiver, field: FieldTag, dims: DimVector, maps: Vec<Matrix>) -> Result<Self> {
        quiver.check_len(&dims)?;
        if !dims.is_nonnegative() {
            return Err(Error::DimensionMismatch(format!(
                "negative dimension vector {dims}"
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} maps for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (arrow, m) in quiver.arrows().iter().zip(&maps) {
            let rows = dims.at(arrow.head) as usize;
            let cols = dims.at(arrow.tail) as usize;
            if m.shape() != (rows, cols) {
                return Err(Error::MapShape {
                    arrow: arrow.label.clone(),
                    rows,
                    cols,
                    found_rows: m.rows(),
                    found_cols: m.cols(),
                });
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(m.field(), field));
            }
        }
        Ok(Representation {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: &Quiver, field: FieldTag) -> Self {
        let n = quiver.vertex_count();
        let maps = quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(field, 0, 0))
            .collect();
        Representation {
            quiver: quiver.clone(),
            field,
            dims: DimVector::zero(n),
            maps,
        }
    }

    /// The simple representation `S_vertex`.
    pub fn simple(quiver: &Quiver, field: FieldTag, vertex: usize) -> Result<Self> {
        let dims = quiver.simple_root(vertex)?;
        Ok(Representation::with_zero_maps(quiver, field, dims))
    }

    /// All arrows act by zero.
    pub fn with_zero_maps(quiver: &Quiver, field: FieldTag, dims: DimVector) -> Self {
        let maps = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims.at(a.head) as usize, dims.at(a.tail) as usize))
            .collect();
        Representation {
            quiver: quiver.clone(),
            field,
            dims,
            maps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    pub fn dims(&self) -> &DimVector {
        &self.dims
    }

    /// Dimension at a 1-based vertex.
    pub fn dim(&self, vertex: usize) -> usize {
        self.dims.at(vertex) as usize
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().map(|&d| d as usize).sum()
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn map_by_label(&self, label: &str) -> Option<&Matrix> {
        self.quiver.arrow_index(label).map(|i| &self.maps[i])
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_zero()
    }

    /// Checks same quiver and same field.
    pub fn check_compatible(&self, other: &Representation) -> Result<()> {
        if self.quiver != other.quiver {
            return Err(Error::QuiverMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    /// The same matrices read in another field (rationals reduce mod p).
    pub fn convert(&self, field: FieldTag) -> Result<Representation> {
        let maps = self
            .maps
            .iter()
            .map(|m| m.convert(field))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation {
            maps,
            field,
            ..self.clone()
        })
    }

    /// Replaces the map of one arrow, re-validating the shape.
    pub fn with_map(&self, arrow: usize, map: Matrix) -> Result<Representation> {
        let mut maps = self.maps.clone();
        maps[arrow] = map;
        Representation::new(self.quiver.clone(), self.field, self.dims.clone(), maps)
    }

    /// `x ⊕ y`: dimensions add, arrow matrices are block diagonal.
    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        self.check_compatible(other)?;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Matrix::block_diag(self.field, &[a, b]))
            .collect();
        Ok(Representation {
            quiver: self.quiver.clone(),
            field: self.field,
            dims: &self.dims + &other.dims,
            maps,
        })
    }

    /// `self^{⊕ copies}`.
    pub fn power(&self, copies: usize) -> Representation {
        let mut out = Representation::zero(&self.quiver, self.field);
        for _ in 0..copies {
            out = out.direct_sum(self).expect("same quiver and field");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldTag {
        FieldTag::Rationals
    }

    #[test]
    fn shape_errors_name_the_arrow() {
        let k2 = Quiver::kronecker(2);
        let dims = DimVector::from([1, 2]);
        let good = Matrix::zeros(q(), 2, 1);
        let bad = Matrix::zeros(q(), 1, 2);
        let err = Representation::new(k2, q(), dims, vec![good, bad]).unwrap_err();
        match err {
            Error::MapShape {
                arrow, rows, cols, ..
            } => {
                assert_eq!(arrow, "k2");
                assert_eq!((rows, cols), (2, 1));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn direct_sum_with_zero_is_identity() {
        let k2 = Quiver::kronecker(2);
        let x = Representation::new(
            k2.clone(),
            q(),
            DimVector::from([1, 2]),
            vec![
                Matrix::from_int_rows(q(), &[[1], [0]]),
                Matrix::from_int_rows(q(), &[[0], [1]]),
            ],
        )
        .unwrap();
        let zero = Representation::zero(&k2, q());
        assert_eq!(x.direct_sum(&zero).unwrap(), x);
        let s1 = Representation::simple(&k2, q(), 1).unwrap();
        assert_eq!(x.direct_sum(&s1).unwrap().dims(), &DimVector::from([2, 2]));
        assert_eq!(s1.power(3).dims(), &DimVector::from([3, 0]));
    }

    #[test]
    fn incompatible_representations() {
        let s = Representation::simple(&Quiver::kronecker(2), q(), 1).unwrap();
        let t = Representation::simple(&Quiver::kronecker(3), q(), 1).unwrap();
        assert!(matches!(s.direct_sum(&t), Err(Error::QuiverMismatch)));
        let f2 = s.convert(FieldTag::prime(2).unwrap()).unwrap();
        assert!(matches!(s.direct_sum(&f2), Err(Error::FieldMismatch(_, _))));
    }
}
