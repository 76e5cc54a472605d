use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

use super::hom::hom_basis;
use super::Representation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubQuotientKind {
    /// `maps[i]` includes the induced space into the ambient one.
    Sub,
    /// `maps[i]` projects the ambient space onto the induced one.
    Quotient,
}

/// A subrepresentation or quotient of `ambient`, with its structure maps.
#[derive(Debug, Clone)]
pub struct SubQuotient {
    pub ambient: Representation,
    pub kind: SubQuotientKind,
    pub maps: Vec<Matrix>,
    pub induced: Representation,
}

impl SubQuotient {
    /// Checks full rank of the structure maps and the intertwining identities.
    pub fn verify(&self) -> bool {
        let ranks_ok = self.maps.iter().all(|m| match self.kind {
            SubQuotientKind::Sub => m.rank() == m.cols(),
            SubQuotientKind::Quotient => m.rank() == m.rows(),
        });
        let squares_ok = self
            .ambient
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .all(|(k, a)| {
                let (t, h) = (a.tail - 1, a.head - 1);
                match self.kind {
                    // ambient_a ∘ ι_t = ι_h ∘ induced_a
                    SubQuotientKind::Sub => {
                        self.ambient.map(k) * &self.maps[t] == &self.maps[h] * self.induced.map(k)
                    }
                    // π_h ∘ ambient_a = induced_a ∘ π_t
                    SubQuotientKind::Quotient => {
                        &self.maps[h] * self.ambient.map(k) == self.induced.map(k) * &self.maps[t]
                    }
                }
            });
        ranks_ok && squares_ok
    }
}

/// `X^{-S}`: the intersection of the kernels of all maps `x -> s`.
///
/// At each vertex this is the kernel of the stacked components of a basis
/// of `Hom(x, s)`; the inclusion has the echelonized kernel basis as columns.
pub fn kernel_intersection(x: &Representation, s: &Representation) -> Result<SubQuotient> {
    let homs = hom_basis(x, s)?;
    let field = x.field();
    let quiver = x.quiver();
    let n = quiver.vertex_count();

    let mut inclusions = Vec::with_capacity(n);
    for v in 1..=n {
        let blocks: Vec<&Matrix> = homs.elements.iter().map(|m| &m.components[v - 1]).collect();
        let stacked = Matrix::vstack(field, x.dim(v), &blocks);
        let kernel = stacked.kernel_basis();
        inclusions.push(columns_to_matrix(field, x.dim(v), &kernel));
    }

    let dims = inclusions.iter().map(|m| m.cols() as i64).collect::<Vec<_>>().into();
    let mut maps = Vec::with_capacity(quiver.arrows().len());
    for (k, a) in quiver.arrows().iter().enumerate() {
        let image = x.map(k) * &inclusions[a.tail - 1];
        let induced = inclusions[a.head - 1].solve_matrix(&image)?.ok_or_else(|| {
            Error::Internal(format!(
                "arrow {} does not preserve the kernel intersection",
                a.label
            ))
        })?;
        maps.push(induced);
    }
    let induced = Representation::new(quiver.clone(), field, dims, maps)?;
    Ok(SubQuotient {
        ambient: x.clone(),
        kind: SubQuotientKind::Sub,
        maps: inclusions,
        induced,
    })
}

/// `Y / Y'` where `Y'` is the sum of the images of all maps `s -> y`.
///
/// At each vertex `Y'_i` is echelonized; the quotient keeps the non-pivot
/// coordinates, and the projection sends `v` to `v_C - sum_p v[p] B_p[C]`
/// where `B_p` is the echelon basis vector with pivot `p`.
pub fn image_sum_quotient(s: &Representation, y: &Representation) -> Result<SubQuotient> {
    let homs = hom_basis(s, y)?;
    let field = y.field();
    let quiver = y.quiver();
    let n = quiver.vertex_count();

    let mut projections = Vec::with_capacity(n);
    let mut lifts = Vec::with_capacity(n);
    for v in 1..=n {
        let dim = y.dim(v);
        let blocks: Vec<&Matrix> = homs.elements.iter().map(|m| &m.components[v - 1]).collect();
        let span = Matrix::hstack(field, dim, &blocks);
        let (reduced, pivots) = span.transpose().rref();
        let mut is_pivot = vec![false; dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..dim).filter(|&c| !is_pivot[c]).collect();

        let mut projection = Matrix::zeros(field, complement.len(), dim);
        let mut lift = Matrix::zeros(field, dim, complement.len());
        for (r, &c) in complement.iter().enumerate() {
            projection.set(r, c, field.one());
            lift.set(c, r, field.one());
            for (row, &p) in pivots.iter().enumerate() {
                projection.set(r, p, -reduced.get(row, c));
            }
        }
        projections.push(projection);
        lifts.push(lift);
    }

    let dims = projections.iter().map(|m| m.rows() as i64).collect::<Vec<_>>().into();
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| &(&projections[a.head - 1] * y.map(k)) * &lifts[a.tail - 1])
        .collect();
    let induced = Representation::new(quiver.clone(), field, dims, maps)?;
    let out = SubQuotient {
        ambient: y.clone(),
        kind: SubQuotientKind::Quotient,
        maps: projections,
        induced,
    };
    if !out.verify() {
        return Err(Error::Internal(
            "image sum is not a subrepresentation".into(),
        ));
    }
    Ok(out)
}

fn columns_to_matrix(field: crate::linalg::FieldTag, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
    let mut m = Matrix::zeros(field, rows, columns.len());
    for (c, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            m.set(r, c, v.clone());
        }
    }
    m
}
