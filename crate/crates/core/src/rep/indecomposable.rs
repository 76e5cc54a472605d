//! Exhaustive searches over `End(x)` and `Hom(x, y)` for small prime fields.

use crate::error::{Error, Result};
use crate::linalg::{FieldTag, Matrix, Scalar};
use crate::par::{self, Execution};

use super::hom::{hom_basis, Morphism};
use super::Representation;

/// Default bound on `p^dim` for exhaustive endomorphism searches.
pub const DEFAULT_SEARCH_BUDGET: u64 = 1 << 20;

/// A basis of a Hom space flattened to residues for fast enumeration.
struct FlatBasis {
    p: u64,
    /// `(rows, cols, offset)` of every vertex block.
    blocks: Vec<(usize, usize, usize)>,
    elements: Vec<Vec<u64>>,
    width: usize,
}

impl FlatBasis {
    fn new(field: FieldTag, elements: &[Morphism], shapes: &[(usize, usize)]) -> Result<Self> {
        let FieldTag::Prime(m) = field else {
            return Err(Error::NeedsPrimeField("exhaustive endomorphism search"));
        };
        let mut blocks = Vec::with_capacity(shapes.len());
        let mut width = 0;
        for &(r, c) in shapes {
            blocks.push((r, c, width));
            width += r * c;
        }
        let elements = elements
            .iter()
            .map(|e| {
                e.components
                    .iter()
                    .flat_map(|m| m.entries().iter().map(|s| s.residue().unwrap() as u64))
                    .collect()
            })
            .collect();
        Ok(FlatBasis {
            p: m.get() as u64,
            blocks,
            elements,
            width,
        })
    }

    fn combinations(&self, budget: u64) -> Result<u64> {
        let total = (self.p as u128).pow(self.elements.len() as u32);
        if total > budget as u128 {
            return Err(Error::BudgetExceeded {
                combinations: total,
                budget,
            });
        }
        Ok(total as u64)
    }

    /// The combination whose coefficients are the base-`p` digits of `index`.
    fn combination(&self, mut index: u64) -> Vec<u64> {
        let mut acc = vec![0u64; self.width];
        for e in &self.elements {
            let c = index % self.p;
            index /= self.p;
            if c == 0 {
                continue;
            }
            for (a, &v) in acc.iter_mut().zip(e) {
                *a = (*a + c * v) % self.p;
            }
        }
        acc
    }

    fn is_idempotent(&self, flat: &[u64]) -> bool {
        self.blocks.iter().all(|&(n, _, off)| {
            let block = &flat[off..off + n * n];
            (0..n).all(|r| {
                (0..n).all(|c| {
                    let sq = (0..n).fold(0, |acc, k| (acc + block[r * n + k] * block[k * n + c]) % self.p);
                    sq == block[r * n + c]
                })
            })
        })
    }

    fn is_identity(&self, flat: &[u64]) -> bool {
        self.blocks.iter().all(|&(n, _, off)| {
            (0..n).all(|r| (0..n).all(|c| flat[off + r * n + c] == u64::from(r == c)))
        })
    }

    fn is_invertible(&self, field: FieldTag, flat: &[u64]) -> bool {
        self.blocks.iter().all(|&(r, c, off)| {
            r == c && {
                let entries = flat[off..off + r * c]
                    .iter()
                    .map(|&v| field.from_i64(v as i64))
                    .collect();
                let m = Matrix::from_entries(field, r, c, entries).expect("block shape");
                m.rank() == r
            }
        })
    }
}

/// Whether `End(x)` is local, decided by listing every endomorphism over
/// `F_p` and looking for an idempotent other than 0 and the identity.
///
/// The zero representation is not indecomposable. Fails with
/// [`Error::BudgetExceeded`] (undecided) when `p^{dim End(x)} > budget`.
pub fn is_indecomposable_fp(x: &Representation, budget: u64) -> Result<bool> {
    is_indecomposable_fp_with(x, budget, Execution::default())
}

pub fn is_indecomposable_fp_with(x: &Representation, budget: u64, mode: Execution) -> Result<bool> {
    if !matches!(x.field(), FieldTag::Prime(_)) {
        return Err(Error::NeedsPrimeField("is_indecomposable_fp"));
    }
    if x.is_zero() {
        return Ok(false);
    }
    let basis = hom_basis(x, x)?;
    let flat = FlatBasis::new(x.field(), &basis.elements, &basis.shapes())?;
    let total = flat.combinations(budget)?;
    let nontrivial = par::find_map_any(mode, 1..total, |i| {
        let e = flat.combination(i);
        (flat.is_idempotent(&e) && !flat.is_identity(&e)).then_some(i)
    });
    Ok(nontrivial.is_none())
}

/// Searches `Hom(x, y)` for an isomorphism.
///
/// Over `F_p` the search is exhaustive within `budget`. Over the rationals
/// it tries `budget` pseudo-random combinations with small integer
/// coefficients, so `None` there means "not found", not "none exists".
pub fn find_invertible_hom(
    x: &Representation,
    y: &Representation,
    budget: u64,
    mode: Execution,
) -> Result<Option<Morphism>> {
    x.check_compatible(y)?;
    if x.dims() != y.dims() {
        return Ok(None);
    }
    let basis = hom_basis(x, y)?;
    let shapes = basis.shapes();
    let field = x.field();
    if basis.elements.is_empty() {
        return Ok(x.is_zero().then(|| Morphism::combination(field, &[], &[], &shapes)));
    }
    match field {
        FieldTag::Prime(_) => {
            let flat = FlatBasis::new(field, &basis.elements, &shapes)?;
            let total = flat.combinations(budget)?;
            let hit = par::find_map_any(mode, 1..total, |i| {
                flat.is_invertible(field, &flat.combination(i)).then_some(i)
            });
            Ok(hit.map(|i| {
                let mut coeffs = Vec::with_capacity(basis.elements.len());
                let mut idx = i;
                for _ in &basis.elements {
                    coeffs.push(field.from_i64((idx % flat.p) as i64));
                    idx /= flat.p;
                }
                Morphism::combination(field, &basis.elements, &coeffs, &shapes)
            }))
        }
        FieldTag::Rationals => {
            let hit = par::find_map_any(mode, 0..budget.min(4096), |trial| {
                let coeffs = rational_trial(field, trial, basis.elements.len());
                let m = Morphism::combination(field, &basis.elements, &coeffs, &shapes);
                m.is_isomorphism().then_some(m)
            });
            Ok(hit)
        }
    }
}

/// Deterministic small coefficients in `[-4, 4]` for trial `seed`.
fn rational_trial(field: FieldTag, seed: u64, len: usize) -> Vec<Scalar> {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1);
    (0..len)
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            field.from_i64((state % 9) as i64 - 4)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{DimVector, Quiver};

    fn f2() -> FieldTag {
        FieldTag::prime(2).unwrap()
    }

    #[test]
    fn simples_are_indecomposable_sums_are_not() {
        let k2 = Quiver::kronecker(2);
        let s1 = Representation::simple(&k2, f2(), 1).unwrap();
        assert!(is_indecomposable_fp(&s1, DEFAULT_SEARCH_BUDGET).unwrap());
        let double = s1.direct_sum(&s1).unwrap();
        for mode in [Execution::Sequential, Execution::Parallel] {
            assert!(!is_indecomposable_fp_with(&double, DEFAULT_SEARCH_BUDGET, mode).unwrap());
        }
        let zero = Representation::zero(&k2, f2());
        assert!(!is_indecomposable_fp(&zero, DEFAULT_SEARCH_BUDGET).unwrap());
    }

    #[test]
    fn budget_and_field_errors() {
        let k2 = Quiver::kronecker(2);
        let s1 = Representation::simple(&k2, f2(), 1).unwrap();
        let big = s1.power(3); // End = M_3(F_2), 2^9 elements
        assert!(matches!(
            is_indecomposable_fp(&big, 100),
            Err(Error::BudgetExceeded {
                combinations: 512,
                budget: 100
            })
        ));
        let rational = Representation::simple(&k2, FieldTag::Rationals, 1).unwrap();
        assert!(matches!(
            is_indecomposable_fp(&rational, 10),
            Err(Error::NeedsPrimeField(_))
        ));
    }

    #[test]
    fn isomorphism_between_rebased_copies() {
        let k2 = Quiver::kronecker(2);
        for field in [f2(), FieldTag::Rationals] {
            let x = Representation::new(
                k2.clone(),
                field,
                DimVector::from([1, 2]),
                vec![
                    Matrix::from_int_rows(field, &[[1], [0]]),
                    Matrix::from_int_rows(field, &[[0], [1]]),
                ],
            )
            .unwrap();
            let y = Representation::new(
                k2.clone(),
                field,
                DimVector::from([1, 2]),
                vec![
                    Matrix::from_int_rows(field, &[[1], [1]]),
                    Matrix::from_int_rows(field, &[[0], [1]]),
                ],
            )
            .unwrap();
            let iso = find_invertible_hom(&x, &y, 1 << 12, Execution::default())
                .unwrap()
                .expect("isomorphic");
            assert!(iso.is_homomorphism(&x, &y) && iso.is_isomorphism());
            // Same dimension vector, different module.
            let split = Representation::with_zero_maps(&k2, field, DimVector::from([1, 2]));
            let none = find_invertible_hom(&x, &split, 1 << 12, Execution::default()).unwrap();
            assert!(none.is_none());
        }
    }
}
