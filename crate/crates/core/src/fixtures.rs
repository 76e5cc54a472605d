//! The built-in example data: the eight-vertex quiver `Q`, the
//! representations `X_alpha`, `X_beta1`, `X_gamma1` on it, and the
//! Kronecker quiver with its two simples.
//!
//! Matrices act on column vectors (`X_a : X_{t(a)} -> X_{h(a)}`).

use crate::error::Result;
use crate::format::{parse_quiver, parse_representation};
use crate::linalg::FieldTag;
use crate::quiver::{DimVector, Quiver, ReflectionWord};
use crate::rep::Representation;

pub const QUIVER_Q: &str = include_str!("../fixtures/Q.qv");
pub const X_ALPHA: &str = include_str!("../fixtures/X_alpha.rep");
pub const X_BETA1: &str = include_str!("../fixtures/X_beta1.rep");
pub const X_GAMMA1: &str = include_str!("../fixtures/X_gamma1.rep");
pub const KRONECKER: &str = include_str!("../fixtures/K2.qv");
pub const KRONECKER_S1: &str = include_str!("../fixtures/S1.rep");
pub const KRONECKER_S2: &str = include_str!("../fixtures/S2.rep");

/// `alpha = s8 s7 s5 s4 s8 s7 s5 s8 s7 s5 s6 s4 s5 s4 s1 s2 s3 (e4)`.
pub const ALPHA_WORD: &str = "s8 s7 s5 s4 s8 s7 s5 s8 s7 s5 s6 s4 s5 s4 s1 s2 s3";
pub const ALPHA_WORD_START: usize = 4;

pub const ALPHA: [i64; 8] = [1, 1, 1, 8, 12, 2, 7, 7];
pub const BETA: [[i64; 8]; 4] = [
    [0, 0, 0, 1, 2, 0, 1, 1],
    [0, 1, 1, 4, 7, 1, 4, 4],
    [1, 0, 1, 4, 7, 1, 4, 4],
    [1, 1, 0, 4, 7, 1, 4, 4],
];
pub const GAMMA1: [i64; 8] = [1, 1, 1, 3, 2, 2, 2, 2];

pub fn alpha_word() -> ReflectionWord {
    ALPHA_WORD.parse().expect("valid word")
}

pub fn alpha() -> DimVector {
    DimVector::from(ALPHA)
}

pub fn betas() -> Vec<DimVector> {
    BETA.iter().map(|&b| DimVector::from(b)).collect()
}

pub fn gamma1() -> DimVector {
    DimVector::from(GAMMA1)
}

/// The counterexample data, parsed over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperFixtures {
    pub quiver: Quiver,
    pub x_alpha: Representation,
    pub x_beta1: Representation,
    pub x_gamma1: Representation,
}

impl PaperFixtures {
    pub fn load() -> Self {
        let quiver = parse_quiver(QUIVER_Q).expect("built-in quiver parses");
        let rep = |text| parse_representation(text, &quiver).expect("built-in fixture parses");
        PaperFixtures {
            x_alpha: rep(X_ALPHA),
            x_beta1: rep(X_BETA1),
            x_gamma1: rep(X_GAMMA1),
            quiver,
        }
    }

    /// The same fixtures read over another field.
    pub fn over(&self, field: FieldTag) -> Result<Self> {
        Ok(PaperFixtures {
            quiver: self.quiver.clone(),
            x_alpha: self.x_alpha.convert(field)?,
            x_beta1: self.x_beta1.convert(field)?,
            x_gamma1: self.x_gamma1.convert(field)?,
        })
    }
}

/// The Kronecker quiver with its simples `S1`, `S2` over the rationals.
pub fn kronecker() -> (Quiver, Representation, Representation) {
    let q = parse_quiver(KRONECKER).expect("built-in quiver parses");
    let s1 = parse_representation(KRONECKER_S1, &q).expect("built-in fixture parses");
    let s2 = parse_representation(KRONECKER_S2, &q).expect("built-in fixture parses");
    (q, s1, s2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;
    use crate::rep::{end_dim, hom_dim, is_indecomposable_fp, DEFAULT_SEARCH_BUDGET};

    #[test]
    fn quiver_matches_the_diagram() {
        let f = PaperFixtures::load();
        let arrows: Vec<(usize, usize)> = f.quiver.arrows().iter().map(|a| (a.tail, a.head)).collect();
        assert_eq!(arrows, vec![(1, 4), (2, 4), (3, 4), (4, 5), (5, 6), (5, 7), (5, 8)]);
        let labels: String = f.quiver.arrows().iter().map(|a| a.label.as_str()).collect();
        assert_eq!(labels, "abcdefg");
    }

    #[test]
    fn dimension_vectors() {
        let f = PaperFixtures::load();
        assert_eq!(f.x_alpha.dims(), &alpha());
        assert_eq!(f.x_beta1.dims(), &betas()[0]);
        assert_eq!(f.x_gamma1.dims(), &gamma1());
    }

    #[test]
    fn x_d_has_full_column_rank() {
        let f = PaperFixtures::load();
        let xd = f.x_alpha.map_by_label("d").unwrap();
        assert_eq!(xd.shape(), (12, 8));
        assert_eq!(xd.rank(), 8);
        let (_, pivots) = xd.rref();
        assert_eq!(pivots, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn beta1_is_schur_and_maps_into_gamma1() {
        let f = PaperFixtures::load();
        assert_eq!(end_dim(&f.x_beta1).unwrap(), 1);
        assert!(hom_dim(&f.x_beta1, &f.x_gamma1).unwrap() >= 1);
        let f2 = f.over(FieldTag::prime(2).unwrap()).unwrap();
        assert!(is_indecomposable_fp(&f2.x_gamma1, DEFAULT_SEARCH_BUDGET).unwrap());
    }

    #[test]
    fn the_displayed_map_beta1_to_gamma1_commutes() {
        let f = PaperFixtures::load();
        let q = FieldTag::Rationals;
        let mut components: Vec<Matrix> = (1..=8)
            .map(|v| Matrix::zeros(q, f.x_gamma1.dim(v), f.x_beta1.dim(v)))
            .collect();
        components[3] = Matrix::from_int_rows(q, &[[1], [0], [0]]);
        let phi = crate::rep::Morphism { components };
        assert!(!phi.is_zero());
        assert!(phi.is_homomorphism(&f.x_beta1, &f.x_gamma1));
    }

    #[test]
    fn kronecker_simples() {
        let (q, s1, s2) = kronecker();
        assert_eq!(q, Quiver::kronecker(2));
        assert_eq!(s1, Representation::simple(&q, FieldTag::Rationals, 1).unwrap());
        assert_eq!(s2, Representation::simple(&q, FieldTag::Rationals, 2).unwrap());
    }
}
