//! Universal extension functors against a fixed representation `s`.
//!
//! `sigma_bar` extends `x` from above by every class of `Ext¹(s, x)`,
//! `sigma_under` extends from below by every class of `Ext¹(y, s)`, and
//! `sigma = sigma_under ∘ sigma_bar`. The inverses strip copies of `s`
//! again: `sigma_inv = sigma_bar_inv ∘ sigma_under_inv`.
//!
//! Only the Hom/Ext vanishing conditions are checked. Whether a summand of
//! the input embeds into, or is a quotient of, copies of `s` is not decided.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{FieldTag, Matrix};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{
    end_dim, ext_cocycle_basis, ext_dim_formula, hom_basis, hom_dim, image_sum_quotient,
    kernel_intersection, Morphism, Representation,
};

/// Hom and Ext¹ dimensions between `x` and `s` in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipReport {
    pub hom_xs_dim: usize,
    pub hom_sx_dim: usize,
    pub ext_sx_dim: usize,
    pub ext_xs_dim: usize,
}

impl MembershipReport {
    /// `Hom(x, s) = 0`.
    pub fn hom_xs_vanishes(&self) -> bool {
        self.hom_xs_dim == 0
    }

    /// `Hom(s, x) = 0`.
    pub fn hom_sx_vanishes(&self) -> bool {
        self.hom_sx_dim == 0
    }

    /// `Ext¹(s, x) = 0`.
    pub fn ext_sx_vanishes(&self) -> bool {
        self.ext_sx_dim == 0
    }

    /// `Ext¹(x, s) = 0`.
    pub fn ext_xs_vanishes(&self) -> bool {
        self.ext_xs_dim == 0
    }

    /// Inputs accepted by [`sigma`].
    pub fn admissible_forward(&self) -> bool {
        self.hom_xs_vanishes() && self.hom_sx_vanishes()
    }

    /// Inputs accepted by [`sigma_inv`].
    pub fn admissible_inverse(&self) -> bool {
        self.ext_sx_vanishes() && self.ext_xs_vanishes()
    }
}

impl fmt::Display for MembershipReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dim Hom(x,s) = {}", self.hom_xs_dim)?;
        writeln!(f, "dim Hom(s,x) = {}", self.hom_sx_dim)?;
        writeln!(f, "dim Ext(s,x) = {}", self.ext_sx_dim)?;
        writeln!(f, "dim Ext(x,s) = {}", self.ext_xs_dim)?;
        write!(f, "summand conditions: not decided")
    }
}

pub fn membership(s: &Representation, x: &Representation) -> Result<MembershipReport> {
    s.check_compatible(x)?;
    Ok(MembershipReport {
        hom_xs_dim: hom_dim(x, s)?,
        hom_sx_dim: hom_dim(s, x)?,
        ext_sx_dim: ext_dim_formula(s, x)?,
        ext_xs_dim: ext_dim_formula(x, s)?,
    })
}

/// `x - (x, s) s`.
pub fn reflected_dim(q: &Quiver, x: &DimVector, s: &DimVector) -> Result<DimVector> {
    let pairing = q.sym_form(x, s)?;
    Ok(x - &(pairing * s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `end_x ± <x, s><s, x>`, plus for [`Direction::Forward`].
pub fn predicted_end_dim(
    q: &Quiver,
    x: &DimVector,
    s: &DimVector,
    end_x: i64,
    direction: Direction,
) -> Result<i64> {
    let product = q.euler_form(x, s)? * q.euler_form(s, x)?;
    Ok(match direction {
        Direction::Forward => end_x + product,
        Direction::Inverse => end_x - product,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    /// `0 -> x -> Z -> s^r -> 0`, output `Z`.
    ExtendAbove,
    /// `0 -> s^m -> U -> y -> 0`, output `U`.
    ExtendBelow,
    /// `0 -> x^{-s} -> x -> s^r`, output `x^{-s}`.
    KernelIntersection,
    /// `s^m -> y -> y/y' -> 0`, output `y/y'`.
    ImageQuotient,
}

/// One step `0 -> sub -> middle -> quotient -> 0` with its witness maps.
#[derive(Debug, Clone)]
pub struct Stage {
    pub kind: StageKind,
    /// Copies of `s` added or removed.
    pub multiplicity: usize,
    pub sub: Representation,
    pub middle: Representation,
    pub quotient: Representation,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

impl Stage {
    /// Whether the witness maps form a short exact sequence of representations.
    pub fn is_exact(&self) -> bool {
        let homs = self.inclusion.is_homomorphism(&self.sub, &self.middle)
            && self.projection.is_homomorphism(&self.middle, &self.quotient);
        homs && (1..=self.middle.quiver().vertex_count()).all(|v| {
            let i = &self.inclusion.components[v - 1];
            let p = &self.projection.components[v - 1];
            (p * i).is_zero()
                && i.rank() == self.sub.dim(v)
                && p.rank() == self.quotient.dim(v)
                && self.sub.dim(v) + self.quotient.dim(v) == self.middle.dim(v)
        })
    }

    pub fn output(&self) -> &Representation {
        match self.kind {
            StageKind::ExtendAbove | StageKind::ExtendBelow => &self.middle,
            StageKind::KernelIntersection => &self.sub,
            StageKind::ImageQuotient => &self.quotient,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FunctorResult {
    pub output: Representation,
    pub stages: Vec<Stage>,
}

impl FunctorResult {
    fn single(stage: Stage) -> Self {
        FunctorResult {
            output: stage.output().clone(),
            stages: vec![stage],
        }
    }

    fn then(mut self, next: FunctorResult) -> Self {
        self.output = next.output;
        self.stages.extend(next.stages);
        self
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.multiplicity).collect()
    }

    pub fn is_exact(&self) -> bool {
        self.stages.iter().all(Stage::is_exact)
    }
}

fn require(ok: bool, message: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(message.into()))
    }
}

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Postcondition(message()))
    }
}

/// `[I; 0]` at every vertex: the first summand of `a ⊕ b`.
fn first_inclusion(a: &Representation, b: &Representation) -> Morphism {
    let field = a.field();
    let components = (1..=a.quiver().vertex_count())
        .map(|v| {
            let mut m = Matrix::zeros(field, a.dim(v) + b.dim(v), a.dim(v));
            m.put_block(0, 0, &Matrix::identity(field, a.dim(v)));
            m
        })
        .collect();
    Morphism { components }
}

/// `[0 I]` at every vertex: onto the second summand of `a ⊕ b`.
fn second_projection(a: &Representation, b: &Representation) -> Morphism {
    let field = a.field();
    let components = (1..=a.quiver().vertex_count())
        .map(|v| {
            let mut m = Matrix::zeros(field, b.dim(v), a.dim(v) + b.dim(v));
            m.put_block(0, a.dim(v), &Matrix::identity(field, b.dim(v)));
            m
        })
        .collect();
    Morphism { components }
}

/// Builds the representation on `top ⊕ bottom` with arrow matrices
/// `[[top_a, glue_a], [0, bottom_a]]`.
fn upper_triangular(top: &Representation, bottom: &Representation, glue: &[Matrix]) -> Result<Representation> {
    let field = top.field();
    let maps = top
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let (t, h) = (a.tail, a.head);
            let mut m = Matrix::zeros(field, top.dim(h) + bottom.dim(h), top.dim(t) + bottom.dim(t));
            m.put_block(0, 0, top.map(k));
            m.put_block(0, top.dim(t), &glue[k]);
            m.put_block(top.dim(h), top.dim(t), bottom.map(k));
            m
        })
        .collect();
    Representation::new(top.quiver().clone(), field, top.dims() + bottom.dims(), maps)
}

/// `σ̄_s(x)`: the universal extension `0 -> x -> Z -> s^r -> 0` with
/// `r = dim Ext¹(s, x)`. Requires `Hom(x, s) = 0`.
pub fn sigma_bar(s: &Representation, x: &Representation) -> Result<FunctorResult> {
    s.check_compatible(x)?;
    require(hom_dim(x, s)? == 0, "Hom(x, s) != 0")?;
    let cocycles = ext_cocycle_basis(s, x)?.cocycles;
    let r = cocycles.len();
    let field = x.field();
    let copies = s.power(r);
    let glue: Vec<Matrix> = x
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let blocks: Vec<&Matrix> = cocycles.iter().map(|c| &c.components[k]).collect();
            Matrix::hstack(field, x.dim(a.head), &blocks)
        })
        .collect();
    let z = upper_triangular(x, &copies, &glue)?;

    ensure(z.dims() == &(x.dims() + &(r as i64 * s.dims())), || {
        format!("dim Z = {} is not dim x + {r} dim s", z.dims())
    })?;
    let ext = ext_dim_formula(s, &z)?;
    ensure(ext == 0, || format!("dim Ext¹(s, Z) = {ext} after the universal extension"))?;

    Ok(FunctorResult::single(Stage {
        kind: StageKind::ExtendAbove,
        multiplicity: r,
        inclusion: first_inclusion(x, &copies),
        projection: second_projection(x, &copies),
        sub: x.clone(),
        middle: z,
        quotient: copies,
    }))
}

/// `σ̲_s(y)`: the universal extension `0 -> s^m -> U -> y -> 0` with
/// `m = dim Ext¹(y, s)`. Requires `Hom(s, y) = 0`.
pub fn sigma_under(s: &Representation, y: &Representation) -> Result<FunctorResult> {
    s.check_compatible(y)?;
    require(hom_dim(s, y)? == 0, "Hom(s, y) != 0")?;
    let cocycles = ext_cocycle_basis(y, s)?.cocycles;
    let m = cocycles.len();
    let field = y.field();
    let copies = s.power(m);
    let glue: Vec<Matrix> = y
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let blocks: Vec<&Matrix> = cocycles.iter().map(|c| &c.components[k]).collect();
            Matrix::vstack(field, y.dim(a.tail), &blocks)
        })
        .collect();
    let u = upper_triangular(&copies, y, &glue)?;

    ensure(u.dims() == &(y.dims() + &(m as i64 * s.dims())), || {
        format!("dim U = {} is not dim y + {m} dim s", u.dims())
    })?;
    let ext = ext_dim_formula(&u, s)?;
    ensure(ext == 0, || format!("dim Ext¹(U, s) = {ext} after the universal extension"))?;

    Ok(FunctorResult::single(Stage {
        kind: StageKind::ExtendBelow,
        multiplicity: m,
        inclusion: first_inclusion(&copies, y),
        projection: second_projection(&copies, y),
        sub: copies,
        middle: u,
        quotient: y.clone(),
    }))
}

/// `σ_s(x) = σ̲_s(σ̄_s(x))`. Requires `Hom(x, s) = 0 = Hom(s, x)`.
///
/// Checks that the output has dimension vector `x - (x, s) s` and the
/// predicted endomorphism dimension.
pub fn sigma(s: &Representation, x: &Representation) -> Result<FunctorResult> {
    s.check_compatible(x)?;
    require(hom_dim(s, x)? == 0, "Hom(s, x) != 0")?;
    let above = sigma_bar(s, x)?;
    let below = sigma_under(s, &above.output)?;
    let result = above.then(below);

    let q = x.quiver();
    let expected = reflected_dim(q, x.dims(), s.dims())?;
    ensure(result.output.dims() == &expected, || {
        format!("dim σ(x) = {}, expected {expected}", result.output.dims())
    })?;
    let predicted = predicted_end_dim(q, x.dims(), s.dims(), end_dim(x)? as i64, Direction::Forward)?;
    let measured = end_dim(&result.output)? as i64;
    ensure(measured == predicted, || {
        format!("dim End σ(x) = {measured}, predicted {predicted}")
    })?;
    Ok(result)
}

/// Stacks the components of `homs` (maps `a -> b`) into one map `a -> b^r`.
fn stacked(field: FieldTag, homs: &[Morphism], a: &Representation) -> Morphism {
    let components = (1..=a.quiver().vertex_count())
        .map(|v| {
            let blocks: Vec<&Matrix> = homs.iter().map(|h| &h.components[v - 1]).collect();
            Matrix::vstack(field, a.dim(v), &blocks)
        })
        .collect();
    Morphism { components }
}

/// Places the components of `homs` (maps `b -> a`) side by side: one map `b^m -> a`.
fn joined(field: FieldTag, homs: &[Morphism], a: &Representation) -> Morphism {
    let components = (1..=a.quiver().vertex_count())
        .map(|v| {
            let blocks: Vec<&Matrix> = homs.iter().map(|h| &h.components[v - 1]).collect();
            Matrix::hstack(field, a.dim(v), &blocks)
        })
        .collect();
    Morphism { components }
}

/// `σ̄_s^{-1}(x) = x^{-s}`, the common kernel of all maps `x -> s`.
/// Requires `Ext¹(s, x) = 0`.
///
/// The stage records `x -> s^r` for a basis of `Hom(x, s)`; it is onto
/// (so the stage is exact) only for genuine members.
pub fn sigma_bar_inv(s: &Representation, x: &Representation) -> Result<FunctorResult> {
    s.check_compatible(x)?;
    require(ext_dim_formula(s, x)? == 0, "Ext¹(s, x) != 0")?;
    let homs = hom_basis(x, s)?.elements;
    let sub = kernel_intersection(x, s)?;
    Ok(FunctorResult::single(Stage {
        kind: StageKind::KernelIntersection,
        multiplicity: homs.len(),
        projection: stacked(x.field(), &homs, x),
        inclusion: Morphism { components: sub.maps },
        sub: sub.induced,
        middle: x.clone(),
        quotient: s.power(homs.len()),
    }))
}

/// `σ̲_s^{-1}(y) = y / y'`, where `y'` is the sum of the images of all
/// maps `s -> y`. Requires `Ext¹(y, s) = 0`.
///
/// The stage records `s^m -> y` for a basis of `Hom(s, y)`; it is
/// injective (so the stage is exact) only for genuine members.
pub fn sigma_under_inv(s: &Representation, y: &Representation) -> Result<FunctorResult> {
    s.check_compatible(y)?;
    require(ext_dim_formula(y, s)? == 0, "Ext¹(y, s) != 0")?;
    let homs = hom_basis(s, y)?.elements;
    let quotient = image_sum_quotient(s, y)?;
    Ok(FunctorResult::single(Stage {
        kind: StageKind::ImageQuotient,
        multiplicity: homs.len(),
        inclusion: joined(y.field(), &homs, y),
        projection: Morphism {
            components: quotient.maps,
        },
        sub: s.power(homs.len()),
        middle: y.clone(),
        quotient: quotient.induced,
    }))
}

/// `σ_s^{-1}(x) = σ̄_s^{-1}(σ̲_s^{-1}(x))`. Requires `Ext¹(s, x) = 0 = Ext¹(x, s)`.
///
/// The intermediate object is not re-checked, and exactness of the stages
/// is recorded rather than enforced.
pub fn sigma_inv(s: &Representation, x: &Representation) -> Result<FunctorResult> {
    s.check_compatible(x)?;
    require(ext_dim_formula(s, x)? == 0, "Ext¹(s, x) != 0")?;
    let below = sigma_under_inv(s, x)?;
    let quotient = &below.output;
    let homs = hom_basis(quotient, s)?.elements;
    let sub = kernel_intersection(quotient, s)?;
    let above = FunctorResult::single(Stage {
        kind: StageKind::KernelIntersection,
        multiplicity: homs.len(),
        projection: stacked(x.field(), &homs, quotient),
        inclusion: Morphism { components: sub.maps },
        sub: sub.induced,
        middle: quotient.clone(),
        quotient: s.power(homs.len()),
    });
    Ok(below.then(above))
}
