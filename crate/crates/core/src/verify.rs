//! The counterexample pipeline: `X_alpha` is an indecomposable with a real
//! root `alpha` for which no real Schur root `beta` gives a universal
//! extension functor `sigma_{X_beta}` that shrinks it.
//!
//! Expected values live here; every computed value comes from the library.

use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::fixtures::{self, PaperFixtures};
use crate::functors::{membership, reflected_dim, sigma_inv, MembershipReport};
use crate::linalg::FieldTag;
use crate::par::{self, Execution};
use crate::quiver::DimVector;
use crate::rep::{
    end_dim, hom_dim, image_sum_quotient, is_indecomposable_fp_with, kernel_intersection, Representation,
    DEFAULT_SEARCH_BUDGET,
};

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// A value stated with the example.
    Stated,
    /// A value obtained by hand from the stated ones.
    Derived,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::Stated => "stated",
            Provenance::Derived => "derived",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub value: String,
    pub expected: String,
    pub provenance: Provenance,
    pub pass: bool,
}

/// What stripping `X_beta1` from `X_alpha` gives. Informational only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub membership: MembershipReport,
    /// Why `sigma_inv` refuses the input, if it does.
    pub rejected: Option<String>,
    /// `X_alpha` with the images of `X_beta1` divided out and then cut down
    /// to the common kernel of the maps to `X_beta1`, regardless of
    /// preconditions.
    pub dims: DimVector,
    pub equals_gamma1: bool,
    pub hom_beta1_out: usize,
    pub hom_out_beta1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub field: FieldTag,
    pub checks: Vec<Check>,
    pub observation: Result<Observation, String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// 1-based indices of the failing checks.
    pub fn failures(&self) -> Vec<usize> {
        (1..=self.checks.len()).filter(|&k| !self.checks[k - 1].pass).collect()
    }

    /// One `key=value` per line.
    pub fn machine_readable(&self) -> String {
        let mut out = format!("field={}\n", self.field);
        for (k, c) in self.checks.iter().enumerate() {
            let k = k + 1;
            writeln!(out, "check.{k}.name={}", c.name).unwrap();
            writeln!(out, "check.{k}.value={}", c.value).unwrap();
            writeln!(out, "check.{k}.expected={}", c.expected).unwrap();
            writeln!(out, "check.{k}.provenance={}", c.provenance).unwrap();
            writeln!(out, "check.{k}.pass={}", c.pass).unwrap();
        }
        match &self.observation {
            Ok(o) => {
                let m = &o.membership;
                writeln!(out, "observation.hom_alpha_beta1={}", m.hom_xs_dim).unwrap();
                writeln!(out, "observation.hom_beta1_alpha={}", m.hom_sx_dim).unwrap();
                writeln!(out, "observation.ext_beta1_alpha={}", m.ext_sx_dim).unwrap();
                writeln!(out, "observation.ext_alpha_beta1={}", m.ext_xs_dim).unwrap();
                if let Some(why) = &o.rejected {
                    writeln!(out, "observation.sigma_inv.rejected={why}").unwrap();
                }
                writeln!(out, "observation.stripped.dims={}", o.dims).unwrap();
                writeln!(out, "observation.stripped.equals_gamma1={}", o.equals_gamma1).unwrap();
                writeln!(out, "observation.stripped.hom_from_beta1={}", o.hom_beta1_out).unwrap();
                writeln!(out, "observation.stripped.hom_to_beta1={}", o.hom_out_beta1).unwrap();
            }
            Err(e) => writeln!(out, "observation.error={e}").unwrap(),
        }
        writeln!(out, "pass={}", self.passed()).unwrap();
        out
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verifying the counterexample over {}", self.field)?;
        for (k, c) in self.checks.iter().enumerate() {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(f, "[{status}] {}. {}", k + 1, c.name)?;
            writeln!(f, "       computed: {}", c.value)?;
            writeln!(f, "       expected: {} ({})", c.expected, c.provenance)?;
        }
        match &self.observation {
            Ok(o) => {
                let m = &o.membership;
                writeln!(f, "observation (not a check): X_alpha against X_beta1")?;
                writeln!(
                    f,
                    "       dim Hom(X_alpha, X_beta1) = {}, dim Hom(X_beta1, X_alpha) = {}",
                    m.hom_xs_dim, m.hom_sx_dim
                )?;
                writeln!(
                    f,
                    "       dim Ext(X_beta1, X_alpha) = {}, dim Ext(X_alpha, X_beta1) = {}",
                    m.ext_sx_dim, m.ext_xs_dim
                )?;
                if let Some(why) = &o.rejected {
                    writeln!(f, "       sigma^-1 refuses X_alpha: {why}")?;
                }
                writeln!(
                    f,
                    "       stripping X_beta1 anyway gives dims {} (gamma1: {}), dim Hom(X_beta1, -) = {}, dim Hom(-, X_beta1) = {}",
                    o.dims, o.equals_gamma1, o.hom_beta1_out, o.hom_out_beta1
                )?;
            }
            Err(e) => writeln!(f, "observation failed: {e}")?,
        }
        write!(f, "{}", if self.passed() { "ALL CHECKS PASSED" } else { "VERIFICATION FAILED" })
    }
}

fn fmt_roots(roots: &[DimVector]) -> String {
    let parts: Vec<String> = roots.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn fmt_result<T: fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// Indecomposability is decided by exhaustive search over `F_2`.
fn indecomposable(x: &Representation, mode: Execution) -> Result<bool> {
    let f2 = FieldTag::prime(2).expect("2 is prime");
    is_indecomposable_fp_with(&x.convert(f2)?, DEFAULT_SEARCH_BUDGET, mode)
}

/// Runs the pipeline on the built-in fixtures.
pub fn verify_paper(field: FieldTag) -> Result<VerifyReport> {
    verify_with_fixtures(field, &PaperFixtures::load(), Execution::default())
}

/// Runs the pipeline on the given fixtures (written over the rationals,
/// read over `field`).
pub fn verify_with_fixtures(field: FieldTag, base: &PaperFixtures, mode: Execution) -> Result<VerifyReport> {
    let checks = run_checks(field, base, mode)?;
    Ok(VerifyReport {
        field,
        checks,
        observation: observe(&base.over(field)?),
    })
}

fn run_checks(field: FieldTag, base: &PaperFixtures, mode: Execution) -> Result<Vec<Check>> {
    let fx = base.over(field)?;
    let q = &fx.quiver;
    let alpha = fixtures::alpha();
    let betas = fixtures::betas();
    let gamma1 = fixtures::gamma1();
    let mut checks = Vec::with_capacity(8);

    // 1
    let start = q.simple_root(fixtures::ALPHA_WORD_START)?;
    let word_value = q.apply_word(&fixtures::alpha_word(), &start);
    checks.push(Check {
        name: "the reflection word applied to e4 gives alpha",
        pass: matches!(&word_value, Ok(v) if *v == alpha),
        value: fmt_result(&word_value),
        expected: alpha.to_string(),
        provenance: Provenance::Stated,
    });

    // 2
    let norm = q.euler_form(&alpha, &alpha)?;
    let real = q.is_positive_real_root(&alpha)?;
    checks.push(Check {
        name: "alpha is a positive real root",
        pass: norm == 1 && real,
        value: format!("<alpha,alpha> = {norm}, real root: {real}"),
        expected: "<alpha,alpha> = 1, real root: true".into(),
        provenance: Provenance::Derived,
    });

    // 3
    let x = &fx.x_alpha;
    let end = end_dim(x);
    let indec = indecomposable(&base.x_alpha, mode);
    checks.push(Check {
        name: "X_alpha has dimension vector alpha, a 9-dimensional local endomorphism ring",
        pass: x.dims() == &alpha && matches!(end, Ok(9)) && matches!(indec, Ok(true)),
        value: format!(
            "dims {}, dim End = {}, indecomposable over F2: {}",
            x.dims(),
            fmt_result(&end),
            fmt_result(&indec)
        ),
        expected: format!("dims {alpha}, dim End = 9, indecomposable over F2: true"),
        provenance: Provenance::Stated,
    });

    // 4
    let candidates = q.reflection_candidates(&alpha)?;
    let mut expected_candidates = betas.clone();
    expected_candidates.sort();
    checks.push(Check {
        name: "the reflection candidates for alpha are beta1..beta4",
        pass: candidates == expected_candidates,
        value: fmt_roots(&candidates),
        expected: fmt_roots(&expected_candidates),
        provenance: Provenance::Stated,
    });

    // 5
    let mut pairings = Vec::new();
    for b in &betas[1..] {
        pairings.push((q.euler_form(&alpha, b)?, q.euler_form(b, &alpha)?));
    }
    let shown: Vec<String> = pairings.iter().map(|(l, r)| format!("({l},{r})")).collect();
    checks.push(Check {
        name: "beta2, beta3, beta4 are Euler-orthogonal to alpha, so their functors fix X_alpha",
        pass: pairings.iter().all(|&p| p == (0, 0)),
        value: format!("(<alpha,beta_i>,<beta_i,alpha>) = {}", shown.join(" ")),
        expected: "(0,0) (0,0) (0,0)".into(),
        provenance: Provenance::Stated,
    });

    // 6
    let b1 = &betas[0];
    let b1_real = q.is_positive_real_root(b1)?;
    let reflected = reflected_dim(q, &alpha, b1)?;
    let b1_pair = (q.euler_form(&alpha, b1)?, q.euler_form(b1, &alpha)?);
    let b1_end = end_dim(&fx.x_beta1);
    checks.push(Check {
        name: "beta1 is a real Schur root and reflects alpha to gamma1",
        pass: b1_real
            && reflected == gamma1
            && b1_pair == (3, 2)
            && fx.x_beta1.dims() == b1
            && matches!(b1_end, Ok(1)),
        value: format!(
            "real root: {b1_real}, (<alpha,beta1>,<beta1,alpha>) = ({},{}), reflected {reflected}, X_beta1 dims {}, dim End = {}",
            b1_pair.0,
            b1_pair.1,
            fx.x_beta1.dims(),
            fmt_result(&b1_end)
        ),
        expected: format!(
            "real root: true, (<alpha,beta1>,<beta1,alpha>) = (3,2), reflected {gamma1}, X_beta1 dims {b1}, dim End = 1"
        ),
        provenance: Provenance::Stated,
    });

    // 7
    let g = &fx.x_gamma1;
    let hom = hom_dim(&fx.x_beta1, g);
    let g_indec = indecomposable(&base.x_gamma1, mode);
    checks.push(Check {
        name: "Hom(X_beta1, X_gamma1) != 0, so X_alpha is not in the image of sigma_{X_beta1}",
        pass: g.dims() == &gamma1 && matches!(g_indec, Ok(true)) && matches!(hom, Ok(h) if h >= 1),
        value: format!(
            "X_gamma1 dims {}, indecomposable over F2: {}, dim Hom = {}",
            g.dims(),
            fmt_result(&g_indec),
            fmt_result(&hom)
        ),
        expected: format!("X_gamma1 dims {gamma1}, indecomposable over F2: true, dim Hom >= 1"),
        provenance: Provenance::Stated,
    });

    // 8
    let ruled_out = checks[3..7].iter().all(|c| c.pass);
    checks.push(Check {
        name: "no real Schur root beta both admits X_alpha and shrinks it",
        pass: ruled_out,
        value: if ruled_out {
            "beta2..beta4 fail the shrinking condition, beta1 fails membership".into()
        } else {
            "some candidate was not ruled out".into()
        },
        expected: "every candidate ruled out".into(),
        provenance: Provenance::Stated,
    });

    Ok(checks)
}

fn observe(fx: &PaperFixtures) -> Result<Observation, String> {
    let run = || -> Result<Observation> {
        let (s, x) = (&fx.x_beta1, &fx.x_alpha);
        let membership = membership(s, x)?;
        let rejected = sigma_inv(s, x).err().map(|e| e.to_string());
        let quotient = image_sum_quotient(s, x)?.induced;
        let out = kernel_intersection(&quotient, s)?.induced;
        Ok(Observation {
            membership,
            rejected,
            equals_gamma1: out.dims() == &fixtures::gamma1(),
            hom_beta1_out: hom_dim(s, &out)?,
            hom_out_beta1: hom_dim(&out, s)?,
            dims: out.dims().clone(),
        })
    };
    run().map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FixtureName {
    XAlpha,
    XBeta1,
    XGamma1,
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixtureName::XAlpha => "X_alpha",
            FixtureName::XBeta1 => "X_beta1",
            FixtureName::XGamma1 => "X_gamma1",
        })
    }
}

/// One matrix entry toggled between 0 and 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mutation {
    pub fixture: FixtureName,
    pub arrow: usize,
    pub row: usize,
    pub col: usize,
}

impl Mutation {
    /// Every single-entry mutation of the built-in fixtures.
    pub fn all(fx: &PaperFixtures) -> Vec<Mutation> {
        let mut out = Vec::new();
        for (fixture, rep) in [
            (FixtureName::XAlpha, &fx.x_alpha),
            (FixtureName::XBeta1, &fx.x_beta1),
            (FixtureName::XGamma1, &fx.x_gamma1),
        ] {
            for (arrow, m) in rep.maps().iter().enumerate() {
                for row in 0..m.rows() {
                    for col in 0..m.cols() {
                        out.push(Mutation {
                            fixture,
                            arrow,
                            row,
                            col,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, fx: &PaperFixtures) -> Result<PaperFixtures> {
        let mut out = fx.clone();
        let rep = match self.fixture {
            FixtureName::XAlpha => &mut out.x_alpha,
            FixtureName::XBeta1 => &mut out.x_beta1,
            FixtureName::XGamma1 => &mut out.x_gamma1,
        };
        let field = rep.field();
        let mut m = rep
            .maps()
            .get(self.arrow)
            .ok_or_else(|| Error::Precondition(format!("no arrow {}", self.arrow)))?
            .clone();
        if self.row >= m.rows() || self.col >= m.cols() {
            return Err(Error::Precondition(format!("no entry ({}, {})", self.row, self.col)));
        }
        let flipped = if m.get(self.row, self.col).is_zero() { field.one() } else { field.zero() };
        m.set(self.row, self.col, flipped);
        *rep = rep.with_map(self.arrow, m)?;
        Ok(out)
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} arrow #{} entry ({}, {})", self.fixture, self.arrow + 1, self.row + 1, self.col + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationOutcome {
    pub mutation: Mutation,
    /// 1-based indices of the failing checks.
    pub failed_checks: Vec<usize>,
}

impl MutationOutcome {
    pub fn detected(&self) -> bool {
        !self.failed_checks.is_empty()
    }
}

/// Runs the checks (without the observation) on every mutation in `mutations`.
pub fn mutation_sweep(field: FieldTag, mutations: &[Mutation], mode: Execution) -> Result<Vec<MutationOutcome>> {
    let base = PaperFixtures::load();
    let results = par::map(mode, mutations, |m| -> Result<MutationOutcome> {
        let fx = m.apply(&base)?;
        // Each run is already one item of a parallel sweep.
        let checks = run_checks(field, &fx, Execution::Sequential)?;
        Ok(MutationOutcome {
            mutation: *m,
            failed_checks: (1..=checks.len()).filter(|&k| !checks[k - 1].pass).collect(),
        })
    });
    results.into_iter().collect()
}
