//! Exhaustive verification sweeps over normal subgroups and their codes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{conjugate_character, isotypic_decomposition, Decomposition, DecompositionOptions};
use crate::clifford::{stabilizer_reduction, verify_dimension_identities, verify_lemma_suite, CliffordCode, Reduction};
use crate::error::Result;
use crate::group::Subgroup;
use crate::matrix::CycMatrix;
use crate::rep::{verify_error_group, UnitaryRep};
use crate::report::{Check, Status, Tally};

/// Groups up to this order get full detection and coset scans per code.
pub const FULL_SCAN_LIMIT: usize = 256;

/// Checks on one code.
pub fn verify_code(code: &CliffordCode<'_>) -> Vec<Check> {
    let rep = code.rep();
    let g = rep.group();
    let e = code.projector();
    let mut checks = Vec::new();

    let tr = e.trace();
    checks.push(Check::new(
        "projector-laws",
        e.is_hermitian() && e.is_idempotent() && tr == crate::CycNum::from_integer(code.dim() as i64),
        format!("trace {tr}, m chi(1) = {}", code.dim()),
    ));

    if g.order() <= FULL_SCAN_LIMIT {
        let bad = g.elements().find(|&w| code.detects(w) != code.detects_by_matrix(w));
        checks.push(Check::new(
            "detection-oracle",
            bad.is_none(),
            match bad {
                Some(w) => format!("disagree at {}", g.label(w)),
                None => format!("all {} errors", g.order()),
            },
        ));
        checks.push(coset_orthogonality(code));
    } else {
        for name in ["detection-oracle", "coset-orthogonality"] {
            checks.push(Check::with_status(
                name,
                Status::Skipped,
                format!("|E| > {FULL_SCAN_LIMIT}"),
            ));
        }
    }

    let inertia = code.inertia();
    let faithful = g.center().elements().iter().all(|&z| rep.scalar_of(z).is_some());
    if g.has_abelian_index() && faithful {
        checks.push(Check::new(
            "inertia-is-centralizer",
            inertia.agree,
            format!(
                "|T(chi)| = {}, |C_E(Z(N))| = {}",
                inertia.t_def.order(),
                inertia.t_centralizer.order()
            ),
        ));
    } else {
        checks.push(Check::with_status(
            "inertia-is-centralizer",
            Status::Inapplicable,
            "index group is not abelian",
        ));
    }

    checks.push(Check::new("N-in-T", code.subgroup().is_subset(code.t()), ""));
    let zz = g.subgroup_product(g.center(), &g.subgroup_center(code.subgroup()));
    checks.push(Check::new(
        "center-in-Ztheta",
        zz.is_subset(code.ztheta()) && code.ztheta().is_subset(code.t()),
        format!("|Z(E)Z(N)| = {}, |Z(theta)| = {}", zz.order(), code.ztheta().order()),
    ));
    checks.push(Check::new(
        "theta-irreducible",
        code.theta_norm().is_one(),
        format!("<theta, theta> = {}", code.theta_norm()),
    ));
    checks.push(Check::new(
        "theta-degree",
        code.theta().degree() == Some(code.dim() as i64),
        "",
    ));

    match stabilizer_reduction(code) {
        Ok(Reduction::Applicable(form)) => checks.push(Check::new(
            "stabilizer-reduction",
            form.is_equal_to_e_chi,
            format!("|Z(N)| = {}", form.zn.order()),
        )),
        Ok(Reduction::Inapplicable(why)) => {
            checks.push(Check::with_status("stabilizer-reduction", Status::Inapplicable, why))
        }
        Err(e) => checks.push(Check::new("stabilizer-reduction", false, e.to_string())),
    }
    checks.extend(verify_dimension_identities(code));
    checks
}

/// Conjugates of `e_χ` by elements of different `T`-cosets are orthogonal.
fn coset_orthogonality(code: &CliffordCode<'_>) -> Check {
    let rep = code.rep();
    let g = rep.group();
    let cosets = g.cosets(code.t());
    let conj: Vec<CycMatrix> = cosets
        .transversal
        .iter()
        .map(|&t| rep.matrix(t).mul(code.projector()).mul(&rep.matrix(t).adjoint()))
        .collect();
    for (i, a) in conj.iter().enumerate() {
        for (j, b) in conj.iter().enumerate().skip(i + 1) {
            if !a.mul(b).is_zero() {
                return Check::new(
                    "coset-orthogonality",
                    false,
                    format!(
                        "cosets of {} and {}",
                        g.label(cosets.transversal[i]),
                        g.label(cosets.transversal[j])
                    ),
                );
            }
        }
    }
    Check::new("coset-orthogonality", true, format!("{} cosets of T", conj.len()))
}

/// Checks on a decomposition that involve several components.
fn verify_components(rep: &UnitaryRep, dec: &Decomposition) -> Vec<Check> {
    let g = rep.group();
    let d = rep.degree();
    let total = dec
        .components
        .iter()
        .fold(CycMatrix::zeros(d), |acc, c| acc.add(c.projector()));
    let mut orthogonal = true;
    for (i, a) in dec.components.iter().enumerate() {
        for b in &dec.components[i + 1..] {
            orthogonal &= a.projector().mul(b.projector()).is_zero();
        }
    }
    let mut checks = vec![
        Check::new(
            "resolution-of-identity",
            total.is_identity(),
            format!("{} components", dec.components.len()),
        ),
        Check::new("pairwise-orthogonal", orthogonal, ""),
    ];

    let gens = g.generating_set(&g.whole());
    let mut conj_witness = None;
    'outer: for (k, comp) in dec.components.iter().enumerate() {
        for &s in &gens {
            let Ok(conj) = conjugate_character(g, comp.chi(), s) else {
                conj_witness = Some(format!("component {k}: N not normalized"));
                break 'outer;
            };
            match dec.components.iter().find(|c| c.chi() == &conj) {
                Some(other)
                    if other.multiplicity() == comp.multiplicity() && other.chi_degree() == comp.chi_degree() => {}
                Some(_) => {
                    conj_witness = Some(format!(
                        "component {k} and its conjugate by {} differ in m or chi(1)",
                        g.label(s)
                    ));
                    break 'outer;
                }
                None => {
                    conj_witness = Some(format!(
                        "conjugate of component {k} by {} is not a constituent",
                        g.label(s)
                    ));
                    break 'outer;
                }
            }
        }
    }
    checks.push(Check::new(
        "conjugates-share-m",
        conj_witness.is_none(),
        conj_witness.unwrap_or_default(),
    ));
    checks
}

/// Verification of one normal subgroup and all codes it defines.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub generators: Vec<String>,
    pub order: usize,
    pub components: usize,
    pub checks: Vec<Check>,
}

impl SubgroupReport {
    pub fn tally(&self) -> Tally {
        Tally::of(&self.checks)
    }

    /// One summary line.
    pub fn line(&self) -> String {
        let t = self.tally();
        format!(
            "N = <{}> order {} components {}: {} passed, {} failed, {} skipped, {} inapplicable",
            self.generators.join(", "),
            self.order,
            self.components,
            t.passed,
            t.failed,
            t.skipped,
            t.inapplicable
        )
    }
}

pub fn verify_subgroup(rep: &UnitaryRep, n: &Subgroup, opts: &DecompositionOptions) -> SubgroupReport {
    let g = rep.group();
    let generators = g.generating_set(n).into_iter().map(|x| g.label(x)).collect();
    let mut checks = Vec::new();
    let dec = match isotypic_decomposition(rep, n, opts) {
        Ok(dec) => dec,
        Err(e) => {
            checks.push(Check::new("decomposition", false, e.to_string()));
            return SubgroupReport {
                generators,
                order: n.order(),
                components: 0,
                checks,
            };
        }
    };
    checks.extend(verify_components(rep, &dec));
    checks.extend(verify_lemma_suite(rep, &dec));
    for k in 0..dec.components.len() {
        match CliffordCode::from_component(rep, &dec, k) {
            Ok(code) => checks.extend(verify_code(&code).into_iter().map(|mut c| {
                c.name = format!("{}[{k}]", c.name);
                c
            })),
            Err(e) => checks.push(Check::new(format!("code[{k}]"), false, e.to_string())),
        }
    }
    SubgroupReport {
        generators,
        order: n.order(),
        components: dec.components.len(),
        checks,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub group: String,
    pub group_checks: Vec<Check>,
    pub subgroups: Vec<SubgroupReport>,
}

impl VerifyReport {
    pub fn tally(&self) -> Tally {
        let mut t = Tally::of(&self.group_checks);
        for s in &self.subgroups {
            t.merge(s.tally());
        }
        t
    }

    pub fn all_passed(&self) -> bool {
        self.tally().all_passed()
    }
}

/// Verifies the error group and every given (or every) normal subgroup.
pub fn verify_group(
    rep: &UnitaryRep,
    subgroups: Option<Vec<Subgroup>>,
    normal_cap: usize,
    opts: &DecompositionOptions,
) -> Result<VerifyReport> {
    let group_checks = verify_error_group(rep).checks;
    let subgroups = match subgroups {
        Some(s) => s,
        None => rep.group().normal_subgroups(normal_cap)?,
    };
    let reports = subgroups.par_iter().map(|n| verify_subgroup(rep, n, opts)).collect();
    Ok(VerifyReport {
        group: rep.name().to_string(),
        group_checks,
        subgroups: reports,
    })
}
