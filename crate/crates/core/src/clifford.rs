//! Clifford codes: construction, detection, inertia data and the reduction
//! to stabilizer codes.

use crate::chartab::{
    central_idempotent, char_predicates, extract_linear_on_center, inner_product, isotypic_decomposition, Character,
    Decomposition, DecompositionOptions,
};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::group::Subgroup;
use crate::matrix::CycMatrix;
use crate::rep::UnitaryRep;
use crate::report::{Check, Status};

/// Which homogeneous component of `ϱ↓N` a code is built from.
#[derive(Clone, Debug)]
pub enum ComponentSelector {
    Index(usize),
    Character(Character),
}

/// `T(χ)` computed two ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inertia {
    /// `{g : χ(g x g⁻¹) = χ(x) for all x ∈ N}`.
    pub t_def: Subgroup,
    /// `C_E(Z(N))`.
    pub t_centralizer: Subgroup,
    pub agree: bool,
}

/// The image of `e_χ` with its inertia data.
#[derive(Clone, Debug)]
pub struct CliffordCode<'a> {
    rep: &'a UnitaryRep,
    n: Subgroup,
    component: usize,
    chi: Character,
    multiplicity: u32,
    e_chi: CycMatrix,
    inertia: Inertia,
    theta: Character,
    ztheta: Subgroup,
    theta_norm: CycNum,
}

/// Builds the code of the selected component of `ϱ↓N`.
pub fn make_clifford_code<'a>(
    rep: &'a UnitaryRep,
    n: &Subgroup,
    which: &ComponentSelector,
    opts: &DecompositionOptions,
) -> Result<CliffordCode<'a>> {
    let dec = isotypic_decomposition(rep, n, opts)?;
    let index = match which {
        ComponentSelector::Index(i) => {
            if *i >= dec.components.len() {
                return Err(Error::ComponentOutOfRange {
                    index: *i,
                    count: dec.components.len(),
                });
            }
            *i
        }
        ComponentSelector::Character(chi) => dec
            .components
            .iter()
            .position(|c| c.chi() == chi)
            .ok_or(Error::NotConstituent)?,
    };
    CliffordCode::from_component(rep, &dec, index)
}

impl<'a> CliffordCode<'a> {
    /// The code of component `index` of an existing decomposition.
    pub fn from_component(rep: &'a UnitaryRep, dec: &Decomposition, index: usize) -> Result<Self> {
        let comp = dec.components.get(index).ok_or(Error::ComponentOutOfRange {
            index,
            count: dec.components.len(),
        })?;
        let chi = comp.chi().clone();
        let e_chi = central_idempotent(rep, &chi);
        if &e_chi != comp.projector() {
            return Err(Error::Consistency(
                "e_chi from the character formula differs from the decomposition projector".into(),
            ));
        }
        let inertia = inertia_group(rep, &dec.subgroup, &chi)?;
        let (theta, ztheta, theta_norm) = theta_and_zw_raw(rep, &e_chi, &inertia.t_def);
        Ok(CliffordCode {
            rep,
            n: dec.subgroup.clone(),
            component: index,
            chi,
            multiplicity: comp.multiplicity(),
            e_chi,
            inertia,
            theta,
            ztheta,
            theta_norm,
        })
    }

    pub fn rep(&self) -> &'a UnitaryRep {
        self.rep
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.n
    }

    pub fn component(&self) -> usize {
        self.component
    }

    pub fn chi(&self) -> &Character {
        &self.chi
    }

    pub fn chi_degree(&self) -> u32 {
        self.chi.degree().expect("integral degree") as u32
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    /// `m · χ(1)`.
    pub fn dim(&self) -> u32 {
        self.multiplicity * self.chi_degree()
    }

    pub fn projector(&self) -> &CycMatrix {
        &self.e_chi
    }

    pub fn inertia(&self) -> &Inertia {
        &self.inertia
    }

    /// `T(χ)`.
    pub fn t(&self) -> &Subgroup {
        &self.inertia.t_def
    }

    pub fn theta(&self) -> &Character {
        &self.theta
    }

    /// `Z(θ)`: the elements of `T` acting on the code as scalars.
    pub fn ztheta(&self) -> &Subgroup {
        &self.ztheta
    }

    /// `⟨θ, θ⟩_T`.
    pub fn theta_norm(&self) -> &CycNum {
        &self.theta_norm
    }

    /// `w ∉ T − Z(θ)`.
    pub fn detects(&self, w: u32) -> bool {
        !self.t().contains(w) || self.ztheta.contains(w)
    }

    /// Whether `e ϱ(w) e` is a scalar multiple of `e`, decided from matrices.
    pub fn detects_by_matrix(&self, w: u32) -> bool {
        let e = &self.e_chi;
        let m = e.mul(self.rep.matrix(w)).mul(e);
        let Some((i, j, eij)) = e.first_nonzero() else {
            return true;
        };
        // m = λ e with λ = m_ij / e_ij, tested without division.
        m.scale(eij) == e.scale(&m.get(i, j))
    }

    /// The undetectable elements `T − Z(θ)`.
    pub fn undetectable(&self) -> Vec<u32> {
        self.t().difference(&self.ztheta)
    }

    /// Checks `e₁⁻¹ e₂ ∉ T − Z(θ)` for all pairs; returns a failing pair.
    pub fn correctable(&self, sigma: &[u32]) -> Correctability {
        let g = self.rep.group();
        for &a in sigma {
            let ai = g.inv(a);
            for &b in sigma {
                if !self.detects(g.mul(ai, b)) {
                    return Correctability {
                        correctable: false,
                        witness: Some((a, b)),
                    };
                }
            }
        }
        Correctability {
            correctable: true,
            witness: None,
        }
    }

    /// Minimum weight of an undetectable error.
    ///
    /// When `T − Z(θ)` is empty and the code is one-dimensional, every error
    /// acts as a scalar; the minimum weight over `Z(θ) − Z(E)` is reported
    /// instead, matching the usual convention for stabilizer states.
    pub fn distance(&self) -> Distance {
        if self.rep.weight(0).is_none() {
            return Distance {
                value: None,
                status: format!("no weights: {}", self.rep.weight_status()),
            };
        }
        let weight = |g: &u32| self.rep.weight(*g).expect("weights present");
        let undetectable = self.undetectable();
        if let Some(d) = undetectable.iter().map(weight).min() {
            return Distance {
                value: Some(d),
                status: "min weight over T - Z(theta)".into(),
            };
        }
        if self.dim() == 1 {
            let center = self.rep.group().center();
            let d = self.ztheta.difference(center).iter().map(weight).min();
            return Distance {
                value: d,
                status: "dimension 1: min weight over Z(theta) - Z(E)".into(),
            };
        }
        Distance {
            value: None,
            status: "every error is detectable".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correctability {
    pub correctable: bool,
    pub witness: Option<(u32, u32)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distance {
    pub value: Option<u32>,
    pub status: String,
}

/// `T(χ)` from the definition and from `C_E(Z(N))`.
pub fn inertia_group(rep: &UnitaryRep, n: &Subgroup, chi: &Character) -> Result<Inertia> {
    let g = rep.group();
    if chi.domain() != n {
        return Err(Error::DomainMismatch);
    }
    let phi = rep.restrict(n)?.character();
    if inner_product(g, &phi, chi)?.is_zero() {
        return Err(Error::NotConstituent);
    }
    let t_def = Subgroup::from_elements(
        g.order(),
        g.elements().filter(|&t| {
            n.elements()
                .iter()
                .all(|&x| chi.value(g.conjugate(t, x)) == chi.value(x))
        }),
    );
    let t_centralizer = g.centralizer(&g.subgroup_center(n));
    let agree = t_def == t_centralizer;
    Ok(Inertia {
        t_def,
        t_centralizer,
        agree,
    })
}

fn theta_and_zw_raw(rep: &UnitaryRep, e: &CycMatrix, t: &Subgroup) -> (Character, Subgroup, CycNum) {
    let g = rep.group();
    let mut values = vec![CycNum::zero(); g.order()];
    for &x in t.elements() {
        values[x as usize] = e.trace_of_product(rep.matrix(x));
    }
    let theta = Character::new(t.clone(), values);
    let deg = theta.value(0);
    let deg2 = deg * deg;
    let ztheta = Subgroup::from_elements(
        g.order(),
        theta.iter().filter(|(_, v)| (*v * &v.conj()) == deg2).map(|(x, _)| x),
    );
    let norm = inner_product(g, &theta, &theta).expect("same domain");
    (theta, ztheta, norm)
}

/// `θ(t) = tr(e_χ ϱ(t))` on `T` and `Z(θ) = {t : θ(t) θ̄(t) = θ(1)²}`.
pub fn theta_and_zw(code: &CliffordCode<'_>) -> (Character, Subgroup) {
    (code.theta.clone(), code.ztheta.clone())
}

/// `(1/|A|) Σ λ(a⁻¹) ϱ(a)` for an abelian normal `A` and linear `λ`.
pub fn stabilizer_code(rep: &UnitaryRep, a: &Subgroup, lambda: &Character) -> Result<CycMatrix> {
    let g = rep.group();
    if lambda.domain() != a {
        return Err(Error::DomainMismatch);
    }
    if !g.is_abelian_subgroup(a) {
        return Err(Error::NotAbelian);
    }
    if !g.is_normal(a) {
        return Err(Error::NotNormal("A is not normal in E".into()));
    }
    if !lambda.value(0).is_one() {
        return Err(Error::Hypothesis("lambda(1) != 1".into()));
    }
    let gens = g.generating_set(a);
    for &x in a.elements() {
        for &s in &gens {
            if *lambda.value(g.mul(x, s)) != lambda.value(x) * lambda.value(s) {
                return Err(Error::Hypothesis(format!(
                    "lambda is not multiplicative at ({}, {})",
                    g.label(x),
                    g.label(s)
                )));
            }
        }
    }
    Ok(central_idempotent(rep, lambda))
}

/// The stabilizer form `(Z(N), λ, e_λ)` of a Clifford code.
#[derive(Clone, Debug)]
pub struct StabilizerForm {
    pub zn: Subgroup,
    pub phi: Character,
    pub e_phi: CycMatrix,
    pub is_equal_to_e_chi: bool,
}

#[derive(Clone, Debug)]
pub enum Reduction {
    Applicable(StabilizerForm),
    Inapplicable(String),
}

impl Reduction {
    pub fn form(&self) -> Option<&StabilizerForm> {
        match self {
            Reduction::Applicable(f) => Some(f),
            Reduction::Inapplicable(_) => None,
        }
    }
}

/// Rewrites a code with abelian index group as the joint eigenspace of
/// `Z(N)` at the linear character under `χ`.
pub fn stabilizer_reduction(code: &CliffordCode<'_>) -> Result<Reduction> {
    let rep = code.rep;
    let g = rep.group();
    if !g.has_abelian_index() {
        return Ok(Reduction::Inapplicable("index group is not abelian".into()));
    }
    if let Some(&z) = g.center().elements().iter().find(|&&z| rep.scalar_of(z).is_none()) {
        return Ok(Reduction::Inapplicable(format!(
            "phi is not faithful on Z(E): {} is not scalar",
            g.label(z)
        )));
    }
    let zn = g.subgroup_center(&code.n);
    if !g.is_normal(&zn) {
        return Err(Error::TheoremViolation("Z(N) is not normal in E".into()));
    }
    let phi = extract_linear_on_center(g, &code.chi, &zn)?;
    let e_phi = stabilizer_code(rep, &zn, &phi)?;
    let is_equal_to_e_chi = e_phi == code.e_chi;
    Ok(Reduction::Applicable(StabilizerForm {
        zn,
        phi,
        e_phi,
        is_equal_to_e_chi,
    }))
}

/// `tr e_χ = m χ(1) = |Y| φ(1) χ(1)² / |N|` with `Y = Z(E) ∩ N`, and
/// `tr(e_λ e_χ) = tr e_χ`.
pub fn verify_dimension_identities(code: &CliffordCode<'_>) -> Vec<Check> {
    let rep = code.rep;
    let g = rep.group();
    let name = "dimension-identity";
    if !g.has_abelian_index() {
        return vec![Check::with_status(
            name,
            Status::Inapplicable,
            "index group is not abelian",
        )];
    }
    let y = g.center().intersection(&code.n);
    let chi1 = code.chi_degree() as u64;
    let num = y.order() as u64 * rep.degree() as u64 * chi1 * chi1;
    let tr = code.e_chi.trace();
    let m_chi = code.dim() as u64;
    let formula_ok = num.is_multiple_of(code.n.order() as u64) && num / code.n.order() as u64 == m_chi;
    let mut checks = vec![Check::new(
        name,
        tr == CycNum::from_integer(m_chi as i64) && formula_ok,
        format!(
            "tr e = {tr}, m chi(1) = {m_chi}, |Y| phi(1) chi(1)^2/|N| = {}*{}*{}/{}",
            y.order(),
            rep.degree(),
            chi1 * chi1,
            code.n.order()
        ),
    )];
    match stabilizer_reduction(code) {
        Ok(Reduction::Applicable(form)) => {
            let t = form.e_phi.trace_of_product(&code.e_chi);
            checks.push(Check::new(
                "trace-e_phi-e_chi",
                t == tr,
                format!("tr(e_phi e_chi) = {t}"),
            ));
        }
        Ok(Reduction::Inapplicable(why)) => {
            checks.push(Check::with_status("trace-e_phi-e_chi", Status::Inapplicable, why))
        }
        Err(e) => checks.push(Check::new("trace-e_phi-e_chi", false, e.to_string())),
    }
    checks
}

/// Checks the character-value shift, faithfulness on `Z(E) ∩ N` and
/// `supp χ = Z(N)` for every constituent of `ϱ↓N`.
pub fn verify_lemma_suite(rep: &UnitaryRep, dec: &Decomposition) -> Vec<Check> {
    let g = rep.group();
    let n = &dec.subgroup;
    let y = g.center().intersection(n);
    let zn = g.subgroup_center(n);
    let abelian_index = g.has_abelian_index();
    let mut checks = Vec::new();
    for (k, comp) in dec.components.iter().enumerate() {
        let chi = comp.chi();
        let preds = char_predicates(chi, &y);
        checks.push(Check::new(
            format!("faithful-on-center[{k}]"),
            preds.faithful_on,
            format!("|Y| = {}", y.order()),
        ));

        let mut shift_witness = None;
        'outer: for &z in y.elements().iter().filter(|&&z| z != 0) {
            let omega = rep.scalar_of(z).expect("central elements act as scalars");
            if omega.is_one() {
                shift_witness = Some(format!("omega({}) = 1", g.label(z)));
                break;
            }
            for &x in n.elements() {
                if *chi.value(g.mul(z, x)) != &omega * chi.value(x) {
                    shift_witness = Some(format!("z = {}, n = {}", g.label(z), g.label(x)));
                    break 'outer;
                }
            }
        }
        checks.push(Check::new(
            format!("value-shift[{k}]"),
            shift_witness.is_none(),
            shift_witness.unwrap_or_default(),
        ));

        if abelian_index {
            let ok = preds.support == zn.elements();
            checks.push(Check::new(
                format!("support-is-center[{k}]"),
                ok,
                format!("|supp| = {}, |Z(N)| = {}", preds.support.len(), zn.order()),
            ));
        } else {
            checks.push(Check::with_status(
                format!("support-is-center[{k}]"),
                Status::Inapplicable,
                "index group is not abelian",
            ));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::builtin_group;

    fn opts() -> DecompositionOptions {
        DecompositionOptions::default()
    }

    #[test]
    fn single_qubit_z_code() {
        let rep = builtin_group("pauli:1").unwrap();
        let n = rep.subgroup_from_labels(&["Z", "-1"]).unwrap();
        let code = make_clifford_code(&rep, &n, &ComponentSelector::Index(0), &opts()).unwrap();
        assert_eq!(code.dim(), 1);
        assert_eq!(code.projector(), &CycMatrix::from_integers(&[&[1, 0], &[0, 0]]));
        assert_eq!(code.t().order(), 8);
        assert!(code.inertia().agree);
        assert_eq!(code.ztheta(), code.t());
        assert!(code.theta_norm().is_one());
        let x = rep.resolve_label("X").unwrap();
        assert!(code.detects(x));
        assert!(code.detects_by_matrix(x));
        assert!(code.detects(0));
        assert!(code.correctable(&[0]).correctable);
        let red = stabilizer_reduction(&code).unwrap();
        assert!(red.form().unwrap().is_equal_to_e_chi);
    }

    #[test]
    fn whole_space_code_from_center() {
        let rep = builtin_group("pauli:1").unwrap();
        let z = rep.group().center().clone();
        let code = make_clifford_code(&rep, &z, &ComponentSelector::Index(0), &opts()).unwrap();
        assert_eq!(code.dim(), 2);
        assert!(code.projector().is_identity());
        assert_eq!(code.t().order(), 16);
        assert_eq!(code.distance().value, Some(1));
        assert!(verify_dimension_identities(&code)
            .iter()
            .all(|c| c.status == Status::Pass));
    }

    #[test]
    fn selector_errors() {
        let rep = builtin_group("pauli:1").unwrap();
        let z = rep.group().center().clone();
        assert!(matches!(
            make_clifford_code(&rep, &z, &ComponentSelector::Index(3), &opts()),
            Err(Error::ComponentOutOfRange { index: 3, count: 1 })
        ));
        let triv = Character::trivial(z.clone(), rep.order());
        assert!(matches!(
            make_clifford_code(&rep, &z, &ComponentSelector::Character(triv.clone()), &opts()),
            Err(Error::NotConstituent)
        ));
        assert!(matches!(inertia_group(&rep, &z, &triv), Err(Error::NotConstituent)));
    }

    #[test]
    fn stabilizer_code_rejects_nonabelian() {
        let rep = builtin_group("pauli:1").unwrap();
        let whole = rep.group().whole();
        let triv = Character::trivial(whole.clone(), rep.order());
        assert!(matches!(stabilizer_code(&rep, &whole, &triv), Err(Error::NotAbelian)));
        let one = rep.group().trivial_subgroup();
        let triv = Character::trivial(one.clone(), rep.order());
        assert!(stabilizer_code(&rep, &one, &triv).unwrap().is_identity());
    }
}
