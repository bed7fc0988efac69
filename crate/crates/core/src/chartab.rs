//! Class functions and the isotypic decomposition of `ϱ↓N`.

use nalgebra::{DMatrix, SymmetricEigen};
use num::complex::Complex64;
use num::{BigRational, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::matrix::{CycMatrix, DenseAcc};
use crate::rep::UnitaryRep;

/// A class function on a subgroup, stored by parent element index.
///
/// Values outside the domain are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    domain: Subgroup,
    values: Vec<CycNum>,
}

impl Character {
    /// `values` is indexed by parent element; entries off the domain are
    /// ignored.
    pub fn new(domain: Subgroup, mut values: Vec<CycNum>) -> Self {
        for (g, v) in values.iter_mut().enumerate() {
            if !domain.contains(g as u32) && !v.is_zero() {
                *v = CycNum::zero();
            }
        }
        Character { domain, values }
    }

    /// The trivial character of `domain` inside a parent of order `parent_order`.
    pub fn trivial(domain: Subgroup, parent_order: usize) -> Self {
        let mut values = vec![CycNum::zero(); parent_order];
        for &g in domain.elements() {
            values[g as usize] = CycNum::one();
        }
        Character { domain, values }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn value(&self, g: u32) -> &CycNum {
        &self.values[g as usize]
    }

    pub fn values(&self) -> &[CycNum] {
        &self.values
    }

    /// `(g, χ(g))` for `g` in the domain.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &CycNum)> {
        self.domain
            .elements()
            .iter()
            .map(move |&g| (g, &self.values[g as usize]))
    }

    /// `χ(1)` as an integer, when it is one.
    pub fn degree(&self) -> Option<i64> {
        self.values[0].as_integer()
    }

    pub fn is_linear(&self) -> bool {
        self.degree() == Some(1)
    }

    pub fn scale(&self, q: &BigRational) -> Character {
        Character {
            domain: self.domain.clone(),
            values: self.values.iter().map(|v| v.scale(q)).collect(),
        }
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, h: &Subgroup) -> Result<Character> {
        if !h.is_subset(&self.domain) {
            return Err(Error::DomainMismatch);
        }
        Ok(Character::new(h.clone(), self.values.clone()))
    }

    pub fn conductor(&self) -> u32 {
        use num::integer::Integer;
        self.iter().fold(1u32, |acc, (_, v)| acc.lcm(&v.conductor()))
    }
}

/// `⟨a, b⟩ = (1/|H|) Σ a(h) b(h⁻¹)`.
pub fn inner_product(group: &FiniteGroup, a: &Character, b: &Character) -> Result<CycNum> {
    if a.domain != b.domain {
        return Err(Error::DomainMismatch);
    }
    let sum: CycNum = a
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(h, v)| v * b.value(group.inv(h)))
        .sum();
    Ok(sum.div_integer(a.domain.order() as i64))
}

/// `χ^g(x) = χ(g x g⁻¹)`.
pub fn conjugate_character(group: &FiniteGroup, chi: &Character, g: u32) -> Result<Character> {
    if !group.normalizes([g], &chi.domain) {
        return Err(Error::NotNormal(format!(
            "{} does not normalize the domain",
            group.label(g)
        )));
    }
    let mut values = vec![CycNum::zero(); group.order()];
    for &x in chi.domain.elements() {
        values[x as usize] = chi.value(group.conjugate(g, x)).clone();
    }
    Ok(Character {
        domain: chi.domain.clone(),
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPredicates {
    pub support: Vec<u32>,
    pub kernel: Vec<u32>,
    pub faithful_on: bool,
}

/// Support, kernel and whether `H ∩ ker χ = {1}`.
pub fn char_predicates(chi: &Character, h: &Subgroup) -> CharPredicates {
    let deg = chi.value(0);
    let support = chi.iter().filter(|(_, v)| !v.is_zero()).map(|(g, _)| g).collect();
    let kernel: Vec<u32> = chi.iter().filter(|(_, v)| *v == deg).map(|(g, _)| g).collect();
    let faithful_on = kernel.iter().all(|&g| g == 0 || !h.contains(g));
    CharPredicates {
        support,
        kernel,
        faithful_on,
    }
}

/// The linear character `λ` of `Z` with `χ(z) = χ(1) λ(z)`.
pub fn extract_linear_on_center(group: &FiniteGroup, chi: &Character, z: &Subgroup) -> Result<Character> {
    if !z.is_subset(&chi.domain) {
        return Err(Error::DomainMismatch);
    }
    let deg = chi
        .degree()
        .filter(|&d| d > 0)
        .ok_or_else(|| Error::Hypothesis("character degree is not a positive integer".into()))?;
    let mut values = vec![CycNum::zero(); group.order()];
    for &x in z.elements() {
        let v = chi.value(x).div_integer(deg);
        if !v.pow(group.element_order(x) as u32).is_one() {
            return Err(Error::Hypothesis(format!(
                "chi({})/chi(1) = {v} is not a root of unity of the element order",
                group.label(x)
            )));
        }
        values[x as usize] = v;
    }
    Ok(Character {
        domain: z.clone(),
        values,
    })
}

/// The isotypic projector `e_χ = (χ(1)/|N|) Σ χ(n⁻¹) ϱ(n)`.
pub fn central_idempotent(rep: &UnitaryRep, chi: &Character) -> CycMatrix {
    let g = rep.group();
    let deg = chi.value(0).clone();
    let mut acc = DenseAcc::new(rep.degree());
    for (n, _) in chi.iter() {
        let c = chi.value(g.inv(n));
        if !c.is_zero() {
            acc.add_scaled(rep.matrix(n), c);
        }
    }
    acc.finish().scale(&deg.div_integer(chi.domain.order() as i64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicComponent {
    chi: Character,
    multiplicity: u32,
    projector: CycMatrix,
}

impl IsotypicComponent {
    pub fn chi(&self) -> &Character {
        &self.chi
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn chi_degree(&self) -> u32 {
        self.chi.degree().expect("integral degree") as u32
    }

    /// `m · χ(1)`.
    pub fn dim(&self) -> u32 {
        self.multiplicity * self.chi_degree()
    }

    pub fn projector(&self) -> &CycMatrix {
        &self.projector
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecompositionOptions {
    pub seed: u64,
    /// Eigenvalue clustering tolerance for the floating-point split.
    pub tol: f64,
    /// Attempts before giving up; attempt `k` uses seed `seed + k`.
    pub retries: usize,
}

impl Default for DecompositionOptions {
    fn default() -> Self {
        DecompositionOptions {
            seed: 0,
            tol: 1e-8,
            retries: 5,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub subgroup: Subgroup,
    pub components: Vec<IsotypicComponent>,
    /// Attempts used, starting at 1.
    pub attempts: usize,
}

/// Splits `ϱ↓N` into homogeneous components.
///
/// A random hermitian element of the centre of the image of `CN` is
/// diagonalised numerically. Each eigenspace gives a candidate character
/// `ψ = m χ`, whose values are snapped to exact cyclotomic numbers by
/// rounding eigenvalue multiplicities of `ϱ(n)` on the eigenspace. The
/// projectors are then rebuilt exactly from the snapped characters and
/// checked exactly; a failed check retries with the next seed.
pub fn isotypic_decomposition(rep: &UnitaryRep, n: &Subgroup, opts: &DecompositionOptions) -> Result<Decomposition> {
    let g = rep.group();
    g.check_subgroup(n.elements())?;
    if !g.is_normal(n) {
        return Err(Error::NotNormal("N is not normal in E".into()));
    }
    let classes = g.classes_within(n);
    let mut detail = String::new();
    let attempts = opts.retries.max(1);
    for attempt in 0..attempts {
        let seed = opts.seed.wrapping_add(attempt as u64);
        match split(rep, n, &classes, seed, opts.tol) {
            Ok(mut components) => {
                components.sort_by_cached_key(component_key);
                return Ok(Decomposition {
                    subgroup: n.clone(),
                    components,
                    attempts: attempt + 1,
                });
            }
            Err(e) => detail = format!("seed {seed}: {e}"),
        }
    }
    Err(Error::Decomposition { attempts, detail })
}

fn component_key(c: &IsotypicComponent) -> (usize, Vec<(usize, usize, CycNum)>) {
    let p = c.projector();
    let first = (0..p.dim()).find(|&i| !p.get(i, i).is_zero()).unwrap_or(p.dim());
    (first, p.entries().map(|(i, j, v)| (i, j, v.clone())).collect())
}

fn embedded(m: &CycMatrix) -> Vec<(usize, usize, Complex64)> {
    m.entries().map(|(i, j, v)| (i, j, v.embed())).collect()
}

fn split(
    rep: &UnitaryRep,
    n: &Subgroup,
    classes: &[Vec<u32>],
    seed: u64,
    tol: f64,
) -> std::result::Result<Vec<IsotypicComponent>, String> {
    let g = rep.group();
    let d = rep.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = DMatrix::<Complex64>::zeros(d, d);
    for class in classes {
        let a: f64 = rng.gen_range(-1.0..1.0);
        let b: f64 = rng.gen_range(-1.0..1.0);
        // c·S + conj(c)·S† is hermitian and central for c = (a - ib)/2.
        let c = Complex64::new(a, -b) / (2.0 * class.len() as f64);
        for &x in class {
            for (i, j, v) in embedded(rep.matrix(x)) {
                h[(i, j)] += c * v;
                h[(j, i)] += c.conj() * v.conj();
            }
        }
    }
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &k in &order {
        match clusters.last_mut() {
            Some(last) if (eig.eigenvalues[k] - eig.eigenvalues[*last.last().unwrap()]).abs() <= tol => last.push(k),
            _ => clusters.push(vec![k]),
        }
    }

    let elems = n.elements();
    let emb: Vec<Vec<(usize, usize, Complex64)>> = elems.iter().map(|&x| embedded(rep.matrix(x))).collect();
    let mut pos = vec![usize::MAX; g.order()];
    for (k, &x) in elems.iter().enumerate() {
        pos[x as usize] = k;
    }

    let mut components = Vec::with_capacity(clusters.len());
    for cluster in &clusters {
        let v = eig.eigenvectors.select_columns(cluster.iter());
        let p = &v * v.adjoint();
        let psi_f: Vec<Complex64> = emb
            .iter()
            .map(|entries| entries.iter().map(|&(i, j, val)| p[(j, i)] * val).sum())
            .collect();
        let mut values = vec![CycNum::zero(); g.order()];
        for &x in elems {
            values[x as usize] = snap(g, x, |y| psi_f[pos[y as usize]])?;
        }
        let psi = Character::new(n.clone(), values);
        let norm = inner_product(g, &psi, &psi).map_err(|e| e.to_string())?;
        let m2 = norm
            .as_integer()
            .filter(|&v| v > 0)
            .ok_or_else(|| format!("<psi, psi> = {norm} is not a positive integer"))?;
        let m = (m2 as f64).sqrt().round() as i64;
        if m * m != m2 {
            return Err(format!("<psi, psi> = {m2} is not a square"));
        }
        let chi = psi.scale(&BigRational::new(1.into(), m.into()));
        let deg = chi
            .degree()
            .filter(|&x| x > 0)
            .ok_or_else(|| format!("chi(1) = {} is not a positive integer", chi.value(0)))?;
        if deg as usize * m as usize != cluster.len() {
            return Err(format!(
                "m chi(1) = {} but the eigenspace has dimension {}",
                deg * m,
                cluster.len()
            ));
        }
        let e = central_idempotent(rep, &chi);
        if !e.is_hermitian() || !e.is_idempotent() {
            return Err("snapped projector is not a hermitian idempotent".into());
        }
        if e.trace() != CycNum::from_integer(deg * m) {
            return Err(format!("trace {} != m chi(1) = {}", e.trace(), deg * m));
        }
        if let Some(&x) = elems
            .iter()
            .find(|&&x| e.trace_of_product(rep.matrix(x)) != *psi.value(x))
        {
            return Err(format!("tr(e rho({})) != psi", g.label(x)));
        }
        components.push(IsotypicComponent {
            chi,
            multiplicity: m as u32,
            projector: e,
        });
    }

    let total = components
        .iter()
        .fold(CycMatrix::zeros(d), |acc, c| acc.add(c.projector()));
    if !total.is_identity() {
        return Err("projectors do not sum to the identity".into());
    }
    for (i, a) in components.iter().enumerate() {
        for b in &components[i + 1..] {
            if !a.projector().mul(b.projector()).is_zero() {
                return Err("projectors are not orthogonal".into());
            }
        }
    }
    Ok(components)
}

/// Exact `ψ(x)` from approximate values on the cyclic group `⟨x⟩`.
///
/// `ψ(x) = Σ_j a_j ζ_o^j` where `a_j` counts eigenvalues `ζ_o^j` of `ϱ(x)` on
/// the eigenspace, and `a_j = (1/o) Σ_t ψ(x^t) ζ_o^{-jt}`.
fn snap(g: &FiniteGroup, x: u32, psi: impl Fn(u32) -> Complex64) -> std::result::Result<CycNum, String> {
    let o = g.element_order(x);
    let powers: Vec<Complex64> = (0..o).map(|t| psi(g.pow(x, t))).collect();
    let mut out = CycNum::zero();
    for j in 0..o {
        let a: Complex64 = powers
            .iter()
            .enumerate()
            .map(|(t, v)| {
                let angle = -2.0 * std::f64::consts::PI * ((j * t) % o) as f64 / o as f64;
                v * Complex64::from_polar(1.0, angle)
            })
            .sum::<Complex64>()
            / o as f64;
        let r = a.re.round();
        if (a - Complex64::new(r, 0.0)).norm() > 0.25 || r < 0.0 {
            return Err(format!(
                "eigenvalue multiplicity {a} of {} is not a nonnegative integer",
                g.label(x)
            ));
        }
        let r = r.to_i64().ok_or("multiplicity out of range")?;
        if r != 0 {
            out = out + CycNum::zeta(o as u32, j as u64) * CycNum::from_integer(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::builtin_group;

    fn pauli1() -> UnitaryRep {
        builtin_group("pauli:1").unwrap()
    }

    #[test]
    fn pauli1_z_subgroup() {
        let rep = pauli1();
        let n = rep.subgroup_from_labels(&["Z", "-1"]).unwrap();
        assert_eq!(n.order(), 4);
        let dec = isotypic_decomposition(&rep, &n, &DecompositionOptions::default()).unwrap();
        assert_eq!(dec.components.len(), 2);
        let plus = CycMatrix::from_integers(&[&[1, 0], &[0, 0]]);
        let minus = CycMatrix::from_integers(&[&[0, 0], &[0, 1]]);
        assert_eq!(dec.components[0].projector(), &plus);
        assert_eq!(dec.components[1].projector(), &minus);
        let g = rep.group();
        let (a, b) = (dec.components[0].chi(), dec.components[1].chi());
        assert!(inner_product(g, a, b).unwrap().is_zero());
        assert!(inner_product(g, a, a).unwrap().is_one());
        let phi = rep.restrict(&n).unwrap().character();
        assert!(inner_product(g, &phi, a).unwrap().is_one());
        let x = rep.resolve_label("X").unwrap();
        let z = rep.resolve_label("Z").unwrap();
        let conj = conjugate_character(g, a, x).unwrap();
        assert_eq!(conj, *b);
        assert_eq!(conj.value(z), &CycNum::from_integer(-1));
    }

    #[test]
    fn center_component() {
        let rep = pauli1();
        let z = rep.group().center().clone();
        let dec = isotypic_decomposition(&rep, &z, &DecompositionOptions::default()).unwrap();
        assert_eq!(dec.components.len(), 1);
        let c = &dec.components[0];
        assert_eq!((c.multiplicity(), c.chi_degree()), (2, 1));
        assert!(c.projector().is_identity());
        let ii = rep.resolve_label("i").unwrap();
        assert_eq!(c.chi().value(ii), &CycNum::zeta(4, 1));
        let lin = extract_linear_on_center(rep.group(), c.chi(), &z).unwrap();
        assert_eq!(lin.value(ii), &CycNum::zeta(4, 1));
    }

    #[test]
    fn nonabelian_subgroup_component() {
        let rep = builtin_group("pauli:2").unwrap();
        let n = rep.subgroup_from_labels(&["XI", "ZI"]).unwrap();
        assert_eq!(n.order(), 8);
        let dec = isotypic_decomposition(&rep, &n, &DecompositionOptions::default()).unwrap();
        assert_eq!(dec.components.len(), 1);
        let c = &dec.components[0];
        assert_eq!((c.multiplicity(), c.chi_degree()), (2, 2));
        assert!(c.projector().is_identity());
        let zn = rep.group().subgroup_center(&n);
        assert_eq!(zn.order(), 2);
        let lin = extract_linear_on_center(rep.group(), c.chi(), &zn).unwrap();
        let minus = rep.resolve_label("-1").unwrap();
        assert_eq!(lin.value(minus), &CycNum::from_integer(-1));
        let preds = char_predicates(c.chi(), &zn);
        assert_eq!(preds.support, zn.elements().to_vec());
    }

    #[test]
    fn predicates_of_trivial_character() {
        let rep = pauli1();
        let n = rep.subgroup_from_labels(&["Z"]).unwrap();
        let triv = Character::trivial(n.clone(), rep.order());
        let p = char_predicates(&triv, &n);
        assert_eq!(p.kernel, n.elements().to_vec());
        assert!(!p.faithful_on);
        assert!(char_predicates(&triv, &rep.group().trivial_subgroup()).faithful_on);
    }

    #[test]
    fn rejects_non_normal() {
        let rep = builtin_group("pauli:2").unwrap();
        let g = rep.group();
        // ⟨X⊗I⟩ without the phases is not normal: Z⊗I conjugates it to −X⊗I.
        let h = rep.subgroup_from_labels(&["XI"]).unwrap();
        assert!(!g.is_normal(&h));
        assert!(matches!(
            isotypic_decomposition(&rep, &h, &DecompositionOptions::default()),
            Err(Error::NotNormal(_))
        ));
    }
}
