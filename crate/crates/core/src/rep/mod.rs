//! Error groups as finite groups of exact unitary matrices.

mod builtin;
mod file;

use std::collections::HashMap;
use std::sync::OnceLock;

use num::integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chartab::{inner_product, Character};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::matrix::CycMatrix;
use crate::report::{Check, Status};

pub use builtin::{builtin_group, BuiltinKind};
pub use file::{load_group_file, GroupFile};

/// Default cap on the number of elements produced by [`group_closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 100_000;

/// Largest order for which a Cayley table is built (`n²` entries of 4 bytes).
pub const MAX_TABLE_ORDER: usize = 8192;

/// Pairs checked for the homomorphism law above [`FULL_HOMOMORPHISM_LIMIT`].
const SAMPLED_HOMOMORPHISM_PAIRS: usize = 10_000;
const FULL_HOMOMORPHISM_LIMIT: usize = 256;

/// A finite group `E` together with its faithful unitary representation `ϱ`.
pub struct UnitaryRep {
    name: String,
    group: FiniteGroup,
    degree: usize,
    matrices: Vec<CycMatrix>,
    conductor: u32,
    tensor_factors: Option<Vec<usize>>,
    weights: Option<Vec<u32>>,
    weight_status: String,
    phase_subgroup: Subgroup,
    builtin: Option<BuiltinKind>,
    index: OnceLock<HashMap<CycMatrix, u32>>,
    traces: OnceLock<Vec<CycNum>>,
}

impl std::fmt::Debug for UnitaryRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UnitaryRep")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("degree", &self.degree)
            .field("conductor", &self.conductor)
            .field("tensor_factors", &self.tensor_factors)
            .finish_non_exhaustive()
    }
}

/// Closes a set of unitary generators under multiplication.
///
/// Element 0 is the identity; the other elements appear in breadth-first
/// order of their first discovery. Only `|E|·|gens|` matrix products are
/// formed: the Cayley table is filled from the generator words of the
/// breadth-first tree.
pub fn group_closure(generators: &[CycMatrix], cap: usize) -> Result<UnitaryRep> {
    let Some(first) = generators.first() else {
        return Err(Error::ShapeMismatch("no generators given".into()));
    };
    let degree = first.dim();
    for (k, g) in generators.iter().enumerate() {
        if g.dim() != degree {
            return Err(Error::ShapeMismatch(format!(
                "generator {k} is {0}x{0}, expected {degree}x{degree}",
                g.dim()
            )));
        }
        if !g.is_unitary() {
            return Err(Error::NonUnitary { index: k });
        }
    }
    let k = generators.len();
    let cap = cap.min(MAX_TABLE_ORDER);
    let mut elements = vec![CycMatrix::identity(degree)];
    let mut index: HashMap<CycMatrix, u32> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut right: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (s, gen) in generators.iter().enumerate() {
            let prod = elements[i].mul(gen);
            let idx = match index.get(&prod) {
                Some(&idx) => idx,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::ClosureCap {
                            cap,
                            reached: elements.len(),
                        });
                    }
                    let idx = elements.len() as u32;
                    index.insert(prod.clone(), idx);
                    elements.push(prod);
                    parent.push((i as u32, s as u32));
                    idx
                }
            };
            right.push(idx);
        }
        i += 1;
    }
    let n = elements.len();
    let mut table = vec![0u32; n * n];
    for g in 0..n {
        let row = &mut table[g * n..(g + 1) * n];
        row[0] = g as u32;
        for h in 1..n {
            let (p, s) = parent[h];
            row[h] = right[row[p as usize] as usize * k + s as usize];
        }
    }
    let group = FiniteGroup::from_table(n, table)?;
    let phase_subgroup =
        Subgroup::from_elements(n, (0..n as u32).filter(|&g| elements[g as usize].as_scalar().is_some()));
    let conductor = elements.iter().fold(1u32, |acc, m| acc.lcm(&m.conductor()));
    let index_lock = OnceLock::new();
    let _ = index_lock.set(index);
    Ok(UnitaryRep {
        name: "closure".into(),
        group,
        degree,
        matrices: elements,
        conductor,
        tensor_factors: None,
        weights: None,
        weight_status: "no tensor-factor metadata".into(),
        phase_subgroup,
        builtin: None,
        index: index_lock,
        traces: OnceLock::new(),
    })
}

/// Loads `pauli:n`, `weyl:d:n` or `file:PATH`.
pub fn load_group(spec: &str, closure_cap: usize) -> Result<UnitaryRep> {
    if let Some(path) = spec.strip_prefix("file:") {
        load_group_file(path, closure_cap)
    } else {
        builtin::builtin_group_with_cap(spec, closure_cap)
    }
}

/// The local factors of a matrix that is (up to a scalar) a tensor product.
#[derive(Clone, Debug)]
pub struct TensorFactorization {
    /// The reference entry `v`; `⊗ factors = v^{k-1} · M` for `k` factors.
    pub scale: CycNum,
    pub factors: Vec<CycMatrix>,
}

impl TensorFactorization {
    pub fn reconstruct(&self) -> CycMatrix {
        let mut it = self.factors.iter();
        let first = it.next().expect("at least one factor").clone();
        it.fold(first, |acc, f| acc.kron(f))
    }

    /// Positions whose local factor is not a scalar multiple of the identity.
    pub fn weight(&self) -> u32 {
        self.factors.iter().filter(|f| f.as_scalar().is_none()).count() as u32
    }
}

/// Slices `M` along each tensor position through its first nonzero entry and
/// verifies that the slices multiply back to `M` up to the expected scalar.
pub fn tensor_factorization(m: &CycMatrix, dims: &[usize]) -> Option<TensorFactorization> {
    if dims.is_empty() || dims.iter().product::<usize>() != m.dim() {
        return None;
    }
    let (r0, c0, v) = m.first_nonzero()?;
    let v = v.clone();
    let mut strides = vec![1usize; dims.len()];
    for j in (0..dims.len().saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * dims[j + 1];
    }
    let digit = |x: usize, j: usize| (x / strides[j]) % dims[j];
    let with_digit = |x: usize, j: usize, a: usize| x - digit(x, j) * strides[j] + a * strides[j];
    let factors: Vec<CycMatrix> = (0..dims.len())
        .map(|j| {
            let d = dims[j];
            CycMatrix::from_dense(
                (0..d)
                    .map(|a| {
                        (0..d)
                            .map(|b| m.get(with_digit(r0, j, a), with_digit(c0, j, b)))
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    let f = TensorFactorization { scale: v, factors };
    let expected = m.scale(&f.scale.pow(dims.len() as u32 - 1));
    (f.reconstruct() == expected).then_some(f)
}

impl UnitaryRep {
    /// Attaches tensor-factor dimensions and computes element weights.
    pub fn with_tensor_factors(mut self, dims: Vec<usize>) -> Self {
        if dims.iter().product::<usize>() != self.degree {
            self.weight_status = format!("tensor factors {dims:?} do not multiply to the degree {}", self.degree);
            self.tensor_factors = Some(dims);
            return self;
        }
        let weights: Option<Vec<u32>> = self
            .matrices
            .iter()
            .map(|m| tensor_factorization(m, &dims).map(|f| f.weight()))
            .collect();
        self.weight_status = match &weights {
            Some(_) => "ok".into(),
            None => "some element is not a scaled tensor product".into(),
        };
        self.weights = weights;
        self.tensor_factors = Some(dims);
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn with_builtin(mut self, kind: BuiltinKind, labels: Vec<String>) -> Self {
        self.builtin = Some(kind);
        self.group.set_labels(labels);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn matrix(&self, g: u32) -> &CycMatrix {
        &self.matrices[g as usize]
    }

    pub fn matrices(&self) -> &[CycMatrix] {
        &self.matrices
    }

    pub fn tensor_factors(&self) -> Option<&[usize]> {
        self.tensor_factors.as_deref()
    }

    pub fn weight(&self, g: u32) -> Option<u32> {
        self.weights.as_ref().map(|w| w[g as usize])
    }

    pub fn weight_status(&self) -> &str {
        &self.weight_status
    }

    pub fn phase_subgroup(&self) -> &Subgroup {
        &self.phase_subgroup
    }

    pub fn builtin(&self) -> Option<BuiltinKind> {
        self.builtin
    }

    /// Element index of a matrix, if it belongs to the group.
    pub fn index_of(&self, m: &CycMatrix) -> Option<u32> {
        self.index
            .get_or_init(|| {
                self.matrices
                    .iter()
                    .enumerate()
                    .map(|(i, m)| (m.clone(), i as u32))
                    .collect()
            })
            .get(m)
            .copied()
    }

    /// The scalar by which a central element acts.
    pub fn scalar_of(&self, g: u32) -> Option<CycNum> {
        self.matrices[g as usize].as_scalar()
    }

    pub fn trace(&self, g: u32) -> &CycNum {
        &self.traces()[g as usize]
    }

    fn traces(&self) -> &[CycNum] {
        self.traces
            .get_or_init(|| self.matrices.iter().map(CycMatrix::trace).collect())
    }

    /// The character `φ = tr ϱ` on the whole group.
    pub fn character(&self) -> Character {
        Character::new(self.group.whole(), self.traces().to_vec())
    }

    /// Resolves an element label: `#k` for an index, a built-in word such as
    /// `-iX.Z`, or an exact match of a stored label.
    pub fn resolve_label(&self, label: &str) -> Result<u32> {
        let label = label.trim();
        if let Some(idx) = label.strip_prefix('#') {
            let g: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad element index `{label}`")))?;
            if g >= self.order() {
                return Err(Error::Parse(format!("element index {g} out of range")));
            }
            return Ok(g as u32);
        }
        if let Some(labels) = self.group.labels() {
            if let Some(pos) = labels.iter().position(|l| l == label) {
                return Ok(pos as u32);
            }
        }
        if let Some(kind) = self.builtin {
            let m = builtin::parse_word(kind, label)?;
            return self
                .index_of(&m)
                .ok_or_else(|| Error::Parse(format!("`{label}` is not an element of {}", self.name)));
        }
        Err(Error::Parse(format!("unknown element label `{label}`")))
    }

    /// Subgroup generated by labelled elements.
    pub fn subgroup_from_labels(&self, labels: &[&str]) -> Result<Subgroup> {
        let gens = labels
            .iter()
            .map(|l| self.resolve_label(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.group.generate(&gens))
    }

    /// Subgroup generated by explicit matrices, which must be group elements.
    pub fn subgroup_from_matrices(&self, mats: &[CycMatrix]) -> Result<Subgroup> {
        let gens = mats
            .iter()
            .enumerate()
            .map(|(k, m)| {
                self.index_of(m)
                    .ok_or_else(|| Error::Parse(format!("matrix {k} is not an element of {}", self.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.group.generate(&gens))
    }

    /// Restricts `ϱ` to a subgroup.
    pub fn restrict<'a>(&'a self, n: &'a Subgroup) -> Result<RestrictedRep<'a>> {
        self.group.check_subgroup(n.elements())?;
        Ok(RestrictedRep { rep: self, subgroup: n })
    }
}

/// `ϱ↓N`: the matrices and character of a subgroup.
pub struct RestrictedRep<'a> {
    rep: &'a UnitaryRep,
    subgroup: &'a Subgroup,
}

impl<'a> RestrictedRep<'a> {
    pub fn subgroup(&self) -> &Subgroup {
        self.subgroup
    }

    pub fn elements(&self) -> &[u32] {
        self.subgroup.elements()
    }

    pub fn matrix(&self, g: u32) -> Option<&'a CycMatrix> {
        self.subgroup.contains(g).then(|| self.rep.matrix(g))
    }

    /// `φ↓N`.
    pub fn character(&self) -> Character {
        let mut values = vec![CycNum::zero(); self.rep.order()];
        for &g in self.subgroup.elements() {
            values[g as usize] = self.rep.trace(g).clone();
        }
        Character::new(self.subgroup.clone(), values)
    }
}

/// Outcome of [`verify_error_group`].
#[derive(Clone, Debug)]
pub struct ErrorGroupReport {
    pub order: usize,
    pub degree: usize,
    pub center_order: usize,
    pub commutator_order: usize,
    pub character_norm: CycNum,
    pub abelian_index: bool,
    pub checks: Vec<Check>,
}

impl ErrorGroupReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !c.failed())
    }
}

/// Checks the laws of an abstract error group on a representation.
pub fn verify_error_group(rep: &UnitaryRep) -> ErrorGroupReport {
    let g = rep.group();
    let n = g.order();
    let mut checks = Vec::new();

    let distinct = rep.matrices.iter().collect::<std::collections::HashSet<_>>().len() == n;
    checks.push(Check::new("faithful", distinct, format!("{n} distinct matrices")));

    let nonunitary = (0..n as u32).find(|&x| !rep.matrix(x).is_unitary());
    checks.push(Check::new(
        "unitary",
        nonunitary.is_none(),
        nonunitary.map_or(String::new(), |x| format!("witness {}", g.label(x))),
    ));

    let hom_witness = |a: u32, b: u32| rep.matrix(a).mul(rep.matrix(b)) != *rep.matrix(g.mul(a, b));
    let (hom_bad, hom_detail) = if n <= FULL_HOMOMORPHISM_LIMIT {
        let bad = (0..n as u32)
            .flat_map(|a| (0..n as u32).map(move |b| (a, b)))
            .find(|&(a, b)| hom_witness(a, b));
        (bad, format!("all {} pairs", n * n))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let bad = (0..SAMPLED_HOMOMORPHISM_PAIRS)
            .map(|_| (rng.gen_range(0..n as u32), rng.gen_range(0..n as u32)))
            .find(|&(a, b)| hom_witness(a, b));
        (bad, format!("{SAMPLED_HOMOMORPHISM_PAIRS} sampled pairs"))
    };
    checks.push(Check::new(
        "homomorphism",
        hom_bad.is_none(),
        match hom_bad {
            Some((a, b)) => format!("witness ({}, {})", g.label(a), g.label(b)),
            None => hom_detail,
        },
    ));

    let phi = rep.character();
    let norm = inner_product(g, &phi, &phi).expect("same domain");
    checks.push(Check::new("irreducible", norm.is_one(), format!("<phi, phi> = {norm}")));

    let center = g.center();
    let index = n / center.order();
    checks.push(Check::new(
        "degree-law",
        rep.degree() * rep.degree() == index,
        format!("deg^2 = {}, (E:Z(E)) = {index}", rep.degree() * rep.degree()),
    ));

    let faithful_center = center.elements().iter().all(|&z| rep.scalar_of(z).is_some());
    checks.push(Check::new(
        "center-acts-by-scalars",
        faithful_center,
        "phi faithful on Z(E)",
    ));

    let abelian_index = g.has_abelian_index();
    if abelian_index {
        let off_center = (0..n as u32).find(|&x| !center.contains(x) && !rep.trace(x).is_zero());
        checks.push(Check::new(
            "vanishes-off-center",
            off_center.is_none(),
            off_center.map_or(String::new(), |x| format!("phi({}) != 0", g.label(x))),
        ));
    } else {
        checks.push(Check::with_status(
            "vanishes-off-center",
            Status::Inapplicable,
            "index group is not abelian",
        ));
    }
    checks.push(Check::with_status(
        "abelian-index",
        Status::Pass,
        format!("{abelian_index}"),
    ));

    ErrorGroupReport {
        order: n,
        degree: rep.degree(),
        center_order: center.order(),
        commutator_order: g.commutator_subgroup().order(),
        character_norm: norm,
        abelian_index,
        checks,
    }
}
