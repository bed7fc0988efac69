//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order` with `0` the identity. Subgroups are
//! bitsets over those indices; every listing is sorted so that output does not
//! depend on hash order or thread scheduling.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on the group order accepted by [`FiniteGroup::normal_subgroups`].
pub const DEFAULT_NORMAL_CAP: usize = 4096;

/// Groups up to this order get a full associativity check.
const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    labels: Option<Vec<String>>,
    center: OnceLock<Subgroup>,
    classes: OnceLock<Vec<Vec<u32>>>,
    commutator: OnceLock<Subgroup>,
}

impl FiniteGroup {
    /// Validates a Cayley table (`table[g * order + h] = g·h`) and builds the
    /// group. Element 0 must be the identity.
    pub fn from_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidGroup("empty group".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidGroup(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(bad) = table.iter().find(|&&x| x as usize >= order) {
            return Err(Error::InvalidGroup(format!("entry {bad} out of range")));
        }
        for g in 0..order {
            if table[g] as usize != g || table[g * order] as usize != g {
                return Err(Error::InvalidGroup(format!(
                    "element 0 is not a two-sided identity (fails at {g})"
                )));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for g in 0..order {
            let row = &table[g * order..(g + 1) * order];
            let Some(h) = row.iter().position(|&x| x == 0) else {
                return Err(Error::InvalidGroup(format!("element {g} has no inverse")));
            };
            if table[h * order + g] != 0 {
                return Err(Error::InvalidGroup(format!("inverse of {g} is not two-sided")));
            }
            inv[g] = h as u32;
        }
        let group = FiniteGroup {
            order,
            table,
            inv,
            labels: None,
            center: OnceLock::new(),
            classes: OnceLock::new(),
            commutator: OnceLock::new(),
        };
        group.check_associativity()?;
        Ok(group)
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let fail =
            |a: usize, b: usize, c: usize| Error::InvalidGroup(format!("associativity fails on ({a}, {b}, {c})"));
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a as u32, b as u32);
                    for c in 0..n {
                        if self.mul(ab, c as u32) != self.mul(a as u32, self.mul(b as u32, c as u32)) {
                            return Err(fail(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..100_000 {
                let (a, b, c) = (
                    rng.gen_range(0..n) as u32,
                    rng.gen_range(0..n) as u32,
                    rng.gen_range(0..n) as u32,
                );
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return Err(fail(a as usize, b as usize, c as usize));
                }
            }
        }
        Ok(())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub(crate) fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, g: u32, h: u32) -> u32 {
        self.table[g as usize * self.order + h as usize]
    }

    #[inline]
    pub fn inv(&self, g: u32) -> u32 {
        self.inv[g as usize]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`.
    pub fn commutator(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    pub fn pow(&self, g: u32, e: usize) -> u32 {
        (0..e).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: u32) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn label(&self, g: u32) -> String {
        match &self.labels {
            Some(l) => l[g as usize].clone(),
            None => format!("#{g}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn is_abelian(&self) -> bool {
        self.center().order() == self.order
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_elements(self.order, [0])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_elements(self.order, 0..self.order as u32)
    }

    /// Smallest subgroup containing `gens` (breadth-first closure).
    pub fn generate(&self, gens: &[u32]) -> Subgroup {
        self.close(&[0], gens)
    }

    /// Closure of `seed` under right multiplication by `gens`.
    fn close(&self, seed: &[u32], gens: &[u32]) -> Subgroup {
        let mut members = FixedBitSet::with_capacity(self.order);
        let mut queue = VecDeque::new();
        for &s in seed.iter().chain(gens) {
            if !members.put(s as usize) {
                queue.push_back(s);
            }
        }
        members.insert(0);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !members.put(y as usize) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_bits(members)
    }

    /// Checks that an arbitrary element set is a subgroup.
    pub fn check_subgroup(&self, elements: &[u32]) -> Result<Subgroup> {
        let s = Subgroup::from_elements(self.order, elements.iter().copied());
        if !s.contains(0) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        for &a in s.elements() {
            if !s.contains(self.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {} missing", self.label(a))));
            }
            for &b in s.elements() {
                if !s.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!(
                        "product {}·{} missing",
                        self.label(a),
                        self.label(b)
                    )));
                }
            }
        }
        Ok(s)
    }

    pub fn center(&self) -> &Subgroup {
        self.center.get_or_init(|| self.centralizer(&self.whole()))
    }

    /// Subgroup generated by all commutators `[g, h]`.
    pub fn commutator_subgroup(&self) -> &Subgroup {
        self.commutator.get_or_init(|| {
            let mut comms = FixedBitSet::with_capacity(self.order);
            for g in self.elements() {
                for h in self.elements() {
                    comms.insert(self.commutator(g, h) as usize);
                }
            }
            let gens: Vec<u32> = comms.ones().map(|x| x as u32).collect();
            self.generate(&gens)
        })
    }

    /// `E' ⊆ Z(E)`, i.e. the quotient by the center is abelian.
    pub fn has_abelian_index(&self) -> bool {
        self.commutator_subgroup().is_subset(self.center())
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        self.classes.get_or_init(|| self.classes_within(&self.whole()))
    }

    /// Conjugacy classes of the subgroup `h` under conjugation by `h` itself.
    pub fn classes_within(&self, h: &Subgroup) -> Vec<Vec<u32>> {
        let mut seen = FixedBitSet::with_capacity(self.order);
        let mut classes = Vec::new();
        for &x in h.elements() {
            if seen.contains(x as usize) {
                continue;
            }
            let mut class: Vec<u32> = h.elements().iter().map(|&g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen.insert(y as usize);
            }
            classes.push(class);
        }
        classes
    }

    /// `C_G(H) = {g : g h g⁻¹ = h for all h ∈ H}`.
    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        let members = self
            .elements()
            .filter(|&g| h.elements().iter().all(|&x| self.mul(g, x) == self.mul(x, g)));
        Subgroup::from_elements(self.order, members)
    }

    /// `Z(H)` for a subgroup `H`.
    pub fn subgroup_center(&self, h: &Subgroup) -> Subgroup {
        let members = h
            .elements()
            .iter()
            .copied()
            .filter(|&g| h.elements().iter().all(|&x| self.mul(g, x) == self.mul(x, g)));
        Subgroup::from_elements(self.order, members)
    }

    /// `g H g⁻¹ = H` for every `g` in `by`.
    pub fn normalizes(&self, by: impl IntoIterator<Item = u32>, h: &Subgroup) -> bool {
        by.into_iter()
            .all(|g| h.elements().iter().all(|&x| h.contains(self.conjugate(g, x))))
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.normalizes(self.elements(), h)
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        self.subgroup_center(h).order() == h.order()
    }

    /// Every normal subgroup exactly once, sorted by order then member list.
    ///
    /// Breadth-first search over normal closures: starting from the trivial
    /// group, each found subgroup is extended by one conjugacy class at a time.
    pub fn normal_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        if self.order > cap {
            return Err(Error::EnumerationCap { order: self.order, cap });
        }
        let classes = self.conjugacy_classes();
        let trivial = self.trivial_subgroup();
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        seen.insert(trivial.members.clone());
        let mut found = vec![trivial];
        let mut frontier = 0;
        while frontier < found.len() {
            let n = found[frontier].clone();
            frontier += 1;
            for class in classes {
                if n.contains(class[0]) {
                    continue;
                }
                // N·⟨C⟩ is a subgroup because ⟨C⟩ is normal.
                let ext = self.close(n.elements(), class);
                if seen.insert(ext.members.clone()) {
                    found.push(ext);
                }
            }
        }
        found.sort();
        Ok(found)
    }

    /// Left cosets `gH`: a transversal (starting with the identity, then the
    /// smallest unused element) and the coset index of every element.
    pub fn cosets(&self, h: &Subgroup) -> Cosets {
        let mut coset_index = vec![usize::MAX; self.order];
        let mut transversal = Vec::new();
        for g in self.elements() {
            if coset_index[g as usize] != usize::MAX {
                continue;
            }
            let k = transversal.len();
            transversal.push(g);
            for &x in h.elements() {
                coset_index[self.mul(g, x) as usize] = k;
            }
        }
        Cosets {
            transversal,
            coset_index,
        }
    }

    /// A small generating set: elements of `h` taken in index order whenever
    /// they are not yet generated.
    pub fn generating_set(&self, h: &Subgroup) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &x in h.elements() {
            if !current.contains(x) {
                gens.push(x);
                current = self.generate(&gens);
                if current.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }

    /// `⟨A ∪ B⟩`.
    pub fn subgroup_product(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.elements().to_vec();
        gens.extend_from_slice(b.elements());
        self.generate(&gens)
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug)]
pub struct Cosets {
    pub transversal: Vec<u32>,
    pub coset_index: Vec<usize>,
}

/// A subset of a finite group's elements, closed under the group law.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: FixedBitSet,
    elements: Vec<u32>,
}

impl Subgroup {
    fn from_bits(members: FixedBitSet) -> Self {
        let elements = members.ones().map(|x| x as u32).collect();
        Subgroup { members, elements }
    }

    /// Wraps an element set without checking closure.
    pub fn from_elements(parent_order: usize, elements: impl IntoIterator<Item = u32>) -> Self {
        let mut members = FixedBitSet::with_capacity(parent_order);
        for e in elements {
            members.insert(e as usize);
        }
        Self::from_bits(members)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, g: u32) -> bool {
        self.members.contains(g as usize)
    }

    /// Sorted member list.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        Self::from_bits(m)
    }

    /// Elements of `self` not in `other`.
    pub fn difference(&self, other: &Subgroup) -> Vec<u32> {
        self.elements.iter().copied().filter(|&g| !other.contains(g)).collect()
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}
