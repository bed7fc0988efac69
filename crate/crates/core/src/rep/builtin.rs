//! Built-in error groups: `pauli:n` and `weyl:d:n`.

use super::{group_closure, UnitaryRep, DEFAULT_CLOSURE_CAP};
use crate::cyclo::CycNum;
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinKind {
    /// `n`-qubit Pauli group generated by `X_j`, `Z_j` and `iI`.
    Pauli { n: usize },
    /// `n`-fold clock and shift group in dimension `d`.
    Weyl { d: usize, n: usize },
}

impl BuiltinKind {
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::UnknownGroupSpec(spec.to_string());
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let num = |s: &str| s.parse::<usize>().ok().filter(|&v| v >= 1).ok_or_else(bad);
        match parts.as_slice() {
            ["pauli", n] => Ok(BuiltinKind::Pauli { n: num(n)? }),
            ["weyl", d, n] => {
                let d = num(d)?;
                if d < 2 {
                    return Err(bad());
                }
                Ok(BuiltinKind::Weyl { d, n: num(n)? })
            }
            _ => Err(bad()),
        }
    }

    pub fn positions(&self) -> usize {
        match *self {
            BuiltinKind::Pauli { n } | BuiltinKind::Weyl { n, .. } => n,
        }
    }

    pub fn local_dim(&self) -> usize {
        match *self {
            BuiltinKind::Pauli { .. } => 2,
            BuiltinKind::Weyl { d, .. } => d,
        }
    }

    pub fn spec(&self) -> String {
        match *self {
            BuiltinKind::Pauli { n } => format!("pauli:{n}"),
            BuiltinKind::Weyl { d, n } => format!("weyl:{d}:{n}"),
        }
    }

    /// Named local operators; every element is a phase times a tensor word
    /// in these.
    fn local_basis(&self) -> Vec<(String, CycMatrix)> {
        match *self {
            BuiltinKind::Pauli { .. } => ["I", "X", "Y", "Z"]
                .iter()
                .map(|&t| (t.to_string(), pauli_local(t).expect("known token")))
                .collect(),
            BuiltinKind::Weyl { d, .. } => {
                let mut out = Vec::with_capacity(d * d);
                for a in 0..d {
                    for b in 0..d {
                        out.push((weyl_token(a, b), weyl_local(d, a, b)));
                    }
                }
                out
            }
        }
    }

    fn join(&self, tokens: &[&str]) -> String {
        match self {
            BuiltinKind::Pauli { .. } => tokens.concat(),
            BuiltinKind::Weyl { .. } => tokens.join("."),
        }
    }
}

fn shift(d: usize) -> CycMatrix {
    CycMatrix::from_triples(d, (0..d).map(|k| ((k + 1) % d, k, CycNum::one())))
}

fn clock(d: usize) -> CycMatrix {
    CycMatrix::from_triples(d, (0..d).map(|k| (k, k, CycNum::zeta(d as u32, k as u64))))
}

fn pauli_local(token: &str) -> Option<CycMatrix> {
    let i = CycNum::zeta(4, 1);
    Some(match token {
        "I" => CycMatrix::identity(2),
        "X" => CycMatrix::from_integers(&[&[0, 1], &[1, 0]]),
        "Z" => CycMatrix::from_integers(&[&[1, 0], &[0, -1]]),
        "Y" => CycMatrix::from_triples(2, [(0, 1, -&i), (1, 0, i)]),
        _ => return None,
    })
}

fn pow(m: &CycMatrix, e: usize) -> CycMatrix {
    (0..e).fold(CycMatrix::identity(m.dim()), |acc, _| acc.mul(m))
}

fn weyl_local(d: usize, a: usize, b: usize) -> CycMatrix {
    pow(&shift(d), a).mul(&pow(&clock(d), b))
}

fn weyl_token(a: usize, b: usize) -> String {
    let part = |name: &str, e: usize| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}{e}"),
    };
    if a == 0 && b == 0 {
        "I".into()
    } else {
        format!("{}{}", part("X", a), part("Z", b))
    }
}

fn embed(local: &CycMatrix, j: usize, n: usize) -> CycMatrix {
    let id = CycMatrix::identity(local.dim());
    (0..n)
        .map(|k| if k == j { local } else { &id })
        .skip(1)
        .fold(if j == 0 { local.clone() } else { id.clone() }, |acc, m| acc.kron(m))
}

/// Builds a built-in group from its spec.
pub fn builtin_group(spec: &str) -> Result<UnitaryRep> {
    builtin_group_with_cap(spec, DEFAULT_CLOSURE_CAP)
}

pub(crate) fn builtin_group_with_cap(spec: &str, cap: usize) -> Result<UnitaryRep> {
    let kind = BuiltinKind::parse(spec)?;
    let n = kind.positions();
    let d = kind.local_dim();
    let mut gens = Vec::new();
    for j in 0..n {
        match kind {
            BuiltinKind::Pauli { .. } => {
                gens.push(embed(&pauli_local("X").expect("X"), j, n));
                gens.push(embed(&pauli_local("Z").expect("Z"), j, n));
            }
            BuiltinKind::Weyl { d, .. } => {
                gens.push(embed(&shift(d), j, n));
                gens.push(embed(&clock(d), j, n));
            }
        }
    }
    if let BuiltinKind::Pauli { .. } = kind {
        gens.push(CycMatrix::scalar(d.pow(n as u32), CycNum::zeta(4, 1)));
    }
    let rep = group_closure(&gens, cap)?
        .with_name(kind.spec())
        .with_tensor_factors(vec![d; n]);
    let labels = element_labels(kind, &rep)?;
    Ok(rep.with_builtin(kind, labels))
}

fn element_labels(kind: BuiltinKind, rep: &UnitaryRep) -> Result<Vec<String>> {
    let basis = kind.local_basis();
    let n = kind.positions();
    let phases: Vec<(String, CycNum)> = rep
        .phase_subgroup()
        .elements()
        .iter()
        .map(|&g| {
            let s = rep.scalar_of(g).expect("phase elements are scalar");
            (phase_prefix(&s), s)
        })
        .collect();
    let mut labels: Vec<Option<String>> = vec![None; rep.order()];
    let words = basis.len().pow(n as u32);
    for w in 0..words {
        let mut digits = Vec::with_capacity(n);
        let mut rest = w;
        for _ in 0..n {
            digits.push(rest % basis.len());
            rest /= basis.len();
        }
        digits.reverse();
        let tokens: Vec<&str> = digits.iter().map(|&k| basis[k].0.as_str()).collect();
        let word = kind.join(&tokens);
        let mat = digits
            .iter()
            .skip(1)
            .fold(basis[digits[0]].1.clone(), |acc, &k| acc.kron(&basis[k].1));
        for (prefix, s) in &phases {
            if let Some(g) = rep.index_of(&mat.scale(s)) {
                labels[g as usize].get_or_insert_with(|| format!("{prefix}{word}"));
            }
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(g, l)| l.ok_or_else(|| Error::Consistency(format!("element #{g} has no word label"))))
        .collect()
}

/// Label prefix of a root of unity: `""`, `-`, `i`, `-i` or `E(r)^k*`.
pub(crate) fn phase_prefix(s: &CycNum) -> String {
    let bound = 2 * s.conductor().max(1);
    let r = (1..=bound)
        .find(|&r| s.pow(r).is_one())
        .expect("phase is a root of unity");
    let k = (0..r as u64)
        .find(|&k| CycNum::zeta(r, k) == *s)
        .expect("primitive root found");
    match (r, k) {
        (1, _) => String::new(),
        (2, _) => "-".into(),
        (4, 1) => "i".into(),
        (4, 3) => "-i".into(),
        (_, 1) => format!("E({r})*"),
        _ => format!("E({r})^{k}*"),
    }
}

fn parse_phase(s: &str) -> Result<(CycNum, &str)> {
    let mut phase = CycNum::one();
    let mut rest = s.trim();
    if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    }
    if let Some(r) = rest.strip_prefix('-') {
        phase = -phase;
        rest = r;
    }
    if let Some(r) = rest.strip_prefix("E(") {
        let close = r
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed E( in `{s}`")))?;
        let order: u32 = r[..close]
            .parse()
            .map_err(|_| Error::Parse(format!("bad root order in `{s}`")))?;
        if order == 0 {
            return Err(Error::Parse(format!("bad root order in `{s}`")));
        }
        rest = &r[close + 1..];
        let mut k = 1u64;
        if let Some(r) = rest.strip_prefix('^') {
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            k = r[..end]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?;
            rest = &r[end..];
        }
        phase = phase * CycNum::zeta(order, k);
        rest = rest.strip_prefix('*').unwrap_or(rest);
    } else if let Some(r) = rest.strip_prefix('i') {
        phase = phase * CycNum::zeta(4, 1);
        rest = r.strip_prefix('*').unwrap_or(r);
    }
    Ok((phase, rest))
}

fn parse_weyl_token(d: usize, token: &str) -> Result<CycMatrix> {
    if token == "I" || token == "1" {
        return Ok(CycMatrix::identity(d));
    }
    let bad = || Error::Parse(format!("bad local operator `{token}`"));
    let mut a = 0usize;
    let mut b = 0usize;
    let mut rest = token;
    for (name, slot) in [('X', &mut a), ('Z', &mut b)] {
        if let Some(r) = rest.strip_prefix(name) {
            let r = r.strip_prefix('^').unwrap_or(r);
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            *slot = if end == 0 {
                1
            } else {
                r[..end].parse().map_err(|_| bad())?
            };
            rest = &r[end..];
        }
    }
    if !rest.is_empty() || token.is_empty() {
        return Err(bad());
    }
    Ok(weyl_local(d, a % d, b % d))
}

/// Parses a phase followed by a word, e.g. `-iXZZXI`, `E(3)*X.Z2`, `-1`.
pub(crate) fn parse_word(kind: BuiltinKind, label: &str) -> Result<CycMatrix> {
    let n = kind.positions();
    let d = kind.local_dim();
    let (phase, word) = parse_phase(label)?;
    let dim = d.pow(n as u32);
    if word.is_empty() || word == "1" || (word == "I" && n > 1) {
        return Ok(CycMatrix::scalar(dim, phase));
    }
    let tokens: Vec<String> = if word.contains('.') {
        word.split('.').map(str::to_string).collect()
    } else if matches!(kind, BuiltinKind::Pauli { .. }) {
        word.chars().map(String::from).collect()
    } else if n == 1 {
        vec![word.to_string()]
    } else {
        return Err(Error::Parse(format!(
            "`{label}`: separate the {n} local operators with `.`"
        )));
    };
    if tokens.len() != n {
        return Err(Error::Parse(format!(
            "`{label}` has {} local operators, expected {n}",
            tokens.len()
        )));
    }
    let locals = tokens
        .iter()
        .map(|t| match kind {
            BuiltinKind::Pauli { .. } => {
                pauli_local(t).ok_or_else(|| Error::Parse(format!("bad Pauli operator `{t}`")))
            }
            BuiltinKind::Weyl { d, .. } => parse_weyl_token(d, t),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut it = locals.into_iter();
    let first = it.next().expect("n >= 1");
    Ok(it.fold(first, |acc, m| acc.kron(&m)).scale(&phase))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_orders() {
        for n in 1..=3 {
            let rep = builtin_group(&format!("pauli:{n}")).unwrap();
            assert_eq!(rep.order(), 4 * 4usize.pow(n as u32));
            assert_eq!(rep.degree(), 1 << n);
            assert_eq!(rep.group().center().order(), 4);
        }
    }

    #[test]
    fn weyl_order_and_conductor() {
        let rep = builtin_group("weyl:3:1").unwrap();
        assert_eq!(rep.order(), 27);
        assert_eq!(rep.conductor(), 3);
        let rep = builtin_group("weyl:2:1").unwrap();
        assert_eq!(rep.order(), 8);
    }

    #[test]
    fn labels_round_trip() {
        for spec in ["pauli:1", "pauli:2", "weyl:3:1", "weyl:3:2"] {
            let rep = builtin_group(spec).unwrap();
            for g in rep.group().elements() {
                let label = rep.group().label(g);
                assert_eq!(rep.resolve_label(&label).unwrap(), g, "{spec} {label}");
            }
        }
    }

    #[test]
    fn label_forms() {
        let rep = builtin_group("pauli:1").unwrap();
        let minus = rep.resolve_label("-1").unwrap();
        assert_eq!(rep.matrix(minus), &CycMatrix::scalar(2, CycNum::from_integer(-1)));
        assert_eq!(rep.group().label(minus), "-I");
        let iy = rep.resolve_label("iY").unwrap();
        let xz = rep
            .group()
            .mul(rep.resolve_label("X").unwrap(), rep.resolve_label("Z").unwrap());
        assert_eq!(rep.group().mul(iy, rep.resolve_label("-1").unwrap()), xz);
        assert_eq!(rep.resolve_label("I").unwrap(), 0);
        assert!(rep.resolve_label("Q").is_err());
        let rep = builtin_group("pauli:5").unwrap();
        assert!(rep.resolve_label("XZZXI").is_ok());
        assert!(rep.resolve_label("X.Z.Z.X.I").is_ok());
        assert!(rep.resolve_label("XZZX").is_err());
        let rep = builtin_group("weyl:3:2").unwrap();
        assert!(rep.resolve_label("E(3)^2*X2Z.I").is_ok());
        assert!(rep.resolve_label("XZ").is_err());
    }

    #[test]
    fn bad_specs() {
        for s in ["pauli", "pauli:0", "weyl:1:1", "weyl:3", "clifford:2", "pauli:x"] {
            assert!(matches!(builtin_group(s), Err(Error::UnknownGroupSpec(_))), "{s}");
        }
    }
}
