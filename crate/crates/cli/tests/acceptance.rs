//! Acceptance criteria 1 to 7, one pass/fail line each.
//!
//! Run with `cargo test -p clifford-codes-cli --test acceptance -- --nocapture`.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

use clifford_codes::chartab::{isotypic_decomposition, DecompositionOptions};
use clifford_codes::clifford::{
    make_clifford_code, stabilizer_reduction, verify_dimension_identities, CliffordCode, ComponentSelector,
};
use clifford_codes::group::DEFAULT_NORMAL_CAP;
use clifford_codes::rep::{builtin_group, verify_error_group};
use clifford_codes::verify::{verify_group, VerifyReport};
use clifford_codes::{CycMatrix, Subgroup, UnitaryRep};

/// Product table computed by multiplying matrices, independent of the
/// library's Cayley table.
fn matrix_products(rep: &UnitaryRep) -> Vec<Vec<u32>> {
    let n = rep.order() as u32;
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| rep.index_of(&rep.matrix(a).mul(rep.matrix(b))).unwrap())
                .collect()
        })
        .collect()
}

/// All normal subgroups of a group of order at most 64, by growing every
/// subgroup one element at a time and filtering by conjugation.
fn oracle_normal_subgroups(rep: &UnitaryRep) -> BTreeSet<u64> {
    let prod = matrix_products(rep);
    let n = prod.len();
    assert!(n <= 64);
    let close = |mut set: u64| loop {
        let before = set;
        for a in (0..n).filter(|&a| before >> a & 1 == 1) {
            for b in (0..n).filter(|&b| before >> b & 1 == 1) {
                set |= 1 << prod[a][b];
            }
        }
        if set == before {
            return set;
        }
    };
    let mut seen: BTreeSet<u64> = [1].into();
    let mut frontier = vec![1u64];
    while let Some(h) = frontier.pop() {
        for g in (0..n).filter(|&g| h >> g & 1 == 0) {
            let k = close(h | 1 << g);
            if seen.insert(k) {
                frontier.push(k);
            }
        }
    }
    let inv: Vec<usize> = (0..n).map(|g| (0..n).find(|&h| prod[g][h] == 0).unwrap()).collect();
    seen.into_iter()
        .filter(|&h| {
            (0..n).all(|g| {
                (0..n)
                    .filter(|&x| h >> x & 1 == 1)
                    .all(|x| h >> prod[prod[g][x] as usize][inv[g]] & 1 == 1)
            })
        })
        .collect()
}

fn mask(s: &Subgroup) -> u64 {
    s.elements().iter().fold(0, |m, &g| m | 1 << g)
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok_detail: String) -> Outcome {
    Outcome {
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            ok_detail
        } else {
            failures.join("; ")
        },
    }
}

fn sweep_failures(report: &VerifyReport, required: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = report
        .group_checks
        .iter()
        .chain(report.subgroups.iter().flat_map(|s| &s.checks))
        .filter(|c| c.failed())
        .map(|c| c.to_string())
        .collect();
    for name in required {
        let present = report
            .subgroups
            .iter()
            .flat_map(|s| &s.checks)
            .any(|c| c.name.starts_with(name));
        if !present {
            out.push(format!("check {name} never ran"));
        }
    }
    out
}

const SUITE: [&str; 6] = [
    "projector-laws",
    "detection-oracle",
    "inertia-is-centralizer",
    "stabilizer-reduction",
    "trace-e_phi-e_chi",
    "support-is-center",
];

fn exhaustive_sweep(spec: &str, expected: usize) -> Outcome {
    let rep = builtin_group(spec).unwrap();
    let oracle = oracle_normal_subgroups(&rep);
    let subs = rep.group().normal_subgroups(DEFAULT_NORMAL_CAP).unwrap();
    let library: BTreeSet<u64> = subs.iter().map(mask).collect();
    let mut failures = Vec::new();
    if oracle.len() != expected || library != oracle {
        failures.push(format!(
            "normal subgroups: oracle {}, library {}, expected {expected}",
            oracle.len(),
            library.len()
        ));
    }
    let report = verify_group(&rep, Some(subs), DEFAULT_NORMAL_CAP, &DecompositionOptions::default()).unwrap();
    failures.extend(sweep_failures(&report, &SUITE));
    let t = report.tally();
    outcome(
        failures,
        format!(
            "{} normal subgroups (oracle agrees), {} checks passed",
            library.len(),
            t.passed
        ),
    )
}

fn criterion_1() -> Outcome {
    exhaustive_sweep("pauli:1", 17)
}

fn criterion_2() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    pool.install(|| exhaustive_sweep("pauli:2", 375))
}

fn criterion_3() -> Outcome {
    let rep = builtin_group("pauli:5").unwrap();
    let gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ", "-IIIII"];
    let n = rep.subgroup_from_labels(&gens).unwrap();
    let dec = isotypic_decomposition(&rep, &n, &DecompositionOptions::default()).unwrap();
    let stabilizers: Vec<u32> = gens[..4].iter().map(|l| rep.resolve_label(l).unwrap()).collect();
    let minus = rep.resolve_label("-IIIII").unwrap();
    let Some(k) = dec.components.iter().position(|c| {
        c.chi().value(minus).as_integer() == Some(-1) && stabilizers.iter().all(|&s| c.chi().value(s).is_one())
    }) else {
        return outcome(
            vec!["no component with stabilizer eigenvalues +1".into()],
            String::new(),
        );
    };
    let code = CliffordCode::from_component(&rep, &dec, k).unwrap();
    let mut failures = Vec::new();
    if code.dim() != 2 {
        failures.push(format!("dim {}", code.dim()));
    }
    let d = code.distance().value;
    if d != Some(3) {
        failures.push(format!("distance {d:?}"));
    }
    match stabilizer_reduction(&code).unwrap().form() {
        Some(f) if f.is_equal_to_e_chi && &f.e_phi == code.projector() => {}
        _ => failures.push("stabilizer reduction did not reproduce e_chi".into()),
    }
    let up_to = |w: u32| -> Vec<u32> {
        rep.group()
            .elements()
            .filter(|&g| rep.weight(g).unwrap() <= w)
            .collect()
    };
    if !code.correctable(&up_to(1)).correctable {
        failures.push("weight <= 1 not correctable".into());
    }
    let two = code.correctable(&up_to(2));
    if two.correctable {
        failures.push("weight <= 2 reported correctable".into());
    }
    let witness = two.witness.map(|(a, b)| {
        let g = rep.group();
        rep.weight(g.mul(g.inv(a), b)).unwrap()
    });
    outcome(
        failures,
        format!(
            "dim 2, distance 3, e_phi = e_chi, weight <= 2 witness product has weight {}",
            witness.unwrap_or(0)
        ),
    )
}

fn criterion_4() -> Outcome {
    let rep = builtin_group("pauli:2").unwrap();
    let g = rep.group();
    let n = rep.subgroup_from_labels(&["XI", "ZI", "-II"]).unwrap();
    let opts = DecompositionOptions::default();
    let dec = isotypic_decomposition(&rep, &n, &opts).unwrap();
    let code = make_clifford_code(&rep, &n, &ComponentSelector::Index(0), &opts).unwrap();
    let mut failures = Vec::new();
    let mut expect = |what: &str, ok: bool| {
        if !ok {
            failures.push(what.to_string());
        }
    };
    expect("single component", dec.components.len() == 1);
    expect("m = 2", code.multiplicity() == 2);
    expect("chi(1) = 2", code.chi_degree() == 2);
    expect("e_chi = I", code.projector().is_identity());
    expect("T = E", code.t() == &g.whole());
    expect("Ztheta = Z(E)", code.ztheta() == g.center());
    expect("distance 1", code.distance().value == Some(1));
    expect(
        "dimension identity",
        verify_dimension_identities(&code).iter().all(|c| !c.failed()),
    );
    let reduced = stabilizer_reduction(&code).unwrap();
    expect(
        "e_phi = I",
        reduced.form().is_some_and(|f| f.e_phi == CycMatrix::identity(4)),
    );
    outcome(failures, "m 2, chi(1) 2, e = I, T = E, d 1, 2*4*4/8 = 4".into())
}

fn criterion_5() -> Outcome {
    let rep = builtin_group("weyl:3:1").unwrap();
    let er = verify_error_group(&rep);
    let mut failures = Vec::new();
    if (er.order, er.degree, er.center_order, rep.conductor()) != (27, 3, 3, 3) {
        failures.push(format!(
            "order {} degree {} center {} conductor {}",
            er.order,
            er.degree,
            er.center_order,
            rep.conductor()
        ));
    }
    if er.degree * er.degree != er.order / er.center_order {
        failures.push("degree law".into());
    }
    let report = verify_group(&rep, None, DEFAULT_NORMAL_CAP, &DecompositionOptions::default()).unwrap();
    failures.extend(sweep_failures(&report, &SUITE[..5]));
    outcome(
        failures,
        format!("3^2 = 27/3, {} normal subgroups swept", report.subgroups.len()),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut pairs = 0;
    for spec in ["pauli:1", "pauli:2"] {
        let rep = builtin_group(spec).unwrap();
        let identity = CycMatrix::identity(rep.degree());
        for n in rep.group().normal_subgroups(DEFAULT_NORMAL_CAP).unwrap() {
            pairs += 1;
            let runs: Vec<Vec<CycMatrix>> = [0, 1, 2]
                .iter()
                .map(|&seed| {
                    let opts = DecompositionOptions {
                        seed,
                        ..Default::default()
                    };
                    let dec = isotypic_decomposition(&rep, &n, &opts).unwrap();
                    dec.components.iter().map(|c| c.projector().clone()).collect()
                })
                .collect();
            let p = &runs[0];
            let sum = p.iter().fold(CycMatrix::zeros(rep.degree()), |acc, e| acc.add(e));
            let orthogonal = p
                .iter()
                .enumerate()
                .all(|(i, a)| p.iter().enumerate().all(|(j, b)| i == j || a.mul(b).is_zero()));
            if sum != identity || !orthogonal || runs[1] != *p || runs[2] != *p {
                failures.push(format!("{spec}, |N| = {}", n.order()));
            }
        }
    }
    outcome(failures, format!("{pairs} (E, N) pairs, seeds 0, 1, 2 agree"))
}

fn search(format: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_cliffcodes"))
        .args(["search", "--group", "pauli:2", "--seed", "0", "--format", format])
        .output()
        .unwrap();
    assert!(out.status.success());
    out.stdout
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    for format in ["table", "json"] {
        if search(format) != search(format) {
            failures.push(format!("{format} output differs between runs"));
        }
    }
    let v: Value = serde_json::from_slice(&search("json")).unwrap();
    let front: Vec<(u64, u64)> = v["pareto"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["dim"].as_u64().unwrap(), r["distance"].as_u64().unwrap_or(0)))
        .collect();
    if !front.contains(&(1, 2)) {
        failures.push(format!("front {front:?} lacks (1, 2)"));
    }
    let bell: BTreeSet<&str> = ["XX", "ZZ", "-II"].into();
    let names_bell = |gens: &Value| {
        let set: BTreeSet<&str> = gens.as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
        set == bell
    };
    let bell_found = v["records"].as_array().unwrap().iter().any(|r| {
        r["dim"] == 1
            && r["distance"] == 2
            && (names_bell(&r["n_generators"])
                || r["duplicates"]
                    .as_array()
                    .is_some_and(|d| d.iter().any(|p| names_bell(&p["n_generators"]))))
    });
    if !bell_found {
        failures.push("no (1, 2) record for N = <XX, ZZ, -II>".into());
    }
    outcome(
        failures,
        format!("byte-identical, front {front:?}, Bell state <XX, ZZ, -II> at (1, 2)"),
    )
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("pauli:1 exhaustive sweep", criterion_1, Duration::from_secs(5)),
        (
            "pauli:2 exhaustive sweep, 1 thread",
            criterion_2,
            Duration::from_secs(120),
        ),
        ("five-qubit code", criterion_3, Duration::from_secs(300)),
        ("nonabelian N in pauli:2", criterion_4, Duration::from_secs(1)),
        ("weyl:3:1 qudit sweep", criterion_5, Duration::from_secs(10)),
        ("decomposition robustness", criterion_6, Duration::MAX),
        ("search determinism", criterion_7, Duration::MAX),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let passed = o.passed && in_time;
        all &= passed;
        let budget = if *limit == Duration::MAX {
            String::new()
        } else {
            format!(" (limit {} s)", limit.as_secs())
        };
        let late = if in_time { "" } else { ", over time limit" };
        println!(
            "criterion {}: {} [{}] {:.2} s{}{}: {}",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            name,
            elapsed.as_secs_f64(),
            budget,
            late,
            o.detail
        );
    }
    assert!(all, "some acceptance criteria failed");
}
