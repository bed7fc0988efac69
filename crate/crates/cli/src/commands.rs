use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use clifford_codes::chartab::{isotypic_decomposition, DecompositionOptions};
use clifford_codes::clifford::{stabilizer_reduction, CliffordCode, Reduction};
use clifford_codes::cyclo::Term;
use clifford_codes::rep::{load_group, verify_error_group};
use clifford_codes::search::{best_codes_report, enumerate_codes, render, CodeRecord, Format, SearchFilters};
use clifford_codes::verify::{verify_code, verify_group, SubgroupReport, VerifyReport};
use clifford_codes::{CycMatrix, Subgroup, UnitaryRep};

use crate::output::{self, checks_table, dense, fields, json, matrix_lines};
use crate::{exit, Common, Failure, OutputFormat, SubgroupArgs};

pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: exit::OK }
    }
}

type CmdResult = Result<Output, Failure>;

fn load(common: &Common) -> Result<UnitaryRep, Failure> {
    let spec = common
        .group
        .as_deref()
        .ok_or_else(|| Failure::Usage("--group is required (pauli:n, weyl:d:n or file:PATH)".into()))?;
    Ok(load_group(spec, common.closure_cap)?)
}

fn options(common: &Common) -> DecompositionOptions {
    DecompositionOptions {
        seed: common.seed,
        tol: common.tol,
        retries: common.retries,
    }
}

#[derive(Deserialize)]
struct MatrixFile {
    conductor: u32,
    generators: Vec<Vec<Vec<Vec<Term>>>>,
}

/// Subgroups named on the command line, or `None` when none were given.
fn subgroups(rep: &UnitaryRep, args: &SubgroupArgs) -> Result<Option<Vec<Subgroup>>, Failure> {
    let mut out = Vec::new();
    for spec in &args.subgroups {
        let labels: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        out.push(rep.subgroup_from_labels(&labels)?);
    }
    if let Some(path) = &args.subgroup_matrices {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))?;
        let file: MatrixFile = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
        let mats = file
            .generators
            .iter()
            .map(|rows| CycMatrix::from_terms(file.conductor, rows))
            .collect::<clifford_codes::Result<Vec<_>>>()?;
        out.push(rep.subgroup_from_matrices(&mats)?);
    }
    Ok((!out.is_empty()).then_some(out))
}

fn one_subgroup(rep: &UnitaryRep, args: &SubgroupArgs) -> Result<Subgroup, Failure> {
    match subgroups(rep, args)? {
        Some(mut v) if v.len() == 1 => Ok(v.pop().expect("one element")),
        Some(_) => Err(Failure::Usage("give exactly one subgroup".into())),
        None => Err(Failure::Usage("--subgroup (or --subgroup-matrices) is required".into())),
    }
}

fn labels(rep: &UnitaryRep, elements: &[u32]) -> Vec<String> {
    elements.iter().map(|&g| rep.group().label(g)).collect()
}

fn generators(rep: &UnitaryRep, n: &Subgroup) -> Vec<String> {
    labels(rep, &rep.group().generating_set(n))
}

pub fn info(common: &Common) -> CmdResult {
    let rep = load(common)?;
    let report = verify_error_group(&rep);
    #[derive(Serialize)]
    struct Info<'a> {
        group: &'a str,
        order: usize,
        degree: usize,
        conductor: u32,
        center_order: usize,
        commutator_order: usize,
        abelian_index: bool,
        character_norm: String,
        tensor_factors: Option<&'a [usize]>,
        checks: &'a [clifford_codes::report::Check],
    }
    let info = Info {
        group: rep.name(),
        order: report.order,
        degree: report.degree,
        conductor: rep.conductor(),
        center_order: report.center_order,
        commutator_order: report.commutator_order,
        abelian_index: report.abelian_index,
        character_norm: report.character_norm.to_string(),
        tensor_factors: rep.tensor_factors(),
        checks: &report.checks,
    };
    let pairs = [
        ("group", info.group.to_string()),
        ("order", info.order.to_string()),
        ("degree", info.degree.to_string()),
        ("conductor", info.conductor.to_string()),
        ("center_order", info.center_order.to_string()),
        ("commutator_order", info.commutator_order.to_string()),
        ("abelian_index", info.abelian_index.to_string()),
        (
            "degree_law",
            format!("{}^2 = {} / {}", info.degree, info.order, info.center_order),
        ),
        ("character_norm", info.character_norm.clone()),
    ];
    Ok(Output::ok(match common.format {
        OutputFormat::Json => json(&info)?,
        OutputFormat::Csv => fields(common.format, &pairs),
        OutputFormat::Table => fields(common.format, &pairs) + &checks_table(&report.checks),
    }))
}

pub fn normal_subgroups(common: &Common) -> CmdResult {
    let rep = load(common)?;
    let g = rep.group();
    let list = g.normal_subgroups(common.normal_cap)?;
    #[derive(Serialize)]
    struct Row {
        index: usize,
        order: usize,
        generators: Vec<String>,
        abelian: bool,
        center_order: usize,
    }
    let rows: Vec<Row> = list
        .iter()
        .enumerate()
        .map(|(index, n)| Row {
            index,
            order: n.order(),
            generators: generators(&rep, n),
            abelian: g.is_abelian_subgroup(n),
            center_order: g.subgroup_center(n).order(),
        })
        .collect();
    let headers = ["index", "order", "generators", "abelian", "center_order"];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.index.to_string(),
                r.order.to_string(),
                r.generators.join(" "),
                r.abelian.to_string(),
                r.center_order.to_string(),
            ]
        })
        .collect();
    Ok(Output::ok(match common.format {
        OutputFormat::Json => json(&rows)?,
        OutputFormat::Csv => output::csv(&headers, &cells),
        OutputFormat::Table => format!("{} normal subgroups\n", rows.len()) + &output::table(&headers, &cells),
    }))
}

pub fn decompose(common: &Common, args: &SubgroupArgs) -> CmdResult {
    let rep = load(common)?;
    let g = rep.group();
    let n = one_subgroup(&rep, args)?;
    let dec = isotypic_decomposition(&rep, &n, &options(common))?;
    #[derive(Serialize)]
    struct Component {
        index: usize,
        chi_degree: u32,
        multiplicity: u32,
        dim: u32,
        character: BTreeMap<String, String>,
        projector: Vec<Vec<String>>,
    }
    let comps: Vec<Component> = dec
        .components
        .iter()
        .enumerate()
        .map(|(index, c)| Component {
            index,
            chi_degree: c.chi_degree(),
            multiplicity: c.multiplicity(),
            dim: c.dim(),
            character: c.chi().iter().map(|(x, v)| (g.label(x), v.to_string())).collect(),
            projector: dense(c.projector()),
        })
        .collect();
    let headers = ["component", "chi_deg", "mult", "dim"];
    let cells: Vec<Vec<String>> = comps
        .iter()
        .map(|c| {
            vec![
                c.index.to_string(),
                c.chi_degree.to_string(),
                c.multiplicity.to_string(),
                c.dim.to_string(),
            ]
        })
        .collect();
    Ok(Output::ok(match common.format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Out {
                group: String,
                n_generators: Vec<String>,
                n_order: usize,
                components: Vec<Component>,
            }
            json(&Out {
                group: rep.name().into(),
                n_generators: generators(&rep, &n),
                n_order: n.order(),
                components: comps,
            })?
        }
        OutputFormat::Csv => output::csv(&headers, &cells),
        OutputFormat::Table => {
            let mut out = format!(
                "N = <{}>, order {}, {} components\n",
                generators(&rep, &n).join(", "),
                n.order(),
                comps.len()
            );
            out += &output::table(&headers, &cells);
            for (k, c) in dec.components.iter().enumerate() {
                let support: Vec<String> = c
                    .chi()
                    .iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(x, v)| format!("{}={v}", g.label(x)))
                    .collect();
                out += &format!("chi[{k}] support: {}\n", support.join(", "));
            }
            out
        }
    }))
}

fn sigma_elements(rep: &UnitaryRep, spec: &str) -> Result<Vec<u32>, Failure> {
    if let Some(k) = spec.strip_prefix("weight:") {
        let k: u32 = k
            .parse()
            .map_err(|_| Failure::Usage(format!("bad weight bound `{k}`")))?;
        if rep.weight(0).is_none() {
            return Err(Failure::Usage(format!("weights unavailable: {}", rep.weight_status())));
        }
        return Ok(rep
            .group()
            .elements()
            .filter(|&g| rep.weight(g).expect("weights present") <= k)
            .collect());
    }
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|l| rep.resolve_label(l).map_err(Failure::from))
        .collect()
}

pub fn code(
    common: &Common,
    args: &SubgroupArgs,
    component: usize,
    detect_table: bool,
    sigma: Option<&str>,
) -> CmdResult {
    let rep = load(common)?;
    let g = rep.group();
    let n = one_subgroup(&rep, args)?;
    let dec = isotypic_decomposition(&rep, &n, &options(common))?;
    let code = CliffordCode::from_component(&rep, &dec, component)?;
    let distance = code.distance();
    let reduction = stabilizer_reduction(&code)?;
    let checks = verify_code(&code);

    #[derive(Serialize)]
    struct Detect {
        error: String,
        weight: Option<u32>,
        detectable: bool,
    }
    #[derive(Serialize)]
    struct Correct {
        size: usize,
        correctable: bool,
        witness: Option<(String, String)>,
    }
    #[derive(Serialize)]
    struct Stab {
        applicable: bool,
        detail: String,
        zn_order: Option<usize>,
        equal: Option<bool>,
    }
    #[derive(Serialize)]
    struct Out {
        group: String,
        n_generators: Vec<String>,
        n_order: usize,
        component: usize,
        components: usize,
        chi_degree: u32,
        multiplicity: u32,
        dim: u32,
        distance: Option<u32>,
        distance_status: String,
        t_order: usize,
        ztheta_order: usize,
        abelian_n: bool,
        stabilizer: Stab,
        projector: Vec<Vec<String>>,
        checks: Vec<clifford_codes::report::Check>,
        #[serde(skip_serializing_if = "Option::is_none")]
        detect_table: Option<Vec<Detect>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        sigma: Option<Correct>,
    }
    let stabilizer = match &reduction {
        Reduction::Applicable(f) => Stab {
            applicable: true,
            detail: String::new(),
            zn_order: Some(f.zn.order()),
            equal: Some(f.is_equal_to_e_chi),
        },
        Reduction::Inapplicable(why) => Stab {
            applicable: false,
            detail: why.clone(),
            zn_order: None,
            equal: None,
        },
    };
    let detect_rows = detect_table.then(|| {
        g.elements()
            .map(|w| Detect {
                error: g.label(w),
                weight: rep.weight(w),
                detectable: code.detects(w),
            })
            .collect::<Vec<_>>()
    });
    let sigma_result = match sigma {
        Some(spec) => {
            let set = sigma_elements(&rep, spec)?;
            let c = code.correctable(&set);
            Some(Correct {
                size: set.len(),
                correctable: c.correctable,
                witness: c.witness.map(|(a, b)| (g.label(a), g.label(b))),
            })
        }
        None => None,
    };
    let out = Out {
        group: rep.name().into(),
        n_generators: generators(&rep, &n),
        n_order: n.order(),
        component,
        components: dec.components.len(),
        chi_degree: code.chi_degree(),
        multiplicity: code.multiplicity(),
        dim: code.dim(),
        distance: distance.value,
        distance_status: distance.status.clone(),
        t_order: code.t().order(),
        ztheta_order: code.ztheta().order(),
        abelian_n: g.is_abelian_subgroup(&n),
        stabilizer,
        projector: dense(code.projector()),
        checks,
        detect_table: detect_rows,
        sigma: sigma_result,
    };
    if common.format == OutputFormat::Json {
        return Ok(Output::ok(json(&out)?));
    }
    let opt = |v: Option<u32>| v.map_or_else(|| "-".to_string(), |d| d.to_string());
    let mut pairs = vec![
        ("group", out.group.clone()),
        ("N_generators", out.n_generators.join(" ")),
        ("N_order", out.n_order.to_string()),
        ("component", format!("{} of {}", out.component, out.components)),
        ("chi_degree", out.chi_degree.to_string()),
        ("multiplicity", out.multiplicity.to_string()),
        ("dim", out.dim.to_string()),
        ("distance", opt(out.distance)),
        ("distance_status", out.distance_status.clone()),
        ("T_order", out.t_order.to_string()),
        ("Ztheta_order", out.ztheta_order.to_string()),
        ("abelian_N", out.abelian_n.to_string()),
        (
            "stabilizer_equal",
            out.stabilizer
                .equal
                .map_or_else(|| "inapplicable".to_string(), |b| b.to_string()),
        ),
    ];
    if let Some(s) = &out.sigma {
        pairs.push(("sigma_size", s.size.to_string()));
        pairs.push(("correctable", s.correctable.to_string()));
        if let Some((a, b)) = &s.witness {
            pairs.push(("witness", format!("{a}, {b}")));
        }
    }
    let detect_cells: Option<Vec<Vec<String>>> = out.detect_table.as_ref().map(|rows| {
        rows.iter()
            .map(|r| vec![r.error.clone(), opt(r.weight), r.detectable.to_string()])
            .collect()
    });
    // CSV carries a single table: the detection table when requested.
    if let (OutputFormat::Csv, Some(cells)) = (common.format, &detect_cells) {
        return Ok(Output::ok(output::csv(&["error", "weight", "detectable"], cells)));
    }
    let mut text = fields(common.format, &pairs);
    if common.format == OutputFormat::Table {
        text += "projector:\n";
        text += &matrix_lines(code.projector());
        text += &checks_table(&out.checks);
        if let Some(cells) = &detect_cells {
            text += &output::table(&["error", "weight", "detectable"], cells);
        }
    }
    Ok(Output::ok(text))
}

fn verify_summary(report: &VerifyReport) -> String {
    let t = report.tally();
    let lines = report.subgroups.len();
    if t.all_passed() {
        format!("all lemma/theorem checks passed, {lines}-line sweep\n")
    } else {
        format!("{} checks failed, {lines}-line sweep\n", t.failed)
    }
}

pub fn verify(common: &Common, args: &SubgroupArgs) -> CmdResult {
    let rep = load(common)?;
    let explicit = subgroups(&rep, args)?;
    let report = verify_group(&rep, explicit, common.normal_cap, &options(common))?;
    let code = if report.all_passed() {
        exit::OK
    } else {
        exit::VERIFICATION
    };
    let headers = [
        "generators",
        "order",
        "components",
        "passed",
        "failed",
        "skipped",
        "inapplicable",
    ];
    let row = |s: &SubgroupReport| {
        let t = s.tally();
        vec![
            s.generators.join(" "),
            s.order.to_string(),
            s.components.to_string(),
            t.passed.to_string(),
            t.failed.to_string(),
            t.skipped.to_string(),
            t.inapplicable.to_string(),
        ]
    };
    let text = match common.format {
        OutputFormat::Json => json(&report)?,
        OutputFormat::Csv => {
            let cells: Vec<Vec<String>> = report.subgroups.iter().map(row).collect();
            output::csv(&headers, &cells)
        }
        OutputFormat::Table => {
            let mut out = format!("group {}\n", report.group);
            out += &checks_table(&report.group_checks);
            for s in &report.subgroups {
                out += &s.line();
                out.push('\n');
                for c in s.checks.iter().filter(|c| c.failed()) {
                    out += &format!("    {c}\n");
                }
            }
            out + &verify_summary(&report)
        }
    };
    Ok(Output { text, code })
}

pub fn search(common: &Common, args: &SubgroupArgs, filters: SearchFilters, pareto: bool) -> CmdResult {
    let rep = load(common)?;
    let explicit = subgroups(&rep, args)?;
    let records = enumerate_codes(&rep, &filters, explicit, common.normal_cap, &options(common))?;
    let front = best_codes_report(&records);
    let to_fmt = |f: OutputFormat| match f {
        OutputFormat::Table => Format::Table,
        OutputFormat::Csv => Format::Csv,
        OutputFormat::Json => Format::Json,
    };
    let text = match (common.format, pareto) {
        (OutputFormat::Json, false) => {
            #[derive(Serialize)]
            struct Out<'a> {
                records: &'a [CodeRecord],
                pareto: &'a [CodeRecord],
            }
            json(&Out {
                records: &records,
                pareto: &front,
            })?
        }
        (f, true) => render(&front, to_fmt(f))?,
        (OutputFormat::Csv, false) => render(&records, Format::Csv)?,
        (OutputFormat::Table, false) => {
            format!("{} codes\n", records.len())
                + &render(&records, Format::Table)?
                + "\npareto front (dim, distance)\n"
                + &render(&front, Format::Table)?
        }
    };
    Ok(Output::ok(text))
}
