//! Exhaustive enumeration of Clifford codes and ranked reports.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chartab::{isotypic_decomposition, DecompositionOptions};
use crate::clifford::{stabilizer_reduction, verify_lemma_suite, CliffordCode, Reduction};
use crate::error::Result;
use crate::group::Subgroup;
use crate::matrix::CycMatrix;
use crate::rep::UnitaryRep;
use crate::report::{render_csv, render_table, Check, Tally};
use crate::verify::verify_code;

/// Where a code was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub n_generators: Vec<String>,
    pub n_order: usize,
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub group: String,
    pub n_generators: Vec<String>,
    pub n_order: usize,
    pub component: usize,
    pub chi_degree: u32,
    pub multiplicity: u32,
    pub dim: u32,
    pub distance: Option<u32>,
    pub abelian_n: bool,
    /// `None` when the reduction does not apply.
    pub stabilizer_equal: Option<bool>,
    pub checks: Tally,
    /// Other `(N, component)` pairs giving the same projector.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub duplicates: Vec<Provenance>,
}

impl CodeRecord {
    fn rank_key(&self) -> impl Ord + '_ {
        (
            std::cmp::Reverse(self.dim),
            std::cmp::Reverse(self.distance.unwrap_or(0)),
            self.n_order,
            &self.n_generators,
            self.component,
        )
    }

    pub fn stabilizer_label(&self) -> &'static str {
        match self.stabilizer_equal {
            Some(true) => "true",
            Some(false) => "false",
            None => "inapplicable",
        }
    }

    pub fn checks_label(&self) -> String {
        let t = &self.checks;
        format!("{}/{}", t.passed, t.passed + t.failed)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchFilters {
    pub min_dim: Option<u32>,
    pub min_distance: Option<u32>,
    pub only_nonabelian_n: bool,
}

impl SearchFilters {
    fn accepts(&self, r: &CodeRecord) -> bool {
        self.min_dim.is_none_or(|d| r.dim >= d)
            && self.min_distance.is_none_or(|d| r.distance.is_some_and(|x| x >= d))
            && (!self.only_nonabelian_n || !r.abelian_n)
    }
}

/// One record per code, deduplicated by projector, ranked by dimension
/// (descending), distance (descending) and `|N|` (ascending).
pub fn enumerate_codes(
    rep: &UnitaryRep,
    filters: &SearchFilters,
    subgroups: Option<Vec<Subgroup>>,
    normal_cap: usize,
    opts: &DecompositionOptions,
) -> Result<Vec<CodeRecord>> {
    let subgroups = match subgroups {
        Some(s) => s,
        None => rep.group().normal_subgroups(normal_cap)?,
    };
    let per_subgroup: Vec<Vec<(CodeRecord, CycMatrix)>> = subgroups
        .par_iter()
        .map(|n| records_for(rep, n, opts))
        .collect::<Result<_>>()?;

    let mut all: Vec<(CodeRecord, CycMatrix)> = per_subgroup.into_iter().flatten().collect();
    all.sort_by(|a, b| a.0.rank_key().cmp(&b.0.rank_key()));
    let mut seen: HashMap<CycMatrix, usize> = HashMap::new();
    let mut out: Vec<CodeRecord> = Vec::new();
    for (rec, e) in all {
        match seen.get(&e) {
            Some(&k) => out[k].duplicates.push(Provenance {
                n_generators: rec.n_generators,
                n_order: rec.n_order,
                component: rec.component,
            }),
            None => {
                seen.insert(e, out.len());
                out.push(rec);
            }
        }
    }
    out.retain(|r| filters.accepts(r));
    Ok(out)
}

fn records_for(rep: &UnitaryRep, n: &Subgroup, opts: &DecompositionOptions) -> Result<Vec<(CodeRecord, CycMatrix)>> {
    let g = rep.group();
    let dec = isotypic_decomposition(rep, n, opts)?;
    let n_generators: Vec<String> = g.generating_set(n).into_iter().map(|x| g.label(x)).collect();
    let lemma_checks = verify_lemma_suite(rep, &dec);
    let abelian_n = g.is_abelian_subgroup(n);
    (0..dec.components.len())
        .map(|k| {
            let code = CliffordCode::from_component(rep, &dec, k)?;
            let suffix = format!("[{k}]");
            let checks: Vec<Check> = verify_code(&code)
                .into_iter()
                .chain(lemma_checks.iter().filter(|c| c.name.ends_with(&suffix)).cloned())
                .collect();
            let stabilizer_equal = match stabilizer_reduction(&code)? {
                Reduction::Applicable(f) => Some(f.is_equal_to_e_chi),
                Reduction::Inapplicable(_) => None,
            };
            let rec = CodeRecord {
                group: rep.name().to_string(),
                n_generators: n_generators.clone(),
                n_order: n.order(),
                component: k,
                chi_degree: code.chi_degree(),
                multiplicity: code.multiplicity(),
                dim: code.dim(),
                distance: code.distance().value,
                abelian_n,
                stabilizer_equal,
                checks: Tally::of(&checks),
                duplicates: Vec::new(),
            };
            Ok((rec, code.projector().clone()))
        })
        .collect()
}

/// Keeps, for each Pareto-optimal `(dim, distance)` pair, its best-ranked
/// record. A missing distance counts as 0.
pub fn best_codes_report(records: &[CodeRecord]) -> Vec<CodeRecord> {
    let key = |r: &CodeRecord| (r.dim, r.distance.unwrap_or(0));
    let mut front: Vec<CodeRecord> = Vec::new();
    for r in records {
        let (k, d) = key(r);
        let dominated = records.iter().any(|o| {
            let (ok, od) = key(o);
            ok >= k && od >= d && (ok > k || od > d)
        });
        if !dominated && !front.iter().any(|f| key(f) == (k, d)) {
            front.push(r.clone());
        }
    }
    front
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

pub const CSV_COLUMNS: [&str; 10] = [
    "group",
    "N_order",
    "N_gens",
    "chi_deg",
    "mult",
    "dim",
    "distance",
    "abelian_N",
    "stab_equal",
    "checks_passed",
];

fn row(r: &CodeRecord) -> [String; 10] {
    [
        r.group.clone(),
        r.n_order.to_string(),
        r.n_generators.join(" "),
        r.chi_degree.to_string(),
        r.multiplicity.to_string(),
        r.dim.to_string(),
        r.distance.map_or_else(|| "-".into(), |d| d.to_string()),
        r.abelian_n.to_string(),
        r.stabilizer_label().into(),
        r.checks_label(),
    ]
}

/// Renders records; JSON is a pretty-printed array with sorted keys, so
/// parsing and re-emitting it is the identity.
pub fn render(records: &[CodeRecord], format: Format) -> Result<String> {
    let rows: Vec<Vec<String>> = records.iter().map(|r| row(r).to_vec()).collect();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&serde_json::to_value(records)?)? + "\n",
        Format::Csv => render_csv(&CSV_COLUMNS, &rows),
        Format::Table if records.is_empty() => "(no codes)\n".into(),
        Format::Table => render_table(&CSV_COLUMNS, &rows),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::builtin_group;

    fn record(dim: u32, distance: Option<u32>) -> CodeRecord {
        CodeRecord {
            group: "g".into(),
            n_generators: vec![],
            n_order: 1,
            component: 0,
            chi_degree: 1,
            multiplicity: dim,
            dim,
            distance,
            abelian_n: true,
            stabilizer_equal: Some(true),
            checks: Tally::default(),
            duplicates: vec![],
        }
    }

    #[test]
    fn pareto_front() {
        let recs = vec![
            record(4, Some(1)),
            record(1, Some(2)),
            record(2, Some(1)),
            record(1, Some(2)),
        ];
        let front = best_codes_report(&recs);
        let pairs: Vec<_> = front.iter().map(|r| (r.dim, r.distance)).collect();
        assert_eq!(pairs, vec![(4, Some(1)), (1, Some(2))]);
        assert_eq!(best_codes_report(&recs[..1]), recs[..1].to_vec());
        assert!(best_codes_report(&[]).is_empty());
    }

    #[test]
    fn pauli1_search() {
        let rep = builtin_group("pauli:1").unwrap();
        let opts = DecompositionOptions::default();
        let recs = enumerate_codes(&rep, &SearchFilters::default(), None, 4096, &opts).unwrap();
        assert!(recs.iter().all(|r| r.stabilizer_equal == Some(true)));
        assert!(recs.iter().any(|r| r.dim == 1 && r.n_order == 4));
        assert!(recs.iter().all(|r| r.checks.failed == 0));
        let filters = SearchFilters {
            min_dim: Some(5),
            ..Default::default()
        };
        assert!(enumerate_codes(&rep, &filters, None, 4096, &opts).unwrap().is_empty());
    }

    #[test]
    fn renderings() {
        let recs = vec![record(1, Some(2)), record(2, None)];
        let csv = render(&recs, Format::Csv).unwrap();
        assert!(csv.starts_with("group,N_order,N_gens,chi_deg,mult,dim,distance,abelian_N,stab_equal,checks_passed\n"));
        let json = render(&recs, Format::Json).unwrap();
        let back: Vec<CodeRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, recs);
        assert_eq!(render(&back, Format::Json).unwrap(), json);
        assert!(render(&recs, Format::Table).unwrap().lines().count() == 3);
    }
}
