//! `verify-claims`: re-derives every desk-checkable claim, writes the
//! certificates, and prints one report line per claim.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use strictcol::lambda::{random_lambda_assignment, Provenance};
use strictcol::strict::{
    case2_demo_assignment, k246_sizes, k255_sizes, k3k_sizes, Certificate, Reason,
};
use strictcol::{
    case2_color, choice_number, complete_multipartite, contains_parts, decide_strict_cmp,
    decide_strict_search, hoffman_johnson_enumerate, l_color_multipartite, lambda_choosable, leq,
    witness_k246, witness_k255, witness_k3k, BadAssignmentWitness, ChoiceNumber, Graph,
    IntegerPartition, LambdaAssignment, ListAssignment, PartSizes,
};

use crate::{load_witness, read_json, CliError, CliResult, Ctx, VerifyArgs, EXIT_NO, EXIT_YES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub claim_id: String,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
}

/// Witness families are checked up to this k unless `--k-max` says otherwise.
pub const DEFAULT_K_MAX: usize = 6;

type Check = CliResult<Result<String, String>>;

struct Runner<'a> {
    ctx: &'a Ctx,
    out: Option<PathBuf>,
    recheck: Option<PathBuf>,
    entries: Vec<ReportEntry>,
}

impl Runner<'_> {
    fn run(&mut self, id: &str, f: impl FnOnce(&mut Self) -> Check) {
        let start = Instant::now();
        let (status, detail) = match f(self) {
            Ok(Ok(detail)) => (Status::Pass, detail),
            Ok(Err(why)) => (Status::Fail, why),
            Err(e) => (Status::Fail, e.to_string()),
        };
        let elapsed_ms = start.elapsed().as_millis();
        self.ctx
            .note(format!("{id}: {status:?} ({elapsed_ms} ms)").to_lowercase());
        self.entries.push(ReportEntry {
            claim_id: id.to_string(),
            status,
            detail,
            elapsed_ms,
        });
    }

    fn write<T: Serialize>(&self, name: &str, value: &T) -> CliResult<Option<PathBuf>> {
        let Some(dir) = &self.out else {
            return Ok(None);
        };
        let path = dir.join(name);
        let text = serde_json::to_string_pretty(value).expect("values serialize") + "\n";
        fs::write(&path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        Ok(Some(path))
    }

    fn source(&self, name: &str) -> Option<PathBuf> {
        self.recheck.as_ref().map(|d| d.join(name))
    }
}

fn detail(path: Option<PathBuf>, fallback: impl Into<String>) -> String {
    match path {
        Some(p) => p.display().to_string(),
        None => fallback.into(),
    }
}

fn witness_claim(
    r: &mut Runner,
    id: &str,
    k: usize,
    sizes: PartSizes,
    build: fn(usize) -> strictcol::Result<LambdaAssignment>,
) -> Check {
    let name = format!("{id}.json");
    let witness = match r.source(&name) {
        Some(path) => load_witness(&path)?,
        None => {
            let assignment = build(k)?;
            let g = complete_multipartite(&sizes)?;
            let nodes = strictcol::l_color(&g, assignment.base())?.nodes_searched;
            BadAssignmentWitness {
                assignment,
                nodes_searched: nodes,
            }
        }
    };
    let g = complete_multipartite(&sizes)?;
    if witness.assignment.lambda() != &IntegerPartition::strict_lambda(k) {
        return Ok(Err(format!(
            "partition is {}, not lambda_{k}",
            witness.assignment.lambda()
        )));
    }
    if !witness.verify(&g)? {
        return Ok(Err(format!("does not re-validate on {sizes}")));
    }
    if l_color_multipartite(&sizes, witness.assignment.base())?.colorable {
        return Ok(Err("ownership solver finds a coloring".into()));
    }
    let path = r.write(&name, &witness)?;
    Ok(Ok(detail(
        path,
        format!("{sizes} not lambda_{k}-choosable"),
    )))
}

fn hj_unique(r: &mut Runner) -> Check {
    let sizes: PartSizes = "2,4".parse()?;
    let found = hoffman_johnson_enumerate(2, 4)?;
    if found.len() != 1 {
        return Ok(Err(format!("{} bad classes, expected 1", found.len())));
    }
    let name = "hj-unique-k24.json";
    let lists = match r.source(name) {
        Some(path) => {
            let v = read_json(&path)?;
            serde_json::from_value::<ListAssignment>(v)
                .map_err(|source| CliError::Json { path, source })?
        }
        None => found[0].clone(),
    };
    if lists.len() != sizes.total() || lists.uniform_size() != Some(2) {
        return Ok(Err("not a 2-assignment of K_{2,4}".into()));
    }
    if l_color_multipartite(&sizes, &lists)?.colorable {
        return Ok(Err("assignment is colorable".into()));
    }
    let path = r.write(name, &lists)?;
    Ok(Ok(detail(path, "exactly one bad 2-assignment class")))
}

fn exhaustive_positive(text: &str, g: Graph) -> Check {
    let lambda: IntegerPartition = "1,2".parse()?;
    let v = lambda_choosable(&g, &lambda)?;
    if !v.is_choosable() || v.provenance != Some(Provenance::Exhaustive) {
        return Ok(Err(format!(
            "{text}: verdict {:?} by {:?}",
            v.choosable, v.provenance
        )));
    }
    Ok(Ok(format!(
        "{text} {{1,2}}-choosable, {} classes",
        v.classes_examined.unwrap_or(0)
    )))
}

fn characterization(max: usize) -> Check {
    let patterns: [PartSizes; 3] = ["3,3,3".parse()?, "2,4,6".parse()?, "2,5,5".parse()?];
    let mut strict = 0;
    let mut total = 0;
    for a1 in 1..=max {
        for a2 in a1..=max {
            for a3 in a2..=max {
                let s = PartSizes::new(vec![a1, a2, a3])?;
                let d = decide_strict_cmp(&s)?;
                let expected = patterns.iter().any(|p| contains_parts(&s, p));
                if d.strict != expected {
                    return Ok(Err(format!(
                        "{s}: decided {} but containment says {expected}",
                        d.strict
                    )));
                }
                if !d.verify()? {
                    return Ok(Err(format!("{s}: certificate fails")));
                }
                strict += usize::from(d.strict);
                total += 1;
            }
        }
    }
    Ok(Ok(format!(
        "{total} graphs, {strict} strict, all certificates valid"
    )))
}

fn case2_random(text: &str, trials: usize, seed: u64) -> Check {
    let sizes: PartSizes = text.parse()?;
    let g = complete_multipartite(&sizes)?;
    let lambda = IntegerPartition::strict_lambda(sizes.k());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let a = random_lambda_assignment(sizes.total(), &lambda, &mut rng);
        let tr = case2_color(&sizes, &a)?;
        if !tr.final_coloring.certifies(&g, a.base()) {
            return Ok(Err(format!("trial {t}: improper coloring")));
        }
    }
    Ok(Ok(format!(
        "{trials} random assignments of {sizes} colored (seed {seed})"
    )))
}

fn case2_demo(r: &mut Runner) -> Check {
    let sizes: PartSizes = "2,4,5".parse()?;
    let g = complete_multipartite(&sizes)?;
    let a = case2_demo_assignment(&sizes)?;
    let tr = case2_color(&sizes, &a)?;
    if tr.last_step() != 3 || !tr.final_coloring.certifies(&g, a.base()) {
        return Ok(Err(format!("demo stopped at step {}", tr.last_step())));
    }
    let path = r.write(
        "case2-demo-k245.json",
        &serde_json::json!({ "assignment": a, "transcript": tr }),
    )?;
    Ok(Ok(detail(path, "all three steps reached, coloring proper")))
}

fn search_agrees() -> Check {
    let mut done = Vec::new();
    for text in ["1,1,1", "1,2,2", "2,2,2", "2,2,3", "2,3,3"] {
        let s: PartSizes = text.parse()?;
        let by_theorem = decide_strict_cmp(&s)?;
        let by_search = decide_strict_search(&complete_multipartite(&s)?, 3)?;
        if by_theorem.strict != by_search.strict || by_search.reason != Reason::Search {
            return Ok(Err(format!(
                "{s}: theorem {} search {}",
                by_theorem.strict, by_search.strict
            )));
        }
        if !matches!(
            by_search.certificate,
            Certificate::Exhaustive { .. } | Certificate::BadAssignment(_)
        ) {
            return Ok(Err(format!("{s}: unexpected search certificate")));
        }
        done.push(text);
    }
    Ok(Ok(format!("search agrees on {}", done.join(" "))))
}

pub fn run(args: &VerifyArgs, ctx: &Ctx) -> CliResult<u8> {
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
    }
    if args.k_max < 3 {
        return Err(CliError::Usage("--k-max must be at least 3".into()));
    }
    let mut r = Runner {
        ctx,
        out: args.out.clone(),
        recheck: args.recheck.clone(),
        entries: Vec::new(),
    };
    r.run("order-example", |_| {
        let lo: IntegerPartition = "3,3".parse()?;
        let hi: IntegerPartition = "1,1,2,4".parse()?;
        let want: IntegerPartition = "3,5".parse()?;
        Ok(match leq(&lo, &hi).and_then(|w| w.intermediate) {
            Some(mid) if mid == want => Ok(format!("{lo} <= {hi} via {mid}")),
            other => Err(format!("got {other:?}")),
        })
    });
    type Family = (
        &'static str,
        fn(usize) -> PartSizes,
        fn(usize) -> strictcol::Result<LambdaAssignment>,
    );
    let families: [Family; 3] = [
        ("k3k", k3k_sizes, witness_k3k),
        ("k246", k246_sizes, witness_k246),
        ("k255", k255_sizes, witness_k255),
    ];
    for (name, sizes, build) in families {
        for k in 3..=args.k_max {
            let id = format!("witness-{name}-k{k}");
            r.run(&id.clone(), |r| witness_claim(r, &id, k, sizes(k), build));
        }
        for k in args.k_max + 1..=DEFAULT_K_MAX {
            r.entries.push(ReportEntry {
                claim_id: format!("witness-{name}-k{k}"),
                status: Status::Skipped,
                detail: format!("above --k-max {}", args.k_max),
                elapsed_ms: 0,
            });
        }
    }
    r.run("hj-unique-k24", hj_unique);
    r.run("hj-none-k23", |_| {
        let found = hoffman_johnson_enumerate(2, 3)?;
        Ok(if found.is_empty() {
            Ok("K_{2,3} is 2-choosable".into())
        } else {
            Err(format!("{} bad classes", found.len()))
        })
    });
    r.run("choice-number-k24", |_| {
        let g = complete_multipartite(&"2,4".parse()?)?;
        Ok(match choice_number(&g, 3)? {
            ChoiceNumber::Exact(3) => Ok("ch(K_{2,4}) = 3".into()),
            other => Err(format!("{other:?}")),
        })
    });
    r.run("exhaustive-k222", |_| {
        exhaustive_positive("K_{2,2,2}", complete_multipartite(&"2,2,2".parse()?)?)
    });
    r.run("exhaustive-k3", |_| {
        exhaustive_positive("K_3", Graph::complete(3)?)
    });
    r.run("characterization-k3", |_| characterization(7));
    r.run("search-agrees-k3", |_| search_agrees());
    r.run("case2-demo", case2_demo);
    let seed = ctx.seed;
    r.run("case2-random-k245", |_| case2_random("2,4,5", 10_000, seed));
    r.run("case2-random-k2457", |_| {
        case2_random("2,4,5,7", 1_000, seed)
    });

    let width = r
        .entries
        .iter()
        .map(|e| e.claim_id.len())
        .max()
        .unwrap_or(0);
    for e in &r.entries {
        let status = serde_json::to_value(e.status).expect("status serializes");
        println!(
            "{:width$}  {:7}  {}",
            e.claim_id,
            status.as_str().unwrap_or(""),
            e.detail
        );
    }
    if let Some(dir) = &args.out {
        write_report(dir, &r.entries)?;
    }
    let ok = r.entries.iter().all(|e| e.status != Status::Fail);
    Ok(if ok { EXIT_YES } else { EXIT_NO })
}

fn write_report(dir: &Path, entries: &[ReportEntry]) -> CliResult<()> {
    let path = dir.join("report.json");
    let text = serde_json::to_string_pretty(entries).expect("entries serialize") + "\n";
    fs::write(&path, text).map_err(|source| CliError::Io { path, source })
}
