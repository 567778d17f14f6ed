use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use triplication::msp::{compile, SolveOutcome, SolverConfig, ValueOrder};
use triplication::pairing::{enumerate_starters, enumerate_strong_starters_with, StarterKind};
use triplication::template::build_template;
use triplication::{
    admissible_keys, recover_starter, CongruousTable, Error, Pairing, Scenario, ScenarioKind, TemplateSpec,
    TriplicationTable,
};

use crate::spec::{Mode, PairsField, SpecFile};
use crate::{exit, BaseArgs, EnumerateArgs, Expect, KeysArgs, RandomTtArgs, SolveArgs, SolverArgs, TriplicateArgs, VerifyArgs};

/// On-disk form of a recovered starter. `pairs` is the unordered starter;
/// `ordered` keeps the table index order it was recovered in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StarterFile {
    pub modulus: u32,
    pub pairs: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordered: Option<Vec<[u32; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub key: u32,
    pub scenario: ScenarioKind,
    pub solution_index: usize,
    pub tt: Value,
    pub congruous: Value,
}

fn to_arrays(pairs: &[(u32, u32)]) -> Vec<[u32; 2]> {
    pairs.iter().map(|&(x, y)| [x, y]).collect()
}

fn from_arrays(pairs: &[[u32; 2]]) -> Vec<(u32, u32)> {
    pairs.iter().map(|&[x, y]| (x, y)).collect()
}

fn resolve_spec(args: &BaseArgs) -> Result<SpecFile> {
    let mut spec = match &args.spec {
        Some(path) => Some(SpecFile::load(path)?),
        None => None,
    };
    let lit = |s: &Option<String>| s.clone().map(PairsField::Literal);
    if let Some(spec) = spec.as_mut() {
        spec.mode = args.mode.unwrap_or(spec.mode);
        spec.m = args.m.unwrap_or(spec.m);
        spec.t0 = lit(&args.t0).unwrap_or_else(|| spec.t0.clone());
        spec.t1 = lit(&args.t1).or(spec.t1.take());
        spec.t2 = lit(&args.t2).or(spec.t2.take());
        spec.mu = args.mu.or(spec.mu);
    }
    if let Some(spec) = spec {
        return Ok(spec);
    }
    let (Some(m), Some(t0)) = (args.m, &args.t0) else {
        bail!(Error::InvalidInput("give --spec, or at least --m and --T0".into()));
    };
    let mode = args.mode.unwrap_or(if args.mu.is_some() {
        Mode::Epicycloidal
    } else if args.t1.is_some() || args.t2.is_some() {
        Mode::ThreeStarter
    } else {
        Mode::OneStarter
    });
    Ok(SpecFile {
        mode,
        m,
        t0: PairsField::Literal(t0.clone()),
        t1: lit(&args.t1),
        t2: lit(&args.t2),
        mu: args.mu,
        key: None,
    })
}

fn solver_config(args: &SolverArgs) -> SolverConfig {
    SolverConfig {
        budget: args.budget,
        value_order: args.shuffle.map_or(ValueOrder::Fixed, ValueOrder::Shuffled),
    }
}

/// Verified starter plus the files it was written to.
struct Written {
    json: PathBuf,
    text: PathBuf,
    starter: Pairing,
}

fn write_starter(
    out: &Path,
    stem: &str,
    source: &str,
    tt: &TriplicationTable,
    ct: &CongruousTable,
    sc: &Scenario,
    solution_index: usize,
) -> Result<Written> {
    let rec = recover_starter(tt, ct, sc)?;
    let file = StarterFile {
        modulus: sc.order(),
        pairs: to_arrays(&rec.unordered),
        ordered: Some(to_arrays(rec.ordered.pairs())),
        provenance: Some(Provenance {
            source: source.to_string(),
            key: tt.key(),
            scenario: sc.kind(),
            solution_index,
            tt: tt.to_json_value(),
            congruous: ct.to_json_value(),
        }),
    };
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    let json_path = out.join(format!("{stem}.json"));
    let text_path = out.join(format!("{stem}.txt"));
    fs::write(&json_path, serde_json::to_string_pretty(&file)? + "\n")
        .with_context(|| format!("writing {}", json_path.display()))?;
    fs::write(&text_path, render_solution(tt, ct, &rec.ordered))
        .with_context(|| format!("writing {}", text_path.display()))?;
    Ok(Written {
        json: json_path,
        text: text_path,
        starter: rec.ordered,
    })
}

fn render_solution(tt: &TriplicationTable, ct: &CongruousTable, starter: &Pairing) -> String {
    let pairs: Vec<String> = starter.canonical_unordered().iter().map(|(x, y)| format!("{{{x},{y}}}")).collect();
    format!(
        "triplication table (m = {}, key = {})\n{}\n{} discriminators (r = {})\n{}\nstrong starter of order {}\n{}\n",
        tt.m(),
        tt.key(),
        tt.render(),
        ct.kind(),
        ct.r(),
        ct.render(),
        starter.modulus(),
        pairs.join(" ")
    )
}

fn outcome_code(codes: &[u8]) -> u8 {
    codes.iter().copied().max().unwrap_or(exit::OK)
}

pub fn triplicate(args: TriplicateArgs) -> Result<u8> {
    let spec = resolve_spec(&args.base)?;
    let base = spec.base()?;
    let kind: ScenarioKind = args.scenario.into();
    let sc = Scenario::new(kind, base.m())?;
    let cfg = solver_config(&args.solver);
    let keys = match args.key.or(spec.key) {
        Some(k) => vec![k],
        None => {
            let ks = admissible_keys(&base);
            if ks.is_empty() {
                bail!(Error::InvalidInput("the base has no admissible keys".into()));
            }
            ks.admissible
        }
    };
    let mut codes = Vec::new();
    for key in keys {
        let tt = build_template(&TemplateSpec { base: base.clone(), key })?.into_table()?;
        let report = compile(&tt, &sc)?.solve_first(&cfg);
        let stats = report.stats;
        match report.outcome {
            SolveOutcome::Solution(ct) => {
                let stem = format!("starter-{}-{}-k{key}-{kind}", sc.order(), spec.mode.name());
                let w = write_starter(&args.out, &stem, spec.mode.name(), &tt, &ct, &sc, 0)?;
                print!("{}", render_solution(&tt, &ct, &w.starter));
                println!(
                    "key {key}: solution after {} nodes, wrote {} and {}",
                    stats.nodes,
                    w.json.display(),
                    w.text.display()
                );
                codes.push(exit::OK);
            }
            SolveOutcome::Unsatisfiable => {
                println!("key {key}: unsatisfiable ({} nodes)", stats.nodes);
                codes.push(exit::UNSAT);
            }
            SolveOutcome::Aborted => {
                println!("key {key}: aborted after {} nodes", stats.nodes);
                codes.push(exit::ABORTED);
            }
        }
    }
    Ok(outcome_code(&codes))
}

pub fn keys(args: KeysArgs) -> Result<u8> {
    let spec = resolve_spec(&args.base)?;
    let base = spec.base()?;
    let ks = admissible_keys(&base);
    if args.json {
        let per_key: Vec<Value> = (1..base.m())
            .map(|t| json!({"key": t, "admissible": ks.contains(t)}))
            .collect();
        let doc = json!({
            "m": base.m(),
            "mode": spec.mode.name(),
            "admissible": ks.admissible,
            "count": ks.len(),
            "keys": per_key,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        let list: Vec<String> = ks.admissible.iter().map(u32::to_string).collect();
        println!("K = {{{}}}", list.join(", "));
        println!("|K| = {}", ks.len());
    }
    Ok(exit::OK)
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn verify(args: VerifyArgs) -> Result<u8> {
    let value = read_json(&args.file)?;
    if value.get("rows").is_some() {
        return match TriplicationTable::from_json_value(value) {
            Ok(tt) => {
                println!("valid triplication table: m = {}, key = {}", tt.m(), tt.key());
                Ok(exit::OK)
            }
            Err(e) => {
                println!("invalid triplication table: {e}");
                Ok(exit::INVALID)
            }
        };
    }
    let file: StarterFile = serde_json::from_value(value)
        .with_context(|| format!("{} is neither a starter nor a table", args.file.display()))?;
    let pairs = from_arrays(file.ordered.as_deref().unwrap_or(&file.pairs));
    let p = Pairing::new(file.modulus, pairs)?;
    let class = p.classify();
    let needed = match args.expect {
        Expect::Strong => StarterKind::StrongStarter,
        Expect::Starter => StarterKind::Starter,
        Expect::Pseudostarter => StarterKind::Pseudostarter,
    };
    let mut ok = class_reaches(class.kind, needed);
    match &class.witness {
        Some(w) => println!("{} of order {}: {w}", class.kind, p.modulus()),
        None => println!("{} of order {}", class.kind, p.modulus()),
    }
    if file.ordered.is_some() {
        let mut listed = from_arrays(&file.pairs);
        listed.sort_unstable();
        if listed != p.canonical_unordered() {
            println!("pairs and ordered disagree");
            ok = false;
        }
    }
    if let Some(prov) = &file.provenance {
        let tt = TriplicationTable::from_json_value(prov.tt.clone())?;
        let ct = CongruousTable::from_json_value(prov.congruous.clone())?;
        let sc = Scenario::new(prov.scenario, tt.m())?;
        match recover_starter(&tt, &ct, &sc) {
            Ok(rec) if rec.unordered == p.canonical_unordered() => {
                println!("provenance consistent: recovered from the recorded table and discriminators")
            }
            Ok(_) => {
                println!("provenance mismatch: recorded table recovers a different starter");
                ok = false;
            }
            Err(e) => {
                println!("provenance invalid: {e}");
                ok = false;
            }
        }
    }
    Ok(if ok { exit::OK } else { exit::INVALID })
}

/// Strong starters are starters, and starters are pseudostarters.
fn class_reaches(have: StarterKind, needed: StarterKind) -> bool {
    have >= needed
}

pub fn solve(args: SolveArgs) -> Result<u8> {
    let tt = TriplicationTable::from_json_value(read_json(&args.table)?)?;
    let kind: ScenarioKind = args.scenario.into();
    let sc = Scenario::new(kind, tt.m())?;
    let inst = compile(&tt, &sc)?;
    let cfg = solver_config(&args.solver);
    let stem = format!("starter-{}-table-k{}-{kind}", sc.order(), tt.key());
    if args.all {
        let (all, stats) = inst.solve_all(&cfg, args.max)?;
        if all.is_empty() {
            println!("unsatisfiable ({} nodes)", stats.nodes);
            return Ok(exit::UNSAT);
        }
        fs::create_dir_all(&args.out)?;
        let path = args.out.join(format!("solutions-{}-k{}-{kind}.jsonl", sc.order(), tt.key()));
        let mut lines = String::new();
        for (i, ct) in all.iter().enumerate() {
            let rec = recover_starter(&tt, ct, &sc)?;
            let file = StarterFile {
                modulus: sc.order(),
                pairs: to_arrays(&rec.unordered),
                ordered: Some(to_arrays(rec.ordered.pairs())),
                provenance: Some(Provenance {
                    source: "table".into(),
                    key: tt.key(),
                    scenario: kind,
                    solution_index: i,
                    tt: tt.to_json_value(),
                    congruous: ct.to_json_value(),
                }),
            };
            lines.push_str(&serde_json::to_string(&file)?);
            lines.push('\n');
        }
        fs::write(&path, lines).with_context(|| format!("writing {}", path.display()))?;
        println!("{} solutions ({} nodes), wrote {}", all.len(), stats.nodes, path.display());
        return Ok(exit::OK);
    }
    let report = inst.solve_first(&cfg);
    match report.outcome {
        SolveOutcome::Solution(ct) => {
            let w = write_starter(&args.out, &stem, "table", &tt, &ct, &sc, 0)?;
            print!("{}", render_solution(&tt, &ct, &w.starter));
            println!("solution after {} nodes, wrote {}", report.stats.nodes, w.json.display());
            Ok(exit::OK)
        }
        SolveOutcome::Unsatisfiable => {
            println!("unsatisfiable ({} nodes)", report.stats.nodes);
            Ok(exit::UNSAT)
        }
        SolveOutcome::Aborted => {
            println!("aborted after {} nodes", report.stats.nodes);
            Ok(exit::ABORTED)
        }
    }
}

pub fn random_tt(args: RandomTtArgs) -> Result<u8> {
    let tt = triplication::random_tt(args.m, args.seed, args.budget)?;
    let text = tt.to_json() + "\n";
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            eprint!("{}", tt.render());
        }
        None => print!("{text}"),
    }
    Ok(exit::OK)
}

pub fn enumerate(args: EnumerateArgs) -> Result<u8> {
    let list = if args.all_starters {
        enumerate_starters(args.m, args.limit, args.allow_large)?
    } else {
        enumerate_strong_starters_with(args.m, args.limit, args.allow_large)?
    };
    for p in &list {
        println!("{}", serde_json::to_string(p)?);
    }
    eprintln!("{} pairings", list.len());
    Ok(exit::OK)
}
