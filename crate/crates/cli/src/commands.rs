use std::time::Instant;

use lenskit::cfrac::{complementary_string, eval_cf, expand_cf};
use lenskit::keystone::{keystone_set, suggested_knot, KeystoneReport};
use lenskit::lattice::{form_from_string, table_embedding, table_labelled, verify_embedding, LatticeEmbedding};
use lenskit::lens::is_homeomorphic;
use lenskit::lisca::{
    classify_family, generate_all, generate_type_strings, recognize_string_type, LiscaString, StringParams,
};
use lenskit::surgery::{
    meridian_classes, simple_knot_equivalent, theorem16_instance, verify_s1s2, FamilyParams, SymmetryOptions,
};
use lenskit::verify::{lens_spaces_up_to, run_criterion, run_goldens, SweepConfig, GOLDENS};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{
    CfCmd, Cli, Command, FamilyCmd, HomologyCmd, KeystoneCmd, LatticeCmd, LensCmd, StringCmd, VerifyCmd,
};
use crate::cache::{Cache, Lookup};
use crate::report::ReportRecord;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input: exit status 2.
    #[error("{0}")]
    Usage(String),
    /// A computation that cannot produce a verdict: exit status 1.
    #[error("{0}")]
    Failed(String),
}

impl From<lenskit::Error> for CliError {
    fn from(e: lenskit::Error) -> Self {
        use lenskit::Error as E;
        match e {
            E::Parse { .. } | E::Domain(_) | E::InvalidPair { .. } | E::DimensionMismatch { .. } => {
                Self::Usage(e.to_string())
            }
            _ => Self::Failed(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub struct Context {
    pub cache: Cache,
    pub verbose: bool,
    pub timing: bool,
    /// The invocation, used as the reproduction line of failures.
    pub invocation: String,
}

impl Context {
    pub fn from_cli(cli: &Cli, invocation: String) -> Self {
        let cache = if cli.no_cache {
            Cache::disabled()
        } else {
            Cache::new(cli.cache_dir.clone().or_else(Cache::default_dir))
        };
        Self { cache, verbose: cli.verbose, timing: cli.timing, invocation }
    }

    /// Embedding classes, labelled like the closed-form table when there is one.
    fn embeddings(&self, coefficients: &[i64]) -> CliResult<Vec<LatticeEmbedding>> {
        let (v, status) = self.cache.embeddings(coefficients)?;
        if self.verbose {
            let label = match status {
                Lookup::Hit => "hit",
                Lookup::Miss => "miss",
                Lookup::Corrupt => "miss (corrupt record replaced)",
                Lookup::Disabled => "disabled",
            };
            eprintln!("cache {label}: {}", csv(coefficients));
        }
        Ok(v.into_iter().map(|e| table_labelled(coefficients, &e).unwrap_or(e)).collect())
    }
}

fn csv<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn labels(v: &[usize]) -> String {
    v.iter().map(|k| format!("e{k}")).collect::<Vec<_>>().join(" ")
}

fn pass_fail(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn execute(cmd: &Command, ctx: &Context) -> CliResult<Vec<ReportRecord>> {
    let mut records = match cmd {
        Command::Cf(c) => cf(c)?,
        Command::Lens(c) => lens(c)?,
        Command::Family(c) => family(c)?,
        Command::String(c) => string(c)?,
        Command::Lattice(c) => lattice(c, ctx)?,
        Command::Keystone(c) => keystone(c, ctx)?,
        Command::Homology(c) => homology(c)?,
        Command::Verify(c) => return verify(c, ctx),
    };
    for r in records.iter_mut().filter(|r| r.failed() && r.repro.is_none()) {
        r.repro = Some(ctx.invocation.clone());
    }
    Ok(records)
}

fn cf(cmd: &CfCmd) -> CliResult<Vec<ReportRecord>> {
    Ok(vec![match cmd {
        CfCmd::Eval { terms } => {
            let v = eval_cf(terms)?;
            ReportRecord::info(format!("[{terms}]"), json!({ "value": v.to_string() }), v.to_string())
        }
        CfCmd::Expand { value } => {
            let e = expand_cf(value)?;
            ReportRecord::info(value.to_string(), json!({ "terms": e.to_string() }), e.to_string())
        }
        CfCmd::Complement { terms } => {
            let c = complementary_string(terms)?;
            ReportRecord::info(format!("[{terms}]"), json!({ "complement": c.to_string() }), c.to_string())
        }
    }])
}

fn lens(cmd: &LensCmd) -> CliResult<Vec<ReportRecord>> {
    Ok(vec![match cmd {
        LensCmd::Homeo { a, b, oriented } => {
            let t = is_homeomorphic(a, b, *oriented);
            let text = match t {
                Some(t) => format!("PASS {a} = {b} ({t})"),
                None => format!("FAIL {a} and {b} are not {}homeomorphic", if *oriented { "oriented-" } else { "" }),
            };
            ReportRecord::verdict(
                format!("{a} {b}"),
                t.is_some(),
                json!({ "transform": t, "oriented": oriented }),
                text,
            )
        }
        LensCmd::Mirror { lens } => {
            let m = lens.mirror();
            ReportRecord::info(lens.to_string(), json!({ "mirror": m.to_string() }), m.to_string())
        }
        LensCmd::String { lens } => {
            let s = lens.to_standard_string()?;
            let framings: Vec<i64> = s.to_i64s()?.iter().map(|a| -a).collect();
            ReportRecord::info(lens.to_string(), json!({ "terms": s.to_string(), "framings": framings }), s.to_string())
        }
    }])
}

fn family(cmd: &FamilyCmd) -> CliResult<Vec<ReportRecord>> {
    match cmd {
        FamilyCmd::Classify { lens, oriented } => {
            let ws: Vec<_> =
                classify_family(lens).into_iter().filter(|w| !oriented || w.mode.preserves_orientation()).collect();
            let text = if ws.is_empty() {
                format!("FAIL {lens} is in no family")
            } else {
                ws.iter()
                    .map(|w| format!("{:?} m={} d={} {}", w.family, w.m, w.d, w.mode))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            Ok(vec![ReportRecord::verdict(lens.to_string(), !ws.is_empty(), to_value(&ws), text)])
        }
        FamilyCmd::Enumerate { max_order } => {
            let members: Vec<_> = lens_spaces_up_to(*max_order)
                .into_par_iter()
                .filter_map(|l| {
                    let ws = classify_family(&l);
                    (!ws.is_empty()).then_some((l, ws))
                })
                .collect();
            Ok(members
                .into_iter()
                .map(|(l, ws)| {
                    let mut fams: Vec<String> = ws.iter().map(|w| format!("{:?}", w.family)).collect();
                    fams.dedup();
                    ReportRecord::info(l.to_string(), to_value(&ws), format!("{l} {}", fams.join(",")))
                })
                .collect())
        }
    }
}

fn describe(ls: &LiscaString) -> String {
    let params = match &ls.params {
        StringParams::Pattern { s, t } => format!("s={s} t={t}"),
        StringParams::Expanded { b, c, history } => {
            let h: String = history.iter().map(|e| format!("{e:?}").to_lowercase()).collect();
            format!("b={} c={} expansions={}", csv(b), csv(c), if h.is_empty() { "-".into() } else { h })
        }
    };
    format!("{} {params}{}", ls.kind, if ls.reversed { " reversed" } else { "" })
}

fn string(cmd: &StringCmd) -> CliResult<Vec<ReportRecord>> {
    match cmd {
        StringCmd::Recognize { coefficients } => {
            let found = recognize_string_type(coefficients);
            let text = if found.is_empty() {
                "FAIL no type".to_string()
            } else {
                found.iter().map(describe).collect::<Vec<_>>().join("\n")
            };
            Ok(vec![ReportRecord::verdict(
                format!("[{}]", csv(coefficients)),
                !found.is_empty(),
                to_value(&found),
                text,
            )])
        }
        StringCmd::Generate { kind, bound } => {
            let strings = match kind {
                Some(k) => generate_type_strings(*k, *bound),
                None => generate_all(*bound),
            };
            Ok(strings
                .iter()
                .map(|ls| {
                    let c = csv(&ls.coefficients);
                    ReportRecord::info(format!("{} [{c}]", ls.kind), to_value(ls), format!("{c}  {}", describe(ls)))
                })
                .collect())
        }
    }
}

fn keystone_text(r: &KeystoneReport) -> String {
    let mut lines = vec![format!("E2: {}", labels(&r.e2)), format!("keystones: {}", labels(&r.keystones))];
    for (k, w) in &r.witnesses {
        let via: Vec<String> = w.certificates.iter().map(|v| format!("v{v}")).collect();
        lines.push(format!("  e{k}: order {} via {}", labels(&w.order), via.join(" ")));
    }
    lines.join("\n")
}

fn lattice(cmd: &LatticeCmd, ctx: &Context) -> CliResult<Vec<ReportRecord>> {
    match cmd {
        LatticeCmd::Embed { coefficients } => {
            let embs = ctx.embeddings(coefficients)?;
            let classes: Vec<Value> = embs
                .iter()
                .map(|e| {
                    let r = keystone_set(e);
                    json!({ "rows": e, "e2": r.e2, "keystones": r.keystones })
                })
                .collect();
            let mut text = vec![format!("{} embedding class{}", embs.len(), if embs.len() == 1 { "" } else { "es" })];
            for e in &embs {
                text.push(e.sign_table().trim_end().to_string());
                text.push(format!("keystones: {}", labels(&keystone_set(e).keystones)));
            }
            let witness = json!({ "coefficients": coefficients, "classes": classes });
            Ok(vec![ReportRecord::verdict(
                format!("[{}]", csv(coefficients)),
                !embs.is_empty(),
                witness,
                text.join("\n"),
            )])
        }
        LatticeCmd::Verify { coefficients, rows } => {
            let form = form_from_string(coefficients)?;
            let emb = LatticeEmbedding::new(rows.clone())?;
            let ok = verify_embedding(&form, &emb)?;
            let text = format!("{} gram={:?}", pass_fail(ok), emb.gram());
            Ok(vec![ReportRecord::verdict(format!("[{}]", csv(coefficients)), ok, json!({ "gram": emb.gram() }), text)])
        }
        LatticeCmd::Table { coefficients } => {
            let found = recognize_string_type(coefficients);
            if found.is_empty() {
                return Ok(vec![ReportRecord::verdict(
                    format!("[{}]", csv(coefficients)),
                    false,
                    Value::Null,
                    "FAIL no type",
                )]);
            }
            found
                .iter()
                .map(|ls| {
                    let t = table_embedding(ls)?;
                    let text = format!("{}\n{}", describe(ls), t.sign_table().trim_end());
                    Ok(ReportRecord::info(
                        format!("{} [{}]", ls.kind, csv(coefficients)),
                        json!({ "string": ls, "rows": t }),
                        text,
                    ))
                })
                .collect()
        }
    }
}

fn chosen_embeddings(
    coefficients: &[i64],
    rows: &Option<Vec<Vec<i64>>>,
    ctx: &Context,
) -> CliResult<Vec<LatticeEmbedding>> {
    match rows {
        Some(r) => {
            let emb = LatticeEmbedding::new(r.clone())?;
            if !verify_embedding(&form_from_string(coefficients)?, &emb)? {
                return Err(CliError::Usage("the given rows do not realize the form".into()));
            }
            Ok(vec![emb])
        }
        None => ctx.embeddings(coefficients),
    }
}

fn keystone(cmd: &KeystoneCmd, ctx: &Context) -> CliResult<Vec<ReportRecord>> {
    let (coefficients, rows) = match cmd {
        KeystoneCmd::Report { coefficients, rows } | KeystoneCmd::Suggest { coefficients, rows, .. } => {
            (coefficients, &rows.rows)
        }
    };
    let subject = format!("[{}]", csv(coefficients));
    let embs = chosen_embeddings(coefficients, rows, ctx)?;
    if embs.is_empty() {
        return Ok(vec![ReportRecord::verdict(subject, false, Value::Null, "FAIL no embedding")]);
    }
    let mut out = Vec::new();
    for (i, emb) in embs.iter().enumerate() {
        let report = keystone_set(emb);
        let class = format!("{subject} class {}", i + 1);
        match cmd {
            KeystoneCmd::Report { .. } => {
                let text = format!("{}\n{}", emb.sign_table().trim_end(), keystone_text(&report));
                out.push(ReportRecord::info(class, json!({ "rows": emb, "report": report }), text));
            }
            KeystoneCmd::Suggest { e, .. } => {
                let targets = match e {
                    Some(k) => vec![*k],
                    None => report.keystones.clone(),
                };
                for k in targets {
                    let subject = format!("{class} e{k}");
                    match k.checked_sub(1).filter(|&c| c < emb.rank()).map(|c| suggested_knot(emb, coefficients, c)) {
                        Some(Ok(knot)) => {
                            let text = format!("e{k}: eps={} framing={}", csv(&knot.epsilon), knot.framing);
                            out.push(ReportRecord::info(subject, to_value(&knot), text));
                        }
                        Some(Err(err)) => {
                            out.push(ReportRecord::verdict(subject, false, Value::Null, format!("FAIL {err}")))
                        }
                        None => {
                            return Err(CliError::Usage(format!("basis label {k} out of range 1..={}", emb.rank())))
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

fn homology(cmd: &HomologyCmd) -> CliResult<Vec<ReportRecord>> {
    Ok(vec![match cmd {
        HomologyCmd::Classes { coefficients } => {
            let mc = meridian_classes(coefficients)?;
            let text = format!(
                "{} order={} classes={} mu_n={} mu_1={}*mu_n",
                mc.lens,
                mc.order,
                csv(&mc.classes),
                mc.q_inverse,
                mc.mu1_in_mun
            );
            ReportRecord::info(format!("[{}]", csv(coefficients)), to_value(&mc), text)
        }
        HomologyCmd::Theorem16 { family, b, s, t } => {
            let params = match (b, s, t) {
                (Some(b), None, None) => FamilyParams::Sequence { b: b.clone() },
                (None, Some(s), Some(t)) => FamilyParams::Pair { s: *s, t: *t },
                _ => return Err(CliError::Usage("give either --b or both --s and --t".into())),
            };
            let row = theorem16_instance(*family, &params)?;
            let text = format!(
                "{} {family} p={} q={} m={} claimed={} computed={}",
                pass_fail(row.matches),
                row.p,
                row.q,
                row.m,
                csv(&row.claimed),
                csv(&row.computed)
            );
            ReportRecord::verdict(
                format!("{family} {}", serde_json::to_string(&params).expect("params")),
                row.matches,
                to_value(&row),
                text,
            )
        }
        HomologyCmd::S1s2 { coefficients, eps, framing } => {
            let v = verify_s1s2(coefficients, eps, *framing)?;
            let text = format!("{} snf={}", pass_fail(v.pass), csv(&v.diagonal));
            ReportRecord::verdict(format!("[{}] eps=[{}]", csv(coefficients), csv(eps)), v.pass, to_value(&v), text)
        }
        HomologyCmd::SimpleEq { a, b, reversing_square_root } => {
            let opts = SymmetryOptions { reversing_square_root: *reversing_square_root };
            let eq = simple_knot_equivalent(a, b, opts);
            let text = format!("{} {a} {} {b}", pass_fail(eq), if eq { "~" } else { "!~" });
            ReportRecord::verdict(format!("{a} {b}"), eq, json!({ "equivalent": eq, "options": opts }), text)
        }
    }])
}

/// Golden checks that run the command line itself.
pub const CLI_GOLDENS: &[(&str, &[&str])] = &[
    ("cli-cf-eval", &["lenskit", "cf", "eval", "--", "-1,2,2,2,2,-1"]),
    ("cli-lattice-embed-json", &["lenskit", "lattice", "embed", "--", "-2,-3,-2,-3,-3", "--json"]),
    ("cli-s1s2", &["lenskit", "homology", "s1s2", "--", "-2,-2,-2", "--eps", "-1,0,1", "--framing", "-1"]),
];

fn cli_golden(name: &str, argv: &[&str]) -> Result<(), String> {
    use clap::Parser;
    let args = crate::args::normalize_args(argv.iter().map(|s| s.to_string()));
    let cli = Cli::try_parse_from(&args).map_err(|e| e.to_string())?;
    let ctx = Context { cache: Cache::disabled(), verbose: false, timing: false, invocation: args.join(" ") };
    let records = execute(&cli.command, &ctx).map_err(|e| e.to_string())?;
    let [r] = &records[..] else {
        return Err(format!("{} records", records.len()));
    };
    let ok = match name {
        "cli-cf-eval" => r.text == "-16/9",
        "cli-lattice-embed-json" => {
            let classes = r.witness["classes"].as_array().cloned().unwrap_or_default();
            cli.json && classes.len() == 1 && classes[0]["keystones"] == json!([1, 2, 3, 5])
        }
        "cli-s1s2" => r.text == "PASS snf=1,1,1,0",
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(format!("unexpected output {}", serde_json::to_string(r).unwrap_or_default()))
    }
}

fn golden_records(names: &[String], timing: bool) -> CliResult<Vec<ReportRecord>> {
    let known = |n: &String| GOLDENS.iter().any(|g| g.name == n) || CLI_GOLDENS.iter().any(|(g, _)| g == n);
    if let Some(bad) = names.iter().find(|n| !known(n)) {
        return Err(CliError::Usage(format!("unknown golden '{bad}'")));
    }
    let wanted = |n: &str| names.is_empty() || names.iter().any(|x| x == n);
    let lib_names: Vec<&str> = GOLDENS.iter().map(|g| g.name).filter(|n| wanted(n)).collect();
    let mut out = Vec::new();
    if !lib_names.is_empty() {
        for r in run_goldens(&lib_names) {
            out.push(golden_record(&r.name, r.error, None, timing));
        }
    }
    for (name, argv) in CLI_GOLDENS.iter().filter(|(n, _)| wanted(n)) {
        let started = Instant::now();
        let res = cli_golden(name, argv);
        out.push(golden_record(name, res.err(), Some(started), timing));
    }
    Ok(out)
}

fn golden_record(name: &str, error: Option<String>, started: Option<Instant>, timing: bool) -> ReportRecord {
    let pass = error.is_none();
    let text = match &error {
        None => format!("PASS golden {name}"),
        Some(e) => format!("FAIL golden {name}: {e}"),
    };
    let mut r = ReportRecord::verdict(format!("golden {name}"), pass, json!({ "error": error }), text);
    if !pass {
        r.repro = Some(format!("lenskit verify golden {name}"));
    }
    if timing {
        r.elapsed_ms = started.map(|s| s.elapsed().as_millis() as u64);
    }
    r
}

fn verify(cmd: &VerifyCmd, ctx: &Context) -> CliResult<Vec<ReportRecord>> {
    match cmd {
        VerifyCmd::All { max_order, max_rank, cf_cases, cf_seed, family_bound } => {
            let cfg = SweepConfig {
                max_order: *max_order,
                cf_cases: *cf_cases,
                cf_seed: *cf_seed,
                max_rank: *max_rank,
                family_bound: *family_bound,
            };
            cfg.validate()?;
            let mut out = Vec::new();
            for id in 1..=7 {
                let r = run_criterion(id, &cfg).expect("criteria 1..=7 exist");
                let mut text = format!("{} criterion {id}: {} ({} cases)", pass_fail(r.pass), r.name, r.cases);
                for f in r.failures.iter().take(10) {
                    text.push_str(&format!("\n    {}: {}  (repro: {})", f.subject, f.message, f.repro));
                }
                let witness = json!({ "name": r.name, "cases": r.cases, "failures": r.failures, "note": r.note });
                let mut rec = ReportRecord::verdict(format!("criterion {id}"), r.pass, witness, text);
                if !r.pass {
                    rec.repro = Some(r.failures.first().map_or_else(|| ctx.invocation.clone(), |f| f.repro.clone()));
                }
                if ctx.timing {
                    rec.elapsed_ms = Some(r.elapsed_ms);
                }
                out.push(rec);
            }
            out.extend(golden_records(&[], ctx.timing)?);
            Ok(out)
        }
        VerifyCmd::Golden { names } => golden_records(names, ctx.timing),
    }
}
