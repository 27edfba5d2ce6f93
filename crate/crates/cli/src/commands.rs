use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value};
use sring_core::harness::{
    armendariz_json, counterexample_search, generate_corpus, ideal_json, lits, verify_catalog,
    witness_json, CorpusConfig, Instance, StatementId, StatementReport, Variant, Verdict,
};
use sring_core::lattice::{
    enumerate_ideals, s_minimal_s_primes, s_spectrum, spectrum_intersection,
};
use sring_core::ring::{is_field, nilpotent_profile, unit_set, zero_divisor_set};
use sring_core::stheory::{
    is_s_integral_domain, is_s_pf, is_s_reduced, is_u_s_armendariz_up_to, is_u_s_reduced, localize,
    s_strongly_hopfian_profile,
};

use crate::args::{Cli, Command, Property, SearchArgs};
use crate::input::{load_corpus_dir, parse_ring_file, sha256_hex, InputError, LoadedInput};
use crate::manifest::RunManifest;
use crate::{CliError, EXIT_OK, EXIT_VIOLATED};

/// Executes a parsed command and returns the exit status.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let start = Instant::now();
    let (mut doc, code) = match &cli.command {
        Command::Check {
            property,
            input,
            search,
        } => check(cli, *property, input, search)?,
        Command::Spectrum { input } => (spectrum(cli, input)?, EXIT_OK),
        Command::Localize { input } => (localize_cmd(cli, input)?, EXIT_OK),
        Command::Describe { input } => (describe(cli, input)?, EXIT_OK),
        Command::Verify { .. } => return verify(cli, start, out, err),
        Command::Search { .. } => search(cli)?,
    };
    if cli.timings {
        doc["wall_clock_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = if cli.pretty {
        serde_json::to_string_pretty(&doc)
    } else {
        serde_json::to_string(&doc)
    };
    writeln!(out, "{}", text.expect("json")).map_err(CliError::io)?;
    Ok(code)
}

fn load(cli: &Cli, path: &Path) -> Result<LoadedInput, CliError> {
    parse_ring_file(path, cli.size_cap).map_err(CliError::from)
}

/// Ideal-theoretic commands assume a commutative ring.
fn commutative(input: &LoadedInput, what: &str) -> Result<(), CliError> {
    if input.instance.ring.is_commutative() {
        Ok(())
    } else {
        Err(sring_core::Error::NonCommutative(format!("{what} ({})", input.name)).into())
    }
}

fn manifest(cli: &Cli, command: &str, input: &LoadedInput) -> RunManifest {
    RunManifest::new(command, cli.size_cap, cli.ideal_cap).input(&input.name, &input.sha256)
}

fn check(
    cli: &Cli,
    property: Property,
    path: &Path,
    search: &SearchArgs,
) -> Result<(Value, i32), CliError> {
    let input = load(cli, path)?;
    if !matches!(property, Property::Reduced | Property::USArmendariz) {
        commutative(&input, property.name())?;
    }
    let mut m = manifest(cli, "check", &input);
    let Instance {
        ring: r,
        mult_set: s,
        ..
    } = &input.instance;
    let (verdict, witnesses, mode) = match property {
        Property::Reduced => {
            let p = nilpotent_profile(r);
            (
                p.is_reduced(),
                json!({"nilpotents": lits(r, p.nilpotents())}),
                None,
            )
        }
        Property::SReduced => {
            let c = is_s_reduced(r, s);
            (
                c.verdict,
                json!({
                    "per_element": witness_json(r, &c.witnesses),
                    "uniform_witness": c.uniform_witness.map(|e| r.literal(e)),
                    "failing_element": c.failing_element.map(|e| r.literal(e)),
                    "degenerate": c.degenerate,
                }),
                None,
            )
        }
        Property::USReduced => {
            let w = is_u_s_reduced(r, s);
            (
                w.is_some(),
                json!({"uniform_witness": w.map(|e| r.literal(e))}),
                None,
            )
        }
        Property::SIntegralDomain => {
            let w = is_s_integral_domain(r, s);
            (w.is_some(), json!({"s": w.map(|e| r.literal(e))}), None)
        }
        Property::SPf => {
            let v = is_s_pf(r, s);
            (
                v.verdict,
                json!({
                    "failing_element": v.failing_element.map(|e| r.literal(e)),
                    "failing_member": v.failing_member.map(|e| r.literal(e)),
                }),
                None,
            )
        }
        Property::SStronglyHopfian => {
            let profile = s_strongly_hopfian_profile(r, s);
            let entries: Vec<Value> = profile
                .iter()
                .map(|e| {
                    json!({
                        "element": r.literal(e.element),
                        "k": e.k,
                        "s": r.literal(e.s),
                        "stable_index": e.stable_index,
                        "shift_s": e.shift_s.map(|t| r.literal(t)),
                    })
                })
                .collect();
            (true, json!({"profile": entries}), None)
        }
        Property::USArmendariz => {
            let mut policy = CorpusConfig::default().armendariz;
            policy.seed = search.seed;
            if let Some(b) = search.budget {
                policy.budget = b;
            }
            if let Some(d) = search.max_degree {
                policy.exhaustive_degree = d;
                policy.sampled_degree = d;
            }
            if search.sampled {
                policy.exhaustive_limit = 0;
            }
            let (d, mode) = policy.mode_for(r.size());
            let v = is_u_s_armendariz_up_to(r, s, d, mode)?;
            m.seed = mode.seed();
            m.caps.max_degree = Some(d);
            m.caps.budget = Some(mode.budget());
            let mut w = armendariz_json(r, &v);
            let mode_json = w["mode"].take();
            if let Value::Object(o) = &mut w {
                o.remove("mode");
            }
            (v.uniform_holds(), w, Some(mode_json))
        }
    };
    let mut doc = json!({
        "manifest": m,
        "instance": input.instance.describe(),
        "predicate": property.name(),
        "verdict": verdict,
        "witnesses": witnesses,
    });
    if let Some(mode) = mode {
        doc["mode"] = mode;
    }
    Ok((doc, EXIT_OK))
}

fn spectrum(cli: &Cli, path: &Path) -> Result<Value, CliError> {
    let input = load(cli, path)?;
    commutative(&input, "spectrum")?;
    let Instance {
        ring: r,
        mult_set: s,
        ..
    } = &input.instance;
    let spec = s_spectrum(r, s, cli.ideal_cap)?;
    let minimal = s_minimal_s_primes(r, s, &spec);
    let meet = if spec.is_empty() {
        Value::Null
    } else {
        json!(lits(r, spectrum_intersection(r, &spec)?.members().iter()))
    };
    Ok(json!({
        "manifest": manifest(cli, "spectrum", &input),
        "instance": input.instance.describe(),
        "spectrum": spec.iter().map(|w| json!({
            "ideal": lits(r, w.ideal.members().iter()),
            "witness_s": r.literal(w.witness_s),
            "colon_prime": lits(r, w.colon_prime.members().iter()),
        })).collect::<Vec<_>>(),
        "s_minimal": minimal.iter().map(|p| lits(r, p.members().iter())).collect::<Vec<_>>(),
        "intersection": meet,
    }))
}

fn localize_cmd(cli: &Cli, path: &Path) -> Result<Value, CliError> {
    let input = load(cli, path)?;
    commutative(&input, "localize")?;
    let Instance {
        ring: r,
        mult_set: s,
        ..
    } = &input.instance;
    let loc = localize(r, s);
    let localized = match &loc.localized {
        Some(l) => json!({
            "ring": l.expr(),
            "size": l.size(),
            "is_field": is_field(l),
            "reduced": nilpotent_profile(l).is_reduced(),
            "canonical_map": r.elements()
                .map(|x| json!([r.literal(x), l.literal(loc.canonical_map[x])]))
                .collect::<Vec<_>>(),
            "inverses": loc.unit_images.iter()
                .map(|(&t, &inv)| json!({"s": r.literal(t), "inverse": l.literal(inv)}))
                .collect::<Vec<_>>(),
        }),
        None => json!({"size": 1, "zero_ring": true}),
    };
    Ok(json!({
        "manifest": manifest(cli, "localize", &input),
        "instance": input.instance.describe(),
        "torsion": ideal_json(r, &loc.torsion),
        "localized": localized,
        "degenerate": loc.degenerate,
    }))
}

fn describe(cli: &Cli, path: &Path) -> Result<Value, CliError> {
    let input = load(cli, path)?;
    let Instance {
        ring: r,
        mult_set: s,
        ..
    } = &input.instance;
    let nil = nilpotent_profile(r);
    let mut doc = json!({
        "manifest": manifest(cli, "describe", &input),
        "instance": input.instance.describe(),
        "size": r.size(),
        "commutative": r.is_commutative(),
        "is_field": is_field(r),
        "reduced": nil.is_reduced(),
        "nilpotents": lits(r, nil.nilpotents()),
        "units": lits(r, unit_set(r).iter()),
        "zero_divisors": lits(r, zero_divisor_set(r).iter()),
    });
    // Ideals and the S-conditions are only computed for commutative rings.
    if r.is_commutative() {
        let ideals = enumerate_ideals(r, cli.ideal_cap)?;
        let cert = is_s_reduced(r, s);
        doc["ideal_count"] = json!(ideals.len());
        doc["s_reduced"] = json!(cert.verdict);
        doc["u_s_reduced_witness"] = json!(cert.uniform_witness.map(|e| r.literal(e)));
        doc["s_integral_domain_witness"] = json!(is_s_integral_domain(r, s).map(|e| r.literal(e)));
    }
    Ok(doc)
}

fn corpus_config(
    seed: u64,
    count: usize,
    max_size: usize,
    cli: &Cli,
    max_degree: Option<usize>,
    budget: Option<u64>,
) -> CorpusConfig {
    let mut cfg = CorpusConfig {
        seed,
        count,
        size_cap: max_size,
        ideal_cap: cli.ideal_cap,
        ..CorpusConfig::default()
    };
    cfg.armendariz.seed = seed;
    if let Some(d) = max_degree {
        cfg.armendariz = cfg.armendariz.with_max_degree(d);
    }
    if let Some(b) = budget {
        cfg.armendariz.budget = b;
    }
    cfg
}

fn corpus_digest(corpus: &[Instance]) -> String {
    let text: Vec<String> = corpus.iter().map(|i| i.describe().to_string()).collect();
    sha256_hex(text.join("\n").as_bytes())
}

fn verify(
    cli: &Cli,
    start: Instant,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let Command::Verify {
        all,
        statement,
        corpus,
        seed,
        count,
        max_size,
        variant,
        max_degree,
        budget,
        out: out_path,
    } = &cli.command
    else {
        unreachable!()
    };
    let cfg = corpus_config(*seed, *count, *max_size, cli, *max_degree, *budget);
    let mut m = RunManifest::new("verify", cli.size_cap, cli.ideal_cap);
    m.seed = Some(*seed);
    m.caps.corpus_size_cap = Some(*max_size);
    m.caps.max_degree = *max_degree;
    m.caps.budget = Some(cfg.armendariz.budget);
    let instances = match corpus {
        Some(dir) => {
            let loaded = load_corpus_dir(dir, cli.size_cap)?;
            for l in &loaded {
                commutative(l, "verify")?;
                m = m.input(&l.name, &l.sha256);
            }
            loaded.into_iter().map(|l| l.instance).collect()
        }
        None => {
            let c = generate_corpus(&cfg)?;
            m = m.input("built-in corpus", &corpus_digest(&c));
            c
        }
    };
    let ids: Vec<StatementId> = if *all {
        StatementId::ALL.to_vec()
    } else {
        statement.clone()
    };
    let reports = verify_catalog(&ids, &instances, *variant, &cfg, cli.timings)?;

    let mut lines = Vec::with_capacity(reports.len() + 2);
    lines
        .push(json!({"manifest": m, "variant": variant, "instances": instances.len()}).to_string());
    for r in &reports {
        lines.push(serde_json::to_string(r).expect("json"));
    }
    let counts = tally(&ids, &reports);
    let violated: usize = counts.values().map(|c| c[2]).sum();
    let mut summary = json!({"summary": {
        "reports": reports.len(),
        "violated": violated,
        "counts": counts.iter().map(|(id, c)| json!({
            "statement": id, "holds": c[0], "hypothesis_not_met": c[1], "violated": c[2],
        })).collect::<Vec<_>>(),
    }});
    if cli.timings {
        summary["summary"]["wall_clock_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    lines.push(summary.to_string());
    let body = lines.join("\n") + "\n";
    let table = render_table(&counts, *variant);
    match out_path {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| CliError::io(format!("{}: {e}", p.display())))?;
            out.write_all(table.as_bytes()).map_err(CliError::io)?;
        }
        None => {
            out.write_all(body.as_bytes()).map_err(CliError::io)?;
            err.write_all(table.as_bytes()).map_err(CliError::io)?;
        }
    }
    Ok(if violated > 0 { EXIT_VIOLATED } else { EXIT_OK })
}

fn tally(ids: &[StatementId], reports: &[StatementReport]) -> BTreeMap<StatementId, [usize; 3]> {
    let mut counts: BTreeMap<StatementId, [usize; 3]> =
        ids.iter().map(|&id| (id, [0; 3])).collect();
    for r in reports {
        let slot = match r.verdict {
            Verdict::Holds => 0,
            Verdict::HypothesisNotMet => 1,
            Verdict::Violated => 2,
        };
        counts.get_mut(&r.statement).expect("listed statement")[slot] += 1;
    }
    counts
}

fn render_table(counts: &BTreeMap<StatementId, [usize; 3]>, variant: Variant) -> String {
    let mut s = format!(
        "{:<26} {:>6} {:>19} {:>9}   ({})\n",
        "statement",
        "holds",
        "hypothesis-not-met",
        "violated",
        variant.name()
    );
    for (id, c) in counts {
        s += &format!("{:<26} {:>6} {:>19} {:>9}\n", id.name(), c[0], c[1], c[2]);
    }
    s
}

fn search(cli: &Cli) -> Result<(Value, i32), CliError> {
    let Command::Search {
        statement,
        variant,
        max_size,
        seed,
        fresh,
        max_degree,
        budget,
    } = &cli.command
    else {
        unreachable!()
    };
    let cfg = corpus_config(*seed, 30, *max_size, cli, *max_degree, *budget);
    let corpus = generate_corpus(&cfg)?;
    let outcome = counterexample_search(*statement, *variant, &corpus, *fresh, &cfg)?;
    let mut m = RunManifest::new("search", cli.size_cap, cli.ideal_cap)
        .input("built-in corpus", &corpus_digest(&corpus));
    m.seed = Some(*seed);
    m.caps.corpus_size_cap = Some(*max_size);
    m.caps.max_degree = *max_degree;
    m.caps.budget = Some(cfg.armendariz.budget);
    let code = if *variant == Variant::Full && outcome.violations_found > 0 {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    };
    Ok((json!({"manifest": m, "search": outcome}), code))
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Io(m) | InputError::Parse(m) => CliError::usage(m),
            InputError::Core(e) => e.into(),
        }
    }
}
