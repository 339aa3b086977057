use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use linkdecay_core::evaluation::{
    evaluate_with, survival_curve, temporal_split, write_survival_tsv, APResult,
};
use linkdecay_core::oracle::{check_closed_form_with, OracleOptions};
use linkdecay_core::{
    edge_lifetimes, evaluate_link_prediction, fit_exponential_half_life, generate, ingest_events,
    random_digraph, score_batch, Edge, GenConfig, IngestOptions, Model, ScoreSpec, SelfLoopPolicy,
    TemporalEdgeList,
};

use crate::args::*;
use crate::config::{is_stdio, Manifest, UsageError};

fn open_output(path: &Path) -> Result<Box<dyn Write>> {
    Ok(if is_stdio(path) {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        ))
    })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

impl InputArgs {
    fn options(&self) -> IngestOptions {
        IngestOptions {
            self_loops: match self.self_loops {
                SelfLoops::Skip => SelfLoopPolicy::Skip,
                SelfLoops::Fail => SelfLoopPolicy::Fail,
            },
            strict_deletes: self.strict_deletes,
        }
    }

    fn load(&self) -> Result<TemporalEdgeList> {
        let opts = self.options();
        let (tel, report) = if is_stdio(&self.input) {
            ingest_events(io::stdin().lock(), &opts)?
        } else {
            let file = File::open(&self.input)
                .with_context(|| format!("opening {}", self.input.display()))?;
            ingest_events(BufReader::new(file), &opts)?
        };
        for (what, lines) in [
            ("self-loop", &report.skipped_self_loops),
            ("delete of an absent edge", &report.ignored_deletes),
            ("add of a live edge", &report.redundant_adds),
        ] {
            if !lines.is_empty() {
                eprintln!(
                    "skipped {} {what} event(s), first on line {}",
                    lines.len(),
                    lines[0]
                );
            }
        }
        Ok(tel)
    }

    fn record(&self, m: &mut Manifest) {
        m.set_path("input", &self.input)
            .set("self-loops", self.self_loops.name())
            .set("strict-deletes", self.strict_deletes);
    }
}

impl SpecArgs {
    fn record(&self, m: &mut Manifest) {
        m.set("model", self.model)
            .set("measure", self.measure)
            .set("combo", self.combo)
            .set("adad-complement-weights", self.adad_complement_weights);
    }
}

fn last_time(tel: &TemporalEdgeList, time: Option<u64>) -> Result<u64> {
    match time.or(tel.last_time()) {
        Some(t) => Ok(t),
        None => bail!(linkdecay_core::LinkDecayError::EmptyEvents),
    }
}

pub fn run(command: Command) -> Result<()> {
    let name = command.name();
    let mut m = Manifest::new(name);
    match command {
        Command::Ingest(c) => ingest(c, &mut m),
        Command::Snapshot(c) => snapshot(c, &mut m),
        Command::Score(c) => score(c, &mut m),
        Command::Verify(c) => verify(c, &mut m),
        Command::Evaluate(c) => evaluate(c, &mut m),
        Command::EvaluateLp(c) => evaluate_lp(c, &mut m),
        Command::Survival(c) => survival(c, &mut m),
        Command::Gen(c) => gen(c, &mut m),
        Command::Sweep(c) => sweep(c, &mut m),
    }
}

fn ingest(c: IngestCmd, m: &mut Manifest) -> Result<()> {
    c.input.record(m);
    m.set_path("output", &c.output.output)
        .set_opt("ids", c.ids.as_ref().map(|p| p.display()));
    let tel = c.input.load()?;
    let mut out = open_output(&c.output.output)?;
    tel.write_events(&mut out)?;
    out.flush()?;
    if let Some(path) = &c.ids {
        let mut w = create(path)?;
        tel.ids().write_tsv(&mut w)?;
        w.flush()?;
    }
    m.emit(&c.output.output)
}

fn snapshot(c: SnapshotCmd, m: &mut Manifest) -> Result<()> {
    let tel = c.input.load()?;
    let t = last_time(&tel, c.time)?;
    c.input.record(m);
    m.set_path("output", &c.output.output).set("time", t);
    let g = tel.snapshot_at(t);
    let mut out = open_output(&c.output.output)?;
    for e in g.edges() {
        writeln!(out, "{}\t{}", tel.ids().name(e.src), tel.ids().name(e.dst))?;
    }
    out.flush()?;
    m.emit(&c.output.output)
}

fn read_pairs(path: &Path, tel: &TemporalEdgeList) -> Result<Vec<Edge>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut pairs = Vec::new();
    for (k, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 2 {
            bail!("{}:{}: expected `src dst`", path.display(), k + 1);
        }
        let id = |tok: &str| {
            tel.ids()
                .id(tok)
                .with_context(|| format!("{}:{}: unknown node {tok:?}", path.display(), k + 1))
        };
        pairs.push(Edge::new(id(fields[0])?, id(fields[1])?));
    }
    Ok(pairs)
}

fn score(c: ScoreCmd, m: &mut Manifest) -> Result<()> {
    let tel = c.input.load()?;
    let t = last_time(&tel, c.time)?;
    c.input.record(m);
    m.set_path("output", &c.output.output).set("time", t);
    c.spec.record(m);
    m.set_opt("pairs", c.pairs.as_ref().map(|p| p.display()));
    let g = tel.snapshot_at(t);
    let pairs = match &c.pairs {
        Some(path) => read_pairs(path, &tel)?,
        None => g.edges().collect(),
    };
    let scored = score_batch(&g, &pairs, c.spec.spec())?;
    let mut out = open_output(&c.output.output)?;
    writeln!(out, "src\tdst\tscore")?;
    for s in scored {
        writeln!(
            out,
            "{}\t{}\t{}",
            tel.ids().name(s.edge.src),
            tel.ids().name(s.edge.dst),
            s.score
        )?;
    }
    out.flush()?;
    m.emit(&c.output.output)
}

fn verify(c: VerifyCmd, m: &mut Manifest) -> Result<()> {
    let graph = match &c.input {
        Some(path) => {
            let input = InputArgs {
                input: path.clone(),
                self_loops: SelfLoops::Skip,
                strict_deletes: false,
            };
            let tel = input.load()?;
            m.set_path("input", path);
            tel.snapshot_at(last_time(&tel, None)?)
        }
        None => {
            let seed = c.seed.ok_or_else(|| {
                UsageError("verify without --input draws a random graph and needs --seed".into())
            })?;
            m.set("nodes", c.nodes).set("density", c.density);
            random_digraph(c.nodes, c.density, seed)?
        }
    };
    let seed = c.seed.unwrap_or(0);
    m.set_path("output", &c.output.output)
        .set("measure", c.measure)
        .set("combo", c.combo)
        .set("adad-complement-weights", c.adad_complement_weights)
        .set("pairs", c.pairs.name())
        .set("seed", seed)
        .set("sample-size", c.sample_size)
        .set("complement-limit", c.complement_limit);
    let spec = ScoreSpec {
        adad_complement_weights: c.adad_complement_weights,
        ..ScoreSpec::new(Model::ComplementNetwork, c.measure, c.combo)
    };
    let opts = OracleOptions {
        seed,
        sample_size: c.sample_size,
        complement_limit: c.complement_limit,
    };
    let report = check_closed_form_with(&graph, spec, c.pairs.selection(), &opts)?;
    let mut out = open_output(&c.output.output)?;
    out.write_all(report.to_kv().as_bytes())?;
    out.flush()?;
    m.emit(&c.output.output)
}

fn write_ranking(path: &Path, tel: &TemporalEdgeList, result: &APResult) -> Result<()> {
    let mut w = create(path)?;
    writeln!(w, "src\tdst\tscore\tlabel\trank")?;
    for (k, item) in result.ranking.iter().enumerate() {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}",
            tel.ids().name(item.edge.src),
            tel.ids().name(item.edge.dst),
            item.score,
            item.label,
            k + 1
        )?;
    }
    w.flush()?;
    Ok(())
}

fn evaluate(c: EvaluateCmd, m: &mut Manifest) -> Result<()> {
    let seed = c.seed.expect("required by the parser");
    c.input.record(m);
    m.set_path("output", &c.output.output);
    c.spec.record(m);
    m.set("fraction", c.fraction)
        .set("seed", seed)
        .set("ties", c.ties.name())
        .set_opt("ranking", c.ranking.as_ref().map(|p| p.display()));
    let tel = c.input.load()?;
    let run = evaluate_with(&tel, c.spec.spec(), c.fraction, seed, c.ties.tie_break())?;
    if let Some(short) = run.split.zero_shortfall {
        eprintln!(
            "warning: only {} surviving edges for {} decayed ones; zero test set is smaller",
            short.available, short.wanted
        );
    }
    let mut out = open_output(&c.output.output)?;
    writeln!(out, "ap={}", run.result.ap)?;
    writeln!(out, "positives={}", run.result.positives)?;
    writeln!(out, "negatives={}", run.split.zero_test_set.len())?;
    writeln!(out, "t1={}", run.split.t1)?;
    writeln!(out, "t_end={}", run.split.t_end)?;
    writeln!(out, "seed={seed}")?;
    writeln!(out, "spec={}", c.spec.spec())?;
    out.flush()?;
    if let Some(path) = &c.ranking {
        write_ranking(path, &tel, &run.result)?;
    }
    m.emit(&c.output.output)
}

fn evaluate_lp(c: EvaluateLpCmd, m: &mut Manifest) -> Result<()> {
    let seed = c.seed.expect("required by the parser");
    c.input.record(m);
    m.set_path("output", &c.output.output)
        .set("measure", c.measure)
        .set("combo", c.combo)
        .set("fraction", c.fraction)
        .set("seed", seed);
    let tel = c.input.load()?;
    let result = evaluate_link_prediction(&tel, c.measure, c.combo, c.fraction, seed)?;
    let mut out = open_output(&c.output.output)?;
    writeln!(out, "ap={}", result.ap)?;
    writeln!(out, "positives={}", result.positives)?;
    writeln!(out, "negatives={}", result.ranking.len() - result.positives)?;
    writeln!(out, "seed={seed}")?;
    out.flush()?;
    m.emit(&c.output.output)
}

fn survival(c: SurvivalCmd, m: &mut Manifest) -> Result<()> {
    c.input.record(m);
    m.set_path("output", &c.output.output)
        .set_opt("curve", c.curve.as_ref().map(|p| p.display()));
    let tel = c.input.load()?;
    let lifetimes = edge_lifetimes(&tel);
    let fit = fit_exponential_half_life(&lifetimes)?;
    let mut out = open_output(&c.output.output)?;
    writeln!(out, "half_life={}", fit.half_life)?;
    writeln!(out, "rate={}", fit.rate)?;
    writeln!(out, "lifetimes={}", fit.lifetimes_used)?;
    writeln!(out, "censored={}", fit.censored)?;
    out.flush()?;
    if let Some(path) = &c.curve {
        let mut w = create(path)?;
        write_survival_tsv(&survival_curve(&lifetimes), &mut w)?;
        w.flush()?;
    }
    m.emit(&c.output.output)
}

fn gen(c: GenCmd, m: &mut Manifest) -> Result<()> {
    let cfg = GenConfig {
        n_nodes: c.n_nodes,
        n_add_events: c.n_add_events,
        attach_exponent: c.attach_exponent,
        decay_half_life: c.decay_half_life,
        decay_bias: c.decay_bias,
        deletion_share: c.deletion_share,
        hazard_multiplier: c.hazard_multiplier,
        closure_probability: c.closure_probability,
        seed: c.seed.expect("required by the parser"),
    };
    m.set_path("output", &c.output.output);
    for (k, v) in cfg.to_pairs() {
        m.set(k, v);
    }
    let tel = generate(&cfg)?;
    let mut out = open_output(&c.output.output)?;
    tel.write_events(&mut out)?;
    out.flush()?;
    m.emit(&c.output.output)
}

fn sweep(c: SweepCmd, m: &mut Manifest) -> Result<()> {
    let seed = c.seed.expect("required by the parser");
    c.input.record(m);
    m.set_path("output", &c.output.output)
        .set("fraction", c.fraction)
        .set("seed", seed)
        .set("ties", c.ties.name())
        .set("adad-complement-weights", c.adad_complement_weights);
    let tel = c.input.load()?;
    let split = temporal_split(&tel, c.fraction, seed)?;
    let specs: Vec<ScoreSpec> = ScoreSpec::all()
        .into_iter()
        .map(|s| ScoreSpec {
            adad_complement_weights: c.adad_complement_weights,
            ..s
        })
        .collect();
    let tie_break = c.ties.tie_break();
    let rows: Vec<(ScoreSpec, APResult)> = specs
        .par_iter()
        .map(|&spec| split.score_with(spec, tie_break).map(|r| (spec, r)))
        .collect::<linkdecay_core::Result<_>>()?;
    let mut out = open_output(&c.output.output)?;
    writeln!(out, "model\tmeasure\tcombo\tap\tpositives")?;
    for (spec, r) in rows {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            spec.model, spec.measure, spec.combo, r.ap, r.positives
        )?;
    }
    out.flush()?;
    m.emit(&c.output.output)
}
