// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use serde_json::{json, Map, Value};
use sumeq::io::{encode_graph6, write_report, ReportDocument, ReportFormat, ReportKind};
use sumeq::structure::{self, is_bipartite, pendant_worlds};
use sumeq::survey::{RecordScope, SurveyInput};
use sumeq::theory::Eq2Case;
use sumeq::{
    decompose, is_equilibrium, run_dynamics, run_survey, Claim, Component, Deviation, DynamicsOutcome, Graph,
    GraphClass, InequalityReport, Rational, SurveyConfig,
};

use crate::input::load_graph;
use crate::{DynamicsArgs, GraphArgs, ObserverChoice, OutputFormat, Records, SurveyArgs, TheoryArgs};

fn emit(doc: &ReportDocument, format: ReportFormat, out: Option<&Path>) -> Result<()> {
    let bytes = write_report(doc, format)?;
    match out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn graph6_or_null(g: &Graph) -> Value {
    encode_graph6(g).map_or(Value::Null, Value::String)
}

fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

fn input_config(args: &GraphArgs) -> Value {
    json!({ "input": args.input.display().to_string() })
}

pub fn check(args: &GraphArgs) -> Result<ExitCode> {
    let g = load_graph(&args.input, args.format)?;
    let verdict = is_equilibrium(&g)?;
    match &verdict.witness {
        None => eprintln!("equilibrium"),
        Some((d, delta)) => {
            eprintln!("not an equilibrium: agent {} swaps {}->{} for cost change {delta}", d.agent, d.drop, d.add)
        }
    }
    let mut doc = ReportDocument::new(ReportKind::Check, input_config(args));
    doc.summary = Some(json!({
        "graph6": graph6_or_null(&g),
        "n": g.n(),
        "m": g.edge_count(),
        "equilibrium": verdict.is_equilibrium,
        "witness": verdict.witness.map(|(d, delta)| json!({"deviation": d.to_string(), "move": d, "delta": delta})),
        "per_agent_min": verdict.per_agent_min,
    }));
    emit(&doc, ReportFormat::Json, args.out.as_deref())?;
    Ok(if verdict.is_equilibrium { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub fn analyze(args: &GraphArgs) -> Result<ExitCode> {
    let g = load_graph(&args.input, args.format)?;
    let mut summary = Map::new();
    summary.insert("graph6".into(), graph6_or_null(&g));
    summary.insert("n".into(), g.n().into());
    summary.insert("m".into(), g.edge_count().into());
    summary.insert("connected".into(), g.is_connected().into());
    summary.insert("diameter".into(), json!(g.diameter()));
    if g.is_connected() {
        let d = decompose(&g)?;
        let teccs = d.nontrivial_teccs();
        let worlds: Vec<Value> =
            teccs.iter().map(|&h| json!({"component": h, "worlds": pendant_worlds(&g, h)})).collect();
        summary.insert("class".into(), json!(GraphClass::of(&g, &d)));
        summary.insert("bridges".into(), json!(d.bridges));
        summary.insert("cut_vertices".into(), json!(d.cut_vertices));
        summary.insert("teccs".into(), json!(teccs));
        summary.insert("blocks".into(), json!(d.blocks));
        summary.insert("pendant_worlds".into(), Value::Array(worlds));
        summary.insert("cycle_lengths".into(), json!(structure::cycle_lengths(&g).ok()));
    }
    let mut doc = ReportDocument::new(ReportKind::Analyze, input_config(args));
    doc.summary = Some(Value::Object(summary));
    emit(&doc, ReportFormat::Json, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn eq2_json(case: &Eq2Case<Rational>) -> Value {
    json!({
        "u": case.u,
        "closer": case.closer,
        "ratio": rational(&case.ratio),
        "holds": case.holds,
        "tight": case.tight,
        "tight_predicted": case.tight_predicted,
    })
}

fn inequalities_json(r: &InequalityReport) -> Value {
    json!({
        "observer": r.observer,
        "entry": r.entry,
        "z_size": r.z_size,
        "single_closer_size": r.single_closer_size,
        "eq1_lhs": rational(&r.eq1_lhs),
        "eq1_rhs": rational(&r.eq1_rhs),
        "eq1_holds": r.eq1_holds,
        "eq1_tight": r.eq1_tight,
        "eq2_cases": r.eq2_cases.iter().map(eq2_json).collect::<Vec<_>>(),
        "eq2_holds": r.eq2_holds,
        "eq3_lhs": rational(&r.eq3_lhs),
        "eq3_rhs": rational(&r.eq3_rhs),
        "eq3_holds": r.eq3_holds,
        "eq3_tight": r.eq3_tight,
        "eq3_tight_predicted": r.eq3_tight_predicted,
        "containment_holds": r.containment_holds,
        "delta_w_closed_form": rational(&r.delta_w_closed_form),
        "delta_w": rational(&r.delta_w),
        "bound": rational(&r.bound),
        "final_bound_holds": r.final_bound_holds,
    })
}

pub fn theory(args: &TheoryArgs) -> Result<ExitCode> {
    let g = load_graph(&args.graph.input, args.graph.format)?;
    let components = Component::all(&g)?;
    let Some(h) = components.get(args.component) else {
        bail!(
            "component index {} out of range: the graph has {} 2-edge-connected components with edges",
            args.component,
            components.len()
        );
    };
    let observers: Vec<usize> = match args.observer {
        ObserverChoice::All => (0..g.n()).collect(),
        ObserverChoice::Vertex(w) if w < g.n() => vec![w],
        ObserverChoice::Vertex(w) => bail!("observer {w} out of range for {} vertices", g.n()),
    };
    let bipartite = is_bipartite(&g).is_bipartite();
    if !bipartite {
        eprintln!("warning: graph is not bipartite; closed-form columns and inequality checks are omitted");
    }

    let aggregate = h.aggregate::<Rational>();
    let mut records = Vec::new();
    for &w in &observers {
        for arc in &aggregate.arcs {
            let mut row = Map::new();
            row.insert("observer".into(), w.into());
            row.insert("u".into(), arc.u.into());
            row.insert("v".into(), arc.v.into());
            row.insert("brute".into(), rational(&arc.per_observer[w]));
            if bipartite {
                let closed = h.lemma1_delta::<Rational>(w, arc.u, arc.v)?;
                row.insert("closed_form".into(), rational(&closed));
                row.insert("agree".into(), (closed == arc.per_observer[w]).into());
            }
            records.push(Value::Object(row));
        }
    }

    let mut summary = Map::new();
    summary.insert("component".into(), json!(h.members()));
    summary.insert("bipartite".into(), bipartite.into());
    summary.insert("component_diameter".into(), h.diameter().into());
    let delta_w: Map<String, Value> =
        observers.iter().map(|&w| (w.to_string(), rational(aggregate.delta_w(w)))).collect();
    summary.insert("delta_w".into(), Value::Object(delta_w));
    let swap_costs: Vec<Value> =
        aggregate.arcs.iter().map(|a| json!({"u": a.u, "v": a.v, "swap_cost": rational(&a.swap_cost)})).collect();
    summary.insert("swap_costs".into(), Value::Array(swap_costs));
    summary.insert("total".into(), rational(&aggregate.total));
    summary.insert("observer_total".into(), rational(&aggregate.observer_total()));
    summary.insert("identity_holds".into(), aggregate.identity_holds().into());
    if bipartite {
        let reports = observers
            .iter()
            .map(|&w| h.check_inequalities_with(w, &aggregate).map(|r| inequalities_json(&r)))
            .collect::<Result<Vec<_>, _>>()?;
        summary.insert("inequalities".into(), Value::Array(reports));
        let witness = h.strict_witness::<Rational>()?.map(|wit| {
            json!({
                "path_start": wit.path_start,
                "far_end": wit.far_end,
                "diameter": wit.diameter,
                "observer": wit.observer,
                "delta_w": rational(&wit.delta_w),
                "total": rational(&wit.total),
                "verified": wit.verified(),
            })
        });
        summary.insert("strict_witness".into(), witness.unwrap_or(Value::Null));
    }

    let config = json!({
        "input": args.graph.input.display().to_string(),
        "component": args.component,
        "observer": match args.observer {
            ObserverChoice::All => json!("all"),
            ObserverChoice::Vertex(w) => json!(w),
        },
    });
    let mut doc = ReportDocument::new(ReportKind::Theory, config);
    doc.records = records;
    doc.summary = Some(Value::Object(summary));
    emit(&doc, ReportFormat::Json, args.graph.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn move_json(step: usize, d: Deviation, delta: sumeq::CostDelta, after: &Graph) -> Value {
    json!({"step": step, "deviation": d.to_string(), "move": d, "delta": delta, "graph6": graph6_or_null(after)})
}

pub fn dynamics(args: &DynamicsArgs) -> Result<ExitCode> {
    let g = load_graph(&args.graph.input, args.graph.format)?;
    let trace = run_dynamics(&g, args.max_steps)?;
    let last = trace.last();
    let outcome = match trace.outcome {
        DynamicsOutcome::Converged => "converged",
        DynamicsOutcome::Cycled => "cycled",
        DynamicsOutcome::StepLimit => "step limit reached",
    };
    eprintln!("{outcome} after {} moves, final diameter {}", trace.moves.len(), last.diameter());
    let mut doc = ReportDocument::new(
        ReportKind::Dynamics,
        json!({"input": args.graph.input.display().to_string(), "max_steps": args.max_steps}),
    );
    doc.records = trace
        .moves
        .iter()
        .zip(&trace.states[1..])
        .enumerate()
        .map(|(i, (&(d, delta), after))| move_json(i + 1, d, delta, after))
        .collect();
    doc.summary = Some(json!({
        "outcome": trace.outcome,
        "steps": trace.moves.len(),
        "initial": graph6_or_null(&g),
        "final": graph6_or_null(last),
        "final_diameter": last.diameter(),
        "final_is_equilibrium": is_equilibrium(last)?.is_equilibrium,
    }));
    emit(&doc, ReportFormat::Json, args.graph.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

pub fn survey(args: &SurveyArgs) -> Result<ExitCode> {
    let input = match (&args.n, &args.g6) {
        (Some(n), _) => SurveyInput::Enumerate { n: *n as usize },
        (None, Some(path)) if path == &PathBuf::from("-") => {
            let text = crate::input::read_source(path)?;
            SurveyInput::Graph6Lines(text.lines().map(str::to_owned).collect())
        }
        (None, Some(path)) => SurveyInput::Graph6File(path.clone()),
        (None, None) => unreachable!("clap requires a source"),
    };
    let workers = match args.workers {
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let config = SurveyConfig {
        input,
        claims: Claim::parse_list(&args.claims)?,
        dedup: args.dedup,
        workers,
        records: match args.records {
            Records::All => RecordScope::All,
            Records::Equilibria => RecordScope::Equilibria,
            Records::Violations => RecordScope::Violations,
        },
        allow_large: args.allow_n8,
        progress: args.progress,
    };
    let report = run_survey(&config)?;
    let s = &report.summary;
    eprintln!(
        "{} graphs, {} connected, {} equilibria, {} with violations",
        s.graphs, s.connected, s.equilibria, s.violations
    );
    let format = match args.format {
        OutputFormat::Json => ReportFormat::Json,
        OutputFormat::Csv => ReportFormat::Csv,
    };
    emit(&report.to_document(&config), format, args.out.as_deref())?;
    Ok(if s.violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
