// SPDX-License-Identifier: Apache-2.0

mod common;

use std::collections::{BTreeSet, HashSet};

use sumeq::io::{encode_graph6, write_report, ReportFormat};
use sumeq::survey::{canonical_form, enumerate_labeled_connected, survey_graph, RecordScope, SurveyError, SurveyInput};
use sumeq::{run_survey, Claim, ClaimOutcome, Graph, SurveyConfig};

fn edge_sets(graphs: impl IntoIterator<Item = Graph>) -> BTreeSet<Vec<(usize, usize)>> {
    graphs.into_iter().map(|g| g.edges()).collect()
}

#[test]
fn enumeration_matches_union_find_oracle() {
    for n in 3..=5 {
        let ours: Vec<Graph> = enumerate_labeled_connected(n).unwrap().collect();
        let oracle = common::connected_graphs_oracle(n);
        assert_eq!(ours.len(), oracle.len());
        assert_eq!(edge_sets(ours), edge_sets(oracle));
    }
    assert_eq!(enumerate_labeled_connected(5).unwrap().count(), 728);
    assert_eq!(enumerate_labeled_connected(6).unwrap().count(), 26_704);
}

#[test]
fn canonical_form_decides_isomorphism() {
    let graphs: Vec<Graph> = enumerate_labeled_connected(4).unwrap().collect();
    for a in &graphs {
        for b in &graphs {
            let same = canonical_form(a).unwrap() == canonical_form(b).unwrap();
            assert_eq!(same, common::isomorphic(a, b), "{a:?} {b:?}");
        }
    }
    for g in enumerate_labeled_connected(5).unwrap() {
        assert!(common::isomorphic(&canonical_form(&g).unwrap().to_graph(), &g));
    }
}

#[test]
fn unlabelled_class_counts() {
    for (n, classes) in [(3, 2), (4, 6), (5, 21), (6, 112)] {
        let forms: HashSet<_> = enumerate_labeled_connected(n).unwrap().map(|g| canonical_form(&g).unwrap()).collect();
        assert_eq!(forms.len(), classes, "n={n}");
    }
}

#[test]
fn four_vertex_survey() {
    let mut config = SurveyConfig::enumerate(4);
    config.dedup = true;
    let report = run_survey(&config).unwrap();
    let s = &report.summary;
    assert_eq!((s.graphs, s.connected, s.equilibria, s.violations), (38, 38, 26, 0));

    let p4 = canonical_form(&Graph::path(4)).unwrap();
    let losers: Vec<_> = report.records.iter().filter(|r| r.equilibrium == Some(false)).collect();
    assert_eq!(losers.len(), 12);
    for r in losers {
        let g = sumeq::io::parse_graph6(&r.graph6).unwrap();
        assert_eq!(canonical_form(&g).unwrap(), p4);
        assert_eq!(r.witness.map(|(_, d)| d), Some(-1));
    }

    let classes = s.equilibrium_classes.as_ref().unwrap();
    assert_eq!(classes.len(), 5);
    assert_eq!(classes.iter().map(|c| c.labelings).sum::<usize>(), 26);
    assert!(classes.iter().all(|c| c.diameter.value() <= Some(2)));
}

#[test]
fn record_scopes_filter_rows_only() {
    let mut config = SurveyConfig::enumerate(5);
    let all = run_survey(&config).unwrap();
    config.records = RecordScope::Equilibria;
    let eq = run_survey(&config).unwrap();
    config.records = RecordScope::Violations;
    let bad = run_survey(&config).unwrap();
    assert_eq!(all.summary, eq.summary);
    assert_eq!(all.summary, bad.summary);
    assert_eq!(all.records.len(), 728);
    assert_eq!(eq.records.len(), all.summary.equilibria);
    assert!(eq.records.iter().all(|r| r.equilibrium == Some(true)));
    assert!(bad.records.is_empty());
}

#[test]
fn graph6_input_matches_enumeration() {
    let lines: Vec<String> = enumerate_labeled_connected(5).unwrap().map(|g| encode_graph6(&g).unwrap()).collect();
    let mut config = SurveyConfig::enumerate(5);
    let enumerated = run_survey(&config).unwrap();
    config.input = SurveyInput::Graph6Lines(lines);
    config.workers = 3;
    let streamed = run_survey(&config).unwrap();
    assert_eq!(enumerated.summary, streamed.summary);
    assert_eq!(enumerated.records, streamed.records);
}

#[test]
fn graph6_input_errors_carry_line_numbers() {
    let mut config = SurveyConfig::enumerate(3);
    config.input = SurveyInput::Graph6Lines(vec!["C~".into(), String::new(), "C~~".into()]);
    match run_survey(&config) {
        Err(SurveyError::Graph6 { line, .. }) => assert_eq!(line, 3),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn disconnected_inputs_are_counted_but_not_judged() {
    let mut config = SurveyConfig::enumerate(3);
    config.input = SurveyInput::Graph6Lines(vec!["B?".into(), "Bw".into()]);
    let report = run_survey(&config).unwrap();
    assert_eq!((report.summary.graphs, report.summary.connected), (2, 1));
    let empty = &report.records[0];
    assert_eq!(empty.equilibrium, None);
    assert!(empty.claims.iter().all(|(_, o)| *o == ClaimOutcome::NotApplicable));
}

#[test]
fn survey_configuration_limits() {
    assert!(matches!(run_survey(&SurveyConfig::enumerate(2)), Err(SurveyError::NOutOfRange(2))));
    assert!(matches!(run_survey(&SurveyConfig::enumerate(9)), Err(SurveyError::NOutOfRange(9))));
    assert!(matches!(run_survey(&SurveyConfig::enumerate(8)), Err(SurveyError::LargeRunNotEnabled)));
    let mut config = SurveyConfig::enumerate(4);
    config.workers = 0;
    assert!(matches!(run_survey(&config), Err(SurveyError::NoWorkers)));
    config.workers = 1;
    config.claims.clear();
    assert!(matches!(run_survey(&config), Err(SurveyError::NoClaims)));
}

#[test]
fn claim_outcomes_on_known_graphs() {
    let record = survey_graph(&Graph::cycle(6), "EhEG".into(), &Claim::ALL);
    assert_eq!(record.equilibrium, Some(false));
    assert_eq!(record.violations().count(), 0);
    assert_eq!(outcome_of(&record.claims, Claim::DeltaNonpos), ClaimOutcome::Holds);
    assert_eq!(outcome_of(&record.claims, Claim::BipartiteKrs), ClaimOutcome::NotApplicable);

    let k23 = Graph::complete_bipartite(2, 3);
    let record = survey_graph(&k23, encode_graph6(&k23).unwrap(), &Claim::ALL);
    assert_eq!(record.equilibrium, Some(true));
    assert_eq!(outcome_of(&record.claims, Claim::BipartiteKrs), ClaimOutcome::Holds);
}

fn outcome_of(claims: &[(Claim, ClaimOutcome)], claim: Claim) -> ClaimOutcome {
    claims.iter().find(|(c, _)| *c == claim).unwrap().1.clone()
}

#[test]
fn reports_are_worker_independent() {
    let mut config = SurveyConfig::enumerate(5);
    config.dedup = true;
    let one = run_survey(&config).unwrap().to_document(&config);
    config.workers = 4;
    let four = run_survey(&config).unwrap().to_document(&config);
    for format in [ReportFormat::Json, ReportFormat::Csv] {
        assert_eq!(write_report(&one, format).unwrap(), write_report(&four, format).unwrap());
    }
}
