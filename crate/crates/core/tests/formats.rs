mod common;

use common::{corpus_certificates, format_corpus};
use trichrome::certificate::{parse_certificate, Certificate, ContractionStep, Justification};
use trichrome::dimacs::{parse_dimacs, write_dimacs, write_dimacs_with_comments};
use trichrome::graph::Graph;

fn same_edges(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edges().eq(b.edges())
}

fn nested_steps(steps: &[ContractionStep]) -> usize {
    steps
        .iter()
        .map(|s| match &s.justification {
            Justification::Diamond { .. } => 0,
            Justification::NestedEdge(c) => 1 + nested_steps(&c.steps),
            Justification::NestedTadpole { nested, .. } => 1 + nested_steps(&nested.steps),
        })
        .sum()
}

#[test]
fn dimacs_write_parse_is_bit_exact() {
    for g in format_corpus() {
        let text = write_dimacs(&g);
        let back = parse_dimacs(&text).unwrap();
        assert!(back.warnings.is_empty());
        assert!(same_edges(&g, &back.graph));
        assert_eq!(write_dimacs(&back.graph), text);
        let noted = write_dimacs_with_comments(&g, &["gen model=x".into(), String::new()]);
        let back = parse_dimacs(&noted).unwrap();
        assert_eq!(write_dimacs_with_comments(&back.graph, &back.comments), noted);
    }
}

#[test]
fn contracted_graphs_are_written_densely() {
    let g = trichrome::graph::named::wheel(5);
    let (h, _) = g.contracted(trichrome::graph::VertexId(1), trichrome::graph::VertexId(3)).unwrap();
    let text = write_dimacs(&h);
    assert!(text.starts_with("p edge 5 "));
    assert_eq!(write_dimacs(&parse_dimacs(&text).unwrap().graph), text);
}

#[test]
fn certificate_write_parse_is_bit_exact() {
    let certs = corpus_certificates();
    let (mut col, mut uncol, mut nested) = (0, 0, 0);
    for c in &certs {
        let text = c.to_text();
        let back = parse_certificate(&text).unwrap();
        assert_eq!(&back, c);
        assert_eq!(back.to_text(), text);
        match c {
            Certificate::Coloring(_) => col += 1,
            Certificate::Uncolorability(u) => {
                uncol += 1;
                nested += nested_steps(&u.steps);
            }
        }
    }
    assert!(col > 50 && uncol > 50 && nested > 0, "{col} colorings, {uncol} refutations, {nested} nested steps");
}

#[test]
fn malformed_certificates_are_rejected() {
    for bad in [
        "",
        "cert uncol 1\nk4 1 2 3 4\n",
        "cert uncol 0\nk4 1 2 3\n",
        "cert uncol 1\nstep 1 2 diamond 3\nk4 1 2 3 4\n",
        "cert uncol 1\nstep 1 2 nested-edge {\ncert uncol 0\nk4 1 2 3 4\n",
        "cert col\nclass 4 1 2\n",
        "cert col\nclass 1 0\n",
        "cert maybe\n",
    ] {
        assert!(parse_certificate(bad).is_err(), "accepted {bad:?}");
    }
}
