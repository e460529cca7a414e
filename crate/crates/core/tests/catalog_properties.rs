use num_traits::Signed;
use zetaforge::catalog::{
    ade_graph, bundled_catalog, dimer_graph, dimer_rh, quiver_graph, AdeFamily, AdeSpec,
};
use zetaforge::series::{log_derivative_series, mobius_invert};
use zetaforge::zeta::{analyze, spectrum, AnalysisOptions, Classification};
use zetaforge::{zeta_inverse, PartiallyDirectedGraph, RootOptions};

fn catalog_graphs() -> Vec<(String, PartiallyDirectedGraph)> {
    let mut out = Vec::new();
    for rec in bundled_catalog() {
        out.push((format!("quiver {}", rec.id), quiver_graph(&rec.quiver).unwrap()));
        out.push((format!("dimer {}", rec.id), dimer_graph(&rec.valencies)));
    }
    out
}

#[test]
fn symmetric_adjacency_has_real_spectrum() {
    for (name, g) in catalog_graphs() {
        if !g.is_undirected() {
            continue;
        }
        let s = spectrum(&g, RootOptions::default()).unwrap();
        for r in &s.roots {
            assert!(r.im.abs() < 1e-8, "{name}: eigenvalue {r:?}");
        }
    }
}

#[test]
fn euler_product_counts_are_nonnegative_integers() {
    for (name, g) in catalog_graphs() {
        let series = log_derivative_series(&zeta_inverse(&g).unwrap(), 10).unwrap();
        let pi = mobius_invert(&series).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(series.counts.iter().all(|n| !n.is_negative()), "{name}");
        assert!(pi.iter().all(|p| !p.is_negative()), "{name}");
    }
}

#[test]
fn radius_respects_branching_bounds() {
    for (name, g) in catalog_graphs() {
        let r = analyze(&g, AnalysisOptions::default()).unwrap();
        assert_eq!(r.radius, r.poles.min_modulus(), "{name}");
        assert!(r.kotani_sunada_ok, "{name}: radius {:?}, branching {:?}", r.radius, r.branching);
    }
}

#[test]
fn valency_criterion_equals_annulus_test() {
    for rec in bundled_catalog() {
        let c = analyze(&dimer_graph(&rec.valencies), AnalysisOptions::default())
            .unwrap()
            .classification;
        assert_eq!(dimer_rh(&rec.valencies), c == Classification::Strong, "row {}", rec.id);
        assert_ne!(c, Classification::Weak, "row {}: dimers have equal annuli", rec.id);
    }
}

#[test]
fn regular_graphs_are_never_only_weak() {
    let mut graphs = catalog_graphs();
    for n in (0..=10).filter(|&n| n != 1) {
        let spec = AdeSpec::new(AdeFamily::A, n, true).unwrap();
        graphs.push((spec.to_string(), ade_graph(spec).unwrap()));
    }
    for (name, g) in graphs {
        if g.is_undirected() && g.degree_profile().regular {
            let c = analyze(&g, AnalysisOptions::default()).unwrap().classification;
            assert_ne!(c, Classification::Weak, "{name}");
        }
    }
}

/// Six-regular once looped; the bound fails when 4 + 2cos(2pi/(n+1)) exceeds 2sqrt(5).
#[test]
fn looped_cycles_lose_the_hypothesis_from_four_on() {
    for n in (0..=8).filter(|&n| n != 1) {
        let g = ade_graph(AdeSpec::new(AdeFamily::A, n, true).unwrap()).unwrap();
        let r = analyze(&g, AnalysisOptions::default()).unwrap();
        let expected = if n < 4 { Classification::Strong } else { Classification::Violated };
        assert_eq!(r.classification, expected, "A{n} with loops");
        assert_eq!(r.ramanujan, Some(n < 4), "A{n} with loops");
    }
}

#[test]
fn looped_a1_shipped_reference() {
    // Double edge with two loops per node.
    let g = ade_graph(AdeSpec::new(AdeFamily::A, 1, true).unwrap()).unwrap();
    let z = zeta_inverse(&g).unwrap();
    let expected = [1, -8, 18, -8, -57, 112, 28, -208, 63, 152, -78, -40, 25];
    assert_eq!(z, zetaforge::PolyZ::from_i64s(&expected));
}
