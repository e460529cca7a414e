use num_bigint::BigInt;
use zetaforge::catalog::{ade_graph, bundled_catalog, dimer_graph, quiver_graph, AdeFamily, AdeSpec};
use zetaforge::census::{enumerate_primes, MAX_HORIZON};
use zetaforge::series::{log_derivative_series, mobius_invert};
use zetaforge::{zeta_inverse, PartiallyDirectedGraph};

fn check(name: &str, g: &PartiallyDirectedGraph, horizon: usize) {
    let census = enumerate_primes(g, horizon).unwrap_or_else(|e| panic!("{name}: {e}"));
    let series = log_derivative_series(&zeta_inverse(g).unwrap(), horizon).unwrap();
    let closed: Vec<BigInt> = census.closed.iter().map(|&n| BigInt::from(n)).collect();
    assert_eq!(series.counts, closed, "{name}: closed geodesics");
    let primes: Vec<BigInt> = census.primes.iter().map(|&n| BigInt::from(n)).collect();
    assert_eq!(mobius_invert(&series).unwrap(), primes, "{name}: prime classes");
}

#[test]
fn ade_diagrams_match_their_zeta() {
    let mut specs = Vec::new();
    for n in 0..=6 {
        specs.push((AdeFamily::A, n));
    }
    for n in 4..=8 {
        specs.push((AdeFamily::D, n));
    }
    for n in 6..=8 {
        specs.push((AdeFamily::E, n));
    }
    for (family, index) in specs {
        for loops in [false, true] {
            let Ok(spec) = AdeSpec::new(family, index, loops) else { continue };
            let horizon = if loops { 5 } else { MAX_HORIZON };
            check(&spec.to_string(), &ade_graph(spec).unwrap(), horizon);
        }
    }
}

#[test]
fn catalog_rows_match_their_zeta() {
    for rec in bundled_catalog().iter().take(12) {
        check(&format!("quiver {}", rec.id), &quiver_graph(&rec.quiver).unwrap(), 5);
        check(&format!("dimer {}", rec.id), &dimer_graph(&rec.valencies), 5);
    }
}

#[test]
fn mixed_graph_with_reciprocal_arrows() {
    let g = PartiallyDirectedGraph::from_pairs(3, &[(0, 1), (2, 2)], &[(1, 2), (2, 1), (2, 0)])
        .unwrap()
        .normalize();
    check("mixed", &g, 8);
}
