mod common;

use common::{explicit, graph};
use fsgraph::explorer::{
    component_count, components, distance, for_each_component, fs_girth, is_connected_fs, max_component_diameter,
};
use fsgraph::{Configuration, FsContext, Parity, SimpleGraph};
use proptest::prelude::*;

fn ctx(x: &SimpleGraph, y: &SimpleGraph) -> FsContext {
    FsContext::new(x.clone(), y.clone()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn components_match_explicit_graph(n in 2usize..=5, mx in any::<u64>(), my in any::<u64>()) {
        let (x, y) = (graph(n, mx), graph(n, my));
        let c = ctx(&x, &y);
        let e = explicit(&x, &y);
        let mut sizes: Vec<usize> = components(&c).unwrap().iter().map(|k| k.size()).collect();
        sizes.sort_unstable();
        prop_assert_eq!(&sizes, &e.component_sizes());
        prop_assert_eq!(component_count(&c).unwrap(), sizes.len());
        prop_assert_eq!(is_connected_fs(&c).unwrap(), sizes.len() == 1);
        prop_assert_eq!(max_component_diameter(&c).unwrap(), e.max_diameter());
        prop_assert_eq!(c.fs_edge_count().unwrap() as usize, e.edge_count());
    }

    #[test]
    fn girth_matches_explicit_graph_and_is_even(n in 3usize..=5, mx in any::<u64>(), my in any::<u64>()) {
        let (x, y) = (graph(n, mx), graph(n, my));
        let g = fs_girth(&ctx(&x, &y)).unwrap();
        prop_assert_eq!(g, explicit(&x, &y).girth());
        if let Some(g) = g {
            prop_assert_eq!(g % 2, 0);
        }
    }

    #[test]
    fn distance_matches_explicit_bfs(n in 2usize..=5, mx in any::<u64>(), my in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let (x, y) = (graph(n, mx), graph(n, my));
        let e = explicit(&x, &y);
        let (i, j) = ((a % e.states.len() as u64) as usize, (b % e.states.len() as u64) as usize);
        let s = Configuration::new(e.states[i].clone()).unwrap();
        let t = Configuration::new(e.states[j].clone()).unwrap();
        prop_assert_eq!(distance(&ctx(&x, &y), &s, &t).unwrap(), e.bfs(i)[j]);
    }

    #[test]
    fn swapping_roles_preserves_component_sizes(n in 2usize..=5, mx in any::<u64>(), my in any::<u64>()) {
        let (x, y) = (graph(n, mx), graph(n, my));
        let sizes = |c: &FsContext| {
            let mut s: Vec<usize> = components(c).unwrap().iter().map(|k| k.size()).collect();
            s.sort_unstable();
            s
        };
        prop_assert_eq!(sizes(&ctx(&x, &y)), sizes(&ctx(&y, &x)));
    }

    #[test]
    fn friendly_swaps_flip_parity(n in 2usize..=6, mx in any::<u64>(), my in any::<u64>(), r in any::<u64>()) {
        let (x, y) = (graph(n, mx), graph(n, my));
        let c = ctx(&x, &y);
        let total: u64 = (1..=n as u64).product();
        let s = Configuration::unrank(n, r % total);
        for t in c.neighbors(&s) {
            prop_assert_ne!(t.parity(), s.parity());
        }
    }
}

#[test]
fn disconnected_or_cut_vertex_pairs_are_disconnected() {
    let c = ctx(&SimpleGraph::path(3), &SimpleGraph::path(3));
    assert!(!is_connected_fs(&c).unwrap());
    let y = SimpleGraph::new(4, [(0, 1), (2, 3)]).unwrap();
    assert!(!is_connected_fs(&ctx(&SimpleGraph::complete(4), &y)).unwrap());
}

#[test]
fn complete_pair_is_connected_cayley_graph() {
    for n in 2..=5 {
        let c = ctx(&SimpleGraph::complete(n), &SimpleGraph::complete(n));
        assert!(is_connected_fs(&c).unwrap());
        let mut parities = [0usize; 2];
        for_each_component(&c, |k| {
            for s in k.configurations() {
                parities[(s.parity() == Parity::Odd) as usize] += 1;
            }
            Ok(())
        })
        .unwrap();
        assert_eq!(parities[0], parities[1]);
    }
}
