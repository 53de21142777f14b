use fsgraph::explorer::ComponentGraph;
use fsgraph::markov::{
    empirical_tv, mixing_time, stationary, transition_matrix, tv_curve, ChainState, StepOutcome,
};
use fsgraph::{Configuration, FsContext, SimpleGraph};
use proptest::prelude::*;

fn component(n: usize, mx: u64, my: u64, r: u64) -> (FsContext, ComponentGraph) {
    let m = (1u64 << (n * (n - 1) / 2)) - 1;
    let ctx = FsContext::new(SimpleGraph::from_mask(n, mx & m), SimpleGraph::from_mask(n, my & m)).unwrap();
    let total: u64 = (1..=n as u64).product();
    let comp = ComponentGraph::build(&ctx, &Configuration::unrank(n, r % total)).unwrap();
    (ctx, comp)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stationary_is_degree_proportional(n in 2usize..=5, mx in any::<u64>(), my in any::<u64>(), r in any::<u64>()) {
        let (ctx, comp) = component(n, mx, my, r);
        let p = transition_matrix(&ctx, &comp).unwrap();
        for i in 0..comp.size() {
            prop_assert!((p.row(i).sum() - 1.0).abs() <= 1e-12);
        }
        let pi = stationary(&p).unwrap();
        let total: f64 = (0..comp.size()).map(|i| comp.degree(i).max(1) as f64).sum();
        for i in 0..comp.size() {
            prop_assert!((pi[i] - comp.degree(i).max(1) as f64 / total).abs() < 1e-9);
        }
        let moved = nalgebra::RowDVector::from_vec(pi.clone()) * &p;
        for i in 0..comp.size() {
            prop_assert!((moved[i] - pi[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn tv_curve_is_monotone_and_agrees_with_mixing_time(n in 2usize..=4, mx in any::<u64>(), my in any::<u64>(), r in any::<u64>()) {
        let (ctx, comp) = component(n, mx, my, r);
        let p = transition_matrix(&ctx, &comp).unwrap();
        let curve = tv_curve(&p, 400).unwrap();
        prop_assert!(curve.windows(2).all(|w| w[1] <= w[0] + 1e-12));
        let eps = 0.25;
        if let Some(first) = curve.iter().position(|&v| v <= eps) {
            prop_assert_eq!(mixing_time(&p, eps).unwrap(), first as u64);
        }
    }

    #[test]
    fn seeded_chains_are_reproducible(seed in any::<u64>()) {
        let ctx = FsContext::new(SimpleGraph::cycle(5).unwrap(), SimpleGraph::complete(5)).unwrap();
        let mut a = ChainState::new(ctx.clone(), Configuration::identity(5), seed).unwrap();
        let mut b = ChainState::new(ctx, Configuration::identity(5), seed).unwrap();
        let mut c = a.split(1);
        let (sa, sb, sc) = (a.run(300), b.run(300), c.run(300));
        prop_assert_eq!(&sa, &sb);
        prop_assert_eq!(sa.steps, sa.swaps + sa.stays + sa.frozen);
        prop_assert_ne!((sa.swaps, sa.end), (sc.swaps, sc.end));
    }
}

#[test]
fn frozen_configuration_stays_put() {
    let ctx = FsContext::new(SimpleGraph::path(3), SimpleGraph::empty(3)).unwrap();
    let mut chain = ChainState::new(ctx.clone(), Configuration::identity(3), 1).unwrap();
    assert_eq!(chain.step(), StepOutcome::Frozen);
    assert_eq!(chain.run(10).frozen, 10);
    assert_eq!(chain.current(), &Configuration::identity(3));
    let comp = ComponentGraph::build(&ctx, &Configuration::identity(3)).unwrap();
    let p = transition_matrix(&ctx, &comp).unwrap();
    assert_eq!(p[(0, 0)], 1.0);
}

#[test]
fn empirical_law_approaches_stationary() {
    let ctx = FsContext::new(SimpleGraph::cycle(4).unwrap(), SimpleGraph::star(4)).unwrap();
    let start = Configuration::identity(4);
    let comp = ComponentGraph::build(&ctx, &start).unwrap();
    let far = empirical_tv(&ctx, &comp, &start, 200, 4000, 11).unwrap();
    assert!(far.tv < 4.0 * far.noise_floor, "{far:?}");
    let near = empirical_tv(&ctx, &comp, &start, 1, 4000, 11).unwrap();
    assert!(near.tv > 0.5, "{near:?}");
}
