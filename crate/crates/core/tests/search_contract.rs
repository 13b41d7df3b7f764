use adaptivity_core::oracle::HiddenDag;
use adaptivity_core::partition::nested_ceiling_div;
use adaptivity_core::search::{adaptive_search, adaptive_search_bounded, run_with_checks, Phase, SearchConfig};
use adaptivity_core::synth::{generate_er_styled, generate_gnp_union_tree, generate_tree_like};
use adaptivity_core::verify::{brute_force_min_verifying_set, covered_edges, verification_number_atomic};

fn cohort() -> Vec<HiddenDag> {
    let mut out = Vec::new();
    for seed in 0..20u64 {
        for n in [12usize, 30, 60] {
            out.push(generate_er_styled(n, 0.1, seed).unwrap());
            out.push(generate_gnp_union_tree(n, 0.05, seed).unwrap());
            out.push(generate_tree_like(n, 0.4, 0.2, 0.5, seed).unwrap());
        }
    }
    out
}

#[test]
fn components_shrink_in_cliques_every_step() {
    for h in cohort() {
        let n = h.n();
        for r in 2..=4 {
            let cfg = SearchConfig::atomic(r);
            let t = adaptive_search(&h, &cfg).unwrap();
            let l = t.width as u64;
            for round in &t.rounds {
                let cap = nested_ceiling_div(n as u64, &vec![l + 1; round.step - 1]) as usize;
                for c in &round.components {
                    assert!(c.cliques <= cap, "n = {n}, r = {r}, step {}: {} cliques > {cap}", round.step, c.cliques);
                }
            }
        }
    }
}

#[test]
fn per_step_cost_within_three_width_lower_bounds() {
    let mut worst = 0.0f64;
    for h in cohort() {
        for r in 1..=4 {
            let t = adaptive_search(&h, &SearchConfig::atomic(r)).unwrap();
            for (cost, lb) in t.step_costs().into_iter().zip(t.step_lower_bounds()) {
                let Some(lb) = lb else { continue };
                assert!(cost <= 3 * t.width * lb, "cost {cost} > 3 * {} * {lb}", t.width);
                worst = worst.max(cost as f64 / (2 * t.width * lb + t.width) as f64);
            }
        }
    }
    assert!(worst > 0.0);
}

#[test]
fn never_fewer_than_the_verification_number() {
    for h in cohort() {
        let (nu1, _) = verification_number_atomic(h.dag()).unwrap();
        for r in [1, 2, 3, h.n()] {
            for cfg in [SearchConfig::atomic(r), SearchConfig::optimized(r, 1)] {
                let t = if cfg.checks_enabled { run_with_checks(&h, &cfg) } else { adaptive_search(&h, &cfg) }.unwrap();
                assert!(t.total_interventions >= nu1);
                assert!(t.total_rounds_used <= r);
                assert_eq!(t.final_graph, *h.dag());
            }
        }
    }
}

#[test]
fn bounded_rounds_respect_the_size() {
    for h in cohort() {
        for k in [2, 3, 5] {
            let t = adaptive_search_bounded(&h, &SearchConfig::bounded(3, k)).unwrap();
            assert!(t.interventions().iter().all(|s| s.len() <= k));
            assert_eq!(t.final_graph, *h.dag());
            assert!(matches!(t.rounds.last().map(|r| r.phase), Some(Phase::Final) | Some(Phase::Partition)));
        }
    }
}

#[test]
fn verification_number_matches_exhaustive_search() {
    for seed in 0..40u64 {
        for n in [5usize, 6, 8] {
            for h in [
                generate_er_styled(n, 0.3, seed).unwrap(),
                generate_gnp_union_tree(n, 0.2, seed).unwrap(),
                generate_tree_like(n, 0.4, 0.2, 0.5, seed).unwrap(),
            ] {
                assert!(covered_edges(h.dag()).unwrap().is_forest());
                let (nu1, witness) = verification_number_atomic(h.dag()).unwrap();
                assert_eq!(witness.len(), nu1);
                assert_eq!(brute_force_min_verifying_set(&h, 1).unwrap(), nu1);
            }
        }
    }
}
