use proptest::prelude::*;
use stabmatch_core::fluid::{pair_prob_approx, s_rank_approx, unmatched_prob_node};
use stabmatch_core::metrics::{
    aspl, clustering, empirical_acceptable_rank, empirical_distance_ccdf, empirical_pair_dist,
    empirical_rank_dist, mean_local_clustering, sup_distance, DistanceHistogram, PairHistogram,
    RankHistogram,
};
use stabmatch_core::{
    stable_configuration, AcceptanceGraph, Configuration, GenSpec, Instance, KindSpec, Marks, Norm,
    PreferenceKind,
};

fn relabel(conf: &Configuration, perm: &[usize]) -> Configuration {
    let mut lists = vec![Vec::new(); conf.n()];
    for i in 1..=conf.n() {
        lists[perm[i - 1] - 1] = conf.mates(i).map(|j| perm[j - 1]).collect();
    }
    Configuration::from_mate_lists(&lists)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graph_statistics_ignore_labels(
        n in 3usize..120,
        b in 1u32..=6,
        seed in any::<u64>(),
        shuffle in Just(()).prop_perturb(|_, mut rng| rng.next_u64()),
    ) {
        let inst = GenSpec::new(n, 0.3, b, KindSpec::Geometric { dim: 2, norm: Norm::Taxicab }, seed)
            .unwrap()
            .instance(0)
            .unwrap();
        let conf = stable_configuration(&inst);
        let mut perm: Vec<usize> = (1..=n).collect();
        let mut state = shuffle | 1;
        for k in (1..n).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            perm.swap(k, (state % (k as u64 + 1)) as usize);
        }
        let moved = relabel(&conf, &perm);
        prop_assert_eq!(aspl(&conf), aspl(&moved));
        prop_assert_eq!(clustering(&conf), clustering(&moved));
        prop_assert!((mean_local_clustering(&conf) - mean_local_clustering(&moved)).abs() < 1e-12);
    }

    #[test]
    fn empirical_curves_are_ccdfs(n in 2usize..50, p in 0.0f64..=1.0, b in 1u32..=3, seed in any::<u64>()) {
        let spec = GenSpec::new(n, p, b, KindSpec::RandomAcyclic, seed).unwrap();
        let pairs: Vec<_> = (0..3)
            .map(|k| {
                let inst = spec.instance(k).unwrap();
                let conf = stable_configuration(&inst);
                (inst, conf)
            })
            .collect();
        for slot in 1..=b as usize {
            let c = empirical_rank_dist(pairs.iter().map(|(i, c)| (i, c)), slot).unwrap();
            prop_assert_eq!(c.ccdf[0], 1.0);
            prop_assert_eq!(c.n_samples, 3 * n as u64);
            prop_assert!((c.mass.iter().sum::<f64>() + c.unmatched - 1.0).abs() < 1e-12);
            for w in c.ccdf.windows(2) {
                prop_assert!(w[1] <= w[0]);
            }
        }
    }
}

#[test]
fn empirical_examples() {
    let empty = GenSpec::new(20, 0.0, 1, KindSpec::NodeBased, 1)
        .unwrap()
        .instance(0)
        .unwrap();
    let conf = stable_configuration(&empty);
    let c = empirical_rank_dist([(&empty, &conf)], 1).unwrap();
    assert!(c.ccdf.iter().all(|&v| v == 1.0));

    let pair = GenSpec::new(2, 1.0, 1, KindSpec::NodeBased, 1)
        .unwrap()
        .instance(0)
        .unwrap();
    let conf = stable_configuration(&pair);
    assert_eq!(
        empirical_rank_dist([(&pair, &conf)], 1).unwrap().mass,
        vec![1.0]
    );
    assert_eq!(
        empirical_acceptable_rank([(&pair, &conf)]).unwrap().mass,
        vec![1.0]
    );

    let tri = GenSpec::new(3, 1.0, 1, KindSpec::NodeBased, 1).unwrap();
    let runs: Vec<_> = (0..4)
        .map(|k| {
            let inst = tri.instance(k).unwrap();
            let conf = stable_configuration(&inst);
            (inst, conf)
        })
        .collect();
    let c = empirical_pair_dist(runs.iter().map(|(i, c)| (i, c)), 1, 1).unwrap();
    assert_eq!(c.mass, vec![0.0, 1.0, 0.0]);
    assert!(empirical_pair_dist([(&runs[0].0, &runs[0].1)], 4, 1).is_err());
}

#[test]
fn distance_curve_steps_at_the_realized_distance() {
    let inst = Instance::new(
        PreferenceKind::Geometric {
            dim: 1,
            norm: Norm::Taxicab,
        },
        Marks::Points {
            dim: 1,
            norm: Norm::Taxicab,
            coords: vec![0.1, 0.4],
        },
        AcceptanceGraph::complete(2),
        vec![1, 1],
    )
    .unwrap();
    let conf = stable_configuration(&inst);
    let c = empirical_distance_ccdf([(&inst, &conf)], 50).unwrap();
    assert_eq!(c.ccdf[0], 1.0);
    // Bins of width 0.01 over [0, 0.5]; the distance 0.3 lands in bin 29 or 30.
    let step = c.ccdf.iter().position(|&v| v == 0.0).unwrap();
    assert!((29..=31).contains(&step), "step at {step}");
    assert!((c.support[step] - 0.3).abs() <= 0.011);

    let node = GenSpec::new(5, 1.0, 1, KindSpec::NodeBased, 1)
        .unwrap()
        .instance(0)
        .unwrap();
    let conf = stable_configuration(&node);
    assert!(DistanceHistogram::new(1, 10).observe(&node, &conf).is_err());
}

#[test]
fn unmatched_mass_follows_degree_law() {
    let (n, p) = (1000, 0.01);
    let d = p * (n as f64 - 1.0);
    let spec = GenSpec::new(n, p, 1, KindSpec::RandomAcyclic, 17).unwrap();
    let mut h = RankHistogram::new();
    for k in 0..40 {
        let inst = spec.instance(k).unwrap();
        h.observe(&inst, &stable_configuration(&inst)).unwrap();
    }
    let c = h.curve(1).unwrap();
    assert!(
        (c.unmatched - 1.0 / (d + 1.0)).abs() < 0.01,
        "{}",
        c.unmatched
    );
    let model: Vec<f64> = (1..=n).map(|k| s_rank_approx(k as f64, p)).collect();
    assert!(sup_distance(&c.ccdf, &model) < 0.015);
}

#[test]
fn more_instances_track_the_model_better() {
    let (n, p) = (600, 0.02);
    let spec = GenSpec::new(
        n,
        p,
        1,
        KindSpec::Geometric {
            dim: 2,
            norm: Norm::Max,
        },
        5,
    )
    .unwrap();
    let model: Vec<f64> = (1..=n).map(|k| s_rank_approx(k as f64, p)).collect();
    let mut h = RankHistogram::new();
    let mut sups = Vec::new();
    for k in 0..64 {
        let inst = spec.instance(k).unwrap();
        h.observe(&inst, &stable_configuration(&inst)).unwrap();
        if matches!(k + 1, 4 | 64) {
            sups.push(sup_distance(&h.curve(1).unwrap().ccdf, &model));
        }
    }
    assert!(sups[1] < sups[0], "{sups:?}");
}

#[test]
fn node_pair_frequencies_within_binomial_error() {
    let (n, i, runs) = (2000, 201, 200);
    let p = 5.0 / (n as f64 - 1.0);
    let spec = GenSpec::new(n, p, 1, KindSpec::NodeBased, 201).unwrap();
    let mut h = PairHistogram::new(i, 1);
    for k in 0..runs {
        let inst = spec.instance(k).unwrap();
        h.observe(&inst, &stable_configuration(&inst)).unwrap();
    }
    let c = h.curve();
    assert_eq!(c.mass[i - 1], 0.0);
    let mut model_ccdf = Vec::with_capacity(n + 1);
    let mut tail = 1.0;
    for j in 1..=n {
        model_ccdf.push(tail);
        let q = if j == i {
            0.0
        } else {
            pair_prob_approx(i, j, p)
        };
        tail -= q;
        let se = (q * (1.0 - q) / runs as f64).sqrt();
        assert!(
            (c.mass[j - 1] - q).abs() <= 4.0 * se + 1.0 / runs as f64,
            "j={j}"
        );
    }
    model_ccdf.push(tail);
    // Dvoretzky-Kiefer-Wolfowitz band at 99% for 200 samples.
    assert!(sup_distance(&c.ccdf, &model_ccdf) <= 0.115);
}

#[test]
fn node_unmatched_probability_matches_limit() {
    let (n, runs) = (2000usize, 100u64);
    let d = 5.0;
    let spec = GenSpec::with_degree(n, d, 1, KindSpec::NodeBased, 99).unwrap();
    let windows = [(150usize, 250usize), (950, 1050), (1750, 1850)];
    let mut single = vec![0u64; windows.len()];
    for k in 0..runs {
        let inst = spec.instance(k).unwrap();
        let conf = stable_configuration(&inst);
        for (w, &(lo, hi)) in windows.iter().enumerate() {
            single[w] += (lo..=hi).filter(|&i| conf.degree(i) == 0).count() as u64;
        }
    }
    for (w, &(lo, hi)) in windows.iter().enumerate() {
        let count = (hi - lo + 1) as f64;
        let emp = single[w] as f64 / (count * runs as f64);
        let model = (lo..=hi)
            .map(|i| unmatched_prob_node(i as f64 / n as f64, d).unwrap())
            .sum::<f64>()
            / count;
        assert!(
            (emp - model).abs() < 0.015,
            "window {lo}..={hi}: {emp} vs {model}"
        );
    }
}
