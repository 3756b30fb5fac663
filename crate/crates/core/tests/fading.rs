use wpcn::fading::simulate_blocks;
use wpcn::{compare, monte_carlo, ChannelModel, SolveOptions, SystemParams};

fn baseline() -> SystemParams {
    SystemParams::new(1e-15, 0.1, 1e-5, 1e4, 1e-3, 1e-6, 1e-6).unwrap()
}

#[test]
fn deterministic_channel_matches_direct_solve() {
    let params = baseline();
    let direct = compare(&params).unwrap();
    let model = ChannelModel::deterministic(params.h_gain, params.g_gain).unwrap();
    for n in [1, 7, 250] {
        let report = monte_carlo(&params, &model, n, 3, &SolveOptions::default()).unwrap();
        assert_eq!(report.mean_rate_tdd, direct.tdd.rate);
        assert_eq!(report.mean_rate_fdd, direct.fdd.rate);
        for q in [report.quantiles_tdd, report.quantiles_fdd] {
            assert_eq!(q.p5, q.p95);
        }
        assert_eq!(report.quantiles_tdd.p50, direct.tdd.rate);
        assert!((report.mean_rate_tdd - 38_300.0).abs() < 50.0);
    }
}

#[test]
fn single_block_equals_single_solve() {
    let params = baseline();
    let model = ChannelModel::exponential(1e-6, 1e-6).unwrap();
    let blocks = simulate_blocks(&params, &model, 1, 11, &SolveOptions::default()).unwrap();
    let report = monte_carlo(&params, &model, 1, 11, &SolveOptions::default()).unwrap();
    let c = &blocks[0].comparison;
    assert_eq!(report.mean_rate_tdd, c.tdd.rate);
    assert_eq!(report.mean_rate_fdd, c.fdd.rate);
    assert_eq!(report.quantiles_fdd.p5, c.fdd.rate);
    let direct = compare(&params.with_gains(blocks[0].h_gain, blocks[0].g_gain)).unwrap();
    assert_eq!(&direct, c);
}

#[test]
fn seeded_runs_are_reproducible() {
    let params = baseline();
    let model = ChannelModel::exponential(1e-6, 1e-6).unwrap();
    let opts = SolveOptions::default();
    let a = monte_carlo(&params, &model, 100_000, 42, &opts).unwrap();
    let b = monte_carlo(&params, &model, 100_000, 42, &opts).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.mean_rate_tdd.to_bits(), b.mean_rate_tdd.to_bits());
    assert_eq!(a.seed, 42);
    for q in [a.quantiles_tdd, a.quantiles_fdd] {
        assert!(0.0 <= q.p5 && q.p5 <= q.p50 && q.p50 <= q.p95);
    }

    let c = monte_carlo(&params, &model, 100_000, 43, &opts).unwrap();
    assert_ne!(a.mean_rate_tdd, c.mean_rate_tdd);
}

#[test]
fn blocks_independent_of_thread_count() {
    let params = baseline();
    let model = ChannelModel::exponential(1e-6, 2e-6).unwrap();
    let opts = SolveOptions::default();
    let parallel = simulate_blocks(&params, &model, 500, 5, &opts).unwrap();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let serial = pool.install(|| simulate_blocks(&params, &model, 500, 5, &opts).unwrap());
    assert_eq!(parallel, serial);
    // the first 100 blocks do not depend on how many follow
    let short = simulate_blocks(&params, &model, 100, 5, &opts).unwrap();
    assert_eq!(&parallel[..100], &short[..]);
}
