//! Differential tests: every reduced-representation path is checked against
//! the dense brute-force oracle on small instances.

use faulty_grover::oracle::{enumerate_words_full, extract_symmetric, full_step, FullDensity};
use faulty_grover::{ReducedPureState, SearchSpace, SymmetricDensity, WeightedMixture};

fn grid() -> Vec<SearchSpace<f64>> {
    let mut out = Vec::new();
    for n in [8usize, 16, 32] {
        for k in [2usize, 3, 5] {
            for p in [0.0, 0.3, 0.7, 1.0] {
                out.push(SearchSpace::new(n, k, p).unwrap());
            }
        }
    }
    out
}

#[test]
fn reduced_density_matches_full_oracle_over_fifty_steps() {
    for sp in grid() {
        let mut reduced = SymmetricDensity::uniform(&sp);
        let mut full = FullDensity::uniform(sp.n()).unwrap();
        let mut worst = 0.0f64;
        for _ in 0..50 {
            reduced = reduced.step(&sp);
            full = full_step(&full, &sp).unwrap();
            let expanded = FullDensity::from_symmetric(&reduced, &sp).unwrap();
            worst = worst.max(expanded.max_abs_diff(&full));
        }
        assert!(
            worst <= 1e-10,
            "n={} k={} p={}: max entrywise deviation {worst:.3e}",
            sp.n(),
            sp.k(),
            sp.fault_prob()
        );
    }
}

#[test]
fn reduction_commutes_with_the_full_step() {
    for sp in grid() {
        let mut full = FullDensity::uniform(sp.n()).unwrap();
        for _ in 0..20 {
            let (six, _) = extract_symmetric(&full, &sp).unwrap();
            let via_reduced = six.step(&sp);
            full = full_step(&full, &sp).unwrap();
            let (via_full, _) = extract_symmetric(&full, &sp).unwrap();
            assert!(via_reduced.max_abs_diff(&via_full) <= 1e-10);
        }
    }
}

#[test]
fn mixture_converted_to_density_matches_channel_power() {
    for n in [16usize, 64] {
        for k in [2usize, 3, 5] {
            for eps in [0.0, 0.3, 0.7, 1.0] {
                let sp = SearchSpace::new(n, k, eps).unwrap();
                let t = 12;
                let mix = WeightedMixture::evolve_exact(&sp, t, 0.0, 1 << t).unwrap();
                let mut rho = SymmetricDensity::uniform(&sp);
                for _ in 0..t {
                    rho = rho.step(&sp);
                }
                let dev = mix.to_density(&sp).max_abs_diff(&rho);
                assert!(dev <= 1e-12, "n={n} k={k} eps={eps}: deviation {dev:.3e}");
            }
        }
    }
}

#[test]
fn unreduced_word_enumeration_matches_reduced_paths() {
    let sp = SearchSpace::new(16, 3, 0.4).unwrap();
    let t = 10;
    let full = enumerate_words_full(&sp, t).unwrap();
    let (six, spread) = extract_symmetric(&full, &sp).unwrap();
    assert!(spread <= 1e-12);

    let mix = WeightedMixture::evolve_exact(&sp, t, 0.0, 1 << t).unwrap();
    assert!(mix.to_density(&sp).max_abs_diff(&six) <= 1e-12);
}

#[test]
fn faulty_query_channel_is_the_fault_mixture() {
    // One query on a generic state: the channel must equal
    // (1-p) x no-fault conjugation + p x fault conjugation.
    for p in [0.0, 0.25, 0.6, 1.0] {
        let sp = SearchSpace::new(24, 4, p).unwrap();
        let mut state = ReducedPureState::uniform(&sp);
        for i in 0..7 {
            state = state.step(&sp, i % 2 == 0);
        }
        let mix = WeightedMixture::from_branches(vec![
            faulty_grover::Branch {
                weight: 1.0 - p,
                state: state.apply_query(&sp, false),
                word_length: 1,
            },
            faulty_grover::Branch {
                weight: p,
                state: state.apply_query(&sp, true),
                word_length: 1,
            },
        ]);
        let pure = WeightedMixture::from_branches(vec![faulty_grover::Branch {
            weight: 1.0,
            state,
            word_length: 0,
        }]);
        let channel = pure.to_density(&sp).apply_faulty_query(&sp);
        assert!(mix.to_density(&sp).max_abs_diff(&channel) <= 1e-14);
    }
}

#[test]
fn reduce3_spectrum_equals_full_spectrum() {
    for n in [8usize, 16, 32] {
        for (k, p) in [(2usize, 0.3), (3, 0.7), (5, 0.5)] {
            let sp: SearchSpace<f64> = SearchSpace::new(n, k, p).unwrap();
            let mut reduced = SymmetricDensity::uniform(&sp);
            let mut full = FullDensity::uniform(n).unwrap();
            for _ in 0..15 {
                reduced = reduced.step(&sp);
                full = full_step(&full, &sp).unwrap();
            }
            let eig3 = reduced.reduce3(&sp).eigenvalues();
            let eig_full = full.eigenvalues();
            // the full spectrum is the 3x3 spectrum padded with zeros
            let top3 = &eig_full[n - 3..];
            let mut sorted3 = eig3;
            sorted3.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (a, b) in sorted3.iter().zip(top3.iter()) {
                assert!((a - b).abs() <= 1e-9, "eigenvalue mismatch {a} vs {b}");
            }
            for v in &eig_full[..n - 3] {
                assert!(v.abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn trace_distance_from_uniform_is_two_thirds() {
    // pure states sit at distance exactly 2/3 from the equal-thirds limit;
    // cross-checked here through the dense spectrum instead of reduce3
    let sp: SearchSpace<f64> = SearchSpace::new(100, 3, 0.5).unwrap();
    let d = SymmetricDensity::uniform(&sp)
        .trace_distance_to_limit(&sp)
        .unwrap();
    assert!((d - 2.0 / 3.0).abs() <= 1e-12);
}
