//! Seeded-replay properties: chunk tiling and trace determinism under
//! arbitrary seeds and chunk limits.

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use parareal::diagnostics::{record_simulation, SimEvent};
use parareal::{Euler, IvpProblem, PararealConfig, StateVector};

fn linear_problem() -> IvpProblem {
    IvpProblem::new(
        Arc::new(|_t: f64, y: &StateVector| y.clone()),
        0.0,
        1.0,
        StateVector::scalar(1.0),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn chunk_ranges_tile_every_subdomain(
        seed in any::<u64>(),
        max_chunk in 1_usize..12,
        n_sub in 1_usize..5,
        n_fine in 1_usize..10,
        iterations in 1_usize..4,
    ) {
        let cfg = PararealConfig::new(n_sub, n_fine, iterations);
        let trace = record_simulation(
            &linear_problem(), &cfg, &Euler, &Euler, seed, max_chunk, false,
        ).unwrap();

        // done[(iteration, subdomain)] tracks the next expected step.
        let mut done: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for ev in &trace.events {
            if let SimEvent::FineChunk { iteration, subdomain, from_step, to_step, .. } = ev {
                let cursor = done.entry((*iteration, *subdomain)).or_insert(0);
                prop_assert_eq!(*from_step, *cursor, "gap or overlap in chunk ranges");
                prop_assert!(to_step > from_step);
                prop_assert!(*to_step <= n_fine);
                prop_assert!(to_step - from_step <= max_chunk);
                *cursor = *to_step;
            }
        }
        for k in 1..=iterations {
            for n in 0..n_sub {
                prop_assert_eq!(done.get(&(k, n)), Some(&n_fine), "subdomain not fully covered");
            }
        }
    }
}
