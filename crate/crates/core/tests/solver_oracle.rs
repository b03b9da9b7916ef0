//! Monte Carlo solvers against exhaustive search on small random instances.

mod common;

use std::time::Instant;

use common::{random_query, ENTRY_POINTS};
use cutcount::oracle::{oracle_solve, OracleLimit};
use cutcount::problem::solve;
use cutcount::vertex::RunParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn solvers_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for problem in ENTRY_POINTS {
        let start = Instant::now();
        let mut yes = 0;
        let n_max = if problem.directed() { 7 } else { 8 };
        for i in 0..25 {
            let query = random_query(&mut rng, problem, n_max);
            let expected = oracle_solve(&query, OracleLimit::default()).unwrap().yes;
            let params = RunParams { repetitions: 16, seed: i };
            let (answer, _) = solve(&query, None, params).unwrap();
            assert!(!answer.is_yes() || expected, "{problem}: false positive on {query:?}");
            assert_eq!(answer.is_yes(), expected, "{problem}: missed yes on {query:?}");
            yes += expected as usize;
        }
        eprintln!("{problem}: {yes}/25 yes in {:?}", start.elapsed());
    }
}
