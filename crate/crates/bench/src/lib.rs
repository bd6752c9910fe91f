//! Fixed benchmark instances.

use hypercut::analysis::{gen_random_instance, RandomInstanceParams};
use hypercut::Hypergraph;

/// Seeded random instance with `n` vertices, `2n` edges of size up to `rank`
/// and `t` cost functions.
pub fn instance(n: usize, rank: usize, t: usize) -> Hypergraph {
    let p = RandomInstanceParams {
        n,
        m: 2 * n,
        rank,
        t_costs: t,
        t_weights: 1,
        max_cost: 8,
        max_weight: 4,
        positive_weights: true,
    };
    gen_random_instance(&p, 0xbe9c).expect("valid parameters")
}
