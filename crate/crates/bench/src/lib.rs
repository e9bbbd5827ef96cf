//! Fixed inputs for the kernel benchmarks.

use arcorient_core::corpus::{admitted_lifting_instance, instance_rng, trail_union, LiftingInstance};
use arcorient_core::infinite::{Generator, GeneratorKind};
use arcorient_core::Multigraph;

/// Union of `cycles` random closed trails on `n` vertices; 2·cycles-edge-connected.
pub fn cycle_union(n: usize, cycles: usize, seed: u64) -> Multigraph {
    trail_union(&mut instance_rng(seed, 0), n, cycles, n / 4)
}

pub fn lifting_fixture(max_n: usize, seed: u64) -> LiftingInstance {
    admitted_lifting_instance(&mut instance_rng(seed, 0), max_n).0
}

pub fn generators() -> Vec<Generator> {
    vec![
        Generator::new(GeneratorKind::Grid, 2),
        Generator::new(GeneratorKind::Ladder, 2),
        Generator::new(GeneratorKind::DoubleRay, 4),
        Generator::new(GeneratorKind::Figure1, 2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use arcorient_core::connectivity::is_k_edge_connected;

    #[test]
    fn fixtures_are_well_formed() {
        assert!(is_k_edge_connected(&cycle_union(12, 2, 3), 4));
        let inst = lifting_fixture(8, 3);
        assert!(inst.g.vertex_count() <= 8);
        assert_eq!(generators().len(), 4);
    }
}
