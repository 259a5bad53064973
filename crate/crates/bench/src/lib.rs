//! Shared fixtures for the benchmark targets.

use nalgebra::DVector;

use darboux::PlanckVector;

/// A deterministic zig-zag path that crosses the cone repeatedly.
pub fn zigzag_path(samples: usize) -> Vec<PlanckVector> {
    (0..samples)
        .map(|i| {
            let phase = i as f64 * 0.37;
            let quantum = DVector::from_row_slice(&[phase.sin() + 0.2, 0.4]);
            let classical = DVector::from_row_slice(&[phase.cos(), 0.1]);
            PlanckVector::new(quantum, classical).unwrap()
        })
        .collect()
}
