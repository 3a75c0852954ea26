//! Closed-form placement for the large-array limit.
//!
//! As the element count grows, the external-field term in the placement
//! objective is dwarfed by the pairwise repulsion and the equilibrium
//! degenerates to the pure two-endpoint problem, whose finite-M solutions
//! are the roots of the degree-(M−2) Jacobi polynomial with unit endpoint
//! weights. Those roots converge to Chebyshev nodes, giving an O(M)
//! closed-form placement with no eigendecomposition at all. The Jacobi
//! matrix route is kept as a validation oracle for the limit.

use crate::error::Result;
use crate::geometry::{
    denormalize_sym, s_bounds, s_to_x, BsPositions, Chart, NormalizedPositions, ScenarioConfig,
};
use crate::heun_solver::{PlacementResult, ResidualKind};
use crate::linalg;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};
use std::time::Instant;

/// Symmetric Jacobi matrix whose eigenvalues are the roots of the
/// unit-weight Jacobi polynomial of matching degree: zero diagonal,
/// off-diagonal `d_n = √(n(n+2)/((2n+3)(2n+1)))`.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiMatrix {
    pub dim: usize,
    pub offdiag: Vec<f64>,
}

impl JacobiMatrix {
    pub fn new(dim: usize) -> JacobiMatrix {
        let offdiag = (1..dim)
            .map(|n| {
                let nf = n as f64;
                (nf * (nf + 2.0) / ((2.0 * nf + 3.0) * (2.0 * nf + 1.0))).sqrt()
            })
            .collect();
        JacobiMatrix { dim, offdiag }
    }
}

static NODE_CACHE: OnceLock<RwLock<HashMap<usize, Arc<Vec<f64>>>>> = OnceLock::new();

/// Chebyshev-node placement in the symmetric chart, endpoints included:
/// interior nodes `cos((2n+1)π/(2(M−2)))` mirrored for exact symmetry.
///
/// Node sets are memoized per element count; the roots of a fixed degree
/// never change, so repeated solves amortize to a map lookup.
pub fn chebyshev_nodes(m: usize) -> NormalizedPositions {
    assert!(m >= 3, "need at least one interior element");
    let cache = NODE_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(nodes) = cache.read().expect("node cache poisoned").get(&m) {
        return NormalizedPositions::new(nodes.as_ref().clone(), Chart::Symmetric)
            .expect("cached nodes are ordered");
    }
    let n = m - 2;
    let mut t = vec![0.0; n];
    for i in 0..n / 2 {
        let v = ((2 * i + 1) as f64 * PI / (2.0 * n as f64)).cos();
        t[n - 1 - i] = v;
        t[i] = -v;
    }
    let mut full = Vec::with_capacity(m);
    full.push(-1.0);
    full.extend_from_slice(&t);
    full.push(1.0);
    cache.write().expect("node cache poisoned").insert(m, Arc::new(full.clone()));
    NormalizedPositions::new(full, Chart::Symmetric).expect("nodes are ordered")
}

/// Interior equilibrium points of the pure two-endpoint problem at finite M:
/// eigenvalues of [`JacobiMatrix`] of dimension M − 2, ascending, all inside
/// (−1, 1).
pub fn jacobi11_roots(m: usize) -> Result<NormalizedPositions> {
    assert!(m >= 3, "need at least one interior element");
    let jm = JacobiMatrix::new(m - 2);
    let values = linalg::sym_tridiag_eigenvalues(vec![0.0; jm.dim], jm.offdiag)?;
    NormalizedPositions::new(values, Chart::Symmetric)
}

/// ℓ∞ distance between the finite-M equilibrium points and their Chebyshev
/// limit; shrinks as M grows.
pub fn convergence_gap(m: usize) -> Result<f64> {
    let jacobi = jacobi11_roots(m)?;
    let cheb = chebyshev_nodes(m);
    Ok(jacobi
        .t
        .iter()
        .zip(cheb.interior())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max))
}

/// Residual of the pure equilibrium condition
/// `Σ_{i≠m} 1/(t_m−t_i) + 1/(t_m+1) + 1/(t_m−1) = 0`
/// over interior points in the symmetric chart (ℓ∞, unscaled).
pub fn pure_equilibrium_residual(t_interior: &[f64]) -> f64 {
    let k = t_interior.len();
    let mut worst = 0.0f64;
    for m in 0..k {
        let tm = t_interior[m];
        let mut acc = 1.0 / (tm + 1.0) + 1.0 / (tm - 1.0);
        for (i, &ti) in t_interior.iter().enumerate() {
            if i != m {
                acc += 1.0 / (tm - ti);
            }
        }
        worst = worst.max(acc.abs());
    }
    worst
}

/// Closed-form placement: Chebyshev nodes denormalized into the angular
/// chart, then mapped to the array axis. The recorded residual is that of
/// the pure equilibrium the nodes only satisfy in the limit, so it is
/// diagnostic rather than small.
pub fn solve_asymptotic(cfg: &ScenarioConfig) -> Result<PlacementResult> {
    cfg.validate()?;
    let start = Instant::now();
    let nodes = chebyshev_nodes(cfg.num_bs);
    let (s_min, s_max) = s_bounds(cfg)?;
    let s = denormalize_sym(&nodes, s_min, s_max)?;
    let interior_x: Result<Vec<f64>> =
        s.interior().iter().map(|&sv| s_to_x(sv, cfg)).collect();
    let x = BsPositions::from_interior(&interior_x?, cfg.aperture())?;
    let elapsed = start.elapsed().as_secs_f64();
    PlacementResult::evaluate(cfg, x, elapsed, ResidualKind::Pure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pose_to_centroid;

    #[test]
    fn chebyshev_nodes_m4_reference() {
        let nodes = chebyshev_nodes(4);
        let expect = [-1.0, -std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2, 1.0];
        for (a, b) in nodes.t.iter().zip(expect) {
            assert!((a - b).abs() < 1e-15, "{a} vs {b}");
        }
    }

    #[test]
    fn chebyshev_nodes_m3_center() {
        let nodes = chebyshev_nodes(3);
        assert_eq!(nodes.t, vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn chebyshev_nodes_exactly_mirrored() {
        for m in [4, 5, 9, 16, 33] {
            let nodes = chebyshev_nodes(m);
            let t = &nodes.t;
            for i in 0..t.len() {
                assert_eq!(t[i], -t[t.len() - 1 - i], "m={m} index {i}");
            }
        }
    }

    #[test]
    fn jacobi_roots_m4_closed_form() {
        let roots = jacobi11_roots(4).unwrap();
        let expect = 1.0 / 5f64.sqrt();
        assert!((roots.t[0] + expect).abs() < 1e-10);
        assert!((roots.t[1] - expect).abs() < 1e-10);
        // matches the first off-diagonal entry of the recurrence matrix
        let jm = JacobiMatrix::new(2);
        assert!((jm.offdiag[0] - expect).abs() < 1e-15);
    }

    #[test]
    fn jacobi_roots_m3_origin() {
        let roots = jacobi11_roots(3).unwrap();
        assert_eq!(roots.t, vec![0.0]);
    }

    #[test]
    fn jacobi_roots_satisfy_pure_equilibrium() {
        for m in [4, 8, 16, 32] {
            let roots = jacobi11_roots(m).unwrap();
            let resid = pure_equilibrium_residual(&roots.t);
            assert!(resid <= 1e-8 * (m * m) as f64, "m={m} residual {resid:e}");
        }
    }

    #[test]
    fn convergence_gap_reference_and_decay() {
        let g4 = convergence_gap(4).unwrap();
        assert!((g4 - 0.2599).abs() < 1e-4);
        assert_eq!(convergence_gap(3).unwrap(), 0.0);
        let g10 = convergence_gap(10).unwrap();
        let g50 = convergence_gap(50).unwrap();
        assert!(g50 < g10 && g10 < g4);
    }

    #[test]
    fn asymptotic_solution_mirror_symmetric() {
        let cfg = ScenarioConfig {
            ue_centroid: (0.0, 10.0),
            ue_azimuth_rad: 0.0,
            ..ScenarioConfig::default()
        };
        let res = solve_asymptotic(&cfg).unwrap();
        let x = res.x.as_slice();
        for i in 0..x.len() {
            assert!(
                (x[i] + x[x.len() - 1 - i]).abs() < 1e-9,
                "positions not mirrored at index {i}"
            );
        }
        assert!(res.elapsed > 0.0);
    }

    #[test]
    fn asymptotic_positions_ordered_for_skewed_pose() {
        let cfg = ScenarioConfig {
            ue_centroid: pose_to_centroid(8.0, PI / 3.0),
            ue_azimuth_rad: 0.2,
            ..ScenarioConfig::default()
        };
        let res = solve_asymptotic(&cfg).unwrap();
        let x = res.x.as_slice();
        assert!(x.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(x.len(), cfg.num_bs);
        assert_eq!(x[0], -cfg.aperture() / 2.0);
    }
}
