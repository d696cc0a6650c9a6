use christoffel_core::measure::make_model_edge;
use christoffel_core::orthopoly::{recurrence_table, symmetric_singular_recurrence};
use christoffel_core::potential::{equilibrium_density, IntervalSystem};
use christoffel_core::universality::{scan_edge, scan_model_bulk_kernel, ScanConfig, ScanMode, ScanRow};

// |err| at the largest n may exceed that at the smallest by at most 20%, above a round-off floor
fn nonincreasing(rows: &[ScanRow], per_n: usize) -> Result<(), String> {
    let last = &rows[rows.len() - per_n..];
    for (first, r) in rows[..per_n].iter().zip(last) {
        assert_eq!((first.a, first.b), (r.a, r.b));
        if r.abs_err > 1.2 * first.abs_err + 1e-12 {
            return Err(format!(
                "({}, {}): {} at n={} after {} at n={}",
                r.a, r.b, r.abs_err, r.n, first.abs_err, first.n
            ));
        }
    }
    Ok(())
}

#[test]
fn model_bulk_errors_shrink_with_n() {
    let grid: Vec<f64> = (-10..=10).map(|i| i as f64 * 0.5).collect();
    for alpha in [-0.5, 1.0] {
        let table = symmetric_singular_recurrence(alpha, 1025).unwrap();
        let r = scan_model_bulk_kernel(&table, alpha, &[128, 256, 512, 1024], &grid).unwrap();
        nonincreasing(&r.rows, grid.len() * grid.len()).unwrap();
        let slope = r.fitted_order.unwrap();
        assert!((-1.6..=-0.6).contains(&slope), "alpha={alpha}: slope {slope}");
    }
}

#[test]
fn model_edge_errors_shrink_with_n() {
    for alpha in [-0.5, 1.0] {
        let mu = make_model_edge(alpha).unwrap();
        let eq = equilibrium_density(&IntervalSystem::new(mu.intervals().to_vec()).unwrap()).unwrap();
        let table = recurrence_table(&mu, 1025).unwrap();
        let a_grid = vec![0.0, 0.5, 1.0, 2.0, 4.0];
        let cfg = ScanConfig {
            measure: mu,
            x0: 1.0,
            alpha,
            a_grid: a_grid.clone(),
            b_grid: Vec::new(),
            n_list: vec![64, 128, 256, 512, 1024],
            mode: ScanMode::EdgeLambda,
        };
        let r = scan_edge(&cfg, &table, &eq).unwrap();
        nonincreasing(&r.rows, a_grid.len()).unwrap();
        assert!(r.rows.iter().all(|row| row.measured > 0.0 && row.predicted > 0.0));
    }
}
