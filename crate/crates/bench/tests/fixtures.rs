use fischer_bench::{cubic_problem, dense_data, dense_matrix, ellipsoid, laplacian, poly, rhs};
use fischer_core::domains::dirichlet_solve_quadric;
use fischer_core::fischer::{graded_bijectivity_table, truncated_image_solve};
use fischer_core::{linalg, SolveStatus};

#[test]
fn benchmarked_calls_succeed() {
    let x = linalg::solve(&dense_matrix(16), &rhs(16)).unwrap();
    assert!(x.is_some());

    for dim in [2, 3] {
        let table = graded_bijectivity_table(&ellipsoid(dim).psi().component(2), &laplacian(dim), 8).unwrap();
        assert!(table.iter().all(|e| e.is_invertible()));
    }

    let s = dirichlet_solve_quadric(&ellipsoid(2), &dense_data(6), &laplacian(2)).unwrap();
    assert!(laplacian(2).apply(&s.h).unwrap().is_zero());

    // the cubic vanishes at the origin to order one only, so 1 may still be reached
    let out = truncated_image_solve(&cubic_problem(), &poly("1", 2), 4, &[]).unwrap();
    assert_ne!(out.status, SolveStatus::GloballyInfeasible);
}
