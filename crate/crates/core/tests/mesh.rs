mod common;

use common::{random_mesh, rng};
use l2stab::mesh::{
    check_corollary_box, check_thm1, constraint_constants, mesh_from_csv_str, mesh_to_csv_string,
    read_mesh_csv, write_mesh_csv, TimeMesh,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn graded_ratios_decrease_to_one() {
    for r in [1.5, 2.8, 3.1] {
        let mesh = TimeMesh::graded(10_000, r, 1.0).unwrap();
        let ratios = mesh.ratios();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]), "r={r}");
        assert!((ratios.last().unwrap() - 1.0).abs() < 1e-3);
    }
}

#[test]
fn graded_meshes_pass_up_to_the_limit() {
    for k in [10, 50, 100] {
        for i in 0..=20 {
            let r = 1.0 + 0.0001 + (3.12 - 1.0001) * i as f64 / 20.0;
            let mesh = TimeMesh::graded(k, r, 1.0).unwrap();
            assert!(check_thm1(&mesh).unwrap().pass, "K={k} r={r}");
        }
        assert!(!check_thm1(&TimeMesh::graded(k, 3.3, 1.0).unwrap()).unwrap().pass);
    }
}

#[test]
fn rvariable_meshes_pass() {
    for k in [7, 20, 100] {
        let mesh = TimeMesh::rvariable(k, 1.0).unwrap();
        assert!(check_thm1(&mesh).unwrap().pass, "K={k}");
    }
}

#[test]
fn box_is_inside_the_admissible_region() {
    let c = constraint_constants();
    let mut rng = rng(31);
    for _ in 0..500 {
        let mesh = random_mesh(&mut rng, 12, c.rho_l, c.rho_r);
        assert!(check_corollary_box(&mesh).unwrap().pass);
        assert!(check_thm1(&mesh).unwrap().pass, "{:?}", mesh.ratios());
    }
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mesh.csv");
    let mesh = TimeMesh::rvariable(30, 2.5).unwrap();
    write_mesh_csv(&mesh, &path).unwrap();
    assert_eq!(read_mesh_csv(&path).unwrap().nodes(), mesh.nodes());
}

proptest! {
    #[test]
    fn csv_round_trip_is_exact(seed in any::<u64>(), n in 1usize..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mesh = random_mesh(&mut rng, n.max(1), 0.1, 10.0);
        let back = mesh_from_csv_str(&mesh_to_csv_string(&mesh)).unwrap();
        prop_assert_eq!(back.nodes(), mesh.nodes());
    }

    #[test]
    fn steps_sum_to_horizon(k in 2usize..500, r in 1.0f64..4.0, t in 0.1f64..10.0) {
        let mesh = TimeMesh::graded(k, r, t).unwrap();
        let s: f64 = mesh.steps().iter().sum();
        prop_assert!((s - t).abs() < 1e-12 * t);
        prop_assert!(mesh.steps().iter().all(|s| *s > 0.0));
    }
}
