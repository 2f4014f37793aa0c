mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ranksat_core::constructions::*;
use ranksat_core::geometry::Point;
use ranksat_core::linalg::{FqmSubspace, System};
use ranksat_core::linset::{is_h_scattered, linear_set, max_h_scattered_bound, project, weight};
use ranksat_core::rankcov::{lower_bound, on_secant_bruteforce, saturating_index};
use ranksat_core::{Error, FieldSpec};

fn moore(p: u32, a: u32, m: u32, rho: usize, t: usize) -> (FieldSpec, System) {
    let f = FieldSpec::gf(p, a, m).unwrap();
    let u = moore_system(&MooreParams::new(&f, rho, t)).unwrap();
    (f, u)
}

#[test]
fn single_block_is_subgeometry() {
    for rho in 1..=3 {
        let (f, u) = moore(2, 1, 3, rho, 1);
        assert_eq!(u, System::subgeometry(&f, rho));
    }
}

#[test]
fn moore_rank_formula_grid() {
    for (p, a, m) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (2, 1, 5), (5, 1, 3)] {
        for rho in 1..=m as usize {
            for t in 1..=3 {
                let (_, u) = moore(p, a, m, rho, t);
                assert_eq!(u.rank(), m as usize * (t - 1) + rho);
                assert_eq!(u.k(), rho * t);
            }
        }
    }
}

#[test]
fn moore_index_grid() {
    let grid = [
        (2, 1, 3, 2, 2),
        (3, 1, 2, 2, 2),
        (2, 1, 4, 2, 2),
        (2, 2, 2, 2, 2),
        (2, 1, 2, 1, 3),
        (2, 1, 3, 3, 2),
        (2, 1, 3, 1, 2),
    ];
    for (p, a, m, rho, t) in grid {
        let (f, u) = moore(p, a, m, rho, t);
        assert_eq!(saturating_index(&u).unwrap(), Some(rho as u32), "{f} rho={rho} t={t}");
        if rho > 1 {
            let q = f.q();
            let lb = lower_bound(q, m, (rho * t) as u32, rho as u32 - 1).unwrap();
            if t > 1 {
                assert!((u.rank() as u64) < lb);
            }
        }
    }
}

#[test]
fn moore_index_small_bruteforce() {
    for (p, m, rho, t) in [(2, 2, 2, 2), (2, 3, 2, 2), (3, 2, 1, 2)] {
        let (_, u) = moore(p, 1, m, rho, t);
        assert_eq!(index_bruteforce(&u), Some(rho as u32));
    }
}

#[test]
fn shifted_moore_same_index() {
    let f = FieldSpec::gf(2, 1, 3).unwrap();
    let u = moore_system(&MooreParams::new(&f, 2, 2).with_shifts(vec![2])).unwrap();
    assert_eq!(u.rank(), 5);
    assert_eq!(saturating_index(&u).unwrap(), Some(2));
    assert_eq!(index_bruteforce(&u), Some(2));
    let f = FieldSpec::gf(2, 1, 5).unwrap();
    for s in [2, 3, 4] {
        let u = moore_system(&MooreParams::new(&f, 2, 2).with_shifts(vec![s])).unwrap();
        assert_eq!(saturating_index(&u).unwrap(), Some(2));
    }
    let f = FieldSpec::gf(2, 1, 5).unwrap();
    let u = moore_system(&MooreParams::new(&f, 2, 3).with_shifts(vec![2, 3])).unwrap();
    assert_eq!(u.rank(), 12);
}

#[test]
fn moore_param_errors() {
    let f = FieldSpec::gf(2, 1, 4).unwrap();
    let e = moore_system(&MooreParams::new(&f, 2, 2).with_shifts(vec![2])).unwrap_err();
    assert!(matches!(e, Error::ShiftNotCoprime { shift: 2, m: 4 }));
    assert!(moore_system(&MooreParams::new(&f, 5, 1)).is_err());
    assert!(moore_system(&MooreParams::new(&f, 0, 1)).is_err());
    assert!(moore_system(&MooreParams::new(&f, 2, 3).with_shifts(vec![1])).is_err());
}

fn check_witness(f: &FieldSpec, u: &System, v: &[u32], ws: &[Vec<u32>]) {
    let span = span_vectors(u);
    for w in ws {
        assert!(span.contains(w));
    }
    let r = rank(f, ws);
    let mut with = ws.to_vec();
    with.push(v.to_vec());
    assert_eq!(rank(f, &with), r);
}

#[test]
fn moore_witness_random_vectors() {
    let f = FieldSpec::gf(2, 1, 3).unwrap();
    let params = MooreParams::new(&f, 2, 2);
    let u = moore_system(&params).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..1000 {
        let v: Vec<u32> = (0..4).map(|_| rng.gen_range(0..8)).collect();
        let ws = moore_saturate_witness(&params, &v).unwrap();
        assert_eq!(ws.len(), 2);
        check_witness(&f, &u, &v, &ws);
    }
}

#[test]
fn moore_witness_special_vectors() {
    let f = FieldSpec::gf(3, 1, 3).unwrap();
    let params = MooreParams::new(&f, 3, 2);
    let u = moore_system(&params).unwrap();
    // A-block zero.
    let v = vec![5, 7, 11, 0, 0, 0];
    check_witness(&f, &u, &v, &moore_saturate_witness(&params, &v).unwrap());
    // Dependent A's.
    let v = vec![1, 2, 3, 1, 2, 1];
    check_witness(&f, &u, &v, &moore_saturate_witness(&params, &v).unwrap());
    // v in U.
    let v = u.generators()[0].clone();
    let ws = moore_saturate_witness(&params, &v).unwrap();
    assert_eq!(ws[0], v);
    assert!(ws[1..].iter().all(|w| w.iter().all(|&x| x == 0)));
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let v: Vec<u32> = (0..6).map(|_| rng.gen_range(0..27)).collect();
        let ws = moore_saturate_witness(&params, &v).unwrap();
        for w in &ws {
            assert!(u.contains(w));
        }
        let r = rank(&f, &ws);
        let mut with = ws.clone();
        with.push(v.clone());
        assert_eq!(rank(&f, &with), r);
    }
}

#[test]
fn hscattered_moore_examples() {
    let f = FieldSpec::gf(2, 1, 3).unwrap();
    let u = hscattered_moore(&f, 1, 1).unwrap();
    assert_eq!(u.rank(), 3);
    assert!(is_h_scattered(&u, 1).unwrap().holds);
    let f = FieldSpec::gf(2, 1, 4).unwrap();
    let u = hscattered_moore(&f, 2, 1).unwrap();
    assert_eq!(u.rank(), 4);
    assert!(is_h_scattered(&u, 2).unwrap().holds);
    for (m, h, t) in [(4, 1, 2), (3, 1, 2), (5, 2, 1), (4, 3, 1)] {
        let f = FieldSpec::gf(2, 1, m).unwrap();
        let u = hscattered_moore(&f, h, t).unwrap();
        assert_eq!(u.rank(), max_h_scattered_bound(u.k(), m as usize, h));
        assert!(is_h_scattered(&u, h).unwrap().holds, "m={m} h={h} t={t}");
    }
    assert!(hscattered_moore(&f, 4, 1).is_err());
}

#[test]
fn thinning_gives_saturating_subspace() {
    let f = FieldSpec::gf(2, 1, 4).unwrap();
    let w = hscattered_moore(&f, 1, 2).unwrap();
    assert_eq!(w.rank(), 8);
    let u = thin_to_saturating(&w, 1).unwrap();
    assert_eq!(u.rank(), 7);
    let idx = saturating_index(&u).unwrap().unwrap();
    assert!(idx <= 2);
    let ls = linear_set(&u).unwrap();
    let pts = ls.points();
    for q in ls.space().iter().step_by(97) {
        assert!(on_secant_bruteforce(&f, &pts, &q));
    }
    let sub = System::subgeometry(&f, 2);
    assert!(matches!(thin_to_saturating(&sub, 1), Err(Error::RankTooSmall { .. })));
    let f3 = FieldSpec::gf(2, 1, 3).unwrap();
    let w = hscattered_moore(&f3, 1, 1).unwrap();
    assert_eq!(thin_to_saturating(&w, 1).unwrap().rank(), 2);
}

#[test]
fn case_systems() {
    let f = FieldSpec::gf(2, 1, 4).unwrap();
    for case in 1..=4 {
        let u = case_system(&f, case, 1, 1).unwrap();
        assert_eq!(u.rank(), 4);
        assert_eq!(u.k(), 3);
    }
    assert!(case_system(&f, 2, 0, 1).is_err());
    assert!(case_system(&f, 4, 1, 0).is_err());
    assert!(case_system(&f, 5, 1, 1).is_err());
    assert!(case_system(&FieldSpec::gf(2, 1, 3).unwrap(), 1, 0, 0).is_err());
}

#[test]
fn case3_projection_unique_heavy_point() {
    let f = FieldSpec::gf(2, 2, 4).unwrap();
    let u = case_system(&f, 3, 1, 0).unwrap();
    let p = Point::new(&f, &[1, 0, 0]).unwrap();
    let proj = project(&u, &p, None).unwrap();
    let ls = linear_set(&proj).unwrap();
    let heavy: Vec<_> = ls.heavy_points().collect();
    assert_eq!(heavy.len(), 1);
    assert_eq!(heavy[0].0, Point::new(&f, &[0, 1]).unwrap());
    assert_eq!(heavy[0].1, 2);
}

#[test]
fn case4_normalized_set() {
    for a in [1, 2] {
        let f = FieldSpec::gf(2, a, 4).unwrap();
        let q = f.q();
        let ps = case4_params(&f).unwrap();
        assert_eq!(ps.len() as u64, (q + 1) * (q * q + 1) * (q - 1));
        for &(al, be) in &ps {
            assert_eq!(f.pow_u(al, q + 1), 1);
            assert_eq!(f.pow_u(be, (q * q + 1) * (q - 1)), 1);
        }
        let distinct: std::collections::HashSet<_> = ps.iter().collect();
        assert_eq!(distinct.len(), ps.len());
    }
}

#[test]
fn rank5_example_binary() {
    let f = FieldSpec::gf(2, 1, 4).unwrap();
    let u = rank5_example(&f).unwrap();
    assert_eq!(u.rank(), 5);
    assert_eq!(index_bruteforce(&u), Some(2));
    assert_eq!(saturating_index(&u).unwrap(), Some(2));
    let line = FqmSubspace::new(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
    assert_eq!(weight(&u, &line).unwrap(), 4);
}

#[test]
fn rank5_example_ternary() {
    let f = FieldSpec::gf(3, 1, 4).unwrap();
    let u = rank5_example(&f).unwrap();
    assert_eq!(u.rank(), 5);
    assert_eq!(linear_set(&u).unwrap().space().total(), 6643);
    assert_eq!(saturating_index(&u).unwrap(), Some(2));
}
