mod common;

use proptest::prelude::*;
use ranksat_core::appendix::*;
use ranksat_core::constructions::case_system;
use ranksat_core::geometry::Point;
use ranksat_core::linset::linear_set;
use ranksat_core::rankcov::point_unsaturated_by;
use ranksat_core::{Elt, Error, FieldSpec};

fn gf(a: u32) -> FieldSpec {
    FieldSpec::gf(2, a, 4).unwrap()
}

fn frob(f: &FieldSpec, x: Elt, i: u32) -> Elt {
    // x^{q^i} by repeated powering, independent of the Frobenius tables
    let mut r = x;
    for _ in 0..i {
        r = f.pow_u(r, f.q());
    }
    r
}

fn normalized_pairs(f: &FieldSpec) -> Vec<(Elt, Elt)> {
    let q = f.q();
    let mut out = Vec::new();
    for a in 1..f.order() as Elt {
        if f.pow_u(a, q + 1) != 1 {
            continue;
        }
        for b in 1..f.order() as Elt {
            if f.pow_u(b, (q * q + 1) * (q - 1)) == 1 {
                out.push((a, b));
            }
        }
    }
    out
}

fn brute_injective(f: &FieldSpec, c: &[Elt]) -> bool {
    let image: std::collections::HashSet<Elt> = (0..f.order() as Elt)
        .map(|x| {
            c.iter()
                .enumerate()
                .fold(0, |acc, (i, &ci)| f.add(acc, f.mul(ci, frob(f, x, i as u32))))
        })
        .collect();
    image.len() == f.order() as usize
}

#[test]
fn linpoly_basic_examples() {
    let f = gf(1);
    let id = LinPoly::new(&f, &[1]);
    assert_eq!(id.dickson_det(), 1);
    assert_eq!(id.kernel_dim(), 0);
    let tr = LinPoly::new(&f, &[f.neg(1), 1]);
    assert_eq!(tr.kernel_dim(), 1);
    assert_eq!(tr.dickson_det(), 0);
    let f = gf(2);
    let tr = LinPoly::new(&f, &[1, 1]);
    assert_eq!(tr.kernel_dim(), 1);
    assert!(!tr.is_bijective());
}

#[test]
fn dickson_matches_bijectivity_exhaustively_at_q2() {
    let f = gf(1);
    for t in 0..(1u32 << 16) {
        let c: Vec<Elt> = (0..4).map(|i| (t >> (4 * i)) & 15).collect();
        let l = LinPoly::new(&f, &c);
        let bij = brute_injective(&f, &c);
        assert_eq!(l.dickson_det() != 0, bij, "{c:?}");
        assert_eq!(l.kernel_dim() == 0, bij, "{c:?}");
    }
}

#[test]
fn dickson_matrix_entries() {
    let f = gf(2);
    let c = [3, 17, 200, 91];
    let m = LinPoly::new(&f, &c).dickson_matrix();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m.get(i, j), frob(&f, c[(j + 4 - i) % 4], i as u32));
        }
    }
}

#[test]
fn context_rejects_bad_parameters() {
    let f = gf(1);
    let q = f.q();
    let bad_a = (1..16).find(|&a| f.pow_u(a, q + 1) != 1).unwrap();
    assert!(matches!(AppendixContext::new(&f, bad_a, 1), Err(Error::InvalidParams(_))));
    let bad_b = (1..16).find(|&b| f.pow_u(b, (q * q + 1) * (q - 1)) != 1).unwrap();
    assert!(matches!(AppendixContext::new(&f, 1, bad_b), Err(Error::InvalidBeta(_))));
    let odd = FieldSpec::gf(3, 1, 4).unwrap();
    assert!(matches!(AppendixContext::new(&odd, 1, 1), Err(Error::OddCharacteristic(_))));
    let m3 = FieldSpec::gf(2, 1, 3).unwrap();
    assert!(AppendixContext::new(&m3, 1, 1).is_err());
}

#[test]
fn normalized_pair_count_q2() {
    assert_eq!(normalized_pairs(&gf(1)).len(), 15);
}

#[test]
fn registry_names_and_errors() {
    let f = gf(1);
    let ctx = AppendixContext::new(&f, 1, 1).unwrap();
    assert_eq!(REGISTRY_NAMES.len(), 34);
    assert!(matches!(
        registry_eval(&ctx, "nope", &Bindings::c(0)),
        Err(Error::UnknownName(_))
    ));
    assert!(matches!(
        registry_eval(&ctx, "L1", &Bindings::c(3)),
        Err(Error::MissingBinding(_))
    ));
    assert!(matches!(
        registry_eval(&ctx, "F0", &Bindings::cy(3, 2)),
        Err(Error::MissingBinding(_))
    ));
    assert!(matches!(
        registry_eval(&ctx, "h1", &Bindings::c(3)),
        Err(Error::MissingBinding(_))
    ));
    for name in REGISTRY_NAMES {
        let b = if name.starts_with('h') || name == "r0" {
            Bindings::z(1)
        } else {
            Bindings::cxy(2, 5, 7)
        };
        for form in [Form::Derived, Form::Transcribed] {
            match registry_eval_form(&ctx, name, form, &b) {
                Ok(_) | Err(Error::DivisionNotExact(_)) => {}
                Err(e) => panic!("{name}: {e}"),
            }
        }
    }
}

#[test]
fn registry_examples() {
    for a in [1, 2] {
        let f = gf(a);
        for (al, be) in normalized_pairs(&f).into_iter().step_by(7) {
            let ctx = AppendixContext::new(&f, al, be).unwrap();
            for c in (0..f.order() as Elt).step_by(5) {
                if let Ok(v) = registry_eval(&ctx, "M", &Bindings::cy(c, 0)) {
                    assert_eq!(v, 0);
                }
                for (x, y) in [(3, 9), (1, 0), (6, 6), (11, 4)] {
                    for form in [Form::Derived, Form::Transcribed] {
                        let xy = registry_eval_form(&ctx, "F0", form, &Bindings::cxy(c, x, y)).unwrap();
                        let yx = registry_eval_form(&ctx, "F0", form, &Bindings::cxy(c, y, x)).unwrap();
                        assert_eq!(xy, yx);
                        let xx = registry_eval_form(&ctx, "F0", form, &Bindings::cxy(c, x, x)).unwrap();
                        assert_eq!(xx, 0);
                    }
                }
            }
        }
    }
}

/// F0(x, y) is the determinant of (0,1,C), (x, x^q+αx^{q³}, x^{q²}+βx^{q³})
/// and the same row at y, for the squared parameters.
#[test]
fn f0_is_the_collinearity_determinant() {
    let f = gf(1);
    for (al, be) in normalized_pairs(&f) {
        let ctx = AppendixContext::new(&f, al, be).unwrap();
        let (a2, b2) = (f.mul(al, al), f.mul(be, be));
        let row = |x: Elt| {
            let x3 = frob(&f, x, 3);
            vec![x, f.add(frob(&f, x, 1), f.mul(a2, x3)), f.add(frob(&f, x, 2), f.mul(b2, x3))]
        };
        for c in 0..16 {
            let c2 = f.mul(c, c);
            for x in 0..16 {
                for y in 0..16 {
                    let m = [vec![0, 1, c2], row(x), row(y)];
                    let det = common::det3(&f, &m);
                    let got = registry_eval(&ctx, "F0", &Bindings::cxy(c, x, y)).unwrap();
                    assert_eq!(got, det, "alpha={al} beta={be} C={c} x={x} y={y}");
                }
            }
        }
    }
}

#[test]
fn d_at_c_zero() {
    let f = gf(1);
    let q = f.q();
    let omega = (2..16).find(|&a| f.frob(a, 2) == a && f.pow_u(a, q + 1) == 1).unwrap();
    let ctx = AppendixContext::new(&f, omega, 1).unwrap();
    let t = registry_eval_form(&ctx, "d", Form::Transcribed, &Bindings::c(0)).unwrap();
    let d = registry_eval(&ctx, "d", &Bindings::c(0)).unwrap();
    assert_eq!(t, 0);
    assert_eq!(d, 0);
    // C = 0: y ↦ y^{q²} + β²y^{q³}
    assert!(!brute_injective(&f, &[0, 0, 1, 1]));
}

#[test]
fn identities_hold_at_q2_for_all_pairs() {
    let f = gf(1);
    for (al, be) in normalized_pairs(&f) {
        let ctx = AppendixContext::new(&f, al, be).unwrap();
        for c in 0..16 {
            let r = verify_identities(&ctx, c).unwrap();
            assert!(r.q_split);
            assert_eq!(r.pairs, 256);
        }
    }
}

#[test]
fn identities_hold_at_q4_sampled() {
    let f = gf(2);
    let pairs = normalized_pairs(&f);
    assert_eq!(pairs.len(), 255);
    for (al, be) in [pairs[0], pairs[100], pairs[254]] {
        let ctx = AppendixContext::new(&f, al, be).unwrap();
        for c in [0, 1, 77, 200] {
            verify_identities(&ctx, c).unwrap();
        }
    }
}

#[test]
fn left_side_vanishes_at_x_zero() {
    let f = gf(1);
    let (al, be) = normalized_pairs(&f)[9];
    let ctx = AppendixContext::new(&f, al, be).unwrap();
    for c in 0..16 {
        for y in 0..16 {
            for name in ["H1", "H2"] {
                assert_eq!(registry_eval(&ctx, name, &Bindings::cxy(c, 0, y)).unwrap(), 0);
            }
        }
    }
}

fn status<'a>(fs: &'a [Finding], name: &str) -> &'a str {
    fs.iter().find(|x| x.name == name).unwrap().status
}

#[test]
fn transcription_findings_reproduce() {
    let f = gf(1);
    let (al, be) = normalized_pairs(&f)
        .into_iter()
        .find(|&(a, _)| a != 1)
        .unwrap();
    let ctx = AppendixContext::new(&f, al, be).unwrap();
    let mut seen_mismatch = std::collections::HashSet::new();
    for c in 0..16 {
        let fs = transcription_findings(&ctx, c).unwrap();
        for name in ["G2-multiplier", "v", "w", "U", "V"] {
            assert_eq!(status(&fs, name), "agree", "{name} at C={c}");
        }
        for name in ["a00", "a02", "a20"] {
            assert_ne!(status(&fs, name), "mismatch", "{name} at C={c}");
        }
        for x in &fs {
            if x.status == "mismatch" {
                seen_mismatch.insert(x.name.clone());
                assert!(x.to_string().starts_with(&format!("finding {} mismatch counterexample C={c}", x.name)));
            }
        }
    }
    for name in ["G1-multiplier", "G3-multiplier", "u", "L1", "L2", "d"] {
        assert!(seen_mismatch.contains(name), "{name}");
    }
}

/// Coefficients of M recovered by interpolation: M is a quadratic form in
/// (y^q, y^{q²}, y^{q³}), so six evaluations at generic y determine it.
fn interpolate_m(f: &FieldSpec, ctx: &AppendixContext, c: Elt) -> Option<[Elt; 6]> {
    // order: a20², a02², a00², 01, 10, 11 coefficients as in M's monomials
    let mons = |y: Elt| {
        let (y1, y2, y3) = (frob(f, y, 1), frob(f, y, 2), frob(f, y, 3));
        [f.mul(y1, y1), f.mul(y2, y2), f.mul(y3, y3), f.mul(y2, y3), f.mul(y1, y3), f.mul(y1, y2)]
    };
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for y in 1..f.order() as Elt {
        let v = registry_eval(ctx, "M", &Bindings::cy(c, y)).ok()?;
        let r = mons(y).to_vec();
        let mut trial = rows.clone();
        trial.push(r.clone());
        if common::rank(f, &trial) > rows.len() {
            rows.push(r);
            rhs.push(v);
        }
        if rows.len() == 6 {
            break;
        }
    }
    let sol = common::solve(f, &rows, &rhs)?;
    Some(sol.try_into().unwrap())
}

#[test]
fn gamma_empty_at_q2_against_interpolation_oracle() {
    let f = gf(1);
    for (al, be) in normalized_pairs(&f) {
        let ctx = AppendixContext::new(&f, al, be).unwrap();
        let mut oracle = Vec::new();
        for c in 0..16 {
            let c2 = f.mul(c, c);
            let (a2, b2) = (f.mul(al, al), f.mul(be, be));
            let e = f.add(f.mul(c2, a2), b2);
            let c2q = frob(&f, c2, 1);
            let s2 = f.add(f.add(f.mul(f.mul(c2q, c2), a2), f.mul(c2q, b2)), 1);
            if f.mul(e, s2) == 0 || !brute_injective(&f, &[0, c2, 1, e]) {
                continue;
            }
            let Some(m) = interpolate_m(&f, &ctx, c) else { continue };
            if m[3] != 0 || m[4] != 0 || m[5] != 0 {
                continue;
            }
            let sq = |z: Elt| f.pow_u(z, f.order() / 2);
            if brute_injective(&f, &[0, sq(m[0]), sq(m[1]), sq(m[2])]) {
                oracle.push(c);
            }
        }
        assert_eq!(gamma_set(&ctx).unwrap(), oracle);
        assert!(oracle.is_empty());
        let rep = verify_gamma_unsaturated(&ctx, true).unwrap();
        rep.check().unwrap();
        assert!(rep.vacuous());
    }
}

#[test]
fn gamma_empty_at_q4() {
    let f = gf(2);
    for (al, be) in normalized_pairs(&f).into_iter().filter(|p| p.0 != 1).step_by(17) {
        let ctx = AppendixContext::new(&f, al, be).unwrap();
        let rep = verify_gamma_unsaturated(&ctx, true).unwrap();
        rep.check().unwrap();
        assert!(rep.vacuous());
        assert_eq!(rep.f_locus_unsaturated, 0);
    }
}

#[test]
fn printed_gamma_members_at_q2() {
    let f = gf(1);
    let mut members = 0;
    let mut saturated = 0;
    for (al, be) in normalized_pairs(&f) {
        let ctx = AppendixContext::new(&f, al, be).unwrap();
        let ls = linear_set(&case_system(&f, 4, al, be).unwrap()).unwrap();
        for c in gamma_set_transcribed(&ctx, GammaVariant::Printed).unwrap() {
            members += 1;
            let p = Point::new(&f, &[0, 1, c]).unwrap();
            let pts: Vec<Vec<Elt>> = ls.points().iter().map(|p| p.coords().to_vec()).collect();
            if common::point_saturated_brute(&f, &pts, p.coords()) {
                saturated += 1;
            }
        }
    }
    assert_eq!((members, saturated), (8, 4));
}

#[test]
fn delta0_examples() {
    let f = gf(6);
    for &beta in f.mid_elements() {
        if beta == 0 {
            continue;
        }
        assert_eq!(r0(&f, beta, 0), 0);
        let d = delta_sets(&f, beta, 0).unwrap();
        assert!(!d.contains(&0));
        assert!(!d.is_empty(), "beta={beta}");
        // count from the curve argument, reported rather than asserted
        let _bound = (64.0 - 2.0 * 8.0) / 2.0 - 1.0 - 10.0;
    }
    assert!(matches!(delta_sets(&f, 0, 0), Err(Error::InvalidBeta(_))));
    let outside = (2..f.order() as Elt).find(|&b| !f.in_fq(b)).unwrap();
    assert!(matches!(delta_sets(&f, outside, 0), Err(Error::InvalidBeta(_))));
}

#[test]
fn delta0_trace_matches_artin_schreier() {
    for a in [2, 3, 4, 6] {
        let f = gf(a);
        for &beta in f.mid_elements() {
            if beta == 0 {
                continue;
            }
            let d = delta_sets(&f, beta, 0).unwrap();
            for &z in f.mid_elements() {
                let Some(solvable) = appendix_as(&f, beta, z) else { continue };
                let in_d = d.contains(&z);
                if in_d {
                    assert!(solvable);
                }
                if solvable && r0(&f, beta, z) != 0 {
                    assert!(in_d);
                }
            }
        }
    }
}

fn appendix_as(f: &FieldSpec, beta: Elt, z: Elt) -> Option<bool> {
    ranksat_core::appendix::delta0_artin_schreier(f, beta, z).unwrap()
}

/// (1:z:β) is unsaturated by L_{U_{1,β}} exactly
/// when the projection from it is scattered. Checked for every z ∈ F_q.
#[test]
fn delta_projection_matches_secant_scan() {
    for a in [1, 2] {
        let f = gf(a);
        let q = f.q();
        for beta in 1..f.order() as Elt {
            if f.pow_u(beta, (q * q + 1) * (q - 1)) != 1 {
                continue;
            }
            let ls = linear_set(&case_system(&f, 4, 1, beta).unwrap()).unwrap();
            for &z in f.mid_elements() {
                let p = Point::new(&f, &[1, z, beta]).unwrap();
                let scan = delta_projection(&f, beta, z).unwrap();
                assert_eq!(scan.scattered, point_unsaturated_by(&ls, &p), "q={q} beta={beta} z={z}");
            }
        }
    }
}

#[test]
fn delta_unsaturated_at_q64_sample() {
    let f = gf(6);
    let beta = f.mid_elements()[5];
    let d = delta_sets(&f, beta, 0).unwrap();
    let r = verify_delta_unsaturated(&f, beta, 0, d[0]).unwrap();
    r.check().unwrap();
    assert_eq!(r.scan.classes, (1 << 24) / 63);
    let not_in = f.mid_elements().iter().copied().find(|z| !d.contains(z)).unwrap();
    assert!(verify_delta_unsaturated(&f, beta, 0, not_in).is_err());
}

#[test]
fn delta1_membership_needs_beta_outside_fq() {
    let f = gf(3);
    let q = f.q();
    let beta = (2..f.order() as Elt)
        .find(|&b| !f.in_fq(b) && f.pow_u(b, (q * q + 1) * (q - 1)) == 1)
        .unwrap();
    let d1 = delta_sets(&f, beta, 1).unwrap();
    for &z in &d1 {
        assert!(z != 0 && z != 1);
        assert_ne!(delta1_filter(&f, beta, z), 0);
        for i in 1..=4 {
            assert_ne!(h(&f, beta, i, z), 0);
        }
    }
    assert!(matches!(delta_sets(&f, 1, 1), Err(Error::InvalidBeta(_))));
}

#[test]
fn projection_scan_examples() {
    let f = gf(2);
    let s = projection_scan(&f, |x| (x, f.frob(x, 1))).unwrap();
    assert!(s.scattered && !s.kernel);
    assert_eq!(s.classes, 85);
    let s = projection_scan(&f, |x| (x, x)).unwrap();
    assert!(!s.scattered);
    let s = projection_scan(&f, |x| (f.add(x, f.frob(x, 1)), 0)).unwrap();
    assert!(!s.scattered && s.kernel);
}

#[test]
fn case3_norm_matches_scan_for_every_omega() {
    for a in [1, 2] {
        let f = gf(a);
        let q = f.q();
        for al in 1..f.order() as Elt {
            if f.frob(al, 2) != al || f.pow_u(al, q + 1) != 1 || al == 1 {
                continue;
            }
            for w in (0..f.order() as Elt).filter(|&w| f.frob(w, 2) == w) {
                let norm = case3_norm_condition(&f, al, w);
                let direct = projection_scan(&f, |x| {
                    (f.add(f.frob(x, 1), f.mul(al, f.frob(x, 3))), f.add(f.frob(x, 2), f.mul(w, x)))
                })
                .unwrap();
                let reduced = projection_scan(&f, |x| {
                    let c3 = f.add(f.mul(w, al), 1);
                    (x, f.add(f.mul(c3, f.frob(x, 3)), f.mul(f.add(w, al), f.frob(x, 1))))
                })
                .unwrap();
                assert_eq!(norm, direct.scattered, "q={q} alpha={al} omega={w}");
                assert_eq!(norm, reduced.scattered, "q={q} alpha={al} omega={w}");
                assert_eq!(norm, !f.in_fq(w));
            }
        }
    }
}

#[test]
fn case3_witness_for_every_alpha() {
    for a in [1, 2] {
        let f = gf(a);
        let q = f.q();
        for al in 1..f.order() as Elt {
            if f.frob(al, 2) != al || f.pow_u(al, q + 1) != 1 {
                continue;
            }
            let (w, rep) = case3_witness(&f, al).unwrap();
            assert!(rep.ok(), "{rep:?}");
            assert_eq!(rep.secant_ok, Some(true));
            let ls = linear_set(&case_system(&f, 3, al, 0).unwrap()).unwrap();
            let pts: Vec<Vec<Elt>> = ls.points().iter().map(|p| p.coords().to_vec()).collect();
            assert!(!common::point_saturated_brute(&f, &pts, &[1, 0, w]));
            if al == 1 {
                assert_eq!(rep.route, Case3Route::UniqueHeavyPoint);
            } else {
                assert!(!f.in_fq(w));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linpoly_is_fq_linear(c in prop::array::uniform4(0u32..256), x in 0u32..256, y in 0u32..256, l in 0u32..4) {
        let f = gf(2);
        let p = LinPoly::new(&f, &c);
        let lam = f.mid_elements()[l as usize];
        prop_assert_eq!(p.eval(f.add(x, f.mul(lam, y))), f.add(p.eval(x), f.mul(lam, p.eval(y))));
    }

    #[test]
    fn dickson_det_iff_kernel_at_q4(c in prop::array::uniform4(0u32..256)) {
        let f = gf(2);
        let p = LinPoly::new(&f, &c);
        prop_assert_eq!(p.dickson_det() != 0, brute_injective(&f, &c));
        prop_assert_eq!(p.kernel_dim() == 0, p.is_bijective());
    }

    #[test]
    fn ypoly_eval_is_a_ring_map(
        ta in prop::collection::vec((prop::array::uniform4(0u8..3), 1u32..256), 0..6),
        tb in prop::collection::vec((prop::array::uniform4(0u8..3), 1u32..256), 0..6),
        y in 0u32..256,
    ) {
        let f = gf(2);
        let a = YPoly::from_terms(&f, ta);
        let b = YPoly::from_terms(&f, tb);
        prop_assert_eq!(a.mul(&f, &b).eval(&f, y), f.mul(a.eval(&f, y), b.eval(&f, y)));
        prop_assert_eq!(a.add(&f, &b).eval(&f, y), f.add(a.eval(&f, y), b.eval(&f, y)));
        prop_assert_eq!(a.frob(&f, 1).eval(&f, y), f.frob(a.eval(&f, y), 1));
        if !b.is_zero() {
            prop_assert_eq!(a.mul(&f, &b).div_exact(&f, &b).unwrap(), a);
        }
    }
}
