//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! gating line fails. Heavy; takes tens of minutes on one core.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ranksat_core::appendix::{verify_gamma_unsaturated, AppendixContext, LinPoly};
use ranksat_core::cert::{verify_certificate, CheckStatus};
use ranksat_core::constructions::{case4_params, moore_saturate_witness, moore_system, MooreParams};
use ranksat_core::rankcov::{
    code_from_system, covering_radius, covering_radius_naive, covering_radius_syndrome, prime_power,
    saturating_index, Code,
};
use ranksat_core::reproduce::{field_for, run_suite, SuiteOptions, SuiteReport, MOORE_GRID};
use ranksat_core::search::{min_rank_search, Reduction, SearchTask, Verdict};
use ranksat_core::{Elt, FieldSpec};

type Check = Result<(bool, String), String>;

struct Runner {
    failed: Vec<String>,
    /// Time already spent on shared work, charged to the next line.
    carry: Duration,
}

impl Runner {
    fn line(&mut self, id: &str, title: &str, limit: Option<Duration>, gating: bool, f: impl FnOnce() -> Check) {
        let t0 = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let dt = t0.elapsed() + std::mem::take(&mut self.carry);
        let (mut ok, mut detail) = match out {
            Ok(x) => x,
            Err(e) => (false, e),
        };
        if let Some(l) = limit.filter(|l| dt > *l) {
            ok = false;
            detail.push_str(&format!("; over the {} s limit", l.as_secs()));
        }
        let tag = match (ok, gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "MISS",
        };
        println!("{tag} {id:>3} {title}: {detail} [{:.1} s]", dt.as_secs_f64());
        if !ok && gating {
            self.failed.push(id.to_string());
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Every claim of every certificate re-verified from scratch.
fn recheck(rep: &SuiteReport) -> Result<usize, String> {
    let mut n = 0;
    for c in rep.claims.iter().filter_map(|c| c.cert.as_ref()) {
        for chk in verify_certificate(c).map_err(err)? {
            if let CheckStatus::Falsified(why) = &chk.status {
                return Err(format!("certificate claim {} falsified: {why}", chk.claim));
            }
            n += 1;
        }
    }
    Ok(n)
}

fn suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport, String> {
    run_suite(name, opts).map_err(err)
}

fn timed_suite(name: &str, opts: &SuiteOptions) -> (Result<SuiteReport, String>, Duration) {
    let t0 = Instant::now();
    let r = catch_unwind(|| suite(name, opts)).unwrap_or_else(|_| Err(format!("panic in {name}")));
    (r, t0.elapsed())
}

fn failing(rep: &SuiteReport, pick: impl Fn(&str) -> bool) -> Vec<String> {
    rep.claims
        .iter()
        .filter(|c| pick(&c.label) && !c.pass)
        .map(|c| format!("{}: {}", c.label, c.detail))
        .collect()
}

fn slowest_ms(rep: &SuiteReport, pick: impl Fn(&str) -> bool) -> u128 {
    rep.claims
        .iter()
        .filter(|c| pick(&c.label))
        .filter_map(|c| c.cert.as_ref()?.provenance.as_ref().map(|p| p.wall_ms))
        .max()
        .unwrap_or(0)
}

// ---------------------------------------------------------------- 3

fn witness_check(p: u32, a: u32, m: u32, rho: usize, t: usize, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let f = FieldSpec::gf(p, a, m).map_err(err)?;
    let params = MooreParams::new(&f, rho, t);
    let u = moore_system(&params).map_err(err)?;
    let members: HashSet<Vec<Elt>> = span_vectors(&u).into_iter().collect();
    let k = rho * t;
    for _ in 0..1000 {
        let v: Vec<Elt> = (0..k).map(|_| rng.gen_range(0..f.order()) as Elt).collect();
        let ws = moore_saturate_witness(&params, &v).map_err(err)?;
        if ws.len() != rho {
            return Err(format!("{} vectors for rho={rho}", ws.len()));
        }
        if let Some(w) = ws.iter().find(|w| !members.contains(*w)) {
            return Err(format!("{w:?} not in U for v={v:?}"));
        }
        let r = rank(&f, &ws);
        let mut with = ws.clone();
        with.push(v.clone());
        if rank(&f, &with) != r {
            return Err(format!("v={v:?} outside the span of its witnesses"));
        }
    }
    Ok(1000)
}

// ---------------------------------------------------------------- 13

/// x^{q^i} for every x and i < m, by repeated powering.
fn frobenius_table(f: &FieldSpec) -> Vec<Vec<Elt>> {
    let m = f.m() as usize;
    let mut rows = vec![(0..f.order() as Elt).collect::<Vec<_>>()];
    for i in 1..m {
        let next = rows[i - 1].iter().map(|&x| f.pow_u(x, f.q())).collect();
        rows.push(next);
    }
    rows
}

fn bijective_by_image(f: &FieldSpec, tab: &[Vec<Elt>], c: &[Elt]) -> bool {
    let mut seen = vec![false; f.order() as usize];
    for x in 0..f.order() as usize {
        let y = c.iter().zip(tab).fold(0, |acc, (&ci, row)| f.add(acc, f.mul(ci, row[x])));
        if std::mem::replace(&mut seen[y as usize], true) {
            return false;
        }
    }
    true
}

/// (fields, polynomials, bijective, exhaustive fields, discrepancies)
fn dickson_sweep() -> Result<(usize, usize, usize, usize, Vec<String>), String> {
    const EXHAUSTIVE: u64 = 1 << 20;
    const SAMPLES: usize = 2000;
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let (mut fields, mut polys, mut bij, mut exh) = (0, 0, 0, 0);
    let mut bad = Vec::new();
    for q in 2..=64u64 {
        let Some((p, e)) = prime_power(q) else { continue };
        let mut m = 2u32;
        while q.pow(m) <= 1 << 12 {
            let f = FieldSpec::gf(p as u32, e, m).map_err(err)?;
            let tab = frobenius_table(&f);
            let order = f.order();
            let mut run = |c: Vec<Elt>| {
                let lp = LinPoly::new(&f, &c);
                let want = bijective_by_image(&f, &tab, &c);
                polys += 1;
                bij += want as usize;
                if (lp.dickson_det() != 0) != want || lp.is_bijective() != want {
                    bad.push(format!("q={q} m={m} {c:?}"));
                }
            };
            let total = order.checked_pow(m).unwrap_or(u64::MAX);
            if total <= EXHAUSTIVE {
                exh += 1;
                for t in 0..total {
                    let mut r = t;
                    run((0..m).map(|_| {
                        let x = (r % order) as Elt;
                        r /= order;
                        x
                    })
                    .collect());
                }
            } else {
                for s in 0..SAMPLES {
                    if s % 4 == 0 {
                        // x^q - a^{q-1} x vanishes on a F_q
                        let a = rng.gen_range(1..order) as Elt;
                        let mut c = vec![0; m as usize];
                        c[0] = f.neg(f.pow_u(a, q - 1));
                        c[1] = 1;
                        run(c);
                    } else {
                        run((0..m).map(|_| rng.gen_range(0..order) as Elt).collect());
                    }
                }
            }
            fields += 1;
            m += 1;
        }
    }
    Ok((fields, polys, bij, exh, bad))
}

fn main() {
    let mut run = Runner { failed: Vec::new(), carry: Duration::ZERO };
    let opts = SuiteOptions::default();
    let min = |x: u64| Some(Duration::from_secs(60 * x));

    // 1, 2
    let (moore, dt) = timed_suite("moore-grid", &opts);
    run.carry = dt;
    let recheck_moore = moore.as_ref().map_err(Clone::clone).and_then(recheck);
    run.line("1", "moore grid: rank m(t-1)+rho, index rho", None, true, || {
        let rep = moore.as_ref().map_err(Clone::clone)?;
        let grid = |l: &str| l.starts_with("moore p=");
        let bad = failing(rep, grid);
        let slow = slowest_ms(rep, grid);
        let checked = recheck_moore.clone()?;
        // independent index where the brute force is affordable
        let mut oracle = Vec::new();
        for (p, a, m, rho, t) in MOORE_GRID {
            let f = FieldSpec::gf(p, a, m).map_err(err)?;
            let u = moore_system(&MooreParams::new(&f, rho, t)).map_err(err)?;
            let pts = (f.order() as f64).powi((rho * t) as i32 - 1);
            if pts > 5000.0 {
                continue;
            }
            let idx = index_bruteforce(&u);
            if idx != Some(rho as u32) {
                return Ok((false, format!("oracle index {idx:?} at {:?}", (p, a, m, rho, t))));
            }
            oracle.push((p, a, m));
        }
        Ok((
            bad.is_empty() && slow <= 60_000,
            format!(
                "6 points, failures {bad:?}, slowest {slow} ms, {checked} certificate claims re-verified, brute-force index agrees at {oracle:?}"
            ),
        ))
    });
    run.line("2", "shifted Moore systems, m=5, s=1..4", min(10), true, || {
        let rep = moore.as_ref().map_err(Clone::clone)?;
        let sh = |l: &str| l.starts_with("moore shifted");
        let bad = failing(rep, sh);
        let n = rep.claims.iter().filter(|c| sh(&c.label)).count();
        Ok((bad.is_empty() && n == 4, format!("{n} shifts, rank 7 and index 2 unless listed: {bad:?}")))
    });

    // 3
    run.line("3", "witness solver, 1000 random targets per grid point", None, true, || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut n = 0;
        for (p, a, m, rho, t) in MOORE_GRID {
            n += witness_check(p, a, m, rho, t, &mut rng).map_err(|e| format!("{:?}: {e}", (p, a, m, rho, t)))?;
        }
        Ok((true, format!("{n} targets, all witnesses in U and spanning the target")))
    });

    // 4
    run.line("4", "index equals covering radius of the dual code", min(15), true, || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut defined = 0;
        let mut bad = Vec::new();
        for (q, m, k) in [(2u64, 3u32, 2usize), (2, 2, 3), (3, 2, 2)] {
            let f = field_for(q, m).map_err(err)?;
            for i in 0..200 {
                let n = 1 + i % 6;
                let u = random_system(&f, k, n, &mut rng);
                let idx = saturating_index(&u).map_err(err)?;
                let oracle = index_bruteforce(&u);
                if idx != oracle {
                    bad.push(format!("q={q} m={m} k={k} #{i}: index {idx:?} vs brute force {oracle:?}"));
                    continue;
                }
                let Some(idx) = idx else { continue };
                defined += 1;
                let d = code_from_system(&u).map_err(err)?.dual();
                let r = covering_radius(&d).map_err(err)?;
                if r != idx {
                    bad.push(format!("q={q} m={m} k={k} #{i}: index {idx} radius {r}"));
                }
            }
        }
        Ok((bad.is_empty(), format!("600 systems, {defined} with defined index, discrepancies {bad:?}")))
    });

    // 5, 6
    let (hs, dt) = timed_suite("hscattered", &opts);
    run.carry = dt;
    run.line("5", "maximum h-scattered systems", min(10), true, || {
        let rep = hs.as_ref().map_err(Clone::clone)?;
        let pick = |l: &str| l.starts_with("hscattered");
        let bad = failing(rep, pick);
        let details: Vec<_> = rep.claims.iter().filter(|c| pick(&c.label)).map(|c| c.detail.clone()).collect();
        let checked = recheck(rep)?;
        Ok((bad.is_empty(), format!("{details:?}, {checked} certificate claims re-verified")))
    });
    run.line("6", "thinned h-scattered system is 2-saturating", min(5), true, || {
        let rep = hs.as_ref().map_err(Clone::clone)?;
        let c = rep.claims.iter().find(|c| c.label.starts_with("thinned")).ok_or("missing claim")?;
        Ok((c.pass && c.detail.contains("4369 points"), c.detail.clone()))
    });

    // 7
    for (q, limit) in [(2u64, 5), (4, 120)] {
        run.line("7", &format!("rank-4 case sweep at q={q}"), min(limit), true, || {
            let rep = suite("case-sweep", &SuiteOptions { case_q: q, ..opts.clone() })?;
            let bad = failing(&rep, |_| true);
            let checked = recheck(&rep)?;
            Ok((
                bad.is_empty(),
                format!("{} claims, failures {bad:?}, {checked} certificate claims re-verified", rep.claims.len()),
            ))
        });
    }

    // 8
    run.line("8", "s_{16/2}(3,2) = 5 by canonical search", min(12 * 60), true, || {
        let f = FieldSpec::gf(2, 1, 4).map_err(err)?;
        let t = SearchTask::new(&f, 3, 2, (4, 5), Reduction::Canonical).map_err(err)?;
        let res = min_rank_search(&t, None).map_err(err)?;
        let r4 = res.outcome(4).ok_or("no rank-4 outcome")?;
        let none4 = matches!(r4.verdict, Verdict::NotFound);
        let Some(Verdict::Found { system, .. }) = res.outcome(5).map(|o| &o.verdict) else {
            return Ok((false, format!("rank 5 not found, value {:?}", res.value)));
        };
        let idx = index_bruteforce(system);
        Ok((
            none4 && res.value == Some(5) && idx == Some(2),
            format!(
                "rank 4: {} classes checked of {}, none 2-saturating; rank-5 system has brute-force index {idx:?}",
                r4.checked, r4.total
            ),
        ))
    });
    run.line("8", "stretch: s_{81/3}(3,2) = 5", None, false, || {
        let f = FieldSpec::gf(3, 1, 4).map_err(err)?;
        let t = SearchTask::new(&f, 3, 2, (4, 5), Reduction::Canonical).map_err(err)?;
        let res = min_rank_search(&t, None).map_err(err)?;
        let none4 = res.outcome(4).is_some_and(|o| matches!(o.verdict, Verdict::NotFound));
        Ok((none4 && res.value == Some(5), format!("value {:?}", res.value)))
    });

    // 9, 10
    let (app2, dt2) = timed_suite("appendix-q2", &opts);
    let (app4, dt4) = timed_suite("appendix-q4", &opts);
    for (q, rep, limit, dt) in [(2, &app2, 5, dt2), (4, &app4, 120, dt4)] {
        run.carry = dt;
        run.line("9", &format!("appendix identities at q={q}"), min(limit), true, || {
            let rep = rep.as_ref().map_err(Clone::clone)?;
            let c = rep.claims.iter().find(|c| c.label.contains("identities")).ok_or("missing claim")?;
            Ok((c.pass, format!("{}: {}", c.label, c.detail)))
        });
        run.line("9", &format!("transcription mismatches at q={q} (reported)"), None, false, || {
            let rep = rep.as_ref().map_err(Clone::clone)?;
            let c = rep.claims.iter().find(|c| c.label.contains("transcription")).ok_or("missing claim")?;
            let checked = recheck(rep)?;
            Ok((c.pass, format!("{}; {checked} certificate claims re-verified", c.detail)))
        });
    }
    let t10 = Instant::now();
    for (q, rep) in [(2, &app2), (4, &app4)] {
        run.line("10", &format!("gamma members unsaturated at q={q}"), None, true, || {
            let rep = rep.as_ref().map_err(Clone::clone)?;
            let c = rep.claims.iter().find(|c| c.label.contains("gamma")).ok_or("missing claim")?;
            Ok((c.pass, c.detail.clone()))
        });
    }
    run.line("10", "gamma members unsaturated at q=8", Some(Duration::from_secs(4 * 3600)), true, || {
        let f = field_for(8, 4).map_err(err)?;
        let (mut pairs, mut members, mut failures) = (0, 0, 0);
        for (alpha, beta) in case4_params(&f).map_err(err)?.into_iter().filter(|p| p.0 != 1) {
            let ctx = AppendixContext::new(&f, alpha, beta).map_err(err)?;
            let rep = verify_gamma_unsaturated(&ctx, false).map_err(err)?;
            pairs += 1;
            members += rep.members.len();
            failures += rep.failures.len();
        }
        let vac = if members == 0 { " (vacuous: derived gamma is empty)" } else { "" };
        Ok((failures == 0, format!("{pairs} pairs, members={members} failures={failures}{vac}")))
    });
    println!("    10 total gamma time {:.0} s", t10.elapsed().as_secs_f64());

    // 11
    run.line("11", "delta0 at q=64", Some(Duration::from_secs(3 * 3600)), true, || {
        let rep = suite("delta-q64", &opts)?;
        let bad = failing(&rep, |_| true);
        let lines: Vec<_> = rep.claims.iter().map(|c| format!("{}: {}", c.label, c.detail)).collect();
        Ok((bad.is_empty() && rep.claims.len() == 6, lines.join("; ")))
    });

    // 12
    run.line("12", "bounds table and monotonicity", min(1), true, || {
        let rep = suite("bounds-table", &opts)?;
        let bad = failing(&rep, |_| true);
        let checked = recheck(&rep)?;
        Ok((
            bad.is_empty(),
            format!("{} claims, failures {bad:?}, {checked} certificate claims re-verified", rep.claims.len()),
        ))
    });

    // 13
    run.line("13", "oracle cross-checks", min(30), true, || {
        let f = FieldSpec::gf(2, 1, 2).map_err(err)?;
        let mut notes = Vec::new();
        for rho in 1..=2u32 {
            let mut vals = Vec::new();
            for red in [Reduction::Naive, Reduction::Canonical] {
                let t = SearchTask::new(&f, 2, rho, (rho as usize, 4), red).map_err(err)?;
                let res = min_rank_search(&t, None).map_err(err)?;
                let found: Vec<bool> =
                    res.outcomes.iter().map(|o| matches!(o.verdict, Verdict::Found { .. })).collect();
                vals.push((res.value, found));
            }
            if vals[0] != vals[1] {
                return Ok((false, format!("rho={rho}: naive {:?} vs canonical {:?}", vals[0], vals[1])));
            }
            notes.push(format!("rho={rho}: s={:?}", vals[0].0));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(1313);
        let shapes = [(2u64, 2u32, 3usize), (2, 3, 3), (3, 2, 2), (4, 2, 2), (2, 2, 4)];
        for i in 0..100 {
            let (q, m, n) = shapes[i % shapes.len()];
            let f = field_for(q, m).map_err(err)?;
            let dim = rng.gen_range(0..=n);
            let rows: Vec<Vec<Elt>> =
                (0..dim).map(|_| (0..n).map(|_| rng.gen_range(0..f.order()) as Elt).collect()).collect();
            let c = Code::new(&f, n, &rows).map_err(err)?;
            let (a, b) = (covering_radius_naive(&c).map_err(err)?, covering_radius_syndrome(&c).map_err(err)?);
            if a != b {
                return Ok((false, format!("code #{i}: naive {a} syndrome {b}")));
            }
        }
        notes.push("100 codes agree".into());

        let (fields, polys, bij, exh, bad) = dickson_sweep()?;
        notes.push(format!(
            "Dickson vs image size: {polys} polynomials ({bij} bijective) over {fields} fields, {exh} enumerated completely"
        ));
        Ok((bad.is_empty(), format!("{}; discrepancies {bad:?}", notes.join("; "))))
    });

    if run.failed.is_empty() {
        println!("acceptance: all gating criteria pass");
    } else {
        println!("acceptance: failing {:?}", run.failed);
        std::process::exit(1);
    }
}
