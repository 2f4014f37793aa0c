use std::time::Instant;

use ranksat_core::appendix::{
    case3_witness, delta_sets, gamma_set, gamma_set_transcribed, transcription_findings, verify_delta_unsaturated,
    verify_gamma_unsaturated, verify_identities, AppendixContext, GammaVariant,
};
use ranksat_core::cert::{verify_certificate, Certificate, CheckStatus, Claim, Provenance, SearchVerdict};
use ranksat_core::constructions::{
    case_system, hscattered_moore, moore_system, rank5_example, thin_to_saturating, MooreParams,
};
use ranksat_core::linalg::System;
use ranksat_core::linset::{is_h_scattered, is_scattered};
use ranksat_core::rankcov::{
    code_from_system, covering_radius, covering_radius_naive, known_value, lower_bound, prime_power,
    saturation_report, upper_bound,
};
use ranksat_core::reproduce::{run_suite, SuiteOptions};
use ranksat_core::search::{min_rank_search, Checkpoint, Reduction, SearchTask, Verdict};
use ranksat_core::{Elt, FieldSpec};

use crate::files;
use crate::{AppendixWhat, BaseArgs, CertOut, CmdResult, Command, Construct, Failure, FieldArgs, Property, SearchArgs};

fn field_of(base: &BaseArgs, m: u32, modulus: Option<&[u32]>) -> Result<FieldSpec, Failure> {
    let (p, e) = prime_power(base.q).ok_or_else(|| Failure::Usage(format!("--q {} is not a prime power", base.q)))?;
    if base.a == 0 {
        return Err(Failure::Usage("--a must be at least 1".into()));
    }
    Ok(FieldSpec::new(p as u32, e * base.a, m, modulus)?)
}

fn field(args: &FieldArgs) -> Result<FieldSpec, Failure> {
    field_of(&args.base, args.m, None)
}

fn emit(cert: &mut Certificate, out: &CertOut, t0: Instant) -> CmdResult {
    cert.provenance = Some(Provenance::now(t0.elapsed().as_millis()));
    let text = cert.to_text();
    print!("{text}");
    if let Some(p) = &out.cert {
        files::write(p, &text)?;
    }
    Ok(())
}

fn index_claims(c: &mut Certificate, u: &System, rho: Option<u32>) -> CmdResult {
    let idx = saturation_report(u, None)?.index;
    if let Some(r) = rho {
        c.claims.push(Claim::Saturating { rho: r, result: idx == Some(r), witness: None });
    }
    c.claims.push(Claim::Index { value: idx });
    Ok(())
}

pub fn run(cmd: Command) -> CmdResult {
    let t0 = Instant::now();
    match cmd {
        Command::Field { field: fa, modulus } => {
            let f = field_of(&fa.base, fa.m, modulus.as_deref())?;
            println!("{f}");
            println!("q {}", f.q());
            println!("order {}", f.order());
            println!("generator {}", f.generator());
            println!("tables {}", f.has_tables());
            Ok(())
        }
        Command::Construct { what } => construct(what, t0),
        Command::Check { property, system, q, a, m, k, rho, h, out } => {
            let u = files::read_system(&system)?;
            let f = u.field();
            let expect_q = q.map(|q| q.pow(a.unwrap_or(1)));
            if expect_q.is_some_and(|q| q != f.q()) || m.is_some_and(|m| m != f.m()) || k.is_some_and(|k| k != u.k()) {
                return Err(Failure::Usage(format!(
                    "{} holds a system over q={} m={} k={}, not the one requested",
                    system.display(),
                    f.q(),
                    f.m(),
                    u.k()
                )));
            }
            let mut c = Certificate::for_system(&u);
            let holds = match property {
                Property::Saturating => {
                    let rho = rho.ok_or_else(|| Failure::Usage("check saturating needs --rho".into()))?;
                    let rep = saturation_report(&u, Some(rho))?;
                    let ok = rep.index == Some(rho);
                    let witness = rep.witnesses.iter().find(|w| w.0 == rho).map(|w| w.1.coords().to_vec());
                    println!("saturating rho={rho} result={ok}");
                    c.claims.push(Claim::Saturating { rho, result: ok, witness });
                    ok
                }
                Property::Index => {
                    let idx = saturation_report(&u, None)?.index;
                    println!("index {}", idx.map_or("none".into(), |i| i.to_string()));
                    c.claims.push(Claim::Index { value: idx });
                    idx.is_some()
                }
                Property::Scattered => {
                    let ok = is_scattered(&u)?;
                    println!("scattered result={ok}");
                    c.claims.push(Claim::Scattered { result: ok });
                    ok
                }
                Property::HScattered => {
                    let h = h.ok_or_else(|| Failure::Usage("check h-scattered needs --h".into()))?;
                    let ok = is_h_scattered(&u, h)?.holds;
                    println!("h-scattered h={h} result={ok}");
                    c.claims.push(Claim::HScattered { h, result: ok });
                    ok
                }
            };
            if let Some(p) = &out.cert {
                c.provenance = Some(Provenance::now(t0.elapsed().as_millis()));
                files::write(p, &c.to_text())?;
            }
            if holds {
                Ok(())
            } else {
                Err(Failure::Falsified("property does not hold".into()))
            }
        }
        Command::Covrad { system, code, naive } => {
            let code = match (system, code) {
                (Some(s), _) => code_from_system(&files::read_system(&s)?)?.dual(),
                (None, Some(c)) => files::read_code(&c)?,
                (None, None) => return Err(Failure::Usage("need --system or --code".into())),
            };
            let r = if naive { covering_radius_naive(&code)? } else { covering_radius(&code)? };
            println!("length {} dimension {}", code.len(), code.dim());
            println!("covering_radius {r}");
            Ok(())
        }
        Command::Bounds { field: fa, k, rho } => {
            let (p, e) =
                prime_power(fa.base.q).ok_or_else(|| Failure::Usage(format!("--q {} is not a prime power", fa.base.q)))?;
            let q = p.pow(e * fa.base.a);
            let m = fa.m;
            println!("q {q} m {m} k {k} rho {rho}");
            println!("lower {}", lower_bound(q, m, k, rho)?);
            println!("upper {}", upper_bound(m, k, rho)?);
            match known_value(q, m, k, rho) {
                Some(v) if v.lo == v.hi => println!("known {} ({})", v.lo, v.sources.join(", ")),
                Some(v) => println!("known {}..{} ({})", v.lo, v.hi, v.sources.join(", ")),
                None => println!("known none"),
            }
            if (m, k, rho) == (4, 3, 2) {
                println!(
                    "note s = 5 is established for q = 2, 3 by exhaustive search and for even q >= 64; \
                     the lower bound 4 is not attained there"
                );
            }
            Ok(())
        }
        Command::Search(a) => search(a, t0),
        Command::Appendix { what, base, alpha, beta, z, c, out } => appendix(what, &base, alpha, beta, z, c, &out, t0),
        Command::Reproduce { suite, out, case_q, samples, betas, seed } => {
            let opts = SuiteOptions { case_q, samples, delta_betas: betas, seed };
            let rep = run_suite(&suite, &opts)?;
            let dir = files::out_dir(out).join(&suite);
            for (i, c) in rep.claims.iter().enumerate() {
                let tag = if c.pass {
                    "PASS"
                } else if c.budget {
                    "BUDGET"
                } else {
                    "FAIL"
                };
                println!("{tag} {}: {}", c.label, c.detail);
                if let Some(cert) = &c.cert {
                    let mut text = format!("# {}\n", c.label);
                    text.push_str(&cert.to_text());
                    files::write(&dir.join(format!("{:03}.cert", i + 1)), &text)?;
                }
            }
            let fails = rep.claims.iter().filter(|c| !c.pass && !c.budget).count();
            println!("{}: {} of {} claims pass; certificates in {}", suite, rep.claims.iter().filter(|c| c.pass).count(), rep.claims.len(), dir.display());
            if fails > 0 {
                Err(Failure::Falsified(format!("{fails} claims failed")))
            } else if rep.budget_exceeded() {
                Err(Failure::Budget("some claims exceeded the configured caps".into()))
            } else {
                Ok(())
            }
        }
        Command::VerifyCert { file } => {
            let cert = files::read_cert(&file)?;
            let checks = verify_certificate(&cert)?;
            let mut bad = 0;
            for ch in &checks {
                let line = ch.claim.to_string().replace('\n', " / ");
                match &ch.status {
                    CheckStatus::Verified => println!("verified {line}"),
                    CheckStatus::Skipped(why) => println!("skipped {line} ({why})"),
                    CheckStatus::Falsified(got) => {
                        bad += 1;
                        println!("FALSIFIED {line} (recomputed: {got})");
                    }
                }
            }
            println!("{} claims, {bad} falsified", checks.len());
            if bad > 0 {
                Err(Failure::Falsified(format!("{bad} claims in {}", file.display())))
            } else {
                Ok(())
            }
        }
    }
}

fn construct(what: Construct, t0: Instant) -> CmdResult {
    match what {
        Construct::Moore { field: fa, rho, t, shifts, out } => {
            let f = field(&fa)?;
            let mut p = MooreParams::new(&f, rho, t);
            if let Some(s) = shifts {
                p = p.with_shifts(s);
            }
            let u = moore_system(&p)?;
            let mut c = Certificate::for_system(&u);
            index_claims(&mut c, &u, Some(rho as u32))?;
            emit(&mut c, &out, t0)
        }
        Construct::Case { base, case, alpha, beta, out } => {
            let f = field_of(&base, 4, None)?;
            let u = case_system(&f, case, alpha, beta)?;
            let mut c = Certificate::for_system(&u);
            index_claims(&mut c, &u, Some(2))?;
            emit(&mut c, &out, t0)
        }
        Construct::Rank5 { base, out } => {
            let f = field_of(&base, 4, None)?;
            let u = rank5_example(&f)?;
            let mut c = Certificate::for_system(&u);
            index_claims(&mut c, &u, Some(2))?;
            emit(&mut c, &out, t0)
        }
        Construct::Hscattered { field: fa, h, t, thin, out } => {
            let f = field(&fa)?;
            let w = hscattered_moore(&f, h, t)?;
            let mut c;
            if thin {
                let u = thin_to_saturating(&w, h)?;
                c = Certificate::for_system(&u);
                index_claims(&mut c, &u, None)?;
            } else {
                c = Certificate::for_system(&w);
                c.claims.push(Claim::HScattered { h, result: is_h_scattered(&w, h)?.holds });
            }
            emit(&mut c, &out, t0)
        }
        Construct::Subgeometry { field: fa, k, out } => {
            let f = field(&fa)?;
            let u = System::subgeometry(&f, k);
            let mut c = Certificate::for_system(&u);
            index_claims(&mut c, &u, None)?;
            emit(&mut c, &out, t0)
        }
    }
}

fn search(a: SearchArgs, t0: Instant) -> CmdResult {
    let f = field(&a.field)?;
    let red: Reduction = a.reduction.parse()?;
    let task = SearchTask::new(&f, a.k, a.rho, (a.rank_min, a.rank_max), red)?
        .with_shard(a.shards, a.shard_id)?
        .with_node_cap(a.node_cap);
    let resume = match &a.resume {
        Some(p) => Some(Checkpoint::parse(&files::read(p)?)?),
        None => None,
    };
    let res = min_rank_search(&task, resume.as_ref())?;
    println!("{f}");
    println!(
        "search k={} rho={} ranks={}..{} reduction={} shard={}/{}",
        a.k, a.rho, a.rank_min, a.rank_max, red, a.shard_id, a.shards
    );
    if let Some(g) = res.group_order {
        println!("stabilizer order {g}");
    }
    if let Some(cav) = res.caveat {
        println!("caveat {cav}");
    }
    let mut cert = Certificate::new(Some(&f));
    for o in &res.outcomes {
        let v = SearchVerdict::of(&o.verdict);
        println!(
            "rank {}: {} total={} enumerated={} checked={}",
            o.rank,
            match v {
                SearchVerdict::Found => "found",
                SearchVerdict::None => "none",
                SearchVerdict::Incomplete => "incomplete",
            },
            o.total,
            o.enumerated,
            o.checked
        );
        if let Verdict::Found { system, .. } = &o.verdict {
            print!("{}", system.to_lines());
            cert.k = Some(system.k());
            cert.generators = system.generators().to_vec();
            cert.claims.insert(0, Claim::Saturating { rho: a.rho, result: true, witness: None });
        }
        if a.shards == 1 {
            cert.claims.push(Claim::Search {
                k: a.k,
                rho: a.rho,
                rank: o.rank,
                reduction: red,
                verdict: v,
                total: o.total,
                checked: o.checked,
            });
        }
    }
    if let Some(cav) = res.caveat {
        cert.notes.push(cav.to_string());
    }
    match res.value {
        Some(v) => println!("s = {v}"),
        None if res.complete() && a.shards == 1 => println!("s > {}", a.rank_max),
        None => {}
    }
    if res.complete() && a.shards == 1 {
        cert.claims.push(Claim::SearchValue {
            k: a.k,
            rho: a.rho,
            ranks: (a.rank_min, a.rank_max),
            reduction: red,
            value: res.value,
        });
    }
    if let Some(p) = &a.out.cert {
        cert.provenance = Some(Provenance::now(t0.elapsed().as_millis()));
        files::write(p, &cert.to_text())?;
    }
    if let Some(ck) = &res.checkpoint {
        let path = a.checkpoint.clone().unwrap_or_else(|| files::out_dir(None).join("search.ckpt"));
        files::write(&path, &ck.to_text())?;
        println!("checkpoint {}", path.display());
        return Err(Failure::Budget(format!("node cap reached; resume with --resume {}", path.display())));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn appendix(
    what: AppendixWhat,
    base: &BaseArgs,
    alpha: Elt,
    beta: Elt,
    z: Option<Elt>,
    c: Option<Elt>,
    out: &CertOut,
    t0: Instant,
) -> CmdResult {
    let f = field_of(base, 4, None)?;
    let mut cert = Certificate::new(Some(&f));
    let all_c = || -> Vec<Elt> { c.map_or_else(|| (0..f.order() as Elt).collect(), |c| vec![c]) };
    let mut falsified = None;
    match what {
        AppendixWhat::Gamma => {
            let ctx = AppendixContext::new(&f, alpha, beta)?;
            let g = gamma_set(&ctx)?;
            println!("gamma derived {} members {g:?}", g.len());
            for v in GammaVariant::ALL {
                let g = gamma_set_transcribed(&ctx, v)?;
                println!("gamma {} {} members {g:?}", v.label(), g.len());
            }
        }
        AppendixWhat::Identities => {
            let ctx = AppendixContext::new(&f, alpha, beta)?;
            let cs = all_c();
            let mut bad = 0;
            for &cc in &cs {
                let ok = match verify_identities(&ctx, cc) {
                    Ok(_) => true,
                    Err(ranksat_core::Error::IdentityViolation(m)) => {
                        println!("violation C={cc}: {m}");
                        false
                    }
                    Err(e) => return Err(e.into()),
                };
                bad += !ok as usize;
                if cs.len() <= 16 {
                    cert.claims.push(Claim::Identities { alpha, beta, c: cc, result: ok });
                }
            }
            println!("identities alpha={alpha} beta={beta}: {} C checked, {bad} violations", cs.len());
            if bad > 0 {
                falsified = Some(format!("{bad} identity violations"));
            }
        }
        AppendixWhat::GammaUnsat => {
            if alpha == 1 {
                return Err(Failure::Usage("gamma-unsat is stated for alpha != 1".into()));
            }
            let ctx = AppendixContext::new(&f, alpha, beta)?;
            let rep = verify_gamma_unsaturated(&ctx, true)?;
            println!(
                "gamma members={} failures={:?}{}",
                rep.members.len(),
                rep.failures,
                if rep.vacuous() { " (vacuous)" } else { "" }
            );
            println!("f-locus {} of which unsaturated {}", rep.f_locus, rep.f_locus_unsaturated);
            for (v, n, s) in &rep.printed {
                println!("printed {} members={n} saturated={s}", v.label());
            }
            cert.claims.push(Claim::GammaUnsat {
                alpha,
                beta,
                members: rep.members.len(),
                failures: rep.failures.len(),
            });
            if let Err(e) = rep.check() {
                falsified = Some(e.to_string());
            }
        }
        AppendixWhat::Delta => {
            let which = if f.in_fq(beta) { 0 } else { 1 };
            let zs = match z {
                Some(z) => vec![z],
                None => delta_sets(&f, beta, which)?,
            };
            println!("delta{which} beta={beta}: {} values", zs.len());
            let mut bad = 0;
            for &zz in &zs {
                let r = verify_delta_unsaturated(&f, beta, which, zz)?;
                println!("z={zz} scattered={} kernel={}", r.scattered(), r.scan.kernel);
                bad += !r.scattered() as usize;
                cert.claims.push(Claim::Delta { beta, z: zz, which, scattered: r.scattered() });
            }
            if bad > 0 {
                falsified = Some(format!("{bad} projections are not scattered"));
            }
        }
        AppendixWhat::Findings => {
            let ctx = AppendixContext::new(&f, alpha, beta)?;
            let cc = c.unwrap_or(1);
            for x in transcription_findings(&ctx, cc)? {
                println!("{x}");
                cert.claims.push(Claim::Finding { alpha, beta, c: cc, finding: x });
            }
        }
        AppendixWhat::Case3 => {
            let (omega, rep) = case3_witness(&f, alpha)?;
            println!("case3 alpha={alpha} omega={omega} {:?} ok={}", rep.route, rep.ok());
            cert.claims.push(Claim::Case3 { alpha, omega, ok: rep.ok() });
            if !rep.ok() {
                falsified = Some("case-3 witness fails".into());
            }
        }
    }
    if let Some(p) = &out.cert {
        cert.provenance = Some(Provenance::now(t0.elapsed().as_millis()));
        files::write(p, &cert.to_text())?;
    }
    match falsified {
        Some(m) => Err(Failure::Falsified(m)),
        None => Ok(()),
    }
}
