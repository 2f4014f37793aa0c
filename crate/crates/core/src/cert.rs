//! Line-oriented certificates and their re-verification.
//!
//! ```text
//! %RANKSAT-CERT v1
//! field p=2 a=1 m=3 modulus=[1,1,0,1]
//! k 4
//! gen 1 0 0 0
//! claim saturating rho=2 result=true
//! provenance tool=ranksat/0.1.0 config=3f2a... wall_ms=12
//! ```
//!
//! Everything is integers (Elt encodings) and `key=value` tokens. Lines
//! starting with `#` are comments. A certificate is self-contained: every
//! claim is recomputed from the field line, `k` and the `gen` lines.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use sha2::{Digest, Sha256};

use crate::appendix::{
    case3_witness, transcription_findings, verify_delta_unsaturated, verify_gamma_unsaturated,
    verify_identities, AppendixContext, Finding,
};
use crate::config::config;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::gf::{Elt, FieldSpec};
use crate::linalg::System;
use crate::linset::{is_h_scattered, is_scattered, linear_set};
use crate::rankcov::{
    code_from_system, covering_radius, known_value, lower_bound, point_unsaturated_by, saturation_report,
    upper_bound,
};
use crate::search::{min_rank_search, Reduction, SearchTask, Verdict};

pub const CERT_MAGIC: &str = "%RANKSAT-CERT v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchVerdict {
    Found,
    None,
    Incomplete,
}

impl SearchVerdict {
    pub fn of(v: &Verdict) -> SearchVerdict {
        match v {
            Verdict::Found { .. } => SearchVerdict::Found,
            Verdict::NotFound => SearchVerdict::None,
            Verdict::Incomplete => SearchVerdict::Incomplete,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            SearchVerdict::Found => "found",
            SearchVerdict::None => "none",
            SearchVerdict::Incomplete => "incomplete",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    /// SHA-256 of the system's canonical key, first 16 hex digits.
    System { digest: String },
    Rank { value: usize },
    /// Exact saturating index equals ρ. The witness is a point that is not
    /// (ρ-1)-saturated, when the index exceeds ρ.
    Saturating { rho: u32, result: bool, witness: Option<Vec<Elt>> },
    Index { value: Option<u32> },
    Scattered { result: bool },
    HScattered { h: usize, result: bool },
    /// Rank covering radius of the dual of the code associated with U.
    CoveringRadius { value: u32 },
    Bounds { q: u64, m: u32, k: u32, rho: u32, lower: u64, upper: u64, known: Option<(u64, u64)> },
    Search { k: usize, rho: u32, rank: usize, reduction: Reduction, verdict: SearchVerdict, total: u128, checked: u64 },
    SearchValue { k: usize, rho: u32, ranks: (usize, usize), reduction: Reduction, value: Option<usize> },
    Identities { alpha: Elt, beta: Elt, c: Elt, result: bool },
    GammaUnsat { alpha: Elt, beta: Elt, members: usize, failures: usize },
    Delta { beta: Elt, z: Elt, which: u8, scattered: bool },
    Case3 { alpha: Elt, omega: Elt, ok: bool },
    /// Printed-versus-derived comparison at (α, β, C).
    Finding { alpha: Elt, beta: Elt, c: Elt, finding: Finding },
}

fn b(x: bool) -> &'static str {
    if x {
        "true"
    } else {
        "false"
    }
}

fn opt<T: fmt::Display>(x: &Option<T>) -> String {
    x.as_ref().map_or("none".to_string(), |v| v.to_string())
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::System { digest } => write!(f, "claim system sha256={digest}"),
            Claim::Rank { value } => write!(f, "claim rank value={value}"),
            Claim::Saturating { rho, result, witness } => {
                write!(f, "claim saturating rho={rho} result={}", b(*result))?;
                if let Some(w) = witness {
                    f.write_str(" witness_point")?;
                    for x in w {
                        write!(f, " {x}")?;
                    }
                }
                Ok(())
            }
            Claim::Index { value } => write!(f, "claim index value={}", opt(value)),
            Claim::Scattered { result } => write!(f, "claim scattered result={}", b(*result)),
            Claim::HScattered { h, result } => write!(f, "claim h-scattered h={h} result={}", b(*result)),
            Claim::CoveringRadius { value } => write!(f, "claim covering-radius value={value}"),
            Claim::Bounds { q, m, k, rho, lower, upper, known } => {
                let kn = known.map_or("none".to_string(), |(a, c)| format!("{a}..{c}"));
                write!(f, "claim bounds q={q} m={m} k={k} rho={rho} lower={lower} upper={upper} known={kn}")
            }
            Claim::Search { k, rho, rank, reduction, verdict, total, checked } => write!(
                f,
                "claim search k={k} rho={rho} rank={rank} reduction={reduction} verdict={} total={total} checked={checked}",
                verdict.label()
            ),
            Claim::SearchValue { k, rho, ranks, reduction, value } => write!(
                f,
                "claim search-value k={k} rho={rho} ranks={}..{} reduction={reduction} value={}",
                ranks.0,
                ranks.1,
                opt(value)
            ),
            Claim::Identities { alpha, beta, c, result } => {
                write!(f, "claim identities alpha={alpha} beta={beta} C={c} result={}", b(*result))
            }
            Claim::GammaUnsat { alpha, beta, members, failures } => {
                write!(f, "claim gamma-unsat alpha={alpha} beta={beta} members={members} failures={failures}")
            }
            Claim::Delta { beta, z, which, scattered } => {
                write!(f, "claim delta beta={beta} z={z} which={which} scattered={}", b(*scattered))
            }
            Claim::Case3 { alpha, omega, ok } => write!(f, "claim case3 alpha={alpha} omega={omega} ok={}", b(*ok)),
            Claim::Finding { alpha, beta, c, finding } => {
                write!(f, "context alpha={alpha} beta={beta} C={c}\n{finding}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub tool: String,
    pub config: String,
    pub wall_ms: u128,
}

impl Provenance {
    pub fn now(wall_ms: u128) -> Provenance {
        Provenance {
            tool: format!("ranksat/{}", env!("CARGO_PKG_VERSION")),
            config: config_hash(),
            wall_ms,
        }
    }
}

fn hex16(bytes: &[u8]) -> String {
    bytes[..8].iter().map(|x| format!("{x:02x}")).collect()
}

pub fn config_hash() -> String {
    hex16(&Sha256::digest(config().to_toml().as_bytes()))
}

pub fn system_digest(u: &System) -> String {
    let mut h = Sha256::new();
    h.update((u.k() as u32).to_le_bytes());
    for x in u.canonical_key() {
        h.update(x.to_le_bytes());
    }
    hex16(&h.finalize())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub field: Option<FieldSpec>,
    pub k: Option<usize>,
    pub generators: Vec<Vec<Elt>>,
    pub claims: Vec<Claim>,
    /// Free-text `note` lines, e.g. completeness caveats.
    pub notes: Vec<String>,
    pub provenance: Option<Provenance>,
}

impl Certificate {
    pub fn new(field: Option<&FieldSpec>) -> Certificate {
        Certificate {
            field: field.cloned(),
            k: None,
            generators: Vec::new(),
            claims: Vec::new(),
            notes: Vec::new(),
            provenance: None,
        }
    }

    pub fn for_system(u: &System) -> Certificate {
        let mut c = Certificate::new(Some(u.field()));
        c.k = Some(u.k());
        c.generators = u.generators().to_vec();
        c.claims.push(Claim::System { digest: system_digest(u) });
        c.claims.push(Claim::Rank { value: u.rank() });
        c
    }

    pub fn system(&self) -> Result<Option<System>> {
        match (&self.field, self.k) {
            (Some(f), Some(k)) => Ok(Some(System::new(f, k, &self.generators)?)),
            _ if !self.generators.is_empty() => Err(Error::Parse("gen lines need field and k".into())),
            _ => Ok(None),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{CERT_MAGIC}").unwrap();
        if let Some(f) = &self.field {
            writeln!(s, "{f}").unwrap();
        }
        if let Some(k) = self.k {
            writeln!(s, "k {k}").unwrap();
        }
        for g in &self.generators {
            s.push_str("gen");
            for x in g {
                write!(s, " {x}").unwrap();
            }
            s.push('\n');
        }
        for c in &self.claims {
            writeln!(s, "{c}").unwrap();
        }
        for n in &self.notes {
            writeln!(s, "note {n}").unwrap();
        }
        if let Some(p) = &self.provenance {
            writeln!(s, "provenance tool={} config={} wall_ms={}", p.tool, p.config, p.wall_ms).unwrap();
        }
        s
    }

    pub fn parse(text: &str) -> Result<Certificate> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some(CERT_MAGIC) {
            return Err(perr("missing magic line"));
        }
        let mut c = Certificate::new(None);
        let mut context: Option<(Elt, Elt, Elt)> = None;
        for line in lines {
            let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
            match head {
                "field" => c.field = Some(FieldSpec::parse_line(line)?),
                "k" => c.k = Some(num(rest.trim())?),
                "gen" => c.generators.push(rest.split_whitespace().map(num).collect::<Result<_>>()?),
                "claim" => c.claims.push(parse_claim(rest)?),
                "note" => c.notes.push(rest.to_string()),
                "context" => {
                    let kv = KeyVals::new(rest)?;
                    context = Some((kv.num("alpha")?, kv.num("beta")?, kv.num("C")?));
                }
                "finding" => {
                    let (alpha, beta, cc) = context.ok_or_else(|| perr("finding without context"))?;
                    c.claims.push(Claim::Finding { alpha, beta, c: cc, finding: parse_finding(rest)? });
                }
                "provenance" => {
                    let kv = KeyVals::new(rest)?;
                    c.provenance = Some(Provenance {
                        tool: kv.get("tool")?.to_string(),
                        config: kv.get("config")?.to_string(),
                        wall_ms: kv.num("wall_ms")?,
                    });
                }
                _ => return Err(perr(&format!("unknown record `{head}`"))),
            }
        }
        Ok(c)
    }
}

fn perr(m: &str) -> Error {
    Error::Parse(format!("certificate: {m}"))
}

fn num<T: FromStr>(s: &str) -> Result<T> {
    s.parse().map_err(|_| perr(&format!("bad number `{s}`")))
}

fn boolean(s: &str) -> Result<bool> {
    match s {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(perr(&format!("bad boolean `{s}`"))),
    }
}

fn opt_num<T: FromStr>(s: &str) -> Result<Option<T>> {
    if s == "none" {
        Ok(None)
    } else {
        num(s).map(Some)
    }
}

fn range(s: &str) -> Result<(u64, u64)> {
    let (a, c) = s.split_once("..").ok_or_else(|| perr(&format!("bad range `{s}`")))?;
    Ok((num(a)?, num(c)?))
}

struct KeyVals<'a> {
    pairs: Vec<(&'a str, &'a str)>,
    tail: Vec<&'a str>,
}

impl<'a> KeyVals<'a> {
    /// `key=value` tokens, then free tokens after the first bare word.
    fn new(s: &'a str) -> Result<KeyVals<'a>> {
        let mut pairs = Vec::new();
        let mut tail = Vec::new();
        for t in s.split_whitespace() {
            match t.split_once('=') {
                Some(kv) if tail.is_empty() => pairs.push(kv),
                _ => tail.push(t),
            }
        }
        Ok(KeyVals { pairs, tail })
    }

    fn get(&self, key: &str) -> Result<&'a str> {
        self.pairs
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| perr(&format!("missing {key}")))
    }

    fn num<T: FromStr>(&self, key: &str) -> Result<T> {
        num(self.get(key)?)
    }

    fn bool(&self, key: &str) -> Result<bool> {
        boolean(self.get(key)?)
    }
}

fn parse_claim(s: &str) -> Result<Claim> {
    let (kind, rest) = s.split_once(' ').unwrap_or((s, ""));
    let kv = KeyVals::new(rest)?;
    Ok(match kind {
        "system" => Claim::System { digest: kv.get("sha256")?.to_string() },
        "rank" => Claim::Rank { value: kv.num("value")? },
        "saturating" => {
            let witness = match kv.tail.split_first() {
                None => None,
                Some((&"witness_point", w)) => Some(w.iter().map(|x| num(x)).collect::<Result<_>>()?),
                Some((t, _)) => return Err(perr(&format!("unexpected `{t}`"))),
            };
            Claim::Saturating { rho: kv.num("rho")?, result: kv.bool("result")?, witness }
        }
        "index" => Claim::Index { value: opt_num(kv.get("value")?)? },
        "scattered" => Claim::Scattered { result: kv.bool("result")? },
        "h-scattered" => Claim::HScattered { h: kv.num("h")?, result: kv.bool("result")? },
        "covering-radius" => Claim::CoveringRadius { value: kv.num("value")? },
        "bounds" => Claim::Bounds {
            q: kv.num("q")?,
            m: kv.num("m")?,
            k: kv.num("k")?,
            rho: kv.num("rho")?,
            lower: kv.num("lower")?,
            upper: kv.num("upper")?,
            known: match kv.get("known")? {
                "none" => None,
                r => Some(range(r)?),
            },
        },
        "search" => Claim::Search {
            k: kv.num("k")?,
            rho: kv.num("rho")?,
            rank: kv.num("rank")?,
            reduction: kv.get("reduction")?.parse()?,
            verdict: match kv.get("verdict")? {
                "found" => SearchVerdict::Found,
                "none" => SearchVerdict::None,
                "incomplete" => SearchVerdict::Incomplete,
                v => return Err(perr(&format!("bad verdict `{v}`"))),
            },
            total: kv.num("total")?,
            checked: kv.num("checked")?,
        },
        "search-value" => {
            let (lo, hi) = range(kv.get("ranks")?)?;
            Claim::SearchValue {
                k: kv.num("k")?,
                rho: kv.num("rho")?,
                ranks: (lo as usize, hi as usize),
                reduction: kv.get("reduction")?.parse()?,
                value: opt_num(kv.get("value")?)?,
            }
        }
        "identities" => Claim::Identities {
            alpha: kv.num("alpha")?,
            beta: kv.num("beta")?,
            c: kv.num("C")?,
            result: kv.bool("result")?,
        },
        "gamma-unsat" => Claim::GammaUnsat {
            alpha: kv.num("alpha")?,
            beta: kv.num("beta")?,
            members: kv.num("members")?,
            failures: kv.num("failures")?,
        },
        "delta" => Claim::Delta {
            beta: kv.num("beta")?,
            z: kv.num("z")?,
            which: kv.num("which")?,
            scattered: kv.bool("scattered")?,
        },
        "case3" => Claim::Case3 { alpha: kv.num("alpha")?, omega: kv.num("omega")?, ok: kv.bool("ok")? },
        _ => return Err(perr(&format!("unknown claim `{kind}`"))),
    })
}

fn parse_finding(s: &str) -> Result<Finding> {
    let mut it = s.splitn(3, ' ');
    let name = it.next().filter(|n| !n.is_empty()).ok_or_else(|| perr("finding without name"))?;
    let status = match it.next() {
        Some("agree") => "agree",
        Some("mismatch") => "mismatch",
        Some("undefined") => "undefined",
        other => return Err(perr(&format!("bad finding status {other:?}"))),
    };
    let detail = match it.next() {
        None => None,
        Some(d) => Some(
            d.strip_prefix("counterexample ")
                .ok_or_else(|| perr("finding detail must start with `counterexample`"))?
                .to_string(),
        ),
    };
    Ok(Finding { name: name.to_string(), status, detail })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Verified,
    Falsified(String),
    /// Not re-checkable (e.g. an incomplete search); does not count as a
    /// failure.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub claim: Claim,
    pub status: CheckStatus,
}

impl ClaimCheck {
    pub fn falsified(&self) -> bool {
        matches!(self.status, CheckStatus::Falsified(_))
    }
}

/// Recomputes one claim. `u` is the certificate's system, if any.
pub fn check_claim(field: Option<&FieldSpec>, u: Option<&System>, claim: &Claim) -> Result<CheckStatus> {
    let need_u = || u.ok_or_else(|| perr("claim needs a system"));
    let need_f = || field.ok_or_else(|| perr("claim needs a field line"));
    let cmp = |ok: bool, got: String| {
        if ok {
            CheckStatus::Verified
        } else {
            CheckStatus::Falsified(got)
        }
    };
    Ok(match claim {
        Claim::System { digest } => {
            let d = system_digest(need_u()?);
            cmp(*digest == d, format!("sha256={d}"))
        }
        Claim::Rank { value } => {
            let r = need_u()?.rank();
            cmp(*value == r, format!("rank={r}"))
        }
        Claim::Saturating { rho, result, witness } => {
            let u = need_u()?;
            let rep = saturation_report(u, Some(*rho))?;
            let got = rep.index == Some(*rho);
            if got != *result {
                return Ok(CheckStatus::Falsified(format!("result={}", b(got))));
            }
            match witness {
                None => CheckStatus::Verified,
                Some(w) => {
                    let f = u.field();
                    let p = Point::new(f, w).ok_or_else(|| perr("witness is the zero vector"))?;
                    let ok = if *rho == 2 {
                        point_unsaturated_by(&linear_set(u)?, &p)
                    } else {
                        rep.witnesses.iter().any(|(l, q)| l == rho && *q == p)
                    };
                    cmp(ok, "witness point is saturated".into())
                }
            }
        }
        Claim::Index { value } => {
            let i = saturation_report(need_u()?, None)?.index;
            cmp(*value == i, format!("index={}", opt(&i)))
        }
        Claim::Scattered { result } => {
            let s = is_scattered(need_u()?)?;
            cmp(*result == s, format!("result={}", b(s)))
        }
        Claim::HScattered { h, result } => {
            let s = is_h_scattered(need_u()?, *h)?.holds;
            cmp(*result == s, format!("result={}", b(s)))
        }
        Claim::CoveringRadius { value } => {
            let r = covering_radius(&code_from_system(need_u()?)?.dual())?;
            cmp(*value == r, format!("value={r}"))
        }
        Claim::Bounds { q, m, k, rho, lower, upper, known } => {
            let lo = lower_bound(*q, *m, *k, *rho)?;
            let hi = upper_bound(*m, *k, *rho)?;
            let kn = known_value(*q, *m, *k, *rho).map(|v| (v.lo, v.hi));
            cmp(
                (lo, hi, kn) == (*lower, *upper, *known),
                format!("lower={lo} upper={hi} known={kn:?}"),
            )
        }
        Claim::Search { k, rho, rank, reduction, verdict, total, checked } => {
            if *verdict == SearchVerdict::Incomplete {
                return Ok(CheckStatus::Skipped("incomplete search".into()));
            }
            let t = SearchTask::new(need_f()?, *k, *rho, (*rank, *rank), *reduction)?;
            let r = min_rank_search(&t, None)?;
            let o = r.outcome(*rank).ok_or_else(|| perr("search produced no outcome"))?;
            let v = SearchVerdict::of(&o.verdict);
            let same_system = match (&o.verdict, u) {
                (Verdict::Found { system, .. }, Some(u)) => system.canonical_key() == u.canonical_key(),
                _ => true,
            };
            cmp(
                v == *verdict && o.total == *total && o.checked == *checked && same_system,
                format!("verdict={} total={} checked={} same_system={}", v.label(), o.total, o.checked, same_system),
            )
        }
        Claim::SearchValue { k, rho, ranks, reduction, value } => {
            let t = SearchTask::new(need_f()?, *k, *rho, *ranks, *reduction)?;
            let r = min_rank_search(&t, None)?;
            if !r.complete() {
                return Ok(CheckStatus::Skipped("search hit the node cap".into()));
            }
            cmp(r.value == *value, format!("value={}", opt(&r.value)))
        }
        Claim::Identities { alpha, beta, c, result } => {
            let ctx = AppendixContext::new(need_f()?, *alpha, *beta)?;
            let got = match verify_identities(&ctx, *c) {
                Ok(_) => true,
                Err(Error::IdentityViolation(_)) => false,
                Err(e) => return Err(e),
            };
            cmp(got == *result, format!("result={}", b(got)))
        }
        Claim::GammaUnsat { alpha, beta, members, failures } => {
            let ctx = AppendixContext::new(need_f()?, *alpha, *beta)?;
            let r = verify_gamma_unsaturated(&ctx, false)?;
            cmp(
                r.members.len() == *members && r.failures.len() == *failures,
                format!("members={} failures={}", r.members.len(), r.failures.len()),
            )
        }
        Claim::Delta { beta, z, which, scattered } => {
            let r = verify_delta_unsaturated(need_f()?, *beta, *which, *z)?;
            cmp(r.scattered() == *scattered, format!("scattered={}", b(r.scattered())))
        }
        Claim::Case3 { alpha, omega, ok } => {
            let (w, r) = case3_witness(need_f()?, *alpha)?;
            cmp(w == *omega && r.ok() == *ok, format!("omega={w} ok={}", b(r.ok())))
        }
        Claim::Finding { alpha, beta, c, finding } => {
            let ctx = AppendixContext::new(need_f()?, *alpha, *beta)?;
            let all = transcription_findings(&ctx, *c)?;
            match all.iter().find(|x| x.name == finding.name) {
                None => CheckStatus::Falsified(format!("no finding named {}", finding.name)),
                Some(x) => cmp(x == finding, x.to_string()),
            }
        }
    })
}

/// Re-verifies every claim of a certificate. Errors while rebuilding the
/// system are returned; errors inside one claim falsify that claim.
pub fn verify_certificate(c: &Certificate) -> Result<Vec<ClaimCheck>> {
    let u = c.system()?;
    Ok(c.claims
        .iter()
        .map(|cl| {
            let status = match check_claim(c.field.as_ref(), u.as_ref(), cl) {
                Ok(s) => s,
                Err(e @ Error::BudgetExceeded(_)) => CheckStatus::Skipped(e.to_string()),
                Err(e) => CheckStatus::Falsified(e.to_string()),
            };
            ClaimCheck { claim: cl.clone(), status }
        })
        .collect())
}
