//! `%RANKSAT-CKPT v1` search checkpoints: the task, the completed negative
//! ranks and the enumeration frontier inside the current rank.

use std::fmt::Write as _;

use super::{RankOutcome, Reduction, SearchTask, Verdict};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;

pub const CKPT_MAGIC: &str = "%RANKSAT-CKPT v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub field: FieldSpec,
    pub k: usize,
    pub rho: u32,
    pub r_lo: usize,
    pub r_hi: usize,
    pub reduction: Reduction,
    pub shards: u32,
    pub shard_id: u32,
    pub done: Vec<RankOutcome>,
    pub rank: usize,
    pub next: u128,
    pub checked: u64,
}

impl Checkpoint {
    pub(crate) fn new(task: &SearchTask, done: &[RankOutcome], rank: usize, next: u128, checked: u64) -> Checkpoint {
        Checkpoint {
            field: task.field.clone(),
            k: task.k,
            rho: task.rho,
            r_lo: task.r_lo,
            r_hi: task.r_hi,
            reduction: task.reduction,
            shards: task.shards,
            shard_id: task.shard_id,
            done: done.to_vec(),
            rank,
            next,
            checked,
        }
    }

    pub(crate) fn matches(&self, t: &SearchTask) -> Result<()> {
        let same = self.field == t.field
            && self.k == t.k
            && self.rho == t.rho
            && self.r_lo == t.r_lo
            && self.r_hi == t.r_hi
            && self.reduction == t.reduction
            && self.shards == t.shards
            && self.shard_id == t.shard_id;
        if same {
            Ok(())
        } else {
            Err(Error::InvalidParams("checkpoint belongs to a different search task".into()))
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{CKPT_MAGIC}").unwrap();
        writeln!(s, "{}", self.field).unwrap();
        writeln!(
            s,
            "task k={} rho={} ranks={}..{} reduction={} shard={}/{}",
            self.k, self.rho, self.r_lo, self.r_hi, self.reduction, self.shard_id, self.shards
        )
        .unwrap();
        for o in &self.done {
            writeln!(s, "done rank={} total={} checked={}", o.rank, o.total, o.checked).unwrap();
        }
        writeln!(s, "at rank={} next={} checked={}", self.rank, self.next, self.checked).unwrap();
        s
    }

    pub fn parse(text: &str) -> Result<Checkpoint> {
        let perr = |m: &str| Error::Parse(format!("checkpoint: {m}"));
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        if lines.next() != Some(CKPT_MAGIC) {
            return Err(perr("missing magic line"));
        }
        let field = FieldSpec::parse_line(lines.next().ok_or_else(|| perr("missing field line"))?)?;
        let task = lines.next().ok_or_else(|| perr("missing task line"))?;
        let kv = |line: &str, head: &str| -> Result<Vec<(String, String)>> {
            let mut it = line.split_whitespace();
            if it.next() != Some(head) {
                return Err(perr(&format!("expected `{head}` line, got `{line}`")));
            }
            it.map(|t| {
                t.split_once('=')
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .ok_or_else(|| perr(&format!("bad token {t}")))
            })
            .collect()
        };
        let get = |v: &[(String, String)], key: &str| -> Result<String> {
            v.iter().find(|(k, _)| k == key).map(|(_, x)| x.clone()).ok_or_else(|| perr(&format!("missing {key}")))
        };
        let num = |s: String| s.parse::<u128>().map_err(|e| perr(&e.to_string()));
        let t = kv(task, "task")?;
        let ranks = get(&t, "ranks")?;
        let (lo, hi) = ranks.split_once("..").ok_or_else(|| perr("bad ranks"))?;
        let shard = get(&t, "shard")?;
        let (sid, sn) = shard.split_once('/').ok_or_else(|| perr("bad shard"))?;
        let mut ck = Checkpoint {
            field,
            k: num(get(&t, "k")?)? as usize,
            rho: num(get(&t, "rho")?)? as u32,
            r_lo: num(lo.into())? as usize,
            r_hi: num(hi.into())? as usize,
            reduction: get(&t, "reduction")?.parse()?,
            shards: num(sn.into())? as u32,
            shard_id: num(sid.into())? as u32,
            done: Vec::new(),
            rank: 0,
            next: 0,
            checked: 0,
        };
        let mut at = false;
        for line in lines {
            if line.starts_with("done") {
                let v = kv(line, "done")?;
                let total = num(get(&v, "total")?)?;
                ck.done.push(RankOutcome {
                    rank: num(get(&v, "rank")?)? as usize,
                    verdict: Verdict::NotFound,
                    total,
                    enumerated: total,
                    checked: num(get(&v, "checked")?)? as u64,
                });
            } else if line.starts_with("at") {
                let v = kv(line, "at")?;
                ck.rank = num(get(&v, "rank")?)? as usize;
                ck.next = num(get(&v, "next")?)?;
                ck.checked = num(get(&v, "checked")?)? as u64;
                at = true;
            } else {
                return Err(perr(&format!("unexpected line `{line}`")));
            }
        }
        if !at || ck.rank < ck.r_lo || ck.rank > ck.r_hi {
            return Err(perr("missing or out-of-range `at` line"));
        }
        Ok(ck)
    }
}
