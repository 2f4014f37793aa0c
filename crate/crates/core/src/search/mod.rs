//! Exhaustive determination of the least rank of a ρ-saturating system.
//!
//! Three candidate spaces are available. `Naive` walks every F_q-subspace of
//! F_{q^m}^k of the given rank. `Canonical` uses that a spanning U can be
//! moved by GL(k, q^m) to contain F_q^k, so only complements W of F_q^k need
//! visiting, and keeps one W per orbit of the frame stabilizer
//! GL(k, q) ⋊ Aut(F_{q^m}). `GraphForm` visits the rank-4 normal forms in
//! F_{q^4}^3 and inherits the completeness of that classification.

mod canonical;
mod checkpoint;
mod grassmann;
mod graph;

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

pub use canonical::canonical_reduce;
pub use checkpoint::Checkpoint;
pub use grassmann::gaussian_binomial;
pub use graph::{graph_form_enumerate, GraphForm};

use crate::config::config;
use crate::error::{Error, Result};
use crate::gf::{Elt, FieldSpec};
use crate::linalg::System;
use crate::par;
use crate::rankcov::is_rank_saturating;
use canonical::{lift, Coords, FrameStabilizer};
use grassmann::Grassmannian;

const CHUNK: u128 = 1024;
const GROUP_CAP: u64 = 1 << 12;

pub const GRAPH_FORM_CAVEAT: &str =
    "completeness rests on the graph-form normalization of rank-4 systems, which is not proved here";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    Naive,
    Canonical,
    GraphForm,
}

impl Reduction {
    pub fn label(&self) -> &'static str {
        match self {
            Reduction::Naive => "naive",
            Reduction::Canonical => "canonical",
            Reduction::GraphForm => "graph",
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Reduction> {
        match s {
            "naive" => Ok(Reduction::Naive),
            "canonical" | "canonical-augmentation" => Ok(Reduction::Canonical),
            "graph" | "graph-form" => Ok(Reduction::GraphForm),
            _ => Err(Error::Parse(format!("unknown reduction {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchTask {
    pub field: FieldSpec,
    pub k: usize,
    pub rho: u32,
    pub r_lo: usize,
    pub r_hi: usize,
    pub reduction: Reduction,
    /// Candidates processed in this run before checkpointing; 0 falls back
    /// to the configured node cap (0 = unlimited).
    pub node_cap: u64,
    pub shards: u32,
    pub shard_id: u32,
}

impl SearchTask {
    pub fn new(
        field: &FieldSpec,
        k: usize,
        rho: u32,
        ranks: (usize, usize),
        reduction: Reduction,
    ) -> Result<SearchTask> {
        let t = SearchTask {
            field: field.clone(),
            k,
            rho,
            r_lo: ranks.0,
            r_hi: ranks.1,
            reduction,
            node_cap: 0,
            shards: 1,
            shard_id: 0,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn with_shard(mut self, shards: u32, shard_id: u32) -> Result<SearchTask> {
        self.shards = shards;
        self.shard_id = shard_id;
        self.validate()?;
        Ok(self)
    }

    pub fn with_node_cap(mut self, cap: u64) -> SearchTask {
        self.node_cap = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InvalidParams(s));
        if self.k == 0 || self.rho == 0 || self.rho as usize > self.k {
            return bad(format!("need 1 <= rho={} <= k={}", self.rho, self.k));
        }
        if self.r_lo < self.rho as usize || self.r_hi < self.r_lo {
            return bad(format!("rank range [{}, {}] must start at rho={} or above", self.r_lo, self.r_hi, self.rho));
        }
        if self.r_hi > self.k * self.field.m() as usize {
            return bad(format!("rank {} exceeds km", self.r_hi));
        }
        if self.shards == 0 || self.shard_id >= self.shards {
            return bad(format!("shard {}/{}", self.shard_id, self.shards));
        }
        if self.reduction == Reduction::GraphForm
            && (self.field.m() != 4 || self.k != 3 || self.r_lo != 4 || self.r_hi != 4)
        {
            return bad("graph-form needs m=4, k=3 and rank range [4,4]".into());
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// A system with saturating index exactly ρ, at this enumeration index.
    Found { index: u128, system: System },
    /// None of the visited candidates saturates.
    NotFound,
    /// The node cap was reached inside this rank.
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankOutcome {
    pub rank: usize,
    pub verdict: Verdict,
    /// Size of the candidate space at this rank.
    pub total: u128,
    /// Candidate indices visited (up to and including a hit).
    pub enumerated: u128,
    /// Candidates that survived isomorph rejection and sharding and had
    /// their saturating index computed.
    pub checked: u64,
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub task: SearchTask,
    pub outcomes: Vec<RankOutcome>,
    /// Least rank found, when every lower rank of the range is complete and
    /// negative. Only set for unsharded runs; see [`merge_results`].
    pub value: Option<usize>,
    pub checkpoint: Option<Checkpoint>,
    /// Order of the stabilizer used for isomorph rejection.
    pub group_order: Option<u64>,
    pub caveat: Option<&'static str>,
}

impl SearchResult {
    pub fn complete(&self) -> bool {
        self.checkpoint.is_none()
    }

    pub fn outcome(&self, rank: usize) -> Option<&RankOutcome> {
        self.outcomes.iter().find(|o| o.rank == rank)
    }
}

enum Space {
    Naive { g: Grassmannian, co: Coords },
    Canonical { g: Grassmannian, co: Coords, stab: FrameStabilizer },
    Graph(Vec<GraphForm>),
    Empty,
}

enum Probe {
    Skip,
    Unsaturated,
    Saturating(System),
}

impl Space {
    fn new(task: &SearchTask, r: usize) -> Result<Space> {
        let f = &task.field;
        let (k, m) = (task.k, f.m() as usize);
        Ok(match task.reduction {
            Reduction::Naive => {
                let g = Grassmannian::new(f, k * m, r)?;
                if g.total() > config().enum_cap as u128 {
                    return Err(Error::BudgetExceeded(format!(
                        "naive search at rank {r}: {} subspaces, cap {}",
                        g.total(),
                        config().enum_cap
                    )));
                }
                Space::Naive { g, co: Coords::new(f)? }
            }
            Reduction::Canonical if r < k => Space::Empty,
            Reduction::Canonical => Space::Canonical {
                g: Grassmannian::new(f, k * (m - 1), r - k)?,
                co: Coords::new(f)?,
                stab: FrameStabilizer::new(f, k, GROUP_CAP),
            },
            Reduction::GraphForm => Space::Graph(graph_form_enumerate(f)?),
        })
    }

    fn total(&self) -> u128 {
        match self {
            Space::Naive { g, .. } | Space::Canonical { g, .. } => g.total(),
            Space::Graph(v) => v.len() as u128,
            Space::Empty => 0,
        }
    }

    fn probe(&self, task: &SearchTask, idx: u128) -> Result<Probe> {
        let f = &task.field;
        let k = task.k;
        let m = f.m() as usize;
        let (u, key) = match self {
            Space::Naive { g, co } => {
                let rows = g.get(idx);
                let gens: Vec<Vec<Elt>> = rows.iter().map(|r| co.vector(f, k, r)).collect();
                let u = System::new(f, k, &gens)?;
                let key = u.canonical_key();
                (u, key)
            }
            Space::Canonical { g, co, stab } => {
                let w = g.get(idx);
                if !stab.is_least(f, co, k, &w) {
                    return Ok(Probe::Skip);
                }
                let mut gens: Vec<Vec<Elt>> =
                    (0..k).map(|i| (0..k).map(|j| (i == j) as Elt).collect()).collect();
                gens.extend(w.iter().map(|r| co.vector(f, k, &lift(k, m, r))));
                let key = w.concat();
                (System::new(f, k, &gens)?, key)
            }
            Space::Graph(v) => {
                let u = v[idx as usize].system.clone();
                let key = u.canonical_key();
                (u, key)
            }
            Space::Empty => unreachable!("empty candidate space"),
        };
        if task.shards > 1 && shard_of(&key, task.shards) != task.shard_id {
            return Ok(Probe::Skip);
        }
        Ok(if is_rank_saturating(&u, task.rho)? {
            Probe::Saturating(u)
        } else {
            Probe::Unsaturated
        })
    }
}

fn shard_of(key: &[Elt], shards: u32) -> u32 {
    let mut h = Sha256::new();
    for x in key {
        h.update(x.to_le_bytes());
    }
    let d = h.finalize();
    (u64::from_le_bytes(d[..8].try_into().unwrap()) % shards as u64) as u32
}

/// Least rank in the task's range carrying a system of saturating index
/// exactly ρ. Ranks are visited in increasing order and the search stops at
/// the first hit. Resuming from a checkpoint skips completed ranks and
/// continues inside the interrupted one.
pub fn min_rank_search(task: &SearchTask, resume: Option<&Checkpoint>) -> Result<SearchResult> {
    task.validate()?;
    let cap = if task.node_cap > 0 { task.node_cap } else { config().node_cap };
    let mut res = SearchResult {
        task: task.clone(),
        outcomes: Vec::new(),
        value: None,
        checkpoint: None,
        group_order: None,
        caveat: (task.reduction == Reduction::GraphForm).then_some(GRAPH_FORM_CAVEAT),
    };
    let (mut start_rank, mut start_idx, mut start_checked) = (task.r_lo, 0u128, 0u64);
    if let Some(ck) = resume {
        ck.matches(task)?;
        res.outcomes = ck.done.clone();
        start_rank = ck.rank;
        start_idx = ck.next;
        start_checked = ck.checked;
    }
    let mut processed: u64 = 0;
    for r in start_rank..=task.r_hi {
        let space = Space::new(task, r)?;
        if let Space::Canonical { stab, .. } = &space {
            res.group_order = Some(stab.order());
        }
        let total = space.total();
        let mut out = RankOutcome { rank: r, verdict: Verdict::NotFound, total, enumerated: 0, checked: 0 };
        let (mut idx, mut checked) = if r == start_rank { (start_idx, start_checked) } else { (0, 0) };
        while idx < total {
            if cap > 0 && processed >= cap {
                out.verdict = Verdict::Incomplete;
                out.enumerated = idx;
                out.checked = checked;
                res.checkpoint = Some(Checkpoint::new(task, &res.outcomes, r, idx, checked));
                res.outcomes.push(out);
                return Ok(res);
            }
            let len = (total - idx).min(CHUNK);
            let probes = par::map(len as usize, |i| space.probe(task, idx + i as u128));
            for (i, p) in probes.into_iter().enumerate() {
                match p? {
                    Probe::Skip => {}
                    Probe::Unsaturated => checked += 1,
                    Probe::Saturating(system) => {
                        checked += 1;
                        let index = idx + i as u128;
                        out.verdict = Verdict::Found { index, system };
                        out.enumerated = index + 1;
                        out.checked = checked;
                        res.outcomes.push(out);
                        if task.shards == 1 {
                            res.value = Some(r);
                        }
                        return Ok(res);
                    }
                }
            }
            idx += len;
            processed += len as u64;
        }
        out.enumerated = total;
        out.checked = checked;
        res.outcomes.push(out);
    }
    Ok(res)
}

/// Combines complete results of all shards of one task: a rank is positive
/// if any shard found a system there (the least index wins) and negative
/// only if every shard completed it negatively.
pub fn merge_results(parts: &[SearchResult]) -> Result<SearchResult> {
    let first = parts.first().ok_or_else(|| Error::InvalidParams("nothing to merge".into()))?;
    let shards = first.task.shards;
    let mut ids: Vec<u32> = parts.iter().map(|p| p.task.shard_id).collect();
    ids.sort_unstable();
    ids.dedup();
    let same_task = parts.iter().all(|p| {
        let (a, b) = (&p.task, &first.task);
        a.field == b.field && a.k == b.k && a.rho == b.rho && a.r_lo == b.r_lo && a.r_hi == b.r_hi
            && a.reduction == b.reduction && a.shards == shards
    });
    if !same_task || ids.len() != shards as usize || parts.iter().any(|p| !p.complete()) {
        return Err(Error::InvalidParams("merge needs one complete result per shard of one task".into()));
    }
    let mut task = first.task.clone();
    task.shards = 1;
    task.shard_id = 0;
    let mut outcomes = Vec::new();
    let mut value = None;
    for r in task.r_lo..=task.r_hi {
        let per: Vec<&RankOutcome> = parts.iter().filter_map(|p| p.outcome(r)).collect();
        if per.is_empty() {
            break;
        }
        let found = per
            .iter()
            .filter_map(|o| match &o.verdict {
                Verdict::Found { index, system } => Some((*index, system.clone())),
                _ => None,
            })
            .min_by_key(|(i, _)| *i);
        let checked = per.iter().map(|o| o.checked).sum();
        let total = per[0].total;
        match found {
            Some((index, system)) => {
                outcomes.push(RankOutcome { rank: r, verdict: Verdict::Found { index, system }, total, enumerated: index + 1, checked });
                value = Some(r);
                break;
            }
            None if per.len() == parts.len() => {
                outcomes.push(RankOutcome { rank: r, verdict: Verdict::NotFound, total, enumerated: total, checked });
            }
            None => break,
        }
    }
    Ok(SearchResult {
        task,
        outcomes,
        value,
        checkpoint: None,
        group_order: first.group_order,
        caveat: first.caveat,
    })
}
