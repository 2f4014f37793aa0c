//! Linear sets L_U ⊆ PG(k-1, q^m).

use std::collections::{BTreeMap, HashMap};

use crate::config::{check_budget, config};
use crate::error::{Error, Result};
use crate::geometry::{Point, PointSpace};
use crate::gf::Elt;
use crate::linalg::{dim_intersection, enumerate_fqm_subspaces, FqmSubspace, Mat, System};

/// The point set of a system together with its weights.
#[derive(Clone, Debug)]
pub struct LinearSet {
    space: PointSpace,
    /// Sorted point indices.
    indices: Vec<u64>,
    /// Points of weight at least 2.
    heavy: BTreeMap<u64, u32>,
    rank: usize,
}

impl LinearSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn space(&self) -> &PointSpace {
        &self.space
    }

    pub fn indices(&self) -> &[u64] {
        &self.indices
    }

    pub fn points(&self) -> Vec<Point> {
        self.indices.iter().map(|&i| self.space.point(i)).collect()
    }

    pub fn contains_index(&self, idx: u64) -> bool {
        self.indices.binary_search(&idx).is_ok()
    }

    /// Weight of the point with the given index (0 when outside L_U).
    pub fn weight_of_index(&self, idx: u64) -> u32 {
        if let Some(&w) = self.heavy.get(&idx) {
            w
        } else {
            self.contains_index(idx) as u32
        }
    }

    pub fn weight(&self, p: &Point) -> u32 {
        self.weight_of_index(self.space.index(p.coords()))
    }

    pub fn heavy_points(&self) -> impl Iterator<Item = (Point, u32)> + '_ {
        self.heavy.iter().map(|(&i, &w)| (self.space.point(i), w))
    }

    pub fn is_scattered(&self) -> bool {
        self.heavy.is_empty()
    }
}

/// Enumerates L_U through projective representatives of U.
pub fn linear_set(u: &System) -> Result<LinearSet> {
    let f = u.field();
    let q = f.q() as u128;
    let n = u.rank() as u32;
    let reps = (q.pow(n) - 1) / (q - 1);
    check_budget("linear set vectors", reps, config().vector_cap)?;
    let space = PointSpace::new(f, u.k())?;
    let mut counts: HashMap<u64, u32> = HashMap::with_capacity(reps as usize);
    u.for_each_projective(|v| {
        *counts.entry(space.index_of(v).unwrap()).or_insert(0) += 1;
    });
    let mut indices: Vec<u64> = counts.keys().copied().collect();
    indices.sort_unstable();
    let qq = f.q();
    let heavy = counts
        .into_iter()
        .filter(|&(_, c)| c > 1)
        .map(|(i, c)| {
            // c = (q^w - 1)/(q - 1)
            let mut w = 0u32;
            let mut acc = 0u64;
            while acc < c as u64 {
                acc = acc * qq + 1;
                w += 1;
            }
            debug_assert_eq!(acc, c as u64);
            (i, w)
        })
        .collect();
    Ok(LinearSet {
        space,
        indices,
        heavy,
        rank: u.rank(),
    })
}

/// dim_{F_q}(U ∩ Λ)
pub fn weight(u: &System, lambda: &FqmSubspace) -> Result<usize> {
    dim_intersection(u, lambda)
}

pub fn weight_of_point(u: &System, p: &Point) -> Result<usize> {
    let w = FqmSubspace::new(u.field(), u.k(), &[p.coords()])?;
    dim_intersection(u, &w)
}

pub fn is_scattered(u: &System) -> Result<bool> {
    Ok(linear_set(u)?.is_scattered())
}

/// Outcome of the h-scatteredness test; `witness` is the first offending
/// subspace in enumeration order (absent when U fails to span).
#[derive(Clone, Debug)]
pub struct HScattered {
    pub holds: bool,
    pub spans: bool,
    pub witness: Option<FqmSubspace>,
}

pub fn spans_ambient(u: &System) -> bool {
    Mat::from_rows(u.k(), u.generators()).rank(u.field()) == u.k()
}

pub fn is_h_scattered(u: &System, h: usize) -> Result<HScattered> {
    let k = u.k();
    if h == 0 || h >= k {
        return Err(Error::InvalidParams(format!("need 0 < h={h} < k={k}")));
    }
    if !spans_ambient(u) {
        return Ok(HScattered {
            holds: false,
            spans: false,
            witness: None,
        });
    }
    let f = u.field();
    if h == 1 {
        // Points: weight ≤ 1 everywhere is exactly scatteredness.
        let ls = linear_set(u)?;
        let witness = ls
            .heavy
            .keys()
            .next()
            .map(|&i| FqmSubspace::new(f, k, &[ls.space.point(i).coords()]).unwrap());
        return Ok(HScattered {
            holds: witness.is_none(),
            spans: true,
            witness,
        });
    }
    for w in enumerate_fqm_subspaces(f, k, h)? {
        if dim_intersection(u, &w)? > h {
            return Ok(HScattered {
                holds: false,
                spans: true,
                witness: Some(w),
            });
        }
    }
    Ok(HScattered {
        holds: true,
        spans: true,
        witness: None,
    })
}

/// ⌊km/(h+1)⌋
pub fn max_h_scattered_bound(k: usize, m: usize, h: usize) -> usize {
    k * m / (h + 1)
}

/// Projects U from the center P onto the hyperplane H (default: the
/// coordinate hyperplane avoiding P with smallest index), writing images in
/// the echelon basis of H.
pub fn project(u: &System, p: &Point, h: Option<&FqmSubspace>) -> Result<System> {
    let f = u.field();
    let k = u.k();
    if p.k() != k {
        return Err(Error::InvalidParams("center has wrong dimension".into()));
    }
    if weight_of_point(u, p)? > 0 {
        return Err(Error::CenterInsideLinearSet);
    }
    let hyper = match h {
        Some(h) => {
            if h.k() != k || h.dim() + 1 != k {
                return Err(Error::InvalidParams("target is not a hyperplane".into()));
            }
            if h.contains(p.coords()) {
                return Err(Error::CenterOnHyperplane);
            }
            h.clone()
        }
        None => {
            let i = p.coords().iter().position(|&x| x != 0).unwrap();
            let rows: Vec<Vec<Elt>> = (0..k)
                .filter(|&j| j != i)
                .map(|j| (0..k).map(|c| (c == j) as Elt).collect())
                .collect();
            FqmSubspace::new(f, k, &rows)?
        }
    };
    let mut rows: Vec<Vec<Elt>> = hyper.basis().to_vec();
    rows.push(p.coords().to_vec());
    let inv = Mat::from_rows(k, &rows)
        .inverse(f)
        .ok_or(Error::CenterOnHyperplane)?;
    u.map(k - 1, |v| {
        let c = inv.apply_left(f, v);
        c[..k - 1].to_vec()
    })
}
