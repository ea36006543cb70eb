//! Stabilized g-vectors of the initial cluster variables, computed two ways:
//! coefficient tracking along green rounds, and the braid-group action.
//!
//! The two routes are independent and must agree on the safe core; that
//! equality is the main oracle for the whole quiver layer.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::DynkinDatum;
use crate::matrix::IntMatrix;
use crate::quiver::{MarkedQuiver, VertexId, VertexSet};

/// Finitely supported integer vector over the window vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GVector(pub BTreeMap<VertexId, i64>);

impl GVector {
    pub fn basis(v: VertexId) -> Self {
        GVector(BTreeMap::from([(v, 1)]))
    }

    pub fn add_term(&mut self, v: VertexId, c: i64) {
        let e = self.0.entry(v).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for GVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, c) in &self.0 {
            let sign = if *c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.abs();
            if a == 1 {
                write!(f, "{sign}e{v}")?;
            } else {
                write!(f, "{sign}{a}e{v}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Applies the braid automorphism of node `i`:
/// fixes `e_(j,r)` for `j != i` and sends `e_(i,r)` to
/// `-e_(i,r-2) + sum over neighbors k of e_(k,r-1)`.
pub fn braid_apply(
    datum: &DynkinDatum,
    vset: &VertexSet,
    i: u8,
    g: &GVector,
) -> Result<GVector> {
    let mut out = GVector::default();
    for (&v, &c) in &g.0 {
        if v.node != i {
            out.add_term(v, c);
            continue;
        }
        let down = VertexId::new(i, v.level - 2);
        if !vset.contains(down) {
            return Err(Error::BoundaryTouch(format!("braid image needs {down}")));
        }
        out.add_term(down, -c);
        for k in datum.neighbors(i) {
            let w = VertexId::new(k, v.level - 1);
            if !vset.contains(w) {
                return Err(Error::BoundaryTouch(format!("braid image needs {w}")));
            }
            out.add_term(w, c);
        }
    }
    Ok(out)
}

/// `v[s]`: the vector with `v'_(i,l) = v_(i,l-2s)` (support moves up by `2s`).
pub fn shift(vset: &VertexSet, g: &GVector, s: i32) -> Result<GVector> {
    let mut out = GVector::default();
    for (&v, &c) in &g.0 {
        let w = v.shifted(s);
        if !vset.contains(w) {
            return Err(Error::BoundaryTouch(format!("shift image needs {w}")));
        }
        out.add_term(w, c);
    }
    Ok(out)
}

/// Column-sparse matrix of g-vectors over a window.
#[derive(Debug, Clone)]
pub struct GMatrix {
    pub vset: Arc<VertexSet>,
    /// column vertex index -> sparse column (row vertex index -> entry)
    pub cols: BTreeMap<u32, BTreeMap<u32, i64>>,
}

impl GMatrix {
    pub fn entry(&self, row: VertexId, col: VertexId) -> i64 {
        let (Some(r), Some(c)) = (self.vset.index_of(row), self.vset.index_of(col)) else {
            return 0;
        };
        self.cols
            .get(&c)
            .and_then(|m| m.get(&r))
            .copied()
            .unwrap_or(0)
    }

    pub fn column(&self, col: VertexId) -> Option<GVector> {
        let c = self.vset.index_of(col)?;
        let m = self.cols.get(&c)?;
        Some(GVector(
            m.iter()
                .map(|(&r, &v)| (self.vset.vertex(r), v))
                .collect(),
        ))
    }

    /// True when every column is supported inside its own block `I(m)`.
    pub fn is_block_diagonal(&self) -> bool {
        self.cols.iter().all(|(&c, m)| {
            let b = self.vset.block_of(self.vset.vertex(c));
            m.keys()
                .all(|&r| self.vset.block_of(self.vset.vertex(r)) == b)
        })
    }

    /// Columns that agree between `self` and `other` can be compared only
    /// where both are defined.
    pub fn agrees_with_on(&self, other: &GMatrix, cols: &[VertexId]) -> bool {
        cols.iter().all(|&v| {
            let a = self.column(v);
            let b = other.column(v);
            a.is_some() && a == b
        })
    }

    /// Entry of `G B G^T` at `(v, w)`; requires block-diagonality so that
    /// row supports can be scanned through the finitely many columns of the
    /// surrounding blocks.
    pub fn conjugate_entry(&self, b: &IntMatrix, v: VertexId, w: VertexId) -> i64 {
        let mut total = 0i64;
        for (x, gvx) in self.row_entries(v) {
            let xi = self.vset.index_of(x).unwrap();
            for (y, gwy) in self.row_entries(w) {
                let yi = self.vset.index_of(y).unwrap();
                total += gvx * b.get(xi, yi) * gwy;
            }
        }
        total
    }

    /// Non-zero entries of row `v`, found by scanning the columns of the
    /// block containing `v`.
    pub fn row_entries(&self, v: VertexId) -> Vec<(VertexId, i64)> {
        let b = self.vset.block_of(v);
        let Some(r) = self.vset.index_of(v) else { return vec![] };
        let mut out = Vec::new();
        for i in 1..=self.vset.heights.len() as u8 {
            let x = VertexId::new(i, self.vset.heights[i as usize - 1] + 2 * b);
            if let Some(c) = self.vset.index_of(x) {
                if let Some(m) = self.cols.get(&c) {
                    if let Some(&val) = m.get(&r) {
                        out.push((x, val));
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (&c, col) in &self.cols {
            let mut inner = serde_json::Map::new();
            for (&r, &v) in col {
                inner.insert(self.vset.vertex(r).to_string(), v.into());
            }
            map.insert(self.vset.vertex(c).to_string(), inner.into());
        }
        map.into()
    }
}

/// G-matrix of the initial cluster variables measured against the reference
/// seed after `k` green rounds.
///
/// Computed by attaching principal coefficients at the initial seed and
/// pushing the extended matrix forward through the `k` rounds; the
/// transposed coefficient block is the G-matrix. This reproduces `k = 0 ->
/// identity`, the printed stabilized tables, the block-diagonal structure,
/// and the finite-step identity `B^(k) = G^(k) B_c G^(k)^T`.
pub fn g_matrix_tracked(datum: &DynkinDatum, mq: &MarkedQuiver, k: u32) -> Result<GMatrix> {
    let w = mq.window();
    // A mutation whose mesh lies inside the window updates the extended
    // matrix exactly, so the only multi-round demand is that every green of
    // every round stays mutable; that is checked per round below. The
    // margin itself only needs to cover single-round products.
    if (w.margin as i64) < 2 * datum.coxeter_number {
        return Err(Error::BoundaryTouch(format!(
            "margin {} < 2h = {}",
            w.margin,
            2 * datum.coxeter_number
        )));
    }
    let mut tracker = Tracker::new(mq);
    for _ in 0..k {
        tracker.advance_round(mq)?;
    }
    Ok(tracker.g_matrix(mq))
}

/// Incremental forward tracker: one extended matrix advanced round by round.
struct Tracker {
    ext: IntMatrix,
    nverts: u32,
    round: u32,
}

impl Tracker {
    fn new(mq: &MarkedQuiver) -> Tracker {
        let n = mq.vset.len();
        let mut ext = IntMatrix::zeros(2 * n, n);
        for (r, c, v) in mq.quiver.b_matrix().entries() {
            ext.set(r, c, v);
        }
        for i in 0..n {
            ext.set(n + i, i, 1);
        }
        Tracker { ext, nverts: n, round: 0 }
    }

    fn advance_round(&mut self, mq: &MarkedQuiver) -> Result<()> {
        let w = mq.window();
        for g in mq.greens_at_round(self.round) {
            if g.level - 2 < w.lo || g.level + 2 > w.hi {
                return Err(Error::BoundaryTouch(format!(
                    "green vertex {g} of round {} cannot mutate",
                    self.round
                )));
            }
            let idx = mq
                .vset
                .index_of(g)
                .ok_or_else(|| Error::BoundaryTouch(format!("{g} outside window")))?;
            self.ext.mutate(idx);
        }
        self.round += 1;
        Ok(())
    }

    fn g_matrix(&self, mq: &MarkedQuiver) -> GMatrix {
        let n = self.nverts;
        let mut cols: BTreeMap<u32, BTreeMap<u32, i64>> = BTreeMap::new();
        for (r, c, v) in self.ext.entries() {
            if r >= n {
                // C entry at (row r-n, col c) becomes G entry at (row c, col r-n)
                cols.entry(r - n).or_default().insert(c, v);
            }
        }
        for c in 0..n {
            cols.entry(c).or_default();
        }
        GMatrix { vset: mq.vset.clone(), cols }
    }
}

/// Iterates green rounds until two consecutive G-matrices agree on the safe
/// core, then checks the identity region (`I(m) = Id` for `m > 0`) and that
/// every complete block is invertible over the integers.
pub fn g_stabilized(datum: &DynkinDatum, mq: &MarkedQuiver, cap: Option<u32>) -> Result<(GMatrix, u32)> {
    let w = mq.window();
    let cap = cap.unwrap_or(((w.hi - w.lo) / 2).max(4) as u32);
    let core_cols: Vec<VertexId> = mq.vset.core_vertices().collect();
    let mut tracker = Tracker::new(mq);
    let mut prev = tracker.g_matrix(mq);
    for k in 1..=cap {
        tracker.advance_round(mq)?;
        let cur = tracker.g_matrix(mq);
        if cur.agrees_with_on(&prev, &core_cols) {
            validate_stabilized(datum, mq, &prev, &core_cols)?;
            return Ok((prev, k - 1));
        }
        prev = cur;
    }
    Err(Error::NotStabilized(cap as usize))
}

fn validate_stabilized(
    datum: &DynkinDatum,
    mq: &MarkedQuiver,
    g: &GMatrix,
    core_cols: &[VertexId],
) -> Result<()> {
    for &v in core_cols {
        let col = g.column(v).unwrap();
        for u in col.0.keys() {
            if mq.vset.block_of(*u) != mq.vset.block_of(v) {
                return Err(Error::IdentityFailed {
                    identity: "block support of stabilized g-vectors".into(),
                    residual: format!("column {v} touches {u}"),
                });
            }
        }
        if mq.vset.block_of(v) > 0 {
            if col != GVector::basis(v) {
                return Err(Error::IdentityFailed {
                    identity: "identity region of the stabilized G-matrix".into(),
                    residual: format!("column {v} = {col}"),
                });
            }
        }
    }
    // invertibility of every block fully contained in the core
    let n = datum.rank;
    let mut blocks: BTreeMap<i32, Vec<VertexId>> = BTreeMap::new();
    for &v in core_cols {
        blocks.entry(mq.vset.block_of(v)).or_default().push(v);
    }
    for (m, verts) in blocks {
        if verts.len() != n {
            continue;
        }
        let mut bm = IntMatrix::zeros(n as u32, n as u32);
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate() {
                bm.set(a as u32, b as u32, g.entry(u, v));
            }
        }
        if crate::matrix::invert_unimodular(&bm).is_none() {
            return Err(Error::SingularBlock(m));
        }
    }
    Ok(())
}

/// Stabilized g-vectors via the braid action.
///
/// For any vertex `v = (i, r)`: let `t` be the number of green vertices
/// weakly above `v` in the total order, apply the prefix of the green braid
/// word of length `t` to the basis vector of the highest red vertex of
/// column `i`, and shift the result from its own block into the block of
/// `v`. For a green vertex this is the displayed prefix/shift formula; the
/// assignment for all other vertices is validated wholesale against the
/// tracked G-matrix.
pub fn g_stabilized_braid(datum: &DynkinDatum, mq: &MarkedQuiver) -> Result<GMatrix> {
    let vset = &mq.vset;
    let mut cols: BTreeMap<u32, BTreeMap<u32, i64>> = BTreeMap::new();
    let word: Vec<u8> = mq.green_order.iter().map(|g| g.node).collect();
    let green_idx: Vec<u32> = mq
        .green_order
        .iter()
        .map(|&g| vset.index_of(g).unwrap())
        .collect();
    for &v in vset.vertices() {
        let vi = vset.index_of(v).unwrap();
        let t = green_idx.iter().filter(|&&gi| gi >= vi).count();
        let seed = VertexId::new(v.node, mq.highest_red[&v.node]);
        let mut vec = GVector::basis(seed);
        let result = (|| -> Result<GVector> {
            for &letter in word[..t].iter().rev() {
                vec = braid_apply(datum, vset, letter, &vec)?;
            }
            let blocks: std::collections::BTreeSet<i32> =
                vec.0.keys().map(|&u| vset.block_of(u)).collect();
            debug_assert_eq!(blocks.len(), 1, "braid image spans blocks at {v}");
            let from = *blocks.iter().next().unwrap();
            shift(vset, &vec, vset.block_of(v) - from)
        })();
        match result {
            Ok(gv) => {
                let col: BTreeMap<u32, i64> = gv
                    .0
                    .iter()
                    .map(|(&u, &c)| (vset.index_of(u).unwrap(), c))
                    .collect();
                cols.insert(vi, col);
            }
            Err(Error::BoundaryTouch(_)) if !mq.window().in_core(v) => {
                // near-edge columns may be unreachable; they are outside
                // every comparison anyway
            }
            Err(e) => return Err(e),
        }
    }
    Ok(GMatrix { vset: vset.clone(), cols })
}
