//! Finite windows of the infinite quivers: the equioriented limit quiver
//! `Gamma_e`, the vertex-insertion surgery producing the red/green marked
//! quiver `Gamma_c`, classical mutation, and green rounds.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{CoxeterWord, DynkinDatum};
use crate::matrix::IntMatrix;

/// A vertex `(i, r)` of the infinite quiver: Dynkin node `i`, level `r`.
///
/// The derived `Ord` is structural (node, level) and is only used for map
/// storage; the mathematically meaningful total order lives on
/// [`VertexSet`], where it depends on the height function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub node: u8,
    pub level: i32,
}

impl VertexId {
    pub fn new(node: u8, level: i32) -> Self {
        VertexId { node, level }
    }

    pub fn shifted(self, steps: i32) -> Self {
        VertexId { node: self.node, level: self.level + 2 * steps }
    }
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.node, self.level)
    }
}

/// Level range of a finite truncation plus the margin that separates the
/// trusted safe core from the boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
    pub margin: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32, margin: i32) -> Result<Self> {
        if margin < 0 || hi - lo <= 2 * margin {
            return Err(Error::WindowTooSmall(format!(
                "window [{lo},{hi}] with margin {margin}"
            )));
        }
        Ok(Window { lo, hi, margin })
    }

    /// Window whose safe core is exactly `[core_lo, core_hi]`, with enough
    /// room below for the marked band to translate past the core during
    /// stabilization (the band never starts deeper than `4h`, and it must
    /// descend two levels past the core bottom plus one detection round).
    pub fn with_core(core_lo: i32, core_hi: i32, coxeter_number: i64) -> Result<Self> {
        let m = 10 * coxeter_number as i32 + 8;
        Window::new(core_lo - m, core_hi + m, m)
    }

    pub fn core_lo(&self) -> i32 {
        self.lo + self.margin
    }

    pub fn core_hi(&self) -> i32 {
        self.hi - self.margin
    }

    pub fn in_core(&self, v: VertexId) -> bool {
        self.core_lo() <= v.level && v.level <= self.core_hi()
    }

    pub fn contains_level(&self, r: i32) -> bool {
        self.lo <= r && r <= self.hi
    }
}

/// The window vertices in the total order
/// `(i, l(i)+2a) < (j, l(j)+2b)  iff  a < b, or a = b and i < j`.
#[derive(Debug)]
pub struct VertexSet {
    pub window: Window,
    /// heights per node (1-based node -> heights[node-1])
    pub heights: Vec<i32>,
    verts: Vec<VertexId>,
    index: HashMap<VertexId, u32>,
}

impl VertexSet {
    pub fn new(datum: &DynkinDatum, cox: &CoxeterWord, window: Window) -> Arc<VertexSet> {
        let mut verts = Vec::new();
        for i in 1..=datum.rank as u8 {
            let l = cox.height(i);
            let mut r = window.lo + (l - window.lo).rem_euclid(2);
            while r <= window.hi {
                verts.push(VertexId::new(i, r));
                r += 2;
            }
        }
        let heights = cox.heights.clone();
        verts.sort_by_key(|v| ((v.level - heights[v.node as usize - 1]) / 2, v.node));
        let index = verts
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, k as u32))
            .collect();
        Arc::new(VertexSet { window, heights, verts, index })
    }

    pub fn len(&self) -> u32 {
        self.verts.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn index_of(&self, v: VertexId) -> Option<u32> {
        self.index.get(&v).copied()
    }

    pub fn vertex(&self, idx: u32) -> VertexId {
        self.verts[idx as usize]
    }

    /// Index `m` of the block `I(m) = {(i, l(i)+2m)}` containing `v`.
    pub fn block_of(&self, v: VertexId) -> i32 {
        (v.level - self.heights[v.node as usize - 1]) / 2
    }

    pub fn core_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.verts.iter().copied().filter(|&v| self.window.in_core(v))
    }

    /// Core vertices whose mesh and whole block `I(m)` also lie in the core.
    /// Matrix identities are asserted on this subset so that every entry
    /// they read is materialized and trusted.
    pub fn checkable_core(&self) -> Vec<VertexId> {
        let (lo, hi) = (self.window.core_lo(), self.window.core_hi());
        self.core_vertices()
            .filter(|&v| {
                if v.level - 2 < lo || v.level + 2 > hi {
                    return false;
                }
                let m = self.block_of(v);
                self.heights
                    .iter()
                    .all(|&l| (lo..=hi).contains(&(l + 2 * m)))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    Plain,
    Red,
    Green,
    Frozen,
}

/// A finite window of a quiver with labeled vertices, an arrow multiset and
/// per-vertex marks. The exchange matrix is derived from the arrows.
#[derive(Debug, Clone)]
pub struct LabeledQuiver {
    pub vset: Arc<VertexSet>,
    /// arrow multiset, keyed by (source index, target index)
    pub arrows: BTreeMap<(u32, u32), u32>,
    pub marks: Vec<Mark>,
}

impl LabeledQuiver {
    pub fn window(&self) -> Window {
        self.vset.window
    }

    pub fn mark(&self, v: VertexId) -> Mark {
        self.vset.index_of(v).map(|i| self.marks[i as usize]).unwrap_or(Mark::Plain)
    }

    /// Skew-symmetric exchange matrix `b_{vw} = #(v -> w) - #(w -> v)`.
    pub fn b_matrix(&self) -> IntMatrix {
        let n = self.vset.len();
        let mut b = IntMatrix::zeros(n, n);
        for (&(s, t), &m) in &self.arrows {
            b.add_to(s, t, m as i64);
            b.add_to(t, s, -(m as i64));
        }
        b
    }

    fn from_b_matrix(vset: Arc<VertexSet>, b: &IntMatrix, marks: Vec<Mark>) -> LabeledQuiver {
        let mut arrows = BTreeMap::new();
        for (r, c, v) in b.entries() {
            if v > 0 {
                arrows.insert((r, c), v as u32);
            }
        }
        LabeledQuiver { vset, arrows, marks }
    }

    pub fn vertices_of_mark(&self, m: Mark) -> Vec<VertexId> {
        self.vset
            .vertices()
            .iter()
            .enumerate()
            .filter(|&(k, _)| self.marks[k] == m)
            .map(|(_, &v)| v)
            .collect()
    }

    /// Fomin-Zelevinsky mutation at `v`. Marks are preserved except at `v`,
    /// which becomes plain. Fails on frozen vertices and when the mesh of
    /// `v` touches the window edge (outermost level), where arrow data is
    /// truncated.
    pub fn mutate(&self, v: VertexId) -> Result<LabeledQuiver> {
        let k = self
            .vset
            .index_of(v)
            .ok_or_else(|| Error::BoundaryTouch(format!("{v} outside window")))?;
        if self.marks[k as usize] == Mark::Frozen {
            return Err(Error::FrozenVertex(v.to_string()));
        }
        self.check_mesh_inside(v)?;
        let mut b = self.b_matrix();
        b.mutate(k);
        let mut marks = self.marks.clone();
        marks[k as usize] = match marks[k as usize] {
            Mark::Frozen => Mark::Frozen,
            _ => Mark::Plain,
        };
        Ok(LabeledQuiver::from_b_matrix(self.vset.clone(), &b, marks))
    }

    /// The mesh of a vertex must stay strictly inside the window levels:
    /// a vertex on the outermost meshes has truncated neighbor data.
    fn check_mesh_inside(&self, v: VertexId) -> Result<()> {
        let w = self.window();
        if v.level - 2 < w.lo || v.level + 2 > w.hi {
            return Err(Error::BoundaryTouch(format!(
                "mesh of {v} leaves window [{},{}]",
                w.lo, w.hi
            )));
        }
        Ok(())
    }

    /// True when `v` and every endpoint of an arrow at `v` lie in the safe
    /// core. Below the marked band the columns are unevenly relabeled, so a
    /// mesh can span more levels than in the limit quiver; identity checks
    /// that read core-materialized matrices must select rows by the actual
    /// arrow support.
    pub fn mesh_in_core(&self, v: VertexId) -> bool {
        let w = self.window();
        let Some(k) = self.vset.index_of(v) else { return false };
        if !w.in_core(v) {
            return false;
        }
        self.arrows
            .keys()
            .filter(|&&(s, t)| s == k || t == k)
            .all(|&(s, t)| {
                w.in_core(self.vset.vertex(s)) && w.in_core(self.vset.vertex(t))
            })
    }

    pub fn assert_simple_arrows(&self) -> Result<()> {
        for (&(s, t), &m) in &self.arrows {
            if m > 1 {
                return Err(Error::KnittingFailed(format!(
                    "arrow multiplicity {m} between {} and {}",
                    self.vset.vertex(s),
                    self.vset.vertex(t)
                )));
            }
        }
        Ok(())
    }
}

/// Builds the window of the limit quiver: vertices `(i, r)` with
/// `r = l(i) mod 2`, arrows `(i,r) -> (j, r + c_{ij})` for `c_{ij} != 0`.
pub fn gamma_e(datum: &DynkinDatum, cox: &CoxeterWord, window: Window) -> Result<LabeledQuiver> {
    if window.hi - window.lo < 6 {
        return Err(Error::WindowTooSmall(
            "need at least 3 levels per column".into(),
        ));
    }
    let vset = VertexSet::new(datum, cox, window);
    let mut arrows = BTreeMap::new();
    for &v in vset.vertices() {
        for j in 1..=datum.rank as u8 {
            let c = datum.cartan[v.node as usize - 1][j as usize - 1];
            if c == 0 {
                continue;
            }
            let t = VertexId::new(j, v.level + c as i32);
            if let (Some(s), Some(t)) = (vset.index_of(v), vset.index_of(t)) {
                arrows.insert((s, t), 1);
            }
        }
    }
    let marks = vec![Mark::Plain; vset.len() as usize];
    Ok(LabeledQuiver { vset, arrows, marks })
}

/// The finite subquiver carrying the module category: vertex set plus the
/// dimension vector knitted at each vertex.
#[derive(Debug, Clone)]
pub struct KnittedSubquiver {
    /// vertices in `Gamma_e` coordinates with their dimension vectors
    pub dims: BTreeMap<VertexId, Vec<i64>>,
}

/// Knits the Auslander-Reiten subquiver downward from the projective slice.
///
/// The slice puts the projective of node `i` at `(i, -l(i))`; one step down
/// the mesh rule gives `dim(i, r-2) = sum_{j adj i} dim(j, r-1) - dim(i, r)`,
/// and a column ends when the knitted vector is no longer a positive root.
/// The multiset of knitted dimension vectors must equal the positive roots.
pub fn knit_ar_subquiver(datum: &DynkinDatum, cox: &CoxeterWord) -> Result<KnittedSubquiver> {
    let n = datum.rank;
    let mut out_arrows: HashMap<u8, Vec<u8>> = HashMap::new();
    for &(s, t) in &cox.orientation {
        out_arrows.entry(s).or_default().push(t);
    }
    // dim P_i: reachable set along the orientation (tree, so 0/1 vectors)
    let proj = |i: u8| -> Vec<i64> {
        let mut seen = vec![false; n + 1];
        let mut stack = vec![i];
        seen[i as usize] = true;
        while let Some(u) = stack.pop() {
            for &w in out_arrows.get(&u).map(|v| v.as_slice()).unwrap_or(&[]) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        (1..=n).map(|j| if seen[j] { 1 } else { 0 }).collect()
    };
    let roots: std::collections::BTreeSet<Vec<i64>> =
        datum.positive_roots.iter().cloned().collect();
    let mut dims: BTreeMap<VertexId, Vec<i64>> = BTreeMap::new();
    let mut alive = vec![true; n + 1];
    let mut top = i32::MIN;
    for i in 1..=n as u8 {
        let r = -cox.height(i);
        dims.insert(VertexId::new(i, r), proj(i));
        top = top.max(r);
    }
    let floor = top - 4 * datum.num_positive_roots() as i32 - 4;
    let mut r = top - 1;
    while alive.iter().skip(1).any(|&a| a) && r > floor {
        for i in 1..=n as u8 {
            if !alive[i as usize] || (r - (-cox.height(i))).rem_euclid(2) != 0 {
                continue;
            }
            let above = VertexId::new(i, r + 2);
            let Some(d_above) = dims.get(&above) else { continue };
            let mut s = vec![0i64; n];
            for j in datum.neighbors(i) {
                if let Some(dj) = dims.get(&VertexId::new(j, r + 1)) {
                    for (a, b) in s.iter_mut().zip(dj) {
                        *a += b;
                    }
                }
            }
            let cand: Vec<i64> = s.iter().zip(d_above).map(|(a, b)| a - b).collect();
            if roots.contains(&cand) {
                dims.insert(VertexId::new(i, r), cand);
            } else {
                alive[i as usize] = false;
            }
        }
        r -= 1;
    }
    let mut knitted: Vec<Vec<i64>> = dims.values().cloned().collect();
    knitted.sort();
    let mut expected: Vec<Vec<i64>> = datum.positive_roots.clone();
    expected.sort();
    if knitted != expected {
        return Err(Error::KnittingFailed(format!(
            "knitted {} vectors, expected the {} positive roots",
            knitted.len(),
            expected.len()
        )));
    }
    Ok(KnittedSubquiver { dims })
}

/// The surgered quiver with its red/green data.
#[derive(Debug, Clone)]
pub struct MarkedQuiver {
    pub quiver: LabeledQuiver,
    /// green vertices top-to-bottom; their nodes form a reduced word for w0
    pub green_order: Vec<VertexId>,
    /// highest red vertex per column, `node -> level`
    pub highest_red: HashMap<u8, i32>,
    /// smallest block index containing a green vertex
    pub h_c: i32,
}

impl std::ops::Deref for MarkedQuiver {
    type Target = LabeledQuiver;
    fn deref(&self) -> &LabeledQuiver {
        &self.quiver
    }
}

/// Performs the vertex-insertion surgery at every knitted vertex, top-down
/// within each column, and normalizes so that the highest red vertex sits at
/// level 0.
///
/// One surgery at the current label `(i, rho)`: insert `*` between `(i,rho)`
/// and `(i,rho-2)`, replace the column arrow by `(i,rho) -> * <- (i,rho-2)`,
/// move every outgoing diagonal of `(i,rho)` to start at `*`, then relabel
/// the lower half of column `i` down by one step so that `*` becomes
/// `(i,rho-2)`. The surgered vertex is painted red, `*` green.
pub fn gamma_c(datum: &DynkinDatum, cox: &CoxeterWord, window: Window) -> Result<MarkedQuiver> {
    let knitted = knit_ar_subquiver(datum, cox)?;
    // sites per column, top-down by original level
    let mut sites: HashMap<u8, Vec<i32>> = HashMap::new();
    for v in knitted.dims.keys() {
        sites.entry(v.node).or_default().push(v.level);
    }
    for levels in sites.values_mut() {
        levels.sort_by_key(|&r| std::cmp::Reverse(r));
    }
    let deepest_site = sites
        .iter()
        .flat_map(|(_, ls)| ls.iter().enumerate().map(|(k, &r)| r - 2 * k as i32))
        .min()
        .unwrap_or(0);
    if window.lo + 2 > deepest_site - 2 || window.hi < 2 {
        return Err(Error::WindowTooSmall(format!(
            "window [{},{}] cannot hold the surgered band reaching level {}",
            window.lo, window.hi, deepest_site - 2
        )));
    }

    let base = gamma_e(datum, cox, window)?;
    let vset = base.vset.clone();
    // work on (VertexId, VertexId) arrows so relabeling is cheap
    let mut arrows: Vec<(VertexId, VertexId)> = base
        .arrows
        .keys()
        .map(|&(s, t)| (vset.vertex(s), vset.vertex(t)))
        .collect();
    let mut marks: HashMap<VertexId, Mark> = HashMap::new();
    let star = VertexId::new(0, i32::MIN); // placeholder outside any column

    let mut columns: Vec<u8> = sites.keys().copied().collect();
    columns.sort();
    for i in columns {
        for (k, &r0) in sites[&i].iter().enumerate() {
            let rho = r0 - 2 * k as i32;
            let site = VertexId::new(i, rho);
            let below = VertexId::new(i, rho - 2);
            // step 2: column arrow becomes a pair into *
            arrows.retain(|&(s, t)| !(s == below && t == site));
            arrows.push((site, star));
            if below.level >= window.lo {
                arrows.push((below, star));
            }
            // step 3: outgoing diagonals of the site now leave from *
            for a in arrows.iter_mut() {
                if a.0 == site && a.1 != star && a.1.node != i {
                    a.0 = star;
                }
            }
            // step 4: relabel the lower half of the column
            let relabel = |u: VertexId| -> VertexId {
                if u == star {
                    below
                } else if u.node == i && u.level < rho {
                    VertexId::new(i, u.level - 2)
                } else {
                    u
                }
            };
            for a in arrows.iter_mut() {
                *a = (relabel(a.0), relabel(a.1));
            }
            marks = marks.into_iter().map(|(u, m)| (relabel(u), m)).collect();
            marks.insert(below, Mark::Green);
            marks.insert(site, Mark::Red);
        }
    }
    arrows.retain(|&(s, t)| vset.contains(s) && vset.contains(t));

    let mut arrow_map: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for (s, t) in arrows {
        let key = (vset.index_of(s).unwrap(), vset.index_of(t).unwrap());
        *arrow_map.entry(key).or_insert(0) += 1;
    }
    let mut mark_vec = vec![Mark::Plain; vset.len() as usize];
    for (v, m) in &marks {
        if let Some(k) = vset.index_of(*v) {
            mark_vec[k as usize] = *m;
        }
    }
    let quiver = LabeledQuiver { vset: vset.clone(), arrows: arrow_map, marks: mark_vec };
    quiver.assert_simple_arrows()?;
    // local finiteness: at most two vertical arrows plus one diagonal in
    // and one diagonal out per Dynkin neighbor
    for (k, &v) in vset.vertices().iter().enumerate() {
        let degree = quiver
            .arrows
            .keys()
            .filter(|&&(s, t)| s == k as u32 || t == k as u32)
            .count();
        let bound = 2 + 2 * datum.neighbors(v.node).len();
        if degree > bound {
            return Err(Error::KnittingFailed(format!(
                "vertex {v} has degree {degree} > {bound}"
            )));
        }
    }

    // normalization: the highest red vertex must be of the form (i, 0);
    // with the projective slice at (i, -l(i)) this holds by construction,
    // asserted here rather than re-shifted.
    let reds = quiver.vertices_of_mark(Mark::Red);
    let top_red = reds.iter().map(|v| v.level).max().unwrap();
    if top_red != 0 {
        return Err(Error::KnittingFailed(format!(
            "highest red vertex at level {top_red}, expected 0"
        )));
    }
    let mut highest_red: HashMap<u8, i32> = HashMap::new();
    for v in &reds {
        let e = highest_red.entry(v.node).or_insert(i32::MIN);
        *e = (*e).max(v.level);
    }

    let mut green_order = quiver.vertices_of_mark(Mark::Green);
    green_order.sort_by_key(|&v| std::cmp::Reverse(vset.index_of(v).unwrap()));
    let n_greens = green_order.len();
    if n_greens != datum.num_positive_roots() {
        return Err(Error::KnittingFailed(format!(
            "{n_greens} green vertices, expected {}",
            datum.num_positive_roots()
        )));
    }
    let green_word: Vec<u8> = green_order.iter().map(|v| v.node).collect();
    let check = crate::lie::weyl_word_check(datum, &green_word);
    if !check.is_w0 {
        return Err(Error::KnittingFailed(format!(
            "green word {green_word:?} is not a reduced word for w0"
        )));
    }
    let h_c = green_order
        .iter()
        .map(|&g| vset.block_of(g))
        .min()
        .unwrap();
    if h_c >= 0 {
        return Err(Error::KnittingFailed(format!("h_c = {h_c}, expected < 0")));
    }

    Ok(MarkedQuiver { quiver, green_order, highest_red, h_c })
}

impl MarkedQuiver {
    /// Green vertices of the k-th round: the initial greens translated down.
    pub fn greens_at_round(&self, k: u32) -> Vec<VertexId> {
        self.green_order.iter().map(|&g| g.shifted(-(k as i32))).collect()
    }
}

/// One green round: mutate at every green vertex (they pairwise commute) and
/// verify that the result is the input translated down by one step on the
/// safe core. Returns the mutated quiver and the mutation list.
pub fn green_round(mq: &MarkedQuiver) -> Result<(MarkedQuiver, Vec<VertexId>)> {
    let q = &mq.quiver;
    let b = q.b_matrix();
    let vset = &q.vset;
    for (a, &g1) in mq.green_order.iter().enumerate() {
        for &g2 in mq.green_order.iter().skip(a + 1) {
            let (i1, i2) = (vset.index_of(g1).unwrap(), vset.index_of(g2).unwrap());
            if b.get(i1, i2) != 0 {
                return Err(Error::TranslationMismatch(format!(
                    "green vertices {g1} and {g2} are joined by an arrow"
                )));
            }
        }
    }
    let mut cur = q.clone();
    for &g in &mq.green_order {
        cur = cur.mutate(g)?;
    }
    // relabel marks downward
    let mut marks = vec![Mark::Plain; vset.len() as usize];
    for (k, &m) in q.marks.iter().enumerate() {
        if m == Mark::Plain {
            continue;
        }
        let v = vset.vertex(k as u32).shifted(-1);
        if let Some(j) = vset.index_of(v) {
            marks[j as usize] = m;
        }
    }
    cur.marks = marks;

    // translation check on the safe core
    let nb = cur.b_matrix();
    let w = q.window();
    for (&(s, t), &m) in &q.arrows {
        let (vs, vt) = (vset.vertex(s), vset.vertex(t));
        let (ds, dt) = (vs.shifted(-1), vt.shifted(-1));
        let all_core = [vs, vt, ds, dt]
            .iter()
            .all(|u| w.in_core(*u) && vset.contains(*u));
        if !all_core {
            continue;
        }
        let got = nb.get(vset.index_of(ds).unwrap(), vset.index_of(dt).unwrap());
        if got != m as i64 {
            return Err(Error::TranslationMismatch(format!(
                "arrow {vs} -> {vt} (x{m}) not found at {ds} -> {dt} after the round"
            )));
        }
    }
    let result = MarkedQuiver {
        quiver: cur,
        green_order: mq.green_order.iter().map(|&g| g.shifted(-1)).collect(),
        highest_red: mq
            .highest_red
            .iter()
            .map(|(&i, &r)| (i, r - 2))
            .collect(),
        h_c: mq.h_c - 1,
    };
    Ok((result, mq.green_order.clone()))
}

/// Deterministic JSON form of a quiver:
/// `{vertices: [{i, r, mark}], arrows: [[i, r, i', r']], window: {...}}`.
pub fn quiver_to_json(q: &LabeledQuiver) -> serde_json::Value {
    use serde_json::json;
    let verts: Vec<_> = q
        .vset
        .vertices()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            json!({
                "i": v.node,
                "r": v.level,
                "mark": q.marks[k],
            })
        })
        .collect();
    let arrows: Vec<_> = q
        .arrows
        .iter()
        .flat_map(|(&(s, t), &m)| {
            let (vs, vt) = (q.vset.vertex(s), q.vset.vertex(t));
            std::iter::repeat(json!([vs.node, vs.level, vt.node, vt.level])).take(m as usize)
        })
        .collect();
    json!({
        "vertices": verts,
        "arrows": arrows,
        "window": {"lo": q.window().lo, "hi": q.window().hi, "margin": q.window().margin},
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{coxeter_word, make_datum, Family};

    fn setup(fam: Family, rank: usize, word: &[u8]) -> (DynkinDatum, CoxeterWord) {
        let d = make_datum(fam, rank).unwrap();
        let c = coxeter_word(&d, word).unwrap();
        (d, c)
    }

    #[test]
    fn gamma_e_a1_is_a_chain() {
        let (d, c) = setup(Family::A, 1, &[1]);
        let w = Window::new(-4, 2, 0).unwrap();
        let q = gamma_e(&d, &c, w).unwrap();
        let vs: Vec<_> = q.vset.vertices().to_vec();
        assert_eq!(
            vs,
            vec![
                VertexId::new(1, -4),
                VertexId::new(1, -2),
                VertexId::new(1, 0),
                VertexId::new(1, 2)
            ]
        );
        // exactly the arrows r -> r+2
        let arrows: Vec<_> = q
            .arrows
            .keys()
            .map(|&(s, t)| (q.vset.vertex(s).level, q.vset.vertex(t).level))
            .collect();
        assert_eq!(arrows, vec![(-4, -2), (-2, 0), (0, 2)]);
    }

    #[test]
    fn gamma_e_a3_mesh() {
        // arrows out of (2,-1) by the rule: (2,-1)->(1,-2), (2,-1)->(3,-2),
        // (2,-1)->(2,1)
        let (d, c) = setup(Family::A, 3, &[1, 2, 3]);
        let w = Window::new(-8, 4, 0).unwrap();
        let q = gamma_e(&d, &c, w).unwrap();
        let v = q.vset.index_of(VertexId::new(2, -1)).unwrap();
        let mut out: Vec<_> = q
            .arrows
            .keys()
            .filter(|&&(s, _)| s == v)
            .map(|&(_, t)| q.vset.vertex(t))
            .collect();
        out.sort();
        assert_eq!(
            out,
            vec![
                VertexId::new(1, -2),
                VertexId::new(2, 1),
                VertexId::new(3, -2)
            ]
        );
    }

    #[test]
    fn vertex_count_a2_printed_window() {
        let (d, c) = setup(Family::A, 2, &[1, 2]);
        let w = Window::new(-8, 2, 0).unwrap();
        let q = gamma_e(&d, &c, w).unwrap();
        assert_eq!(q.vset.len(), 11);
    }

    #[test]
    fn knit_small_types() {
        let (d, c) = setup(Family::A, 1, &[1]);
        let k = knit_ar_subquiver(&d, &c).unwrap();
        assert_eq!(k.dims.len(), 1);
        assert_eq!(k.dims[&VertexId::new(1, 0)], vec![1]);

        let (d, c) = setup(Family::A, 2, &[1, 2]);
        let k = knit_ar_subquiver(&d, &c).unwrap();
        let keys: Vec<_> = k.dims.keys().copied().collect();
        assert_eq!(
            keys,
            vec![
                VertexId::new(1, -2),
                VertexId::new(1, 0),
                VertexId::new(2, -1)
            ]
        );

        let (d, c) = setup(Family::A, 3, &[1, 2, 3]);
        let k = knit_ar_subquiver(&d, &c).unwrap();
        let keys: std::collections::BTreeSet<_> = k.dims.keys().copied().collect();
        let expect: std::collections::BTreeSet<_> = [
            (1, 0),
            (2, -1),
            (3, -2),
            (1, -2),
            (2, -3),
            (1, -4),
        ]
        .iter()
        .map(|&(i, r)| VertexId::new(i, r))
        .collect();
        assert_eq!(keys, expect);
    }

    #[test]
    fn surgery_a1() {
        let (d, c) = setup(Family::A, 1, &[1]);
        let w = Window::new(-12, 8, 0).unwrap();
        let mq = gamma_c(&d, &c, w).unwrap();
        assert_eq!(mq.quiver.mark(VertexId::new(1, 0)), Mark::Red);
        assert_eq!(mq.quiver.mark(VertexId::new(1, -2)), Mark::Green);
        let has = |a: i32, b: i32| {
            let s = mq.vset.index_of(VertexId::new(1, a)).unwrap();
            let t = mq.vset.index_of(VertexId::new(1, b)).unwrap();
            mq.quiver.arrows.contains_key(&(s, t))
        };
        assert!(has(0, -2) && has(-4, -2) && has(0, 2) && has(-6, -4) && has(2, 4));
        assert!(!has(-2, 0));
        assert_eq!(mq.h_c, -1);
    }

    #[test]
    fn surgery_a2_matches_printed_quiver() {
        let (d, c) = setup(Family::A, 2, &[1, 2]);
        let w = Window::new(-20, 8, 0).unwrap();
        let mq = gamma_c(&d, &c, w).unwrap();
        let reds: std::collections::BTreeSet<_> =
            mq.quiver.vertices_of_mark(Mark::Red).into_iter().collect();
        let greens: std::collections::BTreeSet<_> =
            mq.quiver.vertices_of_mark(Mark::Green).into_iter().collect();
        let v = VertexId::new;
        assert_eq!(reds, [v(1, 0), v(2, -1), v(1, -4)].into_iter().collect());
        assert_eq!(greens, [v(1, -2), v(2, -3), v(1, -6)].into_iter().collect());
        assert_eq!(mq.green_order, vec![v(1, -2), v(2, -3), v(1, -6)]);
        assert_eq!(mq.h_c, -3);
        // the band arrows, including the long diagonal (2,-5) -> (1,-8)
        let has = |a: VertexId, b: VertexId| {
            mq.quiver
                .arrows
                .contains_key(&(mq.vset.index_of(a).unwrap(), mq.vset.index_of(b).unwrap()))
        };
        for (a, b) in [
            (v(1, 0), v(1, -2)),
            (v(1, -2), v(2, -1)),
            (v(2, -1), v(2, 1)),
            (v(2, -1), v(2, -3)),
            (v(2, -3), v(1, -4)),
            (v(1, -4), v(1, -2)),
            (v(1, -4), v(1, -6)),
            (v(1, -6), v(2, -5)),
            (v(2, -5), v(2, -3)),
            (v(2, -5), v(1, -8)),
            (v(1, -8), v(1, -6)),
            (v(2, 1), v(1, 0)),
            (v(1, 0), v(1, 2)),
        ] {
            assert!(has(a, b), "missing arrow {a} -> {b}");
        }
        assert!(!has(v(1, -2), v(1, 0)));
    }

    #[test]
    fn surgery_a3_green_word() {
        let (d, c) = setup(Family::A, 3, &[1, 2, 3]);
        let w = Window::new(-30, 10, 0).unwrap();
        let mq = gamma_c(&d, &c, w).unwrap();
        let word: Vec<u8> = mq.green_order.iter().map(|g| g.node).collect();
        assert_eq!(word, vec![1, 2, 3, 1, 2, 1]);
        let reds: std::collections::BTreeSet<_> =
            mq.quiver.vertices_of_mark(Mark::Red).into_iter().collect();
        let v = VertexId::new;
        assert_eq!(
            reds,
            [v(1, 0), v(2, -1), v(3, -2), v(1, -4), v(2, -5), v(1, -8)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn mutation_involution_and_a1_shift() {
        let (d, c) = setup(Family::A, 1, &[1]);
        let w = Window::new(-12, 8, 0).unwrap();
        let mq = gamma_c(&d, &c, w).unwrap();
        let q = &mq.quiver;
        let twice = q
            .mutate(VertexId::new(1, -2))
            .unwrap()
            .mutate(VertexId::new(1, -2))
            .unwrap();
        assert_eq!(twice.arrows, q.arrows);
        // mutation at the red vertex 0 produces the band moved up by 2
        let up = q.mutate(VertexId::new(1, 0)).unwrap();
        let has = |qq: &LabeledQuiver, a: i32, b: i32| {
            qq.arrows.contains_key(&(
                qq.vset.index_of(VertexId::new(1, a)).unwrap(),
                qq.vset.index_of(VertexId::new(1, b)).unwrap(),
            ))
        };
        assert!(has(&up, 2, 0) && has(&up, -2, 0) && has(&up, 2, 4) && has(&up, -4, -2));
        // mutation at the green vertex -2 moves the band down by 2
        let down = q.mutate(VertexId::new(1, -2)).unwrap();
        assert!(has(&down, -2, -4) && has(&down, -6, -4) && has(&down, -2, 0) && has(&down, 0, 2));
    }

    #[test]
    fn green_round_translates() {
        for (fam, rank, word) in [
            (Family::A, 2, vec![1u8, 2]),
            (Family::A, 3, vec![2, 1, 3]),
            (Family::D, 4, vec![1, 2, 3, 4]),
        ] {
            let (d, c) = setup(fam, rank, &word);
            let w = Window::new(-40, 10, 4).unwrap();
            let mq = gamma_c(&d, &c, w).unwrap();
            let (next, mutated) = green_round(&mq).unwrap();
            assert_eq!(mutated.len(), d.num_positive_roots());
            let (_again, _) = green_round(&next).unwrap();
        }
    }

    #[test]
    fn arrows_and_matrix_round_trip() {
        let (d, c) = setup(Family::A, 3, &[1, 2, 3]);
        let w = Window::new(-30, 10, 4).unwrap();
        let mq = gamma_c(&d, &c, w).unwrap();
        let b = mq.quiver.b_matrix();
        assert!(b.is_skew_symmetric());
        let rebuilt = LabeledQuiver::from_b_matrix(mq.vset.clone(), &b, mq.quiver.marks.clone());
        assert_eq!(rebuilt.arrows, mq.quiver.arrows);
    }

    #[test]
    fn repeated_green_rounds_recover_the_limit_quiver() {
        let (d, c) = setup(Family::A, 2, &[1, 2]);
        let w = Window::new(-80, 14, 6).unwrap();
        let mut cur = gamma_c(&d, &c, w).unwrap();
        let limit = gamma_e(&d, &c, w).unwrap();
        let be = limit.b_matrix();
        for _ in 0..12 {
            let (next, _) = green_round(&cur).unwrap();
            cur = next;
        }
        // the band top has moved below level -24; above it the quiver is
        // the limit quiver on the nose
        let bc = cur.quiver.b_matrix();
        let region: Vec<VertexId> = cur
            .vset
            .core_vertices()
            .filter(|v| v.level >= -20)
            .collect();
        assert!(region.len() > 20);
        for &v in &region {
            for &u in &region {
                let (a, b2) = (cur.vset.index_of(v).unwrap(), cur.vset.index_of(u).unwrap());
                assert_eq!(bc.get(a, b2), be.get(a, b2), "at ({v},{u})");
            }
        }
    }

    #[test]
    fn frozen_and_boundary_errors() {
        let (d, c) = setup(Family::A, 1, &[1]);
        let w = Window::new(-12, 8, 2).unwrap();
        let mq = gamma_c(&d, &c, w).unwrap();
        let mut q = mq.quiver.clone();
        let k = q.vset.index_of(VertexId::new(1, 2)).unwrap();
        q.marks[k as usize] = Mark::Frozen;
        assert!(matches!(
            q.mutate(VertexId::new(1, 2)),
            Err(Error::FrozenVertex(_))
        ));
        assert!(matches!(
            q.mutate(VertexId::new(1, 8)),
            Err(Error::BoundaryTouch(_))
        ));
        assert!(matches!(
            q.mutate(VertexId::new(1, 100)),
            Err(Error::BoundaryTouch(_))
        ));
    }
}
