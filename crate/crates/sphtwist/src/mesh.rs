//! Finite windows of the translation quivers ZA_n and ZD4 and their mesh
//! categories.
//!
//! Vertices are pairs `(row, pos)`. Both supported diagrams are stars or
//! paths, so the quiver is laid out bipartitely: "source class" rows emit
//! arrows at the same position, the other rows emit arrows into the next
//! position. For D4 the source class is the hub row 0 with spokes 1,2,3;
//! for A_n the rows are centered around 0 and the source class is the even
//! rows (A3 has rows -1,0,1 with hub 0).
//!
//! Hom dimensions in the mesh category are computed two ways: `hom_dim`
//! knits a counting function forward from the source, clamping at zero when
//! a hammock closes; `hom_dim_oracle` does exact linear algebra on path
//! spaces modulo the mesh relations, propagating quotient presentations
//! degree by degree. The two must agree everywhere; the test-suite holds
//! them against each other.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::ratmat::{q_from, quotient_by_columns, QMat};

/// A point of the translation quiver: `(row, pos)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub row: i32,
    pub pos: i64,
}

impl Vertex {
    pub fn new(row: i32, pos: i64) -> Self {
        Vertex { row, pos }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.pos)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid vertex literal {input:?}: expected \"(row,pos)\"")]
pub struct VertexParseError {
    pub input: String,
}

impl FromStr for Vertex {
    type Err = VertexParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || VertexParseError {
            input: s.to_string(),
        };
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(err)?;
        let (a, b) = inner.split_once(',').ok_or_else(err)?;
        let row: i32 = a.trim().parse().map_err(|_| err())?;
        let pos: i64 = b.trim().parse().map_err(|_| err())?;
        Ok(Vertex { row, pos })
    }
}

/// Supported Dynkin diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diagram {
    /// The path A_n, n >= 1. A3 uses the rows -1, 0, 1.
    A(u32),
    /// The star D4: hub row 0, spoke rows 1, 2, 3.
    D4,
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagram::A(n) => write!(f, "a{n}"),
            Diagram::D4 => write!(f, "d4"),
        }
    }
}

impl FromStr for Diagram {
    type Err = MeshError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        if t == "d4" {
            return Ok(Diagram::D4);
        }
        if let Some(num) = t.strip_prefix('a') {
            if let Ok(n) = num.parse::<u32>() {
                if n >= 1 {
                    return Ok(Diagram::A(n));
                }
            }
        }
        Err(MeshError::UnsupportedDiagram(s.to_string()))
    }
}

/// Inclusive range of positions materialized in a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    pub fn len(&self) -> i64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, pos: i64) -> bool {
        self.lo <= pos && pos <= self.hi
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeshError {
    #[error("unsupported diagram {0:?}")]
    UnsupportedDiagram(String),
    #[error("window [{lo},{hi}] is empty")]
    EmptyWindow { lo: i64, hi: i64 },
    #[error("vertex {vertex} is outside the model (rows {rows:?}, window [{lo},{hi}])")]
    VertexOutsideModel {
        vertex: Vertex,
        rows: Vec<i32>,
        lo: i64,
        hi: i64,
    },
    #[error(
        "window [{lo},{hi}] too small for hom computation between {x} and {y}: \
         need {margin} positions of margin beyond both arguments"
    )]
    InsufficientWindow {
        x: Vertex,
        y: Vertex,
        lo: i64,
        hi: i64,
        margin: i64,
    },
}

/// A map of the form `(row, pos) -> (to_row, pos + offset)` with one rule per
/// row. Both the Serre functor and the shift act this way on vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineVertexMap {
    rules: BTreeMap<i32, (i32, i64)>,
}

impl AffineVertexMap {
    pub fn new(rules: BTreeMap<i32, (i32, i64)>) -> Self {
        AffineVertexMap { rules }
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        let (row, off) = self.rules[&v.row];
        Vertex::new(row, v.pos + off)
    }

    pub fn rule(&self, row: i32) -> (i32, i64) {
        self.rules[&row]
    }

    pub fn inverse(&self) -> AffineVertexMap {
        let rules = self
            .rules
            .iter()
            .map(|(&r, &(to, off))| (to, (r, -off)))
            .collect();
        AffineVertexMap { rules }
    }

    pub fn compose_after(&self, inner: &AffineVertexMap) -> AffineVertexMap {
        let rules = inner
            .rules
            .iter()
            .map(|(&r, &(mid, off1))| {
                let (to, off2) = self.rules[&mid];
                (r, (to, off1 + off2))
            })
            .collect();
        AffineVertexMap { rules }
    }

    pub fn is_row_identity(&self) -> bool {
        self.rules.iter().all(|(&r, &(to, _))| r == to)
    }

    pub fn max_offset(&self) -> i64 {
        self.rules.values().map(|&(_, off)| off).max().unwrap_or(0)
    }
}

/// A finite window of the translation quiver with its mesh structure.
#[derive(Debug, Clone)]
pub struct MeshModel {
    diagram: Diagram,
    window: Window,
    rows: Vec<i32>,
    /// Rows whose arrows stay at the same position (hub side of the
    /// bipartite layout).
    src_class: Vec<i32>,
    /// Adjacency in the underlying Dynkin tree.
    neighbors: BTreeMap<i32, Vec<i32>>,
    serre_rule: AffineVertexMap,
    shift_rule: AffineVertexMap,
}

/// An arrow of the materialized quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub from: Vertex,
    pub to: Vertex,
}

/// Rows, source-class rows, adjacency, Serre rule, shift rule.
type Layout = (
    Vec<i32>,
    Vec<i32>,
    BTreeMap<i32, Vec<i32>>,
    AffineVertexMap,
    AffineVertexMap,
);

/// A complete mesh: `tau_target -> middles -> target` all inside the window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mesh {
    pub tau_target: Vertex,
    pub middles: Vec<Vertex>,
    pub target: Vertex,
}

/// Builds the window of the translation quiver for `diagram`.
///
/// Errors with `UnsupportedDiagram` for A_0 and `EmptyWindow` for reversed
/// windows.
pub fn build_mesh(diagram: Diagram, window: Window) -> Result<MeshModel, MeshError> {
    MeshModel::build(diagram, window)
}

impl MeshModel {
    pub fn build(diagram: Diagram, window: Window) -> Result<Self, MeshError> {
        if window.is_empty() {
            return Err(MeshError::EmptyWindow {
                lo: window.lo,
                hi: window.hi,
            });
        }
        let (rows, src_class, neighbors, serre_rule, shift_rule) = match diagram {
            Diagram::A(0) => return Err(MeshError::UnsupportedDiagram("a0".to_string())),
            Diagram::A(n) => Self::layout_a(n),
            Diagram::D4 => Self::layout_d4(),
        };
        Ok(MeshModel {
            diagram,
            window,
            rows,
            src_class,
            neighbors,
            serre_rule,
            shift_rule,
        })
    }

    fn layout_d4() -> Layout {
        let rows = vec![0, 1, 2, 3];
        let src_class = vec![0];
        let mut neighbors = BTreeMap::new();
        neighbors.insert(0, vec![1, 2, 3]);
        for r in 1..=3 {
            neighbors.insert(r, vec![0]);
        }
        let serre = AffineVertexMap::new(rows.iter().map(|&r| (r, (r, 2))).collect());
        let shift = AffineVertexMap::new(rows.iter().map(|&r| (r, (r, 3))).collect());
        (rows, src_class, neighbors, serre, shift)
    }

    fn layout_a(n: u32) -> Layout {
        let n = n as i32;
        // Centered row labels: odd n gives -p..=p, even n gives -(n/2-1)..=n/2.
        let (lo, hi) = if n % 2 == 1 {
            (-(n / 2), n / 2)
        } else {
            (-(n / 2 - 1), n / 2)
        };
        let rows: Vec<i32> = (lo..=hi).collect();
        let src_class: Vec<i32> = rows.iter().copied().filter(|r| r.rem_euclid(2) == 0).collect();
        let mut neighbors: BTreeMap<i32, Vec<i32>> = BTreeMap::new();
        for &r in &rows {
            let mut adj = Vec::new();
            if r > lo {
                adj.push(r - 1);
            }
            if r < hi {
                adj.push(r + 1);
            }
            neighbors.insert(r, adj);
        }
        // Coxeter number h = n + 1. The shift is the diagram flip composed
        // with a half Coxeter translation; for even n the flip exchanges the
        // two bipartition classes and odd rows pick up one extra position.
        let h = (n + 1) as i64;
        let flip = |r: i32| -> i32 {
            if n % 2 == 1 {
                -r
            } else {
                1 - r
            }
        };
        let shift_off = |r: i32| -> i64 {
            if n % 2 == 1 {
                h / 2
            } else {
                (h - 1) / 2 + i64::from(r.rem_euclid(2))
            }
        };
        let shift = AffineVertexMap::new(
            rows.iter()
                .map(|&r| (r, (flip(r), shift_off(r))))
                .collect(),
        );
        let serre = AffineVertexMap::new(
            rows.iter()
                .map(|&r| (r, (flip(r), shift_off(r) - 1)))
                .collect(),
        );
        (rows, src_class, neighbors, serre, shift)
    }

    pub fn diagram(&self) -> Diagram {
        self.diagram
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn rows(&self) -> &[i32] {
        &self.rows
    }

    pub fn serre_rule(&self) -> &AffineVertexMap {
        &self.serre_rule
    }

    pub fn shift_rule(&self) -> &AffineVertexMap {
        &self.shift_rule
    }

    pub fn serre(&self, v: Vertex) -> Vertex {
        self.serre_rule.apply(v)
    }

    pub fn shift(&self, v: Vertex) -> Vertex {
        self.shift_rule.apply(v)
    }

    pub fn shift_n(&self, v: Vertex, n: i64) -> Vertex {
        let mut w = v;
        if n >= 0 {
            for _ in 0..n {
                w = self.shift_rule.apply(w);
            }
        } else {
            let inv = self.shift_rule.inverse();
            for _ in 0..(-n) {
                w = inv.apply(w);
            }
        }
        w
    }

    /// The AR translate: Serre composed with the inverse shift; always
    /// `(row, pos - 1)` in this layout.
    pub fn tau(&self, v: Vertex) -> Vertex {
        self.shift_rule.inverse().apply(self.serre(v))
    }

    /// Serre twisted by the inverse shift; the orbit functor of spherical
    /// sequence definitions.
    pub fn orbit_functor(&self, v: Vertex) -> Vertex {
        self.tau(v)
    }

    pub fn is_src_class(&self, row: i32) -> bool {
        self.src_class.contains(&row)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.rows.contains(&v.row) && self.window.contains(v.pos)
    }

    fn check_vertex(&self, v: Vertex) -> Result<(), MeshError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(MeshError::VertexOutsideModel {
                vertex: v,
                rows: self.rows.clone(),
                lo: self.window.lo,
                hi: self.window.hi,
            })
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        let w = self.window;
        self.rows
            .iter()
            .flat_map(move |&r| (w.lo..=w.hi).map(move |p| Vertex::new(r, p)))
    }

    /// Linearized depth coordinate: arrows raise it by exactly one.
    pub fn depth(&self, v: Vertex) -> i64 {
        2 * v.pos + if self.is_src_class(v.row) { 0 } else { 1 }
    }

    /// Direct predecessors inside the window.
    pub fn preds(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        for &nb in &self.neighbors[&v.row] {
            let p = if self.is_src_class(v.row) {
                Vertex::new(nb, v.pos - 1)
            } else {
                Vertex::new(nb, v.pos)
            };
            if self.contains(p) {
                out.push(p);
            }
        }
        out
    }

    /// Direct successors inside the window.
    pub fn succs(&self, v: Vertex) -> Vec<Vertex> {
        let mut out = Vec::new();
        for &nb in &self.neighbors[&v.row] {
            let s = if self.is_src_class(v.row) {
                Vertex::new(nb, v.pos)
            } else {
                Vertex::new(nb, v.pos + 1)
            };
            if self.contains(s) {
                out.push(s);
            }
        }
        out
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for v in self.vertices() {
            for s in self.succs(v) {
                out.push(Arrow { from: v, to: s });
            }
        }
        out
    }

    /// Meshes whose three layers are all materialized.
    pub fn meshes(&self) -> Vec<Mesh> {
        let mut out = Vec::new();
        for target in self.vertices() {
            let tau_target = Vertex::new(target.row, target.pos - 1);
            if !self.contains(tau_target) {
                continue;
            }
            let middles = self.preds(target);
            if middles.is_empty() || middles.len() != self.neighbors[&target.row].len() {
                continue;
            }
            out.push(Mesh {
                tau_target,
                middles,
                target,
            });
        }
        out
    }

    /// Window margin demanded by the hom computations: the number of rows of
    /// the diagram, on both sides of both arguments.
    pub fn margin(&self) -> i64 {
        self.rows.len() as i64
    }

    fn check_margin(&self, x: Vertex, y: Vertex) -> Result<(), MeshError> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        let m = self.margin();
        let lo = x.pos.min(y.pos);
        let hi = x.pos.max(y.pos);
        if lo - m < self.window.lo || hi + m > self.window.hi {
            return Err(MeshError::InsufficientWindow {
                x,
                y,
                lo: self.window.lo,
                hi: self.window.hi,
                margin: m,
            });
        }
        Ok(())
    }

    /// Hom dimension in the mesh category, by knitting.
    ///
    /// A counting function seeded at `x` is propagated forward mesh by mesh,
    /// subtracting the tau-term and clamping at zero when a hammock closes.
    pub fn hom_dim(&self, x: Vertex, y: Vertex) -> Result<u64, MeshError> {
        self.check_margin(x, y)?;
        Ok(self.hom_row(x).remove(&y).unwrap_or(0))
    }

    /// All hom dimensions out of `x` at once (same computation as `hom_dim`).
    pub fn hom_dims_from(&self, x: Vertex) -> Result<BTreeMap<Vertex, u64>, MeshError> {
        self.check_vertex(x)?;
        Ok(self.hom_row(x))
    }

    fn hom_row(&self, x: Vertex) -> BTreeMap<Vertex, u64> {
        let mut h: BTreeMap<Vertex, i64> = BTreeMap::new();
        h.insert(x, 1);
        let d0 = self.depth(x);
        let max_depth = 2 * self.window.hi + 1;
        for d in (d0 + 1)..=max_depth {
            for w in self.vertices_at_depth(d) {
                let incoming: i64 = self
                    .preds(w)
                    .iter()
                    .map(|p| h.get(p).copied().unwrap_or(0))
                    .sum();
                let tau = Vertex::new(w.row, w.pos - 1);
                let t = h.get(&tau).copied().unwrap_or(0);
                let v = (incoming - t).max(0);
                if v > 0 {
                    h.insert(w, v);
                }
            }
        }
        h.into_iter()
            .filter(|&(_, v)| v > 0)
            .map(|(k, v)| (k, v as u64))
            .collect()
    }

    fn vertices_at_depth(&self, d: i64) -> Vec<Vertex> {
        let src = d.rem_euclid(2) == 0;
        let pos = d.div_euclid(2);
        if !self.window.contains(pos) {
            return Vec::new();
        }
        self.rows
            .iter()
            .copied()
            .filter(|&r| self.is_src_class(r) == src)
            .map(|r| Vertex::new(r, pos))
            .collect()
    }

    /// Hom dimension by exact linear algebra on path spaces.
    ///
    /// For each vertex `v` reached from `x` we carry a basis of the space of
    /// paths `x -> v` modulo the two-sided span of the mesh relations, plus
    /// the matrices of composition with each arrow. At every mesh the
    /// relation map is quotiented out by row reduction, so no hammock shape
    /// is assumed anywhere.
    pub fn hom_dim_oracle(&self, x: Vertex, y: Vertex) -> Result<u64, MeshError> {
        self.check_margin(x, y)?;
        Ok(self.oracle_row(x).remove(&y).unwrap_or(0))
    }

    /// All oracle hom dimensions out of `x` at once.
    pub fn hom_dims_from_oracle(&self, x: Vertex) -> Result<BTreeMap<Vertex, u64>, MeshError> {
        self.check_vertex(x)?;
        Ok(self.oracle_row(x))
    }

    fn oracle_row(&self, x: Vertex) -> BTreeMap<Vertex, u64> {
        // Per-vertex quotient dimension and, per arrow (u -> v), the matrix
        // of "append this arrow" from the quotient at u to the quotient at v.
        let mut dim: BTreeMap<Vertex, usize> = BTreeMap::new();
        let mut arrow_mat: BTreeMap<(Vertex, Vertex), QMat> = BTreeMap::new();
        dim.insert(x, 1);
        let d0 = self.depth(x);
        let max_depth = 2 * self.window.hi + 1;
        for d in (d0 + 1)..=max_depth {
            for w in self.vertices_at_depth(d) {
                let preds: Vec<Vertex> = self
                    .preds(w)
                    .into_iter()
                    .filter(|p| dim.get(p).copied().unwrap_or(0) > 0)
                    .collect();
                let ambient: usize = preds.iter().map(|p| dim[p]).sum();
                if ambient == 0 {
                    continue;
                }
                let tau = Vertex::new(w.row, w.pos - 1);
                let tau_dim = dim.get(&tau).copied().unwrap_or(0);
                // Relation map H(tau w) -> (+) H(u): the mesh relation ending
                // at w, with all-ones coefficients.
                let rel = if tau_dim > 0 {
                    let mut m = QMat::zero(ambient, tau_dim);
                    let mut off = 0;
                    for p in &preds {
                        if let Some(a) = arrow_mat.get(&(tau, *p)) {
                            for r in 0..a.rows {
                                for c in 0..a.cols {
                                    m.set(off + r, c, a.at(r, c).clone());
                                }
                            }
                        }
                        off += dim[p];
                    }
                    m
                } else {
                    QMat::zero(ambient, 0)
                };
                let (proj, qdim) = quotient_by_columns(ambient, &rel);
                if qdim > 0 {
                    dim.insert(w, qdim);
                }
                // Composition matrices: include block of u, then project.
                let mut off = 0;
                for p in &preds {
                    let dp = dim[p];
                    let mut incl = QMat::zero(ambient, dp);
                    for c in 0..dp {
                        incl.set(off + c, c, q_from(1));
                    }
                    off += dp;
                    if qdim > 0 {
                        arrow_mat.insert((*p, w), proj.mul(&incl));
                    }
                }
            }
        }
        dim.into_iter()
            .filter(|&(_, v)| v > 0)
            .map(|(k, v)| (k, v as u64))
            .collect()
    }

    /// The largest position offset the Serre rule applies; hom supports out
    /// of `x` live within `[x.pos, x.pos + serre_span()]`.
    pub fn serre_span(&self) -> i64 {
        self.serre_rule.max_offset()
    }

    /// Total hom dimension from the members of `f` into all shifts of the
    /// formal sum `g` of vertices.
    pub fn u_stat(
        &self,
        f: &SphericalSequenceSpec,
        g: &[Vertex],
    ) -> Result<u64, MeshError> {
        let mut total = 0u64;
        for &member in &f.members {
            for &target in g {
                for (_, shifted) in self.shifted_targets_in_band(member, target) {
                    total += self.hom_dim(member, shifted)?;
                }
            }
        }
        Ok(total)
    }

    /// All pairs `(l, shift^l(target))` whose position lies in the hom
    /// support band `[source.pos, source.pos + serre_span()]`.
    pub fn shifted_targets_in_band(&self, source: Vertex, target: Vertex) -> Vec<(i64, Vertex)> {
        let lo = source.pos;
        let hi = source.pos + self.serre_span();
        let mut out = Vec::new();
        let inv = self.shift_rule.inverse();
        let span = 2 * (self.window.len() + self.serre_span().abs() + 4);
        // Walk down from target until we fall below the band, then collect;
        // then walk up from target.
        let mut v = target;
        let mut l = 0i64;
        while v.pos > hi && l.abs() < span {
            v = inv.apply(v);
            l -= 1;
        }
        while v.pos >= lo && l.abs() < span {
            if v.pos <= hi {
                out.push((l, v));
            }
            v = inv.apply(v);
            l -= 1;
        }
        let mut v = self.shift_rule.apply(target);
        let mut l = 1i64;
        while v.pos <= hi && l < span {
            if v.pos >= lo {
                out.push((l, v));
            }
            v = self.shift_rule.apply(v);
            l += 1;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Alternating-sum Euler pairing `sum_l (-1)^l dim Hom(z, w[l])`.
    pub fn euler_pairing(&self, z: Vertex, w: Vertex) -> Result<i64, MeshError> {
        let mut total = 0i64;
        for (l, shifted) in self.shifted_targets_in_band(z, w) {
            let d = self.hom_dim(z, shifted)? as i64;
            total += if l.rem_euclid(2) == 0 { d } else { -d };
        }
        Ok(total)
    }

    /// Validates a spherical sequence against the model; violations are
    /// report entries, never errors.
    pub fn check_spherical(&self, spec: &SphericalSequenceSpec) -> SphericalReport {
        let mut violations = Vec::new();
        let k = spec.length();
        let m = spec.sphericity();
        if k == 0 {
            violations.push(SphericalViolation::EmptySequence);
            return SphericalReport {
                length: 0,
                sphericity: m,
                violations,
            };
        }
        for (i, &v) in spec.members.iter().enumerate() {
            if !self.contains(v) {
                violations.push(SphericalViolation::MemberOutsideModel { index: i, member: v });
            }
        }
        // Degrees larger than the window cannot satisfy the orbit condition
        // and would make the shift walks pointless.
        let degree_bound = self.window.len() + 4;
        for (i, &d) in spec.degrees.iter().enumerate() {
            if d.abs() > degree_bound {
                violations.push(SphericalViolation::DegreeOutOfRange { index: i, degree: d });
            }
        }
        if !violations.is_empty() {
            return SphericalReport {
                length: k,
                sphericity: m,
                violations,
            };
        }
        // Orbit condition: O(E_i) = E_{i+1}[m_i - 1].
        for i in 0..k {
            let lhs = self.orbit_functor(spec.members[i]);
            let rhs = self.shift_n(spec.members[(i + 1) % k], spec.degrees[i] - 1);
            if lhs != rhs {
                violations.push(SphericalViolation::OrbitCondition {
                    index: i,
                    expected: rhs,
                    actual: lhs,
                });
            }
        }
        // k = 2, m = 0 requires the two members to be distinct objects.
        if k == 2 && m == 0 && spec.members[0] == spec.members[1] {
            violations.push(SphericalViolation::DuplicateMembers);
        }
        // Hom pattern: Hom(E_i[l], E_j) is one-dimensional for (j=i, l=0) and
        // (j=i+1, l=-m_i), zero otherwise.
        for i in 0..k {
            for j in 0..k {
                let expected_at = |l: i64| -> u64 {
                    let mut e = 0;
                    if j == i && l == 0 {
                        e += 1;
                    }
                    if j == (i + 1) % k && l == -spec.degrees[i] {
                        e += 1;
                    }
                    e
                };
                let mut ls: Vec<i64> = self
                    .shift_l_candidates(spec.members[i], spec.members[j])
                    .into_iter()
                    .collect();
                ls.push(0);
                ls.push(-spec.degrees[i]);
                ls.sort();
                ls.dedup();
                for l in ls {
                    let shifted = self.shift_n(spec.members[i], l);
                    let actual = match self.hom_dim(shifted, spec.members[j]) {
                        Ok(d) => d,
                        Err(_) => {
                            violations.push(SphericalViolation::WindowTooSmall {
                                i,
                                j,
                                l,
                            });
                            continue;
                        }
                    };
                    let expected = expected_at(l);
                    if actual != expected {
                        violations.push(SphericalViolation::HomPattern {
                            i,
                            j,
                            l,
                            expected,
                            actual,
                        });
                    }
                }
            }
        }
        SphericalReport {
            length: k,
            sphericity: m,
            violations,
        }
    }

    /// Shift exponents l with `shift^l(source)` inside the hom support band
    /// of the target position (sources whose shifted copies could map to the
    /// target nontrivially).
    fn shift_l_candidates(&self, source: Vertex, target: Vertex) -> Vec<i64> {
        let band_lo = target.pos - self.serre_span();
        let band_hi = target.pos;
        let mut out = Vec::new();
        let span = 2 * self.window.len() + 8;
        let mut v = source;
        let mut l = 0i64;
        while v.pos > band_hi && l < span {
            v = self.shift_rule.inverse().apply(v);
            l -= 1;
        }
        while v.pos >= band_lo && l.abs() < 2 * span {
            if v.pos <= band_hi {
                out.push(l);
            }
            v = self.shift_rule.inverse().apply(v);
            l -= 1;
        }
        let mut v = self.shift_rule.apply(source);
        let mut l = 1i64;
        while v.pos <= band_hi && l < span {
            if v.pos >= band_lo {
                out.push(l);
            }
            v = self.shift_rule.apply(v);
            l += 1;
        }
        out
    }

    /// Dimension statistics of a validated pair of spherical sequences.
    pub fn pair_stats(
        &self,
        e: &SphericalSequenceSpec,
        ep: &SphericalSequenceSpec,
    ) -> Result<DimensionStatistics, MeshError> {
        let per_member_e = e
            .members
            .iter()
            .map(|&f| {
                self.u_stat(
                    &SphericalSequenceSpec::new(vec![0], vec![f]),
                    &ep.members,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        let per_member_ep = ep
            .members
            .iter()
            .map(|&f| {
                self.u_stat(
                    &SphericalSequenceSpec::new(vec![0], vec![f]),
                    &e.members,
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        let total = self.u_stat(e, &ep.members)?;
        Ok(DimensionStatistics {
            a_e_ep: per_member_e.first().copied().unwrap_or(0),
            a_ep_e: per_member_ep.first().copied().unwrap_or(0),
            per_member_e,
            per_member_ep,
            total,
        })
    }
}

/// The data `(k, m, degrees m_i, members)` of a spherical sequence.
///
/// `M` is the member type: mesh vertices here, algebra vertices when the
/// sequence lives over projectives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalSequenceSpec<M = Vertex> {
    pub degrees: Vec<i64>,
    pub members: Vec<M>,
}

impl<M> SphericalSequenceSpec<M> {
    pub fn new(degrees: Vec<i64>, members: Vec<M>) -> Self {
        assert_eq!(
            degrees.len(),
            members.len(),
            "one degree per member is required"
        );
        SphericalSequenceSpec { degrees, members }
    }

    pub fn length(&self) -> usize {
        self.members.len()
    }

    pub fn sphericity(&self) -> i64 {
        self.degrees.iter().sum()
    }
}

/// Pairwise dimension statistics: `a_{E,E'}` per member plus the totals.
/// `k * a_{E,E'} = k' * a_{E',E}` must hold for every validated pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionStatistics {
    pub a_e_ep: u64,
    pub a_ep_e: u64,
    pub per_member_e: Vec<u64>,
    pub per_member_ep: Vec<u64>,
    pub total: u64,
}

impl DimensionStatistics {
    /// The per-member values must not depend on the member, and the totals
    /// must balance.
    pub fn is_consistent(&self) -> bool {
        let k = self.per_member_e.len() as u64;
        let kp = self.per_member_ep.len() as u64;
        self.per_member_e.iter().all(|&a| a == self.a_e_ep)
            && self.per_member_ep.iter().all(|&a| a == self.a_ep_e)
            && k * self.a_e_ep == kp * self.a_ep_e
            && self.total == k * self.a_e_ep
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SphericalViolation {
    EmptySequence,
    MemberOutsideModel { index: usize, member: Vertex },
    DegreeOutOfRange { index: usize, degree: i64 },
    OrbitCondition { index: usize, expected: Vertex, actual: Vertex },
    DuplicateMembers,
    HomPattern { i: usize, j: usize, l: i64, expected: u64, actual: u64 },
    WindowTooSmall { i: usize, j: usize, l: i64 },
}

impl fmt::Display for SphericalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphericalViolation::EmptySequence => write!(f, "sequence has no members"),
            SphericalViolation::MemberOutsideModel { index, member } => {
                write!(f, "member {index} = {member} is outside the model")
            }
            SphericalViolation::DegreeOutOfRange { index, degree } => {
                write!(f, "degree m_{index} = {degree} exceeds the window span")
            }
            SphericalViolation::OrbitCondition { index, expected, actual } => write!(
                f,
                "orbit condition fails at i={index}: O(E_{index}) = {actual}, expected {expected}"
            ),
            SphericalViolation::DuplicateMembers => {
                write!(f, "k=2, m=0 requires distinct members")
            }
            SphericalViolation::HomPattern { i, j, l, expected, actual } => write!(
                f,
                "hom pattern fails: dim Hom(E_{i}[{l}], E_{j}) = {actual}, expected {expected}"
            ),
            SphericalViolation::WindowTooSmall { i, j, l } => write!(
                f,
                "window too small to check Hom(E_{i}[{l}], E_{j})"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalReport {
    pub length: usize,
    pub sphericity: i64,
    pub violations: Vec<SphericalViolation>,
}

impl SphericalReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SphericalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(
                f,
                "valid spherical sequence: length {}, sphericity {}",
                self.length, self.sphericity
            )
        } else {
            writeln!(
                f,
                "invalid spherical sequence (length {}, sphericity {}):",
                self.length, self.sphericity
            )?;
            for v in &self.violations {
                writeln!(f, "  - {v}")?;
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4(lo: i64, hi: i64) -> MeshModel {
        build_mesh(Diagram::D4, Window::new(lo, hi)).unwrap()
    }

    fn a3(lo: i64, hi: i64) -> MeshModel {
        build_mesh(Diagram::A(3), Window::new(lo, hi)).unwrap()
    }

    fn v(row: i32, pos: i64) -> Vertex {
        Vertex::new(row, pos)
    }

    #[test]
    fn d4_window_counts() {
        let m = d4(-3, 3);
        assert_eq!(m.vertices().count(), 28);
        // Per position: 3 hub->spoke arrows, plus 3 spoke->hub when the next
        // position is materialized.
        assert_eq!(m.arrows().len(), 7 * 3 + 6 * 3);
        assert!(m.arrows().contains(&Arrow { from: v(0, 0), to: v(2, 0) }));
        assert!(m.arrows().contains(&Arrow { from: v(2, 0), to: v(0, 1) }));
    }

    #[test]
    fn a3_degenerate_window() {
        let m = a3(0, 0);
        assert_eq!(m.vertices().count(), 3);
        assert_eq!(m.meshes().len(), 0);
    }

    #[test]
    fn d4_serre_inside_window() {
        let m = d4(0, 2);
        assert_eq!(m.serre(v(1, 0)), v(1, 2));
    }

    #[test]
    fn d4_and_a3_serre_shift_values() {
        let m = d4(-5, 5);
        assert_eq!(m.serre(v(2, 1)), v(2, 3));
        assert_eq!(m.shift(v(2, 1)), v(2, 4));
        let m = a3(-5, 5);
        assert_eq!(m.serre(v(1, 0)), v(-1, 1));
        assert_eq!(m.shift(v(1, 0)), v(-1, 2));
        assert_eq!(m.shift(v(0, 3)), v(0, 5));
    }

    #[test]
    fn serre_and_shift_commute() {
        for model in [d4(-6, 6), a3(-6, 6), build_mesh(Diagram::A(4), Window::new(-6, 6)).unwrap()]
        {
            for vx in model.vertices() {
                assert_eq!(
                    model.serre(model.shift(vx)),
                    model.shift(model.serre(vx)),
                    "serre/shift must commute at {vx}"
                );
            }
        }
    }

    #[test]
    fn unsupported_diagram() {
        assert!(matches!(
            build_mesh(Diagram::A(0), Window::new(0, 1)),
            Err(MeshError::UnsupportedDiagram(_))
        ));
        assert!("a0".parse::<Diagram>().is_err());
        assert_eq!("d4".parse::<Diagram>().unwrap(), Diagram::D4);
        assert_eq!("a3".parse::<Diagram>().unwrap(), Diagram::A(3));
    }

    #[test]
    fn hom_dim_d4_examples() {
        let m = d4(-8, 8);
        assert_eq!(m.hom_dim(v(1, 0), v(1, 0)).unwrap(), 1);
        assert_eq!(m.hom_dim(v(1, 0), v(2, 1)).unwrap(), 1);
        assert_eq!(m.hom_dim(v(1, 0), v(1, 3)).unwrap(), 0);
        // Full hammock of a spoke vertex.
        let row = m.hom_dims_from(v(1, 0)).unwrap();
        let expected: BTreeMap<Vertex, u64> = [
            (v(1, 0), 1),
            (v(0, 1), 1),
            (v(2, 1), 1),
            (v(3, 1), 1),
            (v(0, 2), 1),
            (v(1, 2), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(row, expected);
        // The maximal supported vertex is the Serre image.
        assert_eq!(m.serre(v(1, 0)), v(1, 2));
    }

    #[test]
    fn hom_dim_a3_examples() {
        let m = a3(-8, 8);
        assert_eq!(m.hom_dim(v(1, -1), v(0, 0)).unwrap(), 1);
        assert_eq!(m.hom_dim(v(1, -1), v(1, 0)).unwrap(), 0);
        assert_eq!(m.hom_dim(v(1, -1), v(-1, 0)).unwrap(), 1);
        assert_eq!(m.hom_dim(v(0, 0), v(0, 1)).unwrap(), 1);
        assert_eq!(m.hom_dim(v(0, 0), v(0, 2)).unwrap(), 0);
    }

    #[test]
    fn insufficient_window_reported() {
        let m = d4(0, 3);
        assert!(matches!(
            m.hom_dim(v(1, 0), v(1, 1)),
            Err(MeshError::InsufficientWindow { .. })
        ));
    }

    #[test]
    fn oracle_matches_knitting_small() {
        for model in [d4(-6, 6), a3(-6, 6)] {
            let margin = model.margin();
            for x in model.vertices() {
                if x.pos - margin < model.window().lo || x.pos + margin > model.window().hi {
                    continue;
                }
                let knit = model.hom_dims_from(x).unwrap();
                let oracle = model.hom_dims_from_oracle(x).unwrap();
                assert_eq!(knit, oracle, "disagreement from source {x}");
            }
        }
    }

    #[test]
    fn oracle_matches_knitting_other_a_diagrams() {
        // Covers the even-n layouts, where the shift carries a half-step.
        for n in [1u32, 2, 4, 5, 6] {
            let model = build_mesh(Diagram::A(n), Window::new(-8, 8)).unwrap();
            for x in model.vertices().filter(|x| x.pos.abs() <= 2) {
                let knit = model.hom_dims_from(x).unwrap();
                let oracle = model.hom_dims_from_oracle(x).unwrap();
                assert_eq!(knit, oracle, "A{n}: disagreement from source {x}");
            }
        }
    }

    #[test]
    fn serre_duality_other_a_diagrams() {
        for n in [2u32, 4, 5, 6] {
            let model = build_mesh(Diagram::A(n), Window::new(-14, 14)).unwrap();
            for x in model.vertices().filter(|x| x.pos.abs() <= 2) {
                for y in model.vertices().filter(|y| y.pos.abs() <= 2) {
                    assert_eq!(
                        model.hom_dim(x, y).unwrap(),
                        model.hom_dim(y, model.serre(x)).unwrap(),
                        "A{n}: Serre duality fails for {x}, {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn hom_invariant_under_shift() {
        for model in [d4(-9, 9), a3(-9, 9)] {
            for x in model.vertices().filter(|x| x.pos.abs() <= 2) {
                for y in model.vertices().filter(|y| y.pos.abs() <= 2) {
                    assert_eq!(
                        model.hom_dim(x, y).unwrap(),
                        model
                            .hom_dim(model.shift(x), model.shift(y))
                            .unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn u_stat_requires_margin() {
        let m = d4(-4, 4);
        let edge_spec =
            SphericalSequenceSpec::new(vec![1, 1, 0], vec![v(1, 3), v(1, 2), v(1, 1)]);
        assert!(matches!(
            m.u_stat(&edge_spec, &[v(2, 3)]),
            Err(MeshError::InsufficientWindow { .. })
        ));
    }

    #[test]
    fn no_spherical_objects_in_small_a_diagrams() {
        // Single vertices of ZA_1 and ZA_2 fail the spherical hom pattern:
        // their endomorphism spaces are one-dimensional in every total
        // degree, never two-dimensional.
        for (n, vertex) in [(1u32, v(0, 0)), (2, v(0, 0))] {
            let model = build_mesh(Diagram::A(n), Window::new(-8, 8)).unwrap();
            for m0 in -1..=1 {
                let spec = SphericalSequenceSpec::new(vec![m0], vec![vertex]);
                assert!(
                    !model.check_spherical(&spec).is_valid(),
                    "A{n} vertex must not validate as an m={m0} spherical object"
                );
            }
        }
    }

    #[test]
    fn degrees_beyond_window_are_rejected() {
        let m = d4(-6, 6);
        let spec = SphericalSequenceSpec::new(
            vec![1_000_000, 1, 0],
            vec![v(1, 0), v(1, -1), v(1, -2)],
        );
        let report = m.check_spherical(&spec);
        assert!(report
            .violations
            .iter()
            .any(|w| matches!(w, SphericalViolation::DegreeOutOfRange { index: 0, .. })));
    }

    #[test]
    fn oracle_single_arrow_a3() {
        let m = a3(-6, 6);
        assert_eq!(m.hom_dim_oracle(v(1, -1), v(0, 0)).unwrap(), 1);
        assert_eq!(m.hom_dim_oracle(v(1, 0), v(1, 0)).unwrap(), 1);
        assert_eq!(m.hom_dim_oracle(v(0, 0), v(0, 1)).unwrap(), 1);
    }

    /// Third route on short spans: literally enumerate paths and relation
    /// products, then row-reduce.
    fn hom_dim_paths(model: &MeshModel, x: Vertex, y: Vertex) -> u64 {
        use crate::ratmat::rank;
        fn paths(model: &MeshModel, from: Vertex, to: Vertex) -> Vec<Vec<Vertex>> {
            if from == to {
                return vec![vec![from]];
            }
            let mut out = Vec::new();
            for s in model.succs(from) {
                if model.depth(s) > model.depth(to) {
                    continue;
                }
                for mut tail in paths(model, s, to) {
                    let mut p = vec![from];
                    p.append(&mut tail);
                    out.push(p);
                }
            }
            out
        }
        let all = paths(model, x, y);
        if all.is_empty() {
            return 0;
        }
        let index: BTreeMap<Vec<Vertex>, usize> =
            all.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        // Relation instances: prefix + mesh + suffix.
        let mut rel_rows: Vec<Vec<(usize, i64)>> = Vec::new();
        for mesh in model.meshes() {
            if model.depth(mesh.tau_target) < model.depth(x)
                || model.depth(mesh.target) > model.depth(y)
            {
                continue;
            }
            for pre in paths(model, x, mesh.tau_target) {
                for post in paths(model, mesh.target, y) {
                    let mut row = Vec::new();
                    for mid in &mesh.middles {
                        let mut p = pre.clone();
                        p.push(*mid);
                        p.extend_from_slice(&post);
                        row.push((index[&p], 1i64));
                    }
                    rel_rows.push(row);
                }
            }
        }
        let mut m = QMat::zero(rel_rows.len().max(1), all.len());
        for (r, row) in rel_rows.iter().enumerate() {
            for &(c, coeff) in row {
                let cur = m.at(r, c).clone();
                m.set(r, c, cur + q_from(coeff));
            }
        }
        (all.len() - rank(&m)) as u64
    }

    #[test]
    fn path_enumeration_agrees_on_short_spans() {
        for model in [d4(-6, 6), a3(-6, 6)] {
            for x in model.vertices() {
                if x.pos < -2 || x.pos > 0 {
                    continue;
                }
                for y in model.vertices() {
                    if y.pos < x.pos || y.pos > x.pos + 3 {
                        continue;
                    }
                    if model.hom_dim(x, y).is_err() {
                        continue;
                    }
                    assert_eq!(
                        model.hom_dim(x, y).unwrap(),
                        hom_dim_paths(&model, x, y),
                        "path enumeration disagrees for {x} -> {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn serre_duality_on_hom_dims() {
        for model in [d4(-9, 9), a3(-9, 9)] {
            for x in model.vertices() {
                if x.pos.abs() > 2 {
                    continue;
                }
                for y in model.vertices() {
                    if y.pos.abs() > 2 {
                        continue;
                    }
                    let lhs = model.hom_dim(x, y).unwrap();
                    let rhs = model.hom_dim(y, model.serre(x)).unwrap();
                    assert_eq!(lhs, rhs, "Serre duality fails for {x}, {y}");
                }
            }
        }
    }

    #[test]
    fn hom_invariant_under_serre() {
        let model = d4(-9, 9);
        for x in model.vertices().filter(|x| x.pos.abs() <= 2) {
            for y in model.vertices().filter(|y| y.pos.abs() <= 2) {
                assert_eq!(
                    model.hom_dim(x, y).unwrap(),
                    model.hom_dim(model.serre(x), model.serre(y)).unwrap()
                );
            }
        }
    }

    fn d4_e() -> SphericalSequenceSpec {
        SphericalSequenceSpec::new(vec![1, 1, 0], vec![v(1, 0), v(1, -1), v(1, -2)])
    }

    fn d4_ep() -> SphericalSequenceSpec {
        SphericalSequenceSpec::new(vec![1, 1, 0], vec![v(2, 1), v(2, 0), v(2, -1)])
    }

    #[test]
    fn u_stat_examples() {
        let m = d4(-9, 9);
        let e = d4_e();
        let ep = d4_ep();
        assert_eq!(m.u_stat(&e, &ep.members).unwrap(), 3);
        assert_eq!(m.u_stat(&e, &e.members).unwrap(), 6);
        assert_eq!(m.u_stat(&e, &[]).unwrap(), 0);
    }

    #[test]
    fn pair_stats_length_weighted_balance() {
        let m = d4(-9, 9);
        let stats = m.pair_stats(&d4_e(), &d4_ep()).unwrap();
        assert_eq!(stats.a_e_ep, 1);
        assert_eq!(stats.a_ep_e, 1);
        assert_eq!(stats.total, 3);
        assert!(stats.is_consistent());
    }

    #[test]
    fn check_spherical_d4() {
        let m = d4(-9, 9);
        let report = m.check_spherical(&d4_e());
        assert!(report.is_valid(), "{report}");
        assert_eq!(report.sphericity, 2);
        assert_eq!(report.length, 3);
        let report = m.check_spherical(&d4_ep());
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn check_spherical_a3() {
        let m = a3(-9, 9);
        let e = SphericalSequenceSpec::new(vec![1, 0], vec![v(0, 0), v(0, -1)]);
        let report = m.check_spherical(&e);
        assert!(report.is_valid(), "{report}");
        assert_eq!(report.sphericity, 1);
        let ep = SphericalSequenceSpec::new(
            vec![1, 0, 1, 0],
            vec![v(1, 0), v(1, -1), v(-1, 0), v(-1, -1)],
        );
        let report = m.check_spherical(&ep);
        assert!(report.is_valid(), "{report}");
        assert_eq!(report.sphericity, 2);
        assert_eq!(report.length, 4);
    }

    #[test]
    fn check_spherical_rejects_bad_degrees() {
        let m = d4(-9, 9);
        let bad = SphericalSequenceSpec::new(vec![1, 1, 1], vec![v(1, 0), v(1, -1), v(1, -2)]);
        let report = m.check_spherical(&bad);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|w| matches!(w, SphericalViolation::OrbitCondition { index: 2, .. })));
    }

    #[test]
    fn vertex_parse_roundtrip() {
        let x: Vertex = "(1,-4)".parse().unwrap();
        assert_eq!(x, v(1, -4));
        assert_eq!(x.to_string(), "(1,-4)");
        assert!("(1;2)".parse::<Vertex>().is_err());
        assert!("1,2".parse::<Vertex>().is_err());
    }

    #[test]
    fn a2_and_a1_layouts_are_consistent() {
        let m = build_mesh(Diagram::A(2), Window::new(-6, 6)).unwrap();
        assert_eq!(m.rows(), &[0, 1]);
        // [1] and Serre on A2: shift(0,s)=(1,s+1), shift(1,s)=(0,s+2).
        assert_eq!(m.shift(v(0, 0)), v(1, 1));
        assert_eq!(m.shift(v(1, 0)), v(0, 2));
        assert_eq!(m.serre(v(0, 0)), v(1, 0));
        assert_eq!(m.hom_dim(v(0, 0), v(1, 0)).unwrap(), 1);
        assert_eq!(m.hom_dim(v(0, 0), v(0, 1)).unwrap(), 0);
        // Serre duality pins the rules.
        for x in m.vertices().filter(|x| x.pos.abs() <= 2) {
            for y in m.vertices().filter(|y| y.pos.abs() <= 2) {
                assert_eq!(
                    m.hom_dim(x, y).unwrap(),
                    m.hom_dim(y, m.serre(x)).unwrap()
                );
            }
        }
        let m1 = build_mesh(Diagram::A(1), Window::new(-4, 4)).unwrap();
        assert_eq!(m1.hom_dim(v(0, 0), v(0, 0)).unwrap(), 1);
        assert_eq!(m1.hom_dim(v(0, 0), v(0, 1)).unwrap(), 0);
        assert_eq!(m1.serre(v(0, 2)), v(0, 2));
    }
}
