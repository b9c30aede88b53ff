//! Verification of periodic colorings of the three regular plane tilings
//! and of procedural colorings of infinite trees, on finite windows.
//!
//! A pattern repeats along two independent period vectors, so checking
//! properness and the neighborhood-sum condition at every cell of one
//! fundamental domain certifies the whole infinite graph. Tree procedures
//! are deterministic by depth; verifying all interior vertices of a
//! materialized window certifies self-similar procedures the same way.
//!
//! Coordinate conventions (fixed here once and for all):
//! - square tiling: vertices `(x, y) ∈ Z²`, neighbors `±(1,0)`, `±(0,1)`;
//! - triangular tiling: vertices `Z²`, neighbors `±(1,0)`, `±(0,1)`,
//!   `±(1,-1)`;
//! - hexagonal tiling: two vertices per cell; basis 0 of cell `(x, y)` is
//!   adjacent to basis 1 of cells `(x, y)`, `(x-1, y)`, `(x, y-1)`.
//!
//! Period vectors must be given in upper-triangular form `(a, 0)`, `(c, b)`
//! with `a, b ≥ 1`. Every finite-index sublattice of `Z²` has such a basis,
//! and it makes the label table an unambiguous `b × a` grid of rows.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::constraint::{BadSum, ConstraintSpec, SumTarget, ViolationReport};
use crate::graph::NeighborhoodKind;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PatternError {
    #[error("period vectors are degenerate (zero area)")]
    DegeneratePeriods,
    #[error("period vectors must be upper-triangular: (a, 0) and (c, b) with a, b >= 1")]
    NonTriangularPeriods,
    #[error("label table must have {expected_rows} rows of {expected_cols} labels, found {found}")]
    TableShape {
        expected_rows: usize,
        expected_cols: usize,
        found: String,
    },
    #[error("row pattern must contain at least one label")]
    EmptyRowPattern,
    #[error("window depth {depth} is too small; need at least 3")]
    DepthTooSmall { depth: usize },
    #[error("arity {arity} is invalid for {kind} trees")]
    BadArity { arity: usize, kind: &'static str },
    #[error("pattern file line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    Triangular,
    Square,
    Hexagonal,
}

impl LatticeKind {
    fn basis_count(self) -> usize {
        match self {
            LatticeKind::Hexagonal => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Triangular => "tri",
            LatticeKind::Square => "square",
            LatticeKind::Hexagonal => "hex",
        }
    }
}

/// A vertex of an infinite tiling, identified by cell and basis index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeSite {
    pub x: i64,
    pub y: i64,
    pub basis: u8,
}

impl PartialOrd for LatticeSite {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LatticeSite {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.y, self.x, self.basis).cmp(&(other.y, other.x, other.basis))
    }
}

impl fmt::Display for LatticeSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis == 0 {
            write!(f, "({}, {})", self.x, self.y)
        } else {
            write!(f, "({}, {})#{}", self.x, self.y, self.basis)
        }
    }
}

/// Fundamental-domain label data for a periodic coloring of a tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePattern {
    kind: LatticeKind,
    /// First period vector (width, 0).
    width: i64,
    /// Second period vector (skew, height).
    skew: i64,
    height: i64,
    /// `labels[y][x * basis_count + basis]` for the domain cell `(x, y)`.
    labels: Vec<Vec<i64>>,
}

impl LatticePattern {
    /// Builds a pattern from period vectors and the row-major label table.
    /// For hexagonal patterns each row interleaves the two basis labels, so
    /// rows carry `2·width` entries.
    pub fn new(
        kind: LatticeKind,
        period_a: (i64, i64),
        period_b: (i64, i64),
        labels: Vec<Vec<i64>>,
    ) -> Result<LatticePattern, PatternError> {
        let (width, a_y) = period_a;
        let (skew, height) = period_b;
        if width * height - a_y * skew == 0 {
            return Err(PatternError::DegeneratePeriods);
        }
        if a_y != 0 || width < 1 || height < 1 {
            return Err(PatternError::NonTriangularPeriods);
        }
        let expected_cols = width as usize * kind.basis_count();
        let shape_ok =
            labels.len() == height as usize && labels.iter().all(|row| row.len() == expected_cols);
        if !shape_ok {
            let found = format!(
                "{} rows of lengths {:?}",
                labels.len(),
                labels.iter().map(Vec::len).collect::<Vec<_>>()
            );
            return Err(PatternError::TableShape {
                expected_rows: height as usize,
                expected_cols,
                found,
            });
        }
        Ok(LatticePattern {
            kind,
            width,
            skew,
            height,
            labels,
        })
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn periods(&self) -> ((i64, i64), (i64, i64)) {
        ((self.width, 0), (self.skew, self.height))
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.labels
    }

    /// Canonical representative of `(x, y)` in the fundamental domain.
    fn reduce(&self, x: i64, y: i64) -> (i64, i64) {
        let t = y.div_euclid(self.height);
        let y0 = y - t * self.height;
        let x0 = (x - t * self.skew).rem_euclid(self.width);
        (x0, y0)
    }

    fn canonical(&self, site: LatticeSite) -> LatticeSite {
        let (x, y) = self.reduce(site.x, site.y);
        LatticeSite {
            x,
            y,
            basis: site.basis,
        }
    }

    pub fn label(&self, site: LatticeSite) -> i64 {
        let (x, y) = self.reduce(site.x, site.y);
        self.labels[y as usize][x as usize * self.kind.basis_count() + site.basis as usize]
    }

    /// Same coloring presented on the doubled fundamental domain.
    pub fn doubled(&self) -> LatticePattern {
        let basis = self.kind.basis_count();
        let labels = (0..2 * self.height)
            .map(|y| {
                (0..2 * self.width)
                    .flat_map(|x| {
                        (0..basis).map(move |b| {
                            self.label(LatticeSite {
                                x,
                                y,
                                basis: b as u8,
                            })
                        })
                    })
                    .collect()
            })
            .collect();
        LatticePattern::new(
            self.kind,
            (2 * self.width, 0),
            (2 * self.skew, 2 * self.height),
            labels,
        )
        .expect("doubling preserves validity")
    }

    /// Two-coloring of the square tiling by parity of `x + y`.
    pub fn checkerboard(alpha: i64, beta: i64) -> LatticePattern {
        LatticePattern::new(
            LatticeKind::Square,
            (2, 0),
            (0, 2),
            vec![vec![alpha, beta], vec![beta, alpha]],
        )
        .expect("static shape")
    }

    /// Three-coloring of the triangular tiling by `(x - y) mod 3`.
    pub fn triangular_three_coloring(labels: [i64; 3]) -> LatticePattern {
        let row = |shift: usize| {
            (0..3)
                .map(|x| labels[(x + 3 - shift) % 3])
                .collect::<Vec<_>>()
        };
        LatticePattern::new(
            LatticeKind::Triangular,
            (3, 0),
            (0, 3),
            vec![row(0), row(1), row(2)],
        )
        .expect("static shape")
    }

    /// Two-coloring of the hexagonal tiling by basis vertex.
    pub fn hexagonal_two_coloring(alpha: i64, beta: i64) -> LatticePattern {
        LatticePattern::new(
            LatticeKind::Hexagonal,
            (1, 0),
            (0, 1),
            vec![vec![alpha, beta]],
        )
        .expect("static shape")
    }

    /// Four-label square-tiling coloring whose open sums are all `k mod n`:
    /// even columns alternate `0, n` by row parity; odd columns cycle the
    /// labels `n, 0, k, k+n` with the phase shifted by two rows between
    /// columns `x ≡ 1` and `x ≡ 3 (mod 4)`.
    pub fn square_open_four_coloring(n: i64, k: i64) -> LatticePattern {
        let rows = vec![
            vec![0, n, 0, k],
            vec![n, 0, n, k + n],
            vec![0, k, 0, n],
            vec![n, k + n, n, 0],
        ];
        LatticePattern::new(LatticeKind::Square, (4, 0), (0, 4), rows).expect("static shape")
    }
}

fn neighbor_sites(kind: LatticeKind, site: LatticeSite) -> Vec<LatticeSite> {
    let LatticeSite { x, y, basis } = site;
    match kind {
        LatticeKind::Square => vec![
            LatticeSite {
                x: x + 1,
                y,
                basis: 0,
            },
            LatticeSite {
                x: x - 1,
                y,
                basis: 0,
            },
            LatticeSite {
                x,
                y: y + 1,
                basis: 0,
            },
            LatticeSite {
                x,
                y: y - 1,
                basis: 0,
            },
        ],
        LatticeKind::Triangular => vec![
            LatticeSite {
                x: x + 1,
                y,
                basis: 0,
            },
            LatticeSite {
                x: x - 1,
                y,
                basis: 0,
            },
            LatticeSite {
                x,
                y: y + 1,
                basis: 0,
            },
            LatticeSite {
                x,
                y: y - 1,
                basis: 0,
            },
            LatticeSite {
                x: x + 1,
                y: y - 1,
                basis: 0,
            },
            LatticeSite {
                x: x - 1,
                y: y + 1,
                basis: 0,
            },
        ],
        LatticeKind::Hexagonal => {
            if basis == 0 {
                vec![
                    LatticeSite { x, y, basis: 1 },
                    LatticeSite {
                        x: x - 1,
                        y,
                        basis: 1,
                    },
                    LatticeSite {
                        x,
                        y: y - 1,
                        basis: 1,
                    },
                ]
            } else {
                vec![
                    LatticeSite { x, y, basis: 0 },
                    LatticeSite {
                        x: x + 1,
                        y,
                        basis: 0,
                    },
                    LatticeSite {
                        x,
                        y: y + 1,
                        basis: 0,
                    },
                ]
            }
        }
    }
}

/// Checks every vertex class of the fundamental domain for properness and
/// the neighborhood-sum condition. By periodicity, a clean report certifies
/// the infinite tiling.
pub fn verify_lattice(
    pattern: &LatticePattern,
    spec: &ConstraintSpec,
) -> ViolationReport<LatticeSite> {
    let n = spec.modulus() as i64;
    let mut improper: BTreeSet<(LatticeSite, LatticeSite)> = BTreeSet::new();
    let mut bad_sums = Vec::new();
    for y in 0..pattern.height {
        for x in 0..pattern.width {
            for basis in 0..pattern.kind.basis_count() as u8 {
                let site = LatticeSite { x, y, basis };
                let own = pattern.label(site);
                let mut sum: i64 = 0;
                for neighbor in neighbor_sites(pattern.kind, site) {
                    let other = pattern.label(neighbor);
                    if other == own {
                        let canonical = pattern.canonical(neighbor);
                        let edge = if site <= canonical {
                            (site, canonical)
                        } else {
                            (canonical, site)
                        };
                        improper.insert(edge);
                    }
                    sum += other % n;
                }
                if spec.neighborhood() == NeighborhoodKind::Closed {
                    sum += own % n;
                }
                let residue = sum.rem_euclid(n) as u64;
                let ok = match spec.target() {
                    SumTarget::Exactly(k) => residue == k,
                    SumTarget::Nonzero => residue != 0,
                };
                if !ok {
                    bad_sums.push(BadSum {
                        site,
                        sum_residue: residue,
                    });
                }
            }
        }
    }
    ViolationReport {
        improper_edges: improper.into_iter().collect(),
        bad_sums,
    }
}

/// How an infinite tree is shaped around its root or base vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    /// Rooted complete `m`-ary tree: every vertex has `m` children.
    RootedComplete,
    /// Unrooted `m`-regular tree viewed from a base vertex: the base has
    /// `m` children, every other vertex has `m - 1`.
    UnrootedRegular,
}

/// Deterministic labeling rule for an infinite tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeProcedure {
    /// Every vertex at height `h` gets `labels[h mod len]`. On the
    /// 2-regular tree (the two-way infinite path) the pattern instead runs
    /// along signed positions, so asymmetric periodic path colorings are
    /// expressible.
    RowConstant { labels: Vec<i64> },
    /// Marker scheme: a vertex whose parent carries `base` (and the root)
    /// gives `marker` to its first child and `base` to the rest; a vertex
    /// whose parent carries `marker` gives all children `base`. With
    /// `even_label` set, even heights are colored by that constant and the
    /// scheme runs on odd heights only.
    MarkedChild {
        even_label: Option<i64>,
        base: i64,
        marker: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeColoringProcedure {
    pub procedure: TreeProcedure,
    pub arity: usize,
    pub kind: TreeKind,
}

impl TreeColoringProcedure {
    pub fn row_constant(
        labels: Vec<i64>,
        arity: usize,
        kind: TreeKind,
    ) -> Result<TreeColoringProcedure, PatternError> {
        if labels.is_empty() {
            return Err(PatternError::EmptyRowPattern);
        }
        check_arity(arity, kind)?;
        Ok(TreeColoringProcedure {
            procedure: TreeProcedure::RowConstant { labels },
            arity,
            kind,
        })
    }

    pub fn marked_child(
        even_label: Option<i64>,
        base: i64,
        marker: i64,
        arity: usize,
        kind: TreeKind,
    ) -> Result<TreeColoringProcedure, PatternError> {
        check_arity(arity, kind)?;
        Ok(TreeColoringProcedure {
            procedure: TreeProcedure::MarkedChild {
                even_label,
                base,
                marker,
            },
            arity,
            kind,
        })
    }
}

fn check_arity(arity: usize, kind: TreeKind) -> Result<(), PatternError> {
    match kind {
        TreeKind::RootedComplete if arity >= 1 => Ok(()),
        TreeKind::UnrootedRegular if arity >= 2 => Ok(()),
        TreeKind::RootedComplete => Err(PatternError::BadArity {
            arity,
            kind: "rooted",
        }),
        TreeKind::UnrootedRegular => Err(PatternError::BadArity {
            arity,
            kind: "unrooted",
        }),
    }
}

struct TreeNode {
    parent: Option<usize>,
    height: usize,
    child_rank: usize,
    /// Signed distance from the base along the two-way path, for the
    /// 2-regular special case.
    position: i64,
    children: Vec<usize>,
}

fn materialize(kind: TreeKind, arity: usize, depth: usize) -> Vec<TreeNode> {
    let mut nodes = vec![TreeNode {
        parent: None,
        height: 0,
        child_rank: 0,
        position: 0,
        children: Vec::new(),
    }];
    let mut frontier = vec![0usize];
    for height in 1..=depth {
        let mut next = Vec::new();
        for &p in &frontier {
            let fanout = match kind {
                TreeKind::RootedComplete => arity,
                TreeKind::UnrootedRegular if nodes[p].parent.is_none() => arity,
                TreeKind::UnrootedRegular => arity - 1,
            };
            for rank in 0..fanout {
                let position = if nodes[p].parent.is_none() {
                    if rank == 0 {
                        1
                    } else {
                        -1
                    }
                } else if nodes[p].position >= 0 {
                    nodes[p].position + 1
                } else {
                    nodes[p].position - 1
                };
                let id = nodes.len();
                nodes.push(TreeNode {
                    parent: Some(p),
                    height,
                    child_rank: rank,
                    position,
                    children: Vec::new(),
                });
                nodes[p].children.push(id);
                next.push(id);
            }
        }
        frontier = next;
    }
    nodes
}

fn label_tree(proc: &TreeColoringProcedure, nodes: &[TreeNode]) -> Vec<i64> {
    match &proc.procedure {
        TreeProcedure::RowConstant { labels } => {
            let len = labels.len() as i64;
            let path_mode = proc.kind == TreeKind::UnrootedRegular && proc.arity == 2;
            nodes
                .iter()
                .map(|node| {
                    let index = if path_mode {
                        node.position.rem_euclid(len)
                    } else {
                        (node.height as i64).rem_euclid(len)
                    };
                    labels[index as usize]
                })
                .collect()
        }
        TreeProcedure::MarkedChild {
            even_label,
            base,
            marker,
        } => {
            let mut labels = vec![0i64; nodes.len()];
            // has_mark[v]: whether v's first child receives the marker
            let mut has_mark = vec![false; nodes.len()];
            for (v, node) in nodes.iter().enumerate() {
                match node.parent {
                    None => {
                        labels[v] = even_label.unwrap_or(*base);
                        has_mark[v] = true;
                    }
                    Some(p) => {
                        let marked_row = even_label.is_none() || node.height % 2 == 1;
                        if marked_row {
                            labels[v] = if has_mark[p] && node.child_rank == 0 {
                                *marker
                            } else {
                                *base
                            };
                            // only relevant when the scheme runs on all rows
                            has_mark[v] = even_label.is_none() && labels[p] == *base;
                        } else {
                            labels[v] = even_label.expect("even row in even-label mode");
                            has_mark[v] = labels[p] == *base;
                        }
                    }
                }
            }
            labels
        }
    }
}

/// Materializes the procedure down to `depth` and checks properness on all
/// drawn edges plus the sum condition at every interior vertex (height
/// below `depth`). Boundary vertices are never reported.
pub fn verify_tree_procedure(
    proc: &TreeColoringProcedure,
    spec: &ConstraintSpec,
    depth: usize,
) -> Result<ViolationReport<usize>, PatternError> {
    if depth < 3 {
        return Err(PatternError::DepthTooSmall { depth });
    }
    check_arity(proc.arity, proc.kind)?;
    let nodes = materialize(proc.kind, proc.arity, depth);
    let labels = label_tree(proc, &nodes);
    let n = spec.modulus() as i64;

    let mut report = ViolationReport::clean();
    for (v, node) in nodes.iter().enumerate() {
        if let Some(p) = node.parent {
            if labels[p] == labels[v] {
                report.improper_edges.push((p, v));
            }
        }
        if node.height >= depth {
            continue;
        }
        let mut sum: i64 = node.children.iter().map(|&c| labels[c] % n).sum();
        if let Some(p) = node.parent {
            sum += labels[p] % n;
        }
        if spec.neighborhood() == NeighborhoodKind::Closed {
            sum += labels[v] % n;
        }
        let residue = sum.rem_euclid(n) as u64;
        let ok = match spec.target() {
            SumTarget::Exactly(k) => residue == k,
            SumTarget::Nonzero => residue != 0,
        };
        if !ok {
            report.bad_sums.push(BadSum {
                site: v,
                sum_residue: residue,
            });
        }
    }
    report.improper_edges.sort_unstable();
    Ok(report)
}

/// Parses the pattern file format:
///
/// ```text
/// # comment
/// lattice square
/// period 4 0 / 0 4
/// row 0 2 0 1
/// row 2 0 1 0
/// ```
pub fn parse_pattern_text(input: &str) -> Result<LatticePattern, PatternError> {
    let mut kind: Option<LatticeKind> = None;
    let mut periods: Option<((i64, i64), (i64, i64))> = None;
    let mut rows: Vec<Vec<i64>> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |reason: String| PatternError::Parse {
            line: line_no,
            reason,
        };
        let (tag, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match tag {
            "lattice" => {
                kind = Some(match rest.trim() {
                    "square" => LatticeKind::Square,
                    "tri" => LatticeKind::Triangular,
                    "hex" => LatticeKind::Hexagonal,
                    other => return Err(parse_err(format!("unknown lattice `{other}`"))),
                });
            }
            "period" => {
                let parts: Vec<&str> = rest.split('/').collect();
                if parts.len() != 2 {
                    return Err(parse_err("expected `period x1 y1 / x2 y2`".into()));
                }
                let mut vectors = Vec::new();
                for part in parts {
                    let coords: Vec<i64> = part
                        .split_ascii_whitespace()
                        .map(|t| {
                            t.parse()
                                .map_err(|_| parse_err(format!("bad coordinate `{t}`")))
                        })
                        .collect::<Result<_, _>>()?;
                    if coords.len() != 2 {
                        return Err(parse_err("each period vector needs two coordinates".into()));
                    }
                    vectors.push((coords[0], coords[1]));
                }
                periods = Some((vectors[0], vectors[1]));
            }
            "row" => {
                let row: Vec<i64> = rest
                    .split_ascii_whitespace()
                    .map(|t| t.parse().map_err(|_| parse_err(format!("bad label `{t}`"))))
                    .collect::<Result<_, _>>()?;
                rows.push(row);
            }
            other => return Err(parse_err(format!("unknown line tag `{other}`"))),
        }
    }

    let kind = kind.ok_or(PatternError::Parse {
        line: 0,
        reason: "missing `lattice` line".into(),
    })?;
    let (period_a, period_b) = periods.ok_or(PatternError::Parse {
        line: 0,
        reason: "missing `period` line".into(),
    })?;
    LatticePattern::new(kind, period_a, period_b, rows)
}

/// Writes the same format `parse_pattern_text` reads.
pub fn format_pattern_text(pattern: &LatticePattern) -> String {
    use std::fmt::Write as _;
    let mut out = String::new();
    let ((ax, ay), (bx, by)) = pattern.periods();
    let _ = writeln!(out, "lattice {}", pattern.kind().name());
    let _ = writeln!(out, "period {ax} {ay} / {bx} {by}");
    for row in pattern.rows() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        let _ = writeln!(out, "row {}", cells.join(" "));
    }
    out
}
