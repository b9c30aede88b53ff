//! Closed-form predictions for the invariant values of named graph
//! families, finite and infinite, plus a harness comparing predictions
//! against the exact engine on finite instances.
//!
//! Every arm states a known closed form and nothing more: where only bounds
//! are known the prediction is [`Prediction::Bounded`], and parameter
//! combinations without a closed form come back [`Prediction::Conditional`]
//! rather than guessed. See `docs/coverage.md` for the full arm inventory.

use std::fmt;

use crate::constraint::{ConstraintSpec, SumTarget};
use crate::graph::{generate, FamilySpec, NeighborhoodKind};
use crate::solve::{min_order, Outcome};

/// Infinite graphs with known invariant values. These are never solved by
/// the engine; values come from the closed forms and are certified
/// separately by the periodic-pattern verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfiniteFamily {
    /// Triangular tiling of the plane.
    TriangularTiling,
    /// Square tiling of the plane.
    SquareTiling,
    /// Hexagonal tiling of the plane.
    HexagonalTiling,
    /// Rooted complete `m`-ary tree of infinite height (`m ≥ 1`).
    InfiniteAryTree(usize),
    /// Unrooted tree in which every vertex has degree `m ≥ 2`.
    InfiniteRegularTree(usize),
}

impl fmt::Display for InfiniteFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            InfiniteFamily::TriangularTiling => write!(f, "r3"),
            InfiniteFamily::SquareTiling => write!(f, "r4"),
            InfiniteFamily::HexagonalTiling => write!(f, "r6"),
            InfiniteFamily::InfiniteAryTree(m) => write!(f, "inftree:{m}"),
            InfiniteFamily::InfiniteRegularTree(m) => write!(f, "regtree:{m}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Finite(FamilySpec),
    Infinite(InfiniteFamily),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Finite(spec) => spec.fmt(f),
            Family::Infinite(inf) => inf.fmt(f),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = crate::graph::GraphError;

    /// Accepts the finite `name:params` strings plus `r3`, `r4`, `r6`,
    /// `inftree:m`, and `regtree:m` for the infinite families.
    fn from_str(input: &str) -> Result<Family, Self::Err> {
        let malformed = |reason: &str| crate::graph::GraphError::MalformedFamilyString {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        match input {
            "r3" => return Ok(Family::Infinite(InfiniteFamily::TriangularTiling)),
            "r4" => return Ok(Family::Infinite(InfiniteFamily::SquareTiling)),
            "r6" => return Ok(Family::Infinite(InfiniteFamily::HexagonalTiling)),
            _ => {}
        }
        if let Some(params) = input.strip_prefix("inftree:") {
            let m: usize = params
                .trim()
                .parse()
                .map_err(|_| malformed("arity must be an integer"))?;
            if m < 1 {
                return Err(malformed("arity must be at least 1"));
            }
            return Ok(Family::Infinite(InfiniteFamily::InfiniteAryTree(m)));
        }
        if let Some(params) = input.strip_prefix("regtree:") {
            let m: usize = params
                .trim()
                .parse()
                .map_err(|_| malformed("degree must be an integer"))?;
            if m < 2 {
                return Err(malformed("degree must be at least 2"));
            }
            return Ok(Family::Infinite(InfiniteFamily::InfiniteRegularTree(m)));
        }
        input.parse::<FamilySpec>().map(Family::Finite)
    }
}

/// What a closed form says about an invariant value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Prediction {
    Exact(usize),
    NotExists,
    /// Inclusive interval; the engine may refine it, the predictor never does.
    Bounded(usize, usize),
    /// No closed form covers these parameters; the description says why.
    Conditional(String),
    /// Infinite family outside both the closed forms and the engine.
    OutOfEngineScope(String),
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Exact(v) => write!(f, "{v}"),
            Prediction::NotExists => write!(f, "does-not-exist"),
            Prediction::Bounded(lo, hi) => write!(f, "{lo}..{hi}"),
            Prediction::Conditional(reason) => write!(f, "conditional({reason})"),
            Prediction::OutOfEngineScope(reason) => write!(f, "out-of-scope({reason})"),
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divides(d: u64, x: u64) -> bool {
    x.is_multiple_of(d)
}

/// Chromatic number of a finite family instance, by its closed form.
pub fn family_chromatic_number(family: FamilySpec) -> usize {
    match family {
        FamilySpec::Path(1) => 1,
        FamilySpec::Path(_) => 2,
        FamilySpec::Cycle(m) => {
            if m % 2 == 0 {
                2
            } else {
                3
            }
        }
        FamilySpec::Complete(m) => m,
        FamilySpec::Star(_) | FamilySpec::CompleteBipartite(..) => 2,
        FamilySpec::Friendship(_) => 3,
        FamilySpec::CompleteAryTree(_, 0) => 1,
        FamilySpec::CompleteAryTree(..) => 2,
        FamilySpec::GeneralizedPetersen(m, j) => petersen_chromatic_number(m, j),
    }
}

/// 2 exactly when the graph is bipartite (even outer cycle, odd skip), 3
/// otherwise.
fn petersen_chromatic_number(m: usize, j: usize) -> usize {
    if m.is_multiple_of(2) && j % 2 == 1 {
        2
    } else {
        3
    }
}

fn infinite_chromatic_number(family: InfiniteFamily) -> usize {
    match family {
        InfiniteFamily::TriangularTiling => 3,
        InfiniteFamily::SquareTiling | InfiniteFamily::HexagonalTiling => 2,
        InfiniteFamily::InfiniteAryTree(_) | InfiniteFamily::InfiniteRegularTree(_) => 2,
    }
}

fn not_covered() -> Prediction {
    Prediction::Conditional("no closed form covers these parameters".into())
}

/// Closed-form prediction for `family` under `spec`.
pub fn predict(family: &Family, spec: &ConstraintSpec) -> Prediction {
    let n = spec.modulus();
    match (spec.neighborhood(), spec.target()) {
        // the zero-target open case collapses to the chromatic number for
        // every graph, finite or not
        (NeighborhoodKind::Open, SumTarget::Exactly(0)) => match family {
            Family::Finite(f) => match validate(*f) {
                Ok(()) => Prediction::Exact(family_chromatic_number(*f)),
                Err(p) => p,
            },
            Family::Infinite(inf) => Prediction::Exact(infinite_chromatic_number(*inf)),
        },
        (NeighborhoodKind::Closed, SumTarget::Nonzero) => predict_closed_nonzero(family, n),
        (NeighborhoodKind::Open, SumTarget::Exactly(k)) => predict_open_exactly(family, n, k),
        (NeighborhoodKind::Open, SumTarget::Nonzero) => predict_open_nonzero(family, n),
        // closed Exactly(k) family formulas belong to earlier work and are
        // not reproduced here; the engine still solves the regime
        (NeighborhoodKind::Closed, SumTarget::Exactly(_)) => match family {
            Family::Finite(_) => not_covered(),
            Family::Infinite(_) => {
                Prediction::OutOfEngineScope("infinite graph with no closed form here".into())
            }
        },
    }
}

fn validate(family: FamilySpec) -> Result<(), Prediction> {
    if generate(family).is_err() {
        return Err(Prediction::Conditional("invalid family parameters".into()));
    }
    Ok(())
}

fn predict_closed_nonzero(family: &Family, n: u64) -> Prediction {
    let Family::Finite(finite) = family else {
        return match family {
            Family::Infinite(InfiniteFamily::TriangularTiling) if n >= 2 => Prediction::Exact(3),
            Family::Infinite(InfiniteFamily::SquareTiling)
            | Family::Infinite(InfiniteFamily::HexagonalTiling)
                if n >= 2 =>
            {
                Prediction::Exact(2)
            }
            Family::Infinite(_) => {
                Prediction::OutOfEngineScope("infinite graph with no closed form here".into())
            }
            Family::Finite(_) => unreachable!(),
        };
    };
    if let Err(p) = validate(*finite) {
        return p;
    }
    if n < 2 {
        return not_covered();
    }
    match *finite {
        FamilySpec::Path(m) if m >= 2 => {
            if n >= 3 || m <= 3 {
                Prediction::Exact(2)
            } else {
                Prediction::Exact(3)
            }
        }
        FamilySpec::Path(_) => not_covered(),
        FamilySpec::Complete(m) => Prediction::Exact(m),
        FamilySpec::Cycle(m) => Prediction::Exact(family_chromatic_number(FamilySpec::Cycle(m))),
        FamilySpec::Star(_) => Prediction::Exact(2),
        FamilySpec::Friendship(_) => Prediction::Exact(3),
        FamilySpec::CompleteBipartite(..) => Prediction::Exact(2),
        FamilySpec::CompleteAryTree(m, d) if m >= 2 && d >= 2 => {
            if n >= 4 || !divides(n, (m as u64) + 1) || d == 2 {
                Prediction::Exact(2)
            } else {
                Prediction::Exact(3)
            }
        }
        FamilySpec::CompleteAryTree(..) => not_covered(),
        FamilySpec::GeneralizedPetersen(m, j) => {
            let chi = petersen_chromatic_number(m, j);
            if n != 2 && n != 4 {
                Prediction::Exact(chi)
            } else if m % 2 == 0 && j % 2 == 1 {
                Prediction::Exact(2)
            } else {
                Prediction::Bounded(3, 6)
            }
        }
    }
}

fn predict_open_exactly(family: &Family, n: u64, k: u64) -> Prediction {
    debug_assert!(k != 0, "k = 0 is handled by the chromatic-number arm");
    match family {
        Family::Finite(finite) => {
            if let Err(p) = validate(*finite) {
                return p;
            }
            predict_open_exactly_finite(*finite, n, k)
        }
        Family::Infinite(inf) => predict_open_exactly_infinite(*inf, n, k),
    }
}

fn predict_open_exactly_finite(family: FamilySpec, n: u64, k: u64) -> Prediction {
    if n < 2 {
        return not_covered();
    }
    match family {
        FamilySpec::Path(m) if m >= 2 => {
            let two_works = divides(gcd(2, n), k);
            match m {
                2 => Prediction::Exact(2),
                3 => Prediction::Exact(if two_works { 2 } else { 3 }),
                4 => Prediction::Exact(3),
                _ => match m % 4 {
                    3 if two_works => Prediction::Exact(3),
                    1 => Prediction::NotExists,
                    _ => Prediction::Exact(4),
                },
            }
        }
        FamilySpec::Complete(m) if m >= 2 => {
            if divides(gcd(m as u64 - 1, n), k) {
                Prediction::Exact(m)
            } else {
                Prediction::NotExists
            }
        }
        FamilySpec::Star(m) if m >= 2 => {
            if divides(gcd(m as u64, n), k) {
                Prediction::Exact(2)
            } else {
                Prediction::Exact(3)
            }
        }
        FamilySpec::CompleteBipartite(i, j) => {
            let left = divides(gcd(i as u64, n), k);
            let right = divides(gcd(j as u64, n), k);
            Prediction::Exact(match (left, right) {
                (true, true) => 2,
                (true, false) | (false, true) => 3,
                (false, false) => 4,
            })
        }
        FamilySpec::CompleteAryTree(m, d) if m >= 1 && d >= 1 => {
            let recurrence = TreeRecurrence::new(m, d, n);
            let vanishes = recurrence.root_coefficient_times(k) == 0;
            let delta = d / 2;
            if d % 2 == 0 {
                if vanishes {
                    Prediction::Bounded(2, d + 1)
                } else {
                    Prediction::NotExists
                }
            } else if vanishes {
                Prediction::Bounded(2, d + 1)
            } else {
                Prediction::Bounded(2, d + delta + 2)
            }
        }
        FamilySpec::GeneralizedPetersen(m, j) => {
            let chi = petersen_chromatic_number(m, j);
            let g3 = gcd(3, n);
            if divides(g3, k) {
                Prediction::Exact(chi)
            } else if !divides(g3, k * m as u64) {
                Prediction::NotExists
            } else if j % 3 != 0 {
                Prediction::Bounded(chi, 2 * chi)
            } else {
                Prediction::Conditional(
                    "no general result when 3 | n, 3 | m, 3 | j and 3 does not divide k".into(),
                )
            }
        }
        _ => not_covered(),
    }
}

fn predict_open_exactly_infinite(family: InfiniteFamily, n: u64, k: u64) -> Prediction {
    if n < 2 {
        return Prediction::OutOfEngineScope("infinite graph with no closed form here".into());
    }
    match family {
        InfiniteFamily::SquareTiling => {
            if divides(gcd(4, n), k) {
                Prediction::Exact(2)
            } else {
                Prediction::Exact(4)
            }
        }
        InfiniteFamily::InfiniteRegularTree(m) if m >= 2 => {
            if divides(gcd(m as u64, n), k) {
                Prediction::Exact(2)
            } else {
                // whether 3 ever suffices here is unsettled
                Prediction::Bounded(3, 4)
            }
        }
        InfiniteFamily::InfiniteAryTree(m) if m >= 1 => {
            if divides(gcd(m as u64 + 1, n), k) {
                Prediction::Exact(3)
            } else {
                // 3 is known to occur for some of these parameters too
                Prediction::Bounded(3, 4)
            }
        }
        _ => Prediction::OutOfEngineScope("infinite graph with no closed form here".into()),
    }
}

fn predict_open_nonzero(family: &Family, n: u64) -> Prediction {
    match family {
        Family::Finite(finite) => {
            if let Err(p) = validate(*finite) {
                return p;
            }
            if n < 2 {
                return not_covered();
            }
            match *finite {
                FamilySpec::Complete(m) if m >= 2 => {
                    if n > 2 || m % 2 == 0 {
                        Prediction::Exact(m)
                    } else {
                        Prediction::NotExists
                    }
                }
                FamilySpec::CompleteBipartite(i, j) => {
                    let left_free = !divides(n, i as u64);
                    let right_free = !divides(n, j as u64);
                    Prediction::Exact(match (left_free, right_free) {
                        (true, true) => 2,
                        (true, false) | (false, true) => 3,
                        (false, false) => 4,
                    })
                }
                _ => not_covered(),
            }
        }
        Family::Infinite(InfiniteFamily::InfiniteAryTree(m)) if n >= 2 => {
            let m = *m as u64;
            if !divides(n, m) && !divides(n, m + 1) {
                Prediction::Exact(2)
            } else if n == 2 && m % 2 == 1 {
                Prediction::Exact(4)
            } else {
                Prediction::Exact(3)
            }
        }
        Family::Infinite(_) => {
            Prediction::OutOfEngineScope("infinite graph with no closed form here".into())
        }
    }
}

/// Data of the root-sum constraint in finite complete `m`-ary trees under
/// open `Exactly(k)` targets.
///
/// Labels on odd reverse-height rows are forced to follow the recurrence
/// `x_i + m·x_{i-1} ≡ k`, and the root constraint collapses to `n` dividing
/// `k` times the coefficient `(m^{δ+1} + (−1)^δ)/(m+1)` with `δ = ⌊d/2⌋`.
/// That quotient is an integer because `m ≡ −1 (mod m+1)`. The coefficient
/// is computed modulo `n` by the recurrence `S_0 = 1`,
/// `S_i = m·S_{i-1} + (−1)^i`, which avoids big-number arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeRecurrence {
    pub arity: usize,
    pub height: usize,
    /// δ = ⌊d/2⌋.
    pub half_height: usize,
    pub modulus: u64,
    /// `(m^{δ+1} + (−1)^δ)/(m+1) mod n`.
    pub coefficient: u64,
}

impl TreeRecurrence {
    pub fn new(arity: usize, height: usize, modulus: u64) -> TreeRecurrence {
        assert!(modulus >= 1 && arity >= 1);
        let half_height = height / 2;
        let m = arity as u64 % modulus;
        let mut coefficient = 1 % modulus; // S_0
        for i in 1..=half_height {
            let sign = if i % 2 == 0 {
                1 % modulus
            } else {
                (modulus - 1) % modulus
            };
            coefficient = (m * coefficient + sign) % modulus;
        }
        TreeRecurrence {
            arity,
            height,
            half_height,
            modulus,
            coefficient,
        }
    }

    /// `k · coefficient mod n`; zero means the root constraint is satisfiable.
    pub fn root_coefficient_times(&self, k: u64) -> u64 {
        (k % self.modulus) * self.coefficient % self.modulus
    }

    /// Direct evaluation of `(m^(δ+1) + (−1)^δ)/(m+1) mod n` in 128-bit
    /// integers; exact for the parameter ranges the tests sweep.
    pub fn coefficient_by_direct_evaluation(arity: usize, half_height: usize, modulus: u64) -> u64 {
        let m = arity as i128;
        let sign: i128 = if half_height.is_multiple_of(2) { 1 } else { -1 };
        let numerator = m
            .checked_pow(half_height as u32 + 1)
            .expect("within 128-bit range")
            + sign;
        debug_assert_eq!(numerator % (m + 1), 0);
        let quotient = numerator / (m + 1);
        quotient.rem_euclid(modulus as i128) as u64
    }
}

/// How a closed-form prediction compares against the exact engine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRecord {
    pub family: FamilySpec,
    pub spec: ConstraintSpec,
    pub prediction: Prediction,
    pub computed: Computed,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Computed {
    Value(usize),
    NotExists,
    Skipped(String),
}

impl fmt::Display for Computed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Computed::Value(v) => write!(f, "{v}"),
            Computed::NotExists => write!(f, "does-not-exist"),
            Computed::Skipped(reason) => write!(f, "skipped({reason})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree,
    Skipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Agree => write!(f, "agree"),
            Verdict::Disagree => write!(f, "DISAGREE"),
            Verdict::Skipped => write!(f, "skipped"),
        }
    }
}

/// Compares the closed-form prediction with the engine's exact answer.
/// Instances above `max_vertices` are skipped, never silently passed.
/// `Bounded` predictions agree when the engine value lies in the interval;
/// `NotExists` must match exactly.
pub fn verify_family(
    family: FamilySpec,
    spec: &ConstraintSpec,
    max_vertices: usize,
) -> ComparisonRecord {
    let prediction = predict(&Family::Finite(family), spec);
    let vertices = family.vertex_count();
    if vertices > max_vertices {
        let reason = format!("{vertices} vertices exceed budget {max_vertices}");
        return ComparisonRecord {
            family,
            spec: *spec,
            prediction,
            computed: Computed::Skipped(reason),
            verdict: Verdict::Skipped,
        };
    }
    if matches!(prediction, Prediction::Conditional(_)) {
        return ComparisonRecord {
            family,
            spec: *spec,
            prediction,
            computed: Computed::Skipped("prediction is conditional".into()),
            verdict: Verdict::Skipped,
        };
    }
    let graph = generate(family).expect("validated by predict");
    let result = min_order(&graph, spec);
    let computed = match result.outcome {
        Outcome::NotExists => Computed::NotExists,
        Outcome::Value(solution) => Computed::Value(solution.order),
    };
    let verdict = match (&prediction, &computed) {
        (Prediction::Exact(p), Computed::Value(c)) if p == c => Verdict::Agree,
        (Prediction::NotExists, Computed::NotExists) => Verdict::Agree,
        (Prediction::Bounded(lo, hi), Computed::Value(c)) if lo <= c && c <= hi => Verdict::Agree,
        _ => Verdict::Disagree,
    };
    ComparisonRecord {
        family,
        spec: *spec,
        prediction,
        computed,
        verdict,
    }
}
