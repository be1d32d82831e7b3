//! Expansive maps and monotonic transformations of distances.
//!
//! An expansive map `η: [0, ∞) → [0, ∞)` is continuous with `η(0) = 0` and
//! never shrinks gaps: `η(x) − η(y) ≥ x − y` for `x ≥ y`. Here every such
//! map is piecewise linear with all slopes at least 1, which loses nothing:
//! a transformation of a finite distance only sees finitely many values.
//!
//! Given a partition `P`, the `P`-monotonic transformation of `d` by `η`
//! contracts intra-cluster distances by `η⁻¹` and expands inter-cluster
//! distances by `η`.

use std::cmp::Ordering;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::PseudoDistance;
use crate::partition::Partition;

/// Slopes down to `1 − SLOPE_TOLERANCE` are accepted, absorbing rounding
/// from float round trips.
pub const SLOPE_TOLERANCE: f64 = 1e-9;

/// Continuous piecewise-linear expansive map through `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct ExpansiveMap {
    xs: Vec<f64>,
    ys: Vec<f64>,
    tail_slope: f64,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    points: Vec<[f64; 2]>,
    tail_slope: f64,
}

impl TryFrom<MapRepr> for ExpansiveMap {
    type Error = Error;

    fn try_from(r: MapRepr) -> Result<Self> {
        ExpansiveMap::new(r.points.iter().map(|p| (p[0], p[1])).collect(), r.tail_slope)
    }
}

impl From<ExpansiveMap> for MapRepr {
    fn from(m: ExpansiveMap) -> Self {
        MapRepr {
            points: m.xs.iter().zip(&m.ys).map(|(&x, &y)| [x, y]).collect(),
            tail_slope: m.tail_slope,
        }
    }
}

fn slope_ok(dx: f64, dy: f64) -> bool {
    dy / dx >= 1.0 - SLOPE_TOLERANCE
}

impl ExpansiveMap {
    /// Interpolates `points` (strictly increasing in `x`), continuing with
    /// `tail_slope` past the last one. `(0, 0)` is prepended when absent.
    pub fn new(points: Vec<(f64, f64)>, tail_slope: f64) -> Result<Self> {
        let mut xs = Vec::with_capacity(points.len() + 1);
        let mut ys = Vec::with_capacity(points.len() + 1);
        if points.first().is_none_or(|p| p.0 != 0.0) {
            xs.push(0.0);
            ys.push(0.0);
        }
        for (x, y) in points {
            if !(x.is_finite() && y.is_finite()) {
                return Err(Error::InvalidMap(format!("non-finite point ({x}, {y})")));
            }
            xs.push(x);
            ys.push(y);
        }
        if ys[0] != 0.0 {
            return Err(Error::InvalidMap("the map must send 0 to 0".into()));
        }
        for i in 1..xs.len() {
            let (dx, dy) = (xs[i] - xs[i - 1], ys[i] - ys[i - 1]);
            if !(dx > 0.0) {
                return Err(Error::InvalidMap(format!(
                    "breakpoints must increase strictly, got {} after {}",
                    xs[i],
                    xs[i - 1]
                )));
            }
            if !slope_ok(dx, dy) {
                return Err(Error::InvalidMap(format!(
                    "slope {} < 1 on [{}, {}]",
                    dy / dx,
                    xs[i - 1],
                    xs[i]
                )));
            }
        }
        if !(tail_slope.is_finite() && tail_slope >= 1.0 - SLOPE_TOLERANCE) {
            return Err(Error::InvalidMap(format!("tail slope {tail_slope} < 1")));
        }
        Ok(ExpansiveMap { xs, ys, tail_slope })
    }

    pub fn identity() -> Self {
        ExpansiveMap::linear(1.0).expect("slope 1")
    }

    /// `η(x) = αx`, `α ≥ 1`.
    pub fn linear(alpha: f64) -> Result<Self> {
        ExpansiveMap::new(Vec::new(), alpha)
    }

    /// Linear step map: identity up to `d1`, slope `α` on `[d1, d2]`, then
    /// slope 1 again. The last branch is continuous at `d2`.
    pub fn step(d1: f64, d2: f64, alpha: f64) -> Result<Self> {
        if !(0.0 <= d1 && d1 < d2 && alpha >= 1.0) {
            return Err(Error::InvalidMap(format!(
                "step map needs 0 <= d1 < d2 and alpha >= 1, got d1={d1} d2={d2} alpha={alpha}"
            )));
        }
        let mut points = Vec::new();
        if d1 > 0.0 {
            points.push((d1, d1));
        }
        points.push((d2, alpha * (d2 - d1) + d1));
        ExpansiveMap::new(points, 1.0)
    }

    /// Piecewise-linear discretisation of a nonlinear expansive map at the
    /// given inputs. Exact at those inputs, slope 1 beyond the last one.
    pub fn sampled(eta: impl Fn(f64) -> f64, inputs: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut xs: Vec<f64> = inputs.into_iter().filter(|&x| x > 0.0).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        ExpansiveMap::new(xs.into_iter().map(|x| (x, eta(x))).collect(), 1.0)
    }

    /// Discretises a nonlinear expansive map for a `P`-monotonic
    /// transformation of `d`: the result passes through `(x, η(x))` at every
    /// inter-cluster weight `x` and through `(η⁻¹(y), y)` at every
    /// intra-cluster weight `y`, so it transforms `d` exactly as `η` does.
    pub fn discretize(
        eta: impl Fn(f64) -> f64,
        eta_inv: impl Fn(f64) -> f64,
        d: &PseudoDistance,
        p: &Partition,
    ) -> Result<Self> {
        d.graph().check_size(p)?;
        let mut points: Vec<(f64, f64)> = d
            .iter()
            .map(|(u, v, w)| if p.same_cluster(u, v) { (eta_inv(w), w) } else { (w, eta(w)) })
            .collect();
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|a, b| a.0 == b.0);
        ExpansiveMap::new(points, 1.0)
    }

    /// Breakpoints `(x, η(x))`, starting at `(0, 0)`.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.xs.iter().copied().zip(self.ys.iter().copied()).collect()
    }

    pub fn tail_slope(&self) -> f64 {
        self.tail_slope
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < 0.0 || x.is_nan() {
            return Err(Error::NegativeArgument(x));
        }
        Ok(interpolate(&self.xs, &self.ys, self.tail_slope, x))
    }

    pub fn eval_inv(&self, y: f64) -> Result<f64> {
        if y < 0.0 || y.is_nan() {
            return Err(Error::NegativeArgument(y));
        }
        Ok(interpolate(&self.ys, &self.xs, 1.0 / self.tail_slope, y))
    }

    /// `then ∘ self`: apply `self` first.
    pub fn compose(&self, then: &ExpansiveMap) -> ExpansiveMap {
        let mut xs: Vec<f64> = self.xs.clone();
        xs.extend(then.xs.iter().map(|&y| self.eval_inv(y).expect("non-negative")));
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        let points = xs
            .into_iter()
            .filter(|&x| x > 0.0)
            .map(|x| (x, then.eval(self.eval(x).unwrap()).unwrap()))
            .collect();
        ExpansiveMap::new(points, self.tail_slope * then.tail_slope)
            .expect("composition of expansive maps is expansive")
    }
}

fn interpolate(xs: &[f64], ys: &[f64], tail: f64, x: f64) -> f64 {
    let i = xs.partition_point(|&b| b <= x) - 1;
    if x == xs[i] {
        return ys[i];
    }
    match xs.get(i + 1) {
        Some(&next) => ys[i] + (x - xs[i]) * ((ys[i + 1] - ys[i]) / (next - xs[i])),
        None => ys[i] + (x - xs[i]) * tail,
    }
}

/// `d'` with intra-cluster weights `η⁻¹(d)` and inter-cluster weights `η(d)`.
pub fn apply_monotonic(d: &PseudoDistance, p: &Partition, eta: &ExpansiveMap) -> Result<PseudoDistance> {
    d.graph().check_size(p)?;
    d.map_weights(|u, v, w| {
        if p.same_cluster(u, v) {
            eta.eval_inv(w).unwrap()
        } else {
            eta.eval(w).unwrap()
        }
    })
}

/// How [`detect_monotonic`] compares values.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exactness {
    /// Slopes down to `1 − SLOPE_TOLERANCE`, near-equal duplicates merged.
    #[default]
    Tolerant,
    /// Exact rational arithmetic on the stored binary values.
    Strict,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// The interpolation is expansive; it realises the transformation.
    Valid(ExpansiveMap),
    /// Two points share an abscissa with different ordinates.
    Conflict { x: f64, y1: f64, y2: f64 },
    /// The segment from `points[index]` to `points[index + 1]` has slope < 1.
    SlopeViolation { index: usize },
}

/// Outcome of [`detect_monotonic`]: the sorted, deduplicated interpolation
/// points and the verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicWitness {
    pub points: Vec<(f64, f64)>,
    pub verdict: Verdict,
}

impl MonotonicWitness {
    pub fn is_valid(&self) -> bool {
        matches!(self.verdict, Verdict::Valid(_))
    }

    pub fn map(&self) -> Option<&ExpansiveMap> {
        match &self.verdict {
            Verdict::Valid(m) => Some(m),
            _ => None,
        }
    }
}

/// Decides whether `d2` is a `P`-monotonic transformation of `d`.
///
/// Every intra-cluster pair contributes `(d2, d)` and every inter-cluster
/// pair `(d, d2)`; together with the origin these must lie on the graph of
/// one expansive map, which exists iff their linear interpolation is
/// well-defined with all slopes at least 1.
pub fn detect_monotonic(
    d: &PseudoDistance,
    d2: &PseudoDistance,
    p: &Partition,
    mode: Exactness,
) -> Result<MonotonicWitness> {
    if !d.same_support(d2) {
        return Err(Error::SupportMismatch);
    }
    d.graph().check_size(p)?;
    let mut raw: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    for ((u, v, a), &b) in d.iter().zip(d2.weights()) {
        raw.push(if p.same_cluster(u, v) { (b, a) } else { (a, b) });
    }
    raw.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    let same = |a: f64, b: f64| match mode {
        Exactness::Strict => a == b,
        Exactness::Tolerant => (a - b).abs() <= SLOPE_TOLERANCE * a.abs().max(b.abs()).max(1.0),
    };
    let mut points: Vec<(f64, f64)> = Vec::with_capacity(raw.len());
    for (x, y) in raw {
        match points.last() {
            Some(&(px, py)) if px == x => {
                if !same(py, y) {
                    return Ok(MonotonicWitness {
                        points,
                        verdict: Verdict::Conflict { x, y1: py, y2: y },
                    });
                }
            }
            _ => points.push((x, y)),
        }
    }
    for i in 0..points.len() - 1 {
        let ((x0, y0), (x1, y1)) = (points[i], points[i + 1]);
        let ok = match mode {
            Exactness::Tolerant => slope_ok(x1 - x0, y1 - y0),
            Exactness::Strict => {
                let r = |v: f64| BigRational::from_float(v).expect("finite");
                r(y1) - r(y0) >= r(x1) - r(x0)
            }
        };
        if !ok {
            return Ok(MonotonicWitness {
                points,
                verdict: Verdict::SlopeViolation { index: i },
            });
        }
    }
    let map = ExpansiveMap::new(points[1..].to_vec(), 1.0)?;
    Ok(MonotonicWitness {
        points,
        verdict: Verdict::Valid(map),
    })
}

fn dense(d: &PseudoDistance) -> Result<Vec<Vec<f64>>> {
    if !d.graph().is_complete() {
        return Err(Error::NotComplete);
    }
    let n = d.n();
    let mut m = vec![vec![0.0; n]; n];
    for (u, v, w) in d.iter() {
        m[u][v] = w;
        m[v][u] = w;
    }
    Ok(m)
}

fn distinct_triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| {
        (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))
    })
    .filter(|&(i, j, k)| i != j && j != k && i != k)
}

/// Ordered triples `(i, j, k)` of distinct points with
/// `d(i, k) = d(i, j) + d(j, k)` exactly.
pub fn aligned_triples(d: &PseudoDistance) -> Result<Vec<(usize, usize, usize)>> {
    let m = dense(d)?;
    Ok(distinct_triples(d.n())
        .filter(|&(i, j, k)| m[i][k] == m[i][j] + m[j][k])
        .collect())
}

/// First triple `(i, j, k)` with `d(i, k) > d(i, j) + d(j, k) + tol`.
pub fn triangle_violation(d: &PseudoDistance, tol: f64) -> Result<Option<(usize, usize, usize)>> {
    let m = dense(d)?;
    Ok(distinct_triples(d.n()).find(|&(i, j, k)| m[i][k] > m[i][j] + m[j][k] + tol))
}

/// Largest scale factors for which `η(x) = s·x` keeps a metric a metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricConstants {
    /// Bound for the given partition; `+∞` when no triple constrains it.
    pub partition: f64,
    /// Bound valid for every partition.
    pub universal: f64,
    /// Minimising `(i, j, k)` for `partition`.
    pub partition_triple: Option<(usize, usize, usize)>,
    pub universal_triple: Option<(usize, usize, usize)>,
}

/// Minimum of `sqrt(d(i,j) / (d(i,k) − d(j,k)))` over triples with
/// `d(i,k) > d(j,k)`: over all such triples for the universal constant, and
/// over those with `i ∼ j`, `i ≁ k` for the partition constant.
pub fn metric_constants(d: &PseudoDistance, p: &Partition) -> Result<MetricConstants> {
    d.graph().check_size(p)?;
    if let Some((i, j, k)) = triangle_violation(d, 0.0)? {
        return Err(Error::NotMetric(i, j, k));
    }
    if let Some(&(i, j, k)) = aligned_triples(d)?.first() {
        return Err(Error::AlignedTriple(i, j, k));
    }
    let m = dense(d)?;
    let mut out = MetricConstants {
        partition: f64::INFINITY,
        universal: f64::INFINITY,
        partition_triple: None,
        universal_triple: None,
    };
    for (i, j, k) in distinct_triples(d.n()) {
        if m[i][k] <= m[j][k] {
            continue;
        }
        let c = (m[i][j] / (m[i][k] - m[j][k])).sqrt();
        if c.total_cmp(&out.universal) == Ordering::Less {
            out.universal = c;
            out.universal_triple = Some((i, j, k));
        }
        if p.same_cluster(i, j) && !p.same_cluster(i, k) && c < out.partition {
            out.partition = c;
            out.partition_triple = Some((i, j, k));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use approx::assert_relative_eq;
    use std::sync::Arc;

    fn triangle(w12: f64, w13: f64, w23: f64) -> PseudoDistance {
        PseudoDistance::new(Arc::new(Graph::complete(3).unwrap()), vec![w12, w13, w23]).unwrap()
    }

    #[test]
    fn linear_map_and_inverse() {
        let eta = ExpansiveMap::linear(2.0).unwrap();
        assert_eq!(eta.eval(3.0).unwrap(), 6.0);
        assert_eq!(eta.eval_inv(6.0).unwrap(), 3.0);
        let id = ExpansiveMap::identity();
        for x in [0.0, 0.3, 1.0, 17.5] {
            assert_eq!(id.eval(x).unwrap(), x);
        }
        assert!(ExpansiveMap::linear(0.5).is_err());
        assert!(eta.eval(-1.0).is_err());
        assert!(eta.eval_inv(-1.0).is_err());
    }

    #[test]
    fn step_map_second_branch() {
        let eta = ExpansiveMap::step(1.0, 2.0, 3.0).unwrap();
        assert_eq!(eta.eval(1.5).unwrap(), 2.5);
        assert_eq!(eta.eval(0.5).unwrap(), 0.5);
        // continuous at d2, slope 1 afterwards
        assert_eq!(eta.eval(2.0).unwrap(), 4.0);
        assert_eq!(eta.eval(3.0).unwrap(), 5.0);
        // with d1 = 0 the third branch is (x - d2) + alpha d2
        let eta0 = ExpansiveMap::step(0.0, 2.0, 3.0).unwrap();
        assert_eq!(eta0.eval(5.0).unwrap(), 3.0 + 6.0);
    }

    #[test]
    fn rejects_contracting_pieces() {
        assert!(ExpansiveMap::new(vec![(1.0, 0.5)], 1.0).is_err());
        assert!(ExpansiveMap::new(vec![(1.0, 2.0), (1.0, 3.0)], 1.0).is_err());
        assert!(ExpansiveMap::new(vec![(0.0, 1.0)], 1.0).is_err());
        assert!(ExpansiveMap::new(vec![(1.0, 2.0)], 0.9).is_err());
    }

    #[test]
    fn compose_linear_and_identity() {
        let two = ExpansiveMap::linear(2.0).unwrap();
        let three = ExpansiveMap::linear(3.0).unwrap();
        let six = two.compose(&three);
        assert_eq!(six.eval(1.5).unwrap(), 9.0);
        assert_eq!(six.tail_slope(), 6.0);
        let eta = ExpansiveMap::step(1.0, 2.0, 3.0).unwrap();
        let same = ExpansiveMap::identity().compose(&eta);
        for x in [0.2, 1.0, 1.7, 2.0, 4.5] {
            assert_eq!(same.eval(x).unwrap(), eta.eval(x).unwrap());
        }
    }

    #[test]
    fn compose_matches_pointwise() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = crate::sampling::random_expansive_map(5.0, &mut rng);
            let b = crate::sampling::random_expansive_map(20.0, &mut rng);
            let c = a.compose(&b);
            for _ in 0..100 {
                let x = rng.random_range(0.0..10.0);
                let want = b.eval(a.eval(x).unwrap()).unwrap();
                assert_relative_eq!(c.eval(x).unwrap(), want, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn lemma_map_discretised() {
        // η(x) = (x² + x)/α at α = 1/2 on intra 0.25, special pair 1, rest 0.5
        let alpha = 0.5;
        let d = triangle(alpha / 2.0, 1.0, alpha);
        let p = Partition::from_clusters(3, &[vec![0, 1], vec![2]]).unwrap();
        let eta = ExpansiveMap::discretize(
            |x| (x * x + x) / alpha,
            |y| (-1.0 + (1.0 + 4.0 * alpha * y).sqrt()) / 2.0,
            &d,
            &p,
        )
        .unwrap();
        let d2 = apply_monotonic(&d, &p, &eta).unwrap();
        assert_relative_eq!(d2.weights()[0], (-1.0 + 1.5f64.sqrt()) / 2.0, max_relative = 1e-12);
        assert_relative_eq!(d2.weights()[1], 2.0 / alpha, max_relative = 1e-12);
        assert_relative_eq!(d2.weights()[2], 1.0 + alpha, max_relative = 1e-12);
    }

    #[test]
    fn json_format() {
        let eta = ExpansiveMap::step(1.0, 2.0, 3.0).unwrap();
        let json = serde_json::to_string(&eta).unwrap();
        assert_eq!(json, r#"{"points":[[0.0,0.0],[1.0,1.0],[2.0,4.0]],"tail_slope":1.0}"#);
        let back: ExpansiveMap = serde_json::from_str(&json).unwrap();
        assert_eq!(back, eta);
        assert!(serde_json::from_str::<ExpansiveMap>(r#"{"points":[[1,0.5]],"tail_slope":1}"#).is_err());
    }

    #[test]
    fn apply_linear_example() {
        // p = {{1,2},{3}}, d(1,2)=4, d(1,3)=1, d(2,3)=3
        let d = triangle(4.0, 1.0, 3.0);
        let p = Partition::from_clusters(3, &[vec![0, 1], vec![2]]).unwrap();
        let eta = ExpansiveMap::linear(2.0).unwrap();
        let d2 = apply_monotonic(&d, &p, &eta).unwrap();
        assert_eq!(d2.weights(), &[2.0, 2.0, 6.0]);
        assert_eq!(apply_monotonic(&d, &p, &ExpansiveMap::identity()).unwrap(), d);
    }

    #[test]
    fn detect_identity_and_linear() {
        let d = triangle(4.0, 1.0, 3.0);
        let p = Partition::from_clusters(3, &[vec![0, 1], vec![2]]).unwrap();
        for mode in [Exactness::Tolerant, Exactness::Strict] {
            assert!(detect_monotonic(&d, &d, &p, mode).unwrap().is_valid());
            let d2 = apply_monotonic(&d, &p, &ExpansiveMap::linear(2.0).unwrap()).unwrap();
            let w = detect_monotonic(&d, &d2, &p, mode).unwrap();
            let eta = w.map().expect("valid");
            assert_eq!(apply_monotonic(&d, &p, eta).unwrap(), d2);
        }
    }

    #[test]
    fn detect_rejects_subcluster_emphasis() {
        // one cluster {1,2,3}; shrink d(1,2) sharply, keep d(1,3), d(2,3)
        let d = triangle(1.0, 1.0, 1.0);
        let d2 = triangle(0.1, 1.0, 1.0);
        let p = Partition::trivial(3);
        let w = detect_monotonic(&d, &d2, &p, Exactness::Tolerant).unwrap();
        assert!(matches!(w.verdict, Verdict::SlopeViolation { .. }), "{w:?}");
        // same abscissa, different ordinates
        let d3 = triangle(1.0, 2.0, 1.0);
        let d4 = triangle(0.5, 1.0, 1.0);
        let w = detect_monotonic(&d3, &d4, &p, Exactness::Strict).unwrap();
        assert!(matches!(w.verdict, Verdict::Conflict { .. }), "{w:?}");
    }

    #[test]
    fn support_mismatch() {
        let d = triangle(1.0, 1.0, 1.0);
        let path = PseudoDistance::new(Arc::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap()), vec![1.0, 1.0]).unwrap();
        assert_eq!(
            detect_monotonic(&d, &path, &Partition::trivial(3), Exactness::Strict),
            Err(Error::SupportMismatch)
        );
    }

    #[test]
    fn aligned_examples() {
        let line = triangle(1.0, 2.0, 1.0);
        let a = aligned_triples(&line).unwrap();
        assert!(a.contains(&(0, 1, 2)) && a.contains(&(2, 1, 0)));
        assert!(aligned_triples(&triangle(1.0, 1.0, 1.0)).unwrap().is_empty());
        let path = PseudoDistance::new(Arc::new(Graph::new(3, [(0, 1), (1, 2)]).unwrap()), vec![1.0, 1.0]).unwrap();
        assert_eq!(aligned_triples(&path), Err(Error::NotComplete));
    }

    #[test]
    fn metric_constant_examples() {
        // oracle: brute force over the six ordered triples by hand
        let d = triangle(1.0, 2.0, 1.8);
        let p = Partition::from_clusters(3, &[vec![0, 1], vec![2]]).unwrap();
        let c = metric_constants(&d, &p).unwrap();
        assert_relative_eq!(c.universal, 1.8f64.sqrt(), max_relative = 1e-12);
        assert_eq!(c.universal_triple, Some((2, 1, 0)));
        assert_relative_eq!(c.partition, 5.0f64.sqrt(), max_relative = 1e-12);
        assert_eq!(c.partition_triple, Some((0, 1, 2)));
        assert!(c.universal <= c.partition);
    }

    #[test]
    fn metric_constant_infinite_when_equidistant() {
        // 1 and 2 together, 3 equidistant from both
        let d = triangle(1.0, 1.5, 1.5);
        let p = Partition::from_clusters(3, &[vec![0, 1], vec![2]]).unwrap();
        let c = metric_constants(&d, &p).unwrap();
        assert_eq!(c.partition, f64::INFINITY);
        assert!(c.universal.is_finite());
    }

    #[test]
    fn metric_constants_reject_bad_input() {
        let p = Partition::trivial(3);
        assert!(matches!(metric_constants(&triangle(1.0, 3.0, 1.0), &p), Err(Error::NotMetric(..))));
        assert!(matches!(metric_constants(&triangle(1.0, 2.0, 1.0), &p), Err(Error::AlignedTriple(..))));
    }
}
