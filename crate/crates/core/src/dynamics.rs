//! French-DeGroot opinion pooling with self-confidence weights.
//!
//! Each agent `i` updates `x_i(t+1) = z_i x_i(t) + (1 - z_i) Σ_j P_ij x_j(t)`,
//! i.e. `x(t+1) = W(z) x(t)` with `W(z) = (I - [z]) P + [z]`. The limit
//! `H(z) = lim W(z)^t` is rank one with rows `p(z)'` when nobody is stubborn
//! (`z_i = 1`), and an absorption-probability matrix onto the stubborn set
//! otherwise.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, Normal, Uniform};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{InfluenceNetwork, NodeSet};
use crate::rng::seeded_rng;

/// Round-off below this magnitude is clamped away from `H(z)`.
pub const CLAMP_TOL: f64 = 1e-12;
/// Bound on `‖W(z) H(z) - H(z)‖∞` accepted from the limit solve.
pub const FIXED_POINT_RESIDUAL_TOL: f64 = 1e-9;

/// Self-confidence profile `z ∈ [0, 1]^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SelfConfidenceProfile(Vec<f64>);

impl SelfConfidenceProfile {
    pub fn new(z: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = z
            .iter()
            .enumerate()
            .find(|(_, v)| !(0.0..=1.0).contains(*v))
        {
            return Err(Error::InvalidProfile { index, value });
        }
        Ok(Self(z))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn uniform(n: usize, c: f64) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    /// Copy with agent `i` playing `value`.
    pub fn with(&self, i: usize, value: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::InvalidProfile { index: i, value });
        }
        let mut z = self.0.clone();
        z[i] = value;
        Ok(Self(z))
    }

    pub(crate) fn set(&mut self, i: usize, value: f64) {
        debug_assert!((0.0..=1.0).contains(&value));
        self.0[i] = value;
    }

    /// `S(z)`: agents with `z_i == 1` exactly.
    pub fn stubborn_set(&self) -> NodeSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 1.0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn has_stubborn(&self) -> bool {
        self.0.contains(&1.0)
    }

    /// Whether some agent other than `i` is stubborn.
    pub fn others_stubborn(&self, i: usize) -> bool {
        self.0.iter().enumerate().any(|(j, &v)| j != i && v == 1.0)
    }
}

impl TryFrom<Vec<f64>> for SelfConfidenceProfile {
    type Error = Error;

    fn try_from(z: Vec<f64>) -> Result<Self> {
        Self::new(z)
    }
}

impl From<SelfConfidenceProfile> for Vec<f64> {
    fn from(z: SelfConfidenceProfile) -> Self {
        z.0
    }
}

/// Free function form of [`SelfConfidenceProfile::stubborn_set`].
pub fn stubborn_set(z: &SelfConfidenceProfile) -> NodeSet {
    z.stubborn_set()
}

/// Shape of the measurement noise `ξ` drawn by the simulators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseKind {
    #[default]
    Gaussian,
    /// Uniform on `[-√(3σ²), √(3σ²)]`, matching the variance.
    Uniform,
}

/// Initial measurements `x_i(0) = θ + ξ_i` with uncorrelated zero-mean `ξ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub theta: f64,
    sigma2: Vec<f64>,
    #[serde(default)]
    pub kind: NoiseKind,
}

impl NoiseModel {
    pub fn new(theta: f64, sigma2: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = sigma2
            .iter()
            .enumerate()
            .find(|(_, v)| !(v.is_finite() && **v > 0.0))
        {
            return Err(Error::InvalidNoise { index, value });
        }
        Ok(Self {
            theta,
            sigma2,
            kind: NoiseKind::Gaussian,
        })
    }

    pub fn with_kind(mut self, kind: NoiseKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn sigma2(&self) -> &[f64] {
        &self.sigma2
    }

    pub fn n(&self) -> usize {
        self.sigma2.len()
    }

    fn sample_initial<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.sigma2
            .iter()
            .map(|&s2| {
                let xi = match self.kind {
                    NoiseKind::Gaussian => Normal::new(0.0, s2.sqrt())
                        .expect("positive finite std dev")
                        .sample(rng),
                    NoiseKind::Uniform => {
                        let a = (3.0 * s2).sqrt();
                        Uniform::new_inclusive(-a, a)
                            .expect("finite bounds")
                            .sample(rng)
                    }
                };
                self.theta + xi
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Consensus,
    Absorption,
}

/// `H(z) = lim W(z)^t`.
#[derive(Debug, Clone)]
pub struct LimitMatrix {
    pub h: DMatrix<f64>,
    pub branch: Branch,
    pub stubborn: NodeSet,
}

impl LimitMatrix {
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.h.row(i).iter().copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OpinionState {
    pub x: Vec<f64>,
    pub t: u64,
}

pub(crate) fn check_dims(net: &InfluenceNetwork, z: &SelfConfidenceProfile) -> Result<()> {
    if z.n() != net.n() {
        return Err(Error::DimensionMismatch {
            what: "self-confidence profile",
            expected: net.n(),
            got: z.n(),
        });
    }
    Ok(())
}

pub(crate) fn check_noise(net: &InfluenceNetwork, noise: &NoiseModel) -> Result<()> {
    if noise.n() != net.n() {
        return Err(Error::DimensionMismatch {
            what: "noise variances",
            expected: net.n(),
            got: noise.n(),
        });
    }
    Ok(())
}

/// `W(z) = (I - [z]) P + [z]`.
pub fn interaction_matrix(
    net: &InfluenceNetwork,
    z: &SelfConfidenceProfile,
) -> Result<DMatrix<f64>> {
    check_dims(net, z)?;
    let p = net.matrix();
    let n = net.n();
    Ok(DMatrix::from_fn(n, n, |i, j| {
        let zi = z.get(i);
        let off = (1.0 - zi) * p[(i, j)];
        if i == j {
            zi + off
        } else {
            off
        }
    }))
}

fn apply(w: &DMatrix<f64>, x: &[f64], out: &mut [f64]) {
    let n = x.len();
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for j in 0..n {
            acc += w[(i, j)] * x[j];
        }
        *o = acc;
    }
}

/// One synchronous update `x(t+1) = W(z) x(t)`.
pub fn step(
    net: &InfluenceNetwork,
    z: &SelfConfidenceProfile,
    state: &OpinionState,
) -> Result<OpinionState> {
    let w = interaction_matrix(net, z)?;
    if state.x.len() != net.n() {
        return Err(Error::DimensionMismatch {
            what: "opinion vector",
            expected: net.n(),
            got: state.x.len(),
        });
    }
    let mut x = vec![0.0; net.n()];
    apply(&w, &state.x, &mut x);
    // W is the identity on stubborn rows; copy exactly rather than trust
    // the multiply-add.
    for i in z.stubborn_set().iter() {
        x[i] = state.x[i];
    }
    Ok(OpinionState { x, t: state.t + 1 })
}

/// Unnormalised consensus weights `w_i = π_i / (1 - z_i)`.
fn consensus_weights(net: &InfluenceNetwork, z: &SelfConfidenceProfile) -> DVector<f64> {
    DVector::from_iterator(
        net.n(),
        net.centrality()
            .iter()
            .zip(z.as_slice())
            .map(|(pi, zi)| pi / (1.0 - zi)),
    )
}

/// Social power `p(z) = (I - [z])^{-1} π / γ(z)`, defined when nobody is
/// stubborn.
pub fn social_power(net: &InfluenceNetwork, z: &SelfConfidenceProfile) -> Result<DVector<f64>> {
    check_dims(net, z)?;
    let stubborn = z.stubborn_set();
    if !stubborn.is_empty() {
        return Err(Error::StubbornPresent {
            agents: stubborn.to_vec(),
        });
    }
    let w = consensus_weights(net, z);
    let total = w.sum();
    Ok(w / total)
}

/// Computes `H(z)`.
///
/// With no stubborn agents `H = 1 p(z)'`. Otherwise, with `R` the regular
/// agents and `S` the stubborn ones, `H[R×S] = (I - Q)^{-1} B` where
/// `Q = W(z)[R×R]` and `B = W(z)[R×S]`. Row `i` of `I - Q` and of `B` share
/// the factor `1 - z_i`, so the solve is carried out on the equilibrated
/// system `(I - P[R×R]) X = P[R×S]`, which has the same solution and does
/// not lose digits when `z_i` is close to one.
pub fn limit_matrix(net: &InfluenceNetwork, z: &SelfConfidenceProfile) -> Result<LimitMatrix> {
    check_dims(net, z)?;
    let n = net.n();
    let stubborn = z.stubborn_set();

    if stubborn.is_empty() {
        let p = social_power(net, z)?;
        let h = DMatrix::from_fn(n, n, |_, j| p[j]);
        return Ok(LimitMatrix {
            h,
            branch: Branch::Consensus,
            stubborn,
        });
    }

    let s: Vec<usize> = stubborn.to_vec();
    let r: Vec<usize> = (0..n).filter(|i| !stubborn.contains(*i)).collect();
    let mut h = DMatrix::zeros(n, n);
    for &i in &s {
        h[(i, i)] = 1.0;
    }

    if !r.is_empty() {
        let p = net.matrix();
        let m = DMatrix::from_fn(r.len(), r.len(), |a, b| {
            let delta = if a == b { 1.0 } else { 0.0 };
            delta - p[(r[a], r[b])]
        });
        let rhs = DMatrix::from_fn(r.len(), s.len(), |a, b| p[(r[a], s[b])]);
        let x = m
            .lu()
            .solve(&rhs)
            .ok_or_else(|| Error::SolverFailure("I - Q is singular".into()))?;

        for (a, &i) in r.iter().enumerate() {
            let mut row_sum = 0.0;
            for (b, &j) in s.iter().enumerate() {
                let mut v = x[(a, b)];
                if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&v) {
                    return Err(Error::SolverFailure(format!(
                        "absorption probability H[{i}][{j}] = {v} out of range"
                    )));
                }
                v = v.clamp(0.0, 1.0);
                h[(i, j)] = v;
                row_sum += v;
            }
            if row_sum <= 0.0 {
                return Err(Error::SolverFailure(format!("row {i} of H is zero")));
            }
            for &j in &s {
                h[(i, j)] /= row_sum;
            }
        }
    }

    let w = interaction_matrix(net, z)?;
    let residual = (&w * &h - &h).amax();
    if residual > FIXED_POINT_RESIDUAL_TOL {
        return Err(Error::SolverFailure(format!(
            "fixed-point residual {residual:e} exceeds {FIXED_POINT_RESIDUAL_TOL:e}"
        )));
    }

    Ok(LimitMatrix {
        h,
        branch: Branch::Absorption,
        stubborn,
    })
}

/// Aggregates `A(z) = Σ π_j/(1-z_j)` and `B(z) = Σ π_j²σ_j²/(1-z_j)²`,
/// optionally skipping one agent.
pub(crate) fn weighted_sums(
    net: &InfluenceNetwork,
    noise: &NoiseModel,
    z: &SelfConfidenceProfile,
    skip: Option<usize>,
) -> (f64, f64) {
    let pi = net.centrality();
    let s2 = noise.sigma2();
    let mut a = 0.0;
    let mut b = 0.0;
    for j in (0..net.n()).filter(|&j| Some(j) != skip) {
        let w = pi[j] / (1.0 - z.get(j));
        a += w;
        b += w * w * s2[j];
    }
    (a, b)
}

/// Asymptotic estimation variances `υ_i(z) = Σ_j H_ij(z)² σ_j²`.
pub fn estimation_variances(
    net: &InfluenceNetwork,
    z: &SelfConfidenceProfile,
    noise: &NoiseModel,
) -> Result<Vec<f64>> {
    check_noise(net, noise)?;
    let lm = limit_matrix(net, z)?;
    Ok(variances_from_limit(&lm, noise))
}

pub(crate) fn variances_from_limit(lm: &LimitMatrix, noise: &NoiseModel) -> Vec<f64> {
    let s2 = noise.sigma2();
    let n = lm.h.nrows();
    (0..n)
        .map(|i| (0..n).map(|j| lm.h[(i, j)].powi(2) * s2[j]).sum())
        .collect()
}

/// Common cost `V(z) = B(z) / A(z)²` shared by all agents when nobody is
/// stubborn.
pub fn common_cost(
    net: &InfluenceNetwork,
    z: &SelfConfidenceProfile,
    noise: &NoiseModel,
) -> Result<f64> {
    check_dims(net, z)?;
    check_noise(net, noise)?;
    let stubborn = z.stubborn_set();
    if !stubborn.is_empty() {
        return Err(Error::StubbornPresent {
            agents: stubborn.to_vec(),
        });
    }
    let (a, b) = weighted_sums(net, noise, z, None);
    Ok(b / (a * a))
}

/// Draws `x(0) = θ1 + ξ` from `seed` and iterates `x(t+1) = W(z) x(t)` up to
/// `t_max`, returning every state including `x(0)`.
pub fn simulate_opinions(
    net: &InfluenceNetwork,
    z: &SelfConfidenceProfile,
    noise: &NoiseModel,
    seed: u64,
    t_max: u64,
) -> Result<Vec<OpinionState>> {
    check_noise(net, noise)?;
    let w = interaction_matrix(net, z)?;
    let stubborn = z.stubborn_set();
    let mut rng = seeded_rng(seed, 0);
    let mut x = noise.sample_initial(&mut rng);
    let mut out = Vec::with_capacity(t_max as usize + 1);
    out.push(OpinionState { x: x.clone(), t: 0 });
    let mut next = vec![0.0; net.n()];
    for t in 1..=t_max {
        apply(&w, &x, &mut next);
        for i in stubborn.iter() {
            next[i] = x[i];
        }
        std::mem::swap(&mut x, &mut next);
        out.push(OpinionState { x: x.clone(), t });
    }
    Ok(out)
}

/// Empirical spread of `x_i(t_max) - θ` over independent noise draws.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateStats {
    pub replicates: u64,
    pub t_max: u64,
    pub mean_error: Vec<f64>,
    /// Mean of `(x_i(t_max) - θ)²`; θ is known, so no degrees of freedom
    /// are lost.
    pub empirical_variance: Vec<f64>,
    /// Standard error of `empirical_variance`.
    pub standard_error: Vec<f64>,
    pub predicted_variance: Vec<f64>,
}

/// Runs `replicates` independent realisations (replicate `r` uses stream `r`
/// of the generator seeded with `seed`) and compares the spread of
/// `x(t_max)` with `υ(z)`.
pub fn replicate_opinions(
    net: &InfluenceNetwork,
    z: &SelfConfidenceProfile,
    noise: &NoiseModel,
    seed: u64,
    t_max: u64,
    replicates: u64,
) -> Result<ReplicateStats> {
    if replicates == 0 {
        return Err(Error::Empty("replicates"));
    }
    check_noise(net, noise)?;
    let w = interaction_matrix(net, z)?;
    let predicted = estimation_variances(net, z, noise)?;
    let stubborn = z.stubborn_set();
    let n = net.n();

    let mut sum = vec![0.0; n];
    let mut sum2 = vec![0.0; n];
    let mut sum4 = vec![0.0; n];
    let mut next = vec![0.0; n];
    for r in 0..replicates {
        let mut rng = seeded_rng(seed, r);
        let mut x = noise.sample_initial(&mut rng);
        for _ in 0..t_max {
            apply(&w, &x, &mut next);
            for i in stubborn.iter() {
                next[i] = x[i];
            }
            std::mem::swap(&mut x, &mut next);
        }
        for i in 0..n {
            let e = x[i] - noise.theta;
            let e2 = e * e;
            sum[i] += e;
            sum2[i] += e2;
            sum4[i] += e2 * e2;
        }
    }

    let m = replicates as f64;
    let mean_error = sum.iter().map(|s| s / m).collect();
    let empirical_variance: Vec<f64> = sum2.iter().map(|s| s / m).collect();
    let standard_error = sum4
        .iter()
        .zip(&empirical_variance)
        .map(|(s4, v)| ((s4 / m - v * v).max(0.0) / m).sqrt())
        .collect();
    Ok(ReplicateStats {
        replicates,
        t_max,
        mean_error,
        empirical_variance,
        standard_error,
        predicted_variance: predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{net4, noise4, sym2};

    fn z(v: &[f64]) -> SelfConfidenceProfile {
        SelfConfidenceProfile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn stubborn_set_examples() {
        assert!(z(&[0.5; 4]).stubborn_set().is_empty());
        assert_eq!(z(&[1.0, 0.3]).stubborn_set().to_vec(), vec![0]);
        assert_eq!(z(&[1.0, 1.0, 0.0]).stubborn_set().to_vec(), vec![0, 1]);
        // 1 - 1e-17 rounds to 1.0 and is therefore stubborn.
        assert_eq!(z(&[1.0 - 1e-17, 0.0]).stubborn_set().to_vec(), vec![0]);
    }

    #[test]
    fn profile_rejects_out_of_range() {
        assert!(matches!(
            SelfConfidenceProfile::new(vec![0.2, 1.5]),
            Err(Error::InvalidProfile { index: 1, .. })
        ));
        assert!(SelfConfidenceProfile::new(vec![f64::NAN]).is_err());
        assert!(NoiseModel::new(0.0, vec![1.0, 0.0]).is_err());
        assert!(NoiseModel::new(0.0, vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn interaction_matrix_examples() {
        let net = net4();
        let w0 = interaction_matrix(&net, &z(&[0.0; 4])).unwrap();
        assert_eq!(&w0, net.matrix());
        let w1 = interaction_matrix(&net, &z(&[1.0; 4])).unwrap();
        assert_eq!(w1, DMatrix::identity(4, 4));

        let w = interaction_matrix(&net, &z(&[0.5, 0.0, 0.0, 0.0])).unwrap();
        let row0: Vec<f64> = w.row(0).iter().copied().collect();
        for (got, want) in row0.iter().zip([0.5, 0.05, 0.1, 0.35]) {
            assert!((got - want).abs() < 1e-15);
        }
        for i in 1..4 {
            assert_eq!(w.row(i), net.matrix().row(i));
        }
        assert!(interaction_matrix(&net, &z(&[0.0; 3])).is_err());
    }

    #[test]
    fn step_examples() {
        let net = net4();
        let ones = OpinionState {
            x: vec![1.0; 4],
            t: 0,
        };
        let next = step(&net, &z(&[0.3, 0.9, 0.0, 1.0]), &ones).unwrap();
        for v in &next.x {
            assert!((v - 1.0).abs() < 1e-15);
        }
        assert_eq!(next.t, 1);

        let x = OpinionState {
            x: vec![0.3, -2.0, 7.0, 1.5],
            t: 4,
        };
        assert_eq!(step(&net, &z(&[1.0; 4]), &x).unwrap().x, x.x);

        let e1 = OpinionState {
            x: vec![1.0, 0.0, 0.0, 0.0],
            t: 0,
        };
        let next = step(&net, &z(&[0.0; 4]), &e1).unwrap();
        assert_eq!(next.x, vec![0.0, 0.25, 0.5, 0.2]);
    }

    #[test]
    fn limit_matrix_examples() {
        let net = net4();
        for i in 0..4 {
            let mut v = [0.2; 4];
            v[i] = 1.0;
            let lm = limit_matrix(&net, &z(&v)).unwrap();
            assert_eq!(lm.branch, Branch::Absorption);
            for r in 0..4 {
                for c in 0..4 {
                    let want = if c == i { 1.0 } else { 0.0 };
                    assert!((lm.h[(r, c)] - want).abs() < 1e-12);
                }
            }
        }

        let pi = net.centrality();
        for profile in [[0.0; 4], [0.5; 4]] {
            let lm = limit_matrix(&net, &z(&profile)).unwrap();
            assert_eq!(lm.branch, Branch::Consensus);
            for r in 0..4 {
                for c in 0..4 {
                    assert!((lm.h[(r, c)] - pi[c]).abs() < 1e-12);
                }
            }
        }

        let all = limit_matrix(&net, &z(&[1.0; 4])).unwrap();
        assert_eq!(all.h, DMatrix::identity(4, 4));
    }

    #[test]
    fn absorption_structure() {
        let net = net4();
        let lm = limit_matrix(&net, &z(&[1.0, 0.4, 1.0, 0.7])).unwrap();
        assert_eq!(lm.stubborn.to_vec(), vec![0, 2]);
        for r in 0..4 {
            assert!((lm.h.row(r).sum() - 1.0).abs() < 1e-12);
            assert_eq!(lm.h[(r, 1)], 0.0);
            assert_eq!(lm.h[(r, 3)], 0.0);
        }
        assert_eq!(lm.row(0), vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(lm.row(2), vec![0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn social_power_examples() {
        let net = net4();
        let p = social_power(&net, &z(&[0.0; 4])).unwrap();
        assert!((p - net.centrality()).amax() < 1e-15);
        let p = social_power(&net, &z(&[0.8; 4])).unwrap();
        assert!((p - net.centrality()).amax() < 1e-14);

        let (net2, _) = sym2(1.0, 1.0);
        let zz = z(&[0.75, 0.0]);
        let p = social_power(&net2, &zz).unwrap();
        assert!((p[0] - 0.8).abs() < 1e-15 && (p[1] - 0.2).abs() < 1e-15);
        // p(z)' W(z) = p(z)'
        let w = interaction_matrix(&net2, &zz).unwrap();
        assert!((w.transpose() * &p - &p).amax() < 1e-15);

        assert!(matches!(
            social_power(&net, &z(&[0.0, 1.0, 0.0, 0.0])),
            Err(Error::StubbornPresent { agents }) if agents == vec![1]
        ));
    }

    #[test]
    fn variance_examples() {
        let net = net4();
        let noise = noise4();
        let v = estimation_variances(&net, &z(&[1.0; 4]), &noise).unwrap();
        assert_eq!(v, noise.sigma2());

        let v = estimation_variances(&net, &z(&[0.1, 1.0, 0.3, 0.0]), &noise).unwrap();
        for vi in v {
            assert!((vi - noise.sigma2()[1]).abs() < 1e-15);
        }

        let pi = net.centrality();
        let want: f64 = (0..4).map(|j| pi[j] * pi[j] * noise.sigma2()[j]).sum();
        let v = estimation_variances(&net, &z(&[0.0; 4]), &noise).unwrap();
        for vi in &v {
            assert!((vi - want).abs() < 1e-15);
        }
        let c = common_cost(&net, &z(&[0.0; 4]), &noise).unwrap();
        assert!((c - v[0]).abs() <= 1e-12 * c);
    }

    #[test]
    fn common_cost_examples() {
        let (net, noise) = sym2(1.0, 1.0);
        assert!((common_cost(&net, &z(&[0.0, 0.0]), &noise).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(
            common_cost(&net, &z(&[1.0, 0.0]), &noise),
            Err(Error::StubbornPresent { .. })
        ));
    }

    #[test]
    fn simulate_trivial_cases() {
        let net = net4();
        let tiny = NoiseModel::new(3.0, vec![1e-12; 4]).unwrap();
        let traj = simulate_opinions(&net, &z(&[0.2; 4]), &tiny, 5, 50).unwrap();
        assert_eq!(traj.len(), 51);
        for s in &traj {
            for x in &s.x {
                assert!((x - 3.0).abs() < 1e-5);
            }
        }

        let traj = simulate_opinions(&net, &z(&[1.0; 4]), &noise4(), 9, 20).unwrap();
        for s in &traj {
            assert_eq!(s.x, traj[0].x);
        }

        let a = simulate_opinions(&net, &z(&[0.0; 4]), &noise4(), 11, 10).unwrap();
        let b = simulate_opinions(&net, &z(&[0.0; 4]), &noise4(), 11, 10).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_noise_matches_variance() {
        let net = net4();
        let noise = noise4().with_kind(NoiseKind::Uniform);
        let stats = replicate_opinions(&net, &z(&[1.0; 4]), &noise, 3, 0, 40_000).unwrap();
        for i in 0..4 {
            let dev = (stats.empirical_variance[i] - stats.predicted_variance[i]).abs();
            assert!(dev < 4.0 * stats.standard_error[i], "agent {i}: {stats:?}");
        }
    }
}
