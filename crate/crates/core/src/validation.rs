//! Cross-checking the two formulations against each other and against the
//! closed-form planar 2R model.
//!
//! The percentage error of joint `j` on one sample is
//! `100 |τ_measured - τ_baseline| / |τ_baseline|`. Samples whose baseline
//! magnitude is below [`BASELINE_FLOOR`] are excluded from the statistics and
//! counted separately.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chain::SerialChain;
use crate::error::{Error, Result};
use crate::fixtures::TwoLinkParams;
use crate::{dqne, gplc};

/// Baselines smaller than this (N·m or N) are not used as denominators.
pub const BASELINE_FLOOR: f64 = 1e-9;

/// Joint torques of the planar 2R arm from its Euler-Lagrange equations.
///
/// Angles are measured from the x-axis, gravity acts along `-ĵ`.
pub fn analytical_two_link(p: &TwoLinkParams, q: [f64; 2], qd: [f64; 2], qdd: [f64; 2]) -> [f64; 2] {
    let (c2, s2) = (q[1].cos(), q[1].sin());
    let m11 =
        p.m1 * p.lc1 * p.lc1 + p.i1 + p.m2 * (p.l1 * p.l1 + p.lc2 * p.lc2 + 2.0 * p.l1 * p.lc2 * c2) + p.i2;
    let m12 = p.m2 * (p.lc2 * p.lc2 + p.l1 * p.lc2 * c2) + p.i2;
    let m22 = p.m2 * p.lc2 * p.lc2 + p.i2;
    let h = p.m2 * p.l1 * p.lc2 * s2;
    let g2 = p.m2 * p.lc2 * p.g * (q[0] + q[1]).cos();
    let g1 = (p.m1 * p.lc1 + p.m2 * p.l1) * p.g * q[0].cos() + g2;
    [
        m11 * qdd[0] + m12 * qdd[1] - h * (2.0 * qd[0] * qd[1] + qd[1] * qd[1]) + g1,
        m12 * qdd[0] + m22 * qdd[1] + h * qd[0] * qd[0] + g2,
    ]
}

/// Inverse-dynamics engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Recursive Newton-Euler.
    Dqne,
    /// Gauss-principle Euler-Lagrange model.
    Dqgp,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Dqne => "dqne",
            Method::Dqgp => "dqgp",
        }
    }

    pub fn inverse_dynamics(
        self,
        chain: &SerialChain,
        q: &[f64],
        qdot: &[f64],
        qddot: &[f64],
    ) -> Result<Vec<f64>> {
        match self {
            Method::Dqne => dqne::inverse_dynamics(chain, q, qdot, qddot),
            Method::Dqgp => gplc::el_inverse_dynamics(chain, q, qdot, qddot),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dqne" => Ok(Method::Dqne),
            "dqgp" => Ok(Method::Dqgp),
            other => Err(Error::Input(format!("unknown method '{other}'"))),
        }
    }
}

/// Uniform sampling boxes for joint positions, velocities and accelerations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRanges {
    pub q: (f64, f64),
    pub qdot: (f64, f64),
    pub qddot: (f64, f64),
}

impl Default for SampleRanges {
    fn default() -> Self {
        Self {
            q: (-PI, PI),
            qdot: (-2.0, 2.0),
            qddot: (-5.0, 5.0),
        }
    }
}

/// One joint-space sample.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub q: Vec<f64>,
    pub qdot: Vec<f64>,
    pub qddot: Vec<f64>,
}

/// Deterministic sample stream (ChaCha8 seeded from a `u64`).
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
    ranges: SampleRanges,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self::with_ranges(seed, SampleRanges::default())
    }

    pub fn with_ranges(seed: u64, ranges: SampleRanges) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            ranges,
        }
    }

    fn draw(&mut self, n: usize, (lo, hi): (f64, f64)) -> Vec<f64> {
        (0..n).map(|_| self.rng.random_range(lo..=hi)).collect()
    }

    /// Draws `q`, then `q̇`, then `q̈`, each with `n` entries.
    pub fn sample(&mut self, n: usize) -> Sample {
        let q = self.draw(n, self.ranges.q);
        let qdot = self.draw(n, self.ranges.qdot);
        let qddot = self.draw(n, self.ranges.qddot);
        Sample { q, qdot, qddot }
    }
}

/// Error statistics of one joint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointErrorStats {
    /// Mean percentage error.
    pub mean_percent: f64,
    /// Population standard deviation of the percentage error.
    pub std_percent: f64,
    /// Largest relative (not percentage) error.
    pub max_relative: f64,
    /// Samples used.
    pub used: usize,
    /// Samples skipped because the baseline was below the floor.
    pub excluded: usize,
}

/// Collects per-joint percentage errors.
#[derive(Debug, Clone)]
pub struct ErrorAccumulator {
    errors: Vec<Vec<f64>>,
    excluded: Vec<usize>,
}

impl ErrorAccumulator {
    pub fn new(joints: usize) -> Self {
        Self {
            errors: vec![Vec::new(); joints],
            excluded: vec![0; joints],
        }
    }

    pub fn push(&mut self, measured: &[f64], baseline: &[f64]) {
        for (j, (&m, &b)) in measured.iter().zip(baseline).enumerate() {
            if b.abs() < BASELINE_FLOOR {
                self.excluded[j] += 1;
            } else {
                self.errors[j].push(100.0 * (m - b).abs() / b.abs());
            }
        }
    }

    /// Statistics in joint order. Sums run in sample order.
    pub fn finish(&self) -> Vec<JointErrorStats> {
        self.errors
            .iter()
            .zip(&self.excluded)
            .map(|(e, &excluded)| {
                let used = e.len();
                if used == 0 {
                    return JointErrorStats {
                        mean_percent: 0.0,
                        std_percent: 0.0,
                        max_relative: 0.0,
                        used,
                        excluded,
                    };
                }
                let mean = e.iter().sum::<f64>() / used as f64;
                let var = e.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / used as f64;
                let max = e.iter().copied().fold(0.0, f64::max);
                JointErrorStats {
                    mean_percent: mean,
                    std_percent: var.sqrt(),
                    max_relative: max / 100.0,
                    used,
                    excluded,
                }
            })
            .collect()
    }
}

/// Reference the engines are compared against.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Baseline {
    /// The closed-form planar 2R model; the chain must be the matching arm.
    TwoLink(TwoLinkParams),
    /// The recursive Newton-Euler engine.
    Dqne,
}

/// Error statistics of one engine against the baseline.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodReport {
    pub method: Method,
    pub joints: Vec<JointErrorStats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub robot: String,
    pub baseline: &'static str,
    pub samples: usize,
    pub seed: u64,
    pub methods: Vec<MethodReport>,
}

impl ValidationReport {
    /// Largest per-joint mean percentage error over all engines.
    pub fn worst_mean_percent(&self) -> f64 {
        self.methods
            .iter()
            .flat_map(|m| m.joints.iter().map(|j| j.mean_percent))
            .fold(0.0, f64::max)
    }

    pub fn worst_max_relative(&self) -> f64 {
        self.methods
            .iter()
            .flat_map(|m| m.joints.iter().map(|j| j.max_relative))
            .fold(0.0, f64::max)
    }

    /// True if no per-joint mean percentage error exceeds `threshold`.
    pub fn passes(&self, threshold_percent: f64) -> bool {
        self.worst_mean_percent() <= threshold_percent
    }
}

/// Draws `samples` random motions and compares the engines to `baseline`.
///
/// Against the 2R model both engines are checked; against Newton-Euler only
/// the Gauss-principle engine is.
pub fn validate(
    chain: &SerialChain,
    baseline: Baseline,
    samples: usize,
    seed: u64,
) -> Result<ValidationReport> {
    if samples == 0 {
        return Err(Error::Input("at least one sample is required".into()));
    }
    let n = chain.dof();
    if matches!(baseline, Baseline::TwoLink(_)) && n != 2 {
        return Err(Error::Input(format!(
            "the two-link baseline needs a 2-joint chain, got {n}"
        )));
    }
    let methods: &[Method] = match baseline {
        Baseline::TwoLink(_) => &[Method::Dqne, Method::Dqgp],
        Baseline::Dqne => &[Method::Dqgp],
    };
    let mut acc: Vec<ErrorAccumulator> = methods.iter().map(|_| ErrorAccumulator::new(n)).collect();
    let mut sampler = Sampler::new(seed);
    for _ in 0..samples {
        let s = sampler.sample(n);
        let reference = match baseline {
            Baseline::TwoLink(p) => analytical_two_link(
                &p,
                [s.q[0], s.q[1]],
                [s.qdot[0], s.qdot[1]],
                [s.qddot[0], s.qddot[1]],
            )
            .to_vec(),
            Baseline::Dqne => dqne::inverse_dynamics(chain, &s.q, &s.qdot, &s.qddot)?,
        };
        for (m, a) in methods.iter().zip(acc.iter_mut()) {
            let tau = m.inverse_dynamics(chain, &s.q, &s.qdot, &s.qddot)?;
            a.push(&tau, &reference);
        }
    }
    Ok(ValidationReport {
        robot: chain.name().to_string(),
        baseline: match baseline {
            Baseline::TwoLink(_) => "analytical",
            Baseline::Dqne => "dqne",
        },
        samples,
        seed,
        methods: methods
            .iter()
            .zip(&acc)
            .map(|(&method, a)| MethodReport {
                method,
                joints: a.finish(),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn static_two_link_moment_balance() {
        let p = TwoLinkParams::default();
        let tau = analytical_two_link(&p, [0.0, 0.0], [0.0; 2], [0.0; 2]);
        let t1 = (p.m1 * p.lc1 + p.m2 * (p.l1 + p.lc2)) * p.g;
        let t2 = p.m2 * p.lc2 * p.g;
        assert!((tau[0] - t1).abs() < 1e-12);
        assert!((tau[1] - t2).abs() < 1e-12);
    }

    #[test]
    fn massless_second_link_reduces_to_pendulum() {
        let p = TwoLinkParams {
            m2: 0.0,
            i2: 0.0,
            ..TwoLinkParams::default()
        };
        let (q, qd, qdd) = (0.7, 1.3, -2.0);
        let tau = analytical_two_link(&p, [q, 0.4], [qd, -0.5], [qdd, 1.0]);
        let expected = (p.m1 * p.lc1 * p.lc1 + p.i1) * qdd + p.m1 * p.lc1 * p.g * q.cos();
        assert!((tau[0] - expected).abs() < 1e-12);
        assert_eq!(tau[1], 0.0);
    }

    #[test]
    fn exclusion_rule() {
        let mut acc = ErrorAccumulator::new(2);
        acc.push(&[1.0, 1e-12], &[2.0, 0.0]);
        acc.push(&[3.0, 1.0], &[2.0, 1.0]);
        let s = acc.finish();
        assert_eq!(s[0].used, 2);
        assert!((s[0].mean_percent - 50.0).abs() < 1e-12);
        assert!(s[0].std_percent.abs() < 1e-12);
        assert!((s[0].max_relative - 0.5).abs() < 1e-15);
        assert_eq!((s[1].used, s[1].excluded), (1, 1));
        assert_eq!(s[1].mean_percent, 0.0);
    }

    #[test]
    fn sampler_is_deterministic_and_in_range() {
        let a = Sampler::new(42).sample(7);
        let b = Sampler::new(42).sample(7);
        assert_eq!(a, b);
        assert!(a.q.iter().all(|v| v.abs() <= PI));
        assert!(a.qdot.iter().all(|v| v.abs() <= 2.0));
        assert!(a.qddot.iter().all(|v| v.abs() <= 5.0));
        assert_ne!(Sampler::new(43).sample(7), a);
    }

    #[test]
    fn method_names_round_trip() {
        for m in [Method::Dqne, Method::Dqgp] {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("rnea".parse::<Method>().is_err());
    }

    #[test]
    fn zero_samples_is_an_error() {
        let chain = crate::fixtures::two_link();
        assert!(validate(&chain, Baseline::Dqne, 0, 1).is_err());
        let seven = crate::fixtures::seven_dof();
        assert!(validate(&seven, Baseline::TwoLink(TwoLinkParams::default()), 1, 1).is_err());
    }
}
