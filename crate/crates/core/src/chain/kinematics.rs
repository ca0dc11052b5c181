use crate::dqalg::{Pose, Twist};
use crate::error::Result;

use super::SerialChain;

/// Forward kinematics of a chain at one configuration.
///
/// Per-link accessors take a 0-based index `k`, which refers to link `k + 1`.
#[derive(Debug, Clone)]
pub struct KinematicState {
    q: Vec<f64>,
    frames: Vec<Pose>,
    coms: Vec<Pose>,
    joint_local: Vec<Pose>,
    com_local: Vec<Pose>,
    com_step: Vec<Pose>,
    screws: Vec<Twist>,
    screw_rates: Vec<Twist>,
    world_screws: Vec<Twist>,
}

/// Poses of every link frame and center-of-mass frame at configuration `q`.
pub fn fkine(chain: &SerialChain, q: &[f64]) -> Result<KinematicState> {
    chain.check_joint_vector("q", q)?;
    let n = chain.dof();
    let mut state = KinematicState {
        q: q.to_vec(),
        frames: Vec::with_capacity(n + 1),
        coms: Vec::with_capacity(n),
        joint_local: Vec::with_capacity(n),
        com_local: Vec::with_capacity(n),
        com_step: Vec::with_capacity(n),
        screws: Vec::with_capacity(n),
        screw_rates: Vec::with_capacity(n),
        world_screws: Vec::with_capacity(n),
    };
    state.frames.push(Pose::IDENTITY);
    let mut prev_com = Pose::IDENTITY;
    for (link, &qi) in chain.links().iter().zip(q) {
        let prev = *state.frames.last().unwrap();
        let local = link.joint.transform(qi) * link.params.dh.transform();
        let com_local = local * link.params.com;
        let frame = prev * local;
        let com = frame * link.params.com;
        let s = link.joint.screw(qi)?;
        state.world_screws.push(prev.adjoint(&s));
        state.screws.push(s);
        state.screw_rates.push(link.joint.screw_rate(qi)?);
        state.com_step.push(com.inverse() * prev_com);
        state.joint_local.push(local);
        state.com_local.push(com_local);
        state.frames.push(frame);
        state.coms.push(com);
        prev_com = com;
    }
    Ok(state)
}

impl KinematicState {
    pub fn dof(&self) -> usize {
        self.q.len()
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// `x_i^0` for `i = 0..=n`; `frame(0)` is the base.
    pub fn frame(&self, i: usize) -> Pose {
        self.frames[i]
    }

    /// `x_n^0`.
    pub fn end_effector(&self) -> Pose {
        *self.frames.last().unwrap()
    }

    /// `x_{cᵢ}^0`.
    pub fn com_pose(&self, k: usize) -> Pose {
        self.coms[k]
    }

    /// `x_i^{i-1}`.
    pub fn joint_local(&self, k: usize) -> Pose {
        self.joint_local[k]
    }

    /// `x_{cᵢ}^{i-1}`.
    pub fn com_local(&self, k: usize) -> Pose {
        self.com_local[k]
    }

    /// `x_{c_{i-1}}^{cᵢ}`, with `c₀` the base frame.
    pub fn com_step(&self, k: usize) -> Pose {
        self.com_step[k]
    }

    /// Joint screw `sᵢ(qᵢ)` in frame `i-1`.
    pub fn screw(&self, k: usize) -> Twist {
        self.screws[k]
    }

    /// `∂sᵢ/∂qᵢ` in frame `i-1`.
    pub fn screw_rate(&self, k: usize) -> Twist {
        self.screw_rates[k]
    }

    /// Joint screw in the base frame, `Ad(x_{i-1}^0) sᵢ`.
    pub fn world_screw(&self, k: usize) -> Twist {
        self.world_screws[k]
    }
}
