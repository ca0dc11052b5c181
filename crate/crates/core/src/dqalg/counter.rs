//! Scalar-operation accounting for the algebra kernels.
//!
//! Every kernel in [`crate::dqalg`] routes its floating-point multiplies and
//! adds through an [`OpCounter`]. The counter is always an explicit argument;
//! [`Uncounted`] compiles down to the bare arithmetic, [`OpTally`] records
//! how many operations were issued.

/// Sink for scalar arithmetic. Subtraction is tallied as an addition and
/// negation as a multiplication by -1.
pub trait OpCounter {
    fn mul(&mut self, a: f64, b: f64) -> f64;
    fn add(&mut self, a: f64, b: f64) -> f64;

    #[inline(always)]
    fn sub(&mut self, a: f64, b: f64) -> f64 {
        self.add(a, -b)
    }

    #[inline(always)]
    fn neg(&mut self, a: f64) -> f64 {
        self.mul(-1.0, a)
    }
}

/// Plain arithmetic, nothing recorded.
#[derive(Debug, Default, Clone, Copy)]
pub struct Uncounted;

impl OpCounter for Uncounted {
    #[inline(always)]
    fn mul(&mut self, a: f64, b: f64) -> f64 {
        a * b
    }

    #[inline(always)]
    fn add(&mut self, a: f64, b: f64) -> f64 {
        a + b
    }

    #[inline(always)]
    fn sub(&mut self, a: f64, b: f64) -> f64 {
        a - b
    }

    #[inline(always)]
    fn neg(&mut self, a: f64) -> f64 {
        -a
    }
}

/// Running totals of scalar multiplications and additions.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpTally {
    pub mults: u64,
    pub adds: u64,
}

impl OpTally {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs `f` against a fresh tally and returns its result with the counts.
    pub fn measure<T>(f: impl FnOnce(&mut OpTally) -> T) -> (T, OpTally) {
        let mut tally = OpTally::new();
        let out = f(&mut tally);
        (out, tally)
    }
}

impl OpCounter for OpTally {
    #[inline]
    fn mul(&mut self, a: f64, b: f64) -> f64 {
        self.mults += 1;
        a * b
    }

    #[inline]
    fn add(&mut self, a: f64, b: f64) -> f64 {
        self.adds += 1;
        a + b
    }

    #[inline]
    fn sub(&mut self, a: f64, b: f64) -> f64 {
        self.adds += 1;
        a - b
    }

    #[inline]
    fn neg(&mut self, a: f64) -> f64 {
        self.mults += 1;
        -a
    }
}

impl std::ops::Add for OpTally {
    type Output = OpTally;

    fn add(self, rhs: OpTally) -> OpTally {
        OpTally {
            mults: self.mults + rhs.mults,
            adds: self.adds + rhs.adds,
        }
    }
}

impl std::ops::AddAssign for OpTally {
    fn add_assign(&mut self, rhs: OpTally) {
        *self = *self + rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sub_and_neg_are_charged_like_the_cost_tables() {
        let mut t = OpTally::new();
        assert_eq!(t.sub(3.0, 1.0), 2.0);
        assert_eq!(t.neg(2.0), -2.0);
        assert_eq!(t, OpTally { mults: 1, adds: 1 });
    }

    #[test]
    fn uncounted_is_plain_arithmetic() {
        let mut u = Uncounted;
        assert_eq!(u.mul(2.0, 3.0), 6.0);
        assert_eq!(u.add(2.0, 3.0), 5.0);
        assert_eq!(u.sub(2.0, 3.0), -1.0);
        assert_eq!(u.neg(2.0), -2.0);
    }
}
