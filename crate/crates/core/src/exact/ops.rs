/// Arithmetic-operation tally for instrumented kernels. Divisions are
/// tallied as multiplications; negations are free.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct OpTally {
    pub multiplications: u64,
    pub additions: u64,
}

impl OpTally {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn mul(&mut self, n: u64) {
        self.multiplications += n;
    }

    #[inline]
    pub fn add(&mut self, n: u64) {
        self.additions += n;
    }

    pub fn total(&self) -> u64 {
        self.multiplications + self.additions
    }
}
