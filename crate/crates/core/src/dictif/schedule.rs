use std::fmt;

use super::hfset::{p_level, HfSet};
use super::DictifError;

/// Highest container index of the P-ladder schedule.
pub const P_LADDER_CAP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Kind {
    PLadder,
    Explicit { containers: Vec<HfSet>, next: Vec<usize> },
}

/// The containers `C_1, C_2, …` and the successor map `μ` on their indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContainerSchedule {
    kind: Kind,
}

impl ContainerSchedule {
    /// `C_K = P_K`, `μK = K + 1`, `K ≤ 5`.
    pub fn p_ladder() -> Self {
        ContainerSchedule { kind: Kind::PLadder }
    }

    /// A user schedule: `containers[i]` is `C_{i+1}` and `next[i]` is `μ(i+1)`.
    /// Checked against the container invariants before it is returned.
    pub fn explicit(containers: Vec<HfSet>, next: Vec<usize>) -> Result<Self, DictifError> {
        if containers.is_empty() || containers.len() != next.len() {
            return Err(DictifError::InvalidSchedule(
                "need one μ entry per container and at least one container".into(),
            ));
        }
        let sched = ContainerSchedule {
            kind: Kind::Explicit { containers, next },
        };
        sched.validate()?;
        Ok(sched)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            Kind::PLadder => "p-ladder",
            Kind::Explicit { .. } => "explicit",
        }
    }

    /// Highest usable container index.
    pub fn cap(&self) -> usize {
        match &self.kind {
            Kind::PLadder => P_LADDER_CAP,
            Kind::Explicit { containers, .. } => containers.len(),
        }
    }

    fn check_index(&self, k: usize) -> Result<(), DictifError> {
        if k == 0 || k > self.cap() {
            return Err(DictifError::CapExceeded {
                what: "container index",
                value: k as u64,
                cap: self.cap() as u64,
            });
        }
        Ok(())
    }

    pub fn container(&self, k: usize) -> Result<HfSet, DictifError> {
        self.check_index(k)?;
        match &self.kind {
            Kind::PLadder => p_level(k),
            Kind::Explicit { containers, .. } => Ok(containers[k - 1].clone()),
        }
    }

    /// `μk`. May point past [`cap`](Self::cap); the caller finds out when it
    /// asks for that container.
    pub fn next(&self, k: usize) -> Result<usize, DictifError> {
        self.check_index(k)?;
        Ok(match &self.kind {
            Kind::PLadder => k + 1,
            Kind::Explicit { next, .. } => next[k - 1],
        })
    }

    /// The indices `k, μk, μμk, …`, `len` of them. Fails if any would exceed the cap.
    pub fn indices(&self, k: usize, len: usize) -> Result<Vec<usize>, DictifError> {
        let mut out = Vec::with_capacity(len);
        let mut cur = k;
        for i in 0..len {
            self.check_index(cur)?;
            out.push(cur);
            if i + 1 < len {
                cur = self.next(cur)?;
            }
        }
        Ok(out)
    }

    /// ∅ belongs to every container, `μ` is strictly increasing with `μk > k`,
    /// and `C_k ⊆ C_{μk}` whenever `μk` is within the cap.
    pub fn validate(&self) -> Result<(), DictifError> {
        let empty = HfSet::empty();
        let mut prev_mu = 0;
        for k in 1..=self.cap() {
            let c = self.container(k)?;
            if !c.contains(&empty) {
                return Err(DictifError::InvalidSchedule(format!("∅ is not an element of C_{k}")));
            }
            let mu = self.next(k)?;
            if mu <= k || mu <= prev_mu {
                return Err(DictifError::InvalidSchedule(format!("μ is not strictly increasing at {k}")));
            }
            prev_mu = mu;
            if mu <= self.cap() && !c.is_subset(&self.container(mu)?) {
                return Err(DictifError::InvalidSchedule(format!("C_{k} is not contained in C_{mu}")));
            }
        }
        Ok(())
    }
}

impl Default for ContainerSchedule {
    fn default() -> Self {
        ContainerSchedule::p_ladder()
    }
}

impl fmt::Display for ContainerSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
