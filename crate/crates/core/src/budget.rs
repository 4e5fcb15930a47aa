use std::time::{Duration, Instant};

/// Limits for the exhaustive searches.
///
/// A search that runs out of budget reports `Unknown` rather than guessing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub time: Option<Duration>,
    pub nodes: Option<u64>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn seconds(secs: f64) -> Self {
        Budget {
            time: Some(Duration::from_secs_f64(secs)),
            nodes: None,
        }
    }

    pub fn nodes(nodes: u64) -> Self {
        Budget {
            time: None,
            nodes: Some(nodes),
        }
    }

    pub(crate) fn start(&self) -> Meter {
        Meter {
            deadline: self.time.map(|t| Instant::now() + t),
            node_cap: self.nodes.unwrap_or(u64::MAX),
            nodes: 0,
        }
    }
}

/// Running counter for one search.
pub(crate) struct Meter {
    deadline: Option<Instant>,
    node_cap: u64,
    nodes: u64,
}

impl Meter {
    /// Counts one search node; returns false once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return false;
        }
        match self.deadline {
            Some(d) if self.nodes & 0xfff == 0 => Instant::now() < d,
            _ => true,
        }
    }
}

