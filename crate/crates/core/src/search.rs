//! Budgets and three-valued verdicts shared by every enumerating search.

/// Result of a search that may be cut short by its budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    /// A witness was found and verified.
    Found(W),
    /// The search space was exhausted: no witness exists.
    Absent,
    /// The budget ran out before the search finished.
    Unknown,
}

impl<W> Verdict<W> {
    pub fn is_found(&self) -> bool {
        matches!(self, Verdict::Found(_))
    }

    pub fn is_absent(&self) -> bool {
        matches!(self, Verdict::Absent)
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn into_witness(self) -> Option<W> {
        match self {
            Verdict::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Found(w) => Verdict::Found(f(w)),
            Verdict::Absent => Verdict::Absent,
            Verdict::Unknown => Verdict::Unknown,
        }
    }

    /// Drops the witness, keeping only the three-valued answer.
    pub fn kind(&self) -> Verdict<()> {
        match self {
            Verdict::Found(_) => Verdict::Found(()),
            Verdict::Absent => Verdict::Absent,
            Verdict::Unknown => Verdict::Unknown,
        }
    }
}

/// Resource limits for randomized and enumerating searches.
///
/// `seed` drives every random choice, `trials` bounds random restarts and
/// sampling rounds, and `node_limit` bounds the number of search-tree nodes
/// an enumeration may expand before it gives up with [`Verdict::Unknown`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub seed: u64,
    pub trials: u32,
    pub node_limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            seed: 0,
            trials: 64,
            node_limit: 20_000_000,
        }
    }
}

impl Budget {
    pub fn with_seed(seed: u64) -> Self {
        Budget {
            seed,
            ..Budget::default()
        }
    }
}

/// How an enumeration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Exhaust {
    /// Every branch was explored.
    Complete,
    /// The visitor asked to stop.
    Stopped,
    /// The node counter hit its limit.
    OutOfBudget,
}

/// Node counter shared across nested enumerations.
#[derive(Debug)]
pub(crate) struct Nodes {
    used: u64,
    limit: u64,
}

impl Nodes {
    pub(crate) fn new(limit: u64) -> Self {
        Nodes { used: 0, limit }
    }

    /// Charges one node; false once the limit is reached.
    pub(crate) fn tick(&mut self) -> bool {
        if self.used >= self.limit {
            return false;
        }
        self.used += 1;
        true
    }
}
