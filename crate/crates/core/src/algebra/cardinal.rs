//! Cardinal numbers: finite naturals together with symbolic alephs.
//!
//! Dimensions, ranks and codimensions of the concrete instances in this
//! crate are always finite, but several characterisations are stated in
//! terms of arbitrary cardinals. Keeping those statements executable at
//! the symbolic level lets the infinite-dimensional branches be unit
//! tested without ever enumerating an infinite object.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

/// A finite natural or a symbolic aleph indexed by a natural.
///
/// The successor of `Aleph(k)` is taken to be `Aleph(k + 1)`; successor
/// cardinals only ever appear here as strict upper bounds on ideals, for
/// which the index successor suffices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cardinal {
    Finite(u64),
    Aleph(u32),
}

pub use Cardinal::{Aleph, Finite};

/// The first infinite cardinal.
pub const ALEPH_0: Cardinal = Aleph(0);

impl Cardinal {
    pub fn is_finite(self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Aleph(_))
    }

    /// Successor cardinal: `n + 1` for finite values, index increment for alephs.
    pub fn succ(self) -> Cardinal {
        match self {
            Finite(n) => Finite(n + 1),
            Aleph(k) => Aleph(k + 1),
        }
    }

    pub fn min(self, other: Cardinal) -> Cardinal {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: Cardinal) -> Cardinal {
        std::cmp::max(self, other)
    }

    /// The finite value, if any.
    pub fn finite(self) -> Option<u64> {
        match self {
            Finite(n) => Some(n),
            Aleph(_) => None,
        }
    }
}

impl Ord for Cardinal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Aleph(_)) => Ordering::Less,
            (Aleph(_), Finite(_)) => Ordering::Greater,
            (Aleph(a), Aleph(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Cardinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Cardinal {
    type Output = Cardinal;

    /// Cardinal addition: natural sum on finite values, absorption by the
    /// larger argument as soon as an aleph is involved.
    fn add(self, other: Cardinal) -> Cardinal {
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a.checked_add(b).expect("finite cardinal overflow")),
            _ => self.max(other),
        }
    }
}

impl From<usize> for Cardinal {
    fn from(n: usize) -> Cardinal {
        Finite(n as u64)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finite(n) => write!(f, "{n}"),
            Aleph(k) => write!(f, "aleph_{k}"),
        }
    }
}
