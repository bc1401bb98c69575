use std::fmt;

use serde::{Serialize, Serializer};

/// Largest universe an [`Event`] can describe.
pub const MAX_UNIVERSE: usize = 64;

/// A subset of `{0, .., n-1}` stored as a bitset.
///
/// Events order first by universe size, then by their bit pattern read as
/// an integer, so `{}` < `{0}` < `{1}` < `{0,1}` for `n = 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    universe: u8,
    bits: u64,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Event {
    pub fn empty(n: usize) -> Event {
        assert!(n <= MAX_UNIVERSE, "universe too large");
        Event {
            universe: n as u8,
            bits: 0,
        }
    }

    pub fn full(n: usize) -> Event {
        assert!(n <= MAX_UNIVERSE, "universe too large");
        Event {
            universe: n as u8,
            bits: mask(n),
        }
    }

    /// `None` when `bits` names a member outside the universe.
    pub fn from_bits(n: usize, bits: u64) -> Option<Event> {
        (n <= MAX_UNIVERSE && bits & !mask(n) == 0).then_some(Event {
            universe: n as u8,
            bits,
        })
    }

    pub fn singleton(n: usize, i: usize) -> Event {
        assert!(i < n, "state {i} outside universe of size {n}");
        Event {
            universe: n as u8,
            bits: 1 << i,
        }
    }

    /// `Err(i)` for the first member outside the universe.
    pub fn from_members<I: IntoIterator<Item = usize>>(
        n: usize,
        members: I,
    ) -> Result<Event, usize> {
        let mut e = Event::empty(n);
        for i in members {
            if i >= n {
                return Err(i);
            }
            e.bits |= 1 << i;
        }
        Ok(e)
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn universe(self) -> usize {
        self.universe as usize
    }

    pub fn contains(self, i: usize) -> bool {
        i < self.universe() && self.bits >> i & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == mask(self.universe())
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn union(self, other: Event) -> Event {
        debug_assert_eq!(self.universe, other.universe);
        Event {
            universe: self.universe,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(self, other: Event) -> Event {
        debug_assert_eq!(self.universe, other.universe);
        Event {
            universe: self.universe,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(self, other: Event) -> Event {
        debug_assert_eq!(self.universe, other.universe);
        Event {
            universe: self.universe,
            bits: self.bits & !other.bits,
        }
    }

    pub fn complement(self) -> Event {
        Event {
            universe: self.universe,
            bits: !self.bits & mask(self.universe()),
        }
    }

    pub fn is_subset(self, other: Event) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.bits & !other.bits == 0
    }

    pub fn intersects(self, other: Event) -> bool {
        self.bits & other.bits != 0
    }

    /// Members in ascending order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..self.universe()).filter(move |i| bits >> i & 1 == 1)
    }

    /// All `2^n` events in ascending order.
    pub fn all(n: usize) -> impl Iterator<Item = Event> + Clone {
        assert!(
            n < MAX_UNIVERSE,
            "cannot enumerate all events of a 64-element universe"
        );
        (0..1u64 << n).map(move |bits| Event {
            universe: n as u8,
            bits,
        })
    }

    /// All non-empty events in ascending order.
    pub fn nonempty(n: usize) -> impl Iterator<Item = Event> + Clone {
        Event::all(n).skip(1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.members().collect()
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.members().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// Serialized as its sorted member list.
impl Serialize for Event {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.members())
    }
}
