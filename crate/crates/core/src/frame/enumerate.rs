use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Event, Frame, FrameError, MAX_STATES};

/// Exhaustive enumeration is refused above this many states.
pub const MAX_ENUMERABLE_STATES: usize = 2;

/// `(2^n - 1)^n * (2^n)^(n (2^n - 1))`, or `None` on overflow.
pub fn frame_count(n: usize) -> Option<u64> {
    if n == 0 || n >= 63 {
        return None;
    }
    let events = 1u64 << n;
    let beliefs = (events - 1).checked_pow(n as u32)?;
    let entries = (n as u64).checked_mul(events - 1)?;
    let tables = events.checked_pow(u32::try_from(entries).ok()?)?;
    beliefs.checked_mul(tables)
}

/// The `index`-th frame of the enumeration order.
///
/// `index` is read as a mixed-radix numeral, least significant digit first:
/// one digit per selection entry `(s, E)` (states ascending, then `E`
/// ascending, base `2^n`), followed by one digit per belief set (base
/// `2^n - 1`, digit `d` meaning the event with bits `d + 1`).
pub fn frame_at(n: usize, index: u64) -> Result<Frame, FrameError> {
    if n == 0 || n > MAX_ENUMERABLE_STATES {
        return Err(FrameError::TooLarge {
            n,
            max: MAX_ENUMERABLE_STATES,
        });
    }
    let total = frame_count(n).expect("small counts fit");
    if index >= total {
        return Err(FrameError::StateOutOfRange {
            state: index as usize,
            n: total as usize,
        });
    }
    let events = 1u64 << n;
    let mut rest = index;
    let mut selection = vec![Event::empty(n); n << n];
    for s in 0..n {
        for e in 1..events {
            let digit = rest % events;
            rest /= events;
            selection[(s << n) | e as usize] = Event::from_bits(n, digit).expect("digit in range");
        }
    }
    let belief = (0..n)
        .map(|_| {
            let digit = rest % (events - 1);
            rest /= events - 1;
            Event::from_bits(n, digit + 1).expect("digit in range")
        })
        .collect();
    Ok(Frame::from_parts(n, belief, selection))
}

/// Every frame on `n` states exactly once, in index order.
pub fn enumerate_frames(n: usize) -> Result<impl Iterator<Item = Frame>, FrameError> {
    if n == 0 || n > MAX_ENUMERABLE_STATES {
        return Err(FrameError::TooLarge {
            n,
            max: MAX_ENUMERABLE_STATES,
        });
    }
    let total = frame_count(n).expect("small counts fit");
    Ok((0..total).map(move |i| frame_at(n, i).expect("index in range")))
}

/// Draws a frame with uniformly random non-empty belief sets and a uniformly
/// random selection table.
pub fn sample_frame_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Frame {
    assert!(
        (1..=MAX_STATES).contains(&n),
        "state count {n} out of range"
    );
    let events = 1u64 << n;
    let belief = (0..n)
        .map(|_| Event::from_bits(n, rng.gen_range(1..events)).unwrap())
        .collect();
    let mut selection = vec![Event::empty(n); n << n];
    for s in 0..n {
        for e in 1..events {
            selection[(s << n) | e as usize] =
                Event::from_bits(n, rng.gen_range(0..events)).unwrap();
        }
    }
    Frame::from_parts(n, belief, selection)
}

/// Deterministic for a given `(n, seed)`.
pub fn sample_frame(n: usize, seed: u64) -> Frame {
    sample_frame_with(n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `count` frames drawn from one seeded stream.
pub fn sample_frames(n: usize, count: usize, seed: u64) -> impl Iterator<Item = Frame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(move |_| sample_frame_with(n, &mut rng))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn counts() {
        assert_eq!(frame_count(1), Some(2));
        assert_eq!(frame_count(2), Some(3u64.pow(2) * 4u64.pow(6)));
        assert_eq!(frame_count(2), Some(36_864));
    }

    #[test]
    fn enumeration_is_exhaustive_and_distinct() {
        let frames: Vec<Frame> = enumerate_frames(2).unwrap().collect();
        assert_eq!(frames.len(), 36_864);
        let distinct: HashSet<&Frame> = frames.iter().collect();
        assert_eq!(distinct.len(), frames.len());
        for fr in enumerate_frames(1).unwrap() {
            assert_eq!(fr.belief(0), Event::full(1));
        }
    }

    #[test]
    fn refuses_three_states() {
        assert!(matches!(
            enumerate_frames(3),
            Err(FrameError::TooLarge { n: 3, .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        assert_eq!(sample_frame(2, 0), sample_frame(2, 0));
        assert_ne!(sample_frame(3, 0), sample_frame(3, 1));
        assert_eq!(sample_frame(1, 99).belief(0), Event::full(1));
        for fr in sample_frames(3, 10_000, 5) {
            assert!(fr.to_raw().validate().is_ok());
        }
    }
}
