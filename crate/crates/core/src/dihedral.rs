//! Rotations and reflections of finite sequences.
//!
//! Chains are compared up to reversal and cycles up to the full dihedral
//! group. A [`Symmetry`] records which element maps one sequence onto
//! another so that callers can report a witness.

use serde::{Deserialize, Serialize};

/// An element of the dihedral group acting on sequence positions.
///
/// Applying it reverses the sequence first (if `reflected`) and then rotates
/// it left by `rotation` places. For linear sequences `rotation` is always 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    pub reflected: bool,
    pub rotation: usize,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { reflected: false, rotation: 0 };

    pub fn apply<T: Clone>(&self, seq: &[T]) -> Vec<T> {
        let mut out: Vec<T> = seq.to_vec();
        if self.reflected {
            out.reverse();
        }
        if !out.is_empty() {
            let r = self.rotation % out.len();
            out.rotate_left(r);
        }
        out
    }
}

/// Every image of a cyclic sequence under rotation and reflection, in a fixed
/// order (unreflected rotations first).
pub fn cyclic_images<T: Clone>(seq: &[T]) -> impl Iterator<Item = (Symmetry, Vec<T>)> + '_ {
    let n = seq.len().max(1);
    [false, true].into_iter().flat_map(move |reflected| {
        (0..n).map(move |rotation| {
            let s = Symmetry { reflected, rotation };
            (s, s.apply(seq))
        })
    })
}

/// The lexicographically smallest dihedral image of a cyclic sequence,
/// together with the first symmetry producing it.
pub fn canonical_cyclic<T: Ord + Clone>(seq: &[T]) -> (Symmetry, Vec<T>) {
    cyclic_images(seq)
        .min_by(|a, b| a.1.cmp(&b.1))
        .unwrap_or((Symmetry::IDENTITY, Vec::new()))
}

/// The lexicographically smaller of a sequence and its reverse.
pub fn canonical_linear<T: Ord + Clone>(seq: &[T]) -> (Symmetry, Vec<T>) {
    let rev = Symmetry { reflected: true, rotation: 0 };
    let reversed = rev.apply(seq);
    if reversed.as_slice() < seq {
        (rev, reversed)
    } else {
        (Symmetry::IDENTITY, seq.to_vec())
    }
}

/// A symmetry `s` with `s.apply(a) == b`, treating both as cyclic sequences.
pub fn cyclic_match<T: PartialEq + Clone>(a: &[T], b: &[T]) -> Option<Symmetry> {
    if a.len() != b.len() {
        return None;
    }
    cyclic_images(a).find(|(_, img)| img.as_slice() == b).map(|(s, _)| s)
}

/// A symmetry `s` with `s.apply(a) == b`, treating both as linear sequences.
pub fn linear_match<T: PartialEq + Clone>(a: &[T], b: &[T]) -> Option<Symmetry> {
    if a == b {
        return Some(Symmetry::IDENTITY);
    }
    let rev = Symmetry { reflected: true, rotation: 0 };
    (rev.apply(a).as_slice() == b).then_some(rev)
}
