//! Deliberately naive propositional evaluation, kept independent of the
//! bit-parallel checker so the two can be compared.

use std::collections::BTreeMap;

use super::Formula;

/// Maximal non-Boolean subformulas and atoms, in first-occurrence order.
pub fn opaque_atoms(f: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    walk(f, &mut out);
    out
}

fn walk(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Not(a) => walk(a, out),
        Formula::Or(a, b) => {
            walk(a, out);
            walk(b, out);
        }
        _ => {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
    }
}

pub fn evaluate(f: &Formula, assignment: &BTreeMap<Formula, bool>) -> bool {
    match f {
        Formula::Not(a) => !evaluate(a, assignment),
        Formula::Or(a, b) => evaluate(a, assignment) || evaluate(b, assignment),
        _ => assignment[f],
    }
}

/// Enumerates every assignment row by row.
pub fn is_tautology_by_rows(f: &Formula) -> bool {
    let atoms = opaque_atoms(f);
    (0u64..1 << atoms.len()).all(|row| {
        let assignment = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), row >> i & 1 == 1))
            .collect();
        evaluate(f, &assignment)
    })
}
