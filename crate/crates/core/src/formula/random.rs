//! Seeded random formulas for property sweeps.

use rand::Rng;

use super::Formula;

/// A formula of depth at most `depth` over `atoms`, using every node kind.
pub fn formula<R: Rng + ?Sized>(rng: &mut R, depth: usize, atoms: &[&str]) -> Formula {
    node(rng, depth, atoms, true)
}

/// A Boolean formula of depth at most `depth` over `atoms`.
pub fn boolean_formula<R: Rng + ?Sized>(rng: &mut R, depth: usize, atoms: &[&str]) -> Formula {
    node(rng, depth, atoms, false)
}

fn node<R: Rng + ?Sized>(rng: &mut R, depth: usize, atoms: &[&str], modal: bool) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..atoms.len() + 2) {
            i if i < atoms.len() => Formula::atom(atoms[i]),
            i if i == atoms.len() => Formula::top(),
            _ => Formula::bottom(),
        };
    }
    let kinds = if modal { 9 } else { 6 };
    let d = depth - 1;
    match rng.gen_range(0..kinds) {
        0 => Formula::not(node(rng, d, atoms, modal)),
        1 => Formula::or(node(rng, d, atoms, modal), node(rng, d, atoms, modal)),
        2 => Formula::and(node(rng, d, atoms, modal), node(rng, d, atoms, modal)),
        3 => Formula::implies(node(rng, d, atoms, modal), node(rng, d, atoms, modal)),
        4 => Formula::iff(node(rng, d, atoms, modal), node(rng, d, atoms, modal)),
        5 => Formula::not(Formula::not(node(rng, d, atoms, modal))),
        6 => Formula::believes(node(rng, d, atoms, modal)),
        7 => Formula::necessity(node(rng, d, atoms, modal)),
        _ => Formula::cond(node(rng, d, atoms, modal), node(rng, d, atoms, modal)),
    }
}
