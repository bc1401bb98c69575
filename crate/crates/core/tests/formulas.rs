use std::collections::BTreeMap;

use kl_core::formula::{
    instantiate, is_tautology, parse, print, Formula, MetaVar, TautologyChecker, TautologyError,
};
use kl_core::schema::AxiomId;
use proptest::prelude::*;

fn any_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["p", "q", "r", "s"]).prop_map(Formula::atom),
        Just(Formula::top()),
        Just(Formula::bottom()),
    ];
    leaf.prop_recursive(6, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            inner.clone().prop_map(Formula::believes),
            inner.clone().prop_map(Formula::necessity),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::cond(a, b)),
        ]
    })
}

/// Maximal subformulas that are not `~` or `|`, each listed once.
fn opaque(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::Not(a) => opaque(a, out),
        Formula::Or(a, b) => {
            opaque(a, out);
            opaque(b, out);
        }
        other if !out.contains(other) => out.push(other.clone()),
        _ => {}
    }
}

fn value(f: &Formula, atoms: &[Formula], row: u32) -> bool {
    match f {
        Formula::Not(a) => !value(a, atoms, row),
        Formula::Or(a, b) => value(a, atoms, row) || value(b, atoms, row),
        other => row >> atoms.iter().position(|x| x == other).unwrap() & 1 == 1,
    }
}

fn truth_table(f: &Formula) -> bool {
    let mut atoms = Vec::new();
    opaque(f, &mut atoms);
    (0..1u32 << atoms.len()).all(|row| value(f, &atoms, row))
}

fn small(f: &Formula) -> bool {
    let mut atoms = Vec::new();
    opaque(f, &mut atoms);
    atoms.len() <= 4
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_then_parse_is_identity(f in any_formula()) {
        let text = print(&f);
        prop_assert_eq!(parse(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn tautology_checker_matches_truth_table(f in any_formula().prop_filter("at most four opaque atoms", small)) {
        prop_assert_eq!(is_tautology(&f).unwrap(), truth_table(&f));
    }

    #[test]
    fn weakening_is_always_a_tautology(
        f in any_formula().prop_filter("small", small),
        g in any_formula().prop_filter("small", small),
    ) {
        let w = Formula::implies(f.clone(), Formula::or(f, g));
        prop_assert!(is_tautology(&w).unwrap());
    }

    #[test]
    fn instantiation_is_uniform(a in any_formula().prop_filter("boolean", Formula::is_boolean),
                                b in any_formula().prop_filter("boolean", Formula::is_boolean)) {
        let schema = &AxiomId::ADiamond2.info().schema;
        let binding = BTreeMap::from([(MetaVar::Phi, a.clone()), (MetaVar::Psi, b.clone())]);
        let once = instantiate(schema, &binding).unwrap();
        prop_assert_eq!(&once, &instantiate(schema, &binding).unwrap());
        let expected = Formula::implies(
            Formula::believes(a.clone()),
            Formula::iff(Formula::believes(b.clone()), Formula::believes(Formula::cond(a, b))),
        );
        prop_assert_eq!(once, expected);
    }
}

#[test]
fn fixed_tautologies() {
    for (src, expected) in [
        ("B(p > q) | ~B(p > q)", true),
        ("q -> (p -> q)", true),
        ("q & r -> r", true),
        ("B(p | ~p)", false),
        ("B p -> B q", false),
        ("(p > q) -> (p > q)", true),
    ] {
        assert_eq!(is_tautology(&parse(src).unwrap()), Ok(expected), "{src}");
    }
}

#[test]
fn opaque_atom_bound() {
    let many = (0..5).map(|i| Formula::believes(Formula::atom(format!("p{i}"))));
    let f = Formula::disjunction(many);
    let checker = TautologyChecker { max_atoms: 4 };
    assert_eq!(
        checker.check(&f),
        Err(TautologyError::TooManyAtoms { found: 5, limit: 4 })
    );
    assert_eq!(TautologyChecker { max_atoms: 5 }.check(&f), Ok(false));
}

#[test]
fn fresh_atoms_replace_metavariables() {
    let schema = &AxiomId::AStar8Diamond9s.info().schema;
    let binding: BTreeMap<MetaVar, Formula> = [
        (MetaVar::Phi, "x"),
        (MetaVar::Psi, "y"),
        (MetaVar::Chi, "z"),
    ]
    .map(|(m, a)| (m, Formula::atom(a)))
    .into();
    let f = instantiate(schema, &binding).unwrap();
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    assert_eq!(atoms, ["x", "y", "z"]);
    let missing = BTreeMap::from([(MetaVar::Phi, Formula::atom("x"))]);
    assert!(instantiate(schema, &missing).is_err());
    let modal = BTreeMap::from([
        (MetaVar::Phi, parse("B x").unwrap()),
        (MetaVar::Psi, Formula::atom("y")),
        (MetaVar::Chi, Formula::atom("z")),
    ]);
    assert!(instantiate(schema, &modal).is_err());
}
