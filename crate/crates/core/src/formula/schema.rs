use std::collections::BTreeMap;

use thiserror::Error;

use super::{Formula, MetaVar};

pub type Binding = BTreeMap<MetaVar, Formula>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstantiateError {
    #[error("no binding for metavariable {0}")]
    MissingBinding(MetaVar),
    #[error("metavariable {var} must be bound to a Boolean formula, got {formula}")]
    NonBoolean { var: MetaVar, formula: Formula },
}

/// A formula template over the metavariables `PHI`, `PSI`, `CHI`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub name: String,
    pub template: Formula,
    /// Metavariables of the template, in `PHI`, `PSI`, `CHI` order.
    pub metavars: Vec<MetaVar>,
    /// When set, bindings must be Boolean formulas.
    pub boolean_only: bool,
}

impl Schema {
    pub fn new(name: impl Into<String>, template: Formula, boolean_only: bool) -> Schema {
        let metavars = template.metavars().into_iter().collect();
        Schema {
            name: name.into(),
            template,
            metavars,
            boolean_only,
        }
    }
}

/// Uniform substitution of `binding` into the schema template.
pub fn instantiate(schema: &Schema, binding: &Binding) -> Result<Formula, InstantiateError> {
    for &m in &schema.metavars {
        let f = binding.get(&m).ok_or(InstantiateError::MissingBinding(m))?;
        if schema.boolean_only && !f.is_boolean() {
            return Err(InstantiateError::NonBoolean {
                var: m,
                formula: f.clone(),
            });
        }
    }
    Ok(schema.template.substitute(binding))
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn bind(pairs: &[(MetaVar, &str)]) -> Binding {
        pairs.iter().map(|(m, s)| (*m, parse(s).unwrap())).collect()
    }

    #[test]
    fn a_diamond_2_instance() {
        let s = Schema::new(
            "A_diamond_2",
            parse("B PHI -> (B PSI <-> B(PHI > PSI))").unwrap(),
            true,
        );
        let got = instantiate(&s, &bind(&[(MetaVar::Phi, "p"), (MetaVar::Psi, "q")])).unwrap();
        assert_eq!(got, parse("B p -> (B q <-> B(p > q))").unwrap());
    }

    #[test]
    fn a_star_8_instance() {
        let s = Schema::new(
            "A_star8_diamond_9s",
            parse("~B(PHI > ~PSI) & B(PHI > (PSI -> CHI)) -> B((PHI & PSI) > (PSI & CHI))")
                .unwrap(),
            true,
        );
        let got = instantiate(
            &s,
            &bind(&[
                (MetaVar::Phi, "p"),
                (MetaVar::Psi, "q"),
                (MetaVar::Chi, "r"),
            ]),
        )
        .unwrap();
        assert_eq!(
            got,
            parse("~B(p > ~q) & B(p > (q -> r)) -> B((p & q) > (q & r))").unwrap()
        );
    }

    #[test]
    fn missing_and_non_boolean_bindings_are_rejected() {
        let s = Schema::new("A_star2_diamond_1", parse("B(PHI > PHI)").unwrap(), true);
        assert_eq!(
            instantiate(&s, &Binding::new()),
            Err(InstantiateError::MissingBinding(MetaVar::Phi))
        );
        assert!(matches!(
            instantiate(&s, &bind(&[(MetaVar::Phi, "B p")])),
            Err(InstantiateError::NonBoolean {
                var: MetaVar::Phi,
                ..
            })
        ));
        let general = Schema::new("NB", parse("[]PHI -> B PHI").unwrap(), false);
        assert!(instantiate(&general, &bind(&[(MetaVar::Phi, "B p")])).is_ok());
    }
}
