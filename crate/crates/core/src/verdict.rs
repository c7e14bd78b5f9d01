//! Tristate verdicts carrying auditable rule chains.
//!
//! Every decided (true/false) answer records at least one rule application
//! that produced it; undecided answers record the rules that were consulted
//! and why they did not decide, so a report never contains a bare
//! "unknown".

use crate::manifold::TriState;
use crate::rules::Rule;

/// One rule invocation together with the context facts it consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleApplication {
    pub rule: &'static Rule,
    /// Human-readable facts fed to the rule, e.g. `"codimension = 2"`.
    pub inputs: Vec<String>,
}

impl RuleApplication {
    pub fn new<I, S>(rule: &'static Rule, inputs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        RuleApplication {
            rule,
            inputs: inputs.into_iter().map(Into::into).collect(),
        }
    }
}

/// The answer for a single property, with its supporting chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub value: TriState,
    /// For decided answers: the rules that fired (never empty). For
    /// undecided answers: the rules that were consulted without firing.
    pub chain: Vec<RuleApplication>,
}

impl PropertyVerdict {
    /// A decided answer produced by a single rule.
    pub fn decided<I, S>(value: TriState, rule: &'static Rule, inputs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        debug_assert!(value != TriState::Unknown);
        PropertyVerdict {
            value,
            chain: vec![RuleApplication::new(rule, inputs)],
        }
    }

    /// An undecided answer, listing the rules that failed to fire.
    pub fn unknown(consulted: Vec<RuleApplication>) -> Self {
        PropertyVerdict {
            value: TriState::Unknown,
            chain: consulted,
        }
    }

    pub fn is_true(&self) -> bool {
        self.value == TriState::True
    }

    pub fn is_false(&self) -> bool {
        self.value == TriState::False
    }

    /// Checks the structural contract: decided answers carry a nonempty
    /// chain.
    pub fn is_well_formed(&self) -> bool {
        self.value == TriState::Unknown || !self.chain.is_empty()
    }
}

/// The full classification outcome: one tristate per property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub weakly_integrable: PropertyVerdict,
    pub strongly_integrable: PropertyVerdict,
    pub complete_intersection: PropertyVerdict,
    pub totally_weakly_integrable: PropertyVerdict,
    pub normal_bundle_trivial: PropertyVerdict,
    pub leaf: PropertyVerdict,
    pub critical: PropertyVerdict,
}

impl Verdict {
    /// Iterates the properties in report order with their display names.
    pub fn properties(&self) -> [(&'static str, &PropertyVerdict); 7] {
        [
            ("normal_bundle_trivial", &self.normal_bundle_trivial),
            ("weakly_integrable", &self.weakly_integrable),
            ("totally_weakly_integrable", &self.totally_weakly_integrable),
            ("complete_intersection", &self.complete_intersection),
            ("strongly_integrable", &self.strongly_integrable),
            ("leaf", &self.leaf),
            ("critical", &self.critical),
        ]
    }

    pub fn is_well_formed(&self) -> bool {
        self.properties().iter().all(|(_, p)| p.is_well_formed())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules;

    #[test]
    fn decided_verdicts_carry_their_rule() {
        let v = PropertyVerdict::decided(
            TriState::True,
            &rules::NB_CODIM12,
            ["codimension = 2"],
        );
        assert!(v.is_true());
        assert!(v.is_well_formed());
        assert_eq!(v.chain.len(), 1);
        assert_eq!(v.chain[0].rule.id, "nb.codim12");
        assert_eq!(v.chain[0].inputs, vec!["codimension = 2".to_string()]);
    }

    #[test]
    fn unknown_verdicts_list_consulted_rules() {
        let v = PropertyVerdict::unknown(vec![RuleApplication::new(
            &rules::NB_PAR_HALFDIM,
            ["did not fire: parallelizability undetermined"],
        )]);
        assert_eq!(v.value, TriState::Unknown);
        assert!(v.is_well_formed());
        assert_eq!(v.chain.len(), 1);
    }
}
