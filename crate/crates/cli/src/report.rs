//! Report assembly: one deterministic document per invocation, as either
//! human-readable text or machine-readable JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use integrability::verdict::{PropertyVerdict, Verdict};
use serde::{Deserialize, Serialize};

/// The machine-readable document. Field order is the serialization order;
/// every collection is ordered, so equal inputs serialize byte-identically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputEcho,
    pub invariants: Invariants,
    pub verdicts: Vec<PropertyReport>,
    pub citations: Vec<Citation>,
    pub version: String,
}

/// What the invocation asked for, echoed verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub command: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub options: BTreeMap<String, String>,
}

/// Computed quantities; commands fill the fields they produce.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Invariants {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linking_matrix: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub whitney_numbers: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seifert_circles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_classes: Option<Vec<ComponentClasses>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_characteristic: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semicharacteristic: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orientation: Option<Vec<i8>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_cycle: Option<Vec<usize>>,
}

/// The mod-2 data of one link component, in input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentClasses {
    pub component: usize,
    pub curvatura_integra: u8,
    pub relative_class: i64,
    pub normal_class: u8,
}

/// One property's tristate answer with its rule chain. For decided
/// answers the chain lists the rules that fired; for "unknown" it lists
/// the rules consulted without firing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: String,
    pub value: String,
    pub chain: Vec<Citation>,
}

/// A rule reference: stable id, theorem tag, and the statement it stands on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Citation {
    pub rule_id: String,
    pub theorem: String,
    pub quote: String,
}

impl Citation {
    pub fn of(rule: &integrability::rules::Rule) -> Citation {
        Citation {
            rule_id: rule.id.to_string(),
            theorem: rule.theorem.to_string(),
            quote: rule.quote.to_string(),
        }
    }
}

fn property_report(name: &str, verdict: &PropertyVerdict) -> PropertyReport {
    PropertyReport {
        property: name.to_string(),
        value: verdict.value.to_string(),
        chain: verdict.chain.iter().map(|a| Citation::of(a.rule)).collect(),
    }
}

/// Flattens a full verdict into report rows, in the fixed report order.
pub fn verdict_rows(v: &Verdict) -> Vec<PropertyReport> {
    v.properties()
        .iter()
        .map(|(name, p)| property_report(name, p))
        .collect()
}

/// Every rule mentioned anywhere in the verdict rows, deduplicated and
/// sorted by id.
pub fn collect_citations(rows: &[PropertyReport]) -> Vec<Citation> {
    let mut seen: BTreeMap<String, Citation> = BTreeMap::new();
    for row in rows {
        for c in &row.chain {
            seen.entry(c.rule_id.clone()).or_insert_with(|| c.clone());
        }
    }
    seen.into_values().collect()
}

impl Report {
    #[must_use]
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The human-readable rendering: invariants, then a verdict table with
    /// the rule quotes inline.
    pub fn to_text(&self, inputs_used: &[Vec<Vec<String>>]) -> String {
        let mut out = String::new();
        if self.input.text.contains('\n') {
            let _ = writeln!(out, "input ({}):", self.input.command);
            for line in self.input.text.lines() {
                let _ = writeln!(out, "  | {line}");
            }
        } else {
            let _ = writeln!(out, "input ({}): {}", self.input.command, self.input.text);
        }
        for (key, value) in &self.input.options {
            let _ = writeln!(out, "  {key}: {value}");
        }
        let inv = &self.invariants;
        let mut lines: Vec<(String, String)> = Vec::new();
        if let Some(m) = &inv.linking_matrix {
            let rows: Vec<String> = m
                .iter()
                .map(|r| {
                    let cells: Vec<String> = r.iter().map(i64::to_string).collect();
                    cells.join(" ")
                })
                .collect();
            lines.push(("linking matrix".into(), format!("[{}]", rows.join("; "))));
        }
        if let Some(w) = &inv.whitney_numbers {
            lines.push(("whitney numbers".into(), format!("{w:?}")));
        }
        if let Some(c) = inv.seifert_circles {
            lines.push(("seifert circles".into(), c.to_string()));
        }
        if let Some(classes) = &inv.component_classes {
            for c in classes {
                lines.push((
                    format!("component {}", c.component),
                    format!(
                        "curvatura integra [{}], relative class {}, normal class [{}]",
                        c.curvatura_integra, c.relative_class, c.normal_class
                    ),
                ));
            }
        }
        if let Some(b) = &inv.betti {
            lines.push(("z2 betti".into(), format!("{b:?}")));
        }
        if let Some(e) = inv.euler_characteristic {
            lines.push(("euler characteristic".into(), e.to_string()));
        }
        if let Some(s) = inv.semicharacteristic {
            lines.push(("semicharacteristic".into(), s.to_string()));
        }
        if let Some(g) = &inv.group {
            lines.push(("group".into(), g.clone()));
        }
        if let Some(o) = &inv.orientation {
            lines.push(("orientation".into(), format!("{o:?}")));
        }
        if let Some(w) = &inv.odd_cycle {
            lines.push(("odd cycle".into(), format!("{w:?}")));
        }
        if !lines.is_empty() {
            let _ = writeln!(out, "invariants");
            let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &lines {
                let _ = writeln!(out, "  {k:width$}  {v}");
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "verdicts");
            let width = self
                .verdicts
                .iter()
                .map(|r| r.property.len())
                .max()
                .unwrap_or(0);
            for (i, row) in self.verdicts.iter().enumerate() {
                let _ = writeln!(out, "  {:width$}  {}", row.property, row.value);
                let prefix = if row.value == "unknown" {
                    "consulted"
                } else {
                    "by"
                };
                for (j, c) in row.chain.iter().enumerate() {
                    let _ = writeln!(out, "    {prefix} {}: \"{}\"", c.rule_id, c.quote);
                    if let Some(used) = inputs_used
                        .get(i)
                        .and_then(|rows| rows.get(j))
                        .filter(|u| !u.is_empty())
                    {
                        let _ = writeln!(out, "      using {}", used.join("; "));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut options = BTreeMap::new();
        options.insert("source".to_string(), "inline".to_string());
        Report {
            input: InputEcho {
                command: "link".to_string(),
                text: "( )".to_string(),
                options,
            },
            invariants: Invariants {
                linking_matrix: Some(vec![vec![0]]),
                whitney_numbers: Some(vec![0]),
                seifert_circles: Some(1),
                component_classes: Some(vec![ComponentClasses {
                    component: 0,
                    curvatura_integra: 1,
                    relative_class: 0,
                    normal_class: 1,
                }]),
                ..Invariants::default()
            },
            verdicts: vec![PropertyReport {
                property: "weakly_integrable".to_string(),
                value: "true".to_string(),
                chain: vec![Citation {
                    rule_id: "link.wi-always".to_string(),
                    theorem: "t".to_string(),
                    quote: "q".to_string(),
                }],
            }],
            citations: vec![Citation {
                rule_id: "link.wi-always".to_string(),
                theorem: "t".to_string(),
                quote: "q".to_string(),
            }],
            version: "0.1.0".to_string(),
        }
    }

    #[test]
    fn reports_round_trip_through_the_machine_format() {
        let report = sample();
        let json = report.to_json();
        let back: Report = serde_json::from_str(&json).expect("report parses back");
        assert_eq!(back, report);
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn serialization_is_deterministic() {
        assert_eq!(sample().to_json(), sample().to_json());
    }

    #[test]
    fn machine_format_keys_are_stable() {
        let json = sample().to_json();
        let value: serde_json::Value = serde_json::from_str(&json).expect("valid json");
        let object = value.as_object().expect("top-level object");
        let mut keys: Vec<&str> = object.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            ["citations", "input", "invariants", "verdicts", "version"]
        );
        // Parsed maps re-sort keys, so emission order is checked textually.
        let offsets: Vec<usize> = ["\"input\"", "\"invariants\"", "\"verdicts\"", "\"citations\"", "\"version\""]
            .iter()
            .map(|k| json.find(k).expect("key present"))
            .collect();
        assert!(offsets.windows(2).all(|w| w[0] < w[1]), "{offsets:?}");
        let chain = value["verdicts"][0]["chain"][0]
            .as_object()
            .expect("chain entry object");
        let mut chain_keys: Vec<&str> = chain.keys().map(String::as_str).collect();
        chain_keys.sort_unstable();
        assert_eq!(chain_keys, ["quote", "rule_id", "theorem"]);
    }

    #[test]
    fn citations_deduplicate_and_sort_by_rule_id() {
        let c = |id: &str| Citation {
            rule_id: id.to_string(),
            theorem: "t".to_string(),
            quote: "q".to_string(),
        };
        let rows = vec![
            PropertyReport {
                property: "a".to_string(),
                value: "true".to_string(),
                chain: vec![c("z.rule"), c("a.rule")],
            },
            PropertyReport {
                property: "b".to_string(),
                value: "false".to_string(),
                chain: vec![c("a.rule"), c("m.rule")],
            },
        ];
        let ids: Vec<String> = collect_citations(&rows)
            .into_iter()
            .map(|c| c.rule_id)
            .collect();
        assert_eq!(ids, ["a.rule", "m.rule", "z.rule"]);
    }
}
