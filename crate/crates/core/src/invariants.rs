//! Numerical invariants of link diagrams: linking matrix, Whitney numbers,
//! Seifert circles, the mod-2 frame classes, and the strong-integrability
//! verdict for links in 3-space.

use std::fmt;

use crate::diagram::LinkDiagram;
use crate::manifold::TriState;
use crate::rules;
use crate::verdict::{PropertyVerdict, RuleApplication, Verdict};

/// A component index outside the diagram's range.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("component index {index} out of range: the diagram has {count} component(s)")]
pub struct ComponentIndexError {
    pub index: usize,
    pub count: usize,
}

/// Symmetric integer matrix: off-diagonal entries are pairwise linking
/// numbers, diagonal entries are Whitney numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    /// Number of rows (= link components).
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        let r = self.size();
        (0..r).all(|i| (0..r).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Sum of off-diagonal entries in row `i`: the total linking number of
    /// component `i` with the rest of the link.
    pub fn total_linking(&self, i: usize) -> i64 {
        self.entries[i]
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, v)| v)
            .sum()
    }
}

impl fmt::Display for LinkingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Computes the linking matrix: entry (i,j), i ≠ j, is half the signed
/// count of crossings between components i and j; entry (i,i) is the signed
/// count of self-crossings of component i (the Whitney number).
pub fn linking_matrix(d: &LinkDiagram) -> LinkingMatrix {
    let r = d.component_count();
    let mut entries = vec![vec![0i64; r]; r];
    for rec in d.crossings() {
        let i = rec.over.0;
        let j = rec.under.0;
        let s = rec.sign.value();
        entries[i][j] += s;
        if i != j {
            entries[j][i] += s;
        }
    }
    for (i, row) in entries.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            if i != j {
                *entry /= 2;
            }
        }
    }
    LinkingMatrix { entries }
}

fn check_component(d: &LinkDiagram, i: usize) -> Result<(), ComponentIndexError> {
    let count = d.component_count();
    if i < count {
        Ok(())
    } else {
        Err(ComponentIndexError { index: i, count })
    }
}

/// Signed count of self-crossings of component `i`.
pub fn whitney_number(d: &LinkDiagram, i: usize) -> Result<i64, ComponentIndexError> {
    check_component(d, i)?;
    Ok(d.crossings()
        .filter(|rec| rec.over.0 == i && rec.under.0 == i)
        .map(|rec| rec.sign.value())
        .sum())
}

/// One maximal strand segment of the diagram: the stretch of component
/// `component` that starts right after the passage at position `arc` (a
/// crossing-free component is a single closed arc with index 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ArcRef {
    pub component: usize,
    pub arc: usize,
}

/// The circles obtained by orientation-respecting smoothing of every
/// crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertDecomposition {
    circles: Vec<Vec<ArcRef>>,
}

impl SeifertDecomposition {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn circles(&self) -> &[Vec<ArcRef>] {
        &self.circles
    }

    /// Total number of arcs across all circles.
    pub fn arc_count(&self) -> usize {
        self.circles.iter().map(Vec::len).sum()
    }
}

/// Smooths every crossing respecting orientation and returns the resulting
/// circle decomposition. At each crossing the strand arriving on one of the
/// two branches leaves on the other, so the successor of the arc entering
/// the over-passage is the arc leaving the under-passage and vice versa.
pub fn seifert_circles(d: &LinkDiagram) -> SeifertDecomposition {
    let comps = d.components();
    // Global arc numbering: component c occupies a block of max(len, 1)
    // indices; arc i of a component with passages is the segment after
    // passage i.
    let mut offsets = Vec::with_capacity(comps.len() + 1);
    let mut total = 0usize;
    for comp in comps {
        offsets.push(total);
        total += comp.len().max(1);
    }
    offsets.push(total);

    let mut successor = vec![usize::MAX; total];
    for (c, comp) in comps.iter().enumerate() {
        if comp.is_empty() {
            successor[offsets[c]] = offsets[c];
        }
    }
    for rec in d.crossings() {
        let (oc, op) = rec.over;
        let (uc, up) = rec.under;
        let m_o = comps[oc].len();
        let m_u = comps[uc].len();
        let in_over = offsets[oc] + (op + m_o - 1) % m_o;
        let in_under = offsets[uc] + (up + m_u - 1) % m_u;
        let out_over = offsets[oc] + op;
        let out_under = offsets[uc] + up;
        successor[in_over] = out_under;
        successor[in_under] = out_over;
    }
    debug_assert!(successor.iter().all(|&s| s != usize::MAX));

    let arc_of = |global: usize| -> ArcRef {
        let component = offsets.partition_point(|&o| o <= global) - 1;
        ArcRef {
            component,
            arc: global - offsets[component],
        }
    };

    let mut visited = vec![false; total];
    let mut circles = Vec::new();
    for start in 0..total {
        if visited[start] {
            continue;
        }
        let mut circle = Vec::new();
        let mut cur = start;
        loop {
            visited[cur] = true;
            circle.push(arc_of(cur));
            cur = successor[cur];
            if cur == start {
                break;
            }
        }
        circles.push(circle);
    }
    SeifertDecomposition { circles }
}

/// A residue mod 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Z2Class {
    pub value: u8,
}

impl Z2Class {
    pub fn from_integer(x: i64) -> Self {
        Z2Class {
            value: x.rem_euclid(2) as u8,
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for Z2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Mod-2 class of the curvature normal map of component `i`: equals
/// 1 + W_i mod 2.
pub fn curvatura_integra_mod2(d: &LinkDiagram, i: usize) -> Result<Z2Class, ComponentIndexError> {
    let w = whitney_number(d, i)?;
    Ok(Z2Class::from_integer(1 + w))
}

/// Relative twist of the circle-bounding frame against the curvature frame
/// of component `i`: W_i plus the total linking number with the other
/// components. Reduced mod 2 it measures the difference of the two frame
/// classes.
pub fn relative_class(d: &LinkDiagram, i: usize) -> Result<i64, ComponentIndexError> {
    let w = whitney_number(d, i)?;
    Ok(w + linking_matrix(d).total_linking(i))
}

/// Mod-2 class of the circle-bounding normal frame of component `i`:
/// equals 1 + Σ_{j≠i} lk(i,j) mod 2. The component admits a normal frame
/// whose circles bound in the link complement exactly when this class
/// vanishes.
pub fn seifert_normal_class(d: &LinkDiagram, i: usize) -> Result<Z2Class, ComponentIndexError> {
    check_component(d, i)?;
    let total = linking_matrix(d).total_linking(i);
    Ok(Z2Class::from_integer(1 + total))
}

/// Full verdict for a link in 3-space. Strong integrability holds exactly
/// when every component's circle-bounding frame class vanishes; weak
/// integrability always holds for links.
pub fn si_link_verdict(d: &LinkDiagram) -> Verdict {
    let r = d.component_count();
    let matrix = linking_matrix(d);
    let classes: Vec<Z2Class> = (0..r)
        .map(|i| Z2Class::from_integer(1 + matrix.total_linking(i)))
        .collect();
    let class_inputs: Vec<String> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            format!(
                "component {i}: total linking {}, frame class {c}",
                matrix.total_linking(i)
            )
        })
        .collect();

    let strongly_integrable = if r == 1 {
        PropertyVerdict::decided(
            TriState::False,
            &rules::LINK_KNOT_NOT_SI,
            class_inputs.clone(),
        )
    } else {
        let all_zero = classes.iter().all(|c| c.is_zero());
        PropertyVerdict::decided(
            TriState::from(all_zero),
            &rules::SI_LINK_PARITY,
            class_inputs.clone(),
        )
    };

    let weakly_integrable = PropertyVerdict::decided(
        TriState::True,
        &rules::LINK_WI_ALWAYS,
        [format!("{r} component(s) in 3-space")],
    );
    let totally_weakly_integrable = PropertyVerdict::decided(
        TriState::True,
        &rules::LINK_TWI_CIRCLES,
        [format!("{r} circle(s)")],
    );
    let normal_bundle_trivial = PropertyVerdict::decided(
        TriState::True,
        &rules::NB_CODIM12,
        ["codimension = 2"],
    );
    let complete_intersection = PropertyVerdict::decided(
        TriState::True,
        &rules::CI_CODIM12,
        ["codimension = 2"],
    );
    let leaf = PropertyVerdict::decided(
        TriState::True,
        &rules::LEAF_UNION_WI,
        ["weakly integrable: true", "codimension = 2"],
    );
    let critical = if strongly_integrable.is_true() {
        PropertyVerdict::decided(
            TriState::True,
            &rules::CRIT_SI,
            ["strongly integrable: true"],
        )
    } else {
        PropertyVerdict::unknown(vec![RuleApplication::new(
            &rules::CRIT_SI,
            ["did not fire: the link is not strongly integrable"],
        )])
    };

    Verdict {
        weakly_integrable,
        strongly_integrable,
        complete_intersection,
        totally_weakly_integrable,
        normal_bundle_trivial,
        leaf,
        critical,
    }
}
