//! Reidemeister rewrites on link diagrams.
//!
//! Every move is described by a [`MoveSpec`] naming its location in the
//! target diagram; [`LinkDiagram::apply_move`] checks that the location
//! matches the move's pattern and returns a fresh rewritten diagram (inputs
//! are never mutated). Locations that do not match the pattern yield
//! [`DiagramError::InvalidLocation`].
//!
//! Position conventions: a *position* indexes an existing passage of a
//! component; a *gap* `g` (0 ≤ g ≤ len) denotes the insertion point before
//! position `g`, so gap `len` appends. Crossing labels for inserted
//! crossings are fresh (one past the current maximum).

use crate::diagram::{DiagramError, LinkDiagram, Passage, Role, Sign};

/// A single Reidemeister move with its location data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveSpec {
    /// Insert a kink: two adjacent passages of one fresh crossing at the
    /// given gap. `over_first` picks which role comes first along the
    /// component's orientation.
    R1Insert {
        component: usize,
        gap: usize,
        sign: Sign,
        over_first: bool,
    },
    /// Remove a kink: the crossing's two passages must be cyclically
    /// adjacent on one component.
    R1Delete { crossing: u32 },
    /// Push one strand over another, creating two fresh crossings of
    /// opposite signs. The strand at `over` receives both over-passages,
    /// the strand at `under` both under-passages; `parallel` states whether
    /// the under-strand meets the new crossings in the same order as the
    /// over-strand. `sign` is the sign of the first created crossing.
    R2Insert {
        over: (usize, usize),
        under: (usize, usize),
        sign: Sign,
        parallel: bool,
    },
    /// Cancel two crossings of opposite signs whose over-passages are
    /// cyclically adjacent on one strand and whose under-passages are
    /// cyclically adjacent on one strand.
    R2Delete { crossings: (u32, u32) },
    /// Slide a strand across the crossing of two others: the three
    /// crossings must bound a triangle (each pair of them cyclically
    /// adjacent on a strand, all six passages distinct), with one side
    /// passing over twice, one under twice, one mixed, and with the three
    /// sides not oriented coherently around the triangle. Each adjacent
    /// pair swaps places.
    R3Slide { crossings: [u32; 3] },
}

fn invalid(message: impl Into<String>) -> DiagramError {
    DiagramError::InvalidLocation {
        message: message.into(),
    }
}

/// One cyclic adjacency `(first, second)` of passage positions on a
/// component, with `second` following `first`.
#[derive(Debug, Clone, Copy)]
struct Adjacency {
    component: usize,
    first: usize,
    second: usize,
}

impl LinkDiagram {
    /// Applies one Reidemeister move, returning the rewritten diagram.
    pub fn apply_move(&self, m: &MoveSpec) -> Result<LinkDiagram, DiagramError> {
        match *m {
            MoveSpec::R1Insert {
                component,
                gap,
                sign,
                over_first,
            } => self.r1_insert(component, gap, sign, over_first),
            MoveSpec::R1Delete { crossing } => self.r1_delete(crossing),
            MoveSpec::R2Insert {
                over,
                under,
                sign,
                parallel,
            } => self.r2_insert(over, under, sign, parallel),
            MoveSpec::R2Delete { crossings } => self.r2_delete(crossings),
            MoveSpec::R3Slide { crossings } => self.r3_slide(crossings),
        }
    }

    fn check_gap(&self, component: usize, gap: usize) -> Result<(), DiagramError> {
        let count = self.component_count();
        if component >= count {
            return Err(invalid(format!(
                "component {component} out of range (diagram has {count})"
            )));
        }
        let len = self.components()[component].len();
        if gap > len {
            return Err(invalid(format!(
                "gap {gap} out of range for a component of {len} passages"
            )));
        }
        Ok(())
    }

    fn r1_insert(
        &self,
        component: usize,
        gap: usize,
        sign: Sign,
        over_first: bool,
    ) -> Result<LinkDiagram, DiagramError> {
        self.check_gap(component, gap)?;
        let id = self.fresh_id();
        let first_role = if over_first { Role::Over } else { Role::Under };
        let mut components = self.components().to_vec();
        components[component].splice(
            gap..gap,
            [
                Passage {
                    id,
                    role: first_role,
                    sign,
                },
                Passage {
                    id,
                    role: first_role.flipped(),
                    sign,
                },
            ],
        );
        LinkDiagram::from_components(components)
    }

    fn r1_delete(&self, crossing: u32) -> Result<LinkDiagram, DiagramError> {
        let rec = self
            .crossing(crossing)
            .ok_or_else(|| invalid(format!("no crossing labeled {crossing}")))?;
        let (oc, op) = rec.over;
        let (uc, up) = rec.under;
        if oc != uc {
            return Err(invalid(format!(
                "crossing {crossing} involves two different components, not a kink"
            )));
        }
        let len = self.components()[oc].len();
        let adjacent = (op + 1) % len == up || (up + 1) % len == op;
        if !adjacent {
            return Err(invalid(format!(
                "the two passages of crossing {crossing} are not adjacent"
            )));
        }
        let mut components = self.components().to_vec();
        let (hi, lo) = (op.max(up), op.min(up));
        components[oc].remove(hi);
        components[oc].remove(lo);
        LinkDiagram::from_components(components)
    }

    fn r2_insert(
        &self,
        over: (usize, usize),
        under: (usize, usize),
        sign: Sign,
        parallel: bool,
    ) -> Result<LinkDiagram, DiagramError> {
        self.check_gap(over.0, over.1)?;
        self.check_gap(under.0, under.1)?;
        if over == under {
            return Err(invalid(
                "the over and under strands must be two distinct arcs".to_string(),
            ));
        }
        let a = self.fresh_id();
        let b = a + 1;
        let over_pair = [
            Passage {
                id: a,
                role: Role::Over,
                sign,
            },
            Passage {
                id: b,
                role: Role::Over,
                sign: sign.flipped(),
            },
        ];
        let mut under_pair = [
            Passage {
                id: a,
                role: Role::Under,
                sign,
            },
            Passage {
                id: b,
                role: Role::Under,
                sign: sign.flipped(),
            },
        ];
        if !parallel {
            under_pair.swap(0, 1);
        }
        let mut components = self.components().to_vec();
        // When both insertions land on one component, splice the higher gap
        // first so the lower gap index stays valid.
        let mut insertions = [(over.0, over.1, over_pair), (under.0, under.1, under_pair)];
        if insertions[0].0 == insertions[1].0 && insertions[0].1 < insertions[1].1 {
            insertions.swap(0, 1);
        }
        for (component, gap, pair) in insertions {
            components[component].splice(gap..gap, pair);
        }
        LinkDiagram::from_components(components)
    }

    fn r2_delete(&self, crossings: (u32, u32)) -> Result<LinkDiagram, DiagramError> {
        let (a, b) = crossings;
        if a == b {
            return Err(invalid("an R2 pair needs two distinct crossings".to_string()));
        }
        let rec_a = self
            .crossing(a)
            .ok_or_else(|| invalid(format!("no crossing labeled {a}")))?;
        let rec_b = self
            .crossing(b)
            .ok_or_else(|| invalid(format!("no crossing labeled {b}")))?;
        if rec_a.sign == rec_b.sign {
            return Err(invalid(format!(
                "crossings {a} and {b} have equal signs and cannot cancel"
            )));
        }
        for (what, pa, pb) in [
            ("over", rec_a.over, rec_b.over),
            ("under", rec_a.under, rec_b.under),
        ] {
            if pa.0 != pb.0 {
                return Err(invalid(format!(
                    "the {what}-passages of {a} and {b} lie on different components"
                )));
            }
            let len = self.components()[pa.0].len();
            if (pa.1 + 1) % len != pb.1 && (pb.1 + 1) % len != pa.1 {
                return Err(invalid(format!(
                    "the {what}-passages of {a} and {b} are not adjacent"
                )));
            }
        }
        let mut components = self.components().to_vec();
        let mut slots = [rec_a.over, rec_a.under, rec_b.over, rec_b.under];
        // Remove highest positions first so earlier indices stay valid.
        slots.sort_by(|x, y| y.cmp(x));
        for (component, position) in slots {
            components[component].remove(position);
        }
        LinkDiagram::from_components(components)
    }

    /// All cyclic adjacencies whose two passages carry two distinct labels
    /// from `ids`.
    fn triangle_adjacencies(&self, ids: [u32; 3]) -> Vec<Adjacency> {
        let mut found = Vec::new();
        for (ci, comp) in self.components().iter().enumerate() {
            let len = comp.len();
            if len < 2 {
                continue;
            }
            for i in 0..len {
                let j = (i + 1) % len;
                let (p, q) = (comp[i], comp[j]);
                if p.id != q.id && ids.contains(&p.id) && ids.contains(&q.id) {
                    found.push(Adjacency {
                        component: ci,
                        first: i,
                        second: j,
                    });
                }
            }
        }
        found
    }

    fn r3_slide(&self, ids: [u32; 3]) -> Result<LinkDiagram, DiagramError> {
        if ids[0] == ids[1] || ids[0] == ids[2] || ids[1] == ids[2] {
            return Err(invalid("an R3 move needs three distinct crossings".to_string()));
        }
        for id in ids {
            if self.crossing(id).is_none() {
                return Err(invalid(format!("no crossing labeled {id}")));
            }
        }
        let adjacencies = self.triangle_adjacencies(ids);
        // Each unordered pair of the three crossings must be realized by
        // exactly one adjacent passage pair (a triangle side).
        let mut sides: [Option<Adjacency>; 3] = [None; 3];
        let pair_index = |x: u32, y: u32| -> usize {
            // 0: {ids[0],ids[1]}, 1: {ids[0],ids[2]}, 2: {ids[1],ids[2]}
            match (
                x == ids[0] || y == ids[0],
                x == ids[1] || y == ids[1],
                x == ids[2] || y == ids[2],
            ) {
                (true, true, false) => 0,
                (true, false, true) => 1,
                (false, true, true) => 2,
                _ => unreachable!("ids checked distinct and contained"),
            }
        };
        for adj in &adjacencies {
            let comp = &self.components()[adj.component];
            let (p, q) = (comp[adj.first], comp[adj.second]);
            let slot = pair_index(p.id, q.id);
            if sides[slot].is_some() {
                return Err(invalid(format!(
                    "crossings {} and {} are adjacent on more than one strand",
                    p.id, q.id
                )));
            }
            sides[slot] = Some(*adj);
        }
        let sides = [
            sides[0].ok_or_else(|| {
                invalid(format!("crossings {} and {} are not adjacent", ids[0], ids[1]))
            })?,
            sides[1].ok_or_else(|| {
                invalid(format!("crossings {} and {} are not adjacent", ids[0], ids[2]))
            })?,
            sides[2].ok_or_else(|| {
                invalid(format!("crossings {} and {} are not adjacent", ids[1], ids[2]))
            })?,
        ];
        // All six passages must be distinct slots: every crossing contributes
        // both of its passages to exactly one side.
        let mut slots: Vec<(usize, usize)> = sides
            .iter()
            .flat_map(|a| [(a.component, a.first), (a.component, a.second)])
            .collect();
        slots.sort_unstable();
        slots.dedup();
        if slots.len() != 6 {
            return Err(invalid(
                "the three crossings do not bound a triangle of six distinct passages".to_string(),
            ));
        }
        // Role pattern: one side over/over, one under/under, one mixed.
        let mut over_over = 0;
        let mut under_under = 0;
        let mut mixed = 0;
        for adj in &sides {
            let comp = &self.components()[adj.component];
            match (comp[adj.first].role, comp[adj.second].role) {
                (Role::Over, Role::Over) => over_over += 1,
                (Role::Under, Role::Under) => under_under += 1,
                _ => mixed += 1,
            }
        }
        if (over_over, under_under, mixed) != (1, 1, 1) {
            return Err(invalid(
                "triangle sides must pass over twice, under twice, and mixed once".to_string(),
            ));
        }
        // Orientation pattern: the directed sides must NOT form a directed
        // cycle around the triangle; a coherently oriented triangle is not a
        // slide pattern (and would change the Seifert smoothing).
        let mut out_degree = [0u32; 3];
        for adj in &sides {
            let comp = &self.components()[adj.component];
            let from = comp[adj.first].id;
            let idx = ids.iter().position(|&x| x == from).unwrap();
            out_degree[idx] += 1;
        }
        if out_degree == [1, 1, 1] {
            return Err(invalid(
                "triangle sides are coherently oriented; not a slide pattern".to_string(),
            ));
        }
        let mut components = self.components().to_vec();
        for adj in sides {
            components[adj.component].swap(adj.first, adj.second);
        }
        LinkDiagram::from_components(components)
    }
}
