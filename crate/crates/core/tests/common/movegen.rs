//! Random generation of *valid* Reidemeister moves.
//!
//! The walk driver keeps diagrams within a size budget (preferring
//! shrinking moves once the budget is hit) and tracks the signed count of
//! first-move insertions and deletions per component, which is exactly the
//! amount by which each Whitney number is allowed to drift.

use integrability::diagram::Sign;
use integrability::moves::MoveSpec;
use integrability::LinkDiagram;
use rand::prelude::*;

/// Soft cap on the crossing count during a random walk.
const SIZE_CAP: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    R1Insert,
    R1Delete,
    R2Insert,
    R2Delete,
    R3Slide,
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.random::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// All crossings whose two passages are cyclically adjacent on one
/// component — the candidates for a first-move deletion.
fn r1_delete_candidates(d: &LinkDiagram) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    for rec in d.crossings() {
        let (oc, op) = rec.over;
        let (uc, up) = rec.under;
        if oc != uc {
            continue;
        }
        let len = d.components()[oc].len();
        let adjacent = (op + 1) % len == up || (up + 1) % len == op;
        if adjacent {
            out.push(MoveSpec::R1Delete { crossing: rec.id });
        }
    }
    out
}

/// Pairs of opposite-sign crossings whose over-passages are cyclically
/// adjacent somewhere and whose under-passages are cyclically adjacent
/// somewhere — the candidates for a second-move cancellation.
fn r2_delete_candidates(d: &LinkDiagram) -> Vec<MoveSpec> {
    let comps = d.components();
    let mut out = Vec::new();
    for a in d.crossings() {
        let (c, p) = a.over;
        let len = comps[c].len();
        if len < 2 {
            continue;
        }
        let next = comps[c][(p + 1) % len];
        if next.id == a.id {
            continue;
        }
        let Some(b) = d.crossing(next.id) else {
            continue;
        };
        // The partner's over-passage must be that neighbouring slot.
        if b.over != (c, (p + 1) % len) || b.sign == a.sign {
            continue;
        }
        let (uc, up) = a.under;
        let ulen = comps[uc].len();
        let under_adjacent =
            b.under == (uc, (up + 1) % ulen) || b.under == (uc, (up + ulen - 1) % ulen);
        if under_adjacent {
            out.push(MoveSpec::R2Delete {
                crossings: (a.id, b.id),
            });
        }
    }
    out
}

/// Unordered crossing pairs that are cyclically adjacent on some component.
fn adjacent_crossing_pairs(d: &LinkDiagram) -> std::collections::HashSet<(u32, u32)> {
    let mut pairs = std::collections::HashSet::new();
    for comp in d.components() {
        let len = comp.len();
        if len < 2 {
            continue;
        }
        for i in 0..len {
            let a = comp[i].id;
            let b = comp[(i + 1) % len].id;
            if a != b {
                pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    pairs
}

/// Crossing triples adjacent pairwise — the candidates for a third-move
/// slide (role patterns and orientation coherence are left to the rewrite
/// engine to check).
fn r3_candidates(d: &LinkDiagram) -> Vec<MoveSpec> {
    let pairs = adjacent_crossing_pairs(d);
    let mut out = Vec::new();
    let ids: Vec<u32> = d.crossings().map(|r| r.id).collect();
    for &(a, b) in &pairs {
        for &c in &ids {
            if c <= b || c == a {
                continue;
            }
            let ac = pairs.contains(&(a.min(c), a.max(c)));
            let bc = pairs.contains(&(b.min(c), b.max(c)));
            if ac && bc {
                out.push(MoveSpec::R3Slide {
                    crossings: [a, b, c],
                });
            }
        }
    }
    out
}

fn random_r1_insert(d: &LinkDiagram, rng: &mut impl Rng) -> MoveSpec {
    let component = rng.random_range(0..d.component_count());
    let gap = rng.random_range(0..=d.components()[component].len());
    MoveSpec::R1Insert {
        component,
        gap,
        sign: random_sign(rng),
        over_first: rng.random::<bool>(),
    }
}

fn random_r2_insert(d: &LinkDiagram, rng: &mut impl Rng) -> Option<MoveSpec> {
    let mut locations = Vec::new();
    for (c, comp) in d.components().iter().enumerate() {
        for gap in 0..=comp.len() {
            locations.push((c, gap));
        }
    }
    if locations.len() < 2 {
        return None;
    }
    let over = *locations.choose(rng).expect("nonempty");
    let under = loop {
        let u = *locations.choose(rng).expect("nonempty");
        if u != over {
            break u;
        }
    };
    Some(MoveSpec::R2Insert {
        over,
        under,
        sign: random_sign(rng),
        parallel: rng.random::<bool>(),
    })
}

/// Draws one applicable move, preferring shrinking moves over the size cap
/// and growing moves on very small diagrams.
pub fn random_move(d: &LinkDiagram, rng: &mut impl Rng) -> (MoveSpec, LinkDiagram) {
    let crossings = d.crossing_count();
    let mut kinds = if crossings >= SIZE_CAP {
        vec![Kind::R1Delete, Kind::R2Delete, Kind::R3Slide]
    } else {
        vec![
            Kind::R1Insert,
            Kind::R1Delete,
            Kind::R2Insert,
            Kind::R2Delete,
            Kind::R3Slide,
            Kind::R3Slide,
        ]
    };
    kinds.shuffle(rng);
    for kind in kinds {
        let attempt = match kind {
            Kind::R1Insert => Some(random_r1_insert(d, rng)),
            Kind::R2Insert => random_r2_insert(d, rng),
            Kind::R1Delete => r1_delete_candidates(d).choose(rng).cloned(),
            Kind::R2Delete => r2_delete_candidates(d).choose(rng).cloned(),
            Kind::R3Slide => {
                // Pattern checks beyond adjacency are delegated to the
                // engine, so several candidates may need to be tried.
                let mut cands = r3_candidates(d);
                cands.shuffle(rng);
                cands
                    .into_iter()
                    .find(|m| d.apply_move(m).is_ok())
            }
        };
        if let Some(m) = attempt {
            if let Ok(next) = d.apply_move(&m) {
                return (m, next);
            }
        }
    }
    // A first-move insertion is always applicable.
    let m = random_r1_insert(d, rng);
    let next = d.apply_move(&m).expect("kink insertion is always valid");
    (m, next)
}

/// The signed first-move drift a move causes on each component: +sign for
/// an inserted kink, -sign for a deleted one, zero otherwise.
pub fn r1_drift(before: &LinkDiagram, m: &MoveSpec) -> Vec<i64> {
    let mut drift = vec![0i64; before.component_count()];
    match *m {
        MoveSpec::R1Insert {
            component, sign, ..
        } => drift[component] += sign.value(),
        MoveSpec::R1Delete { crossing } => {
            let rec = before
                .crossing(crossing)
                .expect("deleted crossing exists in the source diagram");
            drift[rec.over.0] -= rec.sign.value();
        }
        _ => {}
    }
    drift
}

/// One random walk step: returns the move, the rewritten diagram, and the
/// per-component signed first-move drift.
pub fn step(d: &LinkDiagram, rng: &mut impl Rng) -> (MoveSpec, LinkDiagram, Vec<i64>) {
    let (m, next) = random_move(d, rng);
    let drift = r1_drift(d, &m);
    (m, next, drift)
}
