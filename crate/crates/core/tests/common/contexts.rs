//! Randomized embedding contexts for lattice/consistency suites.
//!
//! The generator samples the whole expression grammar (atoms, products,
//! connected sums, custom manifolds) and dresses the result with a random
//! ambient dimension and flags. It avoids only *self-contradictory*
//! inputs — assertions no actual manifold can satisfy, such as an open
//! parallelizability-False manifold declared to have a trivial normal
//! bundle — because those are documented to fail loudly rather than
//! classify.

use integrability::{EmbeddingContext, LinkDiagram, ManifoldExpr, TriState};
use rand::prelude::*;

use super::movegen;

fn random_tristate(rng: &mut impl Rng) -> TriState {
    match rng.random_range(0..5) {
        0 => TriState::True,
        1 => TriState::False,
        _ => TriState::Unknown,
    }
}

/// A palindromic Betti vector with the requested b₀.
fn palindromic_betti(rng: &mut impl Rng, dim: u32, b0: u64) -> Vec<u64> {
    let len = dim as usize + 1;
    let mut betti = vec![0u64; len];
    betti[0] = b0;
    betti[len - 1] = b0;
    for i in 1..len / 2 {
        let b = rng.random_range(0..=3u64);
        betti[i] = b;
        betti[len - 1 - i] = b;
    }
    if len % 2 == 1 && len > 2 {
        betti[len / 2] = rng.random_range(0..=4u64);
    }
    if len == 2 {
        betti[1] = b0;
    }
    betti
}

fn random_custom(rng: &mut impl Rng, max_dim: u32) -> ManifoldExpr {
    let dim = rng.random_range(1..=max_dim.min(8));
    let compact = rng.random::<bool>();
    let connected = rng.random::<bool>();
    let b0 = if connected {
        1
    } else {
        rng.random_range(2..=3u64)
    };
    let z2_betti = if compact {
        palindromic_betti(rng, dim, b0)
    } else {
        let mut betti: Vec<u64> = (0..=dim).map(|_| rng.random_range(0..=3u64)).collect();
        betti[0] = b0;
        betti
    };
    ManifoldExpr::Custom {
        dim,
        z2_betti,
        compact,
        connected,
        parallelizable: random_tristate(rng),
    }
}

/// One grammar atom of dimension at most `max_dim`.
pub fn random_atom(rng: &mut impl Rng, max_dim: u32) -> ManifoldExpr {
    loop {
        match rng.random_range(0..5) {
            0 => return ManifoldExpr::Sphere {
                dim: rng.random_range(1..=max_dim.min(8)),
            },
            1 => return ManifoldExpr::Torus {
                dim: rng.random_range(1..=max_dim.min(5)),
            },
            2 if max_dim >= 3 => {
                return ManifoldExpr::LensSpace {
                    p: rng.random_range(2..=9),
                    q: 1,
                }
            }
            3 if max_dim >= 2 => {
                return ManifoldExpr::OrientedSurface {
                    genus: rng.random_range(0..=4),
                }
            }
            4 => return random_custom(rng, max_dim),
            _ => {}
        }
    }
}

/// A compact connected atom of exactly dimension `dim` (for sum pieces).
fn random_closed_piece(rng: &mut impl Rng, dim: u32) -> ManifoldExpr {
    match rng.random_range(0..4) {
        0 => ManifoldExpr::Sphere { dim },
        1 => ManifoldExpr::Torus { dim },
        2 if dim == 3 => ManifoldExpr::LensSpace {
            p: rng.random_range(2..=9),
            q: 1,
        },
        2 if dim == 2 => ManifoldExpr::OrientedSurface {
            genus: rng.random_range(0..=4),
        },
        _ => ManifoldExpr::Custom {
            dim,
            z2_betti: palindromic_betti(rng, dim, 1),
            compact: true,
            connected: true,
            parallelizable: random_tristate(rng),
        },
    }
}

/// A random expression exercising atoms, products and connected sums.
pub fn random_manifold(rng: &mut impl Rng) -> ManifoldExpr {
    match rng.random_range(0..4) {
        0 | 1 => random_atom(rng, 9),
        2 => {
            let count = rng.random_range(2..=3);
            let factors: Vec<ManifoldExpr> =
                (0..count).map(|_| random_atom(rng, 4)).collect();
            ManifoldExpr::Product(factors)
        }
        _ => {
            let dim = rng.random_range(2..=7);
            let count = rng.random_range(1..=4);
            let pieces: Vec<ManifoldExpr> =
                (0..count).map(|_| random_closed_piece(rng, dim)).collect();
            ManifoldExpr::ConnectedSum(pieces)
        }
    }
}

/// A diagram with the requested number of link components, produced by a
/// short random walk from the split union of unknots.
pub fn random_diagram(rng: &mut impl Rng, components: usize) -> LinkDiagram {
    let code = vec!["( )"; components].join(";");
    let mut d = LinkDiagram::parse_gauss(&code).expect("split union parses");
    for _ in 0..rng.random_range(0..12) {
        let (_, next) = movegen::random_move(&d, rng);
        d = next;
    }
    d
}

/// One randomized, satisfiable embedding context.
pub fn random_context(rng: &mut impl Rng) -> EmbeddingContext {
    loop {
        let m = random_manifold(rng);
        if m.validate().is_err() {
            continue;
        }
        let k = m.dim();
        let par = m.parallelizable();
        let compact = m.is_compact();
        let mut n = k + 1 + rng.random_range(0..=k + 3);
        // An open manifold that is not parallelizable cannot sit in
        // codimension one or two: there the normal bundle is automatically
        // trivial, an open manifold with trivial normal bundle is weakly
        // integrable, and weak integrability forces parallelizability.
        // Keep such inputs satisfiable by giving them codimension >= 3.
        if !compact && par.is_false() && n < k + 3 {
            n = k + 3 + rng.random_range(0..=2);
        }
        // A closed curve diagram is mandatory at (k, n) = (1, 3); a
        // non-parallelizable "curve" is no curve at all, so move it out
        // of dimension three instead.
        if k == 1 && compact && n == 3 && par.is_false() {
            n += rng.random_range(1..=3);
        }
        let Ok(mut ctx) = EmbeddingContext::new(m, n) else {
            continue;
        };
        if ctx.k == 1 && ctx.compact && ctx.n == 3 {
            let components = ctx.manifold.z2_betti().expect("closed curve")[0] as usize;
            ctx = ctx.with_diagram(random_diagram(rng, components));
        }
        // A disconnected non-compact manifold may still have compact
        // components; exercise that corner occasionally.
        if !ctx.compact && !ctx.connected && rng.random_range(0..5) == 0 {
            ctx = ctx.with_open(false);
        }
        let override_allowed = !(ctx.open_manifold && par.is_false());
        let t = random_tristate(rng);
        if t != TriState::Unknown && (t.is_false() || override_allowed) {
            ctx = ctx.with_normal_override(t);
        }
        if ctx.validate().is_err() {
            continue;
        }
        return ctx;
    }
}
