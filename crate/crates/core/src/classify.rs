//! The classification engine: an ordered table of cited rules deciding,
//! for a manifold embedded in Euclidean n-space, whether it is weakly or
//! strongly integrable, a complete intersection, totally weakly
//! integrable, realizable as a foliation leaf, and critical — plus the
//! Stiefel-manifold homotopy lookups behind the frame-counting arguments.
//!
//! Evaluation is pure: rules fire in a fixed order, the first decisive
//! rule per property wins, and every answer carries its rule chain.

use std::fmt;

use crate::diagram::LinkDiagram;
use crate::invariants;
use crate::manifold::{ManifoldExpr, TriState};
use crate::rules;
use crate::verdict::{PropertyVerdict, RuleApplication, Verdict};

/// Errors raised by context validation and classification.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("invalid context: {0}")]
    ContextInvalid(String),
    #[error(
        "a Gauss-code diagram is required to decide strong integrability of \
         a compact curve in 3-space"
    )]
    MissingDiagram,
    #[error("no closed-form table entry for {what} with k = {k}, n = {n}")]
    OutOfTableRange {
        what: &'static str,
        k: u32,
        n: u32,
    },
    #[error("rule contradiction: {0}")]
    Contradiction(String),
}

/// A manifold embedded in Euclidean n-space, with the embedding facts the
/// rules consume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingContext {
    pub manifold: ManifoldExpr,
    /// Intrinsic dimension (must match the expression).
    pub k: u32,
    /// Ambient dimension.
    pub n: u32,
    pub connected: bool,
    pub compact: bool,
    /// Every component is non-compact.
    pub open_manifold: bool,
    /// User-supplied normal-bundle knowledge; `Unknown` defers entirely to
    /// the rules.
    pub normal_bundle_trivial: TriState,
    /// Gauss code of the embedding; consulted for compact curves in
    /// 3-space.
    pub diagram: Option<LinkDiagram>,
}

impl EmbeddingContext {
    /// Builds a context with flags derived from the expression. A
    /// non-compact expression is assumed open; refine with
    /// [`EmbeddingContext::with_open`] if only some components are
    /// non-compact.
    pub fn new(manifold: ManifoldExpr, n: u32) -> Result<Self, ClassifyError> {
        let k = manifold.dim();
        let compact = manifold.is_compact();
        let connected = manifold.is_connected();
        let ctx = EmbeddingContext {
            manifold,
            k,
            n,
            connected,
            compact,
            open_manifold: !compact,
            normal_bundle_trivial: TriState::Unknown,
            diagram: None,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn with_diagram(mut self, diagram: LinkDiagram) -> Self {
        self.diagram = Some(diagram);
        self
    }

    pub fn with_normal_override(mut self, t: TriState) -> Self {
        self.normal_bundle_trivial = t;
        self
    }

    pub fn with_open(mut self, open_manifold: bool) -> Self {
        self.open_manifold = open_manifold;
        self
    }

    fn invalid(message: impl Into<String>) -> ClassifyError {
        ClassifyError::ContextInvalid(message.into())
    }

    /// Checks that the dimensions and flags are mutually consistent.
    pub fn validate(&self) -> Result<(), ClassifyError> {
        self.manifold
            .validate()
            .map_err(|e| Self::invalid(e.to_string()))?;
        if self.k != self.manifold.dim() {
            return Err(Self::invalid(format!(
                "declared intrinsic dimension {} does not match the expression's {}",
                self.k,
                self.manifold.dim()
            )));
        }
        if self.n <= self.k {
            return Err(Self::invalid(format!(
                "ambient dimension {} must exceed intrinsic dimension {}",
                self.n, self.k
            )));
        }
        if self.compact != self.manifold.is_compact() {
            return Err(Self::invalid(
                "compactness flag disagrees with the expression",
            ));
        }
        if self.connected != self.manifold.is_connected() {
            return Err(Self::invalid(
                "connectedness flag disagrees with the expression",
            ));
        }
        if self.open_manifold && self.compact {
            return Err(Self::invalid("a compact manifold cannot be open"));
        }
        if !self.compact && self.connected && !self.open_manifold {
            return Err(Self::invalid(
                "a connected non-compact manifold is open",
            ));
        }
        if let Some(d) = &self.diagram {
            if self.k != 1 || self.n != 3 {
                return Err(Self::invalid(
                    "a Gauss-code diagram only describes curves in 3-space (k = 1, n = 3)",
                ));
            }
            if !self.compact {
                return Err(Self::invalid(
                    "a Gauss-code diagram describes closed curves; the manifold is not compact",
                ));
            }
            let b0 = self
                .manifold
                .z2_betti()
                .map_err(|e| Self::invalid(e.to_string()))?[0];
            if b0 != d.component_count() as u64 {
                return Err(Self::invalid(format!(
                    "the diagram has {} component(s) but the manifold has {} component(s)",
                    d.component_count(),
                    b0
                )));
            }
        }
        Ok(())
    }

    fn codim(&self) -> u32 {
        self.n - self.k
    }
}

fn consulted(rule: &'static rules::Rule, reason: String) -> RuleApplication {
    RuleApplication::new(rule, [format!("did not fire: {reason}")])
}

/// Decides normal-bundle triviality: user knowledge first, then the
/// codimension, parallelizability and sphere rules.
pub fn normal_bundle_trivial(ctx: &EmbeddingContext) -> PropertyVerdict {
    let codim = ctx.codim();
    let par = ctx.manifold.parallelizable();
    if ctx.normal_bundle_trivial.is_true() {
        return PropertyVerdict::decided(TriState::True, &rules::NB_OVERRIDE, ["override: true"]);
    }
    if codim == 1 || codim == 2 {
        return PropertyVerdict::decided(
            TriState::True,
            &rules::NB_CODIM12,
            [format!("codimension = {codim}")],
        );
    }
    if par.is_true() && ctx.n >= 2 * ctx.k {
        return PropertyVerdict::decided(
            TriState::True,
            &rules::NB_PAR_HALFDIM,
            [
                "parallelizable: true".to_string(),
                format!("n = {} >= 2k = {}", ctx.n, 2 * ctx.k),
            ],
        );
    }
    let sphere_dim = match ctx.manifold {
        ManifoldExpr::Sphere { dim } => Some(dim),
        _ => None,
    };
    if let Some(dim) = sphere_dim {
        if matches!(dim, 1 | 3 | 7) && !(dim == 7 && ctx.n == 11) {
            return PropertyVerdict::decided(
                TriState::True,
                &rules::NB_SPHERE,
                [format!("sphere of dimension {dim} in {}-space", ctx.n)],
            );
        }
    }
    if ctx.normal_bundle_trivial.is_false() {
        return PropertyVerdict::decided(TriState::False, &rules::NB_OVERRIDE, ["override: false"]);
    }
    if sphere_dim == Some(7) && ctx.n == 11 {
        return PropertyVerdict::unknown(vec![RuleApplication::new(
            &rules::NB_SPHERE_OPEN,
            ["the 7-sphere in 11-space: undecided"],
        )]);
    }
    PropertyVerdict::unknown(vec![
        consulted(&rules::NB_CODIM12, format!("codimension = {codim}")),
        consulted(
            &rules::NB_PAR_HALFDIM,
            format!("parallelizable = {par}, n = {}, 2k = {}", ctx.n, 2 * ctx.k),
        ),
        consulted(&rules::NB_OVERRIDE, "no override supplied".to_string()),
    ])
}

/// Decides total weak integrability of the abstract manifold.
pub fn twi_verdict(m: &ManifoldExpr) -> PropertyVerdict {
    let k = m.dim();
    let compact = m.is_compact();
    if !compact && m.is_connected() {
        return PropertyVerdict::decided(
            TriState::True,
            &rules::TWI_OPEN,
            ["connected and non-compact"],
        );
    }
    let par = m.parallelizable();
    if k == 3 || k == 7 {
        if !compact {
            return PropertyVerdict::unknown(vec![
                consulted(
                    &rules::TWI_OPEN,
                    "cannot confirm that every component is non-compact".to_string(),
                ),
                consulted(&rules::TWI_SEMICHAR, "the manifold is not compact".to_string()),
            ]);
        }
        let chi = m
            .semicharacteristic()
            .expect("compact odd-dimensional expression has a semicharacteristic");
        if chi % 2 == 1 {
            return PropertyVerdict::decided(
                TriState::False,
                &rules::TWI_SEMICHAR,
                [format!("semicharacteristic = {chi} (odd)")],
            );
        }
        match par {
            TriState::False => {
                return PropertyVerdict::decided(
                    TriState::False,
                    &rules::TWI_SEMICHAR,
                    ["parallelizable: false"],
                )
            }
            TriState::True => {
                return PropertyVerdict::decided(
                    TriState::True,
                    &rules::TWI_SEMICHAR,
                    [
                        "parallelizable: true".to_string(),
                        format!("semicharacteristic = {chi} (even)"),
                    ],
                )
            }
            TriState::Unknown => {}
        }
        if let ManifoldExpr::ConnectedSum(parts) = m {
            if parts.len() >= 2 && parts.iter().all(|p| p.parallelizable().is_true()) {
                return PropertyVerdict::decided(
                    TriState::True,
                    &rules::TWI_SUM_PARITY,
                    [
                        format!("{} parallelizable pieces", parts.len()),
                        format!("semicharacteristic of the sum = {chi} (even)"),
                    ],
                );
            }
        }
        return PropertyVerdict::unknown(vec![consulted(
            &rules::TWI_SEMICHAR,
            "parallelizability undetermined".to_string(),
        )]);
    }
    // k outside {3, 7}: total weak integrability is parallelizability.
    match par {
        TriState::True => {
            return PropertyVerdict::decided(
                TriState::True,
                &rules::TWI_CLASSIF,
                ["parallelizable: true"],
            )
        }
        TriState::False => {
            return PropertyVerdict::decided(
                TriState::False,
                &rules::TWI_CLASSIF,
                ["parallelizable: false"],
            )
        }
        TriState::Unknown => {}
    }
    if let ManifoldExpr::ConnectedSum(parts) = m {
        if parts.len() >= 2 {
            let r = parts.len();
            if k % 2 == 1 && k >= 5 && parts.iter().all(|p| p.parallelizable().is_true()) {
                return PropertyVerdict::decided(
                    TriState::from(r % 2 == 1),
                    &rules::TWI_SUM_ODD,
                    [format!("{r} parallelizable pieces of dimension {k}")],
                );
            }
            let piece_values: Vec<TriState> =
                parts.iter().map(|p| twi_verdict(p).value).collect();
            if piece_values.iter().all(|v| v.is_true()) {
                return PropertyVerdict::decided(
                    TriState::from(r % 2 == 1),
                    &rules::TWI_SUM_ALL,
                    [format!("all {r} pieces totally weakly integrable")],
                );
            }
            if piece_values.iter().all(|v| v.is_false()) {
                return PropertyVerdict::decided(
                    TriState::False,
                    &rules::TWI_SUM_ALL,
                    [format!("none of the {r} pieces is totally weakly integrable")],
                );
            }
        }
    }
    PropertyVerdict::unknown(vec![consulted(
        &rules::TWI_CLASSIF,
        "parallelizability undetermined".to_string(),
    )])
}

/// Total weak integrability with the context's open-manifold knowledge.
fn twi_for_ctx(ctx: &EmbeddingContext) -> PropertyVerdict {
    if ctx.open_manifold {
        PropertyVerdict::decided(
            TriState::True,
            &rules::TWI_OPEN,
            ["every component is non-compact"],
        )
    } else {
        twi_verdict(&ctx.manifold)
    }
}

fn wi_from_parts(
    ctx: &EmbeddingContext,
    nb: &PropertyVerdict,
    twi: &PropertyVerdict,
) -> PropertyVerdict {
    let (k, n) = (ctx.k, ctx.n);
    if n == k + 1 {
        return PropertyVerdict::decided(
            TriState::from(ctx.open_manifold),
            &rules::WI_CODIM1,
            [format!("hypersurface, open: {}", ctx.open_manifold)],
        );
    }
    let mut failed = Vec::new();
    if ctx.open_manifold {
        match nb.value {
            TriState::Unknown => failed.push(consulted(
                &rules::WI_OPEN_NU,
                "normal-bundle triviality undetermined".to_string(),
            )),
            decided => {
                return PropertyVerdict::decided(
                    decided,
                    &rules::WI_OPEN_NU,
                    [format!("open manifold, normal bundle trivial: {decided}")],
                )
            }
        }
    }
    if n > 2 * k {
        let par = ctx.manifold.parallelizable();
        match par {
            TriState::Unknown => failed.push(consulted(
                &rules::WI_LARGE_PAR,
                "parallelizability undetermined".to_string(),
            )),
            decided => {
                return PropertyVerdict::decided(
                    decided,
                    &rules::WI_LARGE_PAR,
                    [format!("n = {n} >= 2k+1, parallelizable: {decided}")],
                )
            }
        }
    } else {
        // k+2 <= n <= 2k
        if twi.value.is_false() {
            return PropertyVerdict::decided(
                TriState::False,
                &rules::WI_LOWDIM_NEG,
                ["totally weakly integrable: false"],
            );
        }
        if twi.value.is_true() && nb.value.is_true() {
            return PropertyVerdict::decided(
                TriState::True,
                &rules::WI_LOWDIM_TWI,
                ["totally weakly integrable: true", "normal bundle trivial: true"],
            );
        }
        failed.push(consulted(
            &rules::WI_LOWDIM_TWI,
            format!(
                "totally weakly integrable = {}, normal bundle trivial = {}",
                twi.value, nb.value
            ),
        ));
    }
    PropertyVerdict::unknown(failed)
}

/// Complete-intersection value obtainable from codimension rules alone.
fn ci_base(ctx: &EmbeddingContext, nb: &PropertyVerdict) -> Option<PropertyVerdict> {
    let codim = ctx.codim();
    if codim == 1 || codim == 2 {
        return Some(PropertyVerdict::decided(
            TriState::True,
            &rules::CI_CODIM12,
            [format!("codimension = {codim}")],
        ));
    }
    if (codim == 4 || codim == 8) && nb.value.is_true() {
        return Some(PropertyVerdict::decided(
            TriState::True,
            &rules::CI_CODIM48,
            [format!("codimension = {codim}"), "normal bundle trivial: true".to_string()],
        ));
    }
    None
}

fn si_from_parts(
    ctx: &EmbeddingContext,
    twi: &PropertyVerdict,
    wi: &PropertyVerdict,
    nb: &PropertyVerdict,
) -> Result<PropertyVerdict, ClassifyError> {
    let (k, n) = (ctx.k, ctx.n);
    let par = ctx.manifold.parallelizable();
    if n == k + 1 {
        return Ok(PropertyVerdict::decided(
            TriState::from(ctx.open_manifold),
            &rules::SI_CODIM1,
            [format!("hypersurface, open: {}", ctx.open_manifold)],
        ));
    }
    if wi.value.is_false() {
        return Ok(PropertyVerdict::decided(
            TriState::False,
            &rules::SI_FROM_WI,
            ["weakly integrable: false"],
        ));
    }
    if n >= 2 * k + 2 {
        if par.is_true() {
            return Ok(PropertyVerdict::decided(
                TriState::True,
                &rules::SI_LARGE,
                [format!("n = {n} >= 2k+2, parallelizable: true")],
            ));
        }
        return Ok(PropertyVerdict::unknown(vec![consulted(
            &rules::SI_LARGE,
            format!("parallelizable = {par}"),
        )]));
    }
    if n == 2 * k + 1 {
        if ctx.open_manifold && par.is_true() {
            return Ok(PropertyVerdict::decided(
                TriState::True,
                &rules::SI_BOUNDARY_OPEN,
                ["open and parallelizable at n = 2k+1"],
            ));
        }
        if k == 1 && ctx.compact {
            let d = ctx.diagram.as_ref().ok_or(ClassifyError::MissingDiagram)?;
            return Ok(invariants::si_link_verdict(d).strongly_integrable);
        }
        if (k == 3 || k == 7) && ctx.connected && ctx.compact && par.is_true() {
            let chi = ctx
                .manifold
                .semicharacteristic()
                .expect("compact odd-dimensional expression has a semicharacteristic");
            return Ok(PropertyVerdict::decided(
                TriState::from(chi.is_multiple_of(2)),
                &rules::SI_SEMICHAR,
                [
                    "parallelizable: true".to_string(),
                    format!("semicharacteristic = {chi}"),
                ],
            ));
        }
        if k >= 2 && k != 3 && k != 7 && ctx.connected && ctx.compact && twi.value.is_true() {
            return Ok(PropertyVerdict::decided(
                TriState::True,
                &rules::SI_BOUNDARY_TWI,
                ["compact, connected and totally weakly integrable at n = 2k+1"],
            ));
        }
        return Ok(PropertyVerdict::unknown(vec![
            consulted(
                &rules::SI_BOUNDARY_OPEN,
                format!("open = {}, parallelizable = {par}", ctx.open_manifold),
            ),
            consulted(
                &rules::SI_BOUNDARY_TWI,
                format!(
                    "connected = {}, compact = {}, totally weakly integrable = {} \
                     (for several compact components at n = 2k+1 the question is open)",
                    ctx.connected, ctx.compact, twi.value
                ),
            ),
        ]));
    }
    // k+2 <= n <= 2k: conjunction of weak integrability and the
    // codimension complete-intersection rules.
    let ci = ci_base(ctx, nb).map_or(TriState::Unknown, |v| v.value);
    let conj = wi.value.and(ci);
    let inputs = [
        format!("weakly integrable: {}", wi.value),
        format!("complete intersection (codimension rules): {ci}"),
    ];
    if conj == TriState::Unknown {
        Ok(PropertyVerdict::unknown(vec![RuleApplication::new(
            &rules::SI_LOWDIM,
            inputs
                .iter()
                .map(|s| format!("did not fire: {s}"))
                .collect::<Vec<_>>(),
        )]))
    } else {
        Ok(PropertyVerdict::decided(conj, &rules::SI_LOWDIM, inputs))
    }
}

fn ci_from_parts(
    ctx: &EmbeddingContext,
    nb: &PropertyVerdict,
    si: &PropertyVerdict,
) -> PropertyVerdict {
    if let Some(base) = ci_base(ctx, nb) {
        return base;
    }
    if si.value.is_true() {
        return PropertyVerdict::decided(
            TriState::True,
            &rules::CI_FROM_SI,
            ["strongly integrable: true"],
        );
    }
    let codim = ctx.codim();
    PropertyVerdict::unknown(vec![
        consulted(&rules::CI_CODIM12, format!("codimension = {codim}")),
        consulted(
            &rules::CI_CODIM48,
            format!(
                "codimension = {codim}, normal bundle trivial = {}",
                nb.value
            ),
        ),
        consulted(
            &rules::CI_FROM_SI,
            format!("strongly integrable = {}", si.value),
        ),
    ])
}

fn leaf_strict(ctx: &EmbeddingContext, nb: &PropertyVerdict) -> PropertyVerdict {
    let (k, n) = (ctx.k, ctx.n);
    let par = ctx.manifold.parallelizable();
    if n > 2 * k {
        return match par {
            TriState::Unknown => PropertyVerdict::unknown(vec![consulted(
                &rules::LEAF_STABLE,
                "parallelizability undetermined".to_string(),
            )]),
            decided => PropertyVerdict::decided(
                decided,
                &rules::LEAF_STABLE,
                [format!("n = {n} >= 2k+1, parallelizable: {decided}")],
            ),
        };
    }
    if k == 3 || k == 7 {
        let chi = ctx
            .manifold
            .semicharacteristic()
            .expect("compact odd-dimensional expression has a semicharacteristic");
        let value = par
            .and(nb.value)
            .and(TriState::from(chi.is_multiple_of(2)));
        let inputs = [
            format!("parallelizable: {par}"),
            format!("normal bundle trivial: {}", nb.value),
            format!("semicharacteristic = {chi}"),
        ];
        return if value == TriState::Unknown {
            PropertyVerdict::unknown(vec![RuleApplication::new(
                &rules::LEAF_COMPACT_37,
                inputs
                    .iter()
                    .map(|s| format!("did not fire: {s}"))
                    .collect::<Vec<_>>(),
            )])
        } else {
            PropertyVerdict::decided(value, &rules::LEAF_COMPACT_37, inputs)
        };
    }
    let value = par.and(nb.value);
    let inputs = [
        format!("parallelizable: {par}"),
        format!("normal bundle trivial: {}", nb.value),
    ];
    if value == TriState::Unknown {
        PropertyVerdict::unknown(vec![RuleApplication::new(
            &rules::LEAF_COMPACT_GENERIC,
            inputs
                .iter()
                .map(|s| format!("did not fire: {s}"))
                .collect::<Vec<_>>(),
        )])
    } else {
        PropertyVerdict::decided(value, &rules::LEAF_COMPACT_GENERIC, inputs)
    }
}

/// Strict leaf-realizability verdict for a compact connected manifold in
/// codimension at least two.
pub fn leaf_verdict(ctx: &EmbeddingContext) -> Result<PropertyVerdict, ClassifyError> {
    ctx.validate()?;
    if !ctx.compact || !ctx.connected {
        return Err(ClassifyError::ContextInvalid(
            "leaf realizability is tabulated for compact connected manifolds; \
             for other inputs it coincides with weak integrability in codimension >= 2"
                .to_string(),
        ));
    }
    if ctx.n < ctx.k + 2 {
        return Err(ClassifyError::ContextInvalid(
            "leaf realizability requires codimension at least two".to_string(),
        ));
    }
    let nb = normal_bundle_trivial(ctx);
    Ok(leaf_strict(ctx, &nb))
}

fn leaf_assembled(
    ctx: &EmbeddingContext,
    nb: &PropertyVerdict,
    wi: &PropertyVerdict,
) -> PropertyVerdict {
    let union_inputs = [
        format!("weakly integrable: {}", wi.value),
        "codimension >= 2".to_string(),
    ];
    if ctx.compact && ctx.connected && ctx.n >= ctx.k + 2 {
        let strict = leaf_strict(ctx, nb);
        if strict.value != TriState::Unknown {
            return strict;
        }
        if wi.value != TriState::Unknown {
            return PropertyVerdict::decided(wi.value, &rules::LEAF_UNION_WI, union_inputs);
        }
        return strict;
    }
    if ctx.codim() >= 2 {
        return match wi.value {
            TriState::Unknown => PropertyVerdict::unknown(vec![consulted(
                &rules::LEAF_UNION_WI,
                "weak integrability undetermined".to_string(),
            )]),
            decided => PropertyVerdict::decided(decided, &rules::LEAF_UNION_WI, union_inputs),
        };
    }
    PropertyVerdict::unknown(vec![consulted(
        &rules::LEAF_UNION_WI,
        "codimension 1 has no leaf-realization rule".to_string(),
    )])
}

fn critical_from_si(si: &PropertyVerdict) -> PropertyVerdict {
    if si.value.is_true() {
        PropertyVerdict::decided(TriState::True, &rules::CRIT_SI, ["strongly integrable: true"])
    } else {
        PropertyVerdict::unknown(vec![consulted(
            &rules::CRIT_SI,
            format!("strongly integrable = {}", si.value),
        )])
    }
}

/// Weak-integrability verdict for a validated context.
pub fn wi_verdict(ctx: &EmbeddingContext) -> Result<PropertyVerdict, ClassifyError> {
    ctx.validate()?;
    let nb = normal_bundle_trivial(ctx);
    let twi = twi_for_ctx(ctx);
    Ok(wi_from_parts(ctx, &nb, &twi))
}

/// Strong-integrability verdict for a validated context.
pub fn si_verdict(ctx: &EmbeddingContext) -> Result<PropertyVerdict, ClassifyError> {
    ctx.validate()?;
    let nb = normal_bundle_trivial(ctx);
    let twi = twi_for_ctx(ctx);
    let wi = wi_from_parts(ctx, &nb, &twi);
    si_from_parts(ctx, &twi, &wi, &nb)
}

/// Complete-intersection verdict for a validated context.
pub fn ci_verdict(ctx: &EmbeddingContext) -> Result<PropertyVerdict, ClassifyError> {
    ctx.validate()?;
    let nb = normal_bundle_trivial(ctx);
    if let Some(base) = ci_base(ctx, &nb) {
        return Ok(base);
    }
    let si = si_verdict(ctx)?;
    Ok(ci_from_parts(ctx, &nb, &si))
}

/// Criticality verdict; undecidable strong integrability (for example a
/// curve context without a diagram) degrades to `Unknown`.
pub fn critical_verdict(ctx: &EmbeddingContext) -> Result<PropertyVerdict, ClassifyError> {
    ctx.validate()?;
    match si_verdict(ctx) {
        Ok(si) => Ok(critical_from_si(&si)),
        Err(ClassifyError::MissingDiagram) => Ok(PropertyVerdict::unknown(vec![consulted(
            &rules::CRIT_SI,
            "strong integrability undetermined without a diagram".to_string(),
        )])),
        Err(e) => Err(e),
    }
}

/// Runs the whole rule table and cross-checks the answers.
pub fn classify(ctx: &EmbeddingContext) -> Result<Verdict, ClassifyError> {
    ctx.validate()?;
    let nb = normal_bundle_trivial(ctx);
    let twi = twi_for_ctx(ctx);
    let wi = wi_from_parts(ctx, &nb, &twi);
    let si = si_from_parts(ctx, &twi, &wi, &nb)?;
    let ci = ci_from_parts(ctx, &nb, &si);
    let leaf = leaf_assembled(ctx, &nb, &wi);
    let critical = critical_from_si(&si);
    let verdict = Verdict {
        weakly_integrable: wi,
        strongly_integrable: si,
        complete_intersection: ci,
        totally_weakly_integrable: twi,
        normal_bundle_trivial: nb,
        leaf,
        critical,
    };
    consistency_check(ctx, &verdict)?;
    Ok(verdict)
}

/// Rejects combinations of answers that no consistent input can produce;
/// reaching this error means the supplied embedding facts were impossible.
fn consistency_check(ctx: &EmbeddingContext, v: &Verdict) -> Result<(), ClassifyError> {
    let par = ctx.manifold.parallelizable();
    if v.strongly_integrable.is_true() && v.weakly_integrable.is_false() {
        return Err(ClassifyError::Contradiction(
            "strongly integrable yet not weakly integrable".to_string(),
        ));
    }
    if v.strongly_integrable.is_true() && v.complete_intersection.is_false() {
        return Err(ClassifyError::Contradiction(
            "strongly integrable yet not a complete intersection".to_string(),
        ));
    }
    if v.weakly_integrable.is_true() && par.is_false() {
        return Err(ClassifyError::Contradiction(
            "weakly integrable yet not parallelizable; the supplied embedding \
             facts are impossible"
                .to_string(),
        ));
    }
    if ctx.compact
        && ctx.connected
        && ctx.n >= ctx.k + 2
        && v.leaf.value != TriState::Unknown
        && v.weakly_integrable.value != TriState::Unknown
        && v.leaf.value != v.weakly_integrable.value
    {
        return Err(ClassifyError::Contradiction(
            "leaf realizability and weak integrability disagree for a compact \
             connected manifold in codimension >= 2"
                .to_string(),
        ));
    }
    Ok(())
}

/// Description of a homotopy group in the frame tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDesc {
    TrivialGroup,
    Z,
    Z2,
    PowerOf(Box<GroupDesc>, u32),
    Unknown,
}

impl GroupDesc {
    /// `base^r`, collapsing trivial cases: the first power is the group
    /// itself and powers of the trivial group stay trivial.
    pub fn power_of(base: GroupDesc, r: u32) -> GroupDesc {
        assert!(r >= 1, "component count must be at least 1");
        if r == 1 || base == GroupDesc::TrivialGroup {
            base
        } else {
            GroupDesc::PowerOf(Box::new(base), r)
        }
    }
}

impl fmt::Display for GroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDesc::TrivialGroup => write!(f, "trivial"),
            GroupDesc::Z => write!(f, "Z"),
            GroupDesc::Z2 => write!(f, "Z2"),
            GroupDesc::PowerOf(base, r) => write!(f, "{base}^{r}"),
            GroupDesc::Unknown => write!(f, "unknown"),
        }
    }
}

/// Which frame field a homotopy count refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    TangentFrame,
    NormalFrame,
}

/// π_k of the Stiefel manifold of (n−k)-frames in n-space.
pub fn stiefel_pi(k: u32, n: u32) -> Result<GroupDesc, ClassifyError> {
    if k < 1 || n <= k {
        return Err(ClassifyError::ContextInvalid(format!(
            "the Stiefel table needs n > k >= 1, got k = {k}, n = {n}"
        )));
    }
    if k.is_multiple_of(2) || n == k + 1 {
        Ok(GroupDesc::Z)
    } else {
        Ok(GroupDesc::Z2)
    }
}

/// Homotopy classes of tangent or normal frame fields for a manifold with
/// `r` compact components.
pub fn homotopy_classes(
    r: u32,
    k: u32,
    n: u32,
    which: FrameKind,
) -> Result<GroupDesc, ClassifyError> {
    if r < 1 {
        return Err(ClassifyError::ContextInvalid(
            "component count must be at least 1".to_string(),
        ));
    }
    if k < 1 || n <= k {
        return Err(ClassifyError::ContextInvalid(format!(
            "frame tables need n > k >= 1, got k = {k}, n = {n}"
        )));
    }
    match which {
        FrameKind::TangentFrame => {
            if n > 2 * k {
                Ok(GroupDesc::TrivialGroup)
            } else if n == 2 * k {
                Ok(GroupDesc::power_of(stiefel_pi(k, 2 * k)?, r))
            } else {
                Err(ClassifyError::OutOfTableRange {
                    what: "tangent frames",
                    k,
                    n,
                })
            }
        }
        FrameKind::NormalFrame => Ok(GroupDesc::power_of(stiefel_pi(k, n)?, r)),
    }
}
