//! The rule registry: every decidable fact the classifier can invoke.
//!
//! A [`Rule`] pairs a stable identifier with a short descriptive name and a
//! one-sentence statement of the mathematical fact it encodes. Verdict
//! chains reference these rules so that every answer is auditable: the
//! reader of a report sees exactly which facts produced it.

/// One named mathematical fact usable in a verdict chain.
#[derive(Debug, PartialEq, Eq)]
pub struct Rule {
    /// Stable machine identifier, e.g. `"wi.codim1"`.
    pub id: &'static str,
    /// Short human name of the underlying result.
    pub theorem: &'static str,
    /// One-sentence statement of the fact.
    pub quote: &'static str,
}

pub static WI_CODIM1: Rule = Rule {
    id: "wi.codim1",
    theorem: "hypersurface dichotomy",
    quote: "A hypersurface of Euclidean space is weakly integrable exactly when all of its components are non-compact.",
};

pub static WI_OPEN_NU: Rule = Rule {
    id: "wi.open-nu",
    theorem: "open-manifold normal criterion",
    quote: "A submanifold with no compact component is weakly integrable exactly when its normal bundle is trivial.",
};

pub static WI_LARGE_PAR: Rule = Rule {
    id: "wi.large-par",
    theorem: "stable-range criterion",
    quote: "In ambient dimension at least 2k+1, an embedded k-manifold is weakly integrable exactly when it is parallelizable.",
};

pub static WI_LOWDIM_TWI: Rule = Rule {
    id: "wi.lowdim-twi",
    theorem: "intrinsic sufficiency in low codimension",
    quote: "A totally weakly integrable manifold embedded with trivial normal bundle is weakly integrable.",
};

pub static WI_LOWDIM_NEG: Rule = Rule {
    id: "wi.lowdim-neg",
    theorem: "intrinsic necessity in low codimension",
    quote: "In ambient dimension between k+2 and 2k, a manifold that is not totally weakly integrable has no weakly integrable embedding.",
};

pub static TWI_OPEN: Rule = Rule {
    id: "twi.open",
    theorem: "open manifolds",
    quote: "Every manifold all of whose components are non-compact is totally weakly integrable.",
};

pub static TWI_CLASSIF: Rule = Rule {
    id: "twi.classif",
    theorem: "parallelizability characterization",
    quote: "For intrinsic dimension other than 3 and 7, a manifold is totally weakly integrable exactly when it is parallelizable.",
};

pub static TWI_SEMICHAR: Rule = Rule {
    id: "twi.semichar",
    theorem: "dimension 3 and 7 characterization",
    quote: "A compact manifold of dimension 3 or 7 is totally weakly integrable exactly when it is parallelizable and its semicharacteristic is even.",
};

pub static TWI_SUM_PARITY: Rule = Rule {
    id: "twi.sum-parity",
    theorem: "connected-sum semicharacteristic parity",
    quote: "A connected sum of compact parallelizable pieces of dimension 3 or 7 is totally weakly integrable exactly when the semicharacteristic of the sum is even.",
};

pub static TWI_SUM_ODD: Rule = Rule {
    id: "twi.sum-odd",
    theorem: "connected-sum piece parity",
    quote: "A connected sum of compact parallelizable pieces of odd dimension at least 5, other than 7, is totally weakly integrable exactly when the number of pieces is odd.",
};

pub static TWI_SUM_ALL: Rule = Rule {
    id: "twi.sum-all",
    theorem: "connected sums of integrable pieces",
    quote: "If every piece of a connected sum is totally weakly integrable the sum is totally weakly integrable exactly when the number of pieces is odd; if no piece is, neither is the sum.",
};

pub static CI_CODIM12: Rule = Rule {
    id: "ci.codim12",
    theorem: "low-codimension complete intersections",
    quote: "Every oriented submanifold of Euclidean space of codimension one or two is a complete intersection.",
};

pub static CI_CODIM48: Rule = Rule {
    id: "ci.codim48",
    theorem: "codimension 4 and 8 complete intersections",
    quote: "A submanifold of codimension 4 or 8 with trivial normal bundle is a complete intersection.",
};

pub static CI_FROM_SI: Rule = Rule {
    id: "ci.from-si",
    theorem: "strong integrability gives complete intersections",
    quote: "Every strongly integrable submanifold is a complete intersection.",
};

pub static SI_CODIM1: Rule = Rule {
    id: "si.codim1",
    theorem: "hypersurface dichotomy",
    quote: "A hypersurface of Euclidean space is strongly integrable exactly when all of its components are non-compact.",
};

pub static SI_LARGE: Rule = Rule {
    id: "si.large",
    theorem: "high-codimension strong integrability",
    quote: "A parallelizable k-manifold embedded in ambient dimension at least 2k+2 is strongly integrable.",
};

pub static SI_BOUNDARY_OPEN: Rule = Rule {
    id: "si.boundary-open",
    theorem: "open case at the critical codimension",
    quote: "A parallelizable k-manifold with no compact component embedded in ambient dimension 2k+1 is strongly integrable.",
};

pub static SI_BOUNDARY_TWI: Rule = Rule {
    id: "si.boundary-twi",
    theorem: "intrinsic case at the critical codimension",
    quote: "A compact connected totally weakly integrable k-manifold with k at least 2 and other than 3 and 7 is strongly integrable in ambient dimension 2k+1.",
};

pub static SI_SEMICHAR: Rule = Rule {
    id: "si.semichar",
    theorem: "semicharacteristic criterion in dimensions 3 and 7",
    quote: "A compact connected parallelizable manifold of dimension k = 3 or 7 embedded in ambient dimension 2k+1 is strongly integrable exactly when its semicharacteristic is even.",
};

pub static SI_LINK_PARITY: Rule = Rule {
    id: "si.link-parity",
    theorem: "linking-parity criterion for links",
    quote: "A link in 3-space is strongly integrable exactly when every component has odd total linking number with the union of the other components.",
};

pub static SI_LOWDIM: Rule = Rule {
    id: "si.lowdim",
    theorem: "strong integrability in low codimension",
    quote: "In ambient dimension between k+2 and 2k, a submanifold is strongly integrable exactly when it is weakly integrable and a complete intersection.",
};

pub static SI_FROM_WI: Rule = Rule {
    id: "si.from-wi",
    theorem: "strong implies weak",
    quote: "Strong integrability implies weak integrability, so a submanifold that is not weakly integrable is not strongly integrable.",
};

pub static LINK_KNOT_NOT_SI: Rule = Rule {
    id: "link.knot-not-si",
    theorem: "knots are never strongly integrable",
    quote: "No knot in 3-space is strongly integrable: a single closed curve always has even (zero) total linking number.",
};

pub static LINK_WI_ALWAYS: Rule = Rule {
    id: "link.wi-always",
    theorem: "links are always weakly integrable",
    quote: "Every link in 3-space is weakly integrable.",
};

pub static LINK_TWI_CIRCLES: Rule = Rule {
    id: "link.twi-circles",
    theorem: "circles are totally weakly integrable",
    quote: "Every disjoint union of circles is parallelizable and therefore totally weakly integrable.",
};

pub static NB_OVERRIDE: Rule = Rule {
    id: "nb.override",
    theorem: "embedding data",
    quote: "Normal-bundle triviality supplied as part of the embedding data.",
};

pub static NB_CODIM12: Rule = Rule {
    id: "nb.codim12",
    theorem: "low-codimension normal triviality",
    quote: "An oriented submanifold of Euclidean space of codimension one or two has trivial normal bundle.",
};

pub static NB_PAR_HALFDIM: Rule = Rule {
    id: "nb.par-halfdim",
    theorem: "normal triviality from parallelizability",
    quote: "A parallelizable k-manifold embedded in ambient dimension at least 2k has trivial normal bundle.",
};

pub static NB_SPHERE: Rule = Rule {
    id: "nb.sphere",
    theorem: "sphere normal bundles",
    quote: "Every embedding of a sphere of dimension 1, 3 or 7 in Euclidean space has trivial normal bundle, except that the 7-sphere in 11-space is undecided.",
};

pub static NB_SPHERE_OPEN: Rule = Rule {
    id: "nb.sphere-open",
    theorem: "the 7-sphere in 11-space",
    quote: "Whether every embedding of the 7-sphere in 11-space has trivial normal bundle is an open question.",
};

pub static LEAF_STABLE: Rule = Rule {
    id: "leaf.stable",
    theorem: "leaf realization in high codimension",
    quote: "A compact connected k-manifold embedded in ambient dimension at least 2k+1 is a leaf of a foliation exactly when it is parallelizable.",
};

pub static LEAF_COMPACT_GENERIC: Rule = Rule {
    id: "leaf.compact-generic",
    theorem: "leaf realization in low codimension",
    quote: "For k other than 3 and 7, a compact connected k-manifold embedded in ambient dimension between k+2 and 2k is a leaf of a foliation exactly when it is parallelizable with trivial normal bundle.",
};

pub static LEAF_COMPACT_37: Rule = Rule {
    id: "leaf.compact-37",
    theorem: "leaf realization in dimensions 3 and 7",
    quote: "For k = 3 or 7, a compact connected k-manifold embedded in ambient dimension between k+2 and 2k is a leaf of a foliation exactly when it is parallelizable with trivial normal bundle and even semicharacteristic.",
};

pub static LEAF_UNION_WI: Rule = Rule {
    id: "leaf.union-wi",
    theorem: "proper leaves and weak integrability",
    quote: "In codimension at least two, a submanifold is a union of proper leaves of a foliation exactly when it is weakly integrable.",
};

pub static CRIT_SI: Rule = Rule {
    id: "crit.si",
    theorem: "criticality from strong integrability",
    quote: "Every strongly integrable submanifold of Euclidean space is critical.",
};

pub static STIEFEL_TABLE: Rule = Rule {
    id: "stiefel.table",
    theorem: "Stiefel homotopy table",
    quote: "The k-th homotopy group of the Stiefel manifold of (n-k)-frames in n-space is infinite cyclic when k is even or n = k+1, and of order two when k is odd and n exceeds k+1.",
};

pub static HOMOTOPY_TANGENT: Rule = Rule {
    id: "homotopy.tangent",
    theorem: "tangent framings",
    quote: "For n at least 2k+1 every compact k-manifold has a single homotopy class of tangent k-frame fields in n-space; for n = 2k the classes form one copy of the k-th Stiefel homotopy group per compact component.",
};

pub static HOMOTOPY_NORMAL: Rule = Rule {
    id: "homotopy.normal",
    theorem: "normal framings",
    quote: "Homotopy classes of normal (n-k)-frame fields form one copy of the k-th homotopy group of the Stiefel manifold of (n-k)-frames in n-space per compact component.",
};

pub static GRAPH_ALTERNATING: Rule = Rule {
    id: "graph.alternating",
    theorem: "alternating orientations and bipartiteness",
    quote: "A tiling admits an alternating orientation exactly when its dual graph is bipartite; an odd cycle is the complete obstruction.",
};

/// Every registered rule, for lookup and audit tests.
pub static ALL_RULES: &[&Rule] = &[
    &WI_CODIM1,
    &WI_OPEN_NU,
    &WI_LARGE_PAR,
    &WI_LOWDIM_TWI,
    &WI_LOWDIM_NEG,
    &TWI_OPEN,
    &TWI_CLASSIF,
    &TWI_SEMICHAR,
    &TWI_SUM_PARITY,
    &TWI_SUM_ODD,
    &TWI_SUM_ALL,
    &CI_CODIM12,
    &CI_CODIM48,
    &CI_FROM_SI,
    &SI_CODIM1,
    &SI_LARGE,
    &SI_BOUNDARY_OPEN,
    &SI_BOUNDARY_TWI,
    &SI_SEMICHAR,
    &SI_LINK_PARITY,
    &SI_LOWDIM,
    &SI_FROM_WI,
    &LINK_KNOT_NOT_SI,
    &LINK_WI_ALWAYS,
    &LINK_TWI_CIRCLES,
    &NB_OVERRIDE,
    &NB_CODIM12,
    &NB_PAR_HALFDIM,
    &NB_SPHERE,
    &NB_SPHERE_OPEN,
    &LEAF_STABLE,
    &LEAF_COMPACT_GENERIC,
    &LEAF_COMPACT_37,
    &LEAF_UNION_WI,
    &CRIT_SI,
    &STIEFEL_TABLE,
    &HOMOTOPY_TANGENT,
    &HOMOTOPY_NORMAL,
    &GRAPH_ALTERNATING,
];

/// Looks a rule up by its stable identifier.
pub fn find(id: &str) -> Option<&'static Rule> {
    ALL_RULES.iter().copied().find(|r| r.id == id)
}
