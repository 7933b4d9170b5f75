"""Exact arithmetic, order and sharp topologies for generalized numbers and
one-dimensional generalized functions, with a sampled numeric oracle."""

from .dsl import DSLError, parse, parse_value
from .genfun import (REAL_LINE, GenFunRep, IntervalDomain, SeminormDescriptor, embed_const,
                     gf_ball_member, integrate, lpdo_apply, psi_embed, seminorm)
from .nets import FULL, PREC, SIMPLIFIED, ModelMismatchError, NetF, NetS, alpha, jm_embed
from .order import (BallSpec, Comparison, Membership, Verdict, absolute, member, order_compare,
                    proot, q_positivity, scalar_ball_member, sharp_dist, sharp_norm, valuation)
from .sampled import (Iota, OracleConfig, SampledNet, estimate_valuation, oscillating_net,
                      falsify_order, null_estimate, oracle_ball_member, verify_witness)
from .topology import (AxiomReport, Ball, axiom_check, axiom_suite, converges, dnp,
                       gconvex_probe, gseminorm_axiom_check, metric_ball_equivalence, vnp)

__all__ = [
    "FULL", "PREC", "REAL_LINE", "SIMPLIFIED",
    "AxiomReport", "Ball", "BallSpec", "Comparison", "DSLError", "GenFunRep", "IntervalDomain",
    "Iota", "Membership", "ModelMismatchError", "NetF", "NetS", "OracleConfig", "SampledNet",
    "SeminormDescriptor", "Verdict",
    "absolute", "alpha", "axiom_check", "axiom_suite", "converges", "dnp", "embed_const",
    "estimate_valuation", "oscillating_net", "falsify_order", "gconvex_probe", "gf_ball_member",
    "gseminorm_axiom_check", "integrate", "jm_embed", "lpdo_apply", "member",
    "metric_ball_equivalence", "null_estimate", "oracle_ball_member", "order_compare", "parse",
    "parse_value", "proot", "psi_embed", "q_positivity", "scalar_ball_member", "seminorm",
    "sharp_dist", "sharp_norm", "valuation", "verify_witness", "vnp",
]
