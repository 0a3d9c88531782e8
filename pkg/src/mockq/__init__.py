"""Exact truncated q-series, mock theta functions and an identity verifier."""
from .qcore import Coefficient, Mismatch, ParamMonomial, QSeries, monomial, q
from .products import J, Jbar, Jm, j_theta, poch_finite, poch_infinite, poch_infinite_multi
from .appell import appell_unnormalized, delta_correction, m_sum
from .indefinite import f_indef, g_hm, hm_check, theta_hm
from .bailey import INFINITY, BaileyPair, builtin_pair, chain_step, limit_identity, verify_pair
from .catalog import eval_named, list_entries
from .dsl import evaluate, parse_expr, to_text
from .verifier import IdentitySpec, VerificationReport, builtin_suite, check_identity, run_suite

__all__ = [
    "Coefficient", "Mismatch", "ParamMonomial", "QSeries", "monomial", "q",
    "J", "Jbar", "Jm", "j_theta", "poch_finite", "poch_infinite", "poch_infinite_multi",
    "appell_unnormalized", "delta_correction", "m_sum",
    "f_indef", "g_hm", "hm_check", "theta_hm",
    "INFINITY", "BaileyPair", "builtin_pair", "chain_step", "limit_identity", "verify_pair",
    "eval_named", "list_entries", "evaluate", "parse_expr", "to_text",
    "IdentitySpec", "VerificationReport", "builtin_suite", "check_identity", "run_suite",
]
