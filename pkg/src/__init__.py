"""
rast-congruences: exact q-series engine and congruence harness for
overpartitions whose non-overlined parts are ell-regular.

Main interface:
    >>> from src import rast_series, theorem_claims, check_progression
    >>> values = rast_series(3, 4)
    >>> values.to_list()
    [1, 2, 4, 7, 12]
    >>> [check_progression(c, 100).status for c in theorem_claims("elthm")]
    ['pass', 'pass', 'pass', 'pass']
"""

from .config import ResourceRefusal
from .series import (
    Series,
    ModulusMismatchError,
    NonUnitError,
    dissect,
    magnify,
    shift,
    reduce_mod,
    alternate,
    eta_power,
    rast_series,
)
from .qexpr import QExpr, DissectExpr, EvaluationError, evaluate, evaluate_any, extract, f, phi, psi, q, rast
from .parser import parse_expression, ParseError
from .models import OverpartitionSpec, ProgressionClaim, CheckReport, RunConfig
from .enumeration import count_rbar_enum, count_rbar_dp, parity_predicate
from .modforms import EtaQuotientSpec, EtaOffsetError, eta_expand, tau, hecke_tp, eigenform_check, legendre
from .identities import IdentityEntry, catalog, lookup, verify_identity, verify_all
from .congruences import (
    ClaimParameterError,
    check_progression,
    check_many,
    theorem_claims,
    theorem_ids,
    inv_mod,
    james3_residues,
    check_equivalence,
    scan,
)
from .cache import CoefficientCache, CacheError
from .harness import Harness

__all__ = [
    'ResourceRefusal',
    'Series',
    'ModulusMismatchError',
    'NonUnitError',
    'dissect',
    'magnify',
    'shift',
    'reduce_mod',
    'alternate',
    'eta_power',
    'rast_series',
    'QExpr',
    'DissectExpr',
    'EvaluationError',
    'evaluate',
    'evaluate_any',
    'extract',
    'f',
    'phi',
    'psi',
    'q',
    'rast',
    'parse_expression',
    'ParseError',
    'OverpartitionSpec',
    'ProgressionClaim',
    'CheckReport',
    'RunConfig',
    'count_rbar_enum',
    'count_rbar_dp',
    'parity_predicate',
    'EtaQuotientSpec',
    'EtaOffsetError',
    'eta_expand',
    'tau',
    'hecke_tp',
    'eigenform_check',
    'legendre',
    'IdentityEntry',
    'catalog',
    'lookup',
    'verify_identity',
    'verify_all',
    'ClaimParameterError',
    'check_progression',
    'check_many',
    'theorem_claims',
    'theorem_ids',
    'inv_mod',
    'james3_residues',
    'check_equivalence',
    'scan',
    'CoefficientCache',
    'CacheError',
    'Harness',
]

__version__ = '1.0.0'
