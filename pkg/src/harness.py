"""
Run orchestration for the command line.

The Harness turns a RunConfig into work: it picks the series provider
(cached or not), fans independent groups out to worker processes and
yields reports as they complete.

Workers receive only picklable values (claims, catalog ids, paths) and
rebuild everything else on their side.
"""

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from . import series as S
from .cache import CoefficientCache
from .congruences import SeriesProvider, check_equivalence, check_many, scan
from .enumeration import count_rbar_dp, count_rbar_enum, parity_predicate
from .identities import catalog, check_chain, check_scalar, lookup, verify_identity
from .models import CheckReport, ProgressionClaim, RunConfig
from .parser import parse_expression
from .qexpr import evaluate
from .series import Series

logger = logging.getLogger(__name__)


def _provider_for(cache_dir: Optional[Path]) -> SeriesProvider:
    if cache_dir is None:
        return S.rast_series
    return CoefficientCache(cache_dir).rast_series


def _check_group(claims: Tuple[ProgressionClaim, ...], n_max: Optional[int], ceiling: int,
                 cache_dir: Optional[Path]) -> List[CheckReport]:
    return list(check_many(claims, n_max, ceiling, _provider_for(cache_dir)))


def _identity_reports(entry_id: str, trunc: Optional[int], chains: bool,
                      scalars: bool) -> List[CheckReport]:
    entry = lookup(entry_id)
    reports = [verify_identity(entry, trunc)]
    if chains and entry.parent is not None:
        reports.append(check_chain(entry, trunc))
    if scalars and entry.scalar is not None:
        reports.append(check_scalar(entry, trunc))
    return reports


class Harness:
    """
    Facade over the congruence suite, the identity catalog and the oracles.

    Usage:
        >>> harness = Harness(RunConfig("verify"))
        >>> for report in harness.run_claims(theorem_claims("elthm")):
        ...     print(report.id, report.status)
    """

    def __init__(self, config: RunConfig):
        self.config = config
        self.provider = _provider_for(config.cache_dir)

    def _pool(self) -> ProcessPoolExecutor:
        return ProcessPoolExecutor(max_workers=self.config.jobs)

    def run_claims(self, claims: Iterable[ProgressionClaim]) -> Iterator[CheckReport]:
        """Check claims, one series per (ell, M) group, streaming reports."""
        claims = list(claims)
        logger.info("checking %d claims", len(claims))
        if self.config.jobs == 1:
            yield from check_many(claims, self.config.n_max, self.config.trunc_ceiling,
                                  self.provider)
            return

        groups: Dict[Tuple[int, int], List[ProgressionClaim]] = defaultdict(list)
        for claim in claims:
            groups[(claim.ell, claim.M)].append(claim)
        with self._pool() as pool:
            futures = [
                pool.submit(_check_group, tuple(members), self.config.n_max,
                            self.config.trunc_ceiling, self.config.cache_dir)
                for members in groups.values()
            ]
            for future in as_completed(futures):
                yield from future.result()

    def run_identities(self, ids: Optional[Sequence[str]] = None, chains: bool = False,
                       scalars: bool = False) -> Iterator[CheckReport]:
        """Verify catalog entries (all by default), streaming reports."""
        ids = [entry.id for entry in catalog()] if not ids else list(ids)
        for entry_id in ids:
            lookup(entry_id)
        trunc = self.config.trunc
        if self.config.jobs == 1:
            for entry_id in ids:
                yield from _identity_reports(entry_id, trunc, chains, scalars)
            return
        with self._pool() as pool:
            futures = [pool.submit(_identity_reports, entry_id, trunc, chains, scalars)
                       for entry_id in ids]
            for future in as_completed(futures):
                yield from future.result()

    def oracle_compare(self, ell: int, n_enum: int, n_dp: int) -> List[CheckReport]:
        """
        Compare enumeration, DP and the series engine, plus the parity rule.

        Each report's counterexample is (n, first value - second value).
        """
        series = self.provider(ell, max(n_enum, n_dp), None).to_list()
        dp = count_rbar_dp(ell, max(n_enum, n_dp))
        reports = [
            _compare(f"R{ell}: enumeration vs DP", n_enum,
                     (count_rbar_enum(ell, n) for n in range(n_enum + 1)), dp),
            _compare(f"R{ell}: DP vs series", n_dp, dp, series),
        ]
        if ell >= 2:
            parity = [1 if parity_predicate(ell, n) else 0 for n in range(n_dp + 1)]
            reports.append(_compare(f"R{ell}: parity vs pentagonal rule", n_dp,
                                    (v % 2 for v in dp), parity))
        return reports

    def equivalence(self, p: int) -> CheckReport:
        return check_equivalence(p, self.config.n_max, self.config.trunc_ceiling, self.provider)

    def scan(self, ell: int, A_max: int, moduli: Set[int]) -> List[ProgressionClaim]:
        n_max = 200 if self.config.n_max is None else self.config.n_max
        return scan(ell, A_max, moduli, n_max, self.config.trunc_ceiling, self.provider)

    def dump(self, text: str) -> Series:
        trunc = 20 if self.config.trunc is None else self.config.trunc
        return evaluate(parse_expression(text), trunc, self.config.modulus)


def _compare(label: str, n_max: int, first: Iterable[int], second: Sequence[int]) -> CheckReport:
    counterexample = None
    for n, value in enumerate(first):
        if n > n_max:
            break
        if value != second[n]:
            counterexample = (n, value - second[n])
            break
    return CheckReport(label, "pass" if counterexample is None else "fail", n_max,
                       counterexample, note="oracle")
