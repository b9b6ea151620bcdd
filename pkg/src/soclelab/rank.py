"""Rank from spectra alone, by randomized probing.

The rank of an element a is the supremum over x of the number of
distinct nonzero spectral values of x*a. The x attaining the supremum
form a dense open set, so independent complex-Gaussian probes land in
it with probability one; a handful of probes guards against unlucky
eigenvalue clustering near the merge tolerance. Every result is
certified against the classical SVD rank, and a disagreement raises
instead of returning.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import CLUSTER_TOL, Element, classical_rank, nonzero_spectrum_count
from .errors import RankCertificationError
from .sampling import random_element, rng_for

# One generic probe suffices almost surely; the extras absorb unlucky
# clustering near the merge tolerance.
DEFAULT_PROBES = 64


@dataclass(frozen=True)
class RankReport:
    """Outcome of randomized rank probing, plus the oracle value.

    ``achieved_counts`` histograms #(distinct nonzero spectral values of
    probe*a) over all probes; the rank is its maximum, attained by
    ``best_probe``.
    """

    rank: int
    best_probe: Element
    probes_used: int
    achieved_counts: dict[int, int]
    oracle_rank: int


def spectral_rank(
    a: Element,
    probes: int = DEFAULT_PROBES,
    seed: int = 0,
    tol: float = CLUSTER_TOL,
) -> RankReport:
    """Probe the rank of ``a`` and certify it against the SVD oracle.

    Probe i draws a standard complex Gaussian element from a generator
    seeded with ``seed ^ i``, so any execution order gives identical
    results.
    """
    if probes < 1:
        raise ValueError("need at least one probe")
    counts: dict[int, int] = {}
    best = None
    best_count = -1
    for i in range(probes):
        x = random_element(a.spec, rng_for(seed, i))
        c = nonzero_spectrum_count(x @ a, tol)
        counts[c] = counts.get(c, 0) + 1
        if c > best_count:
            best_count = c
            best = x
    oracle = classical_rank(a)
    if best_count != oracle:
        raise RankCertificationError(best_count, oracle, probes)
    return RankReport(
        rank=best_count,
        best_probe=best,
        probes_used=probes,
        achieved_counts=dict(sorted(counts.items())),
        oracle_rank=oracle,
    )


def is_maximal_finite_rank(
    a: Element,
    probes: int = DEFAULT_PROBES,
    seed: int = 0,
    tol: float = CLUSTER_TOL,
) -> bool:
    """True iff the distinct nonzero spectral values already exhaust the rank.

    Such elements split as a sum of rank times (value * minimal
    projection) terms; see the diagonalization routine.
    """
    report = spectral_rank(a, probes=probes, seed=seed, tol=tol)
    return nonzero_spectrum_count(a, tol) == report.rank
