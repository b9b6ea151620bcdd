"""Riesz projections, spectral multiplicities, and the spectral trace.

The projection attached to a spectral value is the contour integral of
the resolvent around it, computed here by the trapezoid rule on a
circle: for analytic periodic integrands that rule converges
geometrically in the node count. Multiplicities come by two independent
routes (perturbation counting near the identity, and the rank of the
projection) which must agree; the trace is the multiplicity-weighted
sum of spectral values, certified against the diagonal-sum oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    CLUSTER_TOL,
    IDEMPOTENCY_TOL,
    RANK_TOL,
    AlgebraSpec,
    Element,
    SpectrumReport,
    classical_rank,
    classical_trace,
    identity,
    nonzero_spectrum_count,
    operator_norm,
    spectrum,
)
from .errors import (
    ContourCollapseError,
    MultiplicityInconsistencyError,
    NotIdempotentError,
    NotMaximalError,
    ProbeExhaustionError,
    SpectralGapError,
    TargetNotInSpectrumError,
    TraceCertificationError,
)
from .rank import DEFAULT_PROBES, spectral_rank
from .sampling import random_element, rng_for

DEFAULT_NODES = 64
# Fraction of the local spectral gap used as contour radius. Large
# enough that halving the node count leaves a visible quadrature error
# (the convergence diagnostics need that), small enough that the
# doubled disk stays strictly inside the gap.
RADIUS_FACTOR = 0.45
# Perturbation size for multiplicity counting near the identity.
DEFAULT_EPS = 1e-3
MULTIPLICITY_PROBES = 8
# Multiplicities are rejected when the local gap is below this many
# cluster tolerances; the two routes may legitimately split there.
GAP_FLOOR_FACTOR = 10.0
TRACE_CERT_TOL = 1e-8


@dataclass(frozen=True)
class RieszReport:
    """A spectral projection with its defining contour data.

    One center/radius pair per requested target; the projection is the
    sum over targets. ``range_residual`` is the least-squares defect of
    factoring the projection through the element (only meaningful, and
    only computed, when every target is nonzero)."""

    projection: Element
    centers: tuple[complex, ...]
    radii: tuple[float, ...]
    nodes: int
    idempotency_defect: float
    multiplicity: int
    range_residual: float | None

    @property
    def center(self) -> complex:
        """The single contour center (for one-target reports)."""
        if len(self.centers) != 1:
            raise ValueError("report covers several contours")
        return self.centers[0]

    @property
    def radius(self) -> float:
        if len(self.radii) != 1:
            raise ValueError("report covers several contours")
        return self.radii[0]


@dataclass(frozen=True)
class Diagonalization:
    """Spectral-value / minimal-projection splitting of a maximal element."""

    values: tuple[complex, ...]
    projections: tuple[Element, ...]
    residual: float


def _match_target(rep: SpectrumReport, target: complex) -> complex:
    """Snap a requested target onto a clustered spectral value."""
    target = complex(target)
    dists = [(abs(v - target), v) for v, _ in rep.points]
    d, v = min(dists, key=lambda t: t[0])
    if d > rep.cluster_tolerance:
        raise TargetNotInSpectrumError(target, v, d)
    return v


def _contour_projection_blocks(a: Element, center: complex, radius: float, nodes: int):
    """Trapezoid-rule contour integral of the resolvent, per block."""
    theta = 2 * np.pi * np.arange(nodes) / nodes
    phases = np.exp(1j * theta)
    zs = center + radius * phases
    out = []
    for b, n in zip(a.blocks, a.spec.block_sizes):
        eye = np.eye(n, dtype=complex)
        shifted = zs[:, None, None] * eye - b
        solved = np.linalg.solve(shifted, np.broadcast_to(eye, (nodes, n, n)))
        out.append((radius / nodes) * np.einsum("j,jkl->kl", phases, solved))
    return out


def riesz_projection(
    a: Element,
    targets,
    nodes: int = DEFAULT_NODES,
    tol: float = CLUSTER_TOL,
    radius_factor: float = RADIUS_FACTOR,
    floor: float = 1e-10,
) -> RieszReport:
    """Spectral projection of ``a`` onto one or more spectral values.

    Each target must match a clustered spectral value; its contour is
    the circle around that value with radius ``radius_factor`` times the
    distance to the nearest other value. For several targets the
    per-target projections are summed. The reported multiplicity is the
    classical rank of the projection.
    """
    if nodes < 4:
        raise ValueError("need at least 4 quadrature nodes")
    targets = [complex(t) for t in np.atleast_1d(targets)]
    if not targets:
        raise ValueError("need at least one target")
    rep = spectrum(a, tol)
    scale = max(rep.radius, 1.0)

    centers = []
    for t in targets:
        c = _match_target(rep, t)
        if any(c == c0 for c0 in centers):
            raise ValueError(
                f"targets collapse onto the same clustered spectral value {c}"
            )
        centers.append(c)

    radii = []
    blocks = [np.zeros((n, n), dtype=complex) for n in a.spec.block_sizes]
    for c in centers:
        r = radius_factor * rep.gap(c)
        if r < floor * scale:
            raise ContourCollapseError(
                f"contour radius {r:.3e} around {c} is below the "
                f"singularity floor {floor * scale:.3e}"
            )
        radii.append(float(r))
        for acc, term in zip(blocks, _contour_projection_blocks(a, c, r, nodes)):
            acc += term

    p = Element(a.spec, tuple(blocks), _checked=True)
    defect = operator_norm(p @ p - p)
    mult = classical_rank(p)

    residual = None
    if all(c != 0 for c in centers):
        # Nonzero spectral values put the projection inside a*A; verify
        # by factoring p = a w in the least-squares sense.
        worst = 0.0
        for ab, pb in zip(a.blocks, p.blocks):
            w = np.linalg.lstsq(ab, pb, rcond=None)[0]
            worst = max(worst, float(np.linalg.norm(ab @ w - pb, 2)))
        residual = worst

    return RieszReport(
        projection=p,
        centers=tuple(centers),
        radii=tuple(radii),
        nodes=nodes,
        idempotency_defect=float(defect),
        multiplicity=mult,
        range_residual=residual,
    )


def multiplicity(
    a: Element,
    target: complex,
    eps: float = DEFAULT_EPS,
    probes: int = MULTIPLICITY_PROBES,
    seed: int = 0,
    tol: float = CLUSTER_TOL,
    nodes: int = DEFAULT_NODES,
) -> int:
    """Spectral multiplicity of ``a`` at one of its spectral values.

    Route A perturbs the identity by ``eps`` times a normalized Gaussian
    element, requires the perturbation to preserve the nonzero-spectrum
    count (rank), and counts the distinct spectral values of the product
    that land in the disk of one third the local gap around the target;
    the count must be the same for every admissible probe. For nonzero
    targets, Route B takes the rank of the Riesz projection, and the two
    must agree exactly.
    """
    if probes < 1:
        raise ValueError("need at least one probe")
    rep = spectrum(a, tol)
    center = _match_target(rep, target)
    gap = rep.gap(center)
    if gap < GAP_FLOOR_FACTOR * rep.cluster_tolerance:
        raise SpectralGapError(center, gap, GAP_FLOOR_FACTOR * rep.cluster_tolerance)
    ball = gap / 3.0
    rank_a = classical_rank(a)
    one = identity(a.spec)

    counts = []
    for i in range(probes):
        g = random_element(a.spec, rng_for(seed, i))
        g = (1.0 / operator_norm(g)) * g
        x = one + eps * g
        srep = spectrum(x @ a, tol)
        if srep.num_nonzero != rank_a:
            continue  # probe fell outside the rank-attaining set
        counts.append(int(sum(1 for v, _ in srep.points if abs(v - center) < ball)))
    if not counts:
        raise ProbeExhaustionError(
            f"no perturbation probe preserved the rank after {probes} attempts"
        )
    if len(set(counts)) != 1:
        raise MultiplicityInconsistencyError(
            center,
            sorted(set(counts)),
            None,
            message=f"perturbation counts at {center} were not constant: "
            f"{sorted(set(counts))}",
        )
    route_a = counts[0]

    if center != 0:
        route_b = riesz_projection(a, [center], nodes=nodes, tol=tol).multiplicity
        if route_a != route_b:
            raise MultiplicityInconsistencyError(center, route_a, route_b)
    return route_a


def spectral_trace(
    a: Element,
    eps: float = DEFAULT_EPS,
    probes: int = MULTIPLICITY_PROBES,
    seed: int = 0,
    tol: float = CLUSTER_TOL,
    nodes: int = DEFAULT_NODES,
    certify: bool = True,
) -> complex:
    """Multiplicity-weighted sum of spectral values.

    The spectral value 0 contributes nothing, so only nonzero values
    need their multiplicities. The result is certified against the
    diagonal-sum oracle to relative tolerance ``TRACE_CERT_TOL`` unless
    ``certify`` is switched off.
    """
    rep = spectrum(a, tol)
    total = 0j
    for v, _ in rep.points:
        if v == 0:
            continue
        m = multiplicity(a, v, eps=eps, probes=probes, seed=seed, tol=tol, nodes=nodes)
        total += v * m
    if certify:
        oracle = classical_trace(a)
        if abs(total - oracle) > TRACE_CERT_TOL * max(1.0, abs(oracle)):
            raise TraceCertificationError(total, oracle)
    return total


def trace_bound_check(
    a: Element,
    seed: int = 0,
    tol: float = CLUSTER_TOL,
    slack: float = 1e-8,
) -> bool:
    """|trace| <= rank * spectral radius, within numerical slack."""
    rep = spectrum(a, tol)
    tr = spectral_trace(a, seed=seed, tol=tol)
    bound = classical_rank(a) * rep.radius
    return abs(tr) <= bound + slack * max(1.0, bound)


def diagonalize_maximal(
    a: Element,
    probes: int = DEFAULT_PROBES,
    seed: int = 0,
    tol: float = CLUSTER_TOL,
    nodes: int = DEFAULT_NODES,
) -> Diagonalization:
    """Split a maximal element into value * minimal-projection terms.

    Requires #(distinct nonzero spectral values) = rank and a nonzero
    element; each spectral value then carries a rank-one projection and
    the weighted projections reconstruct the element.
    """
    rep = spectrum(a, tol)
    count = rep.num_nonzero
    rank_rep = spectral_rank(a, probes=probes, seed=seed, tol=tol)
    if count == 0 or rank_rep.rank != count:
        raise NotMaximalError(rank_rep.rank, count)

    values = []
    projections = []
    recon = [np.zeros((n, n), dtype=complex) for n in a.spec.block_sizes]
    for v, _ in rep.points:
        if v == 0:
            continue
        pr = riesz_projection(a, [v], nodes=nodes, tol=tol)
        values.append(v)
        projections.append(pr.projection)
        for acc, pb in zip(recon, pr.projection.blocks):
            acc += v * pb
    residual = operator_norm(a - Element(a.spec, tuple(recon), _checked=True))
    return Diagonalization(tuple(values), tuple(projections), float(residual))


@dataclass(frozen=True)
class CompressionReport:
    """Corner-subalgebra consistency of spectra, rank, and trace.

    The corner p*A*p of a projection p is itself a block algebra on the
    ranges of the blocks of p; its nonzero spectra, ranks, and traces
    must match the ambient computations applied to p*a*p.
    """

    subalgebra: AlgebraSpec | None
    compressed: Element | None
    nonzero_spectra_match: bool
    rank_ambient: int
    rank_compressed: int
    classical_trace_ambient: complex
    classical_trace_compressed: complex
    spectral_trace_ambient: complex
    spectral_trace_compressed: complex
    trace_match: bool

    @property
    def consistent(self) -> bool:
        return (
            self.nonzero_spectra_match
            and self.rank_ambient == self.rank_compressed
            and self.trace_match
        )


def compress_to_corner(a: Element, p: Element, tol_idem: float = IDEMPOTENCY_TOL):
    """Matrix of p*a*p on orthonormal bases of the block ranges of p.

    Returns (subalgebra spec, compressed element); both are None when
    p = 0. Raises when p is not idempotent within tolerance.
    """
    defect = operator_norm(p @ p - p)
    if defect > tol_idem:
        raise NotIdempotentError(float(defect), tol_idem)
    pap = p @ a @ p
    sizes = []
    mats = []
    for pb, mb in zip(p.blocks, pap.blocks):
        u, s, _ = np.linalg.svd(pb)
        top = s[0] if len(s) and s[0] > 0 else 1.0
        r = int(np.sum(s > RANK_TOL * top))
        if r == 0:
            continue
        q = u[:, :r]
        sizes.append(r)
        mats.append(q.conj().T @ mb @ q)
    if not sizes:
        return None, None
    sub = AlgebraSpec(tuple(sizes))
    return sub, Element(sub, tuple(mats), _checked=True)


def _nonzero_spectra_match(
    rep_a: SpectrumReport, rep_b: SpectrumReport, match_tol: float
) -> bool:
    pa = [(v, m) for v, m in rep_a.points if v != 0]
    pb = [(v, m) for v, m in rep_b.points if v != 0]
    if len(pa) != len(pb):
        return False
    used = [False] * len(pb)
    for v, m in pa:
        hit = None
        for j, (w, mm) in enumerate(pb):
            if not used[j] and abs(v - w) <= match_tol and m == mm:
                hit = j
                break
        if hit is None:
            return False
        used[hit] = True
    return True


def pAp_consistency(
    a: Element,
    p: Element,
    tol: float = CLUSTER_TOL,
    tol_idem: float = IDEMPOTENCY_TOL,
    seed: int = 0,
) -> CompressionReport:
    """Certify that corner and ambient computations agree on p*a*p."""
    sub, compressed = compress_to_corner(a, p, tol_idem=tol_idem)
    pap = p @ a @ p
    rank_ambient = classical_rank(pap)
    tr_ambient = classical_trace(pap)
    s_ambient = spectral_trace(pap, seed=seed, tol=tol)
    if compressed is None:
        zero_like = 0j
        return CompressionReport(
            subalgebra=None,
            compressed=None,
            nonzero_spectra_match=True,
            rank_ambient=rank_ambient,
            rank_compressed=0,
            classical_trace_ambient=tr_ambient,
            classical_trace_compressed=zero_like,
            spectral_trace_ambient=s_ambient,
            spectral_trace_compressed=zero_like,
            trace_match=abs(tr_ambient) <= TRACE_CERT_TOL,
        )
    rep_ambient = spectrum(pap, tol)
    rep_corner = spectrum(compressed, tol)
    match_tol = max(rep_ambient.cluster_tolerance, rep_corner.cluster_tolerance)
    rank_compressed = classical_rank(compressed)
    tr_corner = classical_trace(compressed)
    s_corner = spectral_trace(compressed, seed=seed, tol=tol)
    scale = max(1.0, abs(tr_ambient))
    trace_match = (
        abs(tr_ambient - tr_corner) <= TRACE_CERT_TOL * scale
        and abs(s_ambient - s_corner) <= TRACE_CERT_TOL * scale
    )
    return CompressionReport(
        subalgebra=sub,
        compressed=compressed,
        nonzero_spectra_match=_nonzero_spectra_match(
            rep_ambient, rep_corner, match_tol
        ),
        rank_ambient=rank_ambient,
        rank_compressed=rank_compressed,
        classical_trace_ambient=tr_ambient,
        classical_trace_compressed=tr_corner,
        spectral_trace_ambient=s_ambient,
        spectral_trace_compressed=s_corner,
        trace_match=trace_match,
    )
