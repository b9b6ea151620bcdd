"""Seeded random generators for elements, projections, and test corpora.

All randomness in the package flows through these helpers so results
are reproducible: a run is determined by an integer seed, and probe i
of a batch uses ``seed ^ i``, which makes per-probe results independent
of evaluation order.
"""

from __future__ import annotations

import numpy as np

from .algebra import AlgebraSpec, Element, zero
from .errors import DegenerateProjectionError, ProbeExhaustionError

_SEED_MASK = (1 << 63) - 1


def derive_seed(seed: int, index: int) -> int:
    """Per-probe seed: XOR of the base seed with the probe index."""
    return (int(seed) ^ int(index)) & _SEED_MASK


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(derive_seed(seed, index))


def complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    """Standard complex Gaussian: real and imaginary parts N(0, 1/2)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def random_element(spec: AlgebraSpec, rng: np.random.Generator) -> Element:
    """Element with independent standard complex Gaussian entries."""
    return Element(
        spec,
        tuple(complex_gaussian(rng, (n, n)) for n in spec.block_sizes),
        _checked=True,
    )


def random_invertible(
    spec: AlgebraSpec, rng: np.random.Generator, max_cond: float = 1e4
) -> Element:
    """Gaussian element redrawn until every block is well conditioned."""
    for _ in range(64):
        x = random_element(spec, rng)
        if all(np.linalg.cond(b) <= max_cond for b in x.blocks):
            return x
    raise ProbeExhaustionError("could not draw a well-conditioned invertible")


def random_low_rank_element(
    spec: AlgebraSpec, rng: np.random.Generator, ranks=None
) -> Element:
    """Element whose block i has prescribed (or random) rank.

    Built as a product of n x r and r x n Gaussian factors, so the rank
    is exact and the zero eigenvalue is semisimple (safe for dense
    eigencomputations).
    """
    blocks = []
    for i, n in enumerate(spec.block_sizes):
        r = int(rng.integers(0, n + 1)) if ranks is None else int(ranks[i])
        if r == 0:
            blocks.append(np.zeros((n, n), dtype=complex))
        else:
            blocks.append(complex_gaussian(rng, (n, r)) @ complex_gaussian(rng, (r, n)))
    return Element(spec, tuple(blocks), _checked=True)


def random_traceless_matrix(n: int, rng: np.random.Generator) -> np.ndarray:
    g = complex_gaussian(rng, (n, n))
    return g - (np.trace(g) / n) * np.eye(n, dtype=complex)


def random_nilpotent(
    spec: AlgebraSpec, rng: np.random.Generator, conjugate_by: Element | None = None
) -> Element:
    """Strictly upper-triangular blocks, optionally conjugated.

    Strict triangularity makes nilpotency exact regardless of numerics;
    a conjugated copy u w u^-1 stays exactly nilpotent in theory though
    its stored entries are dense.
    """
    blocks = []
    for n in spec.block_sizes:
        b = complex_gaussian(rng, (n, n))
        blocks.append(np.triu(b, k=1))
    w = Element(spec, tuple(blocks), _checked=True)
    if conjugate_by is not None:
        u = conjugate_by
        inv = Element(
            spec, tuple(np.linalg.inv(b) for b in u.blocks), _checked=True
        )
        w = u @ w @ inv
    return w


def _separated_values(
    rng: np.random.Generator,
    count: int,
    min_gap: float,
    lo: float = 0.5,
    hi: float = 2.5,
) -> list[complex]:
    """Nonzero complex values with pairwise distances >= min_gap."""
    vals: list[complex] = []
    attempts = 0
    while len(vals) < count:
        attempts += 1
        if attempts > 10000:
            raise ProbeExhaustionError("could not separate spectral values")
        r = rng.uniform(lo, hi)
        th = rng.uniform(0, 2 * np.pi)
        v = r * np.exp(1j * th)
        if abs(v) < min_gap:
            continue
        if all(abs(v - w) >= min_gap for w in vals):
            vals.append(complex(v))
    return vals


def _tame_similarity(n: int, rng: np.random.Generator) -> np.ndarray:
    """Generic similarity with condition number at most 3.

    Unitary factor (QR of a Gaussian) times I + N with N strictly upper
    and operator norm 1/2, so cond <= (1 + 1/2) / (1 - 1/2).
    """
    q, _ = np.linalg.qr(complex_gaussian(rng, (n, n)))
    upper = np.triu(complex_gaussian(rng, (n, n)), k=1)
    norm = np.linalg.norm(upper, 2)
    if norm > 0:
        upper *= 0.5 / max(norm, 1.0)
    return q @ (np.eye(n, dtype=complex) + upper)


def random_maximal_element(
    spec: AlgebraSpec,
    rng: np.random.Generator,
    min_gap: float = 0.15,
    zero_defect: bool = True,
) -> Element:
    """Diagonalizable element whose distinct nonzero values count = rank.

    Each block is S diag(values, 0...) S^-1 with distinct nonzero values
    (distinct across the whole element, pairwise gaps >= min_gap) and an
    optional semisimple kernel. Similarities are kept well conditioned
    so projection defects stay near the floating-point floor.
    """
    n_total = spec.matrix_dimension
    kernel = [0] * spec.num_blocks
    if zero_defect:
        for i, n in enumerate(spec.block_sizes):
            if n > 1 and rng.uniform() < 0.5:
                kernel[i] = int(rng.integers(1, n))
    n_vals = n_total - sum(kernel)
    if n_vals == 0:
        kernel[0] -= 1
        n_vals = 1
    values = _separated_values(rng, n_vals, min_gap)
    blocks = []
    pos = 0
    for i, n in enumerate(spec.block_sizes):
        d = np.zeros(n, dtype=complex)
        take = n - kernel[i]
        d[:take] = values[pos : pos + take]
        pos += take
        s = _tame_similarity(n, rng)
        blocks.append(s @ np.diag(d) @ np.linalg.inv(s))
    return Element(spec, tuple(blocks), _checked=True)


def random_rank_one_projection_block(
    n: int, rng: np.random.Generator, floor: float = 1e-3
) -> np.ndarray:
    """Rank-one idempotent u v* / (v* u) of size n, redrawn when the
    pairing |v* u| falls below ``floor`` times the vector norms."""
    for _ in range(200):
        u = complex_gaussian(rng, n)
        v = complex_gaussian(rng, n)
        pairing = complex(np.vdot(v, u))
        if abs(pairing) >= floor * np.linalg.norm(u) * np.linalg.norm(v):
            return np.outer(u, v.conj()) / pairing
    raise DegenerateProjectionError("rank-one projection sampling kept degenerating")


def random_rank_one_projection(
    spec: AlgebraSpec, rng: np.random.Generator, block: int | None = None
) -> Element:
    """Rank-one projection of the algebra, living inside a single block."""
    if block is None:
        block = int(rng.integers(0, spec.num_blocks))
    p = zero(spec)
    p.blocks[block][:] = random_rank_one_projection_block(
        spec.block_sizes[block], rng
    )
    return p


def random_projection(
    spec: AlgebraSpec,
    rng: np.random.Generator,
    rank: int | None = None,
    blocks: list[int] | None = None,
) -> Element:
    """Sum of 1-3 rank-one projections made orthogonal by deflation.

    Each rank-one factor lands in a random block (or a prescribed one),
    is deflated against the sum built so far, and renormalized, so the
    result is an idempotent of the requested rank up to rounding.
    """
    n_total = spec.matrix_dimension
    if rank is None:
        rank = int(rng.integers(1, min(3, n_total) + 1))
    if rank > n_total:
        raise ValueError(f"rank {rank} exceeds total dimension {n_total}")
    p = zero(spec)
    filled = {i: 0 for i in range(spec.num_blocks)}
    for j in range(rank):
        for _ in range(200):
            if blocks is not None:
                i = blocks[j % len(blocks)]
            else:
                i = int(rng.integers(0, spec.num_blocks))
            n = spec.block_sizes[i]
            if filled[i] >= n:
                continue
            u = complex_gaussian(rng, n)
            v = complex_gaussian(rng, n)
            comp = np.eye(n, dtype=complex) - p.blocks[i]
            w = comp @ u
            z = comp.conj().T @ v
            pairing = complex(np.vdot(z, w))
            if abs(pairing) < 1e-3 * np.linalg.norm(w) * np.linalg.norm(z):
                continue
            p.blocks[i][:] = p.blocks[i] + np.outer(w, z.conj()) / pairing
            filled[i] += 1
            break
        else:
            raise ProbeExhaustionError("projection sampling kept degenerating")
    return p
