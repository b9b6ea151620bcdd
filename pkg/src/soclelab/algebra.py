"""Block-diagonal complex matrix algebras: arithmetic, spectra, oracles.

An algebra is a finite direct sum of full complex matrix blocks,
described by an :class:`AlgebraSpec`. Elements carry one square complex
matrix per block. Spectra are computed per block by a dense
nonsymmetric eigensolver and then clustered, so multiple eigenvalues
are reported once with a summed algebraic multiplicity; the full
assembled matrix is never formed.

Classical linear-algebra quantities (SVD rank, diagonal-sum trace) are
exposed as oracles against which the purely spectral computations in
the rest of the package are certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EigensolverError,
    NonFiniteEntryError,
    ShapeMismatchError,
    SingularResolventError,
)

# Shared numerical defaults. Tolerances that are relative are scaled by
# max(spectral radius, 1) or by the largest singular value, as noted at
# each use site.
CLUSTER_TOL = 1e-6
RANK_TOL = 1e-9
RESOLVENT_FLOOR = 1e-10
IDEMPOTENCY_TOL = 1e-8


@dataclass(frozen=True)
class AlgebraSpec:
    """Direct sum of full matrix blocks, given by their sizes."""

    block_sizes: tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(n) for n in self.block_sizes)
        if len(sizes) == 0:
            raise ShapeMismatchError("an algebra needs at least one block")
        if any(n < 1 for n in sizes):
            raise ShapeMismatchError(f"block sizes must be >= 1, got {sizes}")
        object.__setattr__(self, "block_sizes", sizes)

    @property
    def num_blocks(self) -> int:
        return len(self.block_sizes)

    @property
    def dimension(self) -> int:
        """Linear dimension of the algebra, sum of squared block sizes."""
        return int(sum(n * n for n in self.block_sizes))

    @property
    def matrix_dimension(self) -> int:
        """Total eigenvalue count of an element, sum of block sizes."""
        return int(sum(self.block_sizes))


class Element:
    """One square complex matrix per block of an :class:`AlgebraSpec`."""

    __slots__ = ("spec", "blocks")

    def __init__(self, spec: AlgebraSpec, blocks, *, _checked: bool = False):
        if _checked:
            self.spec = spec
            self.blocks = blocks
            return
        mats = tuple(np.asarray(b, dtype=complex) for b in blocks)
        if len(mats) != spec.num_blocks:
            raise ShapeMismatchError(
                f"expected {spec.num_blocks} blocks, got {len(mats)}"
            )
        for i, (m, n) in enumerate(zip(mats, spec.block_sizes)):
            if m.shape != (n, n):
                raise ShapeMismatchError(
                    f"block {i} has shape {m.shape}, expected {(n, n)}"
                )
            if not np.all(np.isfinite(m.view(float))):
                raise NonFiniteEntryError(f"block {i} has non-finite entries")
        self.spec = spec
        self.blocks = mats

    def __add__(self, other: "Element") -> "Element":
        _same_spec(self, other)
        return Element(
            self.spec,
            tuple(a + b for a, b in zip(self.blocks, other.blocks)),
            _checked=True,
        )

    def __sub__(self, other: "Element") -> "Element":
        _same_spec(self, other)
        return Element(
            self.spec,
            tuple(a - b for a, b in zip(self.blocks, other.blocks)),
            _checked=True,
        )

    def __matmul__(self, other: "Element") -> "Element":
        _same_spec(self, other)
        return Element(
            self.spec,
            tuple(a @ b for a, b in zip(self.blocks, other.blocks)),
            _checked=True,
        )

    def __rmul__(self, alpha) -> "Element":
        a = complex(alpha)
        return Element(
            self.spec, tuple(a * b for b in self.blocks), _checked=True
        )

    def __neg__(self) -> "Element":
        return Element(self.spec, tuple(-b for b in self.blocks), _checked=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.spec == other.spec and all(
            np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks)
        )

    def copy(self) -> "Element":
        return Element(
            self.spec, tuple(b.copy() for b in self.blocks), _checked=True
        )

    def conj_transpose(self) -> "Element":
        return Element(
            self.spec, tuple(b.conj().T for b in self.blocks), _checked=True
        )

    def __repr__(self) -> str:
        return f"Element(block_sizes={self.spec.block_sizes})"


def _same_spec(a: Element, b: Element) -> None:
    if a.spec != b.spec:
        raise ShapeMismatchError(
            f"algebra mismatch: {a.spec.block_sizes} vs {b.spec.block_sizes}"
        )


def identity(spec: AlgebraSpec) -> Element:
    """The multiplicative unit: identity matrix in every block."""
    return Element(
        spec,
        tuple(np.eye(n, dtype=complex) for n in spec.block_sizes),
        _checked=True,
    )


def zero(spec: AlgebraSpec) -> Element:
    return Element(
        spec,
        tuple(np.zeros((n, n), dtype=complex) for n in spec.block_sizes),
        _checked=True,
    )


def matrix_unit(spec: AlgebraSpec, block: int, row: int, col: int) -> Element:
    """The element with a single 1 at (row, col) of one block."""
    n = spec.block_sizes[block]
    if not (0 <= row < n and 0 <= col < n):
        raise ShapeMismatchError(
            f"unit ({row},{col}) out of range for block of size {n}"
        )
    e = zero(spec)
    e.blocks[block][row, col] = 1.0
    return e


def add(a: Element, b: Element) -> Element:
    return a + b


def subtract(a: Element, b: Element) -> Element:
    return a - b


def multiply(a: Element, b: Element) -> Element:
    return a @ b


def scale(alpha, a: Element) -> Element:
    return alpha * a


def operator_norm(a: Element) -> float:
    """Largest operator 2-norm over the blocks."""
    return max(float(np.linalg.norm(b, 2)) for b in a.blocks)


def frobenius_norm(a: Element) -> float:
    return float(np.sqrt(sum(np.linalg.norm(b, "fro") ** 2 for b in a.blocks)))


def eigenvalues(a: Element) -> np.ndarray:
    """All eigenvalues with multiplicity, concatenated across blocks."""
    vals = []
    for i, b in enumerate(a.blocks):
        try:
            vals.append(np.linalg.eigvals(b))
        except np.linalg.LinAlgError as exc:
            raise EigensolverError(i, str(exc)) from exc
    return np.concatenate(vals)


@dataclass(frozen=True)
class SpectrumReport:
    """Distinct spectral values with algebraic multiplicities.

    ``cluster_tolerance`` is the absolute merge radius that was applied
    (the relative tolerance times max(spectral radius, 1)). A cluster
    whose center lands within that radius of the origin is snapped to
    exactly 0 and flagged by ``contains_zero``.
    """

    points: tuple[tuple[complex, int], ...]
    cluster_tolerance: float
    contains_zero: bool

    @property
    def values(self) -> np.ndarray:
        return np.array([v for v, _ in self.points], dtype=complex)

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([m for _, m in self.points], dtype=int)

    @property
    def total_multiplicity(self) -> int:
        return int(sum(m for _, m in self.points))

    @property
    def nonzero_values(self) -> np.ndarray:
        return np.array([v for v, _ in self.points if v != 0], dtype=complex)

    @property
    def num_nonzero(self) -> int:
        """Number of distinct nonzero spectral values."""
        return len(self.points) - (1 if self.contains_zero else 0)

    @property
    def radius(self) -> float:
        """Spectral radius: largest modulus over the distinct values."""
        return max(abs(v) for v, _ in self.points)

    def gap(self, value: complex) -> float:
        """Distance from one spectral value to the nearest other one.

        Falls back to max(radius, 1) when the spectrum is a single point.
        """
        others = [abs(v - value) for v, _ in self.points if v != value]
        return min(others) if others else max(self.radius, 1.0)


def cluster_eigenvalues(
    values: np.ndarray, tol_abs: float
) -> tuple[np.ndarray, np.ndarray]:
    """Agglomerate eigenvalues until all centers are > tol_abs apart.

    Repeatedly merges the closest pair of clusters (multiplicity-weighted
    centroid) while any pair sits within ``tol_abs``. Deterministic:
    inputs are sorted lexicographically first, and ties merge the
    lexicographically first pair.
    """
    order = np.lexsort((values.imag, values.real))
    centers = values[order].astype(complex)
    counts = np.ones(len(centers), dtype=int)
    while len(centers) > 1:
        diff = np.abs(centers[:, None] - centers[None, :])
        np.fill_diagonal(diff, np.inf)
        i, j = np.unravel_index(int(np.argmin(diff)), diff.shape)
        if diff[i, j] > tol_abs:
            break
        if i > j:
            i, j = j, i
        w = counts[i] + counts[j]
        centers[i] = (counts[i] * centers[i] + counts[j] * centers[j]) / w
        counts[i] = w
        centers = np.delete(centers, j)
        counts = np.delete(counts, j)
    return centers, counts


def spectrum(a: Element, tol: float = CLUSTER_TOL) -> SpectrumReport:
    """Clustered spectrum of an element.

    Eigenvalues are computed per block and merged whenever two values
    are within ``tol * max(spectral radius, 1)`` of each other. Any
    cluster centered within that radius of 0 is reported as the exact
    spectral value 0.
    """
    if tol <= 0:
        raise ValueError("cluster tolerance must be positive")
    vals = eigenvalues(a)
    scale_ = max(float(np.max(np.abs(vals))), 1.0)
    tol_abs = tol * scale_
    centers, counts = cluster_eigenvalues(vals, tol_abs)

    zero_mask = np.abs(centers) <= tol_abs
    points = []
    zero_count = int(counts[zero_mask].sum())
    for c, m in zip(centers[~zero_mask], counts[~zero_mask]):
        points.append((complex(c), int(m)))
    contains_zero = zero_count > 0
    if contains_zero:
        points.append((0j, zero_count))
    points.sort(key=lambda p: (-abs(p[0]), p[0].real, p[0].imag))
    return SpectrumReport(tuple(points), tol_abs, contains_zero)


def nonzero_spectrum_count(a: Element, tol: float = CLUSTER_TOL) -> int:
    """#(distinct nonzero spectral values), on the fast path.

    Identical clustering rule to :func:`spectrum`, skipping the report;
    used heavily by randomized rank probing.
    """
    vals = eigenvalues(a)
    scale_ = max(float(np.max(np.abs(vals))), 1.0)
    tol_abs = tol * scale_
    if len(vals) > 1:
        diff = np.abs(vals[:, None] - vals[None, :])
        np.fill_diagonal(diff, np.inf)
        if diff.min() <= tol_abs:
            vals, _ = cluster_eigenvalues(vals, tol_abs)
    return int(np.sum(np.abs(vals) > tol_abs))


def spectral_radius(a: Element, tol: float = CLUSTER_TOL) -> float:
    """Largest modulus of a spectral value (0 for nilpotents)."""
    return spectrum(a, tol).radius


def resolvent(a: Element, z: complex, floor: float = RESOLVENT_FLOOR) -> Element:
    """Blockwise solve of (z*1 - a) r = 1.

    Rejects z closer to the spectrum than ``floor * max(radius, 1)``,
    reporting the offending eigenvalue.
    """
    z = complex(z)
    vals = eigenvalues(a)
    scale_ = max(float(np.max(np.abs(vals))), 1.0)
    dist = np.abs(vals - z)
    k = int(np.argmin(dist))
    if dist[k] < floor * scale_:
        raise SingularResolventError(z, complex(vals[k]), float(dist[k]))
    return _resolvent_unchecked(a, z)


def _resolvent_unchecked(a: Element, z: complex) -> Element:
    blocks = tuple(
        np.linalg.solve(z * np.eye(n, dtype=complex) - b, np.eye(n, dtype=complex))
        for b, n in zip(a.blocks, a.spec.block_sizes)
    )
    return Element(a.spec, blocks, _checked=True)


def classical_rank(a: Element, tol: float = RANK_TOL) -> int:
    """SVD rank oracle, relative cutoff per block.

    Counts singular values above ``tol`` times the block's largest
    singular value. A block whose largest singular value sits below
    ``tol`` times the element-wide scale is a zero block (reference 1,
    so nothing counts); without that, roundoff residue in an otherwise
    zero block would be scored against its own noise level.
    """
    if tol <= 0:
        raise ValueError("rank tolerance must be positive")
    svals = [np.linalg.svd(b, compute_uv=False) for b in a.blocks]
    tops = [s[0] if len(s) else 0.0 for s in svals]
    floor = tol * max(max(tops), 1.0)
    total = 0
    for s, top in zip(svals, tops):
        if top > floor:
            total += int(np.sum(s > tol * top))
    return total


def classical_trace(a: Element) -> complex:
    """Diagonal-sum trace oracle across all blocks."""
    return complex(sum(np.trace(b) for b in a.blocks))
