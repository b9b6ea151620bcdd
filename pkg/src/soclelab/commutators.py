"""Constructive commutator identities on matrix blocks.

Every traceless n x n matrix is a short linear combination of
commutators of matrix units: each off-diagonal entry comes from
[e_ii, e_ij] = e_ij, and the diagonal telescopes through
[e_i,i+1, e_i+1,i] = e_ii - e_i+1,i+1 with partial-sum coefficients.
The difference of two rank-one projections is a single commutator of
two rank-one operators, built from the defining vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec, Element, matrix_unit
from .errors import DegenerateProjectionError, NotTracelessError

TRACELESS_TOL = 1e-9
CERTIFICATE_TOL = 1e-12


@dataclass(frozen=True)
class MatrixUnit:
    """Symbolic e_(row,col) inside one block; materialized on demand."""

    block: int
    row: int
    col: int

    def matrix(self, size: int) -> np.ndarray:
        m = np.zeros((size, size), dtype=complex)
        m[self.row, self.col] = 1.0
        return m

    def element(self, spec: AlgebraSpec) -> Element:
        return matrix_unit(spec, self.block, self.row, self.col)

    def to_json_dict(self) -> dict:
        return {"block": self.block, "row": self.row, "col": self.col}


@dataclass(frozen=True)
class CommutatorCertificate:
    """target = sum of c * (left right - right left) over the terms.

    Left and right factors are always single matrix units, so the
    certificate is re-verifiable from the indices alone.
    """

    block: int
    block_size: int
    terms: tuple[tuple[complex, MatrixUnit, MatrixUnit], ...]
    target: np.ndarray
    reconstruction_defect: float


def commutator_decompose(
    m: np.ndarray, block: int = 0, tol: float = TRACELESS_TOL
) -> CommutatorCertificate:
    """Write a traceless matrix as a combination of unit commutators.

    At most n^2 - 1 terms: one per nonzero off-diagonal entry plus one
    per nonzero diagonal partial sum. Zero coefficients are skipped, so
    certificates are minimal term-by-term. A 1 x 1 input must be zero
    and yields the empty certificate.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = m.shape[0]
    trace = complex(np.trace(m))
    scale = max(1.0, float(np.linalg.norm(m, "fro")))
    if abs(trace) > tol * scale:
        raise NotTracelessError(trace)

    terms: list[tuple[complex, MatrixUnit, MatrixUnit]] = []
    for i in range(n):
        for j in range(n):
            if i != j and m[i, j] != 0:
                terms.append(
                    (complex(m[i, j]), MatrixUnit(block, i, i), MatrixUnit(block, i, j))
                )
    partial = 0j
    for i in range(n - 1):
        partial += m[i, i]
        if partial != 0:
            terms.append(
                (partial, MatrixUnit(block, i, i + 1), MatrixUnit(block, i + 1, i))
            )

    cert = CommutatorCertificate(
        block=block,
        block_size=n,
        terms=tuple(terms),
        target=m.copy(),
        reconstruction_defect=0.0,
    )
    defect = verify_certificate(cert)
    return CommutatorCertificate(
        block=block,
        block_size=n,
        terms=cert.terms,
        target=m.copy(),
        reconstruction_defect=defect,
    )


def verify_certificate(cert: CommutatorCertificate) -> float:
    """Largest entrywise deviation of the rebuilt sum from the target.

    Rebuilds every commutator from the stored unit indices rather than
    trusting anything recorded in the certificate.
    """
    n = cert.block_size
    acc = np.zeros((n, n), dtype=complex)
    for c, left, right in cert.terms:
        lm = left.matrix(n)
        rm = right.matrix(n)
        acc += c * (lm @ rm - rm @ lm)
    if cert.target.shape != (n, n):
        raise ValueError("certificate target has the wrong shape")
    return float(np.max(np.abs(acc - cert.target)))


@dataclass(frozen=True)
class RankOnePair:
    """Two rank-one projections realized as one commutator difference.

    P maps u to f(u) x and Q maps u to g(u) y (normalized so f(x) =
    g(y) = 1). With S: u -> g(u) x and T: u -> f(u) y one has S T = P
    and T S = Q, hence P - Q = S T - T S with both factors of rank one.
    """

    x: np.ndarray
    f: np.ndarray
    y: np.ndarray
    g: np.ndarray
    P: np.ndarray
    Q: np.ndarray
    S: np.ndarray
    T: np.ndarray
    defect: float


def rank_one_commutator(x, f, y, g) -> RankOnePair:
    """Build S, T with P - Q = S T - T S from projection data.

    ``x, y`` are column vectors and ``f, g`` covectors (acting by the
    plain dot product, no conjugation); the pairings f(x) and g(y) must
    be nonzero and are normalized away.
    """
    x = np.asarray(x, dtype=complex).reshape(-1)
    f = np.asarray(f, dtype=complex).reshape(-1)
    y = np.asarray(y, dtype=complex).reshape(-1)
    g = np.asarray(g, dtype=complex).reshape(-1)
    if not (len(x) == len(f) == len(y) == len(g)):
        raise ValueError("vectors and covectors must share one dimension")

    fx = complex(f @ x)
    gy = complex(g @ y)
    if abs(fx) < 1e-12 * max(1.0, np.linalg.norm(f) * np.linalg.norm(x)):
        raise DegenerateProjectionError("pairing f(x) is numerically zero")
    if abs(gy) < 1e-12 * max(1.0, np.linalg.norm(g) * np.linalg.norm(y)):
        raise DegenerateProjectionError("pairing g(y) is numerically zero")
    f = f / fx
    g = g / gy

    P = np.outer(x, f)
    Q = np.outer(y, g)
    S = np.outer(x, g)
    T = np.outer(y, f)
    defect = float(np.max(np.abs((P - Q) - (S @ T - T @ S))))
    return RankOnePair(x=x, f=f, y=y, g=g, P=P, Q=Q, S=S, T=T, defect=defect)
