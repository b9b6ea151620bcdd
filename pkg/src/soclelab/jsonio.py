"""JSON wire formats.

Complex numbers are always two-element ``[re, im]`` arrays, matrices
are row-major nested lists of those pairs, never strings. Every
encoder/decoder pair round-trips exactly (floats survive via repr).
Report serializers for every dataclass the CLI can emit live at the
bottom of the module.
"""

from __future__ import annotations

import numpy as np

from .algebra import AlgebraSpec, Element, SpectrumReport
from .errors import ShapeMismatchError


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(data) -> complex:
    if not isinstance(data, (list, tuple)) or len(data) != 2:
        raise ShapeMismatchError(f"expected [re, im] pair, got {data!r}")
    return complex(float(data[0]), float(data[1]))


def matrix_to_json(m: np.ndarray) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def matrix_from_json(data) -> np.ndarray:
    return np.array(
        [[complex_from_json(entry) for entry in row] for row in data],
        dtype=complex,
    )


def vector_to_json(v: np.ndarray) -> list:
    return [complex_to_json(z) for z in np.asarray(v, dtype=complex)]


def vector_from_json(data) -> np.ndarray:
    return np.array([complex_from_json(z) for z in data], dtype=complex)


def spec_to_json(spec: AlgebraSpec) -> dict:
    return {"block_sizes": list(spec.block_sizes)}


def spec_from_json(data) -> AlgebraSpec:
    if "block_sizes" not in data:
        raise ShapeMismatchError('algebra JSON needs a "block_sizes" field')
    return AlgebraSpec(tuple(int(n) for n in data["block_sizes"]))


def element_to_json(a: Element) -> dict:
    return {"blocks": [matrix_to_json(b) for b in a.blocks]}


def element_from_json(data, spec: AlgebraSpec | None = None) -> Element:
    if "blocks" not in data:
        raise ShapeMismatchError('element JSON needs a "blocks" field')
    blocks = [matrix_from_json(b) for b in data["blocks"]]
    if spec is None:
        spec = AlgebraSpec(tuple(b.shape[0] for b in blocks))
    return Element(spec, blocks)


def functional_to_json(f) -> dict:
    return {"weights": [matrix_to_json(w) for w in f.weights]}


def functional_from_json(data, spec: AlgebraSpec | None = None):
    from .functionals import Functional

    if "weights" not in data:
        raise ShapeMismatchError('functional JSON needs a "weights" field')
    weights = [matrix_from_json(w) for w in data["weights"]]
    if spec is None:
        spec = AlgebraSpec(tuple(w.shape[0] for w in weights))
    return Functional(spec, weights)


def spectrum_report_to_json(rep: SpectrumReport) -> dict:
    return {
        "points": [
            {"value": complex_to_json(v), "multiplicity": m} for v, m in rep.points
        ],
        "cluster_tolerance": rep.cluster_tolerance,
        "contains_zero": rep.contains_zero,
    }


def rank_report_to_json(rep) -> dict:
    return {
        "rank": rep.rank,
        "oracle_rank": rep.oracle_rank,
        "probes_used": rep.probes_used,
        "achieved_counts": {str(k): v for k, v in rep.achieved_counts.items()},
        "best_probe": element_to_json(rep.best_probe),
    }


def riesz_report_to_json(rep) -> dict:
    return {
        "projection": element_to_json(rep.projection),
        "centers": [complex_to_json(c) for c in rep.centers],
        "radii": list(rep.radii),
        "nodes": rep.nodes,
        "idempotency_defect": rep.idempotency_defect,
        "multiplicity": rep.multiplicity,
        "range_residual": rep.range_residual,
    }


def diagonalization_to_json(d) -> dict:
    return {
        "values": [complex_to_json(v) for v in d.values],
        "projections": [element_to_json(p) for p in d.projections],
        "residual": d.residual,
    }


def compression_report_to_json(rep) -> dict:
    return {
        "subalgebra": spec_to_json(rep.subalgebra) if rep.subalgebra else None,
        "compressed": element_to_json(rep.compressed) if rep.compressed else None,
        "nonzero_spectra_match": rep.nonzero_spectra_match,
        "rank_ambient": rep.rank_ambient,
        "rank_compressed": rep.rank_compressed,
        "classical_trace_ambient": complex_to_json(rep.classical_trace_ambient),
        "classical_trace_compressed": complex_to_json(rep.classical_trace_compressed),
        "spectral_trace_ambient": complex_to_json(rep.spectral_trace_ambient),
        "spectral_trace_compressed": complex_to_json(rep.spectral_trace_compressed),
        "trace_match": rep.trace_match,
        "consistent": rep.consistent,
    }


def certificate_to_json(cert) -> dict:
    return {
        "block": cert.block,
        "block_size": cert.block_size,
        "terms": [
            {
                "c": complex_to_json(c),
                "left": left.to_json_dict(),
                "right": right.to_json_dict(),
            }
            for c, left, right in cert.terms
        ],
        "target": matrix_to_json(cert.target),
        "reconstruction_defect": cert.reconstruction_defect,
    }


def certificate_from_json(data):
    from .commutators import CommutatorCertificate, MatrixUnit

    terms = tuple(
        (
            complex_from_json(t["c"]),
            MatrixUnit(t["left"]["block"], t["left"]["row"], t["left"]["col"]),
            MatrixUnit(t["right"]["block"], t["right"]["row"], t["right"]["col"]),
        )
        for t in data["terms"]
    )
    return CommutatorCertificate(
        block=int(data["block"]),
        block_size=int(data["block_size"]),
        terms=terms,
        target=matrix_from_json(data["target"]),
        reconstruction_defect=float(data["reconstruction_defect"]),
    )


def rank_one_pair_to_json(pair) -> dict:
    return {
        "x": vector_to_json(pair.x),
        "f": vector_to_json(pair.f),
        "y": vector_to_json(pair.y),
        "g": vector_to_json(pair.g),
        "P": matrix_to_json(pair.P),
        "Q": matrix_to_json(pair.Q),
        "S": matrix_to_json(pair.S),
        "T": matrix_to_json(pair.T),
        "defect": pair.defect,
    }


def _maybe_complex(z) -> list[float] | None:
    return None if z is None else complex_to_json(z)


def _maybe_element(e) -> dict | None:
    return None if e is None else element_to_json(e)


def characterization_to_json(rep) -> dict:
    pair = rep.tracial_pair
    witnesses = rep.rank_one_constancy.witnesses
    return {
        "is_scalar_trace": rep.is_scalar_trace,
        "scalar_trace_coefficient": _maybe_complex(rep.scalar_trace_coefficient),
        "is_tracial": rep.tracial,
        "tracial_witness_pair": (
            None if pair is None else [element_to_json(pair[0]), element_to_json(pair[1])]
        ),
        "spectral_bound": {
            "bounded": rep.bound.constant is not None,
            "constant": rep.bound.constant,
            "witness": _maybe_element(rep.bound.witness),
            "witness_value": _maybe_complex(rep.bound.witness_value),
        },
        "vanishes_on_nilpotents": {
            "vanishes": rep.nilpotent.vanishes,
            "witness": _maybe_element(rep.nilpotent.witness),
            "witness_value": _maybe_complex(rep.nilpotent.witness_value),
        },
        "vanishes_on_square_zero": {
            "vanishes": rep.square_zero.vanishes,
            "witness": _maybe_element(rep.square_zero.witness),
            "witness_value": _maybe_complex(rep.square_zero.witness_value),
        },
        "constant_on_rank_one_projections": {
            "constant": rep.rank_one_constancy.constant,
            "value": _maybe_complex(rep.rank_one_constancy.value),
            "witness_pair": (
                None
                if witnesses is None
                else [
                    {
                        "projection": element_to_json(p),
                        "value": complex_to_json(v),
                    }
                    for p, v in witnesses
                ]
            ),
        },
    }


def ideal_report_to_json(rep) -> dict:
    return {
        "generator": element_to_json(rep.generator),
        "ideal_dimension": rep.ideal_dimension,
        "is_whole_algebra": rep.is_whole_algebra,
        "supported_blocks": sorted(rep.supported_blocks),
    }


def verification_report_to_json(rep) -> dict:
    return {
        "spec": spec_to_json(rep.spec),
        "trials": rep.trials,
        "seed": rep.seed,
        "socle_is_single_matrix_block": rep.socle_is_single_matrix_block,
        "socle_is_minimal_ideal": rep.socle_is_minimal_ideal,
        "functional_count": rep.functional_count,
        "verdicts": {
            name: {"claim": v.claim, "holds": v.holds, "details": _plain(v.details)}
            for name, v in rep.verdicts.items()
        },
        "counterexample": (
            None
            if rep.counterexample is None
            else {
                "functional": functional_to_json(rep.counterexample.functional),
                "characterization": characterization_to_json(rep.counterexample),
            }
        ),
    }


def _plain(value):
    """Recursively convert numpy scalars/containers to JSON-safe types."""
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, (np.complexfloating, complex)):
        return complex_to_json(complex(value))
    if isinstance(value, np.bool_):
        return bool(value)
    return value
