"""JSON document envelopes for states, observables and verdicts.

Every document is an object with ``"kind"`` and ``"dim"``. Complex numbers
are ``[re, im]`` pairs, vectors are lists of pairs and matrices are
row-major lists of rows. Floats are written with Python's shortest
round-trip ``repr`` so decoding restores every bit.

=============== ===================================================
kind            payload keys
=============== ===================================================
state           ``matrix``
state_vector    ``vector``
effect_family   ``effects`` (list of matrices), optional ``labels``
frame           ``vectors``, optional ``labels`` and ``values``
pvm             ``vectors``, ``values``, optional ``labels``
=============== ===================================================
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import EnvelopeError, GenObsError
from .linalg import as_vector
from .observables import EffectFamily, ObliqueFrame, Povm, Pvm
from .representability import AffinityWitness, Certificate, RepresentabilityVerdict, Status
from .states import GeneralizedState

KINDS = ("state", "state_vector", "effect_family", "frame", "pvm")


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_vector(v) -> list:
    return [encode_complex(z) for z in np.asarray(v).ravel()]


def encode_matrix(A) -> list:
    return [encode_vector(row) for row in np.asarray(A)]


def _number(x, where: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise EnvelopeError(f"{where}: expected a number, got {x!r}")
    return float(x)


def decode_complex(z, where: str = "entry") -> complex:
    if isinstance(z, (int, float)) and not isinstance(z, bool):
        return complex(z)
    if not isinstance(z, (list, tuple)) or len(z) != 2:
        raise EnvelopeError(f"{where}: complex numbers are [re, im] pairs, got {z!r}")
    return complex(_number(z[0], where), _number(z[1], where))


def decode_vector(v, dim: int, where: str = "vector") -> np.ndarray:
    if not isinstance(v, list) or len(v) != dim:
        raise EnvelopeError(f"{where}: expected a list of {dim} entries")
    return np.array([decode_complex(z, f"{where}[{k}]") for k, z in enumerate(v)])


def decode_matrix(M, dim: int, where: str = "matrix") -> np.ndarray:
    if not isinstance(M, list) or not all(isinstance(r, list) for r in M):
        raise EnvelopeError(f"{where}: a matrix is a list of rows")
    if len(M) != dim or any(len(r) != dim for r in M):
        shape = (len(M), sorted({len(r) for r in M}))
        raise EnvelopeError(f"{where}: matrix must be square {dim}x{dim}, got rows/cols {shape}")
    return np.array([[decode_complex(z, f"{where}[{i}][{j}]") for j, z in enumerate(r)] for i, r in enumerate(M)])


def _labels(doc):
    labels = doc.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise EnvelopeError("labels must be a list")
    return labels


def _values(doc, required: bool):
    values = doc.get("values")
    if values is None:
        if required:
            raise EnvelopeError("missing key 'values'")
        return None
    if not isinstance(values, list):
        raise EnvelopeError("values must be a list of reals")
    return [_number(y, "values") for y in values]


def _require(doc, key):
    if key not in doc:
        raise EnvelopeError(f"missing key {key!r}")
    return doc[key]


def from_document(doc):
    """Build and validate the object described by a decoded envelope.

    Returns a :class:`GeneralizedState`, a state vector (``ndarray``), an
    :class:`EffectFamily`, an :class:`ObliqueFrame` or a :class:`Pvm`.
    """
    if not isinstance(doc, dict):
        raise EnvelopeError("document must be a JSON object")
    kind = _require(doc, "kind")
    if kind not in KINDS:
        raise EnvelopeError(f"unknown kind {kind!r}; expected one of {KINDS}")
    dim = _require(doc, "dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise EnvelopeError(f"dim must be a positive integer, got {dim!r}")
    if kind == "state":
        return GeneralizedState(decode_matrix(_require(doc, "matrix"), dim))
    if kind == "state_vector":
        return as_vector(decode_vector(_require(doc, "vector"), dim), "state vector")
    if kind == "effect_family":
        effects = _require(doc, "effects")
        if not isinstance(effects, list):
            raise EnvelopeError("effects must be a list of matrices")
        mats = tuple(decode_matrix(M, dim, f"effects[{k}]") for k, M in enumerate(effects))
        return EffectFamily(mats, _labels(doc))
    vectors = _require(doc, "vectors")
    if not isinstance(vectors, list):
        raise EnvelopeError("vectors must be a list")
    vecs = tuple(decode_vector(v, dim, f"vectors[{k}]") for k, v in enumerate(vectors))
    if kind == "frame":
        return ObliqueFrame(vecs, _labels(doc), _values(doc, False))
    return Pvm(vecs, _values(doc, True), _labels(doc))


def to_document(obj) -> dict:
    """Inverse of :func:`from_document`."""
    if isinstance(obj, GeneralizedState):
        return {"kind": "state", "dim": obj.dim, "matrix": encode_matrix(obj.op)}
    if isinstance(obj, EffectFamily):
        return {
            "kind": "effect_family",
            "dim": obj.dim,
            "labels": list(obj.labels),
            "effects": [encode_matrix(E) for E in obj.effects],
        }
    if isinstance(obj, ObliqueFrame):
        doc = {"kind": "frame", "dim": obj.dim, "labels": list(obj.labels), "vectors": [encode_vector(v) for v in obj.vectors]}
        if obj.values is not None:
            doc["values"] = list(obj.values)
        return doc
    if isinstance(obj, Pvm):
        return {
            "kind": "pvm",
            "dim": obj.dim,
            "labels": list(obj.labels),
            "values": list(obj.values),
            "vectors": [encode_vector(v) for v in obj.basis],
        }
    if isinstance(obj, np.ndarray) and obj.ndim == 1:
        return {"kind": "state_vector", "dim": obj.size, "vector": encode_vector(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def load(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise EnvelopeError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise EnvelopeError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return from_document(doc)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2)


def verdict_to_document(v: RepresentabilityVerdict, rng_algorithm: str | None = None) -> dict:
    doc = {"kind": "verdict", "status": v.status.value}
    if rng_algorithm:
        doc["rng"] = rng_algorithm
    doc["povm"] = to_document(v.povm) if v.povm is not None else None
    if v.witness is not None:
        w = v.witness
        doc["witness"] = {
            "dim": int(w.state_a.shape[0]),
            "outcome": w.outcome,
            "state_a": encode_matrix(w.state_a),
            "state_b": encode_matrix(w.state_b),
            "midpoint": encode_matrix(w.midpoint),
            "p_a": w.p_a,
            "p_b": w.p_b,
            "p_mid": w.p_mid,
            "gap": w.gap,
        }
    else:
        doc["witness"] = None
    if v.candidate is not None:
        doc["candidate"] = [encode_matrix(W) for W in v.candidate]
    if v.certificate is not None:
        c = v.certificate
        doc["certificate"] = {
            "check": c.check,
            "outcome": c.outcome,
            "state": encode_matrix(c.state) if c.state is not None else None,
            "candidate": c.candidate,
            "required": c.required,
            "residual": c.residual,
        }
    return doc


def verdict_from_document(doc) -> RepresentabilityVerdict:
    """Parse a verdict document, re-validating the POVM and witness."""
    try:
        status = Status(_require(doc, "status"))
        povm = None
        if doc.get("povm") is not None:
            fam = from_document(doc["povm"])
            povm = Povm(fam.effects, fam.labels, tol=1e-9)
        witness = None
        if doc.get("witness") is not None:
            w = doc["witness"]
            d = w["dim"]
            witness = AffinityWitness(
                decode_matrix(w["state_a"], d),
                decode_matrix(w["state_b"], d),
                str(w["outcome"]),
                float(w["p_a"]),
                float(w["p_b"]),
                float(w["p_mid"]),
            )
        candidate = None
        if doc.get("candidate") is not None:
            d = len(doc["candidate"][0])
            candidate = tuple(decode_matrix(M, d) for M in doc["candidate"])
        certificate = None
        if doc.get("certificate") is not None:
            c = doc["certificate"]
            state = c.get("state")
            certificate = Certificate(
                c["check"],
                c.get("outcome"),
                decode_matrix(state, len(state)) if state is not None else None,
                c.get("candidate"),
                c.get("required"),
                float(c["residual"]),
            )
        return RepresentabilityVerdict(status, povm, witness, candidate, certificate)
    except GenObsError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise EnvelopeError(f"malformed verdict document: {exc}") from None
