"""JSON documents with deterministic, byte-stable rendering.

All emitted documents carry schema "solvcurv/1".  Floats are printed with
12 significant digits and no locale dependence, so identical pipelines
produce identical bytes; field order is fixed by construction order.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import StructureTensor
from .builders import MetricSolvLieAlgebra
from .curvature import CurvatureReport, Fingerprint
from .errors import SolvcurvError
from .roots import build_root_system

SCHEMA = "solvcurv/1"


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if v == 0.0:
            v = 0.0  # normalize negative zero
        out = format(v, ".12g")
        # keep valid JSON for the rare non-finite value
        return out if out not in ("inf", "-inf", "nan") else json.dumps(None)
    if isinstance(x, str):
        return json.dumps(x)
    if x is None:
        return "null"
    if isinstance(x, (list, tuple)):
        return "[" + ",".join(_fmt(v) for v in x) + "]"
    if isinstance(x, dict):
        return "{" + ",".join(f"{json.dumps(str(k))}:{_fmt(v)}" for k, v in x.items()) + "}"
    if isinstance(x, np.ndarray):
        return _fmt(x.tolist())
    raise TypeError(f"cannot render {type(x)!r}")


def dumps(doc: dict) -> str:
    """Render a document with stable field order and fixed float format."""
    return _fmt(doc) + "\n"


def algebra_to_jsonable(s: MetricSolvLieAlgebra) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "algebra",
        "family": s.rs.family,
        "params": list(s.rs.params),
        "dim_a": s.dim_a,
        "dim_n": s.dim_n,
        "labels": list(s.labels),
        "roots": [
            {"label": r.label, "coords": list(r.coords), "mult": r.mult}
            for r in s.rs.positive_roots
        ],
        "n_roots": [r.label for r in s.n_roots],
        "a_omega": s.a_omega,
        "flags": dict(s.flags) if s.flags is not None else None,
        "provenance": list(s.provenance),
        "structure": [
            [i, j, k, v] for i, j, k, v in s.structure.nonzero_triples()
        ],
    }


def algebra_from_jsonable(doc: dict) -> MetricSolvLieAlgebra:
    if doc.get("schema") != SCHEMA or doc.get("kind") != "algebra":
        raise SolvcurvError("not a solvcurv/1 algebra document")
    rs = build_root_system(doc["family"], *doc["params"])
    by_label = {r.label: r for r in rs.positive_roots}
    labels = tuple(doc["labels"])
    dim = len(labels)
    c = np.zeros((dim, dim, dim))
    for i, j, k, v in doc["structure"]:
        c[i, j, k] = v
        c[j, i, k] = -v
    return MetricSolvLieAlgebra(
        labels=labels,
        dim_a=int(doc["dim_a"]),
        dim_n=int(doc["dim_n"]),
        structure=StructureTensor(c),
        rs=rs,
        n_roots=tuple(by_label[lab] for lab in doc["n_roots"]),
        a_omega=np.array(doc["a_omega"], dtype=float).reshape(
            int(doc["dim_a"]), rs.coord_dim
        ),
        flags={k: int(v) for k, v in doc["flags"].items()} if doc.get("flags") else None,
        provenance=tuple(doc.get("provenance", ())),
    )


def report_to_jsonable(report: CurvatureReport) -> dict:
    return {"schema": SCHEMA, "kind": "curvature_report", **report.to_jsonable()}


def fingerprint_to_jsonable(fp: Fingerprint) -> dict:
    return {"schema": SCHEMA, "kind": "fingerprint", **fp.to_jsonable()}
