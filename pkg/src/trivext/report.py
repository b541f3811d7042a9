"""JSON reports with a pinned schema.

Every number is exact: integers stay integers and other rationals become
``"p/q"`` strings.  Keys are sorted and timings are only filled in on request,
so identical inputs give byte-identical files.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
from fractions import Fraction
from typing import Any

from .engine import AsidReport, Caps, CMReport, K0Report
from .graded import GradedModule
from .modules import FDModule

SCHEMA_VERSION = "trivext.report/1"

REPORT_KEYS = ("schema", "input_digest", "field", "seed", "caps", "verdict", "alpha", "T", "ker_varpi", "cm",
               "k0", "timings")


def input_digest(*texts: str) -> str:
    h = hashlib.sha256()
    for t in texts:
        h.update(t.encode())
        h.update(b"\0")
    return "sha256:" + h.hexdigest()


def exact(x: Any) -> Any:
    """Recursively convert to JSON-safe exact values."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        raise TypeError("floating point values are not allowed in reports")
    if isinstance(x, dict):
        return {str(k): exact(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    if dataclasses.is_dataclass(x):
        return exact(dataclasses.asdict(x))
    if hasattr(x, "p") and hasattr(x, "q"):  # flint fmpq
        return exact(Fraction(int(x.p), int(x.q)))
    return exact(Fraction(str(x)))


def caps_dict(caps: Caps) -> dict:
    return dataclasses.asdict(caps)


def module_entry(m: FDModule | GradedModule) -> dict:
    if isinstance(m, GradedModule):
        return {"name": m.module.name, "dim": m.dim, "vertex_dims": list(m.module.vdims),
                "pieces": {str(d): n for d, n in sorted(m.piece_dims().items())}}
    return {"name": m.name, "dim": m.dim, "vertex_dims": list(m.vdims)}


def cm_section(cm: CMReport | None) -> dict | None:
    if cm is None:
        return None
    return {
        "count": cm.count,
        "graded_count": cm.graded_count,
        "modules": [module_entry(m) for m in cm.ind_cm],
        "omega": {str(k): v for k, v in sorted(cm.omega.items())},
        "finite_cm_type": cm.finite_cm_type,
        "injdim": cm.injdim,
        "notes": list(cm.notes),
    }


def k0_section(k0: K0Report | None) -> dict | None:
    if k0 is None:
        return None
    out = dataclasses.asdict(k0)
    out["orbits_agree"] = k0.orbits_agree
    return out


def asid_document(rep: AsidReport, *, digest: str, field: str, seed: int, cm: CMReport | None = None,
                  k0: K0Report | None = None, timings: dict[str, Any] | None = None,
                  extra: dict[str, Any] | None = None) -> dict:
    doc = {
        "schema": SCHEMA_VERSION,
        "input_digest": digest,
        "field": field,
        "seed": seed,
        "caps": caps_dict(rep.caps),
        "verdict": rep.verdict,
        "asid": rep.is_asid,
        "alpha": {"r": rep.alpha_r, "ell": rep.alpha_ell, "sources": dict(sorted(rep.alpha_sources.items()))},
        "T": {"generators": rep.t_generators()},
        "ker_varpi": {"generators": rep.ker_varpi_generators()},
        "cm": cm_section(cm),
        "k0": k0_section(k0),
        "timings": timings or {},
        "pd": {"right": rep.pd_right, "left": rep.pd_left},
        "notes": list(rep.notes),
    }
    if extra:
        doc.update(extra)
    return doc


def envelope(*, digest: str, field: str, seed: int, caps: Caps, verdict: str | None,
             timings: dict[str, Any] | None = None, **body: Any) -> dict:
    """A report without a single bimodule at its centre, e.g. a classification run."""
    doc = {
        "schema": SCHEMA_VERSION,
        "input_digest": digest,
        "field": field,
        "seed": seed,
        "caps": caps_dict(caps),
        "verdict": verdict,
        "alpha": None,
        "T": None,
        "ker_varpi": None,
        "cm": None,
        "k0": None,
        "timings": timings or {},
    }
    doc.update(body)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(exact(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
