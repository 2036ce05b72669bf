"""Verification records shared by the correspondence, lift and corpus checks."""

from __future__ import annotations

import json

import numpy as np

PASS = "pass"
FAIL = "fail"
TRIVIAL = "finite-trivial"


def jsonable(value):
    """Convert witnesses (tuples, numpy scalars, named tuples, verdicts) to JSON data."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, float):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if hasattr(value, "ok") and hasattr(value, "witness"):
        return {"ok": bool(value.ok), "witness": jsonable(value.witness)}
    if isinstance(value, (list, tuple, set, frozenset, np.ndarray)):
        items = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in items]
    return repr(value)


def record(frame: str, check: str, ok: bool, witness=None, trivial: bool = False) -> dict:
    """One report line. A passing check that is vacuous at finite scale gets status ``finite-trivial``."""
    status = (TRIVIAL if trivial else PASS) if ok else FAIL
    return {"frame": frame, "check": check, "status": status, "witness": jsonable(witness)}


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, ensure_ascii=False)
