"""Reading system, structure, and parameter files.

A system file is JSON with the shape

    {
      "name": "distillation",
      "A": [[...], ...],            # n x n, row-major
      "B": [[...], ...],            # n x m
      "structure": [                 # optional target eigenstructure
        {"re": 0.0, "im": 0.0, "blocks": [3, 2]},
        ...
      ],
      "baseline": {                  # optional published reference values
        "kappa_fro": 16.73, "gain_fro": 3.102,
        "delta_fro": null, "source": "..."
      }
    }

Eigenvalue records with im != 0 may omit the conjugate partner; it is added
automatically with the same block orders.  A structure-only file is either
the record list itself or {"structure": [...]}.
"""

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, StructureError
from .placement import ParameterMatrix
from .structure import EigStructure, System, normalize_ordering


@dataclass(frozen=True)
class SystemFile:
    name: str
    system: System
    structure: EigStructure | None
    baseline: dict | None
    path: str = ""


def _as_matrix(raw, field, path):
    try:
        M = np.array(raw, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: field '{field}' is not a numeric matrix: {exc}")
    if M.ndim != 2:
        raise ParseError(f"{path}: field '{field}' must be a list of rows")
    return M

def structure_from_records(records, n=None, path="<records>"):
    """Build a normalized eigenstructure from {re, im, blocks} records."""
    if not isinstance(records, list) or not records:
        raise ParseError(f"{path}: 'structure' must be a non-empty list of records")
    eigs, blocks = [], []
    for idx, rec in enumerate(records):
        if not isinstance(rec, dict):
            raise ParseError(f"{path}: structure record {idx} must be an object")
        try:
            lam = complex(float(rec.get("re", 0.0)), float(rec.get("im", 0.0)))
            orders = tuple(int(p) for p in rec["blocks"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{path}: structure record {idx} malformed: {exc}")
        eigs.append(lam)
        blocks.append(orders)
    # auto-complete missing conjugates with identical block orders
    for lam, orders in list(zip(eigs, blocks)):
        if lam.imag != 0.0 and lam.conjugate() not in eigs:
            eigs.append(lam.conjugate())
            blocks.append(orders)
    try:
        spec = EigStructure(tuple(eigs), tuple(blocks))
    except StructureError as exc:
        raise ParseError(f"{path}: invalid structure: {exc}")
    if n is not None and spec.n != n:
        raise ParseError(
            f"{path}: multiplicities sum to {spec.n}, expected state dimension {n}"
        )
    ordered, _ = normalize_ordering(spec)
    return ordered


def load_system(path):
    """Load and validate a system file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"{path}: cannot read: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    for field in ("A", "B"):
        if field not in data:
            raise ParseError(f"{path}: missing required field '{field}'")
    A = _as_matrix(data["A"], "A", path)
    B = _as_matrix(data["B"], "B", path)
    try:
        system = System(A, B)
    except StructureError as exc:
        raise ParseError(f"{path}: {exc}")

    structure = None
    if data.get("structure") is not None:
        structure = structure_from_records(data["structure"], system.n, str(path))

    baseline = data.get("baseline")
    if baseline is not None and not isinstance(baseline, dict):
        raise ParseError(f"{path}: 'baseline' must be an object")

    return SystemFile(
        name=str(data.get("name", path.stem)),
        system=system,
        structure=structure,
        baseline=baseline,
        path=str(path),
    )


def load_structure(path, n=None):
    """Load a structure-only file (record list or {'structure': [...]})."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"{path}: cannot read: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
    records = data.get("structure") if isinstance(data, dict) else data
    return structure_from_records(records, n, str(path))


def load_parameter(path, spec, m):
    """Load a parameter matrix: {"blocks": [{"re": [[..]], "im": [[..]]}]}.

    Blocks are listed for every eigenvalue in conformable order; "im" may be
    omitted for real blocks.  Conjugate-pair consistency is validated.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"{path}: cannot read: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
    raw = data.get("blocks") if isinstance(data, dict) else None
    if not isinstance(raw, list):
        raise ParseError(f"{path}: expected object with a 'blocks' list")
    if len(raw) != spec.nu:
        raise ParseError(
            f"{path}: {len(raw)} blocks given, structure has {spec.nu} eigenvalues"
        )
    blocks = []
    for idx, rec in enumerate(raw):
        if not isinstance(rec, dict) or "re" not in rec:
            raise ParseError(f"{path}: block {idx} must be an object with 're'")
        re = _as_matrix(rec["re"], f"blocks[{idx}].re", path)
        if rec.get("im") is not None:
            im = _as_matrix(rec["im"], f"blocks[{idx}].im", path)
            blocks.append(re + 1j * im)
        else:
            blocks.append(re)
    mults = spec.multiplicities
    for idx, blk in enumerate(blocks):
        if blk.shape != (m, mults[idx]):
            raise ParseError(
                f"{path}: block {idx} has shape {blk.shape}, "
                f"expected ({m}, {mults[idx]})"
            )
    try:
        return ParameterMatrix(blocks, spec.sigma)
    except StructureError as exc:
        raise ParseError(f"{path}: {exc}")


def load_feedback(path, sys):
    """Load a feedback matrix file: {"F": [[..]]}."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"{path}: cannot read: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}")
    if not isinstance(data, dict) or "F" not in data:
        raise ParseError(f"{path}: expected object with field 'F'")
    F = _as_matrix(data["F"], "F", path)
    if F.shape != (sys.m, sys.n):
        raise ParseError(
            f"{path}: F has shape {F.shape}, expected ({sys.m}, {sys.n})"
        )
    return F
