"""Plain-text graph/array/design files, JSON and CSV output.

Edge list: ``n m`` then ``m`` lines ``u v`` (0-based).
Orthogonal array: ``n k`` then ``n**2`` lines of ``k`` symbols in ``1..n``.
Design: ``v k b`` then ``b`` lines of ``k`` points in ``1..v``.
"""
from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import ParseError
from .graphs import Graph, OrthogonalArray, SteinerDesign
from .spectral import SpectralDecomposition

PathLike = Union[str, Path]


def _int_rows(text: str, what: str) -> list[list[int]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.split()])
        except ValueError:
            raise ParseError(f"{what}: non-integer token on line {lineno}", lineno) from None
    if not rows:
        raise ParseError(f"{what}: empty input")
    return rows


def parse_edge_list(text: str) -> Graph:
    rows = _int_rows(text, "edge list")
    if len(rows[0]) != 2:
        raise ParseError("edge list header must be 'n m'", 1)
    n, m = rows[0]
    body = rows[1:]
    if len(body) != m:
        raise ParseError(f"edge list declares {m} edges but has {len(body)}")
    for i, r in enumerate(body, 2):
        if len(r) != 2:
            raise ParseError("edge lines must be 'u v'", i)
    return Graph.from_edges(n, (tuple(r) for r in body))


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def read_edge_list(path: PathLike) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: PathLike) -> None:
    Path(path).write_text(format_edge_list(g))


def parse_oa(text: str) -> OrthogonalArray:
    rows = _int_rows(text, "orthogonal array")
    if len(rows[0]) != 2:
        raise ParseError("orthogonal array header must be 'n k'", 1)
    n, k = rows[0]
    body = rows[1:]
    if len(body) != n * n or any(len(r) != k for r in body):
        raise ParseError(f"orthogonal array needs {n * n} rows of {k} symbols")
    return OrthogonalArray(n=n, k=k, rows=np.array(body, dtype=int))


def format_oa(oa: OrthogonalArray) -> str:
    lines = [f"{oa.n} {oa.k}"] + [" ".join(map(str, r)) for r in oa.rows.tolist()]
    return "\n".join(lines) + "\n"


def read_oa(path: PathLike) -> OrthogonalArray:
    return parse_oa(Path(path).read_text())


def parse_design(text: str) -> SteinerDesign:
    rows = _int_rows(text, "design")
    if len(rows[0]) != 3:
        raise ParseError("design header must be 'v k b'", 1)
    v, k, b = rows[0]
    body = rows[1:]
    if len(body) != b or any(len(r) != k for r in body):
        raise ParseError(f"design needs {b} blocks of {k} points")
    return SteinerDesign(v, k, tuple(tuple(r) for r in body))


def format_design(d: SteinerDesign) -> str:
    lines = [f"{d.v} {d.block_size} {len(d.blocks)}"] + [" ".join(map(str, b)) for b in d.blocks]
    return "\n".join(lines) + "\n"


def read_design(path: PathLike) -> SteinerDesign:
    return parse_design(Path(path).read_text())


# ---------------------------------------------------------------------------
# JSON / CSV


def _round(x: float, digits: Optional[int]) -> float:
    if digits is None or not math.isfinite(x) or x == 0:
        return x
    return float(f"{x:.{digits}g}")


def to_jsonable(obj, digits: Optional[int] = None):
    """Convert results (dataclasses, arrays, complex phases, fractions) into JSON types.

    Complex numbers become ``{"modulus", "argument"}`` with the argument in
    ``(-pi, pi]``. With ``digits`` set, floats are rounded to that many
    significant digits.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return _round(x, digits) if math.isfinite(x) else str(x)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        arg = math.atan2(z.imag, z.real)
        if arg == -math.pi:
            arg = math.pi
        return {"modulus": _round(abs(z), digits), "argument": _round(arg, digits)}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist(), digits)
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name), digits) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v, digits) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, digits: Optional[int] = None) -> str:
    return json.dumps(to_jsonable(obj, digits), indent=2, sort_keys=False) + "\n"


def decomposition_to_dict(d: SpectralDecomposition, include_idempotents: bool = False) -> dict:
    """Eigenvalues as full-precision decimal strings, multiplicities, optional idempotents."""
    out = {
        "eigenvalues": [repr(float(x)) for x in d.eigenvalues],
        "multiplicities": list(d.multiplicities),
    }
    if include_idempotents:
        out["idempotents"] = d.idempotents.tolist()
    return out


def decomposition_from_dict(data: dict) -> SpectralDecomposition:
    eig = np.array([float(x) for x in data["eigenvalues"]])
    idem = np.array(data["idempotents"], dtype=float)
    return SpectralDecomposition(eig, idem, tuple(int(m) for m in data["multiplicities"]))


def csv_text(header: Sequence[str], rows: Iterable[Sequence], digits: Optional[int] = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else (_round(float(v), digits) if isinstance(v, (float, np.floating)) else v)
                    for v in row])
    return buf.getvalue()


MIXING_SERIES_HEADER = ("t", "min_diag", "max_offdiag", "lower_margin", "upper_margin",
                        "identity_gap", "average_gap")
FAMILY_HEADER = ("family", "k", "n", "avgDiag", "diagLowerBound", "dMeasured", "verdict")
