"""CSV input/output for curve sets, envelopes and study results.

All floats are written with ``repr``, which round-trips exactly through
``float()``. Files are written to a temporary sibling first and renamed
into place, so readers never observe a half-written file.
"""

from __future__ import annotations

import csv
import io
import os
import tempfile

import numpy as np

from .curves import CurveSet
from .envelope import GlobalEnvelope
from .errors import InvalidInputError

STUDY_COLUMNS = (
    "measure",
    "s",
    "d",
    "scale",
    "outlier",
    "alpha",
    "reps",
    "detections",
    "power",
    "ci_lo",
    "ci_hi",
    "master_seed",
)


def _atomic_write(path, text: str) -> None:
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".rankenv-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _fmt(value: float) -> str:
    return repr(float(value))


def write_curves(path, curves: CurveSet) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["x"] + [_fmt(x) for x in curves.grid])
    for i, row in enumerate(curves.values, start=1):
        writer.writerow([f"curve_{i}"] + [_fmt(v) for v in row])
    _atomic_write(path, buf.getvalue())


def read_curves(path) -> CurveSet:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if not rows or rows[0][:1] != ["x"]:
        raise InvalidInputError(f"{path}: expected a header row starting with 'x'")
    try:
        grid = np.array([float(v) for v in rows[0][1:]])
        values = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    except ValueError as exc:
        raise InvalidInputError(f"{path}: {exc}") from None
    if values.ndim != 2:
        raise InvalidInputError(f"{path}: rows have differing lengths")
    return CurveSet(values, grid)


def write_envelope(path, envelope: GlobalEnvelope, grid, central) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["x", "lower", "upper", "central"])
    for x, lo, hi, c in zip(grid, envelope.lower, envelope.upper, central):
        writer.writerow([_fmt(x), _fmt(lo), _fmt(hi), _fmt(c)])
    _atomic_write(path, buf.getvalue())


def read_envelope(path):
    """Parsed (grid, lower, upper, central) arrays."""
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r]
    if not rows or rows[0] != list(("x", "lower", "upper", "central")):
        raise InvalidInputError(f"{path}: not an envelope file")
    try:
        data = np.array([[float(v) for v in r] for r in rows[1:]])
    except ValueError as exc:
        raise InvalidInputError(f"{path}: {exc}") from None
    return data[:, 0], data[:, 1], data[:, 2], data[:, 3]


def write_study(path, rows, alpha: float, master_seed: int) -> None:
    """One CSV row per power estimate, tagged with alpha and the master seed."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(STUDY_COLUMNS)
    for r in rows:
        writer.writerow(
            [
                r.measure,
                str(r.s),
                str(r.d),
                _fmt(r.scale),
                r.outlier,
                _fmt(alpha),
                str(r.reps),
                str(r.detections),
                _fmt(r.power),
                _fmt(r.ci_lo),
                _fmt(r.ci_hi),
                str(master_seed),
            ]
        )
    _atomic_write(path, buf.getvalue())


def read_study(path) -> list[dict]:
    """Study rows as dicts with the numeric columns parsed."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or tuple(reader.fieldnames) != STUDY_COLUMNS:
            raise InvalidInputError(
                f"{path}: expected columns {','.join(STUDY_COLUMNS)}"
            )
        out = []
        try:
            for rec in reader:
                out.append(
                    {
                        "measure": rec["measure"],
                        "s": int(rec["s"]),
                        "d": int(rec["d"]),
                        "scale": float(rec["scale"]),
                        "outlier": rec["outlier"],
                        "alpha": float(rec["alpha"]),
                        "reps": int(rec["reps"]),
                        "detections": int(rec["detections"]),
                        "power": float(rec["power"]),
                        "ci_lo": float(rec["ci_lo"]),
                        "ci_hi": float(rec["ci_hi"]),
                        "master_seed": int(rec["master_seed"]),
                    }
                )
        except (TypeError, ValueError) as exc:
            raise InvalidInputError(f"{path}: {exc}") from None
    return out
