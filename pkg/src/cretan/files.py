"""Line-based text format for matrices.

One file holds one matrix.  The first line is a magic-plus-version
marker, then `key value` header lines, then an `entries` marker and the
grid, one row per line.  Exact scalars use the scalar grammar, so exact
matrices round-trip bit-for-bit; complex entries are `re,im` pairs and
group-matrix entries are exponents with a star for the empty cell.
"""

from __future__ import annotations

import json

import numpy as np

from cretan.constructions import (
    STAR,
    ComplexLevelMatrix,
    GroupMatrix,
    LevelMatrix,
    from_values,
)
from cretan.scalar import format_scalar, parse_scalar

MATRIX_MAGIC = "cretan-matrix 1"
STAR_TOKEN = "⋆"


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


def serialize_matrix(m) -> str:
    if isinstance(m, LevelMatrix):
        return _serialize_level(m)
    if isinstance(m, ComplexLevelMatrix):
        return _serialize_complex(m)
    if isinstance(m, GroupMatrix):
        return _serialize_group(m)
    raise TypeError("cannot serialize %r" % type(m).__name__)


def _header(pairs) -> list:
    return [MATRIX_MAGIC] + ["%s %s" % (k, v) for k, v in pairs]


def _serialize_level(m: LevelMatrix) -> str:
    pairs = [("mode", m.mode), ("order", m.order), ("tau", m.tau),
             ("omega", format_scalar(m.omega)), ("method", m.method)]
    pairs += [("param %s" % k, v) for k, v in sorted(m.params.items(),
                                                     key=lambda kv: kv[0])]
    pairs += [("note", n) for n in m.notes]
    lines = _header(pairs) + ["entries"]
    for i in range(m.order):
        lines.append(" ".join(format_scalar(m.entry(i, j))
                              for j in range(m.order)))
    return "\n".join(lines) + "\n"


def _serialize_complex(m: ComplexLevelMatrix) -> str:
    pairs = [("mode", "complex"), ("order", m.order),
             ("omega", repr(float(m.omega))), ("method", m.method)]
    pairs += [("param %s" % k, v) for k, v in sorted(m.params.items(),
                                                     key=lambda kv: kv[0])]
    lines = _header(pairs) + ["entries"]
    for row in m.entries:
        lines.append(" ".join("%r,%r" % (float(z.real), float(z.imag))
                              for z in row))
    return "\n".join(lines) + "\n"


def _serialize_group(m: GroupMatrix) -> str:
    pairs = [("mode", "group"), ("order", m.order), ("kind", m.kind),
             ("group-order", m.group_order), ("weight", m.weight)]
    lines = _header(pairs) + ["entries"]
    for row in m.entries:
        lines.append(" ".join(STAR_TOKEN if x == STAR else str(int(x))
                              for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str):
    """Inverse of serialize_matrix.  Raises ParseError with the offending
    line number; the magic line is checked first."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", 1)
    if lines[0] != MATRIX_MAGIC:
        raise ParseError("unsupported format marker %r" % lines[0][:40], 1)
    header: dict = {}
    params: dict = {}
    notes: list = []
    body_at = None
    for idx, ln in enumerate(lines[1:], start=2):
        if ln == "entries":
            body_at = idx
            break
        key, _, rest = ln.partition(" ")
        if key == "param":
            pk, _, pv = rest.partition(" ")
            params[pk] = pv
        elif key == "note":
            notes.append(rest)
        elif key:
            header[key] = rest
        else:
            raise ParseError("blank header line", idx)
    if body_at is None:
        raise ParseError("missing entries marker", len(lines))
    mode = header.get("mode")
    if mode not in ("exact", "float", "complex", "group"):
        raise ParseError("unknown mode %r" % mode, 2)
    try:
        order = int(header["order"])
    except (KeyError, ValueError):
        raise ParseError("missing or bad order header", 2)
    rows = lines[body_at:]
    if len(rows) != order:
        raise ParseError("expected %d entry rows, found %d"
                         % (order, len(rows)), body_at + 1)
    if mode in ("exact", "float"):
        return _parse_level(header, params, notes, rows, body_at, order)
    if mode == "complex":
        return _parse_complex(header, params, rows, body_at, order)
    return _parse_group(header, rows, body_at, order)


def _tokens(row: str, order: int, line: int) -> list:
    toks = row.split()
    if len(toks) != order:
        raise ParseError("expected %d entries, found %d"
                         % (order, len(toks)), line)
    return toks


def _parse_level(header, params, notes, rows, body_at, order):
    try:
        omega = parse_scalar(header["omega"])
    except (KeyError, ValueError):
        raise ParseError("missing or bad omega header", 2)
    values = []
    for i, row in enumerate(rows):
        line = body_at + 1 + i
        toks = _tokens(row, order, line)
        try:
            values.append([parse_scalar(t) for t in toks])
        except ValueError as exc:
            raise ParseError(str(exc), line)
    return from_values(values, omega, header.get("method", ""),
                       params, tuple(notes))


def _parse_complex(header, params, rows, body_at, order):
    entries = np.zeros((order, order), dtype=np.complex128)
    for i, row in enumerate(rows):
        line = body_at + 1 + i
        toks = _tokens(row, order, line)
        for j, t in enumerate(toks):
            re, sep, im = t.partition(",")
            if not sep:
                raise ParseError("expected re,im pair, got %r" % t, line)
            try:
                entries[i, j] = complex(float(re), float(im))
            except ValueError:
                raise ParseError("bad complex entry %r" % t, line)
    try:
        omega = float(header["omega"])
    except (KeyError, ValueError):
        raise ParseError("missing or bad omega header", 2)
    return ComplexLevelMatrix(order, entries, omega,
                              header.get("method", ""), params)


def _parse_group(header, rows, body_at, order):
    try:
        g = int(header["group-order"])
        weight = int(header.get("weight", "0"))
    except ValueError:
        raise ParseError("bad group header", 2)
    kind = header.get("kind", "GH")
    if kind not in ("GH", "GW"):
        raise ParseError("kind must be GH or GW", 2)
    entries = np.zeros((order, order), dtype=np.int16)
    for i, row in enumerate(rows):
        line = body_at + 1 + i
        toks = _tokens(row, order, line)
        for j, t in enumerate(toks):
            if t == STAR_TOKEN or t == "*":
                entries[i, j] = STAR
                continue
            try:
                val = int(t)
            except ValueError:
                raise ParseError("bad group entry %r" % t, line)
            if not 0 <= val < g:
                raise ParseError("entry %d outside group of order %d"
                                 % (val, g), line)
            entries[i, j] = val
    return GroupMatrix(order, g, entries, kind, weight)


def save_matrix(m, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_matrix(m))


def load_matrix(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def serialize_certificate(cert) -> str:
    """Verification certificate as a stable structured report."""
    doc = {
        "order": cert.order,
        "radius": format_scalar(cert.omega),
        "radius_float": cert.omega.to_float(),
        "tau": cert.tau,
        "mode": cert.mode,
        "gram_exact": cert.gram_exact,
        "max_offdiag": cert.max_offdiag,
        "moduli_ok": cert.moduli_ok,
        "omega_claim_ok": cert.omega_claim_ok,
        "strict": cert.strict,
        "relaxed": cert.relaxed,
        "det": {
            "residual": cert.det.residual,
            "exact": cert.det.exact_zero,
            "log_abs_det": cert.det.log_abs_det,
        },
        "bounds": {
            "hadamard_log": cert.bounds.hadamard_log,
            "barba_log": cert.bounds.barba_log,
            "wojtas_log": cert.bounds.wojtas_log,
            "brent_osborn_log": cert.bounds.brent_osborn_log,
        },
        "method": cert.method,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
