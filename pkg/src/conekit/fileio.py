"""Disk-file interchange: one ``.in`` file per problem, suffix files per
result component.

Input grammar, repeated once per matrix and whitespace separated::

    <nrows> <ncols> <entries row-major> <type>

where ``<type>`` is one of the integer codes or its keyword alias
(``integral_closure``, ``normalization``, ``polytope``, ``rees_algebra``,
``inequalities``, ``equations``, ``congruences``, ``lattice_ideal``).
``#`` starts a comment running to the end of the line.

Results are written as ``basename.gen`` / ``.sup`` / ``.typ`` / ``.equ``
/ ``.cgr`` (matrix files headed by ``<nrows> <ncols>``), ``basename.inv``
(one named record per line) and a free-form ``basename.out`` summary.
Serialization is byte-deterministic: the same value always produces the
same file contents.
"""

import os
import tempfile
from fractions import Fraction
from math import lcm
from typing import Optional

from dataclasses import dataclass

from .errors import IncompleteResultError, ParseError
from .problems import (
    CONGRUENCES,
    ComputationOptions,
    InputSystem,
    RationalCone,
    compute_cone,
    input_system,
)

TYPE_KEYWORDS = {
    "integral_closure": 0,
    "normalization": 1,
    "polytope": 2,
    "rees_algebra": 3,
    "inequalities": 4,
    "equations": 5,
    "congruences": 6,
    "lattice_ideal": 10,
}

MATRIX_SUFFIXES = ("gen", "sup", "typ", "equ", "cgr")

# disk name per invariant, in serialization order
_INV_TABLE = (
    ("hilbert basis elements", "hilbert_basis_elements"),
    ("height 1 elements", "height_1_elements"),
    ("number extreme rays", "number_extreme_rays"),
    ("number support hyperplanes", "number_support_hyperplanes"),
    ("rank", "rank"),
    ("index", "index"),
    ("homogeneous", "homogeneous"),
    ("homogeneous weights", "homogeneous_weights"),
    ("multiplicity", "multiplicity"),
    ("h-vector", "h_vector"),
    ("hilbert polynomial", "hilbert_polynomial"),
)
_DISK_NAMES = dict(_INV_TABLE)
_SPACED_NAMES = {disk: spaced for spaced, disk in _INV_TABLE}


@dataclass(frozen=True)
class ProjectFiles:
    """Path bookkeeping for one problem: ``basename.in`` and outputs."""

    basename: str

    @property
    def input(self) -> str:
        return self.basename + ".in"

    def output(self, suffix: str) -> str:
        return self.basename + "." + suffix


class _Tokens:
    """Whitespace tokens with line numbers; ``#`` comments stripped."""

    def __init__(self, text: str, source: str):
        self.source = source
        self.items = []
        for lineno, line in enumerate(text.splitlines(), 1):
            for tok in line.split("#", 1)[0].split():
                self.items.append((tok, lineno))
        self.pos = 0
        self.last_line = 1

    def __bool__(self):
        return self.pos < len(self.items)

    def take(self, what: str) -> str:
        if self.pos >= len(self.items):
            raise ParseError(self.source, self.last_line, "unexpected end of file, expected %s" % what)
        tok, line = self.items[self.pos]
        self.pos += 1
        self.last_line = line
        return tok

    def take_int(self, what: str) -> int:
        tok = self.take(what)
        try:
            return int(tok)
        except ValueError:
            raise ParseError(self.source, self.last_line, "expected %s, got %r" % (what, tok))


def write_input_file(system: InputSystem, path: str):
    chunks = []
    for item in system.items:
        width = system.ambient_dim + (1 if item.input_type == CONGRUENCES else 0)
        chunks.append("%d\n%d\n" % (len(item.matrix), width))
        for row in item.matrix:
            chunks.append(" ".join(str(x) for x in row) + "\n")
        chunks.append("%d\n" % item.input_type)
    with open(path, "w") as fh:
        fh.write("".join(chunks))


def read_input_file(path: str) -> InputSystem:
    with open(path) as fh:
        toks = _Tokens(fh.read(), os.path.basename(path))
    pairs = []
    dim = None
    while toks:
        nrows = toks.take_int("row count")
        ncols = toks.take_int("column count")
        if nrows < 0 or ncols < 1:
            raise ParseError(toks.source, toks.last_line, "bad matrix shape %dx%d" % (nrows, ncols))
        rows = tuple(
            tuple(toks.take_int("matrix entry") for _ in range(ncols)) for _ in range(nrows)
        )
        tok = toks.take("input type")
        if tok in TYPE_KEYWORDS:
            kind = TYPE_KEYWORDS[tok]
        else:
            try:
                kind = int(tok)
            except ValueError:
                raise ParseError(toks.source, toks.last_line, "unknown input type %r" % tok)
            if kind not in TYPE_KEYWORDS.values():
                raise ParseError(toks.source, toks.last_line, "unknown input type %r" % tok)
        pairs.append((rows, kind))
        this_dim = ncols - 1 if kind == CONGRUENCES else ncols
        if dim is None:
            dim = this_dim
        elif dim != this_dim:
            raise ParseError(
                toks.source,
                toks.last_line,
                "matrix implies ambient dimension %d, expected %d" % (this_dim, dim),
            )
    if dim is None:
        raise ParseError(toks.source, 1, "file contains no matrices")
    return input_system(pairs, dim)


def _write_matrix(path: str, rows, ncols: int):
    chunks = ["%d %d\n" % (len(rows), ncols)]
    for row in rows:
        chunks.append(" ".join(str(x) for x in row) + "\n")
    with open(path, "w") as fh:
        fh.write("".join(chunks))


def _read_matrix(path: str):
    with open(path) as fh:
        toks = _Tokens(fh.read(), os.path.basename(path))
    nrows = toks.take_int("row count")
    ncols = toks.take_int("column count")
    rows = tuple(
        tuple(toks.take_int("matrix entry") for _ in range(ncols)) for _ in range(nrows)
    )
    if toks:
        raise ParseError(toks.source, toks.items[toks.pos][1], "trailing data after matrix")
    return rows, ncols


def _inv_lines(inv: dict) -> list:
    lines = []
    for spaced, disk in _INV_TABLE:
        if spaced not in inv:
            continue
        value = inv[spaced]
        if isinstance(value, bool):
            lines.append("boolean %s = %s" % (disk, "true" if value else "false"))
        elif isinstance(value, int):
            lines.append("integer %s = %d" % (disk, value))
        elif spaced == "hilbert polynomial":
            coeffs = [Fraction(c) for c in value]
            den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
            scaled = [int(c * den) for c in coeffs]
            lines.append(
                "vector %d %s = %s" % (len(scaled), disk, " ".join(str(x) for x in scaled))
            )
            if den > 1:
                lines.append("integer hilbert_polynomial_denominator = %d" % den)
        else:
            lines.append(
                "vector %d %s = %s" % (len(value), disk, " ".join(str(x) for x in value))
            )
    return lines


def write_result_files(rc: RationalCone, basename: str):
    """Write ``.gen`` and ``.inv`` always, the other matrices when present."""
    files = ProjectFiles(basename)
    _write_matrix(files.output("gen"), rc.gen, rc.ambient_dim)
    for suffix in ("sup", "equ"):
        mat = getattr(rc, suffix)
        if mat is not None:
            _write_matrix(files.output(suffix), mat, rc.ambient_dim)
    if rc.typ is not None:
        _write_matrix(files.output("typ"), rc.typ, len(rc.sup))
    if rc.cgr is not None:
        _write_matrix(files.output("cgr"), rc.cgr, rc.ambient_dim + 1)
    lines = _inv_lines(rc.inv) + list(rc.extra_records)
    with open(files.output("inv"), "w") as fh:
        fh.write("".join(line + "\n" for line in lines))
    with open(files.output("out"), "w") as fh:
        fh.write(_summary(rc))


def _summary(rc: RationalCone) -> str:
    lines = ["%d Hilbert basis elements:" % len(rc.gen)]
    lines += [" ".join(str(x) for x in row) for row in rc.gen]
    lines.append("")
    lines += _inv_lines(rc.inv)
    lines += list(rc.extra_records)
    return "".join(line + "\n" for line in lines)


def _parse_inv_line(raw: str, source: str, lineno: int, inv: dict, extras: list):
    parts = raw.split()
    if not parts:
        return
    kind = parts[0]
    if kind not in ("integer", "boolean", "vector"):
        extras.append(raw)
        return
    try:
        if kind == "vector":
            count = int(parts[1])
            disk, eq, entries = parts[2], parts[3], parts[4:]
            value = tuple(int(x) for x in entries)
            if eq != "=" or len(value) != count:
                raise ValueError
        else:
            disk, eq, tail = parts[1], parts[2], parts[3:]
            if eq != "=" or len(tail) != 1:
                raise ValueError
            if kind == "boolean":
                if tail[0] not in ("true", "false"):
                    raise ValueError
                value = tail[0] == "true"
            else:
                value = int(tail[0])
    except (ValueError, IndexError):
        raise ParseError(source, lineno, "malformed %s record: %r" % (kind, raw))
    if disk in _SPACED_NAMES or disk == "hilbert_polynomial_denominator":
        inv[_SPACED_NAMES.get(disk, disk)] = value
    else:
        extras.append(raw)


def read_rational_cone(basename: str) -> RationalCone:
    """Reassemble a result record from its files.

    The ``.gen`` and ``.inv`` files are mandatory; unknown ``.inv``
    record kinds are carried along verbatim.
    """
    files = ProjectFiles(basename)
    if not os.path.exists(files.output("gen")) or not os.path.exists(files.output("inv")):
        raise IncompleteResultError("missing %s.gen or %s.inv" % (basename, basename))
    gen, dim = _read_matrix(files.output("gen"))
    mats = {}
    for suffix in ("sup", "typ", "equ", "cgr"):
        path = files.output(suffix)
        mats[suffix] = _read_matrix(path)[0] if os.path.exists(path) else None
    inv = {}
    extras = []
    source = os.path.basename(files.output("inv"))
    with open(files.output("inv")) as fh:
        for lineno, raw in enumerate(fh.read().splitlines(), 1):
            _parse_inv_line(raw, source, lineno, inv, extras)
    if "hilbert polynomial" in inv:
        den = inv.pop("hilbert_polynomial_denominator", 1)
        inv["hilbert polynomial"] = tuple(Fraction(n, den) for n in inv["hilbert polynomial"])
    return RationalCone(
        ambient_dim=dim,
        gen=gen,
        inv=inv,
        sup=mats["sup"],
        typ=mats["typ"],
        equ=mats["equ"],
        cgr=mats["cgr"],
        extra_records=tuple(extras),
    )


def compute_via_files(
    system: InputSystem,
    opts: Optional[ComputationOptions] = None,
    basename: Optional[str] = None,
) -> RationalCone:
    """Run a computation through the full disk protocol.

    With no ``basename`` the files live in a temporary directory and are
    removed afterwards; naming one persists them.
    """
    if basename is None:
        with tempfile.TemporaryDirectory() as tmp:
            return compute_via_files(system, opts, os.path.join(tmp, "problem"))
    write_input_file(system, basename + ".in")
    parsed = read_input_file(basename + ".in")
    rc = compute_cone(parsed, opts)
    write_result_files(rc, basename)
    return read_rational_cone(basename)
