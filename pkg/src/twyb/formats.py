"""Text formats for structures, cochains and triple-point data.

Structure files::

    yb 3                # carrier size
    r1 1 2 0            # one row of R1 per x, entries indexed by y
    ...
    r2 2 0 1
    ...
    twist 1 2 0         # optional: the permutation f
    labels a b c        # optional: printable element names

Cochain files hold one or more blocks::

    cochain 2 5 2       # degree, N, u
    0 1 3               # tuple entries then the value; missing tuples are 0

Triple-point files::

    coloring A
    triple 0 1 2 1 -1   # x y z sign L

``#`` starts a comment everywhere; blank lines are ignored.
"""
from __future__ import annotations

import numpy as np

from .cochain import Cochain, CoefficientModule
from .statesum import TriplePoint, TriplePointData
from .yb import TwistedYBSet, Twist, YBOperator


class FormatError(ValueError):
    """Unreadable input; ``line`` and ``column`` are 1-based when known."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{where}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column


def _tokens(text):
    """Yield ``(line number, [(column, token), ...])`` for non-empty lines."""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        toks, col = [], 0
        for part in line.split():
            col = line.index(part, col)
            toks.append((col + 1, part))
            col += len(part)
        if toks:
            yield lineno, toks


def _int(tok, lineno):
    col, s = tok
    try:
        return int(s)
    except ValueError:
        raise FormatError(f"expected an integer, got {s!r}", lineno, col) from None


# --------------------------------------------------------------------------
# structures

class StructureFile:
    """Parsed structure: the operator, optional twist and element labels."""

    def __init__(self, op, twist=None, labels=None):
        self.op = op
        self.twist = twist
        self.labels = labels or [str(i) for i in range(op.size)]

    def twisted(self):
        """The TwistedYBSet (identity twist when none was given)."""
        return TwistedYBSet(self.op, self.twist or Twist.identity(self.op.size))


def read_structure(text):
    lines = list(_tokens(text))
    if not lines:
        raise FormatError("empty structure file")
    lineno, toks = lines[0]
    if toks[0][1] != "yb" or len(toks) != 2:
        raise FormatError("first line must be 'yb <size>'", lineno, toks[0][0])
    size = _int(toks[1], lineno)
    if size < 1:
        raise FormatError("size must be positive", lineno, toks[1][0])
    rows = {"r1": [], "r2": []}
    twist = labels = None
    for lineno, toks in lines[1:]:
        key = toks[0][1]
        rest = toks[1:]
        if key in rows:
            if len(rest) != size:
                raise FormatError(f"{key} row needs {size} entries, got {len(rest)}", lineno)
            row = []
            for tok in rest:
                v = _int(tok, lineno)
                if not 0 <= v < size:
                    raise FormatError(f"entry {v} outside 0..{size - 1}", lineno, tok[0])
                row.append(v)
            rows[key].append(row)
            if len(rows[key]) > size:
                raise FormatError(f"too many {key} rows", lineno)
        elif key == "twist":
            if twist is not None:
                raise FormatError("twist given twice", lineno)
            if len(rest) != size:
                raise FormatError(f"twist needs {size} entries", lineno)
            perm = []
            for tok in rest:
                v = _int(tok, lineno)
                if not 0 <= v < size:
                    raise FormatError(f"entry {v} outside 0..{size - 1}", lineno, tok[0])
                perm.append(v)
            if len(set(perm)) != size:
                raise FormatError("twist is not a permutation", lineno)
            twist = Twist(perm)
        elif key == "labels":
            if len(rest) != size:
                raise FormatError(f"labels needs {size} entries", lineno)
            labels = [s for _, s in rest]
        else:
            raise FormatError(f"unknown keyword {key!r}", lineno, toks[0][0])
    for key, got in rows.items():
        if len(got) != size:
            raise FormatError(f"expected {size} {key} rows, got {len(got)}")
    try:
        op = YBOperator(rows["r1"], rows["r2"])
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return StructureFile(op, twist, labels)


def write_structure(op, twist=None, labels=None):
    out = [f"yb {op.size}"]
    out += ["r1 " + " ".join(map(str, row)) for row in op.r1.tolist()]
    out += ["r2 " + " ".join(map(str, row)) for row in op.r2.tolist()]
    if twist is not None:
        out.append("twist " + " ".join(map(str, twist.perm.tolist())))
    if labels is not None:
        out.append("labels " + " ".join(labels))
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# cochains

def read_cochains(text, size):
    """All cochain blocks in ``text`` as ``(Cochain, CoefficientModule)`` pairs."""
    blocks = []
    cur = None
    for lineno, toks in _tokens(text):
        if toks[0][1] == "cochain":
            if len(toks) != 4:
                raise FormatError("header must be 'cochain <degree> <N> <u>'", lineno)
            deg, N, u = (_int(t, lineno) for t in toks[1:])
            if deg < 0 or N < 1:
                raise FormatError("degree must be >= 0 and N >= 1", lineno)
            try:
                module = CoefficientModule(N, u)
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
            cur = [deg, module, np.zeros(size ** deg, dtype=np.int64)]
            blocks.append(cur)
            continue
        if cur is None:
            raise FormatError("values before any 'cochain' header", lineno)
        deg, module, vals = cur
        if len(toks) != deg + 1:
            raise FormatError(f"expected {deg} tuple entries and a value", lineno)
        rank = 0
        for tok in toks[:-1]:
            v = _int(tok, lineno)
            if not 0 <= v < size:
                raise FormatError(f"tuple entry {v} outside 0..{size - 1}", lineno, tok[0])
            rank = rank * size + v
        vals[rank] = _int(toks[-1], lineno) % module.modulus
    if not blocks:
        raise FormatError("no 'cochain' header found")
    return [(Cochain(d, size, m.modulus, v), m) for d, m, v in blocks]


def read_cochain(text, size):
    blocks = read_cochains(text, size)
    if len(blocks) != 1:
        raise FormatError(f"expected one cochain, found {len(blocks)}")
    return blocks[0]


def write_cochain(c, module, dense=False):
    """One block; zero values are omitted unless ``dense``."""
    out = [f"cochain {c.degree} {module.modulus} {module.unit}"]
    for tup, v in c.items():
        if v or dense:
            out.append(" ".join(map(str, tup)) + f" {v}")
    return "\n".join(out) + "\n"


def write_cochains(cochains, module):
    return "".join(write_cochain(c, module) for c in cochains)


# --------------------------------------------------------------------------
# triple points

def read_triple_points(text):
    data = TriplePointData()
    cur = None
    for lineno, toks in _tokens(text):
        key = toks[0][1]
        if key == "coloring":
            if len(toks) != 2:
                raise FormatError("expected 'coloring <id>'", lineno)
            cur = toks[1][1]
            if cur in data.colorings:
                raise FormatError(f"coloring {cur!r} repeated", lineno, toks[1][0])
            data.add(cur)
        elif key == "triple":
            if cur is None:
                raise FormatError("triple before any coloring header", lineno)
            if len(toks) != 6:
                raise FormatError("expected 'triple x y z sign L'", lineno)
            x, y, z, sign, L = (_int(t, lineno) for t in toks[1:])
            if sign not in (1, -1):
                raise FormatError("sign must be 1 or -1", lineno, toks[4][0])
            data.add(cur, TriplePoint(x, y, z, sign, L))
        else:
            raise FormatError(f"unknown keyword {key!r}", lineno, toks[0][0])
    return data


def write_triple_points(data):
    out = []
    for cid, group in data.colorings.items():
        out.append(f"coloring {cid}")
        out += [f"triple {p.x} {p.y} {p.z} {p.sign} {p.L}" for p in group]
    return "\n".join(out) + "\n"
