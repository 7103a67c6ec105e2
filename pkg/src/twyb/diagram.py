"""Oriented knot and link diagrams given by PD codes.

Each crossing is a 4-tuple of semiarc labels listed counterclockwise starting
from the incoming under-strand, so positions 0 and 2 carry the under-strand
(in, out) and positions 1, 3 the over-strand.  The crossing is positive when
the over-strand runs from position 3 to position 1.

Picture a crossing with position 0 at the bottom (south), 1 east, 2 north and
3 west.  The corner ``j`` is the quadrant between positions ``j`` and
``j + 1``; faces of the diagram are orbits of corners.

Coloring rules (strands drawn pointing downward):

* positive: ``(C(b), C(c)) = R(C(a), C(d))``: the incoming pair
  (under, over) maps to the outgoing pair (over, under);
* negative: ``(C(c), C(d)) = Rbar(C(b), C(a))``: the incoming pair
  (over, under) maps under ``Rbar`` to the outgoing pair (under, over).
"""
from __future__ import annotations

import ast
import re
from collections import deque
from dataclasses import dataclass, field

import numpy as np

# angle (degrees) of each PD position around the crossing
_POS_ANGLE = (270, 0, 90, 180)


class PDError(ValueError):
    """Malformed PD code; ``position`` locates the problem when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)
        self.position = position


@dataclass
class PDDiagram:
    """A validated PD code with derived orientation, signs and faces.

    Attributes
    ----------
    crossings : list of 4-tuples of semiarc labels
    signs : list of +1/-1
    labels : sorted semiarc labels
    faces : list of faces, each a list of corners ``(crossing, j)``
    outer : index of the unbounded face
    normal : ``"left"`` or ``"right"``
    free_loops : number of crossingless circle components
    """
    crossings: list
    signs: list
    labels: list
    faces: list
    outer: int
    normal: str = "left"
    free_loops: int = 0
    components: list = field(default_factory=list)

    @property
    def n_crossings(self):
        return len(self.crossings)

    def writhe(self):
        return sum(self.signs)

    def corner_face(self):
        out = {}
        for f, corners in enumerate(self.faces):
            for c in corners:
                out[c] = f
        return out

    def tail(self, label):
        """``(crossing, position)`` where the semiarc starts."""
        return self._ends[label][0]

    def head(self, label):
        return self._ends[label][1]

    def side_faces(self, label):
        """``(left face, right face)`` of a semiarc relative to its orientation."""
        k, j = self.tail(label)
        cf = self.corner_face()
        return cf[(k, j)], cf[(k, (j - 1) % 4)]

    def to_text(self):
        body = "[" + ",".join("[" + ",".join(map(str, c)) + "]" for c in self.crossings) + "]"
        lines = [body]
        if self.normal == "right":
            lines.append("normal right")
        return "\n".join(lines)


# --------------------------------------------------------------------------
# parsing

_DIRECTIVE = re.compile(r"^\s*(mirror|normal\s+(left|right)|outer\s+(-?\d+)\s+(left|right))\s*$")


def parse_pd(text, normal=None, outer=None):
    """Parse PD text with optional directives.

    The first non-comment line holds the code ``[[a,b,c,d],...]``; further
    lines may hold ``mirror`` (planar reflection), ``normal left|right`` and
    ``outer <label> left|right`` (the unbounded face is the face on that side
    of the semiarc).  Keyword arguments override directives.
    """
    code_lines, directives = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _DIRECTIVE.match(line)
        if m:
            directives.append((lineno, m))
        else:
            code_lines.append((lineno, line))
    if not code_lines:
        raise PDError("no PD code found")
    src = " ".join(s for _, s in code_lines)
    try:
        data = ast.literal_eval(src)
    except (ValueError, SyntaxError) as exc:
        raise PDError(f"cannot read PD code: {exc}", f"line {code_lines[0][0]}") from None
    if not isinstance(data, (list, tuple)):
        raise PDError("PD code must be a list of 4-tuples", f"line {code_lines[0][0]}")
    crossings = []
    for k, c in enumerate(data):
        if not isinstance(c, (list, tuple)) or len(c) != 4 \
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in c):
            raise PDError("each crossing must be 4 integer labels", f"crossing {k}")
        if any(v < 1 for v in c):
            raise PDError("semiarc labels must be positive", f"crossing {k}")
        crossings.append(tuple(c))
    mirror = False
    for lineno, m in directives:
        word = m.group(1).split()[0]
        if word == "mirror":
            mirror = not mirror
        elif word == "normal":
            normal = normal or m.group(2)
        else:
            outer = outer or (int(m.group(3)), m.group(4))
    if mirror:
        crossings = [(a, d, c, b) for a, b, c, d in crossings]
        # reflection swaps the two sides of every semiarc
        if outer is not None:
            outer = (outer[0], "right" if outer[1] == "left" else "left")
    return build_diagram(crossings, normal=normal or "left", outer=outer)


def build_diagram(crossings, normal="left", outer=None):
    """Validate crossings and derive orientation, signs and faces.

    ``outer`` is ``None`` or ``(label, "left"|"right")``.  By default the
    unbounded face is the one with the most corners, ties broken by the
    smallest sorted list of bounding semiarc labels (a choice that survives
    planar reflection).
    """
    if normal not in ("left", "right"):
        raise PDError(f"unknown normal convention {normal!r}")
    crossings = [tuple(int(v) for v in c) for c in crossings]
    if not crossings:
        faces = [[("loop", 0)], [("loop", 1)]]
        d = PDDiagram([], [], [], faces, 0, normal, free_loops=1)
        d._ends = {}
        return d
    where = {}
    for k, c in enumerate(crossings):
        for j, v in enumerate(c):
            where.setdefault(v, []).append((k, j))
    for v, occ in where.items():
        if len(occ) != 2:
            raise PDError(f"semiarc {v} appears {len(occ)} times, expected 2", occ[0])
    labels = sorted(where)
    other = {}
    for v, (p, q) in where.items():
        other[p], other[q] = q, p
    # orientation: True at (k, j) when the strand leaves crossing k there
    out = {}
    queue = deque()

    def setdir(dart, leaving):
        if dart in out:
            if out[dart] != leaving:
                raise PDError("inconsistent orientation", dart)
            return
        out[dart] = leaving
        queue.append(dart)

    for k in range(len(crossings)):
        setdir((k, 0), False)
        setdir((k, 2), True)
    _propagate(queue, out, other, setdir)
    for k, c in enumerate(crossings):
        if (k, 1) in out:
            continue
        b, d = c[1], c[3]
        # consecutive numbering along a component decides the over direction
        over_d_to_b = b == d + 1 or (d > b + 1)
        setdir((k, 1), over_d_to_b)
        setdir((k, 3), not over_d_to_b)
        _propagate(queue, out, other, setdir)
    for (k, j), leaving in out.items():
        if leaving == out[other[(k, j)]]:
            raise PDError(f"semiarc {crossings[k][j]} has inconsistent ends", (k, j))
        if j in (1, 3) and out[(k, 1)] == out[(k, 3)]:
            raise PDError("over-strand must enter and leave", (k, j))
    signs = [1 if out[(k, 1)] else -1 for k in range(len(crossings))]
    ends = {}
    for v, (p, q) in where.items():
        ends[v] = (p, q) if out[p] else (q, p)
    faces = _trace_faces(crossings, other)
    nv, ne, nf = len(crossings), 2 * len(crossings), len(faces)
    if nv - ne + nf != 2:
        raise PDError(f"Euler characteristic V - E + F = {nv - ne + nf}, expected 2 "
                      "(non-planar or split diagram)")
    d = PDDiagram(crossings, signs, labels, faces, 0, normal)
    d._ends = ends
    d.components = _components(d, other)
    d.outer = _choose_outer(d, outer)
    return d


def _propagate(queue, out, other, setdir):
    while queue:
        k, j = queue.popleft()
        leaving = out[(k, j)]
        setdir(other[(k, j)], not leaving)
        if j in (1, 3):
            setdir((k, 4 - j), not leaving)


def _trace_faces(crossings, other):
    seen = set()
    faces = []
    for k in range(len(crossings)):
        for j in range(4):
            if (k, j) in seen:
                continue
            face = []
            cur = (k, j)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                ck, cj = cur
                cur = other[(ck, (cj + 1) % 4)]
            faces.append(face)
    return faces


def _components(d, other):
    """Semiarc labels grouped by link component, in orientation order."""
    comps, seen = [], set()
    for start in d.labels:
        if start in seen:
            continue
        comp, v = [], start
        while v not in seen:
            seen.add(v)
            comp.append(v)
            k, j = d.head(v)
            v = d.crossings[k][(j + 2) % 4]
        comps.append(comp)
    return comps


def _choose_outer(d, outer):
    if outer is None:
        def key(f):
            face = d.faces[f]
            bounding = sorted(d.crossings[k][(j + 1) % 4] for k, j in face)
            return -len(face), bounding
        return min(range(len(d.faces)), key=key)
    label, side = outer
    if label not in d._ends:
        raise PDError(f"outer directive names unknown semiarc {label}")
    left, right = d.side_faces(label)
    return left if side == "left" else right


# --------------------------------------------------------------------------
# crossing geometry

def _over_leaves_at_1(sign):
    return sign > 0


def crossing_geometry(sign, normal="left"):
    """``(u_pos, o_pos, source_corner)`` for one crossing.

    ``u_pos`` is the under-strand position away from which the over-strand
    normal points, ``o_pos`` the over-strand position towards which the
    under-strand normal points, and ``source_corner`` the corner both
    normals point away from.
    """
    turn = 90 if normal == "left" else -90
    under_dir = 90
    over_dir = 0 if _over_leaves_at_1(sign) else 180
    n_under = (under_dir + turn) % 360
    n_over = (over_dir + turn) % 360
    u_pos = _POS_ANGLE.index((n_over + 180) % 360)
    o_pos = _POS_ANGLE.index(n_under)
    other_over = 4 - o_pos
    corner = next(j for j in range(4) if {j, (j + 1) % 4} == {u_pos, other_over})
    return u_pos, o_pos, corner


# --------------------------------------------------------------------------
# Alexander numbering

@dataclass
class RegionMap:
    faces: list
    unbounded: int
    numbering: list
    crossing_numbering: list
    source_region: list

    def corner_numbers(self, diagram, k):
        cf = diagram.corner_face()
        return [self.numbering[cf[(k, j)]] for j in range(4)]


class NumberingError(RuntimeError):
    pass


def alexander_numbering(d, order=None):
    """Alexander numbering by breadth-first search over the dual graph.

    Crossing a semiarc from its right to its left adds +1 with left normals
    (-1 with right normals).  ``order`` optionally permutes the adjacency
    scan, to check that the result does not depend on the search order.
    """
    step = 1 if d.normal == "left" else -1
    if d.free_loops and not d.crossings:
        # a single counterclockwise circle: interior lies to the left
        numbering = [0, step]
        return RegionMap(d.faces, 0, numbering, [], [])
    edges = []
    for v in d.labels:
        left, right = d.side_faces(v)
        edges.append((left, right, v))
    adj = {f: [] for f in range(len(d.faces))}
    for left, right, v in edges:
        adj[right].append((left, step))
        adj[left].append((right, -step))
    if order is not None:
        rng = np.random.default_rng(order)
        for f in adj:
            perm = rng.permutation(len(adj[f]))
            adj[f] = [adj[f][i] for i in perm]
    numbering = [None] * len(d.faces)
    numbering[d.outer] = 0
    queue = deque([d.outer])
    while queue:
        f = queue.popleft()
        for g, delta in adj[f]:
            if numbering[g] is None:
                numbering[g] = numbering[f] + delta
                queue.append(g)
    for left, right, v in edges:
        if numbering[left] - numbering[right] != step:
            raise NumberingError(f"numbering inconsistent across semiarc {v}")
    cf = d.corner_face()
    source = []
    for k, sign in enumerate(d.signs):
        _, _, corner = crossing_geometry(sign, d.normal)
        source.append(cf[(k, corner)])
    return RegionMap(d.faces, d.outer, numbering, [numbering[f] for f in source], source)


def mod_p_numbering(region_map, p):
    return [v % p for v in region_map.crossing_numbering]


# --------------------------------------------------------------------------
# colorings

def _crossing_relation(sign, crossing):
    """``(inputs, outputs, inverse)`` label pairs for the crossing relation.

    For a positive crossing ``R(inputs) = outputs``; for a negative one
    ``Rbar(inputs) = outputs``.
    """
    a, b, c, d = crossing
    if sign > 0:
        return (a, d), (b, c), False
    return (b, a), (c, d), True


def _relations(d, op):
    rel = []
    for k, sign in enumerate(d.signs):
        ins, outs, inv = _crossing_relation(sign, d.crossings[k])
        if inv:
            fwd = (op.r1inv, op.r2inv)
            bwd = (op.r1, op.r2)
        else:
            fwd = (op.r1, op.r2)
            bwd = (op.r1inv, op.r2inv)
        rel.append((ins, outs, fwd, bwd))
    return rel


def is_coloring(d, op, coloring):
    for ins, outs, fwd, _ in _relations(d, op):
        x, y = coloring[ins[0]], coloring[ins[1]]
        if (fwd[0][x, y], fwd[1][x, y]) != (coloring[outs[0]], coloring[outs[1]]):
            return False
    return True


def enumerate_colorings(d, tw):
    """All colorings as dicts ``label -> element``, in lexicographic order.

    Backtracking over semiarcs in label order with propagation: whenever
    both inputs (or both outputs) of a crossing are known the other pair is
    forced.  A crossingless loop contributes one free label ``0``.
    """
    op = tw.op if hasattr(tw, "op") else tw
    size = op.size
    if not d.crossings:
        return [{0: x} for x in range(size)] if d.free_loops else [{}]
    rel = _relations(d, op)
    by_label = {v: [] for v in d.labels}
    for idx, (ins, outs, _, _) in enumerate(rel):
        for v in ins + outs:
            by_label[v].append(idx)
    result = []

    def propagate(col, changed):
        stack = list(changed)
        while stack:
            v = stack.pop()
            for idx in by_label[v]:
                ins, outs, fwd, bwd = rel[idx]
                for src, dst, tab in ((ins, outs, fwd), (outs, ins, bwd)):
                    if src[0] in col and src[1] in col:
                        x, y = col[src[0]], col[src[1]]
                        vals = (int(tab[0][x, y]), int(tab[1][x, y]))
                        for lab, val in zip(dst, vals):
                            if lab in col:
                                if col[lab] != val:
                                    return False
                            else:
                                col[lab] = val
                                stack.append(lab)
        return True

    def search(col):
        free = next((v for v in d.labels if v not in col), None)
        if free is None:
            if is_coloring(d, op, col):
                result.append(dict(sorted(col.items())))
            return
        for x in range(size):
            trial = dict(col)
            trial[free] = x
            if propagate(trial, [free]):
                search(trial)

    search({})
    result.sort(key=lambda c: tuple(c.values()))
    return result


def brute_force_colorings(d, tw):
    """All colorings by exhausting every label assignment (for testing)."""
    op = tw.op if hasattr(tw, "op") else tw
    if not d.crossings:
        return [{0: x} for x in range(op.size)] if d.free_loops else [{}]
    # every assignment as a row, checked against all crossings at once
    n = len(d.labels)
    grid = np.indices((op.size,) * n).reshape(n, -1)
    col = dict(zip(d.labels, grid))
    ok = np.ones(grid.shape[1], dtype=bool)
    for ins, outs, fwd, _ in _relations(d, op):
        x, y = col[ins[0]], col[ins[1]]
        ok &= (fwd[0][x, y] == col[outs[0]]) & (fwd[1][x, y] == col[outs[1]])
    return [dict(zip(d.labels, map(int, grid[:, i]))) for i in np.flatnonzero(ok)]


def boltzmann_inputs(d, coloring, k):
    """``(C(u), C(o))`` at crossing ``k``: the weight arguments."""
    u_pos, o_pos, _ = crossing_geometry(d.signs[k], d.normal)
    c = d.crossings[k]
    return coloring[c[u_pos]], coloring[c[o_pos]]


# --------------------------------------------------------------------------
# braid closures and fixtures

def braid_closure_data(strands, word):
    """PD text of a braid closure plus the semiarc labels at every height.

    ``word`` lists generators ``+i``/``-i`` (1-based, ``i < strands``); the
    braid runs upward, a positive generator takes the left strand over to the
    right, and the closing arcs pass to the right, so the unbounded face lies
    left of strand 1.  Labels increase along each component.  ``levels[h]``
    lists the labels (left to right) just below crossing ``h``;
    ``levels[len(word)]`` is the top, equal to ``levels[0]`` after closing.
    """
    if strands < 1:
        raise ValueError("need at least one strand")
    cur = list(range(strands))
    bottom = list(cur)
    nxt = strands
    raw, levels = [], [list(cur)]
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise ValueError(f"generator {g} out of range for {strands} strands")
        left, right = cur[i], cur[i + 1]
        new_left, new_right = nxt, nxt + 1
        nxt += 2
        if g > 0:
            # over: left -> new_right; under: right -> new_left
            raw.append((right, new_right, new_left, left))
        else:
            # over: right -> new_left; under: left -> new_right
            raw.append((left, right, new_right, new_left))
        cur[i], cur[i + 1] = new_left, new_right
        levels.append(list(cur))
    ident = {cur[p]: bottom[p] for p in range(strands)}
    raw = [tuple(ident.get(v, v) for v in c) for c in raw]
    levels = [[ident.get(v, v) for v in lev] for lev in levels]
    used = {v for c in raw for v in c}
    if set(bottom) - used:
        raise ValueError("every strand must take part in a crossing")
    # follow each component and relabel 1, 2, ... in orientation order
    tmp = build_diagram(raw)
    rename = {}
    for comp in tmp.components:
        for v in comp:
            rename[v] = len(rename) + 1
    crossings = [tuple(rename[v] for v in c) for c in raw]
    body = "[" + ",".join("[" + ",".join(map(str, c)) + "]" for c in crossings) + "]"
    text = f"{body}\nouter {rename[bottom[0]]} left"
    return text, [[rename[v] for v in lev] for lev in levels]


def braid_closure(strands, word):
    """PD text (with ``outer`` directive) of the closure of a braid word."""
    return braid_closure_data(strands, word)[0]


FIXTURES = {
    # right-handed trefoil and planar Reidemeister variants
    "trefoil": (2, [1, 1, 1]),
    "trefoil-RI+": (3, [1, 1, 1, 2]),
    "trefoil-RI-": (3, [1, 1, 1, -2]),
    "trefoil-RII": (3, [1, 1, 1, 2, 1, -1]),
    "trefoil-RIII": (3, [1, 1, 2, 1, 2, -1]),
    # left-handed trefoil
    "trefoil-left": (2, [-1, -1, -1]),
    "trefoil-left-RI": (3, [-1, -1, -1, 2]),
    "trefoil-left-RII": (2, [-1, 1, -1, -1, -1]),
    # figure-eight knot
    "figure8": (3, [1, -2, 1, -2]),
    "figure8-RI": (4, [1, -2, 1, -2, 3]),
    "figure8-RII": (3, [1, -2, 2, -2, 1, -2]),
    "figure8-RIII": (3, [1, 1, 2, -1, -2, -2]),
}

FIXTURE_FAMILIES = {
    "trefoil": ["trefoil", "trefoil-RI+", "trefoil-RI-", "trefoil-RII", "trefoil-RIII"],
    "trefoil-left": ["trefoil-left", "trefoil-left-RI", "trefoil-left-RII"],
    "figure8": ["figure8", "figure8-RI", "figure8-RII", "figure8-RIII"],
}

STANDARD_TREFOIL_PD = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"


def fixture(name):
    strands, word = FIXTURES[name]
    return parse_pd(braid_closure(strands, word))
