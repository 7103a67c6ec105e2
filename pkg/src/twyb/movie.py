"""Triple-point data from a loop of braid words.

A closed sequence of braid words, each obtained from the previous one by a
braid relation, sweeps out a knotted surface in 4-space; every move
``s_i s_{i+1} s_i <-> s_{i+1} s_i s_{i+1}`` is a triple point and every far
commutation is a planar isotopy.  The braid runs upward with the unbounded
region on the left, so the region between strands ``i`` and ``i + 1`` has
Alexander number ``-i`` (normals pointing left).

Only positive generators are supported.  At a move on strands ``i, i+1,
i+2`` with incoming colors ``c_i, c_{i+1}, c_{i+2}`` the triple point is
``(c_{i+2}, c_{i+1}, c_i)`` with Alexander number ``-i`` and sign +1 for
``s_i s_{i+1} s_i -> s_{i+1} s_i s_{i+1}`` (-1 for the reverse).
"""
from __future__ import annotations

import itertools
from collections import deque

from .statesum import TriplePoint, TriplePointData


def braid_moves(word):
    """Words reachable by one braid relation, tagged ``"R3"`` or ``"C"``."""
    word = tuple(word)
    out = []
    for p in range(len(word) - 2):
        a, b, c = word[p:p + 3]
        if a == c and abs(a - b) == 1:
            out.append((word[:p] + (b, a, b) + word[p + 3:], "R3"))
    for p in range(len(word) - 1):
        a, b = word[p:p + 2]
        if abs(a - b) > 1:
            out.append((word[:p] + (b, a) + word[p + 2:], "C"))
    return out


def braid_loop(start):
    """A closed walk through braid-equivalent words containing triple points.

    Built from a breadth-first tree plus one non-tree ``R3`` edge, so the
    loop is not a simple back-and-forth.
    """
    start = tuple(start)
    parent = {start: None}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for v, _ in braid_moves(w):
            if v not in parent:
                parent[v] = w
                queue.append(v)

    def to_root(w):
        out = []
        while w is not None:
            out.append(w)
            w = parent[w]
        return out

    for w in parent:
        for v, kind in braid_moves(w):
            if kind == "R3" and parent[v] != w and parent[w] != v:
                return list(reversed(to_root(w))) + to_root(v)
    raise ValueError("no loop with a triple point through this word")


def _colors_below(op, word, p, xs):
    cols = list(xs)
    for g in word[:p]:
        if g < 1:
            raise ValueError("only positive generators are supported")
        i = g - 1
        left, right = cols[i], cols[i + 1]
        cols[i], cols[i + 1] = int(op.r2[right, left]), int(op.r1[right, left])
    return cols


def loop_triple_points(op, loop, xs):
    """Triple points met along ``loop`` for the incoming colors ``xs``."""
    out = []
    for w, v in zip(loop, loop[1:]):
        p = next(i for i in range(len(w)) if w[i] != v[i])
        if w[p + 2:p + 3] == v[p + 2:p + 3] and abs(w[p] - w[p + 1]) > 1:
            continue  # far commutation
        a, b = w[p], w[p + 1]
        i = min(a, b) - 1
        cols = _colors_below(op, w, p, xs)
        out.append(TriplePoint(cols[i + 2], cols[i + 1], cols[i], 1 if a < b else -1, -(i + 1)))
    return out


def loop_triple_data(op, loop, strands):
    """TriplePointData with one coloring per choice of incoming colors."""
    data = TriplePointData()
    for xs in itertools.product(range(op.size), repeat=strands):
        cid = "".join(map(str, xs)) if op.size <= 10 else ",".join(map(str, xs))
        data.add(cid)
        for t in loop_triple_points(op, loop, xs):
            data.add(cid, t)
    return data
