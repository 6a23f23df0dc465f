"""Tropical curves: decorated integral-affine graphs mapped into a tropical part.

Vertices carry exact positions and genus labels; internal edges carry positive
rational lengths and integer derivative vectors (with respect to a stored
tail->head orientation); external edges are semi-infinite and carry only a
derivative.  Reversing an edge's orientation negates its derivative, and every
predicate below is orientation-invariant.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import gcd

from .affine import Polytope, local_cone, whole_space
from .intlinalg import vec_gcd


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    pos: tuple
    genus: int = 0
    poly: int = 0

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(Fraction(x) for x in self.pos))


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    length: Fraction
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "length", Fraction(self.length))
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))


@dataclass(frozen=True)
class End:
    v: int
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))


@dataclass(frozen=True)
class TropicalCurve:
    vertices: tuple
    edges: tuple = ()
    ends: tuple = ()

    def ambient_dim(self) -> int:
        return len(self.vertices[0].pos)


def curve(vertices, edges=(), ends=()) -> TropicalCurve:
    return TropicalCurve(
        tuple(Vertex(*v) if not isinstance(v, Vertex) else v for v in vertices),
        tuple(Edge(*e) if not isinstance(e, Edge) else e for e in edges),
        tuple(End(*x) if not isinstance(x, End) else x for x in ends),
    )


def outgoing_derivatives(c: TropicalCurve, v: int):
    out = []
    for e in c.edges:
        if e.u == v:
            out.append(e.d)
        if e.v == v:
            out.append(tuple(-x for x in e.d))
    for x in c.ends:
        if x.v == v:
            out.append(x.d)
    return out


def check_balanced(c: TropicalCurve) -> bool:
    """Position consistency, positive lengths, and zero derivative sums."""
    m = c.ambient_dim()
    for e in c.edges:
        if e.length <= 0:
            return False
        head = c.vertices[e.v].pos
        tail = c.vertices[e.u].pos
        if any(head[i] - tail[i] != e.length * e.d[i] for i in range(m)):
            return False
    for v in range(len(c.vertices)):
        total = [0] * m
        for d in outgoing_derivatives(c, v):
            for i in range(m):
                total[i] += d[i]
        if any(total):
            return False
    return True


def _components(c: TropicalCurve):
    n = len(c.vertices)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in c.edges:
        ra, rb = find(e.u), find(e.v)
        if ra != rb:
            parent[ra] = rb
    return len({find(i) for i in range(n)})


def curve_genus(c: TropicalCurve) -> int:
    if _components(c) != 1:
        raise CurveError("disconnected curve")
    b1 = len(c.edges) - len(c.vertices) + 1
    return b1 + sum(v.genus for v in c.vertices)


def edge_multiplicity(d) -> int:
    if hasattr(d, "d"):
        d = d.d
    return vec_gcd(d)


def k_factor(c: TropicalCurve, allow_zero: bool = False) -> int:
    out = 1
    for e in c.edges:
        m = edge_multiplicity(e.d)
        if m == 0 and not allow_zero:
            raise CurveError("internal edge with zero derivative (pass allow_zero)")
        out *= m
    return out


def _oriented_key(e: Edge, x, y):
    """Decoration of e read off in the orientation x -> y (loops: +-d folded)."""
    if x == y:
        assert e.u == e.v == x
        return (e.length, max(e.d, tuple(-v for v in e.d)))
    if (e.u, e.v) == (x, y):
        return (e.length, e.d)
    if (e.u, e.v) == (y, x):
        return (e.length, tuple(-v for v in e.d))
    raise AssertionError


def automorphism_order(c: TropicalCurve) -> int:
    """Order of the decorated-graph automorphism group.

    Vertex maps must preserve position and genus exactly; edges match up to
    orientation reversal (derivative negated); parallel identically-decorated
    edges and identical ends at a vertex may permute freely.  Loops are not
    given an extra orientation-flip automorphism.
    """
    if len(c.edges) > 24:
        raise CurveError("automorphism search limited to 24 edges")
    n = len(c.vertices)
    sig = [(v.pos, v.genus, v.poly) for v in c.vertices]
    groups = {}
    for i, s in enumerate(sig):
        groups.setdefault(s, []).append(i)
    total = 0
    # candidate vertex bijections preserve the signature groups
    group_lists = list(groups.values())

    def gen_maps(idx, current):
        if idx == len(group_lists):
            yield dict(current)
            return
        members = group_lists[idx]
        for perm in permutations(members):
            nxt = dict(current)
            for a, b in zip(members, perm):
                nxt[a] = b
            yield from gen_maps(idx + 1, nxt)

    from collections import Counter
    from math import factorial

    pair_edges = {}
    for e in c.edges:
        a, b = sorted((e.u, e.v))
        pair_edges.setdefault((a, b), []).append(e)

    for vmap in gen_maps(0, {}):
        ok = True
        ways = 1
        for (a, b), lst in pair_edges.items():
            ia, ib = vmap[a], vmap[b]
            target = pair_edges.get(tuple(sorted((ia, ib))), [])
            src_keys = Counter(_oriented_key(e, a, b) for e in lst)
            dst_keys = Counter(_oriented_key(e, ia, ib) for e in target)
            if src_keys != dst_keys:
                ok = False
                break
            for mult in src_keys.values():
                ways *= factorial(mult)
        if not ok:
            continue
        end_groups = Counter((x.v, x.d) for x in c.ends)
        mapped = Counter((vmap[x.v], x.d) for x in c.ends)
        if end_groups != mapped:
            continue
        end_ways = 1
        for mult in end_groups.values():
            end_ways *= factorial(mult)
        total += ways * end_ways
    return total


@dataclass(frozen=True)
class VertexStar:
    """One vertex with every incident edge made external, in its local cone."""

    star: TropicalCurve
    source_vertex: int
    cone: Polytope


def cut(c: TropicalCurve, ambient: Polytope = None):
    """One star per vertex; each internal edge contributes opposite ends."""
    if not check_balanced(c):
        raise CurveError("cut requires a balanced curve")
    m = c.ambient_dim()
    if ambient is None:
        ambient = whole_space(m)
    stars = []
    origin = tuple(Fraction(0) for _ in range(m))
    for v in range(len(c.vertices)):
        ends = []
        for e in c.edges:
            if e.u == v:
                ends.append(End(0, e.d))
            if e.v == v:
                ends.append(End(0, tuple(-x for x in e.d)))
        for x in c.ends:
            if x.v == v:
                ends.append(End(0, x.d))
        star_curve = TropicalCurve(
            (Vertex(origin, c.vertices[v].genus),), (), tuple(ends)
        )
        cone = local_cone(ambient, c.vertices[v].pos)
        stars.append(VertexStar(star_curve, v, cone))
    return stars


def random_balanced_curve(rng: random.Random, max_vertices=5, dim=2, genus_labels=True):
    """Seeded generator of balanced curves for property tests."""
    n = rng.randrange(1, max_vertices + 1)
    verts = []
    edges = []
    pos0 = tuple(Fraction(rng.randrange(-5, 6)) for _ in range(dim))
    verts.append([pos0, rng.randrange(0, 3) if genus_labels else 0])
    for v in range(1, n):
        u = rng.randrange(0, v)
        d = tuple(rng.randrange(-3, 4) for _ in range(dim))
        length = Fraction(rng.randrange(1, 5), rng.randrange(1, 4))
        pos = tuple(verts[u][0][i] + length * d[i] for i in range(dim))
        verts.append([pos, rng.randrange(0, 3) if genus_labels else 0])
        edges.append((u, v, length, d))
    curve_vertices = [Vertex(p, g) for p, g in verts]
    # close up with ends balancing each vertex
    ends = []
    tmp = TropicalCurve(tuple(curve_vertices), tuple(Edge(*e) for e in edges), ())
    for v in range(n):
        deficit = [0] * dim
        for d in outgoing_derivatives(tmp, v):
            for i in range(dim):
                deficit[i] -= d[i]
        if any(deficit):
            if rng.random() < 0.5:
                split = tuple(rng.randrange(-2, 3) for _ in range(dim))
                rest = tuple(deficit[i] - split[i] for i in range(dim))
                if any(split):
                    ends.append(End(v, split))
                if any(rest):
                    ends.append(End(v, rest))
            else:
                ends.append(End(v, tuple(deficit)))
        else:
            d = tuple(rng.randrange(-2, 3) for _ in range(dim))
            if any(d):
                ends.append(End(v, d))
                ends.append(End(v, tuple(-x for x in d)))
    out = TropicalCurve(tuple(curve_vertices), tuple(Edge(*e) for e in edges), tuple(ends))
    assert check_balanced(out)
    return out
