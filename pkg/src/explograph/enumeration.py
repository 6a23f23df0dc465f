"""Enumeration of rigid plane tropical curves through point constraints.

A rigid marked curve, cut at its marked points, falls apart into pieces each
containing exactly one unbounded end, and every edge carrying a marked point
has its affine line pinned by that point.  The enumerator assembles curves
bottom-up from fragments (subtrees hanging below one out-edge) with exact
rational geometry.  A fragment is resolved (out-line known) or pending (known
up to one affine slide parameter, created when an unbounded end is absorbed
and discharged by a later incidence constraint).  States are memoized on
(consumed points, used ends, out-edge geometry), which shares substructure
across all combinatorial types at once; each output is still a trivalent type
with an exact position/length solution, and is re-validated after
reconstruction.

Genus one cuts the cycle: a virtual pair of opposite ends +w/-w is offered to
the assembly and re-glued at the end (equal lines, ordered anchors), with the
piece bookkeeping merged across the glue.

Exact degeneracies (a marked point on a vertex, a zero length, collinear
joins, an underdetermined family) raise PerturbPointsError.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as _gcd

from .tropcurve import Edge, End, TropicalCurve, Vertex, check_balanced, curve_genus


class PerturbPointsError(ValueError):
    """Non-generic point configuration: perturb the points and retry."""


class EnumerationError(ValueError):
    pass


_ZERO2 = (Fraction(0), Fraction(0))


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _neg(a):
    return (-a[0], -a[1])


def _is_zero(a):
    return a[0] == 0 and a[1] == 0


def _aff_value(aff, t):
    c, k = aff
    return (c[0] + t * k[0], c[1] + t * k[1])


def _aff_const(p):
    return (tuple(p), _ZERO2)


def _aff_is_const(aff):
    return _is_zero(aff[1])


@dataclass(frozen=True)
class MarkedCurve:
    """An enumerated curve plus where each constraint point sits on it."""

    curve: TropicalCurve
    assignment: tuple  # per point index: ("edge", i) or ("end", i)

    def canonical_key(self):
        c = self.curve
        order = sorted(range(len(c.vertices)), key=lambda i: c.vertices[i].pos)
        rank = {v: i for i, v in enumerate(order)}
        edges = []
        for e in c.edges:
            u, v, d = rank[e.u], rank[e.v], e.d
            if u > v:
                u, v, d = v, u, tuple(-x for x in d)
            edges.append((u, v, e.length, d))
        ends = sorted((rank[x.v], x.d) for x in c.ends)
        return (
            tuple(c.vertices[i].pos for i in order),
            tuple(sorted(edges)),
            tuple(ends),
        )


class _Frag:
    __slots__ = (
        "consumed", "used", "w", "vplus", "vminus",
        "a0", "dout", "lo", "hi", "has_real", "vrec", "glued", "payload",
        "pending", "upak", "flags", "ia0", "ipend",
    )

    def __init__(self, consumed, used, w, vplus, vminus, a0, dout,
                 lo, hi, has_real, vrec, glued, payload):
        self.consumed = consumed
        self.used = used          # per real-class used counts
        self.w = w                # cycle derivative or None
        self.vplus = vplus
        self.vminus = vminus
        self.a0 = a0              # anchor as affine pair (const2, coeff2) in tau
        self.dout = dout
        self.lo = lo              # strict tau bounds (None = unbounded)
        self.hi = hi
        self.has_real = has_real  # open piece already owns a real end
        self.vrec = vrec          # tag -> (line_aff, attach_aff|None, sealed|None, in_open)
        self.glued = glued
        self.payload = payload
        self.pending = not _aff_is_const(a0)
        # packed ints for fast pairwise compatibility filtering
        packed = 0
        for i, u in enumerate(used):
            packed |= u << (8 * i)
        self.upak = packed
        self.flags = ((1 if vplus else 0) | (2 if vminus else 0)
                      | (4 if has_real else 0) | (8 if self.pending else 0))
        ax, ay = a0[0]
        den = ax.denominator * ay.denominator // _gcd(
            ax.denominator, ay.denominator
        )
        self.ia0 = (
            ax.numerator * (den // ax.denominator),
            ay.numerator * (den // ay.denominator),
            den,
        )
        if self.pending:
            kx, ky = a0[1]
            dk = kx.denominator * ky.denominator // _gcd(
                kx.denominator, ky.denominator
            )
            self.ipend = (
                kx.numerator * (dk // kx.denominator),
                ky.numerator * (dk // ky.denominator),
                dk,
            )
        else:
            self.ipend = None

    def key(self):
        return (
            self.consumed, self.used, self.w, self.vplus, self.vminus,
            _ikey_aff(self.a0), self.dout, _ikey_f(self.lo), _ikey_f(self.hi),
            self.has_real,
            tuple(sorted((tag, _ikey_aff(r[0]),
                          None if r[1] is None else _ikey_aff(r[1]),
                          r[2], r[3]) for tag, r in self.vrec.items())),
            self.glued,
        )


def _ikey_f(x):
    if x is None:
        return None
    return (x.numerator, x.denominator)


def _ikey_aff(aff):
    (cx, cy), (kx, ky) = aff
    return (cx.numerator, cx.denominator, cy.numerator, cy.denominator,
            kx.numerator, kx.denominator, ky.numerator, ky.denominator)


def _payload_substitute(node, t):
    op = node[0]
    if op == "base":
        return node
    if op == "join":
        return ("join", _payload_substitute(node[1], t),
                _payload_substitute(node[2], t),
                _aff_const(_aff_value(node[3], t)))
    if op == "cut":
        return ("cut", _payload_substitute(node[1], t), node[2])
    if op == "absorb":
        return ("absorb", _payload_substitute(node[1], t), node[2],
                _aff_const(_aff_value(node[3], t)))
    raise AssertionError(op)


def _substitute(frag, t):
    a0 = _aff_const(_aff_value(frag.a0, t))
    vrec = {}
    for tag, (line, attach, sealed, in_open) in frag.vrec.items():
        line2 = _aff_const(_aff_value(line, t))
        attach2 = None if attach is None else _aff_const(_aff_value(attach, t))
        vrec[tag] = (line2, attach2, sealed, in_open)
    return _Frag(frag.consumed, frag.used, frag.w, frag.vplus, frag.vminus,
                 a0, frag.dout, None, None, frag.has_real, vrec, frag.glued,
                 _payload_substitute(frag.payload, t))


def _interval_add(lo, hi, coeff, const):
    """Impose coeff*t + const > 0 on the strict interval (lo, hi).

    An identically-zero offset marks a structurally degenerate branch (a
    forced zero-length edge), never a valid curve: the branch is pruned.
    """
    if coeff == 0:
        if const > 0:
            return lo, hi
        return None
    bound = -const / coeff
    if coeff > 0:
        if lo is None or bound > lo:
            lo = bound
    else:
        if hi is None or bound < hi:
            hi = bound
    if lo is not None and hi is not None and lo >= hi:
        return None
    return lo, hi


def _resolve_tau(frag, t, boundary_raises=True):
    """Fix the slide parameter.  A value on an open interval boundary is a
    zero-offset coincidence: marked-point resolutions treat it as a
    degenerate configuration, while cycle-glue resolutions prune (assembly
    orders routinely force the glue onto a bound of their own join)."""
    if frag.lo is not None and t <= frag.lo:
        if t == frag.lo and boundary_raises:
            raise PerturbPointsError("resolution on a degeneracy boundary")
        return None
    if frag.hi is not None and t >= frag.hi:
        if t == frag.hi and boundary_raises:
            raise PerturbPointsError("resolution on a degeneracy boundary")
        return None
    return _substitute(frag, t)


def _maybe_glue(frag):
    """Impose equality of the two virtual half lines once both are known."""
    if frag is None or frag.glued or not (frag.vplus and frag.vminus):
        return frag
    if "+" not in frag.vrec or "-" not in frag.vrec:
        return frag
    w = frag.w
    lp = frag.vrec["+"][0]
    lm = frag.vrec["-"][0]
    c0 = _cross(_sub(lp[0], lm[0]), w)
    c1 = _cross(_sub(lp[1], lm[1]), w)
    if c1 == 0:
        if c0 != 0:
            return None
        out = _copy(frag)
        out.glued = True
        return out
    out = _resolve_tau(frag, -Fraction(c0) / c1, boundary_raises=False)
    if out is None:
        return None
    out.glued = True
    return out


def _copy(f):
    return _Frag(f.consumed, f.used, f.w, f.vplus, f.vminus, f.a0, f.dout,
                 f.lo, f.hi, f.has_real, dict(f.vrec), f.glued, f.payload)


def _angle_class(v):
    # exact angular order starting from the positive x-axis
    x, y = v
    if y > 0 or (y == 0 and x > 0):
        half = 0
    else:
        half = 1
    return half


def newton_extent(delta):
    """Coordinate extent of the dual (Newton) polygon: a sound bound for any
    edge derivative coordinate of a balanced curve with ends delta."""
    from functools import cmp_to_key

    def cmp(a, b):
        ha, hb = _angle_class(a), _angle_class(b)
        if ha != hb:
            return -1 if ha < hb else 1
        c = _cross(a, b)
        return 0 if c == 0 else (-1 if c > 0 else 1)

    rot = sorted(((d[1], -d[0]) for d in delta), key=cmp_to_key(cmp))
    x = y = 0
    xs, ys = [0], [0]
    for v in rot:
        x += v[0]
        y += v[1]
        xs.append(x)
        ys.append(y)
    return int(max(max(xs) - min(xs), max(ys) - min(ys)))


class _Assembler:
    MAX_STATES = 3_000_000

    def __init__(self, points, delta, genus):
        self.points = [tuple(Fraction(x) for x in p) for p in points]
        counts = Counter(tuple(int(x) for x in d) for d in delta)
        self.classes = sorted(counts.items())
        self.genus = genus
        if genus == 1:
            b = newton_extent(delta)
            cands = []
            for w1 in range(-b, b + 1):
                for w2 in range(-b, b + 1):
                    if (w1, w2) > (0, 0) or (w1 == 0 and w2 > 0):
                        if (w1, w2) != (0, 0) and (w1, w2) > (-w1, -w2):
                            cands.append((w1, w2))
            self.w_candidates = sorted(set(cands))
        else:
            self.w_candidates = []
        self.n = len(points)
        self.full_mask = (1 << self.n) - 1
        self.ipoints = []
        for px, py in self.points:
            den = px.denominator * py.denominator // _gcd(
                px.denominator, py.denominator
            )
            self.ipoints.append(
                (px.numerator * (den // px.denominator),
                 py.numerator * (den // py.denominator), den)
            )

    # ------------------------------------------------------------------ rules

    def base_states(self):
        out = []
        zero_used = tuple(0 for _ in self.classes)
        for i, p in enumerate(self.points):
            for ci, (u, _cnt) in enumerate(self.classes):
                used = tuple(1 if j == ci else 0 for j in range(len(self.classes)))
                out.append(_Frag(
                    1 << i, used, None, False, False,
                    _aff_const(p), _neg(u), None, None, False, {}, False,
                    ("base", i, ("r", ci)),
                ))
            for w in self.w_candidates:
                # canonical assembly root is the +w half: only -w is ever a leaf
                u = _neg(w)
                vrec = {"-": (_aff_const(p), None, 0, False)}
                out.append(_Frag(
                    1 << i, zero_used, w, False, True,
                    _aff_const(p), _neg(u), None, None, False, vrec, False,
                    ("base", i, ("v", "-")),
                ))
        return out

    def join(self, f, g):
        # caller prefilters disjointness, class bounds, flag conflicts
        if g.pending:
            f, g = g, f
        df, dg = f.dout, g.dout
        dn = (df[0] + dg[0], df[1] + dg[1])
        if dn == (0, 0):
            return None
        det = df[0] * dg[1] - df[1] * dg[0]
        if det == 0:
            # parallel out-edges could only meet at a flat (all-parallel)
            # vertex, which never occurs on a rigid curve; genuine families
            # hiding here are still caught by the terminal pending check
            return None
        dfx, dfy = df
        dgx, dgy = dg
        if not f.pending:
            # pure-integer path: sign rejection, then the exact vertex
            xa, ya, da = f.ia0
            xb, yb, db = g.ia0
            rx = xb * da - xa * db
            ry = yb * da - ya * db
            num_s = rx * dgy - ry * dgx
            num_r = rx * dfy - ry * dfx
            if det > 0:
                if num_s < 0 or num_r < 0:
                    return None
            else:
                if num_s > 0 or num_r > 0:
                    return None
            if num_s == 0 or num_r == 0:
                raise PerturbPointsError("fragment joins at an existing point")
            s = Fraction(num_s, det * da * db)
            a0c = f.a0[0]
            vertex = ((a0c[0] + s * dfx, a0c[1] + s * dfy), _ZERO2)
            lo = hi = None
        else:
            # integer rejection: multiply s(t) > 0 and r(t) > 0 through by
            # det^2 * DB * DK > 0
            cxn, cyn, dc = f.ia0
            kxn, kyn, dk = f.ipend
            xb, yb, db = g.ia0
            rcxn = xb * dc - cxn * db
            rcyn = yb * dc - cyn * db
            dbm = db * dc
            ns_c = rcxn * dgy - rcyn * dgx
            ns_k = kyn * dgx - kxn * dgy
            a1 = det * dk * ns_c
            b1 = det * dbm * ns_k
            lo, hi = f.lo, f.hi
            if b1 == 0:
                if a1 <= 0:
                    return None
            else:
                bound = Fraction(-a1, b1)
                if b1 > 0:
                    if lo is None or bound > lo:
                        lo = bound
                else:
                    if hi is None or bound < hi:
                        hi = bound
                if lo is not None and hi is not None and lo >= hi:
                    return None
            nr_c = rcxn * dfy - rcyn * dfx
            nr_k = kyn * dfx - kxn * dfy
            a2 = det * dk * nr_c
            b2 = det * dbm * nr_k
            if b2 == 0:
                if a2 <= 0:
                    return None
            else:
                bound = Fraction(-a2, b2)
                if b2 > 0:
                    if lo is None or bound > lo:
                        lo = bound
                else:
                    if hi is None or bound < hi:
                        hi = bound
                if lo is not None and hi is not None and lo >= hi:
                    return None
            a0c, a0k = f.a0
            s_c = Fraction(ns_c, det * dbm)
            s_k = Fraction(ns_k, det * dk)
            vertex = (
                (a0c[0] + s_c * dfx, a0c[1] + s_c * dfy),
                (a0k[0] + s_k * dfx, a0k[1] + s_k * dfy),
            )
        used = tuple(a + b for a, b in zip(f.used, g.used))
        vrec = dict(f.vrec)
        vrec.update(g.vrec)
        out = _Frag(
            f.consumed | g.consumed, used, f.w or g.w,
            f.vplus or g.vplus, f.vminus or g.vminus,
            vertex, dn, lo, hi,
            f.has_real or g.has_real, vrec, f.glued or g.glued,
            ("join", f.payload, g.payload, vertex),
        )
        return _maybe_glue(out)

    def cut(self, f, i):
        if f.consumed & (1 << i):
            return None
        p = self.points[i]
        a0c, a0k = f.a0
        d = f.dout
        if not f.pending:
            px, py, pd = self.ipoints[i]
            xa, ya, da = f.ia0
            rx = px * da - xa * pd
            ry = py * da - ya * pd
            if rx * d[1] - ry * d[0] != 0:
                return None
            s = (p[0] - a0c[0]) / d[0] if d[0] else (p[1] - a0c[1]) / d[1]
            if s <= 0:
                if s == 0:
                    raise PerturbPointsError("marked point on a vertex")
                return None
            out = _copy(f)
        else:
            det = _cross(a0k, d)
            if det == 0:
                # constant out-line with a sliding anchor (possible after a
                # glued absorb): no further equation can fix the slide, so
                # only non-rigid families continue through here
                return None
            rhs = _sub(p, a0c)
            t = _cross(rhs, d) / det
            s = -_cross(rhs, a0k) / det
            if s <= 0:
                if s == 0:
                    raise PerturbPointsError("marked point on a vertex")
                return None
            out = _resolve_tau(f, t)
            if out is None:
                return None
        open_tags = [tag for tag, rec in out.vrec.items() if rec[3]]
        if not out.has_real and not open_tags:
            return None  # sealing a piece with no end: never rigid
        vrec = dict(out.vrec)
        for tag in open_tags:
            line, attach, _sealed, _ = vrec[tag]
            vrec[tag] = (line, attach, 1 if out.has_real else 0, False)
        return _Frag(out.consumed | (1 << i), out.used, out.w, out.vplus,
                     out.vminus, _aff_const(p), out.dout, None, None,
                     False, vrec, out.glued,
                     ("cut", out.payload, i))

    def absorb(self, f, cls):
        if cls[0] == "r":
            ci = cls[1]
            u, cnt = self.classes[ci]
            if f.used[ci] >= cnt or f.has_real:
                return None
            used = tuple(x + (1 if j == ci else 0) for j, x in enumerate(f.used))
            w, vp, vm = f.w, f.vplus, f.vminus
            has_real = True
        else:
            tag, w0 = cls[1], cls[2]
            if f.w is not None and f.w != w0:
                return None
            if (tag == "+" and f.vplus) or (tag == "-" and f.vminus):
                return None
            u = w0 if tag == "+" else _neg(w0)
            used = f.used
            w, vp, vm = w0, f.vplus or tag == "+", f.vminus or tag == "-"
            has_real = f.has_real
        d = f.dout
        dn = (d[0] - u[0], d[1] - u[1])
        if dn == (0, 0) or _cross(dn, d) == 0:
            return None  # contracted or collinear: never part of a rigid curve
        if not f.pending:
            # the new vertex slides along the known out-line
            vertex = (f.a0[0], (Fraction(d[0]), Fraction(d[1])))
            vrec = dict(f.vrec)
            if cls[0] == "v":
                vrec[cls[1]] = (vertex, vertex, None, True)
            out = _Frag(f.consumed, used, w, vp, vm, vertex, dn,
                        Fraction(0), None, has_real, vrec, f.glued,
                        ("absorb", f.payload, cls, vertex))
            return _maybe_glue(out)
        # pending host: only a virtual absorb whose glue discharges the new
        # degree of freedom immediately is allowed
        if cls[0] != "v":
            return None
        other = "-" if cls[1] == "+" else "+"
        if f.glued or other not in f.vrec:
            return None
        oline = f.vrec[other][0]
        a0c, a0k = f.a0
        sc = _cross(d, w)
        if sc == 0:
            return None
        base_c = _cross(_sub(a0c, oline[0]), w)
        base_k = _cross(_sub(a0k, oline[1]), w)
        s_c = -Fraction(base_c) / sc
        s_k = -Fraction(base_k) / sc
        box = _interval_add(f.lo, f.hi, s_k, s_c)
        if box is None:
            return None
        lo, hi = box
        vx_c = (a0c[0] + s_c * d[0], a0c[1] + s_c * d[1])
        vx_k = (a0k[0] + s_k * d[0], a0k[1] + s_k * d[1])
        vertex = (vx_c, vx_k)
        vrec = dict(f.vrec)
        vrec[cls[1]] = (vertex, vertex, None, True)
        return _Frag(f.consumed, used, w, vp, vm, vertex, dn, lo, hi,
                     has_real, vrec, True,
                     ("absorb", f.payload, cls, vertex))

    def finish(self, f):
        if f.consumed != self.full_mask:
            return None
        missing = [
            ci for ci in range(len(self.classes))
            if f.used[ci] < self.classes[ci][1]
        ]
        total_missing = sum(self.classes[ci][1] - f.used[ci] for ci in missing)
        if self.genus == 0:
            if f.w is not None or total_missing != 1:
                return None
            root = ("r", missing[0])
            u = self.classes[missing[0]][0]
        else:
            if f.w is None:
                return None
            if total_missing == 0 and f.vminus and not f.vplus:
                root = ("v", "+")
                u = f.w
            else:
                return None
        if tuple(f.dout) != tuple(u):
            return None
        out = f
        if self.genus == 1 and root[0] == "v":
            out = _copy(out)
            out.vrec[root[1]] = (out.a0, out.a0, None, True)
            out.vplus = out.vplus or root[1] == "+"
            out.vminus = out.vminus or root[1] == "-"
            out = _maybe_glue(out)
            if out is None:
                return None
        if out.pending:
            raise PerturbPointsError("positive-dimensional solution family")
        if self.genus == 1:
            if not out.glued:
                return None
            if root[0] == "r" and out.has_real:
                return None
            open_real = out.has_real or root[0] == "r"
            total = 0
            opens = 0
            for tag in ("+", "-"):
                _line, _attach, sealed, in_open = out.vrec[tag]
                if in_open:
                    opens += 1
                else:
                    total += sealed
            if opens:
                total += 1 if open_real else 0
            if total != 1:
                return None
        else:
            if f.has_real:
                return None
        return self._reconstruct(out, root, u)

    # -------------------------------------------------------------- rebuild

    def _reconstruct(self, f, root, root_dir):
        vertices = []
        edges = []
        ends = []
        marks = {}
        vhalves = {}

        def class_dir(cls):
            if cls[0] == "r":
                return self.classes[cls[1]][0]
            return f.w if cls[1] == "+" else _neg(f.w)

        def close_out(info, v_top, pos_top):
            src = info["src"]
            if src[0] == "pt":
                _kind, pidx, cls = src
                u = class_dir(cls)
                if cls[0] == "r":
                    idx = len(ends)
                    ends.append(End(v_top, u))
                    marks[pidx] = ("end", idx)
                    for c in info["cuts"]:
                        marks[c] = ("end", idx)
                else:
                    vhalves[cls[1]] = (v_top, [pidx] + info["cuts"])
            else:
                v_low = src[1]
                pos_low = vertices[v_low]
                d = info["dout"]
                lam = ((pos_top[0] - pos_low[0]) / d[0] if d[0]
                       else (pos_top[1] - pos_low[1]) / d[1])
                if lam <= 0:
                    raise PerturbPointsError("non-positive edge length")
                idx = len(edges)
                edges.append(Edge(v_low, v_top, lam, d))
                for c in info["cuts"]:
                    marks[c] = ("edge", idx)

        def walk(node):
            op = node[0]
            if op == "base":
                _op, pidx, cls = node
                u = class_dir(cls)
                return {"src": ("pt", pidx, cls), "cuts": [], "dout": _neg(u)}
            if op == "cut":
                info = walk(node[1])
                info["cuts"].append(node[2])
                return info
            if op == "absorb":
                info = walk(node[1])
                pos = node[3][0]
                v = len(vertices)
                vertices.append(pos)
                close_out(info, v, pos)
                cls = node[2]
                u = class_dir(cls)
                if cls[0] == "r":
                    ends.append(End(v, u))
                else:
                    vhalves[cls[1]] = (v, [])
                return {"src": ("vtx", v), "cuts": [],
                        "dout": _sub(info["dout"], u)}
            if op == "join":
                left = walk(node[1])
                right = walk(node[2])
                pos = node[3][0]
                v = len(vertices)
                vertices.append(pos)
                close_out(left, v, pos)
                close_out(right, v, pos)
                return {"src": ("vtx", v), "cuts": [],
                        "dout": (left["dout"][0] + right["dout"][0],
                                 left["dout"][1] + right["dout"][1])}
            raise AssertionError(op)

        top = walk(f.payload)
        if top["src"][0] == "pt":
            return None  # a bare edge is not a curve through n >= 2 points
        v_root = top["src"][1]
        if root[0] == "r":
            idx = len(ends)
            ends.append(End(v_root, root_dir))
            for c in top["cuts"]:
                marks[c] = ("end", idx)
        else:
            vhalves[root[1]] = (v_root, top["cuts"])
        if self.genus == 1:
            vp, cuts_p = vhalves["+"]
            vm, cuts_m = vhalves["-"]
            w = f.w
            pos_p, pos_m = vertices[vp], vertices[vm]
            lam = ((pos_m[0] - pos_p[0]) / w[0] if w[0]
                   else (pos_m[1] - pos_p[1]) / w[1])
            if lam == 0:
                raise PerturbPointsError("cycle edge of zero length")
            if lam < 0:
                return None
            if _cross(_sub(pos_m, pos_p), w) != 0:
                return None
            idx = len(edges)
            edges.append(Edge(vp, vm, lam, w))
            for c in cuts_p + cuts_m:
                p = self.points[c]
                tpar = ((p[0] - pos_p[0]) / w[0] if w[0]
                        else (p[1] - pos_p[1]) / w[1])
                if tpar == 0 or tpar == lam:
                    raise PerturbPointsError("marked point on a vertex")
                if not (0 < tpar < lam):
                    return None
                marks[c] = ("edge", idx)
        curve = TropicalCurve(
            tuple(Vertex(pos) for pos in vertices), tuple(edges), tuple(ends)
        )
        assignment = tuple(marks[i] for i in range(self.n))
        mc = MarkedCurve(curve, assignment)
        self._validate(mc)
        return mc

    def _validate(self, mc):
        c = mc.curve
        if not check_balanced(c):
            raise EnumerationError("reconstructed curve unbalanced")
        degree = Counter()
        for e in c.edges:
            degree[e.u] += 1
            degree[e.v] += 1
        for x in c.ends:
            degree[x.v] += 1
        if any(degree[v] != 3 for v in range(len(c.vertices))):
            raise EnumerationError("non-trivalent reconstruction")
        if curve_genus(c) != self.genus:
            raise EnumerationError("genus mismatch in reconstruction")
        want = Counter(self.classes_expanded())
        got = Counter(x.d for x in c.ends)
        if want != got:
            raise EnumerationError("end degree mismatch")
        for i, (kind, idx) in enumerate(mc.assignment):
            p = self.points[i]
            if kind == "end":
                x = c.ends[idx]
                base = c.vertices[x.v].pos
                d = x.d
                s = (p[0] - base[0]) / d[0] if d[0] else (p[1] - base[1]) / d[1]
                if not (s > 0) or _cross(_sub(p, base), d) != 0:
                    raise EnumerationError("marked point off its end")
            else:
                e = c.edges[idx]
                base = c.vertices[e.u].pos
                d = e.d
                s = (p[0] - base[0]) / d[0] if d[0] else (p[1] - base[1]) / d[1]
                if not (0 < s < e.length) or _cross(_sub(p, base), d) != 0:
                    raise EnumerationError("marked point off its edge")

    def classes_expanded(self):
        out = []
        for d, cnt in self.classes:
            out.extend([d] * cnt)
        return out

    # ----------------------------------------------------------------- driver

    def run(self):
        states = {}
        buckets = {}
        wid = {None: 0}
        for i, w in enumerate(self.w_candidates):
            wid[w] = i + 1
        cap_pak = 0
        hi_mask = 0
        for i, (_, c) in enumerate(self.classes):
            cap_pak |= c << (8 * i)
            hi_mask |= 0x80 << (8 * i)
        cap_guard = cap_pak | hi_mask

        remaining_pts = self.ipoints

        def viable(frag):
            # some unconsumed point must lie strictly inside the wedge
            # {a0(t) + s*dout : lo < t < hi, s > 0}
            kx, ky, dk = frag.ipend
            xa, ya, da = frag.ia0
            dx, dy = frag.dout
            det = kx * dy - ky * dx
            if det == 0:
                return False
            lo, hi = frag.lo, frag.hi
            mask = frag.consumed
            for i in range(self.n):
                if mask & (1 << i):
                    continue
                px, py, pd = remaining_pts[i]
                rx = px * da - xa * pd
                ry = py * da - ya * pd
                # p = a0 + t*k + s*d  (after clearing denominators)
                tn = rx * dy - ry * dx          # t = tn*dk / (det*da*pd)
                sn = kx * ry - ky * rx          # s = sn / (det*da*pd) * dk ... sign only
                denom = det * da * pd
                if denom < 0:
                    tn, sn = -tn, -sn
                    denom = -denom
                if sn <= 0:
                    continue
                tval = Fraction(tn * dk, denom)
                if lo is not None and tval <= lo:
                    continue
                if hi is not None and tval >= hi:
                    continue
                return True
            return False

        def push(frag):
            if frag is None:
                return
            if frag.pending and (self.genus == 0 or frag.glued):
                if not viable(frag):
                    return
            key = frag.key()
            entry = states.setdefault(key, set())
            if frag.payload in entry:
                return
            entry.add(frag.payload)
            if len(states) > self.MAX_STATES:
                raise EnumerationError("state budget exceeded")
            wkey = (bin(frag.consumed).count("1"),
                    sum(frag.used) + frag.vplus + frag.vminus)
            buckets.setdefault(wkey, deque()).append(frag)

        for b in self.base_states():
            push(b)

        finalized = {}
        results = {}
        order = sorted(buckets)
        seen_orders = set(order)
        join = self.join
        while order:
            wkey = order.pop(0)
            queue = buckets.get(wkey)
            while queue:
                f = queue.popleft()
                fmask = f.consumed
                fflags = f.flags
                fw = wid[f.w]
                budget = cap_guard - f.upak
                for mask, groups in finalized.items():
                    if mask & fmask:
                        continue
                    for (gw, gflags), g_list in groups.items():
                        if fflags & gflags:
                            continue
                        if fw and gw and fw != gw:
                            continue
                        for gupak, g in g_list:
                            if (budget - gupak) & hi_mask != hi_mask:
                                continue
                            r = join(f, g)
                            if r is not None:
                                push(r)
                for i in range(self.n):
                    if not (fmask & (1 << i)):
                        push(self.cut(f, i))
                for ci in range(len(self.classes)):
                    push(self.absorb(f, ("r", ci)))
                if self.genus == 1 and not f.vminus:
                    ws = [f.w] if f.w is not None else self.w_candidates
                    for w0 in ws:
                        push(self.absorb(f, ("v", "-", w0)))
                mc = self.finish(f)
                if mc is not None:
                    results.setdefault(mc.canonical_key(), mc)
                finalized.setdefault(fmask, {}).setdefault(
                    (fw, fflags), []
                ).append((f.upak, f))
            for k in buckets:
                if k not in seen_orders:
                    seen_orders.add(k)
                    order.append(k)
            order.sort()
        return sorted(results.values(), key=lambda m: m.canonical_key())


def enumerate_marked_curves(points, delta, genus):
    """All rigid genus-`genus` tropical curves with ends `delta` through the
    given points, with their marked-point assignments."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise PerturbPointsError("duplicate constraint points")
    delta = [tuple(int(x) for x in d) for d in delta]
    if any(d == (0, 0) for d in delta):
        raise EnumerationError("zero end derivative")
    total = (sum(d[0] for d in delta), sum(d[1] for d in delta))
    if total != (0, 0):
        raise EnumerationError("end derivatives do not balance")
    if genus not in (0, 1):
        raise EnumerationError("genus must be 0 or 1")
    expected = len(delta) - 1 + genus
    if len(points) != expected:
        raise EnumerationError(
            f"need {expected} points for {len(delta)} ends and genus {genus}"
        )
    return _Assembler(pts, delta, genus).run()
