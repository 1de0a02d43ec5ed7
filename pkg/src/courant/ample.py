"""The ample Lie algebroid A = G + F and its form calculus.

Sections of A are pairs (r, x) of fiber and leafwise component
vectors.  The bracket is determined by the connection, the curvature
2-form and the fiber bracket; the anchor projects to the x part.

Forms on A are stored by bigraded components: the value on
(e_{i_1},..,e_{i_s}, d/dx_{a_1},..,d/dx_{a_t}) with both index groups
strictly increasing and fiber arguments first.  Evaluation on any
argument order resolves the permutation sign, and evaluation on
general sections expands multilinearly over the frame.

Two differentials are implemented: the Lie algebroid differential
``ce_differential`` on forms, and the degenerate-pairing differential
``naive_differential`` which tabulates the corresponding operator on
wedges of the Courant frame; on every wedge the two agree under the
projection identification, which the test suite checks exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .dorfman import Quintuple, Section
from .fiber import QuadLieAlgebra
from .geometry import FForm, GConnection, GValuedForm, Patch
from .poly import Poly
from .report import Report, Witness


@dataclass
class ASection:
    """A section r + x of the ample algebroid."""

    r: List[Poly]
    x: List[Poly]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ASection):
            return NotImplemented
        return self.r == other.r and self.x == other.x

    def is_zero(self) -> bool:
        return not (any(self.r) or any(self.x))


class QuadAlgebroid:
    """Quadratic Lie algebroid data (patch, fiber, connection, curvature)."""

    def __init__(
        self, patch: Patch, fiber: QuadLieAlgebra, conn: GConnection, curv: GValuedForm
    ):
        if conn.patch != patch or conn.dim != fiber.dim:
            raise ValueError("connection shape does not match patch/fiber")
        if curv.patch != patch or curv.dim != fiber.dim or curv.degree != 2:
            raise ValueError("curvature must be a fiber-valued 2-form")
        self.patch = patch
        self.fiber = fiber
        self.conn = conn
        self.curv = curv

    @staticmethod
    def of(q: Quintuple) -> "QuadAlgebroid":
        return QuadAlgebroid(q.patch, q.fiber, q.conn, q.curv)

    def with_hform(self, hform: FForm) -> Quintuple:
        return Quintuple(self.patch, self.fiber, self.conn, self.curv, hform)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadAlgebroid):
            return NotImplemented
        return (
            self.patch == other.patch
            and self.fiber.c == other.fiber.c
            and self.fiber.g == other.fiber.g
            and self.conn == other.conn
            and self.curv == other.curv
        )

    # -- sections -----------------------------------------------------------

    def zero_section(self) -> ASection:
        z = Poly.zero(self.patch.n)
        return ASection([z] * self.fiber.dim, [z] * self.patch.p)

    def fiber_elem(self, i: int) -> ASection:
        s = self.zero_section()
        s.r[i - 1] = self.patch.one()
        return s

    def coord(self, a: int) -> ASection:
        s = self.zero_section()
        s.x[a - 1] = self.patch.one()
        return s

    def section(self, r: Sequence[Poly], x: Sequence[Poly]) -> ASection:
        if len(r) != self.fiber.dim or len(x) != self.patch.p:
            raise ValueError("ample section shape mismatch")
        return ASection(list(r), list(x))

    def anchor_apply(self, u: ASection, f: Poly) -> Poly:
        acc = Poly.zero(self.patch.n)
        for a, xa in enumerate(u.x, start=1):
            if xa:
                acc = acc + xa * f.diff(a)
        return acc

    # -- bracket -----------------------------------------------------------

    def bracket(self, u: ASection, v: ASection) -> ASection:
        """[r1 + x1, r2 + x2] = [r1,r2] + R(x1,x2) + nabla_{x1} r2 - nabla_{x2} r1
        on the fiber side and the vector field bracket on the leaf side."""
        p, m = self.patch.p, self.fiber.dim
        zero = Poly.zero(self.patch.n)

        x_out = []
        for b in range(p):
            acc = zero
            for a in range(1, p + 1):
                if u.x[a - 1]:
                    acc = acc + u.x[a - 1] * v.x[b].diff(a)
                if v.x[a - 1]:
                    acc = acc - v.x[a - 1] * u.x[b].diff(a)
            x_out.append(acc)

        r_out = self.fiber.bracket(u.r, v.r)
        for a in range(1, p + 1):
            if u.x[a - 1]:
                dv = self.conn.apply(a, v.r)
                r_out = [acc + u.x[a - 1] * t if t else acc for acc, t in zip(r_out, dv)]
            if v.x[a - 1]:
                du = self.conn.apply(a, u.r)
                r_out = [acc - v.x[a - 1] * t if t else acc for acc, t in zip(r_out, du)]
        for a in range(p):
            if not u.x[a]:
                continue
            for b in range(p):
                if not v.x[b]:
                    continue
                rc = self.curv.get((a + 1, b + 1))
                if any(rc):
                    coeff = u.x[a] * v.x[b]
                    r_out = [acc + coeff * t if t else acc for acc, t in zip(r_out, rc)]
        return ASection(r_out, x_out)

    def frame_bracket(self, u: Tuple[str, int], v: Tuple[str, int]) -> ASection:
        """Bracket of two frame symbols ("g", i) or ("f", a)."""
        m = self.fiber.dim
        out = self.zero_section()
        if u[0] == "g" and v[0] == "g":
            i, j = u[1] - 1, v[1] - 1
            for k in range(m):
                c = self.fiber.c[i][j][k]
                if c:
                    out.r[k] = Poly.const(self.patch.n, c)
        elif u[0] == "g" and v[0] == "f":
            col = self._conn_column(v[1], u[1])
            out.r = [-t for t in col]
        elif u[0] == "f" and v[0] == "g":
            out.r = self._conn_column(u[1], v[1])
        else:
            out.r = self.curv.get((u[1], v[1]))
        return out

    def _conn_column(self, a: int, i: int) -> List[Poly]:
        """nabla_a e_i = column i of Gamma_a."""
        mat = self.conn.gamma[a - 1]
        return [mat[k][i - 1] for k in range(self.fiber.dim)]


FrameSym = Tuple[str, int]


class AForm:
    """k-form on the ample algebroid, stored by bigraded components.

    Keys are (fiber index tuple, leaf index tuple), both strictly
    increasing and 1-based; the stored value is the form evaluated on
    the corresponding frame elements with all fiber arguments first.
    """

    def __init__(
        self,
        patch: Patch,
        dim: int,
        degree: int,
        comps: Mapping[Tuple[Tuple[int, ...], Tuple[int, ...]], Poly] = (),
    ):
        self.patch = patch
        self.dim = dim
        self.degree = degree
        clean: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Poly] = {}
        for (gidx, fidx), value in dict(comps).items():
            gidx, fidx = tuple(gidx), tuple(fidx)
            if len(gidx) + len(fidx) != degree:
                raise ValueError("component %r has wrong arity" % ((gidx, fidx),))
            if list(gidx) != sorted(set(gidx)) or list(fidx) != sorted(set(fidx)):
                raise ValueError("component keys must be strictly increasing")
            if any(not 1 <= i <= dim for i in gidx) or any(
                not 1 <= a <= patch.p for a in fidx
            ):
                raise ValueError("component index out of range")
            if value:
                clean[(gidx, fidx)] = value
        self.comps = clean

    @staticmethod
    def zero(patch: Patch, dim: int, degree: int) -> "AForm":
        return AForm(patch, dim, degree)

    def keys(self):
        return sorted(self.comps)

    def __bool__(self) -> bool:
        return bool(self.comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AForm):
            return NotImplemented
        return (
            self.patch == other.patch
            and self.dim == other.dim
            and self.degree == other.degree
            and self.comps == other.comps
        )

    def __add__(self, other: "AForm") -> "AForm":
        if self.degree != other.degree:
            raise ValueError("form degree mismatch")
        comps = dict(self.comps)
        for key, value in other.comps.items():
            comps[key] = comps.get(key, self.patch.zero()) + value
        return AForm(self.patch, self.dim, self.degree, comps)

    def __sub__(self, other: "AForm") -> "AForm":
        return self + other.scale(-1)

    def scale(self, c) -> "AForm":
        return AForm(
            self.patch,
            self.dim,
            self.degree,
            {k: v.scale(c) for k, v in self.comps.items()},
        )

    def eval_frame(self, args: Sequence[FrameSym]) -> Poly:
        """Value on frame symbols in any order; repeats give zero."""
        if len(args) != self.degree:
            raise ValueError("wrong number of arguments")
        ranked = []
        for kind, idx in args:
            ranked.append((0, idx) if kind == "g" else (1, idx))
        key, sign = sort_with_sign_ranked(ranked)
        if sign == 0:
            return self.patch.zero()
        gidx = tuple(idx for rank, idx in key if rank == 0)
        fidx = tuple(idx for rank, idx in key if rank == 1)
        value = self.comps.get((gidx, fidx))
        if value is None:
            return self.patch.zero()
        return value if sign == 1 else -value

    def eval_sections(self, args: Sequence[ASection]) -> Poly:
        """Multilinear evaluation on ample sections with Poly components."""
        if len(args) != self.degree:
            raise ValueError("wrong number of arguments")
        return self._expand(args, 0, [])

    def _expand(self, args, pos, frame_args) -> Poly:
        if pos == len(args):
            return self.eval_frame(frame_args)
        total = self.patch.zero()
        sec = args[pos]
        for i, coeff in enumerate(sec.r, start=1):
            if coeff:
                sub = self._expand(args, pos + 1, frame_args + [("g", i)])
                if sub:
                    total = total + coeff * sub
        for a, coeff in enumerate(sec.x, start=1):
            if coeff:
                sub = self._expand(args, pos + 1, frame_args + [("f", a)])
                if sub:
                    total = total + coeff * sub
        return total

    def bigrade_component(self, gcount: int) -> "AForm":
        """The part with exactly gcount fiber indices."""
        comps = {
            key: value for key, value in self.comps.items() if len(key[0]) == gcount
        }
        return AForm(self.patch, self.dim, self.degree, comps)

    def __str__(self) -> str:
        if not self.comps:
            return "0"
        parts = []
        for gidx, fidx in self.keys():
            labels = ["e%d" % i for i in gidx] + ["dx%d" % a for a in fidx]
            parts.append("(%s) %s" % (self.comps[(gidx, fidx)], "^".join(labels)))
        return " + ".join(parts)


def sort_with_sign_ranked(items: Sequence[Tuple[int, int]]):
    """Insertion sort with sign on (rank, index) pairs; equal pairs give 0."""
    seq = list(items)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(seq)):
        if seq[i - 1] == seq[i]:
            return tuple(seq), 0
    return tuple(seq), sign


def aform_keys(patch: Patch, dim: int, degree: int):
    """All bigraded component keys of a given degree, in sorted order."""
    keys = []
    for gcount in range(min(dim, degree), -1, -1):
        fcount = degree - gcount
        if fcount > patch.p:
            continue
        for gidx in combinations(range(1, dim + 1), gcount):
            for fidx in combinations(range(1, patch.p + 1), fcount):
                keys.append((gidx, fidx))
    return sorted(keys)


def frame_syms_of_key(key) -> List[FrameSym]:
    gidx, fidx = key
    return [("g", i) for i in gidx] + [("f", a) for a in fidx]


def ce_differential(alg: QuadAlgebroid, w: AForm) -> AForm:
    """Lie algebroid differential of a form on A, computed on the frame."""
    if w.patch != alg.patch or w.dim != alg.fiber.dim:
        raise ValueError("form does not live on this algebroid")
    degree = w.degree
    comps: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Poly] = {}
    for key in aform_keys(alg.patch, alg.fiber.dim, degree + 1):
        args = frame_syms_of_key(key)
        total = alg.patch.zero()
        for pos, arg in enumerate(args):
            if arg[0] != "f":
                continue
            rest = args[:pos] + args[pos + 1:]
            value = w.eval_frame(rest).diff(arg[1])
            if value:
                total = total + value if pos % 2 == 0 else total - value
        for i in range(degree + 1):
            for j in range(i + 1, degree + 1):
                br = alg.frame_bracket(args[i], args[j])
                if br.is_zero():
                    continue
                rest = [args[k] for k in range(degree + 1) if k != i and k != j]
                acc = alg.patch.zero()
                for l, coeff in enumerate(br.r, start=1):
                    if coeff:
                        sub = w.eval_frame([("g", l)] + rest)
                        if sub:
                            acc = acc + coeff * sub
                for a, coeff in enumerate(br.x, start=1):
                    if coeff:
                        sub = w.eval_frame([("f", a)] + rest)
                        if sub:
                            acc = acc + coeff * sub
                if acc:
                    total = total + acc if (i + j) % 2 == 0 else total - acc
        if total:
            comps[key] = total
    return AForm(alg.patch, alg.fiber.dim, degree + 1, comps)


def is_horizontal(w: AForm) -> bool:
    """True iff the pure-fiber bigraded component vanishes."""
    return not any(len(key[0]) == w.degree for key in w.comps)


def project_ample(q: Quintuple, e: Section) -> ASection:
    """Quotient projection of a Courant section to the ample algebroid."""
    return ASection(list(e.r), list(e.x))


def naive_differential(q: Quintuple, s: AForm) -> List[Tuple[Tuple[int, ...], Poly]]:
    """Tabulate the degenerate-pairing differential of a naive cochain.

    ``s`` is read as a naive cochain through the projection: its value
    on a wedge of Courant sections is the form evaluated on their
    images in the ample algebroid.  The table lists, for every strictly
    increasing (k+1)-wedge of the Courant frame, the alternating-sum
    value built from anchored derivatives and the skew bracket.
    """
    frames = q.frame_sections()
    k = s.degree
    table: List[Tuple[Tuple[int, ...], Poly]] = []
    for wedge in combinations(range(len(frames)), k + 1):
        secs = [frames[t] for t in wedge]
        total = q.zero_poly()
        for pos in range(k + 1):
            rest = secs[:pos] + secs[pos + 1:]
            value = s.eval_sections([project_ample(q, v) for v in rest])
            if value:
                term = q.anchor_apply(secs[pos], value)
                if term:
                    total = total + term if pos % 2 == 0 else total - term
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                cb = q.courant(secs[i], secs[j])
                rest = [secs[t] for t in range(k + 1) if t != i and t != j]
                value = s.eval_sections(
                    [project_ample(q, cb)] + [project_ample(q, v) for v in rest]
                )
                if value:
                    total = total + value if (i + j) % 2 == 0 else total - value
        table.append((wedge, total))
    return table


def naive_matches_ce(q: Quintuple, s: AForm) -> Report:
    """Compare the naive-differential table with the algebroid differential."""
    report = Report()
    alg = QuadAlgebroid.of(q)
    ds = ce_differential(alg, s)
    frames = q.frame_sections()
    first: Optional[Witness] = None
    for wedge, value in naive_differential(q, s):
        expected = ds.eval_sections([project_ample(q, frames[t]) for t in wedge])
        residual = value - expected
        if residual and first is None:
            first = Witness(
                "naive table minus algebroid differential",
                tuple(t + 1 for t in wedge),
                str(residual),
            )
    if first is None:
        report.add_pass("naive_matches_ce")
    else:
        report.add_fail("naive_matches_ce", first)
    return report


def aform_from_fform(patch: Patch, dim: int, w: FForm) -> AForm:
    """Pull a leafwise form back through the anchor."""
    comps = {((), key): value for key, value in w.comps.items()}
    return AForm(patch, dim, w.degree, comps)


def aform_to_str(w: AForm) -> str:
    """Canonical serialization used for exact byte-level comparisons."""
    lines = []
    for gidx, fidx in w.keys():
        lines.append(
            "g(%s) f(%s): %s"
            % (
                ",".join(map(str, gidx)),
                ",".join(map(str, fidx)),
                w.comps[(gidx, fidx)],
            )
        )
    return "\n".join(lines) if lines else "0"
