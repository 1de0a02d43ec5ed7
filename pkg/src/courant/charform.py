"""Characteristic 3-forms, coherence, hoists and the pair correspondence.

The canonical closed 3-form of a quintuple lives on the ample algebroid
and has bigraded components: the fiber Cartan tensor, a vanishing
(2,1) part, the curvature pairing in bidegree (1,2) and the leafwise
3-form in bidegree (0,3).  The same form arises from any torsion-free
leaf connection through a metric covariant derivative; both routes are
implemented and must agree exactly.

A hoist (a right inverse of the anchor, encoded by its fiber-valued
1-form) turns a closed coherent 3-form back into quintuple data; this
is the constructive direction of the correspondence between standard
Courant structures and coherent pairs, realized by ``build_from_pair``
and inverted by ``characteristic_pair_of``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .ample import AForm, ASection, QuadAlgebroid, aform_keys, ce_differential
from .dorfman import Quintuple, Section
from .geometry import FConnection, FForm, GConnection, GValuedForm, Patch
from .linalg import solve
from .poly import Poly
from .report import Report, Witness

THIRD = Fraction(1, 3)
HALF = Fraction(1, 2)


@dataclass
class Hoist:
    """Anchor section x -> J(x) + x, encoded by the fiber-valued 1-form J."""

    j: GValuedForm  # degree 1

    def __post_init__(self):
        if self.j.degree != 1:
            raise ValueError("hoist data must be a fiber-valued 1-form")

    @staticmethod
    def standard(patch: Patch, dim: int) -> "Hoist":
        return Hoist(GValuedForm.zero(patch, dim, 1))

    def column(self, a: int) -> List[Poly]:
        return self.j.get((a,))

    def section(self, alg: QuadAlgebroid, a: int) -> ASection:
        s = alg.coord(a)
        s.r = self.column(a)
        return s


@dataclass
class CharPair:
    """Ample algebroid data together with a coherent closed 3-form."""

    alg: QuadAlgebroid
    c: AForm


def standard_three_form(q: Quintuple) -> AForm:
    """The canonical 3-form of a quintuple on its ample algebroid."""
    patch, fiber = q.patch, q.fiber
    m, p = fiber.dim, patch.p
    comps: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Poly] = {}
    cartan = fiber.cartan_three_form()
    for gidx in combinations(range(1, m + 1), 3):
        i, j, k = gidx
        value = cartan[i - 1][j - 1][k - 1]
        if value:
            comps[(gidx, ())] = Poly.const(patch.n, value)
    for k in range(1, m + 1):
        for fidx in combinations(range(1, p + 1), 2):
            a, b = fidx
            value = fiber.pairing(q.curv.get((a, b)), [
                Poly.const(patch.n, 1 if l == k else 0) for l in range(1, m + 1)
            ])
            if value:
                comps[((k,), fidx)] = value
    for fidx in combinations(range(1, p + 1), 3):
        value = q.hform.comps.get(fidx)
        if value:
            comps[((), fidx)] = value
    return AForm(patch, m, 3, comps)


def _e_connection(q: Quintuple, fc: FConnection, e1: Section, e2: Section) -> Section:
    """Metric covariant derivative along e1 of e2 built from the quintuple
    and a torsion-free leaf connection."""
    p, m = q.patch.p, q.fiber.dim
    out = q.zero_section()
    # F* part: dual leaf derivative minus one third of the H contraction
    xi = [q.zero_poly()] * p
    for a in range(1, p + 1):
        if e1.x[a - 1]:
            da = fc.apply_covector(a, e2.xi)
            xi = [acc + e1.x[a - 1] * t if t else acc for acc, t in zip(xi, da)]
    h = q.h_contract(e1.x, e2.x)
    out.xi = [u - v.scale(THIRD) for u, v in zip(xi, h)]
    # G part
    r = q.nabla_along(e1.x, e2.r)
    br = q.fiber.bracket(e1.r, e2.r)
    out.r = [u + v.scale(Fraction(2, 3)) for u, v in zip(r, br)]
    # F part: leaf connection derivative
    x = [q.zero_poly()] * p
    for a in range(1, p + 1):
        if e1.x[a - 1]:
            da = fc.apply_vector(a, e2.x)
            x = [acc + e1.x[a - 1] * t if t else acc for acc, t in zip(x, da)]
    out.x = x
    return out


def e_connection_form(q: Quintuple, fc: FConnection) -> AForm:
    """Chern-Weil style 3-form from a metric covariant derivative.

    Computed on all frame triples of the split bundle and reassembled
    as a form on the ample algebroid; equals ``standard_three_form`` for
    every torsion-free leaf connection.
    """
    if fc.patch != q.patch:
        raise ValueError("leaf connection lives on a different patch")
    if not fc.is_torsion_free():
        raise ValueError("leaf connection must be torsion-free")
    frames = q.frame_sections()
    p, m = q.patch.p, q.fiber.dim

    def value_on(triple: Tuple[Section, Section, Section]) -> Poly:
        total = q.zero_poly()
        order = (0, 1, 2), (1, 2, 0), (2, 0, 1)
        for i, j, k in order:
            e1, e2, e3 = triple[i], triple[j], triple[k]
            cb = q.courant(e1, e2)
            total = total + q.pairing(cb, e3).scale(THIRD)
            asym = _e_connection(q, fc, e1, e2) - _e_connection(q, fc, e2, e1)
            total = total - q.pairing(asym, e3).scale(HALF)
        return total

    # triples containing a dual-frame covector must evaluate to zero,
    # otherwise the form does not descend to the ample algebroid
    for wedge in combinations(range(len(frames)), 3):
        if all(t >= p for t in wedge):
            continue
        value = value_on(tuple(frames[t] for t in wedge))
        if value:
            raise ValueError(
                "connection 3-form does not descend: nonzero on frame wedge %r" % (wedge,)
            )

    comps: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Poly] = {}
    for key in aform_keys(q.patch, m, 3):
        gidx, fidx = key
        triple = tuple(
            [frames[p + i - 1] for i in gidx] + [frames[p + m + a - 1] for a in fidx]
        )
        value = value_on(triple)
        if value:
            comps[key] = value
    return AForm(q.patch, m, 3, comps)


def hoist_data(alg: QuadAlgebroid, h: Hoist) -> Tuple[GConnection, GValuedForm]:
    """Connection and curvature induced by a hoist via the ample bracket."""
    patch, m = alg.patch, alg.fiber.dim
    p = patch.p
    gamma = []
    for a in range(1, p + 1):
        ja = h.column(a)
        ad_j = alg.fiber.ad_matrix(ja)
        base = alg.conn.gamma[a - 1]
        gamma.append([[base[i][j] + ad_j[i][j] for j in range(m)] for i in range(m)])
    conn = GConnection(patch, m, gamma)
    comps = {}
    for a in range(1, p + 1):
        for b in range(a + 1, p + 1):
            ka = h.section(alg, a)
            kb = h.section(alg, b)
            vec = alg.bracket(ka, kb).r  # kappa[x,y] has no fiber part on the frame
            if any(vec):
                comps[(a, b)] = vec
    curv = GValuedForm(patch, m, 2, comps)
    return conn, curv


def check_coherent(alg: QuadAlgebroid, c: AForm, h: Hoist) -> Report:
    """The three hoist conditions plus closedness, all exact."""
    report = Report()
    patch, fiber = alg.patch, alg.fiber
    m, p = fiber.dim, patch.p
    cartan = fiber.cartan_three_form()

    wit = None
    for gidx in combinations(range(1, m + 1), 3):
        i, j, k = gidx
        expected = Poly.const(patch.n, cartan[i - 1][j - 1][k - 1])
        residual = c.eval_frame([("g", i), ("g", j), ("g", k)]) - expected
        if residual and wit is None:
            wit = Witness("C(r,s,t) + <[r,s],t>", gidx, str(residual))
    if wit is None:
        report.add_pass("coherent_cartan")
    else:
        report.add_fail("coherent_cartan", wit)

    kappa = [h.section(alg, a) for a in range(1, p + 1)]

    wit = None
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            for a in range(1, p + 1):
                residual = c.eval_sections(
                    [alg.fiber_elem(i), alg.fiber_elem(j), kappa[a - 1]]
                )
                if residual and wit is None:
                    wit = Witness("C(r,s,kappa x)", (i, j, a), str(residual))
    if wit is None:
        report.add_pass("coherent_mixed")
    else:
        report.add_fail("coherent_mixed", wit)

    _, curv_k = hoist_data(alg, h)
    wit = None
    for k in range(1, m + 1):
        ek = [Poly.const(patch.n, 1 if l == k else 0) for l in range(1, m + 1)]
        for a in range(1, p + 1):
            for b in range(a + 1, p + 1):
                lhs = c.eval_sections([alg.fiber_elem(k), kappa[a - 1], kappa[b - 1]])
                rhs = fiber.pairing(ek, curv_k.get((a, b)))
                residual = lhs - rhs
                if residual and wit is None:
                    wit = Witness("C(r,kappa x,kappa y) - <r,R^kappa(x,y)>", (k, a, b), str(residual))
    if wit is None:
        report.add_pass("coherent_curvature")
    else:
        report.add_fail("coherent_curvature", wit)

    dc = ce_differential(alg, c)
    wit = None
    for key in dc.keys():
        gidx, fidx = key
        wit = Witness("dC", gidx + fidx, str(dc.comps[key]))
        break
    if wit is None:
        report.add_pass("coherent_closed")
    else:
        report.add_fail("coherent_closed", wit)
    return report


@dataclass
class HoistSearch:
    """Outcome of the hoist solve: a hoist or a refusal witness."""

    hoist: Optional[Hoist]
    report: Report


def find_hoist(alg: QuadAlgebroid, c: AForm) -> HoistSearch:
    """Solve the mixed coherence condition for a hoist, if one exists.

    The (2,1) components must lie in the image of the pairing-contracted
    structure constants B[(ij)][k] = <[e_i,e_j],e_k>, monomial by
    monomial.  Solutions are made unique by zeroing all components along
    the fiber center; the curvature condition is then verified.
    """
    patch, fiber = alg.patch, alg.fiber
    m, p = fiber.dim, patch.p
    report = Report()

    dc = ce_differential(alg, c)
    if dc:
        key = dc.keys()[0]
        report.add_fail("coherent_closed", Witness("dC", key[0] + key[1], str(dc.comps[key])))
        return HoistSearch(None, report)
    report.add_pass("coherent_closed")

    cartan = fiber.cartan_three_form()
    for gidx in combinations(range(1, m + 1), 3):
        i, j, k = gidx
        expected = Poly.const(patch.n, cartan[i - 1][j - 1][k - 1])
        residual = c.eval_frame([("g", i), ("g", j), ("g", k)]) - expected
        if residual:
            report.add_fail("coherent_cartan", Witness("C(r,s,t) + <[r,s],t>", gidx, str(residual)))
            return HoistSearch(None, report)
    report.add_pass("coherent_cartan")

    pairs = list(combinations(range(1, m + 1), 2))
    bmat = [[fiber.b[i - 1][j - 1][k] for k in range(m)] for i, j in pairs]
    center = fiber.center()

    columns: List[List[Poly]] = []
    for a in range(1, p + 1):
        rhs_polys = [
            c.eval_frame([("g", i), ("g", j), ("f", a)]) for i, j in pairs
        ]
        monos = sorted({exp for poly in rhs_polys for exp in poly.terms})
        col = [Poly.zero(patch.n) for _ in range(m)]
        for exp in monos:
            rhs = [Fraction(poly.terms.get(exp, 0)) for poly in rhs_polys]
            sol = solve(bmat, rhs)
            if sol is None:
                report.add_fail(
                    "hoist_solvable",
                    Witness(
                        "B J_a = C(e_i,e_j,d_a) has no solution",
                        (a,) + exp,
                        str(Poly(patch.n, {exp: 1})),
                    ),
                )
                return HoistSearch(None, report)
            mono = Poly(patch.n, {exp: 1})
            col = [acc + mono.scale(v) if v else acc for acc, v in zip(col, sol)]
        columns.append(col)

    # remove center-direction components for a deterministic representative
    if center:
        # greedy complement of the center inside the standard basis
        basis = [list(z) for z in center]
        complement: List[int] = []
        for idx in range(m):
            candidate = basis + [
                [Fraction(1) if t == u else Fraction(0) for t in range(m)]
                for u in complement + [idx]
            ]
            if _rank(candidate) == len(candidate):
                complement.append(idx)
        for a in range(p):
            col = columns[a]
            monos = sorted({exp for poly in col for exp in poly.terms})
            fixed = [Poly.zero(patch.n) for _ in range(m)]
            for exp in monos:
                vec = [Fraction(poly.terms.get(exp, 0)) for poly in col]
                # write vec in (center + complement) coordinates, drop the center part
                cols_mat = [list(z) for z in center] + [
                    [Fraction(1) if t == u else Fraction(0) for t in range(m)]
                    for u in complement
                ]
                coeffs = solve([list(row) for row in zip(*cols_mat)], vec)
                reduced = [Fraction(0)] * m
                for pos, u in enumerate(complement):
                    reduced[u] += coeffs[len(center) + pos]
                mono = Poly(patch.n, {exp: 1})
                fixed = [acc + mono.scale(v) if v else acc for acc, v in zip(fixed, reduced)]
            columns[a] = fixed

    hoist = Hoist(
        GValuedForm(
            patch, m, 1, {(a,): columns[a - 1] for a in range(1, p + 1) if any(columns[a - 1])}
        )
    )
    report.add_pass("hoist_solvable")

    full = check_coherent(alg, c, hoist)
    seen = {record.name for record in report}
    for record in full:
        if record.name not in seen:
            report.add(record)
    return HoistSearch(hoist if full.ok else None, report)


def _rank(rows: List[List[Fraction]]) -> int:
    from .linalg import _bareiss_echelon, _clear_denominators

    cleared = [_clear_denominators(row) for row in rows]
    _, pivots = _bareiss_echelon(cleared)
    return len(pivots)


def build_from_pair(pair: CharPair, h: Hoist) -> Quintuple:
    """Quintuple induced by a coherent pair and a hoist for it.

    Raises ValueError when the coherence conditions fail for (C, h).
    """
    alg, c = pair.alg, pair.c
    coh = check_coherent(alg, c, h)
    if not coh.ok:
        failing = coh.failures()[0]
        raise ValueError("pair is not coherent for this hoist: %s" % failing.name)
    conn, curv = hoist_data(alg, h)
    patch = alg.patch
    kappa = [h.section(alg, a) for a in range(1, patch.p + 1)]
    comps = {}
    for key in combinations(range(1, patch.p + 1), 3):
        a, b, cc = key
        value = c.eval_sections([kappa[a - 1], kappa[b - 1], kappa[cc - 1]])
        if value:
            comps[key] = value
    hform = FForm(patch, 3, comps)
    return Quintuple(patch, alg.fiber, conn, curv, hform)


def characteristic_pair_of(q: Quintuple) -> CharPair:
    """The canonical pair of a quintuple; a standard hoist rebuilds q."""
    return CharPair(QuadAlgebroid.of(q), standard_three_form(q))
