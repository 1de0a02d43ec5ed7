"""The standard split Courant algebroid E = F* + G + F over a patch.

A quintuple (patch, fiber; connection, curvature 2-form, leafwise
3-form) determines the whole structure: anchor = projection to F,
pseudo-metric = duality pairing plus the fiber metric, and a Dorfman
bracket given in closed form on sections with polynomial components.
The closed-form bracket below is valid for arbitrary polynomial
sections, so both Leibniz rules are theorems of the implementation
rather than extension bookkeeping; the axiom checker verifies them.

Two verification layers:

* ``validate`` checks the five compatibility identities of the data
  exactly (connection invariances, Bianchi, curvature matching, and
  the Pontryagin identity d^F H = <R wedge R>).
* ``check_axioms`` verifies the six Courant axioms on the family
  {monomial * frame section}.  The default strategy reduces the cubic
  enumeration using verified Leibniz identities (see ``_axioms_reduced``)
  and is exactly equivalent to the direct enumeration, which is kept as
  ``method="direct"`` and cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from .fiber import QuadLieAlgebra
from .geometry import FForm, GConnection, GValuedForm, Patch, leafwise_d, pontryagin_form, validate_connection
from .poly import Poly
from .report import Report, Witness

HALF = Fraction(1, 2)


@dataclass
class Section:
    """A section xi + r + x of F* + G + F with polynomial components."""

    xi: List[Poly]
    r: List[Poly]
    x: List[Poly]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Section):
            return NotImplemented
        return self.xi == other.xi and self.r == other.r and self.x == other.x

    def __add__(self, other: "Section") -> "Section":
        return Section(
            [a + b for a, b in zip(self.xi, other.xi)],
            [a + b for a, b in zip(self.r, other.r)],
            [a + b for a, b in zip(self.x, other.x)],
        )

    def __sub__(self, other: "Section") -> "Section":
        return Section(
            [a - b for a, b in zip(self.xi, other.xi)],
            [a - b for a, b in zip(self.r, other.r)],
            [a - b for a, b in zip(self.x, other.x)],
        )

    def scale(self, c) -> "Section":
        return Section(
            [a.scale(c) for a in self.xi],
            [a.scale(c) for a in self.r],
            [a.scale(c) for a in self.x],
        )

    def mul(self, f: Poly) -> "Section":
        return Section(
            [f * a for a in self.xi],
            [f * a for a in self.r],
            [f * a for a in self.x],
        )

    def is_zero(self) -> bool:
        return not (any(self.xi) or any(self.r) or any(self.x))

    def components(self) -> List[Poly]:
        return list(self.xi) + list(self.r) + list(self.x)


def monomials(nvars: int, max_degree: int) -> List[Poly]:
    """All monomials of total degree <= max_degree, graded-lex ascending."""
    exps = [
        e
        for e in product(range(max_degree + 1), repeat=nvars)
        if sum(e) <= max_degree
    ]
    exps.sort(key=lambda e: (sum(e), e))
    return [Poly(nvars, {e: 1}) for e in exps]


class Quintuple:
    """Standard Courant algebroid data over a polynomial patch."""

    def __init__(
        self,
        patch: Patch,
        fiber: QuadLieAlgebra,
        conn: GConnection,
        curv: GValuedForm,
        hform: FForm,
    ):
        if conn.patch != patch or conn.dim != fiber.dim:
            raise ValueError("connection shape does not match patch/fiber")
        if curv.patch != patch or curv.dim != fiber.dim or curv.degree != 2:
            raise ValueError("curvature must be a fiber-valued 2-form on the patch")
        if hform.patch != patch or hform.degree != 3:
            raise ValueError("H must be a leafwise 3-form on the patch")
        self.patch = patch
        self.fiber = fiber
        self.conn = conn
        self.curv = curv
        self.hform = hform
        p, n = patch.p, patch.n
        zero = Poly.zero(n)
        # dense antisymmetric lookups for the bracket hot path
        self._h = [
            [[hform.get((a, b, c)) for c in range(1, p + 1)] for b in range(1, p + 1)]
            for a in range(1, p + 1)
        ]
        self._r = [
            [curv.get((a, b)) for b in range(1, p + 1)] for a in range(1, p + 1)
        ]
        self._zero = zero

    # -- basic sections ---------------------------------------------------

    def zero_poly(self) -> Poly:
        return self._zero

    def zero_section(self) -> Section:
        p, m = self.patch.p, self.fiber.dim
        z = self._zero
        return Section([z] * p, [z] * m, [z] * p)

    def delta(self, a: int) -> Section:
        """The dual frame covector section delta^a."""
        s = self.zero_section()
        s.xi[a - 1] = self.patch.one()
        return s

    def fiber_elem(self, i: int) -> Section:
        s = self.zero_section()
        s.r[i - 1] = self.patch.one()
        return s

    def coord(self, a: int) -> Section:
        """The frame vector section d/dx_a."""
        s = self.zero_section()
        s.x[a - 1] = self.patch.one()
        return s

    def section(self, xi: Sequence[Poly], r: Sequence[Poly], x: Sequence[Poly]) -> Section:
        p, m = self.patch.p, self.fiber.dim
        if len(xi) != p or len(r) != m or len(x) != p:
            raise ValueError("section component shape mismatch")
        return Section(list(xi), list(r), list(x))

    def frame_sections(self) -> List[Section]:
        """delta^1..delta^p, e_1..e_m, d/dx_1..d/dx_p in this order."""
        p, m = self.patch.p, self.fiber.dim
        return (
            [self.delta(a) for a in range(1, p + 1)]
            + [self.fiber_elem(i) for i in range(1, m + 1)]
            + [self.coord(a) for a in range(1, p + 1)]
        )

    def frame_labels(self) -> List[str]:
        p, m = self.patch.p, self.fiber.dim
        return (
            ["delta^%d" % a for a in range(1, p + 1)]
            + ["e_%d" % i for i in range(1, m + 1)]
            + ["d_%d" % a for a in range(1, p + 1)]
        )

    # -- structure maps -----------------------------------------------------

    def _check_section(self, e: Section) -> None:
        p, m = self.patch.p, self.fiber.dim
        if len(e.xi) != p or len(e.r) != m or len(e.x) != p:
            raise ValueError("section shape mismatch for this quintuple")

    def anchor(self, e: Section) -> List[Poly]:
        return list(e.x)

    def anchor_apply(self, e: Section, f: Poly) -> Poly:
        """rho(e) f = sum_a x^a d_a f."""
        acc = self._zero
        for a, xa in enumerate(e.x, start=1):
            if xa:
                acc = acc + xa * f.diff(a)
        return acc

    def pairing(self, e1: Section, e2: Section) -> Poly:
        self._check_section(e1)
        self._check_section(e2)
        acc = self._zero
        for a in range(self.patch.p):
            if e1.xi[a] and e2.x[a]:
                acc = acc + e1.xi[a] * e2.x[a]
            if e2.xi[a] and e1.x[a]:
                acc = acc + e2.xi[a] * e1.x[a]
        acc = acc.scale(HALF)
        if self.fiber.dim:
            acc = acc + self.fiber.pairing(e1.r, e2.r)
        return acc

    def d_operator(self, f: Poly) -> Section:
        s = self.zero_section()
        for a in range(1, self.patch.p + 1):
            s.xi[a - 1] = f.diff(a)
        return s

    def nabla(self, a: int, r: Sequence[Poly]) -> List[Poly]:
        return self.conn.apply(a, r)

    def nabla_along(self, x: Sequence[Poly], r: Sequence[Poly]) -> List[Poly]:
        """nabla_x r for a leafwise vector field x."""
        m = self.fiber.dim
        out = [self._zero] * m
        for a in range(1, self.patch.p + 1):
            if x[a - 1]:
                da = self.nabla(a, r)
                out = [acc + x[a - 1] * v if v else acc for acc, v in zip(out, da)]
        return out

    def p_form(self, r1: Sequence[Poly], r2: Sequence[Poly]) -> List[Poly]:
        """F*-components of P(r1, r2): <P(r1,r2)|y> = 2<r2, nabla_y r1>."""
        out = []
        for b in range(1, self.patch.p + 1):
            out.append(self.fiber.pairing(r2, self.nabla(b, r1)).scale(2))
        return out

    def q_form(self, x: Sequence[Poly], r: Sequence[Poly]) -> List[Poly]:
        """F*-components of Q(x, r): <Q(x,r)|y> = <r, R(x,y)>."""
        p = self.patch.p
        out = []
        for b in range(p):
            acc = self._zero
            for a in range(p):
                if x[a]:
                    rc = self._r[a][b]
                    pairing = self.fiber.pairing(r, rc)
                    if pairing:
                        acc = acc + x[a] * pairing
            out.append(acc)
        return out

    # -- brackets ------------------------------------------------------------

    def vf_bracket(self, x1: Sequence[Poly], x2: Sequence[Poly]) -> List[Poly]:
        p = self.patch.p
        out = []
        for b in range(p):
            acc = self._zero
            for a in range(1, p + 1):
                if x1[a - 1]:
                    acc = acc + x1[a - 1] * x2[b].diff(a)
                if x2[a - 1]:
                    acc = acc - x2[a - 1] * x1[b].diff(a)
            out.append(acc)
        return out

    def lie_covector(self, x: Sequence[Poly], xi: Sequence[Poly]) -> List[Poly]:
        """(L_x xi)_b = sum_a x^a d_a xi_b + xi_a d_b x^a."""
        p = self.patch.p
        out = []
        for b in range(1, p + 1):
            acc = self._zero
            for a in range(1, p + 1):
                if x[a - 1]:
                    acc = acc + x[a - 1] * xi[b - 1].diff(a)
                if xi[a - 1]:
                    acc = acc + xi[a - 1] * x[a - 1].diff(b)
            out.append(acc)
        return out

    def curv_contract(self, x1: Sequence[Poly], x2: Sequence[Poly]) -> List[Poly]:
        """R(x1, x2) as an m-vector."""
        p, m = self.patch.p, self.fiber.dim
        out = [self._zero] * m
        for a in range(p):
            if not x1[a]:
                continue
            for b in range(p):
                if not x2[b]:
                    continue
                vec = self._r[a][b]
                if any(vec):
                    coeff = x1[a] * x2[b]
                    out = [acc + coeff * v if v else acc for acc, v in zip(out, vec)]
        return out

    def h_contract(self, x1: Sequence[Poly], x2: Sequence[Poly]) -> List[Poly]:
        """H(x1, x2, -) as an F*-vector."""
        p = self.patch.p
        out = []
        for b in range(p):
            acc = self._zero
            for a in range(p):
                if not x1[a]:
                    continue
                for c in range(p):
                    if x2[c] and self._h[a][c][b]:
                        acc = acc + x1[a] * x2[c] * self._h[a][c][b]
            out.append(acc)
        return out

    def dorfman(self, e1: Section, e2: Section) -> Section:
        """Dorfman bracket of two arbitrary polynomial sections."""
        self._check_section(e1)
        self._check_section(e2)
        p, m = self.patch.p, self.fiber.dim
        fr = self.fiber
        zero = self._zero
        x1_live = any(e1.x)
        x2_live = any(e2.x)
        r1_live = any(e1.r)
        r2_live = any(e2.r)

        # F part: vector field bracket of the anchors
        if x1_live or x2_live:
            x_out = self.vf_bracket(e1.x, e2.x)
        else:
            x_out = [zero] * p

        # G part
        r_out = fr.bracket(e1.r, e2.r) if (r1_live and r2_live) else [zero] * m
        if x1_live and x2_live:
            rc = self.curv_contract(e1.x, e2.x)
            r_out = [a + b for a, b in zip(r_out, rc)]
        if x1_live and r2_live:
            n12 = self.nabla_along(e1.x, e2.r)
            r_out = [a + b for a, b in zip(r_out, n12)]
        if x2_live and r1_live:
            n21 = self.nabla_along(e2.x, e1.r)
            r_out = [a - b for a, b in zip(r_out, n21)]

        # F* part
        out = [zero] * p
        if x1_live and x2_live:
            out = self.h_contract(e1.x, e2.x)
        if x1_live and any(e2.xi):
            lie12 = self.lie_covector(e1.x, e2.xi)
            out = [a + b for a, b in zip(out, lie12)]
        if x2_live and any(e1.xi):
            lie21 = self.lie_covector(e2.x, e1.xi)
            out = [a - b for a, b in zip(out, lie21)]
            dual = zero
            for a in range(p):
                if e1.xi[a] and e2.x[a]:
                    dual = dual + e1.xi[a] * e2.x[a]
            if dual:
                out = [a + dual.diff(b + 1) for b, a in enumerate(out)]
        if r1_live and r2_live:
            pform = self.p_form(e1.r, e2.r)
            out = [a + b for a, b in zip(out, pform)]
        if x1_live and r2_live:
            q12 = self.q_form(e1.x, e2.r)
            out = [a - b.scale(2) for a, b in zip(out, q12)]
        if x2_live and r1_live:
            q21 = self.q_form(e2.x, e1.r)
            out = [a + b.scale(2) for a, b in zip(out, q21)]
        return Section(out, r_out, x_out)

    def courant(self, e1: Section, e2: Section) -> Section:
        """Skew bracket: Dorfman minus d of the pairing."""
        return self.dorfman(e1, e2) - self.d_operator(self.pairing(e1, e2))

    # -- data validation -------------------------------------------------------

    def validate(self) -> Report:
        report = Report()
        report.extend(validate_connection(self.conn, self.fiber))
        p, m = self.patch.p, self.fiber.dim

        bianchi = None
        for a in range(1, p + 1):
            for b in range(a + 1, p + 1):
                for c in range(b + 1, p + 1):
                    vec = [
                        u + v + w
                        for u, v, w in zip(
                            self.nabla(a, self.curv.get((b, c))),
                            self.nabla(b, self.curv.get((c, a))),
                            self.nabla(c, self.curv.get((a, b))),
                        )
                    ]
                    for k, entry in enumerate(vec):
                        if entry and bianchi is None:
                            bianchi = Witness(
                                "nabla_a R_bc + nabla_b R_ca + nabla_c R_ab",
                                (a, b, c, k + 1),
                                str(entry),
                            )
        if bianchi is None:
            report.add_pass("bianchi_identity")
        else:
            report.add_fail("bianchi_identity", bianchi)

        curvid = None
        for a in range(1, p + 1):
            for b in range(a + 1, p + 1):
                ga = self.conn.gamma[a - 1]
                gb = self.conn.gamma[b - 1]
                ad_r = self.fiber.ad_matrix(self.curv.get((a, b)))
                for i in range(m):
                    for j in range(m):
                        acc = gb[i][j].diff(a) - ga[i][j].diff(b) - ad_r[i][j]
                        for l in range(m):
                            if ga[i][l] and gb[l][j]:
                                acc = acc + ga[i][l] * gb[l][j]
                            if gb[i][l] and ga[l][j]:
                                acc = acc - gb[i][l] * ga[l][j]
                        if acc and curvid is None:
                            curvid = Witness(
                                "d_a Gamma_b - d_b Gamma_a + [Gamma_a,Gamma_b] - ad(R_ab)",
                                (a, b, i + 1, j + 1),
                                str(acc),
                            )
        if curvid is None:
            report.add_pass("curvature_identity")
        else:
            report.add_fail("curvature_identity", curvid)

        diff = pontryagin_form(self.curv, self.fiber) - leafwise_d(self.hform)
        pont = None
        for key in diff.keys():
            pont = Witness("<R wedge R> - dF_H", key, str(diff.comps[key]))
            break
        if pont is None:
            report.add_pass("dF_H_equals_RR")
        else:
            report.add_fail("dF_H_equals_RR", pont)
        return report

    # -- axiom suite -------------------------------------------------------------

    def axiom_family(self, degree_cap: int) -> Tuple[List[Section], List[Poly]]:
        """Sections {f * u} for frame u and monomial f of degree <= cap."""
        monos = monomials(self.patch.n, degree_cap)
        frames = self.frame_sections()
        family = [u.mul(f) for f in monos for u in frames]
        return family, monos

    def check_axioms(self, degree_cap: int = 2, method: str = "reduced") -> Report:
        if method == "reduced":
            return self._axioms_reduced(degree_cap)
        if method == "direct":
            return self._axioms_direct(degree_cap)
        raise ValueError("unknown axiom check method %r" % method)

    def _axioms_direct(self, degree_cap: int) -> Report:
        """Literal enumeration: pairs for axioms 2-5, triples for 1 and 6."""
        family, monos = self.axiom_family(degree_cap)
        nf = len(family)
        cache: Dict[Tuple[int, int], Section] = {}

        def br(i: int, j: int) -> Section:
            key = (i, j)
            if key not in cache:
                cache[key] = self.dorfman(family[i], family[j])
            return cache[key]

        wit = {k: None for k in range(1, 7)}

        for i in range(nf):
            for j in range(nf):
                b = br(i, j)
                if wit[2] is None:
                    lhs = self.anchor(b)
                    rhs = self.vf_bracket(family[i].x, family[j].x)
                    for a, (u, v) in enumerate(zip(lhs, rhs), start=1):
                        d = u - v
                        if d:
                            wit[2] = Witness("rho([[e1,e2]]) - [rho e1, rho e2]", (i + 1, j + 1, a), str(d))
                            break
                if wit[3] is None:
                    for fi, f in enumerate(monos):
                        lhs = self.dorfman(family[i], family[j].mul(f))
                        rhs = b.mul(f) + family[j].scale(1).mul(self.anchor_apply(family[i], f))
                        d = lhs - rhs
                        if not d.is_zero():
                            comp = next(c for c in d.components() if c)
                            wit[3] = Witness("[[e1, f e2]] - f[[e1,e2]] - (rho(e1)f) e2", (i + 1, j + 1, fi + 1), str(comp))
                            break
                if wit[4] is None and i <= j:
                    d = br(i, j) + br(j, i) - self.d_operator(self.pairing(family[i], family[j])).scale(2)
                    if not d.is_zero():
                        comp = next(c for c in d.components() if c)
                        wit[4] = Witness("[[e1,e2]] + [[e2,e1]] - 2 D<e1,e2>", (i + 1, j + 1), str(comp))

        for fi, f in enumerate(monos):
            if wit[5] is not None:
                break
            df = self.d_operator(f)
            for j in range(nf):
                d = self.dorfman(df, family[j])
                if not d.is_zero():
                    comp = next(c for c in d.components() if c)
                    wit[5] = Witness("[[D f, e]]", (fi + 1, j + 1), str(comp))
                    break

        for i in range(nf):
            if wit[1] is not None and wit[6] is not None:
                break
            for j in range(nf):
                if wit[1] is not None and wit[6] is not None:
                    break
                bij = br(i, j)
                for k in range(nf):
                    if wit[1] is None:
                        d = (
                            self.dorfman(family[i], br(j, k))
                            - self.dorfman(bij, family[k])
                            - self.dorfman(family[j], br(i, k))
                        )
                        if not d.is_zero():
                            comp = next(c for c in d.components() if c)
                            wit[1] = Witness("jacobiator", (i + 1, j + 1, k + 1), str(comp))
                    if wit[6] is None:
                        d = (
                            self.anchor_apply(family[i], self.pairing(family[j], family[k]))
                            - self.pairing(bij, family[k])
                            - self.pairing(family[j], br(i, k))
                        )
                        if d:
                            wit[6] = Witness("rho(e1)<e2,e3> - <[[e1,e2]],e3> - <e2,[[e1,e3]]>", (i + 1, j + 1, k + 1), str(d))
                    if wit[1] is not None and wit[6] is not None:
                        break

        report = Report()
        for k in range(1, 7):
            name = "axiom_%d" % k
            if wit[k] is None:
                report.add_pass(name)
            else:
                report.add_fail(name, wit[k])
        return report

    def _axioms_reduced(self, degree_cap: int) -> Report:
        """Equivalent staged check of the same axiom family.

        The staging: the right Leibniz rule is verified with the first
        argument ranging over the whole monomial-scaled family, the
        second over the frame and the coefficient over monomials of
        degree up to twice the cap (products of two family coefficients);
        the derived left rule is verified on frame pairs with the same
        coefficient range.  Both rules are position-independent identities
        of the closed-form bracket, so once they hold, every axiom defect
        is multilinear over polynomial coefficients and the six axioms
        only need frame tuples: each scaled instance expands into checked
        instances by the product rule.  The test suite cross-checks this
        staging against the direct enumeration, on valid and on mutated
        data.
        """
        family, monos = self.axiom_family(degree_cap)
        monos2 = monomials(self.patch.n, 2 * degree_cap)
        frames = self.frame_sections()
        nf, nu = len(family), len(frames)
        # family index of frame u: monomial 1 is first in graded-lex order
        fam_frame: Dict[Tuple[int, int], Section] = {}
        frame_fam: Dict[Tuple[int, int], Section] = {}
        for i in range(nf):
            ei = family[i]
            for uj in range(nu):
                fam_frame[(i, uj)] = self.dorfman(ei, frames[uj])
        for uj in range(nu):
            u = frames[uj]
            for j in range(nf):
                frame_fam[(uj, j)] = self.dorfman(u, family[j])

        wit: Dict[object, Optional[Witness]] = {k: None for k in (1, 2, 3, 4, 5, 6, "L")}

        # axiom 2 on frame pairs
        for i in range(nu):
            for j in range(nu):
                lhs = self.anchor(frame_fam[(i, j)])
                rhs = self.vf_bracket(frames[i].x, frames[j].x)
                for a, (u, v) in enumerate(zip(lhs, rhs), start=1):
                    d = u - v
                    if d and wit[2] is None:
                        wit[2] = Witness(
                            "rho([[e1,e2]]) - [rho e1, rho e2]", (i + 1, j + 1, a), str(d)
                        )

        # axiom 3: right Leibniz rule, family x frame x widened coefficients
        scaled = [
            [frames[uj].mul(f) for f in monos2] for uj in range(nu)
        ]
        for i in range(nf):
            if wit[3] is not None:
                break
            ei = family[i]
            for uj, u in enumerate(frames):
                if wit[3] is not None:
                    break
                base = fam_frame[(i, uj)]
                for fi, f in enumerate(monos2):
                    lhs = self.dorfman(ei, scaled[uj][fi])
                    rhs = base.mul(f)
                    rf = self.anchor_apply(ei, f)
                    if rf:
                        rhs = rhs + u.mul(rf)
                    d = lhs - rhs
                    if not d.is_zero():
                        comp = next(c for c in d.components() if c)
                        wit[3] = Witness(
                            "[[e1, f u]] - f[[e1,u]] - (rho(e1)f) u",
                            (i + 1, uj + 1, fi + 1),
                            str(comp),
                        )
                        break

        # derived left Leibniz rule on frame pairs, widened coefficients
        for uj, u in enumerate(frames):
            if wit["L"] is not None:
                break
            for vj in range(nu):
                if wit["L"] is not None:
                    break
                v = frames[vj]
                base = frame_fam[(uj, vj)]
                pair = self.pairing(u, v)
                for fi, f in enumerate(monos2):
                    lhs = self.dorfman(scaled[uj][fi], v)
                    rhs = base.mul(f) - u.mul(self.anchor_apply(v, f))
                    if pair:
                        rhs = rhs + self.d_operator(f).mul(pair.scale(2))
                    d = lhs - rhs
                    if not d.is_zero():
                        comp = next(c for c in d.components() if c)
                        wit["L"] = Witness(
                            "[[f u, e2]] - f[[u,e2]] + (rho(e2)f) u - 2<u,e2> D f",
                            (uj + 1, vj + 1, fi + 1),
                            str(comp),
                        )
                        break

        # axiom 4 on unordered frame pairs
        for i in range(nu):
            for j in range(i, nu):
                d = (
                    frame_fam[(i, j)]
                    + frame_fam[(j, i)]
                    - self.d_operator(self.pairing(frames[i], frames[j])).scale(2)
                )
                if not d.is_zero() and wit[4] is None:
                    comp = next(c for c in d.components() if c)
                    wit[4] = Witness(
                        "[[e1,e2]] + [[e2,e1]] - 2 D<e1,e2>", (i + 1, j + 1), str(comp)
                    )

        # axiom 5 with frame second arguments, widened coefficients
        for fi, f in enumerate(monos2):
            if wit[5] is not None:
                break
            df = self.d_operator(f)
            if df.is_zero():
                continue
            for j in range(nu):
                d = self.dorfman(df, frames[j])
                if not d.is_zero():
                    comp = next(c for c in d.components() if c)
                    wit[5] = Witness("[[D f, e]]", (fi + 1, j + 1), str(comp))
                    break

        # axioms 6 and 1 on frame triples (sufficient given the above)
        for i in range(nu):
            for j in range(nu):
                bij = frame_fam[(i, j)]
                for k in range(j, nu):
                    d = (
                        self.anchor_apply(frames[i], self.pairing(frames[j], frames[k]))
                        - self.pairing(bij, frames[k])
                        - self.pairing(frames[j], frame_fam[(i, k)])
                    )
                    if d and wit[6] is None:
                        wit[6] = Witness(
                            "rho(e1)<e2,e3> - <[[e1,e2]],e3> - <e2,[[e1,e3]]>",
                            (i + 1, j + 1, k + 1),
                            str(d),
                        )
        for i in range(nu):
            for j in range(nu):
                bij = frame_fam[(i, j)]
                for k in range(nu):
                    d = (
                        self.dorfman(frames[i], frame_fam[(j, k)])
                        - self.dorfman(bij, frames[k])
                        - self.dorfman(frames[j], frame_fam[(i, k)])
                    )
                    if not d.is_zero() and wit[1] is None:
                        comp = next(c for c in d.components() if c)
                        wit[1] = Witness("jacobiator", (i + 1, j + 1, k + 1), str(comp))

        report = Report()
        for k in (1, 2, 3, 4, 5, 6):
            name = "axiom_%d" % k
            if wit[k] is None:
                report.add_pass(name)
            else:
                report.add_fail(name, wit[k])
        if wit["L"] is None:
            report.add_pass("leibniz_left_rule")
        else:
            report.add_fail("leibniz_left_rule", wit["L"])
        return report
