"""Isomorphisms of standard Courant structures and structure transport.

An isomorphism over the identity of the base is a triple (tau, phi,
beta): a fiber automorphism, a fiber-valued 1-form and an F -> F* map,
subject to one pairing condition; it acts on sections by

    xi + r + x  |->  (xi + beta(x) - 2 phi^* tau(r)) + (tau(r) + phi(x)) + x.

``transport`` solves the three intertwining conditions for the target
data (connection, curvature, leafwise 3-form), inverting tau through
its adjugate, which stays polynomial exactly when det(tau) is a
nonzero constant.  The canned shifts (hoist, two-form, central) build
specific isomorphisms together with their predicted targets, and the
coboundary check verifies that pulled-back canonical 3-forms differ by
an explicit exact form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Tuple

from .ample import AForm, ASection, QuadAlgebroid, aform_keys, ce_differential
from .charform import standard_three_form
from .dorfman import Quintuple, Section
from .fiber import QuadLieAlgebra
from .geometry import FForm, GConnection, GValuedForm, Patch, leafwise_d
from .linalg import (
    poly_mat_diff,
    poly_mat_identity,
    poly_mat_inverse_constant_det,
    poly_mat_mul,
    poly_mat_vec,
)
from .poly import Poly
from .report import Report, Witness

HALF = Fraction(1, 2)


@dataclass
class IsoData:
    """tau: m x m, phi: fiber-valued 1-form, beta[b][a] = <beta(d_a)|d_b>."""

    tau: List[List[Poly]]
    phi: GValuedForm
    beta: List[List[Poly]]

    def phi_col(self, a: int) -> List[Poly]:
        return self.phi.get((a,))

    def beta_col(self, a: int) -> List[Poly]:
        """Components of beta(d_a) in the dual frame."""
        return [row[a - 1] for row in self.beta]


def identity_iso(patch: Patch, dim: int) -> IsoData:
    return IsoData(
        poly_mat_identity(patch.n, dim),
        GValuedForm.zero(patch, dim, 1),
        [[Poly.zero(patch.n)] * patch.p for _ in range(patch.p)],
    )


def validate_iso(patch: Patch, fiber: QuadLieAlgebra, iso: IsoData) -> Report:
    report = Report()
    m, p, n = fiber.dim, patch.p, patch.n
    tau, beta = iso.tau, iso.beta

    wit = None
    for a in range(1, p + 1):
        for b in range(a, p + 1):
            residual = (beta[b - 1][a - 1] + beta[a - 1][b - 1]).scale(HALF) + fiber.pairing(
                iso.phi_col(a), iso.phi_col(b)
            )
            if residual and wit is None:
                wit = Witness(
                    "<beta x|y>/2 + <x|beta y>/2 + <phi x,phi y>", (a, b), str(residual)
                )
    if wit is None:
        report.add_pass("iso_pairing_condition")
    else:
        report.add_fail("iso_pairing_condition", wit)

    wit = None
    for i in range(m):
        for j in range(m):
            for k in range(m):
                acc = Poly.zero(n)
                for l in range(m):
                    if fiber.c[i][j][l] and tau[k][l]:
                        acc = acc + tau[k][l].scale(fiber.c[i][j][l])
                for l in range(m):
                    for s in range(m):
                        if fiber.c[l][s][k] and tau[l][i] and tau[s][j]:
                            acc = acc - (tau[l][i] * tau[s][j]).scale(fiber.c[l][s][k])
                if acc and wit is None:
                    wit = Witness("tau[e_i,e_j] - [tau e_i, tau e_j]", (i + 1, j + 1, k + 1), str(acc))
    if wit is None:
        report.add_pass("tau_bracket_automorphism")
    else:
        report.add_fail("tau_bracket_automorphism", wit)

    wit = None
    for i in range(m):
        for j in range(m):
            acc = Poly.const(n, -fiber.g[i][j])
            for l in range(m):
                for s in range(m):
                    if fiber.g[l][s] and tau[l][i] and tau[s][j]:
                        acc = acc + (tau[l][i] * tau[s][j]).scale(fiber.g[l][s])
            if acc and wit is None:
                wit = Witness("tau^T g tau - g", (i + 1, j + 1), str(acc))
    if wit is None:
        report.add_pass("tau_metric_automorphism")
    else:
        report.add_fail("tau_metric_automorphism", wit)

    from .linalg import poly_mat_det

    if m:
        det = poly_mat_det(tau)
        if det.is_constant() and det.constant_value() != 0:
            report.add_pass("tau_det_constant")
        else:
            report.add_fail("tau_det_constant", Witness("det(tau)", (), str(det)))
    else:
        report.add_pass("tau_det_constant")
    return report


def apply_iso(patch: Patch, fiber: QuadLieAlgebra, iso: IsoData, e: Section) -> Section:
    """Image of a section; preserves the pseudo-metric exactly."""
    m, p = fiber.dim, patch.p
    tau_r = poly_mat_vec(iso.tau, e.r) if m else []
    phi_x = [Poly.zero(patch.n)] * m
    for a in range(1, p + 1):
        if e.x[a - 1]:
            col = iso.phi_col(a)
            phi_x = [acc + e.x[a - 1] * v if v else acc for acc, v in zip(phi_x, col)]
    beta_x = [Poly.zero(patch.n)] * p
    for a in range(1, p + 1):
        if e.x[a - 1]:
            col = iso.beta_col(a)
            beta_x = [acc + e.x[a - 1] * v if v else acc for acc, v in zip(beta_x, col)]
    # (phi^* s)_a = <s, phi(d_a)>
    phi_star = [fiber.pairing(tau_r, iso.phi_col(a)) for a in range(1, p + 1)]
    xi = [
        e.xi[a] + beta_x[a] - phi_star[a].scale(2) for a in range(p)
    ]
    r = [u + v for u, v in zip(tau_r, phi_x)]
    return Section(xi, r, list(e.x))


def compose_iso(patch: Patch, fiber: QuadLieAlgebra, second: IsoData, first: IsoData) -> IsoData:
    """The isomorphism acting as 'second after first'."""
    m, p, n = fiber.dim, patch.p, patch.n
    tau = poly_mat_mul(second.tau, first.tau) if m else []
    phi_comps = {}
    for a in range(1, p + 1):
        col1 = first.phi_col(a)
        vec = poly_mat_vec(second.tau, col1) if m else []
        col2 = second.phi_col(a)
        col = [u + v for u, v in zip(vec, col2)]
        if any(col):
            phi_comps[(a,)] = col
    beta = [[Poly.zero(n)] * p for _ in range(p)]
    for a in range(1, p + 1):
        t1 = poly_mat_vec(second.tau, first.phi_col(a)) if m else []
        for b in range(1, p + 1):
            corr = fiber.pairing(t1, second.phi_col(b)) if m else Poly.zero(n)
            beta[b - 1][a - 1] = (
                first.beta[b - 1][a - 1]
                + second.beta[b - 1][a - 1]
                - corr.scale(2)
            )
    return IsoData(tau, GValuedForm(patch, m, 1, phi_comps), beta)


def transport(q1: Quintuple, iso: IsoData) -> Quintuple:
    """Target quintuple intertwined with q1 by the isomorphism."""
    patch, fiber = q1.patch, q1.fiber
    m, p, n = fiber.dim, patch.p, patch.n

    tau = iso.tau
    tau_inv = poly_mat_inverse_constant_det(tau) if m else []

    gamma2 = []
    for a in range(1, p + 1):
        if m:
            d_inv = poly_mat_diff(tau_inv, a)
            mat = poly_mat_mul(tau, d_inv)
            conj = poly_mat_mul(tau, poly_mat_mul(q1.conn.gamma[a - 1], tau_inv))
            ad_phi = fiber.ad_matrix(iso.phi_col(a))
            gamma2.append(
                [
                    [mat[i][j] + conj[i][j] - ad_phi[i][j] for j in range(m)]
                    for i in range(m)
                ]
            )
        else:
            gamma2.append([])
    conn2 = GConnection(patch, m, gamma2)

    curv_comps = {}
    for a in range(1, p + 1):
        for b in range(a + 1, p + 1):
            if not m:
                continue
            vec = poly_mat_vec(tau, q1.curv.get((a, b)))
            tia = poly_mat_vec(tau_inv, iso.phi_col(a))
            tib = poly_mat_vec(tau_inv, iso.phi_col(b))
            inner = [
                u - v
                for u, v in zip(q1.conn.apply(b, tia), q1.conn.apply(a, tib))
            ]
            vec = [u + v for u, v in zip(vec, poly_mat_vec(tau, inner))]
            br = fiber.bracket(iso.phi_col(a), iso.phi_col(b))
            vec = [u + v for u, v in zip(vec, br)]
            if any(vec):
                curv_comps[(a, b)] = vec
    curv2 = GValuedForm(patch, m, 2, curv_comps)

    h_comps = {}
    for key in combinations(range(1, p + 1), 3):
        a, b, c = key
        value = q1.hform.get(key)
        if m:
            phi_a = iso.phi_col(a)
            phi_b = iso.phi_col(b)
            phi_c = iso.phi_col(c)
            value = value - fiber.pairing(phi_a, fiber.bracket(phi_b, phi_c)).scale(2)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            if m:
                px = iso.phi_col(x)
                tz = poly_mat_vec(tau_inv, iso.phi_col(z))
                inner = poly_mat_vec(tau, q1.conn.apply(y, tz))
                ryz = poly_mat_vec(tau, q1.curv.get((y, z)))
                value = value + fiber.pairing(px, [u - v for u, v in zip(inner, ryz)]).scale(2)
            value = value + iso.beta[y - 1][z - 1].diff(x)
        if value:
            h_comps[key] = value
    hform2 = FForm(patch, 3, h_comps)
    return Quintuple(patch, fiber, conn2, curv2, hform2)


def intertwining_report(q1: Quintuple, q2: Quintuple, iso: IsoData, degree_cap: int = 1) -> Report:
    """Check that the section map takes the bracket of q1 to that of q2."""
    report = Report()
    family, _ = q1.axiom_family(degree_cap)
    patch, fiber = q1.patch, q1.fiber
    wit = None
    pair_wit = None
    images = [apply_iso(patch, fiber, iso, e) for e in family]
    for i, e1 in enumerate(family):
        for j, e2 in enumerate(family):
            if pair_wit is None:
                d = q1.pairing(e1, e2) - q2.pairing(images[i], images[j])
                if d:
                    pair_wit = Witness("<e1,e2> - <Theta e1, Theta e2>", (i + 1, j + 1), str(d))
            if wit is None:
                lhs = apply_iso(patch, fiber, iso, q1.dorfman(e1, e2))
                rhs = q2.dorfman(images[i], images[j])
                d = lhs - rhs
                if not d.is_zero():
                    comp = next(c for c in d.components() if c)
                    wit = Witness(
                        "Theta[[e1,e2]]_1 - [[Theta e1,Theta e2]]_2", (i + 1, j + 1), str(comp)
                    )
    if pair_wit is None:
        report.add_pass("pairing_preserved")
    else:
        report.add_fail("pairing_preserved", pair_wit)
    if wit is None:
        report.add_pass("dorfman_intertwined")
    else:
        report.add_fail("dorfman_intertwined", wit)
    return report


# -- the two exact 2-forms and their closed-form differentials -------------


def phi_form(patch: Patch, dim: int, j: GValuedForm, fiber: QuadLieAlgebra) -> AForm:
    """Phi_J(r+x, s+y) = <r, J y> - <s, J x>."""
    comps = {}
    for i in range(1, dim + 1):
        ei = [Poly.const(patch.n, 1 if l == i else 0) for l in range(1, dim + 1)]
        for a in range(1, patch.p + 1):
            value = fiber.pairing(ei, j.get((a,)))
            if value:
                comps[((i,), (a,))] = value
    return AForm(patch, dim, 2, comps)


def phi_form_differential(alg: QuadAlgebroid, j: GValuedForm) -> AForm:
    """Closed-form differential of Phi_J on the coordinate frame."""
    patch, fiber = alg.patch, alg.fiber
    m, p, n = fiber.dim, patch.p, patch.n
    comps = {}
    unit = lambda k: [Poly.const(n, 1 if l == k else 0) for l in range(1, m + 1)]
    for gidx in combinations(range(1, m + 1), 2):
        i, jj = gidx
        bracket = fiber.bracket(unit(i), unit(jj))
        for a in range(1, p + 1):
            value = -fiber.pairing(bracket, j.get((a,)))
            if value:
                comps[(gidx, (a,))] = value
    for k in range(1, m + 1):
        ek = unit(k)
        for fidx in combinations(range(1, p + 1), 2):
            a, b = fidx
            vec = [
                u - v
                for u, v in zip(
                    alg.conn.apply(b, j.get((a,))), alg.conn.apply(a, j.get((b,)))
                )
            ]
            value = fiber.pairing(ek, vec)
            if value:
                comps[((k,), fidx)] = value
    for fidx in combinations(range(1, p + 1), 3):
        a, b, c = fidx
        value = -(
            fiber.pairing(j.get((a,)), alg.curv.get((b, c)))
            + fiber.pairing(j.get((b,)), alg.curv.get((c, a)))
            + fiber.pairing(j.get((c,)), alg.curv.get((a, b)))
        )
        if value:
            comps[((), fidx)] = value
    return AForm(patch, m, 3, comps)


def psi_form(patch: Patch, dim: int, k: List[List[Poly]]) -> AForm:
    """Psi_K(r+x, s+y) = <x|K y> - <y|K x> with k[a][b] = <d_a|K d_b>."""
    comps = {}
    for a in range(1, patch.p + 1):
        for b in range(a + 1, patch.p + 1):
            value = k[a - 1][b - 1] - k[b - 1][a - 1]
            if value:
                comps[((), (a, b))] = value
    return AForm(patch, dim, 2, comps)


def psi_form_differential(patch: Patch, dim: int, k: List[List[Poly]]) -> AForm:
    """Closed-form differential of Psi_K on the coordinate frame."""
    comps = {}
    for fidx in combinations(range(1, patch.p + 1), 3):
        a, b, c = fidx
        value = (
            k[a - 1][b - 1].diff(c)
            - k[a - 1][c - 1].diff(b)
            + k[b - 1][c - 1].diff(a)
            - k[b - 1][a - 1].diff(c)
            + k[c - 1][a - 1].diff(b)
            - k[c - 1][b - 1].diff(a)
        )
        if value:
            comps[((), fidx)] = value
    return AForm(patch, dim, 3, comps)


# -- canned isomorphisms ------------------------------------------------------


def hoist_shift_iso(q: Quintuple, j: GValuedForm) -> Tuple[IsoData, Quintuple]:
    """Shift by a fiber-valued 1-form: tau = id, phi = J, beta = -J^* J."""
    patch, fiber = q.patch, q.fiber
    m, p, n = fiber.dim, patch.p, patch.n
    beta = [[Poly.zero(n)] * p for _ in range(p)]
    for a in range(1, p + 1):
        for b in range(1, p + 1):
            beta[b - 1][a - 1] = -fiber.pairing(j.get((a,)), j.get((b,)))
    iso = IsoData(poly_mat_identity(n, m), j, beta)

    gamma2 = []
    for a in range(1, p + 1):
        ad_j = fiber.ad_matrix(j.get((a,)))
        base = q.conn.gamma[a - 1]
        gamma2.append([[base[i][l] - ad_j[i][l] for l in range(m)] for i in range(m)])
    conn2 = GConnection(patch, m, gamma2)

    curv_comps = {}
    for a in range(1, p + 1):
        for b in range(a + 1, p + 1):
            vec = q.curv.get((a, b))
            vec = [
                u + v - w + z
                for u, v, w, z in zip(
                    vec,
                    fiber.bracket(j.get((a,)), j.get((b,))),
                    q.conn.apply(a, j.get((b,))),
                    q.conn.apply(b, j.get((a,))),
                )
            ]
            if any(vec):
                curv_comps[(a, b)] = vec
    curv2 = GValuedForm(patch, m, 2, curv_comps)

    h_comps = {}
    for key in combinations(range(1, p + 1), 3):
        a, b, c = key
        value = q.hform.get(key)
        value = value - fiber.pairing(
            j.get((a,)), fiber.bracket(j.get((b,)), j.get((c,)))
        ).scale(2)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            vec = [
                u - v - w.scale(2)
                for u, v, w in zip(
                    q.conn.apply(y, j.get((z,))),
                    q.conn.apply(z, j.get((y,))),
                    q.curv.get((y, z)),
                )
            ]
            value = value + fiber.pairing(j.get((x,)), vec)
        if value:
            h_comps[key] = value
    hform2 = FForm(patch, 3, h_comps)
    return iso, Quintuple(patch, fiber, conn2, curv2, hform2)


def omega_shift_iso(q: Quintuple, omega: FForm) -> Tuple[IsoData, Quintuple]:
    """Shift of the leafwise 3-form by an exact form: beta = -omega-flat."""
    if omega.degree != 2 or omega.patch != q.patch:
        raise ValueError("omega must be a leafwise 2-form on the patch")
    patch, fiber = q.patch, q.fiber
    m, p, n = fiber.dim, patch.p, patch.n
    beta = [[Poly.zero(n)] * p for _ in range(p)]
    for a in range(1, p + 1):
        for b in range(1, p + 1):
            beta[b - 1][a - 1] = -omega.get((a, b))
    iso = IsoData(poly_mat_identity(n, m), GValuedForm.zero(patch, m, 1), beta)
    target = Quintuple(patch, fiber, q.conn, q.curv, q.hform + leafwise_d(omega))
    return iso, target


def central_shift_iso(q: Quintuple, j: GValuedForm) -> Tuple[IsoData, Quintuple]:
    """Same-hoist shift: requires J centered in the fiber and curl-free.

    Raises ValueError with a witness when the hypotheses fail.
    """
    patch, fiber = q.patch, q.fiber
    m, p, n = fiber.dim, patch.p, patch.n
    center = fiber.center()
    span_rows = [list(z) for z in center]
    for a in range(1, p + 1):
        col = j.get((a,))
        for exp in sorted({e for poly in col for e in poly.terms}):
            vec = [Fraction(poly.terms.get(exp, 0)) for poly in col]
            if _not_in_span(span_rows, vec):
                raise ValueError(
                    "central shift rejected: J(d_%d) is not valued in the fiber center" % a
                )
    for a in range(1, p + 1):
        for b in range(a + 1, p + 1):
            curl = [
                u - v
                for u, v in zip(q.conn.apply(a, j.get((b,))), q.conn.apply(b, j.get((a,))))
            ]
            if any(curl):
                raise ValueError(
                    "central shift rejected: nabla_%d J_%d - nabla_%d J_%d is nonzero"
                    % (a, b, b, a)
                )
    half_j_comps = {}
    for a in range(1, p + 1):
        col = [v.scale(HALF) for v in j.get((a,))]
        if any(col):
            half_j_comps[(a,)] = col
    beta = [[Poly.zero(n)] * p for _ in range(p)]
    for a in range(1, p + 1):
        for b in range(1, p + 1):
            beta[b - 1][a - 1] = -fiber.pairing(j.get((a,)), j.get((b,))).scale(
                Fraction(1, 4)
            )
    iso = IsoData(
        poly_mat_identity(n, m), GValuedForm(patch, m, 1, half_j_comps), beta
    )
    h_comps = {}
    for key in combinations(range(1, p + 1), 3):
        a, b, c = key
        value = q.hform.get(key) - (
            fiber.pairing(j.get((a,)), q.curv.get((b, c)))
            + fiber.pairing(j.get((b,)), q.curv.get((c, a)))
            + fiber.pairing(j.get((c,)), q.curv.get((a, b)))
        )
        if value:
            h_comps[key] = value
    target = Quintuple(patch, fiber, q.conn, q.curv, FForm(patch, 3, h_comps))
    return iso, target


def _not_in_span(rows: List[List[Fraction]], vec: List[Fraction]) -> bool:
    from .charform import _rank

    if not any(vec):
        return False
    if not rows:
        return True
    return _rank(rows + [vec]) != _rank(rows)


# -- pullbacks, intrinsic forms, the coboundary identity ---------------------


def pullback_aform(
    patch: Patch, fiber: QuadLieAlgebra, c: AForm, tau: List[List[Poly]], phi: GValuedForm
) -> AForm:
    """Pull back a form along r + x -> tau(r) + phi(x) + x."""
    m = fiber.dim
    images_g = [
        ASection([tau[l][i] for l in range(m)], [Poly.zero(patch.n)] * patch.p)
        for i in range(m)
    ]
    images_f = []
    for a in range(1, patch.p + 1):
        x = [Poly.zero(patch.n)] * patch.p
        x[a - 1] = patch.one()
        images_f.append(ASection(phi.get((a,)), x))
    comps = {}
    for key in aform_keys(patch, m, c.degree):
        gidx, fidx = key
        args = [images_g[i - 1] for i in gidx] + [images_f[a - 1] for a in fidx]
        value = c.eval_sections(args)
        if value:
            comps[key] = value
    return AForm(patch, m, c.degree, comps)


def is_ample_automorphism(q: Quintuple, tau: List[List[Poly]], phi: GValuedForm) -> Report:
    """Check that (tau, phi) preserves the ample bracket of q exactly."""
    report = Report()
    patch, fiber = q.patch, q.fiber
    report.extend(validate_iso(patch, fiber, IsoData(tau, phi, [[Poly.zero(patch.n)] * patch.p for _ in range(patch.p)])))
    # drop the pairing condition: it constrains beta, which an ample map lacks
    report.records = [r for r in report.records if r.name != "iso_pairing_condition"]
    beta = [[Poly.zero(patch.n)] * patch.p for _ in range(patch.p)]
    moved = transport(q, IsoData(tau, phi, beta))
    wit = None
    if moved.conn != q.conn:
        wit = Witness("transported connection differs", (), "nonzero")
    elif moved.curv != q.curv:
        wit = Witness("transported curvature differs", (), "nonzero")
    if wit is None:
        report.add_pass("ample_bracket_preserved")
    else:
        report.add_fail("ample_bracket_preserved", wit)
    return report


def intrinsic_form(
    q: Quintuple, tau: List[List[Poly]], phi: GValuedForm, c: AForm
) -> AForm:
    """sigma^* C - C for an ample automorphism sigma = (tau, phi)."""
    gate = is_ample_automorphism(q, tau, phi)
    if not gate.ok:
        raise ValueError(
            "(tau, phi) is not an ample automorphism: %s" % gate.failures()[0].name
        )
    pulled = pullback_aform(q.patch, q.fiber, c, tau, phi)
    return pulled - c


def coboundary_identity_check(q1: Quintuple, iso: IsoData) -> Report:
    """Pulled-back canonical forms differ by d(Psi_beta/2 + Phi_{tau^-1 phi})."""
    report = Report()
    patch, fiber = q1.patch, q1.fiber
    m = fiber.dim
    q2 = transport(q1, iso)
    c1 = standard_three_form(q1)
    c2 = standard_three_form(q2)
    lhs = pullback_aform(patch, fiber, c2, iso.tau, iso.phi) - c1

    tau_inv = poly_mat_inverse_constant_det(iso.tau) if m else []
    j_comps = {}
    for a in range(1, patch.p + 1):
        col = poly_mat_vec(tau_inv, iso.phi_col(a)) if m else []
        if any(col):
            j_comps[(a,)] = col
    jform = GValuedForm(patch, m, 1, j_comps)
    primitive = psi_form(patch, m, iso.beta).scale(HALF) + phi_form(patch, m, jform, fiber)
    rhs = ce_differential(QuadAlgebroid.of(q1), primitive)

    diff = lhs - rhs
    wit = None
    for key in diff.keys():
        wit = Witness("iota^* C2 - C1 - d(Psi/2 + Phi)", key[0] + key[1], str(diff.comps[key]))
        break
    if wit is None:
        report.add_pass("coboundary_identity")
    else:
        report.add_fail("coboundary_identity", wit)
    return report
