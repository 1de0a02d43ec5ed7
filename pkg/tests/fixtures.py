"""Shared fixture quintuples and seeded generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations
from typing import Tuple

from courant import (
    FForm,
    GConnection,
    GValuedForm,
    IsoData,
    Patch,
    Poly,
    QuadLieAlgebra,
    Quintuple,
    abelian,
    direct_sum,
    su2,
)
from courant.linalg import poly_mat_from_rational
from courant.geometry import FConnection


def fixture_a() -> Quintuple:
    """Exact case: no fiber, two leaf coordinates, H forced to zero."""
    patch = Patch(2, 2)
    fiber = abelian(0)
    return Quintuple(
        patch,
        fiber,
        GConnection.flat(patch, 0),
        GValuedForm.zero(patch, 0, 2),
        FForm.zero(patch, 3),
    )


def fixture_b() -> Quintuple:
    """Point base with an su(2) fiber: the quadratic Lie algebra itself."""
    patch = Patch(0, 0)
    fiber = su2()
    return Quintuple(
        patch,
        fiber,
        GConnection.flat(patch, 3),
        GValuedForm.zero(patch, 3, 2),
        FForm.zero(patch, 3),
    )


def fixture_c() -> Quintuple:
    """Abelian line fiber over a 4-dim leaf with a nonzero obstruction pairing."""
    patch = Patch(4, 4)
    fiber = abelian(1)
    one = patch.one()
    curv = GValuedForm(patch, 1, 2, {(1, 2): [one], (3, 4): [one]})
    hform = FForm(patch, 3, {(2, 3, 4): patch.var(1).scale(2)})
    return Quintuple(patch, fiber, GConnection.flat(patch, 1), curv, hform)


def su2_adjoint_connection(patch: Patch, fiber: QuadLieAlgebra) -> GConnection:
    """Gamma_a = ad(e_a) for the first p fiber basis vectors."""
    gamma = []
    for a in range(1, patch.p + 1):
        unit = [patch.one() if k == a else patch.zero() for k in range(1, fiber.dim + 1)]
        gamma.append(fiber.ad_matrix(unit))
    return GConnection(patch, fiber.dim, gamma)


def fixture_d() -> Quintuple:
    """su(2) fiber over a 2-dim leaf with adjoint connection, R_12 = e3."""
    patch = Patch(2, 2)
    fiber = su2()
    conn = su2_adjoint_connection(patch, fiber)
    curv = GValuedForm(
        patch, 3, 2, {(1, 2): [patch.zero(), patch.zero(), patch.one()]}
    )
    return Quintuple(patch, fiber, conn, curv, FForm.zero(patch, 3))


def fixture_d_extended() -> Quintuple:
    """Fixture D with a central line adjoined to the fiber (su(2) + R)."""
    patch = Patch(2, 2)
    fiber = direct_sum(su2(), abelian(1))
    gamma = []
    for a in range(1, 3):
        unit = [patch.one() if k == a else patch.zero() for k in range(1, 5)]
        gamma.append(fiber.ad_matrix(unit))
    conn = GConnection(patch, 4, gamma)
    curv = GValuedForm(
        patch, 4, 2, {(1, 2): [patch.zero(), patch.zero(), patch.one(), patch.zero()]}
    )
    return Quintuple(patch, fiber, conn, curv, FForm.zero(patch, 3))


def fixture_exact() -> Quintuple:
    """Exact case over a 3-dim leaf with a nonzero closed leafwise 3-form."""
    patch = Patch(3, 3)
    fiber = abelian(0)
    hform = FForm(patch, 3, {(1, 2, 3): patch.one() + patch.var(1)})
    return Quintuple(
        patch, fiber, GConnection.flat(patch, 0), GValuedForm.zero(patch, 0, 2), hform
    )


def fixture_product() -> Quintuple:
    """Product of an su(2) fiber with a flat 2-dim leaf: flat, no curvature."""
    patch = Patch(2, 2)
    fiber = su2()
    return Quintuple(
        patch,
        fiber,
        GConnection.flat(patch, 3),
        GValuedForm.zero(patch, 3, 2),
        FForm.zero(patch, 3),
    )


ALL_FIXTURES = (
    ("A", fixture_a),
    ("B", fixture_b),
    ("C", fixture_c),
    ("D", fixture_d),
)


# -- seeded generators --------------------------------------------------------


def rand_fraction(rng: random.Random, num: int = 3, den: int = 3) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_poly(rng: random.Random, nvars: int, max_degree: int, terms: int = 3) -> Poly:
    out = {}
    for _ in range(terms):
        exp = [0] * nvars
        budget = rng.randint(0, max_degree)
        for _ in range(budget):
            if nvars:
                exp[rng.randrange(nvars)] += 1
        out[tuple(exp)] = out.get(tuple(exp), 0) + rand_fraction(rng)
    return Poly(nvars, out)


def cayley_so3(rng: random.Random):
    """Rational special orthogonal 3x3 matrix via the Cayley transform."""
    a, b, c = (rand_fraction(rng, 2, 2) for _ in range(3))
    s = [
        [Fraction(0), a, b],
        [-a, Fraction(0), c],
        [-b, -c, Fraction(0)],
    ]
    eye = [[Fraction(1 if i == j else 0) for j in range(3)] for i in range(3)]
    plus = [[eye[i][j] + s[i][j] for j in range(3)] for i in range(3)]
    minus = [[eye[i][j] - s[i][j] for j in range(3)] for i in range(3)]
    # invert (I + S) exactly
    det = (
        plus[0][0] * (plus[1][1] * plus[2][2] - plus[1][2] * plus[2][1])
        - plus[0][1] * (plus[1][0] * plus[2][2] - plus[1][2] * plus[2][0])
        + plus[0][2] * (plus[1][0] * plus[2][1] - plus[1][1] * plus[2][0])
    )
    cof = [[Fraction(0)] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            rows = [r for r in range(3) if r != i]
            cols = [c2 for c2 in range(3) if c2 != j]
            minor = (
                plus[rows[0]][cols[0]] * plus[rows[1]][cols[1]]
                - plus[rows[0]][cols[1]] * plus[rows[1]][cols[0]]
            )
            cof[j][i] = minor if (i + j) % 2 == 0 else -minor
    inv = [[cof[i][j] / det for j in range(3)] for i in range(3)]
    return [
        [sum(minus[i][k] * inv[k][j] for k in range(3)) for j in range(3)]
        for i in range(3)
    ]


def seeded_iso_fixture_d(seed: int, q: Quintuple) -> IsoData:
    """Constant rotation tau, degree-1 phi, beta solved plus a random skew part."""
    rng = random.Random(seed)
    patch, fiber = q.patch, q.fiber
    n, p, m = patch.n, patch.p, fiber.dim
    tau = poly_mat_from_rational(n, cayley_so3(rng))
    phi_comps = {}
    for a in range(1, p + 1):
        col = [rand_poly(rng, n, 1, terms=2) for _ in range(m)]
        if any(col):
            phi_comps[(a,)] = col
    phi = GValuedForm(patch, m, 1, phi_comps)
    beta = [[Poly.zero(n) for _ in range(p)] for _ in range(p)]
    for a in range(1, p + 1):
        for b in range(1, p + 1):
            beta[b - 1][a - 1] = -fiber.pairing(phi.get((a,)), phi.get((b,)))
    for a in range(1, p + 1):
        for b in range(a + 1, p + 1):
            skew = rand_poly(rng, n, 1, terms=2)
            beta[b - 1][a - 1] = beta[b - 1][a - 1] + skew
            beta[a - 1][b - 1] = beta[a - 1][b - 1] - skew
    return IsoData(tau, phi, beta)


def seeded_ample_automorphism(seed: int, q: Quintuple):
    """(tau, phi) with tau a rotation and phi_a = tau(e_a) - e_a."""
    rng = random.Random(seed)
    patch, fiber = q.patch, q.fiber
    n, p, m = patch.n, patch.p, fiber.dim
    tau = poly_mat_from_rational(n, cayley_so3(rng))
    phi_comps = {}
    for a in range(1, p + 1):
        col = [tau[k][a - 1] - (patch.one() if k == a - 1 else patch.zero()) for k in range(m)]
        if any(col):
            phi_comps[(a,)] = col
    return tau, GValuedForm(patch, m, 1, phi_comps)


def seeded_gvalued_one_form(seed: int, q: Quintuple, max_degree: int = 2) -> GValuedForm:
    rng = random.Random(seed)
    patch, m = q.patch, q.fiber.dim
    comps = {}
    for a in range(1, patch.p + 1):
        col = [rand_poly(rng, patch.n, max_degree, terms=2) for _ in range(m)]
        if any(col):
            comps[(a,)] = col
    return GValuedForm(patch, m, 1, comps)


def seeded_endomorphism_field(seed: int, q: Quintuple, max_degree: int = 2):
    """A p x p polynomial matrix (an F -> F* map in the beta convention)."""
    rng = random.Random(seed)
    patch = q.patch
    return [
        [rand_poly(rng, patch.n, max_degree, terms=2) for _ in range(patch.p)]
        for _ in range(patch.p)
    ]


MUTATION_CLASSES = ("metric_skew", "curvature_identity_gamma", "curvature_identity_r")


def mutate_fixture_d(seed: int) -> Tuple[Quintuple, str]:
    """One seeded invalid variant of fixture D.

    Class ``metric_skew`` adds a traceless symmetric error to one Gamma,
    breaking metric invariance and the derivation property while keeping
    the canonical 3-form closed.  The two curvature classes perturb
    Gamma by an adjoint matrix or R by a constant vector, breaking only
    the curvature matching identity.  The leaf rank is 2, so the Bianchi
    and Pontryagin identities are vacuous and unbreakable here.
    """
    rng = random.Random(seed)
    q = fixture_d()
    patch, fiber = q.patch, q.fiber
    cls = MUTATION_CLASSES[seed % len(MUTATION_CLASSES)]
    a = rng.randrange(patch.p)
    gamma = [
        [[entry for entry in row] for row in mat] for mat in q.conn.gamma
    ]
    if cls == "metric_skew":
        lam = Fraction(rng.randint(1, 3))
        mu = Fraction(rng.randint(0, 2))
        err = [
            [lam, mu, Fraction(0)],
            [mu, -lam, Fraction(0)],
            [Fraction(0), Fraction(0), Fraction(0)],
        ]
        for i in range(3):
            for j in range(3):
                if err[i][j]:
                    gamma[a][i][j] = gamma[a][i][j] + Poly.const(patch.n, err[i][j])
        conn = GConnection(patch, 3, gamma)
        return Quintuple(patch, fiber, conn, q.curv, q.hform), cls
    if cls == "curvature_identity_gamma":
        v = [Fraction(rng.randint(-2, 2)) for _ in range(3)]
        if not any(v):
            v[0] = Fraction(1)
        ad = fiber.ad_matrix([Poly.const(patch.n, t) for t in v])
        # perturb Gamma_2 with an x1 factor: the d_1 Gamma_2 term then picks
        # up ad(v) itself, so the curvature matching always breaks
        for i in range(3):
            for j in range(3):
                if ad[i][j]:
                    gamma[1][i][j] = gamma[1][i][j] + ad[i][j] * patch.var(1)
        conn = GConnection(patch, 3, gamma)
        return Quintuple(patch, fiber, conn, q.curv, q.hform), cls
    v = [Fraction(rng.randint(-2, 2)) for _ in range(3)]
    if not any(v):
        v[2] = Fraction(1)
    vec = [u + Poly.const(patch.n, t) for u, t in zip(q.curv.get((1, 2)), v)]
    curv = GValuedForm(patch, 3, 2, {(1, 2): vec})
    return Quintuple(patch, fiber, q.conn, curv, q.hform), cls
