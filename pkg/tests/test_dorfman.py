import random
from fractions import Fraction

import pytest

from courant import Poly, Section, monomials
from fixtures import (
    ALL_FIXTURES,
    fixture_a,
    fixture_c,
    fixture_d,
    mutate_fixture_d,
    rand_poly,
)
from courant.geometry import FForm


def rand_section(rng, q, max_degree=2):
    p, m, n = q.patch.p, q.fiber.dim, q.patch.n
    return Section(
        [rand_poly(rng, n, max_degree, terms=2) for _ in range(p)],
        [rand_poly(rng, n, max_degree, terms=2) for _ in range(m)],
        [rand_poly(rng, n, max_degree, terms=2) for _ in range(p)],
    )


# -- pseudo-metric, anchor, D ---------------------------------------------------


def test_pairing_examples():
    q = fixture_d()
    assert q.pairing(q.delta(1), q.coord(1)) == Poly.const(2, Fraction(1, 2))
    assert not q.pairing(q.coord(1), q.coord(2))
    assert not q.pairing(q.delta(1), q.delta(2))
    assert not q.pairing(q.delta(1), q.delta(1))
    for i in range(1, 4):
        for j in range(1, 4):
            expected = Poly.const(2, q.fiber.g[i - 1][j - 1])
            assert q.pairing(q.fiber_elem(i), q.fiber_elem(j)) == expected


def test_anchor_returns_x_part():
    q = fixture_d()
    rng = random.Random(0)
    e = rand_section(rng, q)
    assert q.anchor(e) == e.x


def test_d_operator_against_pairing_oracle():
    # <D f, u> = rho(u) f / 2 for every frame section u
    q = fixture_d()
    rng = random.Random(1)
    for _ in range(10):
        f = rand_poly(rng, 2, 3)
        df = q.d_operator(f)
        for u in q.frame_sections():
            assert q.pairing(df, u) == q.anchor_apply(u, f).scale(Fraction(1, 2))
    assert q.d_operator(q.patch.var(1)) == q.delta(1)
    assert q.d_operator(Poly.const(2, 7)).is_zero()


# -- the bracket on fixtures ----------------------------------------------------


def test_fixture_d_frame_brackets():
    q = fixture_d()
    one, zero = q.patch.one(), q.patch.zero()
    assert q.dorfman(q.coord(1), q.coord(2)) == Section([zero, zero], [zero, zero, one], [zero, zero])
    assert q.dorfman(q.coord(1), q.fiber_elem(2)) == Section([zero, zero], [zero, zero, one], [zero, zero])
    # Q(d1, e3) pairs e3 with R_12 = e3 on the second dual slot
    assert q.q_form(q.coord(1).x, q.fiber_elem(3).r) == [zero, one]
    assert q.p_form(q.fiber_elem(1).r, q.fiber_elem(2).r) == [
        q.fiber.pairing(q.fiber_elem(2).r, q.nabla(1, q.fiber_elem(1).r)).scale(2),
        q.fiber.pairing(q.fiber_elem(2).r, q.nabla(2, q.fiber_elem(1).r)).scale(2),
    ]


def test_p_form_flat_constant_zero():
    q = fixture_c()
    r1 = [q.patch.one()]
    r2 = [q.patch.one()]
    assert all(not v for v in q.p_form(r1, r2))


def test_q_form_zero_curvature():
    q = fixture_a()
    assert q.q_form(q.coord(1).x, []) == [q.patch.zero(), q.patch.zero()]


def test_exact_case_bracket_is_h_twisted():
    # no fiber: [[x, y]] = H(x,y,-) + [x,y]
    q = fixture_a()
    rng = random.Random(2)
    for _ in range(10):
        x = rand_section(rng, q)
        x.xi = [q.patch.zero()] * 2
        y = rand_section(rng, q)
        y.xi = [q.patch.zero()] * 2
        br = q.dorfman(x, y)
        assert br.x == q.vf_bracket(x.x, y.x)
        assert br.xi == q.h_contract(x.x, y.x)


def test_fiber_projection_of_fiber_bracket():
    # the bracket of two fiber sections projects to the fiber bracket
    q = fixture_d()
    rng = random.Random(3)
    for _ in range(10):
        r1 = [rand_poly(rng, 2, 2) for _ in range(3)]
        r2 = [rand_poly(rng, 2, 2) for _ in range(3)]
        e1 = q.section([q.patch.zero()] * 2, r1, [q.patch.zero()] * 2)
        e2 = q.section([q.patch.zero()] * 2, r2, [q.patch.zero()] * 2)
        assert q.dorfman(e1, e2).r == q.fiber.bracket(r1, r2)


# -- Leibniz rules as unconditional identities ----------------------------------


def leibniz_right_defect(q, e1, e2, f):
    lhs = q.dorfman(e1, e2.mul(f))
    rhs = q.dorfman(e1, e2).mul(f) + e2.mul(q.anchor_apply(e1, f))
    return lhs - rhs


def leibniz_left_defect(q, e1, e2, f):
    lhs = q.dorfman(e1.mul(f), e2)
    rhs = q.dorfman(e1, e2).mul(f) - e1.mul(q.anchor_apply(e2, f))
    pair = q.pairing(e1, e2)
    if pair:
        rhs = rhs + q.d_operator(f).mul(pair.scale(2))
    return lhs - rhs


def test_leibniz_rules_hold_for_general_sections():
    # both rules are calculus identities of the closed-form bracket: they
    # hold for arbitrary polynomial sections, even over invalid data
    rng = random.Random(4)
    quintuples = [fixture_d(), fixture_c(), mutate_fixture_d(0)[0], mutate_fixture_d(1)[0]]
    for q in quintuples:
        for _ in range(8):
            e1 = rand_section(rng, q)
            e2 = rand_section(rng, q)
            f = rand_poly(rng, q.patch.n, 2)
            assert leibniz_right_defect(q, e1, e2, f).is_zero()
            assert leibniz_left_defect(q, e1, e2, f).is_zero()


def test_axiom4_shape_on_family():
    q = fixture_d()
    family, _ = q.axiom_family(1)
    for e1 in family[:20]:
        for e2 in family[:20]:
            d = (
                q.dorfman(e1, e2)
                + q.dorfman(e2, e1)
                - q.d_operator(q.pairing(e1, e2)).scale(2)
            )
            assert d.is_zero()


def test_axiom2_anchor_homomorphism_random():
    q = fixture_d()
    rng = random.Random(5)
    for _ in range(10):
        e1 = rand_section(rng, q)
        e2 = rand_section(rng, q)
        assert q.anchor(q.dorfman(e1, e2)) == q.vf_bracket(e1.x, e2.x)


def test_courant_bracket_is_skew():
    q = fixture_d()
    rng = random.Random(6)
    for _ in range(10):
        e1 = rand_section(rng, q, 1)
        e2 = rand_section(rng, q, 1)
        d = q.courant(e1, e2) + q.courant(e2, e1)
        assert d.is_zero()


# -- validation -----------------------------------------------------------------


def test_all_fixtures_validate():
    for name, build in ALL_FIXTURES:
        report = build().validate()
        assert report.ok, (name, [r.name for r in report.failures()])


def test_fixture_c_broken_h_residual():
    q = fixture_c()
    broken = type(q)(q.patch, q.fiber, q.conn, q.curv, FForm.zero(q.patch, 3))
    report = broken.validate()
    bad = [r for r in report.failures()]
    assert [r.name for r in bad] == ["dF_H_equals_RR"]
    witness = bad[0].witness
    assert witness.indices == (1, 2, 3, 4)
    assert witness.residual == "2"


def test_axiom_check_passes_all_fixtures():
    for name, build in ALL_FIXTURES:
        report = build().check_axioms(1)
        assert report.ok, (name, [r.name for r in report.failures()])


def test_axiom_methods_agree_on_valid_fixtures():
    for build, caps in ((fixture_a, (0, 1, 2)), (fixture_d, (0, 1))):
        q = build()
        for cap in caps:
            reduced = q.check_axioms(cap)
            direct = q.check_axioms(cap, method="direct")
            red = {r.name: r.status for r in reduced if r.name.startswith("axiom")}
            dir_ = {r.name: r.status for r in direct}
            assert red == dir_


def test_axiom_methods_agree_on_mutants():
    for seed in range(9):
        q, _cls = mutate_fixture_d(seed)
        reduced = q.check_axioms(1)
        direct = q.check_axioms(1, method="direct")
        assert not reduced.ok and not direct.ok
        red = {r.name: r.status for r in reduced if r.name.startswith("axiom")}
        dir_ = {r.name: r.status for r in direct}
        assert red == dir_


def test_validate_iff_axioms_on_mutants():
    for seed in range(12):
        q, _cls = mutate_fixture_d(seed)
        assert not q.validate().ok
        assert not q.check_axioms(1).ok


def test_broken_h_fails_axiom_1():
    q = fixture_c()
    broken = type(q)(q.patch, q.fiber, q.conn, q.curv, FForm.zero(q.patch, 3))
    report = broken.check_axioms(1)
    assert not report["axiom_1"].ok


def test_exact_line_field_all_axioms():
    # one-dimensional leaf, no fiber, no H: everything reduces to calculus
    from courant import GConnection, GValuedForm, Patch, Quintuple, abelian

    patch = Patch(1, 1)
    q = Quintuple(
        patch,
        abelian(0),
        GConnection.flat(patch, 0),
        GValuedForm.zero(patch, 0, 2),
        FForm.zero(patch, 3),
    )
    assert q.validate().ok
    assert q.check_axioms(2).ok


def test_monomials_enumeration():
    monos = monomials(2, 2)
    assert [str(m) for m in monos] == ["1", "x2", "x1", "x2^2", "x1*x2", "x1^2"]
    assert len(monomials(4, 2)) == 15
    assert [str(m) for m in monomials(0, 3)] == ["1"]


def test_section_shape_mismatch():
    q = fixture_d()
    with pytest.raises(ValueError):
        q.section([q.patch.zero()], [q.patch.zero()] * 3, [q.patch.zero()] * 2)


def test_bracket_and_pairing_shape_guards():
    qd = fixture_d()
    qc = fixture_c()
    foreign = qc.zero_section()
    with pytest.raises(ValueError):
        qd.dorfman(qd.zero_section(), foreign)
    with pytest.raises(ValueError):
        qd.pairing(foreign, qd.zero_section())
