import random
from fractions import Fraction

import pytest

from courant import (
    FForm,
    GValuedForm,
    Poly,
    QuadAlgebroid,
    apply_iso,
    ce_differential,
    central_shift_iso,
    coboundary_identity_check,
    compose_iso,
    hoist_shift_iso,
    identity_iso,
    intertwining_report,
    intrinsic_form,
    is_ample_automorphism,
    is_horizontal,
    leafwise_d,
    omega_shift_iso,
    phi_form,
    phi_form_differential,
    psi_form,
    psi_form_differential,
    pullback_aform,
    standard_three_form,
    transport,
    validate_iso,
)
from courant.linalg import poly_mat_from_rational
from courant.morphism import IsoData
from fixtures import (
    cayley_so3,
    fixture_c,
    fixture_d,
    fixture_d_extended,
    fixture_exact,
    rand_poly,
    seeded_ample_automorphism,
    seeded_endomorphism_field,
    seeded_gvalued_one_form,
    seeded_iso_fixture_d,
)
from test_dorfman import rand_section


# -- validation -------------------------------------------------------------


def test_identity_iso_valid():
    q = fixture_d()
    iso = identity_iso(q.patch, 3)
    assert validate_iso(q.patch, q.fiber, iso).ok


def test_skew_beta_iso_valid():
    q = fixture_d()
    iso = identity_iso(q.patch, 3)
    skew = rand_poly(random.Random(0), 2, 1)
    iso.beta[1][0] = skew
    iso.beta[0][1] = -skew
    assert validate_iso(q.patch, q.fiber, iso).ok


def test_rotation_tau_valid():
    q = fixture_d()
    for seed in range(5):
        tau = poly_mat_from_rational(2, cayley_so3(random.Random(seed)))
        iso = identity_iso(q.patch, 3)
        iso.tau = tau
        assert validate_iso(q.patch, q.fiber, iso).ok


def test_phi_without_beta_fails_pairing_condition():
    q = fixture_d()
    iso = identity_iso(q.patch, 3)
    comps = {(1,): [q.patch.one(), q.patch.zero(), q.patch.zero()]}
    iso.phi = GValuedForm(q.patch, 3, 1, comps)
    report = validate_iso(q.patch, q.fiber, iso)
    record = report["iso_pairing_condition"]
    assert not record.ok
    assert record.witness.residual == "1"  # <phi x, phi x> survives


def test_nonorthogonal_tau_fails():
    q = fixture_d()
    iso = identity_iso(q.patch, 3)
    iso.tau[0][0] = Poly.const(2, 2)
    report = validate_iso(q.patch, q.fiber, iso)
    assert not report["tau_metric_automorphism"].ok
    assert not report["tau_bracket_automorphism"].ok


# -- the section map ---------------------------------------------------------


def test_apply_iso_fixes_covectors():
    q = fixture_d()
    rng = random.Random(1)
    for seed in range(3):
        iso = seeded_iso_fixture_d(seed, q)
        e = rand_section(rng, q)
        e.r = [q.patch.zero()] * 3
        e.x = [q.patch.zero()] * 2
        assert apply_iso(q.patch, q.fiber, iso, e) == e


def test_apply_identity_iso():
    q = fixture_d()
    iso = identity_iso(q.patch, 3)
    rng = random.Random(2)
    e = rand_section(rng, q)
    assert apply_iso(q.patch, q.fiber, iso, e) == e


def test_apply_iso_preserves_pairing():
    q = fixture_d()
    rng = random.Random(3)
    for seed in range(5):
        iso = seeded_iso_fixture_d(seed, q)
        e1 = rand_section(rng, q)
        e2 = rand_section(rng, q)
        t1 = apply_iso(q.patch, q.fiber, iso, e1)
        t2 = apply_iso(q.patch, q.fiber, iso, e2)
        assert q.pairing(t1, t2) == q.pairing(e1, e2)


def test_beta_only_iso_on_vectors():
    q = fixture_d()
    iso = identity_iso(q.patch, 3)
    skew = q.patch.var(1)
    iso.beta[1][0] = skew
    iso.beta[0][1] = -skew
    image = apply_iso(q.patch, q.fiber, iso, q.coord(1))
    assert image.x == q.coord(1).x
    assert image.xi == [iso.beta[0][0], iso.beta[1][0]]


# -- transport ----------------------------------------------------------------


def test_transport_identity_is_identity():
    for q in (fixture_d(), fixture_c()):
        iso = identity_iso(q.patch, q.fiber.dim)
        moved = transport(q, iso)
        assert moved.conn == q.conn and moved.curv == q.curv and moved.hform == q.hform


def test_transport_seeded_isos_sound():
    q = fixture_d()
    for seed in range(6):
        iso = seeded_iso_fixture_d(seed, q)
        assert validate_iso(q.patch, q.fiber, iso).ok
        moved = transport(q, iso)
        assert moved.validate().ok
        report = intertwining_report(q, moved, iso, degree_cap=1)
        assert report.ok, [r.name for r in report.failures()]


def test_transport_intertwines_at_degree_two():
    q = fixture_d()
    for seed in (0, 1):
        iso = seeded_iso_fixture_d(seed, q)
        moved = transport(q, iso)
        report = intertwining_report(q, moved, iso, degree_cap=2)
        assert report.ok, [r.name for r in report.failures()]


def test_apply_iso_commutes_with_anchor():
    q = fixture_d()
    rng = random.Random(9)
    for seed in range(4):
        iso = seeded_iso_fixture_d(seed, q)
        e = rand_section(rng, q)
        assert apply_iso(q.patch, q.fiber, iso, e).x == e.x


def test_transport_rejects_nonconstant_det():
    q = fixture_c()
    iso = identity_iso(q.patch, 1)
    iso.tau = [[q.patch.one() + q.patch.var(1)]]
    with pytest.raises(ValueError):
        transport(q, iso)


def test_exact_case_beta_shift_adds_exact_form():
    # no fiber: a skew beta acts as a two-form shift of H
    q = fixture_exact()
    omega = FForm(q.patch, 2, {(1, 2): q.patch.var(3), (1, 3): q.patch.var(1)})
    iso, predicted = omega_shift_iso(q, omega)
    moved = transport(q, iso)
    assert moved.hform == q.hform + leafwise_d(omega)
    assert moved.hform == predicted.hform


def test_coboundary_identity_identity_iso():
    q = fixture_d()
    assert coboundary_identity_check(q, identity_iso(q.patch, 3)).ok


def test_coboundary_identity_seeded():
    q = fixture_d()
    for seed in range(6):
        iso = seeded_iso_fixture_d(seed, q)
        assert coboundary_identity_check(q, iso).ok, seed


def test_coboundary_identity_exact_case():
    q = fixture_exact()
    omega = FForm(q.patch, 2, {(2, 3): q.patch.var(1) * q.patch.var(2)})
    iso, _ = omega_shift_iso(q, omega)
    assert coboundary_identity_check(q, iso).ok


def test_composition_matches_iterated_transport():
    q = fixture_d()
    rng = random.Random(4)
    for seed in range(4):
        i1 = seeded_iso_fixture_d(seed, q)
        i2 = seeded_iso_fixture_d(seed + 50, q)
        q1 = transport(q, i1)
        q12 = transport(q1, i2)
        comp = compose_iso(q.patch, q.fiber, i2, i1)
        assert validate_iso(q.patch, q.fiber, comp).ok
        direct = transport(q, comp)
        assert q12.conn == direct.conn
        assert q12.curv == direct.curv
        assert q12.hform == direct.hform
        # composition agrees at section level
        e = rand_section(rng, q)
        via_two = apply_iso(q.patch, q.fiber, i2, apply_iso(q.patch, q.fiber, i1, e))
        assert via_two == apply_iso(q.patch, q.fiber, comp, e)


# -- the exact two-forms -------------------------------------------------------


def test_phi_zero():
    q = fixture_d()
    j = GValuedForm.zero(q.patch, 3, 1)
    assert not phi_form(q.patch, 3, j, q.fiber)
    assert not phi_form_differential(QuadAlgebroid.of(q), j)


def test_phi_psi_closed_forms_match_ce():
    q = fixture_d()
    alg = QuadAlgebroid.of(q)
    for seed in range(8):
        j = seeded_gvalued_one_form(seed, q)
        assert ce_differential(alg, phi_form(q.patch, 3, j, q.fiber)) == phi_form_differential(alg, j)
        k = seeded_endomorphism_field(seed, q)
        assert ce_differential(alg, psi_form(q.patch, 3, k)) == psi_form_differential(q.patch, 3, k)


def test_psi_constant_skew_closed_iff_flat_frame():
    # constant K on an abelian flat quintuple: dPsi_K = 0
    q = fixture_c()
    k = [[Poly.const(4, (a + 1) * (b + 2)) for b in range(4)] for a in range(4)]
    alg = QuadAlgebroid.of(q)
    assert not ce_differential(alg, psi_form(q.patch, 1, k))
    # non-constant K picks up derivative terms
    k[0][1] = q.patch.var(3)
    assert ce_differential(alg, psi_form(q.patch, 1, k))


# -- canned isomorphisms ---------------------------------------------------------


def test_hoist_shift_constant_and_polynomial():
    q = fixture_d()
    zero, one = q.patch.zero(), q.patch.one()
    for comps in (
        {(1,): [zero, zero, one]},
        {(1,): [q.patch.var(1), zero, zero], (2,): [zero, one, q.patch.var(2)]},
    ):
        j = GValuedForm(q.patch, 3, 1, comps)
        iso, predicted = hoist_shift_iso(q, j)
        assert validate_iso(q.patch, q.fiber, iso).ok
        moved = transport(q, iso)
        assert moved.conn == predicted.conn
        assert moved.curv == predicted.curv
        assert moved.hform == predicted.hform
        assert predicted.validate().ok


def test_hoist_shift_agrees_with_pair_construction():
    from courant import CharPair, Hoist, build_from_pair

    q = fixture_d()
    j = seeded_gvalued_one_form(21, q, max_degree=1)
    iso, predicted = hoist_shift_iso(q, j)
    alg = QuadAlgebroid.of(q)
    shifted = standard_three_form(q) + ce_differential(alg, phi_form(q.patch, 3, j, q.fiber))
    built = build_from_pair(CharPair(alg, shifted), Hoist(j.scale(-1)))
    assert built.conn == predicted.conn
    assert built.curv == predicted.curv
    assert built.hform == predicted.hform


def test_omega_shift_end_to_end():
    q = fixture_c()
    omega = FForm(q.patch, 2, {(1, 3): q.patch.var(2)})
    iso, predicted = omega_shift_iso(q, omega)
    moved = transport(q, iso)
    assert moved.conn == predicted.conn
    assert moved.curv == predicted.curv
    assert moved.hform == predicted.hform == q.hform + leafwise_d(omega)
    assert predicted.validate().ok


def test_central_shift_accepts_central_j():
    q = fixture_d_extended()
    zero = q.patch.zero()
    j = GValuedForm(q.patch, 4, 1, {(1,): [zero] * 3 + [q.patch.one()], (2,): [zero] * 3 + [Poly.const(2, 2)]})
    iso, predicted = central_shift_iso(q, j)
    moved = transport(q, iso)
    assert moved.conn == predicted.conn
    assert moved.curv == predicted.curv
    assert moved.hform == predicted.hform
    assert predicted.validate().ok


def test_central_shift_rejects_noncentral_j():
    q = fixture_d()
    j = GValuedForm(q.patch, 3, 1, {(1,): [q.patch.zero(), q.patch.zero(), q.patch.one()]})
    with pytest.raises(ValueError):
        central_shift_iso(q, j)


def test_central_shift_rejects_curl():
    q = fixture_d_extended()
    zero = q.patch.zero()
    j = GValuedForm(q.patch, 4, 1, {(1,): [zero] * 3 + [q.patch.var(2)]})
    with pytest.raises(ValueError):
        central_shift_iso(q, j)


# -- intrinsic forms -------------------------------------------------------------


def test_intrinsic_form_identity_is_zero():
    q = fixture_d()
    from courant.linalg import poly_mat_identity

    theta = intrinsic_form(
        q, poly_mat_identity(2, 3), GValuedForm.zero(q.patch, 3, 1), standard_three_form(q)
    )
    assert not theta


def test_intrinsic_forms_horizontal_and_closed():
    q = fixture_d()
    for seed in range(5):
        tau, phi = seeded_ample_automorphism(seed, q)
        assert is_ample_automorphism(q, tau, phi).ok
        theta = intrinsic_form(q, tau, phi, standard_three_form(q))
        assert is_horizontal(theta)
        assert not ce_differential(QuadAlgebroid.of(q), theta)


def test_intrinsic_rejects_non_automorphism():
    q = fixture_d()
    tau, _ = seeded_ample_automorphism(1, q)
    with pytest.raises(ValueError):
        intrinsic_form(q, tau, GValuedForm.zero(q.patch, 3, 1), standard_three_form(q))


def test_pullback_of_identity():
    q = fixture_d()
    from courant.linalg import poly_mat_identity

    c = standard_three_form(q)
    assert pullback_aform(q.patch, q.fiber, c, poly_mat_identity(2, 3), GValuedForm.zero(q.patch, 3, 1)) == c


def test_transport_on_fiber_with_center():
    # block rotation (su(2) part) + identity on the central line
    from fixtures import fixture_d_extended

    q = fixture_d_extended()
    rng = random.Random(17)
    rot = cayley_so3(rng)
    block = [[rot[i][j] if i < 3 and j < 3 else (1 if i == j else 0) for j in range(4)] for i in range(4)]
    tau = poly_mat_from_rational(2, block)
    phi = GValuedForm(q.patch, 4, 1, {(1,): [q.patch.zero()] * 3 + [q.patch.var(2)]})
    beta = [[Poly.zero(2) for _ in range(2)] for _ in range(2)]
    for a in (1, 2):
        for b in (1, 2):
            beta[b - 1][a - 1] = -q.fiber.pairing(phi.get((a,)), phi.get((b,)))
    iso = IsoData(tau, phi, beta)
    assert validate_iso(q.patch, q.fiber, iso).ok
    moved = transport(q, iso)
    assert moved.validate().ok
    assert intertwining_report(q, moved, iso, degree_cap=1).ok
    assert coboundary_identity_check(q, iso).ok
