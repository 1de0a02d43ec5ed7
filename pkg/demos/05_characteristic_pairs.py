"""Coherent 3-forms, hoists, and the pair correspondence.

A quintuple determines a coherent closed 3-form on its ample
algebroid; conversely a coherent pair plus a hoist rebuilds a
quintuple.  The two constructions are mutually inverse on the nose.
Changing the hoist shifts the form by the differential of an explicit
2-form; shifts along central, curl-free directions keep the hoist and
change only the leafwise 3-form.
"""

import importlib

from courant import (
    CharPair,
    GValuedForm,
    Hoist,
    QuadAlgebroid,
    build_from_pair,
    ce_differential,
    central_shift_iso,
    characteristic_pair_of,
    check_coherent,
    find_hoist,
    hoist_shift_iso,
    phi_form,
    standard_three_form,
    transport,
)

model = importlib.import_module("01_standard_model")
q = model.q
patch, fiber = q.patch, q.fiber

print("== round trip: quintuple -> pair -> quintuple ==")
pair = characteristic_pair_of(q)
rebuilt = build_from_pair(pair, Hoist.standard(patch, fiber.dim))
print("  connection reproduced:", rebuilt.conn == q.conn)
print("  curvature reproduced: ", rebuilt.curv == q.curv)
print("  3-form reproduced:    ", rebuilt.hform == q.hform)

print()
print("== shifting the form by d Phi_J moves the hoist by -J ==")
j = GValuedForm(patch, 3, 1, {(1,): [patch.zero(), patch.zero(), patch.one()]})
alg = QuadAlgebroid.of(q)
shifted = pair.c + ce_differential(alg, phi_form(patch, 3, j, fiber))
search = find_hoist(alg, shifted)
print("  hoist found:", search.hoist is not None)
print("  recovered J equals -J of the shift:", search.hoist.j == j.scale(-1))
print("  coherence report:", all(r.ok for r in check_coherent(alg, shifted, search.hoist)))

print()
print("== the same shift as a canned isomorphism ==")
iso, predicted = hoist_shift_iso(q, j)
moved = transport(q, iso)
print("  transported data equals the predicted target:",
      (moved.conn, moved.curv, moved.hform)
      == (predicted.conn, predicted.curv, predicted.hform))
built = build_from_pair(CharPair(alg, shifted), Hoist(j.scale(-1)))
print("  pair rebuild along the shifted hoist agrees too:",
      (built.conn, built.curv, built.hform)
      == (predicted.conn, predicted.curv, predicted.hform))

print()
print("== central shifts are gated by the fiber center ==")
try:
    central_shift_iso(q, j)
    print("  unexpectedly accepted")
except ValueError as exc:
    print("  su(2) fiber rejects a central shift:", exc)
