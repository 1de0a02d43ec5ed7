"""Foliated coordinate patch and leafwise differential geometry.

The base is a polynomial patch in coordinates x1..xn whose integrable
distribution F is spanned by the first p coordinate fields, so all
frame Lie brackets vanish and every tensor identity can be checked on
the coordinate frame alone.  Leafwise forms are stored sparsely on
strictly increasing index tuples; coefficients may involve all n
coordinates, but only the leafwise derivatives d/dx1..d/dxp ever act.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Sequence, Tuple

from .fiber import QuadLieAlgebra
from .poly import Poly
from .report import Report, Witness


@dataclass(frozen=True)
class Patch:
    """n base coordinates with F spanned by the first p of them."""

    n: int
    p: int

    def __post_init__(self):
        if not 0 <= self.p <= self.n:
            raise ValueError("need 0 <= p <= n")

    def zero(self) -> Poly:
        return Poly.zero(self.n)

    def one(self) -> Poly:
        return Poly.const(self.n, 1)

    def var(self, i: int) -> Poly:
        return Poly.variable(self.n, i)


def sort_with_sign(indices: Sequence[int]) -> Tuple[Tuple[int, ...], int]:
    """Sort an index tuple, returning (sorted tuple, permutation sign).

    Repeated indices give sign 0.
    """
    idx = list(indices)
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    for i in range(1, len(idx)):
        if idx[i - 1] == idx[i]:
            return tuple(idx), 0
    return tuple(idx), sign


class FForm:
    """Leafwise k-form with polynomial coefficients.

    Components are stored on strictly increasing leaf index tuples
    (1-based); missing tuples are zero.
    """

    def __init__(self, patch: Patch, degree: int, comps: Mapping[Tuple[int, ...], Poly] = ()):
        self.patch = patch
        self.degree = degree
        clean: Dict[Tuple[int, ...], Poly] = {}
        for key, value in dict(comps).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError("component %r has wrong arity" % (key,))
            if list(key) != sorted(set(key)):
                raise ValueError("component key %r must be strictly increasing" % (key,))
            if any(not 1 <= a <= patch.p for a in key):
                raise ValueError("leaf index out of range in %r" % (key,))
            if value:
                clean[key] = value
        self.comps = clean

    @staticmethod
    def zero(patch: Patch, degree: int) -> "FForm":
        return FForm(patch, degree)

    def get(self, indices: Sequence[int]) -> Poly:
        """Signed component on an arbitrary index tuple."""
        key, sign = sort_with_sign(indices)
        if sign == 0:
            return self.patch.zero()
        value = self.comps.get(key)
        if value is None:
            return self.patch.zero()
        return value if sign == 1 else -value

    def keys(self):
        return sorted(self.comps)

    def __bool__(self) -> bool:
        return any(self.comps.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, FForm):
            return NotImplemented
        return (
            self.patch == other.patch
            and self.degree == other.degree
            and self.comps == other.comps
        )

    def __add__(self, other: "FForm") -> "FForm":
        if self.degree != other.degree:
            raise ValueError("form degree mismatch")
        comps = dict(self.comps)
        for key, value in other.comps.items():
            comps[key] = comps.get(key, self.patch.zero()) + value
        return FForm(self.patch, self.degree, comps)

    def __sub__(self, other: "FForm") -> "FForm":
        return self + other.scale(-1)

    def scale(self, c) -> "FForm":
        return FForm(
            self.patch, self.degree, {k: v.scale(c) for k, v in self.comps.items()}
        )

    def d(self) -> "FForm":
        """Leafwise exterior derivative (alternating-sum convention)."""
        return leafwise_d(self)

    def __str__(self) -> str:
        if not self.comps:
            return "0"
        parts = []
        for key in self.keys():
            label = "^".join("dx%d" % a for a in key) if key else "1"
            parts.append("(%s) %s" % (self.comps[key], label))
        return " + ".join(parts)


def leafwise_d(w: FForm) -> FForm:
    """Exterior derivative along the foliation; d(d(w)) = 0 exactly."""
    patch = w.patch
    out: Dict[Tuple[int, ...], Poly] = {}
    for key in combinations(range(1, patch.p + 1), w.degree + 1):
        acc = patch.zero()
        for pos, a in enumerate(key):
            rest = key[:pos] + key[pos + 1:]
            value = w.comps.get(rest)
            if value is None:
                continue
            term = value.diff(a)
            acc = acc + term if pos % 2 == 0 else acc - term
        if acc:
            out[key] = acc
    return FForm(patch, w.degree + 1, out)


class GValuedForm:
    """Fiber-valued leafwise k-form: components are m-vectors of Poly."""

    def __init__(
        self,
        patch: Patch,
        dim: int,
        degree: int,
        comps: Mapping[Tuple[int, ...], Sequence[Poly]] = (),
    ):
        self.patch = patch
        self.dim = dim
        self.degree = degree
        clean: Dict[Tuple[int, ...], List[Poly]] = {}
        for key, vec in dict(comps).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError("component %r has wrong arity" % (key,))
            if list(key) != sorted(set(key)):
                raise ValueError("component key %r must be strictly increasing" % (key,))
            if any(not 1 <= a <= patch.p for a in key):
                raise ValueError("leaf index out of range in %r" % (key,))
            vec = list(vec)
            if len(vec) != dim:
                raise ValueError("component %r has wrong fiber dimension" % (key,))
            if any(vec):
                clean[key] = vec
        self.comps = clean

    @staticmethod
    def zero(patch: Patch, dim: int, degree: int) -> "GValuedForm":
        return GValuedForm(patch, dim, degree)

    def get(self, indices: Sequence[int]) -> List[Poly]:
        key, sign = sort_with_sign(indices)
        zero = [self.patch.zero()] * self.dim
        if sign == 0:
            return list(zero)
        vec = self.comps.get(key)
        if vec is None:
            return list(zero)
        return list(vec) if sign == 1 else [-v for v in vec]

    def keys(self):
        return sorted(self.comps)

    def __bool__(self) -> bool:
        return bool(self.comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GValuedForm):
            return NotImplemented
        return (
            self.patch == other.patch
            and self.dim == other.dim
            and self.degree == other.degree
            and self.comps == other.comps
        )

    def __add__(self, other: "GValuedForm") -> "GValuedForm":
        comps = {k: list(v) for k, v in self.comps.items()}
        for key, vec in other.comps.items():
            if key in comps:
                comps[key] = [a + b for a, b in zip(comps[key], vec)]
            else:
                comps[key] = list(vec)
        return GValuedForm(self.patch, self.dim, self.degree, comps)

    def scale(self, c) -> "GValuedForm":
        return GValuedForm(
            self.patch,
            self.dim,
            self.degree,
            {k: [v.scale(c) for v in vec] for k, vec in self.comps.items()},
        )


class GConnection:
    """Connection on the trivial fiber bundle: nabla_a r = d_a r + Gamma[a] r."""

    def __init__(self, patch: Patch, dim: int, gamma: Sequence[Sequence[Sequence[Poly]]]):
        self.patch = patch
        self.dim = dim
        if len(gamma) != patch.p:
            raise ValueError("need one Gamma matrix per leaf direction")
        self.gamma = [
            [[entry for entry in row] for row in mat] for mat in gamma
        ]
        for mat in self.gamma:
            if len(mat) != dim or any(len(row) != dim for row in mat):
                raise ValueError("Gamma matrices must be %dx%d" % (dim, dim))

    @staticmethod
    def flat(patch: Patch, dim: int) -> "GConnection":
        zero = Poly.zero(patch.n)
        return GConnection(
            patch, dim, [[[zero] * dim for _ in range(dim)] for _ in range(patch.p)]
        )

    def apply(self, a: int, r: Sequence[Poly]) -> List[Poly]:
        """nabla_{d/dx_a} r for an m-vector of polynomials (1-based a)."""
        if not 1 <= a <= self.patch.p:
            raise ValueError("leaf index %d out of range 1..%d" % (a, self.patch.p))
        mat = self.gamma[a - 1]
        out = []
        for k in range(self.dim):
            acc = r[k].diff(a)
            row = mat[k]
            for j in range(self.dim):
                if row[j] and r[j]:
                    acc = acc + row[j] * r[j]
            out.append(acc)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, GConnection):
            return NotImplemented
        return (
            self.patch == other.patch
            and self.dim == other.dim
            and self.gamma == other.gamma
        )


def validate_connection(conn: GConnection, fiber: QuadLieAlgebra) -> Report:
    """Metric skewness and bracket derivation property, exactly."""
    report = Report()
    patch, m = conn.patch, conn.dim
    g = fiber.g

    skew = None
    for a in range(patch.p):
        mat = conn.gamma[a]
        for i in range(m):
            for j in range(m):
                # (g Gamma + Gamma^T g)[i][j]
                acc = Poly.zero(patch.n)
                for l in range(m):
                    if g[i][l] and mat[l][j]:
                        acc = acc + mat[l][j].scale(g[i][l])
                    if mat[l][i] and g[l][j]:
                        acc = acc + mat[l][i].scale(g[l][j])
                if acc and skew is None:
                    skew = Witness("g*Gamma_a + Gamma_a^T*g", (a + 1, i + 1, j + 1), str(acc))
    if skew is None:
        report.add_pass("conn_metric_skew")
    else:
        report.add_fail("conn_metric_skew", skew)

    deriv = None
    for a in range(patch.p):
        mat = conn.gamma[a]
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    # Gamma_a [e_i, e_j] - [Gamma_a e_i, e_j] - [e_i, Gamma_a e_j]
                    acc = Poly.zero(patch.n)
                    for l in range(m):
                        if fiber.c[i][j][l] and mat[k][l]:
                            acc = acc + mat[k][l].scale(fiber.c[i][j][l])
                        if mat[l][i] and fiber.c[l][j][k]:
                            acc = acc - mat[l][i].scale(fiber.c[l][j][k])
                        if mat[l][j] and fiber.c[i][l][k]:
                            acc = acc - mat[l][j].scale(fiber.c[i][l][k])
                    if acc and deriv is None:
                        deriv = Witness(
                            "Gamma_a[e_i,e_j] - [Gamma_a e_i,e_j] - [e_i,Gamma_a e_j]",
                            (a + 1, i + 1, j + 1, k + 1),
                            str(acc),
                        )
    if deriv is None:
        report.add_pass("conn_bracket_derivation")
    else:
        report.add_fail("conn_bracket_derivation", deriv)
    return report


def pontryagin_form(curv: GValuedForm, fiber: QuadLieAlgebra) -> FForm:
    """The leafwise 4-form <R wedge R>.

    Component formula 2(<R_ab,R_cd> - <R_ac,R_bd> + <R_ad,R_bc>) on
    a<b<c<d; equal to the 24-term symmetrized sum, which the test suite
    checks independently.
    """
    patch = curv.patch
    out: Dict[Tuple[int, ...], Poly] = {}
    for key in combinations(range(1, patch.p + 1), 4):
        a, b, c, d = key
        value = (
            fiber.pairing(curv.get((a, b)), curv.get((c, d)))
            - fiber.pairing(curv.get((a, c)), curv.get((b, d)))
            + fiber.pairing(curv.get((a, d)), curv.get((b, c)))
        ).scale(2)
        if value:
            out[key] = value
    return FForm(patch, 4, out)


class FConnection:
    """Torsion-free connection on F, given by Christoffel polynomials.

    christoffel[a][b][c] is the dx_c-component of nabla_{d/dx_a} d/dx_b;
    torsion-freeness on the coordinate frame means symmetry in (a, b).
    """

    def __init__(self, patch: Patch, christoffel: Sequence[Sequence[Sequence[Poly]]]):
        self.patch = patch
        p = patch.p
        if len(christoffel) != p or any(
            len(row) != p or any(len(col) != p for col in row) for row in christoffel
        ):
            raise ValueError("christoffel array must be p x p x p")
        self.christoffel = [
            [[entry for entry in col] for col in row] for row in christoffel
        ]

    @staticmethod
    def flat(patch: Patch) -> "FConnection":
        zero = Poly.zero(patch.n)
        p = patch.p
        return FConnection(patch, [[[zero] * p for _ in range(p)] for _ in range(p)])

    def is_torsion_free(self) -> bool:
        p = self.patch.p
        return all(
            self.christoffel[a][b][c] == self.christoffel[b][a][c]
            for a in range(p)
            for b in range(p)
            for c in range(p)
        )

    def apply_vector(self, a: int, y: Sequence[Poly]) -> List[Poly]:
        """nabla^F_{d/dx_a} y for a leafwise vector field (1-based a)."""
        p = self.patch.p
        out = []
        for c in range(p):
            acc = y[c].diff(a)
            for b in range(p):
                gamma = self.christoffel[a - 1][b][c]
                if gamma and y[b]:
                    acc = acc + gamma * y[b]
            out.append(acc)
        return out

    def apply_covector(self, a: int, eta: Sequence[Poly]) -> List[Poly]:
        """Dual connection on F*: d_a eta_b - gamma[a][b][c] eta_c."""
        p = self.patch.p
        out = []
        for b in range(p):
            acc = eta[b].diff(a)
            for c in range(p):
                gamma = self.christoffel[a - 1][b][c]
                if gamma and eta[c]:
                    acc = acc - gamma * eta[c]
            out.append(acc)
        return out
