"""Negative Grassmannian points, wall membership and wall crossing.

Everything is exact. Short vectors are enumerated by Fincke-Pohst on an
exact rational LDL^T decomposition; wall crossings for b_plus = 1 reduce to
a short-vector search for the majorant form attached to the first period.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Sequence

from .errors import (
    DegenerateForm,
    DimensionMismatch,
    InvalidPeriod,
    InvalidSubspace,
    NotLorentzian,
    NotPositiveDefinite,
    OppositeCones,
    PeriodOnWall,
)
from .intlinalg import congruent, rational_column_kernel, rational_det, saturate
from .lattice import Definiteness, Lattice, analyze

Vector = tuple[int, ...]


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions and strings like ``"3"``, ``"-2/5"``."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise ValueError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- enumeration -------------------------------------------------------------

def _ldl(gram: Sequence[Sequence[Fraction]]) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Q(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2; raises if not positive definite."""
    a = [[Fraction(x) for x in row] for row in gram]
    n = len(a)
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        p = a[i][i]
        if p <= 0:
            raise NotPositiveDefinite("form is not positive definite")
        d[i] = p
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / p
        for k in range(i + 1, n):
            for l in range(k, n):
                a[k][l] -= a[i][k] * a[i][l] / p
                a[l][k] = a[k][l]
    return d, mu


def _floor_sqrt(r: Fraction) -> int:
    return isqrt(r.numerator * r.denominator) // r.denominator


def _fincke_pohst(gram: Sequence[Sequence], bound: Fraction) -> Iterator[list[int]]:
    """Yield every integer x (including 0 and both signs) with Q(x) <= bound."""
    n = len(gram)
    if n == 0:
        yield []
        return
    d, mu = _ldl(gram)
    x = [0] * n

    def level(i: int, budget: Fraction):
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r = budget / d[i]
        s = _floor_sqrt(r)
        centre = -c
        lo = centre.__floor__() - s - 1
        hi = centre.__ceil__() + s + 1
        for xi in range(lo, hi + 1):
            t = xi + c
            used = d[i] * t * t
            if used > budget:
                continue
            x[i] = xi
            if i == 0:
                yield list(x)
            else:
                yield from level(i - 1, budget - used)
        x[i] = 0

    yield from level(n - 1, Fraction(bound))


def _lex_positive(x: Sequence[int]) -> bool:
    for v in x:
        if v:
            return v > 0
    return False


def _primitive(x: Sequence[int]) -> bool:
    g = 0
    for v in x:
        g = gcd(g, v)
    return g == 1


def short_vectors_of_form(gram: Sequence[Sequence], bound) -> list[Vector]:
    """Nonzero x with Q(x) <= bound, one per +/- pair, sorted; Q may be rational."""
    out = [tuple(x) for x in _fincke_pohst(gram, Fraction(bound)) if _lex_positive(x)]
    out.sort()
    return out


def short_vectors(lat: Lattice, bound: int, primitive_only: bool = False) -> list[Vector]:
    """All x != 0 with q(x) <= bound, lexicographically positive representative of each pair.

    ``lat`` must be positive definite; callers negate negative definite forms.
    """
    if lat.rank and analyze(lat).definite is not Definiteness.POSITIVE:
        raise NotPositiveDefinite("short_vectors needs a positive definite lattice")
    vecs = short_vectors_of_form(lat.gram, bound)
    if primitive_only:
        vecs = [v for v in vecs if _primitive(v)]
    return vecs


# -- negative definite subspaces ----------------------------------------------

def grass_dimension(lat: Lattice) -> int:
    """Dimension b_plus * b_minus of the cell of maximal negative definite subspaces."""
    prof = analyze(lat)
    if prof.definite is Definiteness.DEGENERATE:
        raise DegenerateForm("form is degenerate")
    return prof.b_plus * prof.b_minus


@dataclass(frozen=True)
class NegativeSubspace:
    """A subspace of B (x) R given by rational spanning vectors (the basis columns)."""

    lattice: Lattice
    basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "basis", tuple(tuple(Fraction(v) for v in col) for col in self.basis)
        )

    def to_json(self) -> dict:
        return {
            "lattice": self.lattice.to_json(),
            "basis": [[format_rational(v) for v in col] for col in self.basis],
        }

    @classmethod
    def from_json(cls, data: dict, lattice: Lattice | None = None) -> NegativeSubspace:
        lat = lattice if lattice is not None else Lattice.from_json(data["lattice"])
        basis = [[parse_rational(v) for v in col] for col in data["basis"]]
        return cls(lat, tuple(tuple(c) for c in basis))


def _negative_definite(gram: Sequence[Sequence[Fraction]]) -> bool:
    # leading principal minors of a negative definite form alternate: (-1)^k det_k > 0
    for k in range(1, len(gram) + 1):
        minor = rational_det([row[:k] for row in gram[:k]])
        if (minor if k % 2 == 0 else -minor) <= 0:
            return False
    return True


def validate_subspace(sub: NegativeSubspace) -> bool:
    n = sub.lattice.rank
    for col in sub.basis:
        if len(col) != n:
            raise DimensionMismatch(f"basis vector has length {len(col)}, lattice rank is {n}")
    if len(sub.basis) != analyze(sub.lattice).b_minus:
        return False
    return _negative_definite(congruent(sub.lattice.gram, sub.basis))


@dataclass(frozen=True)
class WallVector:
    x: Vector
    norm: int

    def to_json(self) -> dict:
        return {"x": list(self.x), "norm": self.norm}


def lattice_points(sub: NegativeSubspace) -> list[list[int]]:
    """A Z-basis of H intersected with B (the saturation of the rational span)."""
    return saturate(sub.basis, sub.lattice.rank)


def wall_vectors(sub: NegativeSubspace, d: int, primitive_only: bool = False) -> list[WallVector]:
    """All lattice points x of H with -d <= q(x) < 0, one per sign, sorted."""
    if not validate_subspace(sub):
        raise InvalidSubspace("basis does not span a maximal negative definite subspace")
    lat = sub.lattice
    k = lattice_points(sub)
    if not k:
        return []
    sub_gram = congruent(lat.gram, k)
    minus = [[-v for v in row] for row in sub_gram]
    out = []
    for c in short_vectors_of_form(minus, d):
        x = [sum(ci * col[i] for ci, col in zip(c, k)) for i in range(lat.rank)]
        if not _lex_positive(x):
            x = [-v for v in x]
        if primitive_only and not _primitive(x):
            continue
        out.append(WallVector(tuple(x), lat.norm(x)))
    out.sort(key=lambda w: w.x)
    return out


def wall_membership(sub: NegativeSubspace, d: int, primitive_only: bool = False) -> WallVector | None:
    """A witness that H lies in Wall_d(B), or None.

    The witness is the lattice point of H of norm closest to zero, ties
    broken lexicographically.
    """
    vecs = wall_vectors(sub, d, primitive_only)
    if not vecs:
        return None
    return min(vecs, key=lambda w: (-w.norm, w.x))


# -- periods and crossings (b_plus = 1) ---------------------------------------

@dataclass(frozen=True)
class Period:
    lattice: Lattice
    omega: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(Fraction(v) for v in self.omega))

    def subspace(self) -> NegativeSubspace:
        """The orthogonal complement of omega, a point of Grass^-(B) when b_plus = 1."""
        g_omega = self.lattice.apply(self.omega)
        return NegativeSubspace(self.lattice, tuple(map(tuple, rational_column_kernel([g_omega], self.lattice.rank))))

    def to_json(self) -> dict:
        return {"lattice": self.lattice.to_json(), "omega": [format_rational(v) for v in self.omega]}

    @classmethod
    def from_json(cls, data: dict, lattice: Lattice | None = None) -> Period:
        lat = lattice if lattice is not None else Lattice.from_json(data["lattice"])
        return cls(lat, tuple(parse_rational(v) for v in data["omega"]))


def majorant(lat: Lattice, omega: Sequence[Fraction]) -> list[list[Fraction]]:
    """2 (G w)(G w)^T / q(w) - G: positive definite when b_plus = 1 and q(w) > 0."""
    g_omega = lat.apply(omega)
    q = lat.norm(omega)
    return [[2 * a * b / q - g for b, g in zip(g_omega, row)] for a, row in zip(g_omega, lat.gram)]


def _check_periods(p0: Period, p1: Period) -> None:
    lat = p0.lattice
    if p1.lattice.gram != lat.gram:
        raise DimensionMismatch("periods live on different lattices")
    for p in (p0, p1):
        if len(p.omega) != lat.rank:
            raise DimensionMismatch("period length differs from lattice rank")
    prof = analyze(lat)
    if prof.definite is Definiteness.DEGENERATE:
        raise DegenerateForm("form is degenerate")
    if prof.b_plus != 1:
        raise NotLorentzian(f"wall crossing needs b_plus = 1, got {prof.b_plus}")
    for p in (p0, p1):
        if lat.norm(p.omega) <= 0:
            raise InvalidPeriod("period must have positive norm")
    if lat.inner(p0.omega, p1.omega) <= 0:
        raise OppositeCones("periods lie in opposite components of the positive cone")


def _on_wall(period: Period, d: int) -> Vector | None:
    lat = period.lattice
    # x orthogonal to omega has majorant value -q(x) <= d
    for x in short_vectors_of_form(majorant(lat, period.omega), d):
        if lat.inner(x, period.omega) == 0 and -d <= lat.norm(x) < 0:
            return x
    return None


def crossing_bound(lat: Lattice, omega0: Sequence[Fraction], omega1: Sequence[Fraction], d: int) -> Fraction:
    """Upper bound for the majorant of omega0 on every vector of the crossing set.

    Any such x is orthogonal to some point w on the segment [omega0, omega1];
    Cauchy-Schwarz on the negative definite w-perp bounds <x, omega0>^2 by
    d * max(q0, m)^2 * (q0 + q1) / (q0 q1), with m = <omega0, omega1>.
    """
    q0 = lat.norm(omega0)
    q1 = lat.norm(omega1)
    m = lat.inner(omega0, omega1)
    pairing_sq = Fraction(d) * max(q0, m) ** 2 * (q0 + q1) / (q0 * q1)
    return d + 2 * pairing_sq / q0


def crossing_set(p0: Period, p1: Period, d: int, primitive_only: bool = False) -> list[WallVector]:
    """Lattice points x with -d <= q(x) < 0 and <x, w0> < 0 < <x, w1>, sorted by x."""
    _check_periods(p0, p1)
    lat = p0.lattice
    for p in (p0, p1):
        hit = _on_wall(p, d)
        if hit is not None:
            raise PeriodOnWall(
                f"period is orthogonal to {list(hit)} of norm {lat.norm(hit)}",
                vector=list(hit),
            )
    bound = crossing_bound(lat, p0.omega, p1.omega, d)
    out = []
    for rep in short_vectors_of_form(majorant(lat, p0.omega), bound):
        q = lat.norm(rep)
        if not -d <= q < 0:
            continue
        for x in (rep, tuple(-v for v in rep)):
            if lat.inner(x, p0.omega) < 0 < lat.inner(x, p1.omega):
                if not primitive_only or _primitive(x):
                    out.append(WallVector(x, q))
    out.sort(key=lambda w: w.x)
    return out
