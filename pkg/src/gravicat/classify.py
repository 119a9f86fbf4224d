"""Classification of unimodular lattices and the Grothendieck ring K0.

Indefinite unimodular lattices are determined by rank, signature and type,
so the canonical form and the K0 coordinates are read off :func:`analyze`.
Definite forms get the weaker diagonalizability test, which is what the
smooth closed case needs.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Union

from .errors import (
    EvenSignatureViolation,
    NotDefinite,
    NotIndefinite,
    NotUnimodular,
    OddLattice,
)
from .intlinalg import congruent, integer_kernel
from .lattice import (
    Definiteness,
    Lattice,
    LatticeProfile,
    analyze,
    direct_sum_all,
    e8,
    hyperbolic_plane,
    negate,
    odd_form,
)
from .walls import short_vectors


class DefiniteLatticeWarning(UserWarning):
    """K0 class requested for a definite even lattice (outside the indefinite category)."""


@dataclass(frozen=True)
class OddIndef:
    p: int
    q: int

    def to_lattice(self) -> Lattice:
        return odd_form(self.p, self.q)

    def to_json(self) -> dict:
        return {"variant": "odd", "p": self.p, "q": self.q}


@dataclass(frozen=True)
class EvenIndef:
    u: int
    e8: int

    def to_lattice(self) -> Lattice:
        e = e8() if self.e8 >= 0 else negate(e8())
        return direct_sum_all(
            [hyperbolic_plane()] * self.u + [e] * abs(self.e8),
            f"{self.u}U + {self.e8}E8",
        )

    def to_json(self) -> dict:
        return {"variant": "even", "u": self.u, "e8": self.e8}


CanonicalForm = Union[OddIndef, EvenIndef]


def canonical_from_json(data: dict) -> CanonicalForm:
    if data.get("variant") == "odd":
        return OddIndef(int(data["p"]), int(data["q"]))
    if data.get("variant") == "even":
        return EvenIndef(int(data["u"]), int(data["e8"]))
    raise ValueError(f"unknown canonical form variant {data.get('variant')!r}")


@dataclass(frozen=True)
class K0Class:
    """Coordinates in the basis {[U], [E8]}; [E8(-1)] = 8[U] - [E8]."""

    u: int
    e8: int

    @property
    def rank(self) -> int:
        return 2 * self.u + 8 * self.e8

    @property
    def signature(self) -> int:
        return 8 * self.e8

    @classmethod
    def from_invariants(cls, rank: int, signature: int) -> K0Class:
        if signature % 8:
            raise EvenSignatureViolation(f"signature {signature} is not divisible by 8")
        return cls((rank - signature) // 2, signature // 8)

    def __add__(self, other: K0Class) -> K0Class:
        return K0Class(self.u + other.u, self.e8 + other.e8)

    def __neg__(self) -> K0Class:
        return K0Class(-self.u, -self.e8)

    def __sub__(self, other: K0Class) -> K0Class:
        return self + (-other)

    def __mul__(self, other: K0Class) -> K0Class:
        return k0_product(self, other)

    def to_json(self) -> dict:
        return {"u": self.u, "e8": self.e8}


K0_ZERO = K0Class(0, 0)


def _require_unimodular(prof: LatticeProfile) -> None:
    if not prof.unimodular:
        raise NotUnimodular(f"determinant is {prof.determinant}, not +-1")


def classify_indefinite(lat: Lattice) -> CanonicalForm:
    prof = analyze(lat)
    _require_unimodular(prof)
    if not prof.indefinite:
        raise NotIndefinite(f"lattice is {prof.definite.value}")
    if not prof.even:
        return OddIndef(prof.b_plus, prof.b_minus)
    if prof.signature % 8:
        raise EvenSignatureViolation(f"even unimodular lattice with signature {prof.signature}")
    e = prof.signature // 8
    return EvenIndef((prof.rank - 8 * abs(e)) // 2, e)


def k0_class_with_flags(lat: Lattice) -> tuple[K0Class, bool]:
    """(class, definite) for an even unimodular lattice; rank 0 counts as not definite."""
    prof = analyze(lat)
    _require_unimodular(prof)
    if not prof.even:
        raise OddLattice("K0 class is only defined for even lattices")
    cls = K0Class.from_invariants(prof.rank, prof.signature)
    return cls, prof.rank > 0 and not prof.indefinite


def k0_class(lat: Lattice) -> K0Class:
    """K0 coordinates from rank and signature.

    Definite input still gets a class but triggers a
    :class:`DefiniteLatticeWarning`.
    """
    cls, definite = k0_class_with_flags(lat)
    if definite:
        warnings.warn(
            "definite lattice lies outside the category of indefinite lattices",
            DefiniteLatticeWarning,
            stacklevel=2,
        )
    return cls


def k0_product(a: K0Class, b: K0Class) -> K0Class:
    """Product induced by the tensor product: rank and signature multiply."""
    return K0Class.from_invariants(a.rank * b.rank, a.signature * b.signature)


def _unit_complement(lat: Lattice, v) -> Lattice:
    """Orthogonal complement of a norm +-1 vector v (itself unimodular)."""
    gv = lat.apply(v)
    basis = integer_kernel([gv], lat.rank)
    return Lattice(congruent(lat.gram, basis))


def diagonalizable_definite(lat: Lattice) -> bool:
    """Whether a definite unimodular lattice is isomorphic to <+-1>^n over Z.

    Splits off unit vectors one at a time; a unit vector always splits a
    unimodular lattice as Z v + v-perp, so failure to find one with rank
    left over is conclusive.
    """
    prof = analyze(lat)
    _require_unimodular(prof)
    if prof.rank == 0:
        return True
    if prof.definite is Definiteness.NEGATIVE:
        lat = negate(lat)
    elif prof.definite is not Definiteness.POSITIVE:
        raise NotDefinite(f"lattice is {prof.definite.value}")
    while lat.rank:
        units = short_vectors(lat, 1)
        if not units:
            return False
        lat = _unit_complement(lat, units[0])
    return True


@dataclass(frozen=True)
class SmoothnessReport:
    topologically_realizable: bool
    smoothly_admissible: bool
    reason: str

    def to_json(self) -> dict:
        return {
            "topologically_realizable": self.topologically_realizable,
            "smoothly_admissible": self.smoothly_admissible,
            "reason": self.reason,
        }


def smooth_closed_constraint(lat: Lattice) -> SmoothnessReport:
    """Freedman realizability and the Donaldson definite-form obstruction."""
    prof = analyze(lat)
    _require_unimodular(prof)
    if prof.rank == 0:
        return SmoothnessReport(True, True, "empty form (e.g. the 4-sphere)")
    if prof.indefinite:
        return SmoothnessReport(True, True, "indefinite form")
    if diagonalizable_definite(lat):
        return SmoothnessReport(True, True, "definite and diagonalizable over Z")
    return SmoothnessReport(
        True,
        False,
        "definite but not diagonalizable: realized only by a non-smoothable topological manifold",
    )

