"""Cobordisms reduced to their discrete invariants.

A :class:`CobordismRecord` keeps what survives gluing in a computable way:
boundary labels, Euler characteristic, signature, the intersection lattice
and a few decorations. Composition glues the outgoing boundary of the first
record onto the incoming boundary of the second ("A then B").
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Mapping, NamedTuple, Sequence

from .classify import K0Class, k0_class_with_flags, smooth_closed_constraint
from .errors import (
    BoundaryMismatch,
    DimensionMismatch,
    LabelCollision,
    MissingC1,
    NotClosed,
    NotConnectedInterface,
    SchemaError,
)
from .lattice import (
    EMPTY,
    Lattice,
    analyze,
    diagonal,
    direct_sum,
    e8,
    is_characteristic,
    k3,
    negate,
)


class Kind(str, enum.Enum):
    STANDARD_SPHERE = "standard_sphere"
    HOMOLOGY_SPHERE = "homology_sphere"
    CIRCLE = "circle"


@dataclass(frozen=True)
class BoundaryComponent:
    label: str
    kind: Kind

    def to_json(self) -> dict:
        return {"label": self.label, "kind": self.kind.value}


Boundary = tuple[BoundaryComponent, ...]


def boundary(*items: tuple[str, str | Kind]) -> Boundary:
    """``boundary(("P", "homology_sphere"), ...)``."""
    return tuple(BoundaryComponent(label, Kind(kind)) for label, kind in items)


def _fmt_boundary(b: Boundary) -> list[str]:
    return [f"{c.label}:{c.kind.value}" for c in b]


@dataclass(frozen=True)
class CobordismRecord:
    dim: int
    incoming: Boundary = ()
    outgoing: Boundary = ()
    chi: int = 0
    sigma: int = 0
    lattice: Lattice = EMPTY
    spin: bool = False
    c1: tuple[int, ...] | None = None
    smooth: bool = True
    b1: int | None = None
    # surfaces only: total genus of all pieces
    genus: int = 0
    # number of connected components, None once it can no longer be tracked
    pieces: int | None = 1
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "incoming", tuple(self.incoming))
        object.__setattr__(self, "outgoing", tuple(self.outgoing))
        if self.c1 is not None:
            object.__setattr__(self, "c1", tuple(self.c1))

    @property
    def closed(self) -> bool:
        return not self.incoming and not self.outgoing

    @property
    def form_rank(self) -> int:
        """Rank of the intersection form on middle (co)homology."""
        return 2 * self.genus if self.dim == 2 else self.lattice.rank

    def is_empty(self) -> bool:
        return (self.closed and self.pieces == 0 and self.chi == 0 and self.sigma == 0
                and self.lattice.rank == 0 and self.genus == 0)

    def to_json(self) -> dict:
        out: dict = {}
        if self.name is not None:
            out["name"] = self.name
        out.update({
            "dim": self.dim,
            "in": [c.to_json() for c in self.incoming],
            "out": [c.to_json() for c in self.outgoing],
            "chi": self.chi,
            "sigma": self.sigma,
            "lattice": self.lattice.to_json(),
            "spin": self.spin,
        })
        if self.c1 is not None:
            out["c1"] = list(self.c1)
        out["smooth"] = self.smooth
        if self.b1 is not None:
            out["b1"] = self.b1
        if self.dim == 2:
            out["genus"] = self.genus
        out["pieces"] = self.pieces
        return out

    @classmethod
    def from_json(cls, data: Mapping, lattice: Lattice | None = None) -> CobordismRecord:
        """Build from the JSON record format; ``lattice`` overrides the inline one."""
        def comps(key):
            return tuple(BoundaryComponent(c["label"], Kind(c["kind"])) for c in data.get(key, []))

        try:
            lat = lattice if lattice is not None else (
                Lattice.from_json(data["lattice"]) if "lattice" in data else EMPTY
            )
            return cls(
                dim=int(data["dim"]),
                incoming=comps("in"),
                outgoing=comps("out"),
                chi=int(data["chi"]),
                sigma=int(data.get("sigma", 0)),
                lattice=lat,
                spin=bool(data.get("spin", False)),
                c1=tuple(data["c1"]) if data.get("c1") is not None else None,
                smooth=bool(data.get("smooth", True)),
                b1=data.get("b1"),
                genus=int(data.get("genus", 0)),
                pieces=data.get("pieces", 1),
                name=data.get("name"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise SchemaError(f"bad cobordism record: {exc}") from None


class Violation(NamedTuple):
    kind: str
    detail: str

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def euler_glue(chi1: int, chi2: int, chi_interface: int) -> int:
    """chi(W o W') = chi(W) + chi(W') - chi(W n W')."""
    return chi1 + chi2 - chi_interface


@dataclass(frozen=True)
class Grading:
    kappa0: int
    sigma_grade: int


def grading(rec: CobordismRecord) -> Grading:
    return Grading(rec.chi, rec.sigma if rec.dim == 4 else 0)


def validate_cobordism(rec: CobordismRecord) -> list[Violation]:
    out: list[Violation] = []

    def flag(kind, detail):
        out.append(Violation(kind, detail))

    if rec.dim not in (2, 4):
        flag("DimensionViolation", f"dim must be 2 or 4, got {rec.dim}")
        return out
    for side, comps in (("incoming", rec.incoming), ("outgoing", rec.outgoing)):
        labels = [c.label for c in comps]
        dupes = sorted({lab for lab in labels if labels.count(lab) > 1})
        if dupes:
            flag("DuplicateLabel", f"{side} boundary repeats {dupes}")
        for c in comps:
            if (c.kind is Kind.CIRCLE) != (rec.dim == 2):
                flag("BoundaryKindViolation", f"{c.kind.value} {c.label!r} in a dim {rec.dim} record")
    if rec.b1 is not None and rec.b1 < 0:
        flag("NegativeB1", f"b1 = {rec.b1}")
    if rec.pieces is not None and rec.pieces < 0:
        flag("NegativePieces", f"pieces = {rec.pieces}")

    if rec.dim == 2:
        if rec.sigma != 0:
            flag("SurfaceSignature", f"surfaces carry no signature, got {rec.sigma}")
        if rec.genus < 0:
            flag("NegativeGenus", f"genus = {rec.genus}")
        if rec.pieces is not None:
            expected = 2 * rec.pieces - 2 * rec.genus - len(rec.incoming) - len(rec.outgoing)
            if rec.chi != expected:
                flag("SurfaceEulerViolation", f"chi = {rec.chi}, genus and boundary give {expected}")
        return out

    lat = rec.lattice
    prof = analyze(lat)
    if prof.signature != rec.sigma:
        flag("SignatureMismatch", f"sigma = {rec.sigma} but the lattice has signature {prof.signature}")
    if not prof.unimodular:
        flag("LatticeNotUnimodular", f"determinant {prof.determinant}")
    if rec.spin and not prof.even:
        flag("SpinParityViolation", "spin manifold with an odd intersection form")
    if rec.c1 is not None:
        if len(rec.c1) != lat.rank:
            flag("C1LengthMismatch", f"c1 has {len(rec.c1)} entries, lattice rank {lat.rank}")
        else:
            if not is_characteristic(lat, rec.c1):
                flag("C1NotCharacteristic", "c1 does not reduce to w2 mod 2")
            c1_even = all(v % 2 == 0 for v in rec.c1)
            if rec.spin != c1_even:
                flag("SpinC1Mismatch", f"spin = {rec.spin} but c1 is {'even' if c1_even else 'odd'}")
    if rec.closed and rec.b1 is not None and rec.pieces is not None:
        expected = 2 * rec.pieces - 2 * rec.b1 + lat.rank
        if rec.chi != expected:
            flag("EulerBettiViolation", f"chi = {rec.chi}, Betti numbers give {expected}")
    if rec.closed and rec.smooth and prof.unimodular:
        if not smooth_closed_constraint(lat).smoothly_admissible:
            flag("DonaldsonObstruction", "smooth closed record with a non-diagonalizable definite form")
    return out


def _concat_c1(a: CobordismRecord, b: CobordismRecord):
    if a.c1 is None or b.c1 is None:
        return None
    return a.c1 + b.c1


def _add_opt(a: int | None, b: int | None) -> int | None:
    return None if a is None or b is None else a + b


def compose(w1: CobordismRecord, w2: CobordismRecord) -> CobordismRecord:
    """Glue the outgoing boundary of ``w1`` to the incoming boundary of ``w2``."""
    if w1.outgoing != w2.incoming:
        raise BoundaryMismatch(
            f"cannot glue {_fmt_boundary(w1.outgoing)} to {_fmt_boundary(w2.incoming)}",
            outgoing=_fmt_boundary(w1.outgoing),
            incoming=_fmt_boundary(w2.incoming),
        )
    # the empty manifold has every dimension
    if w1.is_empty():
        return w2
    if w2.is_empty():
        return w1
    if w1.dim != w2.dim:
        raise DimensionMismatch(f"cannot glue dim {w1.dim} to dim {w2.dim}")
    c = len(w1.outgoing)
    # interfaces are circles or homology 3-spheres, all of Euler characteristic 0
    chi = euler_glue(w1.chi, w2.chi, 0)
    common = dict(
        dim=w1.dim,
        incoming=w1.incoming,
        outgoing=w2.outgoing,
        chi=chi,
        spin=w1.spin and w2.spin,
        c1=_concat_c1(w1, w2),
        smooth=w1.smooth and w2.smooth,
    )
    if w1.dim == 2:
        if c == 0:
            pieces, genus = _add_opt(w1.pieces, w2.pieces), w1.genus + w2.genus
        elif w1.pieces == 1 and w2.pieces == 1:
            # c circles joining two connected pieces add c - 1 hyperbolic planes
            pieces, genus = 1, w1.genus + w2.genus + c - 1
        else:
            raise NotConnectedInterface(
                f"gluing along {c} circles needs two connected surfaces, "
                f"got {w1.pieces} and {w2.pieces} pieces"
            )
        return CobordismRecord(**common, sigma=0, genus=genus, pieces=pieces, b1=None)

    if c <= 1:
        pieces = None if w1.pieces is None or w2.pieces is None else w1.pieces + w2.pieces - c
        b1 = _add_opt(w1.b1, w2.b1)
    else:
        pieces = b1 = None
    return CobordismRecord(
        **common,
        sigma=w1.sigma + w2.sigma,
        lattice=direct_sum(w1.lattice, w2.lattice),
        pieces=pieces,
        b1=b1,
    )


def disjoint_union(w1: CobordismRecord, w2: CobordismRecord) -> CobordismRecord:
    if w1.is_empty():
        return w2
    if w2.is_empty():
        return w1
    if w1.dim != w2.dim:
        raise DimensionMismatch(f"cannot take the union of dim {w1.dim} and dim {w2.dim}")
    for a, b in ((w1.incoming, w2.incoming), (w1.outgoing, w2.outgoing)):
        shared = sorted({c.label for c in a} & {c.label for c in b})
        if shared:
            raise LabelCollision(f"labels {shared} occur on both sides of the union", labels=shared)
    return CobordismRecord(
        dim=w1.dim,
        incoming=w1.incoming + w2.incoming,
        outgoing=w1.outgoing + w2.outgoing,
        chi=w1.chi + w2.chi,
        sigma=w1.sigma + w2.sigma,
        lattice=direct_sum(w1.lattice, w2.lattice),
        spin=w1.spin and w2.spin,
        c1=_concat_c1(w1, w2),
        smooth=w1.smooth and w2.smooth,
        b1=_add_opt(w1.b1, w2.b1),
        genus=w1.genus + w2.genus,
        pieces=_add_opt(w1.pieces, w2.pieces),
    )


def reverse_morphism(w: CobordismRecord) -> CobordismRecord:
    """Reverse orientation: boundaries swap, the form and signature change sign."""
    return replace(
        w,
        incoming=w.outgoing,
        outgoing=w.incoming,
        sigma=-w.sigma,
        lattice=negate(w.lattice),
        name=f"rev({w.name})" if w.name else None,
    )


def relabel(w: CobordismRecord, incoming: Mapping[str, str] | None = None,
            outgoing: Mapping[str, str] | None = None) -> CobordismRecord:
    """Rename boundary labels; unmapped labels are kept."""
    def ren(b: Boundary, m):
        if not m:
            return b
        unknown = set(m) - {c.label for c in b}
        if unknown:
            raise BoundaryMismatch(f"relabel refers to missing labels {sorted(unknown)}")
        return tuple(BoundaryComponent(m.get(c.label, c.label), c.kind) for c in b)

    return replace(w, incoming=ren(w.incoming, incoming), outgoing=ren(w.outgoing, outgoing))


def reorder(w: CobordismRecord, incoming: Sequence[str] | None = None,
            outgoing: Sequence[str] | None = None) -> CobordismRecord:
    """Permute boundary components into the given label order."""
    def perm(b: Boundary, order):
        if order is None:
            return b
        by_label = {c.label: c for c in b}
        if sorted(order) != sorted(by_label):
            raise BoundaryMismatch(f"order {list(order)} is not a permutation of {sorted(by_label)}")
        return tuple(by_label[lab] for lab in order)

    return replace(w, incoming=perm(w.incoming, incoming), outgoing=perm(w.outgoing, outgoing))


@dataclass(frozen=True)
class FunctorValue:
    k0: K0Class
    warnings: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {**self.k0.to_json(), "warnings": list(self.warnings)}


def functor_class(w: CobordismRecord) -> FunctorValue:
    """Image of a spin 4-dimensional record in K0 of even unimodular lattices."""
    if w.dim != 4:
        raise DimensionMismatch("the K0 functor is defined on 4-dimensional records")
    cls, definite = k0_class_with_flags(w.lattice)
    return FunctorValue(cls, ("DefiniteLattice",) if definite else ())


def quadric_check(w: CobordismRecord) -> bool:
    """c1^2 = 2 chi + 3 sigma, the relation satisfied by algebraic surfaces."""
    if w.dim != 4 or not w.closed:
        raise NotClosed("quadric check needs a closed 4-dimensional record")
    if w.c1 is None:
        raise MissingC1("record has no c1")
    if len(w.c1) != w.lattice.rank:
        raise DimensionMismatch("c1 length differs from lattice rank")
    return w.lattice.norm(w.c1) == 2 * w.chi + 3 * w.sigma


# -- a few standard records ----------------------------------------------------

def empty_record(dim: int = 4) -> CobordismRecord:
    return CobordismRecord(dim=dim, spin=True, c1=(), b1=0, pieces=0, name="Empty")


def cylinder(obj: Boundary, dim: int = 4) -> CobordismRecord:
    """obj x [0, 1]: the identity on ``obj`` at the level of invariants."""
    obj = tuple(obj)
    return CobordismRecord(dim=dim, incoming=obj, outgoing=obj, spin=True, c1=(),
                           b1=0, pieces=len(obj), name="cylinder")


def s4() -> CobordismRecord:
    return CobordismRecord(dim=4, chi=2, spin=True, c1=(), b1=0, name="S4")


def cp2(c1: int = 3) -> CobordismRecord:
    return CobordismRecord(dim=4, chi=3, sigma=1, lattice=diagonal([1], "<1>"),
                           c1=(c1,), b1=0, name="CP2")


def cp2_bar() -> CobordismRecord:
    return reverse_morphism(cp2())


def k3_surface() -> CobordismRecord:
    return CobordismRecord(dim=4, chi=24, sigma=-16, lattice=k3(), spin=True,
                           c1=(0,) * 22, b1=0, name="K3")


def e8_plumbing(label: str = "P") -> CobordismRecord:
    """The E8 plumbing, bounded by the Poincare homology sphere."""
    return CobordismRecord(dim=4, outgoing=boundary((label, Kind.HOMOLOGY_SPHERE)), chi=9,
                           sigma=8, lattice=e8(), spin=True, b1=0, name="E8plumb")


def surface(genus: int, incoming: int = 0, outgoing: int = 0, prefix: str = "c") -> CobordismRecord:
    """A connected surface with circles ``{prefix}1, {prefix}2, ...``."""
    inc = tuple(BoundaryComponent(f"{prefix}{i + 1}", Kind.CIRCLE) for i in range(incoming))
    out = tuple(BoundaryComponent(f"{prefix}{i + 1}", Kind.CIRCLE) for i in range(outgoing))
    return CobordismRecord(dim=2, incoming=inc, outgoing=out,
                           chi=2 - 2 * genus - incoming - outgoing, genus=genus)
