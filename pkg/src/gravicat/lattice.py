"""Integral symmetric bilinear forms.

A :class:`Lattice` is a Gram matrix of Python ints. All invariants are
computed exactly: signatures by symmetric Gaussian elimination over
:class:`fractions.Fraction`, determinants by Bareiss elimination.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import MalformedGram, NotUnimodular, UnknownLattice
from .intlinalg import bareiss_det


class Parity(str, enum.Enum):
    EVEN = "Even"
    ODD = "Odd"


class Definiteness(str, enum.Enum):
    POSITIVE = "PositiveDefinite"
    NEGATIVE = "NegativeDefinite"
    INDEFINITE = "Indefinite"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class Lattice:
    gram: tuple[tuple[int, ...], ...]
    label: str | None = field(default=None, compare=False)

    def __post_init__(self):
        try:
            rows = tuple(tuple(row) for row in self.gram)
        except TypeError:
            raise MalformedGram("gram must be a list of rows") from None
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise MalformedGram(f"row {i} has length {len(row)}, expected {n}")
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise MalformedGram(f"non-integer Gram entry {x!r}")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise MalformedGram(f"gram[{i}][{j}] != gram[{j}][{i}]")
        object.__setattr__(self, "gram", rows)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def inner(self, x: Sequence, y: Sequence):
        return sum(x[i] * gij * y[j]
                   for i, row in enumerate(self.gram) if x[i]
                   for j, gij in enumerate(row) if gij)

    def norm(self, x: Sequence):
        return self.inner(x, x)

    def apply(self, x: Sequence) -> list:
        """G x."""
        return [sum(g * v for g, v in zip(row, x)) for row in self.gram]

    def change_basis(self, p: Sequence[Sequence[int]]) -> Lattice:
        """The form in the basis given by the columns of ``p`` (P^T G P)."""
        n = self.rank
        cols = [[p[i][j] for i in range(n)] for j in range(len(p[0]) if n else 0)]
        gcols = [self.apply(c) for c in cols]
        gram = [[sum(a * b for a, b in zip(u, gv)) for gv in gcols] for u in cols]
        return Lattice(gram, self.label)

    def to_json(self) -> dict:
        out: dict = {}
        if self.label is not None:
            out["label"] = self.label
        out["gram"] = [list(row) for row in self.gram]
        return out

    @classmethod
    def from_json(cls, data: dict) -> Lattice:
        if not isinstance(data, dict) or "gram" not in data:
            raise MalformedGram("lattice JSON needs a 'gram' field")
        return cls(data["gram"], data.get("label"))

    def __repr__(self):
        name = f"{self.label!r}, " if self.label else ""
        return f"Lattice({name}rank={self.rank})"


EMPTY = Lattice((), "empty")


def diagonal(entries: Iterable[int], label: str | None = None) -> Lattice:
    entries = list(entries)
    n = len(entries)
    return Lattice([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], label)


@dataclass(frozen=True)
class LatticeProfile:
    rank: int
    b_plus: int
    b_minus: int
    signature: int
    determinant: int
    parity: Parity
    unimodular: bool
    definite: Definiteness

    @property
    def nullity(self) -> int:
        return self.rank - self.b_plus - self.b_minus

    @property
    def even(self) -> bool:
        return self.parity is Parity.EVEN

    @property
    def indefinite(self) -> bool:
        return self.definite is Definiteness.INDEFINITE

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "b_plus": self.b_plus,
            "b_minus": self.b_minus,
            "signature": self.signature,
            "determinant": self.determinant,
            "parity": self.parity.value,
            "unimodular": self.unimodular,
            "definite": self.definite.value,
        }


def eigen_signs(gram: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric matrix.

    Symmetric elimination with 1x1 pivots; when every remaining diagonal
    entry vanishes but an off-diagonal one does not, the 2x2 block
    [[0, a], [a, 0]] is split off as a hyperbolic pivot worth (+1, -1).
    Each step is a congruence, so Sylvester's law of inertia applies.
    """
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = 0
    while a:
        n = len(a)
        diag = [i for i in range(n) if a[i][i] != 0]
        if diag:
            # smallest pivot keeps the rationals small
            k = min(diag, key=lambda i: abs(a[i][i]))
            p = a[k][k]
            if p > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in range(n) if i != k]
            a = [[a[r][s] - a[r][k] * a[k][s] / p for s in rest] for r in rest]
            continue
        pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
        if pair is None:
            return pos, neg, n
        i, j = pair
        h = a[i][j]
        pos += 1
        neg += 1
        rest = [r for r in range(n) if r not in (i, j)]
        # Schur complement against [[0, h], [h, 0]], whose inverse is [[0, 1/h], [1/h, 0]]
        a = [[a[r][s] - (a[r][i] * a[j][s] + a[r][j] * a[i][s]) / h for s in rest] for r in rest]
    return pos, neg, 0


def analyze(lat: Lattice) -> LatticeProfile:
    pos, neg, zero = eigen_signs(lat.gram)
    n = lat.rank
    det = bareiss_det(lat.gram)
    parity = Parity.EVEN if all(lat.gram[i][i] % 2 == 0 for i in range(n)) else Parity.ODD
    if zero:
        definite = Definiteness.DEGENERATE
    elif neg == 0:
        # the empty lattice lands here (vacuously positive definite)
        definite = Definiteness.POSITIVE
    elif pos == 0:
        definite = Definiteness.NEGATIVE
    else:
        definite = Definiteness.INDEFINITE
    return LatticeProfile(
        rank=n,
        b_plus=pos,
        b_minus=neg,
        signature=pos - neg,
        determinant=det,
        parity=parity,
        unimodular=abs(det) == 1,
        definite=definite,
    )


def _joined_label(a: Lattice, b: Lattice, op: str) -> str | None:
    if a.label and b.label:
        return f"{a.label} {op} {b.label}"
    return None


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    n, m = a.rank, b.rank
    gram = [list(row) + [0] * m for row in a.gram]
    gram += [[0] * n + list(row) for row in b.gram]
    return Lattice(gram, _joined_label(a, b, "+"))


def direct_sum_all(lattices: Iterable[Lattice], label: str | None = None) -> Lattice:
    out = EMPTY
    for lat in lattices:
        out = direct_sum(out, lat)
    return Lattice(out.gram, label)


def tensor_product(a: Lattice, b: Lattice) -> Lattice:
    """Kronecker product: basis e_i (x) f_k in lexicographic (i, k) order."""
    m = b.rank
    n = a.rank * m
    gram = [[a.gram[r // m][s // m] * b.gram[r % m][s % m] for s in range(n)] for r in range(n)]
    return Lattice(gram, _joined_label(a, b, "x"))


def negate(lat: Lattice) -> Lattice:
    label = lat.label
    if label:
        label = label[:-4] if label.endswith("(-1)") else f"{label}(-1)"
    return Lattice([[-x for x in row] for row in lat.gram], label)


def characteristic_vector(lat: Lattice) -> tuple[int, ...]:
    """The {0,1} vector w with G w = diag(G) mod 2.

    Solvable and unique whenever det(G) is odd, i.e. G is invertible mod 2.
    """
    n = lat.rank
    if bareiss_det(lat.gram) % 2 == 0:
        raise NotUnimodular("characteristic vector needs an odd determinant")
    # Gauss-Jordan over GF(2) on the augmented system [G mod 2 | diag mod 2]
    rows = [[x & 1 for x in lat.gram[i]] + [lat.gram[i][i] & 1] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if rows[r][c])
        rows[c], rows[p] = rows[p], rows[c]
        for r in range(n):
            if r != c and rows[r][c]:
                rows[r] = [x ^ y for x, y in zip(rows[r], rows[c])]
    return tuple(rows[i][n] for i in range(n))


def is_characteristic(lat: Lattice, w: Sequence[int]) -> bool:
    gw = lat.apply(w)
    return all((gw[i] - lat.gram[i][i]) % 2 == 0 for i in range(lat.rank))


# Bourbaki-style E8 Dynkin diagram: chain 0-1-2-3-4-5-6 with node 7 on node 4
_E8_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]


def e8() -> Lattice:
    gram = [[2 if i == j else 0 for j in range(8)] for i in range(8)]
    for i, j in _E8_EDGES:
        gram[i][j] = gram[j][i] = -1
    return Lattice(gram, "E8")


def hyperbolic_plane() -> Lattice:
    return Lattice([[0, 1], [1, 0]], "U")


def odd_form(p: int, q: int) -> Lattice:
    """I_{p,q} = <1>^p + <-1>^q."""
    return diagonal([1] * p + [-1] * q, f"I_{p}_{q}")


def k3() -> Lattice:
    u = hyperbolic_plane()
    e = negate(e8())
    return direct_sum_all([u, u, u, e, e], "K3")


_I_PQ = re.compile(r"I_(\d+)_(\d+)")


def builtin(name: str) -> Lattice:
    """Named lattices: ``U``, ``E8``, ``E8(-1)``, ``I_p_q`` and ``K3``."""
    if name == "U":
        return hyperbolic_plane()
    if name == "E8":
        return e8()
    if name == "E8(-1)":
        return negate(e8())
    if name == "K3":
        return k3()
    m = _I_PQ.fullmatch(name)
    if m:
        return odd_form(int(m.group(1)), int(m.group(2)))
    raise UnknownLattice(f"unknown builtin lattice {name!r}", name=name)


BUILTIN_NAMES = ("U", "E8", "E8(-1)", "I_p_q", "K3")
