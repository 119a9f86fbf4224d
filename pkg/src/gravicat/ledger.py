"""Charge and degree bookkeeping for formal Donaldson invariants.

Values live in Sym(H_*(W)) with rational coefficients: the free
graded-commutative algebra on generators ``w_i^(j)`` (the j-th basis element
of H_i). Odd generators anticommute and square to zero. A monomial has a
weight (number of factors, the symmetric-product charge) and a degree (sum
of homological degrees).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import (
    LedgerError,
    MissingCharge,
    MissingGenerators,
    NotDivisible,
    ParityViolation,
)

Generator = tuple[str, int, int]  # (name, homological degree, index)
Monomial = tuple[tuple[Generator, int], ...]  # sorted by generator


def expected_dimension(d: int, chi: int, sigma: int) -> int:
    """8d - 3(sigma + chi)/2."""
    if (chi + sigma) % 2:
        raise ParityViolation(f"chi + sigma = {chi + sigma} is odd")
    return 8 * d - 3 * (sigma + chi) // 2


def ledger_degree(input_degree: int, d: int, chi: int, sigma: int) -> int:
    return input_degree + expected_dimension(d, chi, sigma)


def normalized_degree(input_degree: int, d: int, chi: int, sigma: int) -> int:
    """Degree after dividing by (w0 w4^2)^d; independent of d."""
    return ledger_degree(input_degree, d, chi, sigma) - 8 * d


def _mono_mul(a: Monomial, b: Monomial) -> tuple[int, Monomial]:
    """Product of two monomials as (sign, monomial); sign 0 when it vanishes."""
    odd_a = [g for g, _ in a if g[1] % 2]
    odd_b = [g for g, _ in b if g[1] % 2]
    if set(odd_a) & set(odd_b):
        return 0, ()
    # moving each odd factor of b left past the larger odd factors of a
    swaps = sum(1 for x in odd_a for y in odd_b if x > y)
    powers: dict[Generator, int] = dict(a)
    for g, p in b:
        powers[g] = powers.get(g, 0) + p
    return (-1) ** swaps, tuple(sorted(powers.items()))


class SymElement:
    """An immutable element of the graded-commutative symmetric algebra."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Fraction(coeff)
            if coeff:
                clean[mono] = coeff
        self._terms = clean

    @classmethod
    def scalar(cls, c) -> SymElement:
        return cls({(): Fraction(c)})

    @classmethod
    def one(cls) -> SymElement:
        return cls.scalar(1)

    @classmethod
    def generator(cls, degree: int, index: int = 1, name: str = "w") -> SymElement:
        return cls({(((name, degree, index), 1),): Fraction(1)})

    @classmethod
    def monomial(cls, *factors: tuple[int, int, int], coeff=1, name: str = "w") -> SymElement:
        """``monomial((0, 1, 1), (4, 1, 2))`` is w0 * w4^2 (factors are degree, index, power)."""
        out = cls.scalar(coeff)
        for degree, index, power in factors:
            out = out * cls.generator(degree, index, name) ** power
        return out

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymElement.scalar(other)
        if not isinstance(other, SymElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymElement.scalar(other)
        terms = dict(self._terms)
        for mono, c in other._terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return SymElement(terms)

    __radd__ = __add__

    def __neg__(self):
        return SymElement({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymElement({m: c * other for m, c in self._terms.items()})
        terms: dict[Monomial, Fraction] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                sign, mono = _mono_mul(ma, mb)
                if sign:
                    terms[mono] = terms.get(mono, Fraction(0)) + sign * ca * cb
        return SymElement(terms)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        out = SymElement.one()
        for _ in range(k):
            out = out * self
        return out

    def divide_monomial(self, mono: Monomial) -> SymElement:
        """Exact division by a monomial in even generators."""
        if any(g[1] % 2 for g, _ in mono):
            raise NotDivisible("division by odd generators is not supported")
        need = dict(mono)
        terms = {}
        for m, c in self._terms.items():
            powers = dict(m)
            for g, p in need.items():
                if powers.get(g, 0) < p:
                    raise NotDivisible(f"term {_fmt_mono(m)} is not divisible by {_fmt_mono(mono)}")
                powers[g] -= p
            terms[tuple(sorted((g, p) for g, p in powers.items() if p))] = c
        return SymElement(terms)

    def bidegrees(self) -> set[tuple[int, int]]:
        """{(weight, degree)} over the monomials present."""
        return {(sum(p for _, p in m), sum(g[1] * p for g, p in m)) for m in self._terms}

    def generators(self) -> set[Generator]:
        return {g for m in self._terms for g, _ in m}

    def shift_indices(self, offset: Mapping[tuple[str, int], int]) -> SymElement:
        """Rename w_i^(j) to w_i^(j + offset[(name, i)])."""
        def shift(m):
            return tuple(((n, i, j + offset.get((n, i), 0)), p) for (n, i, j), p in m)
        # shifting by a per-degree constant preserves the generator order
        return SymElement({shift(m): c for m, c in self._terms.items()})

    def to_json(self) -> list:
        return [
            {"coeff": f"{c.numerator}/{c.denominator}",
             "monomial": [[n, i, j, p] for (n, i, j), p in m]}
            for m, c in sorted(self._terms.items())
        ]

    @classmethod
    def from_json(cls, data: Sequence) -> SymElement:
        out = SymElement()
        for term in data:
            factor = SymElement.scalar(Fraction(str(term["coeff"])))
            for name, i, j, p in term["monomial"]:
                factor = factor * SymElement.generator(int(i), int(j), str(name)) ** int(p)
            out = out + factor
        return out

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items()):
            mono = _fmt_mono(m)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)


def _fmt_mono(m: Monomial) -> str:
    out = []
    for (name, i, j), p in m:
        s = f"{name}{i}_{j}"
        out.append(s if p == 1 else f"{s}^{p}")
    return "*".join(out)


W0 = (("w", 0, 1), 1)
W4SQ = (("w", 4, 1), 2)
SIMPLE_FACTOR: Monomial = (W0, W4SQ)  # w0 * w4^2, weight 3 and degree 8


def simple_factor() -> SymElement:
    return SymElement({SIMPLE_FACTOR: Fraction(1)})


# -- Betti profiles and dimensions of Sym -------------------------------------

@dataclass(frozen=True)
class BettiProfile:
    b: tuple[int, ...]
    closed_connected: bool = False

    def __post_init__(self):
        b = tuple(int(x) for x in self.b)
        if len(b) != 5 or any(x < 0 for x in b):
            raise LedgerError(f"betti profile needs 5 nonnegative entries, got {list(self.b)}")
        if self.closed_connected and (b[0] != 1 or b[4] != 1 or b[1] != b[3]):
            raise LedgerError(f"{list(b)} violates Poincare duality for a closed connected manifold")
        object.__setattr__(self, "b", b)

    def generators(self, name: str = "w") -> list[SymElement]:
        return [SymElement.generator(i, j + 1, name) for i in range(5) for j in range(self.b[i])]


def sym_dimensions(betti: BettiProfile | Sequence[int], weight: int) -> dict[int, int]:
    """Nonzero dimensions of the weight-``weight`` part of Sym, keyed by degree.

    Coefficients of s^weight in prod_{i even} (1 - s t^i)^(-b_i) * prod_{i odd} (1 + s t^i)^(b_i).
    """
    b = betti.b if isinstance(betti, BettiProfile) else BettiProfile(tuple(betti)).b
    # series[w][deg] = count
    series: list[dict[int, int]] = [dict() for _ in range(weight + 1)]
    series[0][0] = 1
    for i, count in enumerate(b):
        for _ in range(count):
            new = [dict() for _ in range(weight + 1)]
            for w, row in enumerate(series):
                for deg, c in row.items():
                    # even generators: any power; odd generators: power 0 or 1
                    top = weight - w if i % 2 == 0 else min(1, weight - w)
                    for k in range(top + 1):
                        key = deg + i * k
                        new[w + k][key] = new[w + k].get(key, 0) + c
            series = new
    return dict(sorted(series[weight].items()))


def sym_dimension(betti: BettiProfile | Sequence[int], weight: int, degree: int) -> int:
    return sym_dimensions(betti, weight).get(degree, 0)


# -- ledgers -------------------------------------------------------------------

@dataclass(frozen=True)
class LedgerEntry:
    d: int
    input_degree: int
    value: SymElement

    def to_json(self) -> dict:
        return {"d": self.d, "input_degree": self.input_degree, "value": self.value.to_json()}

    @classmethod
    def from_json(cls, data: Mapping) -> LedgerEntry:
        return cls(int(data["d"]), int(data["input_degree"]), SymElement.from_json(data["value"]))


def ledger_to_json(entries: Iterable[LedgerEntry]) -> list:
    return [e.to_json() for e in entries]


def ledger_from_json(data: Sequence) -> list[LedgerEntry]:
    try:
        return [LedgerEntry.from_json(e) for e in data]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise LedgerError(f"malformed ledger: {exc}") from None


def _contiguous(entries: Sequence[LedgerEntry]) -> list[LedgerEntry]:
    ordered = sorted(entries, key=lambda e: e.d)
    for k, e in enumerate(ordered):
        if e.d != k:
            raise MissingCharge(f"charges must run 0, 1, 2, ...; missing charge {k}", charge=k)
    return ordered


def index_offset(entries: Iterable[LedgerEntry]) -> dict[tuple[str, int], int]:
    """Largest generator index per (name, degree) used by a ledger."""
    offset: dict[tuple[str, int], int] = {}
    for e in entries:
        for name, i, j in e.value.generators():
            offset[(name, i)] = max(offset.get((name, i), 0), j)
    return offset


def convolve_disjoint(a: Sequence[LedgerEntry], b: Sequence[LedgerEntry], dmax: int,
                      betti_a: BettiProfile | None = None) -> list[LedgerEntry]:
    """Ledger of the disjoint union: entry d is sum over d0 + d1 = d of a[d0] * b[d1].

    The generators of ``b`` are appended after those of ``a``: their indices
    are shifted by the Betti numbers of ``a`` when given, otherwise by the
    largest index ``a`` uses in each degree.
    """
    a = _contiguous(a)
    b = _contiguous(b)
    if betti_a is not None:
        offset = {("w", i): n for i, n in enumerate(betti_a.b)}
    else:
        offset = index_offset(a)
    b_values = [e.value.shift_indices(offset) for e in b]
    out = []
    for d in range(min(dmax, len(a) + len(b) - 2) + 1):
        total = SymElement()
        degrees = set()
        for d0 in range(max(0, d - len(b) + 1), min(d, len(a) - 1) + 1):
            total = total + a[d0].value * b_values[d - d0]
            degrees.add(a[d0].input_degree + b[d - d0].input_degree)
        if len(degrees) != 1:
            raise LedgerError(f"charge {d} mixes input degrees {sorted(degrees)}")
        out.append(LedgerEntry(d, degrees.pop(), total))
    return out


def unit_ledger() -> list[LedgerEntry]:
    return [LedgerEntry(0, 0, SymElement.one())]


def _require_generators(betti: BettiProfile | None) -> None:
    if betti is not None and (betti.b[0] == 0 or betti.b[4] == 0):
        raise MissingGenerators("simple type needs generators w0 and w4")


def simple_type_check(entries: Sequence[LedgerEntry], betti: BettiProfile | None = None) -> bool:
    """value(d + 1) == w0 * w4^2 * value(d) for all consecutive charges."""
    _require_generators(betti)
    if not entries:
        raise LedgerError("empty ledger")
    ordered = _contiguous(entries)
    f = simple_factor()
    return all(nxt.value == f * cur.value for cur, nxt in zip(ordered, ordered[1:]))


def normalize(entries: Sequence[LedgerEntry], betti: BettiProfile | None = None) -> list[LedgerEntry]:
    """Divide entry d by (w0 w4^2)^d."""
    _require_generators(betti)
    out = []
    for e in _contiguous(entries):
        mono = tuple((g, p * e.d) for g, p in SIMPLE_FACTOR) if e.d else ()
        out.append(LedgerEntry(e.d, e.input_degree, e.value.divide_monomial(mono)))
    return out


def twist(entries: Sequence[LedgerEntry]) -> list[LedgerEntry]:
    """Multiply entry d by (w0 w4^2)^d; inverse of :func:`normalize`."""
    f = simple_factor()
    return [LedgerEntry(e.d, e.input_degree, f ** e.d * e.value) for e in _contiguous(entries)]
