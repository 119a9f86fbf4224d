import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from builders import PIECES, positive_definite, random_unimodular, scramble
from gravicat.errors import MalformedGram, NotUnimodular, UnknownLattice
from gravicat.lattice import (
    EMPTY,
    Definiteness,
    Lattice,
    Parity,
    analyze,
    builtin,
    characteristic_vector,
    diagonal,
    direct_sum,
    direct_sum_all,
    e8,
    eigen_signs,
    hyperbolic_plane,
    is_characteristic,
    negate,
    tensor_product,
)
from gravicat.intlinalg import bareiss_det

piece_names = st.sampled_from(sorted(PIECES))
summands = st.lists(piece_names, min_size=1, max_size=4)


def build(names):
    return direct_sum_all([PIECES[n]() for n in names])


small_grams = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(-3, 3), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2).map(
        lambda xs, n=n: _symmetric(n, xs)
    )
)


def _symmetric(n, xs):
    g = [[0] * n for _ in range(n)]
    it = iter(xs)
    for i in range(n):
        for j in range(i, n):
            g[i][j] = g[j][i] = next(it)
    return g


class TestAnalyze:
    def test_hyperbolic_plane(self):
        p = analyze(hyperbolic_plane())
        assert (p.rank, p.signature, p.b_plus, p.b_minus, p.determinant) == (2, 0, 1, 1, -1)
        assert p.parity is Parity.EVEN and p.unimodular
        assert p.definite is Definiteness.INDEFINITE

    def test_empty(self):
        p = analyze(EMPTY)
        assert (p.rank, p.signature, p.determinant) == (0, 0, 1)
        assert p.parity is Parity.EVEN and p.unimodular

    def test_e8_against_leading_minors(self):
        g = e8().gram
        assert oracles.jacobi_inertia(g) == (8, 0)
        assert oracles.determinant(g) == 1
        p = analyze(e8())
        assert (p.rank, p.signature, p.determinant) == (8, 8, 1)
        assert p.parity is Parity.EVEN
        assert p.definite is Definiteness.POSITIVE

    def test_degenerate(self):
        p = analyze(Lattice([[1, 1], [1, 1]]))
        assert (p.b_plus, p.b_minus, p.nullity) == (1, 0, 1)
        assert p.definite is Definiteness.DEGENERATE
        assert not p.unimodular

    def test_zero_diagonal_needs_hyperbolic_pivot(self):
        g = [[0, 1, 0], [1, 0, 2], [0, 2, 0]]
        assert eigen_signs(g) == oracles.inertia(g)

    @given(small_grams)
    def test_inertia_matches_charpoly(self, g):
        assert eigen_signs(g) == oracles.inertia(g)

    @given(small_grams)
    def test_determinant_matches_sympy(self, g):
        assert bareiss_det(g) == oracles.determinant(g)

    def test_to_json(self):
        assert analyze(hyperbolic_plane()).to_json()["parity"] == "Even"


class TestConstruction:
    def test_diag_sum(self):
        lat = direct_sum(diagonal([1]), diagonal([-1]))
        assert lat.gram == ((1, 0), (0, -1))
        p = analyze(lat)
        assert p.signature == 0 and p.parity is Parity.ODD

    def test_e8_plus_e8_bar(self):
        p = analyze(direct_sum(e8(), negate(e8())))
        assert (p.rank, p.signature, p.even, p.indefinite) == (16, 0, True, True)

    @pytest.mark.parametrize("other,rank", [(hyperbolic_plane(), 4), (e8(), 16)])
    def test_tensor_with_u(self, other, rank):
        p = analyze(tensor_product(hyperbolic_plane(), other))
        assert (p.rank, p.signature, p.even) == (rank, 0, True)

    @given(summands, summands)
    def test_direct_sum_is_additive(self, a, b):
        la, lb = build(a), build(b)
        pa, pb, ps = analyze(la), analyze(lb), analyze(direct_sum(la, lb))
        assert ps.rank == pa.rank + pb.rank
        assert ps.signature == pa.signature + pb.signature
        assert ps.determinant == pa.determinant * pb.determinant

    @settings(max_examples=30, deadline=None)
    @given(st.lists(piece_names, min_size=1, max_size=2), st.lists(piece_names, min_size=1, max_size=2))
    def test_tensor_is_multiplicative(self, a, b):
        la, lb = build(a), build(b)
        pa, pb, pt = analyze(la), analyze(lb), analyze(tensor_product(la, lb))
        assert pt.rank == pa.rank * pb.rank
        assert pt.signature == pa.signature * pb.signature

    @given(summands, summands, summands)
    def test_associativity_of_invariants(self, a, b, c):
        la, lb, lc = build(a), build(b), build(c)
        left = direct_sum(direct_sum(la, lb), lc)
        right = direct_sum(la, direct_sum(lb, lc))
        assert left.gram == right.gram
        t1 = analyze(tensor_product(tensor_product(diagonal([1, -1]), hyperbolic_plane()), diagonal([2])))
        t2 = analyze(tensor_product(diagonal([1, -1]), tensor_product(hyperbolic_plane(), diagonal([2]))))
        assert t1 == t2

    @given(small_grams)
    def test_negate_is_involution(self, g):
        lat = Lattice(g)
        assert negate(negate(lat)).gram == lat.gram
        assert analyze(negate(negate(lat))) == analyze(lat)

    def test_negate_label(self):
        assert negate(e8()).label == "E8(-1)"
        assert negate(negate(e8())).label == "E8"

    @given(small_grams)
    def test_parity_is_diagonal_parity(self, g):
        assert analyze(Lattice(g)).even == all(g[i][i] % 2 == 0 for i in range(len(g)))


class TestCharacteristicVector:
    def test_examples(self):
        assert characteristic_vector(diagonal([1])) == (1,)
        assert characteristic_vector(e8()) == (0,) * 8
        w = characteristic_vector(diagonal([1, -1, -1]))
        assert w == (1, 1, 1)
        assert diagonal([1, -1, -1]).norm(w) == -1

    def test_even_determinant_rejected(self):
        with pytest.raises(NotUnimodular):
            characteristic_vector(diagonal([2]))

    @settings(deadline=None)
    @given(summands, st.randoms(use_true_random=False))
    def test_unique_solution_matches_enumeration(self, names, rng):
        lat = scramble(build(names), rng)
        if lat.rank <= 12:
            assert oracles.characteristic_vectors(lat.gram) == [characteristic_vector(lat)]
        assert is_characteristic(lat, characteristic_vector(lat))

    @given(summands, st.randoms(use_true_random=False))
    def test_even_means_zero(self, names, rng):
        lat = scramble(build(names), rng)
        if analyze(lat).even:
            assert not any(characteristic_vector(lat))

    @given(st.randoms(use_true_random=False))
    def test_van_der_blij(self, rng):
        _, lat = random_unimodular(rng)
        lat = scramble(lat, rng)
        w = characteristic_vector(lat)
        assert (analyze(lat).signature - lat.norm(w)) % 8 == 0


class TestBuiltin:
    def test_names(self):
        assert builtin("U").gram == ((0, 1), (1, 0))
        assert builtin("I_2_1").gram == ((1, 0, 0), (0, 1, 0), (0, 0, -1))
        p = analyze(builtin("K3"))
        assert (p.rank, p.signature, p.even) == (22, -16, True)
        assert builtin("E8(-1)").gram == negate(e8()).gram

    def test_unknown(self):
        with pytest.raises(UnknownLattice):
            builtin("D4")


class TestValidation:
    @pytest.mark.parametrize("gram", [[[1, 2], [3, 1]], [[1, 0]], [[1.5]], [[True]], "x"])
    def test_malformed(self, gram):
        with pytest.raises(MalformedGram):
            Lattice(gram)

    def test_json_round_trip(self):
        lat = e8()
        assert Lattice.from_json(lat.to_json()) == lat

    def test_positive_definite_builder_is_definite(self):
        rng = random.Random(3)
        for n in range(1, 5):
            assert analyze(Lattice(positive_definite(rng, n))).definite is Definiteness.POSITIVE
