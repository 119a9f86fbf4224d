import warnings
from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from builders import random_bracketing, random_chain
from gravicat.classify import DefiniteLatticeWarning, K0Class, k0_class
from gravicat.cobordism import (
    BoundaryComponent,
    CobordismRecord,
    Kind,
    boundary,
    compose,
    cp2,
    cp2_bar,
    cylinder,
    disjoint_union,
    e8_plumbing,
    empty_record,
    euler_glue,
    functor_class,
    grading,
    k3_surface,
    quadric_check,
    relabel,
    reorder,
    reverse_morphism,
    s4,
    surface,
    validate_cobordism,
)
from gravicat.errors import (
    BoundaryMismatch,
    DimensionMismatch,
    LabelCollision,
    MissingC1,
    NotClosed,
    NotConnectedInterface,
    SchemaError,
)
from gravicat.lattice import analyze, diagonal, e8, negate


def kinds(rec):
    return [v.kind for v in validate_cobordism(rec)]


def invariants(rec):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DefiniteLatticeWarning)
        return rec.chi, rec.sigma, analyze(rec.lattice), k0_class(rec.lattice)


class TestValidate:
    def test_standard_records(self):
        for rec in (s4(), cp2(), cp2_bar(), k3_surface(), e8_plumbing(), surface(1, 0, 2)):
            assert validate_cobordism(rec) == [], rec.name

    def test_spin_over_odd(self):
        rec = CobordismRecord(dim=4, chi=3, sigma=1, lattice=diagonal([1]), spin=True)
        assert "SpinParityViolation" in kinds(rec)

    def test_c1_characteristic(self):
        assert kinds(cp2(c1=3)) == []
        assert "C1NotCharacteristic" in kinds(cp2(c1=2))

    def test_signature_mismatch(self):
        assert "SignatureMismatch" in kinds(CobordismRecord(dim=4, chi=3, sigma=2, lattice=diagonal([1])))

    def test_betti_consistency(self):
        rec = CobordismRecord(dim=4, chi=5, b1=0)
        assert kinds(rec) == ["EulerBettiViolation"]

    def test_donaldson_obstruction(self):
        rec = CobordismRecord(dim=4, chi=10, sigma=8, lattice=e8(), spin=True, b1=0)
        assert "DonaldsonObstruction" in kinds(rec)
        assert kinds(CobordismRecord(dim=4, chi=10, sigma=8, lattice=e8(), spin=True, b1=0, smooth=False)) == []

    def test_boundary_rules(self):
        rec = CobordismRecord(dim=4, incoming=boundary(("c", "circle")), chi=0)
        assert "BoundaryKindViolation" in kinds(rec)
        dup = CobordismRecord(dim=4, outgoing=boundary(("P", "homology_sphere"), ("P", "homology_sphere")), chi=0)
        assert "DuplicateLabel" in kinds(dup)

    def test_surface_rules(self):
        assert "SurfaceEulerViolation" in kinds(CobordismRecord(dim=2, chi=1, genus=0))
        assert "SurfaceSignature" in kinds(CobordismRecord(dim=2, chi=2, sigma=1))

    def test_not_unimodular(self):
        assert "LatticeNotUnimodular" in kinds(CobordismRecord(dim=4, chi=3, sigma=1, lattice=diagonal([2])))


class TestCompose:
    def test_e8_double(self):
        p = e8_plumbing()
        closed = compose(p, reverse_morphism(p))
        assert closed.closed
        assert (closed.chi, closed.sigma) == (18, 0)
        prof = analyze(closed.lattice)
        assert (prof.rank, prof.signature, prof.even, prof.indefinite) == (16, 0, True, True)
        assert k0_class(closed.lattice) == K0Class(8, 0)
        assert functor_class(closed).k0 == K0Class(8, 0)
        assert closed.lattice.gram == tuple(
            tuple(r) for r in [list(row) + [0] * 8 for row in e8().gram]
            + [[0] * 8 + list(row) for row in negate(e8()).gram]
        )

    def test_cylinder_is_a_unit(self):
        p = e8_plumbing()
        glued = compose(p, cylinder(p.outgoing))
        assert invariants(glued) == invariants(p)
        assert glued.outgoing == p.outgoing

    def test_surfaces(self):
        closed = compose(surface(1, outgoing=2), surface(1, incoming=2))
        assert closed.closed and (closed.genus, closed.chi) == (3, -4)
        assert validate_cobordism(closed) == []

    def test_surfaces_along_nothing(self):
        two = compose(surface(1), surface(2))
        assert (two.genus, two.pieces, two.chi) == (3, 2, -2)

    def test_disconnected_interface(self):
        left = disjoint_union(surface(0, outgoing=1, prefix="a"), surface(0, outgoing=1, prefix="b"))
        right = CobordismRecord(dim=2, incoming=left.outgoing, chi=0, genus=0)
        with pytest.raises(NotConnectedInterface):
            compose(left, right)

    def test_mismatch_names_both_sides(self):
        with pytest.raises(BoundaryMismatch) as info:
            compose(e8_plumbing(), e8_plumbing())
        assert info.value.details == {"outgoing": ["P:homology_sphere"], "incoming": []}

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            compose(s4(), surface(0))

    def test_euler_glue(self):
        assert euler_glue(3, 4, 0) == 7
        assert euler_glue(1, 1, 2) == 0  # two 3-balls along S^2 give S^3

    @settings(max_examples=25)
    @given(st.integers(3, 5), st.randoms(use_true_random=False))
    def test_associativity(self, n, rng):
        chain = random_chain(rng, n, "x")
        left = reduce(compose, chain)
        right = reduce(lambda acc, r: compose(r, acc), reversed(chain[:-1]), chain[-1])
        other = random_bracketing(chain, rng, compose)
        assert invariants(left) == invariants(right) == invariants(other)


class TestUnionAndReverse:
    def test_cp2_pair(self):
        both = disjoint_union(cp2(), cp2_bar())
        assert (both.chi, both.sigma) == (6, 0)
        assert both.lattice.gram == ((1, 0), (0, -1))

    def test_empty_is_a_unit(self):
        p = e8_plumbing()
        assert disjoint_union(empty_record(), p) == p
        assert disjoint_union(p, empty_record()) == p
        assert compose(empty_record(), s4()) == s4()

    def test_label_collision(self):
        with pytest.raises(LabelCollision):
            disjoint_union(e8_plumbing(), e8_plumbing())

    def test_reverse(self):
        p = e8_plumbing()
        r = reverse_morphism(p)
        assert r.incoming == p.outgoing and r.outgoing == ()
        assert r.sigma == -8 and r.lattice.gram == negate(e8()).gram
        assert reverse_morphism(r) == p
        assert grading(r).sigma_grade == -grading(p).sigma_grade

    def test_relabel_and_reorder(self):
        rec = CobordismRecord(dim=4, outgoing=boundary(("P", "homology_sphere"), ("Q", "homology_sphere")), chi=0)
        moved = relabel(rec, outgoing={"P": "R"})
        assert [c.label for c in moved.outgoing] == ["R", "Q"]
        assert [c.label for c in reorder(rec, outgoing=["Q", "P"]).outgoing] == ["Q", "P"]
        with pytest.raises(BoundaryMismatch):
            relabel(rec, outgoing={"Z": "R"})
        with pytest.raises(BoundaryMismatch):
            reorder(rec, outgoing=["P"])


class TestFunctor:
    def test_values(self):
        assert functor_class(s4()).k0 == K0Class(0, 0)
        assert functor_class(k3_surface()).k0 == K0Class(19, -2)
        value = functor_class(e8_plumbing())
        assert value.k0 == K0Class(0, 1) and value.warnings == ("DefiniteLattice",)
        assert value.to_json() == {"u": 0, "e8": 1, "warnings": ["DefiniteLattice"]}

    @settings(max_examples=25)
    @given(st.integers(2, 4), st.randoms(use_true_random=False))
    def test_additive(self, n, rng):
        chain = random_chain(rng, n, "y")
        total = reduce(compose, chain)
        parts = [functor_class(r).k0 for r in chain]
        assert functor_class(total).k0 == reduce(lambda a, b: a + b, parts)
        assert grading(total).kappa0 == sum(r.chi for r in chain)
        assert grading(total).sigma_grade == sum(r.sigma for r in chain)
        other = random_chain(rng, 1, "z")[0]
        union = disjoint_union(total, other)
        assert functor_class(union).k0 == functor_class(total).k0 + functor_class(other).k0


class TestQuadric:
    def test_examples(self):
        assert quadric_check(k3_surface())
        assert quadric_check(cp2(3))
        assert not quadric_check(cp2(1))

    def test_errors(self):
        with pytest.raises(NotClosed):
            quadric_check(e8_plumbing())
        with pytest.raises(MissingC1):
            quadric_check(CobordismRecord(dim=4, chi=2))


class TestJson:
    def test_round_trip(self):
        for rec in (k3_surface(), e8_plumbing(), surface(2, 1, 1)):
            assert CobordismRecord.from_json(rec.to_json()) == rec

    def test_bad_record(self):
        with pytest.raises(SchemaError):
            CobordismRecord.from_json({"dim": 4})

    def test_component_json(self):
        assert BoundaryComponent("P", Kind.HOMOLOGY_SPHERE).to_json() == {"label": "P", "kind": "homology_sphere"}
