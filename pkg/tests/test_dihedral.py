from itertools import product

import pytest

from dihedral_stability.dihedral import (
    DihedralElement,
    GeneratingSet,
    canonical_form,
    canonical_pairs,
    closure,
    conjugate,
    elements,
    inverse,
    is_generating,
    multiply,
    negated,
    orbit_pairs,
    project,
)
from dihedral_stability.errors import InvalidArgumentError
from dihedral_stability.residues import ResidueSet


def rot(n, i):
    return DihedralElement.rotation(n, i)


def ref(n, i):
    return DihedralElement.reflection(n, i)


def as_matrix(x):
    """2x2 integer matrix of x acting on Z_n (x -> +-x + rot), an independent model."""
    sign = -1 if x.refl else 1
    return (sign, x.rot)


def compose(p, q, n):
    # (p . q)(z) = p(q(z)) with p(z) = s_p z + t_p
    return (p[0] * q[0], (p[0] * q[1] + p[1]) % n)


class TestMultiply:
    def test_rotations_add(self):
        assert rot(5, 1) * rot(5, 2) == rot(5, 3)

    @pytest.mark.parametrize("n,x,k", [(7, 2, 5), (9, 0, 4), (12, 11, 3)])
    def test_two_reflections_give_rotation(self, n, x, k):
        assert multiply(ref(n, x), ref(n, k)) == rot(n, x - k)

    def test_reflections_are_involutions(self):
        assert ref(7, 2) * ref(7, 2) == DihedralElement.identity(7)
        for n in range(3, 15):
            for i in range(n):
                assert (ref(n, i) * ref(n, i)).is_identity()

    def test_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            multiply(rot(5, 1), rot(6, 1))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_associative_and_identity(self, n):
        G = list(elements(n))
        e = DihedralElement.identity(n)
        for x, y, z in product(G, repeat=3):
            assert (x * y) * z == x * (y * z)
        for x in G:
            assert x * e == e * x == x

    @pytest.mark.parametrize("n", [3, 4, 7, 10])
    def test_matches_affine_model(self, n):
        for x, y in product(elements(n), repeat=2):
            s, t = compose(as_matrix(x), as_matrix(y), n)
            xy = x * y
            assert (xy.refl, xy.rot) == (s == -1, t)


class TestInverseConjugate:
    def test_examples(self):
        assert inverse(rot(7, 3)) == rot(7, 4)
        assert inverse(ref(5, 2)) == ref(5, 2)
        assert inverse(DihedralElement.identity(4)).is_identity()

    @pytest.mark.parametrize("n", range(1, 12))
    def test_inverse_property(self, n):
        for x in elements(n):
            assert (x * inverse(x)).is_identity()

    def test_conjugate_by_rotation(self):
        for n in range(3, 12):
            for i, a in product(range(n), repeat=2):
                assert conjugate(rot(n, i), ref(n, a)) == ref(n, a + 2 * i)

    def test_conjugate_examples(self):
        s = ref(8, 3)
        assert conjugate(DihedralElement.identity(8), s) == s
        assert conjugate(rot(5, 1), ref(5, 0)) == ref(5, 2)

    def test_conjugate_mismatch(self):
        with pytest.raises(InvalidArgumentError):
            conjugate(rot(5, 1), ref(6, 0))

    @pytest.mark.parametrize("n", range(3, 31))
    def test_conjugates_of_reflections_are_reflections(self, n):
        for g in elements(n):
            for i in range(n):
                assert conjugate(g, ref(n, i)).refl


class TestProjectAndRender:
    def test_project(self):
        assert project(ref(7, 3)) == 3
        assert project(DihedralElement.identity(7)) == 0
        assert project(rot(5, 4)) == 4

    def test_render(self):
        assert [str(x) for x in (rot(6, 0), rot(6, 2), ref(6, 0), ref(6, 5))] == ["e", "r^2", "f", "r^5 f"]

    def test_index_round_trip(self):
        for n in (3, 8):
            for idx in range(2 * n):
                assert DihedralElement.from_index(n, idx).index == idx


class TestGeneratingSet:
    def test_rejects_degenerate(self):
        for n, a, b in [(5, 0, 2), (5, 2, 2), (5, 2, 7), (2, 1, 3)]:
            with pytest.raises(InvalidArgumentError):
                GeneratingSet(n, a, b)

    def test_offsets(self):
        S = GeneratingSet(7, 10, -1)
        assert (S.a, S.b) == (3, 6)
        assert S.offsets == ResidueSet(7, [0, 3, 6])
        assert GeneratingSet.from_offsets(S.offsets) == S
        assert S.to_json() == {"n": 7, "a": 3, "b": 6}
        assert str(S) == "{f, r^3 f, r^6 f}"

    @pytest.mark.parametrize(
        "n,a,b,expected", [(6, 2, 4, False), (5, 1, 2, True), (4, 1, 3, True), (9, 3, 6, False)]
    )
    def test_is_generating_examples(self, n, a, b, expected):
        S = GeneratingSet(n, a, b)
        assert is_generating(S) is expected
        assert (len(closure(S)) == 2 * n) is expected

    def test_non_generating_closure_size(self):
        assert len(closure(GeneratingSet(6, 2, 4))) == 6

    def test_gcd_criterion_matches_closure(self):
        for n in range(3, 41):
            for a in range(1, n):
                for b in range(a + 1, n):
                    S = GeneratingSet(n, a, b)
                    assert is_generating(S) == (len(closure(S)) == 2 * n), (n, a, b)


class TestCanonicalForm:
    def test_n7_orbit(self):
        orbit = orbit_pairs(7, 3, 5)
        assert orbit == {(3, 5), (5, 3), (4, 2), (2, 4), (2, 5), (5, 2)}
        assert canonical_form(GeneratingSet(7, 3, 5)).pair == min(orbit) == (2, 4)

    def test_n5(self):
        assert canonical_form(GeneratingSet(5, 1, 2)).pair == (1, 2)

    def test_idempotent_and_orbit_constant(self):
        for n in range(3, 20):
            for a in range(1, n):
                for b in range(1, n):
                    if a == b:
                        continue
                    c = canonical_form(GeneratingSet(n, a, b))
                    assert canonical_form(c) == c
                    for x, y in orbit_pairs(n, a, b):
                        assert canonical_form(GeneratingSet(n, x, y)) == c

    def test_orbit_is_relabelling(self):
        # rebasing at r^c f maps each reflection r^x f to r^(x-c) f'
        n, a, b = 11, 3, 7
        for c in (0, a, b):
            rebased = {(x - c) % n for x in (0, a, b)}
            assert 0 in rebased
            x, y = sorted(rebased - {0})
            assert (x, y) in orbit_pairs(n, a, b)

    def test_negation_not_folded(self):
        S = GeneratingSet(7, 1, 3)
        assert negated(S).pair == (6, 4)
        assert canonical_form(negated(S)) != canonical_form(S)

    def test_canonical_pairs_sorted_unique(self):
        pairs = canonical_pairs(9)
        assert pairs == sorted(set(pairs))
        assert all(canonical_form(GeneratingSet(9, a, b)).pair == (a, b) for a, b in pairs)
