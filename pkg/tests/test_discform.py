import os
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import evenlat.discform as df
from evenlat.exactlinalg import IntMat
from evenlat.lattice import Lattice, make_named, parse_lattice_expr

F = Fraction

Q_GRAM = IntMat.from_rows(
    [
        [-2, 0, 1, 0, 2, -1],
        [0, -6, -1, -4, 4, -5],
        [1, -1, -8, 6, 2, 0],
        [0, -4, 6, -16, 4, -2],
        [2, 4, 2, 4, -8, 6],
        [-1, -5, 0, -2, 6, -12],
    ]
)


@pytest.fixture(scope="module")
def a_q():
    return df.from_lattice(Lattice(Q_GRAM, "Q"))


def printed_generator_classes(module):
    lat = module.source
    printed = {
        "v1": (F(1, 2), F(-1, 2), 0, 0, F(1, 2), 0),
        "v2": (F(-1, 2), F(1, 2), 0, 0, 0, 0),
        "w1": (F(1, 2), 0, 0, F(-1, 4), 0, 0),
        "w2": (0, 0, F(1, 4), F(-1, 4), F(-1, 4), F(-1, 4)),
    }
    return {k: df.class_of(module, lat.dual_vector(v)) for k, v in printed.items()}


def random_even_lattice(rng, max_rank=4, max_entry=3):
    while True:
        n = rng.randint(1, max_rank)
        g = [[0] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = 2 * rng.randint(-max_entry, max_entry)
            for j in range(i + 1, n):
                g[i][j] = g[j][i] = rng.randint(-max_entry, max_entry)
        m = IntMat.from_rows(g)
        if m.det() != 0:
            return Lattice(m)


class TestFromLattice:
    def test_a_q_orders(self, a_q):
        assert a_q.orders == (2, 2, 4, 4)
        assert a_q.order == 64

    def test_minus_four(self):
        m = df.from_lattice(make_named("<-4>"))
        assert m.orders == (4,)
        assert m.q_diag == (F(7, 4),)  # -1/4 mod 2Z

    def test_unimodular_trivial(self):
        m = df.from_lattice(make_named("U"))
        assert m.orders == ()
        assert list(m.elements()) == [()]
        assert df.isotropic_elements(m) == []

    def test_odd_lattice_rejected(self):
        with pytest.raises(ValueError):
            df.from_lattice(Lattice(IntMat.diagonal([1, -3])))


class TestValues:
    def test_isotropic_value_of_2w1(self, a_q):
        cls = printed_generator_classes(a_q)
        assert df.q_value(a_q, a_q.smul(2, cls["w1"])) == 0

    def test_v1_value(self, a_q):
        cls = printed_generator_classes(a_q)
        assert df.q_value(a_q, cls["v1"]) == 1  # -5 mod 2Z

    def test_zero(self, a_q):
        assert df.q_value(a_q, a_q.zero()) == 0
        assert df.b_value(a_q, a_q.zero(), (1, 1, 1, 1)) == 0

    @settings(max_examples=200, deadline=None, derandomize=True)
    @given(st.integers(0, 10**6))
    def test_q_b_compatibility_random_modules(self, seed):
        rng = random.Random(seed)
        lat = random_even_lattice(rng)
        module = df.from_lattice(lat)
        if module.order == 1:
            return
        elems = list(module.elements())
        x = elems[rng.randrange(len(elems))]
        y = elems[rng.randrange(len(elems))]
        lhs = (df.q_value(module, module.add(x, y)) - df.q_value(module, x)
               - df.q_value(module, y)) % 2
        assert lhs == (2 * df.b_value(module, x, y)) % 2

    def test_square_scaling(self, a_q):
        cls = printed_generator_classes(a_q)
        w1 = cls["w1"]
        for n in range(5):
            lhs = df.q_value(a_q, a_q.smul(n, w1))
            rhs = (n * n * df.q_value(a_q, w1)) % 2
            assert lhs == rhs


class TestIsotropic:
    def test_a_q_has_seven(self, a_q):
        iso = df.isotropic_elements(a_q)
        assert len(iso) == 7
        cls = printed_generator_classes(a_q)

        def combo(a, b, c, d):
            out = a_q.zero()
            for e, g in zip((a, b, c, d), (cls["v1"], cls["v2"], cls["w1"], cls["w2"])):
                out = a_q.add(out, a_q.smul(e, g))
            return out

        printed = {
            combo(0, 0, 2, 0), combo(0, 1, 0, 0), combo(0, 1, 2, 0),
            combo(1, 0, 0, 2), combo(1, 0, 2, 2), combo(1, 1, 0, 0),
            combo(1, 1, 2, 0),
        }
        assert printed == set(iso)

    def test_closed_under_negation(self, a_q):
        iso = set(df.isotropic_elements(a_q))
        assert {a_q.neg(x) for x in iso} == iso

    def test_deterministic_order(self, a_q):
        assert df.isotropic_elements(a_q) == sorted(df.isotropic_elements(a_q))


class TestSubgroups:
    def test_hyperbolic_rank_two(self):
        lat = parse_lattice_expr("diag(2)+diag(-2)")
        subs = df.isotropic_subgroups(df.from_lattice(lat))
        assert [s.order for s in subs] == [1, 2]

    def test_trivial_module(self):
        subs = df.isotropic_subgroups(df.from_lattice(make_named("U")))
        assert len(subs) == 1 and subs[0].order == 1

    def test_a_q_census(self, a_q):
        subs = df.isotropic_subgroups(a_q)
        assert [s.order for s in subs] == [1, 2, 2, 2, 2, 2, 2, 2, 4, 4, 4]
        for sub in subs:
            for x in sub.elements:
                assert df.q_value(a_q, x) == 0
            for x in sub.elements:
                for y in sub.elements:
                    assert df.b_value(a_q, x, y) == 0


class TestOverlattice:
    def test_glue_to_hyperbolic_plane(self):
        lat = parse_lattice_expr("diag(2)+diag(-2)")
        module = df.from_lattice(lat)
        sub = [s for s in df.isotropic_subgroups(module) if s.order == 2][0]
        over = df.overlattice(lat, sub)
        assert over.gram.entries == ((0, -1), (-1, -2))
        assert over.det == -1 and over.is_even and over.signature == (1, 1, 0)

    def test_nikulin_from_eight_spheres(self):
        base = parse_lattice_expr("+".join(["diag(-2)"] * 8))
        module = df.from_lattice(base)
        all_half = (1,) * 8
        assert df.q_value(module, all_half) == 0
        target = None
        for sub in df.isotropic_subgroups(module):
            if sub.elements == frozenset({module.zero(), all_half}):
                target = sub
        assert target is not None
        over = df.overlattice(base, target)
        assert over.gram.entries == make_named("Nikulin").gram.entries

    def test_trivial_subgroup(self, a_q):
        lat = Lattice(Q_GRAM, "Q")
        trivial = [s for s in df.isotropic_subgroups(a_q) if s.order == 1][0]
        over = df.overlattice(lat, trivial)
        assert over.gram.entries == Q_GRAM.entries

    def test_determinant_and_index(self):
        # the determinant drops by the square of the glue order, which pins
        # the inclusion index exactly
        rng = random.Random(777)
        checked = 0
        while checked < 60:
            lat = random_even_lattice(rng, max_rank=4)
            module = df.from_lattice(lat)
            if module.order > 256:
                continue
            for sub in df.isotropic_subgroups(module):
                over = df.overlattice(lat, sub)
                assert abs(over.det) * sub.order**2 == abs(lat.det)
            checked += 1


class TestIsomorphism:
    def test_u2_vs_split_plane(self):
        m1 = df.from_lattice(make_named("U(2)"))
        m2 = df.from_lattice(parse_lattice_expr("diag(2)+diag(-2)"))
        assert df.are_isomorphic(m1, m2) is None

    def test_a_q_matches_abstract_block_form(self, a_q):
        # the finite form presented by the published 4x4 block matrix:
        # hyperbolic 1/2-block on two order-2 generators plus 1/4, 1/4
        half, quarter = F(1, 2), F(1, 4)
        b = [
            (F(0), half, F(0), F(0)),
            (half, F(0), F(0), F(0)),
            (F(0), F(0), quarter, F(0)),
            (F(0), F(0), F(0), quarter),
        ]
        block = df.FiniteQuadraticModule(
            (2, 2, 4, 4), (F(0), F(0), quarter, quarter), tuple(b)
        )
        assert df.are_isomorphic(a_q, block) is not None

    def test_t_x_matches_minus_ns(self, a_q):
        cand = df.from_lattice(parse_lattice_expr("U+U(2)+diag(-4,-4)"))
        witness = df.are_isomorphic(cand, df.negate(a_q))
        assert witness is not None
        neg = df.negate(a_q)
        k = cand.ngens
        gens = [tuple(int(i == j) for j in range(k)) for i in range(k)]
        for i in range(k):
            assert df.q_value(cand, gens[i]) == df.q_value(neg, witness[i])
            for j in range(k):
                assert df.b_value(cand, gens[i], gens[j]) == df.b_value(
                    neg, witness[i], witness[j]
                )

    def test_self_isomorphic(self, a_q):
        assert df.are_isomorphic(a_q, a_q) is not None

    def test_guard(self, a_q):
        with pytest.raises(df.GuardExceeded):
            df.are_isomorphic(a_q, a_q, guard=32)

    def test_guard_env_override(self, a_q, monkeypatch):
        monkeypatch.setenv("EVENLAT_GUARD_ORDER", "32")
        with pytest.raises(df.GuardExceeded):
            df.are_isomorphic(a_q, a_q)
        monkeypatch.setenv("EVENLAT_GUARD_ORDER", "1024")
        assert df.are_isomorphic(a_q, a_q) is not None


class TestNegateAndSum:
    def test_negate_involution(self, a_q):
        assert df.negate(df.negate(a_q)) == df.FiniteQuadraticModule(
            a_q.orders, a_q.q_diag, a_q.b_mat
        )

    def test_direct_sum_with_trivial(self, a_q):
        trivial = df.from_lattice(make_named("U"))
        s = df.direct_sum(a_q, trivial)
        assert s.orders == a_q.orders and s.q_diag == a_q.q_diag

    def test_direct_sum_block(self):
        m1 = df.from_lattice(make_named("<-4>"))
        m2 = df.from_lattice(make_named("U(2)"))
        s = df.direct_sum(m1, m2)
        assert s.orders == m1.orders + m2.orders
        assert s.b_mat[0][1] == 0 and s.b_mat[0][2] == 0


class TestLatticeBackReference:
    def test_class_of_round_trip(self, a_q):
        for i, d in enumerate(a_q.orders):
            gen = tuple(int(j == i) for j in range(a_q.ngens))
            lift = a_q.lift(gen)
            assert df.class_of(a_q, a_q.source.dual_vector(lift)) == gen

    def test_from_lattice_invariant_under_generator_choice(self, a_q):
        # presenting the same module on the printed generators gives an
        # isomorphic quadratic module
        cls = printed_generator_classes(a_q)
        other = df.submodule_on(
            a_q, [cls["v1"], cls["v2"], cls["w1"], cls["w2"]], (2, 2, 4, 4)
        )
        assert df.are_isomorphic(a_q, other) is not None
