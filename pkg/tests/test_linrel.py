"""Linear canonical relation tests: composition, transpose, reduction relations."""

import random
from fractions import Fraction as Q

import pytest

from rsgkit.exactla import DimensionMismatch, Matrix, Subspace
from rsgkit.linrel import (
    CanonicalityReport,
    LinearRelation,
    NotCanonical,
    canonical_lift,
    canonical_projection,
    compose,
    full_state,
    graph_of_map,
    identity_rel,
    is_canonical,
    random_canonical_relation,
    random_coisotropic,
    random_lagrangian,
    random_symplectic_matrix,
    reduction_relations,
    rel_product,
    state_rel,
    swap_rel,
    transpose,
)
from rsgkit.symplectic import (
    SubspaceKind,
    SymplecticSpace,
    classify,
    is_lagrangian,
    omega_orthogonal,
    product_space,
    reduce_coisotropic,
)

V2 = SymplecticSpace.standard(1)
V4 = SymplecticSpace.standard(2)
W_COISO = Subspace.from_rows(4, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0]])


class TestComposeTranspose:
    def test_identity_neutral(self):
        rng = random.Random(0)
        r = random_canonical_relation(V2, V4, rng)
        assert compose(identity_rel(V2), r) == r
        assert compose(r, identity_rel(V4)) == r

    def test_graph_composition_is_matrix_product(self):
        rng = random.Random(1)
        for _ in range(20):
            a = Matrix.from_rows([[Q(rng.randint(-3, 3)) for _ in range(2)]
                                  for _ in range(2)])
            b = Matrix.from_rows([[Q(rng.randint(-3, 3)) for _ in range(2)]
                                  for _ in range(2)])
            ra = graph_of_map(a, V2, V2)
            rb = graph_of_map(b, V2, V2)
            assert compose(ra, rb) == graph_of_map(b * a, V2, V2)

    def test_middle_mismatch(self):
        with pytest.raises(DimensionMismatch):
            compose(identity_rel(V2), identity_rel(V4))

    def test_transpose_involution_and_identity(self):
        assert transpose(identity_rel(V4)) == identity_rel(V4)
        rng = random.Random(2)
        r = random_canonical_relation(V2, V4, rng)
        assert transpose(transpose(r)) == r

    def test_transpose_of_invertible_graph(self):
        a = Matrix.from_rows([[1, 1], [0, 1]])
        assert transpose(graph_of_map(a, V2, V2)) == graph_of_map(a.inverse(), V2, V2)

    def test_transpose_antihomomorphism(self):
        rng = random.Random(3)
        for _ in range(15):
            r = random_canonical_relation(V2, V4, rng)
            s = random_canonical_relation(V4, V2, rng)
            assert transpose(compose(r, s)) == compose(transpose(s), transpose(r))

    def test_associativity(self):
        rng = random.Random(4)
        for _ in range(15):
            r = random_canonical_relation(V2, V2, rng)
            s = random_canonical_relation(V2, V4, rng)
            t = random_canonical_relation(V4, V2, rng)
            assert compose(compose(r, s), t) == compose(r, compose(s, t))


class TestCanonicality:
    def test_symplectomorphism_graph_is_canonical(self):
        rng = random.Random(5)
        m = random_symplectic_matrix(1, rng)
        assert is_canonical(graph_of_map(m, V2, V2)).is_lagrangian

    def test_non_symplectic_map_is_not(self):
        scale_q = Matrix.from_rows([[2, 0], [0, 1]])
        rep = is_canonical(graph_of_map(scale_q, V2, V2))
        assert not rep.is_lagrangian

    def test_zero_relation_is_isotropic_only(self):
        zero = LinearRelation(V2, V2, Subspace.zero(4))
        rep = is_canonical(zero)
        assert not rep.is_lagrangian
        assert rep.kind is SubspaceKind.ISOTROPIC

    def test_composition_of_canonical_is_canonical(self):
        rng = random.Random(6)
        for _ in range(50):
            r = random_canonical_relation(V2, V4, rng)
            s = random_canonical_relation(V4, V2, rng)
            assert is_canonical(compose(r, s)).is_lagrangian

    def test_custom_signs(self):
        # The diagonal is Lagrangian in Vbar x V but not in V x V.
        diag = identity_rel(V2)
        assert is_canonical(diag, signs=(-1, 1)).is_lagrangian
        assert not is_canonical(diag, signs=(1, 1)).is_lagrangian


class TestReductionRelations:
    def test_full_space_gives_identity(self):
        i_rel, p_rel = reduction_relations(V4, Subspace.full(4))
        assert compose(p_rel, i_rel).graph.dim == 4
        assert compose(i_rel, p_rel) == identity_rel(_red_space(V4, Subspace.full(4)))

    def test_lagrangian_gives_state(self):
        lag = Subspace.from_rows(4, [[1, 0, 0, 0], [0, 0, 1, 0]])
        i_rel, p_rel = reduction_relations(V4, lag)
        assert i_rel.source.dim == 0
        assert i_rel.graph == lag  # {0} x W inside point x V

    def test_worked_coisotropic_example(self):
        i_rel, p_rel = reduction_relations(V4, W_COISO)
        # I is a 3-dim Lagrangian in the 6-dim twisted product.
        assert i_rel.dim == 3
        rep = is_canonical(i_rel)
        assert rep.is_lagrangian
        # P . I = identity on the reduction; I . P is 4-dimensional.
        red = _red_space(V4, W_COISO)
        assert compose(i_rel, p_rel) == identity_rel(red)
        assert compose(p_rel, i_rel).dim == 4

    def test_i_perp_equals_i_randomized(self):
        rng = random.Random(7)
        for _ in range(60):
            n = rng.randint(1, 4)
            space = SymplecticSpace.standard(n)
            w = random_coisotropic(space, rng)
            i_rel, p_rel = reduction_relations(space, w)
            signed = product_space([i_rel.source, i_rel.target], signs=[-1, 1])
            assert omega_orthogonal(signed, i_rel.graph) == i_rel.graph
            # P . I = Id on the reduction, and I . P is the class relation on w.
            assert compose(i_rel, p_rel) == identity_rel(i_rel.source)
            ip = compose(p_rel, i_rel)
            # the class relation {(w, w + k) : w in W, k in W^perp}
            perp = omega_orthogonal(space, w)
            rows = [tuple(x) + tuple(x) for x in w.basis.entries]
            rows += [(Q(0),) * space.dim + tuple(k) for k in perp.basis.entries]
            assert ip.graph == Subspace.from_rows(2 * space.dim, rows)
            assert transpose(ip) == ip


def _red_space(space, w):
    return reduce_coisotropic(space, w).space


class TestLiftProjection:
    def test_lift_of_identity_is_class_relation(self):
        i_rel, p_rel = reduction_relations(V4, W_COISO)
        red = _red_space(V4, W_COISO)
        lift = canonical_lift(V4, W_COISO, identity_rel(red))
        assert lift == compose(p_rel, i_rel)

    def test_lift_through_lagrangian_w(self):
        lag = Subspace.from_rows(4, [[1, 0, 0, 0], [0, 0, 1, 0]])
        point = SymplecticSpace.point()
        triv = identity_rel(point)
        lift = canonical_lift(V4, lag, triv)
        # w x w as a relation V -> V
        rows = [list(r) + [0, 0, 0, 0] for r in lag.basis.entries]
        rows += [[0, 0, 0, 0] + list(r) for r in lag.basis.entries]
        assert lift.graph == Subspace.from_rows(8, rows)

    def test_rotation_round_trip(self):
        rot = Matrix.from_rows([[0, 1], [-1, 0]])
        red = _red_space(V4, W_COISO)
        lbar = graph_of_map(rot, red, red)
        lift = canonical_lift(V4, W_COISO, lbar)
        assert lift.dim == 4
        assert is_canonical(lift).is_lagrangian
        back = canonical_projection(V4, W_COISO, lift)
        assert back == lbar

    def test_projection_round_trip_randomized(self):
        rng = random.Random(8)
        for _ in range(50):
            n = rng.randint(1, 4)
            space = SymplecticSpace.standard(n)
            w = random_coisotropic(space, rng)
            red = _red_space(space, w)
            lbar = LinearRelation(
                red, red, random_lagrangian(product_space([red, red], signs=[-1, 1]), rng))
            lift = canonical_lift(space, w, lbar)
            assert is_canonical(lift).is_lagrangian
            assert canonical_projection(space, w, lift) == lbar

    def test_lift_after_projection_differs_witness(self):
        # Frozen regression witness: l . p is not the identity.
        diag = identity_rel(V4)
        proj = canonical_projection(V4, W_COISO, diag)
        again = canonical_lift(V4, W_COISO, proj)
        i_rel, p_rel = reduction_relations(V4, W_COISO)
        assert again == compose(p_rel, i_rel)
        assert again != diag

    def test_rejects_non_canonical(self):
        red = _red_space(V4, W_COISO)
        bad = graph_of_map(Matrix.from_rows([[2, 0], [0, 1]]), red, red)
        with pytest.raises(NotCanonical):
            canonical_lift(V4, W_COISO, bad)
        with pytest.raises(NotCanonical):
            canonical_projection(V4, W_COISO, LinearRelation(V4, V4, Subspace.zero(8)))


class TestGenerators:
    def test_random_symplectic_is_symplectic(self):
        rng = random.Random(9)
        for n in (1, 2, 3):
            for _ in range(10):
                m = random_symplectic_matrix(n, rng)
                omega = SymplecticSpace.standard(n).omega
                assert m.transpose() * omega * m == omega

    def test_random_lagrangian_is_lagrangian(self):
        rng = random.Random(10)
        for n in (1, 2, 3):
            space = SymplecticSpace.standard(n)
            for _ in range(10):
                assert is_lagrangian(space, random_lagrangian(space, rng))

    def test_random_coisotropic_is_coisotropic(self):
        rng = random.Random(11)
        space = SymplecticSpace.standard(3)
        for _ in range(20):
            w = random_coisotropic(space, rng)
            kind = classify(space, w)
            assert kind in (SubspaceKind.COISOTROPIC, SubspaceKind.LAGRANGIAN)

    def test_swap_and_product_shapes(self):
        sw = swap_rel(V2)
        assert sw.source.dim == 4 and sw.dim == 4
        x, y = (Q(1), Q(2)), (Q(3), Q(5))
        assert sw.graph.contains(x + y + y + x)
        r = identity_rel(V2)
        pr = rel_product(r, r)
        assert pr.source.dim == 4 and pr.target.dim == 4 and pr.dim == 4
        st = state_rel(V2, Subspace.from_rows(2, [[1, 0]]))
        assert compose(st, identity_rel(V2)).graph.dim == 1
        assert full_state(V2).dim == 2
