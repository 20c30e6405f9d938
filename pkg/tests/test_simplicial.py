import pytest
from hypothesis import given, strategies as st

from cechchase.simplicial import (
    Chain,
    Cochain,
    SimplicialComplex,
    boundary,
    coboundary,
    cohomology,
    evaluate,
    full_subcomplex,
    homology,
    is_connected,
)
from cechchase.zint import AbelianGroupInvariants as G


def chains_on(K, degree):
    cells = K.simplices_of_dim(degree)
    return st.lists(st.integers(-5, 5), min_size=len(cells), max_size=len(cells)).map(
        lambda v: Chain.from_vector(K, degree, v))


def cochains_on(K, degree):
    cells = K.simplices_of_dim(degree)
    return st.lists(st.integers(-5, 5), min_size=len(cells), max_size=len(cells)).map(
        lambda v: Cochain.from_vector(K, degree, v))


class TestComplex:
    def test_downward_closure_required(self):
        with pytest.raises(ValueError):
            SimplicialComplex(["a", "b"], [(0, 1)])

    def test_unknown_vertex(self):
        with pytest.raises(ValueError):
            SimplicialComplex(["a"], [(0,), (1,)])

    def test_simplices_must_increase(self):
        with pytest.raises(ValueError):
            SimplicialComplex(["a", "b"], [(0,), (1,), (1, 0)])

    def test_from_labelled(self):
        K = SimplicialComplex.from_labelled(["a", "b", "c"], [["a", "b"], ["c"]])
        assert K.simplices_of_dim(0) == [(0,), (1,), (2,)]
        assert K.simplices_of_dim(1) == [(0, 1)]
        with pytest.raises(ValueError):
            SimplicialComplex.from_labelled(["a"], [["z"]])

    def test_augmentation_cell(self, tri):
        assert tri.simplices_of_dim(-1) == [()]
        assert tri.cofacets(()) == [(0,), (1,), (2,)]

    def test_names(self, tri):
        assert tri.name((0, 1)) == "(x_a x_b)"
        assert tri.name(()) == "1"

    def test_maximal(self, tri):
        assert tri.maximal_simplices() == [(0, 1), (0, 2), (1, 2)]

    def test_boundary_matrices_compose_to_zero(self, complexes):
        for K in complexes.values():
            for k in range(0, K.dim):
                assert (K.boundary_matrix(k) @ K.boundary_matrix(k + 1)).is_zero()


class TestBoundary:
    def test_edge(self):
        assert boundary(Chain.basis((0, 1))) == Chain(0, {(1,): 1, (0,): -1})

    def test_zero(self):
        assert boundary(Chain.zero(2)) == Chain.zero(1)

    def test_triangle_squared(self):
        c = Chain.basis((0, 1, 2))
        assert boundary(c) == Chain(1, {(1, 2): 1, (0, 2): -1, (0, 1): 1})
        assert not boundary(boundary(c))

    def test_augmentation(self):
        c = Chain(0, {(0,): 3, (2,): -1})
        assert boundary(c, augment=True) == Chain.scalar(2)

    def test_degree_zero_needs_flag(self):
        with pytest.raises(ValueError):
            boundary(Chain.basis((0,)))

    def test_no_boundary_below_minus_one(self):
        with pytest.raises(ValueError):
            boundary(Chain.scalar(1), augment=True)

    @given(st.data())
    def test_boundary_squared_on_corpus(self, complexes, data):
        name = data.draw(st.sampled_from(sorted(complexes)))
        K = complexes[name]
        k = data.draw(st.integers(1, max(1, K.dim)))
        if k > K.dim:
            return
        c = data.draw(chains_on(K, k))
        assert not boundary(boundary(c, augment=True), augment=True)


class TestCoboundary:
    def test_path_indicator(self):
        P = SimplicialComplex.from_maximal(["a", "b"], [(0, 1)])
        assert coboundary(Cochain.basis((0,)), P) == Cochain(1, {(0, 1): -1})

    def test_zero(self, tri):
        assert not coboundary(Cochain.zero(0), tri)

    def test_degree_minus_one(self, tri):
        # the augmentation cochain goes to the constant function on vertices
        assert coboundary(Cochain.scalar(2), tri) == Cochain(0, {(0,): 2, (1,): 2, (2,): 2})

    def test_off_complex_support(self, tri):
        with pytest.raises(ValueError):
            coboundary(Cochain.basis((0, 1, 2)), tri)

    @given(st.data())
    def test_squared_on_sphere(self, complexes, data):
        K = complexes["octahedron"]
        k = data.draw(st.integers(-1, 0))
        phi = data.draw(cochains_on(K, k))
        assert not coboundary(coboundary(phi, K), K)

    def test_matches_matrix(self, complexes):
        K = complexes["torus"]
        phi = Cochain.from_vector(K, 1, list(range(len(K.simplices_of_dim(1)))))
        assert coboundary(phi, K).to_vector(K) == K.coboundary_matrix(1) @ phi.to_vector(K)


class TestEvaluate:
    def test_indicator(self):
        s = (0, 1)
        assert evaluate(Cochain.basis(s), Chain.basis(s, 3)) == 3

    def test_zero_chain(self):
        assert evaluate(Cochain.basis((0,), 7), Chain.zero(0)) == 0

    def test_degree_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(Cochain.basis((0,)), Chain.basis((0, 1)))

    @given(st.data())
    def test_adjointness(self, complexes, data):
        K = complexes[data.draw(st.sampled_from(["octahedron", "rp2", "simplex3"]))]
        k = data.draw(st.integers(-1, K.dim - 1))
        phi = data.draw(cochains_on(K, k))
        c = data.draw(chains_on(K, k + 1))
        assert evaluate(coboundary(phi, K), c) == evaluate(phi, boundary(c, augment=True))


class TestChains:
    def test_zero_coefficients_pruned(self):
        assert Chain(1, {(0, 1): 0}) == Chain.zero(1)
        assert len(Chain.basis((0,)) - Chain.basis((0,))) == 0

    def test_degree_checked(self):
        with pytest.raises(ValueError):
            Chain(1, {(0,): 1})

    def test_arithmetic(self):
        a = Chain.basis((0, 1))
        assert 3 * a - a == Chain.basis((0, 1), 2)
        assert -a == Chain.basis((0, 1), -1)

    def test_mixed_degrees_rejected(self):
        with pytest.raises(ValueError):
            Chain.basis((0,)) + Chain.basis((0, 1))

    def test_chain_and_cochain_differ(self):
        assert Chain.basis((0,)) != Cochain.basis((0,))

    def test_format(self, tri):
        c = Chain(1, {(0, 1): -1, (1, 2): 2})
        assert c.format(tri) == "-(x_a x_b) + 2*(x_b x_c)"

    def test_restrict_keeps_augmentation(self, tri):
        sub = full_subcomplex(tri, {0})
        assert Chain.scalar(4).restrict(sub) == Chain.scalar(4)
        assert not Chain.basis((1,)).restrict(sub)


class TestFullSubcomplex:
    def test_all_vertices(self, tri):
        assert full_subcomplex(tri, {0, 1, 2}) == tri

    def test_empty(self, tri):
        E = full_subcomplex(tri, set())
        assert len(E) == 0 and E.dim == -1

    def test_edge(self, tri):
        E = full_subcomplex(tri, {0, 1})
        assert E.simplices == {(0,), (1,), (0, 1)}

    def test_unknown_vertex(self, tri):
        with pytest.raises(ValueError):
            full_subcomplex(tri, {5})

    @given(st.data())
    def test_idempotent_and_monotone(self, complexes, data):
        K = complexes[data.draw(st.sampled_from(sorted(complexes)))]
        verts = sorted(K.vertex_ranks)
        W = set(data.draw(st.lists(st.sampled_from(verts), unique=True)))
        V = W | set(data.draw(st.lists(st.sampled_from(verts), unique=True)))
        A = full_subcomplex(K, W)
        assert full_subcomplex(A, W) == A
        assert A.simplices <= full_subcomplex(K, V).simplices


class TestGroups:
    @pytest.mark.parametrize("name,expected", [
        ("triangle-boundary", [G(1), G(1)]),
        ("hexagon", [G(1), G(1)]),
        ("octahedron", [G(1), G(0), G(1)]),
        ("torus", [G(1), G(2), G(1)]),
        ("rp2", [G(1), G(0, (2,)), G(0)]),
        ("simplex3", [G(1), G(0), G(0), G(0)]),
    ])
    def test_homology(self, complexes, name, expected):
        K = complexes[name]
        assert [homology(K, k) for k in range(K.dim + 1)] == expected

    def test_rp2_cohomology_torsion_shifts(self, complexes):
        K = complexes["rp2"]
        assert [cohomology(K, k) for k in range(3)] == [G(1), G(0), G(0, (2,))]

    def test_reduced(self, complexes, tri):
        assert homology(complexes["simplex3"], 0, reduced=True).is_trivial
        two = SimplicialComplex.from_maximal(["a", "b"], [(0,), (1,)])
        assert homology(two, 0, reduced=True) == G(1)

    def test_connected(self, tri):
        assert is_connected(tri)
        assert not is_connected(SimplicialComplex.from_maximal(["a", "b"], [(0,), (1,)]))
