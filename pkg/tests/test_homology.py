"""Smith normal form, abelian group arithmetic, and the graph homology
theorem, checked against a slow minor-gcd oracle and hand-computed cases."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfboundary.arrangement import generate_family
from mfboundary.errors import InvalidInput, MissingEuler, NonSimpleGraph
from mfboundary.graph_core import Edge, PlumbingGraph, Vertex
from mfboundary.homology import (
    AbelianGroup,
    SmithForm,
    betti_formula,
    homology_of_graph,
    incidence_matrix,
    probe_conjecture,
    projective_complement_euler,
    smith_normal_form,
)

from oracles import minor_gcd_smith, random_matrix, rational_rank


def v(vid, euler=None, genus=0, kind="plain"):
    return Vertex(id=vid, euler=euler, genus=genus, kind=kind)


# -- SmithForm / AbelianGroup containers -------------------------------------

def test_smith_form_rank_and_corank():
    sf = SmithForm(rows=4, cols=5, factors=(1, 2, 6))
    assert sf.rank == 3
    assert sf.corank == 2


def test_smith_form_rejects_nondivisible_chain():
    with pytest.raises(InvalidInput):
        SmithForm(rows=2, cols=2, factors=(2, 3))


def test_abelian_group_validation():
    with pytest.raises(InvalidInput):
        AbelianGroup(-1)
    with pytest.raises(InvalidInput):
        AbelianGroup(0, (1,))
    with pytest.raises(InvalidInput):
        AbelianGroup(0, (4, 2))


def test_abelian_group_equality_and_str():
    assert AbelianGroup(2, (3, 6)) == AbelianGroup(2, [3, 6])
    assert str(AbelianGroup(0)) == "0"
    assert str(AbelianGroup(1)) == "Z"
    assert str(AbelianGroup(3)) == "Z^3"
    assert str(AbelianGroup(2, (4,))) == "Z^2 (+) Z_4"
    assert str(AbelianGroup(0, (2, 2))) == "Z_2 (+) Z_2"


def test_abelian_group_helpers():
    g = AbelianGroup.cyclic_powers(5, 4, 3)
    assert g == AbelianGroup(5, (4, 4, 4))
    assert AbelianGroup.cyclic_powers(2, 7, 0) == AbelianGroup(2)
    assert AbelianGroup(0, (2, 6)).as_prime_powers() == ((2, 1), (2, 1), (3, 1))
    assert AbelianGroup(0, (12,)).as_prime_powers() == ((2, 2), (3, 1))
    assert AbelianGroup(0).is_trivial
    assert not AbelianGroup(1).is_trivial
    assert AbelianGroup(3).is_torsion_free
    assert not AbelianGroup(3, (2,)).is_torsion_free


# -- smith_normal_form -------------------------------------------------------

def test_snf_small_hand_cases():
    assert smith_normal_form([[0]]).factors == ()
    assert smith_normal_form([[7]]).factors == (7,)
    assert smith_normal_form([[-7]]).factors == (7,)
    assert smith_normal_form([[2, 0], [0, 3]]).factors == (1, 6)
    assert smith_normal_form([[2, 4], [4, 8]]).factors == (2,)
    # diag(2, 2) is not diag(1, 4)
    assert smith_normal_form([[2, 0], [0, 2]]).factors == (2, 2)


def test_snf_rejects_garbage():
    with pytest.raises(InvalidInput):
        smith_normal_form("nope")
    with pytest.raises(InvalidInput):
        smith_normal_form([[1, 2], [3]])
    with pytest.raises(InvalidInput):
        smith_normal_form([[1.5]])
    with pytest.raises(InvalidInput):
        smith_normal_form([[True]])


def test_snf_empty_matrices():
    assert smith_normal_form([]).factors == ()
    assert smith_normal_form([[]]).factors == ()
    assert smith_normal_form([[]]).corank == 0


def test_snf_matches_minor_gcd_oracle_seeded():
    rng = random.Random(90125)
    for _ in range(300):
        M = random_matrix(rng)
        got = smith_normal_form(M)
        want = minor_gcd_smith(M)
        assert got.factors == want, (M, got.factors, want)
        assert got.rank == rational_rank(M)


def test_snf_nontrivial_torsion_example():
    # presentation of Z_2 (+) Z_{12}
    M = [[2, 0, 0], [0, 12, 0], [0, 0, 1]]
    assert smith_normal_form(M).factors == (1, 2, 12)


def test_snf_handles_wide_and_tall():
    assert smith_normal_form([[6, 10, 15]]).factors == (1,)
    assert smith_normal_form([[4], [6]]).factors == (2,)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_snf_invariances(data):
    rng = random.Random(data.draw(st.integers(0, 10**9)))
    M = random_matrix(rng, max_size=5, bound=7)
    base = smith_normal_form(M).factors
    rows = list(range(len(M)))
    cols = list(range(len(M[0])))
    rng.shuffle(rows)
    rng.shuffle(cols)
    permuted = [[M[i][j] for j in cols] for i in rows]
    assert smith_normal_form(permuted).factors == base
    transposed = [list(col) for col in zip(*M)]
    assert smith_normal_form(transposed).factors == base
    negated = [[-x for x in row] for row in M]
    assert smith_normal_form(negated).factors == base
    if len(M) >= 2:
        # add a multiple of one row to another: unimodular, SNF-preserving
        k = rng.randint(-3, 3)
        bumped = [list(row) for row in M]
        bumped[0] = [a + k * b for a, b in zip(bumped[0], bumped[1])]
        assert smith_normal_form(bumped).factors == base


def test_snf_bigger_structured_matrix():
    # block diag(5, 15, 45) after clearing: factors 5, 15, 45
    M = [[5, 0, 0], [0, 15, 0], [0, 0, 45]]
    assert smith_normal_form(M).factors == (5, 15, 45)
    M2 = [[5, 5, 0], [0, 15, 15], [0, 0, 45]]
    # det 5*15*45, D_1 = 5
    assert smith_normal_form(M2).factors == minor_gcd_smith(M2)


# -- incidence_matrix --------------------------------------------------------

def closed_graph(verts, edges):
    return PlumbingGraph(
        vertices=[v(i, e, g) for i, e, g in verts],
        edges=[Edge(a, b, s) for a, b, s in edges],
    )


def test_incidence_matrix_values_and_symmetry():
    g = closed_graph(
        [("v0", -1, 0), ("v1", -2, 0), ("w0", -3, 1)],
        [("v0", "w0", 1), ("v1", "w0", -1)],
    )
    A = incidence_matrix(g)
    assert A == [[-1, 0, 1], [0, -2, -1], [1, -1, -3]]
    assert all(A[i][j] == A[j][i] for i in range(3) for j in range(3))


def test_incidence_matrix_custom_order():
    g = closed_graph([("a", 2, 0), ("b", 5, 0)], [("a", "b", -1)])
    assert incidence_matrix(g, order=["b", "a"]) == [[5, -1], [-1, 2]]
    with pytest.raises(InvalidInput):
        incidence_matrix(g, order=["a"])
    with pytest.raises(InvalidInput):
        incidence_matrix(g, order=["a", "a"])


def test_incidence_matrix_rejects_arrowheads():
    g = PlumbingGraph(
        vertices=[v("v0", -1), v("a0", kind="arrowhead")],
        edges=[Edge("v0", "a0", 1, arrow=True)],
    )
    with pytest.raises(InvalidInput):
        incidence_matrix(g)


def test_incidence_matrix_rejects_missing_euler():
    g = PlumbingGraph(vertices=[v("v0")], edges=[])
    with pytest.raises(MissingEuler):
        incidence_matrix(g)


def test_incidence_matrix_rejects_non_simple():
    loop = closed_graph([("v0", -1, 0)], [("v0", "v0", 1)])
    with pytest.raises(NonSimpleGraph) as exc:
        incidence_matrix(loop)
    assert "absorb" in str(exc.value)
    double = closed_graph(
        [("v0", -1, 0), ("v1", -2, 0)],
        [("v0", "v1", 1), ("v0", "v1", -1)],
    )
    with pytest.raises(NonSimpleGraph):
        incidence_matrix(double)


# -- homology_of_graph -------------------------------------------------------

def test_homology_single_vertices():
    # euler e, genus 0: lens-space circle bundle over S^2
    assert homology_of_graph(closed_graph([("v", 0, 0)], [])) == AbelianGroup(1)
    assert homology_of_graph(closed_graph([("v", 1, 0)], [])) == AbelianGroup(0)
    assert homology_of_graph(closed_graph([("v", -5, 0)], [])) == AbelianGroup(0, (5,))
    # genus g contributes 2g free generators
    assert homology_of_graph(closed_graph([("v", 3, 2)], [])) == AbelianGroup(4, (3,))


def test_homology_counts_graph_cycles():
    tri = closed_graph(
        [("a", 1, 0), ("b", 1, 0), ("c", 1, 0)],
        [("a", "b", 1), ("b", "c", 1), ("a", "c", 1)],
    )
    got = homology_of_graph(tri)
    A = incidence_matrix(tri)
    snf = smith_normal_form(A)
    assert got.free_rank == snf.corank + 1  # one independent cycle
    assert got.torsion == tuple(d for d in snf.factors if d >= 2)


def test_homology_disjoint_union_adds():
    g1 = closed_graph([("a", -4, 0)], [])
    g2 = closed_graph([("b", 0, 1)], [])
    both = closed_graph([("a", -4, 0), ("b", 0, 1)], [])
    h1, h2, hb = map(homology_of_graph, (g1, g2, both))
    assert hb.free_rank == h1.free_rank + h2.free_rank
    assert sorted(hb.torsion) == sorted(h1.torsion + h2.torsion)


# -- closed-form arrangement counts ------------------------------------------

def test_betti_formula_families():
    for n in range(2, 9):
        assert betti_formula(generate_family("generic", n)) == n * (n - 1) // 2
        assert betti_formula(generate_family("pencil", n)) == (n - 1) ** 2
    for n in range(3, 9):
        assert betti_formula(generate_family("near_pencil", n)) == 2 * n - 3


def test_betti_formula_rejects_tiny():
    from mfboundary.arrangement import IncidenceData

    with pytest.raises(InvalidInput):
        betti_formula(IncidenceData(n=1, points=[]))


def test_projective_complement_euler_values():
    assert projective_complement_euler(generate_family("generic", 3)) == 0
    assert projective_complement_euler(generate_family("generic", 4)) == 1
    assert projective_complement_euler(generate_family("generic", 5)) == 3
    for n in range(2, 8):
        assert projective_complement_euler(generate_family("pencil", n)) == 2 - n
    for n in range(3, 8):
        assert projective_complement_euler(generate_family("near_pencil", n)) == 0


# -- conjecture probes -------------------------------------------------------

def test_probe_generic_four_lines():
    rep = probe_conjecture(generate_family("generic", 4))
    assert rep.group == AbelianGroup(6, (4,))
    assert rep.flat_hypothesis
    assert rep.complement_euler == 1
    assert rep.flat_prediction_ok is True
    assert rep.betti_matches
    assert rep.orders_divide_n
    assert not rep.torsion_free
    assert not (rep.pencil_like or rep.near_pencil_like)
    assert rep.torsion_free_iff
    assert rep.all_hold()


def test_probe_pencil_flags():
    rep = probe_conjecture(generate_family("pencil", 5))
    assert rep.group == AbelianGroup(16)
    assert not rep.flat_hypothesis
    assert rep.flat_prediction_ok is None
    assert rep.pencil_like and not rep.near_pencil_like
    assert rep.torsion_free and rep.torsion_free_iff
    assert rep.all_hold()


def test_probe_near_pencil_flags():
    rep = probe_conjecture(generate_family("near_pencil", 5))
    assert rep.group == AbelianGroup(7)
    assert rep.flat_hypothesis
    assert rep.complement_euler == 0
    assert rep.flat_prediction_ok is True  # chi = 0, no torsion expected
    assert rep.near_pencil_like and not rep.pencil_like
    assert rep.all_hold()


def test_probe_triangle_counts_as_near_pencil():
    rep = probe_conjecture(generate_family("generic", 3))
    assert rep.group == AbelianGroup(3)
    assert rep.near_pencil_like
    assert rep.torsion_free_iff
    assert rep.all_hold()


def test_probe_report_json_shape():
    rep = probe_conjecture(generate_family("generic", 4))
    d = rep.to_json()
    assert d["h1"] == "Z^6 (+) Z_4"
    assert d["torsion"] == [4]
    assert d["all_hold"] is True
    assert d["n"] == 4
