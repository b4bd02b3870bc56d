import pytest
from hypothesis import given, strategies as st

from plabicflow.combinat import format_ksubset, ksubsets
from plabicflow.plabic import (
    ModelInvariantError,
    NotPlabicMutable,
    build_rectangles_model,
    shark_model,
    square_move,
)
from plabicflow.seeds import (
    NotMutable,
    Quiver,
    beta_matrix,
    exact_sequence_checks,
    exchange_label,
    fz_mutate,
    kappa_vector,
    make_quiver,
    mutable_vertices,
    mutate_labels,
    mutation_entries,
    quiver_b_entries,
    quiver_of_model,
    rectangles_seed,
    seed_of_model,
    trop_a_mutate,
    wt_matrix,
)

# dual quiver of the (2,4) rectangles model
Q24_ARROWS = (
    ("12", "14", 1), ("12", "23", 1), ("13", "12", 1), ("13", "34", 1),
    ("14", "13", 1), ("23", "13", 1), ("34", "14", 1), ("34", "23", 1),
)

# MaxDiag table of the (2,4) seed: I -> vector over the five labels
KAPPA24 = {
    "12": {"12": 0, "13": 1, "14": 1, "23": 1, "34": 2},
    "13": {"12": 0, "13": 0, "14": 1, "23": 1, "34": 1},
    "14": {"12": 0, "13": 0, "14": 0, "23": 1, "34": 1},
    "23": {"12": 0, "13": 0, "14": 1, "23": 0, "34": 1},
    "24": {"12": 0, "13": 0, "14": 0, "23": 0, "34": 1},
    "34": {"12": 0, "13": 0, "14": 0, "23": 0, "34": 0},
}

BETA24 = {
    ("12", "12"): 1, ("12", "13"): -1, ("13", "12"): 1, ("13", "14"): -1,
    ("13", "23"): -1, ("13", "34"): 1, ("14", "12"): -1, ("14", "13"): 1,
    ("14", "14"): 1, ("14", "34"): -1, ("23", "12"): -1, ("23", "13"): 1,
    ("23", "23"): 1, ("23", "34"): -1, ("34", "13"): -1, ("34", "34"): 1,
}


def test_quiver_of_rect24():
    q = quiver_of_model(build_rectangles_model(2, 4))
    assert q.arrows == Q24_ARROWS
    assert q.star == "12"
    assert sorted(q.frozen) == ["12", "14", "23", "34"]
    assert mutable_vertices(q) == ["13"]


def test_make_quiver_guards():
    with pytest.raises(ModelInvariantError):
        make_quiver(["a"], ["a"], "a", {("a", "a"): 1})  # loop
    with pytest.raises(ModelInvariantError):
        # two-cycle with a mutable endpoint
        make_quiver(["a", "b"], ["a"], "a", {("a", "b"): 1, ("b", "a"): 1})
    # frozen-frozen two-cycles are legitimate (degenerate duals)
    q = make_quiver(["a", "b"], ["a", "b"], "a", {("a", "b"): 1, ("b", "a"): 1})
    assert len(q.arrows) == 2
    assert quiver_b_entries(q) == {}  # nets to zero
    assert mutation_entries(q) == {}


def test_fz_mutate_24():
    q = quiver_of_model(build_rectangles_model(2, 4))
    q2 = fz_mutate(q, "13")
    # arrows at 13 reverse; composite arrows through 13 cancel against the
    # existing frozen-frozen arrows, which are copied through untouched
    assert q2.arrows == (
        ("12", "13", 1), ("12", "14", 1), ("12", "23", 1), ("13", "14", 1),
        ("13", "23", 1), ("34", "13", 1), ("34", "14", 1), ("34", "23", 1),
    )
    # involution on the tracked entries
    q3 = fz_mutate(q2, "13")
    assert mutation_entries(q3) == mutation_entries(q)
    with pytest.raises(NotMutable):
        fz_mutate(q, "12")


def test_seed_and_mutate_labels():
    s = rectangles_seed(2, 4)
    assert s.labels["13"] == (1, 3)
    s2 = mutate_labels(s, "13")
    assert sorted(s2.labels) == ["12", "14", "23", "24", "34"]
    assert s2.labels["24"] == (2, 4)
    # mutating back restores the original label set
    s3 = mutate_labels(s2, "24")
    assert sorted(s3.labels) == sorted(s.labels)
    with pytest.raises(NotMutable):
        mutate_labels(s, "34")


def test_exchange_label_patterns():
    s = rectangles_seed(2, 5)
    assert exchange_label(s.quiver, s.labels, "13") == (2, 4)
    assert exchange_label(s.quiver, s.labels, "14") == (3, 5)
    # hexagonal vertex of (3,6) has no quadrilateral exchange
    s36 = rectangles_seed(3, 6)
    with pytest.raises(NotPlabicMutable):
        exchange_label(s36.quiver, s36.labels, "145")


def test_kappa_table_24():
    s = rectangles_seed(2, 4)
    got = {
        format_ksubset(I, 4): dict(sorted(kappa_vector(s, I).items()))
        for I in ksubsets(4, 2)
    }
    assert got == KAPPA24


def test_kappa_star_always_zero():
    for k, n in [(2, 5), (3, 6)]:
        s = rectangles_seed(k, n)
        for I in ksubsets(n, k):
            assert kappa_vector(s, I)[s.quiver.star] == 0


def test_kappa_russian_figure():
    s = rectangles_seed(4, 9)
    kv = kappa_vector(s, (1, 4, 5, 7))
    named = {lab: v for lab, v in kv.items()}
    assert named[s.quiver.star] == 0
    assert named["1235"] == 0        # the (1,1) rectangle
    assert named["6789"] == 3        # the (4,5) rectangle
    assert max(named.values()) == 3


def test_kappa_injective_49():
    s = rectangles_seed(4, 9)
    seen = {}
    for I in ksubsets(9, 4):
        key = tuple(sorted(kappa_vector(s, I).items()))
        assert key not in seen
        seen[key] = I
    assert len(seen) == 126


def test_beta_matrix_24():
    s = rectangles_seed(2, 4)
    assert beta_matrix(s) == BETA24


def test_beta_unbalanced_outside_scope():
    # the shark seed is not reachable from a rectangles seed; its columns
    # do not annihilate the all-ones vector
    s = seed_of_model(shark_model())
    with pytest.raises(ModelInvariantError) as err:
        beta_matrix(s)
    assert "beta-unbalanced" in str(err.value)


def test_exact_sequence_identities():
    for k, n in [(1, 2), (2, 4), (2, 5), (2, 6), (3, 6), (4, 9)]:
        assert exact_sequence_checks(rectangles_seed(k, n))


def test_exact_sequence_after_mutation():
    s = mutate_labels(rectangles_seed(2, 5), "13")
    assert exact_sequence_checks(s)


def test_mutated_quiver_matches_square_moved_model():
    # seed-level mutation reproduces the dual quiver of the square-moved
    # model exactly, frozen-frozen arrows included
    def key(q):
        return (tuple(sorted(q.vertices)), tuple(sorted(q.frozen)), q.star,
                tuple(sorted(q.arrows)))

    for k, n in [(2, 4), (2, 5), (3, 6)]:
        model = build_rectangles_model(k, n)
        s = seed_of_model(model)
        for j in mutable_vertices(s.quiver):
            try:
                moved = square_move(model, s.labels[j])
            except NotPlabicMutable:
                continue
            s2 = mutate_labels(s, j)
            smod = seed_of_model(moved)
            assert key(s2.quiver) == key(smod.quiver)
            assert s2.labels == smod.labels
            assert exact_sequence_checks(s2)


def test_wt_matrix_is_kappa_columns():
    s = rectangles_seed(2, 4)
    wt = wt_matrix(s)
    for u in s.quiver.vertices:
        for v in s.quiver.vertices:
            # wt_matrix stores nonzero entries only
            assert wt.get((v, u), 0) == kappa_vector(s, s.labels[u])[v]


def test_trop_a_mutate_kappa_compat():
    s = rectangles_seed(2, 4)
    s2 = mutate_labels(s, "13")
    for I in ksubsets(4, 2):
        moved = trop_a_mutate(s.quiver, "13", kappa_vector(s, I))
        want = kappa_vector(s2, I)
        want = {"13" if a == "24" else a: b for a, b in want.items()}
        assert moved == want


@given(st.dictionaries(
    st.sampled_from(["12", "13", "14", "23", "34"]),
    st.integers(-8, 8),
))
def test_trop_a_mutate_involution(partial):
    s = rectangles_seed(2, 4)
    v = {x: partial.get(x, 0) for x in s.quiver.vertices}
    assert trop_a_mutate(s.quiver, "13", trop_a_mutate(s.quiver, "13", v)) == v


def test_degenerate_seed():
    s = rectangles_seed(1, 2)
    assert sorted(s.labels) == ["1", "2"]
    assert s.quiver.star == "1"
    assert mutable_vertices(s.quiver) == []
    b = beta_matrix(s)
    assert b == {("1", "1"): 1, ("2", "1"): -1,
                 ("1", "2"): -1, ("2", "2"): 1}
