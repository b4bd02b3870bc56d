import pytest

from plabicflow.combinat import format_ksubset, ksubsets
from plabicflow.plabic import (
    ModelInvariantError,
    NotPlabicMutable,
    ParseError,
    analyze,
    base_matching,
    boundary_value,
    build_rectangles_model,
    enumerate_matchings,
    flow_weight,
    load_model,
    positroid,
    save_model,
    shark_model,
    square_move,
)
from plabicflow.seeds import mutable_vertices, quiver_of_model, seed_of_model

# the full matching table of the 5-node fixture: boundary value -> edge sets
SHARK_MATCHINGS = [
    ("12", ("B1B2", "B3B4", "E1")),
    ("13", ("B1B2", "E1", "E2", "E3")),
    ("14", ("B1B3", "E1", "E2", "E4")),
    ("15", ("B1B3", "E1", "E2", "E5")),
    ("23", ("B1B2", "B4B5", "E3")),
    ("24", ("B1B3", "B4B5", "E4")),
    ("24", ("B1B5", "B3B4", "E4")),
    ("25", ("B1B3", "B4B5", "E5")),
    ("25", ("B1B5", "B3B4", "E5")),
    ("34", ("B1B5", "E2", "E3", "E4")),
    ("35", ("B1B5", "E2", "E3", "E5")),
]


def test_shark_shape():
    m = shark_model()
    an = analyze(m)
    assert len(m.colors) == 5
    assert len([f for f in an.faces]) == 6
    labels = sorted(format_ksubset(f.label, 5) for f in an.faces)
    assert labels == ["12", "14", "15", "23", "24", "34"]
    assert format_ksubset(an.faces[an.star].label, 5) == "12"


def test_shark_matchings_and_positroid():
    m = shark_model()
    got = sorted(
        (format_ksubset(boundary_value(m, x), 5), tuple(sorted(x)))
        for x in enumerate_matchings(m)
    )
    assert got == SHARK_MATCHINGS
    pos = [format_ksubset(I, 5) for I in positroid(m)]
    assert pos == ["12", "13", "14", "15", "23", "24", "25", "34", "35"]
    assert "45" not in pos


def test_shark_base_matching():
    m = shark_model()
    mstar = base_matching(m)
    assert tuple(sorted(mstar)) == ("B1B5", "E2", "E3", "E5")
    assert format_ksubset(boundary_value(m, mstar), 5) == "35"


def test_shark_flow_weight_figure():
    # the two 25-matchings carry the two terms of the flow polynomial
    m = shark_model()

    def named(match):
        w = flow_weight(m, frozenset(match))
        return {format_ksubset(I, 5): v for I, v in w.items() if v}

    assert named({"B1B5", "B3B4", "E5"}) == {"34": 1}
    assert named({"B1B3", "B4B5", "E5"}) == {"24": 1, "34": 1}


def test_save_load_roundtrip():
    for model in (shark_model(), build_rectangles_model(2, 4),
                  build_rectangles_model(3, 6)):
        text = save_model(model)
        again = load_model(text)
        assert save_model(again) == text
        assert positroid(again) == positroid(model)


def test_load_errors():
    with pytest.raises(ParseError):
        load_model("plabic v1\nkn 2\n")
    with pytest.raises(ParseError):
        load_model("nonsense v9\n")
    # duplicated boundary label
    bad = (
        "plabic v1\nkn 1 2\nnode C black\n"
        "edge E1 n:C b:1\nedge E2 n:C b:1\nrot C E2 E1\n"
        "label E1,E2 1\nstar E1,E2\n"
    )
    with pytest.raises((ParseError, ModelInvariantError)):
        load_model(bad)


def test_invariant_errors():
    # same-color edge
    bad = (
        "plabic v1\nkn 2 4\nnode A black\nnode B black\n"
        "edge E1 n:A b:1\nedge E2 n:A b:2\nedge E3 n:B b:3\nedge E4 n:B b:4\n"
        "edge M n:A n:B\nrot A E1 E2 M\nrot B E3 E4 M\n"
        "label E1,E2 12\nstar E1,E2\n"
    )
    with pytest.raises(ModelInvariantError) as err:
        enumerate_matchings(load_model(bad))
    assert "bipartite" in str(err.value)


def test_rectangles_24():
    m = build_rectangles_model(2, 4)
    an = analyze(m)
    labels = sorted(format_ksubset(f.label, 4) for f in an.faces)
    assert labels == ["12", "13", "14", "23", "34"]
    assert format_ksubset(an.faces[an.star].label, 4) == "12"
    assert positroid(m) == tuple(ksubsets(4, 2))
    assert mutable_vertices(quiver_of_model(m)) == ["13"]


def test_rectangles_labels_formula():
    m = build_rectangles_model(3, 7)
    an = analyze(m)
    labels = {format_ksubset(f.label, 7) for f in an.faces}
    assert "156" in labels  # the (2,3) rectangle
    for k, n in [(2, 5), (3, 6), (4, 9)]:
        an = analyze(build_rectangles_model(k, n))
        labels = {f.label for f in an.faces}
        assert tuple(range(n - k + 1, n + 1)) in labels
        assert len(labels) == k * (n - k) + 1


def test_rectangles_matching_counts():
    assert len(enumerate_matchings(build_rectangles_model(2, 5))) == 14
    assert len(enumerate_matchings(build_rectangles_model(2, 6))) == 25
    assert len(enumerate_matchings(build_rectangles_model(3, 6))) == 42


def test_rectangles_full_positroid():
    for k, n in [(2, 4), (2, 5), (3, 6)]:
        assert positroid(build_rectangles_model(k, n)) == tuple(ksubsets(n, k))


def test_square_move_24():
    m = build_rectangles_model(2, 4)
    m2 = square_move(m, (1, 3))
    labels = sorted(format_ksubset(f.label, 4) for f in analyze(m2).faces)
    assert labels == ["12", "14", "23", "24", "34"]
    assert positroid(m2) == positroid(m)
    # moving back gives the original label set
    m3 = square_move(m2, (2, 4))
    labels3 = sorted(format_ksubset(f.label, 4) for f in analyze(m3).faces)
    assert labels3 == ["12", "13", "14", "23", "34"]
    assert positroid(m3) == positroid(m)


def test_square_move_guards():
    m = build_rectangles_model(2, 4)
    with pytest.raises(NotPlabicMutable):
        square_move(m, (1, 2))  # frozen boundary face
    m36 = build_rectangles_model(3, 6)
    with pytest.raises(NotPlabicMutable):
        square_move(m36, (1, 4, 5))  # hexagonal face


def test_shark_square_move():
    m = shark_model()
    m2 = square_move(m, (2, 4))
    labels = sorted(format_ksubset(f.label, 5) for f in analyze(m2).faces)
    assert labels == ["12", "13", "14", "15", "23", "34"]
    # the move contracts the square's corner pair: one node fewer
    assert len(m2.colors) == len(m.colors) - 1
    assert positroid(m2) == positroid(m)


def test_degenerate_two_face_disc():
    # n = 2: both faces share the same bounding edges, so the text format
    # cannot name them, but the in-memory builder can (via gap indexing)
    m = build_rectangles_model(1, 2)
    an = analyze(m)
    assert sorted(format_ksubset(f.label, 2) for f in an.faces) == ["1", "2"]
    assert len(enumerate_matchings(m)) == 2
    assert positroid(m) == ((1,), (2,))
    with pytest.raises(ModelInvariantError) as err:
        save_model(m)
    assert "unrepresentable" in str(err.value)


def test_star_models():
    # k = 1 and k = n-1 are single-node fans
    for k, n in [(1, 4), (3, 4), (1, 5), (4, 5)]:
        m = build_rectangles_model(k, n)
        assert len(m.colors) == 1
        assert positroid(m) == tuple(ksubsets(n, k))
