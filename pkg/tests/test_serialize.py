import json
import random
from fractions import Fraction

import pytest

from wtopo import dmetric, fundcat, rotation, wcat, wspace
from wtopo.paths import AnalyticModel, PLPath
from wtopo.errors import TriangleViolation
from wtopo.serialize import SchemaError, dumps, load, relation_from_json, to_json

from conftest import DATA, random_space

F = Fraction


def round_trip(value):
    return load(json.loads(dumps(to_json(value))))


def same_wcat(A, B):
    return (A.objects == B.objects and A.morphisms == B.morphisms and A.identities == B.identities
            and A.composition == B.composition and all(A.w(m) == B.w(m) for m in A.morphisms))


@pytest.mark.parametrize("path", sorted(DATA.glob("*.json")), ids=lambda p: p.name)
def test_data_files_load(path):
    raw = json.loads(path.read_text())
    if path.name == "bad-triangle.json":
        with pytest.raises(TriangleViolation):
            dmetric.validate(load(raw).d)
        return
    if path.name == "relation.json":
        assert relation_from_json(raw).pairs
        return
    value = load(raw)
    again = round_trip(value)
    assert to_json(again) == to_json(value)


def test_space_round_trip():
    rng = random.Random(1)
    for _ in range(30):
        X = random_space(rng, rng.randint(1, 4))
        Y = round_trip(X)
        assert Y.points == X.points and Y.d == X.d
    S = dmetric.product([dmetric.from_rows([[0, 1], [2, 0]])] * 2)
    assert round_trip(S).points == S.points


def test_path_round_trip():
    for p in (PLPath(AnalyticModel.line(), (0, F(1, 2), 1), (0, F(3, 4), F(1, 3))),
              PLPath(AnalyticModel.interval(0, 2, 2), (0, 1), ((0, 0), (1, 2))),
              PLPath.circle((0, F(1, 2), 1), (0, F(1, 2), 0), op=True)):
        q = round_trip(p)
        assert q.times == p.times and q.values == p.values and q.model == p.model


def test_wcat_round_trip():
    free = wcat.free_category(["a", "b", "c"], {"f": ("a", "b"), "g": ("b", "c")}, {"f": 1, "g": F(1, 2)})
    for C in (fundcat.fundamental_category(fundcat.square_annulus()), wcat.directed_interval(), free):
        assert same_wcat(round_trip(C), C)


def test_plane_and_wspace_round_trip():
    P = fundcat.random_plane(random.Random(2), 2)[0]
    Q = round_trip(P)
    assert (Q.bounds, Q.holes, Q.marked, Q.names) == (P.bounds, P.holes, P.marked, P.names)
    X = wspace.tabled(["a", "b"], [("a", "b"), ("b", "a")], {(0,): 1, (1,): 2, (0, 1): 2, (1, 0): 3})
    assert wspace.walkwise_equal(round_trip(X), X, 4)
    Y = wspace.product([wspace.path_graph(2), wspace.path_graph(2)])
    assert wspace.walkwise_equal(round_trip(Y), Y)


def test_theta_round_trip():
    for theta in (rotation.sqrt(2), (1 + rotation.sqrt(5)) / 2, rotation.QuadraticIrrational(-3, 2, 7, 3)):
        assert round_trip(theta) == theta


@pytest.mark.parametrize("doc, pointer", [
    ({"type": "finite_delta", "points": ["a", "b"], "matrix": [["0", "1"], ["x", "0"]]}, "matrix[1][0]"),
    ({"type": "finite_delta", "points": ["a"], "matrix": [[0.5]]}, "matrix[0][0]"),
    ({"type": "finite_delta", "points": ["a", "b"], "matrix": [["0", "1"]]}, "points"),
    ({"model": "delta_line", "times": ["0", 1.0], "values": ["0", "1"]}, "times[1]"),
    ({"model": "delta_line", "times": ["0", "1"]}, "values"),
    ({"type": "wcat", "objects": ["a"], "morphisms": [{"name": "i", "source": "a", "target": "a"}],
      "identities": [["a", "i"]], "composition": [["i", "i", "i"]]}, "morphisms[0].weight"),
    ({"bounds": ["1"], "holes": []}, "bounds"),
    ({"bounds": ["1", "1"], "holes": [["0", "0", "x", "1"]]}, "holes[0][2]"),
    ({"vertices": ["a"], "edges": [["a"]], "weights": {"mode": "linear", "edge_weights": []}}, "edges[0]"),
    ({"vertices": ["a"], "edges": [], "weights": {"mode": "fancy"}}, "weights.mode"),
    ({"theta": {"p": 0, "q": 1, "r": 1}}, "theta"),
    ({"type": "nonsense"}, "type"),
    ([], ""),
])
def test_schema_error_pointers(doc, pointer):
    with pytest.raises(SchemaError) as exc:
        load(doc)
    assert exc.value.pointer == pointer


def test_no_floats_in_output():
    text = dumps(to_json(fundcat.fundamental_category(fundcat.square_annulus())))
    assert "0.6" not in text and '"2/3"' in text
