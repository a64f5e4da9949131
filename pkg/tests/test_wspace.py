import itertools
import json
import random
from fractions import Fraction

import pytest

from wtopo import dmetric, wspace
from wtopo.dmetric import from_rows
from wtopo.errors import EdgeOffSpace, WeightAxiomViolation
from wtopo.serialize import load
from wtopo.weights import INF

from conftest import DATA, random_space

F = Fraction


def single_edge(w, names=("a", "b")):
    return wspace.linear(names, [names], [w])


def edge_between(X, a, b):
    return next(e for e, pair in enumerate(X.edges) if pair == (a, b))


def random_graph(rng, n_vertices=None, n_edges=None):
    n = n_vertices or rng.randint(1, 4)
    verts = [f"v{i}" for i in range(n)]
    m = n_edges if n_edges is not None else rng.randint(0, 5)
    edges = [(rng.choice(verts), rng.choice(verts)) for _ in range(m)]
    return verts, edges


def random_weight(rng, p_inf=0.1):
    return INF if rng.random() < p_inf else F(rng.randint(0, 8), rng.choice([1, 2, 3]))


def random_linear(rng, **kw):
    verts, edges = random_graph(rng, **kw)
    return wspace.linear(verts, edges, [random_weight(rng) for _ in edges])


def random_tabled(rng, **kw):
    """Every walk of at most two edges tabled, each pair weight between the
    max and the sum of its edges, so the axioms hold by construction."""
    verts, edges = random_graph(rng, **kw)
    base = wspace.linear(verts, edges, [0] * len(edges))
    single = {(e,): random_weight(rng) for e in range(len(edges))}
    table = dict(single)
    for walk in wspace.walks(base, 2):
        if len(walk) == 2:
            a, b = single[walk[:1]], single[walk[1:]]
            hi = a + b
            lo = max(a, b)
            if hi is INF or rng.random() < 0.3:
                table[walk] = hi
            else:
                table[walk] = lo + (hi - lo) * F(rng.randint(0, 4), 4)
    return wspace.tabled(verts, edges, table, bound=2)


def random_chain_space(rng, **kw):
    return random_tabled(rng, **kw) if rng.random() < 0.5 else random_linear(rng, **kw)


def as_tabled(X, bound=3):
    """The same weights stored as a table, so constructions take their
    generic path instead of the linear shortcut."""
    return wspace.tabled(X.vertices, X.edges, {w: X.weight(w) for w in wspace.walks(X, bound)}, bound)


def axes():
    raw = json.loads((DATA / "axes.json").read_text())
    return load(raw), [tuple(e) for e in raw["admissible"]]


# constructions ------------------------------------------------------------------

def test_tensor_and_product_examples():
    X, Y = single_edge(1), single_edge(2, ("c", "d"))
    T, P = wspace.tensor([X, Y]), wspace.product([X, Y])
    diag = edge_between(T, ("a", "c"), ("b", "d"))
    assert T.weight((diag,)) == 3
    assert P.weight((edge_between(P, ("a", "c"), ("b", "d")),)) == 2
    assert P.weight((edge_between(P, ("a", "c"), ("a", "d")),)) == 2
    assert P.weight((edge_between(P, ("a", "c"), ("b", "c")),)) == 1


def test_tensor_of_linear_is_linear():
    rng = random.Random(1)
    for _ in range(10):
        X = random_linear(rng, n_vertices=2, n_edges=2)
        Y = random_linear(rng, n_vertices=2, n_edges=2)
        T = wspace.tensor([as_tabled(X), as_tabled(Y)])
        assert T.mode == "tensor"
        assert wspace.is_linear(T, max_len=3)
        assert wspace.tensor([X, Y]).mode == wspace.LINEAR


def test_product_not_linear():
    X = wspace.path_graph(2)
    assert wspace.classify(wspace.product([X, X]), max_len=3).linear is False
    assert wspace.classify(wspace.tensor([X, X]), max_len=3).linear is True


def test_sum_example():
    S = wspace.sum([single_edge(1), single_edge(5)])
    assert S.vertices == ((0, "a"), (0, "b"), (1, "a"), (1, "b"))
    assert [S.weight((e,)) for e in range(2)] == [1, 5]
    assert wspace.delta_of(S).dist((0, "a"), (1, "b")) is INF


def test_quotient_loop():
    X = single_edge(1)
    Q = wspace.quotient(X, [("a", "b")])
    assert Q.vertices == ("a",)
    for n in range(1, 7):
        assert Q.weight((0,) * n) == n


def test_quotient_trivial_relation():
    rng = random.Random(2)
    for _ in range(10):
        X = random_chain_space(rng)
        Q = wspace.quotient(X, [])
        assert Q.edges == X.edges and wspace.walkwise_equal(Q, X, 4)


def quotient_oracle(X, walk):
    """Least total over every split of the walk into pieces that are walks of X."""
    best = INF
    n = len(walk)
    for cuts in itertools.product([False, True], repeat=n - 1):
        pieces, start = [], 0
        for k, cut in enumerate(cuts, 1):
            if cut:
                pieces.append(walk[start:k])
                start = k
        pieces.append(walk[start:])
        if all(all(X.tgt(p[i]) == X.src(p[i + 1]) for i in range(len(p) - 1)) for p in pieces):
            total = F(0)
            for p in pieces:
                total = total + X.weight(p)
            best = min(best, total)
    return best


@pytest.mark.parametrize("collapse_all", [False, True])
def test_quotient_matches_oracle(collapse_all):
    rng = random.Random(3 + collapse_all)
    for _ in range(25):
        X = random_chain_space(rng, n_vertices=rng.randint(2, 3), n_edges=rng.randint(1, 3))
        if collapse_all:
            pairs = [(X.vertices[0], v) for v in X.vertices[1:]]
        else:
            pairs = [tuple(rng.sample(X.vertices, 2))]
        Q = wspace.quotient(X, pairs)
        for walk in wspace.walks(Q, 2 * len(X.vertices)):
            assert Q.weight(walk) == quotient_oracle(X, walk)


def test_collapse_all_zero_cycle():
    # gluing both ends: the zero loop stays free, each pass along the forward edge costs 2
    X = wspace.linear(["a", "b"], [("a", "b"), ("b", "b")], [2, 0])
    Q = wspace.quotient(X, [("a", "b")])
    assert Q.weight((1, 1, 1)) == 0
    assert Q.weight((0, 1, 0)) == 4


def test_constructions_satisfy_axioms():
    rng = random.Random(4)
    for _ in range(60):
        X, Y = random_chain_space(rng, n_vertices=2), random_chain_space(rng, n_vertices=2)
        built = [wspace.product([X, Y]), wspace.tensor([X, Y]), wspace.sum([X, Y]),
                 wspace.opposite(X), wspace.scale(X, F(rng.randint(0, 6), 2)), wspace.linearize(X),
                 wspace.quotient(X, [tuple(X.vertices[:2])])]
        Z = wspace.delta_of(X)
        built += [wspace.sp_of(Z, X.edges), wspace.L_of(Z, X.edges)]
        for W in built:
            assert wspace.axiom_violation(W, 3) is None


def test_tabled_rejects_bad_table():
    X = wspace.tabled(["a", "b", "c"], [("a", "b"), ("b", "c")], {(0,): 1, (1,): 1, (0, 1): 3})
    with pytest.raises(WeightAxiomViolation):
        wspace.validate_wspace(X)
    Y = wspace.tabled(["a", "b", "c"], [("a", "b"), ("b", "c")], {(0,): 1, (1,): 4, (0, 1): 2})
    with pytest.raises(WeightAxiomViolation):
        wspace.validate_wspace(Y)


def test_opposite_reads_walks_backwards():
    X = wspace.tabled(["a", "b", "c"], [("a", "b"), ("b", "c")], {(0,): 1, (1,): 2, (0, 1): 2})
    O = wspace.opposite(X)
    assert O.weight((1, 0)) == 2
    assert wspace.walkwise_equal(wspace.opposite(O), X, 2)


# linearization ----------------------------------------------------------------------

def test_linearize_examples():
    X = wspace.tabled(["a", "b", "c"], [("a", "b"), ("b", "c")], {(0,): 1, (1,): 1, (0, 1): 1})
    L = wspace.linearize(X)
    assert L.mode == wspace.LINEAR and L.weight((0, 1)) == 2
    assert wspace.linear_weight(X, (0, 1)) == 2
    Y = wspace.path_graph(4)
    assert wspace.linearize(Y) is Y
    assert wspace.linearize(single_edge(3)).weight((0,)) == 3


def test_linearize_is_a_closure_operator():
    rng = random.Random(5)
    for _ in range(60):
        X = random_chain_space(rng)
        L = wspace.linearize(X)
        assert wspace.walkwise_leq(X, L, 3) is None
        assert wspace.walkwise_equal(wspace.linearize(L), L, 3)
        for walk in wspace.walks(X, 3):
            assert L.weight(walk) == wspace.linear_weight(X, walk)
        # a pointwise larger table linearizes to something larger
        if X.mode == wspace.TABLED:
            raised = {k: v + (1 if len(k) == 1 else 2) for k, v in X.table.items()}
            X2 = wspace.tabled(X.vertices, X.edges, raised, X.bound)
            if wspace.axiom_violation(X2, 3) is None and wspace.walkwise_leq(X, X2, 3) is None:
                assert wspace.walkwise_leq(L, wspace.linearize(X2), 3) is None
        assert wspace.is_linear(X, 3) == wspace.walkwise_equal(X, L, 3)


# the metric side -----------------------------------------------------------------------

def test_delta_examples():
    D = wspace.delta_of(single_edge(3))
    assert D.dist("a", "b") == 3 and D.dist("b", "a") is INF
    par = wspace.tabled(["a", "b", "c"], [("a", "b"), ("b", "c"), ("a", "c")],
                        {(0,): 1, (1,): 1, (0, 1): 2, (2,): 5})
    assert wspace.delta_of(par).dist("a", "c") == 2
    cyc = wspace.linear(["a", "b"], [("a", "b"), ("b", "a")], [0, 0])
    D = wspace.delta_of(cyc)
    assert D.dist("a", "b") == 0 == D.dist("b", "a")


def test_sp_and_L_examples():
    Y = from_rows([[0, 1], [INF, 0]])
    for make in (wspace.sp_of, wspace.L_of):
        assert make(Y, [("0", "1")]).weight((0,)) == 1
    Z, adm = axes()
    assert wspace.L_of(Z, adm).weight((0, 1)) == 2
    assert wspace.sp_of(Z, adm).weight((0, 1)) == 1
    pt = from_rows([[0]])
    S = wspace.sp_of(pt, [])
    assert list(wspace.walks(S, 4)) == [] and S.weight(()) == 0
    with pytest.raises(EdgeOffSpace):
        wspace.sp_of(Y, [("0", "7")])


def test_galois_examples():
    X = single_edge(3)
    assert wspace.galois_check(X).ok
    D = wspace.delta_of(X)
    assert wspace.walkwise_equal(wspace.sp_of(D, X.edges), X)
    Z, adm = axes()
    assert wspace.delta_of(wspace.L_of(Z, adm)).dist("y", "y'") == 2
    assert Z.dist("y", "y'") == 1
    report = wspace.galois_check_dual(Z, adm)
    assert report.ok, report.witnesses


def test_classify_examples():
    flags = wspace.classify(wspace.path_graph(4))
    assert flags.as_dict() == {"geodetic": True, "linearly_geodetic": True, "span_metrizable": True,
                               "length_metrizable": True, "linear": True}
    Z, adm = axes()
    flags = wspace.classify(Z, adm)
    assert flags.geodetic is True and flags.linearly_geodetic is False


def test_galois_on_random_spaces():
    rng = random.Random(6)
    for _ in range(100):
        X = random_chain_space(rng)
        report = wspace.galois_check(X, 3)
        assert report.ok, report.witnesses


def test_galois_dual_on_random_metrics():
    rng = random.Random(7)
    for _ in range(60):
        Y = random_space(rng, rng.randint(1, 4))
        adm = [(rng.choice(Y.points), rng.choice(Y.points)) for _ in range(rng.randint(0, 5))]
        report = wspace.galois_check_dual(Y, adm, 3)
        assert report.ok, report.witnesses
        flags = wspace.classify(Y, adm)
        if flags.linearly_geodetic:
            assert flags.geodetic


def test_delta_is_lipschitz_functorial():
    rng = random.Random(8)
    done = 0
    for _ in range(200):
        X = random_chain_space(rng, n_vertices=3, n_edges=4)
        paths = [w for w in wspace.walks(X, 3) if len(w) == 3]
        if not paths:
            continue
        walk = rng.choice(paths)
        seq = X.vertex_sequence(walk)
        P = wspace.path_graph(4, F(rng.randint(1, 4), 2))
        f = wspace.VertexMap(P, X, {str(i): X.vertices[v] for i, v in enumerate(seq)},
                             {i: (walk[i],) for i in range(3)})
        assert dmetric.lipschitz_weight(f.delta_map()) <= wspace.map_weight(f, 3)
        done += 1
    assert done >= 50
