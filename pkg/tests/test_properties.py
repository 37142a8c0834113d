"""Property tests over the fixture set."""

import itertools
from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thurstonquad import fixtures
from thurstonquad.approx import approximate, ball, rooted_embed
from thurstonquad.lift import isotopic, lift_class, lift_word, member, subgroup_basis
from thurstonquad.numlift import NumericMap, build_quadruple_numeric
from thurstonquad.planar import euler_characteristic
from thurstonquad.quad import MarkedSet, default_rose
from thurstonquad.words import Word, reduce

FINITE = ("cycle2", "cycle3", "cycle4", "cycle5")
ALL = FINITE + ("exp", "g1", "g2")


def words(m: int, max_len: int = 12):
    letter = st.tuples(st.integers(1, m), st.sampled_from((1, -1)))
    return st.lists(letter, max_size=max_len).map(lambda xs: Word(tuple(xs)))


@st.composite
def fixture_and_word(draw, names=ALL, max_len=12, count=1):
    name = draw(st.sampled_from(names))
    q = fixtures.load(name)
    ws = [draw(words(q.m, max_len)) for _ in range(count)]
    return (name, q, *ws)


def _cubic():
    marked = MarkedSet.of([-2 + 0j, 2 + 0j])
    return build_quadruple_numeric(NumericMap("z**3-3*z"), default_rose(marked, 0j), marked)


_CUBIC = _cubic()


# folding oracle -------------------------------------------------------------------


def folded_subgroup_graph(basis: list[Word]):
    """Stallings graph of the subgroup generated by ``basis``: petal loops at 0, folded."""
    edges = set()  # (tail, petal, head)
    fresh = itertools.count(1)
    for w in basis:
        cur = 0
        for i, (j, s) in enumerate(w):
            nxt = 0 if i == len(w) - 1 else next(fresh)
            edges.add((cur, j, nxt) if s > 0 else (nxt, j, cur))
            cur = nxt
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    changed = True
    while changed:
        changed = False
        edges = {(find(a), j, find(b)) for a, j, b in edges}
        out, inc = {}, {}
        for a, j, b in sorted(edges):
            for key, other, table in (((a, j), b, out), ((b, j), a, inc)):
                if key in table and find(table[key]) != find(other):
                    parent[find(other)] = find(table[key])
                    changed = True
                table.setdefault(key, other)
    return {(find(a), j): find(b) for a, j, b in edges}, {(find(b), j): find(a) for a, j, b in edges}, find(0)


def folded_member(graph, w: Word) -> bool:
    out, inc, root = graph
    cur = root
    for j, s in w:
        cur = (out if s > 0 else inc).get((cur, j))
        if cur is None:
            return False
    return cur == root


# properties ---------------------------------------------------------------------


@pytest.mark.parametrize("name", FINITE)
def test_euler_on_finite_fixtures(name):
    assert euler_characteristic(fixtures.load(name).graph) == 2


@pytest.mark.parametrize("name", ("exp", "g1", "g2"))
def test_euler_on_approximants(name):
    q = fixtures.load(name)
    for n in (0, 1, 3, 6):
        assert euler_characteristic(approximate(q, n).quad.graph) == 2


@pytest.mark.parametrize("name", ("exp", "g1", "g2"))
def test_approximants_dynamic_up_to_50(name):
    q = fixtures.load(name)
    for n in range(2, 51):
        rep = approximate(q, n)
        assert rep.dynamic, (n, rep.violations)


def _star_counts(g, v):
    """(petal, +1 out | -1 in) -> number of edge ends at v."""
    counts = {}
    for e, side in g.rotation[v]:
        edge = g.edges[e]
        key = (edge.petal, side)
        counts[key] = counts.get(key, 0) + 1
    return counts


@settings(max_examples=500)
@given(st.sampled_from(ALL), st.data())
def test_covering_determinism(name, data):
    q = fixtures.load(name)
    if q.is_finite:
        g, complete = q.graph, list(q.graph.vertices)
    else:
        w = q.window(4)
        g, complete = w.graph, sorted(w.complete, key=str)
    v = data.draw(st.sampled_from(complete))
    want = {(j, s): 1 for j in range(1, q.m + 1) for s in (1, -1)}
    assert _star_counts(g, v) == want


@settings(max_examples=500)
@given(fixture_and_word(count=2))
def test_lift_concatenation(data):
    _, q, w1, w2 = data
    a = lift_word(q, q.root, w1)
    b = lift_word(q, a.terminal, w2)
    ab = lift_word(q, q.root, w1 * w2)
    assert ab.vertices == a.vertices + b.vertices[1:]
    assert ab.edges == a.edges + b.edges


@settings(max_examples=500)
@given(fixture_and_word())
def test_membership_ignores_cancellation(data):
    _, q, w = data
    assert member(q, q.root, w) == member(q, q.root, reduce(w))


@settings(max_examples=500)
@given(fixture_and_word(names=FINITE, max_len=10))
def test_membership_matches_folded_basis(data):
    name, q, w = data
    graph = folded_subgroup_graph(subgroup_basis(q, q.root))
    assert member(q, q.root, w) == folded_member(graph, reduce(w))


@settings(max_examples=200)
@given(words(2, 10))
def test_membership_matches_folded_basis_cubic(w):
    q = _CUBIC
    graph = folded_subgroup_graph(subgroup_basis(q, q.root))
    assert member(q, q.root, w) == folded_member(graph, reduce(w))


def _closing(q, w: Word) -> Word:
    """Append a shortest path in the covering graph from the end of the lift back to the root."""
    res = lift_word(q, q.root, w)
    if res.closed:
        return w
    cov = q.covering() if q.is_finite else q.covering(q.generator.depth_for(q.root, 2 * len(w) + 2))
    prev = {res.terminal: None}
    queue = deque([res.terminal])
    while queue and q.root not in prev:
        x = queue.popleft()
        for j in range(1, q.m + 1):
            for s in (1, -1):
                st_ = cov.step(x, j, s)
                if st_ is not None and st_[2] not in prev:
                    prev[st_[2]] = (x, (j, s))
                    queue.append(st_[2])
    tail = []
    x = q.root
    while prev[x] is not None:
        x, a = prev[x]
        tail.append(a)
    return w * Word(tuple(reversed(tail)))


@settings(max_examples=500)
@given(st.sampled_from(ALL), st.data())
def test_lift_class_homomorphism(name, data):
    q = fixtures.load(name)
    w1 = _closing(q, data.draw(words(q.m, 6)))
    w2 = _closing(q, data.draw(words(q.m, 6)))
    c12 = lift_class(q, q.root, w1 * w2)
    assert c12 == reduce(lift_class(q, q.root, w1) * lift_class(q, q.root, w2))


@settings(max_examples=200)
@given(words(2, 6), words(2, 6))
def test_lift_class_homomorphism_cubic(a, b):
    q = _CUBIC
    w1, w2 = _closing(q, a), _closing(q, b)
    c12 = lift_class(q, q.root, w1 * w2)
    assert c12 == reduce(lift_class(q, q.root, w1) * lift_class(q, q.root, w2))


def test_isotopy_is_an_equivalence_relation():
    pool = [fixtures.load(n) for n in FINITE] + [_CUBIC]
    rel = {}
    for i, a in enumerate(pool):
        for k, b in enumerate(pool):
            if a.m != b.m or len(a.marked) != len(b.marked):
                rel[i, k] = False
                continue
            rel[i, k] = isotopic(a, b, a.root, b.root)
    idx = range(len(pool))
    assert all(rel[i, i] for i in idx)
    assert all(rel[i, k] == rel[k, i] for i in idx for k in idx)
    assert all(not (rel[i, k] and rel[k, l]) or rel[i, l] for i in idx for k in idx for l in idx)


@settings(max_examples=100)
@given(st.sampled_from(("exp", "g1", "g2")), st.integers(0, 6), st.data())
def test_balls_embed_in_later_approximants(name, n, data):
    q = fixtures.load(name)
    k = data.draw(st.integers(0, n))
    qn = approximate(q, n).quad
    root = q.generator.root
    assert rooted_embed(ball(q.generator, k), qn, (root, root)).found
