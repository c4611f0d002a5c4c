import math
import random

import pytest

from hamexp import _kernels
from hamexp.certification import iter_colex, pair_list
from hamexp.constructions import build_minimum
from hamexp.filters import (
    Reason,
    apply_filters,
    connectivity_filter,
    deg2_deg3_filter,
    deg2_open_filter,
    pendant_filter,
    shared_neighbor_filter,
)
from hamexp.graph import NonEdge, make_graph
from hamexp.oracle import adjacency_array, ham_cycle_containing, is_expandable
from tests.oracles import all_graphs, naive_ham_path, random_graph

REST = [(3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]


@pytest.fixture
def deg2_deg3_distinct_graph():
    # v=0 on triangle 0-1-2, N(1)={0,2,3}, N(2)={0,1,4}
    return make_graph(7, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)] + REST)


@pytest.fixture
def deg2_deg3_shared_graph():
    # N(1)={0,2,3}, N(2)={0,1,3}
    return make_graph(7, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6), (3, 5)])


def test_pendant(p4, k4, star):
    verdict = pendant_filter(p4)
    assert verdict.reason is Reason.PENDANT and verdict.witness_nonedge == (1, 3)
    assert not naive_ham_path(p4, 1, 3)
    assert not pendant_filter(k4).rejected
    verdict = pendant_filter(star)
    assert verdict.rejected
    assert ham_cycle_containing(star, verdict.witness_nonedge) is None


def test_deg2_open(c4, c5, butterfly):
    verdict = deg2_open_filter(c4)
    assert verdict.reason is Reason.DEG2_OPEN and verdict.witness_nonedge == (1, 3)
    assert not deg2_open_filter(butterfly).rejected
    verdict = deg2_open_filter(c5)
    assert verdict.rejected
    assert ham_cycle_containing(c5, verdict.witness_nonedge) is None


def test_deg2_deg3_distinct(deg2_deg3_distinct_graph):
    g = deg2_deg3_distinct_graph
    assert not pendant_filter(g).rejected and not deg2_open_filter(g).rejected
    verdict = deg2_deg3_filter(g)
    assert verdict.reason is Reason.DEG2_DEG3_DISTINCT
    assert verdict.witness_nonedge == NonEdge(1, 4)
    assert not naive_ham_path(g, 1, 4)


def test_deg2_deg3_shared(deg2_deg3_shared_graph):
    g = deg2_deg3_shared_graph
    verdict = deg2_deg3_filter(g)
    assert verdict.reason is Reason.DEG2_DEG3_SHARED
    assert verdict.witness_nonedge == NonEdge(0, 3)
    assert not naive_ham_path(g, 0, 3)


def test_deg2_deg3_scope(butterfly):
    g7, _ = build_minimum(7)
    assert not deg2_deg3_filter(g7).rejected
    assert not deg2_deg3_filter(butterfly).rejected


def test_shared_neighbor():
    g = make_graph(7, [(0, 1), (1, 3), (0, 2), (2, 4), (0, 5), (3, 4), (4, 5), (0, 6), (5, 6)])
    assert g.m == 9
    verdict = shared_neighbor_filter(g, 10)
    assert verdict.reason is Reason.SHARED_NEIGHBOR and verdict.witness_nonedge is None
    assert not shared_neighbor_filter(build_minimum(8)[0], 11).rejected
    with pytest.raises(ValueError):
        shared_neighbor_filter(g, math.ceil(3 * 7 / 2))
    with pytest.raises(ValueError):
        shared_neighbor_filter(make_graph(6, []), 3)


def test_apply_filters(c4, k4, p4):
    assert apply_filters(c4, 4).reason is Reason.DEG2_OPEN
    assert not apply_filters(k4, 6).rejected
    assert apply_filters(p4, 3).reason is Reason.PENDANT


def test_connectivity_filter():
    g = make_graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    verdict = connectivity_filter(g)
    assert verdict.reason is Reason.DISCONNECTED and verdict.witness_nonedge == (0, 3)
    assert ham_cycle_containing(g, (0, 3)) is None
    assert not connectivity_filter(build_minimum(9)[0]).rejected


def test_filters_spare_the_constructions():
    for n in range(4, 17):
        g, _ = build_minimum(n)
        assert not apply_filters(g, g.m).rejected
        assert not connectivity_filter(g).rejected
        if n >= 7:
            # below-threshold budget engages the shared-neighbour rule too
            assert not apply_filters(g, math.ceil(3 * n / 2) - 1).rejected


def _witness_checks(g):
    checks = [pendant_filter, deg2_open_filter, deg2_deg3_filter, connectivity_filter]
    for check in checks:
        if g.n < 4 and check is not connectivity_filter:
            continue
        verdict = check(g)
        if verdict.witness_nonedge is not None:
            assert ham_cycle_containing(g, verdict.witness_nonedge) is None, (check.__name__, g)


def test_witnesses_exhaustive_small():
    for n in range(3, 7):
        for g in all_graphs(n):
            _witness_checks(g)


def test_witnesses_random_n7():
    rng = random.Random(5)
    for _ in range(3000):
        _witness_checks(random_graph(rng, 7, rng.uniform(0.2, 0.8)))


def python_code(g, m, use_filters=True):
    """Reference classification mirroring the kernel codes."""
    codes = {Reason.PENDANT: _kernels.PENDANT, Reason.DEG2_OPEN: _kernels.DEG2_OPEN,
             Reason.DEG2_DEG3_DISTINCT: _kernels.DEG2_DEG3_DISTINCT,
             Reason.DEG2_DEG3_SHARED: _kernels.DEG2_DEG3_SHARED,
             Reason.SHARED_NEIGHBOR: _kernels.SHARED_NEIGHBOR,
             Reason.DISCONNECTED: _kernels.DISCONNECTED}
    if use_filters:
        verdict = apply_filters(g, m) if g.n >= 4 else connectivity_filter(g)
        if not verdict.rejected:
            verdict = connectivity_filter(g)
        if verdict.rejected:
            return codes[verdict.reason]
    return _kernels.SURVIVOR if is_expandable(g) else _kernels.ORACLE_REJECTED


@pytest.mark.parametrize("n", [4, 5, 6])
def test_kernel_matches_python_reference(n):
    pairs = pair_list(n)
    for m in range(len(pairs) + 1):
        total = math.comb(len(pairs), m)
        shared_ok = n >= 7 and m < math.ceil(3 * n / 2)
        codes = _kernels.classify_range(n, m, 0, total, True, shared_ok)
        for rank, comb in enumerate(iter_colex(len(pairs), m)):
            g = make_graph(n, [pairs[k] for k in comb])
            assert codes[rank] == python_code(g, m), (n, m, rank)


def test_kernel_filter_code_random_n8():
    rng = random.Random(8)
    for _ in range(3000):
        g = random_graph(rng, 8, rng.uniform(0.3, 0.6))
        shared_ok = g.m < 12
        code = _kernels.filter_code(adjacency_array(g), 8, g.m, shared_ok)
        verdict = apply_filters(g, g.m if shared_ok else 12)
        expect = python_code(g, g.m if shared_ok else 12)
        if not verdict.rejected:
            assert code == _kernels.NONE
        else:
            assert code == expect
