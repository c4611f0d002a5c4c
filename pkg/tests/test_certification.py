import json
import math

import pytest

from hamexp import _kernels
from hamexp.certification import (
    CertificationError,
    EnumerationCursor,
    certificate_problems,
    certify,
    enumerate_graphs,
    graph_at,
    iter_colex,
    rank_colex,
    sweep_kernel,
    unrank_colex,
    verify_certificate,
)
from hamexp.graph import add_edge, non_edges
from hamexp.oracle import is_expandable
from tests.oracles import random_graph


def test_colex_order_and_ranks():
    combos = list(iter_colex(6, 3))
    assert len(combos) == 20
    assert combos[:4] == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    for r, c in enumerate(combos):
        assert rank_colex(list(c)) == r
        assert tuple(unrank_colex(r, 3)) == c
    assert len(set(combos)) == 20
    assert list(iter_colex(6, 3, 5, 9)) == combos[5:9]


def test_kernel_colex_matches_python():
    import numpy as np

    binom = _kernels.binomial_table(10)
    out = np.empty(4, dtype=np.int64)
    comb = np.empty(4, dtype=np.int64)
    _kernels.unrank_colex(0, 4, binom, comb)
    for r, c in enumerate(iter_colex(10, 4)):
        _kernels.unrank_colex(r, 4, binom, out)
        assert tuple(out) == c == tuple(comb)
        _kernels.next_colex(comb, 4)


def test_enumerate_counts():
    assert enumerate_graphs(4, 3).total == 20
    assert enumerate_graphs(5, 5).total == 252
    seen = []
    enumerate_graphs(4, 3, seen.append)
    assert len({g.adj for g in seen}) == 20


def test_enumerate_canonical_classes():
    reps = []
    summary = enumerate_graphs(4, 3, reps.append, dedup="canonical")
    assert summary.total == 3
    shapes = sorted(sorted(g.degree(v) for v in range(4)) for g in reps)
    # star K_{1,3}, path P4, triangle plus isolated vertex
    assert shapes == [[0, 2, 2, 2], [1, 1, 1, 3], [1, 1, 2, 2]]


def test_enumerate_guards():
    with pytest.raises(CertificationError):
        enumerate_graphs(11, 3)
    with pytest.raises(CertificationError):
        enumerate_graphs(4, 7)


def test_enumerate_shards_add_up():
    whole = enumerate_graphs(6, 7, use_filters=True)
    parts = enumerate_graphs(6, 7, use_filters=True, stop=2000) + \
        enumerate_graphs(6, 7, use_filters=True, start=2000)
    assert whole == parts
    assert whole.total == math.comb(15, 7)


def test_cursor():
    cur = EnumerationCursor(5, 5)
    assert cur.total == 252 and not cur.done
    assert EnumerationCursor(5, 5, 252).done


@pytest.mark.parametrize("n,total", [(3, 3), (4, 20), (5, 252), (6, 6435)])
def test_certify_small(n, total):
    cert = certify(n)
    assert cert.lower.total == total and cert.lower.survivors == 0
    assert cert.lower.oracle_rejected == total
    assert len(cert.witnesses) == len(non_edges(cert.graph))
    assert verify_certificate(cert)


def test_engines_agree_n6_and_canonical():
    kernel = certify(6)
    python = certify(6, engine="python")
    assert kernel.lower == python.lower
    canon = certify(5, dedup="canonical")
    assert canon.dedup == "canonical" and canon.lower.survivors == 0
    assert canon.lower.total < 252 and verify_certificate(canon)


def test_certify_deterministic_and_sharded(tmp_path):
    a = sweep_kernel(7, 10, True, chunk=50_000)
    b = sweep_kernel(7, 10, True, chunk=1 << 20)
    c = sweep_kernel(7, 10, True, jobs=2, chunk=100_000)
    for x in (b, c):
        assert (x[0] == a[0]).all() and (x[1] == a[1]).all() and x[2] == a[2]
    assert a[0].sum() == math.comb(21, 10)


def test_checkpoint_resume(tmp_path):
    ck = tmp_path / "ck.json"
    full = sweep_kernel(6, 8, False, chunk=1000)
    # run, then pretend half the chunks never happened and resume
    sweep_kernel(6, 8, False, chunk=1000, checkpoint=ck)
    state = json.loads(ck.read_text())
    assert state["done"] == list(range(7))
    resumed = sweep_kernel(6, 8, False, chunk=1000, checkpoint=ck)
    assert (resumed[0] == full[0]).all()
    other = tmp_path / "other.json"
    other.write_text(json.dumps({**state, "key": {"n": 5}}))
    with pytest.raises(CertificationError):
        sweep_kernel(6, 8, False, chunk=1000, checkpoint=other)


def test_partial_checkpoint_resume(tmp_path):
    ck = tmp_path / "ck.json"
    full = sweep_kernel(6, 8, False, chunk=1000)
    first = _kernels.scan_range(6, 8, 0, 1000, False, False, 100, 0)
    ck.write_text(json.dumps({
        "key": {"n": 6, "m": 8, "use_filters": False, "chunk": 1000, "spot_rate": 100, "seed": 0},
        "counts": first[0].tolist(), "spot": first[1].tolist(), "first_survivor": -1, "done": [0]}))
    resumed = sweep_kernel(6, 8, False, chunk=1000, checkpoint=ck)
    assert (resumed[0] == full[0]).all()


def test_survivor_is_reported():
    # one edge fewer than needed at n=6 has no survivors, but at exp_h the
    # construction itself is found
    counts, _, first = sweep_kernel(5, 6, False)
    assert counts[_kernels.SURVIVOR] > 0
    assert is_expandable(graph_at(5, 6, first))


def test_certify_guards():
    with pytest.raises(CertificationError):
        certify(11)
    with pytest.raises(CertificationError):
        certify(9)
    with pytest.raises(CertificationError):
        certify(2)


def test_certificate_json_schema():
    data = certify(4).to_json()
    assert set(data) >= {"n", "claimed_m", "upper", "lower", "dedup", "runtime_seconds"}
    assert set(data["upper"]) == {"graph", "witnesses"}
    assert {"m", "total", "filtered", "oracle_rejected", "survivors"} <= set(data["lower"])
    assert data["upper"]["graph"] == {"n": 4, "edges": [[0, 1], [0, 2], [1, 2], [2, 3]]}
    assert data["dedup"] == "labeled"
    assert json.loads(json.dumps(data)) == data


def test_verify_rejects_tampering():
    good = certify(5).to_json()
    assert certificate_problems(good) == []

    bad = json.loads(json.dumps(good))
    order = bad["upper"]["witnesses"][0]["order"]
    order[0], order[1] = order[1], order[0]
    order[1] = order[2]
    assert not verify_certificate(bad)

    bad = json.loads(json.dumps(good))
    bad["lower"]["survivors"] = 1
    assert not verify_certificate(bad)

    bad = json.loads(json.dumps(good))
    bad["lower"]["total"] += 1
    assert not verify_certificate(bad)

    bad = json.loads(json.dumps(good))
    bad["upper"]["witnesses"].pop()
    assert not verify_certificate(bad)

    bad = json.loads(json.dumps(good))
    bad["claimed_m"] = 5
    assert not verify_certificate(bad)

    assert not verify_certificate({"n": 5})


@pytest.mark.parametrize("path, value", [
    (("claimed_m",), "6"),
    (("claimed_m",), None),
    (("n",), 10**30),
    (("n",), True),
    (("upper", "witnesses"), None),
    (("upper", "witnesses", 0, "order", 0), 10**30),
    (("upper", "witnesses", 0, "order", 0), 1.0),
    (("upper", "graph", "n"), 10**30),
    (("lower", "filtered"), []),
    (("lower", "filtered", "made_up"), 0),
    (("lower", "spot_checked"), -1),
    (("runtime_seconds",), "fast"),
])
def test_malformed_certificates_are_rejected_not_raised(path, value):
    bad = certify(5).to_json()
    target = bad
    for key in path[:-1]:
        target = target[key]
    target[path[-1]] = value
    assert certificate_problems(bad)


def test_monotonicity_random():
    import random

    rng = random.Random(9)
    checked = 0
    while checked < 100:
        g = random_graph(rng, rng.randint(4, 8), rng.uniform(0.55, 0.9))
        holes = non_edges(g)
        if not holes or not is_expandable(g):
            continue
        assert is_expandable(add_edge(g, rng.choice(holes)))
        checked += 1
