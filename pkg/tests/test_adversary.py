import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tarski_query.adversary import (
    STRATEGIES,
    InconsistentHistory,
    KnowledgeState,
    NotFamilyResponse,
    c_index,
    consistent_hidden_points,
    delta_set,
    enumerate_Qv,
    leaf_depth_bound,
    replay,
    run_knowledge_trace,
    simulate_info_gain,
    update_knowledge,
    yao_average_queries,
)
from tarski_query.lattice import GridShape
from tarski_query.oracle import HiddenPointOracle
from tarski_query.solver import SOLVERS

from conftest import all_points, reference_f


def test_fig2_responses(fig2):
    a, queries, responses = fig2
    oracle = HiddenPointOracle.of(2, a)
    assert [oracle(v) for v in queries] == responses
    # the second response's fourth coordinate: prefix (0,0,1) >= (0,0,1) and v_4 = 0 < a_4 = 1
    assert reference_f(a, queries[1])[3] == 1


def test_fig2_c_indices(fig2):
    _, q, r = fig2
    assert c_index(q[0], r[0], 1) == 2
    assert c_index(q[0], r[0], 0) == 5
    assert c_index(q[1], r[1], 0) == 4
    assert c_index(q[1], r[1], 1) == 7
    assert c_index(q[2], r[2], 0) == 6
    assert c_index(q[2], r[2], 1) is None


def test_c_index_at_fixed_point():
    v = (0, 1, 1, 0)
    assert c_index(v, v, 0) is None and c_index(v, v, 1) is None


def test_c_index_rejects_double_flip():
    with pytest.raises(NotFamilyResponse):
        c_index((0, 0, 1), (1, 1, 1), 0)


def test_fig2_delta_sets_and_knowledge(fig2):
    a, q, r = fig2
    s0 = KnowledgeState(7)
    assert delta_set(s0, q[0], r[0], 0) == {1, 5}
    assert delta_set(s0, q[0], r[0], 1) == {2}
    s1 = update_knowledge(s0, q[0], r[0])
    assert s1.known == {1: 0, 2: 0, 5: 1}
    assert delta_set(s1, q[1], r[1], 1) == {3, 7}
    assert delta_set(s1, q[1], r[1], 0) == {4}
    s2 = update_knowledge(s1, q[1], r[1])
    assert s2.indices == {1, 2, 3, 4, 5, 7}
    assert delta_set(s2, q[2], r[2], 0) == {6}
    assert delta_set(s2, q[2], r[2], 1) == set()
    s3 = update_knowledge(s2, q[2], r[2])
    assert s3.complete
    assert tuple(s3.known[i] for i in range(1, 8)) == a
    # knowledge only grows
    assert s0.indices <= s1.indices <= s2.indices <= s3.indices


def test_fig2_replay_gains(fig2):
    a, q, _ = fig2
    stats = simulate_info_gain(replay(q), 7, trials=1, seed=0, hidden=a)
    assert stats.gains == [3, 3, 1]
    assert [(s.delta0, s.delta1) for s in stats.records] == [(2, 1), (1, 2), (1, 0)]


def test_inconsistent_history():
    # a = (1, 0): querying (0, 0) flips coordinate 1 up
    s = update_knowledge(KnowledgeState(2), (0, 0), (1, 0))
    assert s.known == {1: 1}
    with pytest.raises(InconsistentHistory):
        # a response claiming coordinate 1 is 0 at the bottom
        update_knowledge(s, (0, 1), (0, 0))


def _check_trace(a, steps):
    k = len(a)
    history = []
    prev = frozenset()
    for v, resp, state, d0, d1 in steps:
        history.append((v, resp))
        assert prev <= state.indices
        assert len(state.indices) - len(prev) == d0 + d1
        prev = state.indices
        for i, bit in state.known.items():
            assert bit == a[i - 1]
        cands = consistent_hidden_points(k, history)
        # consistent hidden points form exactly the product over the unknown coordinates
        assert len(cands) == 2 ** (k - len(state.known))
        for i, bit in state.known.items():
            assert (cands[:, i - 1] == bit).all()


@pytest.mark.parametrize("name", sorted(STRATEGIES))
@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_knowledge_sound_and_complete_exhaustive(name, k):
    for t, a in enumerate(all_points(2, k)):
        steps = run_knowledge_trace(a, STRATEGIES[name], np.random.default_rng(t))
        assert steps[-1][2].complete
        _check_trace(a, steps)


@given(st.lists(st.integers(0, 1), min_size=9, max_size=12), st.integers(0, 2**32 - 1))
def test_knowledge_sound_and_complete_random_queries(a, seed):
    """Arbitrary, knowledge-agnostic queries: the tracker must still match brute force."""
    a = tuple(a)
    rng = np.random.default_rng(seed)

    def wild(state, step, last, rng):
        return tuple(int(b) for b in rng.integers(0, 2, size=len(a)))

    steps = run_knowledge_trace(a, wild, rng, max_steps=12)
    _check_trace(a, steps)


def test_consistency_cap():
    with pytest.raises(Exception):
        consistent_hidden_points(13, [])


def test_single_bit_gain():
    for name in STRATEGIES:
        stats = simulate_info_gain(name, 1, trials=50, seed=5)
        assert stats.gains == [1] * 50
        assert stats.mean_gain == 1.0


@pytest.mark.parametrize("name", sorted(STRATEGIES))
def test_gain_bookkeeping(name):
    stats = simulate_info_gain(name, 16, trials=60, seed=11)
    assert stats.incomplete_trials == 0
    by_trial = {}
    for r in stats.records:
        assert r.gain == r.delta0 + r.delta1 >= 0
        by_trial[r.trial] = by_trial.get(r.trial, 0) + r.gain
    assert all(total == 16 for total in by_trial.values())
    assert stats.mean_gain <= 4


def test_gain_csv():
    stats = simulate_info_gain("path-follow", 4, trials=2, seed=0)
    lines = stats.to_csv().split("\n")
    assert lines[0] == "trial,step,gain,delta0,delta1"
    assert len(lines) == len(stats.records) + 2 and lines[-1] == ""


def test_simulation_is_seeded():
    a = simulate_info_gain("uniform-random", 12, trials=20, seed=4)
    b = simulate_info_gain("uniform-random", 12, trials=20, seed=4)
    assert a.to_csv() == b.to_csv()


def test_trials_must_be_positive():
    with pytest.raises(ValueError):
        simulate_info_gain("path-follow", 4, trials=0, seed=0)


def test_tail_table_columns():
    stats = simulate_info_gain("all-zeros-then-flip", 8, trials=30, seed=2)
    rows = stats.tail_table(4)
    assert [r["C"] for r in rows] == [0, 1, 2, 3, 4]
    assert rows[0]["bound"] == 1.0 and rows[0]["se"] == 0.0
    freqs = [r["freq"] for r in rows]
    assert freqs == sorted(freqs, reverse=True)


def test_qv_examples():
    assert enumerate_Qv(GridShape(7, 2), (0, 0)) == {(0, 0), (0, 1), (1, 0)}
    assert enumerate_Qv(GridShape(2, 1), (0,)) == {(0,), (1,)}


@pytest.mark.parametrize("n,k", [(2, 4), (3, 3), (4, 2), (6, 2)])
def test_qv_matches_brute_force(n, k):
    shape = GridShape(n, k)
    pts = all_points(n, k)
    for v in pts[:: max(1, len(pts) // 20)]:
        expected = {reference_f(a, v) for a in pts}
        got = enumerate_Qv(shape, v)
        assert got == expected
        assert len(got) <= (k + 1) ** 2


def test_leaf_depth_bound_values():
    # log_{(k+1)^2}(0.8 * n^k) - 1
    assert leaf_depth_bound(2, 1) == pytest.approx(np.log2(1.6) / 2 - 1)
    assert leaf_depth_bound(1024, 8) == pytest.approx((np.log2(0.8) + 80) / (2 * np.log2(9)) - 1)


def test_yao_examples():
    shape = GridShape(2, 2)
    assert yao_average_queries("kleene", shape).mean_queries == 2.0
    fam = yao_average_queries("family", shape)
    assert fam.mean_queries <= 4 and fam.max_queries <= 4 and not fam.failures
    for name in ("kleene", "kleene-top", "dnc", "family"):
        one = yao_average_queries(name, GridShape(5, 3), instances=[(0, 0, 0)])
        assert one.mean_queries == SOLVERS[name](HiddenPointOracle.of(5, (0, 0, 0))).queries


def test_yao_sampled_needs_seed():
    with pytest.raises(ValueError):
        yao_average_queries("kleene", GridShape(8, 8), trials=10)
    res = yao_average_queries("family", GridShape(8, 8), trials=10, seed=1)
    assert res.instances == 10 and res.max_queries <= 16
