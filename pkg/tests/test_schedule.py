import pytest
from hypothesis import given, settings, strategies as st

from modcon.generators import default_rng, random_digraph
from modcon.schedule import FiniteTrace, Periodic, SparseRecurrent, classify, squares
from modcon.signed_graph import (
    SignedDigraph,
    has_spanning_tree,
    is_strongly_connected,
    union,
)

import oracles

TREE = SignedDigraph(3, [(1, 2, "+"), (3, 2, "+"), (3, 1, "-")])
G1 = SignedDigraph(3, [(3, 1, "-")])
G2 = SignedDigraph(3, [(2, 3, "-")])
G3 = SignedDigraph(3, [(1, 2, "+"), (3, 2, "+")])
G4 = SignedDigraph(3, [(1, 3, "-"), (3, 1, "-")])
G5 = SignedDigraph(3, [(2, 3, "+"), (3, 2, "+")])

PERIODIC = Periodic((G1, G2, G3))
RECURRENT = SparseRecurrent(G4, G5)


def recurrent_oracle(k):
    l = 1
    while l * l <= k:
        if l * l == k:
            return True
        l += 1
    return False


class TestGraphAt:
    def test_periodic_wraps(self):
        assert PERIODIC.graph_at(4) == G2

    def test_periodic_hold(self):
        s = Periodic((G1, G2, G3), hold=2)
        assert [s.graph_at(k) for k in range(7)] == [G1, G1, G2, G2, G3, G3, G1]

    def test_recurrent_at_square(self):
        assert RECURRENT.graph_at(4) == G5

    def test_base_off_square(self):
        assert RECURRENT.graph_at(3) == G4

    def test_recurrence_against_oracle(self):
        for k in range(0, 3000):
            assert RECURRENT.is_recurrent(k) == recurrent_oracle(k)

    def test_finite_trace_range(self):
        s = FiniteTrace([G1, G2])
        assert s.graph_at(1) == G2
        with pytest.raises(IndexError):
            s.graph_at(2)

    def test_negative_step(self):
        with pytest.raises(ValueError):
            PERIODIC.graph_at(-1)

    def test_invalid_construction(self):
        with pytest.raises(ValueError):
            Periodic(())
        with pytest.raises(ValueError):
            Periodic((G1,), hold=0)
        with pytest.raises(ValueError):
            Periodic((G1, SignedDigraph(2)))
        with pytest.raises(ValueError):
            SparseRecurrent(G4, G5, times=lambda l: 5)


class TestJointGraph:
    def test_one_period_is_strong(self):
        j = PERIODIC.joint_graph(0, 3)
        assert j == union([G1, G2, G3])
        assert oracles.oracle_strong(j.adjacency())

    @pytest.mark.parametrize("k", [0, 1, 4, 9, 10])
    def test_singleton_window(self, k):
        assert RECURRENT.joint_graph(k, k + 1) == RECURRENT.graph_at(k)

    def test_recurrent_window_without_square(self):
        # steps 2 and 3 are not squares
        assert not any(recurrent_oracle(k) for k in (2, 3))
        assert RECURRENT.joint_graph(2, 4) == G4

    def test_recurrent_window_with_square(self):
        assert RECURRENT.joint_graph(3, 5) == union([G4, G5])

    def test_invalid_interval(self):
        with pytest.raises(ValueError):
            PERIODIC.joint_graph(3, 3)
        with pytest.raises(ValueError):
            FiniteTrace([G1]).joint_graph(0, 2)

    @given(st.integers(0, 40), st.integers(1, 10), st.integers(1, 10))
    def test_split_additivity(self, k1, d1, d2):
        for s in (PERIODIC, RECURRENT):
            k2, k3 = k1 + d1, k1 + d1 + d2
            assert s.joint_graph(k1, k3) == union([s.joint_graph(k1, k2), s.joint_graph(k2, k3)])


class TestClassify:
    def test_periodic_switching_ujsc_witness_three(self):
        r = classify(PERIODIC)
        assert r.ujsc.holds is True and r.ujsc.T == 3
        assert r.ujqsc.holds is True and r.ujqsc.T <= 3
        # window oracle: length 2 fails somewhere, length 3 works everywhere
        assert not oracles.windows_all(is_strongly_connected, PERIODIC.graph_at, range(6), 2, union)
        assert oracles.windows_all(is_strongly_connected, PERIODIC.graph_at, range(6), 3, union)

    def test_recurrent_schedule(self):
        r = classify(RECURRENT)
        assert r.ijc.holds is True
        assert r.ujsc.holds is False
        assert r.ujqsc.holds is False

    def test_fixed_counterexample_graph(self):
        r = classify(Periodic((TREE,)))
        assert r.ujsc.holds is False
        assert r.ujqsc.holds is True and r.ujqsc.T == 1
        assert r.ijc.holds is False  # not bidirectional

    def test_bound_below_witness_is_unknown(self):
        r = classify(PERIODIC, t_max=2)
        assert r.ujsc.holds is None
        assert "unknown-beyond-bound" in r.ujsc.reason

    def test_periodic_ijc(self):
        assert classify(Periodic((G4, G5))).ijc.holds is True
        assert classify(Periodic((G4,))).ijc.holds is False

    def test_sparse_with_strong_base(self):
        ring = SignedDigraph(3, [(1, 2, "+"), (2, 3, "+"), (3, 1, "+")])
        r = classify(SparseRecurrent(ring, G4))
        assert r.ujsc.holds is True and r.ujsc.T == 2
        r = classify(SparseRecurrent(ring, ring.with_name("again")))
        assert r.ujsc.T == 1

    def test_finite_trace_is_unknown(self):
        r = classify(FiniteTrace([G1, G2, G3] * 4))
        assert r.ujsc.holds is None and "T=3" in r.ujsc.reason
        assert r.ijc.holds is False

    def test_finite_bidirectional_ijc_unknown(self):
        r = classify(FiniteTrace([G4, G5]))
        assert r.ijc.holds is None

    def test_rejects_t_max(self):
        with pytest.raises(ValueError):
            classify(PERIODIC, t_max=0)

    def test_report_json_shape(self):
        d = classify(PERIODIC).to_dict()
        assert d["ujsc"] == {"holds": True, "T": 3}
        assert set(d) == {"ujsc", "ujqsc", "ijc", "notes"}

    def test_periodic_matches_brute_force_random(self):
        rng = default_rng()
        for _ in range(60):
            n = int(rng.integers(2, 5))
            L = int(rng.integers(1, 4))
            hold = int(rng.integers(1, 3))
            pattern = tuple(random_digraph(rng, n, p=0.3) for _ in range(L))
            s = Periodic(pattern, hold)
            t_max = 2 * s.period
            r = classify(s, t_max=t_max)
            for pred, verdict in ((is_strongly_connected, r.ujsc), (has_spanning_tree, r.ujqsc)):
                brute = next(
                    (
                        T
                        for T in range(1, t_max + 1)
                        if oracles.windows_all(pred, s.graph_at, range(2 * s.period), T, union)
                    ),
                    None,
                )
                if brute is None:
                    assert verdict.holds is False
                else:
                    assert verdict.holds is True and verdict.T == brute
                if r.ujsc.holds:
                    assert r.ujqsc.holds and r.ujqsc.T <= r.ujsc.T

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_monotone_in_window_length(self, seed):
        rng = default_rng(seed)
        n = int(rng.integers(2, 5))
        s = Periodic(tuple(random_digraph(rng, n, p=0.35) for _ in range(int(rng.integers(1, 4)))))
        for T in range(1, 2 * s.period):
            if oracles.windows_all(is_strongly_connected, s.graph_at, range(s.period), T, union):
                assert oracles.windows_all(is_strongly_connected, s.graph_at, range(s.period), T + 1, union)


def test_squares_generator():
    assert [squares(l) for l in range(1, 5)] == [1, 4, 9, 16]
    assert RECURRENT.recurrence_times(4) == [1, 4, 9, 16]
