import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modcon import scenarios
from modcon.dynamics import (
    NumericError,
    SimulationError,
    StateDependentProvider,
    StaticProvider,
    WeightMatrix,
    simulate,
    step,
    validate,
)
from modcon.generators import default_rng, random_digraph, random_valid_matrix
from modcon.metrics import check_monotone_M
from modcon.schedule import Periodic
from modcon.signed_graph import SignedDigraph

COUNTER_A = WeightMatrix([["1", "0", "0"], ["1/3", "1/3", "1/3"], ["-1/2", "0", "1/2"]])
COUNTER_G = SignedDigraph.from_matrix(COUNTER_A.a)
A1 = WeightMatrix([[1, 0, 0], [0, 1, 0], [-0.5, 0, 0.5]])
G1 = SignedDigraph.from_matrix(A1.a)


class TestWeightMatrix:
    def test_rational_strings_exact(self):
        assert COUNTER_A.a[1, 0] == 1 / 3
        assert COUNTER_A.a[2, 0] == -0.5

    def test_read_only(self):
        with pytest.raises(ValueError):
            COUNTER_A.a[0, 0] = 2.0

    def test_square(self):
        with pytest.raises(ValueError):
            WeightMatrix([[1, 0]])


class TestValidate:
    def test_counterexample_matrix(self):
        assert validate(COUNTER_A, COUNTER_G, 1 / 3).ok

    def test_switching_matrix(self):
        assert validate(A1, G1, 0.5).ok

    def test_broken_row_sum(self):
        m = WeightMatrix([[1, 0, 0], [0, 0.9, 0], [0, 0, 1]])
        res = validate(m, SignedDigraph(3), 0.5)
        assert not res.ok
        assert [(v.row, v.condition) for v in res.violations] == [(2, "row_modulus_sum")]

    def test_support_mismatch(self):
        res = validate(A1, SignedDigraph(3), 0.5)
        assert [(v.row, v.condition) for v in res.violations] == [(3, "support_mismatch")]

    def test_sign_mismatch(self):
        flipped = SignedDigraph(3, [(1, 3, "+")])
        res = validate(A1, flipped, 0.5)
        assert [v.condition for v in res.violations] == ["sign_mismatch"]

    def test_below_lambda(self):
        res = validate(COUNTER_A, COUNTER_G, 0.4)
        assert {v.row for v in res.violations} == {2}
        assert res.violations[0].condition == "below_lambda"

    def test_zero_diagonal(self):
        m = WeightMatrix([[0, 1], [0, 1]])
        g = SignedDigraph(2, [(2, 1, "+")])
        res = validate(m, g, 0.5)
        assert [v.condition for v in res.violations] == ["diagonal_zero"]

    def test_shape(self):
        assert not validate(A1, SignedDigraph(2), 0.5).ok

    def test_reports_every_row(self):
        m = WeightMatrix([[0.5, 0, 0], [0, 0.5, 0], [0, 0, 1]])
        res = validate(m, SignedDigraph(3), 0.5)
        assert [v.row for v in res.violations] == [1, 2]


class TestStep:
    def test_counterexample_fixed_point(self):
        assert step([1, 0, -1], COUNTER_A).tolist() == [1.0, 0.0, -1.0]

    def test_identity(self):
        x = np.array([0.3, -2.0, 7.5])
        assert np.array_equal(step(x, WeightMatrix(np.eye(3))), x)

    def test_switching_product(self):
        assert step([-1.5, 1, 0], A1).tolist() == [-1.5, 1.0, 0.75]

    def test_dimension(self):
        with pytest.raises(ValueError):
            step([1, 2], A1)

    @given(
        st.lists(st.floats(-1e3, 1e3, allow_subnormal=False), min_size=3, max_size=3),
        st.sampled_from([0.0, 1.0, -1.0, 2.0, -0.5, 0.25]),
    )
    def test_homogeneity(self, x, c):
        x = np.array(x)
        # scaling by powers of two (and 0, ±1) is exact in floating point
        assert np.array_equal(step(c * x, A1), c * step(x, A1))

    def test_matches_matmul(self):
        rng = default_rng()
        for _ in range(50):
            g = random_digraph(rng, 5, p=0.3, max_in_degree=3)
            m = random_valid_matrix(rng, g, 0.1)
            x = rng.uniform(-5, 5, 5)
            np.testing.assert_allclose(step(x, m), m.a @ x, rtol=0, atol=1e-12)


class TestNonExpansion:
    def test_random_matrices_never_expand(self):
        rng = default_rng()
        for _ in range(1000):
            n = int(rng.integers(1, 7))
            lam = float(rng.uniform(0.05, 0.4))
            g = random_digraph(rng, n, p=float(rng.uniform(0.1, 0.9)), max_in_degree=int(1 / lam) - 1)
            m = random_valid_matrix(rng, g, lam)
            assert validate(m, g, lam).ok
            x = rng.uniform(-10, 10, n)
            assert np.abs(step(x, m)).max() <= np.abs(x).max() + 1e-12


class TestSimulate:
    def test_counterexample_constant(self):
        traj = simulate([1, 0, -1], Periodic((COUNTER_G,)), StaticProvider({COUNTER_G: COUNTER_A}, 1 / 3), 1000)
        assert len(traj) == 1001
        assert np.all(traj.states == np.array([1.0, 0.0, -1.0]))
        assert np.allclose(traj.dist, np.sqrt(2 / 3), rtol=0, atol=1e-12)

    def test_horizon_one(self):
        x0 = np.array([0.2, -0.7, 0.4])
        traj = simulate(x0, Periodic((G1,)), StaticProvider({G1: A1}, 0.5), 1)
        assert traj.steps.tolist() == [0, 1]
        assert np.array_equal(traj.states[1], step(x0, A1))

    def test_switching_converges_to_zero(self):
        sc = scenarios.builtin("unidirectional_fig6")
        traj = simulate(sc.x0, sc.schedule, sc.provider(), 2000)
        assert traj.dist[-1] < 1e-6
        assert np.abs(traj.final).max() < 1e-2
        assert check_monotone_M(traj) == (True, None)

    def test_stride_records_final(self):
        traj = simulate([1, 0, -1], Periodic((COUNTER_G,)), StaticProvider({COUNTER_G: COUNTER_A}, 1 / 3), 10, record_every=4)
        assert traj.steps.tolist() == [0, 4, 8, 10]

    def test_missing_matrix(self):
        with pytest.raises(SimulationError) as exc:
            simulate([1, 0, -1], Periodic((COUNTER_G, G1)), StaticProvider({COUNTER_G: COUNTER_A}, 1 / 3), 5)
        assert exc.value.k == 1

    def test_invalid_matrix_names_row(self):
        bad = WeightMatrix([[1, 0, 0], [0, 0.9, 0], [0, 0, 1]])
        g = SignedDigraph(3)
        with pytest.raises(SimulationError, match="row 2"):
            simulate([1, 0, 0], Periodic((g,)), StaticProvider({g: bad}, 0.5), 3)

    def test_state_dependent_pattern_mismatch(self):
        p = StateDependentProvider(lambda x, k, g: A1 if k < 3 else WeightMatrix(np.eye(3)), 0.5)
        with pytest.raises(SimulationError) as exc:
            simulate([1, 0, 0], Periodic((G1,)), p, 10)
        assert exc.value.k == 3

    def test_non_finite(self):
        with pytest.raises(NumericError):
            simulate([np.nan, 0, 0], Periodic((G1,)), StaticProvider({G1: A1}, 0.5), 3)

    def test_zero_state_stays_zero(self):
        sc = scenarios.builtin("bidirectional_fig9")
        traj = simulate([0, 0, 0], sc.schedule, sc.provider(), 50)
        assert not traj.states.any()

    def test_deterministic(self):
        sc = scenarios.builtin("bidirectional_fig9")
        a = simulate(sc.x0, sc.schedule, sc.provider(), 300)
        b = simulate(sc.x0, sc.schedule, sc.provider(), 300)
        assert a.to_csv() == b.to_csv()

    def test_csv_format(self):
        traj = simulate([1, 0, -1], Periodic((COUNTER_G,)), StaticProvider({COUNTER_G: COUNTER_A}, 1 / 3), 2)
        lines = traj.to_csv().splitlines()
        assert lines[0] == "k,x_1,x_2,x_3,M,distJ"
        assert lines[1] == f"0,1.0,0.0,-1.0,1.0,{float(np.sqrt(2 / 3))!r}"
        assert len(lines) == 4

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_M_monotone_random_switching(self, seed):
        rng = default_rng(seed)
        n = int(rng.integers(2, 6))
        lam = float(rng.uniform(0.05, 0.3))
        pattern = [random_digraph(rng, n, 0.4, max_in_degree=int(1 / lam) - 1) for _ in range(3)]
        pattern = list(dict.fromkeys(pattern))
        mats = {g: random_valid_matrix(rng, g, lam) for g in pattern}
        traj = simulate(rng.uniform(-10, 10, n), Periodic(tuple(pattern)), StaticProvider(mats, lam), 100)
        assert check_monotone_M(traj)[0]
