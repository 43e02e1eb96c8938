import numpy as np
import pytest

from cutnorm_lab.approx import (RelaxationConfig, cut_norm_lower_heuristic,
                                inf_one_lower_heuristic, relax_inf_one, round_to_signs)
from cutnorm_lab.exact import cut_norm_exact, inf_one_norm_exact
from cutnorm_lab.matrix import make_An, triangular_cut

FAST = RelaxationConfig(rounding_rounds=200)


def test_config_validation_and_rank():
    assert RelaxationConfig().rank_for(8) == 4
    assert RelaxationConfig().rank_for(50) == 10
    assert RelaxationConfig(rank=3).rank_for(100) == 3
    for bad in (dict(rank=0), dict(rounding_rounds=0), dict(sweeps=-1), dict(seed=-1)):
        with pytest.raises(ValueError):
            RelaxationConfig(**bad)


def test_relaxation_objective_is_monotone():
    A = np.random.default_rng(1).uniform(-1, 1, (12, 12))
    state = relax_inf_one(A, FAST)
    h = np.array(state.history)
    assert np.all(np.diff(h) >= -1e-9)
    np.testing.assert_allclose(np.linalg.norm(state.U, axis=1), 1.0)
    np.testing.assert_allclose(np.linalg.norm(state.V, axis=1), 1.0)
    # the relaxation bounds the discrete problem from above
    assert state.objective >= inf_one_norm_exact(A)[0] - 1e-9


def test_zero_rows_are_handled():
    A = np.zeros((5, 5))
    A[1, 2] = 1.0
    v, w = inf_one_lower_heuristic(A, FAST)
    assert v == 1.0
    c, cw = cut_norm_lower_heuristic(A, FAST)
    assert c == pytest.approx(1 / 25)


def test_heuristics_never_exceed_exact():
    rng = np.random.default_rng(2)
    for _ in range(40):
        n = int(rng.integers(2, 9))
        A = rng.uniform(-1, 1, (n, n))
        cfg = RelaxationConfig(rounding_rounds=100, seed=int(rng.integers(1 << 32)))
        h, hw = cut_norm_lower_heuristic(A, cfg)
        assert h <= cut_norm_exact(A)[0] + 1e-12
        assert abs(hw.evaluate(A)) == pytest.approx(h * n * n, abs=1e-12)
        s, sw = inf_one_lower_heuristic(A, cfg)
        assert s <= inf_one_norm_exact(A)[0] + 1e-12
        assert sw.evaluate(A) == pytest.approx(s)


def test_seed_determines_output():
    A = np.random.default_rng(4).uniform(-1, 1, (30, 30))
    cfg = RelaxationConfig(rounding_rounds=50, seed=9)
    assert cut_norm_lower_heuristic(A, cfg) == cut_norm_lower_heuristic(A, cfg)
    assert inf_one_lower_heuristic(A, cfg) == inf_one_lower_heuristic(A, cfg)
    s1 = relax_inf_one(A, cfg)
    s2 = relax_inf_one(A, cfg)
    assert np.array_equal(s1.U, s2.U) and s1.history == s2.history


def test_round_to_signs_returns_sign_vectors():
    A = make_An(10).entries
    state = relax_inf_one(A, FAST)
    v, w = round_to_signs(A, state, FAST)
    assert set(w.x) <= {-1, 1} and len(w.y) == 10
    assert v == w.evaluate(A) == w.value


def test_finds_triangular_optimum():
    A = triangular_cut(make_An(12))
    h, _ = cut_norm_lower_heuristic(A, RelaxationConfig(seed=3))
    assert h == pytest.approx(cut_norm_exact(A)[0], abs=1e-12)
