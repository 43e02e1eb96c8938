from fractions import Fraction

import numpy as np
import pytest

from cutnorm_lab.exact import cut_norm_exact
from cutnorm_lab.graphon import (StepGraphon, adjacency_from_edges, as_fraction, banded_cut,
                                 constant, corner_embed, corner_embed_symmetric,
                                 graphon_cut_norm, graphon_from_json, graphon_to_json,
                                 l1_normalize, load_edge_list, load_graphon, refine,
                                 save_graphon, step_graphon_from_matrix, tensor_graphon,
                                 triangular_cut_graphon, witness_intervals)
from cutnorm_lab.matrix import make_An_tensor, triangular_cut


def rand_graphon(rng, m, symmetric=False, zero_diag=False):
    v = rng.uniform(-1, 1, (m, m))
    if symmetric:
        v = np.triu(v, 1) + np.triu(v, 1).T + np.diag(np.diag(v))
    if zero_diag:
        np.fill_diagonal(v, 0.0)
    return StepGraphon(v)


def test_basic_properties():
    w = StepGraphon([[1, -2], [3, 0]])
    assert w.m == 2 and not w.is_symmetric
    assert w.l1_norm == pytest.approx(6 / 4)
    assert w.reflect().equals(StepGraphon([[1, 3], [-2, 0]]))
    assert (w + w).equals(2 * w) and (w - w).equals(StepGraphon(np.zeros((2, 2))))
    with pytest.raises(ValueError):
        w + constant(1.0, 3)
    with pytest.raises(ValueError):
        StepGraphon(np.zeros((2, 3)))


def test_double_diagonal_option():
    w = step_graphon_from_matrix([[1, 2], [3, 4]], double_diagonal=True)
    assert w.values.tolist() == [[2, 2], [3, 8]]


def test_tensor_graphon():
    w = tensor_graphon(3)
    K = make_An_tensor(3).entries
    assert w.m == 9 and np.all(np.diag(w.values) == 0)
    off = ~np.eye(9, dtype=bool)
    assert np.array_equal(w.values[off], K[off])


def test_graphon_cut_norm_equals_matrix_cut_norm_and_refinement():
    rng = np.random.default_rng(0)
    for m in (1, 2, 3, 5):
        w = rand_graphon(rng, m)
        c = graphon_cut_norm(w)[0]
        assert c == pytest.approx(cut_norm_exact(w.values)[0], abs=1e-15)
        for k in (2, 3):
            assert graphon_cut_norm(refine(w, k))[0] == pytest.approx(c, abs=1e-12)


def test_witness_intervals():
    assert witness_intervals((0, 1, 3), 4) == [(0, Fraction(1, 2)), (Fraction(3, 4), 1)]
    assert witness_intervals((), 4) == []


def test_triangular_cut_graphon():
    w = tensor_graphon(2)
    t = triangular_cut_graphon(w)
    assert np.array_equal(t.values, np.triu(w.values, 1))
    with pytest.raises(ValueError, match=r"cell \(0, 0\)"):
        triangular_cut_graphon(constant(1.0, 2))


def test_tensor_graphon_cut_norms_match_matrix():
    for n in (2, 3):
        K = make_An_tensor(n)
        w = tensor_graphon(n)
        # K is symmetric with zero diagonal, so the strict upper part is the transpose
        # of the lower part
        tri_w = graphon_cut_norm(triangular_cut_graphon(w))[0]
        assert tri_w == pytest.approx(cut_norm_exact(triangular_cut(K))[0], abs=1e-12)
        assert graphon_cut_norm(w)[0] == pytest.approx(cut_norm_exact(K)[0], abs=1e-12)


def test_as_fraction():
    assert as_fraction("1/4") == Fraction(1, 4)
    assert as_fraction(0.5) == Fraction(1, 2)
    for bad in ("0", "1", "3/2", -0.1):
        with pytest.raises(ValueError):
            as_fraction(bad)


def test_corner_embed_layout():
    w = StepGraphon([[5.0]])
    e = corner_embed(w, Fraction(1, 4))
    assert e.m == 4 and e.values[0, 3] == 5.0 and np.abs(e.values).sum() == 5.0
    s = corner_embed_symmetric(w, Fraction(1, 2))
    assert s.is_symmetric and s.values.tolist() == [[0, 5], [5, 0]]
    with pytest.raises(ValueError, match="alignment"):
        corner_embed(StepGraphon([[1.0]]), Fraction(2, 3))


def test_corner_embedding_scaling():
    rng = np.random.default_rng(1)
    for lam in (Fraction(1, 2), Fraction(1, 4)):
        for m in (1, 2, 4, 6):
            w = rand_graphon(rng, m)
            lhs = graphon_cut_norm(corner_embed_symmetric(w, lam))[0]
            assert lhs == pytest.approx(2 * float(lam) ** 2 * graphon_cut_norm(w)[0], abs=1e-9)
    assert graphon_cut_norm(corner_embed_symmetric(constant(1.0), Fraction(1, 2)))[0] == 0.5


def test_banded_cut():
    w = StepGraphon(np.arange(16.0).reshape(4, 4))
    with pytest.raises(ValueError, match="band edge"):
        banded_cut(w, Fraction(1, 2))
    v = np.arange(16.0).reshape(4, 4)
    i, j = np.indices(v.shape)
    v[np.abs(i - j) == 2] = 0.0
    b = banded_cut(StepGraphon(v), Fraction(1, 2))
    assert np.array_equal(b.values, np.where(np.abs(i - j) < 2, v, 0.0))
    # the band through a corner embedding keeps only the triangular part
    a = tensor_graphon(2)
    e = corner_embed_symmetric(a, Fraction(1, 2))
    banded = banded_cut(e, Fraction(1, 2))
    assert np.array_equal(banded.values[:4, 4:], np.tril(a.values, -1))


def test_l1_normalize():
    w = StepGraphon([[2.0, 0], [0, -2.0]])
    assert l1_normalize(w).l1_norm == pytest.approx(1.0)
    with pytest.raises(ValueError):
        l1_normalize(constant(0.0, 3))


def test_json_round_trip(tmp_path):
    w = tensor_graphon(2)
    assert graphon_from_json(graphon_to_json(w)).equals(w)
    p = tmp_path / "w.json"
    save_graphon(p, w)
    assert load_graphon(p).equals(w)
    with pytest.raises(ValueError):
        graphon_from_json('{"m": 3, "values": [[1]]}')


def test_edge_lists(tmp_path):
    adj = adjacency_from_edges("# triangle\n1 2\n2 3\n\n3 1\n")
    assert adj.is_symmetric and adj.entries.sum() == 6
    assert adjacency_from_edges("1 2", n=4).n == 4
    for bad in ("1 1", "1 2\n2 1", "1", "0 2", "a b"):
        with pytest.raises(ValueError):
            adjacency_from_edges(bad)
    p = tmp_path / "g.txt"
    p.write_text("1 2\n")
    assert load_edge_list(p).values.tolist() == [[0, 1], [1, 0]]
