import numpy as np
import pytest

from toricvps import sylvester as sy


def random_dual(rng, d):
    return sy.BinaryDualForm.make(
        d, rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1))


def rel_err(a, b):
    return float(np.max(np.abs(a - b)) / np.max(np.abs(b)))


def test_dual_of_power_values():
    F = sy.dual_of_power((1, 0), 5)
    assert F.values == (120, 0, 0, 0, 0, 0)


def test_catalecticant_rank_one_form():
    F = sy.dual_of_power((1, 0), 5)
    m = sy.binary_catalecticant(F, 2)
    assert np.linalg.matrix_rank(m) == 1


def test_catalecticant_shapes_and_generic_ranks():
    rng = np.random.default_rng(0)
    F = random_dual(rng, 5)
    m = sy.binary_catalecticant(F, 3)
    assert m.shape == (3, 4)
    assert np.linalg.matrix_rank(m) == 3
    G = random_dual(rng, 6)
    m = sy.binary_catalecticant(G, 4)
    assert m.shape == (3, 5)
    assert np.linalg.matrix_rank(m) == 3  # kernel dimension 2: a pencil


def test_catalecticant_transpose_duality():
    rng = np.random.default_rng(1)
    for d in (4, 5, 7):
        F = random_dual(rng, d)
        for k in range(d + 1):
            a = sy.binary_catalecticant(F, k)
            b = sy.binary_catalecticant(F, d - k)
            assert np.array_equal(a, b.T)


def test_catalecticant_rank_of_planted_forms():
    rng = np.random.default_rng(2)
    for d in (6, 8, 10):
        for r in (1, 2, 3, 4, 5):
            pts = [sy.normalize_point((rng.normal() + 1j * rng.normal(),
                                       rng.normal() + 1j * rng.normal()))
                   for _ in range(r)]
            F = sy.reconstruct(pts, np.ones(r), d)
            for k in range(d + 1):
                m = sy.binary_catalecticant(F, k)
                want = min(r, k + 1, d - k + 1)
                assert np.linalg.matrix_rank(m, tol=1e-7 * np.max(np.abs(m))) == want


def test_decompose_planted_rank_two():
    F = sy.reconstruct([(1, 0), (0, 1)], [1.0, 1.0], 5)
    dec = sy.sylvester_decompose(F)
    assert len(dec.points) == 2
    norm = sorted((round(abs(p[0]), 6), round(abs(p[1]), 6)) for p in dec.points)
    assert norm == [(0.0, 1.0), (1.0, 1.0)] or norm == [(0.0, 1.0), (1.0, 0.0)]
    rec = sy.reconstruct(dec.points, dec.coeffs, 5)
    assert rel_err(rec.as_array(), F.as_array()) < 1e-9


def test_decompose_single_power():
    F = sy.dual_of_power((1, 0), 3)
    dec = sy.sylvester_decompose(F)
    assert len(dec.points) == 1
    assert sy.point_distance(dec.points[0], (1, 0)) < 1e-9


def test_decompose_random_quintic():
    rng = np.random.default_rng(3)
    for _ in range(10):
        F = random_dual(rng, 5)
        dec = sy.sylvester_decompose(F)
        assert len(dec.points) == 3
        rec = sy.reconstruct(dec.points, dec.coeffs, 5)
        assert rel_err(rec.as_array(), F.as_array()) < 1e-9


def test_odd_degree_uniqueness():
    # the unique 3-secant: the point multiset does not depend on the scan
    rng = np.random.default_rng(4)
    F = random_dual(rng, 5)
    d1 = sy.sylvester_decompose(F)
    d2 = sy.sylvester_decompose(F, pencil_parameter=(0.3 + 0.1j, 0.77))
    # parameter is ignored for a 1-dimensional kernel
    for p in d1.points:
        assert min(sy.point_distance(p, q) for q in d2.points) < 1e-8


def test_even_degree_pencil_two_parameters():
    rng = np.random.default_rng(5)
    for d in (6, 8):
        F = random_dual(rng, d)
        da = sy.sylvester_decompose(F, pencil_parameter=(1.0, 0.0))
        db = sy.sylvester_decompose(F, pencil_parameter=(0.6, 0.8))
        assert len(da.points) == d // 2 + 1
        assert len(db.points) == d // 2 + 1
        for dec in (da, db):
            rec = sy.reconstruct(dec.points, dec.coeffs, d)
            assert rel_err(rec.as_array(), F.as_array()) < 1e-8
        # distinct decompositions
        dist = max(min(sy.point_distance(p, q) for q in db.points)
                   for p in da.points)
        assert dist > 1e-3


def test_reconstruct_point_permutation_invariance():
    rng = np.random.default_rng(6)
    pts = [sy.normalize_point((rng.normal(), rng.normal())) for _ in range(3)]
    coeffs = [1.0, 2.0, 3.0]
    a = sy.reconstruct(pts, coeffs, 4).as_array()
    b = sy.reconstruct(pts[::-1], coeffs[::-1], 4).as_array()
    assert np.allclose(a, b)


def test_reconstruct_single_point_cubic():
    F = sy.reconstruct([(1, 0)], [1.0], 3)
    assert np.allclose(F.as_array(), sy.dual_of_power((1, 0), 3).as_array())


def test_degenerate_form_raises():
    # dual of x0^4 x1: not a finite sum of 5th powers in any square-free way
    F = sy.BinaryDualForm.make(5, [0, 24, 0, 0, 0, 0])
    with pytest.raises((sy.DegenerateFormError, ValueError)):
        sy.sylvester_decompose(F)


def test_zero_form_rejected():
    F = sy.BinaryDualForm.make(3, [0, 0, 0, 0])
    with pytest.raises(ValueError):
        sy.sylvester_decompose(F)
