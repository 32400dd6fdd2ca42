"""Domain membership, boundary structure, and sup estimation tests."""

import numpy as np
import pytest

from tetrablock import (
    Poly3,
    boundary_point,
    classify_point,
    defining_abs_min,
    on_distinguished_boundary,
    point_from_json,
    point_to_json,
    sample_distinguished_boundary,
    sup_on_closure,
)
from tetrablock.contractions import varopoulos_polynomial


def structured_point(rng, beta_sum, x3_mod):
    """Point built from an explicit parameter pair with |b1|+|b2| = beta_sum."""
    split = rng.random()
    ph = np.exp(2j * np.pi * rng.random(3))
    b1 = beta_sum * split * ph[0]
    b2 = beta_sum * (1.0 - split) * ph[1]
    x3 = x3_mod * ph[2]
    x1 = b1 + np.conj(b2) * x3
    x2 = b2 + np.conj(b1) * x3
    return complex(x1), complex(x2), complex(x3), (complex(b1), complex(b2))


def test_structured_insiders_classified_in(rng):
    for _ in range(50):
        x1, x2, x3, beta = structured_point(rng, 0.85 * rng.random(), 0.9 * rng.random())
        rep = classify_point(x1, x2, x3)
        assert rep.in_closure
        assert rep.residual <= 1e-10
        # The parameter pair is unique below the |x3| = 1 face.
        assert abs(rep.beta[0] - beta[0]) <= 1e-9
        assert abs(rep.beta[1] - beta[1]) <= 1e-9


def test_structured_outsiders_classified_out(rng):
    for _ in range(50):
        x1, x2, x3, _ = structured_point(rng, 1.1 + rng.random(), 0.9 * rng.random())
        rep = classify_point(x1, x2, x3)
        assert not rep.in_closure
        assert rep.beta_sum > 1.0


def test_large_x3_is_outside():
    rep = classify_point(0.0, 0.0, 1.5)
    assert not rep.in_closure
    assert rep.beta is None


def test_unimodular_x3_branch():
    # Consistent and small: on the distinguished boundary.
    x1, x2, x3 = boundary_point(0.7, 1.9, 0.4)
    rep = classify_point(x1, x2, x3)
    assert rep.in_closure
    assert rep.distinguished
    assert rep.consistency <= 1e-12
    # Consistent but |x2| > 1: outside.
    rep = classify_point(1.2, 1.2, 1.0)
    assert not rep.in_closure
    # Inconsistent: outside no matter how small x2 is.
    rep = classify_point(0.3, 0.5, 1.0)
    assert not rep.in_closure
    assert rep.consistency > 0.1


def test_boundary_point_rejects_bad_radius():
    with pytest.raises(ValueError):
        boundary_point(0.0, 0.0, 1.5)


def test_distinguished_boundary_identities(rng):
    x1, x2, x3 = sample_distinguished_boundary(300, seed=6)
    assert np.max(np.abs(np.abs(x3) - 1.0)) <= 1e-12
    assert np.max(np.abs(x1 - np.conj(x2) * x3)) <= 1e-12
    assert np.max(np.abs(np.abs(x1) - np.abs(x2))) <= 1e-12
    for i in range(0, 300, 37):
        assert on_distinguished_boundary(x1[i], x2[i], x3[i])
        rep = classify_point(x1[i], x2[i], x3[i])
        assert rep.in_closure and rep.distinguished


def test_interior_point_not_distinguished():
    assert not on_distinguished_boundary(0.0, 0.0, 0.0)
    rep = classify_point(0.1, 0.2, 0.3)
    assert rep.in_closure and not rep.distinguished


def test_boundary_sampler_prefix_property():
    a1, a2, a3 = sample_distinguished_boundary(50, seed=123)
    b1, b2, b3 = sample_distinguished_boundary(200, seed=123)
    assert np.array_equal(a1, b1[:50])
    assert np.array_equal(a2, b2[:50])
    assert np.array_equal(a3, b3[:50])


def test_lambda_slice_in_closure(rng):
    # Points (x, 1, x) for |x| <= 1 always admit the pair (0, 1).
    for k in range(40):
        r = 1.0 if k % 2 == 0 else np.sqrt(rng.random())
        x = r * np.exp(2j * np.pi * rng.random())
        rep = classify_point(x, 1.0, x)
        assert rep.in_closure


def test_defining_abs_min_origin_exact():
    assert defining_abs_min(0.0, 0.0, 0.0) == 1.0


def test_defining_abs_min_positive_inside(rng):
    for _ in range(15):
        x1, x2, x3, _ = structured_point(rng, 0.8 * rng.random(), 0.8 * rng.random())
        assert defining_abs_min(x1, x2, x3) > 1e-4


def test_defining_abs_min_zero_outside(rng):
    assert defining_abs_min(2.0, 0.0, 0.0) == 0.0
    for _ in range(15):
        x1, x2, x3, _ = structured_point(rng, 1.2 + rng.random(), 0.8 * rng.random())
        assert defining_abs_min(x1, x2, x3) == 0.0


def test_point_json_round_trip():
    x = (0.25 - 0.5j, 1.75j, -0.125)
    assert point_from_json(point_to_json(*x)) == x


def test_sup_constant_poly_exact():
    p = Poly3({(0, 0, 0): 3.0 - 4.0j})
    assert sup_on_closure(p, n_samples=64, seed=0) == pytest.approx(5.0, abs=1e-12)


def test_sup_of_x3_is_one():
    p = Poly3({(0, 0, 1): 1.0})
    assert sup_on_closure(p, n_samples=512, seed=0) == pytest.approx(1.0, abs=1e-9)


def test_sup_affine_frozen():
    # sup |1 + 2 x1| = 3, attained at the fixed point (1, 1, 1).
    p = Poly3({(0, 0, 0): 1.0, (1, 0, 0): 2.0})
    assert sup_on_closure(p, n_samples=4096, seed=2) == pytest.approx(3.0, abs=1e-6)


def test_sup_varopoulos_polynomial():
    p = varopoulos_polynomial()
    assert sup_on_closure(p, n_samples=4096, seed=7) == pytest.approx(5.0, abs=1e-6)


def test_sup_sample_max_monotone_in_n():
    p = varopoulos_polynomial()
    vals = [
        sup_on_closure(p, n_samples=n, seed=31, refine_iters=0)
        for n in (256, 1024, 4096)
    ]
    assert vals[0] <= vals[1] <= vals[2]
