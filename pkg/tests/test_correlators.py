"""Scalar sea sums and one-body density-matrix blocks."""

import numpy as np
import pytest

from spinpair.correlators import (
    DOWN,
    UP,
    correlator_set,
    pair_blocks,
    single_particle_dm,
)
from spinpair.errors import SiteOutOfRange
from spinpair.fermisea import nearest_valid_count, occupy_by_count, occupy_by_filling
from spinpair.model import ModelParams


@pytest.fixture(scope="module")
def sea():
    p = ModelParams(B=0.4, lam=0.9, M=48)
    return occupy_by_count(p, nearest_valid_count(p, 20))


def test_free_sea_k0_shell_values():
    # only the k = 0 shell occupied: G(R) = m for every R, A = H = K = 0
    occ = occupy_by_count(ModelParams(M=4), 2)
    for r in (0, 1, 2):
        c = correlator_set(occ, r)
        assert c.m == 2
        assert c.G == 2.0 + 0.0j
        assert c.A == 0.0 + 0.0j
        assert c.H == 0.0 + 0.0j
        assert c.K == 0.0 + 0.0j


def test_sums_are_real_for_symmetric_sea(sea):
    for r in (0, 3, 11):
        c = correlator_set(sea, r)
        scale = max(1.0, c.m)
        for val in (c.A, c.G, c.H, c.K):
            assert abs(val.imag) < 1e-10 * scale


def test_correlator_set_rejects_fractional_r(sea):
    with pytest.raises(ValueError):
        correlator_set(sea, 1.5)


def test_polarized_sea_values():
    # B > 0, low filling: lower band only, theta = 0, so H = G and A = m
    occ = occupy_by_filling(ModelParams(B=0.4, M=500), 0.098)
    assert occ.count_upper == 0
    c = correlator_set(occ, 7)
    assert abs(c.A - c.m) < 1e-12
    assert abs(c.H - c.G) < 1e-12 * max(1.0, abs(c.G))
    assert abs(c.K - c.G) < 1e-12 * max(1.0, abs(c.G))


def test_diagonal_elements_give_site_density(sea):
    p = sea.params
    per_state = sea.n_electrons / (2.0 * p.length)
    for s in (UP, DOWN):
        val = single_particle_dm(sea, (5, s), (5, s))
        assert abs(val - per_state) < 1e-12 * per_state
    # summed over spin and multiplied by a: the filling per site
    dens = sum(single_particle_dm(sea, (5, s), (5, s)).real for s in (UP, DOWN))
    assert abs(dens * p.a - sea.delta) < 1e-12


def test_one_body_hermiticity(sea):
    x, xp = (3, UP), (9, DOWN)
    assert abs(single_particle_dm(sea, x, xp) - np.conj(single_particle_dm(sea, xp, x))) < 1e-14


def test_one_body_spin_validation(sea):
    with pytest.raises(ValueError):
        single_particle_dm(sea, (0, 2), (1, 0))


@pytest.mark.parametrize("r", [-1, 48, 500])
def test_site_bounds(sea, r):
    with pytest.raises(SiteOutOfRange):
        single_particle_dm(sea, (r, UP), (0, UP))
    with pytest.raises(SiteOutOfRange):
        pair_blocks(sea, 0, r)


def test_pair_blocks_match_elementwise(sea):
    r1, r2 = 4, 13
    q11, q12, q21, q22 = pair_blocks(sea, r1, r2)
    for s in (UP, DOWN):
        for sp in (UP, DOWN):
            assert abs(q11[s, sp] - single_particle_dm(sea, (r1, s), (r1, sp))) < 1e-14
            assert abs(q12[s, sp] - single_particle_dm(sea, (r1, s), (r2, sp))) < 1e-14
            assert abs(q21[s, sp] - single_particle_dm(sea, (r2, s), (r1, sp))) < 1e-14
            assert abs(q22[s, sp] - single_particle_dm(sea, (r2, s), (r2, sp))) < 1e-14


def test_pair_blocks_structure(sea):
    q11, q12, q21, q22 = pair_blocks(sea, 2, 17)
    np.testing.assert_allclose(q11, q11.conj().T, atol=1e-14)
    np.testing.assert_allclose(q12, q21.conj().T, atol=1e-14)
    np.testing.assert_array_equal(q11, q22)


def test_pair_blocks_translation_invariance(sea):
    a = pair_blocks(sea, 4, 13)
    b = pair_blocks(sea, 14, 23)
    for x, y in zip(a, b):
        np.testing.assert_array_equal(x, y)
