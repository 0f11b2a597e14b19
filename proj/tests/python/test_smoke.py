import math

import pytest

import kapitsa


def test_engine_and_scalars():
    eng = kapitsa.Engine(1.0, w0=1.0)
    s = eng.scalars
    assert s.g1 > 0 and s.g2 > 0 and s.g_alpha_eps > 0
    assert eng.gamma == 1.0


def test_eps0_paths_agree():
    eng = kapitsa.Engine(3.0, w0=5.0)
    assert kapitsa.eps0(eng) == pytest.approx(kapitsa.eps0_t_ratio(eng), rel=1e-12)


def test_identities_and_determinant():
    eng = kapitsa.Engine(1.0, w0=5.0)
    r = kapitsa.identity_residuals(1.0, eng)
    assert max(r) < 1e-8
    assert kapitsa.identity_residuals(0.0, eng) == [0.0, 0.0]
    det = kapitsa.determinant(1.0, eng)
    assert det.real == pytest.approx(kapitsa.omega(1.0, eng), rel=1e-9)


def test_prefactor_and_modes():
    c0 = kapitsa.jump_coefficient(1.0, 0.0)
    c5 = kapitsa.jump_coefficient(1.0, 0.5)
    assert c5 / c0 == pytest.approx(3.0, rel=1e-14)
    assert kapitsa.jump_coefficient(1.0, 0.5, consistency="paper") * 2 == c5


def test_order_one_and_pole_probe():
    eng = kapitsa.Engine(1.0)
    r = kapitsa.jump_result(0.2, eng, order=1)
    assert r.eps1 > 0
    assert r.convergence_ratio < 1
    p = kapitsa.pole_probe(0, eng)
    assert p.ratio < 10 and p.ratio_perturbed > 50


def test_resistance_scaling():
    eng = kapitsa.Engine(1.0, w0=2.0)
    a = kapitsa.resistance(0.0, eng, temperature=1.0)
    b = kapitsa.resistance(0.0, eng, temperature=2.0)
    assert a.R / b.R == pytest.approx(4.0, rel=1e-13)


def test_profiles_decay():
    eng = kapitsa.Engine(1.0)
    p = kapitsa.profiles([0.0, 1.0, 20.0], eng, nodes=128)
    assert abs(p.w2[2]) < abs(p.w2[0])
    assert p.temperature[0] == pytest.approx(p.w2[0] / (2 * eng.scalars.g2))
    assert math.isfinite(p.w1[1])


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        kapitsa.jump_coefficient(1.0, 1.0)
    with pytest.raises(ValueError):
        kapitsa.Engine(1.0, spectrum="roton")
