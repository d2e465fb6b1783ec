import math

import pytest

import semirad


def test_source_constants():
    s = semirad.Source(q=2.0, E=0.5, u0_perp=(0.6, 0.8))
    assert s.eps == pytest.approx(1.0)
    assert s.rho == pytest.approx(math.sqrt(2.0))
    assert semirad.source_for_scale(2.0, 0.1).eps == pytest.approx(10.0)
    with pytest.raises(semirad.ConfigError):
        semirad.Source(E=0.0)


def test_rapidity_round_trip():
    s = semirad.Source(u0_par=0.3)
    for t in (-2.0, 0.0, 1.5):
        assert semirad.t_of_eta(s, semirad.eta_of_t(s, t)) == pytest.approx(t, abs=1e-12)


def test_closed_form_rates():
    s = semirad.Source(q=1.5)
    r = semirad.rate(s, "asymptotic")
    assert r["w"] == pytest.approx(2 * 1.5**2 * s.a**2)
    assert abs(r["check_integral"] - 2.0) < 1e-8
    cl = semirad.rate(s, "classical-nr")
    assert cl["w"] / r["w"] == pytest.approx(3 * math.pi / 32, rel=1e-10)


def test_specfun_values():
    k0 = semirad.specfun.incomplete_macdonald(0.0, 1.0, -math.inf, math.inf)
    assert abs(k0 - 0.42102443824070834) < 1e-10
    assert semirad.specfun.k0_series(0.0, -0.5, 1.5) == pytest.approx(1.0)


def test_energy_and_divergence():
    s = semirad.Source(u0_par=0.1)
    assert semirad.total_energy(s, (0.3, 0.3))["W"] == 0.0
    with pytest.raises(semirad.DivergenceError):
        semirad.total_energy(s, (-math.inf, math.inf))
    r = semirad.total_energy(s, (0.0, 0.4), rel_tol=1e-6, cutoff_z=5.0, fixed_cutoff=True)
    assert r["W"] > 0.0


def test_energy_density_nonnegative():
    s = semirad.Source(u0_perp=(0.4, -0.2), u0_par=0.3)
    for k in ((0.5, 0.1, 0.2), (-2.0, 1.0, 3.0), (0.0, 0.7, -1.0)):
        v, err = semirad.energy_density(s, k, (-0.5, 1.0))
        assert v >= 0.0


def test_photon_statistics():
    total = sum(semirad.n_photon_probability(n, 3.0) for n in range(80))
    assert total == pytest.approx(1.0, abs=1e-12)
    assert semirad.one_photon_energy_classical(0.0, 1.0) == 0.0
    summary = semirad.emission_summary(
        semirad.Source(), (0.0, 0.5), rel_tol=1e-6, cutoff_z=5.0, fixed_cutoff=True
    )
    assert summary["W1"] * math.exp(summary["lambda_bar"]) == pytest.approx(summary["W"], rel=1e-10)


def test_figure_grid_shape():
    panels = semirad.figure(2, nodes=7)
    assert [p["quantity"] for p in panels] == ["energy", "energy_asymptotic"]
    assert panels[0]["value"].shape == (7, 7)
    assert math.isnan(panels[0]["value"][3, 3])


def test_verify_subset():
    checks = semirad.verify(["larmor-limit", "theta-max"])
    assert [c["name"] for c in checks] == ["larmor-limit", "theta-max"]
    assert all(c["pass"] for c in checks)
