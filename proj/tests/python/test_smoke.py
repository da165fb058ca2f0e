import math
import os
import subprocess

import pytest

import fracab


def test_gamma_and_mittag_leffler():
    assert fracab.gamma(5.0) == 24.0
    assert fracab.mittag_leffler(1.0, 1.0) == pytest.approx(math.e, rel=1e-15)
    assert fracab.mittag_leffler(0.5, -1.0) == pytest.approx(0.42758357615580700, rel=1e-12)


def test_weights_reduce_to_classical_ab2():
    for curr, prev in (
        fracab.caputo_weights(1.0, 0.1, 5),
        fracab.cf_weights(1.0, 0.1),
        fracab.abc_weights(1.0, 0.1, 5),
    ):
        assert curr == pytest.approx(0.15, rel=1e-12)
        assert prev == pytest.approx(-0.05, rel=1e-12)


def test_integrate_matches_classical_ab2():
    rhs = lambda t, y: [-y[0]]
    times, states = fracab.integrate(rhs, [1.0], 1.0, fracab.DerivativeKind.CaputoFabrizio, 0.01, 1.0)
    ref_times, ref_states = fracab.classical_ab2(rhs, [1.0], 0.01, 1.0)
    assert times == pytest.approx(ref_times)
    assert states[-1][0] == pytest.approx(ref_states[-1][0], rel=1e-12)


def test_cf_closed_form():
    times, states = fracab.integrate(lambda t, y: [t], [0.0], 0.5, fracab.DerivativeKind.CaputoFabrizio, 0.01, 1.0)
    assert states[-1][0] == pytest.approx(0.75, abs=1e-3)
    _, ref = fracab.reference_solution(lambda t, y: [t], [0.0], 0.5, fracab.DerivativeKind.CaputoFabrizio, 0.1, 1.0)
    assert ref[-1][0] == pytest.approx(0.75, abs=1e-12)


def test_errors_surface_as_exceptions():
    with pytest.raises(ValueError):
        fracab.caputo_weights(0.5, 0.1, 0)
    cfg = fracab.FisherConfig()
    cfg.dt = 0.0625
    with pytest.raises(fracab.InstabilityError):
        fracab.solve_fisher(cfg)


def test_fisher_stable_run():
    cfg = fracab.FisherConfig()
    cfg.delta = 0.01
    cfg.N = 20
    cfg.dt = 0.01
    cfg.T = 0.1
    cfg.alpha = 1.0
    result = fracab.solve_fisher(cfg)
    assert len(result["x"]) == 21
    assert result["max_error"] < 5e-2


def test_run_cli_in_process():
    code, out, err = fracab.run_cli("solve-ode", {"h": "0.1", "no-timestamp": "1"})
    assert code == 0
    assert out.splitlines()[0] == "t,y,y_exact,abs_error"
    code, _, err = fracab.run_cli("solve-ode", {"delta": "1"})
    assert code == 2
    assert err.startswith("error: code=invalid_spec")


@pytest.mark.skipif("FRACAB_CLI" not in os.environ, reason="command-line runner not located")
def test_cli_binary():
    proc = subprocess.run(
        [os.environ["FRACAB_CLI"], "convergence", "--kind", "cf", "--no-timestamp"],
        capture_output=True,
        text=True,
        check=True,
    )
    rows = [line.split(",") for line in proc.stdout.splitlines()]
    assert rows[0] == ["h", "steps", "error", "eoc"]
    assert abs(float(rows[-1][3]) - 2.0) < 0.1
