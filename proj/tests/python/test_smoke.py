import json
import math

import pytest

import riskcap


@pytest.fixture
def fixture():
    space = riskcap.ScenarioSpace([0.25, 0.25, 0.25, 0.25])
    asset = riskcap.EligibleAsset(0.9, [1.0, 1.0, 1.0, 0.0])
    x = [-2.0, -1.0, 1.0, 3.0]
    return space, asset, x


def test_var_and_tvar_values(fixture):
    space, _, x = fixture
    assert riskcap.var_value(space, x, 0.3) == 1.0
    assert riskcap.tvar_value(space, x, 0.5) == pytest.approx(1.5, abs=1e-12)


def test_rho_closed_form_and_bisection(fixture):
    space, asset, x = fixture
    var = riskcap.rho(riskcap.AcceptanceSpec.var(0.3), space, x, asset)
    assert var["status"] == "finite"
    assert var["method"] == "closed_form"
    assert var["rho"] == pytest.approx(0.9, abs=1e-12)

    tvar = riskcap.rho(riskcap.AcceptanceSpec.tvar(0.5), space, x, asset, tol=1e-10)
    assert tvar["method"] == "bisection"
    assert tvar["rho"] == pytest.approx(1.35, abs=1e-9)


def test_infinite_value_carries_reason(fixture):
    space, asset, _ = fixture
    out = riskcap.rho(riskcap.AcceptanceSpec.var(0.2), space, [1.0, 1.0, 1.0, -1.0], asset)
    assert out["rho"] == math.inf
    assert out["status"] == "+inf"
    assert out["reason"] == "VarStuckMass"


def test_acceptance_spec_json_round_trip():
    spec = riskcap.AcceptanceSpec.from_json('{"type": "tvar", "alpha": 0.5}')
    assert json.loads(spec.to_json()) == {"type": "tvar", "alpha": 0.5}
    with pytest.raises(ValueError):
        riskcap.AcceptanceSpec.from_json('{"type": "tvar", "alpha": 0.5, "extra": 1}')


def test_illiquid_composition(fixture):
    space, asset, x = fixture
    pi = riskcap.PricingFunctional.from_json(
        '{"segments": [{"upto": 1.0, "slope": 0.9}, {"upto": "inf", "slope": 1.8}]}', 0.9
    )
    value = riskcap.rho_illiquid(riskcap.AcceptanceSpec.tvar(0.5), space, x, asset, pi, tol=1e-10)
    assert value == pytest.approx(1.8, abs=1e-8)
    assert pi(1.5) == pytest.approx(1.8, abs=1e-12)


def test_dual_matches_primal(fixture):
    space, asset, x = fixture
    dual = riskcap.dual_rho(riskcap.AcceptanceSpec.tvar(0.5), space, x, asset)
    assert dual == pytest.approx(1.35, abs=1e-12)
    dec = riskcap.dual_vertices(riskcap.AcceptanceSpec.tvar(0.5), space, asset)
    assert len(dec["certificates"]) == 6
    assert dec["degenerate_directions"] == []


def test_cash_subadditivity_report(fixture):
    space, _, _ = fixture
    asset = riskcap.EligibleAsset(0.8, [1.0, 1.0, 1.0, 0.5])
    report = json.loads(
        riskcap.cash_subadditivity_report(riskcap.AcceptanceSpec.tvar(0.5), space, asset)
    )
    assert report["verdict"] == "No"
    assert report["criterion"] == "TVaRThreshold"


def test_validation_errors_map_to_value_error():
    with pytest.raises(ValueError):
        riskcap.ScenarioSpace([0.5, 0.6])
    with pytest.raises(ValueError):
        riskcap.EligibleAsset(1.0, [0.0, 0.0])
