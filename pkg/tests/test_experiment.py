import json
import statistics
from fractions import Fraction

import pytest

import hamdisc.discrepancy as disc
from hamdisc import checks
from hamdisc.experiment import ExperimentReport, ExperimentSpec, run_experiment, verify_all
from hamdisc.hamming import InfeasibleError
from hamdisc.io import decode_fraction, dumps, encode_value, fraction_fields, to_csv


def test_spec_validation():
    with pytest.raises(ValueError):
        ExperimentSpec("sobol", 5, 4, "lp:uniform:2", 3, 1)
    with pytest.raises(ValueError):
        ExperimentSpec("random", 5, 4, "lp:uniform:2", 0, 1)
    with pytest.raises(InfeasibleError):
        ExperimentSpec("random", 65, 4, "lp:uniform:2", 1, 1)
    with pytest.raises(InfeasibleError):
        run_experiment(ExperimentSpec("antipodal", 3, 5, "hemisphere:2", 1, 1))


def test_report_is_deterministic_and_thread_independent():
    spec = ExperimentSpec("random", 8, 16, "lp:uniform:2", 12, 7)
    a = run_experiment(spec).to_json()
    b = run_experiment(spec, threads=4).to_json()
    assert a == b


def test_report_summary_recomputable_and_round_trips():
    spec = ExperimentSpec("random", 7, 10, "lp:uniform:2", 15, 3)
    rep = run_experiment(spec)
    assert len(rep.values) == len(rep.powers) == spec.trials
    powers = [decode_fraction(s) for s in rep.powers]
    assert decode_fraction(rep.summary["mean_power_exact"]) == sum(powers, Fraction(0)) / len(powers)
    assert rep.summary["mean_power"] == pytest.approx(statistics.fmean(map(float, powers)))
    assert rep.summary["max_power"] == max(map(float, powers))
    back = ExperimentReport.from_json(rep.to_json())
    assert back.to_json() == rep.to_json()
    assert rep.metadata["version"] and rep.spec["seed"] == 3
    assert {b["name"] for b in rep.bounds} == {"random", "linf"}


def test_single_trial_replay():
    spec = ExperimentSpec("random", 8, 16, "lp:uniform:2", 6, 11)
    rep = run_experiment(spec)
    from hamdisc.constructions import derive_seed, random_uniform_code
    from hamdisc.discrepancy import WeightVector, lp_power

    Z = random_uniform_code(8, 16, derive_seed(11, 4))
    assert encode_value(lp_power(WeightVector.uniform(8), Z, 2)) == rep.powers[4]


def test_antipodal_campaign_is_exactly_zero():
    rep = run_experiment(ExperimentSpec("antipodal", 7, 8, "hemisphere:2", 20, 5))
    assert all(v in (0, "0/1") for v in rep.values)
    assert rep.summary["max"] == 0


def test_jittered_campaign_attaches_jittered_bound():
    rep = run_experiment(ExperimentSpec("jittered", 10, 2**8, "lp:cutoff:1/5:2", 3, 1))
    names = [b["name"] for b in rep.bounds]
    assert "jittered" in names


def test_linf_campaign_has_no_powers():
    rep = run_experiment(ExperimentSpec("random", 6, 8, "linf:0-2", 4, 1))
    assert rep.powers == [] and "mean_power" not in rep.summary


def test_io_helpers():
    assert encode_value({"a": [Fraction(1, 3), 2.5, None]}) == {"a": ["1/3", 2.5, None]}
    assert decode_fraction("-7/4") == Fraction(-7, 4)
    assert fraction_fields(Fraction(3, 6)) == {"exact_numerator": "1", "exact_denominator": "2"}
    assert json.loads(dumps({"x": Fraction(1, 2)})) == {"x": "1/2"}
    assert to_csv(["a", "b"], [(1, Fraction(1, 2))]) == "a,b\n1,1/2\n"
    with pytest.raises(TypeError):
        encode_value(object())


def test_verify_quick_passes():
    results = verify_all("quick")
    assert results and all(r.passed for r in results), [r for r in results if not r.passed]


def test_verify_rejects_unknown_level():
    with pytest.raises(ValueError):
        verify_all("medium")


def test_perturbed_distance_kernel_is_caught(monkeypatch):
    real = disc.distance_kernel
    monkeypatch.setattr(disc, "distance_kernel", lambda n, w: real(n, w) + (w == 1))
    ok, detail = checks.uniform_identity(10, seed=1)
    assert not ok
    results = {r.name: r.passed for r in verify_all("quick")}
    assert results["uniform invariance identity"] is False
    assert results["hemisphere invariance identity"] is True
