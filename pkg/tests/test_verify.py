import pytest

from adelic_weil import serialize
from adelic_weil.errors import SchemaError
from adelic_weil.verify import SUITES, VerifyConfig, run_suite, trial_rng


def test_config_validation():
    with pytest.raises(ValueError):
        VerifyConfig("nosuch")
    with pytest.raises(ValueError):
        VerifyConfig("theta", trials=0)
    with pytest.raises(ValueError):
        VerifyConfig("theta", tol=0.0)


def test_config_from_json():
    assert VerifyConfig.from_json('{"suite": "poisson", "n": 2}') == VerifyConfig("poisson", n=2)
    with pytest.raises(SchemaError) as info:
        VerifyConfig.from_json('{"suite": "poisson",\n "n": }')
    assert info.value.path == "line 2"
    with pytest.raises(SchemaError) as info:
        VerifyConfig.from_json('{"suite": "poisson", "colour": 1}')
    assert info.value.path == "/colour"


def test_trial_streams_are_stable():
    assert trial_rng("covariance", 7, 0).random() == trial_rng("covariance", 7, 0).random()
    assert trial_rng("covariance", 7, 0).random() != trial_rng("covariance", 7, 1).random()


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_every_suite_passes_small(suite):
    report = run_suite(VerifyConfig(suite, n=1, trials=3, seed=11))
    assert report.ok, report.failures
    again = run_suite(VerifyConfig(suite, n=1, trials=3, seed=11))
    assert serialize.dumps(report.to_json()) == serialize.dumps(again.to_json())
