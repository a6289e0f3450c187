import json

import dfh_py


def test_heights():
    assert dfh_py.multiplicative_height("-3/7") == "7"
    assert dfh_py.multiplicative_height("10/4") == "5"
    assert abs(dfh_py.log_height("2") - 0.6931471805599453) < 1e-12
    assert dfh_py.affine_height(["1", "1/2", "3"]) == "6"


def test_mahler():
    lo, hi = dfh_py.log_mahler_measure(["-2", "1"])  # x - 2
    assert lo <= 0.6931471805599453 <= hi
    lo, hi = dfh_py.algebraic_height(["-1", "-1", "1"])  # golden ratio
    phi_half = 0.2406059125349054  # log(phi)/2
    assert lo <= phi_half <= hi
    assert hi - lo < 1e-6


def test_run_job_generate():
    job = {
        "system": {
            "m": 1,
            "equations": [[[{"idx": [0], "val": "-1"}], [{"idx": [0], "val": "1"}]]],
        },
        "seeds": {"0": "1"},
    }
    rep = json.loads(dfh_py.run_job("generate", json.dumps(job), T=6))
    assert rep["terms"] == ["1", "1", "1/2", "1/6", "1/24", "1/120"]


def test_run_job_certify():
    job = {
        "system": {
            "m": 1,
            "equations": [
                [
                    [{"idx": [0], "val": "-1"}],
                    [{"idx": [0], "val": "1"}, {"idx": [1], "val": "-1"}],
                ]
            ],
        },
        "seeds": {"0": "1"},
    }
    rep = json.loads(dfh_py.run_job("certify-rational", json.dumps(job), T=20))
    assert rep["verdict"] == "certified-rational"
    assert rep["witnesses"] == [["1"], ["1", "-1"]]


def test_bad_input_raises():
    try:
        dfh_py.run_job("generate", "not json", T=5)
    except ValueError as e:
        assert "input" in str(e)
    else:
        raise AssertionError("expected ValueError")
