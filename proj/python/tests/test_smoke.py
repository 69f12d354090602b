import math

import pytest

import orlicz

EXAMPLE = "family = example_1_1\nconditions = A2old(h=sigma), A2phi(search)\nexpect = holds, violated\n"


def test_version_and_gallery():
    assert orlicz.__version__ == "0.3.0"
    names = orlicz.gallery()
    assert "orlicz_power" in names and "example_1_1" in names


def test_family_values():
    square = orlicz.family("family = orlicz_power\nfamily.p = 2\n")
    assert square.strong
    assert square([0.1, 0.2], 3.0) == pytest.approx(9.0)
    assert square.left_inverse([0.0, 0.0], 9.0) == pytest.approx(3.0, rel=1e-10)
    # (t^2)* = t^2/4
    assert square.conjugate([0.0, 0.0], 2.0) == pytest.approx(1.0, rel=1e-9)


def test_punctured_example():
    phi = orlicz.family("family = example_1_1\n")
    assert phi([0.25, 0.0], 2.0) == pytest.approx(16.0)
    assert phi.left_inverse([0.25, 0.0], 1.0) == pytest.approx(0.5, rel=1e-10)
    with pytest.raises(orlicz.DomainError):
        phi([0.0, 0.0], 1.0)
    with pytest.raises(ValueError):
        phi([2.0, 0.0], 1.0)


def test_step_family_is_infinite_past_threshold():
    step = orlicz.family("family = step\nfamily.threshold = 1\n")
    assert step([0.0, 0.0], 0.5) == 0.0
    assert math.isinf(step([0.0, 0.0], 1.5))
    assert step.left_inverse([0.0, 0.0], 3.0) == pytest.approx(1.0)


def test_check_counterexample():
    report = orlicz.check(EXAMPLE)
    assert report["exit_code"] == 0
    first, second = (c["report"] for c in report["conditions"])
    assert first["verdict"] == "holds_on_samples" and first["vacuous"]
    assert second["verdict"] == "violated"
    assert second["worst_tuple"]["arg_name"] == "t"


def test_check_mismatch_exit_code():
    code, log = orlicz.run("check", EXAMPLE.replace("holds, violated", "holds, holds"))
    assert code == 1
    assert "violated" in log


def test_usage_errors():
    code, log = orlicz.run("check", "family.p = abc\n")
    assert code == 2
    assert "<string>:1: field 'family.p'" in log
    with pytest.raises(orlicz.UsageError):
        orlicz.check("famly = x\n")
    with pytest.raises(ValueError):
        orlicz.family("family = cubic\n")


def test_density_zero():
    result = orlicz.density("function = zero\ngrid.n = 256\n")
    assert result["exit_code"] == 0
    assert result["result"]["passed"]
    assert all(row["norm"] == 0.0 for row in result["result"]["rows"])
