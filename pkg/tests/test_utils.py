# coding: utf-8

import json
import math

import numpy as np
import pytest

from dampedpolariton.utils.exceptions import ConfigError, QuadratureError
from dampedpolariton.utils.helper import make_grid, resolve_threads
from dampedpolariton.utils.io import format_value, to_csv, to_json
from dampedpolariton.utils.quadrature import principal_value, quad, quad_complex, quad_log
from dampedpolariton.utils.timer import Timer


def test_format_value():
    assert format_value(1.0 / 3.0) == "0.333333333333"
    assert format_value(np.float64(2.5)) == "2.5"
    assert format_value(float("nan")) == "nan"
    assert format_value(True) is True
    assert format_value("lower") == "lower"


def test_to_csv_layout():
    text = to_csv([{"k": 0.5, "branch_label": "lower"}, {"k": 1.0}], columns=["k", "branch_label"])
    assert text == "k,branch_label\n0.5,lower\n1,\n"


def test_to_json_rounds_floats():
    doc = json.loads(to_json([{"x": 1.0 / 3.0, "ok": False}], meta={"n": 1}))
    assert doc["meta"] == {"n": 1}
    assert doc["records"] == [{"x": 0.333333333333, "ok": False}]


def test_make_grid():
    assert make_grid(0.0, 1.0, 5) == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])
    assert make_grid(1.0, 100.0, 3, "log") == pytest.approx([1.0, 10.0, 100.0])
    with pytest.raises(ConfigError):
        make_grid(1.0, 0.5, 3)
    with pytest.raises(ConfigError):
        make_grid(0.0, 1.0, 3, "log")
    with pytest.raises(ConfigError):
        make_grid(0.0, 1.0, 1)


def test_resolve_threads():
    assert resolve_threads(None) == 1
    assert resolve_threads(0) == 1
    assert resolve_threads(8) == 8


def test_quadrature_wrappers():
    assert quad(math.sin, 0.0, math.pi)[0] == pytest.approx(2.0, rel=1e-12)
    value, _ = quad_complex(lambda x: complex(x, x * x), 0.0, 1.0)
    assert value == pytest.approx(0.5 + 1j / 3.0, rel=1e-12)
    assert quad_log(lambda x: 1.0 / x, 1.0, 1e6)[0] == pytest.approx(math.log(1e6), rel=1e-10)
    with pytest.raises(ValueError):
        quad_log(lambda x: 1.0, 0.0, 1.0)


def test_quadrature_non_finite():
    with pytest.raises(QuadratureError):
        quad(lambda x: float("nan"), 0.0, 1.0)


def test_principal_value():
    assert principal_value(lambda x: 1.0, 1.0, 0.0, 2.0)[0] == pytest.approx(0.0, abs=1e-12)
    assert principal_value(lambda x: 1.0, 1.0, 0.0, 3.0)[0] == pytest.approx(math.log(2.0), rel=1e-10)
    with pytest.raises(ValueError):
        principal_value(lambda x: 1.0, 5.0, 0.0, 3.0)


def test_timer():
    timer = Timer()
    with timer:
        sum(range(1000))
    first = timer.diff
    with timer:
        sum(range(1000))
    assert first >= 0.0 and timer.diff >= 0.0
    assert timer.calls == 2
    assert timer.total_time == pytest.approx(first + timer.diff)
