import numpy as np
import pytest

from lpcert import ValidationParams, gen_hypercube, validate_seq
from lpcert.backends import BACKEND_ENV, numba_available, resolve_backend, scan_fn


def test_env_var_selects_numpy(monkeypatch):
    monkeypatch.setenv(BACKEND_ENV, "numpy")
    assert resolve_backend() == "numpy"


def test_argument_beats_env(monkeypatch):
    monkeypatch.setenv(BACKEND_ENV, "numpy")
    if numba_available():
        assert resolve_backend("numba") == "numba"


def test_auto_prefers_numba(monkeypatch):
    monkeypatch.delenv(BACKEND_ENV, raising=False)
    expected = "numba" if numba_available() else "numpy"
    assert resolve_backend() == expected
    assert resolve_backend("auto") == expected


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        resolve_backend("fortran")


def test_scan_fn_distinct_callables():
    if numba_available():
        assert scan_fn("numba") is not scan_fn("numpy")


def test_env_var_drives_validation(monkeypatch):
    p, opt = gen_hypercube(3, 10.0)
    monkeypatch.setenv(BACKEND_ENV, "numpy")
    via_env = validate_seq(p, opt - 1.0, ValidationParams())
    explicit = validate_seq(p, opt - 1.0, ValidationParams(), backend="numpy")
    assert via_env.witness.k == explicit.witness.k
    assert np.array_equal(via_env.witness.point, explicit.witness.point)
