import pytest

from lpcert import backends

BACKENDS = ["numpy"] + (["numba"] if backends.numba_available() else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param
