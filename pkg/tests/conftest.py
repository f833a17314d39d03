import numpy as np
import pytest

from qspline import Quaternion


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_quaternion(rng, a_lo, a_hi, vmax=1.0):
    return Quaternion(rng.uniform(a_lo, a_hi), *rng.uniform(-vmax, vmax, 3))


def assert_quat_close(x, y, tol=1e-12):
    """Componentwise closeness for quaternions/biquaternions or 4-sequences."""
    xa = x.to_array() if hasattr(x, "to_array") else np.asarray(x)
    ya = y.to_array() if hasattr(y, "to_array") else np.asarray(y)
    assert np.allclose(xa, ya, rtol=tol, atol=tol), (x, y)
