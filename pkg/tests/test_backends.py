import json
import os
import subprocess
import sys

import numpy as np
import pytest

from ganova import _accel, adjust, special
from ganova.adjust import METHODS

from conftest import TABLE4


def test_betainc_kernels_agree():
    rng = np.random.default_rng(11)
    x = rng.uniform(0, 1, 2000)
    a = rng.uniform(0.1, 50, 2000)
    b = rng.uniform(0.1, 50, 2000)
    for upper in (False, True):
        nb = special._betainc_array_nb(x, a, b, upper, 1e-15, 10000)
        npv = special._betainc_array_np(x, a, b, upper, 1e-15, 10000)
        np.testing.assert_allclose(nb, npv, rtol=1e-12, atol=1e-300)  # lgamma differs by ulps between backends


@pytest.mark.parametrize("method", METHODS)
def test_adjust_kernels_agree(method):
    rng = np.random.default_rng(12)
    P = rng.uniform(0, 1, (300, 7)) ** 3
    code = METHODS.index(method)
    np.testing.assert_allclose(adjust._adjust_rows_nb(P, code), adjust._adjust_rows_np(P, code), atol=1e-15)


_SCRIPT = """
import json, sys
from ganova import _accel
from ganova.dataset import read_csv
from ganova.simultaneous import run_ganova
from ganova.simulate import SimConfig, simulate_type1
r = run_ganova(read_csv(sys.argv[1])).as_dict()
r["backend"] = _accel.backend()
r["sim"] = simulate_type1(SimConfig(4, 6, reps=400, seed=5)).rejections
print(json.dumps(r))
"""


def _run(flag):
    env = dict(os.environ, GANOVA_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", _SCRIPT, str(TABLE4)], env=env, check=True,
                         capture_output=True, text=True).stdout
    return json.loads(out)


@pytest.mark.slow
def test_backends_give_same_answers():
    fast, slow = _run("0"), _run("1")
    assert fast["backend"] == "numba"
    assert slow["backend"] == "numpy"
    assert fast["sim"] == slow["sim"]
    assert fast["flags"] == slow["flags"]
    for key in ("k", "p_raw", "p_adj", "k_adj", "dl_k"):
        np.testing.assert_allclose(fast[key], slow[key], rtol=1e-12)


def test_default_backend():
    assert _accel.backend() == ("numba" if _accel.USE_NUMBA else "numpy")
