import json
import os
import subprocess
import sys

import numpy as np
import pytest

from scfsec import _accel, kernels
from scfsec.baseline_rates import C

PROBE = """
import json
from scfsec import _accel, schemes, baseline_rates
from scfsec.core import ChannelConfig, EveChannelConfig
cfgs = [ChannelConfig(100, 100, 10), ChannelConfig(1000, 1000, 1000, 20.0)]
out = {"backend": _accel.BACKEND,
       "rb": [schemes.rb_rate(c) for c in cfgs], "lc": [schemes.lc_rate(c) for c in cfgs],
       "he": [baseline_rates.cf_rate_he(c) for c in cfgs],
       "eve": schemes.eve_rb_rate(EveChannelConfig(100, 100, 5, 1, 1, 0.7, 1.2))}
print(json.dumps(out))
"""


def probe(disable):
    env = dict(os.environ)
    env.pop("SCFSEC_DISABLE_NUMBA", None)
    if disable:
        env["SCFSEC_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", PROBE], capture_output=True, text=True, env=env, check=True)
    return json.loads(res.stdout)


def test_backends_agree():
    fast, slow = probe(False), probe(True)
    assert slow["backend"] == "numpy"
    for key in ("rb", "lc", "he"):
        assert fast[key] == pytest.approx(slow[key], abs=1e-9)
    assert fast["eve"] == pytest.approx(slow["eve"], abs=1e-9)


@pytest.mark.skipif(not _accel.HAS_NUMBA, reason="numba disabled")
def test_py_func_matches_compiled():
    params = np.array([100.0, 40.0])
    a1s, a2s = np.array([1, 1, 2]), np.array([1, -1, 1])
    args = (kernels.PLAIN, a1s, a2s, params, kernels.GRID_LO, kernels.GRID_HI,
            kernels.GRID_POINTS, kernels.KEEP_BRACKETS, kernels.RATIO_TOL)
    xs, vs, _ = kernels.search_pairs(*args)
    xs2, vs2, _ = kernels.search_pairs.py_func(*args)
    np.testing.assert_allclose(vs, vs2, atol=1e-12)
    np.testing.assert_allclose(xs, xs2, atol=1e-8)
    he = kernels.he_search(100.0, 100.0, 100.0, 0.0, 64, 30.0, 1e-8, 50)
    he2 = kernels.he_search.py_func(100.0, 100.0, 100.0, 0.0, 64, 30.0, 1e-8, 50)
    assert he[2] == pytest.approx(he2[2], abs=1e-12)
    assert he[2] == pytest.approx(0.5 * np.log2(2 + 0.01 + 100) - 1, abs=1e-9)


def test_computation_rates_kernel():
    ra, rb = kernels.computation_rates(1, 1, np.array([1.0, 0.5]), 100.0, 100.0)
    assert ra[0] == pytest.approx(0.5 * np.log2(100 * 201 / 200), abs=1e-12)
    assert rb[0] == ra[0]
    assert ra[1] <= C(100) and rb[1] <= C(100)
