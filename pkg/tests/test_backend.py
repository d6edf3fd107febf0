"""The numpy fallback must agree with the accelerated kernels."""

import json
import os
import subprocess
import sys

import numpy as np

from itmrenorm.backend import backend_name
from itmrenorm.gasket import RenderConfig, render
from itmrenorm.spectrum import lyapunov_estimate

SCRIPT = """
import json
from itmrenorm.backend import backend_name
from itmrenorm.gasket import RenderConfig, render
from itmrenorm.spectrum import lyapunov_estimate

r = lyapunov_estimate(steps=3000, trials=6, seed=11)
img = render(RenderConfig(depth=5, resolution=96))
print(json.dumps({
    "backend": backend_name(),
    "lambda1": r.lambda1,
    "lambda2": r.lambda2,
    "pixels": int(img.sum()),
    "checksum": int((img.cumsum() % 65521).sum()),
}))
"""


def run_with_backend(value):
    env = dict(os.environ)
    if value is None:
        env.pop("ITMRENORM_BACKEND", None)
    else:
        env["ITMRENORM_BACKEND"] = value
    out = subprocess.run(
        [sys.executable, "-c", SCRIPT],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def test_env_flag_selects_backend():
    assert run_with_backend("numpy")["backend"] == "numpy"


def test_backends_agree():
    numpy_result = run_with_backend("numpy")
    default_result = run_with_backend(None)
    assert abs(numpy_result["lambda1"] - default_result["lambda1"]) < 1e-9
    assert abs(numpy_result["lambda2"] - default_result["lambda2"]) < 1e-9
    assert numpy_result["pixels"] == default_result["pixels"]
    assert numpy_result["checksum"] == default_result["checksum"]


def test_result_records_backend():
    r = lyapunov_estimate(steps=1500, trials=2, seed=0)
    assert r.backend == backend_name()
