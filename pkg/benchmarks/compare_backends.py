"""Time the hot kernels under the numba backend and the numpy fallback.

The backend is chosen at import time from ITMRENORM_BACKEND, so each
configuration runs in a fresh subprocess.  Usage:

    python benchmarks/compare_backends.py [--steps N] [--trials N] [--depth N] [--size N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = """
import json, sys, time
steps, trials, depth, size = json.loads(sys.argv[1])

from itmrenorm.backend import backend_name
from itmrenorm.gasket import RenderConfig, render
from itmrenorm.spectrum import lyapunov_estimate

# warm-up pass compiles the numba kernels so timings measure steady state
lyapunov_estimate(steps=2000, trials=2, seed=0)
render(RenderConfig(depth=6, resolution=256))

t0 = time.perf_counter()
r = lyapunov_estimate(steps=steps, trials=trials, seed=0)
t_walk = time.perf_counter() - t0

t0 = time.perf_counter()
img = render(RenderConfig(depth=depth, resolution=size))
t_render = time.perf_counter() - t0

print(json.dumps({
    "backend": backend_name(),
    "walk_seconds": t_walk,
    "render_seconds": t_render,
    "lambda1": r.lambda1,
    "pixels": int(img.sum()),
}))
"""


def run(backend, params):
    env = dict(os.environ)
    if backend is None:
        env.pop("ITMRENORM_BACKEND", None)
    else:
        env["ITMRENORM_BACKEND"] = backend
    out = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(params)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=200_000)
    parser.add_argument("--trials", type=int, default=16)
    parser.add_argument("--depth", type=int, default=14)
    parser.add_argument("--size", type=int, default=2048)
    args = parser.parse_args()
    params = [args.steps, args.trials, args.depth, args.size]

    results = [run(None, params), run("numpy", params)]
    if results[0]["backend"] == results[1]["backend"]:
        print("numba is not installed; both runs used the numpy fallback")

    print(
        "%-8s %14s %14s %12s %10s"
        % ("backend", "walk (s)", "render (s)", "lambda1", "pixels")
    )
    for r in results:
        print(
            "%-8s %14.3f %14.3f %12.6f %10d"
            % (r["backend"], r["walk_seconds"], r["render_seconds"], r["lambda1"], r["pixels"])
        )

    base, fallback = results
    if base["backend"] != fallback["backend"]:
        if (
            abs(base["lambda1"] - fallback["lambda1"]) > 1e-9
            or base["pixels"] != fallback["pixels"]
        ):
            print("WARNING: backends disagree on results")
        else:
            print(
                "speedup: walk x%.1f, render x%.1f"
                % (
                    fallback["walk_seconds"] / base["walk_seconds"],
                    fallback["render_seconds"] / base["render_seconds"],
                )
            )


if __name__ == "__main__":
    main()
