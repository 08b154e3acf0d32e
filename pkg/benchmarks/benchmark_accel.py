"""Compare the numba-accelerated kernels against the pure-numpy fallback.

The fallback is selected by the ORTHOKIT_NO_NUMBA environment variable,
which must be set before the package is imported, so each configuration
runs in its own subprocess.

Usage: python benchmarks/benchmark_accel.py [--samples N] [--repeat R]
"""
import argparse
import json
import os
import subprocess
import sys

_WORKER = r"""
import json, sys, time
import orthokit
from orthokit.mcflow import FlowConfig, estimate_moments
from orthokit.quadrature import F_k_numeric, _node_cache

samples = int(sys.argv[1])
repeat = int(sys.argv[2])

# warm up (jit compilation / node tables), then time
F_k_numeric(0.5, 2)
estimate_moments(FlowConfig(orthokit.build_pants(1.0, 1.0, 1.0), 100))

results = {"have_numba": orthokit.HAVE_NUMBA}

t0 = time.perf_counter()
for _ in range(repeat):
    for a in (0.1, 0.3, 0.5, 0.7, 0.9):
        F_k_numeric(a, 2)
results["quadrature_s"] = (time.perf_counter() - t0) / repeat

pants = orthokit.build_pants(1.0, 1.0, 1.0)
t0 = time.perf_counter()
for _ in range(repeat):
    estimate_moments(FlowConfig(pants, samples, seed=0))
results["mcflow_s"] = (time.perf_counter() - t0) / repeat

print(json.dumps(results))
"""


def run_config(no_numba: bool, samples: int, repeat: int) -> dict:
    env = dict(os.environ)
    if no_numba:
        env["ORTHOKIT_NO_NUMBA"] = "1"
    else:
        env.pop("ORTHOKIT_NO_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", _WORKER,
                          str(samples), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=20000,
                        help="Monte Carlo samples per run")
    parser.add_argument("--repeat", type=int, default=3,
                        help="timed repetitions (best practice: >= 3)")
    args = parser.parse_args()

    numba = run_config(False, args.samples, args.repeat)
    numpy_ = run_config(True, args.samples, args.repeat)
    if not numba["have_numba"]:
        print("warning: numba unavailable; both rows use the numpy path")

    print(f"{'benchmark':<28}{'numba [s]':>12}{'numpy [s]':>12}{'speedup':>10}")
    for key, label in (("quadrature_s", "F_k tanh-sinh (5 evals)"),
                       ("mcflow_s", f"MC flow ({args.samples} samples)")):
        a, b = numba[key], numpy_[key]
        print(f"{label:<28}{a:>12.4f}{b:>12.4f}{b / a:>10.2f}x")


if __name__ == "__main__":
    main()
