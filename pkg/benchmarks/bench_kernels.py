"""Compare the numba kernels with their numpy fallbacks.

Runs each kernel on the same inputs in both flavours, checks the outputs
agree and prints timings. A second section times a full entropy computation
in subprocesses with and without GARSIA_DISABLE_NUMBA.

    python benchmarks/bench_kernels.py [--repeat R] [--n N]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from garsia import kernels
from garsia._accel import USE_NUMBA


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def merge_inputs(rng, size, m=3):
    keys = np.unique(rng.integers(0, 50 * size, size=size)).astype(np.int64)
    w = rng.integers(1, 100, size=keys.size).astype(np.int64)
    offsets = np.sort(rng.choice(10 * size, size=m, replace=False)).astype(np.int64)
    wj = np.ones(m, dtype=np.int64)
    return keys, w, offsets, wj


def sweep_inputs(rng, atoms):
    # a realistic sweep: a random measure on rationals with denominator 997
    from fractions import Fraction
    from garsia.measures import DiscreteDistribution, _sweep_inputs

    pts = rng.choice(200 * atoms, size=atoms, replace=False)
    ws = rng.integers(1, 50, size=atoms)
    tot = int(ws.sum())
    nu = DiscreteDistribution({Fraction(int(x), 997): Fraction(int(w), tot) for x, w in zip(pts, ws)})
    return _sweep_inputs(nu, Fraction(7, 3))


def aberth_inputs(rng, degree):
    # coefficients +-1 keep all roots well conditioned near the unit circle
    coeffs = rng.choice([-1.0, 1.0], size=degree + 1).astype(np.complex128)
    r = 1 + np.max(np.abs(coeffs[:-1]))
    z0 = r * np.exp(2j * np.pi * (np.arange(degree) + 0.25) / degree)
    return coeffs, z0, 500, 1e-14


def kernel_section(repeat):
    rng = np.random.default_rng(0)
    cases = [
        ("merge_level", kernels.merge_level_numba, kernels.merge_level_numpy,
         merge_inputs(rng, 1_000_000)),
        ("sweep_integral", kernels.sweep_integral_numba, kernels.sweep_integral_numpy,
         sweep_inputs(rng, 20_000)),
        ("aberth", kernels.aberth_numba, kernels.aberth_numpy, aberth_inputs(rng, 60)),
    ]
    print(f"{'kernel':<16}{'numba s':>12}{'numpy s':>12}{'speedup':>10}  agree")
    for name, fast, slow, args in cases:
        fast(*args)  # compile
        t_fast, out_fast = best_of(lambda: fast(*args), repeat)
        t_slow, out_slow = best_of(lambda: slow(*args), repeat)
        if name == "merge_level":
            agree = all(np.array_equal(a, b) for a, b in zip(out_fast, out_slow))
        elif name == "aberth":
            agree = bool(np.max(np.min(np.abs(out_fast[:, None] - out_slow[None, :]), axis=1)) < 1e-8)
        else:
            agree = abs(out_fast - out_slow) < 1e-9
        print(f"{name:<16}{t_fast:>12.4f}{t_slow:>12.4f}{t_slow / t_fast:>10.1f}  {agree}")


SNIPPET = """
import time
from fractions import Fraction
from garsia import IfsSpec, STANDARD_FORMS, garsia_entropy, BACKEND
spec = IfsSpec.uniform(STANDARD_FORMS, Fraction(1, 2), Fraction(1, 3))
garsia_entropy(spec, 4)
t0 = time.perf_counter()
h = garsia_entropy(spec, {n})
print(BACKEND, repr(h), time.perf_counter() - t0)
"""


def end_to_end_section(n):
    print(f"\nfull entropy, (1/2, 1/3), n = {n}")
    for disable in ("0", "1"):
        env = dict(os.environ, GARSIA_DISABLE_NUMBA=disable)
        out = subprocess.run([sys.executable, "-c", SNIPPET.format(n=n)], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:<6} entropy={out[1]}  {float(out[2]):.3f} s")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--n", type=int, default=14)
    args = parser.parse_args()
    if not USE_NUMBA:
        print("numba disabled; both columns time the same code path")
    kernel_section(args.repeat)
    end_to_end_section(args.n)


if __name__ == "__main__":
    main()
