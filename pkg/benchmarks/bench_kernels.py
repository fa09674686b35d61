"""Timing comparison of the compiled and pure Python integration kernels.

Run as: python3 benchmarks/bench_kernels.py [n_steps]
Integrates each maneuver law from a fixed start with constant controls and
reports best-of-5 wall time per backend plus the speedup, after checking
that both backends produce the same samples.
"""
import sys
import time

import numpy as np

from saucer.kernels import pure

try:
    from saucer import _kernels as compiled
except ImportError:
    compiled = None

START = np.array([0.1, -0.2, 0.3, 0.4, -0.5])
CONTROLS = (0.8, -0.6, 0.5)
MODES = (("attacking", 0), ("landing", 1), ("g2-simple", 2), ("g2-strict", 3))


def best_of(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> int:
    n_steps = int(sys.argv[1]) if len(sys.argv) > 1 else 200_000
    duration = 1.0
    print(f"rk4_constant, {n_steps} steps, best of 5")
    print(f"{'mode':<12} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, mode in MODES:
        args = (mode, START, *CONTROLS, duration, n_steps)
        t_py = best_of(lambda: pure.rk4_constant(*args))
        if compiled is None:
            print(f"{name:<12} {t_py * 1e3:9.1f}ms {'n/a':>10} {'n/a':>8}")
            continue
        out_py = pure.rk4_constant(*args)
        out_c = compiled.rk4_constant(*args)
        drift = float(np.max(np.abs(out_py - np.asarray(out_c))))
        if drift > 1e-12:
            print(f"{name}: backend mismatch {drift:g}")
            return 1
        t_c = best_of(lambda: compiled.rk4_constant(*args))
        print(f"{name:<12} {t_py * 1e3:9.1f}ms {t_c * 1e3:9.1f}ms "
              f"{t_py / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
