"""Numba vs numpy timings for the Legendre-Filon kernels.

Usage: python benchmarks/bench_filon.py [--repeat N]

The panel set is the real one: the band envelope at W=10, Lambda=1e3,
evaluated at the frequencies the time-domain average asks for.
"""

import argparse
import time

import numpy as np

from qineq import EnergyDensityModel, _kernels
from qineq.density import _DensityTrace


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if not _kernels.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    trace = _DensityTrace(EnergyDensityModel.tuned(1.0, 1.0, 10.0, 1e3))
    ct = trace.transform
    print(f"panels={ct.panels} order={ct.order}")

    for n_omega in (1_000, 20_000, 200_000):
        omegas = np.linspace(0.0, 2.0 * 60.0, n_omega)
        call = (omegas, ct.centers, ct.halfwidths, ct.coeffs)
        # Warm the JIT before timing.
        ref = _kernels.filon_cos_numpy(*call)
        got = _kernels.filon_cos_numba(*call)
        diff = float(np.max(np.abs(ref - got)))
        t_np = best_of(lambda: _kernels.filon_cos_numpy(*call), args.repeat)
        t_nb = best_of(lambda: _kernels.filon_cos_numba(*call), args.repeat)
        print(f"filon_cos  n_omega={n_omega:>7}  numpy {t_np * 1e3:9.2f} ms  numba {t_nb * 1e3:9.2f} ms"
              f"  speedup {t_np / t_nb:6.1f}x  max|diff| {diff:.1e}")

    x = np.geomspace(1e-3, 1e4, 500_000)
    _kernels.sph_jn_numba(x[:10], ct.order)
    t_np = best_of(lambda: _kernels.sph_jn_numpy(x, ct.order), args.repeat)
    t_nb = best_of(lambda: _kernels.sph_jn_numba(x, ct.order), args.repeat)
    diff = float(np.max(np.abs(_kernels.sph_jn_numpy(x, ct.order) - _kernels.sph_jn_numba(x, ct.order))))
    print(f"sph_jn     n_x={x.size:>11}  numpy {t_np * 1e3:9.2f} ms  numba {t_nb * 1e3:9.2f} ms"
          f"  speedup {t_np / t_nb:6.1f}x  max|diff| {diff:.1e}")


if __name__ == "__main__":
    main()
