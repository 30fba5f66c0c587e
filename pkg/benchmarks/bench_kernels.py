"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py --q 3 4 5 --repeat 3
"""

import argparse
import time

import numpy as np

from segre222 import kernels
from segre222.gf import field_from_order
from segre222.linalg import all_points, num_points
from segre222.orbits import classify_all, generator_permutations


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--q", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    backends = kernels.available_backends()
    print(f"{'q':>3} {'points':>8} {'kernel':>10} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for q in args.q:
        F = field_from_order(q)
        coords = all_points(q)
        rows = {
            "images": lambda be: generator_permutations(F, args.threads, be, coords),
            "classify": lambda be: classify_all(F, args.threads, be, coords),
        }
        perms = generator_permutations(F, coords=coords)
        rows["orbit_ids"] = lambda be: kernels.orbit_ids(perms, be)
        for name, fn in rows.items():
            timings, results = [], []
            for b in backends:
                t, out = best_of(lambda: fn(kernels.get_backend(b)), args.repeat)
                timings.append(t)
                results.append(out)
            if name == "classify":
                assert all(np.array_equal(r.label, results[0].label) for r in results)
            else:
                assert all(np.array_equal(r, results[0]) for r in results)
            speed = f"{timings[-1] / timings[0]:8.1f}x" if len(timings) > 1 else ""
            cells = " ".join(f"{t:9.3f}s" for t in timings)
            print(f"{q:>3} {num_points(q):>8} {name:>10} {cells} {speed}")


if __name__ == "__main__":
    main()
