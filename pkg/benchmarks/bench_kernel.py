"""Compare the compiled and the numpy interval kernels on a real comparison program.

    python benchmarks/bench_kernel.py [--samples N] [--repeat R]
"""

import argparse
import time

import numpy as np

from center_order import kernel
from center_order.catalog import default_catalog
from center_order.decide import OrderKind
from center_order.decide.planar import order_program, sides_to_boxes
from center_order.families import ACUTE_MIN_A, SamplePlan, sample


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=10000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--pair", default="20,26", help="two center indices")
    args = ap.parse_args()

    m, n = (int(x) for x in args.pair.split(","))
    cat = default_catalog()
    prog = order_program(cat, OrderKind.SIDE, m, n, ACUTE_MIN_A)
    boxes = sides_to_boxes(sample(ACUTE_MIN_A, SamplePlan(grid_density=0, random_count=args.samples), key="bench"))
    print(f"program: {len(prog.ops)} registers, {len(boxes[0])} boxes, pair X{m}/X{n}")

    t_py, (lo_py, hi_py) = timed(lambda: kernel.run(prog, *boxes, backend="python"), args.repeat)
    print(f"python  {t_py * 1e3:9.2f} ms")
    try:
        t_c, (lo_c, hi_c) = timed(lambda: kernel.run(prog, *boxes, backend="cython"), args.repeat)
    except ImportError:
        print("cython  extension not built")
        return
    print(f"cython  {t_c * 1e3:9.2f} ms   speedup {t_py / t_c:.1f}x")
    same = np.array_equal(lo_py, lo_c) and np.array_equal(hi_py, hi_c)
    print("outputs identical" if same else "outputs differ")


if __name__ == "__main__":
    main()
