from fractions import Fraction

import numpy as np
import pytest

from center_order import kernel
from center_order.catalog import eval_center
from center_order.decide import OrderKind
from center_order.decide.planar import exact_order_sign, order_program, sides_to_boxes
from center_order.families import ACUTE_MIN_A, SamplePlan, sample
from center_order.kernel import Builder, interval_signs

try:
    from center_order.kernel import _ckernel  # noqa: F401

    HAVE_EXT = True
except ImportError:
    HAVE_EXT = False


def _prog_square_minus_two():
    b = Builder(1)
    x = b.inputs[0]
    return b.build([x * x - 2, (x * x).sqrt(), -x])


def test_basic_enclosures():
    prog = _prog_square_minus_two()
    lo, hi = kernel.run(prog, np.array([[1.0], [2.0]]), np.array([[1.0], [2.0]]), backend="python")
    assert lo[0, 0] <= -1 <= hi[0, 0] and lo[1, 0] <= 2 <= hi[1, 0]
    assert lo[1, 1] <= 2 <= hi[1, 1]
    assert lo[0, 2] == -1 and hi[0, 2] == -1


def test_constants_are_enclosed():
    b = Builder(1)
    c = b.const(Fraction(1, 3))
    prog = b.build([c])
    lo, hi = kernel.run(prog, np.zeros((1, 1)), np.zeros((1, 1)), backend="python")
    assert Fraction(lo[0, 0]) < Fraction(1, 3) < Fraction(hi[0, 0])


def test_nan_becomes_whole_line():
    b = Builder(1)
    x = b.inputs[0]
    prog = b.build([x * x * x * x])
    lo, hi = kernel.run(prog, np.array([[-np.inf]]), np.array([[np.inf]]), backend="python")
    assert lo[0, 0] <= 0 and hi[0, 0] == np.inf


def test_interval_signs():
    s = interval_signs(np.array([1.0, -3.0, -1.0]), np.array([2.0, -1.0, 1.0]))
    assert list(s) == [1, -1, 0]


@pytest.mark.skipif(not HAVE_EXT, reason="compiled kernel not built")
def test_backends_agree(cat):
    samples = sample(ACUTE_MIN_A, SamplePlan(grid_density=5, random_count=500), key="kernel")
    boxes = sides_to_boxes(samples)
    for kind, m, n in [(OrderKind.SIDE, 20, 26), (OrderKind.VERTEX, 3, 9), (OrderKind.TRACE, 13, 16)]:
        prog = order_program(cat, kind, m, n, ACUTE_MIN_A)
        a = kernel.run(prog, *boxes, backend="python")
        b = kernel.run(prog, *boxes, backend="cython")
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def test_enclosures_are_sound(cat):
    # whenever the filter reports a strict sign it must match the exact sign
    samples = sample(ACUTE_MIN_A, SamplePlan(grid_density=6, random_count=300), key="sound")
    boxes = sides_to_boxes(samples)
    for kind, m, n in [(OrderKind.SIDE, 1, 2), (OrderKind.VERTEX, 5, 15), (OrderKind.TRACE, 4, 24)]:
        prog = order_program(cat, kind, m, n, ACUTE_MIN_A)
        lo, hi = kernel.run(prog, *boxes)
        sg = interval_signs(lo[:, 0], hi[:, 0])
        for i, s in enumerate(samples):
            if sg[i] != 0:
                assert exact_order_sign(cat, kind, m, n, s) == sg[i]


def test_input_boxes_contain_sides():
    samples = sample(ACUTE_MIN_A, SamplePlan(grid_density=4, random_count=100), key="boxes")
    lo, hi = sides_to_boxes(samples)
    for i, s in enumerate(samples):
        for j, v in enumerate((s.a, s.b, s.c)):
            assert Fraction(lo[i, j]) <= v <= Fraction(hi[i, j])


def test_backend_selected():
    assert kernel.BACKEND in ("cython", "python")
    assert eval_center  # imported module is usable alongside the kernel


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    env = dict(os.environ, CENTER_ORDER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import center_order.kernel as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
