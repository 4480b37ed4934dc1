"""Pure numpy interval evaluator (fallback for the compiled kernel).

Every operation is rounded outward by one ulp with ``nextafter``, which
encloses the round-to-nearest error of IEEE binary64 arithmetic.
"""

from __future__ import annotations

import numpy as np

from .program import OP_ADD, OP_CONST, OP_INPUT, OP_MUL, OP_NEG, OP_SQR, OP_SQRT, OP_SUB

_NINF = -np.inf
_PINF = np.inf


def _down(x):
    return np.nextafter(x, _NINF)


def _up(x):
    return np.nextafter(x, _PINF)


def _fix_nan(lo, hi):
    bad = np.isnan(lo) | np.isnan(hi)
    if bad.any():
        lo = np.where(bad, _NINF, lo)
        hi = np.where(bad, _PINF, hi)
    return lo, hi


def eval_intervals(ops, arg1, arg2, consts, outputs, in_lo, in_hi):
    """Evaluate a program on a batch of input boxes.

    ``in_lo``/``in_hi`` have shape (n, n_inputs); returns two arrays of shape
    (n, len(outputs)).
    """
    in_lo = np.asarray(in_lo, dtype=np.float64)
    in_hi = np.asarray(in_hi, dtype=np.float64)
    n = in_lo.shape[0]
    lo = [None] * len(ops)
    hi = [None] * len(ops)
    with np.errstate(all="ignore"):
        for i in range(len(ops)):
            op = ops[i]
            a = arg1[i]
            b = arg2[i]
            if op == OP_INPUT:
                lo[i], hi[i] = in_lo[:, a], in_hi[:, a]
                continue
            if op == OP_CONST:
                lo[i] = np.full(n, consts[i, 0])
                hi[i] = np.full(n, consts[i, 1])
                continue
            xl, xh = lo[a], hi[a]
            if op == OP_ADD:
                rl, rh = _down(xl + lo[b]), _up(xh + hi[b])
            elif op == OP_SUB:
                rl, rh = _down(xl - hi[b]), _up(xh - lo[b])
            elif op == OP_MUL:
                yl, yh = lo[b], hi[b]
                p1, p2, p3, p4 = xl * yl, xl * yh, xh * yl, xh * yh
                prods = np.stack([p1, p2, p3, p4])
                rl = _down(np.min(prods, axis=0))
                rh = _up(np.max(prods, axis=0))
                bad = np.isnan(prods).any(axis=0)
                if bad.any():
                    rl = np.where(bad, _NINF, rl)
                    rh = np.where(bad, _PINF, rh)
            elif op == OP_NEG:
                rl, rh = -xh, -xl
            elif op == OP_SQR:
                l2, h2 = xl * xl, xh * xh
                pos = xl >= 0
                neg = xh <= 0
                rl = np.where(pos, _down(l2), np.where(neg, _down(h2), 0.0))
                rh = _up(np.where(pos, h2, np.where(neg, l2, np.maximum(l2, h2))))
                rl = np.maximum(rl, 0.0)
            elif op == OP_SQRT:
                bad = xh < 0
                rl = np.maximum(_down(np.sqrt(np.maximum(xl, 0.0))), 0.0)
                rh = _up(np.sqrt(np.maximum(xh, 0.0)))
                rl = np.where(bad, _NINF, rl)
                rh = np.where(bad, _PINF, rh)
            else:
                raise ValueError(f"unknown opcode {op}")
            lo[i], hi[i] = _fix_nan(rl, rh)
    out_lo = np.empty((n, len(outputs)))
    out_hi = np.empty((n, len(outputs)))
    for j, r in enumerate(outputs):
        out_lo[:, j] = lo[r]
        out_hi[:, j] = hi[r]
    return out_lo, out_hi
