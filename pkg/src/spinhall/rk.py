"""Dormand-Prince 5(4) embedded Runge-Kutta step and step-size control."""

import numpy as np

C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A_ROWS = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
A = np.zeros((7, 7))
for _i, _row in enumerate(_A_ROWS):
    A[_i, :len(_row)] = _row
B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
               187 / 2100, 1 / 40])
E = B5 - B4

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 5.0


def dopri_step(f, t, y, h, k1):
    """One step from ``(t, y)`` with slope ``k1 = f(t, y)``.

    Returns ``(y_new, err, k_last)``; ``k_last = f(t + h, y_new)`` is reused
    as the next ``k1`` (first-same-as-last).
    """
    k = np.empty((7, len(y)))
    k[0] = k1
    for i in range(1, 7):
        k[i] = f(t + C[i] * h, y + h * (A[i, :i] @ k[:i]))
    # The last stage is evaluated at the 5th-order solution.
    return y + h * (A[6, :6] @ k[:6]), h * (E @ k), k[6]


def error_norm(err, y, y_new, rtol, atol):
    scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
    return float(np.sqrt(np.mean((err / scale) ** 2)))


def next_step(h, norm):
    if norm == 0.0:
        return h * MAX_FACTOR
    return h * min(MAX_FACTOR, max(MIN_FACTOR, SAFETY * norm ** -0.2))
