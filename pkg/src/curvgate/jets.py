"""Second-order forward-mode dual numbers.

A :class:`Jet` carries a value together with its gradient and Hessian with
respect to a fixed set of seed variables.  Arithmetic propagates all three
exactly (up to roundoff), which is the algebra of nested dual numbers
``(a + b e1) + (c + d e1) e2`` with every direction vectorised at once.

Metric component functions are written against the helpers in this module
(``sin``, ``cos``, ``sqrt`` ...) so the same code runs on plain floats and on
jets.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


class Jet:
    __slots__ = ("value", "grad", "hess")
    __array_priority__ = 1000

    def __init__(self, value: float, grad: np.ndarray, hess: np.ndarray):
        self.value = float(value)
        self.grad = grad
        self.hess = hess

    @classmethod
    def variables(cls, values: Sequence[float]) -> list[Jet]:
        """Seed one jet per coordinate: d x_i / d x_j = delta_ij."""
        n = len(values)
        eye = np.eye(n)
        zero = np.zeros((n, n))
        return [cls(v, eye[i].copy(), zero) for i, v in enumerate(values)]

    def _const(self, c: float) -> Jet:
        return Jet(c, np.zeros_like(self.grad), np.zeros_like(self.hess))

    def __repr__(self) -> str:
        return f"Jet({self.value!r}, grad={self.grad!r})"

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value + other.value, self.grad + other.grad,
                       self.hess + other.hess)
        return Jet(self.value + other, self.grad, self.hess)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.value, -self.grad, -self.hess)

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(self.value - other.value, self.grad - other.grad,
                       self.hess - other.hess)
        return Jet(self.value - other, self.grad, self.hess)

    def __rsub__(self, other):
        return Jet(other - self.value, -self.grad, -self.hess)

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self, other
            gg = np.outer(a.grad, b.grad)
            return Jet(a.value * b.value,
                       a.value * b.grad + b.value * a.grad,
                       a.value * b.hess + b.value * a.hess + gg + gg.T)
        other = float(other)
        return Jet(self.value * other, self.grad * other, self.hess * other)

    __rmul__ = __mul__

    def reciprocal(self) -> Jet:
        v = self.value
        if v == 0.0:
            raise ZeroDivisionError("jet division by zero")
        inv = 1.0 / v
        return self._chain(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return self * (1.0 / float(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * float(other)

    def __pow__(self, k):
        if isinstance(k, Jet):
            return exp(k * log(self))
        k = float(k)
        if k == int(k) and k >= 0:
            out = self._const(1.0)
            base = self
            n = int(k)
            while n:
                if n & 1:
                    out = out * base
                base = base * base
                n >>= 1
            return out
        v = self.value
        return self._chain(v ** k, k * v ** (k - 1), k * (k - 1) * v ** (k - 2))

    def _chain(self, f0: float, f1: float, f2: float) -> Jet:
        g = self.grad
        return Jet(f0, f1 * g, f1 * self.hess + f2 * np.outer(g, g))

    # comparisons act on the value only
    def __lt__(self, other):
        return self.value < _val(other)

    def __le__(self, other):
        return self.value <= _val(other)

    def __gt__(self, other):
        return self.value > _val(other)

    def __ge__(self, other):
        return self.value >= _val(other)

    def __float__(self):
        return self.value


def _val(x) -> float:
    return x.value if isinstance(x, Jet) else float(x)


def sin(x):
    if isinstance(x, Jet):
        s, c = math.sin(x.value), math.cos(x.value)
        return x._chain(s, c, -s)
    return math.sin(x)


def cos(x):
    if isinstance(x, Jet):
        s, c = math.sin(x.value), math.cos(x.value)
        return x._chain(c, -s, -c)
    return math.cos(x)


def sqrt(x):
    if isinstance(x, Jet):
        r = math.sqrt(x.value)
        return x._chain(r, 0.5 / r, -0.25 / (r * x.value))
    return math.sqrt(x)


def exp(x):
    if isinstance(x, Jet):
        e = math.exp(x.value)
        return x._chain(e, e, e)
    return math.exp(x)


def log(x):
    if isinstance(x, Jet):
        v = x.value
        return x._chain(math.log(v), 1.0 / v, -1.0 / (v * v))
    return math.log(x)


def value(x) -> float:
    return _val(x)


def unpack(matrix: Sequence[Sequence], dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Split an m x m matrix of jets (or constants) into g, dg, ddg arrays.

    ``dg[a, i, j] = d_a g_ij`` and ``ddg[a, b, i, j] = d_a d_b g_ij``.
    """
    m = len(matrix)
    g = np.zeros((m, m))
    dg = np.zeros((dim, m, m))
    ddg = np.zeros((dim, dim, m, m))
    for i, row in enumerate(matrix):
        for j, entry in enumerate(row):
            if isinstance(entry, Jet):
                g[i, j] = entry.value
                dg[:, i, j] = entry.grad
                ddg[:, :, i, j] = entry.hess
            else:
                g[i, j] = float(entry)
    return g, dg, ddg
