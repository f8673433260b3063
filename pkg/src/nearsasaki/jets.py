"""Truncated multivariate Taylor jets (order <= 2) over numpy arrays.

A :class:`Jet` carries the value of an array-valued field at a point together
with its first and (optionally) second partial derivatives with respect to
the ``d`` chart coordinates.  Derivative axes are always trailing::

    val  : S
    grad : S + (d,)
    hess : S + (d, d)      (None for an order-1 jet)

Arithmetic truncates to the smaller order of the operands, so the product of
an order-2 metric jet with an order-1 Christoffel jet is an order-1 jet.
"""

from __future__ import annotations

import string
from typing import Callable, Sequence

import numpy as np


class Jet:
    __slots__ = ("val", "grad", "hess")
    __array_priority__ = 100

    def __init__(self, val, grad=None, hess=None):
        self.val = np.asarray(val, dtype=float)
        self.grad = None if grad is None else np.asarray(grad, dtype=float)
        self.hess = None if hess is None else np.asarray(hess, dtype=float)
        if self.hess is not None and self.grad is None:
            raise ValueError("a second-order jet needs a gradient")

    # -- construction -----------------------------------------------------
    @classmethod
    def variables(cls, x: Sequence[float], order: int = 2) -> "Jet":
        """Coordinate functions x^i seeded at the point ``x``."""
        x = np.asarray(x, dtype=float)
        d = x.shape[0]
        grad = np.eye(d) if order >= 1 else None
        hess = np.zeros((d, d, d)) if order >= 2 else None
        return cls(x, grad, hess)

    @classmethod
    def constant(cls, val, d: int, order: int = 2) -> "Jet":
        val = np.asarray(val, dtype=float)
        grad = np.zeros(val.shape + (d,)) if order >= 1 else None
        hess = np.zeros(val.shape + (d, d)) if order >= 2 else None
        return cls(val, grad, hess)

    @staticmethod
    def stack(items: Sequence["Jet | float"], axis: int = 0) -> "Jet":
        jets = [it for it in items if isinstance(it, Jet)]
        if not jets:
            return Jet(np.stack([np.asarray(it, dtype=float) for it in items], axis))
        d = jets[0].dim
        order = min(j.order for j in jets)
        full = [it if isinstance(it, Jet) else Jet.constant(it, d, order) for it in items]
        full = [j.truncate(order) for j in full]
        if axis < 0:
            axis += full[0].val.ndim + 1
        val = np.stack([j.val for j in full], axis)
        grad = np.stack([j.grad for j in full], axis) if order >= 1 else None
        hess = np.stack([j.hess for j in full], axis) if order >= 2 else None
        return Jet(val, grad, hess)

    # -- introspection ----------------------------------------------------
    @property
    def order(self) -> int:
        if self.grad is None:
            return 0
        return 1 if self.hess is None else 2

    @property
    def dim(self) -> int:
        if self.grad is None:
            raise ValueError("order-0 jet has no coordinate dimension")
        return self.grad.shape[-1]

    @property
    def shape(self) -> tuple:
        return self.val.shape

    def truncate(self, order: int) -> "Jet":
        if order >= self.order:
            return self
        return Jet(self.val, self.grad if order >= 1 else None, None)

    def derivative(self) -> "Jet":
        """Jet of the partial derivatives, one order lower.

        The new trailing value axis indexes the differentiation coordinate.
        """
        if self.grad is None:
            raise ValueError("cannot differentiate an order-0 jet")
        return Jet(self.grad, self.hess, None)

    def __repr__(self) -> str:
        return f"Jet(order={self.order}, shape={self.val.shape})"

    # -- shape manipulation ----------------------------------------------
    def __getitem__(self, idx) -> "Jet":
        if not isinstance(idx, tuple):
            idx = (idx,)
        if any(i is Ellipsis for i in idx):
            raise IndexError("Ellipsis indexing is not supported on jets")
        val = self.val[idx]
        grad = None if self.grad is None else self.grad[idx]
        hess = None if self.hess is None else self.hess[idx]
        return Jet(val, grad, hess)

    def transpose(self, *axes: int) -> "Jet":
        n = self.val.ndim
        if not axes:
            axes = tuple(reversed(range(n)))
        val = self.val.transpose(axes)
        grad = None if self.grad is None else self.grad.transpose(tuple(axes) + (n,))
        hess = None if self.hess is None else self.hess.transpose(tuple(axes) + (n, n + 1))
        return Jet(val, grad, hess)

    @property
    def T(self) -> "Jet":
        return self.transpose()

    def moveaxis(self, source: int, destination: int) -> "Jet":
        axes = list(range(self.val.ndim))
        axes.insert(destination % self.val.ndim, axes.pop(source % self.val.ndim))
        return self.transpose(*axes)

    def reshape(self, *shape) -> "Jet":
        if len(shape) == 1 and isinstance(shape[0], tuple):
            shape = shape[0]
        val = self.val.reshape(shape)
        tail = self.val.shape
        grad = None if self.grad is None else self.grad.reshape(val.shape + self.grad.shape[len(tail):])
        hess = None if self.hess is None else self.hess.reshape(val.shape + self.hess.shape[len(tail):])
        return Jet(val, grad, hess)

    def sum(self, axis: int) -> "Jet":
        n = self.val.ndim
        axis %= n
        return Jet(
            self.val.sum(axis),
            None if self.grad is None else self.grad.sum(axis),
            None if self.hess is None else self.hess.sum(axis),
        )

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.dim, self.order) if self.grad is not None else Jet(other)

    def __neg__(self) -> "Jet":
        return Jet(-self.val, None if self.grad is None else -self.grad,
                   None if self.hess is None else -self.hess)

    def __add__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            other = np.asarray(other, dtype=float)
            return Jet(self.val + other,
                       None if self.grad is None else np.broadcast_to(
                           self.grad, np.broadcast_shapes(self.val.shape, other.shape) + self.grad.shape[-1:]).copy(),
                       None if self.hess is None else np.broadcast_to(
                           self.hess, np.broadcast_shapes(self.val.shape, other.shape) + self.hess.shape[-2:]).copy())
        order = min(self.order, other.order)
        a, b = self.truncate(order), other.truncate(order)
        return Jet(a.val + b.val,
                   None if order < 1 else a.grad + b.grad,
                   None if order < 2 else a.hess + b.hess)

    __radd__ = __add__

    def __sub__(self, other) -> "Jet":
        return self + (-other)

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = np.asarray(other, dtype=float)
            return Jet(self.val * c,
                       None if self.grad is None else self.grad * c[..., None],
                       None if self.hess is None else self.hess * c[..., None, None])
        order = min(self.order, other.order)
        a, b = self.truncate(order), other.truncate(order)
        val = a.val * b.val
        if order == 0:
            return Jet(val)
        grad = a.grad * b.val[..., None] + a.val[..., None] * b.grad
        hess = None
        if order == 2:
            cross = a.grad[..., :, None] * b.grad[..., None, :]
            hess = (a.hess * b.val[..., None, None] + cross + np.swapaxes(cross, -1, -2)
                    + a.val[..., None, None] * b.hess)
        return Jet(val, grad, hess)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            return self * (1.0 / np.asarray(other, dtype=float))
        return self * other.reciprocal()

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def __pow__(self, p: float) -> "Jet":
        if isinstance(p, Jet):
            raise TypeError("jet exponents are not supported")
        v = self.val
        return self._compose(v ** p, p * v ** (p - 1), p * (p - 1) * v ** (p - 2))

    def reciprocal(self) -> "Jet":
        v = self.val
        return self._compose(1.0 / v, -1.0 / v**2, 2.0 / v**3)

    def sqrt(self) -> "Jet":
        s = np.sqrt(self.val)
        return self._compose(s, 0.5 / s, -0.25 / (s * self.val))

    def exp(self) -> "Jet":
        e = np.exp(self.val)
        return self._compose(e, e, e)

    def log(self) -> "Jet":
        v = self.val
        return self._compose(np.log(v), 1.0 / v, -1.0 / v**2)

    def _compose(self, f0, f1, f2) -> "Jet":
        """Chain rule for an elementwise scalar function with derivatives f1, f2."""
        if self.grad is None:
            return Jet(f0)
        grad = f1[..., None] * self.grad
        hess = None
        if self.hess is not None:
            hess = (f2[..., None, None] * self.grad[..., :, None] * self.grad[..., None, :]
                    + f1[..., None, None] * self.hess)
        return Jet(f0, grad, hess)


def apply(fn: Callable[[np.ndarray], np.ndarray], dfn, d2fn, x: Jet) -> Jet:
    """Compose an elementwise function given its first two derivatives."""
    return x._compose(fn(x.val), dfn(x.val), d2fn(x.val))


_SPARE = [c for c in string.ascii_letters if c not in "YZ"]


def einsum(subscripts: str, *operands) -> Jet:
    """Product-rule einsum over jets and plain arrays.

    Plain ndarray operands are treated as constants.  Every operand index
    letter must be lowercase or uppercase ASCII other than ``Y``/``Z``,
    which are reserved for the derivative axes.
    """
    inputs, output = subscripts.replace(" ", "").split("->")
    terms = inputs.split(",")
    if len(terms) != len(operands):
        raise ValueError("subscripts do not match the number of operands")
    if "Y" in subscripts or "Z" in subscripts:
        raise ValueError("letters Y and Z are reserved")
    jets = [i for i, op in enumerate(operands) if isinstance(op, Jet)]
    vals = [op.val if isinstance(op, Jet) else np.asarray(op, dtype=float) for op in operands]
    val = np.einsum(subscripts, *vals, optimize=True)
    order = min((operands[i].order for i in jets), default=0)
    if order == 0:
        return Jet(val)

    def contract(replace: dict[int, tuple[np.ndarray, str]], out_extra: str) -> np.ndarray:
        ins = []
        arrs = []
        for i, t in enumerate(terms):
            if i in replace:
                arr, extra = replace[i]
                ins.append(t + extra)
                arrs.append(arr)
            else:
                ins.append(t)
                arrs.append(vals[i])
        return np.einsum(",".join(ins) + "->" + output + out_extra, *arrs, optimize=True)

    grad = sum(contract({i: (operands[i].grad, "Y")}, "Y") for i in jets)
    hess = None
    if order >= 2:
        hess = sum(contract({i: (operands[i].hess, "YZ")}, "YZ") for i in jets)
        for i in jets:
            for j in jets:
                if i != j:
                    hess = hess + contract({i: (operands[i].grad, "Y"), j: (operands[j].grad, "Z")}, "YZ")
    return Jet(val, grad, hess)


def inv(a: Jet) -> Jet:
    """Inverse of a square-matrix-valued jet (matrix axes are the last two value axes)."""
    ainv = np.linalg.inv(a.val)
    if a.grad is None:
        return Jet(ainv)
    grad = -np.einsum("ij,jkY,kl->ilY", ainv, a.grad, ainv)
    hess = None
    if a.hess is not None:
        t1 = np.einsum("ij,jkY,kl,lmZ,mn->inYZ", ainv, a.grad, ainv, a.grad, ainv, optimize=True)
        t2 = np.einsum("ij,jkYZ,kl->ilYZ", ainv, a.hess, ainv)
        hess = t1 + np.swapaxes(t1, -1, -2) - t2
    return Jet(ainv, grad, hess)


def dot(a: Jet | np.ndarray, b: Jet | np.ndarray) -> Jet:
    """Matrix product over the last axis of ``a`` and the first axis of ``b``."""
    na = a.val.ndim if isinstance(a, Jet) else np.ndim(a)
    nb = b.val.ndim if isinstance(b, Jet) else np.ndim(b)
    la = _SPARE[:na]
    lb = _SPARE[na - 1:na - 1 + nb]
    out = la[:-1] + lb[1:]
    return einsum("".join(la) + "," + "".join(lb) + "->" + "".join(out), a, b)


def outer(a: Jet | np.ndarray, b: Jet | np.ndarray) -> Jet:
    na = a.val.ndim if isinstance(a, Jet) else np.ndim(a)
    nb = b.val.ndim if isinstance(b, Jet) else np.ndim(b)
    la = "".join(_SPARE[:na])
    lb = "".join(_SPARE[na:na + nb])
    return einsum(f"{la},{lb}->{la}{lb}", a, b)


def value(x) -> np.ndarray:
    return x.val if isinstance(x, Jet) else np.asarray(x, dtype=float)
