"""Dense float64 tensors with reverse-mode automatic differentiation.

Every differentiable operation returns a new :class:`Tensor` whose
``_backward`` closure knows how to push the output gradient into its
parents.  Calling :meth:`Tensor.backward` on a scalar loss builds a
:class:`Tape` (a topological ordering of the recorded operations reachable
from the loss), replays it in reverse, and then releases the graph so the
next step starts from a clean slate.

All data is float64.  Gradient accumulation is ordered and pure numpy, so
two identical forward+backward passes produce bit-identical gradients.
"""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

import numpy as np

from ..errors import ContractError, DimensionError

_state = threading.local()


def grad_enabled() -> bool:
    return getattr(_state, "grad_enabled", True)


class no_grad:
    """Context manager that stops operations from recording backward closures."""

    def __enter__(self):
        self._prev = grad_enabled()
        _state.grad_enabled = False
        return self

    def __exit__(self, *exc):
        _state.grad_enabled = self._prev
        return False


def _as_array(data) -> np.ndarray:
    arr = np.asarray(data, dtype=np.float64)
    return arr


class Tensor:
    """A dense n-dimensional float64 array that can participate in autodiff."""

    __slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

    def __init__(self, data, requires_grad: bool = False):
        self.data = _as_array(data)
        self.grad: np.ndarray | None = None
        self.requires_grad = bool(requires_grad)
        self._parents: tuple[Tensor, ...] = ()
        self._backward = None

    # -- basic introspection -------------------------------------------------

    @property
    def shape(self) -> tuple[int, ...]:
        return self.data.shape

    @property
    def ndim(self) -> int:
        return self.data.ndim

    @property
    def size(self) -> int:
        return self.data.size

    def item(self) -> float:
        return float(self.data.reshape(-1)[0]) if self.data.size == 1 else _non_scalar()

    def numpy(self) -> np.ndarray:
        return self.data

    def detach(self) -> "Tensor":
        return Tensor(self.data)

    def __repr__(self):
        return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad})"

    # -- graph plumbing ------------------------------------------------------

    def _accumulate(self, g: np.ndarray) -> None:
        if not self.requires_grad:
            return
        if self.grad is None:
            self.grad = np.array(g, dtype=np.float64, copy=True)
        else:
            self.grad = self.grad + g

    def zero_grad(self) -> None:
        self.grad = None

    def backward(self) -> None:
        """Reverse-replay the recorded tape starting from this scalar."""
        if self.size != 1:
            raise ContractError(
                f"backward() needs a scalar loss, got shape {self.shape}"
            )
        tape = Tape.from_root(self)
        if not tape.nodes:
            raise ContractError("backward() on a tensor with no recorded operations")
        self.grad = np.ones_like(self.data)
        for node in reversed(tape.nodes):
            if node.grad is not None and node._backward is not None:
                node._backward()
        tape.release()

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        out = _make(self.data + other.data, (self, other))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(_unbroadcast(out.grad, self.shape))
                other._accumulate(_unbroadcast(out.grad, other.shape))
            out._backward = backward
        return out

    def __sub__(self, other):
        other = _lift(other)
        out = _make(self.data - other.data, (self, other))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(_unbroadcast(out.grad, self.shape))
                other._accumulate(_unbroadcast(-out.grad, other.shape))
            out._backward = backward
        return out

    def __mul__(self, other):
        other = _lift(other)
        out = _make(self.data * other.data, (self, other))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(_unbroadcast(out.grad * other.data, self.shape))
                other._accumulate(_unbroadcast(out.grad * self.data, other.shape))
            out._backward = backward
        return out

    def __truediv__(self, other):
        other = _lift(other)
        out = _make(self.data / other.data, (self, other))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(_unbroadcast(out.grad / other.data, self.shape))
                other._accumulate(
                    _unbroadcast(-out.grad * self.data / (other.data ** 2), other.shape)
                )
            out._backward = backward
        return out

    def __neg__(self):
        out = _make(-self.data, (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(-out.grad)
            out._backward = backward
        return out

    def __pow__(self, exponent):
        if not isinstance(exponent, (int, float)):
            raise ContractError("only constant exponents are supported")
        out = _make(self.data ** exponent, (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad * exponent * self.data ** (exponent - 1))
            out._backward = backward
        return out

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return _lift(other) - self

    def __rtruediv__(self, other):
        return _lift(other) / self

    def __matmul__(self, other):
        other = _lift(other)
        if self.ndim != 2 or other.ndim != 2:
            raise DimensionError(
                f"matmul expects 2-d operands, got {self.ndim}-d @ {other.ndim}-d"
            )
        if self.shape[1] != other.shape[0]:
            raise DimensionError(
                f"matmul inner axis mismatch: {self.shape[1]} (axis 1 of left) "
                f"!= {other.shape[0]} (axis 0 of right)"
            )
        out = _make(self.data @ other.data, (self, other))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad @ other.data.T)
                other._accumulate(self.data.T @ out.grad)
            out._backward = backward
        return out

    # -- elementwise functions -------------------------------------------------

    def exp(self):
        out = _make(np.exp(self.data), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad * out.data)
            out._backward = backward
        return out

    def log(self):
        out = _make(np.log(self.data), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad / self.data)
            out._backward = backward
        return out

    def sqrt(self):
        out = _make(np.sqrt(self.data), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad * 0.5 / out.data)
            out._backward = backward
        return out

    def tanh(self):
        out = _make(np.tanh(self.data), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad * (1.0 - out.data ** 2))
            out._backward = backward
        return out

    def sigmoid(self):
        out = _make(1.0 / (1.0 + np.exp(-self.data)), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad * out.data * (1.0 - out.data))
            out._backward = backward
        return out

    def softplus(self):
        # log(1 + e^x), computed stably; gradient is sigmoid(x)
        out = _make(np.logaddexp(0.0, self.data), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad / (1.0 + np.exp(-self.data)))
            out._backward = backward
        return out

    def abs(self):
        # subgradient at 0 is 0 (np.sign(0) == 0)
        out = _make(np.abs(self.data), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad * np.sign(self.data))
            out._backward = backward
        return out

    def relu(self):
        out = _make(np.maximum(self.data, 0.0), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad * (self.data > 0.0))
            out._backward = backward
        return out

    def leaky_relu(self, slope: float = 0.01):
        scale = np.where(self.data > 0.0, 1.0, slope)
        out = _make(self.data * scale, (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad * scale)
            out._backward = backward
        return out

    # -- reductions and shape ops ---------------------------------------------

    def sum(self, axis=None, keepdims: bool = False):
        out = _make(self.data.sum(axis=axis, keepdims=keepdims), (self,))
        if out._backward is _PENDING:
            def backward():
                g = out.grad
                if axis is not None and not keepdims:
                    g = np.expand_dims(g, axis)
                self._accumulate(np.broadcast_to(g, self.shape))
            out._backward = backward
        return out

    def mean(self, axis=None, keepdims: bool = False):
        denom = self.size if axis is None else _axis_size(self.shape, axis)
        return self.sum(axis=axis, keepdims=keepdims) / float(denom)

    def reshape(self, *shape):
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        out = _make(self.data.reshape(shape), (self,))
        if out._backward is _PENDING:
            def backward():
                self._accumulate(out.grad.reshape(self.shape))
            out._backward = backward
        return out

    def transpose(self, *axes):
        axes = axes or None
        if axes and len(axes) == 1 and isinstance(axes[0], (tuple, list)):
            axes = tuple(axes[0])
        out = _make(self.data.transpose(axes), (self,))
        if out._backward is _PENDING:
            inv = np.argsort(axes) if axes else None
            def backward():
                self._accumulate(out.grad.transpose(inv))
            out._backward = backward
        return out

    @property
    def T(self):
        return self.transpose()

    def __getitem__(self, index):
        out = _make(self.data[index], (self,))
        if out._backward is _PENDING:
            def backward():
                buf = np.zeros(self.shape)
                np.add.at(buf, index, out.grad)
                self._accumulate(buf)
            out._backward = backward
        return out


# Sentinel marking an output that wants a backward closure attached.
def _PENDING():  # pragma: no cover - never called
    raise AssertionError("backward closure was not attached")


def _lift(value) -> Tensor:
    return value if isinstance(value, Tensor) else Tensor(value)


def _make(data: np.ndarray, parents: tuple[Tensor, ...]) -> Tensor:
    out = Tensor(data, requires_grad=any(p.requires_grad for p in parents))
    if grad_enabled() and out.requires_grad:
        out._parents = parents
        out._backward = _PENDING
    return out


def _unbroadcast(grad: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
    """Sum `grad` down to `shape`, undoing numpy broadcasting."""
    if grad.shape == shape:
        return grad
    extra = grad.ndim - len(shape)
    if extra > 0:
        grad = grad.sum(axis=tuple(range(extra)))
    axes = tuple(i for i, d in enumerate(shape) if d == 1 and grad.shape[i] != 1)
    if axes:
        grad = grad.sum(axis=axes, keepdims=True)
    return grad


def _axis_size(shape: tuple[int, ...], axis) -> int:
    if isinstance(axis, int):
        return shape[axis]
    n = 1
    for a in axis:
        n *= shape[a]
    return n


def _non_scalar():
    raise ContractError("item() requires a single-element tensor")


def concat(tensors: Sequence[Tensor], axis: int = 0) -> Tensor:
    """Concatenate tensors along `axis`; gradient splits back to the parts."""
    tensors = [_lift(t) for t in tensors]
    out = _make(np.concatenate([t.data for t in tensors], axis=axis), tuple(tensors))
    if out._backward is _PENDING:
        sizes = [t.shape[axis] for t in tensors]
        offsets = np.cumsum([0] + sizes)
        def backward():
            for t, lo, hi in zip(tensors, offsets[:-1], offsets[1:]):
                idx = [slice(None)] * out.ndim
                idx[axis] = slice(lo, hi)
                t._accumulate(out.grad[tuple(idx)])
        out._backward = backward
    return out


class Tape:
    """Topologically ordered list of op-output tensors reachable from a root.

    Execution order already is a topological order, but the graph is only
    discoverable through parent links, so the tape is rebuilt from the root
    with an iterative depth-first walk.  Reversing it visits every node
    exactly once, after all of its consumers.
    """

    __slots__ = ("nodes", "index")

    def __init__(self, nodes: list[Tensor]):
        self.nodes = nodes
        self.index = {id(n): i for i, n in enumerate(nodes)}

    @classmethod
    def from_root(cls, root: Tensor) -> "Tape":
        nodes: list[Tensor] = []
        visited: set[int] = set()
        stack: list[tuple[Tensor, bool]] = [(root, False)]
        while stack:
            node, expanded = stack.pop()
            if expanded:
                nodes.append(node)
                continue
            if id(node) in visited or node._backward is None:
                continue
            visited.add(id(node))
            stack.append((node, True))
            for parent in node._parents:
                if id(parent) not in visited and parent._backward is not None:
                    stack.append((parent, False))
        return cls(nodes)

    def release(self) -> None:
        for node in self.nodes:
            node._parents = ()
            node._backward = None
        self.nodes = []
        self.index = {}


def rng(seed: int) -> np.random.Generator:
    """The one pseudo-random source used across the package."""
    return np.random.default_rng(seed)
