import numpy as np
import pytest

from demandfuse.errors import ContractError, DimensionError
from demandfuse.tensor import Tensor, concat, no_grad
from demandfuse.tensor.engine import rng

from fdcheck import check_gradients


def test_square_gradient():
    w = Tensor([3.0], requires_grad=True)
    (w * w).sum().backward()
    np.testing.assert_array_equal(w.grad, [6.0])


def test_mae_at_minimum_has_zero_gradient():
    pred = Tensor([1.0, -2.0, 0.5], requires_grad=True)
    target = Tensor([1.0, -2.0, 0.5])
    (pred - target).abs().mean().backward()
    np.testing.assert_array_equal(pred.grad, np.zeros(3))


def test_backward_requires_scalar():
    w = Tensor([1.0, 2.0], requires_grad=True)
    with pytest.raises(ContractError):
        (w * w).backward()


def test_backward_requires_recorded_ops():
    w = Tensor([1.0], requires_grad=True)
    with pytest.raises(ContractError):
        w.backward()


def test_diamond_graph_accumulates_once_per_use():
    # y = x*x + x*x uses x four times; dy/dx = 4x
    x = Tensor([2.0], requires_grad=True)
    y = x * x + x * x
    y.sum().backward()
    np.testing.assert_allclose(x.grad, [8.0])


def test_tape_released_after_backward():
    x = Tensor([2.0], requires_grad=True)
    y = (x * x).sum()
    y.backward()
    assert y._backward is None and y._parents == ()
    with pytest.raises(ContractError):
        y.backward()


def test_no_grad_suppresses_graph():
    x = Tensor([2.0], requires_grad=True)
    with no_grad():
        y = x * x
    assert y._backward is None
    assert not y.requires_grad or y.grad is None


def test_broadcast_add_unbroadcasts_gradient():
    a = Tensor(np.ones((3, 4)), requires_grad=True)
    b = Tensor(np.ones(4), requires_grad=True)
    (a + b).sum().backward()
    np.testing.assert_array_equal(a.grad, np.ones((3, 4)))
    np.testing.assert_array_equal(b.grad, np.full(4, 3.0))


def test_matmul_shape_error_names_axis():
    a = Tensor(np.ones((2, 3)))
    b = Tensor(np.ones((4, 2)))
    with pytest.raises(DimensionError, match="axis"):
        a @ b


def test_getitem_scatter_gradient():
    x = Tensor(np.arange(6.0).reshape(2, 3), requires_grad=True)
    x[:, 1].sum().backward()
    expected = np.zeros((2, 3))
    expected[:, 1] = 1.0
    np.testing.assert_array_equal(x.grad, expected)


def test_concat_splits_gradient():
    a = Tensor(np.ones((2, 2)), requires_grad=True)
    b = Tensor(np.ones((2, 3)), requires_grad=True)
    c = concat([a, b], axis=1)
    (c * np.arange(10.0).reshape(2, 5)).sum().backward()
    np.testing.assert_array_equal(a.grad, [[0, 1], [5, 6]])
    np.testing.assert_array_equal(b.grad, [[2, 3, 4], [7, 8, 9]])


@pytest.mark.parametrize("seed", range(5))
def test_two_layer_dense_net_matches_finite_differences(seed):
    g = rng(seed)
    params = {
        "w1": Tensor(g.normal(size=(4, 5)), requires_grad=True),
        "b1": Tensor(g.normal(size=5), requires_grad=True),
        "w2": Tensor(g.normal(size=(5, 2)), requires_grad=True),
        "b2": Tensor(g.normal(size=2), requires_grad=True),
    }
    x = np.asarray(g.normal(size=(3, 4)))
    t = np.asarray(g.normal(size=(3, 2)))

    def loss():
        h = (Tensor(x) @ params["w1"] + params["b1"]).tanh()
        out = h @ params["w2"] + params["b2"]
        return ((out - t) * (out - t)).mean()

    check_gradients(loss, params)


def test_deterministic_gradients_across_runs():
    def run():
        g = rng(7)
        w = Tensor(g.normal(size=(6, 3)), requires_grad=True)
        x = Tensor(g.normal(size=(4, 6)))
        ((x @ w).sigmoid().sum()).backward()
        return w.grad.copy()

    g1, g2 = run(), run()
    assert np.array_equal(g1, g2)


def test_elementwise_op_gradients_random():
    g = rng(11)
    for _ in range(10):
        x = Tensor(g.uniform(0.5, 2.0, size=(3, 3)), requires_grad=True)
        params = {"x": x}

        def loss():
            t = x.log() + x.sqrt() + x.exp() * 0.01 + x.tanh() + x.sigmoid() + x.softplus()
            return (t * t).mean()

        check_gradients(loss, params)
