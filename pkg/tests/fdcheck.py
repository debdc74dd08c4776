"""Central finite-difference gradient oracle, independent of the engine.

The oracle only ever calls the forward function; it never looks at tapes,
closures, or analytic gradients, so it stays a valid second opinion on
whatever backward() computes.
"""

import numpy as np


def finite_difference(fn, arrays, h=1e-5):
    """Numeric gradients of scalar fn(arrays) w.r.t. every entry of every array.

    `arrays` is a dict name -> ndarray; entries are perturbed in place and
    restored.  Returns dict name -> ndarray of the same shapes.
    """
    grads = {}
    for name, arr in arrays.items():
        g = np.zeros_like(arr, dtype=np.float64)
        flat = arr.reshape(-1)
        gflat = g.reshape(-1)
        for i in range(flat.size):
            keep = flat[i]
            flat[i] = keep + h
            up = fn()
            flat[i] = keep - h
            down = fn()
            flat[i] = keep
            gflat[i] = (up - down) / (2.0 * h)
        grads[name] = g
    return grads


def relative_error(analytic, numeric):
    """Worst-case per-entry error scaled by magnitude, floored at 1."""
    worst = 0.0
    for name in analytic:
        a = np.asarray(analytic[name], dtype=np.float64)
        n = numeric[name]
        scale = np.maximum(1.0, np.maximum(np.abs(a), np.abs(n)))
        worst = max(worst, float(np.max(np.abs(a - n) / scale)) if a.size else 0.0)
    return worst


def check_gradients(build_loss, params, h=1e-5, tol=1e-4):
    """Assert analytic vs numeric agreement for scalar build_loss().

    `build_loss` must construct the graph afresh on every call (the tape is
    consumed by backward).  `params` maps names to Tensor leaves whose
    `.data` the numeric oracle perturbs.
    """
    for p in params.values():
        p.zero_grad()
    loss = build_loss()
    loss.backward()
    analytic = {k: p.grad if p.grad is not None else np.zeros_like(p.data) for k, p in params.items()}
    numeric = finite_difference(lambda: float(build_loss().data), {k: p.data for k, p in params.items()}, h=h)
    err = relative_error(analytic, numeric)
    assert err < tol, f"gradient mismatch: relative error {err:.3e} >= {tol}"
    return err
