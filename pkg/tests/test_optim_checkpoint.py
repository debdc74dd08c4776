import numpy as np
import pytest

from demandfuse.errors import InputError, TrainingError
from demandfuse.tensor import AdamState, Tensor, adam_step, load_checkpoint, save_checkpoint
from demandfuse.tensor.engine import rng


class TestAdam:
    def test_first_step_unit_gradient(self):
        # bias-corrected m/sqrt(v) is exactly 1 on step one, so the update is -lr
        p = {"w": Tensor([0.0], requires_grad=True)}
        state = AdamState.for_params(p, lr=1e-3, weight_decay=0.0)
        adam_step(p, {"w": np.array([1.0])}, state)
        np.testing.assert_allclose(p["w"].data, [-1e-3], atol=1e-9)
        assert state.step == 1

    def test_zero_gradient_zero_decay_leaves_fresh_params(self):
        p = {"w": Tensor([1.5, -2.0], requires_grad=True)}
        state = AdamState.for_params(p, weight_decay=0.0)
        adam_step(p, {"w": np.zeros(2)}, state)
        np.testing.assert_array_equal(p["w"].data, [1.5, -2.0])

    def test_l2_pulls_positive_param_down(self):
        p = {"w": Tensor([2.0], requires_grad=True)}
        state = AdamState.for_params(p, weight_decay=1e-2)
        before = p["w"].data.copy()
        adam_step(p, {"w": np.zeros(1)}, state)
        assert p["w"].data[0] < before[0]

    def test_nonfinite_gradient_names_parameter(self):
        p = {"bad_layer": Tensor([1.0], requires_grad=True)}
        state = AdamState.for_params(p)
        with pytest.raises(TrainingError, match="bad_layer"):
            adam_step(p, {"bad_layer": np.array([np.nan])}, state)

    def test_step_counter_increments(self):
        p = {"w": Tensor([0.0], requires_grad=True)}
        state = AdamState.for_params(p)
        for expected in (1, 2, 3):
            adam_step(p, {"w": np.array([0.1])}, state)
            assert state.step == expected

    def test_snapshot_restore_roundtrip(self):
        p = {"w": Tensor([1.0], requires_grad=True)}
        state = AdamState.for_params(p)
        adam_step(p, {"w": np.array([0.3])}, state)
        snap = state.snapshot()
        adam_step(p, {"w": np.array([0.7])}, state)
        state.restore(snap)
        assert state.step == 1
        np.testing.assert_array_equal(state.m["w"], snap["m"]["w"])


class TestCheckpoint:
    def test_roundtrip_exact(self, tmp_path):
        g = rng(0)
        arrays = {"layer.w": g.normal(size=(3, 4)), "layer.b": g.normal(size=4)}
        path = tmp_path / "model.ckpt"
        save_checkpoint(path, arrays, seed=123, meta={"note": "unit"})
        loaded, header = load_checkpoint(path)
        assert header["seed"] == 123 and header["meta"] == {"note": "unit"}
        for k in arrays:
            np.testing.assert_array_equal(loaded[k], arrays[k])

    def test_byte_stable_across_saves(self, tmp_path):
        arrays = {"w": np.array([[1.0, 2.5], [3.25, -0.125]])}
        p1, p2 = tmp_path / "a.ckpt", tmp_path / "b.ckpt"
        save_checkpoint(p1, arrays, seed=1)
        save_checkpoint(p2, arrays, seed=1)
        assert p1.read_bytes() == p2.read_bytes()

    def test_rejects_foreign_file(self, tmp_path):
        p = tmp_path / "junk.json"
        p.write_text("{\"format\": \"something-else\"}")
        with pytest.raises(InputError):
            load_checkpoint(p)
        p.write_text("not json")
        with pytest.raises(InputError):
            load_checkpoint(p)
