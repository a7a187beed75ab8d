import json

import numpy as np
import pytest

import poleplace as pp
from poleplace.sysfile import (
    load_feedback,
    load_parameter,
    load_structure,
    load_system,
)


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return path


BASE = {
    "name": "di",
    "A": [[0.0, 1.0], [0.0, 0.0]],
    "B": [[0.0], [1.0]],
}


class TestLoadSystem:
    def test_valid_with_structure(self, tmp_path):
        payload = dict(BASE)
        payload["structure"] = [
            {"re": -1.0, "im": 0.0, "blocks": [1]},
            {"re": -2.0, "im": 0.0, "blocks": [1]},
        ]
        sf = load_system(write(tmp_path, "di.json", payload))
        assert sf.name == "di"
        assert sf.system.n == 2 and sf.system.m == 1
        assert sf.structure.eigenvalues == (-2.0, -1.0)

    def test_conjugate_auto_completed(self, tmp_path):
        payload = dict(BASE)
        payload["structure"] = [{"re": 1.0, "im": 1.0, "blocks": [1]}]
        sf = load_system(write(tmp_path, "c.json", payload))
        assert sf.structure.sigma == 1
        assert sf.structure.eigenvalues == (1 + 1j, 1 - 1j)

    def test_multiplicity_sum_rejected(self, tmp_path):
        payload = dict(BASE)
        payload["structure"] = [{"re": 0.0, "im": 0.0, "blocks": [3]}]
        with pytest.raises(pp.ParseError, match="multiplicities sum"):
            load_system(write(tmp_path, "bad.json", payload))

    def test_missing_field(self, tmp_path):
        with pytest.raises(pp.ParseError, match="'B'"):
            load_system(write(tmp_path, "nob.json", {"name": "x", "A": [[1.0]]}))

    def test_invalid_json_line_diagnostic(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"name": "x",\n  A: oops\n}')
        with pytest.raises(pp.ParseError, match="line 2"):
            load_system(path)

    def test_rank_deficient_B_rejected(self, tmp_path):
        payload = {"A": [[0.0, 0.0], [0.0, 0.0]], "B": [[1.0, 1.0], [1.0, 1.0]]}
        with pytest.raises(pp.ParseError, match="full column rank"):
            load_system(write(tmp_path, "rank.json", payload))

    def test_baseline_passthrough(self, tmp_path):
        payload = dict(BASE)
        payload["baseline"] = {"kappa_fro": 16.73, "gain_fro": 3.102, "source": "x"}
        sf = load_system(write(tmp_path, "b.json", payload))
        assert sf.baseline["kappa_fro"] == 16.73


class TestLoadStructure:
    def test_bare_list(self, tmp_path):
        path = write(tmp_path, "s.json", [{"re": 0.0, "im": 0.0, "blocks": [2, 1]}])
        spec = load_structure(path, 3)
        assert spec.block_orders == ((2, 1),)

    def test_wrapped_object(self, tmp_path):
        path = write(
            tmp_path, "s.json", {"structure": [{"re": -1.0, "blocks": [1]}]}
        )
        spec = load_structure(path, 1)
        assert spec.eigenvalues == (-1.0,)


class TestLoadParameter:
    def test_round_trip(self, tmp_path):
        spec = pp.EigStructure((1j, -1j, -2.0), ((1,), (1,), (2,)))
        ordered, _ = pp.normalize_ordering(spec)
        rng = np.random.default_rng(60)
        K = pp.ParameterMatrix.random(ordered, 2, rng)
        payload = {
            "blocks": [
                {"re": blk.real.tolist(), "im": blk.imag.tolist()}
                if np.iscomplexobj(blk)
                else {"re": np.asarray(blk, dtype=float).tolist()}
                for blk in K.blocks
            ]
        }
        loaded = load_parameter(write(tmp_path, "k.json", payload), ordered, 2)
        for a, b in zip(K.blocks, loaded.blocks):
            assert np.abs(a - b).max() == 0.0

    def test_shape_mismatch(self, tmp_path):
        spec = pp.EigStructure((-1.0,), ((2,),))
        payload = {"blocks": [{"re": [[1.0]]}]}
        with pytest.raises(pp.ParseError, match="shape"):
            load_parameter(write(tmp_path, "k.json", payload), spec, 1)

    def test_conjugate_violation(self, tmp_path):
        spec = pp.EigStructure((1j, -1j), ((1,), (1,)))
        payload = {
            "blocks": [
                {"re": [[1.0]], "im": [[2.0]]},
                {"re": [[1.0]], "im": [[2.0]]},
            ]
        }
        with pytest.raises(pp.ParseError, match="conjugate"):
            load_parameter(write(tmp_path, "k.json", payload), spec, 1)


class TestLoadFeedback:
    def test_valid(self, tmp_path):
        sys = pp.System(np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([[0.0], [1.0]]))
        F = load_feedback(
            write(tmp_path, "f.json", {"F": [[-2.0, -3.0]]}), sys
        )
        assert F.shape == (1, 2)

    def test_shape_rejected(self, tmp_path):
        sys = pp.System(np.array([[0.0, 1.0], [0.0, 0.0]]), np.array([[0.0], [1.0]]))
        with pytest.raises(pp.ParseError, match="shape"):
            load_feedback(write(tmp_path, "f.json", {"F": [[1.0]]}), sys)
