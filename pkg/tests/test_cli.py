import io as _io
import json
import os

import numpy as np
import pytest

from genobs import io
from genobs.cli import main
from genobs.io import verdict_from_document
from genobs.representability import Status

from conftest import FIXTURES, GOLDENS

REGEN = os.environ.get("GENOBS_REGEN_GOLDENS") == "1"


def run(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = main([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def fx(name):
    return FIXTURES / name


GOLDEN_CASES = {
    "demo_example.txt": ("demo-example",),
    "prob_example_rho3.txt": ("prob", fx("rho3.json"), fx("example_effects.json")),
    "prob_povm.txt": ("prob", fx("rho_unnormalized.json"), fx("povm_z.json")),
    "decide_example.txt": ("decide", fx("example_effects.json")),
    "decide_scaled_povm.txt": ("decide", fx("povm_scaled.json")),
    "frame_oblique.json": ("frame", fx("frame_oblique.json")),
    "transition_oblique.txt": ("transition", fx("frame_oblique.json"), fx("pvm_z.json"), "--check-doubly-stochastic"),
    "sample_example.txt": ("sample", fx("example_effects.json"), fx("rho3.json"), "--n", "100000", "--seed", "7"),
}


@pytest.mark.parametrize("golden", sorted(GOLDEN_CASES))
def test_golden(golden):
    code, out, err = run(*GOLDEN_CASES[golden])
    assert code == 0, err
    path = GOLDENS / golden
    if REGEN:
        path.write_text(out)
    assert out == path.read_text()


def test_demo_example_values():
    code, out, _ = run("demo-example")
    assert code == 0
    for line in (
        "p_E(0|rho1 = diag(1,0)) = 1\n",
        "p_E(0|rho2 = diag(0,1)) = 0\n",
        "p_E(0|rho3 = diag(1/2,1/2)) = 0.666666666666667\n",
        "linear prediction (x00 + x11)/2 = 0.5 != 0.666666666666667\n",
        "verdict: NotRepresentable\n",
    ):
        assert line in out
    assert run("demo-example") == (code, out, "")


def test_demo_example_json_roundtrip():
    code, out, _ = run("demo-example", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["rng"] == "philox4x64-10"
    v = verdict_from_document(doc)
    assert v.status is Status.NOT_REPRESENTABLE
    assert (v.witness.p_a, v.witness.p_b) == (1.0, 0.0)
    assert abs(v.witness.p_mid - 2 / 3) <= 1e-12
    assert abs(doc["example"]["x00"] - 1) <= 1e-10 and abs(doc["example"]["x11"]) <= 1e-10


def test_global_flags_either_side():
    a = run("--json", "prob", fx("rho3.json"), fx("example_effects.json"))
    b = run("prob", fx("rho3.json"), fx("example_effects.json"), "--json")
    assert a == b
    doc = json.loads(a[1])
    assert doc["labels"] == ["0", "1"]
    assert abs(doc["probabilities"][0] - 2 / 3) <= 1e-15
    assert doc["denominator"] == 1.5 and doc["is_povm"] is False


def test_prob_povm_denominator_one():
    code, out, _ = run("--json", "prob", fx("rho1.json"), fx("povm_z.json"))
    doc = json.loads(out)
    assert doc["denominator"] == 1.0 and doc["is_povm"] is True


def test_prob_pure_vector_on_frame():
    code, out, _ = run("--json", "prob", fx("psi_one.json"), fx("frame_oblique.json"))
    p = json.loads(out)["probabilities"]
    np.testing.assert_allclose(p, [1 / 3, 2 / 3], atol=1e-12)


def test_decide_projective_and_scaled():
    for name in ("povm_z.json", "povm_scaled.json"):
        code, out, _ = run("--json", "decide", fx(name))
        assert code == 0
        v = verdict_from_document(json.loads(out))
        assert v.representable
        np.testing.assert_allclose(v.povm.effects[0], np.diag([1, 0]), atol=1e-12)
        np.testing.assert_allclose(v.povm.effects[1], np.diag([0, 1]), atol=1e-12)


def test_frame_orthonormal_is_povm():
    code, out, _ = run("frame", fx("frame_orthonormal.json"))
    doc = json.loads(out)
    assert doc["is_povm"] is True
    assert doc["min_eigenvalue_total"] == pytest.approx(1)


def test_frame_output_is_reusable_envelope(tmp_path):
    code, out, _ = run("frame", fx("frame_oblique.json"))
    doc = json.loads(out)
    assert doc["is_povm"] is False and doc["min_eigenvalue_total"] > 0
    path = tmp_path / "effects.json"
    path.write_text(out)
    code, out, _ = run("--json", "prob", fx("psi_one.json"), path)
    np.testing.assert_allclose(json.loads(out)["probabilities"], [1 / 3, 2 / 3], atol=1e-12)


def test_transition_verbs():
    code, out, _ = run("transition", fx("pvm_z.json"), fx("pvm_z.json"), "--check-doubly-stochastic")
    assert "  z+: [1, 0]\n  z-: [0, 1]\n" in out and "doubly stochastic: yes" in out
    code, out, _ = run("--json", "transition", fx("pvm_z.json"), fx("pvm_x.json"), "--check-doubly-stochastic")
    doc = json.loads(out)
    np.testing.assert_allclose(doc["matrix"], np.full((2, 2), 0.5), atol=1e-15)
    assert doc["doubly_stochastic"] is True
    code, out, _ = run("--json", "transition", fx("frame_oblique.json"), fx("pvm_z.json"), "--check-doubly-stochastic")
    assert json.loads(out)["doubly_stochastic"] is False


def test_sample_verbs():
    code, out, _ = run("--json", "sample", fx("example_effects.json"), fx("rho3.json"), "--n", "0")
    assert json.loads(out)["counts"] == [0, 0]
    code, out, _ = run("--json", "sample", fx("example_effects.json"), fx("rho1.json"), "--n", "100")
    assert json.loads(out)["counts"] == [100, 0]
    first = run("sample", fx("example_effects.json"), fx("rho3.json"), "--seed", "3")
    assert first == run("sample", fx("example_effects.json"), fx("rho3.json"), "--seed", "3")


@pytest.mark.parametrize(
    "argv, needle",
    [
        (("prob", fx("nonsquare_state.json"), fx("povm_z.json")), "square"),
        (("frame", fx("frame_duplicate.json")), "SingularFrame"),
        (("transition", fx("pvm_z.json"), fx("pvm_z3.json")), "DimMismatch"),
        (("decide", fx("rho1.json")), "expected an effect_family"),
        (("prob", fx("missing.json"), fx("povm_z.json")), "cannot read"),
        (("sample", fx("example_effects.json"), fx("rho3.json"), "--n", "-1"), "--n"),
    ],
)
def test_input_errors_exit_2(argv, needle):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert needle in err


def test_invalid_json_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("decide", bad)[0] == 2
    bad.write_text(json.dumps({"kind": "effect_family", "dim": 2, "effects": [[[[-1, 0], [0, 0]], [[0, 0], [1, 0]]]]}))
    code, _, err = run("decide", bad)
    assert code == 2 and "NotPSD" in err


def test_indeterminate_exit_1(tmp_path):
    E = io.to_document(io.from_document(json.loads((FIXTURES / "povm_z.json").read_text())))
    E["effects"][0][0][0] = [1 + 1e-7, 0.0]
    path = tmp_path / "near.json"
    path.write_text(json.dumps(E))
    code, _, err = run("decide", path)
    assert code == 1 and "IndeterminateVerdict" in err


def test_roundtrip_full_precision():
    gen = np.random.default_rng(4)
    from genobs.ensembles import random_effect_family
    from genobs.states import random_density

    for obj in (random_effect_family(3, 3, 1), random_density(4, 2), gen.standard_normal(3) + 1j * gen.standard_normal(3)):
        doc = json.loads(json.dumps(io.to_document(obj)))
        back = io.from_document(doc)
        if hasattr(obj, "effects"):
            for a, b in zip(obj.effects, back.effects):
                np.testing.assert_array_equal(a, b)
        elif hasattr(obj, "op"):
            np.testing.assert_array_equal(obj.op, back.op)
        else:
            np.testing.assert_array_equal(obj, back)
