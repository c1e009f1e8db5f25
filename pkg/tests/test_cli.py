"""Command-line contract: exit codes, schemas and round trips."""
import io
import json
import random

import pytest
from hypothesis import given, strategies as st

from quiverhom.algebra import cycle_quiver, fixture, make_ground, za3_window
from quiverhom.cli import (
    EXIT_FAIL,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_PRECONDITION,
    SchemaError,
    parse_input,
    quiver_from_json,
    quiver_to_json,
    representation_from_json,
    representation_to_json,
    run,
)
from quiverhom.exactla import FieldSpec
from quiverhom.modcat import random_representation


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj, indent=2) if not isinstance(obj, str) else obj)
    return str(p)


C1_QUIVER = {"vertices": [0], "arrows": [{"name": "d0", "from": 0, "to": 0}],
             "relations": [[{"coef": "1", "path": ["d0", "d0"]}]]}


def test_check_a2_reports_not_selfinjective():
    code, out, _ = call("check", "--fixture", "A2")
    assert code == EXIT_OK
    assert json.loads(out)["conditions"]["selfinj"] is False


def test_check_z6_has_interior_caveat():
    code, out, _ = call("check", "--fixture", "Z6")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["conditions"]["selfinj"] is False
    assert rep["interior"]["conditions"]["selfinj"] is True
    assert rep["interior"]["serre_pairing"] is True
    assert "caveat" in rep["interior"]


def test_quiver_file_builds_algebra(tmp_path):
    path = write(tmp_path, "c1.json", C1_QUIVER)
    code, out, _ = call("check", "--quiver", path)
    assert code == EXIT_OK
    assert json.loads(out)["algebra"]["dimension"] == 2


def test_non_composable_relation_is_a_parse_error(tmp_path):
    bad = {"vertices": [0, 1], "arrows": [{"name": "a", "from": 0, "to": 1}, {"name": "b", "from": 0, "to": 1}],
           "relations": [[{"coef": "1", "path": ["a", "b"]}]]}
    code, _, err = call("check", "--quiver", write(tmp_path, "q.json", bad))
    assert code == EXIT_PARSE
    assert "not composable" in err and "relations" in err


def test_malformed_json_reports_line(tmp_path):
    code, _, err = call("check", "--quiver", write(tmp_path, "q.json", '{\n  "vertices": [0,\n}'))
    assert code == EXIT_PARSE
    assert "line" in err


def test_missing_arrow_field_is_a_parse_error(tmp_path):
    bad = {"vertices": [0], "arrows": [{"name": "a", "from": 0}]}
    code, _, err = call("check", "--quiver", write(tmp_path, "q.json", bad))
    assert code == EXIT_PARSE and "arrows[0]" in err


def test_infinite_algebra_is_a_precondition_failure(tmp_path):
    loop = {"vertices": [0], "arrows": [{"name": "a", "from": 0, "to": 0}], "relations": []}
    code, _, err = call("check", "--quiver", write(tmp_path, "q.json", loop))
    assert code == EXIT_PRECONDITION


def test_equivariance_failure_names_vertex_and_element(tmp_path):
    rep = {"field": "q", "ground": "dual", "spaces": {"0": 2},
           "arrow_maps": {"d0": [["0", "0"], ["1", "0"]]},
           "ground_action": {"0": {"eps": [["0", "1"], ["0", "0"]]}}}
    code, _, err = call("classify", "--fixture", "C1", "--rep", write(tmp_path, "r.json", rep))
    assert code == EXIT_PARSE
    assert "vertex 0" in err and "'eps'" in err and "equivariant" in err


def test_wrong_shape_and_field_mismatch(tmp_path):
    rep = {"field": "q", "spaces": {"0": 2}, "arrow_maps": {"d0": [["0", "0"]]}}
    code, _, err = call("functor", "--fixture", "C1", "--rep", write(tmp_path, "r.json", rep))
    assert code == EXIT_PARSE and "arrow_maps.d0" in err
    rep = {"field": "fp:7", "spaces": {"0": 1}, "arrow_maps": {"d0": [["0"]]}}
    code, _, err = call("functor", "--fixture", "C1", "--rep", write(tmp_path, "r.json", rep))
    assert code == EXIT_PARSE and "field" in err


def test_classify_zero_representation(tmp_path):
    rep = {"field": "q", "ground": "dual", "spaces": {"0": 0}, "arrow_maps": {}, "ground_action": {}}
    code, out, _ = call("classify", "--fixture", "C1", "--rep", write(tmp_path, "z.json", rep))
    assert code == EXIT_OK
    pairs = json.loads(out)["pairs"]
    assert pairs
    for verdicts in pairs.values():
        assert all(verdicts[k] for k in ("in_phi", "in_psi", "in_E", "in_W"))


def test_functor_on_simple():
    code, out, _ = call("functor", "--fixture", "C3", "--vertex", "0", "--at", "2")
    # R^1 K_2 (S<0>) = Ext^1(S<2>, S<0>) vanishes, L_1 C_2 (S<0>) = H_3 = H_0 = 1
    assert code == EXIT_OK
    assert json.loads(out)["values"] == {"2": {"C": 0, "K": 0, "L1C": 1, "R1K": 0}}


def test_resolve_reports_exact_minimal():
    code, out, _ = call("resolve", "--fixture", "C3", "--vertex", "1", "--depth", "3")
    rep = json.loads(out)["projective"]
    assert code == EXIT_OK and rep["exact"] and rep["minimal"]
    assert [t["heads"] for t in rep["terms"]] == [["1"], ["0"], ["2"], ["1"]]


def test_tower_command_and_precondition():
    code, out, _ = call("tower", "--fixture", "C1", "--ground", "dual", "--B", "k", "--depth", "3")
    assert code == EXIT_OK and json.loads(out)["passed"]
    code, _, err = call("tower", "--fixture", "C1", "--ground", "dual", "--B", "k", "--depth", "3",
                        "--pair", "all-injective")
    assert code == EXIT_PRECONDITION and "injective" in err


def test_unknown_fixture_and_vertex():
    assert call("check", "--fixture", "B9")[0] == EXIT_PARSE
    assert call("functor", "--fixture", "C1", "--vertex", "7")[0] == EXIT_PRECONDITION


def test_verify_exit_codes():
    code, out, _ = call("verify", "radical")
    assert code == EXIT_OK and json.loads(out)["passed"]
    assert call("verify", "no-such-suite")[0] == EXIT_PARSE


def test_verify_failure_exit_code(monkeypatch):
    import quiverhom.suites as suites
    monkeypatch.setitem(suites.RUNNERS, "radical", lambda cfg: {"passed": False})
    assert call("verify", "radical")[0] == EXIT_FAIL


def test_table_format():
    code, out, _ = call("check", "--fixture", "C1", "--format", "table")
    assert code == EXIT_OK
    assert "conditions.selfinj\ttrue" in out


def test_verify_cycle_suite_small():
    code, out, _ = call("verify", "lemma-8.1", "--N", "3", "--trials", "10", "--seed", "42", "--field", "fp:7")
    assert code == EXIT_OK


@pytest.mark.parametrize("pres", [cycle_quiver(3), za3_window(0, 2)])
def test_quiver_round_trip(pres):
    data = quiver_to_json(pres)
    again = quiver_from_json(json.loads(json.dumps(data)))
    assert quiver_to_json(again) == data


@given(st.sampled_from(["C1", "C3", "A2"]), st.sampled_from(["k", "dual"]), st.sampled_from(["q", "fp:7"]),
       st.integers(0, 10 ** 6))
def test_representation_round_trip(name, g, field, seed):
    F = FieldSpec.parse(field)
    alg = fixture(name, F)
    X = random_representation(alg, make_ground(g, F), 3, seed=seed)
    data = representation_to_json(X)
    Y = representation_from_json(json.loads(json.dumps(data)), alg)
    assert Y.key() == X.key()
    assert representation_to_json(Y) == data


def test_parse_input_needs_algebra_for_representation(tmp_path):
    path = write(tmp_path, "r.json", {"spaces": {"0": 0}})
    with pytest.raises(SchemaError):
        parse_input(path)
