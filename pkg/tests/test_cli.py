"""CLI verbs: thin adapters, deterministic output, exit-code contract."""

import json
import subprocess
import sys

import pytest

from orbitquant.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_unknown_verb_is_usage_error(capsys):
    assert main(["no-such-verb"]) == 2


def test_basis_matches_library(capsys, tmp_path):
    code, doc = run_json(capsys, "basis", "--n", "1")
    assert code == 0
    from orbitquant.lie import basis_to_json, build_lie_basis

    basis, sc = build_lie_basis(1)
    expected = basis_to_json(basis, sc)
    assert doc["names"] == expected["names"]
    assert doc["elements"] == expected["elements"]
    assert doc["structure_constants"] == expected["structure_constants"]


def test_group_mul_against_library(capsys, tmp_path):
    request = {
        "p": {"x": [["1"]], "g": [["2"]]},
        "q": {"x": [["4"]], "g": [["3"]]},
    }
    path = tmp_path / "in.json"
    path.write_text(json.dumps(request))
    code, doc = run_json(capsys, "group-mul", "--input", str(path))
    assert code == 0
    assert doc["product"] == {"x": [["17"]], "g": [["6"]]}


def test_coadjoint_scalar(capsys, tmp_path):
    request = {
        "element": {"x": [["1"]], "g": [["2"]]},
        "point": {"c": [["4"]], "a": [["3"]]},
    }
    path = tmp_path / "in.json"
    path.write_text(json.dumps(request))
    code, doc = run_json(capsys, "coadjoint", "--input", str(path))
    assert code == 0
    assert doc["point"] == {"c": [["1"]], "a": [["4"]]}


def test_normal_form_trivial_point(capsys, tmp_path):
    request = {
        "point": {
            "c": [["1", "0"], ["0", "1"]],
            "a": [["0", "1"], ["-1", "0"]],
        }
    }
    path = tmp_path / "in.json"
    path.write_text(json.dumps(request))
    code, doc = run_json(capsys, "normal-form", "--input", str(path))
    assert code == 0
    assert abs(float(doc["lambdas"][0]) - 1.0) < 1e-9
    assert float(doc["residual"]) < 1e-9
    assert doc["regular"] is True


def test_normal_form_rejects_bad_point(capsys, tmp_path):
    request = {
        "point": {"c": [["-1", "0"], ["0", "1"]], "a": [["0", "0"], ["0", "0"]]}
    }
    path = tmp_path / "in.json"
    path.write_text(json.dumps(request))
    code, doc = run_json(capsys, "normal-form", "--input", str(path))
    assert code == 2
    assert doc["error"]["type"] == "DomainError"


def test_missing_input_is_usage_error(capsys):
    code, doc = run_json(capsys, "coadjoint")
    assert code == 2
    assert "error" in doc


def test_star_with_units(capsys, tmp_path):
    from orbitquant.lie import DualCoordinates, build_lie_basis
    from orbitquant.poly import MultiPoly

    basis, _ = build_lie_basis(2)
    coords = DualCoordinates(basis)
    one = MultiPoly.constant(coords.variables, 1).to_records()
    request = {"f": one, "g": one}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(request))
    code, doc = run_json(
        capsys, "star", "--n", "2", "--lambdas", "1", "--deg", "4",
        "--input", str(path),
    )
    assert code == 0
    assert doc["terms"] == [
        {"exponents": [0] * 7, "coefficient": ["1"]}
    ]


def test_star_matches_library(capsys, tmp_path):
    from fractions import Fraction

    from orbitquant.quantize import OrbitQuantization
    from orbitquant.poly import MultiPoly

    engine = OrbitQuantization(2, [Fraction(1)], deg_cap=4)
    f = MultiPoly.variable(engine.variables, 0)
    g = MultiPoly.variable(engine.variables, 4)
    expected = engine.star(f, g).to_json()
    request = {"f": f.to_records(), "g": g.to_records()}
    path = tmp_path / "in.json"
    path.write_text(json.dumps(request))
    code, doc = run_json(
        capsys, "star", "--n", "2", "--lambdas", "1", "--deg", "4",
        "--input", str(path),
    )
    assert code == 0
    assert doc == expected


def test_pbw_verb(capsys, tmp_path):
    path = tmp_path / "in.json"
    path.write_text(json.dumps({"word": [1, 0]}))
    code, doc = run_json(capsys, "pbw", "--n", "1", "--input", str(path))
    assert code == 0
    # letters A < B at n=1: B A = A B - 2 h B
    assert {"word": [0, 1], "coefficient": ["1"]} in doc["terms"]
    assert {"word": [1], "coefficient": ["0", "-2"]} in doc["terms"]


def test_no_invariants_verb(capsys):
    code, doc = run_json(capsys, "no-invariants", "--n", "2", "--deg", "2")
    assert code == 0
    assert doc["only_constants"] is True


def test_orbit_ideal_requires_lambdas(capsys):
    code, doc = run_json(capsys, "orbit-ideal", "--n", "2")
    assert code == 2


def test_orbit_ideal_round_trip(capsys):
    code, doc = run_json(capsys, "orbit-ideal", "--n", "2", "--lambdas", "1")
    assert code == 0
    from orbitquant.poly import MultiPoly

    gen = MultiPoly.from_records(doc["generators"][0])
    from fractions import Fraction

    from orbitquant.invariants import orbit_ideal, semiinvariant_family

    ideal = orbit_ideal([Fraction(1)], semiinvariant_family(2))
    assert gen == ideal.generators[0]


def test_regularity_verb(capsys):
    code, doc = run_json(
        capsys, "regularity", "--n", "2", "--lambdas", "1", "--samples", "5"
    )
    assert code == 0
    assert doc["passed"] is True


def test_semi_check_perturbed_fails(capsys):
    code, doc = run_json(
        capsys, "semi-check", "--n", "2", "--seed", "3", "--perturb"
    )
    assert code == 1
    assert doc["overall"] == "fail"
    assert doc["checks"][0]["status"] == "fail"


def test_semi_check_passes(capsys):
    code, doc = run_json(capsys, "semi-check", "--n", "2", "--seed", "3", "--samples", "5")
    assert code == 0
    assert doc["overall"] == "pass"


def test_verify_deterministic_hash(capsys):
    code1, doc1 = run_json(
        capsys, "verify", "--n", "2", "--deg", "4", "--seed", "11", "--samples", "3"
    )
    code2, doc2 = run_json(
        capsys, "verify", "--n", "2", "--deg", "4", "--seed", "11", "--samples", "3"
    )
    assert code1 == code2 == 0
    assert doc1["content_hash"] == doc2["content_hash"]
    # timing fields are excluded from the hash but present per check
    assert all("elapsed_s" in c for c in doc1["checks"])


def test_star_inline_operands(capsys):
    from orbitquant.lie import DualCoordinates, build_lie_basis
    from orbitquant.poly import MultiPoly

    basis, _ = build_lie_basis(2)
    coords = DualCoordinates(basis)
    one = json.dumps(MultiPoly.constant(coords.variables, 1).to_records())
    code, doc = run_json(
        capsys, "star", "--n", "2", "--lambdas", "1", "--deg", "4",
        "--f", one, "--g", one,
    )
    assert code == 0
    assert doc["terms"] == [{"exponents": [0] * 7, "coefficient": ["1"]}]


def test_emit_report_rejects_empty_check_list():
    from orbitquant.errors import StructuralError
    from orbitquant.verify import emit_report

    with pytest.raises(StructuralError):
        emit_report([])


def test_verify_injected_failure_exit_code(capsys):
    code, doc = run_json(
        capsys, "verify", "--n", "2", "--deg", "4", "--seed", "11",
        "--samples", "2", "--perturb",
    )
    assert code == 1
    assert doc["overall"] == "fail"
    failing = [c for c in doc["checks"] if c["status"] == "fail"]
    assert failing and "residuals" in failing[0]["details"]


def test_entry_point_runs():
    result = subprocess.run(
        [sys.executable, "-m", "orbitquant.cli", "no-invariants", "--n", "2", "--deg", "1"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["only_constants"] is True


@pytest.mark.parametrize(
    "argv,golden",
    [
        (("basis", "--n", "1"), "basis_n1.json"),
        (("pbw", "--n", "1", "--input", "-"), "pbw_n1.json"),
    ],
)
def test_golden_outputs(capsys, monkeypatch, tmp_path, argv, golden):
    import io
    import pathlib

    if "--input" in argv:
        monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps({"word": [1, 0]})))
    code, out = run_cli(capsys, *argv)
    assert code == 0
    expected = (pathlib.Path(__file__).parent / "golden" / golden).read_text()
    assert out == expected
