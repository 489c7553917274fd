import contextlib
import io
import json

import pytest

from normone.cli import (
    RunConfig,
    _render_csv,
    main,
    parse_table_csv,
    table_rows,
)
from normone.intmat import IntMatrix
from normone.lattice import (
    from_generator_matrices,
    lattice_to_json,
    norm_one_lattice,
)
from normone.perms import (
    FiniteGroup,
    Permutation,
    make_symmetric,
    point_stabilizer,
)


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            code = main(argv)
    except SystemExit as exc:  # argparse signals usage errors this way
        code = exc.code
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def j_s3_spec(tmp_path_factory):
    S3 = make_symmetric(3)
    J = norm_one_lattice(S3, point_stabilizer(S3, 3))
    path = tmp_path_factory.mktemp("specs") / "j_s3.json"
    path.write_text(json.dumps(lattice_to_json(J)))
    return str(path)


@pytest.fixture(scope="module")
def sign_spec(tmp_path_factory):
    C2 = FiniteGroup.from_generators(
        [Permutation.from_cycles([[1, 2]], 2)], 2)
    sign = from_generator_matrices(
        C2, {C2.generators[0]: IntMatrix([[-1]], 1, 1)})
    path = tmp_path_factory.mktemp("specs") / "sign.json"
    path.write_text(json.dumps(lattice_to_json(sign)))
    return str(path)


def test_classify_json():
    code, out, err = run(["classify", "S", "4", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["subject"] == {"family": "S", "n": 4}
    assert doc["verdict"] == "NotPRetractRational"
    last = doc["trace"]["rules"][-1]
    assert last["ref"] == "mainS"
    assert last["witness"]["certificate"]["criterion"] == "ENDO11_THM43"


def test_classify_csv():
    code, out, _ = run(["--format", "csv", "classify", "S", "4", "2"])
    assert code == 0
    assert out.splitlines() == [
        "family,n,p,verdict,rule,ref,criterion",
        "S,4,2,NotPRetractRational,family-certificate,mainS,ENDO11_THM43",
    ]


def test_classify_markdown():
    code, out, _ = run(["--format", "markdown", "classify", "S", "7", "7"])
    assert code == 0
    assert "verdict: PRetractRational (p=7)" in out
    assert "cyclic-sylow [coprime] -> PInvertible" in out


def test_classify_retract_summary():
    code, out, _ = run(["classify", "S", "6", "all"])
    assert code == 0
    doc = json.loads(out)
    assert doc["verdict"] == "NotRetractRational"
    assert doc["subject"] == {"family": "S", "n": 6}
    assert doc["notes"] == [
        "p=2: NotPRetractRational", "p=3: NotPRetractRational"]


def test_usage_errors_exit_2():
    assert run(["classify", "S", "4", "banana"])[0] == 2
    assert run(["classify", "A", "3", "2"])[0] == 2  # degenerate degree
    assert run(["classify", "S", "1", "7"])[0] == 2
    assert run(["--primes", "2,4", "--max-n", "4", "table"])[0] == 2
    assert run(["nonsense"])[0] == 2


def test_table_csv_round_trip():
    config = RunConfig(max_n=6, primes=(2, 3, 5))
    rows = table_rows(config)
    assert len(rows) == 15 + 9  # S: n=2..6, A: n=4..6
    text = _render_csv(rows)
    assert _render_csv(parse_table_csv(text)) == text


def test_table_markdown_grid():
    code, out, _ = run(
        ["--format", "markdown", "--max-n", "6", "--primes", "2,3", "table"])
    assert code == 0
    assert "## S_n" in out and "## A_n" in out
    assert "| 4 | Not (mainS) | Yes |" in out
    assert "| 6 | Not (evenS) | Not (oddprimeS) |" in out
    assert "| 4 | Not (evenA1) | Yes |" in out
    assert "| 6 | Not (evenA2) | Not (oddprimeA) |" in out


def test_table_jobs_deterministic():
    base = run(["--format", "csv", "--max-n", "6", "--primes", "2,3", "table"])
    jobs = run(["--format", "csv", "--max-n", "6", "--primes", "2,3",
                "--jobs", "4", "table"])
    assert base[0] == jobs[0] == 0
    assert base[1] == jobs[1]


def test_table_empty_primes():
    code, out, _ = run(["--primes", "", "--max-n", "4", "--format", "csv",
                        "table"])
    assert code == 0
    assert out == "family,n,p,verdict,rule,ref,criterion\n"


def test_resolve_ranks(j_s3_spec, sign_spec):
    code, out, _ = run(["resolve", j_s3_spec])
    assert code == 0
    doc = json.loads(out)
    assert doc["ranks"] == "2+7=9"
    assert doc["perm_rank"] == 9

    code, out, _ = run(["resolve", sign_spec])
    assert code == 0
    assert json.loads(out)["ranks"] == "1+1=2"


def test_cohomology_command(j_s3_spec):
    code, out, _ = run(["cohomology", j_s3_spec, "--subgroup", "(1 2 3)"])
    assert code == 0
    doc = json.loads(out)
    assert doc["degree"] == -1
    assert doc["subgroup_order"] == 3
    assert doc["group"] == "[3]"

    code, out, _ = run(["cohomology", j_s3_spec, "--degree", "0"])
    assert code == 0
    doc = json.loads(out)
    assert doc["subgroup_order"] == 6
    assert doc["group"] == "0"


def test_cohomology_bad_subgroup(j_s3_spec):
    assert run(["cohomology", j_s3_spec, "--subgroup", "(1 2"])[0] == 2


def test_spec_file_errors(tmp_path):
    code, _, err = run(["resolve", str(tmp_path / "missing.json")])
    assert code == 2
    assert "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    code, _, err = run(["resolve", str(bad)])
    assert code == 2
    assert "malformed JSON" in err


def test_verify_paper_bounded_pass():
    code, out, _ = run(["--max-n", "4", "--primes", "2,3", "verify-paper"])
    assert code == 0
    report = json.loads(out)
    assert report["failures"] == []
    assert report["passed"] == report["total"] > 0


def test_verify_paper_fault_injection():
    code, out, _ = run(["--max-n", "4", "--primes", "2,3", "verify-paper",
                        "--inject-fault", "endo11-n4"])
    assert code == 1
    report = json.loads(out)
    assert report["failures"] == ["endo11-n4 (S, n=4, p=2)"]
    bad = [c for c in report["checks"] if c["status"] == "FAIL"]
    assert len(bad) == 1
    assert "decomposition" in bad[0]["detail"]


def test_verify_paper_unknown_fault_target():
    code, _, err = run(["--max-n", "4", "verify-paper",
                        "--inject-fault", "nosuch"])
    assert code == 2
    assert "no proposition named" in err
