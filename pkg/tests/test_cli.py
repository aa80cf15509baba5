import io
import json

import pytest

from algdoe import PolyRing, format_design
from algdoe.cli import run


@pytest.fixture()
def workdir(tmp_path, l8, d22, three_level_integer):
    (tmp_path / "l8.design").write_text(format_design(l8))
    (tmp_path / "d22.design").write_text(format_design(d22))
    (tmp_path / "d331.design").write_text(format_design(three_level_integer))
    (tmp_path / "main2.model").write_text("1\nx1\nx2\n")
    (tmp_path / "main3.model").write_text("1\nx1\nx2\nx3\n")
    (tmp_path / "counts.txt").write_text("0 2 2 0\n")
    return tmp_path


def invoke(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def test_gb_lex_golden(workdir):
    code, text = invoke(
        "gb", "--design", str(workdir / "l8.design"), "--order", "lex"
    )
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "order=lex vars=x1,x2,x3,x4,x5,x6,x7"
    assert set(lines[1:]) == {
        "x7^2-1", "x6^2-1", "x5^2-1",
        "x3+x5*x6", "x2+x5*x7", "x1+x6*x7", "x4-x5*x6*x7",
    }


def test_gb_from_generator_file(workdir):
    gens = workdir / "gens.poly"
    gens.write_text(
        "order=lex vars=x1,x2\n"
        "x1^2-1\n"
        "x1*x2-1\n"
    )
    code, text = invoke("gb", "--gens", str(gens), "--order", "lex")
    assert code == 0
    body = text.strip().splitlines()[1:]
    assert set(body) == {"x2^2-1", "x1-x2"}


def test_est_golden(workdir):
    code, text = invoke(
        "est", "--design", str(workdir / "l8.design"), "--order", "grevlex"
    )
    assert code == 0
    assert text.strip() == "1, x1, x2, x3, x4, x5, x6, x7"
    code, text = invoke(
        "est", "--design", str(workdir / "l8.design"), "--order", "lex"
    )
    assert code == 0
    assert text.strip() == "1, x5, x6, x7, x5*x6, x5*x7, x6*x7, x5*x6*x7"


def test_emitted_polynomials_reparse(workdir):
    code, text = invoke(
        "ideal", "--design", str(workdir / "l8.design"), "--order", "lex"
    )
    assert code == 0
    lines = text.strip().splitlines()
    ring = PolyRing(lines[0].split("vars=")[1].split(","))
    for line in lines[1:]:
        f = ring.parse(line)
        from algdoe import TermOrder

        assert f.text(TermOrder.lex(7)) == line


def test_alias_json(workdir):
    code, text = invoke("alias", "--design", str(workdir / "l8.design"))
    assert code == 0
    payload = json.loads(text)
    assert payload["schema"] == 1
    x3_class = next(
        cls
        for cls in payload["classes"]
        if any(entry["monomial"] == "x3" for entry in cls)
    )
    assert {"monomial": "x1*x2", "sign": -1} in x3_class


def test_indicator_and_addfactors_round_trip(workdir, tmp_path):
    code, text = invoke("indicator", "--design", str(workdir / "d22.design"))
    assert code == 0
    assert text.splitlines()[0] == "m=2"
    ind_file = tmp_path / "base.indicator"
    # full factorial on one factor, then add y1 = x1 as a defined column
    ind_file.write_text("m=1\n1\n")
    rels = tmp_path / "rels.txt"
    rels.write_text("-x1\n")
    code, text = invoke(
        "addfactors", "--indicator", str(ind_file), "--relations", str(rels)
    )
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "m=2"
    assert lines[1] == "-1/2*x1*x2+1/2"
    # the output is itself a valid indicator file
    again = tmp_path / "ext.indicator"
    again.write_text(text)
    code, text2 = invoke(
        "addfactors", "--indicator", str(again), "--relations", str(rels)
    )
    assert code == 0


def test_classify_json(workdir):
    code, text = invoke("classify", "--design", str(workdir / "d22.design"))
    payload = json.loads(text)
    assert (code, payload["class"]) == (0, "full-factorial")


def test_model_and_basis_json(workdir):
    code, text = invoke(
        "model",
        "--design", str(workdir / "d22.design"),
        "--model", str(workdir / "main2.model"),
    )
    assert code == 0
    payload = json.loads(text)
    assert payload["labels"] == ["1", "x1", "x2"]
    assert payload["entries"][0] == ["1", "1", "1"]

    code, text = invoke(
        "basis",
        "--design", str(workdir / "d22.design"),
        "--model", str(workdir / "main2.model"),
    )
    payload = json.loads(text)
    assert payload["count"] == 1
    assert payload["moves"][0] in ([1, -1, -1, 1], [-1, 1, 1, -1])


def test_mctest_requires_seed(workdir, capsys):
    with pytest.raises(SystemExit) as exc:
        invoke(
            "mctest",
            "--design", str(workdir / "d22.design"),
            "--model", str(workdir / "main2.model"),
            "--y", str(workdir / "counts.txt"),
        )
    assert exc.value.code == 2


def test_mctest_and_exact_agree(workdir):
    code, text = invoke(
        "exact",
        "--design", str(workdir / "d22.design"),
        "--model", str(workdir / "main2.model"),
        "--y", str(workdir / "counts.txt"),
        "--stat", "pearson",
    )
    assert code == 0
    exact = json.loads(text)
    assert exact["p_exact"] == "1/3"

    code, text = invoke(
        "mctest",
        "--design", str(workdir / "d22.design"),
        "--model", str(workdir / "main2.model"),
        "--y", str(workdir / "counts.txt"),
        "--stat", "pearson",
        "--seed", "7",
        "--burnin", "1000",
        "--samples", "20000",
    )
    assert code == 0
    mc = json.loads(text)
    assert abs(mc["p_value"] - exact["p_value"]) <= max(3 * mc["std_error"], 0.01)
    assert mc["chain"]["seed"] == 7


def test_three_level_contrasts_same_exact_p(workdir, tmp_path):
    counts = tmp_path / "y9.txt"
    counts.write_text("1 1 1 1 1 1 1 1 1\n")
    values = {}
    for contrast in ("baseline", "symmetric", "complex"):
        code, text = invoke(
            "exact",
            "--design", str(workdir / "d331.design"),
            "--model", str(workdir / "main3.model"),
            "--contrast", contrast,
            "--y", str(counts),
        )
        assert code == 0
        values[contrast] = json.loads(text)["p_exact"]
    assert len(set(values.values())) == 1


def test_doptimal_json():
    code, text = invoke("doptimal", "--m", "3", "--n", "4")
    payload = json.loads(text)
    assert code == 0
    assert payload["optimum"] == 256
    assert payload["optima_count"] == 2
    assert payload["class_histogram"] == {"regular": 2}


def test_input_error_exit_code(tmp_path):
    bad = tmp_path / "bad.design"
    bad.write_text("m=2 s=2 coding=pm1\n1 1\n1 1\n")
    code, _ = invoke("gb", "--design", str(bad), "--order", "lex")
    assert code == 2
    code, _ = invoke("gb", "--design", str(tmp_path / "missing.design"))
    assert code == 2


def test_budget_exit_code(workdir):
    code, _ = invoke(
        "gb",
        "--design", str(workdir / "l8.design"),
        "--order", "lex",
        "--max-pairs", "2",
    )
    assert code == 3
