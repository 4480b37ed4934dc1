import json

import pytest

from center_order.cli import EXIT_OK, EXIT_UNDETERMINED, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_eval(capsys):
    code, out = run(capsys, "eval", "2", "--sides", "3,4,5")
    assert code == EXIT_OK and "(1:1:1)" in out.out
    code, out = run(capsys, "eval", "30", "--sides", "6,9,13")
    assert code == EXIT_OK and "INFINITY" in out.out.upper()
    code, out = run(capsys, "eval", "23", "--squares", "1,4,1/2+1/2*sqrt(61)", "--json")
    doc = json.loads(out.out)
    assert code == EXIT_OK and doc["coordinates"][1] == "0"


def test_compare_exit_codes(capsys):
    code, out = run(capsys, "compare", "--order", "iso", "20", "22", "--json")
    assert code == EXIT_OK and json.loads(out.out)["verdict"] == "CertifiedPrecedes"
    code, out = run(capsys, "compare", "--order", "vertex", "3", "9", "--samples", "500", "--grid", "6",
                    "--no-certify", "--json")
    doc = json.loads(out.out)
    assert code == EXIT_UNDETERMINED and doc["direction"] == "precedes"


def test_usage_errors(capsys):
    assert run(capsys, "eval", "99999", "--sides", "3,4,5")[0] == EXIT_USAGE
    assert run(capsys, "eval", "2", "--sides", "1,2,3")[0] == EXIT_USAGE
    assert run(capsys, "compare", "--order", "sideways", "1", "2")[0] == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == EXIT_USAGE


def test_print_config(capsys):
    code, out = run(capsys, "compare", "--order", "side", "1", "2", "--seed", "7", "--print-config")
    assert code == EXIT_OK and '"rng_seed": 7' in out.out


def test_coincide(capsys):
    code, out = run(capsys, "coincide", "5", "15", "--json")
    roots = json.loads(out.out)["roots"]
    assert code == EXIT_OK and abs(roots[0]["k"] - 1.9318516) < 1e-6


def test_graph_json_is_reproducible(capsys, tmp_path):
    outs = []
    for i in range(2):
        p = tmp_path / f"g{i}.json"
        code, _ = run(capsys, "graph", "--order", "iso", "--range", "1..8", "-o", str(p))
        assert code in (EXIT_OK, EXIT_UNDETERMINED)
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["order"] == "iso"


def test_render_and_validate(capsys, tmp_path):
    spec = tmp_path / "fig.json"
    spec.write_text(json.dumps({"sides": [3, 4, 5], "centers": [1, 2]}))
    svg = tmp_path / "fig.svg"
    assert run(capsys, "render", str(spec), "-o", str(svg))[0] == EXIT_OK
    assert svg.read_text().startswith("<?xml")
    code, out = run(capsys, "validate")
    assert code == EXIT_OK
