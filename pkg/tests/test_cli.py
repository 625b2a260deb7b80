"""File loading and the command-line front end."""

import json

import pytest

from wickstar import InputError, parse
from wickstar.cli import main
from wickstar.jsonio import load_action, load_chart, load_field, load_map

from conftest import DATA


def test_load_chart_study():
    chart = load_chart(DATA / "charts" / "fs_cp1.json")
    assert chart.dim == 1 and chart.order == 4
    assert chart.u[0][0] == parse("w1/(1+z1*w1)", 1)
    assert chart.v is not None


def test_load_chart_order_override():
    chart = load_chart(DATA / "charts" / "flat_c1.json", order_override=2)
    assert chart.order == 2


def test_load_chart_with_corrections():
    chart = load_chart(DATA / "charts" / "flat_nu1.json")
    assert chart.u[1][0] == parse("w1", 1)
    assert chart.v[1][0] == parse("z1", 1)


def test_load_chart_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError, match="invalid JSON"):
        load_chart(bad)
    missing = tmp_path / "missing.json"
    with pytest.raises(InputError, match="no such file"):
        load_chart(missing)
    degenerate = tmp_path / "degenerate.json"
    degenerate.write_text(json.dumps({"dimension": 2, "order": 1, "u": [["w1", "0"]]}))
    from wickstar import ValidationError

    with pytest.raises(ValidationError):
        load_chart(degenerate)


def test_load_chart_double_correction_rejected(tmp_path):
    path = tmp_path / "chart.json"
    path.write_text(
        json.dumps(
            {
                "dimension": 1,
                "order": 2,
                "u": [["w1"], ["w1"]],
                "corrections": [{"order": 1, "u": ["w1"]}],
            }
        )
    )
    with pytest.raises(InputError, match="twice"):
        load_chart(path)


def test_load_field_and_map():
    field = load_field(DATA / "fields" / "rotation.json", 1)
    assert field.hol[0] == parse("i*z1", 1)
    phi = load_map(DATA / "maps" / "translation.json", 1)
    assert phi.pullback(parse("z1", 1)) == parse("z1 + 1", 1)


def test_load_map_bad_inverse(tmp_path):
    path = tmp_path / "map.json"
    path.write_text(json.dumps({"hol": ["z1 + 1"], "inverse": {"hol": ["z1 + 1"]}}))
    from wickstar import ValidationError

    with pytest.raises(ValidationError):
        load_map(path, 1)


def test_load_action_su2():
    action = load_action(DATA / "actions" / "su2_cp1.json", 1)
    assert action.m == 3
    assert action.c(2, 0, 1) == parse("1", 1).constant_value()


def test_load_action_rejects_bad_brackets(tmp_path):
    path = tmp_path / "act.json"
    path.write_text(
        json.dumps(
            {
                "dim": 2,
                "structure": [[1, 1, 2, "1"]],
                "fields": [
                    {"hol": ["1"], "antihol": ["1"]},
                    {"hol": ["i"], "antihol": ["-i"]},
                ],
            }
        )
    )
    with pytest.raises(InputError):
        load_action(path, 1)


# -- CLI end to end -----------------------------------------------------------------


def chart_arg(name):
    return str(DATA / "charts" / name)


def test_cli_star_text(capsys):
    code = main(
        ["star", "--chart", chart_arg("flat_c1.json"), "--left", "z1", "--right", "w1", "--order", "2"]
    )
    out = capsys.readouterr().out.strip()
    assert code == 0 and out == "z1*w1 + v"


def test_cli_star_json_round_trip(capsys):
    code = main(
        [
            "star", "--chart", chart_arg("fs_cp1.json"),
            "--left", "z1*w1", "--right", "w1", "--order", "2", "--format", "json",
        ]
    )
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    series = [parse(c, 1) for c in report["series"]]
    chart = load_chart(DATA / "charts" / "fs_cp1.json", order_override=2)
    from wickstar import StarProduct

    product = StarProduct(chart)
    direct = product.star_rf(parse("z1*w1", 1), parse("w1", 1))
    assert all(series[r] == direct[r] for r in range(3))


def test_cli_determinism(capsys):
    args = [
        "qmm", "--chart", chart_arg("fs_cp1.json"),
        "--action", str(DATA / "actions" / "su2_cp1.json"),
        "--order", "2", "--format", "json",
    ]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second


def test_cli_verify_assoc(capsys):
    code = main(["verify", "assoc", "--chart", chart_arg("flat_c1.json"), "--order", "2"])
    assert code == 0
    assert "PASS" in capsys.readouterr().out


def test_cli_verify_wick_and_roundtrip(capsys):
    assert main(["verify", "wick-type", "--chart", chart_arg("flat_nu1.json"), "--order", "2"]) == 0
    assert main(["verify", "roundtrip", "--chart", chart_arg("hyperbolic_disc.json"), "--order", "2"]) == 0


def test_cli_invariance_exit_codes():
    assert (
        main(
            [
                "invariance", "--chart", chart_arg("fs_cp1.json"),
                "--field", str(DATA / "fields" / "rotation.json"), "--order", "2",
            ]
        )
        == 0
    )
    assert (
        main(
            [
                "invariance", "--chart", chart_arg("flat_c1.json"),
                "--field", str(DATA / "fields" / "z_squared.json"), "--order", "2",
            ]
        )
        == 1
    )


def test_cli_automorphism_exit_codes():
    assert (
        main(
            [
                "automorphism", "--chart", chart_arg("flat_c1.json"),
                "--map", str(DATA / "maps" / "translation.json"), "--order", "2",
            ]
        )
        == 0
    )
    assert (
        main(
            [
                "automorphism", "--chart", chart_arg("flat_c1.json"),
                "--map", str(DATA / "maps" / "scaling.json"), "--order", "2",
            ]
        )
        == 1
    )


def test_cli_quasi_inner(capsys):
    code = main(
        [
            "quasi-inner", "--chart", chart_arg("flat_c1.json"),
            "--field", str(DATA / "fields" / "rotation.json"),
            "--candidate", "i*z1*w1", "--order", "2",
        ]
    )
    assert code == 0


def test_cli_qmm_obstructed(capsys):
    code = main(
        [
            "qmm", "--chart", chart_arg("flat_c1.json"),
            "--action", str(DATA / "actions" / "translations_flat.json"), "--order", "3",
        ]
    )
    out = capsys.readouterr().out
    assert code == 1
    assert "OBSTRUCTED" in out and "-2*i" in out


def test_cli_strong_invariance(capsys):
    code = main(
        [
            "strong-invariance", "--chart", chart_arg("flat_c1.json"),
            "--action", str(DATA / "actions" / "translations_flat.json"),
            "--order", "2",
        ]
    )
    assert code == 0


def test_cli_bt(capsys):
    code = main(["bt", "--chart", chart_arg("fs_cp1.json"), "--order", "2", "--format", "json"])
    assert code == 0
    report = json.loads(capsys.readouterr().out)
    # The emitted chart re-parses and re-validates.
    u1 = parse(report["chart"]["u"][1][0], 1)
    fs = load_chart(DATA / "charts" / "fs_cp1.json")
    m = fs.metric()
    assert u1 == m.detg.diff(0) / m.detg


def test_cli_invalid_input_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    assert main(["karabegov", "--chart", str(bad)]) == 2
    assert "error" in capsys.readouterr().err
