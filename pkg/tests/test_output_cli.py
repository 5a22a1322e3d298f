import io
import json
import math
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given
from hypothesis import strategies as st

from goldens import DEATH_BA, R_C, R_H
from sds_steer import cli
from sds_steer import sweep as sw
from sds_steer.output import format_cell, parse_csv, render_csv, render_json
from sds_steer.pipeline import steering_from_spacetime
from sds_steer.spacetime import SdSParameters, horizon_thermodynamics
from sds_steer.svg import REGIME_COLORS, cell_map, line_plot


cell = st.one_of(
    st.none(),
    st.booleans(),
    st.floats(allow_nan=False, allow_infinity=False),
    st.sampled_from(["two-way", "one-way-ab", "no-way", "membrane"]),
)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestCsv:
    def test_format(self):
        assert format_cell(None) == ""
        assert format_cell(True) == "true"
        assert format_cell(0.1) == "0.10000000000000001"
        assert format_cell(1.0) == "1"
        assert format_cell("no-way") == "no-way"

    def test_layout(self):
        text = render_csv([{"a": 1.5, "b": None}, {"a": False, "b": "x"}], ["a", "b"])
        assert text == "a,b\n1.5,\nfalse,x\n"
        assert "\r" not in text

    @given(st.lists(st.tuples(cell, cell, cell), max_size=20))
    def test_round_trip_bytes(self, rows):
        cols = ["x", "flag", "regime"]
        text = render_csv([dict(zip(cols, r)) for r in rows], cols)
        parsed_cols, records = parse_csv(text)
        assert parsed_cols == cols
        assert render_csv(records, parsed_cols) == text

    @given(st.floats(allow_nan=False, allow_infinity=False))
    def test_floats_exact(self, x):
        _, [rec] = parse_csv(render_csv([{"x": x}], ["x"]))
        assert rec["x"] == x

    def test_sweep_round_trip(self):
        spec = sw.figure_preset("fig6")
        text = render_csv([r.as_record(spec.outputs) for r in sw.run_sweep(spec)], spec.outputs)
        cols, records = parse_csv(text)
        assert render_csv(records, cols) == text

    def test_empty(self):
        assert parse_csv("") == ([], [])


class TestJson:
    def test_record(self):
        text = render_json({"a": 1.0, "b": math.inf, "c": None})
        assert text.endswith("\n")
        assert json.loads(text) == {"a": 1.0, "b": None, "c": None}

    def test_list(self):
        assert json.loads(render_json([{"a": 1}, {"a": math.nan}])) == [{"a": 1}, {"a": None}]


class TestSvg:
    def test_line_plot_well_formed(self):
        svg = line_plot([0, 1, 2, 3], {"g_ab": [1, 0.5, None, 0.2], "g_ba": [0.8, 0.1, 0, 0]}, title="t", xlabel="M")
        root = ET.fromstring(svg)
        polylines = [e for e in root.iter() if e.tag.endswith("polyline")]
        # the None breaks g_ab into two runs
        assert len(polylines) == 3
        assert "g_ab" in svg and "g_ba" in svg

    def test_cell_map_categorical(self):
        svg = cell_map([0, 1], [0, 1], [["two-way", "no-way"], ["one-way-ab", None]], categorical=dict(REGIME_COLORS))
        ET.fromstring(svg)
        for color in ("#d62728", "#ffd92f", "#1f77b4", "#bbbbbb"):
            assert color in svg
        assert "inadmissible" in svg

    def test_cell_map_numeric(self):
        svg = cell_map([0, 1], [0, 1], [[0.0, 0.5], [None, 1.0]])
        ET.fromstring(svg)
        assert "#440154" in svg and "#fde725" in svg

    def test_constant_series(self):
        ET.fromstring(line_plot([0, 1], {"flat": [0.0, 0.0]}))


class TestCliHorizons:
    def test_json(self):
        code, out, _ = run("horizons", "--mass", "0.1", "--lambda", "1", "--omega", "1")
        assert code == 0
        data = json.loads(out)
        assert data["r_h"] == pytest.approx(R_H, rel=1e-13)
        assert data["r_c"] == pytest.approx(R_C, rel=1e-13)
        assert data["entropy"] > 0

    def test_csv(self):
        code, out, _ = run("horizons", "--mass", "0.1", "--lambda", "1", "--format", "csv")
        cols, [rec] = parse_csv(out)
        assert code == 0 and "kappa_u" in cols
        assert rec["r_h"] == horizon_thermodynamics(0.1, 1.0).r_h

    def test_nariai_exit_2(self):
        code, out, err = run("horizons", "--mass", "0.4", "--lambda", "1", "--omega", "1")
        assert code == 2 and out == ""
        assert "Nariai" in err

    def test_zero_mass_exit_1(self):
        code, _, err = run("horizons", "--mass", "0", "--lambda", "1")
        assert code == 1 and "mass" in err

    def test_bad_flag_exit_1(self, capsys):
        code, _, _ = run("horizons", "--mass", "abc", "--lambda", "1")
        assert code == 1
        assert "usage" in capsys.readouterr().err

    def test_no_command_exit_1(self, capsys):
        assert run()[0] == 1


class TestCliSteer:
    def test_no_way(self):
        code, out, _ = run("steer", "--mass", "0.01", "--lambda", "1", "--s", "3", "--omega", "0.2", "--scenario", "membrane")
        assert code == 0
        assert json.loads(out)["regime"] == "no-way"

    def test_effective(self):
        code, out, _ = run("steer", "--mass", "0.5", "--lambda", "0.2", "--s", "1", "--scenario", "effective")
        assert code == 0
        assert json.loads(out)["asym"] == 0.0

    def test_near_nariai(self):
        mass = repr((1 - 1e-8) / 3)
        _, out, _ = run("steer", "--mass", mass, "--lambda", "1", "--s", "1", "--omega", "1")
        data = json.loads(out)
        assert data["g_ab"] == pytest.approx(math.log(math.cosh(2)), abs=1e-3)
        assert data["g_ba"] == pytest.approx(math.log(math.cosh(2)), abs=1e-3)

    def test_thin_adapter(self):
        _, out, _ = run("steer", "--mass", "0.1", "--lambda", "1", "--s", "1", "--omega", "0.5")
        res = steering_from_spacetime(SdSParameters(0.1, 1.0, 0.5), 1.0)
        expected = render_json({"mass": 0.1, "lambda": 1.0, "omega": 0.5, **res.as_record()})
        assert out == expected

    def test_numeric_flag(self):
        _, a, _ = run("steer", "--mass", "0.1", "--lambda", "1", "--s", "1")
        _, b, _ = run("steer", "--mass", "0.1", "--lambda", "1", "--s", "1", "--numeric")
        assert json.loads(a)["g_ab"] == pytest.approx(json.loads(b)["g_ab"], abs=1e-12)

    def test_overflow_is_domain_error(self):
        code, _, err = run("steer", "--mass", "0.1", "--lambda", "1", "--s", "1", "--omega", "1e-20")
        assert code == 2 and "temperature" in err


class TestCliSweep:
    def test_flags(self):
        code, out, _ = run("sweep", "--vary", "s", "--lo", "0", "--hi", "1", "--steps", "3",
                           "--mass", "0.1", "--lambda", "1", "--omega", "1")
        assert code == 0
        cols, recs = parse_csv(out)
        assert cols == list(sw.COLUMNS)
        assert [r["s"] for r in recs] == [0.0, 0.5, 1.0]

    def test_preset_file(self, tmp_path):
        spec = sw.figure_preset("fig4b")
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(spec.as_dict()))
        code, out, _ = run("sweep", "--preset", str(path))
        assert code == 0
        expected = render_csv([r.as_record(spec.outputs) for r in sw.run_sweep(spec)], spec.outputs)
        assert out == expected

    def test_json_output_to_file(self, tmp_path):
        target = tmp_path / "o.json"
        code, out, _ = run("sweep", "--vary", "mass", "--lo", "0.1", "--hi", "0.4", "--steps", "2",
                           "--lambda", "1", "--s", "1", "--omega", "1", "--format", "json", "--out", str(target))
        assert code == 0 and out == ""
        data = json.loads(target.read_text())
        assert data[1]["admissible"] is False and data[1]["g_ab"] is None

    def test_invalid_spec(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"fixed": {"mass": 0.1}, "axis1": ["s", 1, 0, 1]}))
        code, _, err = run("sweep", "--preset", str(path))
        assert code == 1 and "invalid sweep spec" in err

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{nope")
        assert run("sweep", "--preset", str(path))[0] == 1

    def test_missing_preset_file(self, tmp_path):
        assert run("sweep", "--preset", str(tmp_path / "absent.json"))[0] == 3

    def test_neither_preset_nor_axis(self):
        code, _, err = run("sweep", "--mass", "0.1")
        assert code == 1 and "--preset" in err

    def test_threads_env(self, monkeypatch):
        args = ("sweep", "--vary", "mass", "--lo", "0.01", "--hi", "0.3", "--steps", "50",
                "--lambda", "1", "--s", "1", "--omega", "1")
        single = run(*args)[1]
        monkeypatch.setenv("SDS_STEER_THREADS", "4")
        assert run(*args)[1] == single
        monkeypatch.setenv("SDS_STEER_THREADS", "zero")
        assert run(*args)[0] == 1


class TestCliFigure:
    def test_fig2_csv(self, tmp_path):
        code, out, _ = run("figure", "fig2", "--out", str(tmp_path))
        assert code == 0
        path = tmp_path / "fig2.csv"
        assert out.strip() == str(path)
        cols, recs = parse_csv(path.read_text())
        assert cols == ["mass", "kappa_h", "kappa_c", "g_ab", "g_ba", "asym", "regime"]
        assert len(recs) == 400

    def test_deterministic(self, tmp_path):
        run("figure", "fig5b", "--out", str(tmp_path / "a"))
        run("figure", "fig5b", "--out", str(tmp_path / "b"))
        assert (tmp_path / "a" / "fig5b.csv").read_bytes() == (tmp_path / "b" / "fig5b.csv").read_bytes()

    def test_fig6_plot_regions(self, tmp_path):
        code, out, _ = run("figure", "fig6", "--out", str(tmp_path), "--with-plot")
        assert code == 0 and len(out.splitlines()) == 2
        svg = (tmp_path / "fig6.svg").read_text()
        ET.fromstring(svg)
        for tag in ("two-way", "one-way-ab", "no-way"):
            assert f'fill="{REGIME_COLORS[tag]}"' in svg

    @pytest.mark.parametrize("fig", ["fig3", "fig7b", "fig5a"])
    def test_plots_parse(self, tmp_path, fig):
        assert run("figure", fig, "--out", str(tmp_path), "--with-plot")[0] == 0
        ET.fromstring((tmp_path / f"{fig}.svg").read_text())

    def test_unwritable(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        code, _, err = run("figure", "fig2", "--out", str(blocker))
        assert code == 3 and "I/O" in err

    def test_unknown_figure(self):
        assert run("figure", "fig9")[0] == 1


class TestCliBoundary:
    def test_death_ba(self):
        code, out, _ = run("boundary", "death-ba", "--vary", "mass", "--lo", "0.02", "--hi", "0.33",
                           "--lambda", "1", "--s", "1", "--omega", "0.2", "--tol", "1e-12")
        assert code == 0
        data = json.loads(out)
        assert abs(data["root"] - DEATH_BA) < 1e-10
        assert abs(data["residual"]) < 1e-8

    def test_repeatable(self):
        args = ("boundary", "death-ab", "--vary", "mass", "--lo", "0.02", "--hi", "0.33",
                "--lambda", "1", "--s", "1", "--omega", "0.2", "--tol", "1e-10")
        assert run(*args)[1] == run(*args)[1]

    def test_bracket_exit_4(self):
        code, _, err = run("boundary", "death-ab", "--vary", "mass", "--lo", "0.2", "--hi", "0.3",
                           "--lambda", "1", "--s", "1", "--omega", "0.2")
        assert code == 4
        assert "objective(0.2)" in err

    def test_domain_exit_2(self):
        code, _, _ = run("boundary", "death-ab", "--vary", "mass", "--lo", "0.02", "--hi", "0.5",
                         "--lambda", "1", "--s", "1", "--omega", "0.2")
        assert code == 2

    def test_missing_fixed_exit_1(self):
        assert run("boundary", "death-ab", "--vary", "mass", "--lo", "0.02", "--hi", "0.3", "--lambda", "1")[0] == 1


class TestCliMaxAsym:
    def test_fig2(self):
        code, out, _ = run("max-asym", "--vary", "mass", "--lo", "0.02", "--hi", "0.33",
                           "--lambda", "1", "--s", "1", "--omega", "0.2", "--format", "csv")
        assert code == 0
        _, [rec] = parse_csv(out)
        assert rec["location"] == pytest.approx(DEATH_BA, abs=1e-6)
        assert rec["max_asym"] <= math.log(2)
