"""Tests for the command-line interface and config format."""

import math

import pytest
from pytest import approx

from photonrouter import ParseError, ValidationError
from photonrouter.cli import main, parse_config, serialize_config

FIG3_CONFIG = """\
omega1=20
omega2=20
gamma1a=1
gamma1b=1
gamma2a=1
gamma2b=1
L=0.157079632679
"""


class TestParseConfig:
    def test_fig3_parameters(self):
        config = parse_config(FIG3_CONFIG)
        assert config.emitter1.transition_frequency == 20.0
        assert config.emitter2.decay_to_b == 1.0
        assert config.separation == 0.157079632679
        assert config.group_velocity == 1.0  # vg defaults to 1

    def test_comments_and_spacing(self):
        text = "# header\nomega1 = 20 # trailing\n  omega2=21\ngamma1a=1\n" \
               "gamma1b=0.5\ngamma2a=2\ngamma2b=0 # decoupled\nL = 1.0\nvg = 2.0\n"
        config = parse_config(text)
        assert config.emitter2.transition_frequency == 21.0
        assert config.group_velocity == 2.0

    def test_empty_file_lists_all_missing_keys(self):
        with pytest.raises(ParseError) as err:
            parse_config("")
        message = str(err.value)
        for key in ("omega1", "omega2", "gamma1a", "gamma1b", "gamma2a", "gamma2b", "L"):
            assert key in message

    def test_unknown_key_reports_line(self):
        with pytest.raises(ParseError) as err:
            parse_config("omega1=20\nbogus=3\n")
        assert err.value.line == 2
        assert "bogus" in str(err.value)

    def test_bad_number_reports_token(self):
        with pytest.raises(ParseError) as err:
            parse_config("omega1 = twenty\n")
        assert err.value.line == 1
        assert "twenty" in str(err.value)

    def test_duplicate_key_rejected(self):
        with pytest.raises(ParseError):
            parse_config("omega1=20\nomega1=21\n")

    def test_missing_equals_sign(self):
        with pytest.raises(ParseError) as err:
            parse_config("omega1 20\n")
        assert err.value.line == 1

    def test_negative_length_fails_validation(self):
        with pytest.raises(ValidationError):
            parse_config(FIG3_CONFIG.replace("L=0.157079632679", "L=-1"))

    def test_round_trip(self):
        config = parse_config(FIG3_CONFIG)
        assert parse_config(serialize_config(config)) == config


class TestScatterCommand:
    def test_summary_probabilities(self, capsys, tmp_path):
        path = tmp_path / "router.cfg"
        path.write_text(FIG3_CONFIG)
        code = main(["scatter", "--config", str(path), "--k", "20"])
        assert code == 0
        out = capsys.readouterr().out
        values = dict(line.split(" = ") for line in out.strip().splitlines())
        probs = [float(values[k]) for k in ("T_a", "R_a", "Tb_fwd", "Tb_bwd")]
        assert all(0.0 <= p <= 1.0 for p in probs)
        assert float(values["defect"]) < 1e-9

    def test_exactly_singular_point_exits_2(self, capsys):
        code = main([
            "scatter", "--set", f"L={math.pi / 20}", "--k", "20",
        ])
        assert code == 2
        assert "singular" in capsys.readouterr().err

    def test_wavelength_units_flag(self, capsys):
        # L = 0.25 wavelengths at k = 20.2 equals 0.25 * 2*pi/20.2 absolute
        code = main([
            "scatter", "--set", "L=0.25", "--k", "20.2", "--wavelength-units",
        ])
        assert code == 0
        first = capsys.readouterr().out
        absolute = 0.25 * 2.0 * math.pi / 20.2
        code = main(["scatter", "--set", f"L={absolute!r}", "--k", "20.2"])
        assert code == 0
        assert capsys.readouterr().out == first

    def test_bad_config_exits_1(self, capsys, tmp_path):
        path = tmp_path / "broken.cfg"
        path.write_text("omega1=\n")
        code = main(["scatter", "--config", str(path), "--k", "20"])
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_csv_format(self, capsys):
        code = main(["scatter", "--k", "20.4", "--format", "csv"])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "k,T_a,R_a,Tb_fwd,Tb_bwd,defect"
        assert len(lines) == 2


class TestVerifyCommand:
    def test_report_and_determinism(self, capsys):
        code = main(["verify", "--samples", "500", "--seed", "7"])
        assert code == 0
        first = capsys.readouterr().out
        assert "max conservation defect" in first
        assert "result = pass" in first
        code = main(["verify", "--samples", "500", "--seed", "7"])
        assert code == 0
        assert capsys.readouterr().out == first

    def test_seed_changes_report(self, capsys):
        main(["verify", "--samples", "200", "--seed", "1"])
        one = capsys.readouterr().out
        main(["verify", "--samples", "200", "--seed", "2"])
        two = capsys.readouterr().out
        assert one != two


class TestFigureCommand:
    def test_csv_is_byte_identical_across_runs(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        assert main(["figure", "fig3a", "-o", str(a)]) == 0
        assert main(["figure", "fig3a", "-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_heatmap_svg_output(self, tmp_path):
        out = tmp_path / "fig2a.svg"
        assert main(["figure", "fig2a", "--format", "svg", "-o", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("<svg") and text.rstrip().endswith("</svg>")


class TestSweepCommand:
    def test_axis_sweep_csv(self, capsys):
        code = main([
            "sweep", "--axis", "L=0.05:0.3:6", "--k", "20.3", "--format", "csv",
        ])
        assert code == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "x,T_a,R_a,Tb_fwd,Tb_bwd,defect"
        assert len(lines) == 7

    def test_bad_axis_spec(self, capsys):
        assert main(["sweep", "--axis", "L=1:2", "--k", "20"]) == 1

    def test_missing_probe(self, capsys):
        assert main(["sweep", "--axis", "L=0.1:0.2:3"]) == 1


class TestPulseCommand:
    def test_summary_against_model(self, capsys):
        code = main([
            "pulse", "--set", "L=0.3", "--k0", "20.5",
            "--sigma-t", "40", "--duration", "700",
        ])
        assert code == 0
        out = capsys.readouterr().out
        values = dict(line.split(" = ") for line in out.strip().splitlines())
        assert float(values["energy_defect"]) < 1e-4
        assert float(values["model_gap"]) < 5e-3

    def test_trace_csv(self, tmp_path):
        out = tmp_path / "trace.csv"
        code = main([
            "pulse", "--set", "L=0.3", "--k0", "20.5", "--sigma-t", "20",
            "--duration", "400", "--format", "csv", "-o", str(out),
        ])
        assert code == 0
        header = out.read_text().splitlines()[0]
        assert header.startswith("time,re_s1,im_s1,")


class TestOptimizeCommand:
    def test_reports_length_and_value(self, capsys):
        code = main(["optimize", "--set", "L=0.2", "--k", "20.405420870079364"])
        assert code == 0
        values = dict(
            line.split(" = ") for line in capsys.readouterr().out.strip().splitlines()
        )
        assert 0.0 < float(values["L"]) < 0.2
        assert 0.9 < float(values["value"]) <= 1.0 + 1e-9
