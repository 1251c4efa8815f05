"""
Command-line tests.

Validates:
- Worked subcommand examples and canonical output
- Documented exit codes for parse, validation and numeric failures
- Deterministic --json output and run files for the lattice subcommands
"""

import json

import pytest

from main import main, run


def lattice_config(tmp_path, **overrides):
    document = {
        "sites": 1, "dx": 1.0, "mass": 1.0, "hbar": 1.0, "k": 4, "cutoff": 6,
        "t0": -6.0, "t1": 6.0, "dt": 0.01,
        "g": {"shape": "gauss", "amp": 0.01, "width": 1.0},
        "j": {"shape": "const_window", "amp": 0.0, "from": -1.0, "to": 1.0},
    }
    document.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(document))
    return str(path)


class TestAlgebraCommands:
    def test_bracket(self):
        result = run(["bracket", "pi[1]", "phi[1]", "--modes", "1"])
        assert (result.exit_code, result.text) == (0, "1")

    def test_normal_star(self):
        result = run(["star", "--kind", "normal", "pi[1]", "phi[1]", "--lambda", "-ih", "--modes", "1"])
        assert result.text == "phi[1]*pi[1] - i*h"

    def test_weyl_star(self):
        result = run(["star", "--kind", "weyl", "pi[1]", "phi[1]"])
        assert result.text == "phi[1]*pi[1] - 1/2*i*h"

    def test_normal_form(self):
        result = run(["nf", "D(0; pi[1]) * D(phi[1]; 0)", "--lambda", "h", "--modes", "1"])
        assert result.text == "phi[1]*pi[1] + h"

    def test_random_strategy_agrees(self):
        word = "D(phi[1]^2; pi[1]) * D(0; phi[1]*pi[1]) * pi[1]"
        leftmost = run(["nf", word, "--lambda", "h"])
        shuffled = run(["nf", word, "--lambda", "h", "--strategy", "random", "--seed", "7"])
        assert leftmost.exit_code == 0
        assert leftmost.text == shuffled.text

    def test_renorm(self):
        result = run(["renorm", "phi[1]*pi[1]", "--lambda", "h"])
        assert result.text == "phi[1]*pi[1] + 1/2*h"
        back = run(["renorm", "phi[1]*pi[1] + 1/2*h", "--lambda", "h", "--direction", "normal-to-weyl"])
        assert back.text == "phi[1]*pi[1]"

    def test_involution(self):
        assert run(["involution", "D(0; pi[1])", "--lambda", "h"]).text == "-pi[1]"
        assert run(["involution", "D(0; pi[1])", "--lambda", "-ih"]).text == "pi[1]"

    def test_wick(self):
        result = run(["wick", "phi[1]^2 + pi[1]^2", "--omega", "1"])
        assert result.text == "phi[1]*pi[1]"

    def test_decompose(self):
        result = run(["decompose", "phi[1]^2 + phi[1]*pi[1]"])
        assert result.text == "(2,0): phi[1]^2\n(1,1): phi[1]*pi[1]"

    def test_derive(self):
        result = run(["derive", "phi[1]^2*pi[1]", "--var", "phi", "--mode", "1"])
        assert result.text == "2*phi[1]*pi[1]"

    def test_json_output_is_deterministic(self):
        argv = ["star", "pi[1]^2", "phi[1]^2", "--modes", "2", "--json"]
        first, second = run(argv), run(argv)
        assert first.text == second.text
        document = json.loads(first.text)
        assert document["modes"] == 2
        assert len(document["terms"]) == 3


class TestExitCodes:
    def test_parse_error(self, capsys):
        assert main(["bracket", "phi[1]^-2", "phi[1]"]) == 2
        err = capsys.readouterr().err
        assert "error: " in err
        assert "phi[1]^-2\n       ^" in err

    def test_non_ascii_digits_are_parse_errors(self, capsys):
        assert main(["bracket", "phi[1]²", "phi[1]"]) == 2
        err = capsys.readouterr().err
        assert "phi[1]²\n      ^" in err
        assert "Traceback" not in err

    @pytest.mark.parametrize("text", [
        "(" * 3000 + "phi[1]" + ")" * 3000,
        "h^1000000",
    ])
    def test_oversized_input_is_a_parse_error(self, text):
        assert run(["decompose", text]).exit_code == 2

    def test_validation_errors(self):
        assert run(["bracket", "phi[2]", "phi[1]", "--modes", "1"]).exit_code == 3
        assert run(["star", "phi[1]", "pi[1]", "--lambda", "2h"]).exit_code == 3
        assert run(["wick", "phi[1]", "--omega", "0"]).exit_code == 3
        assert run(["nf", "D(pi[1]; 0)"]).exit_code == 3
        assert run(["bracket", "h", "h", "--modes", "0"]).exit_code == 3

    def test_usage_errors(self):
        assert run(["transmogrify"]).exit_code == 3
        assert run(["derive", "phi[1]"]).exit_code == 3

    @pytest.mark.parametrize("flag, value", [
        ("--t", "nan"),
        ("--t", "inf"),
        ("--dt", "nan"),
        ("--dt", "inf"),
        ("--phi", "nan"),
    ])
    def test_non_finite_flow_arguments(self, tmp_path, flag, value):
        config = lattice_config(tmp_path)
        arguments = {"--t": "1.0", "--dt": "0.01", "--phi": "1.0"}
        arguments[flag] = value
        command = ["flow", "--config", config]
        for name, text in arguments.items():
            command += [name, text]
        assert run(command).exit_code == 3

    @pytest.mark.parametrize("field", ["t0", "t1", "dt", "dx"])
    def test_non_finite_config_numbers(self, tmp_path, field):
        config = lattice_config(tmp_path, **{field: float("nan")})
        assert run(["evolve", "--config", config]).exit_code == 3

    def test_missing_config(self, tmp_path):
        assert run(["evolve", "--config", str(tmp_path / "absent.json")]).exit_code == 3

    def test_numeric_failure(self, tmp_path):
        config = lattice_config(tmp_path, cutoff=12, t0=0.0, t1=10.0, dt=1.0,
                                g={"shape": "const_window", "amp": 0.0, "from": 0.0, "to": 1.0})
        assert run(["evolve", "--config", config]).exit_code == 4

    def test_no_traceback_on_stderr(self, capsys):
        main(["star", "phi[1]", "pi[1]", "--lambda", "2h"])
        assert "Traceback" not in capsys.readouterr().err


class TestLatticeCommands:
    def test_evolve_writes_run_file(self, tmp_path):
        config = lattice_config(tmp_path)
        out = tmp_path / "evolve.json"
        result = run(["evolve", "--config", config, "--order", "2", "--out", str(out)])
        assert result.exit_code == 0
        document = json.loads(out.read_text())
        assert set(document["matrices"]) == {"U", "dyson_0", "dyson_1", "dyson_2"}
        assert document["meta"]["residuals"]["dyson_sum_vs_exact"] < 1e-5
        assert document["meta"]["unitarity_defect"] < 1e-6
        assert len(document["matrices"]["U"]) == 6

    def test_evolve_is_deterministic(self, tmp_path):
        config = lattice_config(tmp_path, t0=-1.0, t1=1.0)
        first = run(["evolve", "--config", config, "--json"])
        second = run(["evolve", "--config", config, "--json"])
        assert first.text == second.text

    def test_smatrix(self, tmp_path):
        config = lattice_config(tmp_path)
        out = tmp_path / "smatrix.json"
        result = run(["smatrix", "--config", config, "--order", "2", "--out", str(out)])
        assert result.exit_code == 0
        meta = json.loads(out.read_text())["meta"]
        assert meta["residuals"]["series_vs_exact"] < 1e-5
        re, im = meta["vacuum_persistence"]
        assert abs(complex(re, im)) == pytest.approx(1.0, abs=1e-3)

    def test_smatrix_needs_quiet_endpoints(self, tmp_path):
        config = lattice_config(tmp_path, t0=-1.0, t1=1.0)
        assert run(["smatrix", "--config", config]).exit_code == 3

    def test_order_above_cap(self, tmp_path):
        config = lattice_config(tmp_path, max_order=2)
        assert run(["smatrix", "--config", config, "--order", "3"]).exit_code == 3

    def test_flow(self, tmp_path):
        config = lattice_config(tmp_path)
        result = run(["flow", "--config", config, "--hamiltonian", "1/2*pi[1]^2 + 1/2*phi[1]^2",
                      "--t", "1.0", "--dt", "0.001", "--phi", "1.0", "--pi", "0.0", "--json"])
        assert result.exit_code == 0
        summary = json.loads(result.text)
        assert summary["method"] == "leapfrog"
        assert abs(summary["energy_drift"]) < 1e-6
