import csv
import io
import json

import numpy as np
import pytest

from exceptions import GameFileError, OutputFormatError, UnknownExperimentError
from games.catalog import prisoners_dilemma
from main import main
from protocol.game import Variant
from workflow.experiments import ExperimentOptions, available_experiments, run_experiment
from workflow.game_file import parse_game_file
from workflow.output import emit

PD_FILE = """{
  "players": 2,
  "moves": [2, 2],
  "payoffs": [[3, 3], [0, 5], [5, 0], [1, 1]],
  "variant": "eisert",
  "gamma": 1.5708
}
"""


def test_parse_prisoners_dilemma_file():
    """Four-decimal pi/2 means maximal entanglement."""
    spec = parse_game_file(PD_FILE)
    assert spec.variant is Variant.EISERT_FULL
    assert spec.gamma == np.pi / 2
    assert np.array_equal(spec.payoffs, prisoners_dilemma().payoffs)


def test_parse_rejects_wrong_payoff_count():
    text = PD_FILE.replace("[[3, 3], [0, 5], [5, 0], [1, 1]]", "[[3, 3], [0, 5], [5, 0]]")
    with pytest.raises(GameFileError, match="expected 4 payoff entries") as excinfo:
        parse_game_file(text)
    assert excinfo.value.key == "payoffs"
    assert excinfo.value.line == 4


def test_parse_rejects_missing_key():
    with pytest.raises(GameFileError) as excinfo:
        parse_game_file('{"players": 2, "moves": 2}')
    assert excinfo.value.key == "payoffs"


def test_parse_rejects_unnormalized_initial_state():
    text = json.dumps({
        "players": 2,
        "moves": 2,
        "payoffs": [[3, 3], [0, 5], [5, 0], [1, 1]],
        "variant": "marinatto-weber",
        "initial_state": [[0.5, 0], [0, 0], [0, 0], [0.5, 0]],
    })
    with pytest.raises(GameFileError, match="not normalized") as excinfo:
        parse_game_file(text)
    assert excinfo.value.key == "initial_state"


def test_parse_marinatto_weber_state():
    r = 1 / np.sqrt(2)
    text = json.dumps({
        "players": 2,
        "moves": 2,
        "payoffs": [[3, 3], [0, 5], [5, 0], [1, 1]],
        "variant": "marinatto-weber",
        "initial_state": [[r, 0], [0, 0], [0, 0], [0, r]],
    })
    spec = parse_game_file(text)
    assert spec.variant is Variant.MARINATTO_WEBER
    assert np.allclose(spec.initial_state.amps, [r, 0, 0, 1j * r])


def test_parse_rejects_gamma_out_of_range():
    with pytest.raises(GameFileError) as excinfo:
        parse_game_file(PD_FILE.replace("1.5708", "2.0"))
    assert excinfo.value.key == "gamma"
    assert excinfo.value.line == 6


def test_parse_reports_json_syntax_line():
    with pytest.raises(GameFileError) as excinfo:
        parse_game_file('{\n  "players": 2,\n  "moves": [2, 2\n}')
    assert excinfo.value.line is not None


def test_unknown_experiment_lists_available():
    with pytest.raises(UnknownExperimentError) as excinfo:
        run_experiment("monty-hall")
    assert "penny-flip" in str(excinfo.value)
    assert set(excinfo.value.available) == set(available_experiments())


def test_penny_flip_experiment():
    result = run_experiment("penny-flip")
    rows = {(r[0], r[1], r[2]): r[3] for r in result.rows}
    assert rows[("H", "*", "H")] == pytest.approx(1.0, abs=1e-12)
    assert rows[("I", "F", "I")] == pytest.approx(0.0, abs=1e-12)
    assert rows[("F", "*", "I")] == pytest.approx(0.5, abs=1e-12)


def test_miracle_curve_experiment():
    result = run_experiment("miracle-curve", ExperimentOptions(points=21))
    assert len(result.rows) == 21
    for theta, alice, bob, _, _ in result.rows:
        assert bob == pytest.approx(3 + 2 * np.sin(theta), abs=1e-9)
        assert alice == pytest.approx((1 - np.sin(theta)) / 2, abs=1e-9)


def test_critical_gamma_experiment():
    result = run_experiment("critical-gamma")
    assert len(result.rows) == 1
    assert result.rows[0][0] == pytest.approx(0.463648, abs=1e-6)


def test_pd_experiment_with_game_file(tmp_path):
    game = tmp_path / "pd.json"
    game.write_text(PD_FILE)
    result = run_experiment("pd", ExperimentOptions(game=str(game), alice=(np.pi, 0, 0), bob=(0, 0, 0)))
    assert result.columns[-2:] == ("alice_payoff", "bob_payoff")
    assert result.rows[0][-2:] == pytest.approx((5.0, 0.0), abs=1e-9)


def test_analyze_experiment_metadata():
    result = run_experiment("analyze")
    assert result.metadata["dominant_strategies"] == ["D", "D"]
    nash = [r[0] for r in result.rows if r[3]]
    assert nash == ["DD"]


def test_noise_experiment_ends():
    result = run_experiment("noise", ExperimentOptions(points=3))
    assert [r[0] for r in result.rows] == [0.0, 0.5, 1.0]
    assert result.rows[0][1:] == pytest.approx((3.0, 3.0), abs=1e-9)


def test_counter_experiment_is_deterministic():
    first = emit(run_experiment("counter", ExperimentOptions(seed=5)), "csv")
    second = emit(run_experiment("counter", ExperimentOptions(seed=5)), "csv")
    assert first == second
    for row in list(csv.reader(io.StringIO(first)))[1:]:
        assert float(row[3]) == pytest.approx(0.0, abs=1e-9)
        assert float(row[4]) == pytest.approx(5.0, abs=1e-9)


def test_emit_csv_header_and_rounding():
    text = emit(run_experiment("miracle-curve"), "csv")
    lines = text.splitlines()
    assert lines[0] == "theta,alice_payoff,bob_payoff,alice_closed_form,bob_closed_form"
    first = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert float(first["bob_payoff"]) == 3.0
    assert first["bob_closed_form"] == "3"


def test_emit_json_round_trip():
    result = run_experiment("miracle-curve", ExperimentOptions(points=5))
    document = json.loads(emit(result, "json"))
    assert set(document) == {"experiment", "params", "rows", "metadata"}
    assert document["experiment"] == "miracle-curve"
    assert len(document["rows"]) == 5
    for row, original in zip(document["rows"], result.rows):
        assert row["bob_payoff"] == pytest.approx(original[2], rel=1e-11)
    assert document["metadata"]["seed"] == 0


def test_emit_rejects_unknown_format():
    with pytest.raises(OutputFormatError):
        emit(run_experiment("penny-flip"), "xml")


def test_cli_success_writes_only_data(capsys):
    assert main(["penny-flip"]) == 0
    out, err = capsys.readouterr()
    assert out.splitlines()[0] == "bob_first,alice,bob_second,win_prob"
    assert err == ""


@pytest.mark.parametrize("argv", [
    ["monty-hall"],
    ["pd", "--gamma", "2.0"],
    ["pd", "--format", "xml"],
    ["pd", "--alice", "1,2"],
    ["minority", "--players", "2"],
    ["minority", "--players", "5", "--quantum"],
    [],
])
def test_cli_usage_errors(capsys, argv):
    assert main(argv) == 1
    _, err = capsys.readouterr()
    assert len(err.strip().splitlines()) == 1
    assert err.startswith("error:")


def test_cli_game_file_error(tmp_path, capsys):
    game = tmp_path / "bad.json"
    game.write_text(PD_FILE.replace('"payoffs"', '"rewards"'))
    assert main(["pd", "--game", str(game)]) == 1
    _, err = capsys.readouterr()
    assert "rewards" in err or "payoffs" in err


def test_cli_json_output(capsys):
    assert main(["miracle-curve", "--points", "3", "--format", "json", "--seed", "3"]) == 0
    out, _ = capsys.readouterr()
    document = json.loads(out)
    assert document["metadata"]["seed"] == 3
    assert len(document["rows"]) == 3


def test_cli_rejects_three_player_file_for_two_player_experiment(tmp_path, capsys):
    game = tmp_path / "minority.json"
    game.write_text(json.dumps({
        "players": 3,
        "moves": 2,
        "payoffs": [[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [0, 0, 0]],
    }))
    assert main(["pd", "--game", str(game)]) == 1
    _, err = capsys.readouterr()
    assert "2-player 2-move game" in err
