import orjson
import pytest

from app.automaton.io import dump_automaton
from app.automaton.words import parse_ep_word
from app.discrepancy.sweep import sweep_key
from app.main import build_arg_parser, main
from app.sequence.values import valued_word
from app.storage.checkpoint import SweepCheckpoint, load_checkpoint, save_checkpoint


@pytest.fixture()
def run(isolated_env, capsys):
    settings = isolated_env / "settings.toml"

    def invoke(*argv):
        code = main(["--settings", str(settings), *argv])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke


def test_parser_lists_every_command():
    parser = build_arg_parser()
    args = parser.parse_args(["discrepancy", "a.aut", "--y", "1", "--n-max", "10", "--jobs", "2"])
    assert (args.command, args.n_max, args.stride, args.jobs) == ("discrepancy", 10, 1, 2)


def test_validate(run, automata_dir):
    code, out, _ = run("validate", str(automata_dir / "example1.aut"))
    assert code == 0
    assert out.splitlines() == ["valid: d=3 sigma=3", "self-mirror: false"]
    code, out, _ = run("validate", str(automata_dir / "binary.aut"))
    assert out.splitlines()[-1] == "self-mirror: true"


def test_validate_reports_bad_files(run, isolated_env):
    broken = isolated_env / "broken.aut"
    broken.write_text("d 2\nsigma 2\n2 0\n", encoding="utf-8")
    code, _, err = run("validate", str(broken))
    assert code == 2
    assert "line 4" in err
    code, _, err = run("validate", str(isolated_env / "nowhere.aut"))
    assert code == 1
    assert "error: automaton file not found" in err


def test_usage_errors_exit_with_one(run):
    assert run("unrank")[0] == 1
    assert run("sequence", "x.aut", "--n-max", "-3")[0] == 1
    assert run("--log-level", "chatty", "validate", "x.aut")[0] == 1


def test_mirror_round_trip(run, isolated_env, example1, automata_dir):
    code, out, _ = run("mirror", str(automata_dir / "example1.aut"))
    assert code == 0
    assert out.splitlines()[2:] == ["2 0 0", "3 1 0", "3 1 3"]
    mirrored = isolated_env / "mirror.aut"
    mirrored.write_text(out, encoding="utf-8")
    code, out, _ = run("mirror", str(mirrored))
    assert out == dump_automaton(example1)


def test_spectral(run, automata_dir):
    code, out, _ = run("spectral", str(automata_dir / "example1.aut"))
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "charpoly: x^3-2x^2-x+1"
    assert "pisot: true" in lines
    assert any(line.startswith("eta_3: 1 = 1.0000") for line in lines)
    assert any(line.startswith("theta_1: ") for line in lines)


def test_spectral_reducible(run, automata_dir):
    path = str(automata_dir / "final_example.aut")
    code, _, err = run("spectral", path)
    assert code == 2
    assert "reducible" in err
    code, out, _ = run("spectral", path, "--allow-reducible")
    assert code == 0
    assert "minpoly: x^3-7x^2+15x-11" in out.splitlines()
    assert "pisot: false" in out.splitlines()
    assert out.splitlines()[-1].startswith("theta: unavailable")


def test_rank_and_unrank(run, automata_dir):
    path = str(automata_dir / "example1.aut")
    assert run("rank", path, "0,1")[1].strip() == "5"
    assert run("unrank", path, "26")[1].strip() == "2,2,2"
    assert run("unrank", path, "0", "--lprime")[1].strip() == "ε"
    assert run("rank", path, "2,0,1", "--lprime")[1].strip() == "10"
    code, _, err = run("rank", path, "1,1")
    assert code == 2
    assert "not in the language" in err


def test_sequence_rows(run, automata_dir):
    code, out, _ = run("sequence", str(automata_dir / "example1.aut"), "--n-max", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n,word,value"
    assert len(lines) == 5
    assert lines[1] == "0,ε,0.000000000000"
    assert lines[2].startswith("1,1,0.445")
    assert lines[4].startswith('3,"0,1",')


def test_sequence_to_file(run, isolated_env, automata_dir):
    target = isolated_env / "out" / "seq.csv"
    code, out, _ = run("sequence", str(automata_dir / "binary.aut"), "--n-max", "4", "--csv", str(target))
    assert (code, out) == (0, "")
    rows = target.read_text(encoding="utf-8").splitlines()
    assert [row.split(",")[-1] for row in rows[1:]] == [
        "0.000000000000",
        "0.500000000000",
        "0.250000000000",
        "0.750000000000",
    ]


def test_discrepancy_sweeps(run, automata_dir):
    path = str(automata_dir / "example1.aut")
    code, out, _ = run("discrepancy", path, "--y", "1", "--n-max", "0")
    assert (code, out.splitlines()) == (0, ["N,count,D"])
    code, out, _ = run("discrepancy", path, "--y", "1", "--n-max", "6", "--stride", "3")
    lines = out.splitlines()
    assert [line.split(",")[:2] for line in lines[1:]] == [["0", "0"], ["3", "1"], ["6", "3"]]
    code, parallel, _ = run("discrepancy", path, "--y", "1", "--n-max", "6", "--stride", "3", "--jobs", "2")
    assert parallel == out
    assert run("discrepancy", path, "--y", "1", "--n-max", "6", "--jobs", "2", "--resume")[0] == 1


def test_resume_rerun_rewrites_finished_sweep(run, isolated_env, automata_dir):
    target = isolated_env / "sweep.csv"
    argv = ("discrepancy", str(automata_dir / "example1.aut"), "--y", "1", "--n-max", "20", "--stride", "5")
    assert run(*argv, "--csv", str(target), "--resume")[0] == 0
    first = target.read_text(encoding="utf-8")
    assert [line.split(",")[0] for line in first.splitlines()] == ["N", "0", "5", "10", "15", "20"]
    assert run(*argv, "--csv", str(target), "--resume")[0] == 0
    assert target.read_text(encoding="utf-8") == first


def test_resume_drops_rows_past_the_checkpoint(run, isolated_env, automata_dir, example1, example1_data):
    target = isolated_env / "sweep.csv"
    argv = ("discrepancy", str(automata_dir / "example1.aut"), "--y", "1", "--n-max", "20", "--stride", "5")
    assert run(*argv, "--csv", str(target))[0] == 0
    complete = target.read_text(encoding="utf-8")
    count_at_10 = int(complete.splitlines()[3].split(",")[1])

    # state left behind by a run killed after writing N=15 but before its next checkpoint
    y = valued_word(example1, example1_data, parse_ep_word("1")).value
    key = sweep_key(example1, y, 5)
    checkpoints = isolated_env / "data" / "checkpoints"
    save_checkpoint(checkpoints, SweepCheckpoint(key=key, n_next=10, count=count_at_10))
    target.write_text("\n".join(complete.splitlines()[:5]) + "\n", encoding="utf-8")

    assert run(*argv, "--csv", str(target), "--resume")[0] == 0
    assert target.read_text(encoding="utf-8") == complete
    assert load_checkpoint(checkpoints, key) is None


def test_resume_counts_saved_checkpoints(run, isolated_env, automata_dir):
    (isolated_env / "settings.toml").write_text("[discrepancy]\ncheckpoint_every = 2\n", encoding="utf-8")
    target = isolated_env / "sweep.csv"
    code, _, _ = run(
        "--metrics", "discrepancy", str(automata_dir / "example1.aut"), "--y", "1",
        "--n-max", "20", "--stride", "5", "--csv", str(target), "--resume",
    )
    assert code == 0
    payload = orjson.loads((isolated_env / "data" / "metrics" / "discrepancy.json").read_bytes())
    assert payload["counters"]["checkpoints_saved"] == 2
    assert payload["counters"]["rows_written"] == 5


def test_discrepancy_respects_brute_cap(run, isolated_env, automata_dir):
    (isolated_env / "settings.toml").write_text("[discrepancy]\nbrute_cap = 10\n", encoding="utf-8")
    path = str(automata_dir / "example1.aut")
    code, _, err = run("discrepancy", path, "--y", "1", "--n-max", "20")
    assert code == 2
    assert "exceeds the brute-force cap 10" in err
    assert run("discrepancy", path, "--y", "1", "--n-max", "10")[0] == 0


def test_brs_verdicts(run, isolated_env, automata_dir):
    report = isolated_env / "reports" / "verdict.json"
    code, out, _ = run(
        "brs", str(automata_dir / "example1.aut"), "--u", "1", "--empirical", "64", "--json", str(report)
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "u: 1,0|0"
    assert "verdict: bounded" in lines
    assert "prop5: m=1 q=0" in lines
    assert lines[-1].startswith("empirical: max|D|=")
    payload = orjson.loads(report.read_bytes())
    assert payload["decision"] == "bounded"
    assert payload["empirical"]["n_max"] == 64


def test_brs_empirical_runs_without_pisot_hypothesis(run, automata_dir, monkeypatch):
    monkeypatch.setattr("app.brs.criteria.is_pisot_automaton", lambda aut: False)
    monkeypatch.setattr("app.sequence.values.is_pisot_automaton", lambda aut: False)
    code, out, _ = run("brs", str(automata_dir / "example1.aut"), "--u", "1", "--empirical", "64")
    assert code == 0
    lines = out.splitlines()
    assert "verdict: bounded (hypotheses-not-met: not Pisot)" in lines
    assert lines[-1].startswith("empirical: max|D|=")


def test_brs_rejects_reducible_charpoly(run, automata_dir):
    code, out, err = run("brs", str(automata_dir / "final_example.aut"), "--u", "3,0|2")
    assert code == 2
    assert "prop5: none" in out.splitlines()
    assert "reducible" in err


def test_beta_command(run, isolated_env, example2):
    code, out, _ = run("beta", "--poly=-2 0 -4 1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "t: (401)^ω"
    assert lines[1] == "beta-polynomial: x^3-4x^2-2"
    assert "\n".join(lines[2:]) + "\n" == dump_automaton(example2)

    target = isolated_env / "beta" / "golden.aut"
    code, out, _ = run("beta", "--poly=-1,-1,1", "--out", str(target))
    assert code == 0
    assert out.splitlines()[-1] == f"automaton: {target}"
    assert target.read_text(encoding="utf-8") == "d 2\nsigma 2\n2 0\n2 1\n"

    code, _, err = run("beta", "--poly=-11 15 -7 1")
    assert code == 2
    assert "Pisot" in err


def test_metrics_export(run, isolated_env, automata_dir):
    code, _, _ = run("--metrics", "sequence", str(automata_dir / "binary.aut"), "--n-max", "8")
    assert code == 0
    payload = orjson.loads((isolated_env / "data" / "metrics" / "sequence.json").read_bytes())
    assert payload["counters"]["points_generated"] == 8
