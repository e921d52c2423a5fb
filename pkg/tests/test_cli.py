import json

import pytest

from artinres.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    data = json.loads(out)
    assert data["schema"] == 1
    return code, data


def test_hj(capsys):
    code, data = run_json(capsys, "hj", "--r", "165", "--a", "104")
    assert code == 0
    assert data["alpha"] == [2, 3, 2, 4, 3, 2, 2]
    assert data["beta"] == [3, 4, 2, 3, 4]


def test_bad_group_is_usage_error(capsys):
    assert main(["hj", "--r", "4", "--a", "2"]) == 2
    assert main(["qdet", "--r", "7"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nope"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["hj", "--r", "seven"])
    assert exc.value.code == 2


def test_verify_full_oracle(capsys):
    code, data = run_json(capsys, "verify", "--r", "7", "--a", "3", "--mode", "full_oracle")
    assert code == 0
    assert data["report"]["ok"]
    assert data["report"]["checks"]["saturation_equals_qdet"] is True


def test_verify_pair_cap_fails_with_report(capsys):
    code, data = run_json(capsys, "verify", "--r", "7", "--a", "3", "--max-pairs", "1")
    assert code == 1
    assert data["ok"] is False and "cap" in data["error"]


def test_fixtures(capsys):
    code, data = run_json(capsys, "fixtures")
    assert code == 0
    assert data["failed"] == 0 and data["checks"] > 30


def test_fixtures_detects_tampering(capsys, tmp_path):
    from artinres.fixtures import load_fixtures
    data = load_fixtures()
    data["groups"][0]["alpha"] = [3, 3, 2]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code, out = run_json(capsys, "fixtures", "--path", str(p))
    assert code == 1
    assert any(r["check"] == "hj" and not r["ok"] for r in out["results"])


@pytest.mark.parametrize("cmd", ["quiver", "generators", "qdet", "matrix-m", "matrix-k", "deform"])
def test_text_and_json(capsys, cmd):
    code, data = run_json(capsys, cmd, "--r", "7", "--a", "2")
    assert code == 0
    code, text = run(capsys, cmd, "--r", "7", "--a", "2", "--format", "text")
    assert code == 0 and text.strip()


def test_matrix_m_3_1(capsys):
    _, data = run_json(capsys, "matrix-m", "--r", "3", "--a", "1")
    assert data["M"] == [[1, 0, 0, 0, 0, 1], [0, 1, 0, 0, 1, 0], [0, 0, 1, 1, 0, 0],
                         [0, 0, 0, 1, 1, 1], [1, 1, 1, 0, 0, 0]]


def test_charts_and_determinism(capsys):
    argv = ["charts", "--r", "7", "--a", "3", "--lambda", "random", "--seed", "5"]
    code, first = run(capsys, *argv)
    assert code == 0
    _, second = run(capsys, *argv)
    assert first == second
    assert json.loads(first)["ok"] is True


def test_custom_chart(capsys):
    code, data = run_json(capsys, "charts", "--r", "3", "--a", "1", "--units", "a1")
    assert code == 0
    (chart,) = data["charts"]
    assert chart["residual"] == ["c1*a2^2 - c1*k1"]
    assert chart["singular_at_origin"] is True


def test_fiber(capsys):
    code, data = run_json(capsys, "fiber", "--r", "7", "--a", "3", "--lambda", '[["1/2","-1/2"],["1","1","1","-3"]]')
    assert code == 0 and data["dimension"] == 2
    assert main(["fiber", "--r", "7", "--a", "3", "--lambda", '[["1","1"],["0","0","0","0"]]']) == 2
    assert main(["fiber", "--r", "7", "--a", "3", "--lambda", '[["x"]]']) == 2


def test_pi(capsys):
    code, data = run_json(capsys, "pi", "--r", "7", "--a", "3", "--point", "[0,5,2,1,1,1,4,0]")
    assert code == 0
    assert data["lambda"] == [["3", "-3"], ["0", "0", "-3", "3"]]
    assert data["in_delta"] is True
    assert main(["pi", "--r", "7", "--a", "3", "--point", "[1,2]"]) == 2


def test_sweep_order_independent_of_workers(capsys):
    code, one = run_json(capsys, "sweep", "--max-r", "6")
    assert code == 0 and one["failed"] == 0
    _, two = run_json(capsys, "sweep", "--max-r", "6", "--jobs", "2")
    assert one["results"] == two["results"]
    assert [(x["r"], x["a"]) for x in one["results"]][:3] == [(2, 1), (3, 1), (3, 2)]


def test_sweep_keeps_going_after_a_failure(capsys, monkeypatch):
    from artinres import artin

    real = artin.verify_theorem

    def flaky(g, mode="buchberger_only", max_pairs=None, strategy=None):
        if (g.r, g.a) == (5, 2):
            raise RuntimeError("boom")
        return real(g, mode, max_pairs, strategy)

    monkeypatch.setattr(artin, "verify_theorem", flaky)
    code, data = run_json(capsys, "sweep", "--max-r", "6")
    assert code == 1
    assert data["failed"] == 1 and data["groups"] == 11
    assert data["failures"][0]["r"] == 5 and "boom" in data["failures"][0]["error"]
