import json
import os  # noqa: F401  (used by the skipif string)

import pytest

import rps.pipeline as pipeline
from rps.cache import PropositionCache, solve_cached, spec_key
from rps.cli import main
from rps.errors import UsageError
from rps.oeis import oeis_lookup, parse_response
from rps.pipeline import (
    ABSENT,
    CROSS_CHECKED,
    FAILED,
    Proposition,
    SolveOptions,
    Webbook,
    generate_webbook,
    render_proposition,
    render_webbook,
    solve_instance,
)
from rps.words import InstanceSpec, oracle_terms

STANLEY = InstanceSpec.pair(2, "HT", "TT")
FAST = SolveOptions(terms=50, asymptotic_terms=600, coherence_n=120, oracle_check_n=60)


@pytest.fixture(scope="module")
def stanley():
    return solve_instance(STANLEY, FAST)


def test_stanley_proposition(stanley):
    assert stanley.ok
    assert stanley.terms[:5] == (1, 2, 2, 3, 6)
    assert stanley.algebraic.deg_p == 2
    assert stanley.verification["enumerator"]["status"] == CROSS_CHECKED
    assert stanley.verification["coherence"]["status"] == CROSS_CHECKED
    assert abs(stanley.asymptotics.mu - 2) < 1e-6


def test_json_round_trip(stanley):
    d = stanley.to_dict()
    for key in ("spec", "terms", "enumerator", "algebraic", "ode", "recurrence", "asymptotics", "verification", "version"):
        assert key in d
    assert set(d["algebraic"]) >= {"coefficients", "degT", "degP", "verifiedOrder"}
    assert set(d["recurrence"]) >= {"order", "coefficients", "verifiedRange"}
    assert set(d["asymptotics"]) >= {"mu", "theta", "C", "period", "deltas"}
    back = Proposition.from_dict(json.loads(json.dumps(d)))
    assert back == stanley


def test_text_is_deterministic(stanley):
    again = solve_instance(STANLEY, FAST)
    assert render_proposition(again) == render_proposition(stanley)
    assert "(1-3*t+3*t^2-5*t^3+8*t^4-4*t^5)*P^2" in render_proposition(stanley)


def test_same_word_twice_is_usage_error():
    with pytest.raises(UsageError):
        InstanceSpec.pair(2, "HT", "HT")


def test_unsupported_instance_degrades():
    p = solve_instance(InstanceSpec.pair(2, "T", "TT"), FAST)
    assert p.enumerator is None
    assert p.verification["enumerator"]["status"] == ABSENT
    assert "unsupported" in p.verification["enumerator"]["detail"]
    assert p.recurrence is not None and p.ok


def test_hard_gate_aborts_on_mismatch(monkeypatch):
    real = pipeline.oracle_terms

    def corrupted(spec, N):
        out = real(spec, N)
        out[7] += 1
        return out

    monkeypatch.setattr(pipeline, "oracle_terms", corrupted)
    p = solve_instance(STANLEY, FAST)
    assert not p.ok
    assert p.verification["enumerator"]["status"] == FAILED
    assert "n = 7" in p.verification["enumerator"]["detail"]
    assert p.algebraic is None and p.recurrence is None


def test_several_words():
    spec = InstanceSpec.from_words(2, ["HH", "HT", "TH"], [1, 1, -2])
    p = solve_instance(spec, SolveOptions(terms=60, asymptotic_terms=600, coherence_n=120, oracle_check_n=60))
    assert p.ok and p.recurrence is not None


def test_cache_round_trip(tmp_path, stanley):
    cache = PropositionCache(tmp_path)
    key = spec_key(STANLEY, FAST)
    assert cache.load(key) is None
    cache.store(key, stanley)
    cache.store(key, stanley)
    assert cache.load(key) == stanley
    assert len(list(tmp_path.iterdir())) == 1
    assert solve_cached(STANLEY, FAST, cache) == stanley


def test_cold_and_warm_cache_agree(tmp_path):
    spec = InstanceSpec.pair(2, "HH", "TT")
    cache = PropositionCache(tmp_path)
    cold = solve_cached(spec, FAST, cache)
    warm = solve_cached(spec, FAST, cache)
    assert cold == warm == solve_instance(spec, FAST)


def test_corrupt_cache_entry_is_recomputed(tmp_path, caplog, stanley):
    cache = PropositionCache(tmp_path)
    key = spec_key(STANLEY, FAST)
    cache.path(key).parent.mkdir(parents=True, exist_ok=True)
    cache.path(key).write_text("{not json")
    assert cache.load(key) is None
    assert "corrupt" in caplog.text
    assert solve_cached(STANLEY, FAST, cache) == stanley
    assert cache.load(key) == stanley


def test_cache_key_depends_on_options():
    assert spec_key(STANLEY, FAST) != spec_key(STANLEY, SolveOptions())
    assert spec_key(STANLEY, FAST) == spec_key(InstanceSpec.pair(2, "HT", "TT"), FAST)


def test_oeis_offline_empty_cache(tmp_path):
    res = oeis_lookup([1, 2, 2, 3, 6], offline=True, cache_dir=tmp_path)
    assert not res.available and res.matches == ()


def test_oeis_unavailable_never_fabricates(tmp_path):
    def down(url):
        raise OSError("network unreachable")

    res = oeis_lookup([1, 2, 4, 8, 16, 32, 64, 128], cache_dir=tmp_path, fetch=down)
    assert not res.available and res.matches == ()
    assert "unavailable" in res.detail


def test_oeis_live_response_cached(tmp_path):
    body = json.dumps([{"number": 79, "name": "Powers of 2", "data": "1,2,4,8,16,32,64,128,256"}])
    calls = []

    def fake(url):
        calls.append(url)
        return body

    terms = [1, 2, 4, 8, 16, 32, 64, 128]
    res = oeis_lookup(terms, cache_dir=tmp_path, fetch=fake)
    assert res.available and res.matches[0].sequence_id == "A000079"
    assert res.matches[0].matched_prefix_length == 8
    assert "q=1,2,4,8" in calls[0]
    again = oeis_lookup(terms, offline=True, cache_dir=tmp_path)
    assert again.matches == res.matches and len(calls) == 1


def test_parse_response_accepts_wrapped_results():
    body = json.dumps({"results": [{"number": 164147, "data": "1,2,2,3,6,9"}]})
    (m,) = parse_response(body, [1, 2, 2, 3, 6, 9, 15])
    assert m.sequence_id == "A164147" and m.matched_prefix_length == 6
    assert parse_response("null", [1]) == ()


def test_webbook_22():
    book = generate_webbook(2, 2, FAST, workers=1)
    assert len(book.propositions) == 3
    assert all(p.ok for p in book.propositions)
    assert [p.spec.words_text() for p in book.propositions] == [["HH", "HT"], ["HH", "TT"], ["HT", "TH"]]
    assert Webbook.from_dict(json.loads(json.dumps(book.to_dict()))) == book
    assert "It contains 3 propositions." in render_webbook(book)


def test_webbook_uses_given_solver():
    seen = []

    def solver(spec, opts):
        seen.append(spec)
        return Proposition(spec, tuple(oracle_terms(spec, 5)))

    book = generate_webbook(3, 2, FAST, workers=1, solver=solver)
    assert len(book.propositions) == len(seen) == 6


def test_cli_solve_json(tmp_path, capsys):
    out = tmp_path / "p.json"
    seq = tmp_path / "seq.txt"
    assert main(["solve", "--m", "2", "--w1", "HT", "--w2", "TT", "--format", "json", "--out", str(out),
                 "--sequence-out", str(seq), "--asymptotic-terms", "600"]) == 0
    d = json.loads(out.read_text())
    assert d["terms"][:5] == [1, 2, 2, 3, 6]
    assert seq.read_text().splitlines()[:3] == ["0 1", "1 2", "2 2"]


def test_cli_solve_text_and_figures(tmp_path, capsys):
    figs = tmp_path / "figs"
    assert main(["solve", "--m", "2", "--w1", "H", "--w2", "T", "--figures", str(figs), "--asymptotic-terms", "600",
                 "--no-cache"]) == 0
    text = capsys.readouterr().out
    assert "(1-4*t^2)*P^2 - 1 = 0" in text
    assert (figs / "proposition.png").stat().st_size > 0


def test_cli_solve_multi(capsys):
    rc = main(["solve-multi", "--m", "2", "--pattern", "HH:1", "--pattern", "HT:1", "--pattern", "TH:-2",
               "--terms", "60", "--asymptotic-terms", "600"])
    assert rc == 0
    assert "#HH + #HT - 2*#TH = 0" in capsys.readouterr().out


def test_cli_usage_errors(capsys):
    assert main(["solve-multi", "--m", "2", "--pattern", "HH"]) == 1
    assert main(["solve", "--m", "2", "--w1", "HT", "--w2", "HT"]) == 1
    assert "distinct" in capsys.readouterr().err


def test_cli_webbook_writes_files(tmp_path, capsys):
    out = tmp_path / "wb"
    assert main(["webbook", "--m", "2", "--k", "2", "--out", str(out), "--workers", "1",
                 "--asymptotic-terms", "600"]) == 0
    rows = (out / "summary.tsv").read_text().splitlines()
    assert len(rows) == 4 and rows[0].startswith("index\tw1\tw2")
    assert json.loads((out / "webbook.json").read_text())["count"] == 3
    assert sorted(p.name for p in (out / "sequences").iterdir()) == ["001_HH_HT.txt", "002_HH_TT.txt", "003_HT_TH.txt"]
    pngs = sorted(p.name for p in (out / "figures").iterdir())
    assert pngs == ["001_HH_HT.png", "002_HH_TT.png", "003_HT_TH.png", "summary.png"]


def test_cli_pairs(capsys):
    assert main(["pairs", "--m", "3", "--k", "2"]) == 0
    assert capsys.readouterr().out.strip().endswith("# 6 classes covering 36 pairs")


def test_cli_oeis_offline(capsys):
    assert main(["oeis", "--terms", "1,2,2,3,6", "--offline"]) == 3
    assert '"available": false' in capsys.readouterr().out


@pytest.mark.network
@pytest.mark.skipif("os.environ.get('RPS_NETWORK_TESTS') != '1'", reason="live OEIS query; set RPS_NETWORK_TESTS=1")
def test_oeis_live_powers_of_two(tmp_path):
    res = oeis_lookup([1, 2, 4, 8, 16, 32, 64, 128], cache_dir=tmp_path)
    assert res.available
    assert "A000079" in {m.sequence_id for m in res.matches}
