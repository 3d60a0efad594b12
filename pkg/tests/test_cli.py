import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from helpers import write_utterance
from ttscorpus.cli import main
from ttscorpus.report import read_jsonl, read_tsv
from ttscorpus.runledger import RunLedger

DATA = Path(__file__).parent / "data"

SENTENCES = [
    "कमल नयन सरल जीवन सदा सुखी रहता है।",
    "बच्चे सुबह विद्यालय में पाठ पढ़ते हैं।",
    "गाँव की नदी का पानी ठंडा रहता है।",
]
DIGIT_SENTENCE = "सन १९४७ में देश स्वतंत्र हुआ।"


def run(*argv: str) -> int:
    return main(list(argv))


def write_corpus(path: Path, lines) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_version_exits_zero():
    assert run("--version") == 0


def test_unknown_command_usage_error():
    assert run("frobnicate") == 2


def test_analyze_requires_config(tmp_path):
    corpus = write_corpus(tmp_path / "corpus.txt", SENTENCES)
    assert run("analyze", str(corpus), "--out-dir", str(tmp_path / "out")) == 2


def test_analyze_missing_config_file(tmp_path):
    corpus = write_corpus(tmp_path / "corpus.txt", SENTENCES)
    code = run(
        "analyze", str(corpus), "--config", str(tmp_path / "nope.cfg"),
        "--out-dir", str(tmp_path / "out"),
    )
    assert code == 2


def test_analyze_missing_input(tmp_path):
    code = run(
        "analyze", str(tmp_path / "nope.txt"), "--config", "hindi",
        "--out-dir", str(tmp_path / "out"),
    )
    assert code == 2


def test_analyze_three_sentences(tmp_path):
    corpus = write_corpus(tmp_path / "corpus.txt", SENTENCES)
    out = tmp_path / "out"
    assert run("analyze", str(corpus), "--config", "hindi", "--out-dir", str(out)) == 0
    records = read_jsonl(out / "analyzed.jsonl")
    assert len(records) == 3
    assert read_jsonl(out / "analyze_rejects.jsonl") == []
    assert records[0]["id"] == "s00001"
    assert records[0]["syllable_count"] > 0


def test_analyze_strict_rejects_but_exits_zero(tmp_path):
    corpus = write_corpus(tmp_path / "corpus.txt", SENTENCES[:2] + [DIGIT_SENTENCE])
    out = tmp_path / "out"
    assert run("analyze", str(corpus), "--config", "hindi", "--out-dir", str(out)) == 0
    assert len(read_jsonl(out / "analyzed.jsonl")) == 2
    rejects = read_jsonl(out / "analyze_rejects.jsonl")
    assert len(rejects) == 1
    assert rejects[0]["reason"] == "NeedsNormalization"


def test_analyze_lenient_keeps_defective(tmp_path):
    corpus = write_corpus(tmp_path / "corpus.txt", SENTENCES[:2] + [DIGIT_SENTENCE])
    out = tmp_path / "out"
    code = run(
        "analyze", str(corpus), "--config", "hindi", "--lenient", "--out-dir", str(out)
    )
    assert code == 0
    records = read_jsonl(out / "analyzed.jsonl")
    assert len(records) == 3
    assert records[2]["needs_normalization"] is True


def test_analyze_jobs_match_serial(tmp_path):
    corpus = write_corpus(tmp_path / "corpus.txt", SENTENCES * 4)
    out1, out2 = tmp_path / "out1", tmp_path / "out2"
    assert run("analyze", str(corpus), "--config", "hindi", "--out-dir", str(out1)) == 0
    code = run(
        "analyze", str(corpus), "--config", "hindi", "--out-dir", str(out2),
        "--jobs", "3",
    )
    assert code == 0
    assert (out1 / "analyzed.jsonl").read_bytes() == (out2 / "analyzed.jsonl").read_bytes()


@pytest.fixture()
def analyzed(tmp_path):
    corpus = write_corpus(tmp_path / "corpus.txt", SENTENCES)
    out = tmp_path / "out"
    assert run("analyze", str(corpus), "--config", "hindi", "--out-dir", str(out)) == 0
    return out / "analyzed.jsonl"


def test_stats_outputs(analyzed, tmp_path):
    out = tmp_path / "stats"
    assert run("stats", str(analyzed), "--out-dir", str(out)) == 0
    payload = json.loads((out / "stats.json").read_text(encoding="utf-8"))
    assert payload["sentence_count"] == 3
    assert payload["distinct_syllables"] > 0
    assert "exponent" in payload["zipf"]
    header = (out / "syllable_freq.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "syllable,count,rank"
    assert (out / "zipf.png").stat().st_size > 0


def test_stats_empty_input_is_domain_failure(tmp_path):
    empty = tmp_path / "analyzed.jsonl"
    empty.write_text("", encoding="utf-8")
    assert run("stats", str(empty), "--out-dir", str(tmp_path / "out")) == 1


def test_select_needs_exactly_one_stop_criterion(analyzed, tmp_path):
    out = str(tmp_path / "sel")
    assert run("select", str(analyzed), "--out-dir", out) == 2
    code = run(
        "select", str(analyzed), "--budget", "2", "--target-coverage", "0.5",
        "--out-dir", out,
    )
    assert code == 2


def test_select_budget_exceeding_pool(analyzed, tmp_path):
    out = tmp_path / "sel"
    code = run(
        "select", str(analyzed), "--budget", "999", "--min-words", "1",
        "--weak-k", "2", "--weak-target", "1", "--out-dir", str(out),
    )
    assert code == 0
    script = read_tsv(out / "script.tsv", 2)
    assert len(script) == 3  # the whole accepted pool
    report = json.loads((out / "selection_report.json").read_text(encoding="utf-8"))
    assert report["accepted"] == 3
    assert report["coverage_ratio"] == 1.0
    for name in (
        "weak_phones_before.csv",
        "weak_phones_after.csv",
        "weak_phones_before.png",
        "weak_phones_after.png",
    ):
        assert (out / name).stat().st_size > 0


def test_select_full_coverage_target(analyzed, tmp_path):
    out = tmp_path / "sel"
    code = run(
        "select", str(analyzed), "--target-coverage", "1.0", "--min-words", "1",
        "--weak-k", "1", "--weak-target", "1", "--out-dir", str(out),
    )
    assert code == 0
    report = json.loads((out / "selection_report.json").read_text(encoding="utf-8"))
    assert report["coverage_ratio"] == 1.0
    assert not any(w.startswith("CoverageStalled") for w in report["warnings"])


def test_curate_pipeline(tmp_path):
    script = tmp_path / "script.tsv"
    script.write_text(
        "u1\tक्या ट्रेन समय पर आती है?\n"
        "u2\tमृत्यु जीवन का सत्य है।\n"
        "u3\tगाँव की हवा साफ़ है।\n",
        encoding="utf-8",
    )
    out = tmp_path / "cur"
    code = run(
        "curate", str(script),
        "--lexicon", str(DATA / "curate_lexicon.tsv"),
        "--keywords", str(DATA / "curate_keywords.txt"),
        "--out-dir", str(out),
    )
    assert code == 0
    curated = {sid: text for sid, text in read_tsv(out / "curated.tsv", 2)}
    assert "?" not in curated["u1"]
    assert "रेलगाड़ी" in curated["u1"]
    # Sensitive sentences are frozen, not rewritten.
    assert curated["u2"] == "मृत्यु जीवन का सत्य है।"
    report = {v["sentence_id"]: v for v in read_jsonl(out / "curation_report.jsonl")}
    assert report["u2"]["needs_human"] is True
    assert report["u3"]["violations"] == []


def test_qc_reports_and_summary(tmp_path):
    wav_dir = tmp_path / "wavs"
    wav_dir.mkdir()
    write_utterance(wav_dir / "a.wav", 2.0)
    write_utterance(wav_dir / "b.wav", 1.0)
    manifest = tmp_path / "manifest.tsv"
    manifest.write_text(
        "utt1\twavs/a.wav\tकला के बिना भाषा अधूरा रहता है।\n"
        "utt2\twavs/b.wav\tकला के बिना भाषा अधूरा रहता है।\n",
        encoding="utf-8",
    )
    out = tmp_path / "qc"
    assert run("qc", str(manifest), "--config", "hindi", "--out-dir", str(out)) == 0
    reports = read_jsonl(out / "qc_reports.jsonl")
    assert [r["utt_id"] for r in reports] == ["utt1", "utt2"]
    assert reports[0]["verdict"] == "pass"  # 14 syllables over ~2 s of speech
    assert reports[1]["verdict"] == "warn"  # the same text crammed into ~1 s
    summary = json.loads((out / "qc_summary.json").read_text(encoding="utf-8"))
    assert summary["utterances"] == 2
    assert summary["verdicts"]["warn"] == 1
    assert "±" in summary["rate_summary"]
    assert (out / "syllable_rates.png").stat().st_size > 0


def test_qc_empty_manifest(tmp_path):
    manifest = tmp_path / "manifest.tsv"
    manifest.write_text("", encoding="utf-8")
    assert run("qc", str(manifest), "--config", "hindi", "--out-dir", str(tmp_path / "o")) == 1


def test_qc_missing_wav(tmp_path):
    manifest = tmp_path / "manifest.tsv"
    manifest.write_text("utt1\tnope.wav\tकमल नयन सरल जीवन है।\n", encoding="utf-8")
    assert run("qc", str(manifest), "--config", "hindi", "--out-dir", str(tmp_path / "o")) == 2


def test_mcd_identical_pairs(tmp_path):
    wav_dir = tmp_path / "wavs"
    wav_dir.mkdir()
    write_utterance(wav_dir / "x.wav", 1.0)
    pairs = tmp_path / "pairs.tsv"
    pairs.write_text("wavs/x.wav\twavs/x.wav\n", encoding="utf-8")
    out = tmp_path / "mcd"
    assert run("mcd", str(pairs), "--out-dir", str(out)) == 0
    rows = (out / "mcd.csv").read_text(encoding="utf-8").splitlines()
    assert rows[0] == "ref,syn,mcd_db"
    assert rows[1].endswith("0.000000")
    summary = json.loads((out / "mcd_summary.json").read_text(encoding="utf-8"))
    assert summary["mean"] == 0.0
    assert summary["n_pairs"] == 1


def test_mos_command(tmp_path, capsys):
    out = tmp_path / "mos"
    code = run(
        "mos", str(DATA / "ratings.csv"), "--system", "sysA", "--out-dir", str(out)
    )
    assert code == 0
    assert "MOS sysA: 4.30±0.64 (5)" in capsys.readouterr().out
    payload = json.loads((out / "mos.json").read_text(encoding="utf-8"))
    assert payload["rendered"] == "4.30±0.64 (5)"


def test_mos_unknown_system_is_domain_failure(tmp_path):
    code = run(
        "mos", str(DATA / "ratings.csv"), "--system", "nope",
        "--out-dir", str(tmp_path / "o"),
    )
    assert code == 1


def test_dmos_command(tmp_path, capsys):
    out = tmp_path / "dmos"
    code = run(
        "dmos", str(DATA / "ratings.csv"), "--system", "sysB", "--out-dir", str(out)
    )
    assert code == 0
    assert "DMOS sysB: 5.27±0.48 (5)" in capsys.readouterr().out


def test_dmos_missing_condition_names_evaluator(tmp_path, capsys):
    ratings = tmp_path / "ratings.csv"
    ratings.write_text(
        "evaluator,system,item,condition,score\n"
        "e1,sysX,i1,ground-truth,4\n"
        "e1,sysX,i1,synthesized,4\n"
        "e2,sysX,i1,ground-truth,4\n",
        encoding="utf-8",
    )
    code = run("dmos", str(ratings), "--system", "sysX", "--out-dir", str(tmp_path / "o"))
    assert code == 1
    assert "e2" in capsys.readouterr().err


def test_env_variable_overrides(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("TTSCORPUS_OUT_DIR", str(tmp_path / "envout"))
    code = run("mos", str(DATA / "ratings.csv"), "--system", "sysA")
    assert code == 0
    assert (tmp_path / "envout" / "mos.json").is_file()


def test_env_variable_bad_value(tmp_path, monkeypatch):
    monkeypatch.setenv("TTSCORPUS_JOBS", "many")
    assert run("mos", str(DATA / "ratings.csv"), "--system", "sysA") == 2


def test_rerun_skips_unchanged_stage(analyzed, tmp_path, capsys):
    out = tmp_path / "stats"
    assert run("stats", str(analyzed), "--out-dir", str(out)) == 0
    before = (out / "stats.json").read_bytes()
    capsys.readouterr()
    assert run("stats", str(analyzed), "--out-dir", str(out)) == 0
    assert "skipping" in capsys.readouterr().out
    assert (out / "stats.json").read_bytes() == before


def test_rerun_after_input_change_recomputes(analyzed, tmp_path, capsys):
    out = tmp_path / "stats"
    assert run("stats", str(analyzed), "--out-dir", str(out)) == 0
    records = read_jsonl(analyzed)
    from ttscorpus.report import write_jsonl

    write_jsonl(analyzed, records[:2])
    capsys.readouterr()
    assert run("stats", str(analyzed), "--out-dir", str(out)) == 0
    assert "skipping" not in capsys.readouterr().out
    payload = json.loads((out / "stats.json").read_text(encoding="utf-8"))
    assert payload["sentence_count"] == 2


def test_rerun_after_output_deletion_recomputes(analyzed, tmp_path, capsys):
    out = tmp_path / "stats"
    assert run("stats", str(analyzed), "--out-dir", str(out)) == 0
    (out / "stats.json").unlink()
    capsys.readouterr()
    assert run("stats", str(analyzed), "--out-dir", str(out)) == 0
    assert (out / "stats.json").is_file()


@given(
    recorded=st.text(alphabet="0123456789abcdef", min_size=8, max_size=8),
    incoming=st.text(alphabet="0123456789abcdef", min_size=8, max_size=8),
)
def test_ledger_never_skips_changed_inputs(recorded, incoming):
    ledger = RunLedger()
    ledger.record("stage", recorded, "out", "0.1.0", 0.1)
    if incoming != recorded:
        assert ledger.should_run("stage", incoming)
    else:
        assert not ledger.should_run("stage", incoming)
