"""Command-line pipeline over the library stages.

Subcommands mirror the collection workflow: ``analyze`` raw sentences,
``stats`` over the analyzed pool, ``select`` a recording script,
``curate`` it, ``qc`` the recorded audio, then ``mcd``/``mos``/``dmos``
for evaluation. Everything is plain files: TSV manifests in, JSON/CSV
reports (plus PNG figures) out.

Runs are deterministic and resumable. Each stage records input/output
digests in ``run_ledger.json`` under the output directory and is skipped
on rerun only when its inputs are unchanged and its outputs intact. The
ledger holds wall times, so it is the one file that may differ between
otherwise byte-identical runs.

Every option's default can be set through an environment variable named
``TTSCORPUS_<OPTION>`` (``TTSCORPUS_JOBS=4``, ``TTSCORPUS_CONFIG=hindi``).

Exit codes: 0 success, 1 domain failure (bad data, empty inputs),
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .curate import curate_sentence, load_keywords, load_lexicon
from .errors import ConfigError, CorpusError, EmptyInput, InsufficientData, SentenceRejected
from .figures import rate_histogram, weak_phone_bars, zipf_loglog
from .langconfig import LanguageConfig, load_language_config, packaged_config_path
from .metrics import load_ratings, dmos_aggregate, mcd_between, mcd_summary, mos_aggregate
from .qc import QcReport, QcThresholds, dataset_rate_summary, syllable_rate
from .report import (
    format_mean_std,
    read_jsonl,
    read_tsv,
    render_metric_reports,
    write_csv,
    write_json,
    write_jsonl,
    write_tsv,
)
from .runledger import RunLedger, digest_inputs, digest_outputs
from .script import SentenceRecord, analyze_sentence
from .select import (
    AugmentationPolicy,
    SelectionConstraints,
    augment_weak,
    filter_pool,
    greedy_select,
)
from .stats import build_stats, freq_rows, merge, weak_phones, zipf_fit
from .wavio import read_wav

ENV_PREFIX = "TTSCORPUS_"
LEDGER_NAME = "run_ledger.json"

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(raw)


def _env(name: str, conv, fallback):
    """Default for an option, overridable via TTSCORPUS_<NAME>."""
    raw = os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"))
    if raw is None:
        return fallback
    try:
        return _parse_bool(raw) if conv is bool else conv(raw)
    except ValueError:
        raise ConfigError(
            f"cannot parse {ENV_PREFIX}{name.upper().replace('-', '_')}={raw!r}"
        ) from None


@dataclass(frozen=True)
class PipelineConfig:
    """Resolved run-wide settings shared by every subcommand."""

    out_dir: Path
    strict: bool = True
    jobs: int = 1
    language_config: Path | None = None
    # Reserved for future sampling features; every current stage is
    # deterministic and ignores it.
    seed: int = 0


def _resolve_config(spec: str) -> Path:
    path = Path(spec)
    if path.is_file():
        return path
    if os.sep not in spec and "." not in spec:
        return packaged_config_path(spec)
    raise ConfigError(f"language config not found: {spec}")


def _pipeline_config(args) -> PipelineConfig:
    if args.jobs < 1:
        raise ConfigError("--jobs must be >= 1")
    cfg_path = _resolve_config(args.config) if args.config else None
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return PipelineConfig(
        out_dir=out_dir,
        strict=args.strict,
        jobs=args.jobs,
        language_config=cfg_path,
        seed=args.seed,
    )


def _require_config(pcfg: PipelineConfig, command: str) -> Path:
    if pcfg.language_config is None:
        raise ConfigError(f"{command} requires --config (file or packaged name)")
    return pcfg.language_config


def _stage(pcfg: PipelineConfig, name, inputs, params, outputs, run) -> bool:
    """Run one ledger-gated stage; returns False when skipped as up to date."""
    ledger_path = pcfg.out_dir / LEDGER_NAME
    ledger = RunLedger.load(ledger_path)
    in_digest = digest_inputs([Path(p) for p in inputs], params)
    outs = [Path(p) for p in outputs]
    if not ledger.should_run(name, in_digest, outs):
        print(f"{name}: inputs unchanged and outputs intact, skipping")
        return False
    t0 = time.perf_counter()
    run()
    ledger.record(name, in_digest, digest_outputs(outs), __version__, time.perf_counter() - t0)
    ledger.save(ledger_path)
    return True


# ---------------------------------------------------------------------------
# Worker-pool plumbing. Heavy per-item state (the language config) is
# loaded once per process by an initializer; results come back through
# an order-preserving map so output files never depend on scheduling.

_WORKER: dict = {}


def _pmap(jobs: int, init, initargs: tuple, fn, tasks: list) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        init(*initargs)
        return [fn(t) for t in tasks]
    chunk = max(1, len(tasks) // (jobs * 4))
    with ProcessPoolExecutor(max_workers=jobs, initializer=init, initargs=initargs) as ex:
        return list(ex.map(fn, tasks, chunksize=chunk))


def _init_analyze(cfg_path: str, strict: bool) -> None:
    _WORKER["cfg"] = load_language_config(cfg_path)
    _WORKER["strict"] = strict


def _analyze_task(task: tuple[str, str]):
    sid, text = task
    try:
        rec = analyze_sentence(sid, text, _WORKER["cfg"], strict=_WORKER["strict"])
        return ("ok", rec.to_dict())
    except SentenceRejected as exc:
        return ("reject", {"id": exc.sentence_id, "reason": exc.reason, "detail": exc.detail})


def _init_curate(cfg_path, lexicon, keywords, word_freq, max_word_syllables) -> None:
    _WORKER["cfg"] = load_language_config(cfg_path) if cfg_path else None
    _WORKER["lexicon"] = lexicon
    _WORKER["keywords"] = keywords
    _WORKER["word_freq"] = word_freq
    _WORKER["max_word_syllables"] = max_word_syllables


def _curate_task(row: list[str]) -> dict:
    sid, text = row
    verdict = curate_sentence(
        sid,
        text,
        cfg=_WORKER["cfg"],
        lexicon=_WORKER["lexicon"],
        keywords=_WORKER["keywords"],
        word_freq=_WORKER["word_freq"],
        max_word_syllables=_WORKER["max_word_syllables"],
    )
    return verdict.to_dict()


def _init_qc(cfg_path: str, strict: bool, thresholds: QcThresholds, base_dir: str) -> None:
    _WORKER["cfg"] = load_language_config(cfg_path)
    _WORKER["strict"] = strict
    _WORKER["thresholds"] = thresholds
    _WORKER["base_dir"] = Path(base_dir)


def _qc_task(row: list[str]):
    utt_id, rel_path, text = row
    try:
        rec = analyze_sentence(utt_id, text, _WORKER["cfg"], strict=_WORKER["strict"])
        buf = read_wav(_WORKER["base_dir"] / rel_path)
        rep = syllable_rate(rec, buf, _WORKER["thresholds"], strict=_WORKER["strict"])
        return ("ok", rep.to_dict())
    except CorpusError as exc:
        return (
            "error",
            {
                "utt_id": utt_id,
                "verdict": "fail",
                "reasons": [type(exc).__name__],
                "detail": str(exc),
            },
        )


def _init_mcd(trim: bool, base_dir: str) -> None:
    _WORKER["trim"] = trim
    _WORKER["base_dir"] = Path(base_dir)


def _mcd_task(row: list[str]) -> float:
    ref_rel, syn_rel = row
    base = _WORKER["base_dir"]
    return mcd_between(read_wav(base / ref_rel), read_wav(base / syn_rel), trim=_WORKER["trim"])


def _stats_shard(records: list[SentenceRecord]):
    return build_stats(records)


def _build_stats_parallel(records: list[SentenceRecord], jobs: int):
    if jobs <= 1 or len(records) < 2:
        return build_stats(records)
    shards = [records[i::jobs] for i in range(jobs)]
    shards = [s for s in shards if s]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_stats_shard, shards))
    out = parts[0]
    for part in parts[1:]:
        out = merge(out, part)
    return out


# ---------------------------------------------------------------------------
# Subcommands.


def _read_input(path_str: str) -> Path:
    path = Path(path_str)
    if not path.is_file():
        raise ConfigError(f"input file not found: {path}")
    return path


def _load_records(path: Path) -> list[SentenceRecord]:
    records = [SentenceRecord.from_dict(d) for d in read_jsonl(path)]
    if not records:
        raise EmptyInput(f"no analyzed sentences in {path}")
    return records


def cmd_analyze(args, pcfg: PipelineConfig) -> int:
    cfg_path = _require_config(pcfg, "analyze")
    input_path = _read_input(args.input)
    out_records = pcfg.out_dir / "analyzed.jsonl"
    out_rejects = pcfg.out_dir / "analyze_rejects.jsonl"

    def run() -> None:
        lines = input_path.read_text(encoding="utf-8").splitlines()
        tasks = [
            (f"s{lineno:05d}", line.strip())
            for lineno, line in enumerate(lines, start=1)
            if line.strip()
        ]
        results = _pmap(
            pcfg.jobs, _init_analyze, (str(cfg_path), pcfg.strict), _analyze_task, tasks
        )
        records = [payload for kind, payload in results if kind == "ok"]
        rejects = [payload for kind, payload in results if kind == "reject"]
        write_jsonl(out_records, records)
        write_jsonl(out_rejects, rejects)
        print(f"analyze: {len(records)} records, {len(rejects)} rejects -> {out_records}")

    _stage(
        pcfg,
        "analyze",
        [input_path, cfg_path],
        {"strict": pcfg.strict},
        [out_records, out_rejects],
        run,
    )
    return EXIT_OK


def cmd_stats(args, pcfg: PipelineConfig) -> int:
    input_path = _read_input(args.input)
    out_syll = pcfg.out_dir / "syllable_freq.csv"
    out_phone = pcfg.out_dir / "phone_freq.csv"
    out_json = pcfg.out_dir / "stats.json"
    out_fig = pcfg.out_dir / "zipf.png"

    def run() -> None:
        stats = _build_stats_parallel(_load_records(input_path), pcfg.jobs)
        try:
            fit = zipf_fit(stats, min_count=args.min_count)
            fit_dict = {
                "exponent": fit.exponent,
                "intercept": fit.intercept,
                "r_squared": fit.r_squared,
                "ranks_used": fit.ranks_used,
            }
        except InsufficientData as exc:
            fit = None
            fit_dict = {"error": str(exc)}
        weak = weak_phones(stats, k=args.weak_k)
        write_csv(out_syll, ["syllable", "count", "rank"], freq_rows(stats, "syllable"))
        write_csv(out_phone, ["phone", "count", "rank"], freq_rows(stats, "phone"))
        write_json(
            out_json,
            {
                "sentence_count": stats.sentence_count,
                "distinct_syllables": len(stats.syllable_freq),
                "distinct_phones": len(stats.phone_freq),
                "total_syllables": sum(stats.syllable_freq.values()),
                "zipf": fit_dict,
                "weak_phones": [
                    {"phone": w.phone, "count": w.count, "sentences": w.sentences}
                    for w in weak
                ],
            },
        )
        zipf_loglog(stats, fit, out_fig)
        print(
            f"stats: {stats.sentence_count} sentences, "
            f"{len(stats.syllable_freq)} syllable types -> {out_json}"
        )

    _stage(
        pcfg,
        "stats",
        [input_path],
        {"min_count": args.min_count, "weak_k": args.weak_k},
        [out_syll, out_phone, out_json, out_fig],
        run,
    )
    return EXIT_OK


def cmd_select(args, pcfg: PipelineConfig) -> int:
    if (args.budget is None) == (args.target_coverage is None):
        raise ConfigError("give exactly one of --budget / --target-coverage")
    input_path = _read_input(args.input)
    try:
        constraints = SelectionConstraints(
            args.min_words, args.max_words, args.max_word_syllables
        )
        policy = AugmentationPolicy(args.weak_k, args.weak_target)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    out_script = pcfg.out_dir / "script.tsv"
    out_report = pcfg.out_dir / "selection_report.json"
    out_before_csv = pcfg.out_dir / "weak_phones_before.csv"
    out_after_csv = pcfg.out_dir / "weak_phones_after.csv"
    out_before_png = pcfg.out_dir / "weak_phones_before.png"
    out_after_png = pcfg.out_dir / "weak_phones_after.png"
    outputs = [out_script, out_report, out_before_csv, out_after_csv, out_before_png, out_after_png]

    def run() -> None:
        records = _load_records(input_path)
        accepted, rejected = filter_pool(records, constraints)
        base = greedy_select(
            accepted, budget=args.budget, target_coverage=args.target_coverage
        )
        by_id = {rec.id: rec for rec in accepted}
        sel_stats = build_stats(by_id[sid] for sid in base.selected_ids)
        final = augment_weak(base, accepted, sel_stats, policy)
        weak = [phone for phone, _ in final.augmentation_additions]

        def containment(ids: list[str]) -> list[tuple[str, int]]:
            return [
                (q, sum(1 for sid in ids if q in by_id[sid].phone_set())) for q in weak
            ]

        before_rows = containment(base.selected_ids)
        after_rows = containment(final.selected_ids)

        write_tsv(out_script, [(sid, by_id[sid].raw_text) for sid in final.selected_ids])
        write_csv(out_before_csv, ["phone", "sentences"], before_rows)
        write_csv(out_after_csv, ["phone", "sentences"], after_rows)
        target = policy.target_sentences_per_weak_phone
        weak_phone_bars(
            before_rows, out_before_png, "weak phones before augmentation", target=target
        )
        weak_phone_bars(
            after_rows, out_after_png, "weak phones after augmentation", target=target
        )
        reject_counts: dict[str, int] = {}
        for _, reason in rejected:
            reject_counts[reason] = reject_counts.get(reason, 0) + 1
        write_json(
            out_report,
            {
                "pool_size": len(records),
                "accepted": len(accepted),
                "rejected": reject_counts,
                "base_selected": len(base.selected_ids),
                "final_selected": len(final.selected_ids),
                "coverage_ratio": final.coverage_ratio,
                "covered_syllables": len(final.covered_syllables),
                "weak_phones": weak,
                "augmentation_additions": {
                    phone: ids for phone, ids in final.augmentation_additions
                },
                "warnings": final.warnings,
            },
        )
        print(
            f"select: {len(final.selected_ids)} sentences "
            f"(coverage {final.coverage_ratio:.4f}) -> {out_script}"
        )

    params = {
        "min_words": args.min_words,
        "max_words": args.max_words,
        "max_word_syllables": args.max_word_syllables,
        "budget": args.budget,
        "target_coverage": args.target_coverage,
        "weak_k": args.weak_k,
        "weak_target": args.weak_target,
    }
    _stage(pcfg, "select", [input_path], params, outputs, run)
    return EXIT_OK


def cmd_curate(args, pcfg: PipelineConfig) -> int:
    input_path = _read_input(args.input)
    aux_inputs = [input_path]
    if pcfg.language_config:
        aux_inputs.append(pcfg.language_config)
    for opt in (args.lexicon, args.keywords, args.word_freq):
        if opt:
            aux_inputs.append(_read_input(opt))

    out_curated = pcfg.out_dir / "curated.tsv"
    out_report = pcfg.out_dir / "curation_report.jsonl"

    def run() -> None:
        rows = read_tsv(input_path, 2)
        if not rows:
            raise EmptyInput(f"no sentences in {input_path}")
        lexicon = load_lexicon(args.lexicon) if args.lexicon else None
        keywords = load_keywords(args.keywords) if args.keywords else None
        word_freq = None
        if args.word_freq:
            word_freq = {w: int(c) for w, c in read_tsv(args.word_freq, 2)}
        cfg_str = str(pcfg.language_config) if pcfg.language_config else None
        verdicts = _pmap(
            pcfg.jobs,
            _init_curate,
            (cfg_str, lexicon, keywords, word_freq, args.max_word_syllables),
            _curate_task,
            rows,
        )
        write_tsv(
            out_curated, [(v["sentence_id"], v["normalized_text"]) for v in verdicts]
        )
        write_jsonl(out_report, verdicts)
        flagged = sum(1 for v in verdicts if v["violations"])
        human = sum(1 for v in verdicts if v["needs_human"])
        print(
            f"curate: {len(verdicts)} sentences, {flagged} flagged, "
            f"{human} need human review -> {out_curated}"
        )

    params = {"max_word_syllables": args.max_word_syllables}
    _stage(pcfg, "curate", aux_inputs, params, [out_curated, out_report], run)
    return EXIT_OK


def _thresholds(args) -> QcThresholds:
    try:
        return QcThresholds(
            rate_band=(args.rate_lo, args.rate_hi),
            silence_floor_db=args.silence_floor_db,
            pause_min_ms=args.pause_min_ms,
            clip_level=args.clip_level,
            clip_ratio_max=args.clip_ratio_max,
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def cmd_qc(args, pcfg: PipelineConfig) -> int:
    cfg_path = _require_config(pcfg, "qc")
    manifest = _read_input(args.manifest)
    thresholds = _thresholds(args)
    out_reports = pcfg.out_dir / "qc_reports.jsonl"
    out_summary = pcfg.out_dir / "qc_summary.json"
    out_fig = pcfg.out_dir / "syllable_rates.png"

    rows = read_tsv(manifest, 3)
    if not rows:
        raise EmptyInput(f"empty manifest: {manifest}")
    wav_paths = [manifest.parent / rel for _, rel, _ in rows]
    for wav in wav_paths:
        if not wav.is_file():
            raise ConfigError(f"manifest references missing file: {wav}")

    def run() -> None:
        results = _pmap(
            pcfg.jobs,
            _init_qc,
            (str(cfg_path), pcfg.strict, thresholds, str(manifest.parent)),
            _qc_task,
            rows,
        )
        reports = [payload for _, payload in results]
        ok = [payload for kind, payload in results if kind == "ok"]
        write_jsonl(out_reports, reports)
        verdicts = {"pass": 0, "warn": 0, "fail": 0}
        for rep in reports:
            verdicts[rep["verdict"]] += 1
        summary = {
            "utterances": len(reports),
            "verdicts": verdicts,
            "errors": len(reports) - len(ok),
            "rate_band": [args.rate_lo, args.rate_hi],
        }
        rates = [rep["syllable_rate"] for rep in ok]
        if ok:
            mean, std, out_of_band = dataset_rate_summary(
                [QcReport(**rep) for rep in ok]
            )
            summary["rate_mean"] = mean
            summary["rate_std"] = std
            summary["out_of_band"] = out_of_band
            summary["rate_summary"] = format_mean_std(mean, std, len(ok))
        rate_histogram(rates, (args.rate_lo, args.rate_hi), out_fig)
        write_json(out_summary, summary)
        print(
            f"qc: {len(reports)} utterances, {verdicts['fail']} fail, "
            f"{verdicts['warn']} warn -> {out_summary}"
        )

    params = {
        "strict": pcfg.strict,
        "rate_lo": args.rate_lo,
        "rate_hi": args.rate_hi,
        "silence_floor_db": args.silence_floor_db,
        "pause_min_ms": args.pause_min_ms,
        "clip_level": args.clip_level,
        "clip_ratio_max": args.clip_ratio_max,
    }
    _stage(
        pcfg,
        "qc",
        [manifest, cfg_path] + wav_paths,
        params,
        [out_reports, out_summary, out_fig],
        run,
    )
    return EXIT_OK


def cmd_mcd(args, pcfg: PipelineConfig) -> int:
    pairs_path = _read_input(args.pairs)
    out_csv = pcfg.out_dir / "mcd.csv"
    out_json = pcfg.out_dir / "mcd_summary.json"

    rows = read_tsv(pairs_path, 2)
    if not rows:
        raise EmptyInput(f"empty pair list: {pairs_path}")
    wav_paths = []
    for ref_rel, syn_rel in rows:
        wav_paths += [pairs_path.parent / ref_rel, pairs_path.parent / syn_rel]
    for wav in wav_paths:
        if not wav.is_file():
            raise ConfigError(f"pair list references missing file: {wav}")

    def run() -> None:
        values = _pmap(
            pcfg.jobs,
            _init_mcd,
            (not args.no_trim, str(pairs_path.parent)),
            _mcd_task,
            rows,
        )
        write_csv(
            out_csv,
            ["ref", "syn", "mcd_db"],
            [(r, s, f"{v:.6f}") for (r, s), v in zip(rows, values)],
        )
        rep = mcd_summary(values)
        write_json(
            out_json,
            {
                "metric": rep.metric,
                "mean": rep.mean,
                "std": rep.std,
                "n_pairs": rep.n_evaluators,
                "rendered": format_mean_std(rep.mean, rep.std, rep.n_evaluators),
            },
        )
        print(render_metric_reports([rep]))

    params = {"trim": not args.no_trim}
    _stage(pcfg, "mcd", [pairs_path] + wav_paths, params, [out_csv, out_json], run)
    return EXIT_OK


def _write_listening_report(pcfg: PipelineConfig, rep, out_name: str) -> None:
    write_json(
        pcfg.out_dir / out_name,
        {
            "metric": rep.metric,
            "system": rep.system,
            "mean": rep.mean,
            "std": rep.std,
            "n_evaluators": rep.n_evaluators,
            "rendered": format_mean_std(rep.mean, rep.std, rep.n_evaluators),
        },
    )
    print(render_metric_reports([rep]))


def cmd_mos(args, pcfg: PipelineConfig) -> int:
    ratings_path = _read_input(args.ratings)
    out_json = pcfg.out_dir / "mos.json"

    def run() -> None:
        ratings = load_ratings(ratings_path)
        rep = mos_aggregate(ratings, args.system, condition=args.condition)
        _write_listening_report(pcfg, rep, out_json.name)

    params = {"system": args.system, "condition": args.condition}
    _stage(pcfg, "mos", [ratings_path], params, [out_json], run)
    return EXIT_OK


def cmd_dmos(args, pcfg: PipelineConfig) -> int:
    ratings_path = _read_input(args.ratings)
    out_json = pcfg.out_dir / "dmos.json"

    def run() -> None:
        ratings = load_ratings(ratings_path)
        rep = dmos_aggregate(ratings, args.system)
        _write_listening_report(pcfg, rep, out_json.name)

    params = {"system": args.system}
    _stage(pcfg, "dmos", [ratings_path], params, [out_json], run)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser.


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--config",
        default=_env("config", str, None),
        help="language config: a file path or a packaged name (hindi, bengali, telugu)",
    )
    mode = common.add_mutually_exclusive_group()
    mode.add_argument(
        "--strict",
        dest="strict",
        action="store_true",
        default=_env("strict", bool, True),
        help="reject malformed input outright (default)",
    )
    mode.add_argument(
        "--lenient",
        dest="strict",
        action="store_false",
        help="repair what can be repaired, flag the rest",
    )
    common.add_argument(
        "--out-dir", default=_env("out_dir", str, "."), help="directory for all outputs"
    )
    common.add_argument(
        "--jobs",
        type=int,
        default=_env("jobs", int, 1),
        help="worker processes; results are identical for any value",
    )
    common.add_argument(
        "--seed",
        type=int,
        default=_env("seed", int, 0),
        help="reserved; the pipeline is deterministic",
    )

    parser = argparse.ArgumentParser(
        prog="ttscorpus",
        description="Recording-script selection, curation, audio QC and evaluation "
        "metrics for TTS corpus collection.",
        epilog=f"Option defaults may be set via {ENV_PREFIX}<OPTION> environment "
        f"variables, e.g. {ENV_PREFIX}JOBS=4 {ENV_PREFIX}CONFIG=hindi.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser(
        "analyze", parents=[common], help="syllabify and phonemize raw sentences"
    )
    p.add_argument("input", help="UTF-8 text file, one sentence per line")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser(
        "stats", parents=[common], help="frequency tables and rank-frequency fit"
    )
    p.add_argument("input", help="analyzed.jsonl from the analyze stage")
    p.add_argument(
        "--min-count",
        type=int,
        default=_env("min_count", int, 2),
        help="drop rarer syllables from the rank-frequency fit",
    )
    p.add_argument(
        "--weak-k",
        type=int,
        default=_env("weak_k", int, 20),
        help="how many weakest phones to report",
    )
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser(
        "select", parents=[common], help="choose a recording script from the pool"
    )
    p.add_argument("input", help="analyzed.jsonl from the analyze stage")
    stop = p.add_mutually_exclusive_group()
    stop.add_argument(
        "--budget", type=int, default=_env("budget", int, None), help="sentence budget"
    )
    stop.add_argument(
        "--target-coverage",
        type=float,
        default=_env("target_coverage", float, None),
        help="stop at this syllable-coverage fraction",
    )
    p.add_argument("--min-words", type=int, default=_env("min_words", int, 5))
    p.add_argument("--max-words", type=int, default=_env("max_words", int, 15))
    p.add_argument(
        "--max-word-syllables", type=int, default=_env("max_word_syllables", int, 5)
    )
    p.add_argument(
        "--weak-k",
        type=int,
        default=_env("weak_k", int, 20),
        help="weak phones tracked during augmentation",
    )
    p.add_argument(
        "--weak-target",
        type=int,
        default=_env("weak_target", int, 50),
        help="sentences required per weak phone",
    )
    p.set_defaults(func=cmd_select)

    p = sub.add_parser(
        "curate", parents=[common], help="flag and normalize a selected script"
    )
    p.add_argument("input", help="TSV of sentence-id<TAB>text (script.tsv)")
    p.add_argument(
        "--lexicon",
        default=_env("lexicon", str, None),
        help="TSV of nonstandard-word<TAB>expansion",
    )
    p.add_argument(
        "--keywords",
        default=_env("keywords", str, None),
        help="sensitive keywords, one per line",
    )
    p.add_argument(
        "--word-freq",
        default=_env("word_freq", str, None),
        help="TSV of word<TAB>count for the uncommon-word flag",
    )
    p.add_argument(
        "--max-word-syllables",
        type=int,
        default=_env("max_word_syllables", int, None),
        help="flag words longer than this many syllables (needs --config)",
    )
    p.set_defaults(func=cmd_curate)

    p = sub.add_parser(
        "qc", parents=[common], help="check recorded audio against the script"
    )
    p.add_argument("manifest", help="TSV of utt-id<TAB>wav-path<TAB>text")
    p.add_argument("--rate-lo", type=float, default=_env("rate_lo", float, 6.0))
    p.add_argument("--rate-hi", type=float, default=_env("rate_hi", float, 8.0))
    p.add_argument(
        "--silence-floor-db",
        type=float,
        default=_env("silence_floor_db", float, -40.0),
    )
    p.add_argument(
        "--pause-min-ms", type=float, default=_env("pause_min_ms", float, 200.0)
    )
    p.add_argument("--clip-level", type=float, default=_env("clip_level", float, 0.999))
    p.add_argument(
        "--clip-ratio-max", type=float, default=_env("clip_ratio_max", float, 1e-4)
    )
    p.set_defaults(func=cmd_qc)

    p = sub.add_parser(
        "mcd", parents=[common], help="mel-cepstral distortion over wav pairs"
    )
    p.add_argument("pairs", help="TSV of reference-wav<TAB>synthesized-wav")
    p.add_argument(
        "--no-trim",
        action="store_true",
        default=_env("no_trim", bool, False),
        help="skip endpoint trimming before comparison",
    )
    p.set_defaults(func=cmd_mcd)

    p = sub.add_parser("mos", parents=[common], help="mean opinion score aggregation")
    p.add_argument("ratings", help="CSV with evaluator,system,item,condition,score")
    p.add_argument("--system", required=True)
    p.add_argument(
        "--condition",
        default=_env("condition", str, None),
        choices=("ground-truth", "synthesized"),
        help="restrict to one condition (default: all)",
    )
    p.set_defaults(func=cmd_mos)

    p = sub.add_parser(
        "dmos", parents=[common], help="degradation MOS (synthesized vs ground truth)"
    )
    p.add_argument("ratings", help="CSV with evaluator,system,item,condition,score")
    p.add_argument("--system", required=True)
    p.set_defaults(func=cmd_dmos)

    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
    except ConfigError as exc:
        print(f"ttscorpus: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        pcfg = _pipeline_config(args)
        return args.func(args, pcfg)
    except ConfigError as exc:
        print(f"ttscorpus: config error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CorpusError as exc:
        print(f"ttscorpus: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"ttscorpus: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
