"""Matplotlib figure rendering for the CLI report outputs.

matplotlib is imported lazily so subcommands that draw nothing (mos,
dmos) stay fast to start. Every figure is rendered with the Agg backend
at a fixed size/dpi and pinned PNG metadata so reruns are byte-identical.
"""

from __future__ import annotations

from pathlib import Path

from .stats import CorpusStats, ZipfFit

_DPI = 120
_METADATA = {"Software": "ttscorpus"}


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    fig.savefig(path, dpi=_DPI, metadata=_METADATA)
    _plt().close(fig)
    return path


def weak_phone_bars(
    rows: list[tuple[str, int]], path: str | Path, title: str, target: int | None = None
) -> Path:
    """Bar chart of sentences-containing-phone counts for the weak phones."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(8, 4))
    labels = [phone for phone, _ in rows]
    counts = [count for _, count in rows]
    ax.bar(range(len(rows)), counts, color="#4878a8")
    ax.set_xticks(range(len(rows)))
    ax.set_xticklabels(labels, rotation=45, ha="right")
    ax.set_ylabel("sentences")
    ax.set_title(title)
    if target is not None:
        ax.axhline(target, color="#a84848", linewidth=1, linestyle="--")
    fig.tight_layout()
    return _save(fig, path)


def zipf_loglog(stats: CorpusStats, fit: ZipfFit | None, path: str | Path) -> Path:
    """Rank-frequency scatter on log-log axes with the fitted power law."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4.5))
    counts = sorted(stats.syllable_freq.values(), reverse=True)
    ranks = range(1, len(counts) + 1)
    ax.loglog(ranks, counts, marker=".", linestyle="none", color="#4878a8")
    if fit is not None and fit.exponent != 0.0:
        import math

        xs = [1, max(len(counts), 2)]
        ys = [math.exp(fit.intercept) * x ** (-fit.exponent) for x in xs]
        ax.loglog(xs, ys, color="#a84848", linewidth=1)
        ax.set_title(f"syllable rank-frequency, s={fit.exponent:.3f}, r2={fit.r_squared:.4f}")
    else:
        ax.set_title("syllable rank-frequency")
    ax.set_xlabel("rank")
    ax.set_ylabel("count")
    fig.tight_layout()
    return _save(fig, path)


def rate_histogram(
    rates: list[float], band: tuple[float, float], path: str | Path
) -> Path:
    """Histogram of per-utterance syllable rates with the accepted band marked."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.hist(rates, bins=20, color="#4878a8")
    for edge in band:
        ax.axvline(edge, color="#a84848", linewidth=1, linestyle="--")
    ax.set_xlabel("syllables per second")
    ax.set_ylabel("utterances")
    ax.set_title("syllable-rate distribution")
    fig.tight_layout()
    return _save(fig, path)
