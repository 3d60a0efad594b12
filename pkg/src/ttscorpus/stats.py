"""Frequency tables, Zipf fit and weak-phone ranking over a sentence pool."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from scipy.stats import linregress

from .errors import DuplicateSentenceId, InsufficientData
from .script import SentenceRecord


@dataclass
class CorpusStats:
    """Syllable/phone counts plus phone→sentence-id postings.

    Partial tables may be built over sentence shards and merged; merge is
    associative and commutative and the empty table is its identity.
    """

    syllable_freq: Counter = field(default_factory=Counter)
    phone_freq: Counter = field(default_factory=Counter)
    sentence_count: int = 0
    postings: dict[str, set[str]] = field(default_factory=dict)
    sentence_ids: set[str] = field(default_factory=set)

    def copy(self) -> "CorpusStats":
        return CorpusStats(
            syllable_freq=Counter(self.syllable_freq),
            phone_freq=Counter(self.phone_freq),
            sentence_count=self.sentence_count,
            postings={p: set(ids) for p, ids in self.postings.items()},
            sentence_ids=set(self.sentence_ids),
        )


class WeakPhone(NamedTuple):
    phone: str
    count: int
    sentences: int


@dataclass(frozen=True)
class ZipfFit:
    exponent: float
    intercept: float
    r_squared: float
    ranks_used: int


def accumulate(stats: CorpusStats, rec: SentenceRecord) -> CorpusStats:
    """Fold one analyzed sentence into the tables. Mutates and returns stats."""
    if rec.id in stats.sentence_ids:
        raise DuplicateSentenceId(rec.id)
    stats.sentence_ids.add(rec.id)
    stats.sentence_count += 1
    for word in rec.syllables_per_word:
        stats.syllable_freq.update(word)
    stats.phone_freq.update(rec.phones)
    for phone in set(rec.phones):
        stats.postings.setdefault(phone, set()).add(rec.id)
    return stats


def build_stats(records: Iterable[SentenceRecord]) -> CorpusStats:
    stats = CorpusStats()
    for rec in records:
        accumulate(stats, rec)
    return stats


def merge(a: CorpusStats, b: CorpusStats) -> CorpusStats:
    """Combine two shard tables into a new one."""
    overlap = a.sentence_ids & b.sentence_ids
    if overlap:
        raise DuplicateSentenceId(sorted(overlap)[0])
    out = a.copy()
    out.syllable_freq.update(b.syllable_freq)
    out.phone_freq.update(b.phone_freq)
    out.sentence_count += b.sentence_count
    for phone, ids in b.postings.items():
        out.postings.setdefault(phone, set()).update(ids)
    out.sentence_ids |= b.sentence_ids
    return out


def zipf_fit(stats: CorpusStats, min_count: int = 2) -> ZipfFit:
    """Least-squares line on (log rank, log frequency) of syllable counts.

    Ranks run over syllables with count >= min_count, descending by count
    (ties by syllable for determinism). The reported exponent is the
    negated slope, so Zipf-like data yields a positive value.

    Raises InsufficientData with fewer than two eligible syllables.
    """
    counts = sorted(
        (c for c in stats.syllable_freq.values() if c >= min_count), reverse=True
    )
    if len(counts) < 2:
        raise InsufficientData(
            f"need at least 2 syllables with count >= {min_count}, have {len(counts)}"
        )
    if counts[0] == counts[-1]:
        # flat distribution: a constant fits exactly, slope zero
        return ZipfFit(0.0, math.log(counts[0]), 1.0, len(counts))
    log_ranks = [math.log(r) for r in range(1, len(counts) + 1)]
    log_freqs = [math.log(c) for c in counts]
    fit = linregress(log_ranks, log_freqs)
    return ZipfFit(-fit.slope, fit.intercept, fit.rvalue**2, len(counts))


def weak_phones(stats: CorpusStats, k: int = 20) -> list[WeakPhone]:
    """The k lowest-count phones, ascending, ties by label.

    Each entry carries the token count and the number of distinct
    sentences containing the phone. k beyond the inventory returns the
    whole inventory.
    """
    ranked = sorted(stats.phone_freq.items(), key=lambda kv: (kv[1], kv[0]))
    return [
        WeakPhone(phone, count, len(stats.postings.get(phone, ())))
        for phone, count in ranked[:k]
    ]


def freq_rows(stats: CorpusStats, unit: str = "syllable") -> list[tuple[str, int, int]]:
    """(value, count, rank) rows, rank 1 = most frequent; ties by label."""
    table = stats.syllable_freq if unit == "syllable" else stats.phone_freq
    ranked = sorted(table.items(), key=lambda kv: (-kv[1], kv[0]))
    return [(value, count, rank) for rank, (value, count) in enumerate(ranked, 1)]
