"""Recording-script selection: readability filter, greedy syllable cover,
weak-phone augmentation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import EmptyPool
from .script import SentenceRecord
from .stats import CorpusStats

TOO_SHORT = "TooShort"
TOO_LONG = "TooLong"
WORD_TOO_LONG = "WordTooLong"


@dataclass(frozen=True)
class SelectionConstraints:
    min_words: int = 5
    max_words: int = 15
    max_syllables_per_word: int = 5

    def __post_init__(self):
        if not (1 <= self.min_words <= self.max_words):
            raise ValueError("need 1 <= min_words <= max_words")
        if self.max_syllables_per_word < 1:
            raise ValueError("max_syllables_per_word must be >= 1")


@dataclass(frozen=True)
class AugmentationPolicy:
    weak_k: int = 20
    target_sentences_per_weak_phone: int = 50

    def __post_init__(self):
        if self.weak_k < 1 or self.target_sentences_per_weak_phone < 1:
            raise ValueError("weak_k and target must be >= 1")


@dataclass
class SelectionResult:
    selected_ids: list[str]
    covered_syllables: set[str]
    coverage_ratio: float
    augmentation_additions: list[tuple[str, list[str]]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "selected_ids": self.selected_ids,
            "covered_syllables": sorted(self.covered_syllables),
            "coverage_ratio": self.coverage_ratio,
            "augmentation_additions": [
                [phone, ids] for phone, ids in self.augmentation_additions
            ],
            "warnings": self.warnings,
        }


def filter_pool(
    pool: list[SentenceRecord], c: SelectionConstraints
) -> tuple[list[SentenceRecord], list[tuple[SentenceRecord, str]]]:
    """Split the pool into (accepted, rejected) under the readability rules.

    Each rejection carries only the first violated rule, checked in the
    order TooShort, TooLong, WordTooLong.
    """
    accepted: list[SentenceRecord] = []
    rejected: list[tuple[SentenceRecord, str]] = []
    for rec in pool:
        if rec.word_count < c.min_words:
            rejected.append((rec, TOO_SHORT))
        elif rec.word_count > c.max_words:
            rejected.append((rec, TOO_LONG))
        elif any(len(w) > c.max_syllables_per_word for w in rec.syllables_per_word):
            rejected.append((rec, WORD_TOO_LONG))
        else:
            accepted.append(rec)
    return accepted, rejected


def greedy_select(
    pool: list[SentenceRecord],
    budget: int | None = None,
    target_coverage: float | None = None,
) -> SelectionResult:
    """Greedy maximum-coverage selection over the pool's syllable inventory.

    Repeatedly takes the sentence adding the most uncovered syllables
    (ties: fewer total syllables, then id). Stops at the budget, at the
    target coverage fraction, or when no sentence adds coverage; a
    warning notes stalling short of an explicit coverage target.

    Exactly one of budget / target_coverage must be given.
    """
    if (budget is None) == (target_coverage is None):
        raise ValueError("give exactly one of budget or target_coverage")
    if not pool:
        raise EmptyPool("cannot select from an empty pool")

    inventory: set[str] = set()
    for rec in pool:
        inventory |= rec.syllable_set()

    covered: set[str] = set()
    chosen: list[str] = []
    warnings: list[str] = []
    remaining = sorted(pool, key=lambda r: r.id)

    def ratio() -> float:
        return len(covered) / len(inventory) if inventory else 0.0

    while True:
        if budget is not None and len(chosen) >= budget:
            break
        if target_coverage is not None and ratio() >= target_coverage:
            break
        best = None
        best_key = None
        for rec in remaining:
            gain = len(rec.syllable_set() - covered)
            if gain == 0:
                continue
            key = (-gain, rec.syllable_count, rec.id)
            if best_key is None or key < best_key:
                best, best_key = rec, key
        if best is None:
            if target_coverage is not None and ratio() < target_coverage:
                warnings.append(f"CoverageStalled({ratio():.4f})")
            break
        chosen.append(best.id)
        covered |= best.syllable_set()
        remaining = [r for r in remaining if r.id != best.id]

    return SelectionResult(chosen, covered, ratio(), warnings=warnings)


def augment_weak(
    selection: SelectionResult,
    pool: list[SentenceRecord],
    selection_stats: CorpusStats,
    p: AugmentationPolicy,
) -> SelectionResult:
    """Extend the selection until every weak phone reaches its sentence target.

    Weak phones are the weak_k rarest over the pool's phone inventory by
    occurrence count in the current selection (phones absent from the
    selection count zero, so uncovered phones rank weakest). Each round
    adds the unselected sentence containing the most still-deficient weak
    phones (ties: fewer syllables, then id). When the pool runs out, a
    PoolExhausted(phone, achieved) warning records the shortfall.
    """
    by_id = {rec.id: rec for rec in pool}
    pool_inventory: set[str] = set()
    for rec in pool:
        pool_inventory |= rec.phone_set()

    ranked = sorted(
        pool_inventory, key=lambda q: (selection_stats.phone_freq.get(q, 0), q)
    )
    weak = ranked[: p.weak_k]
    target = p.target_sentences_per_weak_phone

    have = {q: len(selection_stats.postings.get(q, ())) for q in weak}
    selected = list(selection.selected_ids)
    selset = set(selected)
    additions: dict[str, list[str]] = {q: [] for q in weak}
    warnings = list(selection.warnings)

    def deficient() -> set[str]:
        return {q for q in weak if have[q] < target}

    need = deficient()
    while need:
        best = None
        best_key = None
        for rec in pool:
            if rec.id in selset:
                continue
            hits = len(need & rec.phone_set())
            if hits == 0:
                continue
            key = (-hits, rec.syllable_count, rec.id)
            if best_key is None or key < best_key:
                best, best_key = rec, key
        if best is None:
            for q in sorted(need):
                warnings.append(f"PoolExhausted({q}, {have[q]})")
            break
        selected.append(best.id)
        selset.add(best.id)
        phones = best.phone_set()
        for q in weak:
            if q in phones:
                have[q] += 1
                if q in need:
                    additions[q].append(best.id)
        need = deficient()

    covered: set[str] = set()
    for sid in selected:
        covered |= by_id[sid].syllable_set()
    syll_inventory: set[str] = set()
    for rec in pool:
        syll_inventory |= rec.syllable_set()
    ratio = len(covered) / len(syll_inventory) if syll_inventory else 0.0

    return SelectionResult(
        selected_ids=selected,
        covered_syllables=covered,
        coverage_ratio=ratio,
        augmentation_additions=[(q, additions[q]) for q in weak],
        warnings=warnings,
    )
