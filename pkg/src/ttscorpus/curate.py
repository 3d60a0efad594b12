"""Pre-recording text curation: punctuation policy, normalization flags,
sensitive-content and readability flags.

Severity semantics: "fix-applied" edits appear in normalized_text;
"needs-human" flags freeze their span — no automatic rule edits inside
it — so a reviewer sees the original characters.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

from .errors import UnknownCodepoint
from .langconfig import LanguageConfig
from .script import syllabify

FIX_APPLIED = "fix-applied"
NEEDS_HUMAN = "needs-human"

# Punctuation that survives curation. The danda closes sentences the way
# a full stop does.
ALLOWED_PUNCT = {",", ".", "।"}

_TOKEN_RE = re.compile(r"\S+")
_ALLCAPS_RE = re.compile(r"^[A-Z]{2,}$")


def _is_abbrev(token: str) -> bool:
    """Letter+period runs: टी.वी., e.g., ए.पी.जे., or a single initial क."""
    if not token.endswith(".") or len(token) < 2:
        return False
    parts = token[:-1].split(".")
    if any(
        not (1 <= len(p) <= 4) or any(unicodedata.category(c)[0] not in "LM" for c in p)
        for p in parts
    ):
        return False
    if len(parts) >= 2:
        return True
    # single segment: only a lone initial counts, not a sentence-final word
    return sum(1 for c in parts[0] if unicodedata.category(c)[0] == "L") == 1


@dataclass
class Violation:
    rule: str
    span: tuple[int, int]
    severity: str
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "rule": self.rule,
            "span": list(self.span),
            "severity": self.severity,
            "detail": self.detail,
        }


@dataclass
class Fragment:
    """Result of one curation rule run on its own."""

    violations: list[Violation]
    normalized_text: str


@dataclass
class CurationVerdict:
    sentence_id: str
    violations: list[Violation] = field(default_factory=list)
    normalized_text: str = ""

    @property
    def needs_human(self) -> bool:
        return any(v.severity == NEEDS_HUMAN for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "sentence_id": self.sentence_id,
            "violations": [v.to_dict() for v in self.violations],
            "normalized_text": self.normalized_text,
            "needs_human": self.needs_human,
        }


def _removable(ch: str) -> bool:
    return unicodedata.category(ch).startswith("P") and ch not in ALLOWED_PUNCT


def _is_symbol(ch: str) -> bool:
    return unicodedata.category(ch).startswith("S")


def _token_spans(text: str) -> list[tuple[int, int, str]]:
    return [(m.start(), m.end(), m.group()) for m in _TOKEN_RE.finditer(text)]


def _strip_token(start: int, token: str) -> tuple[int, int, str]:
    """Trim punctuation/symbols off both ends; return the core span."""
    lo, hi = 0, len(token)
    while lo < hi and (_removable(token[lo]) or _is_symbol(token[lo]) or token[lo] in ALLOWED_PUNCT):
        lo += 1
    while hi > lo and (_removable(token[hi - 1]) or _is_symbol(token[hi - 1]) or token[hi - 1] in ALLOWED_PUNCT):
        hi -= 1
    return start + lo, start + hi, token[lo:hi]


def check_punctuation(text: str) -> Fragment:
    """Remove punctuation other than comma, full stop and danda.

    Each removed character is one fix-applied violation; letters, digits
    and symbols are never touched.
    """
    violations = []
    kept = []
    for i, ch in enumerate(text):
        if _removable(ch):
            violations.append(
                Violation("punctuation", (i, i + 1), FIX_APPLIED, f"removed {ch!r}")
            )
        else:
            kept.append(ch)
    return Fragment(violations, "".join(kept))


def _classify_token(token: str, lexicon: dict[str, str] | None):
    if lexicon and token in lexicon:
        return "lexicon", lexicon[token]
    if any(unicodedata.category(ch) == "Nd" for ch in token):
        return "digits", None
    if all(_is_symbol(ch) or _removable(ch) or ch in ALLOWED_PUNCT for ch in token):
        return "symbol", None
    if any(_is_symbol(ch) for ch in token):
        return "symbol", None
    if _is_abbrev(token) or _ALLCAPS_RE.match(token):
        return "abbreviation", None
    return None, None


def _clean_expansion(expansion: str) -> str:
    return "".join(ch for ch in expansion if not _removable(ch))


def flag_nonlexical(text: str, lexicon: dict[str, str] | None = None) -> Fragment:
    """Expand exact lexicon tokens; flag digits, symbols and abbreviations.

    Lexicon expansions are fix-applied; everything else is needs-human
    and left in place for review.
    """
    violations = []
    edits = []
    for start, end, token in _token_spans(text):
        kind, expansion = _classify_token(token, lexicon)
        if kind == "lexicon":
            expansion = _clean_expansion(expansion)
            violations.append(
                Violation("lexicon", (start, end), FIX_APPLIED, f"{token} -> {expansion}")
            )
            edits.append((start, end, expansion))
        elif kind is not None:
            violations.append(Violation(kind, (start, end), NEEDS_HUMAN, token))
    out = text
    for start, end, repl in reversed(edits):
        out = out[:start] + repl + out[end:]
    return Fragment(violations, out)


def flag_sensitive(text: str, keywords: list[str]) -> Fragment:
    """Flag whole-token, case-insensitive keyword matches. Never edits."""
    folded = {k.casefold() for k in keywords if k}
    violations = []
    if folded:
        for start, _, token in _token_spans(text):
            lo, hi, core = _strip_token(start, token)
            if core and core.casefold() in folded:
                violations.append(Violation("sensitive", (lo, hi), NEEDS_HUMAN, core))
    return Fragment(violations, text)


def flag_repetition(text: str) -> Fragment:
    """Flag immediately repeated tokens and repeated adjacent bigrams."""
    spans = _token_spans(text)
    cores = [_strip_token(s, t) for s, _, t in spans]
    violations = []
    for i in range(len(cores) - 1):
        (lo1, _, a), (_, hi2, b) = cores[i], cores[i + 1]
        if a and a.casefold() == b.casefold():
            violations.append(Violation("repetition", (lo1, hi2), NEEDS_HUMAN, a))
    for i in range(len(cores) - 3):
        a1, b1 = cores[i][2], cores[i + 1][2]
        a2, b2 = cores[i + 2][2], cores[i + 3][2]
        if a1 and b1 and (a1.casefold(), b1.casefold()) == (a2.casefold(), b2.casefold()):
            violations.append(
                Violation("repetition", (cores[i][0], cores[i + 3][1]), NEEDS_HUMAN, f"{a1} {b1}")
            )
    return Fragment(violations, text)


def flag_long_words(text: str, cfg: LanguageConfig, max_syllables: int = 5) -> Fragment:
    """Flag words whose akshara count exceeds the readability limit."""
    violations = []
    for start, _, token in _token_spans(text):
        lo, hi, core = _strip_token(start, token)
        word = "".join(ch for ch in core if cfg.in_block(ch))
        if not word:
            continue
        try:
            n = len(syllabify(word, cfg))
        except UnknownCodepoint:
            continue
        if n > max_syllables:
            violations.append(
                Violation("long-word", (lo, hi), NEEDS_HUMAN, f"{word}: {n} syllables")
            )
    return Fragment(violations, text)


def flag_uncommon(text: str, word_freq: dict[str, int], min_count: int = 2) -> Fragment:
    """Flag words rarer than min_count in the reference pool."""
    violations = []
    for start, _, token in _token_spans(text):
        lo, hi, core = _strip_token(start, token)
        if core and word_freq.get(core, 0) < min_count:
            violations.append(Violation("uncommon-word", (lo, hi), NEEDS_HUMAN, core))
    return Fragment(violations, text)


def curate_sentence(
    sentence_id: str,
    text: str,
    cfg: LanguageConfig | None = None,
    lexicon: dict[str, str] | None = None,
    keywords: list[str] | None = None,
    word_freq: dict[str, int] | None = None,
    max_word_syllables: int | None = None,
) -> CurationVerdict:
    """Run the full curation pass over one sentence.

    Spans always index the text as given. Needs-human spans are frozen:
    the punctuation rule does not delete characters inside them. With the
    optional inputs omitted, only the always-on rules (punctuation,
    nonlexical, repetition) run. Idempotent on its own output provided
    lexicon expansions are not themselves lexicon keys.
    """
    violations: list[Violation] = []
    edits: list[tuple[int, int, str]] = []
    frozen: list[tuple[int, int]] = []

    def freeze(v: Violation):
        violations.append(v)
        if v.severity == NEEDS_HUMAN:
            frozen.append(v.span)

    for v in flag_sensitive(text, keywords or []).violations:
        freeze(v)
    for start, end, token in _token_spans(text):
        kind, expansion = _classify_token(token, lexicon)
        if kind == "lexicon":
            expansion = _clean_expansion(expansion)
            violations.append(
                Violation("lexicon", (start, end), FIX_APPLIED, f"{token} -> {expansion}")
            )
            edits.append((start, end, expansion))
        elif kind is not None:
            freeze(Violation(kind, (start, end), NEEDS_HUMAN, token))
    for v in flag_repetition(text).violations:
        freeze(v)
    if cfg is not None and max_word_syllables is not None:
        for v in flag_long_words(text, cfg, max_word_syllables).violations:
            freeze(v)
    if word_freq is not None:
        for v in flag_uncommon(text, word_freq).violations:
            freeze(v)

    replaced = {(s, e) for s, e, _ in edits}

    def in_frozen(i: int) -> bool:
        return any(lo <= i < hi for lo, hi in frozen)

    def in_replaced(i: int) -> bool:
        return any(lo <= i < hi for lo, hi in replaced)

    for i, ch in enumerate(text):
        if _removable(ch) and not in_frozen(i) and not in_replaced(i):
            violations.append(
                Violation("punctuation", (i, i + 1), FIX_APPLIED, f"removed {ch!r}")
            )
            edits.append((i, i + 1, ""))

    out = text
    for start, end, repl in sorted(edits, reverse=True):
        out = out[:start] + repl + out[end:]

    violations.sort(key=lambda v: (v.span, v.rule))
    return CurationVerdict(sentence_id, violations, out)


def load_lexicon(path: str | Path) -> dict[str, str]:
    """Two-column UTF-8 file: token<TAB>expansion, one entry per line."""
    lexicon = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        token, _, expansion = line.partition("\t")
        if not expansion:
            raise ValueError(f"lexicon line without a TAB: {line!r}")
        lexicon[token.strip()] = expansion.strip()
    return lexicon


def load_keywords(path: str | Path) -> list[str]:
    """One keyword per line; blank lines and # comments skipped."""
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out
