"""Words, aksharas and phones for Brahmic-script text.

The akshara is the orthographic syllable of these scripts: one or more
consonants fused by viramas plus an optional vowel sign and trailing
nasalization, or an independent vowel. Segmentation is greedy
left-to-right and never drops a codepoint, so joining a word's aksharas
reproduces the word exactly, including for malformed mark sequences.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field

from .errors import EmptyWord, SentenceRejected, UnknownCodepoint
from .langconfig import LanguageConfig

# Joiners only affect conjunct rendering; they carry no sound.
ZERO_WIDTH = {"\u200c", "\u200d"}

# Sentence punctuation the tokenizer records instead of dropping.
SENTENCE_PUNCT = {",", "."}

CLUSTER = "cluster"
INDEPENDENT_VOWEL = "vowel"
OTHER = "other"


@dataclass(frozen=True)
class Akshara:
    text: str
    kind: str


@dataclass
class SentenceRecord:
    """One analyzed candidate sentence."""

    id: str
    raw_text: str
    words: list[str]
    syllables_per_word: list[list[str]]
    phones: list[str]
    word_count: int
    syllable_count: int
    punctuation: list[str] = field(default_factory=list)
    needs_normalization: bool = False
    warnings: list[str] = field(default_factory=list)

    def syllable_set(self) -> frozenset[str]:
        return frozenset(s for word in self.syllables_per_word for s in word)

    def phone_set(self) -> frozenset[str]:
        return frozenset(self.phones)

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "raw_text": self.raw_text,
            "words": self.words,
            "syllables_per_word": self.syllables_per_word,
            "phones": self.phones,
            "word_count": self.word_count,
            "syllable_count": self.syllable_count,
            "punctuation": self.punctuation,
            "needs_normalization": self.needs_normalization,
            "warnings": self.warnings,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SentenceRecord":
        return cls(**d)


def tokenize(text: str, cfg: LanguageConfig) -> list[str]:
    """Split on whitespace, keeping only script-block codepoints per word."""
    return tokenize_with_punctuation(text, cfg)[0]


def tokenize_with_punctuation(text: str, cfg: LanguageConfig) -> tuple[list[str], list[str]]:
    """Like tokenize, but also return stripped commas/full stops/dandas in order.

    Everything outside the script block is dropped; words are never
    merged, and tokens emptied by stripping vanish.
    """
    text = unicodedata.normalize("NFC", text)
    words: list[str] = []
    punct: list[str] = []
    for token in text.split():
        kept = []
        for ch in token:
            if ch in SENTENCE_PUNCT or ch in cfg.punctuation:
                punct.append(ch)
            elif cfg.in_block(ch):
                kept.append(ch)
        if kept:
            words.append("".join(kept))
    return words, punct


def _absorb_silent(word: str, i: int, cfg: LanguageConfig) -> int:
    while i < len(word) and (word[i] in cfg.silent_marks or word[i] in ZERO_WIDTH):
        i += 1
    return i


def _absorb_trailing(word: str, i: int, cfg: LanguageConfig) -> int:
    while i < len(word) and (
        word[i] in cfg.nasalization_marks or word[i] in cfg.silent_marks or word[i] in ZERO_WIDTH
    ):
        i += 1
    return i


def syllabify(word: str, cfg: LanguageConfig) -> list[Akshara]:
    """Greedy left-to-right akshara segmentation.

    Consonants joined by viramas fuse into one akshara together with any
    trailing vowel sign and nasalization; independent vowels stand alone.
    A dead consonant (trailing virama) closes its cluster and is tagged
    OTHER, as is any stray combining mark, so concatenation always
    reproduces the input.

    Raises EmptyWord on "" and UnknownCodepoint for any codepoint the
    config does not account for.
    """
    if not word:
        raise EmptyWord("cannot syllabify an empty word")
    out: list[Akshara] = []
    i, n = 0, len(word)
    while i < n:
        ch = word[i]
        if ch in cfg.consonant_map:
            start = i
            i = _absorb_silent(word, i + 1, cfg)
            dead = False
            while i < n and word[i] == cfg.virama:
                j = _absorb_silent(word, i + 1, cfg)
                if j < n and word[j] in cfg.consonant_map:
                    i = _absorb_silent(word, j + 1, cfg)
                else:
                    i = j  # virama with no consonant to join: dead cluster
                    dead = True
                    break
            if dead:
                out.append(Akshara(word[start:i], OTHER))
                continue
            if i < n and word[i] in cfg.vowel_sign_map:
                i += 1
            i = _absorb_trailing(word, i, cfg)
            out.append(Akshara(word[start:i], CLUSTER))
        elif ch in cfg.independent_vowel_map:
            start = i
            i = _absorb_trailing(word, i + 1, cfg)
            out.append(Akshara(word[start:i], INDEPENDENT_VOWEL))
        elif (
            ch == cfg.virama
            or ch in cfg.vowel_sign_map
            or ch in cfg.nasalization_marks
            or ch in cfg.silent_marks
            or ch in ZERO_WIDTH
        ):
            # combining mark with nothing to attach to
            out.append(Akshara(ch, OTHER))
            i += 1
        else:
            raise UnknownCodepoint(ch, context=word)
    return out


def to_phones(word: str, cfg: LanguageConfig) -> list[str]:
    """Map a word to its phone labels.

    Each consonant emits its phone; when not followed by a virama or a
    vowel sign it also emits the inherent vowel, except word-finally
    under schwa deletion. Vowel signs, independent vowels and
    nasalization marks emit their mapped labels; viramas and silent
    marks emit nothing.
    """
    if not word:
        raise EmptyWord("cannot phonemize an empty word")
    sig = [ch for ch in word if ch not in cfg.silent_marks and ch not in ZERO_WIDTH]
    phones: list[str] = []
    for idx, ch in enumerate(sig):
        if ch in cfg.consonant_map:
            phones.append(cfg.consonant_map[ch])
            nxt = sig[idx + 1] if idx + 1 < len(sig) else None
            if nxt == cfg.virama or (nxt is not None and nxt in cfg.vowel_sign_map):
                continue
            if nxt is None and cfg.schwa_deletion:
                continue
            phones.append(cfg.inherent_vowel)
        elif ch in cfg.vowel_sign_map:
            phones.append(cfg.vowel_sign_map[ch])
        elif ch in cfg.independent_vowel_map:
            phones.append(cfg.independent_vowel_map[ch])
        elif ch in cfg.nasalization_map:
            phones.append(cfg.nasalization_map[ch])
        elif ch == cfg.virama:
            continue
        else:
            raise UnknownCodepoint(ch, context=word)
    return phones


def _is_foreign_letter(ch: str, cfg: LanguageConfig) -> bool:
    if cfg.in_block(ch) or ch in ZERO_WIDTH:
        return False
    return unicodedata.category(ch)[0] in ("L", "M")


def analyze_sentence(
    sentence_id: str, text: str, cfg: LanguageConfig, strict: bool = True
) -> SentenceRecord:
    """Build the full SentenceRecord for one candidate sentence.

    Strict mode rejects sentences that cannot be recorded verbatim:
    out-of-script letters (UnknownCodepoint), digits anywhere
    (NeedsNormalization) and unmapped in-block codepoints
    (UnknownCodepoint). Lenient mode skips the offending characters,
    flags the record needs_normalization and records warnings instead.

    Raises SentenceRejected; never returns a partial record.
    """
    norm = unicodedata.normalize("NFC", text)
    if not norm.strip():
        raise SentenceRejected(sentence_id, "EmptySentence")

    digits = sorted({ch for ch in norm if unicodedata.category(ch) == "Nd"})
    foreign = sorted({ch for ch in norm if _is_foreign_letter(ch, cfg)})
    warnings: list[str] = []
    if foreign:
        detail = " ".join(f"U+{ord(c):04X}" for c in foreign)
        if strict:
            raise SentenceRejected(sentence_id, "UnknownCodepoint", detail)
        warnings.append(f"skipped out-of-script letters: {detail}")
    if digits:
        detail = " ".join(f"U+{ord(c):04X}" for c in digits)
        if strict:
            raise SentenceRejected(sentence_id, "NeedsNormalization", detail)
        warnings.append(f"digits need normalization: {detail}")

    work = norm
    if not strict and digits:
        work = "".join(ch for ch in norm if unicodedata.category(ch) != "Nd")

    words, punct = tokenize_with_punctuation(work, cfg)
    if not strict:
        mapped = (
            set(cfg.consonant_map)
            | set(cfg.vowel_sign_map)
            | set(cfg.independent_vowel_map)
            | set(cfg.nasalization_map)
            | set(cfg.silent_marks)
            | {cfg.virama}
        )
        cleaned = []
        for w in words:
            kept = "".join(ch for ch in w if ch in mapped)
            dropped = sorted({ch for ch in w if ch not in mapped})
            if dropped:
                detail = " ".join(f"U+{ord(c):04X}" for c in dropped)
                warnings.append(f"skipped unmapped codepoints: {detail}")
            if kept:
                cleaned.append(kept)
        words = cleaned
    if not words:
        raise SentenceRejected(sentence_id, "EmptySentence", "no script-block words")

    syllables_per_word: list[list[str]] = []
    phones: list[str] = []
    for w in words:
        try:
            aksharas = syllabify(w, cfg)
            phones.extend(to_phones(w, cfg))
        except UnknownCodepoint as exc:
            raise SentenceRejected(
                sentence_id, "UnknownCodepoint", f"{w}: U+{ord(exc.codepoint):04X}"
            ) from None
        syllables_per_word.append([a.text for a in aksharas])

    if not phones:
        raise SentenceRejected(sentence_id, "NoPhones", "no voiced material")

    return SentenceRecord(
        id=sentence_id,
        raw_text=text,
        words=words,
        syllables_per_word=syllables_per_word,
        phones=phones,
        word_count=len(words),
        syllable_count=sum(len(s) for s in syllables_per_word),
        punctuation=punct,
        needs_normalization=bool(digits or foreign),
        warnings=warnings,
    )
