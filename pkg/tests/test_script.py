import dataclasses
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from ttscorpus.errors import EmptyWord, SentenceRejected, UnknownCodepoint
from ttscorpus.langconfig import load_packaged_config
from ttscorpus.script import (
    CLUSTER,
    INDEPENDENT_VOWEL,
    OTHER,
    analyze_sentence,
    syllabify,
    to_phones,
    tokenize,
    tokenize_with_punctuation,
)

DATA = Path(__file__).parent / "data"

HINDI = load_packaged_config("hindi")
BENGALI = load_packaged_config("bengali")
TELUGU = load_packaged_config("telugu")
CONFIGS = {"hindi": HINDI, "bengali": BENGALI, "telugu": TELUGU}

ORACLE = [
    tuple(line.split("\t"))
    for line in (DATA / "akshara_oracle.tsv").read_text(encoding="utf-8").splitlines()
]


@pytest.mark.parametrize("lang,word,expected", ORACLE, ids=[w for _, w, _ in ORACLE])
def test_oracle_segmentation(lang, word, expected):
    got = "|".join(a.text for a in syllabify(word, CONFIGS[lang]))
    assert got == expected


def test_oracle_has_three_scripts_and_enough_words():
    assert len(ORACLE) >= 50
    assert {lang for lang, _, _ in ORACLE} == {"hindi", "bengali", "telugu"}


def _word_strategy(cfg):
    alphabet = sorted(
        set(cfg.consonant_map)
        | set(cfg.vowel_sign_map)
        | set(cfg.independent_vowel_map)
        | set(cfg.nasalization_map)
        | set(cfg.silent_marks)
        | {cfg.virama, "‌", "‍"}
    )
    return st.text(alphabet=alphabet, min_size=1, max_size=12)


@given(word=_word_strategy(HINDI))
def test_round_trip_hindi(word):
    assert "".join(a.text for a in syllabify(word, HINDI)) == word


@given(word=_word_strategy(BENGALI))
def test_round_trip_bengali(word):
    assert "".join(a.text for a in syllabify(word, BENGALI)) == word


@given(word=_word_strategy(TELUGU))
def test_round_trip_telugu(word):
    assert "".join(a.text for a in syllabify(word, TELUGU)) == word


def test_cluster_virama_counts():
    # a cluster akshara with n consonants carries exactly n-1 viramas
    for word in ("स्वतन्त्रता", "क्षेत्र", "नमस्ते"):
        for a in syllabify(word, HINDI):
            if a.kind != CLUSTER:
                continue
            n_cons = sum(1 for ch in a.text if ch in HINDI.consonant_map)
            n_vir = a.text.count(HINDI.virama)
            assert n_vir == n_cons - 1


def test_akshara_kinds():
    kinds = [a.kind for a in syllabify("अंगूर", HINDI)]
    assert kinds == [INDEPENDENT_VOWEL, CLUSTER, CLUSTER]
    kinds = [a.kind for a in syllabify("श्रीमान्", HINDI)]
    assert kinds == [CLUSTER, CLUSTER, OTHER]  # dead final consonant


def test_stray_mark_is_other():
    aksharas = syllabify("ा", HINDI)  # vowel sign with no consonant
    assert [a.kind for a in aksharas] == [OTHER]
    assert aksharas[0].text == "ा"


def test_zwj_stays_inside_akshara():
    word = "क्‍ष"  # ka + virama + ZWJ + ssa
    aksharas = syllabify(word, HINDI)
    assert len(aksharas) == 1
    assert aksharas[0].text == word


def test_syllabify_empty_word():
    with pytest.raises(EmptyWord):
        syllabify("", HINDI)


def test_syllabify_unknown_codepoint():
    with pytest.raises(UnknownCodepoint) as exc:
        syllabify("भाx", HINDI)
    assert exc.value.codepoint == "x"


def test_phones_schwa_deletion_on():
    assert to_phones("भारत", HINDI) == ["bh", "aa", "r", "a", "t"]


def test_phones_schwa_deletion_off():
    cfg = dataclasses.replace(HINDI, schwa_deletion=False)
    assert to_phones("भारत", cfg) == ["bh", "aa", "r", "a", "t", "a"]


def test_phones_single_vowel():
    assert to_phones("अ", HINDI) == ["a"]


def test_phones_nasalization():
    assert to_phones("अंगूर", HINDI) == ["a", "M", "g", "uu", "r"]


def test_phones_cluster_suppresses_schwa():
    # स्ते: virama kills the schwa of स, vowel sign supplies the e
    assert to_phones("नमस्ते", HINDI) == ["n", "a", "m", "a", "s", "t", "e"]


def test_phones_telugu_keeps_final_vowel():
    assert TELUGU.schwa_deletion is False
    assert to_phones("తెలుగు", TELUGU) == ["t", "e", "l", "u", "g", "u"]


def test_tokenize_empty():
    assert tokenize("", HINDI) == []


def test_tokenize_whitespace_split():
    assert tokenize("भारत देश", HINDI) == ["भारत", "देश"]


def test_tokenize_records_punctuation():
    words, punct = tokenize_with_punctuation("भारत, देश.", HINDI)
    assert words == ["भारत", "देश"]
    assert punct == [",", "."]


def test_tokenize_danda():
    words, punct = tokenize_with_punctuation("यह देश है।", HINDI)
    assert words == ["यह", "देश", "है"]
    assert punct == ["।"]


def test_tokenize_strips_foreign():
    assert tokenize("भारत (India)", HINDI) == ["भारत"]


def test_analyze_counts():
    rec = analyze_sentence("s1", "भारत देश", HINDI)
    assert rec.word_count == 2
    assert rec.syllable_count == 5
    assert rec.word_count == len(rec.words)
    assert rec.syllable_count == sum(len(s) for s in rec.syllables_per_word)
    assert rec.phones


def test_analyze_empty_rejected():
    with pytest.raises(SentenceRejected) as exc:
        analyze_sentence("s2", "", HINDI)
    assert exc.value.reason == "EmptySentence"


def test_analyze_strict_rejects_foreign_letters():
    with pytest.raises(SentenceRejected) as exc:
        analyze_sentence("s3", "भारत xyz", HINDI)
    assert exc.value.reason == "UnknownCodepoint"


def test_analyze_strict_rejects_digits():
    with pytest.raises(SentenceRejected) as exc:
        analyze_sentence("s4", "भारत में 29 राज्य", HINDI)
    assert exc.value.reason == "NeedsNormalization"


def test_analyze_lenient_flags_and_strips():
    rec = analyze_sentence("s5", "भारत xyz 29", HINDI, strict=False)
    assert rec.words == ["भारत"]
    assert rec.needs_normalization is True
    assert rec.warnings


def test_analyze_lenient_still_rejects_all_foreign():
    with pytest.raises(SentenceRejected) as exc:
        analyze_sentence("s6", "hello world", HINDI, strict=False)
    assert exc.value.reason == "EmptySentence"


def test_analyze_monotone_append():
    base = analyze_sentence("a", "भारत देश", HINDI)
    longer = analyze_sentence("b", "भारत देश महान", HINDI)
    assert longer.syllable_count >= base.syllable_count


def test_analyze_deterministic():
    a = analyze_sentence("x", "यह एक वाक्य है।", HINDI)
    b = analyze_sentence("x", "यह एक वाक्य है।", HINDI)
    assert a.to_dict() == b.to_dict()


def test_record_round_trips_through_dict():
    rec = analyze_sentence("r1", "भारत देश", HINDI)
    assert type(rec).from_dict(rec.to_dict()) == rec


def test_nfc_precomposed_nukta():
    # U+0958 (qa) decomposes to ka + nukta under NFC; both spellings analyze alike
    rec1 = analyze_sentence("n1", "क़लम", HINDI)
    rec2 = analyze_sentence("n2", "क़लम", HINDI)
    assert rec1.syllables_per_word == rec2.syllables_per_word
    assert rec1.phones == rec2.phones
