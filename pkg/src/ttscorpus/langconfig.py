"""Per-language script definitions and their on-disk format.

A language config is a UTF-8 INI-style file with one ``[language]``
section of scalar keys and one map section per character class, all
codepoints written as U+XXXX:

    [language]
    id = hindi
    script_block = U+0900..U+097F
    virama = U+094D
    inherent_vowel = a
    schwa_deletion = true
    punctuation = U+0964 U+0965
    silent_marks = U+093C

    [consonants]
    U+0915 = k
    ...

    [vowel_signs]   [independent_vowels]   [nasalization]
    ...

Reference configs for Devanagari (hindi), Bengali and Telugu ship in
``ttscorpus/data``.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import ConfigError

_SCALAR_SECTION = "language"
_MAP_SECTIONS = ("consonants", "vowel_signs", "independent_vowels", "nasalization")


def _parse_codepoint(token: str) -> str:
    token = token.strip()
    if not token.upper().startswith("U+"):
        raise ConfigError(f"codepoint must be written as U+XXXX, got {token!r}")
    try:
        value = int(token[2:], 16)
    except ValueError:
        raise ConfigError(f"bad codepoint {token!r}") from None
    if not 0 <= value <= 0x10FFFF:
        raise ConfigError(f"codepoint {token!r} outside Unicode range")
    return chr(value)


def _parse_block(token: str) -> tuple[int, int]:
    parts = token.split("..")
    if len(parts) != 2:
        raise ConfigError(f"script_block must look like U+0900..U+097F, got {token!r}")
    lo, hi = (ord(_parse_codepoint(p)) for p in parts)
    if lo > hi:
        raise ConfigError(f"script_block bounds reversed: {token!r}")
    return lo, hi


def _parse_cp_set(token: str) -> frozenset[str]:
    return frozenset(_parse_codepoint(t) for t in token.split())


@dataclass(frozen=True)
class LanguageConfig:
    """Everything the analyzers need to know about one script/language."""

    language_id: str
    script_block: tuple[int, int]
    virama: str
    inherent_vowel: str
    schwa_deletion: bool
    consonant_map: dict[str, str]
    vowel_sign_map: dict[str, str]
    independent_vowel_map: dict[str, str]
    nasalization_map: dict[str, str]
    # In-block sentence punctuation (danda family): stripped by the
    # tokenizer and recorded alongside commas and full stops.
    punctuation: frozenset[str] = frozenset()
    # In-block modifier codepoints (nukta) that attach to the current
    # akshara and emit no phone of their own.
    silent_marks: frozenset[str] = frozenset()

    def __post_init__(self):
        self._validate()

    @property
    def nasalization_marks(self) -> frozenset[str]:
        return frozenset(self.nasalization_map)

    @property
    def phone_inventory(self) -> frozenset[str]:
        labels = set(self.consonant_map.values())
        labels.update(self.vowel_sign_map.values())
        labels.update(self.independent_vowel_map.values())
        labels.update(self.nasalization_map.values())
        labels.add(self.inherent_vowel)
        return frozenset(labels)

    def in_block(self, ch: str) -> bool:
        return self.script_block[0] <= ord(ch) <= self.script_block[1]

    def _validate(self) -> None:
        if not self.language_id:
            raise ConfigError("language id must be nonempty")
        if len(self.virama) != 1:
            raise ConfigError("virama must be a single codepoint")
        if not self.in_block(self.virama):
            raise ConfigError("virama lies outside script_block")
        maps = {
            "consonants": self.consonant_map,
            "vowel_signs": self.vowel_sign_map,
            "independent_vowels": self.independent_vowel_map,
            "nasalization": self.nasalization_map,
        }
        for name, mapping in maps.items():
            for cp, label in mapping.items():
                if len(cp) != 1 or not self.in_block(cp):
                    raise ConfigError(
                        f"[{name}] codepoint U+{ord(cp[0]):04X} outside script_block"
                    )
                if not label or label.split() != [label]:
                    raise ConfigError(f"[{name}] U+{ord(cp):04X} has empty or padded label")
                if cp == self.virama:
                    raise ConfigError(f"virama may not appear in [{name}]")
        if not self.inherent_vowel:
            raise ConfigError("inherent_vowel must be nonempty")
        # punctuation may live outside the block (the danda is shared
        # across scripts); silent marks are script modifiers and may not.
        for cp in self.silent_marks:
            if not self.in_block(cp):
                raise ConfigError(f"silent mark U+{ord(cp):04X} outside script_block")
        overlap = set(self.consonant_map) & set(self.vowel_sign_map)
        overlap |= set(self.consonant_map) & set(self.independent_vowel_map)
        overlap |= set(self.vowel_sign_map) & set(self.independent_vowel_map)
        if overlap:
            cps = ", ".join(f"U+{ord(c):04X}" for c in sorted(overlap))
            raise ConfigError(f"codepoints mapped in more than one class: {cps}")


def load_language_config(path: str | Path) -> LanguageConfig:
    """Parse a language config file, raising ConfigError on any defect."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"language config not found: {path}")
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), interpolation=None, strict=True
    )
    parser.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            parser.read_file(fh)
    except (configparser.Error, UnicodeDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None

    if not parser.has_section(_SCALAR_SECTION):
        raise ConfigError(f"{path}: missing [{_SCALAR_SECTION}] section")
    scal = parser[_SCALAR_SECTION]
    for key in ("id", "script_block", "virama", "inherent_vowel", "schwa_deletion"):
        if key not in scal:
            raise ConfigError(f"{path}: [{_SCALAR_SECTION}] missing key {key!r}")

    def read_map(section: str) -> dict[str, str]:
        if not parser.has_section(section):
            return {}
        return {_parse_codepoint(k): v.strip() for k, v in parser[section].items()}

    try:
        schwa = scal.getboolean("schwa_deletion")
    except ValueError:
        raise ConfigError(f"{path}: schwa_deletion must be a boolean") from None

    try:
        return LanguageConfig(
            language_id=scal["id"].strip(),
            script_block=_parse_block(scal["script_block"]),
            virama=_parse_codepoint(scal["virama"]),
            inherent_vowel=scal["inherent_vowel"].strip(),
            schwa_deletion=schwa,
            consonant_map=read_map("consonants"),
            vowel_sign_map=read_map("vowel_signs"),
            independent_vowel_map=read_map("independent_vowels"),
            nasalization_map=read_map("nasalization"),
            punctuation=_parse_cp_set(scal.get("punctuation", "")),
            silent_marks=_parse_cp_set(scal.get("silent_marks", "")),
        )
    except ConfigError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def packaged_config_path(name: str) -> Path:
    """Path of a reference config shipped with the package (e.g. 'hindi')."""
    root = resources.files("ttscorpus").joinpath("data")
    candidate = root.joinpath(f"{name}.cfg")
    with resources.as_file(candidate) as p:
        if not p.is_file():
            available = sorted(f.name[:-4] for f in root.iterdir() if f.name.endswith(".cfg"))
            raise ConfigError(f"no packaged config {name!r}; available: {available}")
        return Path(p)


def load_packaged_config(name: str) -> LanguageConfig:
    return load_language_config(packaged_config_path(name))
