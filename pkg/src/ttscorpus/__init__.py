"""Recording-script selection, curation, audio QC and evaluation metrics
for studio TTS corpus collection in Brahmic-script languages."""

__version__ = "0.1.0"

from .errors import ConfigError, CorpusError
from .langconfig import LanguageConfig, load_language_config, load_packaged_config
from .metrics import dmos_aggregate, mcd_between, mos_aggregate
from .qc import QcThresholds, syllable_rate
from .script import SentenceRecord, analyze_sentence, syllabify, to_phones
from .select import (
    AugmentationPolicy,
    SelectionConstraints,
    augment_weak,
    filter_pool,
    greedy_select,
)
from .stats import build_stats, weak_phones, zipf_fit
from .wavio import AudioBuffer, AudioSpec, read_wav, write_wav

__all__ = [
    "__version__",
    "AudioBuffer",
    "AudioSpec",
    "AugmentationPolicy",
    "ConfigError",
    "CorpusError",
    "LanguageConfig",
    "QcThresholds",
    "SelectionConstraints",
    "SentenceRecord",
    "analyze_sentence",
    "augment_weak",
    "build_stats",
    "dmos_aggregate",
    "filter_pool",
    "greedy_select",
    "load_language_config",
    "load_packaged_config",
    "mcd_between",
    "mos_aggregate",
    "read_wav",
    "syllabify",
    "syllable_rate",
    "to_phones",
    "weak_phones",
    "write_wav",
    "zipf_fit",
]
