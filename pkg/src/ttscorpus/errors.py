"""Exception types shared across the toolkit."""


class CorpusError(Exception):
    """Base class for every domain error raised by this package."""


class ConfigError(CorpusError):
    """A language config or pipeline config file is missing or malformed."""


class EmptyWord(CorpusError):
    """Empty string passed where a word is required."""


class UnknownCodepoint(CorpusError):
    """An in-block codepoint has no mapping in the language config."""

    def __init__(self, codepoint: str, context: str = ""):
        self.codepoint = codepoint
        self.context = context
        label = f"U+{ord(codepoint):04X} ({codepoint!r})"
        super().__init__(f"unmapped codepoint {label}" + (f" in {context!r}" if context else ""))


class SentenceRejected(CorpusError):
    """A sentence cannot be analyzed; carries a machine-readable reason."""

    def __init__(self, sentence_id: str, reason: str, detail: str = ""):
        self.sentence_id = sentence_id
        self.reason = reason
        self.detail = detail
        msg = f"{sentence_id}: {reason}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class DuplicateSentenceId(CorpusError):
    """The same sentence id was accumulated twice."""


class InsufficientData(CorpusError):
    """Not enough distinct frequencies to fit a rank-frequency line."""


class EmptyPool(CorpusError):
    """Selection requested over an empty sentence pool."""


class NotRiff(CorpusError):
    """File is not a RIFF/WAVE container."""


class UnsupportedCodec(CorpusError):
    """WAVE file uses a codec other than integer PCM."""


class TruncatedData(CorpusError):
    """WAVE header declares more payload bytes than the file holds."""


class AllSilent(CorpusError):
    """No frame of the utterance rises above the silence floor."""


class ZeroSpeechDuration(CorpusError):
    """Endpointing left no net speech to compute a rate over."""


class TooShort(CorpusError):
    """Audio shorter than a single analysis window."""


class EmptySequence(CorpusError):
    """DTW requested on an empty feature sequence."""


class NoRatings(CorpusError):
    """No listening-test ratings found for the requested system."""


class MissingCondition(CorpusError):
    """An evaluator rated only one of ground-truth / synthesized."""

    def __init__(self, evaluator_id: str, condition: str):
        self.evaluator_id = evaluator_id
        self.condition = condition
        super().__init__(f"evaluator {evaluator_id!r} has no {condition!r} ratings")


class EmptyInput(CorpusError):
    """An aggregation was asked to summarize zero items."""
