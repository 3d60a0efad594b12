"""Recorded-audio quality control: silence structure, syllable rate,
clipping.

Endpointing is plain frame-energy thresholding relative to the loudest
frame; the format contract guarantees clean studio audio, so no
statistical voice-activity model is needed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import AllSilent, EmptyInput, ZeroSpeechDuration
from .script import SentenceRecord
from .wavio import EXPECTED_SPEC, AudioBuffer, AudioSpec

WINDOW_MS = 25.0
HOP_MS = 10.0

PASS = "pass"
WARN = "warn"
FAIL = "fail"


@dataclass(frozen=True)
class QcThresholds:
    rate_band: tuple[float, float] = (6.0, 8.0)
    silence_floor_db: float = -40.0
    pause_min_ms: float = 200.0
    clip_level: float = 0.999
    clip_ratio_max: float = 1e-4

    def __post_init__(self):
        lo, hi = self.rate_band
        if not lo < hi:
            raise ValueError("rate_band must be (min, max) with min < max")
        for v in (lo, hi, self.silence_floor_db, self.pause_min_ms,
                  self.clip_level, self.clip_ratio_max):
            if not np.isfinite(v):
                raise ValueError("thresholds must be finite")


@dataclass
class EndpointResult:
    net_speech_duration: float
    speech_start: float
    speech_end: float
    pauses: list[tuple[float, float]]


@dataclass
class QcReport:
    utt_id: str
    format_ok: bool
    duration: float
    net_speech_duration: float
    pauses: list[tuple[float, float]]
    syllable_rate: float
    clip_ratio: float
    verdict: str
    reasons: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "utt_id": self.utt_id,
            "format_ok": self.format_ok,
            "duration": self.duration,
            "net_speech_duration": self.net_speech_duration,
            "pauses": [list(p) for p in self.pauses],
            "syllable_rate": self.syllable_rate,
            "clip_ratio": self.clip_ratio,
            "verdict": self.verdict,
            "reasons": self.reasons,
        }


def _frame_energies(samples: np.ndarray, sr: int) -> tuple[np.ndarray, int]:
    win = int(round(sr * WINDOW_MS / 1000.0))
    hop = int(round(sr * HOP_MS / 1000.0))
    n = len(samples)
    n_frames = max(1, 1 + (n - 1) // hop)
    energies = np.empty(n_frames)
    for k in range(n_frames):
        seg = samples[k * hop : k * hop + win]
        energies[k] = float(np.mean(seg * seg)) if len(seg) else 0.0
    return energies, hop


def endpoint(buf: AudioBuffer, t: QcThresholds = QcThresholds()) -> EndpointResult:
    """Trim edge silence and list internal pauses.

    A frame (25 ms window, 10 ms hop) is silent when its energy falls
    silence_floor_db below the loudest frame. Each frame accounts for
    one hop of time, so the speech span runs from the first speech
    frame's hop slot through the last one's; silent runs inside it of at
    least pause_min_ms are pauses, excluded from net speech.

    Raises AllSilent when no frame clears the floor (this includes an
    all-zero signal).
    """
    samples = buf.samples
    sr = buf.spec.sample_rate
    energies, hop = _frame_energies(samples, sr)
    peak = float(energies.max())
    if peak <= 0.0:
        raise AllSilent("signal has no energy")
    floor = peak * 10.0 ** (t.silence_floor_db / 10.0)
    speech = energies > floor
    idx = np.flatnonzero(speech)
    if len(idx) == 0:
        raise AllSilent("every frame is below the silence floor")

    f0, f1 = int(idx[0]), int(idx[-1])
    hop_s = hop / sr
    start = f0 * hop_s
    end = (f1 + 1) * hop_s
    pauses: list[tuple[float, float]] = []
    run = 0
    for k in range(f0, f1 + 1):
        if not speech[k]:
            run += 1
            continue
        if run * hop_s * 1000.0 >= t.pause_min_ms:
            pauses.append(((k - run) * hop_s, k * hop_s))
        run = 0
    net = (end - start) - sum(b - a for a, b in pauses)
    return EndpointResult(net, start, end, pauses)


def clip_check(buf: AudioBuffer, t: QcThresholds = QcThresholds()) -> tuple[float, str]:
    """Fraction of samples at or above the clip level, plus pass/fail."""
    samples = buf.samples
    if len(samples) == 0:
        return 0.0, PASS
    ratio = float(np.mean(np.abs(samples) >= t.clip_level))
    return ratio, (FAIL if ratio > t.clip_ratio_max else PASS)


def compute_verdict(
    format_ok: bool,
    rate: float,
    clip_ratio: float,
    t: QcThresholds,
    strict: bool = True,
) -> tuple[str, list[str]]:
    """Pure verdict function over the report's numeric fields."""
    reasons = []
    verdict = PASS
    if not format_ok:
        reasons.append("FormatMismatch")
        verdict = FAIL if strict else WARN
    if clip_ratio > t.clip_ratio_max:
        reasons.append("ClipRatioExceeded")
        verdict = FAIL
    lo, hi = t.rate_band
    if not lo <= rate <= hi:
        reasons.append("OutOfBand")
        if verdict == PASS:
            verdict = WARN
    return verdict, reasons


def syllable_rate(
    rec: SentenceRecord,
    buf: AudioBuffer,
    t: QcThresholds = QcThresholds(),
    strict: bool = True,
    expected: AudioSpec = EXPECTED_SPEC,
) -> QcReport:
    """Full per-utterance QC: format, endpointing, rate, clipping.

    Raises ZeroSpeechDuration when endpointing leaves no speech time to
    divide by (propagates AllSilent for silent files).
    """
    ep = endpoint(buf, t)
    if ep.net_speech_duration <= 0.0:
        raise ZeroSpeechDuration(rec.id)
    rate = rec.syllable_count / ep.net_speech_duration
    clip_ratio, _ = clip_check(buf, t)
    format_ok = buf.spec == expected
    verdict, reasons = compute_verdict(format_ok, rate, clip_ratio, t, strict)
    return QcReport(
        utt_id=rec.id,
        format_ok=format_ok,
        duration=buf.duration,
        net_speech_duration=ep.net_speech_duration,
        pauses=ep.pauses,
        syllable_rate=rate,
        clip_ratio=clip_ratio,
        verdict=verdict,
        reasons=reasons,
    )


def dataset_rate_summary(
    reports: list[QcReport],
) -> tuple[float, float, int]:
    """Mean and population std of per-utterance rates, plus out-of-band count."""
    if not reports:
        raise EmptyInput("no QC reports to summarize")
    rates = np.array([r.syllable_rate for r in reports])
    out = sum(1 for r in reports if "OutOfBand" in r.reasons)
    return float(rates.mean()), float(rates.std()), out
