"""Objective and subjective evaluation: mel-cepstral distortion over a
DTW alignment, and MOS/DMOS score aggregation.

The DMOS formula (per-evaluator ratio of synthesized to ground-truth
means, scaled to 5) is a reconstruction: equal quality maps to 5.0 and
better-than-reference synthesis legitimately exceeds 5.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.fft import dct
from scipy.spatial.distance import cdist

from .errors import (
    EmptyInput,
    EmptySequence,
    MissingCondition,
    NoRatings,
    TooShort,
)
from .qc import QcThresholds, endpoint
from .wavio import AudioBuffer, AudioSpec

MCD_SCALE = 10.0 / math.log(10.0)

GROUND_TRUTH = "ground-truth"
SYNTHESIZED = "synthesized"


@dataclass(frozen=True)
class AnalysisConfig:
    window_ms: float = 25.0
    hop_ms: float = 10.0
    n_mels: int = 40
    n_coeffs: int = 24
    log_floor: float = 1e-10


@dataclass
class MelCepstraSequence:
    """Per-frame cepstra: frames holds c1..cD, c0 is kept apart so the
    distance never sees gain."""

    frames: np.ndarray
    c0: np.ndarray
    frame_hop: float
    source_spec: AudioSpec

    @property
    def n_frames(self) -> int:
        return self.frames.shape[0]


def _hz_to_mel(f):
    return 2595.0 * np.log10(1.0 + f / 700.0)


def _mel_to_hz(m):
    return 700.0 * (10.0 ** (m / 2595.0) - 1.0)


def _mel_filterbank(n_mels: int, nfft: int, sr: int) -> np.ndarray:
    mels = np.linspace(_hz_to_mel(0.0), _hz_to_mel(sr / 2.0), n_mels + 2)
    bins = np.floor((nfft + 1) * _mel_to_hz(mels) / sr).astype(int)
    fb = np.zeros((n_mels, nfft // 2 + 1))
    for m in range(1, n_mels + 1):
        left, center, right = bins[m - 1], bins[m], bins[m + 1]
        for k in range(left, center):
            fb[m - 1, k] = (k - left) / max(1, center - left)
        for k in range(center, right):
            fb[m - 1, k] = (right - k) / max(1, right - center)
    return fb


def mel_cepstra(buf: AudioBuffer, cfg: AnalysisConfig = AnalysisConfig()) -> MelCepstraSequence:
    """Windowed mel-cepstral analysis: Hamming window, magnitude
    spectrum, triangular mel bands, log, DCT-II (orthonormal).

    Raises TooShort when the signal does not fill one window.
    """
    x = buf.samples
    sr = buf.spec.sample_rate
    win = int(round(sr * cfg.window_ms / 1000.0))
    hop = int(round(sr * cfg.hop_ms / 1000.0))
    if len(x) < win:
        raise TooShort(f"{len(x)} samples, need at least {win}")
    nfft = 1
    while nfft < win:
        nfft *= 2
    n_frames = 1 + (len(x) - win) // hop
    window = np.hamming(win)
    fb = _mel_filterbank(cfg.n_mels, nfft, sr)

    idx = np.arange(win)[None, :] + hop * np.arange(n_frames)[:, None]
    spectra = np.abs(np.fft.rfft(x[idx] * window, n=nfft, axis=1))
    logmel = np.log(np.maximum(spectra @ fb.T, cfg.log_floor))
    ceps = dct(logmel, type=2, norm="ortho", axis=1)
    return MelCepstraSequence(
        frames=ceps[:, 1 : cfg.n_coeffs + 1],
        c0=ceps[:, 0],
        frame_hop=cfg.hop_ms,
        source_spec=buf.spec,
    )


def dtw_align(
    ref: MelCepstraSequence, syn: MelCepstraSequence
) -> tuple[list[tuple[int, int]], np.ndarray]:
    """Minimal-cost monotone alignment under steps (1,0), (0,1), (1,1).

    Returns the path from (0,0) to (T_ref-1, T_syn-1) and the Euclidean
    c1..cD distance of each aligned pair. Backtracking prefers the
    diagonal on ties.
    """
    if ref.n_frames == 0 or syn.n_frames == 0:
        raise EmptySequence("cannot align an empty sequence")
    dist = cdist(ref.frames, syn.frames)
    tr, ts = dist.shape
    acc = np.full((tr, ts), np.inf)
    acc[0, 0] = dist[0, 0]
    for i in range(1, tr):
        acc[i, 0] = acc[i - 1, 0] + dist[i, 0]
    for j in range(1, ts):
        acc[0, j] = acc[0, j - 1] + dist[0, j]
    for i in range(1, tr):
        for j in range(1, ts):
            acc[i, j] = dist[i, j] + min(
                acc[i - 1, j - 1], acc[i - 1, j], acc[i, j - 1]
            )

    path = [(tr - 1, ts - 1)]
    i, j = tr - 1, ts - 1
    while (i, j) != (0, 0):
        if i == 0:
            j -= 1
        elif j == 0:
            i -= 1
        else:
            diag, up, left = acc[i - 1, j - 1], acc[i - 1, j], acc[i, j - 1]
            if diag <= up and diag <= left:
                i, j = i - 1, j - 1
            elif up <= left:
                i -= 1
            else:
                j -= 1
        path.append((i, j))
    path.reverse()
    return path, np.array([dist[i, j] for i, j in path])


def mcd(ref: MelCepstraSequence, syn: MelCepstraSequence) -> float:
    """Mel-cepstral distortion in dB, averaged over the alignment path."""
    _, dists = dtw_align(ref, syn)
    return float(MCD_SCALE * math.sqrt(2.0) * dists.mean())


def _trimmed(buf: AudioBuffer, t: QcThresholds) -> AudioBuffer:
    ep = endpoint(buf, t)
    sr = buf.spec.sample_rate
    lo = int(round(ep.speech_start * sr))
    hi = int(round(ep.speech_end * sr))
    return AudioBuffer(buf.pcm[lo:hi], buf.spec)


def mcd_between(
    ref_buf: AudioBuffer,
    syn_buf: AudioBuffer,
    cfg: AnalysisConfig = AnalysisConfig(),
    trim: bool = True,
    thresholds: QcThresholds = QcThresholds(),
) -> float:
    """File-level MCD: optionally endpoint-trim both signals, then
    extract cepstra and align."""
    if trim:
        ref_buf = _trimmed(ref_buf, thresholds)
        syn_buf = _trimmed(syn_buf, thresholds)
    return mcd(mel_cepstra(ref_buf, cfg), mel_cepstra(syn_buf, cfg))


@dataclass(frozen=True)
class Rating:
    evaluator_id: str
    system_id: str
    item_id: str
    condition: str
    score: int

    def __post_init__(self):
        if self.score not in (1, 2, 3, 4, 5):
            raise ValueError(f"score must be 1-5, got {self.score}")
        if self.condition not in (GROUND_TRUTH, SYNTHESIZED):
            raise ValueError(f"unknown condition {self.condition!r}")


@dataclass(frozen=True)
class MetricReport:
    metric: str
    mean: float
    std: float
    n_evaluators: int
    system: str = ""

    def to_dict(self) -> dict:
        return {
            "metric": self.metric,
            "mean": self.mean,
            "std": self.std,
            "n_evaluators": self.n_evaluators,
            "system": self.system,
        }


def load_ratings(path: str | Path) -> list[Rating]:
    """CSV with header evaluator,system,item,condition,score."""
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        required = {"evaluator", "system", "item", "condition", "score"}
        if reader.fieldnames is None or not required <= set(reader.fieldnames):
            raise ValueError(f"ratings file needs columns {sorted(required)}")
        for row in reader:
            out.append(
                Rating(
                    evaluator_id=row["evaluator"].strip(),
                    system_id=row["system"].strip(),
                    item_id=row["item"].strip(),
                    condition=row["condition"].strip(),
                    score=int(row["score"]),
                )
            )
    return out


def mos_aggregate(
    ratings: list[Rating], system: str, condition: str | None = None
) -> MetricReport:
    """Mean and population std over all matching scores."""
    scores = [
        r.score
        for r in ratings
        if r.system_id == system and (condition is None or r.condition == condition)
    ]
    if not scores:
        raise NoRatings(f"no ratings for system {system!r}")
    n_eval = len(
        {
            r.evaluator_id
            for r in ratings
            if r.system_id == system and (condition is None or r.condition == condition)
        }
    )
    arr = np.array(scores, dtype=np.float64)
    return MetricReport("MOS", float(arr.mean()), float(arr.std()), n_eval, system)


def dmos_aggregate(ratings: list[Rating], system: str) -> MetricReport:
    """Per-evaluator DMOS = 5·mean(synthesized)/mean(ground-truth),
    reported mean±std across evaluators. Values above 5 are legal.

    Raises MissingCondition when an evaluator lacks either condition.
    """
    mine = [r for r in ratings if r.system_id == system]
    if not mine:
        raise NoRatings(f"no ratings for system {system!r}")
    by_eval: dict[str, dict[str, list[int]]] = {}
    for r in mine:
        by_eval.setdefault(r.evaluator_id, {}).setdefault(r.condition, []).append(
            r.score
        )
    dmos = []
    for evaluator in sorted(by_eval):
        conditions = by_eval[evaluator]
        for needed in (GROUND_TRUTH, SYNTHESIZED):
            if needed not in conditions:
                raise MissingCondition(evaluator, needed)
        gt = np.mean(conditions[GROUND_TRUTH])
        syn = np.mean(conditions[SYNTHESIZED])
        dmos.append(5.0 * syn / gt)
    arr = np.array(dmos)
    return MetricReport("DMOS", float(arr.mean()), float(arr.std()), len(dmos), system)


def mcd_summary(values: list[float], system: str = "") -> MetricReport:
    """mean±std over per-pair MCDs; n counts the file pairs."""
    if not values:
        raise EmptyInput("no MCD values")
    arr = np.array(values)
    return MetricReport("MCD dB", float(arr.mean()), float(arr.std()), len(values), system)
