"""Deterministic synthetic-audio builders shared by the CLI and acceptance tests."""

import numpy as np

from ttscorpus.wavio import AudioSpec, buffer_from_float, write_wav

SR = 48000


def speech_like(duration: float, sr: int = SR, f0: float = 140.0, amp: float = 0.4):
    """A slowly amplitude-modulated tone; loud enough to clear any silence floor."""
    t = np.arange(int(round(duration * sr))) / sr
    return amp * np.sin(2 * np.pi * f0 * t) * (0.85 + 0.15 * np.sin(2 * np.pi * 3.0 * t))


def padded_utterance(
    speech_s: float,
    lead_s: float = 0.5,
    tail_s: float = 0.5,
    sr: int = SR,
    pause_after: float | None = None,
    pause_s: float = 0.0,
    amp: float = 0.4,
):
    """Silence-padded synthetic utterance, optionally split by an internal pause.

    ``speech_s`` is the total voiced duration; the pause is extra.
    """
    parts = [np.zeros(int(round(lead_s * sr)))]
    if pause_after is None:
        parts.append(speech_like(speech_s, sr, amp=amp))
    else:
        parts.append(speech_like(pause_after, sr, amp=amp))
        parts.append(np.zeros(int(round(pause_s * sr))))
        parts.append(speech_like(speech_s - pause_after, sr, amp=amp))
    parts.append(np.zeros(int(round(tail_s * sr))))
    return np.concatenate(parts)


def write_utterance(path, speech_s: float, sr: int = SR, **kwargs) -> None:
    samples = padded_utterance(speech_s, sr=sr, **kwargs)
    write_wav(path, buffer_from_float(samples, AudioSpec(sr, 16, 1)))
