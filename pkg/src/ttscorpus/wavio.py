"""RIFF/WAVE PCM reading and writing, bit-exact for canonical files.

Only uncompressed integer PCM (8/16/24/32-bit) is handled; anything else
is an UnsupportedCodec. The writer emits the canonical 44-byte layout
(16-byte fmt chunk followed by data), so read → write round-trips files
in that layout byte for byte.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import NotRiff, TruncatedData, UnsupportedCodec

PCM_FORMAT = 1


@dataclass(frozen=True)
class AudioSpec:
    sample_rate: int
    bit_depth: int
    channels: int

    def __post_init__(self):
        if self.sample_rate <= 0 or self.bit_depth <= 0 or self.channels <= 0:
            raise ValueError("sample_rate, bit_depth and channels must be positive")


EXPECTED_SPEC = AudioSpec(48000, 16, 1)


@dataclass
class AudioBuffer:
    """Integer PCM frames plus the header spec they came with.

    pcm has shape (frames, channels). samples is the normalized mono mix
    in [-1, 1] used by all analysis code; the raw integers are kept so a
    write reproduces the data bytes exactly.
    """

    pcm: np.ndarray
    spec: AudioSpec

    @property
    def n_frames(self) -> int:
        return self.pcm.shape[0]

    @property
    def duration(self) -> float:
        return self.n_frames / self.spec.sample_rate

    @property
    def samples(self) -> np.ndarray:
        mono = self.pcm.astype(np.float64).mean(axis=1)
        if self.spec.bit_depth == 8:
            return (mono - 128.0) / 128.0
        return mono / float(2 ** (self.spec.bit_depth - 1))


def _decode_pcm(raw: bytes, spec: AudioSpec) -> np.ndarray:
    bytes_per = spec.bit_depth // 8
    block = bytes_per * spec.channels
    if len(raw) % block:
        raise TruncatedData(
            f"data chunk of {len(raw)} bytes is not a whole number of "
            f"{block}-byte frames"
        )
    if spec.bit_depth == 8:
        flat = np.frombuffer(raw, dtype=np.uint8).astype(np.int16)
    elif spec.bit_depth == 16:
        flat = np.frombuffer(raw, dtype="<i2")
    elif spec.bit_depth == 24:
        trip = np.frombuffer(raw, dtype=np.uint8).reshape(-1, 3).astype(np.int32)
        flat = trip[:, 0] | (trip[:, 1] << 8) | (trip[:, 2] << 16)
        flat = np.where(flat >= 1 << 23, flat - (1 << 24), flat)
    else:
        flat = np.frombuffer(raw, dtype="<i4")
    return flat.reshape(-1, spec.channels)


def _encode_pcm(pcm: np.ndarray, spec: AudioSpec) -> bytes:
    flat = pcm.reshape(-1)
    if spec.bit_depth == 8:
        return flat.astype(np.uint8).tobytes()
    if spec.bit_depth == 16:
        return flat.astype("<i2").tobytes()
    if spec.bit_depth == 24:
        v = flat.astype(np.int64) & 0xFFFFFF
        out = np.empty((len(v), 3), dtype=np.uint8)
        out[:, 0] = v & 0xFF
        out[:, 1] = (v >> 8) & 0xFF
        out[:, 2] = (v >> 16) & 0xFF
        return out.tobytes()
    return flat.astype("<i4").tobytes()


def read_wav(path: str | Path) -> AudioBuffer:
    """Parse a RIFF/WAVE PCM file.

    Raises NotRiff for anything that is not a RIFF/WAVE container,
    UnsupportedCodec for non-PCM encodings or odd bit depths, and
    TruncatedData when a chunk promises more bytes than the file holds
    or a required chunk is missing.
    """
    data = Path(path).read_bytes()
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise NotRiff(f"{path}: not a RIFF/WAVE file")

    spec = None
    raw = None
    pos = 12
    while pos + 8 <= len(data):
        cid = data[pos : pos + 4]
        (size,) = struct.unpack("<I", data[pos + 4 : pos + 8])
        body = data[pos + 8 : pos + 8 + size]
        if len(body) < size:
            raise TruncatedData(
                f"{path}: chunk {cid!r} declares {size} bytes, only {len(body)} present"
            )
        if cid == b"fmt ":
            if size < 16:
                raise TruncatedData(f"{path}: fmt chunk of {size} bytes")
            audio_format, channels, sample_rate, _, _, bits = struct.unpack(
                "<HHIIHH", body[:16]
            )
            if audio_format != PCM_FORMAT:
                raise UnsupportedCodec(
                    f"{path}: audio format {audio_format}, only PCM (1) supported"
                )
            if bits not in (8, 16, 24, 32):
                raise UnsupportedCodec(f"{path}: {bits}-bit PCM not supported")
            spec = AudioSpec(sample_rate, bits, channels)
        elif cid == b"data":
            raw = body
        pos += 8 + size + (size & 1)

    if spec is None:
        raise TruncatedData(f"{path}: no fmt chunk")
    if raw is None:
        raise TruncatedData(f"{path}: no data chunk")
    return AudioBuffer(_decode_pcm(raw, spec), spec)


def write_wav(path: str | Path, buf: AudioBuffer) -> None:
    """Write the canonical PCM layout: RIFF, 16-byte fmt, data."""
    spec = buf.spec
    payload = _encode_pcm(buf.pcm, spec)
    pad = b"\x00" if len(payload) & 1 else b""
    block_align = spec.channels * spec.bit_depth // 8
    fmt = struct.pack(
        "<HHIIHH",
        PCM_FORMAT,
        spec.channels,
        spec.sample_rate,
        spec.sample_rate * block_align,
        block_align,
        spec.bit_depth,
    )
    riff_size = 4 + (8 + len(fmt)) + (8 + len(payload) + len(pad))
    with open(path, "wb") as fh:
        fh.write(b"RIFF" + struct.pack("<I", riff_size) + b"WAVE")
        fh.write(b"fmt " + struct.pack("<I", len(fmt)) + fmt)
        fh.write(b"data" + struct.pack("<I", len(payload)) + payload + pad)


def buffer_from_float(samples: np.ndarray, spec: AudioSpec) -> AudioBuffer:
    """Quantize [-1,1] float samples into an AudioBuffer (mono input)."""
    x = np.clip(np.asarray(samples, dtype=np.float64), -1.0, 1.0)
    if spec.bit_depth == 8:
        pcm = np.clip(np.round(x * 128.0 + 128.0), 0, 255).astype(np.uint8)
    else:
        full = float(2 ** (spec.bit_depth - 1))
        pcm = np.clip(np.round(x * full), -full, full - 1)
        pcm = pcm.astype(np.int32 if spec.bit_depth > 16 else np.int16)
    pcm = np.repeat(pcm[:, None], spec.channels, axis=1)
    return AudioBuffer(pcm, spec)
