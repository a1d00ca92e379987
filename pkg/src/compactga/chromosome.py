"""Bit-string chromosomes and the deterministic uniform source that samples them."""

from __future__ import annotations

import numpy as np


class Rng:
    """Seeded uniform-variate stream (numpy PCG64 under a 64-bit seed).

    Every sampling decision in a run draws through :meth:`uniforms`, one
    variate per gene per sampled chromosome, and nothing else consumes the
    stream. Two ``Rng`` instances with the same seed therefore yield
    identical runs.
    """

    def __init__(self, seed: int):
        if not 0 <= int(seed) < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
        self.seed = int(seed)
        self._gen = np.random.Generator(np.random.PCG64(self.seed))

    def uniforms(self, count: int) -> np.ndarray:
        """Next `count` variates, each uniform in [0, 1)."""
        return self._gen.random(count)

    def __repr__(self) -> str:
        return f"Rng(seed={self.seed})"


class Chromosome:
    """Immutable fixed-length bit string, hashable so it can key a cache.

    Bits are packed eight per byte (gene 0 in the most significant bit of
    byte 0), so equality, hashing and popcounts touch l/8 bytes rather than
    l alleles. The unpacked array is kept alongside for vector arithmetic.
    """

    __slots__ = ("packed", "length", "_bits", "_hash")

    def __init__(self, bits: np.ndarray):
        arr = np.ascontiguousarray(bits, dtype=np.uint8)
        if arr.ndim != 1 or arr.shape[0] == 0:
            raise ValueError("bits must be a non-empty one-dimensional sequence")
        if arr.max() > 1:
            raise ValueError("alleles must be 0 or 1")
        arr.setflags(write=False)
        self.length: int = arr.shape[0]
        self.packed: bytes = np.packbits(arr).tobytes()
        self._bits = arr
        self._hash = hash((self.length, self.packed))

    @classmethod
    def from_text(cls, text: str) -> "Chromosome":
        """Build from a '0'/'1' string, gene 0 first."""
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(np.frombuffer(text.encode("ascii"), dtype=np.uint8) - ord("0"))

    @property
    def bits(self) -> np.ndarray:
        """Read-only uint8 array of alleles, gene 0 first."""
        return self._bits

    def ones(self) -> int:
        """Number of 1-alleles."""
        # packbits pads the tail with zero bits, so they never contribute
        return int.from_bytes(self.packed, "big").bit_count()

    def to_int(self) -> int:
        """Value of the bit string read as a big-endian integer (gene 0 most significant)."""
        return int.from_bytes(self.packed, "big") >> (8 * len(self.packed) - self.length)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chromosome):
            return NotImplemented
        return self.length == other.length and self.packed == other.packed

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        return "".join("1" if b else "0" for b in self._bits.tolist())

    def __repr__(self) -> str:
        return f"Chromosome({str(self)!r})"
