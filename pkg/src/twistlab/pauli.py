"""Exact symplectic Pauli-string algebra over GF(2) with phase tracking.

A Pauli operator on ``n`` sites is stored as two bitmasks (bit ``j`` of
``x``/``z`` is the X/Z part on site ``j``) together with an exponent of
``i`` modulo 4:

    P = i**phase * prod_j X_j**x_j Z_j**z_j      (X written before Z per site)

With this convention a bare ``Y`` site is ``(x=1, z=1, phase=+1)`` since
``Y = iXZ``, and the product ``Z*X`` on one site comes out as ``+iY``.
Phases are always tracked exactly; nothing in this module drops an ``i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionMismatch

_LETTER_TO_BITS = {"I": (0, 0), "X": (1, 0), "Z": (0, 1), "Y": (1, 1)}
_BITS_TO_LETTER = {v: k for k, v in _LETTER_TO_BITS.items()}
_PHASE_PREFIX = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_PREFIX_PHASE = {"+": 0, "": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}


@dataclass(frozen=True)
class PauliOperator:
    """Immutable n-site Pauli string with an exact i-exponent."""

    n: int
    x: int
    z: int
    phase: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"site count must be non-negative, got {self.n}")
        mask = (1 << self.n) - 1
        object.__setattr__(self, "x", self.x & mask)
        object.__setattr__(self, "z", self.z & mask)
        object.__setattr__(self, "phase", self.phase % 4)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def identity(n: int) -> "PauliOperator":
        return PauliOperator(n, 0, 0, 0)

    @staticmethod
    def single(n: int, site: int, letter: str) -> "PauliOperator":
        """One letter at one site, e.g. ``single(4, 2, "Y")``."""
        if not 0 <= site < n:
            raise IndexError(f"site {site} out of range for n={n}")
        xb, zb = _LETTER_TO_BITS[letter.upper()]
        phase = 1 if letter.upper() == "Y" else 0
        return PauliOperator(n, xb << site, zb << site, phase)

    @staticmethod
    def from_letters(n: int, letters: Mapping[int, str], sign: int = 1) -> "PauliOperator":
        """Build from a site->letter map; ``sign`` is the +-1 prefix of the
        letter string (a per-site ``i`` is added for every Y)."""
        x = z = 0
        ys = 0
        for site, letter in letters.items():
            if not 0 <= site < n:
                raise IndexError(f"site {site} out of range for n={n}")
            xb, zb = _LETTER_TO_BITS[letter.upper()]
            if (x >> site) & 1 or (z >> site) & 1:
                raise ValueError(f"site {site} given twice")
            x |= xb << site
            z |= zb << site
            ys += xb & zb
        phase = (ys + (0 if sign == 1 else 2)) % 4
        return PauliOperator(n, x, z, phase)

    # -- views -------------------------------------------------------------

    @property
    def weight(self) -> int:
        return ((self.x | self.z)).bit_count()

    @property
    def support(self) -> tuple[int, ...]:
        m = self.x | self.z
        return tuple(j for j in range(self.n) if (m >> j) & 1)

    def letter_at(self, site: int) -> str:
        return _BITS_TO_LETTER[((self.x >> site) & 1, (self.z >> site) & 1)]

    @property
    def y_count(self) -> int:
        return (self.x & self.z).bit_count()

    @property
    def prefix_exponent(self) -> int:
        """i-exponent of the prefix when written as letters (Y absorbs one i)."""
        return (self.phase - self.y_count) % 4

    @property
    def sign(self) -> int:
        """+1 or -1 for operators whose letter prefix is real."""
        pe = self.prefix_exponent
        if pe % 2:
            raise ValueError("operator has an imaginary prefix, no real sign")
        return 1 if pe == 0 else -1

    def bits(self) -> tuple[np.ndarray, np.ndarray]:
        """(x, z) uint8 site vectors, site 0 first."""
        xv = np.array([(self.x >> j) & 1 for j in range(self.n)], dtype=np.uint8)
        zv = np.array([(self.z >> j) & 1 for j in range(self.n)], dtype=np.uint8)
        return xv, zv

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        """Dense text form: phase prefix + one letter per site, site 0 first."""
        letters = "".join(self.letter_at(j) for j in range(self.n))
        return _PHASE_PREFIX[self.prefix_exponent] + letters

    def to_sparse_text(self) -> str:
        """Sparse text form, e.g. ``-i Z3 X7`` (0-based site indices)."""
        parts = [f"{self.letter_at(j)}{j}" for j in self.support]
        prefix = _PHASE_PREFIX[self.prefix_exponent]
        return " ".join([prefix] + parts) if parts else prefix + "I"

    @staticmethod
    def from_text(text: str, n: int | None = None) -> "PauliOperator":
        """Parse either the dense or the sparse text form."""
        text = text.strip()
        m = re.match(r"^([+-]?i?|[+-]i)\s*", text)
        prefix = m.group(1) if m else ""
        body = text[m.end():].strip() if m else text
        sign_phase = _PREFIX_PHASE[prefix]
        if re.fullmatch(r"[IXYZ]+", body):
            letters = {j: c for j, c in enumerate(body) if c != "I"}
            size = len(body) if n is None else n
        else:
            letters = {}
            size = 0
            for tok in body.split():
                if tok == "I":
                    continue
                lm = re.fullmatch(r"([IXYZ])(\d+)", tok)
                if lm is None:
                    raise ValueError(f"bad pauli token {tok!r}")
                site = int(lm.group(2))
                letters[site] = lm.group(1)
                size = max(size, site + 1)
            if n is not None:
                size = n
        op = PauliOperator.from_letters(size, letters)
        return PauliOperator(size, op.x, op.z, (op.phase + sign_phase) % 4)

    def __str__(self) -> str:
        return self.to_sparse_text() if self.n > 16 else self.to_text()


def multiply(p: PauliOperator, q: PauliOperator) -> PauliOperator:
    """Exact operator product ``p * q`` (p applied after q in matrix order)."""
    if p.n != q.n:
        raise DimensionMismatch(f"site counts differ: {p.n} != {q.n}")
    # Commuting Z^zp past X^xq picks up (-1) per overlapping site.
    phase = (p.phase + q.phase + 2 * (p.z & q.x).bit_count()) % 4
    return PauliOperator(p.n, p.x ^ q.x, p.z ^ q.z, phase)


def multiply_all(ops: Iterable[PauliOperator]) -> PauliOperator:
    ops = list(ops)
    if not ops:
        raise ValueError("empty product")
    return reduce(multiply, ops)


def scale(p: PauliOperator, i_exponent: int) -> PauliOperator:
    """Multiply by ``i**i_exponent``."""
    return PauliOperator(p.n, p.x, p.z, (p.phase + i_exponent) % 4)


def commutes(p: PauliOperator, q: PauliOperator) -> bool:
    """Symplectic commutation test; independent of phases."""
    if p.n != q.n:
        raise DimensionMismatch(f"site counts differ: {p.n} != {q.n}")
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


def is_hermitian(p: PauliOperator) -> bool:
    """True iff ``p * p`` is the positive identity (so p is Hermitian and
    unitary)."""
    return (p.phase + p.y_count) % 2 == 0


def hermitian_form(p: PauliOperator) -> PauliOperator:
    """Return ``p`` rescaled by ``-i`` if needed so the result is Hermitian.

    Strings that wind a twist an odd number of times come out of raw letter
    products with a +-i prefix; the measured object is the -i-scaled one.
    """
    return p if is_hermitian(p) else scale(p, -p.prefix_exponent)
