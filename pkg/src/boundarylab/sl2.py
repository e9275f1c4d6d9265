"""Unit-determinant 2x2 matrices with an extended binary exponent.

Twist experiments produce traces up to e^1000 and beyond, far outside the
double range, but the only quantity we ever consume is log|trace|.  A
``ScaledMatrix`` stores a normalised mantissa block (max |entry| in [1, 2))
together with an integer power of two, and renormalises after every product,
so log|trace| stays computable with no overflow at any point.

Rescaling by powers of two is exact in binary floating point: the semantic
value 2^exponent * entries does not depend on the internal normalisation.
Entries are complex throughout; Fuchsian representations simply keep the
imaginary parts at exactly zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

LN2 = math.log(2.0)

# Tolerances from the type contracts.
DET_RTOL = 1e-12
TRACE_RTOL = 1e-9


@dataclass(frozen=True)
class LogTrace:
    """log|tr| in natural-log units plus the unit phase of the trace.

    ``zero`` flags an exactly vanishing trace (log_abs_trace = -inf); such a
    coordinate lies outside (C*)^N and is excluded from Log| | images.
    """

    log_abs_trace: float
    sign_or_phase: complex
    zero: bool = False

    def abs_trace(self) -> float:
        """exp(log_abs_trace); overflows to inf for huge traces."""
        if self.zero:
            return 0.0
        try:
            return math.exp(self.log_abs_trace)
        except OverflowError:
            return math.inf


class ScaledMatrix:
    """Immutable det-1 matrix stored as (entries, exponent), semantic value
    2^exponent * entries."""

    __slots__ = ("entries", "exponent")

    def __init__(self, entries, exponent: int = 0, *, _normalized: bool = False):
        arr = np.asarray(entries, dtype=complex)
        if arr.shape != (2, 2):
            raise ValueError("ScaledMatrix needs a 2x2 block")
        exponent = int(exponent)
        if not _normalized:
            m = float(np.max(np.abs(arr)))
            if m == 0.0 or not math.isfinite(m):
                raise ValueError("singular or non-finite matrix block")
            # frexp: m = f * 2^e with f in [0.5, 1); dividing by 2^(e-1)
            # lands max|entry| in [1, 2) without any rounding.
            _, e = math.frexp(m)
            arr = arr * 2.0 ** (1 - e)
            exponent += e - 1
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        self.entries = arr
        self.exponent = exponent

    # --- constructors -------------------------------------------------

    @classmethod
    def identity(cls) -> "ScaledMatrix":
        return cls(np.eye(2, dtype=complex), 0, _normalized=True)

    @classmethod
    def from_array(cls, arr, exponent: int = 0) -> "ScaledMatrix":
        return cls(arr, exponent)

    @classmethod
    def diagonal_exp(cls, half_log: float) -> "ScaledMatrix":
        """diag(e^u, e^-u) for u = half_log, valid for |u| far beyond 709.

        The small entry underflows to zero once the spread e^{2|u|} exceeds
        the double range; that costs the determinant certificate but not
        log|trace|, which is carried by the large entry.
        """
        e = math.floor(half_log / LN2)
        big = math.exp(half_log - e * LN2)          # in [1, 2)
        small = math.exp(-half_log - e * LN2)       # may underflow to 0.0
        return cls(np.array([[big, 0.0], [0.0, small]], dtype=complex), e,
                   _normalized=True)

    # --- algebra --------------------------------------------------------

    def __matmul__(self, other: "ScaledMatrix") -> "ScaledMatrix":
        return ScaledMatrix(self.entries @ other.entries,
                            self.exponent + other.exponent)

    def inverse(self) -> "ScaledMatrix":
        """Adjugate; exact inverse because the semantic determinant is 1."""
        a, b = self.entries[0]
        c, d = self.entries[1]
        adj = np.array([[d, -b], [-c, a]], dtype=complex)
        return ScaledMatrix(adj, self.exponent)

    def semantic(self) -> np.ndarray:
        """Plain 2x2 array 2^exponent * entries; may overflow for big words."""
        return self.entries * (2.0 ** self.exponent)

    def trace(self) -> complex:
        return complex(self.entries[0, 0] + self.entries[1, 1])

    def det_defect(self) -> float:
        """|det(semantic) - 1| measured in the normalised block.

        det(entries) should equal 4^-exponent; comparison is skipped (returns
        0) when that target underflows below the double range, which happens
        only for astronomically scaled matrices whose small singular value is
        not representable anyway.
        """
        target = 4.0 ** (-self.exponent) if abs(self.exponent) < 500 else None
        det = self.entries[0, 0] * self.entries[1, 1] - self.entries[0, 1] * self.entries[1, 0]
        if target is None or target == 0.0 or not math.isfinite(target):
            return 0.0
        return abs(det - target) / target

    def distance_to_identity(self) -> float:
        """Operator-norm distance of the semantic value from the identity."""
        if self.exponent > 64:
            return math.inf
        return float(np.linalg.norm(self.semantic() - np.eye(2), 2))

    def __repr__(self):
        return f"ScaledMatrix({self.entries.tolist()}, 2**{self.exponent})"


def log_trace(m: ScaledMatrix) -> LogTrace:
    """log|tr| of the semantic value: log|tr entries| + exponent * log 2."""
    t = m.trace()
    if t == 0:
        return LogTrace(-math.inf, complex(1.0), zero=True)
    return LogTrace(math.log(abs(t)) + m.exponent * LN2, t / abs(t))


def evaluate(images, word) -> ScaledMatrix:
    """Product of generator images along a word, renormalising each step.

    ``images`` is a sequence of ScaledMatrix, one per generator index.
    Inverse letters use the adjugate, so no division ever happens.
    """
    inv_cache: dict[int, ScaledMatrix] = {}
    out = ScaledMatrix.identity()
    for idx, sign in word.letters:
        if sign > 0:
            factor = images[idx]
        else:
            if idx not in inv_cache:
                inv_cache[idx] = images[idx].inverse()
            factor = inv_cache[idx]
        out = out @ factor
    return out


class WordEvaluator:
    """Evaluate many words against one set of generator images, sharing
    prefix products so a family of ~10^3 short words costs ~10^3 products."""

    def __init__(self, images):
        self.images = list(images)
        self.inverses = [m.inverse() for m in self.images]
        self._cache: dict[tuple, ScaledMatrix] = {(): ScaledMatrix.identity()}

    def matrix(self, word) -> ScaledMatrix:
        letters = word.canonical_form
        return self._prefix(letters)

    def _prefix(self, letters) -> ScaledMatrix:
        cached = self._cache.get(letters)
        if cached is not None:
            return cached
        head = self._prefix(letters[:-1])
        idx, sign = letters[-1]
        factor = self.images[idx] if sign > 0 else self.inverses[idx]
        out = head @ factor
        self._cache[letters] = out
        return out

    def log_trace(self, word) -> LogTrace:
        return log_trace(self.matrix(word))

    def log_traces(self, words) -> list[LogTrace]:
        return [self.log_trace(w) for w in words]


def random_sl2(rng, *, real: bool = False, spread: float = 1.0) -> ScaledMatrix:
    """Random unit-determinant matrix for property tests: draw a, b, c and
    solve d = (1 + b c) / a."""
    while True:
        if real:
            a, b, c = rng.normal(scale=spread, size=3)
        else:
            a, b, c = rng.normal(scale=spread, size=3) + 1j * rng.normal(scale=spread, size=3)
        if abs(a) > 1e-3:
            d = (1.0 + b * c) / a
            return ScaledMatrix(np.array([[a, b], [c, d]]))
