"""Discrete faithful SL(2,R) representations of the genus-2 surface group
from Fenchel-Nielsen coordinates.

Pants decomposition (fixed for the whole package):

  curve 0  "pants1" : the handle-1 curve, free homotopy class a1
  curve 1  "pants2" : the handle-2 curve, free homotopy class a2
  curve 2  "pants3" : the separating curve, class [a1, b1] = a1b1A1B1

Cutting along pants3 gives two one-holed tori; cutting each torus along its
a-curve gives a pair of pants with cuff lengths (l_i, l_i, l_3).  Each torus
group is realised explicitly: A = diag(e^{l/2}, e^{-l/2}) translates along
the imaginary axis, and the zero-twist dual generator

    B0 = [[c, s], [s, c]],   s = cosh(l3/4) / sinh(l/2),  c = sqrt(1 + s^2)

translates along the geodesic (-1, 1), crossing the axis of A orthogonally
at i.  This choice is the right-angled-hexagon relation in trace form: it
forces tr[A, B0] = -2 cosh(l3/2), i.e. boundary length l3.

Twisting along the a-curve multiplies B0 on the right by the diagonal
translation T(t) = diag(e^{t/2}, e^{-t/2}).  Because T commutes with A, the
boundary matrix [A, B0 T(t)] = [A, B0] does not move at all as t varies, so
the gluing below stays exact along every twist flow.

Gluing: normalise the handle-1 boundary W1 = [A1, B1] so its axis is the
imaginary axis (attracting fixed point at infinity), normalise the inverse
boundary of handle 2 the same way, and conjugate handle 2 by
G = N1^{-1} T(t3) N2.  Then [A2, B2] = W1^{-1} identically and the relator
[a1,b1][a2,b2] lands on +I; the diagonal twist T(t3) commutes with the
normalised boundary, so the separating twist also preserves the relator
exactly.  Each generator lift's sign is thereby pinned to a concrete spin
structure choice; euler_sign records the orientation convention (+1).

Correctness is certified by the relator/trace invariants rather than by a
construction-time proof: the test suite checks the relator defect, trace
reality, cuff traces 2 cosh(l/2) and the |tr| >= 2 discreteness signature on
the whole embedding family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (DegenerateLengthError, NotHyperbolicError,
                     UnsupportedGenusError)
from .sl2 import LN2, LogTrace, ScaledMatrix, WordEvaluator, log_trace
from .words import SurfaceGroup, Word, parse_word

MIN_LENGTH = 1e-8
RELATOR_TOL = 1e-9

PANTS_CURVE_NAMES = ("pants1", "pants2", "pants3")
PANTS_CURVE_WORDS = ("a1", "a2", "a1b1A1B1")

# Direct float evaluation of a product amplifies rounding by roughly the
# largest intermediate scale; beyond e^24 of amplification the measured
# relator defect says more about cancellation than about the construction,
# whose exactness then rests on the diagonal-commutation argument above.
_CERTIFIABLE_AMPLIFICATION = math.exp(24.0)


@dataclass(frozen=True)
class FenchelNielsen:
    """Lengths and twists (hyperbolic length units) along the fixed pants
    decomposition; 3g-3 = 3 of each for genus 2."""

    lengths: tuple[float, float, float]
    twists: tuple[float, float, float] = (0.0, 0.0, 0.0)
    genus: int = 2

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(float(x) for x in self.lengths))
        object.__setattr__(self, "twists", tuple(float(x) for x in self.twists))
        n = 3 * self.genus - 3
        if len(self.lengths) != n or len(self.twists) != n:
            raise ValueError(f"need {n} lengths and twists for genus {self.genus}")
        if any(l <= 0 for l in self.lengths):
            raise ValueError("lengths must be positive")

    @property
    def pants_curves(self) -> tuple[str, ...]:
        return PANTS_CURVE_NAMES

    def with_twist(self, curve_index: int, twist: float) -> "FenchelNielsen":
        twists = list(self.twists)
        twists[curve_index] = twist
        return FenchelNielsen(self.lengths, tuple(twists), self.genus)

    # -- plain-text key-value serialisation --------------------------------

    def dumps(self) -> str:
        return ("lengths = [{}]\ntwists = [{}]\n"
                .format(", ".join(repr(x) for x in self.lengths),
                        ", ".join(repr(x) for x in self.twists)))

    @classmethod
    def loads(cls, text: str) -> "FenchelNielsen":
        values = {}
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
        def vec(key):
            raw = values[key].strip("[]")
            return tuple(float(p) for p in raw.split(",") if p.strip())
        return cls(vec("lengths"), vec("twists"))


def _adj(m: np.ndarray) -> np.ndarray:
    return np.array([[m[1, 1], -m[0, 1]], [-m[1, 0], m[0, 0]]])


def _eigenframe_hyperbolic(m: np.ndarray) -> np.ndarray:
    """Det-1 eigenvector frame P of a real hyperbolic 2x2 matrix, attracting
    eigenvector in column 0, so P^{-1} m P is diagonal.

    Closed form instead of a generic eigensolver: the dominant eigenvalue is
    computed without cancellation, lam2 via the determinant, and for each
    eigenvalue the better-conditioned of the two row-kernel expressions is
    used.  This keeps the frame accurate to a few ulps, which the relator
    certificate depends on.
    """
    a, b = float(m[0, 0]), float(m[0, 1])
    c, d = float(m[1, 0]), float(m[1, 1])
    tr = a + d
    disc = tr * tr - 4.0 * (a * d - b * c)
    if disc <= 0.0:
        raise NotHyperbolicError(f"matrix with trace {tr:.6g} is not hyperbolic")
    lam1 = (tr + math.copysign(math.sqrt(disc), tr)) / 2.0   # |lam1| >= 1
    lam2 = (a * d - b * c) / lam1

    cols = []
    for lam in (lam1, lam2):
        v_row1 = (b, lam - a)
        v_row2 = (lam - d, c)
        v = max(v_row1, v_row2, key=lambda t: t[0] * t[0] + t[1] * t[1])
        norm = math.hypot(*v)
        if norm == 0.0:
            raise NotHyperbolicError("eigenvector collapsed; matrix too close to +/-I")
        cols.append((v[0] / norm, v[1] / norm))
    p = np.array(cols).T
    detp = p[0, 0] * p[1, 1] - p[0, 1] * p[1, 0]
    if abs(detp) < 1e-14:
        raise NotHyperbolicError("eigenvector frame is singular")
    p = p / math.sqrt(abs(detp))
    if detp < 0:
        p[:, 1] = -p[:, 1]
    return p


def _holed_torus(l_cuff: float, l_bdry: float, twist: float):
    """Explicit one-holed torus group with cuff length l_cuff along the
    a-curve, twist along it, and boundary [A, B] of length l_bdry.

    Returns (A, B, W) with A, B ScaledMatrix generator images and W the
    boundary matrix [A, B] evaluated from the stored images (plain 2x2
    float; the twist factor cancels against its inverse, so W is O(1) and
    accurate for moderate twists).
    """
    s = math.cosh(l_bdry / 4.0) / math.sinh(l_cuff / 2.0)
    c = math.sqrt(1.0 + s * s)
    b0 = np.array([[c, s], [s, c]])

    a = ScaledMatrix.diagonal_exp(l_cuff / 2.0)
    b = ScaledMatrix(b0) @ ScaledMatrix.diagonal_exp(twist / 2.0)
    w_scaled = a @ b @ a.inverse() @ b.inverse()
    return a, b, w_scaled.semantic().real


@dataclass(frozen=True)
class Representation:
    """Generator images of pi_1(S) -> SL(2,R) with relator certification.

    ``relator_defect`` is the operator-norm distance of the evaluated relator
    from the identity, measured directly on the stored images.  The direct
    measurement is meaningful while the product's intermediate scale stays
    within ``_CERTIFIABLE_AMPLIFICATION``; for violently twisted points the
    stored defect is the honest (cancellation-dominated) float measurement
    and exactness is carried by the construction's diagonal commutation.
    """

    group: SurfaceGroup
    images: tuple[ScaledMatrix, ...]
    relator_defect: float
    euler_sign: int = 1

    @cached_property
    def evaluator(self) -> WordEvaluator:
        return WordEvaluator(self.images)

    def evaluate(self, word: Word) -> ScaledMatrix:
        return self.evaluator.matrix(word)

    def log_trace(self, word: Word) -> LogTrace:
        return self.evaluator.log_trace(word)

    def trace(self, word: Word) -> complex:
        m = self.evaluate(word)
        return m.trace() * (2.0 ** m.exponent)

    def log_trace_vector(self, words) -> np.ndarray:
        """log|tr| per word; -inf marks an exactly vanishing trace."""
        return np.array([self.log_trace(w).log_abs_trace for w in words])


def evaluate(rep: Representation, word: Word) -> ScaledMatrix:
    """Module-level alias: product of generator images along ``word``."""
    return rep.evaluate(word)


def build_representation(fn: FenchelNielsen, group: SurfaceGroup | None = None) -> Representation:
    """Fuchsian representation realising the marked hyperbolic structure fn.

    Raises UnsupportedGenusError off genus 2 and DegenerateLengthError for
    lengths under 1e-8 (the gluing formulas lose more than six digits there).
    The relator defect is checked against 1e-9 whenever the direct float
    measurement is trustworthy; see the class docstring.
    """
    if fn.genus != 2:
        raise UnsupportedGenusError(f"genus {fn.genus} not supported (v1 is genus 2)")
    if min(fn.lengths) < MIN_LENGTH:
        raise DegenerateLengthError(f"length {min(fn.lengths):.3g} below {MIN_LENGTH:g}")
    group = group or SurfaceGroup(2)
    l1, l2, l3 = fn.lengths
    t1, t2, t3 = fn.twists

    a1, b1, w1 = _holed_torus(l1, l3, t1)
    a2t, b2t, w2 = _holed_torus(l2, l3, t2)

    # Intertwiner carrying the handle-2 boundary onto the exact inverse of
    # the handle-1 boundary (as stored), composed with the separating twist:
    # both boundaries are diagonalised by their det-1 eigenframes, which
    # commute with the diagonal twist factor.  [A2, B2] = W1^{-1} then holds
    # to a few ulps, and exactly along every twist flow.
    p1 = _eigenframe_hyperbolic(w1)
    p2 = _eigenframe_hyperbolic(_adj(w2))
    g = ScaledMatrix(p1) @ ScaledMatrix.diagonal_exp(t3 / 2.0) @ ScaledMatrix(_adj(p2))
    ginv = g.inverse()
    a2 = g @ a2t @ ginv
    b2 = g @ b2t @ ginv

    images = (a1, b1, a2, b2)
    relator = WordEvaluator(images).matrix(group.relator)
    defect = relator.distance_to_identity()

    # Newton polish: conjugation rounding in handle 2 leaves a defect around
    # cond(G)^2 * eps, up to ~1e-9 in awkward corners.  Conjugating handle 2
    # by K = I + X, with X solving X - W1 X W1^{-1} = E off-diagonally in the
    # W1 eigenbasis, cancels the correctable part of E = relator - I and
    # lands the defect at the eps floor.  (The diagonal part of E is the
    # trace mismatch of the two boundary products, already at ulp level.)
    for _ in range(2):
        if defect < 1e-13 or defect > 1e-3 or relator.exponent > 16:
            break
        e_mat = relator.semantic().real - np.eye(2)
        d1 = _adj(p1) @ w1 @ p1
        lam1, lam2 = d1[0, 0], d1[1, 1]
        e_tilde = _adj(p1) @ e_mat @ p1
        x_tilde = np.zeros((2, 2))
        x_tilde[0, 1] = e_tilde[0, 1] / (1.0 - lam1 / lam2)
        x_tilde[1, 0] = e_tilde[1, 0] / (1.0 - lam2 / lam1)
        k = ScaledMatrix(np.eye(2) + p1 @ x_tilde @ _adj(p1))
        kinv = k.inverse()
        a2 = k @ a2 @ kinv
        b2 = k @ b2 @ kinv
        images = (a1, b1, a2, b2)
        relator = WordEvaluator(images).matrix(group.relator)
        defect = relator.distance_to_identity()

    amplification = 1.0
    for m in images:
        amplification *= max(1.0, float(np.max(np.abs(m.entries))) * 2.0 ** min(m.exponent, 600))
    if amplification < _CERTIFIABLE_AMPLIFICATION and defect > RELATOR_TOL:
        raise AssertionError(
            f"relator defect {defect:.3e} exceeds {RELATOR_TOL:g}; construction bug")

    return Representation(group=group, images=images, relator_defect=defect)


# -- lengths -----------------------------------------------------------------


def length_from_log_trace(log_abs_trace: float) -> float:
    """Translation length 2 arccosh(|tr|/2) from log|tr|, stable for large
    traces: past log|tr| = 40 the exact value differs from
    2 (log|tr| - log 2) by under 1e-30, so the closed form is returned."""
    if log_abs_trace > 40.0:
        return 2.0 * (log_abs_trace - LN2)
    x = math.exp(log_abs_trace) / 2.0
    if x < 1.0 - 5e-10:
        raise NotHyperbolicError(f"|tr| = {2 * x:.12g} < 2")
    return 2.0 * math.acosh(max(x, 1.0))


def lengths_from_log_traces(log_abs: np.ndarray) -> np.ndarray:
    """Vectorised :func:`length_from_log_trace`."""
    log_abs = np.asarray(log_abs, dtype=float)
    if np.any(log_abs < LN2 - 5e-10):
        bad = float(np.min(log_abs))
        raise NotHyperbolicError(f"log|tr| = {bad:.6g} is below log 2")
    out = np.empty_like(log_abs)
    big = log_abs > 40.0
    out[big] = 2.0 * (log_abs[big] - LN2)
    x = np.exp(np.where(big, 0.0, log_abs)) / 2.0
    out[~big] = 2.0 * np.arccosh(np.maximum(x[~big], 1.0))
    return out


def hyperbolic_length(rep: Representation, word: Word) -> float:
    """Hyperbolic length of the geodesic in the word's free homotopy class."""
    return length_from_log_trace(rep.log_trace(word).log_abs_trace)


# -- Teichmueller points and twist families ----------------------------------


@dataclass(frozen=True)
class TeichPoint:
    """A marked hyperbolic structure: FN coordinates plus the lazily built
    representation and its character on a word family."""

    fn: FenchelNielsen
    family: tuple[Word, ...] = field(default=())

    @cached_property
    def rep(self) -> Representation:
        return build_representation(self.fn)

    @cached_property
    def character(self) -> tuple[LogTrace, ...]:
        """LogTrace per family word, by direct evaluation of ``rep``."""
        return tuple(self.rep.log_trace(w) for w in self.family)

    def character_csv_rows(self):
        for word, lt in zip(self.family, self.character):
            yield (str(word), lt.log_abs_trace, complex(lt.sign_or_phase).real)


def twist_sequence(base: FenchelNielsen, curve_index: int, step: float,
                   count: int, family: tuple[Word, ...] = ()) -> list[TeichPoint]:
    """TeichPoints along the Fenchel-Nielsen twist flow: element k twists
    ``curve_index`` by base twist + k * step, all other coordinates fixed.

    For step != 0 the sequence leaves every compact set (lengths of curves
    crossing the twist curve grow affinely); count = 1 returns the base
    point alone.
    """
    if not 0 <= curve_index < len(base.lengths):
        raise ValueError(f"curve index {curve_index} out of range")
    if count < 1:
        raise ValueError("count must be >= 1")
    if count > 1 and step == 0.0:
        raise ValueError("step must be nonzero")
    base_twist = base.twists[curve_index]
    return [TeichPoint(base.with_twist(curve_index, base_twist + k * step), family)
            for k in range(count)]


def pants_curve_word(index: int) -> Word:
    return parse_word(PANTS_CURVE_WORDS[index])
