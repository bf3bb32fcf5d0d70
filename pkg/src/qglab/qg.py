"""Exact-rational quasigeodesic predicates on words.

All checks quantify over vertex pairs along the labelled path: a word w is a
(lam, eps)-quasigeodesic when (j - i) <= lam * d(pi(i), pi(j)) + eps for all
0 <= i < j <= |w|, where pi(k) is the element reached after k letters.  This
vertex-pair convention (rather than continuous parametrisation) is fixed
package-wide and echoed in every CLI report.

Violations are reported canonically: smallest endpoint j first, then smallest
start i, which is the order the mandated grow-j early-exit scan discovers
them in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConfigurationError
from .groups import GroupModel, Word


def parse_fraction(text: str) -> Fraction:
    """Parse an exact rational written as ``p`` or ``p/q``; floats rejected."""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError):
        raise ConfigurationError(
            f"exact rational expected (like 3 or 3/2), got {text!r}") from None


def fraction_str(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class QGParams:
    """Multiplicative/additive slack pair (lam >= 1, eps >= 0), held exactly."""

    lam: Fraction
    eps: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.lam < 1:
            raise ConfigurationError(f"lam must be >= 1, got {self.lam}")
        if self.eps < 0:
            raise ConfigurationError(f"eps must be >= 0, got {self.eps}")

    @classmethod
    def parse(cls, lam: str, eps: str = "0") -> "QGParams":
        return cls(parse_fraction(lam), parse_fraction(eps))

    @property
    def is_geodesic(self) -> bool:
        return self.lam == 1 and self.eps == 0

    def weakens(self, other: "QGParams") -> bool:
        """True when every ``other``-quasigeodesic is automatically one for self."""
        return self.lam >= other.lam and self.eps >= other.eps

    def __str__(self) -> str:
        return f"({fraction_str(self.lam)},{fraction_str(self.eps)})"


@dataclass(frozen=True)
class SubpathViolation:
    """A vertex pair whose subpath is longer than the allowed stretch."""

    i: int
    j: int
    path_len: int
    dist: int

    def as_dict(self) -> dict:
        return {"i": self.i, "j": self.j, "path_len": self.path_len, "dist": self.dist}


def _int_coeffs(params: QGParams) -> tuple[int, int, int]:
    # violation test (j-i) > lam*d + eps cleared of denominators:
    # A*(j-i) > B*d + C with all-integer A, B, C
    ql, qe = params.lam.denominator, params.eps.denominator
    return ql * qe, params.lam.numerator * qe, params.eps.numerator * ql


def prefix_elems(model: GroupModel, w: Word) -> list:
    model.check_word(w)
    elems = [model.identity()]
    e = elems[0]
    for li in w.letters:
        e = model.step(e, li)
        elems.append(e)
    return elems


def path_coords(model: GroupModel, w: Word) -> np.ndarray | None:
    """Cumulative displacement vectors along ``w`` for l1-metric models."""
    deltas = model.letter_deltas()
    if deltas is None:
        return None
    model.check_word(w)
    n = len(w)
    out = np.zeros((n + 1, deltas.shape[1]), dtype=np.int64)
    if n:
        ids = np.fromiter(w.letters, dtype=np.int64, count=n)
        np.cumsum(deltas[ids], axis=0, out=out[1:])
    return out


def _scan_coords(coords: np.ndarray, window: int | None,
                 params: QGParams) -> SubpathViolation | None:
    a, b, c = _int_coeffs(params)
    n = coords.shape[0] - 1
    for j in range(1, n + 1):
        lo = 0 if window is None else max(0, j - window)
        if lo >= j:
            continue
        d = np.abs(coords[lo:j] - coords[j]).sum(axis=1)
        lengths = j - np.arange(lo, j, dtype=np.int64)
        bad = a * lengths > b * d + c
        if bad.any():
            k = int(np.nonzero(bad)[0][0])
            return SubpathViolation(lo + k, j, int(lengths[k]), int(d[k]))
    return None


def _scan_generic(model: GroupModel, elems: list, window: int | None,
                  params: QGParams) -> SubpathViolation | None:
    a, b, c = _int_coeffs(params)
    n = len(elems) - 1
    for j in range(1, n + 1):
        lo = 0 if window is None else max(0, j - window)
        for i in range(lo, j):
            d = model.pair_distance(elems[i], elems[j])
            if a * (j - i) > b * d + c:
                return SubpathViolation(i, j, j - i, d)
    return None


def _geodesic_violation(model: GroupModel, w: Word) -> SubpathViolation | None:
    # a word is geodesic iff its endpoint is at full distance; when it is not,
    # the first short prefix endpoint is the smallest violating j
    elems = prefix_elems(model, w)
    for j in range(1, len(elems)):
        if model.metric(elems[j]) < j:
            for i in range(j):
                d = model.pair_distance(elems[i], elems[j])
                if j - i > d:
                    return SubpathViolation(i, j, j - i, d)
    return None


def find_violation(model: GroupModel, w: Word, params: QGParams,
                   window: int | None = None) -> SubpathViolation | None:
    """Canonical-first violating pair, or None when the predicate holds."""
    if len(w) == 0:
        return None
    if window is not None and window <= 0:
        return None
    if params.is_geodesic and window is None:
        if model.metric(model.eval_word(w)) == len(w):
            return None
        return _geodesic_violation(model, w)
    coords = path_coords(model, w)
    if coords is not None:
        return _scan_coords(coords, window, params)
    return _scan_generic(model, prefix_elems(model, w), window, params)


def is_quasigeodesic(model: GroupModel, w: Word,
                     params: QGParams) -> tuple[bool, SubpathViolation | None]:
    """Global check over all vertex pairs; the empty word passes vacuously."""
    v = find_violation(model, w, params)
    return v is None, v


def is_local_quasigeodesic(model: GroupModel, w: Word, locality,
                           params: QGParams) -> tuple[bool, SubpathViolation | None]:
    """Check all vertex-index windows j - i <= locality."""
    window = math.floor(Fraction(locality))
    if window < 0:
        raise ConfigurationError(f"locality must be positive, got {locality}")
    v = find_violation(model, w, params, window=window)
    return v is None, v


def is_qg_loop(model: GroupModel, w: Word) -> bool:
    """Nonempty word that returns to its starting point."""
    return len(w) > 0 and model.eval_word(w) == model.identity()


def max_locality(model: GroupModel, w: Word, params: QGParams) -> int:
    """Largest window length at which the local predicate holds.

    Equals |w| when the word is globally quasigeodesic and 0 when even
    single-letter windows fail.
    """
    n = len(w)
    if n == 0:
        return 0
    if params.is_geodesic and model.metric(model.eval_word(w)) == n:
        return n
    coords = path_coords(model, w)
    if coords is not None:
        a, b, c = _int_coeffs(params)
        best = n + 1
        for j in range(1, n + 1):
            lo = max(0, j - best + 1)
            if lo >= j:
                continue
            d = np.abs(coords[lo:j] - coords[j]).sum(axis=1)
            lengths = j - np.arange(lo, j, dtype=np.int64)
            bad = a * lengths > b * d + c
            if bad.any():
                best = int(lengths[bad].min())
        return n if best > n else best - 1
    elems = prefix_elems(model, w)
    a, b, c = _int_coeffs(params)
    for m in range(1, n + 1):
        for i in range(0, n - m + 1):
            d = model.pair_distance(elems[i], elems[i + m])
            if a * m > b * d + c:
                return m - 1
    return n
