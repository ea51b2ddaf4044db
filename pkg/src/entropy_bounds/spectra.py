"""Hamiltonian spectra with the ground state pinned at zero.

A :class:`Spectrum` is a finite, nondecreasing list of energy levels, optionally
carrying an analytic tail model that describes how the levels continue past the
truncation.  The tail model is what lets :mod:`entropy_bounds.maxent` certify
that the Gibbs mass it drops by truncating is small, and extend the truncation
when it is not.

Gibbs weights throughout the package are ``exp(-beta * E_n)``, the convergent
sign convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, TextIO

import numpy as np
from scipy import special

from .errors import InvalidArgument, InvariantViolation, ParseError

TAIL_KINDS = ("linear-gap", "power", "constant")


@dataclass(frozen=True)
class TailModel:
    """Analytic continuation of the levels beyond the truncation.

    ``linear-gap``: levels keep growing by ``param`` per step.
    ``power``: levels follow ``a * n**param`` with ``a`` fitted to the last level.
    ``constant``: levels stay at the last value (not Gibbs-summable).
    """

    kind: str
    param: float = 0.0

    def __post_init__(self):
        if self.kind not in TAIL_KINDS:
            raise InvalidArgument(f"unknown tail model {self.kind!r}")
        if self.kind == "linear-gap" and not self.param > 0:
            raise InvalidArgument("linear-gap tail needs a positive gap")
        if self.kind == "power" and not self.param >= 1:
            raise InvalidArgument("power tail needs exponent p >= 1")


@dataclass(frozen=True, eq=False)
class Spectrum:
    levels: np.ndarray
    tail_model: Optional[TailModel] = None
    shift: float = 0.0
    _power_scale: float = field(default=0.0, repr=False)

    def __post_init__(self):
        levels = np.array(self.levels, dtype=float)
        if levels.ndim != 1 or levels.size < 1:
            raise InvalidArgument("levels must be a nonempty 1-d sequence")
        if not np.all(np.isfinite(levels)):
            raise InvariantViolation("levels must be finite")
        if levels[0] != 0.0:
            raise InvariantViolation("ground state must be at energy 0")
        if np.any(np.diff(levels) < 0):
            raise InvariantViolation("levels must be nondecreasing")
        levels.setflags(write=False)
        object.__setattr__(self, "levels", levels)
        tm = self.tail_model
        if tm is not None and tm.kind == "power" and self._power_scale == 0.0:
            d = levels.size
            if d < 2 or levels[-1] <= 0:
                raise InvalidArgument("power tail needs a positive top level")
            object.__setattr__(self, "_power_scale", levels[-1] / (d - 1) ** tm.param)

    @property
    def truncation_dim(self) -> int:
        return int(self.levels.size)

    @property
    def has_infinite_tail(self) -> bool:
        return self.tail_model is not None

    @property
    def certified_tail(self) -> bool:
        return self.tail_model is not None and self.tail_model.kind != "constant"

    def __len__(self):
        return self.truncation_dim

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return (np.array_equal(self.levels, other.levels)
                and self.tail_model == other.tail_model)

    def __hash__(self):
        return hash((self.levels.tobytes(), self.tail_model))

    def extended(self, dim: int) -> "Spectrum":
        """Return the same spectrum truncated at ``dim`` levels (``dim >= len``)."""
        d = self.truncation_dim
        if dim <= d:
            return self
        if not self.certified_tail:
            raise InvalidArgument("only spectra with a growing tail model can be extended")
        n = np.arange(d, dim, dtype=float)
        tm = self.tail_model
        if tm.kind == "linear-gap":
            extra = self.levels[-1] + tm.param * (n - (d - 1))
        else:
            extra = self._power_scale * n ** tm.param
        return Spectrum(np.concatenate([self.levels, extra]), tm, self.shift,
                        self._power_scale)

    def covering(self, label: int) -> "Spectrum":
        """Extend, when the tail model allows, so that ``label`` is in range."""
        if label < self.truncation_dim or not self.certified_tail:
            return self
        return self.extended(label + 1)

    def tail_sum(self, beta: float) -> Optional[float]:
        """Upper bound on ``sum_{n >= d} exp(-beta * E_n)`` from the tail model.

        Returns None when the model cannot certify a finite value.
        """
        if not self.certified_tail or beta <= 0:
            return None
        d = self.truncation_dim
        tm = self.tail_model
        if tm.kind == "linear-gap":
            x = beta * tm.param
            return math.exp(-beta * self.levels[-1] - x) / -math.expm1(-x)
        # decreasing integrand: sum_{n>=d} f(n) <= int_{d-1}^inf f(x) dx
        a, p = self._power_scale, tm.param
        s = 1.0 / p
        lower = beta * a * (d - 1) ** p
        return (beta * a) ** (-s) / p * special.gamma(s) * special.gammaincc(s, lower)

    def min_gap(self) -> float:
        gaps = np.diff(self.levels)
        gaps = gaps[gaps > 0]
        if gaps.size:
            return float(gaps.min())
        if self.tail_model is not None and self.tail_model.kind == "linear-gap":
            return self.tail_model.param
        return 1.0


def harmonic_oscillator(gap: float, dim: int) -> Spectrum:
    """Levels ``n * gap`` for ``n = 0 .. dim-1`` with a linear-gap tail."""
    if not gap > 0:
        raise InvalidArgument("gap must be positive")
    if int(dim) != dim or dim < 2:
        raise InvalidArgument("dim must be an integer >= 2")
    return Spectrum(gap * np.arange(int(dim), dtype=float), TailModel("linear-gap", gap))


def power_law(scale: float, exponent: float, dim: int) -> Spectrum:
    """Levels ``scale * n**exponent``; e.g. exponent 2 is a particle in a box."""
    if not scale > 0:
        raise InvalidArgument("scale must be positive")
    if int(dim) != dim or dim < 2:
        raise InvalidArgument("dim must be an integer >= 2")
    levels = scale * np.arange(int(dim), dtype=float) ** exponent
    return Spectrum(levels, TailModel("power", exponent), 0.0, float(scale))


def from_levels(levels: Iterable[float], tail_model: Optional[TailModel] = None) -> Spectrum:
    """Build a spectrum from raw levels, shifting the minimum to zero."""
    arr = np.asarray(list(levels), dtype=float)
    if arr.size == 0:
        raise InvalidArgument("no levels given")
    if np.any(np.diff(arr) < 0):
        raise InvariantViolation("levels must be nondecreasing")
    shift = float(arr[0])
    return Spectrum(arr - shift, tail_model, shift)


def _parse_tail(text: str, lineno: int) -> TailModel:
    parts = text.split()
    try:
        if parts[0] in ("linear-gap", "power") and len(parts) == 2:
            return TailModel(parts[0], float(parts[1]))
        if parts == ["constant"]:
            return TailModel("constant")
    except (ValueError, InvalidArgument) as exc:
        raise ParseError(f"bad tail header: {exc}", lineno) from None
    raise ParseError(f"bad tail header {text!r}", lineno)


def load_spectrum(source: TextIO) -> Spectrum:
    """Parse the one-energy-per-line text format.

    Lines starting with ``#`` are comments, except ``#tail: <kind> [<param>]``
    which sets the tail model.  A nonzero ground level is shifted to 0 and the
    amount recorded in ``Spectrum.shift``.
    """
    values = []
    tail = None
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("tail:"):
                tail = _parse_tail(body[len("tail:"):].strip(), lineno)
            continue
        try:
            value = float(line)
        except ValueError:
            raise ParseError(f"not a number: {line!r}", lineno) from None
        if not math.isfinite(value):
            raise ParseError(f"non-finite level {line!r}", lineno)
        if values and value < values[-1]:
            raise InvariantViolation(f"line {lineno}: levels must be nondecreasing")
        values.append(value)
    if not values:
        raise ParseError("spectrum file has no levels")
    return from_levels(values, tail)


def dump_spectrum(spec: Spectrum, stream: TextIO) -> None:
    """Write ``spec`` in the format read by :func:`load_spectrum`."""
    tm = spec.tail_model
    if tm is not None:
        if tm.kind == "constant":
            stream.write("#tail: constant\n")
        else:
            stream.write(f"#tail: {tm.kind} {tm.param!r}\n")
    for value in spec.levels:
        stream.write(f"{float(value)!r}\n")


def check_gibbs_summable(spec: Spectrum, beta: float) -> str:
    """Classify whether ``sum exp(-beta * E_n)`` is finite.

    Returns ``"certified"`` when the tail model gives a convergent bound,
    ``"heuristic"`` when only the truncation is known but the levels grow
    faster than logarithmically, and ``"unknown"`` otherwise.
    """
    if not beta > 0:
        raise InvalidArgument("beta must be positive")
    if spec.certified_tail:
        tail = spec.tail_sum(beta)
        return "certified" if tail is not None and math.isfinite(tail) else "unknown"
    if spec.tail_model is not None:
        return "unknown"
    levels = spec.levels
    d = levels.size
    if d < 2 or levels[-1] <= 0:
        return "unknown"
    # E_n / ln(n+1) must still be growing across the second half of the data
    last = d - 1
    mid = max(1, last // 2)
    if mid == last:
        return "heuristic"
    ratio = lambda n: levels[n] / math.log(n + 1)
    return "heuristic" if ratio(last) > ratio(mid) else "unknown"
