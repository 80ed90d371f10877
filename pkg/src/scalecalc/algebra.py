"""Formal bialgebra on the two-letter operator alphabet {D+, D-}.

Words are finite compositions of the one-sided difference operators at a
fixed resolution; series carry finitely many words with coefficients that
are polynomials in eps (kept symbolic so the bialgebra axioms can be
checked exactly, then evaluated on demand). The coproduct encodes the
deformed Leibniz rule D(fg) = Df g + f Dg + (sign) eps Df Dg.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ParameterError
from .paths import SampledPath, overlap
from .scale_ops import quantum_diff

PLUS, MINUS = "+", "-"
_SIGNS = {PLUS: 1.0, MINUS: -1.0}


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if any(l not in _SIGNS for l in self.letters):
            raise ParameterError(f"word letters must be '+' or '-', got {self.letters!r}")

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return "".join(self.letters)

    @classmethod
    def from_string(cls, s: str) -> "Word":
        return cls(tuple(s))


IDENTITY = Word(())


@dataclass(frozen=True)
class EpsPoly:
    """Polynomial in eps with float coefficients, ascending powers."""

    coeffs: tuple = ()

    def __post_init__(self):
        c = tuple(float(x) for x in self.coeffs)
        while c and c[-1] == 0.0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def const(cls, value) -> "EpsPoly":
        return cls((float(value),))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "EpsPoly") -> "EpsPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0.0,) * (n - len(self.coeffs))
        b = other.coeffs + (0.0,) * (n - len(other.coeffs))
        return EpsPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "EpsPoly":
        return EpsPoly(tuple(-x for x in self.coeffs))

    def __mul__(self, other) -> "EpsPoly":
        if not isinstance(other, EpsPoly):
            return EpsPoly(tuple(float(other) * x for x in self.coeffs))
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1) if self.coeffs and other.coeffs else []
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return EpsPoly(tuple(out))

    __rmul__ = __mul__

    def evaluate(self, eps: float) -> float:
        out = 0.0
        for c in reversed(self.coeffs):
            out = out * eps + c
        return out


P_ZERO = EpsPoly(())
P_ONE = EpsPoly((1.0,))


class _Series:
    """Finitely supported map basis-key -> EpsPoly (zero terms dropped)."""

    def __init__(self, terms=None):
        clean = {}
        for key, poly in (terms or {}).items():
            if not isinstance(poly, EpsPoly):
                poly = EpsPoly.const(poly)
            if not poly.is_zero:
                clean[key] = poly
        self._terms = clean

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, key) -> EpsPoly:
        return self._terms.get(key, P_ZERO)

    def __eq__(self, other) -> bool:
        return isinstance(other, type(self)) and self._terms == other._terms

    def __add__(self, other):
        out = dict(self._terms)
        for key, poly in other._terms.items():
            out[key] = out.get(key, P_ZERO) + poly
        return type(self)(out)

    def scaled(self, factor):
        return type(self)({k: p * factor for k, p in self._terms.items()})

    def _key_product(self, a, b):
        raise NotImplementedError

    def __mul__(self, other):
        out = {}
        for ka, pa in self._terms.items():
            for kb, pb in other._terms.items():
                key = self._key_product(ka, kb)
                prod = pa * pb
                out[key] = out.get(key, P_ZERO) + prod
        return type(self)(out)

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"{p.coeffs}*{k}" for k, p in sorted(self._terms.items(), key=str))
        return f"{type(self).__name__}({body or '0'})"


class WordSeries(_Series):
    """Linear combination of operator words."""

    def _key_product(self, a: Word, b: Word) -> Word:
        return a * b

    @classmethod
    def unit(cls) -> "WordSeries":
        return cls({IDENTITY: P_ONE})

    @classmethod
    def letter(cls, letter: str) -> "WordSeries":
        return cls({Word((letter,)): P_ONE})

    @classmethod
    def of_word(cls, word: Word) -> "WordSeries":
        return cls({word: P_ONE})

    def to_json_dict(self) -> dict:
        return {str(w): list(p.coeffs) for w, p in sorted(self._terms.items(), key=lambda kv: str(kv[0]))}

    @classmethod
    def from_json_dict(cls, data: dict) -> "WordSeries":
        return cls({Word.from_string(k): EpsPoly(tuple(v)) for k, v in data.items()})


class TensorSeries(_Series):
    """Linear combination of word (x) word pairs; (a(x)b)(c(x)d) = ac(x)bd."""

    def _key_product(self, a, b):
        return (a[0] * b[0], a[1] * b[1])

    @classmethod
    def unit(cls) -> "TensorSeries":
        return cls({(IDENTITY, IDENTITY): P_ONE})


class TripleTensorSeries(_Series):
    """Triple tensors, used for the coassociativity check."""

    def _key_product(self, a, b):
        return (a[0] * b[0], a[1] * b[1], a[2] * b[2])


@lru_cache(maxsize=None)
def coproduct_word(word: Word) -> TensorSeries:
    """Multiplicative extension of the generator rule
    Delta(D_s) = D_s (x) I + I (x) D_s + s*eps D_s (x) D_s, Delta(I) = I (x) I."""
    out = TensorSeries.unit()
    for letter in word.letters:
        w = Word((letter,))
        gen = TensorSeries({
            (w, IDENTITY): P_ONE,
            (IDENTITY, w): P_ONE,
            (w, w): EpsPoly((0.0, _SIGNS[letter])),
        })
        out = out * gen
    return out


def coproduct(series: WordSeries, eps: float | None = None) -> TensorSeries:
    """Coproduct of a series; polynomial coefficients unless eps is given,
    in which case the coefficients are evaluated at that eps."""
    out = TensorSeries({})
    for word, poly in series.terms.items():
        out = out + coproduct_word(word).scaled(poly)
    if eps is not None:
        out = TensorSeries({k: EpsPoly.const(p.evaluate(eps)) for k, p in out.terms.items()})
    return out


def counit(series: WordSeries, eps: float | None = None):
    """Constant term of the series (coefficient of the empty word)."""
    poly = series.coefficient(IDENTITY)
    return poly if eps is None else poly.evaluate(eps)


def counit_contract(tensor: TensorSeries, side: str) -> WordSeries:
    """Apply the counit on one tensor leg: (u (x) id) or (id (x) u)."""
    out = {}
    for (w1, w2), poly in tensor.terms.items():
        keep, killed = (w2, w1) if side == "left" else (w1, w2)
        if killed == IDENTITY:
            out[keep] = out.get(keep, P_ZERO) + poly
    return WordSeries(out)


def coproduct_on_leg(tensor: TensorSeries, leg: str) -> TripleTensorSeries:
    """(Delta (x) id) for leg='left', (id (x) Delta) for leg='right'."""
    out = {}
    for (w1, w2), poly in tensor.terms.items():
        inner = coproduct_word(w1 if leg == "left" else w2)
        for (a, b), q in inner.terms.items():
            key = (a, b, w2) if leg == "left" else (w1, a, b)
            out[key] = out.get(key, P_ZERO) + poly * q
    return TripleTensorSeries(out)


def swap(tensor: TensorSeries) -> TensorSeries:
    """The flip a (x) b -> b (x) a (Delta^op = swap o Delta)."""
    return TensorSeries({(w2, w1): p for (w1, w2), p in tensor.terms.items()})


def all_words(max_len: int):
    """Every word of length <= max_len (including the identity)."""
    out = [IDENTITY]
    frontier = [IDENTITY]
    for _ in range(max_len):
        frontier = [w * Word((l,)) for w in frontier for l in (PLUS, MINUS)]
        out.extend(frontier)
    return out


def eval_word(word: Word, f: SampledPath, eps: float) -> SampledPath:
    """Apply the word to a path, letters acting right to left."""
    out = f
    for letter in reversed(word.letters):
        out = quantum_diff(out, eps, letter)
    return out


def eval_series(series: WordSeries, f: SampledPath, eps: float) -> SampledPath:
    if not len(series):
        return SampledPath(f.t0, f.dt, np.zeros(len(f)))
    parts = [poly.evaluate(eps) * eval_word(w, f, eps) for w, poly in series.terms.items()]
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def check_commuting_diagram(series: WordSeries, f: SampledPath, g: SampledPath,
                            eps: float) -> float:
    """Max pointwise gap between S(f*g) and the coproduct route
    sum coeff * S1(f) * S2(g), over the common valid window."""
    lhs = eval_series(series, f * g, eps)
    delta = coproduct(series)
    parts = []
    for (w1, w2), poly in delta.terms.items():
        parts.append(poly.evaluate(eps) * (eval_word(w1, f, eps) * eval_word(w2, g, eps)))
    if not parts:
        return 0.0
    rhs = parts[0]
    for p in parts[1:]:
        rhs = rhs + p
    _, _, a, b = overlap(lhs, rhs)
    return float(np.max(np.abs(a - b)))
