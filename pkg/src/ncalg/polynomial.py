"""
Noncommutative polynomials with exact rational coefficients.

A word is a tuple of generator indices (g1, g2, ...) standing for the
left-to-right product U_g1 U_g2 ... applied to a column vector on the right;
the empty tuple is the identity. A polynomial maps words to nonzero
``Fraction`` coefficients and is kept canonical after every operation.

Each generator U_g carries graded weight g + 1 (it enters the time series
with t^g and contributes t^(g+1) once integrated), and the weight of a word
is the sum over its letters.

Text form
---------
Terms are ordered by (weight, word read in application order, i.e. starting
from the rightmost letter). Each term is written ``num/den*U<g1>*U<g2>...``
(integers without ``/1``, the identity word as the bare coefficient) and
terms are joined with `` + `` / `` - ``. The zero polynomial is ``0``.

    >>> format_polynomial(parse_polynomial("1/3*U1*U0 - 1/3*U0*U1"))
    '1/3*U1*U0 - 1/3*U0*U1'
"""

import re
from collections.abc import Iterator, Mapping, Sequence
from fractions import Fraction
from types import MappingProxyType
from typing import TypeAlias

import numpy as np

from src.models.errors import EvaluationError, PolynomialFormatError

Word: TypeAlias = tuple[int, ...]
IDENTITY: Word = ()

_TERM = re.compile(r"(?P<coeff>\d+(?:/\d+)?)(?P<word>(?:\*U\d+)*)|(?P<bare>U\d+(?:\*U\d+)*)")
_SPLIT = re.compile(r"\s+([+-])\s+")


def graded_weight(word: Word) -> int:
    return sum(g + 1 for g in word)


def canonical_key(word: Word) -> tuple[int, Word]:
    return graded_weight(word), tuple(reversed(word))


class NCPolynomial:
    """Immutable element of the free algebra over U_0, U_1, ... with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Word, Fraction | int] | None = None):
        cleaned: dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            word = tuple(int(g) for g in word)
            if any(g < 0 for g in word):
                raise ValueError(f"Generator indices must be >= 0, got {word}")
            value = cleaned.get(word, Fraction(0)) + Fraction(coeff)
            cleaned[word] = value
        self._terms = MappingProxyType(
            {w: cleaned[w] for w in sorted(cleaned, key=canonical_key) if cleaned[w] != 0}
        )

    @classmethod
    def zero(cls) -> "NCPolynomial":
        return cls()

    @classmethod
    def identity(cls) -> "NCPolynomial":
        return cls({IDENTITY: 1})

    @classmethod
    def generator(cls, g: int) -> "NCPolynomial":
        return cls({(g,): 1})

    @property
    def terms(self) -> Mapping[Word, Fraction]:
        return self._terms

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPolynomial):
            return dict(self._terms) == dict(other._terms)
        if isinstance(other, (int, Fraction)):
            return self == NCPolynomial({IDENTITY: other})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"NCPolynomial({format_polynomial(self)!r})"

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        merged = dict(self._terms)
        for word, coeff in other:
            merged[word] = merged.get(word, Fraction(0)) + coeff
        return NCPolynomial(merged)

    def __neg__(self) -> "NCPolynomial":
        return NCPolynomial({w: -c for w, c in self})

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NCPolynomial({w: c * other for w, c in self})
        product: dict[Word, Fraction] = {}
        for left, a in self:
            for right, b in other:
                word = left + right
                product[word] = product.get(word, Fraction(0)) + a * b
        return NCPolynomial(product)

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return self * scalar
        return NotImplemented

    def __pow__(self, exponent: int) -> "NCPolynomial":
        result = NCPolynomial.identity()
        for _ in range(exponent):
            result = result * self
        return result

    def truncate(self, max_weight: int) -> "NCPolynomial":
        """Drop every word heavier than max_weight."""
        return NCPolynomial({w: c for w, c in self if graded_weight(w) <= max_weight})

    def homogeneous_part(self, weight: int) -> "NCPolynomial":
        return NCPolynomial({w: c for w, c in self if graded_weight(w) == weight})

    def generators(self) -> set[int]:
        return {g for word in self._terms for g in word}


def nc_add(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    return a + b


def nc_mul(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    return a * b


def _format_term(word: Word, coeff: Fraction) -> str:
    text = str(abs(coeff))
    return text + "".join(f"*U{g}" for g in word)


def format_polynomial(p: NCPolynomial) -> str:
    if not p:
        return "0"
    parts = []
    for i, (word, coeff) in enumerate(p):
        body = _format_term(word, coeff)
        if i == 0:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f" {'+' if coeff > 0 else '-'} {body}")
    return "".join(parts)


def _parse_term(text: str, sign: int) -> tuple[Word, Fraction]:
    match = _TERM.fullmatch(text)
    if match is None:
        raise PolynomialFormatError(f"Cannot parse term {text!r}")
    if match.group("bare"):
        coeff, letters = Fraction(1), match.group("bare")
    else:
        coeff, letters = Fraction(match.group("coeff")), match.group("word")
    word = tuple(int(g) for g in re.findall(r"U(\d+)", letters))
    return word, sign * coeff


def parse_polynomial(text: str) -> NCPolynomial:
    """Inverse of format_polynomial (also accepts terms written without a coefficient)."""
    text = text.strip()
    if not text:
        raise PolynomialFormatError("Empty polynomial text")
    if text == "0":
        return NCPolynomial.zero()

    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:].lstrip()
    pieces = _SPLIT.split(text)
    terms: dict[Word, Fraction] = {}
    word, coeff = _parse_term(pieces[0], sign)
    terms[word] = coeff
    for op, chunk in zip(pieces[1::2], pieces[2::2]):
        word, coeff = _parse_term(chunk, 1 if op == "+" else -1)
        terms[word] = terms.get(word, Fraction(0)) + coeff
    return NCPolynomial(terms)


def evaluate_words(p: NCPolynomial, gens: Sequence, v: np.ndarray) -> np.ndarray:
    """Apply p to a stacked vector, substituting gens[g] for U_g.

    Products are formed right to left with matrix-vector products only;
    results of shared word suffixes are reused. Coefficients are converted to
    floating point only when the word results are scaled and summed, in the
    canonical word order.

    Raises
    ------
    EvaluationError
        A word uses a generator index with no matrix in gens.
    """
    v = np.asarray(v)
    for g in sorted(p.generators()):
        if g >= len(gens):
            raise EvaluationError(g, len(gens))
    matrices = [np.asarray(getattr(m, "entries", m)) for m in gens]

    suffixes: dict[Word, np.ndarray] = {IDENTITY: v}

    def apply(word: Word) -> np.ndarray:
        if word not in suffixes:
            suffixes[word] = matrices[word[0]] @ apply(word[1:])
        return suffixes[word]

    result = np.zeros(v.shape, dtype=np.result_type(v, complex))
    for word, coeff in p:
        result = result + float(coeff) * apply(word)
    return result
