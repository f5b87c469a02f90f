"""Noncommutative polynomials in the generators h_1, ..., h_{p-1}.

Words are tuples of generator indices (so (1, 2) means h_1 h_2, which is
distinct from (2, 1)); coefficients are exact rationals.  Generator h_i
carries weight i, and a word's weight is the sum of its letters.  The
graded log expansion of a generic unipotent element lives here, and its
weight-k components are the symbolic counterparts of the numeric theta_k.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .jordan import ThetaSet


def word_weight(word: tuple) -> int:
    return sum(word)


@dataclass(frozen=True)
class NCPolynomial:
    """Finite rational linear combination of words over p-1 generators."""

    ngen: int
    terms: dict

    def __post_init__(self):
        object.__setattr__(
            self, "terms", {w: c for w, c in self.terms.items() if c != 0}
        )

    @staticmethod
    def zero(ngen: int) -> "NCPolynomial":
        return NCPolynomial(ngen, {})

    @staticmethod
    def generator(ngen: int, i: int) -> "NCPolynomial":
        if not (1 <= i <= ngen):
            raise ValueError(f"generator index {i} out of range")
        return NCPolynomial(ngen, {(i,): Fraction(1)})

    def __add__(self, other: "NCPolynomial") -> "NCPolynomial":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return NCPolynomial(self.ngen, out)

    def __sub__(self, other: "NCPolynomial") -> "NCPolynomial":
        return self + other.scale(Fraction(-1))

    def scale(self, c: Fraction) -> "NCPolynomial":
        return NCPolynomial(self.ngen, {w: c * v for w, v in self.terms.items()})

    def mul_truncated(self, other: "NCPolynomial", max_weight: int) -> "NCPolynomial":
        """Concatenation product, dropping words heavier than max_weight."""
        out = {}
        for wa, ca in self.terms.items():
            wwa = word_weight(wa)
            for wb, cb in other.terms.items():
                if wwa + word_weight(wb) > max_weight:
                    continue
                w = wa + wb
                out[w] = out.get(w, Fraction(0)) + ca * cb
        return NCPolynomial(self.ngen, out)

    def weight_component(self, k: int) -> "NCPolynomial":
        return NCPolynomial(
            self.ngen, {w: c for w, c in self.terms.items() if word_weight(w) == k}
        )

    def is_homogeneous(self, k: int) -> bool:
        return all(word_weight(w) == k for w in self.terms)

    def sorted_terms(self):
        """Terms in the canonical order: lexicographic on the word."""
        return sorted(self.terms.items(), key=lambda item: item[0])

    def evaluate(self, mats) -> np.ndarray:
        """Substitute matrices for the generators; mats[i] stands for h_{i+1}."""
        r = mats[0].shape[0]
        acc = np.zeros((r, r), dtype=np.complex128)
        for w, c in self.terms.items():
            prod = np.eye(r, dtype=np.complex128)
            for letter in w:
                prod = prod @ mats[letter - 1]
            acc += complex(c) * prod
        return acc

    def render(self, latex: bool = False) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (w, c) in enumerate(self.sorted_terms()):
            body = _render_word(w, latex)
            mag = abs(c)
            if mag == 1:
                coeff = ""
            elif latex and mag.denominator != 1:
                coeff = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}} "
            else:
                coeff = f"{mag} "
            sign = "-" if c < 0 else "+"
            if idx == 0:
                head = "-" if c < 0 else ""
                parts.append(f"{head}{coeff}{body}")
            else:
                parts.append(f"{sign} {coeff}{body}")
        return " ".join(parts)


def _render_word(word: tuple, latex: bool) -> str:
    # compress repeated adjacent letters into powers
    runs = []
    for letter in word:
        if runs and runs[-1][0] == letter:
            runs[-1][1] += 1
        else:
            runs.append([letter, 1])
    pieces = []
    for letter, count in runs:
        if latex:
            sym = f"h_{{{letter}}}"
            pieces.append(sym if count == 1 else f"{sym}^{{{count}}}")
        else:
            sym = f"h{letter}"
            pieces.append(sym if count == 1 else f"{sym}^{count}")
    return " ".join(pieces)


def theta_symbolic(p: int) -> ThetaSet:
    """Symbolic theta_1..theta_{p-1}: graded parts of log(1 + h_1 w + ...).

    Substituting w-degree for weight, the log series truncates at weight
    p-1, and theta_k is homogeneous of weight k.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    ngen = p - 1
    max_w = p - 1
    s = NCPolynomial.zero(ngen)
    for i in range(1, p):
        s = s + NCPolynomial.generator(ngen, i)
    acc = NCPolynomial.zero(ngen)
    power = NCPolynomial(ngen, {(): Fraction(1)})
    for k in range(1, p):
        power = power.mul_truncated(s, max_w)
        acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
    return ThetaSet(p=p, symbolic=tuple(acc.weight_component(k) for k in range(1, p)))
