"""Noncommutative polynomials in the homogenized enveloping algebra.

Words in the basis letters X_1 < ... < X_N are rewritten into
Poincare-Birkhoff-Witt normal form (non-decreasing letter sequences) by

    X_j X_i  ->  X_i X_j + h [X_j, X_i]      (j > i),

where the bracket expands through the structure constants.  With the
grading deg(X_i) = deg(h) = 1 the rewriting relation is homogeneous, so
reduction preserves degree and multiplication adds degrees.  Termination
follows from the (length, inversion count) measure; independence of the
rewrite order is a property the tests drive with randomized schedules.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CapacityError, StructuralError
from .hpoly import HPoly
from .lie import LieBasis, StructureConstants

Word = tuple[int, ...]


class PBWAlgebra:
    """Rewriting context: the letters and their bracket table."""

    def __init__(self, basis: LieBasis, sc: StructureConstants):
        if basis.dim != sc.dim:
            raise StructuralError("basis and structure constants disagree")
        self.basis = basis
        self.sc = sc
        self.dim = basis.dim

    # -- word reduction --------------------------------------------------

    def reduce_word(self, word: Word, coeff: HPoly = None, rng=None) -> dict[Word, HPoly]:
        """PBW normal form of a single word with coefficient.

        Deterministically rewrites the leftmost inversion; an rng picks
        random inversions instead, exercising confluence.
        """
        if coeff is None:
            coeff = HPoly.one()
        for letter in word:
            if not 0 <= letter < self.dim:
                raise StructuralError(f"letter {letter} out of range")
        result: dict[Word, HPoly] = {}
        stack: list[tuple[Word, HPoly]] = [(tuple(word), coeff)]
        while stack:
            w, c = stack.pop()
            if c.is_zero():
                continue
            inversions = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
            if not inversions:
                _accumulate(result, w, c)
                continue
            i = inversions[0] if rng is None else rng.choice(inversions)
            b, a = w[i], w[i + 1]
            stack.append((w[:i] + (a, b) + w[i + 2 :], c))
            for k, v in self.sc.bracket_coeffs(b, a).items():
                stack.append((w[:i] + (k,) + w[i + 2 :], c * HPoly.h(1, v)))
        return result

    def letter_commutator_words(self, e: int, w: Word) -> dict[Word, HPoly]:
        """[X_e, X_w] expanded through the derivation rule.

        The bracket with a single letter is a derivation of the product,
        so it is a sum over positions of the word with one letter replaced
        by its bracket with X_e; much cheaper than two full products.
        """
        result: dict[Word, HPoly] = {}
        for pos, letter in enumerate(w):
            for k, v in self.sc.bracket_coeffs(e, letter).items():
                replaced = w[:pos] + (k,) + w[pos + 1 :]
                for rw, rc in self.reduce_word(replaced, HPoly.h(1, v)).items():
                    _accumulate(result, rw, rc)
        return result


def _accumulate(store: dict[Word, HPoly], word: Word, coeff: HPoly):
    prev = store.get(word)
    total = coeff if prev is None else prev + coeff
    if total.is_zero():
        store.pop(word, None)
    else:
        store[word] = total


class NCPoly:
    """An element of the algebra in PBW normal form.

    terms maps non-decreasing words to HPoly coefficients; the empty word
    is the unit.  All arithmetic stays inside one PBWAlgebra context.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: PBWAlgebra, terms: dict[Word, HPoly] | None = None):
        object.__setattr__(self, "algebra", algebra)
        clean: dict[Word, HPoly] = {}
        if terms:
            for w, c in terms.items():
                if any(w[i] > w[i + 1] for i in range(len(w) - 1)):
                    raise StructuralError(f"word {w} is not PBW-sorted")
                if not c.is_zero():
                    clean[tuple(w)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("NCPoly is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, algebra: PBWAlgebra) -> "NCPoly":
        return cls(algebra)

    @classmethod
    def unit(cls, algebra: PBWAlgebra, coeff: HPoly | None = None) -> "NCPoly":
        return cls(algebra, {(): coeff if coeff is not None else HPoly.one()})

    @classmethod
    def letter(cls, algebra: PBWAlgebra, index: int) -> "NCPoly":
        return cls(algebra, {(index,): HPoly.one()})

    @classmethod
    def from_word(cls, algebra: PBWAlgebra, word: Word, coeff: HPoly | None = None, rng=None) -> "NCPoly":
        reduced = algebra.reduce_word(tuple(word), coeff or HPoly.one(), rng=rng)
        return cls(algebra, reduced)

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Filtration degree: word length plus h-degree, maximized."""
        if not self.terms:
            return -1
        return max(len(w) + c.degree() for w, c in self.terms.items())

    def _check_context(self, other: "NCPoly"):
        if self.algebra is not other.algebra:
            raise StructuralError("operands from different algebra contexts")

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check_context(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(out, w, c)
        return NCPoly(self.algebra, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, coeff) -> "NCPoly":
        coeff = coeff if isinstance(coeff, HPoly) else HPoly.of(coeff)
        if coeff.is_zero():
            return NCPoly.zero(self.algebra)
        return NCPoly(self.algebra, {w: c * coeff for w, c in self.terms.items()})

    def shift_h(self, k: int) -> "NCPoly":
        """Multiply by h^k."""
        return NCPoly(self.algebra, {w: c.shift(k) for w, c in self.terms.items()})

    def __mul__(self, other: "NCPoly") -> "NCPoly":
        self._check_context(other)
        out: dict[Word, HPoly] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                c = c1 * c2
                if c.is_zero():
                    continue
                for rw, rc in self.algebra.reduce_word(w1 + w2, c).items():
                    _accumulate(out, rw, rc)
        return NCPoly(self.algebra, out)

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    def commutator_with_letter(self, e: int) -> "NCPoly":
        """[X_e, self] via the derivation expansion (exact, fast)."""
        out: dict[Word, HPoly] = {}
        for w, c in self.terms.items():
            for rw, rc in self.algebra.letter_commutator_words(e, w).items():
                _accumulate(out, rw, rc * c)
        return NCPoly(self.algebra, out)

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((w, c) for w, c in self.terms.items()))

    # -- views ---------------------------------------------------------------

    def commutative_image(self):
        """Set h = 0 and abelianize: the symbol in the polynomial ring.

        Returns exponent-keyed Fraction terms over the algebra's letters.
        """
        out: dict[tuple[int, ...], Fraction] = {}
        n = self.algebra.dim
        for w, c in self.terms.items():
            c0 = c.coefficient(0)
            if c0 == 0:
                continue
            exp = [0] * n
            for letter in w:
                exp[letter] += 1
            key = tuple(exp)
            total = out.get(key, Fraction(0)) + c0
            if total == 0:
                out.pop(key, None)
            else:
                out[key] = total
        return out

    def to_json(self) -> list[dict]:
        items = sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        return [{"word": list(w), "coefficient": c.to_json()} for w, c in items]

    @classmethod
    def from_json(cls, algebra: PBWAlgebra, data) -> "NCPoly":
        terms = {
            tuple(rec["word"]): HPoly.from_json(rec["coefficient"]) for rec in data
        }
        return cls(algebra, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.algebra.basis.names
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            mono = "*".join(names[i] for i in w) if w else "1"
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def word_of_exponent(exp: tuple[int, ...]) -> Word:
    """The ordered word X_0^e0 X_1^e1 ... for an exponent tuple."""
    out: list[int] = []
    for letter, count in enumerate(exp):
        out.extend([letter] * count)
    return tuple(out)


SYMMETRIZER_DEGREE_CAP = 8


def symmetrize(algebra: PBWAlgebra, poly, cap: int = SYMMETRIZER_DEGREE_CAP) -> NCPoly:
    """The symmetrizer: average of all letter orderings, PBW-reduced.

    Computed through the recursion Sym(x^a) = (1/|a|) * sum_l a_l X_l
    Sym(x^(a - e_l)) with memoization over sub-exponents, avoiding the
    factorial blowup of a literal permutation sum.  Degree is capped: a
    monomial of degree more than ``cap`` raises CapacityError.
    """
    from .poly import MultiPoly

    if not isinstance(poly, MultiPoly):
        raise StructuralError("symmetrize expects a commutative polynomial")
    if len(poly.variables) != algebra.dim:
        raise StructuralError("polynomial variables do not match the letters")

    memo: dict[tuple[int, ...], dict[Word, HPoly]] = {}

    def sym_monomial(exp: tuple[int, ...]) -> dict[Word, HPoly]:
        total_deg = sum(exp)
        if total_deg == 0:
            return {(): HPoly.one()}
        cached = memo.get(exp)
        if cached is not None:
            return cached
        acc: dict[Word, HPoly] = {}
        inv = Fraction(1, total_deg)
        for letter, count in enumerate(exp):
            if count == 0:
                continue
            sub = list(exp)
            sub[letter] -= 1
            sub_terms = sym_monomial(tuple(sub))
            factor = HPoly.of(inv * count)
            for w, c in sub_terms.items():
                for rw, rc in algebra.reduce_word((letter,) + w, c * factor).items():
                    _accumulate(acc, rw, rc)
        memo[exp] = acc
        return acc

    result: dict[Word, HPoly] = {}
    for exp, coeff in poly.terms.items():
        if sum(exp) > cap:
            raise CapacityError(
                f"symmetrizer degree {sum(exp)} exceeds cap {cap}"
            )
        factor = HPoly.of(coeff)
        for w, c in sym_monomial(exp).items():
            _accumulate(result, w, c * factor)
    return NCPoly(algebra, result)
