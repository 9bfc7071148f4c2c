"""Exact sparse multivariate polynomials over the rationals.

A polynomial is a mapping from exponent tuples to ``fractions.Fraction``
coefficients, one exponent slot per variable.  No floating point is ever
involved and zero coefficients are never stored, so equality of
polynomials is literal dictionary equality.

Monomial orders are graded (degree first); the default is graded reverse
lexicographic, which tends to give the smallest sets of standard
monomials in quotient-ring computations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import StructuralError

Exponent = tuple[int, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ints, strings like ``"3/4"``, and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise StructuralError(f"not an exact rational value: {value!r}")


@dataclass(frozen=True)
class MonomialOrder:
    """A graded monomial order with an explicit variable priority.

    ``priority`` is a permutation of variable indices; priority[0] is the
    most significant variable.  ``kind`` is ``"grevlex"`` or ``"grlex"``.
    Both orders are total, multiplicative and well-founded, which is what
    the division and completion algorithms require.
    """

    kind: str = "grevlex"
    priority: tuple[int, ...] | None = None

    def key(self, exponent: Exponent):
        """Sort key: max(key) picks the leading monomial."""
        prio = self.priority if self.priority is not None else range(len(exponent))
        reordered = [exponent[p] for p in prio]
        degree = sum(exponent)
        if self.kind == "grevlex":
            return (degree, tuple(-e for e in reversed(reordered)))
        if self.kind == "grlex":
            return (degree, tuple(reordered))
        raise StructuralError(f"unknown monomial order kind {self.kind!r}")

    def compare(self, a: Exponent, b: Exponent) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


GREVLEX = MonomialOrder("grevlex")


def exponent_mul(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def exponent_divides(a: Exponent, b: Exponent) -> bool:
    """True when monomial a divides monomial b."""
    return all(x <= y for x, y in zip(a, b))


def exponent_div(a: Exponent, b: Exponent) -> Exponent:
    """Quotient exponent a / b; caller must ensure divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def exponent_lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


class MultiPoly:
    """An immutable exact multivariate polynomial.

    Supports ring arithmetic, formal differentiation, evaluation and a
    lossless record-based serialization.  All operations require both
    operands to carry the identical variable tuple.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Fraction] | None = None):
        object.__setattr__(self, "variables", tuple(variables))
        clean: dict[Exponent, Fraction] = {}
        if terms:
            nvars = len(self.variables)
            for exp, coeff in terms.items():
                coeff = as_fraction(coeff)
                if len(exp) != nvars:
                    raise StructuralError(
                        f"exponent {exp} has length {len(exp)}, expected {nvars}"
                    )
                if coeff != 0:
                    clean[tuple(exp)] = coeff
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MultiPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], value) -> "MultiPoly":
        value = as_fraction(value)
        if value == 0:
            return cls(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Sequence[str], index: int) -> "MultiPoly":
        exp = [0] * len(variables)
        exp[index] = 1
        return cls(variables, {tuple(exp): ONE})

    @classmethod
    def monomial(cls, variables: Sequence[str], exponent: Exponent, coeff=ONE) -> "MultiPoly":
        return cls(variables, {tuple(exponent): as_fraction(coeff)})

    # -- predicates and views ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), ZERO)

    def total_degree(self) -> int:
        """Degree of the zero polynomial is -1 by convention."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def coefficient(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), ZERO)

    def leading(self, order: MonomialOrder = GREVLEX) -> tuple[Exponent, Fraction]:
        if not self.terms:
            raise StructuralError("zero polynomial has no leading term")
        exp = max(self.terms, key=order.key)
        return exp, self.terms[exp]

    def _check_compatible(self, other: "MultiPoly"):
        if self.variables != other.variables:
            raise StructuralError(
                f"variable lists differ: {self.variables} vs {other.variables}"
            )

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.variables, other)
        self._check_compatible(other)
        out = dict(self.terms)
        for exp, coeff in other.terms.items():
            new = out.get(exp, ZERO) + coeff
            if new == 0:
                out.pop(exp, None)
            else:
                out[exp] = new
        return MultiPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.variables, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_fraction(other)
            return MultiPoly(self.variables, {e: c * other for e, c in self.terms.items()})
        self._check_compatible(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = exponent_mul(e1, e2)
                new = out.get(exp, ZERO) + c1 * c2
                if new == 0:
                    out.pop(exp, None)
                else:
                    out[exp] = new
        return MultiPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise StructuralError("polynomial powers must be nonnegative integers")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.constant(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    # -- calculus and evaluation --------------------------------------

    def diff(self, index: int) -> "MultiPoly":
        """Formal partial derivative with respect to variable ``index``."""
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self.terms.items():
            e = exp[index]
            if e == 0:
                continue
            new_exp = list(exp)
            new_exp[index] = e - 1
            key = tuple(new_exp)
            val = out.get(key, ZERO) + coeff * e
            if val == 0:
                out.pop(key, None)
            else:
                out[key] = val
        return MultiPoly(self.variables, out)

    def evaluate(self, values: Sequence) -> Fraction:
        """Evaluate at a point given as one value per variable."""
        if len(values) != len(self.variables):
            raise StructuralError("wrong number of values for evaluation")
        vals = [as_fraction(v) if not isinstance(v, float) else v for v in values]
        total = ZERO
        # cache powers per variable; exponents repeat heavily in practice
        powers: list[dict[int, Fraction]] = [dict() for _ in vals]
        for exp, coeff in self.terms.items():
            prod = coeff
            for i, e in enumerate(exp):
                if e == 0:
                    continue
                cache = powers[i]
                p = cache.get(e)
                if p is None:
                    p = vals[i] ** e
                    cache[e] = p
                prod = prod * p
            total = total + prod
        return total

    # -- serialization ------------------------------------------------

    def to_records(self) -> dict:
        """Lossless record form: coefficients as exact rational strings."""
        items = sorted(self.terms.items(), key=lambda kv: kv[0])
        return {
            "variables": list(self.variables),
            "terms": [
                {"coefficient": str(c), "exponents": list(e)} for e, c in items
            ],
        }

    @classmethod
    def from_records(cls, data: Mapping) -> "MultiPoly":
        variables = data["variables"]
        terms = {
            tuple(rec["exponents"]): Fraction(rec["coefficient"])
            for rec in data["terms"]
        }
        return cls(variables, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in sorted(self.terms.items(), key=lambda kv: GREVLEX.key(kv[0]), reverse=True):
            factors = []
            for name, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors) if factors else "1"
            parts.append(f"({coeff})*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def monomials_up_to_degree(nvars: int, max_degree: int) -> list[Exponent]:
    """All exponent tuples of total degree <= max_degree, degree-sorted."""
    out: list[Exponent] = []
    for d in range(max_degree + 1):
        if nvars == 0:
            if d == 0:
                out.append(())
            continue

        def rec_exact(prefix: list[int], remaining: int, slots: int):
            if slots == 1:
                out.append(tuple(prefix + [remaining]))
                return
            for e in range(remaining + 1):
                rec_exact(prefix + [e], remaining - e, slots - 1)

        rec_exact([], d, nvars)
    return out
