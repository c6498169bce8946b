"""Laurent polynomials with exact rational coefficients."""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DimensionMismatch, ParseError

_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_FROM_SUPERSCRIPT = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹⁻", "0123456789-")
_FACTOR = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*\(?\s*(-?\d+)\s*\)?|\*\*\s*\(?\s*(-?\d+)\s*\)?)?)\s*")


def _coef(c) -> Fraction:
    if isinstance(c, str):
        return Fraction(c.strip())
    return Fraction(c)


class LaurentPoly:
    """A finite sum of coefficient * monomial in named variables.

    Terms are kept as a mapping from exponent tuples to nonzero Fractions.
    Instances are immutable; equality compares variable names and terms.
    """

    __slots__ = ("vars", "_terms")

    def __init__(self, variables: Iterable[str], terms: Mapping | Iterable = ()):
        self.vars = tuple(variables)
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, c in items:
            exp = tuple(int(x) for x in exp)
            if len(exp) != len(self.vars):
                raise DimensionMismatch(f"exponent {exp} does not match {len(self.vars)} variables")
            acc[exp] = acc.get(exp, Fraction(0)) + _coef(c)
        self._terms = tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True))

    @property
    def num_vars(self) -> int:
        return len(self.vars)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """(exponent, coefficient) pairs in descending lexicographic exponent order."""
        return self._terms

    def exponents(self) -> list:
        return [e for e, _ in self._terms]

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.vars == other.vars and self._terms == other._terms

    def __hash__(self):
        return hash((self.vars, self._terms))

    def __repr__(self):
        return f"LaurentPoly({self.to_text()!r})"

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        if other.vars != self.vars:
            raise DimensionMismatch("polynomials in different variables")
        return LaurentPoly(self.vars, list(self._terms) + list(other._terms))

    def is_zero(self) -> bool:
        return not self._terms

    # -- monomials ------------------------------------------------------

    def min_exponent(self) -> tuple:
        if not self._terms:
            return (0,) * self.num_vars
        return tuple(min(col) for col in zip(*self.exponents()))

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self.exponents() for x in e)

    def is_monomial_free(self) -> bool:
        return self.is_polynomial() and not any(self.min_exponent())

    def times_monomial(self, shift) -> LaurentPoly:
        shift = tuple(shift)
        return LaurentPoly(self.vars, [(tuple(a + b for a, b in zip(e, shift)), c)
                                       for e, c in self._terms])

    def monomial_free(self) -> tuple[LaurentPoly, tuple]:
        """The monomial-free representative and the exponent it was multiplied by."""
        shift = tuple(-x for x in self.min_exponent())
        return self.times_monomial(shift), shift

    def set_to_one(self, indices: Iterable[int]) -> LaurentPoly:
        """Substitute 1 for the given variables and drop them."""
        drop = set(indices)
        keep = [i for i in range(self.num_vars) if i not in drop]
        return LaurentPoly([self.vars[i] for i in keep],
                           [(tuple(e[i] for i in keep), c) for e, c in self._terms])

    def set_to_zero(self, index: int) -> LaurentPoly:
        return LaurentPoly(self.vars, [(e, c) for e, c in self._terms if e[index] == 0])

    def support(self, exp) -> set:
        return {i for i, x in enumerate(exp) if x}

    def rename(self, variables: Iterable[str]) -> LaurentPoly:
        variables = tuple(variables)
        if len(variables) != self.num_vars:
            raise DimensionMismatch("wrong number of variable names")
        return LaurentPoly(variables, self._terms)

    def permute(self, perm) -> LaurentPoly:
        """Variable i of the result is variable perm[i] of self (names follow)."""
        return LaurentPoly([self.vars[j] for j in perm],
                           [(tuple(e[j] for j in perm), c) for e, c in self._terms])

    def extend(self, names: Iterable[str]) -> LaurentPoly:
        """Append new variables occurring with exponent zero."""
        names = tuple(names)
        z = (0,) * len(names)
        return LaurentPoly(self.vars + names, [(e + z, c) for e, c in self._terms])

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {"vars": list(self.vars),
                "terms": [{"coef": str(c), "exp": [str(x) for x in e]} for e, c in self._terms]}

    @classmethod
    def from_json(cls, obj: dict) -> LaurentPoly:
        return cls(obj["vars"], [(e["exp"], e["coef"]) for e in obj["terms"]])

    @classmethod
    def parse(cls, text: str, variables: Iterable[str] | None = None) -> LaurentPoly:
        """Read a sum like ``T1*T2 - 2*T3^2*S1^-1``; ``·`` and superscripts are accepted.

        Without ``variables`` the names are taken in order of first appearance.
        """
        src = re.sub("[⁻]?[⁰¹²³⁴⁵⁶⁷⁸⁹]+", lambda m: "^" + m.group().translate(_FROM_SUPERSCRIPT), text)
        src = src.replace("·", "*")
        names = list(variables) if variables is not None else []
        fixed = variables is not None
        raw = []
        pos, sign = 0, 1
        src = src.strip()
        if not src:
            raise ParseError("empty polynomial")
        expect_term = True
        while pos < len(src):
            ch = src[pos]
            if ch.isspace():
                pos += 1
                continue
            if ch in "+-" and expect_term:
                sign = -sign if ch == "-" else sign
                pos += 1
                continue
            if ch in "+-":
                expect_term = True
                sign = -1 if ch == "-" else 1
                pos += 1
                continue
            if not expect_term:
                raise ParseError(f"missing operator at column {pos + 1}")
            coef, exps = Fraction(sign), {}
            while True:
                m = _FACTOR.match(src, pos)
                if not m or m.end() == pos:
                    raise ParseError(f"unexpected text at column {pos + 1}: {src[pos:pos + 10]!r}")
                num, name, e1, e2 = m.groups()
                if num is not None:
                    coef *= Fraction(num)
                else:
                    if name not in names:
                        if fixed:
                            raise ParseError(f"unknown variable {name!r}")
                        names.append(name)
                    exps[name] = exps.get(name, 0) + int(e1 or e2 or 1)
                pos = m.end()
                if pos < len(src) and src[pos] == "*":
                    pos += 1
                    continue
                break
            raw.append((exps, coef))
            expect_term, sign = False, 1
        if expect_term:
            raise ParseError("polynomial ends with an operator")
        return cls(names, [(tuple(e.get(v, 0) for v in names), c) for e, c in raw])

    def to_text(self, sep: str = "·") -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self._terms:
            factors = []
            for name, x in zip(self.vars, e):
                if x == 1:
                    factors.append(name)
                elif x:
                    factors.append(name + str(x).translate(_SUPERSCRIPT))
            mono = sep.join(factors)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}{sep}{mono}"
            parts.append((c < 0, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.to_text()


def monomial_sum(variables, exponents) -> LaurentPoly:
    """Sum of the monomials with the given exponents, all coefficients one."""
    return LaurentPoly(variables, [(e, 1) for e in exponents])
