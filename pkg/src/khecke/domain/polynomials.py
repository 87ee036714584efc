"""Truncated polynomial arithmetic.

``TruncatedPoly`` is a polynomial in ``num_vars`` variables with every term of
total degree above ``max_degree`` discarded. Symmetric polynomials are also kept
in the monomial basis (``MonomialExpansion``), one coefficient per partition,
which makes products and basis eliminations cheap. ``BiTruncatedPoly`` holds a
polynomial symmetric in two separate blocks of variables, in ``m (x) m``
coordinates.
"""
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any

import sympy
from sympy.utilities.iterables import multiset_permutations

from khecke.domain.errors import NonSymmetricError, WindowError
from khecke.domain.shapes import partitions_up_to

Exponent = tuple[int, ...]
Parts = tuple[int, ...]


def _check_window(num_vars: int, max_degree: int) -> None:
    if num_vars < 0 or max_degree < 0:
        raise WindowError("truncation must be non-negative", num_vars=num_vars, max_degree=max_degree)


@dataclass(frozen=True)
class TruncatedPoly:
    """Integer polynomial in ``num_vars`` variables truncated at total degree ``max_degree``."""

    num_vars: int
    max_degree: int
    coeffs: Mapping[Exponent, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_window(self.num_vars, self.max_degree)
        cleaned: dict[Exponent, int] = {}
        for exponents, coefficient in self.coeffs.items():
            exponents = tuple(exponents)
            if len(exponents) != self.num_vars or any(power < 0 for power in exponents):
                raise WindowError("exponent vector does not match the variables", exponents=exponents)
            if sum(exponents) > self.max_degree:
                raise WindowError("term exceeds the degree cap", exponents=exponents)
            if coefficient:
                cleaned[exponents] = coefficient
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def zero(cls, num_vars: int, max_degree: int) -> "TruncatedPoly":
        return cls(num_vars, max_degree)

    @classmethod
    def one(cls, num_vars: int, max_degree: int) -> "TruncatedPoly":
        return cls(num_vars, max_degree, {(0,) * num_vars: 1})

    @classmethod
    def from_terms(
        cls, num_vars: int, max_degree: int, terms: Iterable[tuple[Exponent, int]]
    ) -> "TruncatedPoly":
        """Sum the given terms, dropping those above the degree cap."""
        coeffs: dict[Exponent, int] = {}
        for exponents, coefficient in terms:
            if sum(exponents) <= max_degree:
                coeffs[exponents] = coeffs.get(exponents, 0) + coefficient
        return cls(num_vars, max_degree, coeffs)

    def coefficient(self, exponents: Iterable[int]) -> int:
        """Coefficient of ``x^exponents``; short vectors are padded with zeros."""
        key = tuple(exponents)
        key = key + (0,) * (self.num_vars - len(key))
        return self.coeffs.get(key, 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _same_window(self, other: "TruncatedPoly") -> None:
        if (self.num_vars, self.max_degree) != (other.num_vars, other.max_degree):
            raise WindowError(
                "incompatible truncations",
                left=(self.num_vars, self.max_degree),
                right=(other.num_vars, other.max_degree),
            )

    def __add__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        self._same_window(other)
        coeffs = dict(self.coeffs)
        for exponents, coefficient in other.coeffs.items():
            coeffs[exponents] = coeffs.get(exponents, 0) + coefficient
        return TruncatedPoly(self.num_vars, self.max_degree, coeffs)

    def __neg__(self) -> "TruncatedPoly":
        return self.scale(-1)

    def __sub__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        return self + (-other)

    def scale(self, factor: int) -> "TruncatedPoly":
        return TruncatedPoly(
            self.num_vars,
            self.max_degree,
            {exponents: factor * coefficient for exponents, coefficient in self.coeffs.items()},
        )

    def __mul__(self, other: "TruncatedPoly") -> "TruncatedPoly":
        """Degree-capped convolution."""
        self._same_window(other)
        cap = self.max_degree
        right = sorted(other.coeffs.items(), key=lambda item: sum(item[0]))
        coeffs: dict[Exponent, int] = {}
        for left_exp, left_coeff in self.coeffs.items():
            room = cap - sum(left_exp)
            for right_exp, right_coeff in right:
                if sum(right_exp) > room:
                    break
                key = tuple(a + b for a, b in zip(left_exp, right_exp, strict=True))
                coeffs[key] = coeffs.get(key, 0) + left_coeff * right_coeff
        return TruncatedPoly(self.num_vars, cap, coeffs)

    def degree_part(self, degree: int) -> "TruncatedPoly":
        return TruncatedPoly(
            self.num_vars,
            self.max_degree,
            {e: c for e, c in self.coeffs.items() if sum(e) == degree},
        )

    def permute(self, order: Iterable[int]) -> "TruncatedPoly":
        """Rename variable ``order[i]`` to variable ``i`` (0-indexed)."""
        order = tuple(order)
        return TruncatedPoly(
            self.num_vars,
            self.max_degree,
            {tuple(e[i] for i in order): c for e, c in self.coeffs.items()},
        )

    def is_symmetric(self) -> bool:
        """Invariance under every adjacent transposition of variables."""
        for exponents, coefficient in self.coeffs.items():
            for i in range(self.num_vars - 1):
                if exponents[i] == exponents[i + 1]:
                    continue
                swapped = list(exponents)
                swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
                if self.coeffs.get(tuple(swapped), 0) != coefficient:
                    return False
        return True

    def terms(self) -> list[tuple[Exponent, int]]:
        """Terms ordered by degree, then exponent vector."""
        return sorted(self.coeffs.items(), key=lambda item: (sum(item[0]), item[0]))

    def to_expression(self) -> Any:
        """The polynomial as a sympy expression in ``x1..xn``."""
        symbols = sympy.symbols(f"x1:{self.num_vars + 1}") if self.num_vars else ()
        return sympy.Add(
            *(
                coefficient * sympy.Mul(*(s**p for s, p in zip(symbols, exponents, strict=True)))
                for exponents, coefficient in self.terms()
            )
        )

    def __str__(self) -> str:
        return str(self.to_expression())


# -- symmetric polynomials in the monomial basis --------------------------------


def _parts(vector: Iterable[int]) -> Parts:
    return tuple(sorted((value for value in vector if value), reverse=True))


@dataclass(frozen=True)
class MonomialExpansion:
    """A symmetric truncated polynomial as ``sum c_nu m_nu``, keyed by partition parts."""

    num_vars: int
    max_degree: int
    coeffs: Mapping[Parts, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_window(self.num_vars, self.max_degree)
        cleaned: dict[Parts, int] = {}
        for parts, coefficient in self.coeffs.items():
            parts = tuple(parts)
            if len(parts) > self.num_vars or sum(parts) > self.max_degree:
                raise WindowError("monomial outside the truncation", parts=parts)
            if coefficient:
                cleaned[parts] = coefficient
        object.__setattr__(self, "coeffs", cleaned)

    @classmethod
    def from_poly(cls, poly: TruncatedPoly) -> "MonomialExpansion":
        if not poly.is_symmetric():
            raise NonSymmetricError("polynomial is not symmetric")
        coeffs = {
            _parts(exponents): coefficient
            for exponents, coefficient in poly.coeffs.items()
            if list(exponents) == sorted(exponents, reverse=True)
        }
        return cls(poly.num_vars, poly.max_degree, coeffs)

    def coefficient(self, parts: Iterable[int]) -> int:
        return self.coeffs.get(_parts(parts), 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def _same_window(self, other: "MonomialExpansion") -> None:
        if (self.num_vars, self.max_degree) != (other.num_vars, other.max_degree):
            raise WindowError("incompatible truncations")

    def __add__(self, other: "MonomialExpansion") -> "MonomialExpansion":
        self._same_window(other)
        coeffs = dict(self.coeffs)
        for parts, coefficient in other.coeffs.items():
            coeffs[parts] = coeffs.get(parts, 0) + coefficient
        return MonomialExpansion(self.num_vars, self.max_degree, coeffs)

    def scale(self, factor: int) -> "MonomialExpansion":
        return MonomialExpansion(
            self.num_vars, self.max_degree, {p: factor * c for p, c in self.coeffs.items()}
        )

    def __sub__(self, other: "MonomialExpansion") -> "MonomialExpansion":
        return self + other.scale(-1)

    def __mul__(self, other: "MonomialExpansion") -> "MonomialExpansion":
        """Coefficient of ``x^nu`` in the product, summed over splittings ``a + b = nu``."""
        self._same_window(other)
        coeffs: dict[Parts, int] = {}
        for target in partitions_up_to(self.max_degree, self.num_vars):
            nu = target.parts
            total = 0
            for left in cartesian(*(range(part + 1) for part in nu)):
                left_coeff = self.coeffs.get(_parts(left))
                if not left_coeff:
                    continue
                right_coeff = other.coeffs.get(_parts(p - a for p, a in zip(nu, left, strict=True)))
                if right_coeff:
                    total += left_coeff * right_coeff
            if total:
                coeffs[nu] = total
        return MonomialExpansion(self.num_vars, self.max_degree, coeffs)

    def to_poly(self) -> TruncatedPoly:
        coeffs: dict[Exponent, int] = {}
        for parts, coefficient in self.coeffs.items():
            padded = list(parts) + [0] * (self.num_vars - len(parts))
            for exponents in multiset_permutations(padded):
                coeffs[tuple(exponents)] = coefficient
        return TruncatedPoly(self.num_vars, self.max_degree, coeffs)

    def terms(self) -> Iterator[tuple[Parts, int]]:
        yield from sorted(self.coeffs.items(), key=lambda item: (sum(item[0]), item[0]))


# -- two blocks of variables ---------------------------------------------------


PartsPair = tuple[Parts, Parts]


@dataclass(frozen=True)
class BiTruncatedPoly:
    """A polynomial in ``y1..yn, z1..zn`` symmetric in each block, in ``m (x) m`` coordinates.

    Each block is truncated at ``max_degree`` and the total at ``joint_degree``.
    """

    num_vars: int
    max_degree: int
    joint_degree: int
    coeffs: Mapping[PartsPair, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        _check_window(self.num_vars, self.max_degree)
        cleaned: dict[PartsPair, int] = {}
        for (left, right), coefficient in self.coeffs.items():
            key = (tuple(left), tuple(right))
            if not self.admits(*key):
                raise WindowError("term outside the truncation", left=key[0], right=key[1])
            if coefficient:
                cleaned[key] = coefficient
        object.__setattr__(self, "coeffs", cleaned)

    def admits(self, left: Parts, right: Parts) -> bool:
        return (
            len(left) <= self.num_vars
            and len(right) <= self.num_vars
            and sum(left) <= self.max_degree
            and sum(right) <= self.max_degree
            and sum(left) + sum(right) <= self.joint_degree
        )

    def keys(self) -> list[PartsPair]:
        """Every admissible ``(left, right)`` pair."""
        shapes = [p.parts for p in partitions_up_to(self.max_degree, self.num_vars)]
        return [(a, b) for a in shapes for b in shapes if self.admits(a, b)]

    @classmethod
    def tensor(
        cls, left: MonomialExpansion, right: MonomialExpansion, joint_degree: int
    ) -> "BiTruncatedPoly":
        """``left(y) * right(z)`` truncated blockwise and jointly."""
        if (left.num_vars, left.max_degree) != (right.num_vars, right.max_degree):
            raise WindowError("incompatible truncations")
        result = cls(left.num_vars, left.max_degree, joint_degree)
        coeffs = {
            (a, b): ca * cb
            for a, ca in left.coeffs.items()
            for b, cb in right.coeffs.items()
            if result.admits(a, b)
        }
        return cls(left.num_vars, left.max_degree, joint_degree, coeffs)

    def coefficient(self, left: Iterable[int], right: Iterable[int]) -> int:
        return self.coeffs.get((_parts(left), _parts(right)), 0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs
