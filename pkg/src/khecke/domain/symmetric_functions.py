"""Generating functions of set-valued tableaux and the bases they form.

Coefficients of ``G_lambda`` and ``J_lambda`` come from a transfer recursion:
processing letters in increasing order, the cells whose smallest entry is at
most ``i`` grow by a horizontal strip, and the extra copies of ``i`` go to
corners of the previous shape that get no new cell directly below. Both
functions are symmetric, so they are built in the monomial basis and densified
only on request. The brute-force enumerations over tableaux are kept as an
independent check.
"""
from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from itertools import product as cartesian
from math import comb

from khecke.domain.errors import InvalidTableauError, WindowError
from khecke.domain.hecke import insertion_tableau
from khecke.domain.kknuth import class_slice, equivalent_tableaux
from khecke.domain.polynomials import (
    BiTruncatedPoly,
    MonomialExpansion,
    Parts,
    TruncatedPoly,
)
from khecke.domain.shapes import Partition, partitions_up_to
from khecke.domain.tableaux import (
    IncreasingTableau,
    SetValuedTableau,
    enumerate_set_valued,
    enumerate_weak_set_valued,
)
from khecke.domain.words import (
    Composition,
    Word,
    descent_composition,
    set_from_composition,
    words_over,
)
from khecke.infrastructure.constants import (
    DEFAULT_MAX_VISITED_WORDS,
    DEFAULT_PHI_SLACK,
    JOINT_DEGREE_FACTOR,
)
from khecke.infrastructure.logging import get_logger

logger = get_logger(component="symmetric_functions")

GROTHENDIECK = "G"
WEAK = "J"


# -- transfer recursion --------------------------------------------------------


def _strip_options(start: Parts, target: Parts) -> Iterator[tuple[Parts, int, int]]:
    """Shapes ``grown`` with ``grown / start`` a horizontal strip inside ``target``.

    Yields ``(grown, new_cells, free_corners)`` where ``free_corners`` counts the
    corners of ``start`` with no cell of the strip directly below.
    """
    ranges = []
    for row in range(len(target)):
        low = start[row] if row < len(start) else 0
        high = target[row]
        if row:
            high = min(high, start[row - 1] if row - 1 < len(start) else 0)
        if high < low:
            return
        ranges.append(range(low, high + 1))
    size = sum(start)
    for lengths in cartesian(*ranges):
        grown = tuple(length for length in lengths if length)
        free = 0
        for row, length in enumerate(start):
            below_start = start[row + 1] if row + 1 < len(start) else 0
            below_grown = lengths[row + 1] if row + 1 < len(lengths) else 0
            if below_start < length and below_grown < length:
                free += 1
        yield grown, sum(grown) - size, free


def _copies(kind: str, copies: int, new_cells: int, free_corners: int) -> int:
    """Signed number of ways to place ``copies`` copies of one letter."""
    if kind == GROTHENDIECK:
        extra = copies - new_cells
        if 0 <= extra <= free_corners:
            return comb(free_corners, extra) * (-1) ** extra
        return 0
    if copies == 0:
        return 1 if new_cells == 0 else 0
    return sum(
        comb(free_corners, used) * comb(copies - 1, new_cells + used - 1)
        for used in range(free_corners + 1)
        if new_cells + used >= 1
    )


@lru_cache(maxsize=None)
def _content_coefficient(kind: str, target: Parts, start: Parts, content: tuple[int, ...]) -> int:
    if not content:
        return 1 if start == target else 0
    copies, rest = content[0], content[1:]
    missing = sum(target) - sum(start)
    total = 0
    for grown, new_cells, free in _strip_options(start, target):
        if sum(rest) < missing - new_cells:
            continue
        weight = _copies(kind, copies, new_cells, free)
        if weight:
            total += weight * _content_coefficient(kind, target, grown, rest)
    return total


def tableau_coefficient(kind: str, shape: Partition, content: Iterable[int]) -> int:
    """Coefficient of ``x^content`` in ``G_shape`` (kind "G") or ``J_shape`` (kind "J")."""
    letters = tuple(copies for copies in content if copies)
    return _content_coefficient(kind, shape.parts, (), letters)


def _require_degree(shape: Partition, max_degree: int) -> None:
    if max_degree < shape.size:
        raise WindowError("degree cap is below |lambda|", shape=str(shape), max_degree=max_degree)


@lru_cache(maxsize=1024)
def basis_expansion(kind: str, shape: Partition, num_vars: int, max_degree: int) -> MonomialExpansion:
    """``G_shape`` or ``J_shape`` in the monomial basis."""
    _require_degree(shape, max_degree)
    coeffs = {
        nu.parts: tableau_coefficient(kind, shape, nu.parts)
        for nu in partitions_up_to(max_degree, num_vars)
        if nu.size >= shape.size
    }
    return MonomialExpansion(num_vars, max_degree, coeffs)


def grothendieck_G(shape: Partition, num_vars: int, max_degree: int) -> TruncatedPoly:
    """Stable Grothendieck polynomial ``G_shape`` in ``num_vars`` variables."""
    return basis_expansion(GROTHENDIECK, shape, num_vars, max_degree).to_poly()


def weak_J(shape: Partition, num_vars: int, max_degree: int) -> TruncatedPoly:
    """Weight generating function of weak set-valued tableaux of ``shape``."""
    return basis_expansion(WEAK, shape, num_vars, max_degree).to_poly()


def _generating_function(
    tableaux: Iterable[SetValuedTableau], shape: Partition, num_vars: int, max_degree: int, signed: bool
) -> TruncatedPoly:
    terms = (
        (tableau.weight(num_vars), (-1) ** (tableau.size - shape.size) if signed else 1)
        for tableau in tableaux
    )
    return TruncatedPoly.from_terms(num_vars, max_degree, terms)


def grothendieck_by_tableaux(shape: Partition, num_vars: int, max_degree: int) -> TruncatedPoly:
    """``G_shape`` summed tableau by tableau."""
    _require_degree(shape, max_degree)
    found = enumerate_set_valued(shape, num_vars, max_degree)
    return _generating_function(found, shape, num_vars, max_degree, signed=True)


def weak_by_tableaux(shape: Partition, num_vars: int, max_degree: int) -> TruncatedPoly:
    """``J_shape`` summed tableau by tableau."""
    _require_degree(shape, max_degree)
    found = enumerate_weak_set_valued(shape, num_vars, max_degree)
    return _generating_function(found, shape, num_vars, max_degree, signed=False)


# -- quasisymmetric functions --------------------------------------------------


@lru_cache(maxsize=4096)
def fundamental_L(composition: Composition, num_vars: int, max_degree: int) -> TruncatedPoly:
    """``L_alpha``: weakly increasing index sequences, strict at the partial sums of alpha."""
    length = sum(composition)
    if length > max_degree:
        return TruncatedPoly.zero(num_vars, max_degree)
    strict = set_from_composition(composition)
    terms = []
    for indices in combinations_with_replacement(range(num_vars), length):
        if any(indices[position - 1] == indices[position] for position in strict):
            continue
        exponents = [0] * num_vars
        for index in indices:
            exponents[index] += 1
        terms.append((tuple(exponents), 1))
    return TruncatedPoly.from_terms(num_vars, max_degree, terms)


def _composition_series(composition: Composition, num_vars: int, max_degree: int) -> TruncatedPoly:
    if not composition:
        return TruncatedPoly.one(num_vars, max_degree)
    return fundamental_L(composition, num_vars, max_degree)


def quasisymmetric_by_insertion(
    alphabet: Iterable[int], num_vars: int, max_degree: int
) -> dict[IncreasingTableau, TruncatedPoly]:
    """``sum L_{C(h)}`` over words ``h`` on ``alphabet`` with ``|h| <= max_degree``, grouped by ``P(h)``."""
    buckets: dict[IncreasingTableau, list[Word]] = {}
    for word in words_over(sorted(set(alphabet)), max_degree):
        buckets.setdefault(insertion_tableau(word), []).append(word)
    return {
        tableau: series_of_words(words, num_vars, max_degree)
        for tableau, words in buckets.items()
    }


def j_from_insertion(tableau: IncreasingTableau, num_vars: int, max_degree: int) -> TruncatedPoly:
    """``sum L_{C(h)}`` over words with ``P(h) = tableau``."""
    if not tableau.is_straight:
        raise InvalidTableauError("insertion tableaux have straight shape", shape=str(tableau.shape))
    buckets = quasisymmetric_by_insertion(tableau.support, num_vars, max_degree)
    return buckets.get(tableau, TruncatedPoly.zero(num_vars, max_degree))


# -- substitution --------------------------------------------------------------


def substitute_neg_geometric(shape: Partition, num_vars: int, max_degree: int) -> TruncatedPoly:
    """``(-1)^|shape| G_shape(-x/(1-x))`` as a truncated series.

    ``(-x/(1-x))^a = (-1)^a sum_{k>=a} C(k-1, a-1) x^k``, applied variable by
    variable to every term of ``G_shape``.
    """
    if num_vars < 1:
        raise WindowError("substitution needs at least one variable")
    source = basis_expansion(GROTHENDIECK, shape, num_vars, max(max_degree, shape.size))
    coeffs: dict[Parts, int] = {}
    for nu in partitions_up_to(max_degree, num_vars):
        total = 0
        for lower in cartesian(*(range(part + 1) for part in nu.parts)):
            coefficient = source.coefficient(lower)
            if not coefficient:
                continue
            weight = 1
            for k, a in zip(nu.parts, lower, strict=True):
                weight *= comb(k - 1, a - 1) if a else (1 if k == 0 else 0)
            total += (-1) ** sum(lower) * coefficient * weight
        if total:
            coeffs[nu.parts] = (-1) ** shape.size * total
    return MonomialExpansion(num_vars, max_degree, coeffs).to_poly()


# -- basis expansion -----------------------------------------------------------


@dataclass(frozen=True)
class GExpansion:
    """Coefficients of a symmetric polynomial in the G (or J) basis.

    ``residual`` is what elimination left inside the window; it is zero on success.
    """

    coefficients: dict[Partition, int]
    residual: TruncatedPoly
    window: int
    basis: str = GROTHENDIECK

    @property
    def exact(self) -> bool:
        return self.residual.is_zero

    def coefficient(self, shape: Partition) -> int:
        return self.coefficients.get(shape, 0)


def elimination_order(window: int, num_vars: int) -> list[Partition]:
    """Lowest degree first; within a degree, lexicographically largest first."""
    shapes = partitions_up_to(window, num_vars)
    return sorted(shapes, key=lambda shape: (shape.size, tuple(-part for part in shape.parts)))


def _as_monomial(poly: TruncatedPoly | MonomialExpansion) -> MonomialExpansion:
    return poly if isinstance(poly, MonomialExpansion) else MonomialExpansion.from_poly(poly)


def _expand(kind: str, poly: TruncatedPoly | MonomialExpansion, window: int | None) -> GExpansion:
    source = _as_monomial(poly)
    n, d = source.num_vars, source.max_degree
    window = d if window is None else min(window, d)
    if n < window:
        raise WindowError("n < d", num_vars=n, degree_window=window)
    remaining = dict(source.coeffs)
    found: dict[Partition, int] = {}
    for shape in elimination_order(window, n):
        coefficient = remaining.get(shape.parts, 0)
        if not coefficient:
            continue
        found[shape] = coefficient
        for parts, value in basis_expansion(kind, shape, n, d).coeffs.items():
            remaining[parts] = remaining.get(parts, 0) - coefficient * value
    residual = MonomialExpansion(
        n, d, {parts: c for parts, c in remaining.items() if c and sum(parts) <= window}
    )
    return GExpansion(found, residual.to_poly(), window, kind)


def expand_in_G(poly: TruncatedPoly | MonomialExpansion, degree_window: int | None = None) -> GExpansion:
    """Coefficients ``c_mu`` with ``poly = sum c_mu G_mu`` up to ``degree_window``."""
    return _expand(GROTHENDIECK, poly, degree_window)


def expand_in_J(poly: TruncatedPoly | MonomialExpansion, degree_window: int | None = None) -> GExpansion:
    return _expand(WEAK, poly, degree_window)


def expand_product(
    kind: str, first: Partition, second: Partition, num_vars: int, max_degree: int
) -> GExpansion:
    """``B_first * B_second`` in the same basis ``B`` (G or J)."""
    product = basis_expansion(kind, first, num_vars, max_degree) * basis_expansion(
        kind, second, num_vars, max_degree
    )
    return _expand(kind, product, max_degree)


def expand_product_in_G(first: Partition, second: Partition, num_vars: int, max_degree: int) -> GExpansion:
    return expand_product(GROTHENDIECK, first, second, num_vars, max_degree)


# -- coproduct -----------------------------------------------------------------


def split_alphabet(shape: Partition, num_vars: int, max_degree: int, joint_degree: int) -> BiTruncatedPoly:
    """``G_shape(y1..yn, z1..zn)`` with the y block ordered before the z block."""
    empty = BiTruncatedPoly(num_vars, max_degree, joint_degree)
    coeffs = {
        (left, right): _content_coefficient(GROTHENDIECK, shape.parts, (), left + right)
        for left, right in empty.keys()
        if sum(left) + sum(right) >= shape.size
    }
    return BiTruncatedPoly(num_vars, max_degree, joint_degree, coeffs)


def coproduct_G(
    shape: Partition, num_vars: int, max_degree: int, joint_degree: int | None = None
) -> dict[tuple[Partition, Partition], int]:
    """Signed coefficients of ``G_lambda (x) G_mu`` in ``Delta(G_shape)``.

    Each block is truncated at ``max_degree`` and the total degree at
    ``joint_degree`` (default twice ``max_degree``).
    """
    joint = JOINT_DEGREE_FACTOR * max_degree if joint_degree is None else joint_degree
    if num_vars < max_degree:
        raise WindowError("n < d", num_vars=num_vars, max_degree=max_degree)
    if max_degree < shape.size:
        raise WindowError("degree cap is below |nu|", shape=str(shape), max_degree=max_degree)
    remaining = dict(split_alphabet(shape, num_vars, max_degree, joint).coeffs)
    order = sorted(
        BiTruncatedPoly(num_vars, max_degree, joint).keys(),
        key=lambda key: (
            sum(key[0]) + sum(key[1]),
            sum(key[0]),
            tuple(-part for part in key[0]),
            tuple(-part for part in key[1]),
        ),
    )
    found: dict[tuple[Partition, Partition], int] = {}
    for left, right in order:
        coefficient = remaining.get((left, right), 0)
        if not coefficient:
            continue
        found[(Partition(left), Partition(right))] = coefficient
        basis = BiTruncatedPoly.tensor(
            basis_expansion(GROTHENDIECK, Partition(left), num_vars, max_degree),
            basis_expansion(GROTHENDIECK, Partition(right), num_vars, max_degree),
            joint,
        )
        for key, value in basis.coeffs.items():
            remaining[key] = remaining.get(key, 0) - coefficient * value
    return found


# -- the class morphism --------------------------------------------------------


@dataclass(frozen=True)
class ClassSeries:
    """``phi([[h]])`` truncated, with the slice bound used to enumerate the class.

    ``consistent`` records agreement with ``sum J_shape(T)`` over the class tableaux.
    """

    poly: TruncatedPoly
    slice_bound: int
    consistent: bool
    complete: bool = True


def phi_class(
    word: Word,
    num_vars: int,
    max_degree: int,
    bound: int | None = None,
    max_visited: int = DEFAULT_MAX_VISITED_WORDS,
) -> ClassSeries:
    """``sum L_{C(w)}`` over class members ``w`` with ``|w| <= max_degree``.

    ``L_{C(w)}`` is homogeneous of degree ``|w|``, so longer members cannot
    contribute; the slice still explores up to ``bound`` (default ``d + 3``) to
    reach short members through longer intermediates.
    """
    slice_bound = max(max_degree + DEFAULT_PHI_SLACK if bound is None else bound, len(word))
    found = class_slice(word, slice_bound, max_visited, allow_partial=True)
    series = series_of_words(
        (member for member in found.words if len(member) <= max_degree), num_vars, max_degree
    )
    tableaux = equivalent_tableaux(insertion_tableau(word), slice_bound, max_visited).members
    expected = series_sum(
        (
            weak_J(tableau.partition, num_vars, max_degree)
            for tableau in tableaux
            if tableau.size <= max_degree
        ),
        num_vars,
        max_degree,
    )
    consistent = series == expected
    if not consistent:
        logger.warning("Class series disagrees with its tableau sum", word=word, bound=slice_bound)
    return ClassSeries(series, slice_bound, consistent, found.complete)


def series_sum(items: Iterable[TruncatedPoly], num_vars: int, max_degree: int) -> TruncatedPoly:
    coeffs: dict[tuple[int, ...], int] = {}
    for item in items:
        for exponents, coefficient in item.coeffs.items():
            coeffs[exponents] = coeffs.get(exponents, 0) + coefficient
    return TruncatedPoly(num_vars, max_degree, coeffs)


def series_of_words(words: Iterable[Word], num_vars: int, max_degree: int) -> TruncatedPoly:
    """``sum L_{C(w)}``, grouping words by descent composition first."""
    counts = Counter(descent_composition(word) if word else () for word in words)
    return series_sum(
        (
            _composition_series(composition, num_vars, max_degree).scale(count)
            for composition, count in counts.items()
        ),
        num_vars,
        max_degree,
    )
