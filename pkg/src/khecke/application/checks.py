"""Named worked examples, run by ``khecke verify``.

Each check recomputes a published value from scratch and raises ``CheckFailed``
on disagreement. Checks marked slow build oracle expansions in eight or nine
variables and take minutes rather than seconds.
"""
import time
from collections.abc import Callable, Sequence
from dataclasses import dataclass

from khecke.application.parallel import run_parallel
from khecke.domain.hecke import (
    insert_letter,
    insert_word,
    insertion_tableau,
    reverse_insert,
    reverse_word,
)
from khecke.domain.kknuth import (
    URTStatus,
    class_slice,
    equivalent,
    equivalent_tableaux,
    is_urt,
    validate_chain,
)
from khecke.domain.kpr import (
    class_coproduct,
    class_product,
    coproduct_preimages,
    insertion_class_product_contains,
    urt_class_product,
)
from khecke.domain.lr_rules import (
    LRQuery,
    URTChoice,
    count_skew_fillings,
    dual_lr_coefficient,
    lr_coefficient,
    verify_against_oracle,
    verify_dual_against_oracle,
)
from khecke.domain.shapes import Partition, SkewShape, direct_sum_shape, partitions_up_to
from khecke.domain.symmetric_functions import (
    coproduct_G,
    expand_product_in_G,
    fundamental_L,
    grothendieck_G,
    phi_class,
    quasisymmetric_by_insertion,
    substitute_neg_geometric,
    weak_J,
)
from khecke.domain.tableaux import (
    IncreasingTableau,
    SetValuedTableau,
    enumerate_all_increasing,
    minimal_tableau,
    reading_word,
    superstandard_tableau,
    tableau_descent_composition,
)
from khecke.domain.words import descent_composition, format_word
from khecke.infrastructure.logging import get_logger

logger = get_logger(component="checks")

P = IncreasingTableau.from_rows
Q = SetValuedTableau.from_rows


class CheckFailed(AssertionError):
    pass


def expect(condition: bool, message: str) -> None:
    if not condition:
        raise CheckFailed(message)


@dataclass(frozen=True)
class Check:
    name: str
    description: str
    run: Callable[[], str]
    slow: bool = False


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed: float


REGISTRY: dict[str, Check] = {}


CheckFunc = Callable[[], str]


def check(name: str, description: str, slow: bool = False) -> Callable[[CheckFunc], CheckFunc]:
    def register(func: CheckFunc) -> CheckFunc:
        if name in REGISTRY:
            raise ValueError(f"duplicate check {name}")
        REGISTRY[name] = Check(name, description, func, slow)
        return func

    return register


# -- insertion -----------------------------------------------------------------


@check("insert-15133", "P and Q of 15133")
def _insert_15133() -> str:
    tableau, recording = insert_word((1, 5, 1, 3, 3))
    expect(tableau == P([[1, 3], [5]]), f"P = {tableau}")
    expect(recording == Q([[[1], [2, 5]], [[3, 4]]]), f"Q = {recording}")
    expect(reverse_word(tableau, recording) == (1, 5, 1, 3, 3), "reverse insertion lost the word")
    return f"P={tableau} Q={recording}"


@check("insert-13324535", "P, Q and descent compositions of 13324535")
def _insert_13324535() -> str:
    word = (1, 3, 3, 2, 4, 5, 3, 5)
    tableau, recording = insert_word(word)
    expect(tableau == P([[1, 2, 3, 5], [3, 4]]), f"P = {tableau}")
    expect(recording == Q([[[1], [2, 3], [5], [6, 8]], [[4], [7]]]), f"Q = {recording}")
    composition = descent_composition(word)
    expect(composition == (3, 3, 2), f"C(h) = {composition}")
    expect(tableau_descent_composition(recording) == composition, "C(Q(h)) differs from C(h)")
    return "C(h) = C(Q(h)) = (3,3,2)"


@check("insert-h2-terminal-corner", "H2 terminates at the bottom of the first column")
def _insert_h2() -> str:
    start = P([[1, 2, 3, 5], [2, 3, 4, 6], [6], [7]])
    outcome = insert_letter(start, 3)
    expect(outcome.tableau == start, f"Z = {outcome.tableau}")
    expect((outcome.corner, outcome.alpha) == ((4, 1), 0), f"c = {outcome.corner}, alpha = {outcome.alpha}")
    return "c = (4,1), alpha = 0"


@check("insert-h1-adjoin", "H1 adjoins a box in row 3")
def _insert_h1() -> str:
    outcome = insert_letter(P([[2, 4, 6], [3, 6, 8], [7]]), 5)
    expect(outcome.tableau == P([[2, 4, 5], [3, 6, 8], [7, 8]]), f"Z = {outcome.tableau}")
    expect((outcome.corner, outcome.alpha) == ((3, 2), 1), f"c = {outcome.corner}")
    return "c = (3,2), alpha = 1"


@check("reverse-insertion-steps", "reverse insertion steps recovering 15133")
def _reverse_steps() -> str:
    expect(reverse_insert(P([[1, 3], [5]]), (1, 2), 0) == (P([[1, 3], [5]]), 3), "step (1,2)")
    expect(reverse_insert(P([[1, 5], [5]]), (2, 1), 1) == (P([[1, 5]]), 1), "step (2,1)")
    return "(P2, 3) and (P4, 1)"


# -- K-Knuth monoid ------------------------------------------------------------


@check("chain-34124", "34124 and 3124 are joined by a chain within length 8")
def _chain() -> str:
    verdict = equivalent((3, 4, 1, 2, 4), (3, 1, 2, 4), 8)
    expect(verdict.equivalent, f"verdict {verdict.kind.value}: {verdict.reason}")
    expect(validate_chain((3, 4, 1, 2, 4), verdict.chain, 8), "chain does not validate")
    expect(verdict.chain[-1] == (3, 1, 2, 4), "chain ends elsewhere")
    expect((3, 1, 2, 4) in class_slice((3, 4, 1, 2, 4), 8), "slice misses 3124")
    return f"{len(verdict.chain)} moves"


@check("lds-certificate", "13524 and 15324 are separated by lds")
def _lds() -> str:
    verdict = equivalent((1, 3, 5, 2, 4), (1, 5, 3, 2, 4))
    expect(verdict.certificate is not None, "no certificate")
    assert verdict.certificate is not None
    expect(verdict.certificate.describe() == "lds 2 vs 3", verdict.certificate.describe())
    return verdict.certificate.describe()


@check("class-of-3124", "the class of 3124 holds exactly two increasing tableaux")
def _class_3124() -> str:
    found = equivalent_tableaux(insertion_tableau((3, 1, 2, 4)), 8)
    expected = (P([[1, 2, 4], [3]]), P([[1, 2, 4], [3, 4]]))
    expect(found.members == expected, f"members {[str(t) for t in found.members]}")
    return "[[1,2,4],[3]] and [[1,2,4],[3,4]]"


@check("urt-3124", "P(3124) is not a URT")
def _urt_3124() -> str:
    verdict = is_urt(insertion_tableau((3, 1, 2, 4)), 8)
    expect(verdict.status is URTStatus.NOT_URT, verdict.status.value)
    expect(verdict.witness == P([[1, 2, 4], [3, 4]]), f"witness {verdict.witness}")
    return f"witness {verdict.witness}"


@check("urt-standard-shapes", "S_(3,2) and M_(2,1) pass the URT test")
def _urt_shapes() -> str:
    for tableau in (P([[1, 2, 3], [4, 5]]), P([[1, 2], [2]])):
        verdict = is_urt(tableau, 12)
        expect(verdict.passes, f"{tableau}: {verdict.status.value}")
    return "both within bound"


@check("urt-13422", "P(13422) is not a URT")
def _urt_13422() -> str:
    verdict = is_urt(insertion_tableau((1, 3, 4, 2, 2)), 10)
    expect(verdict.status is URTStatus.NOT_URT, verdict.status.value)
    return f"witness {verdict.witness}"


@check("urt-suite", "S_lambda and M_lambda pass at bound 12 for |lambda| <= 5", slow=True)
def _urt_suite() -> str:
    shapes = [shape for shape in partitions_up_to(5) if shape.size]
    for shape in shapes:
        for tableau in (superstandard_tableau(shape), minimal_tableau(shape)):
            verdict = is_urt(tableau, 12)
            expect(verdict.passes, f"{tableau}: {verdict.status.value}")
    return f"{2 * len(shapes)} tableaux within bound"


# -- KPR bialgebra -------------------------------------------------------------

_PRODUCT_FIGURE = [
    P([[1, 2, 4], [3], [5]]),
    P([[1, 2, 4], [3, 5], [5]]),
    P([[1, 2, 4], [3, 4], [5]]),
    P([[1, 2, 3, 4], [5]]),
    P([[1, 2, 4], [3, 5]]),
    P([[1, 2, 3, 4], [3, 5]]),
    P([[1, 2], [3, 4], [5]]),
    P([[1, 2, 3, 4], [3], [5]]),
    P([[1, 2, 3, 4], [3, 5], [5]]),
]
_PRODUCT_REPRESENTATIVES = [
    (5, 3, 1, 2, 4),
    (5, 1, 2, 3, 4),
    (3, 5, 1, 2, 4),
    (3, 5, 1, 2, 3, 4),
    (5, 3, 4, 1, 2),
    (5, 3, 5, 1, 2, 3, 4),
]


@check("product-12-312", "[[12]].[[312]] has six classes over the nine-tableau figure")
def _product() -> str:
    classes = class_product((1, 2), (3, 1, 2), 10)
    expect(len(classes) == 6, f"{len(classes)} classes")
    tableaux = sorted(t for cls in classes for t in cls.tableaux)
    expect(tableaux == sorted(_PRODUCT_FIGURE), "tableaux differ from the figure")
    sizes = sorted((len(cls.tableaux) for cls in classes), reverse=True)
    expect(sizes == [3, 2, 1, 1, 1, 1], f"class sizes {sizes}")
    owners = []
    for word in _PRODUCT_REPRESENTATIVES:
        holding = [index for index, cls in enumerate(classes) if word in cls]
        expect(len(holding) == 1, f"{format_word(word)} lies in {len(holding)} classes")
        owners.append(holding[0])
    expect(len(set(owners)) == 6, f"representatives share classes: {owners}")
    urt_side = urt_class_product(P([[1, 2]]), P([[1, 2], [3]]), 10)
    expect(sorted(urt_side) == sorted(_PRODUCT_FIGURE), "URT product differs from the figure")
    return "classes 3/2/1/1/1/1"


_COPRODUCT_TERMS = [
    ((), (1, 2)),
    ((1,), (1,)),
    ((1,), (1, 2)),
    ((1, 2), ()),
    ((1, 2), (1,)),
]


@check("coproduct-12", "Delta([[12]]) has the five terms 0|12, 1|1, 1|12, 12|0 and 12|1")
def _coproduct() -> str:
    terms = class_coproduct((1, 2), 8)
    found = sorted((term.left.representative, term.right.representative) for term in terms)
    expect(found == _COPRODUCT_TERMS, f"terms {found}")
    multiplicities = [term.multiplicity for term in terms]
    expect(multiplicities == [1] * 5, f"multiplicities {multiplicities}")
    return ", ".join(f"{format_word(left)}|{format_word(right)}" for left, right in found)


@check("product-insertion-anomaly", "a class product word outside the insertion-class product")
def _product_anomaly() -> str:
    first, second = P([[1, 2]]), P([[1, 2, 4], [3]])
    expect(insertion_class_product_contains((3, 1, 5, 6, 4, 2), first, second), "315642 missing")
    expect(not insertion_class_product_contains((3, 1, 5, 6, 4, 4, 2), first, second), "3156442 present")
    expect(equivalent((3, 1, 5, 6, 4, 2), (3, 1, 5, 6, 4, 4, 2), 8).equivalent, "315642 !~ 3156442")
    return "3156442 ~ 315642 but only the latter is a shuffle"


@check("coproduct-preimage-anomaly", "the four words whose coproduct holds 123 (x) 11")
def _coproduct_anomaly() -> str:
    words = coproduct_preimages((1, 2, 3), (1, 1), [1, 2, 3, 4])
    expected = [(1, 2, 3, 4, 4), (1, 2, 4, 3, 3), (1, 3, 4, 2, 2), (2, 3, 4, 1, 1)]
    expect(words == expected, f"words {words}")
    target = insertion_tableau((1, 3, 4, 2))
    expect(all(insertion_tableau(word) != target for word in words), "a preimage inserts to P(1342)")
    return "12344 12433 13422 23411"


@check("urt-coproduct-pair", "a coproduct pair of [[1,2,4],[3,5]] with a non-URT factor")
def _urt_coproduct_pair() -> str:
    target = P([[1, 2, 4], [3, 5]])
    left, right = P([[1, 2, 5], [3]]), P([[2, 4]])
    expect(insertion_tableau(reading_word(left) + reading_word(right)) == target, "P(312524) differs")
    expect(is_urt(target, 10).passes, "T0 is not a URT within bound")
    expect(is_urt(left, 10).status is URTStatus.NOT_URT, "T' passes the URT test")
    return "P(312524) = T0"


# -- generating functions ------------------------------------------------------


@check("grothendieck-21", "coefficients of G_(2,1)")
def _g21() -> str:
    poly = grothendieck_G(Partition((2, 1)), 4, 4)
    expected = {(2, 1, 0, 0): 1, (1, 1, 1, 0): 2, (2, 2, 0, 0): -1, (2, 1, 1, 0): -3, (1, 1, 1, 1): -8}
    for exponents, value in expected.items():
        expect(poly.coefficient(exponents) == value, f"{exponents}: {poly.coefficient(exponents)}")
    return "1, 2, -1, -3, -8"


@check("weak-21", "J_(2,1) has coefficient 3 at x1^2 x2^2")
def _j21() -> str:
    value = weak_J(Partition((2, 1)), 2, 4).coefficient((2, 2))
    expect(value == 3, f"coefficient {value}")
    return "3"


@check("fundamental-13", "L_(1,3) never produces x1^2 x2^2")
def _l13() -> str:
    poly = fundamental_L((1, 3), 2, 4)
    expect(poly.coefficient((1, 3)) == 1, "x1 x2^3 missing")
    expect(poly.coefficient((2, 2)) == 0, "x1^2 x2^2 present")
    return "x1 x2^3 only"


@check("g1-squared", "G_1^2 = G_2 + G_11 - G_21")
def _g1_squared() -> str:
    expansion = expand_product_in_G(Partition((1,)), Partition((1,)), 4, 4)
    expected = {Partition((2,)): 1, Partition((1, 1)): 1, Partition((2, 1)): -1}
    expect(expansion.coefficients == expected, f"{expansion.coefficients}")
    return "exact"


@check("substitution-identity", "J_lambda = (-1)^|lambda| G_lambda(-x/(1-x)) for |lambda| <= 4", slow=True)
def _substitution() -> str:
    for shape in partitions_up_to(4):
        lhs = substitute_neg_geometric(shape, 6, 6)
        rhs = weak_J(shape, 6, 6)
        expect(lhs == rhs, f"shape {shape}")
    return "all shapes up to size 4"


@check("phi-of-1", "phi([[1]]) = J_(1)")
def _phi_1() -> str:
    series = phi_class((1,), 3, 3)
    expect(series.poly == weak_J(Partition((1,)), 3, 3), "series differs")
    return "J_(1)"


@check("j-from-insertion-sweep", "insertion buckets over [4] give J_lambda up to size 5", slow=True)
def _j_sweep() -> str:
    by_support: dict[frozenset[int], list[IncreasingTableau]] = {}
    for tableau in enumerate_all_increasing([1, 2, 3, 4]):
        if 0 < tableau.size <= 5:
            by_support.setdefault(tableau.support, []).append(tableau)
    checked = 0
    for support, tableaux in by_support.items():
        buckets = quasisymmetric_by_insertion(support, 5, 5)
        for tableau in tableaux:
            expect(buckets.get(tableau) == weak_J(tableau.partition, 5, 5), f"tableau {tableau}")
            checked += 1
    return f"{checked} tableaux"


# -- Littlewood-Richardson rules -----------------------------------------------


@check("lr-431", "c_(3,1),(2,1)^(4,3,1) counts three fillings")
def _lr_431() -> str:
    report = lr_coefficient(LRQuery(Partition((3, 1)), Partition((2, 1)), Partition((4, 3, 1))), 10)
    expect((report.count, report.sign) == (3, -1), f"count {report.count}, sign {report.sign}")
    minimal = lr_coefficient(
        LRQuery(Partition((3, 1)), Partition((2, 1)), Partition((4, 3, 1)), URTChoice.MINIMAL), 10
    )
    expect(minimal.count == 3, f"minimal URT counts {minimal.count}")
    return "-3"


@check("lr-431-oracle", "the (3,1) x (2,1) table agrees with the oracle at n = d = 8", slow=True)
def _lr_oracle() -> str:
    report = verify_against_oracle(Partition((3, 1)), Partition((2, 1)), 8, 8, bound=10)
    expect(report.agree, f"mismatches {report.mismatches}")
    return f"{len(report.rows)} shapes agree"


@check("lr-oracle-sweep", "all tables with |lambda|, |mu| <= 3 agree with the oracle at n = d = 8", slow=True)
def _lr_sweep() -> str:
    shapes = [shape for shape in partitions_up_to(3) if shape.size]
    for lam in shapes:
        for mu in shapes:
            report = verify_against_oracle(lam, mu, 8, 8, bound=10)
            expect(report.agree, f"{lam} x {mu}: mismatches {report.mismatches}")
    return f"{len(shapes) ** 2} pairs agree"


@check("dual-lr-32", "d_(2,1),(2,1)^(3,2) counts three fillings")
def _dual_32() -> str:
    report = dual_lr_coefficient(P([[1, 2, 3], [4, 5]]), Partition((2, 1)), Partition((2, 1)), 10)
    expect((report.count, report.sign) == (3, -1), f"count {report.count}")
    value = coproduct_G(Partition((3, 2)), 5, 5).get((Partition((2, 1)), Partition((2, 1))))
    expect(value == -3, f"oracle coefficient {value}")
    return "-3"


@check("dual-lr-32-oracle", "the coproduct rule for S_(3,2) agrees with the oracle at (6,5)", slow=True)
def _dual_oracle() -> str:
    report = verify_dual_against_oracle(P([[1, 2, 3], [4, 5]]), 6, 5, bound=10)
    expect(report.agree, f"mismatches {report.mismatches}")
    return f"{len(report.rows)} pairs agree"


@check("nonurt-product-undercount", "a non-URT undercounts c_(2,1),(3,2)^(4,3,2)", slow=True)
def _nonurt_product() -> str:
    target = insertion_tableau((3, 4, 1, 2, 4))
    count = len(count_skew_fillings(SkewShape(Partition((4, 3, 2)), Partition((2, 1))), target))
    expect(count == 2, f"count {count}")
    oracle = expand_product_in_G(Partition((2, 1)), Partition((3, 2)), 9, 9)
    value = oracle.coefficient(Partition((4, 3, 2)))
    expect(value == -3, f"oracle {value}")
    return "2 fillings against |c| = 3"


@check("nonurt-coproduct-miss", "a non-URT finds no filling of (2,1)+(3,1)")
def _nonurt_coproduct() -> str:
    target = insertion_tableau((3, 4, 1, 2, 4))
    count = len(count_skew_fillings(direct_sum_shape(Partition((2, 1)), Partition((3, 1))), target))
    expect(count == 0, f"count {count}")
    value = coproduct_G(Partition((3, 2)), 4, 4).get((Partition((2, 1)), Partition((3, 1))), 0)
    expect(value != 0, "oracle coefficient is zero")
    return f"0 fillings against oracle {value}"


# -- driver --------------------------------------------------------------------


def run_check(name: str) -> CheckResult:
    item = REGISTRY[name]
    start = time.perf_counter()
    try:
        detail = item.run()
        passed = True
    except CheckFailed as exc:
        detail, passed = str(exc), False
    elapsed = time.perf_counter() - start
    logger.info("Check finished", check=name, passed=passed, elapsed=round(elapsed, 3))
    return CheckResult(name, passed, detail, elapsed)


def select_checks(names: Sequence[str] | None = None, include_slow: bool = True) -> list[str]:
    if names:
        unknown = [name for name in names if name not in REGISTRY]
        if unknown:
            raise KeyError(f"unknown checks: {', '.join(unknown)}")
        return list(names)
    return [name for name, item in REGISTRY.items() if include_slow or not item.slow]


def run_checks(
    names: Sequence[str] | None = None, include_slow: bool = True, jobs: int = 1
) -> list[CheckResult]:
    """Run the selected checks; results keep registry order whatever ``jobs`` is."""
    return run_parallel(run_check, select_checks(names, include_slow), jobs)
