"""The ``khecke`` command line.

Results go to standard output (JSON by default, aligned text with
``--format text``); logs and progress go to standard error. Exit codes: 0 success,
1 negative verdict, 2 unknown at the working bound, 3 usage or input error.
"""
import argparse
import sys
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from khecke import __version__
from khecke.application.checks import REGISTRY, run_checks
from khecke.application.engine import KheckeEngine
from khecke.domain.errors import KheckeError, NotURTError, SearchBoundError
from khecke.domain.kknuth import TableauClass, URTStatus, VerdictKind
from khecke.domain.kpr import KPRClass
from khecke.domain.lr_rules import LRQuery, LRReport, OracleReport, URTChoice, urt_tableau
from khecke.domain.polynomials import TruncatedPoly
from khecke.domain.shapes import Partition
from khecke.domain.tableaux import IncreasingTableau, SetValuedTableau
from khecke.domain.words import Word, format_word, parse_word
from khecke.infrastructure.codec import (
    decode_set_valued,
    decode_tableau,
    dumps,
    encode_poly,
    load_tableau,
)
from khecke.infrastructure.config import get_settings
from khecke.infrastructure.constants import EXIT_NEGATIVE, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE
from khecke.infrastructure.logging import get_logger, setup_logging

logger = get_logger(component="cli")


@dataclass
class CommandResult:
    payload: Any
    text: str
    exit_code: int = EXIT_OK


Handler = Callable[[argparse.Namespace, KheckeEngine], CommandResult]


# -- argument types ------------------------------------------------------------


def word(text: str) -> Word:
    return parse_word(text)


def partition(text: str) -> Partition:
    return Partition.parse(text)


def composition(text: str) -> tuple[int, ...]:
    """``"1,3"`` or ``"13"``; parts must be positive."""
    return parse_word(text)


def positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive (got {value})")
    return value


def natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative (got {value})")
    return value


def read_tableau(text: str) -> IncreasingTableau:
    """Inline JSON (``[[1,2],[3]]``) or a path to a JSON file."""
    stripped = text.strip()
    if stripped.startswith(("[", "{")):
        return decode_tableau(stripped)
    return load_tableau(Path(stripped))


def read_set_valued(text: str) -> SetValuedTableau:
    stripped = text.strip()
    if stripped.startswith("["):
        return decode_set_valued(stripped)
    return decode_set_valued(Path(stripped).read_bytes())


def read_urt_choice(text: str) -> URTChoice | IncreasingTableau:
    if text in {choice.value for choice in URTChoice}:
        return URTChoice(text)
    return read_tableau(text)


# -- rendering -----------------------------------------------------------------


def render_table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [[str(value) for value in row] for row in rows]
    widths = [max([len(header)] + [len(row[i]) for row in cells]) for i, header in enumerate(headers)]
    lines = ["  ".join(header.ljust(width) for header, width in zip(headers, widths, strict=True))]
    lines += ["  ".join(cell.ljust(width) for cell, width in zip(row, widths, strict=True)) for row in cells]
    return "\n".join(line.rstrip() for line in lines)


def _class_payload(cls: KPRClass) -> dict[str, Any]:
    return {
        "representative": list(cls.representative),
        "tableaux": list(cls.tableaux),
        "certified": cls.certified,
    }


def _report_payload(report: LRReport) -> dict[str, Any]:
    return {
        "count": report.count,
        "sign": report.sign,
        "coefficient": report.coefficient,
        "witnesses": list(report.witnesses),
    }


def _oracle_payload(report: OracleReport) -> dict[str, Any]:
    return {
        "num_vars": report.num_vars,
        "max_degree": report.max_degree,
        "agree": report.agree,
        "rows": [
            {
                "shapes": list(row.shapes),
                "count": row.count,
                "sign": row.sign,
                "oracle": row.oracle,
                "agree": row.agree,
            }
            for row in report.rows
        ],
    }


def _oracle_text(report: OracleReport) -> str:
    rows = [
        (" (x) ".join(map(str, row.shapes)), row.count, row.sign, row.oracle, "yes" if row.agree else "NO")
        for row in report.rows
    ]
    verdict = "agreement" if report.agree else f"{len(report.mismatches)} mismatches"
    return render_table(["shape", "count", "sign", "oracle", "agree"], rows) + f"\n{verdict}"


def _poly_result(poly: TruncatedPoly) -> CommandResult:
    return CommandResult(
        {"num_vars": poly.num_vars, "max_degree": poly.max_degree, "terms": encode_poly(poly)},
        str(poly),
    )


# -- insertion -----------------------------------------------------------------


def cmd_insert(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    tableau, recording = engine.insert(args.word)
    payload: dict[str, Any] = {"word": list(args.word), "P": tableau, "Q": recording}
    text = f"P = {tableau}\nQ = {recording}"
    if args.trace:
        steps = engine.trace(args.word)
        payload["steps"] = [
            {
                "letter": step.letter,
                "tableau": step.outcome.tableau,
                "corner": list(step.outcome.corner),
                "alpha": step.outcome.alpha,
            }
            for step in steps
        ]
        text += "\n" + render_table(
            ["letter", "corner", "alpha", "tableau"],
            [(s.letter, s.outcome.corner, s.outcome.alpha, s.outcome.tableau) for s in steps],
        )
    return CommandResult(payload, text)


def cmd_reverse(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    recovered = engine.reverse(read_tableau(args.P), read_set_valued(args.Q))
    return CommandResult({"word": list(recovered)}, format_word(recovered))


def cmd_roundtrip(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    recovered = engine.roundtrip(args.word)
    ok = recovered == args.word
    return CommandResult(
        {"word": list(args.word), "recovered": list(recovered), "pass": ok},
        f"{format_word(recovered)} {'PASS' if ok else 'FAIL'}",
        EXIT_OK if ok else EXIT_NEGATIVE,
    )


# -- K-Knuth monoid ------------------------------------------------------------


def _tableau_class_payload(found: TableauClass) -> dict[str, Any]:
    return {
        "tableau": found.tableau,
        "bound": found.bound,
        "members": list(found.members),
        "unresolved": list(found.unresolved),
        "certified": found.certified,
    }


def cmd_class(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    found = engine.class_slice(args.word, args.max_len)
    payload: dict[str, Any] = {
        "seed": list(found.seed),
        "max_len": found.max_len,
        "size": len(found),
        "saturated": found.saturated,
        "complete": found.complete,
        "words": [list(member) for member in found.words],
    }
    text = f"{len(found)} words within length {found.max_len}\n" + "\n".join(
        format_word(member) for member in found.words
    )
    if args.tableaux:
        tableaux = engine.class_tableaux(args.word, args.max_len)
        payload["tableaux"] = list(tableaux.members)
        text += "\ntableaux:\n" + "\n".join(str(t) for t in tableaux.members)
    return CommandResult(payload, text)


def cmd_tableaux(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    found = engine.class_tableaux(args.word, args.max_len)
    lines = [str(member) for member in found.members]
    if found.unresolved:
        lines.append("unresolved: " + ", ".join(str(t) for t in found.unresolved))
    return CommandResult(
        _tableau_class_payload(found),
        "\n".join(lines),
        EXIT_OK if found.certified else EXIT_UNKNOWN,
    )


_VERDICT_EXIT = {
    VerdictKind.EQUIVALENT: EXIT_OK,
    VerdictKind.DISTINCT: EXIT_NEGATIVE,
    VerdictKind.UNKNOWN: EXIT_UNKNOWN,
}


def cmd_equiv(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    verdict = engine.equivalent(args.first, args.second, args.max_len)
    certificate = verdict.certificate.describe() if verdict.certificate else None
    payload = {
        "verdict": verdict.kind,
        "bound": verdict.bound,
        "chain": [list(step) for step in verdict.chain],
        "certificate": certificate,
        "reason": verdict.reason,
    }
    text = verdict.kind.value
    if certificate:
        text += f": {certificate}"
    elif verdict.chain:
        text += ": " + " -> ".join(format_word(step) for step in (args.first, *verdict.chain))
    elif verdict.reason:
        text += f": {verdict.reason}"
    return CommandResult(payload, text, _VERDICT_EXIT[verdict.kind])


_URT_EXIT = {
    URTStatus.URT_WITHIN_BOUND: EXIT_OK,
    URTStatus.NOT_URT: EXIT_NEGATIVE,
    URTStatus.UNKNOWN: EXIT_UNKNOWN,
}


def cmd_urt(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    verdict = engine.is_urt(read_tableau(args.tableau), args.max_len)
    payload = {
        "status": verdict.status,
        "bound": verdict.bound,
        "witness": verdict.witness,
        "certified": verdict.certified,
        "unresolved": list(verdict.unresolved),
    }
    text = verdict.status.value
    if verdict.witness is not None:
        text += f": witness {verdict.witness}"
    elif verdict.passes:
        text += " (certified by invariants)" if verdict.certified else f" (bound {verdict.bound})"
    return CommandResult(payload, text, _URT_EXIT[verdict.status])


# -- KPR bialgebra -------------------------------------------------------------


def cmd_product(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    classes = engine.product(args.first, args.second, args.bound)
    text = render_table(
        ["representative", "tableaux"],
        [(format_word(cls.representative), "; ".join(map(str, cls.tableaux))) for cls in classes],
    )
    return CommandResult({"classes": [_class_payload(cls) for cls in classes]}, text)


def cmd_coproduct(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    terms = engine.coproduct(args.word, args.bound)
    payload = {
        "terms": [
            {
                "left": _class_payload(term.left),
                "right": _class_payload(term.right),
                "multiplicity": term.multiplicity,
            }
            for term in terms
        ]
    }
    text = render_table(
        ["left", "right", "multiplicity"],
        [
            (format_word(t.left.representative), format_word(t.right.representative), t.multiplicity)
            for t in terms
        ],
    )
    return CommandResult(payload, text)


def cmd_urt_product(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    tableaux = engine.urt_product(read_tableau(args.first), read_tableau(args.second), args.bound)
    return CommandResult({"tableaux": tableaux}, "\n".join(map(str, tableaux)))


def cmd_urt_coproduct(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    pairs = engine.urt_coproduct(read_tableau(args.tableau), args.bound)
    text = render_table(["left", "right"], [(str(a), str(b)) for a, b in pairs])
    return CommandResult({"pairs": [list(pair) for pair in pairs]}, text)


# -- generating functions ------------------------------------------------------


def _window(args: argparse.Namespace) -> tuple[int, int]:
    return (args.vars if args.vars is not None else args.deg), args.deg


def cmd_gpoly(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    return _poly_result(engine.grothendieck(args.shape, *_window(args)))


def cmd_jpoly(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    return _poly_result(engine.weak(args.shape, *_window(args)))


def cmd_lpoly(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    return _poly_result(engine.fundamental(args.composition, *_window(args)))


def cmd_expand_product(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    expansion = engine.expand_product(args.first, args.second, *_window(args))
    rows = sorted(expansion.coefficients.items(), key=lambda item: (item[0].size, item[0].parts))
    payload = {
        "exact": expansion.exact,
        "window": expansion.window,
        "coefficients": [{"shape": shape, "coefficient": value} for shape, value in rows],
    }
    return CommandResult(payload, render_table(["shape", "coefficient"], rows))


def cmd_coproduct_g(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    num_vars, max_degree = _window(args)
    terms = engine.coproduct_g(args.shape, num_vars, max_degree, args.joint)
    rows = sorted(terms.items(), key=lambda item: (item[0][0].size + item[0][1].size, item[0]))
    payload = {
        "terms": [{"left": left, "right": right, "coefficient": value} for (left, right), value in rows]
    }
    text = render_table(["left", "right", "coefficient"], [(a, b, v) for (a, b), v in rows])
    return CommandResult(payload, text)


def cmd_phi(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    series = engine.phi(args.word, *_window(args), bound=args.bound)
    payload = {
        "terms": encode_poly(series.poly),
        "slice_bound": series.slice_bound,
        "consistent": series.consistent,
        "complete": series.complete,
    }
    text = str(series.poly)
    if not series.consistent:
        text += "\nwarning: series disagrees with the sum of J over the class tableaux"
    return CommandResult(payload, text, EXIT_OK if series.consistent else EXIT_UNKNOWN)


# -- Littlewood-Richardson rules -----------------------------------------------


def _lr_table_result(table: dict[Partition, LRReport]) -> CommandResult:
    rows = sorted(table.items(), key=lambda item: (item[0].size, item[0].parts))
    payload = {"table": [{"nu": nu, **_report_payload(report)} for nu, report in rows]}
    text = render_table(
        ["nu", "count", "sign", "coefficient"],
        [(nu, r.count, r.sign, r.coefficient) for nu, r in rows],
    )
    return CommandResult(payload, text)


def _verify_window(args: argparse.Namespace, needed: int) -> tuple[int, int]:
    degree = args.deg if args.deg is not None else needed
    return (args.vars if args.vars is not None else degree), degree


def cmd_lr(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    if args.nu is not None:
        report = engine.lr(LRQuery(args.lam, args.mu, args.nu, args.urt), args.max_len)
        result = CommandResult(
            _report_payload(report),
            f"c = {report.coefficient} ({report.count} fillings)\n"
            + "\n".join(str(w) for w in report.witnesses),
        )
    else:
        result = _lr_table_result(
            engine.lr_table(args.lam, args.mu, args.max_extra, args.urt, args.max_len)
        )
    if args.verify:
        needed = args.lam.size + args.mu.size + args.max_extra
        if args.nu is not None:
            needed = max(needed, args.nu.size)
        num_vars, degree = _verify_window(args, needed)
        oracle = engine.verify_product(args.lam, args.mu, num_vars, degree, args.urt, args.max_len)
        result.payload = {"result": result.payload, "oracle": _oracle_payload(oracle)}
        result.text += "\n" + _oracle_text(oracle)
        if not oracle.agree:
            result.exit_code = EXIT_NEGATIVE
    return result


def cmd_lr_table(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    return _lr_table_result(engine.lr_table(args.lam, args.mu, args.max_extra, args.urt, args.max_len))


def cmd_dual_lr(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    target = urt_tableau(args.nu, args.urt)
    report = engine.dual_lr(target, args.lam, args.mu, args.max_len)
    result = CommandResult(
        _report_payload(report),
        f"d = {report.coefficient} ({report.count} fillings)\n"
        + "\n".join(str(w) for w in report.witnesses),
    )
    if args.verify:
        num_vars, degree = _verify_window(args, max(args.lam.size, args.mu.size, args.nu.size))
        oracle = engine.verify_dual(target, num_vars, degree, args.joint, args.max_len)
        result.payload = {"result": result.payload, "oracle": _oracle_payload(oracle)}
        result.text += "\n" + _oracle_text(oracle)
        if not oracle.agree:
            result.exit_code = EXIT_NEGATIVE
    return result


def cmd_dual_lr_table(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    table = engine.dual_lr_table(urt_tableau(args.nu, args.urt), args.max_len)
    rows = sorted(table.items(), key=lambda item: (item[0][0].size + item[0][1].size, item[0]))
    payload = {
        "table": [{"lam": lam, "mu": mu, **_report_payload(report)} for (lam, mu), report in rows]
    }
    text = render_table(
        ["lam", "mu", "count", "sign", "coefficient"],
        [(lam, mu, r.count, r.sign, r.coefficient) for (lam, mu), r in rows],
    )
    return CommandResult(payload, text)


# -- verify / serve ------------------------------------------------------------


def cmd_verify(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    if args.list:
        rows = [(name, "slow" if item.slow else "", item.description) for name, item in REGISTRY.items()]
        return CommandResult(
            {"checks": [{"name": n, "slow": bool(s), "description": d} for n, s, d in rows]},
            render_table(["check", "", "description"], rows),
        )
    results = run_checks(args.check or None, include_slow=args.reference_examples, jobs=engine.jobs)
    failed = [result for result in results if not result.passed]
    payload = {
        "passed": not failed,
        "checks": [
            {"name": r.name, "passed": r.passed, "detail": r.detail, "elapsed": round(r.elapsed, 3)}
            for r in results
        ],
    }
    text = render_table(
        ["check", "result", "seconds", "detail"],
        [(r.name, "pass" if r.passed else "FAIL", f"{r.elapsed:.2f}", r.detail) for r in results],
    )
    text += f"\n{len(results) - len(failed)}/{len(results)} passed"
    return CommandResult(payload, text, EXIT_NEGATIVE if failed else EXIT_OK)


def cmd_serve(args: argparse.Namespace, engine: KheckeEngine) -> CommandResult:
    from khecke.main import serve

    serve(host=args.host, port=args.port)
    return CommandResult({"stopped": True}, "stopped")


# -- parser --------------------------------------------------------------------


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default: Any = argparse.SUPPRESS
    parser.add_argument(
        "--format", choices=["json", "text"], default=default if suppress else "json",
        help="output format (default: json)",
    )
    parser.add_argument(
        "--jobs", type=positive, default=default if suppress else None,
        help="worker processes (default: KHECKE_JOBS or the number of cores)",
    )
    parser.add_argument(
        "--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        type=str.upper, default=default if suppress else None,
        help="log level for standard error",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="khecke",
        description="Hecke insertion, K-Knuth classes, KPR products and K-theoretic LR rules.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    commands = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name: str, handler: Handler, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, parents=[common], help=help_text, description=help_text)
        sub.set_defaults(handler=handler)
        return sub

    def window(sub: argparse.ArgumentParser, required: bool = True) -> None:
        sub.add_argument("--deg", type=natural, required=required, help="degree cap d")
        sub.add_argument("--vars", type=natural, default=None, help="variables n (default: d)")

    def urt_option(sub: argparse.ArgumentParser) -> None:
        sub.add_argument(
            "--urt", type=str, default=URTChoice.SUPERSTANDARD.value,
            help="superstandard, minimal, or a tableau (JSON or file)",
        )
        sub.add_argument("--max-len", type=positive, default=None, help="URT test bound")

    sub = add("insert", cmd_insert, "insertion and recording tableaux of a word")
    sub.add_argument("word", type=word)
    sub.add_argument("--trace", action="store_true", help="include every insertion step")

    sub = add("reverse", cmd_reverse, "recover the word from P and Q (JSON)")
    sub.add_argument("P")
    sub.add_argument("Q")

    sub = add("roundtrip", cmd_roundtrip, "insert then reverse a word")
    sub.add_argument("word", type=word)

    sub = add("class", cmd_class, "words of the K-Knuth class within a length bound")
    sub.add_argument("word", type=word)
    sub.add_argument("--max-len", type=positive, default=None)
    sub.add_argument("--tableaux", action="store_true", help="also list the increasing tableaux")

    sub = add("tableaux", cmd_tableaux, "increasing tableaux equivalent to P(word)")
    sub.add_argument("word", type=word)
    sub.add_argument("--max-len", type=positive, default=None)

    sub = add("equiv", cmd_equiv, "decide K-Knuth equivalence of two words")
    sub.add_argument("first", type=word)
    sub.add_argument("second", type=word)
    sub.add_argument("--max-len", type=positive, default=None)

    sub = add("urt", cmd_urt, "unique rectification target test")
    sub.add_argument("tableau")
    sub.add_argument("--max-len", type=positive, default=None)

    sub = add("product", cmd_product, "product of two classes of initial words")
    sub.add_argument("first", type=word)
    sub.add_argument("second", type=word)
    sub.add_argument("--bound", type=positive, default=None)

    sub = add("coproduct", cmd_coproduct, "coproduct of the class of an initial word")
    sub.add_argument("word", type=word)
    sub.add_argument("--bound", type=positive, default=None)

    sub = add("urt-product", cmd_urt_product, "product of two URT classes")
    sub.add_argument("first")
    sub.add_argument("second")
    sub.add_argument("--bound", type=positive, default=None)

    sub = add("urt-coproduct", cmd_urt_coproduct, "coproduct pairs of a URT")
    sub.add_argument("tableau")
    sub.add_argument("--bound", type=positive, default=None)

    for name, handler, text in (
        ("gpoly", cmd_gpoly, "stable Grothendieck polynomial G_lambda"),
        ("jpoly", cmd_jpoly, "weak set-valued generating function J_lambda"),
    ):
        sub = add(name, handler, text)
        sub.add_argument("shape", type=partition)
        window(sub)

    sub = add("lpoly", cmd_lpoly, "multi-fundamental quasisymmetric function L_alpha")
    sub.add_argument("composition", type=composition)
    window(sub)

    sub = add("expand-product", cmd_expand_product, "G-expansion of G_lambda * G_mu")
    sub.add_argument("first", type=partition)
    sub.add_argument("second", type=partition)
    window(sub)

    sub = add("coproduct-g", cmd_coproduct_g, "G (x) G expansion of Delta(G_nu)")
    sub.add_argument("shape", type=partition)
    window(sub)
    sub.add_argument("--joint", type=natural, default=None, help="joint degree cap (default: 2d)")

    sub = add("phi", cmd_phi, "quasisymmetric series of a K-Knuth class")
    sub.add_argument("word", type=word)
    window(sub)
    sub.add_argument("--bound", type=positive, default=None)

    sub = add("lr", cmd_lr, "K-theoretic Littlewood-Richardson coefficients")
    sub.add_argument("lam", type=partition)
    sub.add_argument("mu", type=partition)
    sub.add_argument("--nu", type=partition, default=None)
    sub.add_argument("--max-extra", type=natural, default=2)
    urt_option(sub)
    sub.add_argument("--verify", action="store_true", help="compare with the polynomial oracle")
    window(sub, required=False)

    sub = add("lr-table", cmd_lr_table, "all nonzero coefficients up to |lambda|+|mu|+max_extra")
    sub.add_argument("lam", type=partition)
    sub.add_argument("mu", type=partition)
    sub.add_argument("--max-extra", type=natural, default=2)
    urt_option(sub)

    sub = add("dual-lr", cmd_dual_lr, "K-theoretic coproduct coefficients")
    sub.add_argument("nu", type=partition)
    sub.add_argument("lam", type=partition)
    sub.add_argument("mu", type=partition)
    urt_option(sub)
    sub.add_argument("--verify", action="store_true", help="compare with the polynomial oracle")
    window(sub, required=False)
    sub.add_argument("--joint", type=natural, default=None)

    sub = add("dual-lr-table", cmd_dual_lr_table, "all nonzero coproduct coefficients of a URT")
    sub.add_argument("nu", type=partition)
    urt_option(sub)

    sub = add("verify", cmd_verify, "run the named worked examples")
    sub.add_argument(
        "--reference-examples", "--paper-examples", dest="reference_examples",
        action="store_true", help="also run the slow oracle checks and sweeps",
    )
    sub.add_argument("--check", action="append", metavar="NAME", help="run only this check")
    sub.add_argument("--list", action="store_true", help="list the checks and exit")

    settings = get_settings()
    sub = add("serve", cmd_serve, "serve the HTTP API")
    sub.add_argument("--host", default=settings.host)
    sub.add_argument("--port", type=positive, default=settings.http_port)

    return parser


def emit(result: CommandResult, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.buffer.write(dumps(result.payload))
    else:
        sys.stdout.write(result.text + "\n")
    sys.stdout.flush()


def _resolve_urt(args: argparse.Namespace) -> None:
    if isinstance(getattr(args, "urt", None), str):
        args.urt = read_urt_choice(args.urt)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE

    setup_logging(args.log_level)
    engine = KheckeEngine(jobs=args.jobs)
    try:
        _resolve_urt(args)
        result = args.handler(args, engine)
    except NotURTError as exc:
        logger.error("URT precondition failed", error=str(exc))
        print(f"khecke: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except SearchBoundError as exc:
        print(f"khecke: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except (KheckeError, OSError, KeyError) as exc:
        print(f"khecke: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(result, args.format)
    return result.exit_code


def main() -> None:
    sys.exit(run())
