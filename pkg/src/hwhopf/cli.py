"""``hwhopf`` command line.

Exit codes: 0 success, 1 a property check failed, 2 bad input (parse error,
unreadable file, bad configuration), 3 the rewrite engine and the structure
constants disagree, 4 a size guard refused the computation.

Limits come from, in increasing precedence: built-in defaults, a ``key=value``
config file (``--config`` or ``HWHOPF_CONFIG``), ``HWHOPF_*`` environment
variables, command-line flags.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from typing import Mapping, Optional, Sequence

from . import checks
from .composition import Matching, check_matching, compose, enumerate_matchings, matching_count
from .config import Limits, using_limits
from .corpus import corpus
from .envelope import HWPolynomial, PBWPolynomial, normal_order_word, project_pi, word_polynomial
from .diagram import Diagram
from .errors import DiagramError, InvalidMatching, ParseError, SizeGuardExceeded
from .galgebra import DiagramSum, product
from .hopf import TensorSum, antipode, coproduct, counit, decompositions
from .morphism import phi, phi_bar
from .textio import (
    format_diagram,
    format_sum_text,
    format_tensor_text,
    parse_diagram,
    parse_word,
    render_dot,
    diagram_to_json,
    serialize_sum,
)

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_MISMATCH = 3
EXIT_GUARD = 4

OUTPUTS = ("text", "json", "dot")
ENV_PREFIX = "HWHOPF_"
LIMIT_KEYS = tuple(f.name for f in fields(Limits))


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    limits: Limits = Limits()
    output: str = "text"


def _apply(config: Config, values: Mapping[str, str], where: str) -> Config:
    limits = {}
    output = config.output
    for key, raw in values.items():
        key = key.strip().lower().replace("-", "_")
        raw = raw.strip()
        if key == "output":
            if raw not in OUTPUTS:
                raise ConfigError(f"{where}: output must be one of {', '.join(OUTPUTS)}")
            output = raw
        elif key in LIMIT_KEYS:
            try:
                limits[key] = int(raw)
            except ValueError:
                raise ConfigError(f"{where}: {key} must be an integer, got {raw!r}") from None
        else:
            raise ConfigError(f"{where}: unknown setting {key!r}")
    try:
        return Config(replace(config.limits, **limits), output)
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def read_config_file(path: str) -> dict[str, str]:
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    for n, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, value = line.split("=", 1)
        values[key] = value
    return values


def resolve_config(args: argparse.Namespace, environ: Mapping[str, str]) -> Config:
    config = Config()
    path = args.config or environ.get(ENV_PREFIX + "CONFIG")
    if path:
        config = _apply(config, read_config_file(path), path)
    env_values = {
        k[len(ENV_PREFIX):]: v
        for k, v in environ.items()
        if k.startswith(ENV_PREFIX) and k[len(ENV_PREFIX):].lower() in LIMIT_KEYS + ("output",)
    }
    config = _apply(config, env_values, "environment")
    flags = {}
    for key in LIMIT_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            flags[key] = str(value)
    if args.output is not None:
        flags["output"] = args.output
    return _apply(config, flags, "flags")


# -- output --------------------------------------------------------------------


def _emit(value, output: str) -> str:
    if output == "json":
        if isinstance(value, (DiagramSum, TensorSum, PBWPolynomial, HWPolynomial)):
            return serialize_sum(value)
        return json.dumps(value, indent=2) + "\n"
    if output == "dot" and isinstance(value, DiagramSum):
        if not value:
            return "// zero\n"
        blocks = []
        for i, (c, d) in enumerate(value.terms()):
            blocks.append(f"// coeff {c}\n" + render_dot(d, name=f"t{i}"))
        return "".join(blocks)
    if isinstance(value, DiagramSum):
        return format_sum_text(value)
    if isinstance(value, TensorSum):
        return format_tensor_text(value)
    return f"{value}\n"


def _read(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_diagram(data)
    except (ParseError, DiagramError) as exc:
        raise _InputError(f"{path}: {exc}") from None


class _InputError(Exception):
    pass


# -- commands --------------------------------------------------------------------


def cmd_normal_order(args, config: Config) -> int:
    try:
        terms = parse_word(args.expr)
    except ParseError as exc:
        raise _InputError(f"expression: {exc}") from None
    result = PBWPolynomial.zero()
    for c, word in terms:
        result = result + normal_order_word(word).scale(c)
    if args.oracle:
        check = PBWPolynomial.zero()
        for c, word in terms:
            check = check + word_polynomial(word).scale(c)
        if check != result:
            print(f"mismatch: rewriting gives {result}, structure constants give {check}", file=sys.stderr)
            return EXIT_MISMATCH
    value = project_pi(result) if args.project else result
    sys.stdout.write(_emit(value, config.output))
    return EXIT_OK


def parse_matching(text: str, upper: Diagram, lower: Diagram) -> Matching:
    """``i:j,...`` with ``i`` counting upper's incoming lines and ``j`` lower's
    outgoing lines, both in file order."""
    pairs = []
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        i, sep, j = chunk.partition(":")
        if not sep or not i.strip().isdigit() or not j.strip().isdigit():
            raise _InputError(f"matching: expected i:j, got {chunk!r}")
        i, j = int(i), int(j)
        if i >= len(upper.incoming) or j >= len(lower.outgoing):
            raise _InputError(f"matching: pair {i}:{j} is out of range")
        pairs.append((upper.incoming[i], lower.outgoing[j]))
    m = Matching.of(pairs)
    try:
        check_matching(upper, m, lower)
    except InvalidMatching as exc:
        raise _InputError(f"matching: {exc}") from None
    return m


def cmd_product(args, config: Config) -> int:
    upper, lower = _read(args.upper), _read(args.lower)
    if args.matching is not None:
        result = DiagramSum.of(compose(upper, parse_matching(args.matching, upper, lower), lower))
    else:
        result = product(upper, lower)
    sys.stdout.write(_emit(result, config.output))
    return EXIT_OK


def cmd_coproduct(args, config: Config) -> int:
    sys.stdout.write(_emit(coproduct(_read(args.file)), config.output))
    return EXIT_OK


def cmd_antipode(args, config: Config) -> int:
    sys.stdout.write(_emit(antipode(_read(args.file)), config.output))
    return EXIT_OK


def cmd_counit(args, config: Config) -> int:
    value = counit(_read(args.file))
    sys.stdout.write(_emit(str(value), config.output))
    return EXIT_OK


def cmd_phi(args, config: Config) -> int:
    d = _read(args.file)
    sys.stdout.write(_emit(phi_bar(d) if args.bar else phi(d), config.output))
    return EXIT_OK


def cmd_dot(args, config: Config) -> int:
    sys.stdout.write(render_dot(_read(args.file)))
    return EXIT_OK


def cmd_corpus(args, config: Config) -> int:
    with using_limits(max_vertices=max(config.limits.max_vertices, 2 * args.edges)):
        diagrams = corpus(args.edges)
        if config.output == "json":
            sys.stdout.write(json.dumps([diagram_to_json(d) for d in diagrams], indent=2) + "\n")
        elif config.output == "dot":
            sys.stdout.write("".join(render_dot(d, name=f"d{i}") for i, d in enumerate(diagrams)))
        else:
            sys.stdout.write("\n".join(format_diagram(d) for d in diagrams))
    return EXIT_OK


def _rows(rows: list[dict], output: str) -> None:
    if output == "json":
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
    else:
        for row in rows:
            sys.stdout.write(" ".join(f"{k}={v}" for k, v in row.items()) + "\n")


def cmd_count_matchings(args, config: Config) -> int:
    upper, lower = _read(args.upper), _read(args.lower)
    n_minus, n_plus = len(upper.incoming), len(lower.outgoing)
    rows = [
        {"size": i, "enumerated": len(enumerate_matchings(upper, lower, i)),
         "formula": matching_count(n_minus, n_plus, i)}
        for i in range(min(n_minus, n_plus) + 1)
    ]
    _rows(rows, config.output)
    return EXIT_OK


def cmd_count_decompositions(args, config: Config) -> int:
    """Decompositions tallied by the (outgoing, incoming, inner) counts of the left part."""
    d = _read(args.file)
    tally: dict[tuple[int, int, int], int] = {}
    for left, _ in decompositions(d):
        inner, incoming, outgoing = left.line_counts()
        key = (outgoing, incoming, inner)
        tally[key] = tally.get(key, 0) + 1
    rows: list[dict] = [
        {"outgoing": i, "incoming": j, "inner": k, "pairs": n} for (i, j, k), n in sorted(tally.items())
    ]
    rows.append({"total": sum(tally.values())})
    _rows(rows, config.output)
    return EXIT_OK


def cmd_count_classes(args, config: Config) -> int:
    with using_limits(max_vertices=max(config.limits.max_vertices, 2 * args.lines)):
        rows = [{"lines": n, "classes": len(corpus(n, n))} for n in range(args.lines + 1)]
    _rows(rows, config.output)
    return EXIT_OK


def cmd_check(args, config: Config) -> int:
    results = checks.run_suite(args.suite, args.corpus_edges)
    failed = False
    for r in results:
        print(r.line())
        for message in r.failures:
            print(f"  {message}")
        failed |= not r.passed
    total = sum(r.cases for r in results)
    print(f"{'FAILED' if failed else 'OK'}: {len(results)} checks, {total} cases")
    return EXIT_PROPERTY if failed else EXIT_OK


# -- parser ------------------------------------------------------------------------


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=OUTPUTS, default=None)
    common.add_argument("--config", default=None, help="key=value settings file")
    common.add_argument("--max-vertices", dest="max_vertices", type=_positive)
    common.add_argument("--antipode-edge-limit", dest="antipode_edge_limit", type=_positive)
    common.add_argument("--decomposition-edge-limit", dest="decomposition_edge_limit", type=_positive)
    limited = argparse.ArgumentParser(add_help=False, parents=[common])
    limited.add_argument("--max-edges", dest="max_edges", type=_positive)

    parser = argparse.ArgumentParser(prog="hwhopf", description="Heisenberg-Weyl diagram algebra")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normal-order", parents=[limited], help="normal-order an operator expression")
    p.add_argument("expr")
    p.add_argument("--oracle", action="store_true", help="cross-check against the structure constants")
    p.add_argument("--project", action="store_true", help="set e to 1")
    p.set_defaults(run=cmd_normal_order)

    p = sub.add_parser("product", parents=[limited], help="product UPPER * LOWER of two diagrams")
    p.add_argument("upper")
    p.add_argument("lower")
    p.add_argument("--matching", help="compose along one matching, e.g. 0:0,1:2")
    p.set_defaults(run=cmd_product)

    for name, run in (("coproduct", cmd_coproduct), ("antipode", cmd_antipode), ("counit", cmd_counit),
                      ("dot", cmd_dot)):
        p = sub.add_parser(name, parents=[limited], help=f"{name} of a diagram file")
        p.add_argument("file")
        p.set_defaults(run=run)

    p = sub.add_parser("phi", parents=[limited], help="operator monomial of a diagram")
    p.add_argument("file")
    p.add_argument("--bar", action="store_true", help="drop inner lines")
    p.set_defaults(run=cmd_phi)

    count = sub.add_parser("count", help="enumeration counts next to their formulas")
    what = count.add_subparsers(dest="what", required=True)
    p = what.add_parser("matchings", parents=[limited], help="matchings per size for UPPER * LOWER")
    p.add_argument("upper")
    p.add_argument("lower")
    p.set_defaults(run=cmd_count_matchings)
    p = what.add_parser("decompositions", parents=[limited], help="decompositions by line counts")
    p.add_argument("file")
    p.set_defaults(run=cmd_count_decompositions)
    p = what.add_parser("classes", parents=[limited], help="diagram classes per number of lines")
    p.add_argument("lines", type=int)
    p.set_defaults(run=cmd_count_classes)

    p = sub.add_parser("corpus", parents=[limited], help="all diagram classes up to a number of lines")
    p.add_argument("edges", type=int)
    p.set_defaults(run=cmd_corpus)

    p = sub.add_parser("check", parents=[common], help="run the property suites")
    p.add_argument("suite", nargs="?", default="all", choices=("all",) + checks.SUITES)
    p.add_argument("--max-edges", dest="corpus_edges", type=_positive,
                   help="largest corpus diagram used by the suites")
    p.set_defaults(run=cmd_check)
    return parser


def main(argv: Optional[Sequence[str]] = None, environ: Optional[Mapping[str, str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    environ = os.environ if environ is None else environ
    try:
        config = resolve_config(args, environ)
        with using_limits(**{k: getattr(config.limits, k) for k in LIMIT_KEYS}):
            return args.run(args, config)
    except (ConfigError, _InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeGuardExceeded as exc:
        print(f"size guard: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
