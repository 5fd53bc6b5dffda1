"""Command-line front end.

Exit status: 0 success, 1 unreadable or malformed input, 2 instance too
large (or out of scope) for an exhaustive method, 3 a certificate or
oracle cross-check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from circrank.graph import (
    InputError,
    SizeLimitExceeded,
    VoteGraph,
    format_rational,
    label_key,
    read_ballots,
    read_pairwise_csv,
    write_pairwise_csv,
)
from circrank.instances import random_vote_graph
from circrank.kemeny import DEFAULT_MAX_N, kemeny_exact, relax_kem
from circrank.minmax import DEFAULT_BUDGET, demonstrate_conflict, minmax_exact, read_fas, reduce_fas
from circrank.order import PartialOrder, conflicts, order_to_dot, transitive_closure
from circrank.strong import InfeasibleCirculation, algorithm1, check_strong_cs, perturbation

log = logging.getLogger("circrank")

METHODS = ("strong", "algorithm1", "kemeny", "relax-kem", "minmax", "compare")
EXIT_OK, EXIT_INPUT, EXIT_SIZE, EXIT_CERT = 0, 1, 2, 3


class CertificateFailure(RuntimeError):
    """A solver produced a result its own checks reject."""


@dataclass(frozen=True)
class RunConfig:
    input: str
    input_format: str = "pairwise"
    method: str = "strong"
    output_format: str = "json"
    oracle: bool = False
    max_n: int = DEFAULT_MAX_N
    limit: int = DEFAULT_BUDGET
    seed: int = 0
    output: str | None = None

    def validate(self, g: VoteGraph):
        """Refuse method/size combinations before any solving starts."""
        if self.method in ("kemeny", "compare") and g.n > self.max_n:
            raise SizeLimitExceeded(f"kemeny: {g.n} alternatives exceeds --max-n {self.max_n}")
        if self.method in ("minmax", "compare") and not g.is_integral():
            raise SizeLimitExceeded("minmax: only integral vote counts are supported")


# ------------------------------------------------------------------ helpers


def _r(q) -> str:
    return format_rational(Fraction(q))


def _arc(g: VoteGraph, a) -> str:
    return f"{g.label(a[0])}->{g.label(a[1])}"


def _arc_order(g: VoteGraph):
    return sorted(g.arcs, key=lambda a: (label_key(g.label(a[0])), label_key(g.label(a[1]))))


def _flow_doc(g: VoteGraph, x) -> dict:
    return {_arc(g, a): _r(x[a]) for a in _arc_order(g)}


def _pairs(pairs) -> list:
    return [[i, j] for i, j in pairs]


def _scores_order(g: VoteGraph, scores: dict) -> PartialOrder:
    arcs = [(a, b) for a in g.labels for b in g.labels if scores[a] > scores[b]]
    return transitive_closure(arcs, ground=g.labels)


def _load(cfg: RunConfig) -> VoteGraph:
    reader = read_ballots if cfg.input_format == "ballots" else read_pairwise_csv
    try:
        if cfg.input == "-":
            return reader(sys.stdin)
        with open(cfg.input, newline="") as fh:
            return reader(fh)
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input}: {exc.strerror}") from None


# ------------------------------------------------------------------ methods


def _run_strong(g: VoteGraph, method: str) -> tuple[dict, PartialOrder]:
    res = perturbation(g) if method == "strong" else algorithm1(g)
    order = transitive_closure(g.labelled(res.strong_arcs), ground=g.labels)
    doc = {
        "method": method,
        "order": _pairs(order.relation),
        "strong_arcs": _pairs(res.labelled_strong_arcs()),
        "value": _r(res.max_value),
        "circulation": _flow_doc(g, res.circulation),
    }
    if res.duals is not None:
        try:
            cert = check_strong_cs(g, res.circulation, res.duals)
        except InfeasibleCirculation as exc:
            raise CertificateFailure(str(exc)) from None
        doc["certificate"] = {
            "duals": {str(g.label(v)): _r(res.duals[v]) for v in sorted(range(g.n), key=lambda v: label_key(g.label(v)))},
            "verdict": "pass" if cert.verdict else "fail",
        }
        if not cert.verdict:
            a, cond = cert.violation
            raise CertificateFailure(f"strong slackness condition {cond} fails on {_arc(g, a)}")
    return doc, order


def _run_kemeny(g: VoteGraph, cfg: RunConfig, with_kemeny: bool = True) -> tuple[dict, PartialOrder]:
    doc = {}
    order = None
    if with_kemeny:
        kem = kemeny_exact(g, max_n=cfg.max_n)
        doc["kemeny"] = {"weight": _r(kem.removed_weight), "orders": [list(p) for p in kem.best_orders]}
        first = kem.best_orders[0]
        order = transitive_closure(list(zip(first, first[1:])), ground=g.labels)
    rk = relax_kem(g)
    doc["relax_kem"] = {
        "objective": _r(rk.objective),
        "scores": {str(k): _r(rk.scores[k]) for k in sorted(rk.scores, key=label_key)},
    }
    if order is None:
        order = _scores_order(g, rk.scores)
    return doc, order


def _run_minmax(g: VoteGraph, cfg: RunConfig) -> tuple[dict, PartialOrder]:
    res = minmax_exact(g, budget=cfg.limit)
    doc = {
        "minmax": {
            "weight": _r(res.weight),
            "circulations": [_flow_doc(g, x) for x in res.circulations],
            "conflicts": [
                {"circulations": [k, l], "pairs": _pairs(p)} for k, l, p in res.conflict_report()
            ],
        }
    }
    return doc, res.order(0)


def _run_compare(g: VoteGraph, cfg: RunConfig) -> tuple[dict, PartialOrder]:
    strong_doc, order = _run_strong(g, "strong")
    alt = transitive_closure(g.labelled(algorithm1(g).strong_arcs), ground=g.labels)
    mm = minmax_exact(g, budget=cfg.limit)
    demo = demonstrate_conflict(g, budget=cfg.limit)
    kem_doc, _ = _run_kemeny(g, cfg)
    doc = {
        "strong": {
            "order": strong_doc["order"],
            "value": strong_doc["value"],
            # both strong routes must give the same order; any pair here is a bug
            "conflicts": _pairs(conflicts(order, alt) + conflicts(alt, order)),
        },
        "minmax": {
            "weight": _r(mm.weight),
            "optima": len(mm.circulations),
            "conflict": None,
        },
        "kemeny": kem_doc["kemeny"]["weight"],
        "relax_kem": kem_doc["relax_kem"]["objective"],
    }
    if demo is not None:
        x1, x2, pair = demo
        doc["minmax"]["conflict"] = {
            "pair": list(pair),
            "circulations": [_flow_doc(g, x1), _flow_doc(g, x2)],
        }
    if doc["strong"]["conflicts"]:
        raise CertificateFailure("perturbation and algorithm1 disagree on the strong order")
    return doc, order


def _oracle_section(g: VoteGraph, doc: dict) -> dict:
    from circrank.mcnf import max_circulation
    from circrank.oracle import oracle_max_circulation_value, oracle_strong_arcs

    try:
        value = oracle_max_circulation_value(g)
        arcs = oracle_strong_arcs(g)
    except SizeLimitExceeded as exc:
        return {"status": "skipped", "reason": str(exc)}
    strong = perturbation(g).strong_arcs
    agrees = value == max_circulation(g).value and arcs == set(strong)
    return {
        "status": "agree" if agrees else "disagree",
        "value": _r(value),
        "strong_arcs": _pairs(g.labelled(arcs)),
    }


def solve(g: VoteGraph, cfg: RunConfig) -> tuple[dict, PartialOrder]:
    cfg.validate(g)
    if cfg.method in ("strong", "algorithm1"):
        return _run_strong(g, cfg.method)
    if cfg.method == "kemeny":
        return _run_kemeny(g, cfg)
    if cfg.method == "relax-kem":
        return _run_kemeny(g, cfg, with_kemeny=False)
    if cfg.method == "minmax":
        return _run_minmax(g, cfg)
    return _run_compare(g, cfg)


# ------------------------------------------------------------------ rendering


def _text_lines(doc, indent: int = 0) -> list[str]:
    pad = "  " * indent
    out = []
    for key, val in doc.items():
        if isinstance(val, dict):
            out.append(f"{pad}{key}:")
            out.extend(_text_lines(val, indent + 1))
        elif isinstance(val, list) and not val:
            out.append(f"{pad}{key}: none")
        elif isinstance(val, list) and not isinstance(val[0], (list, dict)):
            out.append(f"{pad}{key}: " + ", ".join(map(str, val)))
        elif isinstance(val, list) and all(isinstance(p, list) and len(p) == 2 for p in val):
            out.append(f"{pad}{key}: " + ", ".join(f"{a}>{b}" for a, b in val))
        elif isinstance(val, list):
            out.append(f"{pad}{key}:")
            for k, item in enumerate(val):
                if isinstance(item, dict):
                    out.append(f"{pad}  [{k}]")
                    out.extend(_text_lines(item, indent + 2))
                else:
                    out.append(f"{pad}  {' > '.join(map(str, item)) if isinstance(item, list) else item}")
        else:
            out.append(f"{pad}{key}: {'-' if val is None else val}")
    return out


def render(doc: dict, order: PartialOrder, fmt: str, oracle: dict | None = None) -> str:
    if fmt == "json":
        if oracle is not None:
            doc = {**doc, "oracle": oracle}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "dot":
        text = order_to_dot(order)
        if oracle is not None:
            text += "".join(f"// oracle {line}\n" for line in _text_lines(oracle))
        return text
    lines = _text_lines(doc)
    if oracle is not None:
        lines.append("oracle:")
        lines.extend(_text_lines(oracle, 1))
    return "\n".join(lines) + "\n"


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


# ------------------------------------------------------------------ commands


def cmd_aggregate(cfg: RunConfig) -> int:
    g = _load(cfg)
    log.info("loaded %d alternatives, %d arcs", g.n, g.m)
    doc, order = solve(g, cfg)
    oracle = _oracle_section(g, doc) if cfg.oracle else None
    _emit(render(doc, order, cfg.output_format, oracle), cfg.output)
    if oracle is not None and oracle["status"] == "disagree":
        raise CertificateFailure("oracle cross-check disagrees with the solver")
    return EXIT_OK


def cmd_reduce_fas(path: str, output: str | None) -> int:
    try:
        if path == "-":
            inst = read_fas(sys.stdin)
        else:
            with open(path) as fh:
                inst = read_fas(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    red = reduce_fas(inst)
    text = write_pairwise_csv(red.graph, comments=[f"K' = {red.k_prime}"])
    _emit(text, output)
    return EXIT_OK


def cmd_rand(seed: int, index: int, n_min: int, n_max: int, p: float, output: str | None) -> int:
    rng = random.Random(seed)
    for _ in range(index):
        random_vote_graph(rng, n_min, n_max, p)
    g = random_vote_graph(rng, n_min, n_max, p)
    # isolated nodes are invisible in the pairwise format
    _emit(write_pairwise_csv(g, comments=[f"seed={seed} index={index} n={g.n}"]), output)
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _add_common(p: argparse.ArgumentParser, method: bool):
    p.add_argument("input", help="input file, or - for stdin")
    p.add_argument("--format", dest="input_format", choices=("pairwise", "ballots"), default="pairwise",
                   help="input format (default: pairwise CSV)")
    if method:
        p.add_argument("--method", choices=METHODS, default="strong")
    p.add_argument("--output-format", "--to", dest="output_format", choices=("json", "dot", "text"), default="json")
    p.add_argument("--oracle", action="store_true", help="append an exhaustive-search cross-check")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="largest alternative count for Kemeny")
    p.add_argument("--limit", type=int, default=DEFAULT_BUDGET, help="search-node budget for minmax")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circrank", description="Rank aggregation by strong maximum circulation removal.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _add_common(sub.add_parser("aggregate", help="strong partial order (or --method)"), method=True)
    for name in ("kemeny", "minmax", "compare"):
        _add_common(sub.add_parser(name, help=f"shorthand for aggregate --method {name}"), method=False)
    p = sub.add_parser("reduce-fas", help="feedback arc set instance to minmax instance")
    p.add_argument("input")
    p.add_argument("--output", "-o", default=None)
    p = sub.add_parser("rand", help="seeded random vote graph as pairwise CSV")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", type=int, default=0, help="take the k-th graph of the seeded stream")
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--output", "-o", default=None)
    return parser


def _setup_logging():
    level = os.environ.get("CIRCRANK_LOG")
    if level:
        logging.basicConfig(stream=sys.stderr, level=level.upper(), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _setup_logging()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code or 0
    try:
        if args.command == "reduce-fas":
            return cmd_reduce_fas(args.input, args.output)
        if args.command == "rand":
            return cmd_rand(args.seed, args.index, args.n_min, args.n_max, args.p, args.output)
        cfg = RunConfig(
            input=args.input,
            input_format=args.input_format,
            method=getattr(args, "method", args.command),
            output_format=args.output_format,
            oracle=args.oracle,
            max_n=args.max_n,
            limit=args.limit,
            seed=args.seed,
            output=args.output,
        )
        return cmd_aggregate(cfg)
    except InputError as exc:
        print(f"circrank: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeLimitExceeded as exc:
        print(f"circrank: size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (CertificateFailure, AssertionError) as exc:
        print(f"circrank: certificate failure: {exc}", file=sys.stderr)
        return EXIT_CERT


if __name__ == "__main__":
    sys.exit(main())
