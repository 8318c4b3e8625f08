"""Command-line interface: ``linegeom generate|analyze|cliques|check-map|autos``.

Exit codes: 0 ok, 1 validation, 2 hypothesis violated, 3 dimension too
small, 4 budget or size cap exceeded.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections import Counter
from dataclasses import dataclass

from . import chow, formats, generators, incidence, pluecker
from .errors import FormatError, LineGeomError, PreconditionViolated

log = logging.getLogger("linegeom")

EXIT_OK, EXIT_VALIDATION, EXIT_HYPOTHESIS, EXIT_DIMENSION, EXIT_BUDGET = 0, 1, 2, 3, 4
BUDGET_ENV = "LINEGEOM_BUDGET"


@dataclass
class RunConfig:
    max_points: int = generators.MAX_POINTS
    max_lines: int | None = None  # None: the command's own default cap
    node_budget: int = incidence.DEFAULT_NODE_BUDGET
    workers: int = 1
    out: str | None = None
    format_version: str = "1"

    def __post_init__(self):
        for name in ("max_points", "node_budget", "workers"):
            if getattr(self, name) <= 0:
                raise PreconditionViolated(f"{name} must be positive")
        if self.max_lines is not None and self.max_lines <= 0:
            raise PreconditionViolated("max_lines must be positive")
        version = self.format_version.rsplit("/", 1)[-1]
        if version != "1" or (
            "/" in self.format_version and self.format_version not in formats.SUPPORTED_FORMATS
        ):
            raise FormatError(f"unsupported format version {self.format_version!r}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        budget = args.node_budget
        if budget is None:
            env = os.environ.get(BUDGET_ENV)
            budget = int(env) if env else incidence.DEFAULT_NODE_BUDGET
        return cls(
            max_lines=args.max_lines,
            node_budget=budget,
            workers=args.workers,
            out=args.out,
            format_version=args.format_version,
        )


def _emit(cfg: RunConfig, doc) -> None:
    """Report JSON goes to --out if given, otherwise to stdout."""
    if cfg.out:
        formats.write_json(cfg.out, doc)
    else:
        sys.stdout.write(formats.dumps(doc))


def _say(cfg: RunConfig, text: str) -> None:
    # keep stdout clean for the JSON report when it goes there
    print(text, file=sys.stdout if cfg.out else sys.stderr)


def cmd_generate(args, cfg: RunConfig) -> int:
    family = args.family
    if family == "pg":
        labeled = generators.generate_pg(args.n, args.q, cfg.max_points, cfg.max_lines or generators.MAX_LINES)
    elif family == "ag":
        labeled = generators.generate_ag(args.n, args.q, cfg.max_points, cfg.max_lines or generators.MAX_LINES)
    elif family == "complete":
        labeled = generators.generate_complete(args.n)
    else:
        labeled = generators.generate_near_pencil(args.n)
    space = labeled.space
    _emit(cfg, formats.space_to_doc(space))
    if cfg.out:
        formats.write_json(formats.sidecar_path(cfg.out), formats.sidecar_doc(labeled))
    _say(cfg, f"points {space.point_count}")
    _say(cfg, f"lines {space.line_count}")
    return EXIT_OK


def cmd_analyze(args, cfg: RunConfig) -> int:
    space = formats.load_space(args.file)
    budget = cfg.node_budget
    exchange = incidence.is_exchange_space(space, budget)
    dim = incidence.dimension(space, budget)
    gp = incidence.is_generalized_projective_space(space)
    n_planes = len(incidence.planes(space))
    print(f"points {space.point_count}")
    print(f"lines {space.line_count}")
    print(f"dimension {dim}")
    print(f"exchange {str(exchange.holds).lower()}" + ("" if exchange else f" witness {list(exchange.witness)}"))
    print(f"generalized-projective {str(gp.holds).lower()}" + ("" if gp else f" witness {list(gp.witness)}"))
    print(f"planes {n_planes}")
    return EXIT_OK


def cmd_cliques(args, cfg: RunConfig) -> int:
    space = formats.load_space(args.file)
    sets = pluecker.maximal_related_sets(space, cfg.max_lines or pluecker.MAX_CLIQUE_LINES)
    _emit(cfg, formats.cliques_doc(sets))
    hist = Counter((M.kind, len(M.lines)) for M in sets)
    for kind in ("star", "coplanar", "other"):
        n = sum(c for (k, _), c in hist.items() if k == kind)
        sizes = ",".join(f"{s}x{c}" for (k, s), c in sorted(hist.items()) if k == kind)
        _say(cfg, f"{kind} {n}" + (f" (size x count: {sizes})" if sizes else ""))
    _say(cfg, f"total {len(sets)}")
    return EXIT_OK


def cmd_check_map(args, cfg: RunConfig) -> int:
    source, target, image = formats.load_line_map(args.file)
    m = chow.LineMap(source, target, tuple(image))
    res = chow.check_adjacency_preserving(m)
    if not res:
        a, b = res.witness
        print(f"adjacency not preserved: lines {a} and {b}", file=sys.stderr)
        print(f"witness {a} {b}")
        return EXIT_HYPOTHESIS
    verdict = chow.classify_map(m)
    _emit(cfg, formats.verdict_doc(verdict))
    return EXIT_OK


def cmd_autos(args, cfg: RunConfig) -> int:
    space = formats.load_space(args.file)
    tally = chow.enumerate_automorphisms(
        space,
        mode="count",
        budget=cfg.node_budget,
        max_lines=cfg.max_lines or chow.MAX_AUTOMORPHISM_LINES,
        classify=not args.count_only,
        workers=cfg.workers,
    )
    if args.count_only:
        print(f"total {tally.total}")
    elif tally.classified:
        print(f"total {tally.total} = {tally.collineation} collineation + {tally.correlation} correlation")
    else:
        print(f"total {tally.total} (dim < 3: unclassified)")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON output to this file")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--max-lines", type=int, default=None, help="line cap for this command")
    common.add_argument("--node-budget", type=int, default=None, help=f"search budget (env {BUDGET_ENV})")
    common.add_argument("--format-version", default="1")

    parser = argparse.ArgumentParser(prog="linegeom", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", parents=[common], help="write a canonical test geometry")
    gen.add_argument("family", choices=["pg", "ag", "complete", "near-pencil"])
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--q", type=int, default=None)
    gen.set_defaults(func=cmd_generate)

    for name, func, text in (
        ("analyze", cmd_analyze, "dimension, exchange axiom, projectivity, planes"),
        ("cliques", cmd_cliques, "classified maximal related sets (cliques/1)"),
        ("check-map", cmd_check_map, "verdict for a line-map/1 file"),
        ("autos", cmd_autos, "count adjacency-preserving line bijections"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("file")
        p.set_defaults(func=func)
        if name == "autos":
            mode = p.add_mutually_exclusive_group()
            mode.add_argument("--count-only", action="store_true")
            mode.add_argument("--classify", action="store_true", help="default")
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_args(args)
        if args.command == "generate" and args.family in ("pg", "ag") and args.q is None:
            raise PreconditionViolated("--q is required for pg and ag")
        return args.func(args, cfg)
    except LineGeomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
