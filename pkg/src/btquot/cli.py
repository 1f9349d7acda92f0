"""Command-line front end.

Subcommands: compute (build, verify and export the quotient graph),
reduce (move a tree vertex into the domain), present (print the
generators and relations), word (express a unit in the generators),
hom (print a basis of the hom space between two vertices), verify
(run the structural checks), export (re-emit a cached graph in another
format).

Exit codes: 0 success, 1 verification failure, 2 user error, 70
internal assertion failure.  Output is deterministic: repeated runs
with the same arguments produce identical bytes, and computed graphs
are cached on disk keyed by the field, the ramified primes, and the
serialization format version.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

from . import tree
from .algebra import GF, field, format_poly, parse_poly
from .homspace import hom
from .quaternion import build_algebra, format_quat, parse_quat
from .quotient import (QuotientGraph, compute_quotient, express_in_generators,
                       presentation, reduce, transport, verify_structure)
from .serialize import (FORMAT_VERSION, graph_from_json, graph_to_dot,
                        graph_to_json, graph_to_text)
from .tree import format_vertex, parse_vertex

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USER = 2
EXIT_INTERNAL = 70


@dataclass
class JobConfig:
    """Everything a subcommand needs to know, parsed and validated."""

    q: int
    primes: list[tuple]
    fmt: str = "text"
    output: str | None = None
    verify: bool = True
    degree_bound: bool = True
    precision_cap: int | None = None
    threads: int = 1
    cache_dir: str | None = None
    use_cache: bool = True
    extra: list[str] = dataclass_field(default_factory=list)

    @property
    def F(self) -> GF:
        return field(self.q)


def _parse_config(args) -> JobConfig:
    F = field(args.q)
    raw = [t for t in (args.primes or "").split(",") if t.strip()]
    if not raw:
        raise ValueError("--primes must list at least two polynomials")
    primes = []
    for tok in raw:
        try:
            primes.append(parse_poly(F, tok.strip()))
        except ValueError as exc:
            raise ValueError(f"bad prime {tok.strip()!r}: {exc}") from None
    return JobConfig(
        q=args.q, primes=primes, fmt=args.format, output=args.output,
        verify=not args.no_verify, degree_bound=not args.no_degree_bound,
        precision_cap=args.precision_cap, threads=args.threads,
        cache_dir=args.cache_dir, use_cache=not args.no_cache,
        extra=getattr(args, "args", []))


def _cache_path(cfg: JobConfig) -> Path:
    root = Path(cfg.cache_dir) if cfg.cache_dir else \
        Path(os.environ.get("BTQUOT_CACHE_DIR",
                            Path.home() / ".cache" / "btquot"))
    F = cfg.F
    key = f"v{FORMAT_VERSION}|q{cfg.q}|" + \
        ",".join(format_poly(F, p) for p in cfg.primes)
    name = hashlib.sha256(key.encode()).hexdigest()[:20]
    return root / f"graph-{name}.json"


def _build_graph(cfg: JobConfig) -> QuotientGraph:
    path = _cache_path(cfg)
    if cfg.use_cache and path.is_file():
        return graph_from_json(path.read_text())
    alg = build_algebra(cfg.F, cfg.primes, enforce_bound=cfg.degree_bound)
    G = compute_quotient(alg, threads=cfg.threads)
    if cfg.use_cache:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(graph_to_json(G))
        tmp.replace(path)
    return G


def _emit(cfg: JobConfig, text: str) -> None:
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)


def _render(G: QuotientGraph, fmt: str) -> str:
    if fmt == "json":
        return graph_to_json(G)
    if fmt == "dot":
        return graph_to_dot(G)
    if fmt == "text":
        return graph_to_text(G)
    raise ValueError(f"unknown format {fmt!r}")


def cmd_compute(cfg: JobConfig) -> int:
    G = _build_graph(cfg)
    _emit(cfg, _render(G, cfg.fmt))
    if not cfg.verify:
        return EXIT_OK
    rep = verify_structure(G.alg, G)
    for line in rep.lines():
        print(line, file=sys.stderr)
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_verify(cfg: JobConfig) -> int:
    G = _build_graph(cfg)
    rep = verify_structure(G.alg, G)
    print("\n".join(rep.lines()))
    print(f"vertices={rep.vertex_count} edges={rep.undirected_edge_count} "
          f"paired={rep.paired_count} diameter={rep.diameter} "
          f"two-cycles={rep.two_cycle_pairs}")
    return EXIT_OK if rep.passed else EXIT_VERIFY


def cmd_export(cfg: JobConfig) -> int:
    G = _build_graph(cfg)
    _emit(cfg, _render(G, cfg.fmt))
    return EXIT_OK


def cmd_reduce(cfg: JobConfig) -> int:
    if len(cfg.extra) != 1:
        raise ValueError("reduce takes exactly one vertex argument, "
                         "e.g. \"(4; 0)\"")
    v = parse_vertex(cfg.F, cfg.extra[0])
    G = _build_graph(cfg)
    w, g = reduce(G, v)  # self-checks v = g . w
    print(f"w = {format_vertex(w)}")
    print(f"gamma = {format_quat(cfg.F, g)}")
    return EXIT_OK


def cmd_present(cfg: JobConfig) -> int:
    G = _build_graph(cfg)
    pres = presentation(G)
    print(f"generators ({1 + len(pres.vertex_gens) + len(pres.edge_gens)}):")
    for name, g in pres.generator_items():
        print(f"  {name} = {format_quat(cfg.F, g)}")
    print("relations:")
    for rel in pres.relation_strings():
        print(f"  {rel}")
    return EXIT_OK


def cmd_word(cfg: JobConfig) -> int:
    if len(cfg.extra) != 1:
        raise ValueError("word takes exactly one element argument, "
                         "e.g. \"1\" or \"T + (1)*i + (0)*j + (0)*k\"")
    gamma = parse_quat(cfg.F, cfg.extra[0])
    G = _build_graph(cfg)
    alg = G.alg
    if not alg.is_unit(gamma):
        raise ValueError("nrd not in F_q^*")
    word = express_in_generators(G, gamma)  # verified internally
    print(str(word))
    return EXIT_OK


def cmd_hom(cfg: JobConfig) -> int:
    if len(cfg.extra) != 2:
        raise ValueError("hom takes exactly two vertex arguments")
    v = parse_vertex(cfg.F, cfg.extra[0])
    w = parse_vertex(cfg.F, cfg.extra[1])
    alg = build_algebra(cfg.F, cfg.primes, enforce_bound=cfg.degree_bound)
    hs = hom(alg, v, w)
    print(f"dim = {hs.dim}, cardinality = {hs.cardinality}")
    for b in hs.basis:
        print(f"  {format_quat(cfg.F, b)}")
    return EXIT_OK


_COMMANDS = {
    "compute": cmd_compute,
    "reduce": cmd_reduce,
    "present": cmd_present,
    "word": cmd_word,
    "hom": cmd_hom,
    "verify": cmd_verify,
    "export": cmd_export,
}


def _make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="btquot",
        description="Quotient graphs for unit groups of quaternion "
                    "orders over F_q[T] acting on the tree at infinity.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, help_text in [
            ("compute", "build, verify and export the quotient graph"),
            ("reduce", "move a tree vertex into the fundamental domain"),
            ("present", "print the generators and relations"),
            ("word", "express a unit as a word in the generators"),
            ("hom", "print a basis of the hom space of two vertices"),
            ("verify", "run the structural verification"),
            ("export", "re-emit the (cached) graph in a format")]:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--q", type=int, required=True,
                       help="field size (odd prime power)")
        p.add_argument("--primes", required=True,
                       help="comma-separated monic irreducibles, "
                            "e.g. T,T+1,T+2,T+3")
        p.add_argument("--format", choices=["json", "dot", "text"],
                       default="text")
        p.add_argument("--output", help="write the artifact here "
                                        "instead of stdout")
        p.add_argument("--no-verify", action="store_true",
                       help="skip the structural checks after compute")
        p.add_argument("--no-degree-bound", action="store_true",
                       help="do not enforce the degree bound in the "
                            "alpha search")
        p.add_argument("--precision-cap", type=int,
                       help="cap for the adaptive series precision")
        p.add_argument("--threads", type=int, default=1,
                       help="thread pool size for hom solves")
        p.add_argument("--cache-dir", help="graph cache directory")
        p.add_argument("--no-cache", action="store_true",
                       help="neither read nor write the graph cache")
        if name in ("reduce", "word", "hom"):
            p.add_argument("args", nargs="*",
                           help="positional arguments of the subcommand")
    return ap


def main(argv=None) -> int:
    ap = _make_parser()
    args = ap.parse_args(argv)
    try:
        cfg = _parse_config(args)
        if cfg.precision_cap is not None:
            if cfg.precision_cap < 4:
                raise ValueError("--precision-cap must be at least 4")
            tree.DEFAULT_PRECISION_CAP = cfg.precision_cap
        return _COMMANDS[args.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER
    except (AssertionError, RuntimeError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
