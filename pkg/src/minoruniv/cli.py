"""Command line front end.

Exit codes: 0 success, 1 unreadable input, 2 domain error (error JSON on
stdout), 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .cliquesum import CliqueSumTree, decompose, normalize_mode, random_clique_sum, recompose
from .degree_bound import boundify
from .embedding import RotationSystem, planar_embed
from .errors import ForbiddenMinorPresent, GraphError, ParseError, SearchBudgetExceeded
from .fatten import blowup_subcubic, fatten
from .graph import Graph, complete_bipartite, complete_graph, parse_graph
from .minor import DEFAULT_BUDGET, MinorCertificate, find_minor
from .twins import RootedTree, build_t_prime
from .universal import embed_in_universal

VERBS = ("decompose", "recompose", "fatten", "blowup", "boundify", "minor", "embed-universal", "tprime", "gen-corpus")
PALETTE = ["#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628", "#f781bf", "#999999"]


@dataclass
class RunConfig:
    verb: str
    inputs: list[str] = field(default_factory=list)
    output: str | None = None
    mode: str = "K5"
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    fmt: str = "text"
    pattern: str = "k5"
    rotation: str | None = None
    length: int = 4
    count: int = 10
    max_vertices: int = 40
    pieces: int = 4

    def __post_init__(self) -> None:
        if self.verb not in VERBS:
            raise ValueError(f"unknown verb {self.verb!r}")
        if self.budget <= 0:
            raise ValueError("budget must be positive")
        self.mode = normalize_mode(self.mode)
        if self.fmt not in ("text", "json", "dot"):
            raise ValueError(f"unknown format {self.fmt!r}")


def export_dot(g: Graph, certificate: MinorCertificate | None = None, labels: dict[int, str] | None = None, name: str = "G") -> str:
    """Undirected DOT text; a certificate's branch sets become coloured clusters."""
    lines = [f"graph {name} {{"]
    placed: set[int] = set()
    if certificate is not None:
        for i, (p, bs) in enumerate(sorted(certificate.branch_sets.items())):
            colour = PALETTE[i % len(PALETTE)]
            lines.append(f"  subgraph cluster_{p} {{")
            lines.append(f'    label="{p}"; color="{colour}";')
            for v in sorted(bs):
                lines.append(f'    {v} [color="{colour}"];')
                placed.add(v)
            lines.append("  }")
    for v in g.vertices:
        if labels and v in labels:
            lines.append(f'  {v} [label="{labels[v]}"];')
        elif v not in placed:
            lines.append(f"  {v};")
    for u, v in g.sorted_edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- helpers -------------------------------------------------------------------

def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _graph(cfg: RunConfig, i: int = 0) -> Graph:
    if len(cfg.inputs) <= i:
        raise ParseError("missing input file")
    return parse_graph(_read(cfg.inputs[i]))


def _render_graph(g: Graph, cfg: RunConfig, cert: MinorCertificate | None = None) -> str:
    if cfg.fmt == "json":
        return g.to_json() + "\n"
    if cfg.fmt == "dot":
        return export_dot(g, cert)
    return g.to_text()


def _emit(cfg: RunConfig, files: dict[str, str], main: str) -> None:
    """Write every artifact under ``cfg.output`` (a directory) or print the main one."""
    if cfg.output is None:
        sys.stdout.write(files[main])
        return
    out = Path(cfg.output)
    if len(files) == 1:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(files[main])
        return
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text)


def _dump(obj: Any) -> str:
    return json.dumps(obj, indent=1, sort_keys=True) + "\n"


def _pattern(cfg: RunConfig) -> Graph:
    name = cfg.pattern.lower()
    if name == "k5":
        return complete_graph(5)
    if name in ("k33", "k3,3"):
        return complete_bipartite(3, 3)
    return parse_graph(_read(cfg.pattern))


# -- verbs ---------------------------------------------------------------------

def _decompose(cfg: RunConfig) -> None:
    t = decompose(_graph(cfg), cfg.mode, cfg.budget)
    _emit(cfg, {"decomposition.json": _dump(t.to_dict())}, "decomposition.json")


def _recompose(cfg: RunConfig) -> None:
    try:
        t = CliqueSumTree.from_dict(json.loads(_read(cfg.inputs[0])))
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise ParseError("bad decomposition JSON") from exc
    _emit(cfg, {"graph": _render_graph(recompose(t), cfg)}, "graph")


def _rotation(cfg: RunConfig, g: Graph) -> RotationSystem:
    if cfg.rotation is None:
        return planar_embed(g)
    rho = RotationSystem.from_text(_read(cfg.rotation))
    rho.check(g)
    return rho


def _fatten(cfg: RunConfig) -> None:
    g = _graph(cfg)
    f = fatten(g, _rotation(cfg, g))
    files = {
        "fattened.graph": _render_graph(f.graph, cfg),
        "fattened.rot": f.rotation.to_text(),
        "fattened.json": _dump(f.to_dict()),
    }
    _emit(cfg, files, "fattened.json" if cfg.fmt == "json" else "fattened.graph")


def _blowup(cfg: RunConfig) -> None:
    g = _graph(cfg)
    h, rho, cert = blowup_subcubic(g, _rotation(cfg, g))
    files = {
        "blowup.graph": _render_graph(h, cfg, cert),
        "blowup.rot": rho.to_text(),
        "certificate.json": _dump(cert.to_dict()),
    }
    _emit(cfg, files, "blowup.graph")


def _boundify(cfg: RunConfig) -> None:
    g = _graph(cfg)
    r = boundify(g, cfg.mode, cfg.budget)
    files = {
        "host.graph": _render_graph(r.host, cfg, r.certificate),
        "certificate.json": _dump(r.certificate.to_dict()),
        "decomposition.json": _dump(r.decomposition.to_dict() if r.decomposition else None),
        "audit.csv": r.audit_csv(),
    }
    _emit(cfg, files, "host.graph")


def _minor(cfg: RunConfig) -> None:
    cert = find_minor(_graph(cfg), _pattern(cfg), cfg.budget)
    if cert is None:
        _emit(cfg, {"result": "absent\n"}, "result")
    else:
        _emit(cfg, {"result": "present\n" + _dump(cert.to_dict())}, "result")


def _embed_universal(cfg: RunConfig) -> None:
    g = _graph(cfg)
    window, cert = embed_in_universal(g, cfg.mode, cfg.budget)
    doc = window.to_dict()
    doc["certificate"] = cert.to_dict()
    _emit(cfg, {"window.json": _dump(doc)}, "window.json")


def _tprime(cfg: RunConfig) -> None:
    if not cfg.inputs:
        raise ParseError("missing rooted tree file")
    t = RootedTree.from_text(_read(cfg.inputs[0]))
    _emit(cfg, {"graph": _render_graph(build_t_prime(t, cfg.length), cfg)}, "graph")


def _gen_corpus(cfg: RunConfig) -> None:
    files = {}
    for i in range(cfg.count):
        s = cfg.seed + i
        g = random_clique_sum(s, pieces=cfg.pieces, mode=cfg.mode, max_vertices=cfg.max_vertices)
        ext = "json" if cfg.fmt == "json" else "graph"
        files[f"{cfg.mode.lower()}_{s:05d}.{ext}"] = g.to_json() + "\n" if cfg.fmt == "json" else g.to_text()
    if cfg.output is None:
        sys.stdout.write("".join(f"# {name}\n{text}" for name, text in files.items()))
        return
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text)


DISPATCH = {
    "decompose": _decompose,
    "recompose": _recompose,
    "fatten": _fatten,
    "blowup": _blowup,
    "boundify": _boundify,
    "minor": _minor,
    "embed-universal": _embed_universal,
    "tprime": _tprime,
    "gen-corpus": _gen_corpus,
}


def _error_json(exc: GraphError) -> str:
    doc: dict[str, Any] = {"error": exc.code, "detail": {"message": str(exc), **exc.detail}}
    cert = getattr(exc, "certificate", None)
    if cert is not None:
        doc["certificate"] = cert.to_dict()
    return json.dumps(doc, sort_keys=True, default=str) + "\n"


def run(cfg: RunConfig) -> int:
    try:
        DISPATCH[cfg.verb](cfg)
    except ParseError as exc:
        sys.stdout.write(_error_json(exc))
        return 1
    except SearchBudgetExceeded as exc:
        sys.stdout.write(_error_json(exc))
        return 3
    except (ForbiddenMinorPresent, GraphError) as exc:
        sys.stdout.write(_error_json(exc))
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="minoruniv", description="Minor-closed graph constructions: decompositions, fattening, bounded-degree hosts.")
    sub = ap.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        p = sub.add_parser(verb)
        p.add_argument("inputs", nargs="*", help="input file(s); '-' reads stdin")
        p.add_argument("-o", "--output", help="output file, or directory for multi-file results")
        p.add_argument("--mode", default="k5", choices=["k5", "k33", "K5", "K33"])
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        p.add_argument("--format", dest="fmt", default="text", choices=["text", "json", "dot"])
        if verb == "minor":
            p.add_argument("--pattern", default="k5", help="k5, k33, or a graph file")
        if verb in ("fatten", "blowup"):
            p.add_argument("--rotation", help="rotation system file (default: a planar embedding)")
        if verb == "tprime":
            p.add_argument("--length", "-n", type=int, default=4, help="ray length")
        if verb == "gen-corpus":
            p.add_argument("--count", type=int, default=10)
            p.add_argument("--max-vertices", type=int, default=40)
            p.add_argument("--pieces", type=int, default=4)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
