"""Command-line front end.

Every command reads a document bundle (see :mod:`cubictrails.documents`)
from a file or from standard input (``-``) and writes a bundle to standard
output, so commands chain with pipes::

    cubictrails gen k33 | cubictrails triple --bipartite | cubictrails verify --compatible --odd --length 3

A short run report goes to standard error. Exit codes: 0 success, 1 a
failed verification or a certified absence, 2 a usage or input error, 3 a
computation that contradicts a published claim.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field

from . import constructions, ppdc, search, switching, triples
from .documents import Bundle, partition_sections
from .errors import (ConstructionError, CubicTrailsError, DocumentError, Falsification, GraphFormatError,
                     GuardExceeded, InvalidMarking, PartitionError, SwitchError)
from .generators import NAMED, RANDOM, generate
from .graph import structure_report, to_graph6
from .marking import (DEFAULT_GUARD_N, are_compatible, count_normal_partitions, enumerate_marked_partitions,
                      from_marking, make_filter, to_marking)
from .trails import (check_cover, eccentric_vertices, greedy_normalize_counted, is_normal, random_trail_partition,
                     stats)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FALSIFIED = 0, 1, 2, 3


class Failure(Exception):
    """A verification failed or a search certified absence (exit 1)."""


@dataclass
class RunReport:
    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    outcome: str = "ok"
    counters: dict[str, object] = field(default_factory=dict)
    wall_time: float | None = None

    def as_dict(self) -> dict:
        d = {"command": self.command, "inputs": self.inputs, "outcome": self.outcome, "counters": self.counters}
        if self.wall_time is not None:
            d["wall_time"] = round(self.wall_time, 6)
        return d

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        lines += [f"input {k}: {v}" for k, v in self.inputs.items()]
        lines.append(f"outcome: {self.outcome}")
        lines += [f"{k}: {v}" for k, v in self.counters.items()]
        if self.wall_time is not None:
            lines.append(f"wall time: {self.wall_time:.3f} s")
        return "\n".join(lines) + "\n"


@dataclass
class Context:
    args: argparse.Namespace
    report: RunReport
    _bundle: Bundle | None = None

    def bundle(self) -> Bundle:
        if self._bundle is None:
            path = self.args.input
            text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
            self.report.inputs["sha256"] = hashlib.sha256(text.encode()).hexdigest()[:16]
            self._bundle = Bundle.parse(text)
        return self._bundle

    def graph(self):
        g = self.bundle().graph()
        self.report.inputs["graph"] = g.digest()
        return g

    def count(self, key: str, value) -> None:
        self.report.counters[key] = value


def _graph_bundle(g) -> Bundle:
    return Bundle().add("graph", g.to_text())


def _triple_bundle(g, triple) -> Bundle:
    out = partition_sections(_graph_bundle(g), triple.members)
    return out.add("internality", triples.analyze_triple(g, triple).to_text())


def _triple_from(ctx: Context):
    g = ctx.graph()
    parts = ctx.bundle().partitions()
    if len(parts) != 3:
        raise DocumentError(f"expected three partitions, found {len(parts)}")
    return g, triples.CompatibleTriple(*parts)


# -- commands -------------------------------------------------------------------------

def cmd_gen(ctx: Context):
    a = ctx.args
    g = generate(a.name, a.params, seed=a.seed, allow_loops=a.allow_loops, allow_multi=a.allow_multi)
    ctx.count("n", g.n)
    ctx.report.inputs["graph"] = g.digest()
    if a.graph6:
        return to_graph6(g) + "\n"
    return _graph_bundle(g)


def cmd_check(ctx: Context):
    g = ctx.graph()
    rep = structure_report(g)
    out = _graph_bundle(g)
    out.add("structure", "".join(f"{k}: {json.dumps(v)}\n" for k, v in rep.as_dict().items()))
    ok = True
    for i, p in enumerate(ctx.bundle().partitions(), 1):
        lines = []
        try:
            check_cover(g, p)
        except PartitionError as exc:
            lines.append(f"cover: no ({exc})")
            ok = False
        else:
            st = stats(p)
            lines += ["cover: yes", f"normal: {'yes' if is_normal(g, p) else 'no'}",
                      f"eccentric: {' '.join(map(str, eccentric_vertices(g, p))) or '-'}",
                      f"lengths: {' '.join(map(str, p.lengths))}", f"odd: {'yes' if p.is_odd else 'no'}",
                      f"balance: {st.balance}"]
        out.add(f"status {i}", "\n".join(lines))
    for i, mk in enumerate(ctx.bundle().markings(g), 1):
        try:
            from_marking(g, mk)
            out.add(f"marking status {i}", "valid: yes")
        except InvalidMarking as exc:
            out.add(f"marking status {i}", f"valid: no\ncycle: {' '.join(map(str, exc.cycle))}")
            ok = False
    if not ok:
        ctx.report.outcome = "invalid input partition or marking"
        return out, EXIT_FAIL
    return out


def cmd_normalize(ctx: Context):
    g = ctx.graph()
    parts = ctx.bundle().partitions()
    start = parts[0] if parts else random_trail_partition(g, ctx.args.seed)
    check_cover(g, start)
    result, steps = greedy_normalize_counted(g, start)
    ctx.count("initial trails", len(start))
    ctx.count("steps", steps)
    ctx.count("trails", len(result))
    return partition_sections(_graph_bundle(g), [result])


def cmd_enumerate(ctx: Context):
    a = ctx.args
    g = ctx.graph()
    keep = make_filter(odd=a.odd, max_length=a.max_length)
    if a.count:
        total = count_normal_partitions(g, keep, guard_n=a.guard_n)
        ctx.count("partitions", total)
        return {"count": total} if a.format == "json" else f"{total}\n"
    out = _graph_bundle(g)
    k = 0
    for mk, p in enumerate_marked_partitions(g, keep, guard_n=a.guard_n):
        k += 1
        out.add(f"{'marking' if a.markings else 'partition'} {k}", mk.to_text(g) if a.markings else p.to_text())
        if a.limit is not None and k >= a.limit:
            break
    ctx.count("partitions", k)
    return out


def _int_list(text: str) -> list[int]:
    return [int(t) for t in text.replace(",", " ").split()]


def cmd_construct(ctx: Context):
    a = ctx.args
    g = ctx.graph()
    out = _graph_bundle(g)
    if a.method == "matching":
        ms = search.perfect_matchings(g, limit=a.index + 1)
        if len(ms) <= a.index:
            raise Failure(f"the graph has fewer than {a.index + 1} perfect matchings")
        m = sorted(ms[a.index])
        orient = search.default_orientation(g, m)
        pair = [constructions.odd_partition_from_matching(g, m, orient),
                constructions.odd_partition_from_matching(g, m, orient.reversed())]
        out.add("matching", " ".join(map(str, m)))
        partition_sections(out, pair)
        if not are_compatible(g, *pair):
            ctx.count("compatible pair", "no (a loop vertex is marked twice)")
        return out
    if a.method == "ham-path":
        path = _int_list(a.path) if a.path else search.hamiltonian_path(g)
        if path is None:
            raise Failure("the graph has no hamiltonian path")
        return partition_sections(out, [constructions.partition_from_hamiltonian_path(g, path)])
    if a.method == "ham-lengths":
        if not a.lengths:
            raise DocumentError("ham-lengths needs --lengths")
        cycle = _int_list(a.cycle) if a.cycle else search.hamiltonian_cycle(g)
        if cycle is None:
            raise Failure("the graph has no hamiltonian cycle")
        return partition_sections(out, [constructions.partition_with_lengths(g, cycle, _int_list(a.lengths))])
    if a.method == "ppp":
        text = a.paths.replace(";", "\n") if a.paths else ctx.bundle().get("paths")
        paths = ppdc.PathCollection.from_text(text).paths
        flip = _int_list(a.flip) if a.flip else ()
        return partition_sections(out, [constructions.partition_from_perfect_path_partition(g, paths, flip)])
    # transversal
    marks = ctx.bundle().markings(g)
    if not marks:
        raise DocumentError("transversal needs a [marking] section")
    return partition_sections(out, [constructions.partition_from_transversal(g, marks[0])])


def cmd_triple(ctx: Context):
    a = ctx.args
    g = ctx.graph()
    log: list[str] = []
    if a.mode == "search":
        shapes = tuple(s.strip() for s in a.shapes.split(",")) if a.shapes else (("odd",) * 3 if a.odd else ("any",) * 3)
        if len(shapes) != 3:
            raise DocumentError("--shapes takes three comma-separated shapes")
        found = triples.search_compatible_triple(g, shapes, guard_n=a.guard_n, count=a.count)
        ctx.count("candidates", " ".join(map(str, found.candidates)))
        ctx.count("pairs checked", found.pairs_checked)
        if a.count:
            ctx.count("triples", found.count)
            return {"count": found.count} if a.format == "json" else f"{found.count}\n"
        if found.triple is None:
            ctx.report.outcome = "certified absence"
            return _graph_bundle(g).add("absence", f"certified absence: {found.reason}"), EXIT_FAIL
        return _triple_bundle(g, found.triple)
    if a.mode == "colored":
        triple = triples.three_compatible_colored(g, log=log)
    elif a.mode == "bipartite":
        triple = triples.three_compatible_bipartite(g)
    else:
        triple = triples.three_compatible(g, log=log)
    if log:
        ctx.count("steps", "; ".join(log))
    return _triple_bundle(g, triple)


def cmd_switch_path(ctx: Context):
    a = ctx.args
    g = ctx.graph()
    parts = ctx.bundle().partitions()
    if len(parts) != 2:
        raise DocumentError(f"switch-path needs two partitions, found {len(parts)}")
    trace = switching.switching_sequence(g, parts[0], parts[1], odd_only=a.odd_only)
    moves = switching.one_sided(g, parts[0], parts[1], trace) if a.one_sided else trace.moves
    ctx.count("moves", len(moves))
    out = partition_sections(_graph_bundle(g), parts)
    out.add("trace", "".join(m.to_text() + "\n" for m in moves))
    end, _ = switching.replay(g, parts[0], parts[1], moves)
    return out.add("result", end.to_text())


def _verify_paths(ctx: Context) -> list[str]:
    g = ctx.bundle().general_graph()
    pc = ppdc.PathCollection.from_text(ctx.bundle().get("paths"))
    verdict = ppdc.verify_cppdc(g, pc) if ctx.args.cppdc else ppdc.verify_ppdc(g, pc)
    what = "cppdc" if ctx.args.cppdc else "ppdc"
    return [] if verdict else [f"{what}: {verdict.reason}"]


def cmd_verify(ctx: Context):
    out = Bundle()
    if "paths" in ctx.bundle() and not ctx.bundle().numbered("partition"):
        problems = _verify_paths(ctx)
    else:
        problems = _verify_partitions(ctx)
    ctx.count("problems", len(problems))
    out.add("verify", "\n".join(problems) if problems else "ok")
    if problems:
        ctx.report.outcome = "verification failed"
        return out, EXIT_FAIL
    return out


def _verify_partitions(ctx: Context) -> list[str]:
    a = ctx.args
    g = ctx.graph()
    b = ctx.bundle()
    parts = b.partitions() + [from_marking(g, mk) for mk in b.markings(g)]
    if not parts:
        raise DocumentError("nothing to verify: no partition or marking section")
    problems = []
    for i, p in enumerate(parts, 1):
        try:
            check_cover(g, p)
        except PartitionError as exc:
            problems.append(f"partition {i}: {exc}")
            continue
        if not is_normal(g, p):
            problems.append(f"partition {i}: eccentric vertices {eccentric_vertices(g, p)}")
        if a.odd and not p.is_odd:
            problems.append(f"partition {i}: has an even trail")
        if a.length is not None and any(l != a.length for l in p.lengths):
            problems.append(f"partition {i}: lengths {p.lengths} are not all {a.length}")
        if a.max_length is not None and p.max_length > a.max_length:
            problems.append(f"partition {i}: longest trail {p.max_length} exceeds {a.max_length}")
    if problems:
        return problems
    if a.compatible:
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                v = are_compatible(g, parts[i], parts[j])
                if not v:
                    problems.append(f"partitions {i + 1} and {j + 1}: {v.reason}")
    if len(parts) == 3 and a.compatible and not problems:
        rep = triples.analyze_triple(g, triples.CompatibleTriple(*parts))
        problems += [f"internality: {v}" for v in rep.violations]
    if "trace" in b:
        if len(parts) != 2:
            problems.append("a trace needs exactly two partitions")
        else:
            moves = switching.parse_trace(b.get("trace"))
            try:
                left, right = switching.replay(g, parts[0], parts[1], moves)
            except SwitchError as exc:
                problems.append(f"trace: {exc}")
            else:
                if left != right:
                    problems.append("trace: the partitions differ after replay")
                if len(moves) > 2 * g.n:
                    problems.append(f"trace: {len(moves)} moves exceed 2n = {2 * g.n}")
    return problems


def cmd_expand_triangle(ctx: Context):
    a = ctx.args
    g, triple = _triple_from(ctx)
    for _ in range(a.times):
        g, triple = triples.triangle_expand(g, a.vertex, triple)
    ctx.count("n", g.n)
    return _triple_bundle(g, triple)


def cmd_fan_raspaud(ctx: Context):
    g, triple = _triple_from(ctx)
    ms = triples.fan_raspaud_from_triple(g, triple)
    out = _graph_bundle(g)
    for i, m in enumerate(ms, 1):
        out.add(f"matching {i}", " ".join(map(str, sorted(m))))
    common = ms[0] & ms[1] & ms[2]
    return out.add("intersection", " ".join(map(str, sorted(common))) or "empty")


def cmd_cppdc(ctx: Context):
    a = ctx.args
    if a.corpus:
        corpus = ppdc.minimal_2ec_corpus(a.max_n)
        for _, g in corpus:
            ppdc.cppdc_minimal_2ec(g)
        ctx.count("graphs", len(corpus))
        return Bundle().add("cppdc corpus", f"{len(corpus)} graphs, every construction verified")
    g = ctx.bundle().general_graph()
    ctx.report.inputs["graph"] = hashlib.sha256(g.to_text().encode()).hexdigest()[:16]
    out = Bundle().add("graph", g.to_text())
    if a.search:
        pc = ppdc.find_cppdc(g)
        if pc is None:
            ctx.report.outcome = "certified absence"
            return out.add("absence", "certified absence: no CPPDC exists"), EXIT_FAIL
    else:
        if not ppdc.is_minimal_2ec(g):
            raise Failure("the graph is not minimal 2-edge-connected; use --search")
        pc = ppdc.cppdc_minimal_2ec(g)
    ctx.count("paths", len(pc))
    return out.add("paths", pc.to_text())


_PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "teal", "gold", "gray")


def cmd_dot(ctx: Context):
    a = ctx.args
    g = ctx.graph()
    parts = ctx.bundle().partitions()
    p = parts[a.member - 1] if parts else None
    lines = ["graph G {", "  node [shape=circle];"]
    lines += [f"  {v};" for v in range(g.n)]
    trail_of = p.trail_of_edge() if p is not None else {}
    marks = to_marking(g, p).marks if p is not None and is_normal(g, p) else None
    for e, (x, y) in enumerate(g.edges):
        attrs = [f'label="e{e}"']
        if e in trail_of:
            attrs.append(f'color="{_PALETTE[trail_of[e] % len(_PALETTE)]}"')
        if marks is not None:
            # the marked end of an edge carries the end symbol next to its vertex
            if marks[x] == e:
                attrs.append('taillabel="⊢"')
            if marks[y] == e and x != y:
                attrs.append('headlabel="⊢"')
        lines.append(f"  {x} -- {y} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- parser ---------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--guard-n", type=int, default=DEFAULT_GUARD_N,
                        help=f"largest n for exhaustive enumeration (default {DEFAULT_GUARD_N})")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--timing", action="store_true", help="include wall time in the run report")
    common.add_argument("--quiet", action="store_true", help="do not write the run report")
    return common


def _with_input(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
    p.add_argument("input", nargs="?", default="-", help="input bundle file, '-' for standard input")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="cubictrails", description="Normal trail partitions of cubic multigraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate a named or random cubic graph")
    p.add_argument("name", choices=sorted(NAMED) + sorted(RANDOM))
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--allow-loops", action="store_true")
    p.add_argument("--allow-multi", action="store_true")
    p.add_argument("--graph6", action="store_true", help="print graph6 instead of an edge list")
    p.set_defaults(func=cmd_gen)

    p = _with_input(sub.add_parser("check", parents=[common], help="structure report and partition status"))
    p.set_defaults(func=cmd_check)

    p = _with_input(sub.add_parser("normalize", parents=[common],
                                   help="greedy normalization of the given (or a random) partition"))
    p.set_defaults(func=cmd_normalize)

    p = _with_input(sub.add_parser("enumerate", parents=[common], help="enumerate normal partitions"))
    p.add_argument("--odd", action="store_true")
    p.add_argument("--max-length", type=int)
    p.add_argument("--count", action="store_true")
    p.add_argument("--limit", type=int)
    p.add_argument("--markings", action="store_true", help="emit markings instead of partitions")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("construct", parents=[common], help="build a normal partition")
    p.add_argument("method", choices=("matching", "ham-path", "ham-lengths", "ppp", "transversal"))
    _with_input(p)
    p.add_argument("--index", type=int, default=0, help="which perfect matching (enumeration order)")
    p.add_argument("--path", help="hamiltonian path as vertex ids")
    p.add_argument("--cycle", help="hamiltonian cycle as vertex ids, first vertex repeated at the end")
    p.add_argument("--lengths", help="trail lengths, comma separated")
    p.add_argument("--paths", help="perfect path partition, paths separated by ';'")
    p.add_argument("--flip", help="leftover components walked in reverse")
    p.set_defaults(func=cmd_construct)

    p = _with_input(sub.add_parser("triple", parents=[common], help="three compatible normal partitions"))
    mode = p.add_mutually_exclusive_group()
    for name in ("general", "colored", "bipartite", "search"):
        mode.add_argument(f"--{name}", dest="mode", action="store_const", const=name)
    p.set_defaults(mode="general")
    p.add_argument("--odd", action="store_true", help="search: all three members odd")
    p.add_argument("--shapes", help="search: three shapes among any, odd, leK, odd-leK")
    p.add_argument("--count", action="store_true", help="search: count triples instead")
    p.set_defaults(func=cmd_triple)

    p = _with_input(sub.add_parser("switch-path", parents=[common], help="switch sequence between two partitions"))
    p.add_argument("--odd-only", action="store_true")
    p.add_argument("--one-sided", action="store_true", help="only switch the first partition")
    p.set_defaults(func=cmd_switch_path)

    p = _with_input(sub.add_parser("verify", parents=[common], help="check partitions, traces or path covers"))
    p.add_argument("--compatible", action="store_true")
    p.add_argument("--odd", action="store_true")
    p.add_argument("--length", type=int, help="every trail has exactly this length")
    p.add_argument("--max-length", type=int)
    p.add_argument("--cppdc", action="store_true", help="for [paths]: also require distinct end edges")
    p.set_defaults(func=cmd_verify)

    p = _with_input(sub.add_parser("expand-triangle", parents=[common], help="replace a vertex by a triangle"))
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--times", type=int, default=1)
    p.set_defaults(func=cmd_expand_triangle)

    p = _with_input(sub.add_parser("fan-raspaud", parents=[common], help="perfect matchings from an odd triple"))
    p.set_defaults(func=cmd_fan_raspaud)

    p = _with_input(sub.add_parser("cppdc", parents=[common], help="compatible perfect path double cover"))
    p.add_argument("--search", action="store_true", help="exhaustive search instead of the construction")
    p.add_argument("--corpus", action="store_true", help="run the construction over the generated corpus")
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=cmd_cppdc)

    p = _with_input(sub.add_parser("dot", parents=[common], help="DOT drawing with marked edge ends"))
    p.add_argument("--member", type=int, default=1, help="which partition to draw")
    p.set_defaults(func=cmd_dot)
    return parser


def _emit(result, fmt: str, stream) -> None:
    if isinstance(result, Bundle):
        stream.write(result.to_json() if fmt == "json" else result.to_text())
    elif isinstance(result, dict):
        stream.write(json.dumps(result) + "\n")
    else:
        stream.write(result)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    report = RunReport(" ".join(["cubictrails", *argv]))
    ctx = Context(args, report)
    start = time.perf_counter()
    code = EXIT_OK
    try:
        result = args.func(ctx)
        if isinstance(result, tuple):
            result, code = result
        _emit(result, args.format, sys.stdout)
    except Falsification as exc:
        report.outcome = f"falsification: {exc}"
        code = EXIT_FALSIFIED
    except (Failure, ConstructionError, PartitionError, SwitchError) as exc:
        report.outcome = f"failed: {exc}"
        code = EXIT_FAIL
    except (DocumentError, GraphFormatError, GuardExceeded, OSError, ValueError) as exc:
        report.outcome = f"usage error: {exc}"
        code = EXIT_USAGE
    except CubicTrailsError as exc:
        report.outcome = f"error: {exc}"
        code = EXIT_FAIL
    if args.timing:
        report.wall_time = time.perf_counter() - start
    if args.quiet and code != EXIT_OK:
        sys.stderr.write(report.outcome + "\n")
    elif not args.quiet:
        sys.stderr.write(json.dumps(report.as_dict()) + "\n" if args.format == "json" else report.to_text())
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
