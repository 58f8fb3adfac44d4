"""Switches at a vertex and the switching-equivalence algorithm.

A switch at ``v`` cuts the trail ``T1`` that passes through ``v`` into the
piece ``A`` (from the start ``x`` of ``T1`` to ``v``) and the piece ``B``
(from ``v`` to the end ``y``), and glues the trail ``C`` ending at ``v`` onto
one of them. ``keep-x`` glues ``C`` to ``A`` and leaves ``B`` alone, so the
new mark at ``v`` is the first edge of ``B``; ``keep-y`` glues ``C`` to ``B``
and leaves ``A`` alone, so the new mark is the last edge of ``A``. Here
``T1`` is read in its canonical orientation.

In a normal partition each vertex is internal exactly once (three darts,
one spent on the trail end), so the cut point is always unique.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DocumentError, Falsification, SwitchError
from .graph import CubicMultigraph
from .marking import to_marking
from .trails import TrailPartition

VARIANTS = ("keep-x", "keep-y")
ODD_SWITCH_CLAIM = "odd switch always possible"


@dataclass(frozen=True)
class SwitchMove:
    side: int      # 0: applied to the first partition, 1: to the second
    vertex: int
    variant: str

    def to_text(self) -> str:
        return f"{self.side} {self.vertex} {self.variant}"


def _locate(t: TrailPartition, v: int):
    """(index of the trail internal at v, internal position, index of the trail ending at v)."""
    host = pos = ender = None
    for i, tr in enumerate(t.trails):
        for p in range(1, tr.length):
            if tr.vertices[p] == v:
                if host is not None:
                    raise SwitchError(f"vertex {v} is internal twice; the partition is not normal")
                host, pos = i, p
        for end in (tr.start, tr.end):
            if end == v:
                if ender is not None:
                    raise SwitchError(f"vertex {v} is eccentric")
                ender = i
    if host is None or ender is None:
        raise SwitchError(f"vertex {v} is not normal in this partition")
    return host, pos, ender


def _candidates(g: CubicMultigraph, t: TrailPartition, v: int) -> dict[str, TrailPartition]:
    host, pos, ender = _locate(t, v)
    t1 = t.trails[host]
    a, b = t1.sub(0, pos), t1.sub(pos, t1.length)
    rest = [tr for i, tr in enumerate(t.trails) if i not in (host, ender)]
    out = {}
    if host != ender:
        c = t.trails[ender].oriented_to_end_at(v)
        out["keep-x"] = TrailPartition(tuple(rest + [a.then(c.reversed()), b]))
        out["keep-y"] = TrailPartition(tuple(rest + [c.then(b), a]))
    elif t1.end == v:
        # B runs from v back to v; only reversing it keeps every trail open
        out["keep-x"] = TrailPartition(tuple(rest + [a.then(b.reversed())]))
    else:
        out["keep-y"] = TrailPartition(tuple(rest + [a.reversed().then(b)]))
    old = to_marking(g, t)[v]
    # at a loop vertex the loop stays marked whatever we do
    return {name: p for name, p in out.items() if to_marking(g, p)[v] != old}


def switch_variants(g: CubicMultigraph, t: TrailPartition, v: int) -> list[str]:
    return sorted(_candidates(g, t, v))


def switch(g: CubicMultigraph, t: TrailPartition, v: int, variant: str) -> TrailPartition:
    if variant not in VARIANTS:
        raise SwitchError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    cands = _candidates(g, t, v)
    if variant not in cands:
        have = ", ".join(sorted(cands)) or "none"
        raise SwitchError(f"variant {variant} does not exist at vertex {v} (available: {have})")
    return cands[variant]


def switch_to(g: CubicMultigraph, t: TrailPartition, v: int, edge: int,
              odd_only: bool = False) -> tuple[str, TrailPartition] | None:
    """The switch at v that makes ``edge`` the new mark, if there is one."""
    for name, p in sorted(_candidates(g, t, v).items()):
        if to_marking(g, p)[v] == edge and (p.is_odd or not odd_only):
            return name, p
    return None


def odd_switch(g: CubicMultigraph, t: TrailPartition, v: int) -> tuple[str, TrailPartition]:
    """First variant (in name order) whose result is odd.

    Raises Falsification when every variant produces an even trail.
    """
    if not t.is_odd:
        raise SwitchError("odd_switch needs an odd partition")
    cands = _candidates(g, t, v)
    if not cands:
        raise SwitchError(f"no switch exists at vertex {v} (it carries a loop)")
    for name, p in sorted(cands.items()):
        if p.is_odd:
            return name, p
    raise Falsification(ODD_SWITCH_CLAIM, f"no variant at vertex {v} keeps the partition odd",
                        witness={"vertex": v, "partition": t.to_text()})


# -- equivalence -----------------------------------------------------------------

@dataclass(frozen=True)
class SwitchTrace:
    moves: tuple[SwitchMove, ...]
    result: TrailPartition

    def __len__(self):
        return len(self.moves)

    def to_text(self) -> str:
        return "".join(m.to_text() + "\n" for m in self.moves)


def parse_trace(text: str) -> list[SwitchMove]:
    moves = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            side, vertex = int(tok[0]), int(tok[1])
            variant = tok[2]
        except (IndexError, ValueError):
            raise DocumentError(f"bad trace line: {raw!r}") from None
        if len(tok) != 3 or side not in (0, 1) or variant not in VARIANTS:
            raise DocumentError(f"bad trace line: {raw!r}")
        moves.append(SwitchMove(side, vertex, variant))
    return moves


def _forced_switch(g, t, v, target, odd_only):
    found = switch_to(g, t, v, target, odd_only)
    if found is None and odd_only:
        # surfaces a Falsification when no odd variant exists at all
        odd_switch(g, t, v)
    return found


def switching_sequence(g: CubicMultigraph, t_from: TrailPartition, t_to: TrailPartition,
                       odd_only: bool = False) -> SwitchTrace:
    """Two-sided trace making both partitions equal, at most two moves per vertex.

    Each disagreeing vertex ``v`` is fixed by switching the first partition to
    the second one's mark, else the second to the first's, else both to the
    third edge at ``v``. Marks elsewhere are untouched, so agreement only grows.
    """
    if odd_only and not (t_from.is_odd and t_to.is_odd):
        raise SwitchError("odd_only needs two odd partitions")
    sides = [t_from, t_to]
    moves: list[SwitchMove] = []
    for v in range(g.n):
        m0, m1 = to_marking(g, sides[0])[v], to_marking(g, sides[1])[v]
        if m0 == m1:
            continue
        step = _forced_switch(g, sides[0], v, m1, odd_only)
        if step is not None:
            moves.append(SwitchMove(0, v, step[0]))
            sides[0] = step[1]
            continue
        step = _forced_switch(g, sides[1], v, m0, odd_only)
        if step is not None:
            moves.append(SwitchMove(1, v, step[0]))
            sides[1] = step[1]
            continue
        (e3,) = [e for e in g.incident_edges(v) if e not in (m0, m1)]
        for side in (0, 1):
            step = _forced_switch(g, sides[side], v, e3, odd_only)
            if step is None:
                raise SwitchError(f"no switch at vertex {v} reaches edge {e3}")
            moves.append(SwitchMove(side, v, step[0]))
            sides[side] = step[1]
    if sides[0] != sides[1]:
        raise SwitchError("switching did not converge")
    return SwitchTrace(tuple(moves), sides[0])


def replay(g: CubicMultigraph, t_from: TrailPartition, t_to: TrailPartition,
           moves) -> tuple[TrailPartition, TrailPartition]:
    sides = [t_from, t_to]
    for m in moves:
        sides[m.side] = switch(g, sides[m.side], m.vertex, m.variant)
    return sides[0], sides[1]


def one_sided(g: CubicMultigraph, t_from: TrailPartition, t_to: TrailPartition,
              trace: SwitchTrace) -> tuple[SwitchMove, ...]:
    """Moves applied to ``t_from`` alone that reach ``t_to``.

    The first partition's moves are kept; the second partition's moves are
    undone in reverse order, each by the switch at the same vertex that
    restores the previous mark.
    """
    out = [m for m in trace.moves if m.side == 0]
    history = [t_to]
    for m in trace.moves:
        if m.side == 1:
            history.append(switch(g, history[-1], m.vertex, m.variant))
    current = history[-1]
    back = [m for m in trace.moves if m.side == 1]
    for m, before in zip(reversed(back), reversed(history[:-1])):
        target = to_marking(g, before)[m.vertex]
        step = switch_to(g, current, m.vertex, target)
        if step is None:
            raise SwitchError(f"switch at {m.vertex} has no inverse")
        out.append(SwitchMove(0, m.vertex, step[0]))
        current = step[1]
    return tuple(out)
