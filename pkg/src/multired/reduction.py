"""The multifraction rewrite systems.

Left reduction R(i,x) extracts x from entry i+1, pushes it through entry i
by an lcm and deposits the remainder in entry i-1; right reduction R~(i,x)
is the mirror image pushing from i-1 to i+1, with a truncated rule at the
top level i = depth.  Division D(i,x) is the remainder-free case where x
divides both adjacent entries, making them shorter.  On top of the raw
moves this module provides:

  * reducer enumeration (atomic / all / maximal / tame) and the greatest
    tame reducer (gcd of the maximal reducers);
  * derdiv, the composite of maximal divisions from the top level down,
    which always lands on a prime multifraction;
  * red_tame, the composite of greatest-tame reductions along the
    universal level sequence u(n) = (1..n-1) ++ u(n-2);
  * strategy-driven exhaustive reduction (`reduce_left`, `reduce_right`),
    atomic reduct graphs with DOT/JSON export, and the tower step bound.

Sign conventions: the due side at a positively-signed level is "right"
(entries are divided on the right, lcms are left lcms), and mirrored at a
negatively-signed level.  Every applied move re-asserts its defining
equations on the entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .monoid import (
    CapExceeded,
    Element,
    GraphNodeCapExceeded,
    IDENTITY,
    MonoidContext,
    MultiredError,
    Side,
)
from .multifraction import Multifraction, format_multifraction


class InternalInvariantError(MultiredError):
    pass


@dataclass(frozen=True)
class Move:
    kind: str  # "left" | "right" | "division"
    level: int
    x: Element

    def label(self, ctx: MonoidContext) -> str:
        sym = {"left": "R", "right": "R̃", "division": "D"}[self.kind]
        return f"{sym}({self.level},{ctx.word_str(self.x)})"


@dataclass(frozen=True)
class ReductionTrace:
    start: Multifraction
    moves: tuple[Move, ...]
    end: Multifraction

    def composed_moves(self, ctx: MonoidContext) -> tuple[Move, ...]:
        """Coalesce consecutive same-kind same-level moves (reductions at a
        fixed level compose).  The reducers multiply in extraction order:
        left reductions strip the due side of entry i+1, right reductions
        the opposite side of entry i-1."""
        out: list[Move] = []
        for m in self.moves:
            if out and out[-1].kind == m.kind and out[-1].level == m.level:
                prev = out.pop()
                positive = self.start.sign(m.level) > 0
                if m.kind == "right":
                    strip_left = positive
                else:
                    strip_left = not positive
                if strip_left:
                    x = ctx.multiply(prev.x, m.x)
                else:
                    x = ctx.multiply(m.x, prev.x)
                out.append(Move(m.kind, m.level, x))
            else:
                out.append(m)
        return tuple(out)


STRATEGIES = ("low_lex", "low_antilex", "high_lex", "high_antilex")


def due_side(a: Multifraction, i: int) -> Side:
    """Division side at level i: RIGHT when i is positive in a."""
    return Side.RIGHT if a.sign(i) > 0 else Side.LEFT


# ----------------------------------------------------------------------
# elementary moves


def apply_left(ctx: MonoidContext, a: Multifraction, i: int, x: Element) -> Multifraction | None:
    """a . R(i,x), or None when the rule does not apply.

    1 <= i < depth and x != 1 required.  Cap overflow from the underlying
    lcm propagates (the move's applicability is then unknown).
    """
    n = a.depth
    if not 1 <= i < n:
        raise ValueError(f"left reduction level {i} outside 1..{n - 1}")
    if x.is_identity:
        raise ValueError("reducer must be nontrivial")
    pos = a.sign(i) > 0
    if i == 1:
        side = Side.RIGHT if pos else Side.LEFT
        q1 = ctx.divides(x, a.entry(1), side)
        if q1 is None:
            return None
        q2 = ctx.divides(x, a.entry(2), side)
        if q2 is None:
            return None
        b = a.replace_entry(1, q1).replace_entry(2, q2)
        _assert_left(ctx, a, b, i, x, None)
        return b
    if pos:
        # x must right-divide entry i+1; left lcm of x and entry i
        q = ctx.divides(x, a.entry(i + 1), Side.RIGHT)
        if q is None:
            return None
        r = ctx.lcm(x, a.entry(i), Side.LEFT)
        if r is None:
            return None
        m, comp_x, comp_ai = r  # m = comp_x * entry(i) = comp_ai * x
        xp = comp_x
        b = (
            a.replace_entry(i - 1, ctx.multiply(xp, a.entry(i - 1)))
            .replace_entry(i, comp_ai)
            .replace_entry(i + 1, q)
        )
    else:
        q = ctx.divides(x, a.entry(i + 1), Side.LEFT)
        if q is None:
            return None
        r = ctx.lcm(x, a.entry(i), Side.RIGHT)
        if r is None:
            return None
        m, comp_x, comp_ai = r  # m = entry(i) * comp_x = x * comp_ai
        xp = comp_x
        b = (
            a.replace_entry(i - 1, ctx.multiply(a.entry(i - 1), xp))
            .replace_entry(i, comp_ai)
            .replace_entry(i + 1, q)
        )
    _assert_left(ctx, a, b, i, x, xp)
    return b


def _assert_left(ctx, a, b, i, x, xp):
    if a.sign(i) > 0:
        if i >= 2:
            assert b.entry(i - 1) == ctx.multiply(xp, a.entry(i - 1))
            assert ctx.multiply(b.entry(i), x) == ctx.multiply(xp, a.entry(i))
        assert ctx.multiply(b.entry(i + 1), x) == a.entry(i + 1)
        if i == 1:
            assert ctx.multiply(b.entry(1), x) == a.entry(1)
    else:
        if i >= 2:
            assert b.entry(i - 1) == ctx.multiply(a.entry(i - 1), xp)
            assert ctx.multiply(x, b.entry(i)) == ctx.multiply(a.entry(i), xp)
        assert ctx.multiply(x, b.entry(i + 1)) == a.entry(i + 1)
        if i == 1:
            assert ctx.multiply(x, b.entry(1)) == a.entry(1)
    assert b.depth == a.depth


def apply_right(ctx: MonoidContext, a: Multifraction, i: int, x: Element) -> Multifraction | None:
    """a . R~(i,x), or None.  Levels 1 <= i <= depth are accepted; level 1
    never applies (there is no entry 0 to extract from)."""
    n = a.depth
    if not 1 <= i <= n:
        raise ValueError(f"right reduction level {i} outside 1..{n}")
    if x.is_identity:
        raise ValueError("reducer must be nontrivial")
    if i == 1:
        return None
    pos = a.sign(i) > 0
    if i == n:
        side = Side.LEFT if pos else Side.RIGHT
        q1 = ctx.divides(x, a.entry(n - 1), side)
        if q1 is None:
            return None
        q2 = ctx.divides(x, a.entry(n), side)
        if q2 is None:
            return None
        return a.replace_entry(n - 1, q1).replace_entry(n, q2)
    if pos:
        # x must left-divide entry i-1; right lcm of x and entry i
        q = ctx.divides(x, a.entry(i - 1), Side.LEFT)
        if q is None:
            return None
        r = ctx.lcm(x, a.entry(i), Side.RIGHT)
        if r is None:
            return None
        m, comp_x, comp_ai = r  # m = entry(i) * comp_x = x * comp_ai
        xp = comp_x
        b = (
            a.replace_entry(i - 1, q)
            .replace_entry(i, comp_ai)
            .replace_entry(i + 1, ctx.multiply(a.entry(i + 1), xp))
        )
        assert ctx.multiply(x, b.entry(i)) == ctx.multiply(a.entry(i), xp)
        return b
    else:
        q = ctx.divides(x, a.entry(i - 1), Side.RIGHT)
        if q is None:
            return None
        r = ctx.lcm(x, a.entry(i), Side.LEFT)
        if r is None:
            return None
        m, comp_x, comp_ai = r  # m = comp_x * entry(i) = comp_ai * x
        xp = comp_x
        b = (
            a.replace_entry(i - 1, q)
            .replace_entry(i, comp_ai)
            .replace_entry(i + 1, ctx.multiply(xp, a.entry(i + 1)))
        )
        assert ctx.multiply(b.entry(i), x) == ctx.multiply(xp, a.entry(i))
        return b


def apply_division(ctx: MonoidContext, a: Multifraction, i: int, x: Element) -> Multifraction | None:
    """a . D(i,x): divide entries i and i+1 by x on the due side."""
    n = a.depth
    if not 1 <= i < n:
        raise ValueError(f"division level {i} outside 1..{n - 1}")
    if x.is_identity:
        raise ValueError("divisor must be nontrivial")
    side = due_side(a, i)
    qi = ctx.divides(x, a.entry(i), side)
    if qi is None:
        return None
    qj = ctx.divides(x, a.entry(i + 1), side)
    if qj is None:
        return None
    return a.replace_entry(i, qi).replace_entry(i + 1, qj)


def is_division(ctx: MonoidContext, a: Multifraction, i: int, x: Element) -> bool:
    side = due_side(a, i)
    return (
        ctx.divides(x, a.entry(i), side) is not None
        and ctx.divides(x, a.entry(i + 1), side) is not None
    )


def apply_move(ctx: MonoidContext, a: Multifraction, move: Move) -> Multifraction | None:
    if move.kind == "left":
        return apply_left(ctx, a, move.level, move.x)
    if move.kind == "right":
        return apply_right(ctx, a, move.level, move.x)
    if move.kind == "division":
        return apply_division(ctx, a, move.level, move.x)
    raise ValueError(move.kind)


def replay(ctx: MonoidContext, a: Multifraction, moves) -> Multifraction:
    cur = a
    for m in moves:
        nxt = apply_move(ctx, cur, m)
        if nxt is None:
            raise MultiredError(f"move {m} not applicable during replay")
        cur = nxt
    return cur


# ----------------------------------------------------------------------
# reducers

REDUCER_FILTERS = ("atomic", "all", "maximal", "tame")


def reducers(ctx: MonoidContext, a: Multifraction, i: int, filter: str = "all") -> tuple[Element, ...]:
    """The nontrivial x for which a . R(i,x) is defined, filtered.

    atomic: the applicable atoms; all: every applicable x; maximal:
    divisibility-maximal among all (due side); tame: those dividing every
    maximal one.  Deterministic (length, word) order.
    """
    n = a.depth
    if not 1 <= i < n:
        raise ValueError(f"reducer level {i} outside 1..{n - 1}")
    if filter not in REDUCER_FILTERS:
        raise ValueError(f"unknown filter {filter!r}")
    side = due_side(a, i)
    lcm_side = side.other
    if filter == "atomic":
        out = []
        for s in ctx.atoms():
            if ctx.divides(s, a.entry(i + 1), side) is None:
                continue
            if i == 1:
                if ctx.divides(s, a.entry(1), side) is not None:
                    out.append(s)
            elif ctx.lcm(s, a.entry(i), lcm_side) is not None:
                out.append(s)
        return tuple(out)
    if i == 1:
        g = ctx.gcd(a.entry(1), a.entry(2), side)
        all_red = [d for d in ctx.divisors(g, side) if not d.is_identity]
    else:
        all_red = [
            d
            for d in ctx.divisors(a.entry(i + 1), side)
            if not d.is_identity and ctx.lcm(d, a.entry(i), lcm_side) is not None
        ]
    if filter == "all":
        return tuple(all_red)
    maximal = [
        x
        for x in all_red
        if not any(y != x and ctx.divides(x, y, side) is not None for y in all_red)
    ]
    if filter == "maximal":
        return tuple(maximal)
    tame = [
        x for x in all_red if all(ctx.divides(x, y, side) is not None for y in maximal)
    ]
    return tuple(tame)


def greatest_tame_reducer(ctx: MonoidContext, a: Multifraction, i: int) -> Element:
    """Due-side gcd of the maximal i-reducers (identity when none).

    Always a multiple of the due-side gcd of entries i and i+1.
    """
    maximal = reducers(ctx, a, i, "maximal")
    side = due_side(a, i)
    if not maximal:
        g = IDENTITY
    else:
        g = maximal[0]
        for y in maximal[1:]:
            g = ctx.gcd(g, y, side)
    adj = ctx.gcd(a.entry(i), a.entry(i + 1), side)
    assert ctx.divides(adj, g, side) is not None or adj.is_identity
    return g


def div_max(ctx: MonoidContext, a: Multifraction, i: int) -> Multifraction:
    """Division by the due-side gcd of entries i, i+1 (identity action when
    the gcd is trivial)."""
    g = ctx.gcd(a.entry(i), a.entry(i + 1), due_side(a, i))
    if g.is_identity:
        return a
    b = apply_division(ctx, a, i, g)
    assert b is not None
    return b


def derdiv(ctx: MonoidContext, a: Multifraction) -> Multifraction:
    """Composite of maximal divisions from the top level down; the result
    is prime and is a common reduct of every division-reduct of a."""
    b = a
    for i in range(a.depth - 1, 0, -1):
        b = div_max(ctx, b, i)
    assert is_prime(ctx, b)
    return b


def universal_sequence(n: int) -> tuple[int, ...]:
    """u(n): empty for n <= 1, else (1..n-1) followed by u(n-2)."""
    if n < 0:
        raise ValueError(n)
    out: list[int] = []
    while n >= 2:
        out.extend(range(1, n))
        n -= 2
    return tuple(out)


def red_tame(
    ctx: MonoidContext, a: Multifraction, collect: list[Move] | None = None
) -> Multifraction:
    """Apply the greatest tame reduction at each level of u(depth).

    Levels whose greatest tame reducer is trivial act as the identity;
    when `collect` is given every level visit is recorded (trivial ones
    with an identity reducer), which the van Kampen builder relies on.
    """
    b = a
    for i in universal_sequence(a.depth):
        g = greatest_tame_reducer(ctx, b, i)
        if collect is not None:
            collect.append(Move("left", i, g))
        if g.is_identity:
            continue
        nxt = apply_left(ctx, b, i, g)
        assert nxt is not None, "greatest tame reducer must be applicable"
        b = nxt
    return b


def red_tame_fixpoint(ctx: MonoidContext, a: Multifraction, max_iter: int = 64):
    """Iterate red_tame to a fixed point; returns (fixpoint, iterations)."""
    cur = a
    for k in range(max_iter):
        nxt = red_tame(ctx, cur)
        if nxt == cur:
            return cur, k
        cur = nxt
    raise MultiredError("red_tame failed to stabilize")


# ----------------------------------------------------------------------
# strategies and exhaustive reduction


def _strategy_order(ctx: MonoidContext, n_levels: list[int], strategy: str):
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    levels = n_levels if strategy.startswith("low") else list(reversed(n_levels))
    atoms = list(ctx.atoms())
    if strategy.endswith("antilex"):
        atoms = list(reversed(atoms))
    return levels, atoms


def _first_move(ctx, a, strategy, side: Side):
    if side is Side.LEFT:
        level_range = list(range(1, a.depth))
        apply_fn = apply_left
        kind = "left"
    else:
        level_range = list(range(2, a.depth + 1))
        apply_fn = apply_right
        kind = "right"
    levels, atoms = _strategy_order(ctx, level_range, strategy)
    for i in levels:
        for s in atoms:
            b = apply_fn(ctx, a, i, s)
            if b is not None:
                return Move(kind, i, s), b
    return None, None


def reduce_left(ctx: MonoidContext, a: Multifraction, strategy: str = "low_lex") -> ReductionTrace:
    """Exhaust atomic left reductions under the given strategy.

    Terminates by noetherianity; the number of steps is checked against
    the tower bound (a violation is an internal error).
    """
    moves: list[Move] = []
    cur = a
    while True:
        move, nxt = _first_move(ctx, cur, strategy, Side.LEFT)
        if move is None:
            break
        moves.append(move)
        cur = nxt
        if not within_step_bound(ctx, a, len(moves)):
            raise InternalInvariantError(
                "reduction exceeded the tower step bound"
            )
    return ReductionTrace(a, tuple(moves), cur)


reduce = reduce_left


def reduce_right(ctx: MonoidContext, a: Multifraction, strategy: str = "low_lex") -> ReductionTrace:
    moves: list[Move] = []
    cur = a
    while True:
        move, nxt = _first_move(ctx, cur, strategy, Side.RIGHT)
        if move is None:
            break
        moves.append(move)
        cur = nxt
    return ReductionTrace(a, tuple(moves), cur)


def is_prime(ctx: MonoidContext, a: Multifraction) -> bool:
    """Trivial due-side gcds between all adjacent entries."""
    return all(
        ctx.gcd(a.entry(i), a.entry(i + 1), due_side(a, i)).is_identity
        for i in range(1, a.depth)
    )


# ----------------------------------------------------------------------
# reduct graphs


@dataclass
class ReductGraph:
    root: Multifraction
    side: Side
    nodes: list[Multifraction] = field(default_factory=list)
    index: dict[Multifraction, int] = field(default_factory=dict)
    edges: list[tuple[int, Move, int]] = field(default_factory=list)
    inconclusive: list[tuple[int, int, Element, str]] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.inconclusive

    def sinks(self) -> list[Multifraction]:
        has_out = {src for src, _, _ in self.edges}
        unsure = {src for src, _, _, _ in self.inconclusive}
        return [
            node
            for k, node in enumerate(self.nodes)
            if k not in has_out and k not in unsure
        ]

    def contains(self, a: Multifraction) -> bool:
        return a in self.index

    def to_dot(self, ctx: MonoidContext) -> str:
        def fmt(mf):
            return format_multifraction(ctx, mf) or "()"

        lines = ["digraph reducts {"]
        for k, node in enumerate(self.nodes):
            lines.append(f'  n{k} [label="{fmt(node)}"];')
        for src, move, dst in self.edges:
            label = move.label(ctx)
            # divisions are both left and right reductions; label them D
            node = self.nodes[src]
            if move.kind == "left" and is_division(ctx, node, move.level, move.x):
                label = f"D({move.level},{ctx.word_str(move.x)})"
            elif (
                move.kind == "right"
                and move.level >= 2
                and is_division(ctx, node, move.level - 1, move.x)
            ):
                label = f"D({move.level - 1},{ctx.word_str(move.x)})"
            lines.append(f'  n{src} -> n{dst} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self, ctx: MonoidContext) -> dict:
        return {
            "side": self.side.value,
            "root": format_multifraction(ctx, self.root),
            "nodes": [format_multifraction(ctx, n) for n in self.nodes],
            "edges": [
                {
                    "src": s,
                    "dst": d,
                    "kind": m.kind,
                    "level": m.level,
                    "x": ctx.word_str(m.x),
                }
                for s, m, d in self.edges
            ],
            "inconclusive": [
                {"src": s, "level": i, "x": ctx.word_str(x), "reason": r}
                for s, i, x, r in self.inconclusive
            ],
            "complete": self.complete,
        }


def reduct_graph(
    ctx: MonoidContext,
    a: Multifraction,
    side: Side = Side.LEFT,
    node_cap: int | None = None,
    granularity: str = "atomic",
) -> ReductGraph:
    """Exhaustive closure of a under moves of one side.

    Every reduction decomposes into atomic steps at the same level, so the
    default atomic closure reaches every reduct.  The "maximal" granularity
    (left side only) follows maximal reducers instead; it provably misses
    reducts and exists as an explicit mode for comparison.  Applicability
    failures from cap overflow are recorded as inconclusive edges rather
    than guessed at.
    """
    if granularity not in ("atomic", "maximal"):
        raise ValueError(f"unknown granularity {granularity!r}")
    if granularity == "maximal" and side is not Side.LEFT:
        raise ValueError("maximal granularity is a left-side mode")
    cap = node_cap if node_cap is not None else ctx.caps.graph_node_cap
    g = ReductGraph(root=a, side=side)
    g.nodes.append(a)
    g.index[a] = 0
    queue = [0]
    while queue:
        src = queue.pop(0)
        cur = g.nodes[src]

        def outgoing():
            if granularity == "maximal":
                yield from _maximal_moves(ctx, cur)
                return
            if side is Side.LEFT:
                levels = range(1, cur.depth)
            else:
                levels = range(2, cur.depth + 1)
            for i in levels:
                for s in ctx.atoms():
                    try:
                        b = (
                            apply_left(ctx, cur, i, s)
                            if side is Side.LEFT
                            else apply_right(ctx, cur, i, s)
                        )
                    except CapExceeded as e:
                        g.inconclusive.append((src, i, s, str(e)))
                        continue
                    if b is not None:
                        yield Move("left" if side is Side.LEFT else "right", i, s), b

        for move, b in outgoing():
            if b not in g.index:
                if len(g.nodes) >= cap:
                    raise GraphNodeCapExceeded(f"reduct graph exceeded {cap} nodes")
                g.index[b] = len(g.nodes)
                g.nodes.append(b)
                queue.append(g.index[b])
            g.edges.append((src, move, g.index[b]))
    return g


def irreducible_reducts(ctx: MonoidContext, a: Multifraction, side: Side = Side.LEFT) -> list[Multifraction]:
    return reduct_graph(ctx, a, side).sinks()


# ----------------------------------------------------------------------
# step bound


def step_bound(ctx: MonoidContext, a: Multifraction):
    """Tower bound on the number of reduction steps from a, exact.

    F1(x) = x+2, Fn(x1..xn) = (x1+1) * C ** F(n-1)(x2..xn) with C one more
    than the maximal basic length.  The value is astronomically large as
    soon as the depth exceeds 3; a guard refuses to materialize numbers
    beyond ~10^7 digits (use within_step_bound for comparisons).
    """
    C = ctx.basic_bound_C()
    lengths = [e.length for e in a.entries]

    def F(xs):
        if len(xs) == 1:
            return xs[0] + 2
        e = F(xs[1:])
        if e > 40_000_000:
            raise MultiredError(
                "step bound too large to materialize; use within_step_bound"
            )
        return (xs[0] + 1) * C**e

    if not lengths:
        return 0
    return F(lengths)


def within_step_bound(ctx: MonoidContext, a: Multifraction, k: int) -> bool:
    """Whether k <= step_bound(a), via saturating arithmetic."""
    if a.depth == 0:
        return k <= 0
    C = ctx.basic_bound_C()
    cap = k + 1
    lengths = [e.length for e in a.entries]

    def sat_pow(e: int) -> int:
        if C == 1:
            return 1
        out = 1
        for _ in range(e):
            out *= C
            if out >= cap:
                return cap
        return out

    def F(xs) -> int:
        if len(xs) == 1:
            return min(xs[0] + 2, cap)
        e = F(xs[1:])
        if e >= cap and C > 1:
            return cap
        return min((xs[0] + 1) * sat_pow(e), cap)

    return k <= F(lengths)


# ----------------------------------------------------------------------
# connecting irreducible reducts by maximal steps


def _maximal_moves(ctx: MonoidContext, a: Multifraction):
    for i in range(1, a.depth):
        for x in reducers(ctx, a, i, "maximal"):
            b = apply_left(ctx, a, i, x)
            if b is not None:
                yield Move("left", i, x), b


def connect_by_maximal_zigzag(
    ctx: MonoidContext,
    b: Multifraction,
    c: Multifraction,
    source: Multifraction,
    budget: int = 10_000,
):
    """Chain of maximal reductions and their inverses connecting b to c.

    b and c must be reducts of `source`; the search runs over the
    maximal-reduction relation restricted to the (finite) reduct set of
    the source.  Returns a list of ("fwd"|"bwd", Move) steps read from b,
    or None when the budget runs out (not a refutation).
    """
    if b == c:
        return []
    if budget <= 0:
        return None
    graph = reduct_graph(ctx, source, Side.LEFT)
    if not (graph.contains(b) and graph.contains(c)):
        raise ValueError("endpoints are not reducts of the given source")
    # undirected adjacency by maximal steps among the reducts
    adj: dict[Multifraction, list[tuple[Multifraction, str, Move]]] = {
        n: [] for n in graph.nodes
    }
    for node in graph.nodes:
        for move, nxt in _maximal_moves(ctx, node):
            adj[node].append((nxt, "fwd", move))
            adj[nxt].append((node, "bwd", move))
    parent: dict[Multifraction, tuple[Multifraction, str, Move] | None] = {b: None}
    queue = [b]
    visited = 1
    while queue:
        cur = queue.pop(0)
        for nxt, direction, move in adj[cur]:
            if nxt in parent:
                continue
            parent[nxt] = (cur, direction, move)
            visited += 1
            if nxt == c:
                path = []
                node = nxt
                while parent[node] is not None:
                    prev, direction, move = parent[node]
                    path.append((direction, move))
                    node = prev
                return list(reversed(path))
            if visited >= budget:
                return None
            queue.append(nxt)
    return None
