"""Van Kampen diagrams of the universal annular shape for unital
multifractions that tame reduction sends to the trivial one.

The shape for depth n is built from n-2 four-triangle cells glued in an
annulus around the shape for depth n-2, bottoming out at the single cell
of depth 4 (whose labeling is a central cross).  One annulus corresponds
to one sweep of reductions at levels 1..m-1: cell k is the commuting
square of the step at level k, its inner edges carrying the reducer x_k,
the complement x'_{k+1} of the next step, and the partially reduced
entries.  Every triangle states one product equality in the monoid, and
the outer boundary read from the base vertex is the input multifraction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .monoid import Element, IDENTITY, MonoidContext, MultiredError, Side
from .multifraction import Multifraction, format_multifraction, unit
from .harness import has_central_cross
from .reduction import Move, ReductionTrace, apply_left, red_tame, universal_sequence


class VanKampenFailure(MultiredError):
    pass


@dataclass(frozen=True)
class VKEdge:
    src: str
    dst: str
    label: Element


@dataclass
class VanKampenDiagram:
    depth: int
    base: str
    vertices: list[str]
    edges: dict[str, VKEdge]
    # (e1, e2, e3): the path e1 then e2 closes against e3
    triangles: list[tuple[str, str, str]]
    boundary: list[str]  # edge ids for entries 1..n

    def to_json(self, ctx: MonoidContext) -> dict:
        return {
            "depth": self.depth,
            "base": self.base,
            "vertices": self.vertices,
            "edges": {
                k: {"src": e.src, "dst": e.dst, "label": ctx.word_str(e.label)}
                for k, e in sorted(self.edges.items())
            },
            "triangles": self.triangles,
            "boundary": self.boundary,
        }


def validate_diagram(ctx: MonoidContext, diagram: VanKampenDiagram, a: Multifraction) -> None:
    """Every triangle must commute and the boundary must spell out a."""
    for e1, e2, e3 in diagram.triangles:
        a1, a2, a3 = diagram.edges[e1], diagram.edges[e2], diagram.edges[e3]
        if a1.dst != a2.src or a1.src != a3.src or a2.dst != a3.dst:
            raise VanKampenFailure(f"triangle {(e1, e2, e3)} is not a path pair")
        if ctx.multiply(a1.label, a2.label) != a3.label:
            raise VanKampenFailure(f"triangle {(e1, e2, e3)} does not commute")
    if len(diagram.boundary) != a.depth:
        raise VanKampenFailure("boundary length mismatch")
    cursor = diagram.base
    ring = [diagram.base]
    for i, eid in enumerate(diagram.boundary, 1):
        e = diagram.edges[eid]
        if e.label != a.entry(i):
            raise VanKampenFailure(f"boundary entry {i} label mismatch")
        if a.sign(i) > 0:
            if e.src != cursor:
                raise VanKampenFailure(f"boundary entry {i} detached")
            cursor = e.dst
        else:
            if e.dst != cursor:
                raise VanKampenFailure(f"boundary entry {i} detached")
            cursor = e.src
        ring.append(cursor)
    if cursor != diagram.base:
        raise VanKampenFailure("boundary does not close at the base vertex")


class _Builder:
    def __init__(self, ctx: MonoidContext):
        self.ctx = ctx
        self.vertices: list[str] = []
        self.edges: dict[str, VKEdge] = {}
        self.triangles: list[tuple[str, str, str]] = []
        self._n = 0

    def vertex(self, name: str) -> str:
        if name not in self.vertices:
            self.vertices.append(name)
        return name

    def edge(self, src: str, dst: str, label: Element) -> str:
        eid = f"e{self._n}"
        self._n += 1
        self.edges[eid] = VKEdge(src, dst, label)
        return eid

    def triangle(self, e1: str, e2: str, e3: str):
        self.triangles.append((e1, e2, e3))


def _complement(ctx: MonoidContext, c: Multifraction, i: int, x: Element) -> Element:
    """The remainder x' deposited at entry i-1 by the step R(i,x) on c."""
    if x.is_identity or i == 1:
        return IDENTITY
    if c.sign(i) > 0:
        r = ctx.lcm(x, c.entry(i), Side.LEFT)
    else:
        r = ctx.lcm(x, c.entry(i), Side.RIGHT)
    assert r is not None
    return r[1]


def _apply(ctx, c, i, x):
    if x.is_identity:
        return c
    b = apply_left(ctx, c, i, x)
    assert b is not None
    return b


def _ring_edges(builder, names, mf, existing=None):
    """Boundary edges of one ring; reuses ids already created."""
    ids = []
    for i in range(1, mf.depth + 1):
        if existing is not None and existing[i - 1] is not None:
            ids.append(existing[i - 1])
            continue
        u, v = names[i - 1], names[i % mf.depth]
        if mf.sign(i) > 0:
            ids.append(builder.edge(u, v, mf.entry(i)))
        else:
            ids.append(builder.edge(v, u, mf.entry(i)))
    return ids


def derive_universal_trace(ctx: MonoidContext, a: Multifraction) -> ReductionTrace:
    """A trace along the universal level sequence (identity steps kept)."""
    moves: list[Move] = []
    end = red_tame(ctx, a, collect=moves)
    return ReductionTrace(a, tuple(moves), end)


def van_kampen(
    ctx: MonoidContext, a: Multifraction, trace: ReductionTrace | None = None
) -> VanKampenDiagram:
    """Build the universal-shape diagram for a positive unital even-depth
    multifraction from a universal-sequence trace to the trivial one.

    A given trace is used when it has exactly the universal level shape
    and ends trivially; otherwise a fresh tame trace is derived.  Raises
    VanKampenFailure when no such trace trivializes the input.
    """
    n = a.depth
    if n % 2 != 0 or n < 4:
        raise ValueError("universal diagrams need even depth >= 4")
    if a.first_sign < 0:
        raise ValueError("positive multifractions only")
    usable = None
    if trace is not None and tuple(m.level for m in trace.moves) == universal_sequence(n):
        if trace.end == unit(n) and trace.start == a:
            usable = trace
    if usable is None:
        usable = derive_universal_trace(ctx, a)
    if usable.end != unit(n):
        raise VanKampenFailure(
            "no universal-sequence trace to the trivial multifraction "
            f"(tame reduct: {format_multifraction(ctx, usable.end)})"
        )
    builder = _Builder(ctx)
    base = builder.vertex("*")
    moves = list(usable.moves)
    cur = a
    ring = 0
    outer_names = [base] + [builder.vertex(f"r0v{j}") for j in range(1, n)]
    outer_ids = _ring_edges(builder, outer_names, cur)
    boundary = list(outer_ids)
    m = n
    while m > 4:
        segment = moves[: m - 1]
        moves = moves[m - 1 :]
        cur, outer_names, outer_ids = _annulus(
            builder, ctx, cur, segment, outer_names, outer_ids, ring
        )
        ring += 1
        m -= 2
    # base cell: the depth-4 inner multifraction carries a central cross
    cross = has_central_cross(ctx, cur)
    if cross is None:
        raise VanKampenFailure("depth-4 core admits no central cross")
    x1, x2, x3, x4 = cross.rays
    hub = builder.vertex(f"r{ring}hub")
    w0, w1, w2, w3 = outer_names
    e_x1 = builder.edge(w0, hub, x1)
    e_x2 = builder.edge(hub, w1, x2)
    e_x3 = builder.edge(w2, hub, x3)
    e_x4 = builder.edge(hub, w3, x4)
    builder.triangle(e_x1, e_x2, outer_ids[0])
    builder.triangle(e_x3, e_x2, outer_ids[1])
    builder.triangle(e_x3, e_x4, outer_ids[2])
    builder.triangle(e_x1, e_x4, outer_ids[3])
    diagram = VanKampenDiagram(
        depth=n,
        base=base,
        vertices=builder.vertices,
        edges=builder.edges,
        triangles=builder.triangles,
        boundary=boundary,
    )
    validate_diagram(ctx, diagram, a)
    return diagram


def _annulus(builder, ctx, c, segment, outer_names, outer_ids, ring):
    """One sweep at levels 1..m-1: m-2 cells between the ring labeled by c
    and the ring labeled by the (depth m-2) result."""
    m = c.depth
    assert len(segment) == m - 1
    xs = {mv.level: mv.x for mv in segment}
    inter = {0: c}
    for i in range(1, m):
        inter[i] = _apply(ctx, inter[i - 1], i, xs[i])
    comp = {i: _complement(ctx, inter[i - 1], i, xs[i]) for i in range(1, m)}
    end = inter[m - 1]
    if not (end.entry(m - 1).is_identity and end.entry(m).is_identity):
        raise VanKampenFailure("sweep does not trivialize the top entries")
    d = Multifraction(c.first_sign, end.entries[: m - 2])
    inner_names = [outer_names[0]] + [
        builder.vertex(f"r{ring + 1}v{j}") for j in range(1, m - 2)
    ]
    inner_ids: list[str | None] = [None] * (m - 2)
    U = outer_names + [outer_names[0]]
    W = inner_names + [inner_names[0]]
    centers = [builder.vertex(f"r{ring}x{k}") for k in range(1, m - 1)]

    # cell 1: couples the steps at levels 1 and 2
    X1 = centers[0]
    e_c11 = builder.edge(U[0], X1, inter[1].entry(1))
    e_x1 = builder.edge(X1, U[1], xs[1])
    e_c12 = builder.edge(U[2], X1, inter[1].entry(2))
    e_cmp2 = builder.edge(X1, W[1], comp[2])
    shared = builder.edge(U[2], W[1], ctx.multiply(inter[1].entry(2), comp[2]))
    e_d1 = builder.edge(W[0], W[1], d.entry(1))
    inner_ids[0] = e_d1
    builder.triangle(e_c11, e_x1, outer_ids[0])
    builder.triangle(e_c12, e_x1, outer_ids[1])
    builder.triangle(e_c12, e_cmp2, shared)
    builder.triangle(e_c11, e_cmp2, e_d1)

    # middle cells: cell k couples the steps at levels k and k+1
    for k in range(2, m - 2):
        Xk = centers[k - 1]
        if k % 2 == 0:  # level k negative
            e_xk = builder.edge(U[k], Xk, xs[k])
            e_ck1 = builder.edge(Xk, U[k + 1], inter[k].entry(k + 1))
            e_ckk = builder.edge(Xk, W[k - 1], inter[k].entry(k))
            e_cmp = builder.edge(W[k], Xk, comp[k + 1])
            new_shared = builder.edge(
                W[k], U[k + 1], ctx.multiply(comp[k + 1], inter[k].entry(k + 1))
            )
            e_dk = builder.edge(W[k], W[k - 1], d.entry(k))
            builder.triangle(e_xk, e_ck1, outer_ids[k])
            builder.triangle(e_xk, e_ckk, shared)
            builder.triangle(e_cmp, e_ckk, e_dk)
            builder.triangle(e_cmp, e_ck1, new_shared)
        else:  # level k positive
            e_xk = builder.edge(Xk, U[k], xs[k])
            e_ck1 = builder.edge(U[k + 1], Xk, inter[k].entry(k + 1))
            e_ckk = builder.edge(W[k - 1], Xk, inter[k].entry(k))
            e_cmp = builder.edge(Xk, W[k], comp[k + 1])
            new_shared = builder.edge(
                U[k + 1], W[k], ctx.multiply(inter[k].entry(k + 1), comp[k + 1])
            )
            e_dk = builder.edge(W[k - 1], W[k], d.entry(k))
            builder.triangle(e_ck1, e_xk, outer_ids[k])
            builder.triangle(e_ckk, e_xk, shared)
            builder.triangle(e_ckk, e_cmp, e_dk)
            builder.triangle(e_ck1, e_cmp, new_shared)
        inner_ids[k - 1] = e_dk
        shared = new_shared

    # final cell: couples the steps at levels m-2 and m-1 and closes the ring
    Xf = centers[m - 3]
    k = m - 2  # even: level m-2 is negative
    e_xf = builder.edge(U[k], Xf, xs[k])
    e_cf1 = builder.edge(Xf, U[k + 1], inter[k].entry(k + 1))
    e_cfk = builder.edge(Xf, W[k - 1], inter[k].entry(k))
    e_cmp = builder.edge(U[0], Xf, comp[m - 1])
    e_dlast = builder.edge(W[0], W[k - 1], d.entry(m - 2))
    inner_ids[m - 3] = e_dlast
    builder.triangle(e_xf, e_cf1, outer_ids[m - 2])
    builder.triangle(e_xf, e_cfk, shared)
    builder.triangle(e_cmp, e_cf1, outer_ids[m - 1])
    builder.triangle(e_cmp, e_cfk, e_dlast)

    ids = _ring_edges(builder, inner_names, d, existing=inner_ids)
    return d, inner_names, ids
