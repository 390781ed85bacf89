"""Experimental harness: generators of unital multifractions, conjecture
testers, depth-4 central-cross machinery, bounded 3-Ore scans, the word
problem, and seeded campaign runs.

Verdict discipline: a "counterexample" is only ever reported from a fully
expanded reduct graph with no inconclusive edges, together with an
independently replayable certificate of unitality; cap overflows degrade
verdicts to "inconclusive".  Negative word-problem answers are
unconditional for presets of FC type (and whenever the signed length is
nonzero), conditional on semi-convergence otherwise.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field

from .monoid import (
    CapExceeded,
    Element,
    IDENTITY,
    MonoidContext,
    MultiredError,
    Side,
    TriState,
)
from .multifraction import (
    Multifraction,
    SignedWord,
    format_multifraction,
    from_signed_word,
    unit,
)
from . import reduction as red
from .reduction import (
    Move,
    apply_left,
    apply_right,
    red_tame,
    red_tame_fixpoint,
    reduce_left,
    reduce_right,
    reduct_graph,
    replay,
)
from .signedwords import applicable_steps, apply_step


def derive_seed(master: int, index: int) -> int:
    digest = hashlib.sha256(f"{master}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ----------------------------------------------------------------------
# certificates and verdicts


@dataclass(frozen=True)
class CentralCross:
    rays: tuple[Element, ...]  # x_1 .. x_n, n even, x_{n+1} = x_1


@dataclass(frozen=True)
class UnitalCertificate:
    kind: str  # brownian_trace | central_cross_seed | lcm_expansion_chain | explicit_trace_to_1
    payload: dict


@dataclass
class Verdict:
    status: str  # confirmed | counterexample | inconclusive
    evidence: dict = field(default_factory=dict)
    millis: float = 0.0

    def to_json(self) -> dict:
        return {"status": self.status, "evidence": self.evidence, "millis": self.millis}


def assemble_cross(ctx: MonoidContext, rays, first_sign: int = 1) -> Multifraction:
    """Entries from a ray sequence: entry i is x_i*x_{i+1} at positive
    indices and x_{i+1}*x_i at negative ones, indices wrapping."""
    rays = tuple(rays)
    n = len(rays)
    if n % 2 != 0 or n < 2:
        raise ValueError("central crosses need even depth >= 2")
    entries = []
    shell = Multifraction(first_sign, (IDENTITY,) * n)
    for i in range(1, n + 1):
        x, x_next = rays[i - 1], rays[i % n]
        if shell.sign(i) > 0:
            entries.append(ctx.multiply(x, x_next))
        else:
            entries.append(ctx.multiply(x_next, x))
    return Multifraction(first_sign, tuple(entries))


def cross_is_valid(ctx: MonoidContext, a: Multifraction, cross: CentralCross) -> bool:
    return assemble_cross(ctx, cross.rays, a.first_sign) == a


def validate_certificate(ctx: MonoidContext, a: Multifraction, cert: UnitalCertificate) -> bool:
    """Replay the certificate payload and check it proves a unital."""
    if cert.kind == "central_cross_seed":
        rays = tuple(ctx.element(w) for w in cert.payload["rays"])
        return cross_is_valid(ctx, a, CentralCross(rays))
    if cert.kind == "brownian_trace":
        w: SignedWord = ()
        for item in cert.payload["walk"]:
            w = _replay_walk_step(ctx, w, item)
        return from_signed_word(ctx, w) == a
    if cert.kind == "lcm_expansion_chain":
        base_rays = tuple(ctx.element(t) for t in cert.payload["rays"])
        cur = assemble_cross(ctx, base_rays)
        for choices in cert.payload["choices"]:
            cur = lcm_expand(ctx, cur, choices=[ctx.element(t) for t in choices])
            if cur is None:
                return False
        return cur == a
    if cert.kind == "explicit_trace_to_1":
        moves = [
            Move(m["kind"], m["level"], ctx.element(m["x"]))
            for m in cert.payload["moves"]
        ]
        return replay(ctx, a, moves) == unit(a.depth * (1 if a.first_sign > 0 else -1))
    raise ValueError(f"unknown certificate kind {cert.kind!r}")


# ----------------------------------------------------------------------
# generators


def gen_element(ctx: MonoidContext, length: int, seed: int) -> Element:
    rng = random.Random(seed)
    word = tuple(rng.randrange(ctx.pres.n_atoms) for _ in range(length))
    e = ctx.canonical(word)
    assert e.length == length
    return e


def gen_multifraction(ctx: MonoidContext, depth: int, max_entry_len: int, seed: int) -> Multifraction:
    rng = random.Random(seed)
    entries = [
        gen_element(ctx, rng.randint(0, max_entry_len), derive_seed(seed, i))
        for i in range(depth)
    ]
    return Multifraction(1, tuple(entries))


_WALK_INSERT = 0.5
_WALK_TRANSFORM = 0.4  # remainder is deletion


def _replay_walk_step(ctx: MonoidContext, w: SignedWord, item: dict) -> SignedWord:
    if item["op"] == "insert":
        pos, atom, sign = item["pos"], item["atom"], item["sign"]
        pair = ((atom, sign), (atom, -sign))
        return w[:pos] + pair + w[pos:]
    if item["op"] == "delete":
        pos = item["pos"]
        assert w[pos][0] == w[pos + 1][0] and w[pos][1] == -w[pos + 1][1]
        return w[:pos] + w[pos + 2:]
    if item["op"] == "transform":
        steps = applicable_steps(ctx, w)
        return apply_step(w, steps[item["index"]])
    raise ValueError(item)


def gen_unital_brownian(
    ctx: MonoidContext, target_length: int, seed: int
) -> tuple[Multifraction, UnitalCertificate]:
    """Random walk on signed words from the empty word: insert cancelling
    pairs, apply random elementary transformations, occasionally delete an
    inverse pair.  Every step preserves the represented group element, so
    the result is unital and the recorded walk is its certificate."""
    rng = random.Random(seed)
    w: SignedWord = ()
    walk: list[dict] = []
    max_steps = 40 + 20 * target_length
    for _ in range(max_steps):
        if len(w) >= target_length:
            break
        roll = rng.random()
        if roll < _WALK_INSERT or not w:
            pos = rng.randint(0, len(w))
            atom = rng.randrange(ctx.pres.n_atoms)
            sign = rng.choice((1, -1))
            item = {"op": "insert", "pos": pos, "atom": atom, "sign": sign}
        elif roll < _WALK_INSERT + _WALK_TRANSFORM:
            steps = applicable_steps(ctx, w)
            if not steps:
                continue
            item = {"op": "transform", "index": rng.randrange(len(steps))}
        else:
            pairs = [
                k
                for k in range(len(w) - 1)
                if w[k][0] == w[k + 1][0] and w[k][1] == -w[k + 1][1]
            ]
            if not pairs:
                continue
            item = {"op": "delete", "pos": rng.choice(pairs)}
        w = _replay_walk_step(ctx, w, item)
        walk.append(item)
    a = from_signed_word(ctx, w)
    return a, UnitalCertificate("brownian_trace", {"walk": walk})


def gen_central_cross(
    ctx: MonoidContext,
    depth: int,
    ray_length: int,
    seed: int,
    rays: tuple[Element, ...] | None = None,
) -> tuple[Multifraction, CentralCross]:
    """Multifraction with an explicit central cross; unital by construction.
    Random rays of the given length unless explicit rays are supplied."""
    if depth % 2 != 0 or depth < 2:
        raise ValueError("central crosses need even depth >= 2")
    if rays is None:
        rng = random.Random(seed)
        rays = tuple(
            gen_element(ctx, rng.randint(0, ray_length), derive_seed(seed, i))
            for i in range(depth)
        )
    cross = CentralCross(rays)
    return assemble_cross(ctx, rays), cross


def lcm_expand(
    ctx: MonoidContext,
    a: Multifraction,
    seed: int | None = None,
    choices: list[Element] | None = None,
) -> Multifraction | None:
    """One lcm-expansion step of an even-depth unital multifraction.

    A left divisor a'_i of each entry is chosen (randomly per seed unless
    given).  At each source vertex (negative index i) the right lcm of
    a'_i and a'_{i+1} contributes the second factors of the new entries;
    at each sink vertex (positive index i) the left lcm of the remainders
    a''_i and a''_{i+1} contributes the first factors.  Indices wrap.
    Returns None when a required lcm does not exist.  The result is
    conjugate to a in the enveloping group, hence unital when a is.
    """
    n = a.depth
    if n % 2 != 0 or n < 2:
        raise ValueError("lcm expansion needs even depth")
    if choices is None:
        rng = random.Random(seed)
        choices = []
        for i in range(1, n + 1):
            divs = ctx.divisors(a.entry(i), Side.LEFT)
            choices.append(divs[rng.randrange(len(divs))])
    primes: list[Element] = []
    seconds: list[Element] = []
    for i in range(1, n + 1):
        d = choices[i - 1]
        q = ctx.divides(d, a.entry(i), Side.LEFT)
        if q is None:
            raise ValueError(f"choice {ctx.word_str(d)} does not divide entry {i}")
        primes.append(d)
        seconds.append(q)

    def prime(i):  # a'_i, 1-based cyclic
        return primes[(i - 1) % n]

    def second(i):  # a''_i
        return seconds[(i - 1) % n]

    bp: dict[int, Element] = {}
    bpp: dict[int, Element] = {}
    for i in range(1, n + 1):
        if a.sign(i) < 0:
            r = ctx.lcm(prime(i), prime(i + 1), Side.RIGHT)
            if r is None:
                return None
            m, compA, compB = r  # m = prime(i+1)*compA = prime(i)*compB
            bpp[(i - 2) % n + 1] = compB  # prime(i) * b''_{i-1} = m
            bpp[i] = compA               # prime(i+1) * b''_i = m
        else:
            r = ctx.lcm(second(i), second(i + 1), Side.LEFT)
            if r is None:
                return None
            m, compA, compB = r  # m = compA*second(i+1) = compB*second(i)
            bp[(i - 2) % n + 1] = compB  # b'_{i-1} * second(i) = m
            bp[i] = compA                # b'_i * second(i+1) = m
    entries = tuple(ctx.multiply(bp[i], bpp[i]) for i in range(1, n + 1))
    return Multifraction(a.first_sign, entries)


# ----------------------------------------------------------------------
# conjecture testers


def _timer():
    start = time.perf_counter()
    return lambda: (time.perf_counter() - start) * 1000.0


def test_conjecture_A(
    ctx: MonoidContext, a: Multifraction, certificate: UnitalCertificate
) -> Verdict:
    """Semi-convergence on one unital instance: a must reduce to the
    trivial multifraction.  Fast path: one strategy run; fallback:
    exhaustive graph search."""
    ms = _timer()
    if not validate_certificate(ctx, a, certificate):
        raise MultiredError("certificate does not prove the input unital")
    trivial = unit(a.depth if a.first_sign > 0 else -a.depth)
    tr = reduce_left(ctx, a)
    if tr.end == trivial:
        return Verdict(
            "confirmed",
            {"trace_levels": [m.level for m in tr.moves], "steps": len(tr.moves)},
            ms(),
        )
    try:
        graph = reduct_graph(ctx, a, Side.LEFT)
    except CapExceeded as e:
        return Verdict("inconclusive", {"reason": str(e)}, ms())
    if graph.contains(trivial):
        return Verdict("confirmed", {"via": "graph", "nodes": len(graph.nodes)}, ms())
    if graph.complete:
        return Verdict(
            "counterexample",
            {"nodes": len(graph.nodes), "certificate": certificate.kind},
            ms(),
        )
    return Verdict("inconclusive", {"incomplete_edges": len(graph.inconclusive)}, ms())


def test_conjecture_B(
    ctx: MonoidContext, a: Multifraction, certificate: UnitalCertificate
) -> Verdict:
    """One tame pass must trivialize a unital multifraction.  The iterated
    fixpoint is recorded alongside (a single pass is what the conjecture
    asserts)."""
    ms = _timer()
    if not validate_certificate(ctx, a, certificate):
        raise MultiredError("certificate does not prove the input unital")
    trivial = unit(a.depth if a.first_sign > 0 else -a.depth)
    out = red_tame(ctx, a)
    fix, iters = red_tame_fixpoint(ctx, a)
    evidence = {
        "red_tame": format_multifraction(ctx, out),
        "fixpoint": format_multifraction(ctx, fix),
        "fixpoint_iterations": iters,
    }
    if out == trivial:
        return Verdict("confirmed", evidence, ms())
    return Verdict("counterexample", evidence, ms())


def test_cross_confluence_pair(
    ctx: MonoidContext, b: Multifraction, c: Multifraction, a: Multifraction
) -> Verdict:
    """b, c right reducts of a: search for a common left reduct."""
    ms = _timer()
    try:
        gb = reduct_graph(ctx, b, Side.LEFT)
        gc = reduct_graph(ctx, c, Side.LEFT)
    except CapExceeded as e:
        return Verdict("inconclusive", {"reason": str(e)}, ms())
    common = [n for n in gb.nodes if gc.contains(n)]
    if common:
        witness = min(common, key=lambda m: (m.total_length(), format_multifraction(ctx, m)))
        return Verdict(
            "confirmed",
            {
                "witness": format_multifraction(ctx, witness),
                "common": sorted(format_multifraction(ctx, x) for x in common),
            },
            ms(),
        )
    if gb.complete and gc.complete:
        return Verdict("counterexample", {"b_nodes": len(gb.nodes), "c_nodes": len(gc.nodes)}, ms())
    return Verdict("inconclusive", {}, ms())


def _latest_common_ancestors(ctx, graph, targets):
    """Nodes from which every target is reachable and no strictly later
    such node exists (left reduct graphs are acyclic)."""
    reach: dict[int, set[int]] = {}
    order = list(range(len(graph.nodes)))
    succ: dict[int, set[int]] = {k: set() for k in order}
    for s, _, d in graph.edges:
        succ[s].add(d)
    target_idx = {graph.index[t] for t in targets}

    def reachable(k, memo={}):
        if k in memo:
            return memo[k]
        out = {k}
        for d in succ[k]:
            out |= reachable(d)
        memo[k] = out
        return out

    candidates = [k for k in order if target_idx <= reachable(k)]
    latest = [
        k
        for k in candidates
        if not any(j in candidates for j in reachable(k) - {k})
    ]
    return [graph.nodes[k] for k in latest]


def test_conjecture_C_uniform(ctx: MonoidContext, a: Multifraction) -> Verdict:
    """Uniform cross-confluence on one instance: a single d with every
    right reduct of a left-reducing to d.  The two natural candidates
    (the tame reduct and the latest common ancestor of the irreducible
    left reducts) are evaluated alongside the witness set."""
    ms = _timer()
    try:
        rg = reduct_graph(ctx, a, Side.RIGHT)
        left_sets = []
        for node in rg.nodes:
            g = reduct_graph(ctx, node, Side.LEFT)
            left_sets.append((g, set(g.nodes)))
    except CapExceeded as e:
        return Verdict("inconclusive", {"reason": str(e)}, ms())
    witnesses = set.intersection(*(s for _, s in left_sets)) if left_sets else set()
    lg = reduct_graph(ctx, a, Side.LEFT)
    irr = lg.sinks()
    lca = _latest_common_ancestors(ctx, lg, irr) if irr else []
    tame = red_tame(ctx, a)
    evidence = {
        "right_reducts": len(rg.nodes),
        "witnesses": sorted(format_multifraction(ctx, w) for w in witnesses),
        "red_tame": format_multifraction(ctx, tame),
        "red_tame_is_witness": tame in witnesses,
        "latest_common_ancestors": sorted(format_multifraction(ctx, x) for x in lca),
        "lca_is_witness": any(x in witnesses for x in lca),
    }
    if witnesses:
        return Verdict("confirmed", evidence, ms())
    complete = rg.complete and all(g.complete for g, _ in left_sets)
    return Verdict("counterexample" if complete else "inconclusive", evidence, ms())


def four_strategy_C_probe(ctx: MonoidContext, a: Multifraction) -> Verdict:
    """Strategy-restricted cross-confluence: the four strategy right
    reducts must all left-reduce to one of the four strategy left reducts
    (the all-pairs outcome is recorded as well)."""
    ms = _timer()
    rights = [reduce_right(ctx, a, s).end for s in red.STRATEGIES]
    lefts = [reduce_left(ctx, a, s).end for s in red.STRATEGIES]
    try:
        graphs = [reduct_graph(ctx, b, Side.LEFT) for b in rights]
    except CapExceeded as e:
        return Verdict("inconclusive", {"reason": str(e)}, ms())
    table = [[g.contains(c) for c in lefts] for g in graphs]
    exists_k = any(all(row[k] for row in table) for k in range(len(lefts)))
    all_pairs = all(all(row) for row in table)
    evidence = {
        "rights": [format_multifraction(ctx, b) for b in rights],
        "lefts": [format_multifraction(ctx, c) for c in lefts],
        "exists_k_forall_j": exists_k,
        "forall_k_forall_j": all_pairs,
    }
    return Verdict("confirmed" if exists_k else "counterexample", evidence, ms())


# ----------------------------------------------------------------------
# depth-4 central-cross machinery


def has_central_cross(ctx: MonoidContext, a: Multifraction) -> CentralCross | None:
    """Decide central-cross existence for a depth-4 multifraction through
    the adjacent-gcd quotient equations."""
    if a.depth != 4:
        raise ValueError("central-cross decision is depth-4 only")
    if a.first_sign < 0:
        # (x1..x4) is a cross for b4/b1/b2/b3 iff (x2,x3,x4,x1) is one for a
        rot = Multifraction(1, (a.entries[3], a.entries[0], a.entries[1], a.entries[2]))
        cross = has_central_cross(ctx, rot)
        if cross is None:
            return None
        x1, x2, x3, x4 = cross.rays
        restored = CentralCross((x2, x3, x4, x1))
        assert cross_is_valid(ctx, a, restored)
        return restored
    g12 = ctx.gcd(a.entry(1), a.entry(2), Side.RIGHT)
    g34 = ctx.gcd(a.entry(3), a.entry(4), Side.RIGHT)
    x = ctx.divides(g12, a.entry(1), Side.RIGHT)
    y = ctx.divides(g12, a.entry(2), Side.RIGHT)
    assert x is not None and y is not None
    if a.entry(3) != ctx.multiply(y, g34) or a.entry(4) != ctx.multiply(x, g34):
        return None
    cross = CentralCross((x, g12, y, g34))
    assert cross_is_valid(ctx, a, cross)
    return cross


def check_depth4_equivalences(ctx: MonoidContext, a: Multifraction) -> dict:
    """The three depth-4 predicates (graph reachability of the trivial
    multifraction, one-pass tame trivialization, central cross) must agree;
    raises when they do not."""
    if a.depth != 4:
        raise ValueError("depth-4 check")
    trivial = unit(4 if a.first_sign > 0 else -4)
    graph = reduct_graph(ctx, a, Side.LEFT)
    reaches = graph.contains(trivial)
    tame = red_tame(ctx, a) == trivial
    crossed = has_central_cross(ctx, a) is not None
    report = {
        "reduces_to_trivial": reaches,
        "red_tame_trivial": tame,
        "central_cross": crossed,
        "agree": reaches == tame == crossed,
    }
    if not report["agree"]:
        raise MultiredError(f"depth-4 equivalence violated: {report}")
    return report


def unique_fraction_probe(
    ctx: MonoidContext, a: Element, b: Element, c: Element, d: Element
) -> dict:
    """For a b^-1 = c d^-1 certified in the group: reduced numerators and
    denominators must coincide; in general the common cofactors x, y with
    a = x(a /\\~ b), b = y(a /\\~ b), c = x(c /\\~ d), d = y(c /\\~ d) are
    produced and verified."""
    quad = Multifraction(1, (a, b, d, c))
    cross = has_central_cross(ctx, quad)
    if cross is None:
        raise MultiredError("inputs do not represent the same fraction")
    gab = ctx.gcd(a, b, Side.RIGHT)
    gcd_ = ctx.gcd(c, d, Side.RIGHT)
    x = ctx.divides(gab, a, Side.RIGHT)
    y = ctx.divides(gab, b, Side.RIGHT)
    ok = (
        x is not None
        and y is not None
        and c == ctx.multiply(x, gcd_)
        and d == ctx.multiply(y, gcd_)
    )
    report = {
        "x": ctx.word_str(x),
        "y": ctx.word_str(y),
        "gcd_ab": ctx.word_str(gab),
        "gcd_cd": ctx.word_str(gcd_),
        "factorization_holds": ok,
        "reduced_pair_equal": None,
    }
    if gab.is_identity and gcd_.is_identity:
        report["reduced_pair_equal"] = a == c and b == d
    if not ok:
        raise MultiredError(f"unique-fraction factorization failed: {report}")
    return report


# ----------------------------------------------------------------------
# 3-Ore scan, word problem, mixed cycle


def three_ore_scan(ctx: MonoidContext, max_len: int, side: Side = Side.RIGHT) -> dict:
    """Bounded scan for triples violating the 3-Ore condition: pairwise
    common multiples but no global one."""
    elements = [e for e in ctx.elements_up_to(max_len) if not e.is_identity]
    violations = []
    inconclusive = []
    n = len(elements)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                x, y, z = elements[i], elements[j], elements[k]
                pair_states = [
                    ctx.common_multiple_exists(x, y, side),
                    ctx.common_multiple_exists(y, z, side),
                    ctx.common_multiple_exists(x, z, side),
                ]
                if any(s is TriState.NO for s in pair_states):
                    continue
                if any(s is TriState.INCONCLUSIVE for s in pair_states):
                    inconclusive.append([ctx.word_str(t) for t in (x, y, z)])
                    continue
                m = ctx.lcm(x, y, side)[0]
                global_state = ctx.common_multiple_exists(m, z, side)
                if global_state is TriState.NO:
                    violations.append([ctx.word_str(t) for t in (x, y, z)])
                elif global_state is TriState.INCONCLUSIVE:
                    inconclusive.append([ctx.word_str(t) for t in (x, y, z)])
    return {
        "max_len": max_len,
        "side": side.value,
        "elements": n,
        "violations": violations,
        "inconclusive": inconclusive,
    }


def word_problem(ctx: MonoidContext, w: SignedWord) -> dict:
    """Does the signed word represent the group unit?

    verdict: trivial | nontrivial | inconclusive.  Positive answers are
    unconditional.  Negative answers are unconditional when the signed
    length is nonzero or the preset is of FC type, and conditional on
    semi-convergence otherwise.
    """
    a = from_signed_word(ctx, w)
    n = a.depth
    result = {
        "multifraction": format_multifraction(ctx, a),
        "depth": n,
    }
    if a.weight() != 0:
        result.update(verdict="nontrivial", unconditional=True, basis="signed-length")
        return result
    tr = reduce_left(ctx, a)
    if tr.end == unit(n):
        result.update(
            verdict="trivial", unconditional=True, basis="trace",
            steps=len(tr.moves),
        )
        return result
    try:
        graph = reduct_graph(ctx, a, Side.LEFT)
    except CapExceeded as e:
        result.update(verdict="inconclusive", basis=str(e))
        return result
    if graph.contains(unit(n)):
        result.update(verdict="trivial", unconditional=True, basis="graph")
        return result
    if not graph.complete:
        result.update(verdict="inconclusive", basis="incomplete graph")
        return result
    fc = ctx.pres.fc
    result.update(
        verdict="nontrivial",
        unconditional=bool(fc),
        basis="exhaustive-fc" if fc else "exhaustive, conditional on semi-convergence",
    )
    return result


def mixed_cycle_probe(ctx: MonoidContext, iterations: int = 3) -> dict:
    """Replay the alternating left/right six-move cycle that scales the
    outer entries of 1/a/bc/1, witnessing that the joint rewrite system
    does not terminate."""
    el = ctx.element
    start = Multifraction(1, (IDENTITY, el("a"), el("bc"), IDENTITY))
    seq = [
        ("left", 2, "b"),
        ("right", 3, "a"),
        ("left", 2, "c"),
        ("right", 3, "b"),
        ("left", 2, "a"),
        ("right", 3, "c"),
    ]
    outer_left = el("bacbac")
    outer_right = el("acbacb")
    results = []
    cur = start
    ok = True
    for p in range(1, iterations + 1):
        for kind, i, x in seq:
            fn = apply_left if kind == "left" else apply_right
            cur = fn(ctx, cur, i, el(x))
            if cur is None:
                raise MultiredError("mixed cycle move failed to apply")
        expected = Multifraction(
            1,
            (
                ctx.product([outer_left] * p),
                el("a"),
                el("bc"),
                ctx.product([outer_right] * p),
            ),
        )
        match = cur == expected
        ok = ok and match
        results.append(
            {"p": p, "value": format_multifraction(ctx, cur), "matches": match}
        )
    return {"start": format_multifraction(ctx, start), "iterations": results, "ok": ok}


# ----------------------------------------------------------------------
# campaigns


@dataclass
class CampaignConfig:
    preset: str
    conjecture: str  # A | B | C | Cunif | depth4
    depth: int = 4
    length: int = 20
    trials: int = 100
    seed: int = 0
    jobs: int = 1
    expansions: int = 1


@dataclass
class CampaignReport:
    config: CampaignConfig
    counts: dict
    trace_lengths: dict
    millis: float
    records: list[dict]
    counterexample: dict | None = None

    def to_json(self, include_timing: bool = True) -> dict:
        """Timings are only reproducible run to run when excluded; the CLI
        prints the timing-free form and keeps timings in the trial log."""
        out = {
            "config": self.config.__dict__,
            "counts": self.counts,
            "trace_lengths": self.trace_lengths,
            "counterexample": self.counterexample,
            "records": self.records,
        }
        if include_timing:
            out["millis"] = self.millis
        else:
            out["records"] = [
                {k: v for k, v in rec.items() if k != "millis"} for rec in self.records
            ]
            if out["counterexample"] is not None:
                out["counterexample"] = {
                    k: v for k, v in out["counterexample"].items() if k != "millis"
                }
        return out


def _gen_unital_for_campaign(ctx, depth, length, expansions, seed):
    """Cross-seeded unital input of bounded total length, with a chained
    certificate over the expansion steps."""
    rng = random.Random(seed)
    ray_cap = max(1, length // depth)
    for attempt in range(50):
        rays = tuple(
            gen_element(ctx, rng.randint(0, ray_cap), derive_seed(seed, 100 + 7 * attempt + i))
            for i in range(depth)
        )
        a = assemble_cross(ctx, rays)
        if a.total_length() > length:
            continue
        chain = []
        for _ in range(rng.randint(0, expansions)):
            choices = []
            for i in range(1, a.depth + 1):
                divs = ctx.divisors(a.entry(i), Side.LEFT)
                choices.append(divs[rng.randrange(len(divs))])
            nxt = lcm_expand(ctx, a, choices=choices)
            if nxt is None or nxt.total_length() > length:
                break
            chain.append([ctx.word_str(c) for c in choices])
            a = nxt
        if a.total_length() <= length:
            cert = UnitalCertificate(
                "lcm_expansion_chain",
                {"rays": [ctx.word_str(r) for r in rays], "choices": chain},
            )
            return a, cert
    raise MultiredError("failed to generate a bounded unital input")


def run_trial(ctx: MonoidContext, config: CampaignConfig, index: int) -> dict:
    seed = derive_seed(config.seed, index)
    start = time.perf_counter()
    if config.conjecture in ("A", "B"):
        a, cert = _gen_unital_for_campaign(
            ctx, config.depth, config.length, config.expansions, seed
        )
        tester = test_conjecture_A if config.conjecture == "A" else test_conjecture_B
        verdict = tester(ctx, a, cert)
    elif config.conjecture in ("C", "Cunif"):
        a = gen_multifraction(ctx, config.depth, max(1, config.length // config.depth), seed)
        verdict = (
            test_conjecture_C_uniform(ctx, a)
            if config.conjecture == "Cunif"
            else four_strategy_C_probe(ctx, a)
        )
    elif config.conjecture == "depth4":
        if index % 2 == 0:
            a, _ = gen_central_cross(ctx, 4, max(1, config.length // 8), seed)
        else:
            a = gen_multifraction(ctx, 4, max(1, config.length // 4), seed)
        report = check_depth4_equivalences(ctx, a)
        verdict = Verdict("confirmed", report)
    else:
        raise ValueError(f"unknown conjecture {config.conjecture!r}")
    millis = (time.perf_counter() - start) * 1000.0
    return {
        "trial": index,
        "seed": seed,
        "input": format_multifraction(ctx, a),
        "verdict": verdict.status,
        "moves": verdict.evidence.get("steps"),
        "millis": round(millis, 3),
        "evidence": verdict.evidence,
    }


def _pool_trial(args):
    preset_text, caps_dict, config_dict, index = args
    ctx = _pool_context(preset_text, tuple(sorted(caps_dict.items())))
    config = CampaignConfig(**config_dict)
    return run_trial(ctx, config, index)


_POOL_CTX: dict[tuple, MonoidContext] = {}


def _pool_context(preset_text: str, caps_items: tuple) -> MonoidContext:
    from .monoid import Caps
    from .presentation import parse_presentation

    key = (preset_text, caps_items)
    ctx = _POOL_CTX.get(key)
    if ctx is None:
        ctx = MonoidContext(parse_presentation(preset_text), Caps(**dict(caps_items)))
        _POOL_CTX[key] = ctx
    return ctx


def run_campaign(
    ctx: MonoidContext,
    config: CampaignConfig,
    log_stream=None,
) -> CampaignReport:
    """Run seeded independent trials; any counterexample halts the run and
    is dumped with its full evidence for replay."""
    start = time.perf_counter()
    records: list[dict] = []
    counterexample = None
    if config.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        from .presentation import format_presentation

        text = format_presentation(ctx.pres)
        caps = ctx.caps.__dict__
        args = [(text, caps, config.__dict__, i) for i in range(config.trials)]
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for rec in pool.map(_pool_trial, args):
                records.append(rec)
                if rec["verdict"] == "counterexample":
                    counterexample = rec
                    break
    else:
        for i in range(config.trials):
            rec = run_trial(ctx, config, i)
            records.append(rec)
            if log_stream is not None:
                log_stream.write(json.dumps(rec, sort_keys=True) + "\n")
            if rec["verdict"] == "counterexample":
                counterexample = rec
                break
    records.sort(key=lambda r: r["trial"])
    counts: dict[str, int] = {}
    for rec in records:
        counts[rec["verdict"]] = counts.get(rec["verdict"], 0) + 1
    lengths = [rec["moves"] for rec in records if isinstance(rec.get("moves"), int)]
    trace_lengths = {
        "min": min(lengths) if lengths else None,
        "max": max(lengths) if lengths else None,
        "mean": (sum(lengths) / len(lengths)) if lengths else None,
    }
    return CampaignReport(
        config=config,
        counts=counts,
        trace_lengths=trace_lengths,
        millis=(time.perf_counter() - start) * 1000.0,
        records=records,
        counterexample=counterexample,
    )


def dump_counterexample(ctx: MonoidContext, record: dict, directory: str) -> list[str]:
    """Write the graph (DOT) and certificate (JSON) for a counterexample."""
    import os

    os.makedirs(directory, exist_ok=True)
    from .multifraction import parse_multifraction

    a = parse_multifraction(ctx, record["input"])
    paths = []
    graph = reduct_graph(ctx, a, Side.LEFT)
    dot_path = os.path.join(directory, f"counterexample_{record['trial']}.dot")
    with open(dot_path, "w") as fh:
        fh.write(graph.to_dot(ctx))
    paths.append(dot_path)
    json_path = os.path.join(directory, f"counterexample_{record['trial']}.json")
    with open(json_path, "w") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
    paths.append(json_path)
    return paths
