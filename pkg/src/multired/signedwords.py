"""Signed-word transformations: free deletion, relation equivalence on
positive or negative factors, and the two word-reversing moves.

These are the elementary moves that keep the represented group element
fixed; the random-walk generator of unital multifractions is built on them.
A right reversing rewrite s^-1 t uses the relation pair whose sides start
with s and t; a left reversing rewrite s t^-1 uses the pair whose sides end
with s and t.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .monoid import MonoidContext
from .multifraction import SignedWord


class TransformKind(Enum):
    FREE_DELETE = "free_delete"
    POS_EQUIV = "pos_equiv"
    NEG_EQUIV = "neg_equiv"
    RIGHT_REVERSE = "right_reverse"
    LEFT_REVERSE = "left_reverse"


@dataclass(frozen=True)
class Step:
    kind: TransformKind
    position: int
    length: int  # length of the replaced factor
    replacement: SignedWord


def _inverse_word(word: tuple[int, ...]) -> SignedWord:
    return tuple((a, -1) for a in reversed(word))


def _positive(word: tuple[int, ...]) -> SignedWord:
    return tuple((a, 1) for a in word)


def applicable_steps(ctx: MonoidContext, w: SignedWord) -> list[Step]:
    """All applicable elementary transformations, ordered by position then
    kind (enum order), then relation declaration order."""
    rels = ctx.pres.relations
    steps: list[Step] = []
    n = len(w)
    for pos in range(n):
        # free deletion of s s^-1 or s^-1 s
        if pos + 1 < n:
            (a1, s1), (a2, s2) = w[pos], w[pos + 1]
            if a1 == a2 and s1 == -s2:
                steps.append(Step(TransformKind.FREE_DELETE, pos, 2, ()))
        # positive equivalence: a relation side as a positive factor
        for lhs, rhs in rels:
            for src, dst in ((lhs, rhs), (rhs, lhs)):
                L = len(src)
                if pos + L <= n and all(
                    w[pos + k] == (src[k], 1) for k in range(L)
                ):
                    steps.append(
                        Step(TransformKind.POS_EQUIV, pos, L, _positive(dst))
                    )
        # negative equivalence: the inverse of a relation side as a factor
        for lhs, rhs in rels:
            for src, dst in ((lhs, rhs), (rhs, lhs)):
                inv = _inverse_word(src)
                L = len(inv)
                if pos + L <= n and tuple(w[pos + k] for k in range(L)) == inv:
                    steps.append(
                        Step(TransformKind.NEG_EQUIV, pos, L, _inverse_word(dst))
                    )
        if pos + 1 < n:
            (a1, s1), (a2, s2) = w[pos], w[pos + 1]
            # right reversing: s^-1 t -> v u^-1 with s v = t u a relation
            if s1 < 0 and s2 > 0 and a1 != a2:
                for lhs, rhs in rels:
                    sides = {lhs[0]: lhs, rhs[0]: rhs}
                    if set(sides) == {a1, a2}:
                        v = sides[a1][1:]
                        u = sides[a2][1:]
                        steps.append(
                            Step(
                                TransformKind.RIGHT_REVERSE,
                                pos,
                                2,
                                _positive(v) + _inverse_word(u),
                            )
                        )
            # left reversing: s t^-1 -> u^-1 v with u s = v t a relation
            if s1 > 0 and s2 < 0 and a1 != a2:
                for lhs, rhs in rels:
                    sides = {lhs[-1]: lhs, rhs[-1]: rhs}
                    if set(sides) == {a1, a2}:
                        u = sides[a1][:-1]
                        v = sides[a2][:-1]
                        steps.append(
                            Step(
                                TransformKind.LEFT_REVERSE,
                                pos,
                                2,
                                _inverse_word(u) + _positive(v),
                            )
                        )
    order = {k: i for i, k in enumerate(TransformKind)}
    steps.sort(key=lambda s: (s.position, order[s.kind]))
    return steps


def apply_step(w: SignedWord, step: Step) -> SignedWord:
    if not 0 <= step.position <= len(w) - step.length:
        raise ValueError("step not applicable: bad position")
    return w[: step.position] + step.replacement + w[step.position + step.length :]


def free_reduce(w: SignedWord) -> SignedWord:
    """Delete adjacent inverse pairs until none remain."""
    out: list[tuple[int, int]] = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def inverse_word(w: SignedWord) -> SignedWord:
    return tuple((a, -s) for a, s in reversed(w))
