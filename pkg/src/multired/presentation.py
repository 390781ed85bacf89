"""Monoid presentations: atoms plus homogeneous relations.

A presentation is the ground data for everything else in this package.  We
only accept positive homogeneous presentations (both sides of every relation
have the same length, at least 2) with at most one relation per pair of
atoms, each relation's two sides starting with distinct atoms.  Homogeneity
gives a length function that is additive under multiplication, which the
whole rewrite machinery relies on.

Atom order is declaration order; it fixes every lexicographic tie-break
downstream, so parsing is fully deterministic.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

FORBIDDEN_NAME_CHARS = set("/^-.")


class PresentationError(Exception):
    """Base class for presentation parsing/validation failures."""


class PresentationSyntaxError(PresentationError):
    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class ValidationFailure(PresentationError):
    """Raised when a structural invariant of a presentation is violated."""


@dataclass(frozen=True)
class AtomId:
    index: int
    name: str


@dataclass(frozen=True)
class Presentation:
    name: str
    atoms: tuple[AtomId, ...]
    # each relation is a pair of words, a word being a tuple of atom indices
    relations: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    # True/False when the preset is known to satisfy / fail the 3-Ore
    # condition (type FC); None when unknown (e.g. parsed from a file).
    fc: bool | None = field(default=None, compare=False)

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    @property
    def atom_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.atoms)

    def atom_index(self, name: str) -> int:
        for a in self.atoms:
            if a.name == name:
                return a.index
        raise KeyError(name)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple[CheckResult, ...]
    artin_tits: bool

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _word_str(p: Presentation, word: tuple[int, ...]) -> str:
    names = [p.atoms[i].name for i in word]
    if not names:
        return "1"
    if all(len(n) == 1 for n in p.atom_names):
        return "".join(names)
    return ".".join(names)


def parse_word(p: Presentation, text: str) -> tuple[int, ...]:
    """Parse a word over the presentation's atom names.

    Tokens separated by '.' are individual atom names.  A token without '.'
    is first tried as a whole atom name, otherwise read letter by letter
    (only possible when every letter is a single-character atom name).
    """
    text = text.strip()
    if text == "" or text == "1":
        return ()
    by_name = {a.name: a.index for a in p.atoms}
    out: list[int] = []
    for token in text.split("."):
        if token in by_name:
            out.append(by_name[token])
            continue
        indices = []
        for ch in token:
            if ch not in by_name:
                raise PresentationError(f"unknown atom {ch!r} in word {text!r}")
            indices.append(by_name[ch])
        out.extend(indices)
    return tuple(out)


def format_word(p: Presentation, word: tuple[int, ...]) -> str:
    return _word_str(p, word)


def _braid_shape(lhs: tuple[int, ...], rhs: tuple[int, ...]) -> bool:
    """sts... = tst... of equal length (length-2 commutations included)."""
    if len(lhs) != len(rhs) or len(lhs) < 2:
        return False
    s, t = lhs[0], rhs[0]
    if s == t:
        return False
    for k in range(len(lhs)):
        if lhs[k] != (s if k % 2 == 0 else t):
            return False
        if rhs[k] != (t if k % 2 == 0 else s):
            return False
    return True


def _relation_key(rel: tuple[tuple[int, ...], tuple[int, ...]]) -> frozenset[int]:
    lhs, rhs = rel
    support = frozenset(lhs) | frozenset(rhs)
    if len(support) <= 2:
        return support
    return frozenset({lhs[0], rhs[0]})


def validate(p: Presentation) -> ValidationReport:
    """Check all structural invariants; never raises, never mutates."""
    checks: list[CheckResult] = []

    bad_names = [
        a.name
        for a in p.atoms
        if not a.name or any(c.isspace() or c in FORBIDDEN_NAME_CHARS for c in a.name)
    ]
    dup_names = len(set(p.atom_names)) != len(p.atom_names)
    checks.append(
        CheckResult(
            "atom_names",
            not bad_names and not dup_names,
            "bad names: %s" % bad_names if bad_names else ("duplicates" if dup_names else ""),
        )
    )

    dense = all(a.index == i for i, a in enumerate(p.atoms))
    checks.append(CheckResult("atom_indices_dense", dense))

    inhomogeneous = [
        rel for rel in p.relations if len(rel[0]) != len(rel[1]) or len(rel[0]) < 2
    ]
    checks.append(
        CheckResult(
            "homogeneous",
            not inhomogeneous,
            "" if not inhomogeneous else f"{len(inhomogeneous)} non-homogeneous relation(s)",
        )
    )

    same_start = [rel for rel in p.relations if rel[0][:1] == rel[1][:1]]
    checks.append(
        CheckResult(
            "distinct_starting_atoms",
            not same_start,
            "" if not same_start else "relation sides start with identical atom",
        )
    )

    seen: dict[frozenset[int], int] = {}
    dup_pairs = 0
    for rel in p.relations:
        key = _relation_key(rel)
        dup_pairs += seen.get(key, 0) > 0
        seen[key] = seen.get(key, 0) + 1
    checks.append(
        CheckResult(
            "pair_uniqueness",
            dup_pairs == 0,
            "" if dup_pairs == 0 else f"{dup_pairs} duplicated atom pair(s)",
        )
    )

    artin = all(_braid_shape(l, r) for l, r in p.relations)
    checks.append(CheckResult("artin_tits_shape", artin))

    return ValidationReport(checks=tuple(checks), artin_tits=artin)


def require_valid(p: Presentation) -> Presentation:
    report = validate(p)
    failed = [c for c in report.checks if not c.passed and c.name != "artin_tits_shape"]
    if failed:
        raise ValidationFailure(
            "; ".join(f"{c.name}: {c.detail or 'failed'}" for c in failed)
        )
    return p


def parse_presentation(text: str, name: str = "parsed") -> Presentation:
    """Parse the line-oriented presentation format.

    ``atoms: a b c`` then any number of ``rel: aba = bab`` lines.  ``#``
    starts a comment.  Raises PresentationSyntaxError with a position, or
    ValidationFailure naming the violated invariant.
    """
    atoms: list[AtomId] | None = None
    relations: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    partial = Presentation(name=name, atoms=(), relations=())
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("atoms:"):
            if atoms is not None:
                raise PresentationSyntaxError("duplicate atoms: line", lineno)
            names = line[len("atoms:"):].split()
            if not names:
                raise PresentationSyntaxError("empty atom list", lineno, line.index(":"))
            atoms = [AtomId(i, n) for i, n in enumerate(names)]
            partial = Presentation(name=name, atoms=tuple(atoms), relations=())
        elif line.startswith("rel:"):
            if atoms is None:
                raise PresentationSyntaxError("rel: before atoms:", lineno)
            body = line[len("rel:"):]
            if "=" not in body:
                raise PresentationSyntaxError("relation without '='", lineno, line.index(":"))
            lhs_text, rhs_text = body.split("=", 1)
            try:
                lhs = parse_word(partial, lhs_text)
                rhs = parse_word(partial, rhs_text)
            except PresentationError as e:
                raise PresentationSyntaxError(str(e), lineno) from e
            relations.append((lhs, rhs))
        else:
            raise PresentationSyntaxError(f"unrecognized line {line!r}", lineno)
    if atoms is None:
        raise PresentationSyntaxError("missing atoms: line", 1)
    p = Presentation(name=name, atoms=tuple(atoms), relations=tuple(relations))
    return require_valid(p)


def format_presentation(p: Presentation) -> str:
    lines = ["atoms: " + " ".join(p.atom_names)]
    for lhs, rhs in p.relations:
        lines.append(f"rel: {_word_str(p, lhs)} = {_word_str(p, rhs)}")
    return "\n".join(lines) + "\n"


def _letters(n: int) -> list[str]:
    base = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(base):
        return list(base[:n])
    return [f"s{i}" for i in range(n)]


def _braid_word(s: int, t: int, m: int) -> tuple[int, ...]:
    return tuple(s if k % 2 == 0 else t for k in range(m))


class UnknownPreset(PresentationError):
    pass


def preset(name: str) -> Presentation:
    """Standard presentations by name.

    Accepted: A2tilde, A3tilde, C2tilde, K(n,3) for n >= 3, braid(n) for
    n >= 2, free(n) for n >= 1, I2(m) for m >= 2.  Parenthesis-free forms
    like braid3 or K4,3 are accepted too.
    """
    raw = name.strip()
    compact = raw.replace(" ", "")

    if compact in ("A2tilde", "A~2"):
        return preset("K(3,3)")._replace_name("A2tilde")

    m = re.fullmatch(r"K\(?(\d+),(\d+)\)?", compact)
    if m:
        n, label = int(m.group(1)), int(m.group(2))
        if n < 3 or label != 3:
            raise UnknownPreset(f"unsupported complete-graph preset {raw!r}")
        letters = _letters(n)
        atoms = tuple(AtomId(i, letters[i]) for i in range(n))
        rels = []
        for i in range(n):
            for j in range(i + 1, n):
                rels.append((_braid_word(i, j, 3), _braid_word(j, i, 3)))
        return Presentation(f"K({n},3)", atoms, tuple(rels), fc=False)

    m = re.fullmatch(r"braid\(?(\d+)\)?", compact)
    if m:
        n = int(m.group(1))
        if n < 2:
            raise UnknownPreset("braid(n) needs n >= 2")
        k = n - 1
        letters = _letters(k)
        atoms = tuple(AtomId(i, letters[i]) for i in range(k))
        rels = []
        for i in range(k):
            for j in range(i + 1, k):
                mm = 3 if j == i + 1 else 2
                rels.append((_braid_word(i, j, mm), _braid_word(j, i, mm)))
        return Presentation(f"braid({n})", atoms, tuple(rels), fc=True)

    m = re.fullmatch(r"free\(?(\d+)\)?", compact)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise UnknownPreset("free(n) needs n >= 1")
        letters = _letters(n)
        atoms = tuple(AtomId(i, letters[i]) for i in range(n))
        return Presentation(f"free({n})", atoms, (), fc=True)

    m = re.fullmatch(r"I2\(?(\d+)\)?", compact)
    if m:
        mm = int(m.group(1))
        if mm < 2:
            raise UnknownPreset("I2(m) needs m >= 2")
        atoms = (AtomId(0, "a"), AtomId(1, "b"))
        rels = ((_braid_word(0, 1, mm), _braid_word(1, 0, mm)),)
        return Presentation(f"I2({mm})", atoms, rels, fc=True)

    if compact == "A3tilde":
        atoms = tuple(AtomId(i, n_) for i, n_ in enumerate("abcd"))
        rels = (
            (_braid_word(0, 1, 3), _braid_word(1, 0, 3)),
            (_braid_word(1, 2, 3), _braid_word(2, 1, 3)),
            (_braid_word(2, 3, 3), _braid_word(3, 2, 3)),
            (_braid_word(3, 0, 3), _braid_word(0, 3, 3)),
            (_braid_word(0, 2, 2), _braid_word(2, 0, 2)),
            (_braid_word(1, 3, 2), _braid_word(3, 1, 2)),
        )
        return Presentation("A3tilde", atoms, rels, fc=False)

    if compact == "C2tilde":
        atoms = tuple(AtomId(i, n_) for i, n_ in enumerate("abc"))
        rels = (
            (_braid_word(0, 1, 4), _braid_word(1, 0, 4)),
            (_braid_word(1, 2, 4), _braid_word(2, 1, 4)),
            (_braid_word(0, 2, 2), _braid_word(2, 0, 2)),
        )
        return Presentation("C2tilde", atoms, rels, fc=False)

    raise UnknownPreset(f"unknown preset {raw!r}")


def preset_names() -> list[str]:
    return ["A2tilde", "A3tilde", "C2tilde", "K(n,3)", "braid(n)", "free(n)", "I2(m)"]


def _replace_name(self: Presentation, new_name: str) -> Presentation:
    return Presentation(new_name, self.atoms, self.relations, fc=self.fc)


Presentation._replace_name = _replace_name  # type: ignore[attr-defined]
