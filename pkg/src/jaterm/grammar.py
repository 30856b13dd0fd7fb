"""Tag-sequence patterns, the built-in Japanese term grammar, and its file format.

A pattern expression is a sequence of *terms*; each term is an atom (a
canonical tag or a named tag class) or a named group of alternative
sequences, with an optional repetition suffix (``+``, ``*``, ``{m,n}``).
Alternation only appears through named classes and named groups, so every
expression reads as a flat template.

Grammar file syntax::

    class NOUNISH = N | VN | AN
    group ELEMENT = NOUNISH NOUNISH | PFX NOUNISH | NUM
    pattern BT1 kind=BASIC max=2: NOUNISH NOUNISH
    pattern ELEM kind=COMPOUND max=9 min=3: ELEMENT+

Declaration order of ``pattern`` lines is the priority order (first wins).
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Mapping, Sequence, Union

from .corpus import CanonicalTag
from .errors import GrammarError

if TYPE_CHECKING:
    from .automaton import CompiledPattern


class Kind(enum.Enum):
    BASIC = "BASIC"
    COMPOUND = "COMPOUND"
    VARIANT = "VARIANT"
    PHRASE = "PHRASE"


@dataclass(frozen=True)
class Atom:
    """A canonical tag (``name`` is the tag itself) or a named tag class."""

    name: str
    tags: frozenset[CanonicalTag]


@dataclass(frozen=True)
class Group:
    name: str
    alternatives: tuple[tuple["Term", ...], ...]


@dataclass(frozen=True)
class Term:
    node: Union[Atom, Group]
    lo: int = 1
    hi: int | None = 1  # None = unbounded

    def __post_init__(self) -> None:
        if self.lo < 0 or (self.hi is not None and (self.hi < self.lo or self.hi == 0)):
            raise GrammarError(f"bad repetition bounds {{{self.lo},{self.hi}}} on {self.node.name}")


Expr = tuple[Term, ...]


def _node_min(node: Atom | Group) -> int:
    if isinstance(node, Atom):
        return 1
    return min(min_length(alt) for alt in node.alternatives)


def _node_max(node: Atom | Group) -> int | None:
    if isinstance(node, Atom):
        return 1
    lengths = [max_length(alt) for alt in node.alternatives]
    return None if None in lengths else max(lengths)


def min_length(expr: Expr) -> int:
    return sum(_node_min(t.node) * t.lo for t in expr)


def max_length(expr: Expr) -> int | None:
    total = 0
    for t in expr:
        m = _node_max(t.node)
        if t.hi is None or m is None:
            return None
        total += m * t.hi
    return total


def _render_suffix(t: Term) -> str:
    if (t.lo, t.hi) == (1, 1):
        return ""
    if (t.lo, t.hi) == (1, None):
        return "+"
    if (t.lo, t.hi) == (0, None):
        return "*"
    if t.hi is None:
        return f"{{{t.lo},}}"
    if t.lo == t.hi:
        return f"{{{t.lo}}}"
    return f"{{{t.lo},{t.hi}}}"


def render_expr(expr: Expr) -> str:
    return " ".join(t.node.name + _render_suffix(t) for t in expr)


# -- reference interpreter ---------------------------------------------------
# Set-of-end-positions evaluation straight off the expression tree. Slow but
# obviously correct; compiled automata are checked against it.

def _node_ends(node: Atom | Group, tags: Sequence[CanonicalTag], pos: int) -> set[int]:
    if isinstance(node, Atom):
        return {pos + 1} if pos < len(tags) and tags[pos] in node.tags else set()
    ends: set[int] = set()
    for alt in node.alternatives:
        ends |= _seq_ends(alt, tags, pos)
    return ends


def _term_ends(t: Term, tags: Sequence[CanonicalTag], pos: int) -> set[int]:
    frontier = {pos}
    for _ in range(t.lo):
        frontier = {e for p in frontier for e in _node_ends(t.node, tags, p)}
    result = set(frontier)
    # every repetition consumes at least one token
    extra = len(tags) - pos if t.hi is None else t.hi - t.lo
    for _ in range(extra):
        nxt = {e for p in frontier for e in _node_ends(t.node, tags, p)}
        frontier = nxt - result
        result |= nxt
        if not frontier:
            break
    return result


def _seq_ends(expr: Expr, tags: Sequence[CanonicalTag], pos: int) -> set[int]:
    positions = {pos}
    for t in expr:
        nxt: set[int] = set()
        for p in positions:
            nxt |= _term_ends(t, tags, p)
        positions = nxt
        if not positions:
            break
    return positions


def expr_matches(expr: Expr, tags: Sequence[CanonicalTag]) -> bool:
    """True iff the whole of ``tags`` is denoted by ``expr``."""
    return len(tags) in _seq_ends(expr, tags, 0)


# -- patterns and grammars ---------------------------------------------------

@dataclass(frozen=True)
class Pattern:
    name: str
    kind: Kind
    expr: Expr
    max_tokens: int
    priority: int = 0
    min_tokens: int = 0  # 0 = minimum length of expr

    def __post_init__(self) -> None:
        floor = min_length(self.expr)
        if self.min_tokens == 0:
            object.__setattr__(self, "min_tokens", floor)
        elif self.min_tokens < floor:
            raise GrammarError(f"pattern {self.name}: min={self.min_tokens} below expression minimum {floor}")
        if self.min_tokens < 2:
            raise GrammarError(f"pattern {self.name}: patterns must span at least 2 tokens")
        if self.max_tokens < self.min_tokens:
            raise GrammarError(
                f"pattern {self.name}: max={self.max_tokens} below minimum length {self.min_tokens}"
            )


@dataclass(frozen=True)
class Grammar:
    patterns: tuple[Pattern, ...]
    classes: Mapping[str, frozenset[CanonicalTag]] = field(default_factory=dict)
    groups: Mapping[str, Group] = field(default_factory=dict)

    def __post_init__(self) -> None:
        names = [p.name for p in self.patterns]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise GrammarError(f"duplicate pattern name {sorted(dup)[0]}")
        prios = [p.priority for p in self.patterns]
        if len(set(prios)) != len(prios):
            raise GrammarError("pattern priorities must be distinct")
        ordered = sorted(self.patterns, key=lambda p: p.priority)
        # priorities are normalized to ranks so equal orderings compare equal
        object.__setattr__(
            self, "patterns", tuple(replace(p, priority=i) for i, p in enumerate(ordered))
        )

    def __getitem__(self, name: str) -> Pattern:
        for p in self.patterns:
            if p.name == name:
                return p
        raise KeyError(name)

    def __contains__(self, name: object) -> bool:
        return any(p.name == name for p in self.patterns)

    def of_kind(self, kind: Kind) -> list[Pattern]:
        return [p for p in self.patterns if p.kind is kind]

    def compiled(self) -> list["CompiledPattern"]:
        """Automata for all patterns in priority order (built once, cached)."""
        cached = self.__dict__.get("_compiled")
        if cached is None:
            from .automaton import compile_pattern

            cached = [compile_pattern(p) for p in self.patterns]
            object.__setattr__(self, "_compiled", cached)
        return cached


def with_max_len(grammar: Grammar, max_len: int) -> Grammar:
    """Replace the length cap of every COMPOUND pattern."""
    if max_len < 2:
        raise GrammarError("max length override must be at least 2")
    patterns = tuple(
        replace(p, max_tokens=max_len) if p.kind is Kind.COMPOUND else p for p in grammar.patterns
    )
    return Grammar(patterns, grammar.classes, grammar.groups)


# -- built-in grammar -------------------------------------------------------

T = CanonicalTag
NOUNISH = Atom("NOUNISH", frozenset({T.N, T.VN, T.AN}))


def _tag(tag: CanonicalTag) -> Atom:
    return Atom(tag.value, frozenset({tag}))


def _seq(*items: Atom | Group | Term) -> Expr:
    return tuple(i if isinstance(i, Term) else Term(i) for i in items)


def builtin_japanese_grammar() -> Grammar:
    PFX, SFX, NUM, SYM, NO = (_tag(t) for t in (T.PFX, T.SFX, T.NUM, T.SYM, T.NO))
    V_INF, A_INF, ADJ = _tag(T.V_INF), _tag(T.A_INF), _tag(T.ADJ)
    SFX_STEM, SFX_NOM = _tag(T.SFX_STEM), _tag(T.SFX_NOM)

    # A lone noun counts as an element so that heads like "2 sou | haisen"
    # and single-noun phrase sides like "moji | no ..." can be formed.
    element = Group("ELEMENT", (
        _seq(NOUNISH, NOUNISH), _seq(PFX, NOUNISH), _seq(NOUNISH, SFX),
        _seq(NUM, SFX), _seq(NUM), _seq(SYM), _seq(NOUNISH),
    ))
    # Number-suffix, number and symbol elements need a noun-bearing one.
    noun_element = Group("NOUN_ELEMENT", (_seq(NOUNISH), _seq(PFX, NOUNISH), _seq(NOUNISH, SFX)))
    side = Group("SIDE", (_seq(Term(element, 0, None), noun_element, Term(element, 0, None)),))

    B, C, V, P = Kind.BASIC, Kind.COMPOUND, Kind.VARIANT, Kind.PHRASE
    specs = [
        ("PHR", P, _seq(side, NO, side), 19, 0),
        ("ELEM", C, _seq(side), 9, 3),
        ("CT-IW", V, _seq(PFX, NOUNISH, SFX, Term(NOUNISH, 0, None)), 9, 0),
        ("CT-WJ1", V, _seq(ADJ, SFX_NOM, NOUNISH, Term(NOUNISH, 1, None)), 9, 0),
        ("CT-WJ3", V, _seq(NOUNISH, V_INF, NOUNISH), 3, 0),
        ("CT-WJ2", V, _seq(NOUNISH, V_INF, SFX), 3, 0),
        ("BT4", B, _seq(NOUNISH, SFX_STEM, NOUNISH), 3, 0),
        ("BT8", B, _seq(ADJ, SFX_NOM, NOUNISH), 3, 0),
        ("BT1", B, _seq(NOUNISH, NOUNISH), 2, 0),
        ("BT2", B, _seq(PFX, NOUNISH), 2, 0),
        ("BT3", B, _seq(NOUNISH, SFX), 2, 0),
        ("BT5", B, _seq(V_INF, NOUNISH), 2, 0),
        ("BT6", B, _seq(V_INF, SFX), 2, 0),
        ("BT7", B, _seq(A_INF, NOUNISH), 2, 0),
    ]
    patterns = tuple(
        Pattern(name, kind, expr, cap, priority=i, min_tokens=lo)
        for i, (name, kind, expr, cap, lo) in enumerate(specs)
    )
    groups = {g.name: g for g in (element, noun_element, side)}
    return Grammar(patterns, {"NOUNISH": NOUNISH.tags}, groups)


# -- grammar file format ----------------------------------------------------

_NAME = r"[A-Za-z_][A-Za-z0-9_\-]*"
_ATOM_RE = re.compile(rf"^({_NAME})(\+|\*|\{{(\d+)(,(\d*))?\}})?$")
_PATTERN_RE = re.compile(rf"^pattern\s+({_NAME})\s+(.*?):\s*(.*)$")
_DEF_RE = re.compile(rf"^(class|group)\s+({_NAME})\s*=\s*(.*)$")


class _Loader:
    def __init__(self) -> None:
        self.classes: dict[str, frozenset[CanonicalTag]] = {}
        self.groups: dict[str, Group] = {}
        self.patterns: list[Pattern] = []

    def fail(self, lineno: int, msg: str) -> GrammarError:
        return GrammarError(f"line {lineno}: {msg}", lineno)

    def check_new_name(self, name: str, lineno: int) -> None:
        if name in CanonicalTag.__members__ or name in self.classes or name in self.groups:
            raise self.fail(lineno, f"name {name!r} already defined")

    def atom(self, text: str, lineno: int) -> Term:
        m = _ATOM_RE.match(text)
        if not m:
            raise self.fail(lineno, f"cannot parse atom {text!r}")
        name, suffix = m.group(1), m.group(2)
        node: Atom | Group
        if name in CanonicalTag.__members__:
            node = Atom(name, frozenset({CanonicalTag[name]}))
        elif name in self.classes:
            node = Atom(name, self.classes[name])
        elif name in self.groups:
            node = self.groups[name]
        else:
            raise self.fail(lineno, f"unknown tag or class {name!r}")
        if suffix is None:
            lo, hi = 1, 1
        elif suffix == "+":
            lo, hi = 1, None
        elif suffix == "*":
            lo, hi = 0, None
        else:
            lo = int(m.group(3))
            if m.group(4) is None:
                hi = lo
            else:
                hi = int(m.group(5)) if m.group(5) else None
        try:
            return Term(node, lo, hi)
        except GrammarError as exc:
            raise self.fail(lineno, str(exc)) from None

    def seq(self, text: str, lineno: int) -> Expr:
        parts = text.split()
        if not parts:
            raise self.fail(lineno, "empty expression")
        return tuple(self.atom(p, lineno) for p in parts)

    def line(self, lineno: int, line: str) -> None:
        m = _DEF_RE.match(line)
        if m:
            what, name, body = m.groups()
            self.check_new_name(name, lineno)
            if what == "class":
                tags: set[CanonicalTag] = set()
                for member in (x.strip() for x in body.split("|")):
                    if member in CanonicalTag.__members__:
                        tags.add(CanonicalTag[member])
                    elif member in self.classes:
                        tags |= self.classes[member]
                    else:
                        raise self.fail(lineno, f"unknown tag name {member!r}")
                self.classes[name] = frozenset(tags)
            else:
                alts = tuple(self.seq(alt, lineno) for alt in body.split("|"))
                if any(min_length(a) == 0 for a in alts):
                    raise self.fail(lineno, f"group {name} has an alternative that can be empty")
                self.groups[name] = Group(name, alts)
            return
        m = _PATTERN_RE.match(line)
        if not m:
            raise self.fail(lineno, f"cannot parse line {line!r}")
        name, attr_text, body = m.groups()
        attrs = dict(a.split("=", 1) for a in attr_text.split() if "=" in a)
        if any("=" not in a for a in attr_text.split()) or set(attrs) - {"kind", "max", "min"}:
            raise self.fail(lineno, f"bad attributes {attr_text!r}")
        if any(p.name == name for p in self.patterns):
            raise self.fail(lineno, f"duplicate pattern name {name!r}")
        try:
            kind = Kind(attrs.get("kind", ""))
        except ValueError:
            raise self.fail(lineno, f"pattern {name}: unknown kind {attrs.get('kind')!r}") from None
        try:
            cap = int(attrs["max"])
            lo = int(attrs.get("min", 0))
        except (KeyError, ValueError):
            raise self.fail(lineno, f"pattern {name}: max= must be an integer") from None
        expr = self.seq(body, lineno)
        try:
            self.patterns.append(Pattern(name, kind, expr, cap, len(self.patterns), lo))
        except GrammarError as exc:
            raise self.fail(lineno, str(exc)) from None


def load_grammar(config: str) -> Grammar:
    loader = _Loader()
    for lineno, raw in enumerate(config.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            loader.line(lineno, line)
    if not loader.patterns:
        raise GrammarError("grammar declares no patterns")
    return Grammar(tuple(loader.patterns), loader.classes, loader.groups)


def dump_grammar(grammar: Grammar) -> str:
    out = []
    for name, tags in grammar.classes.items():
        members = sorted(t.value for t in tags)
        out.append(f"class {name} = {' | '.join(members)}")
    for group in grammar.groups.values():
        alts = " | ".join(render_expr(a) for a in group.alternatives)
        out.append(f"group {group.name} = {alts}")
    for p in grammar.patterns:
        attrs = f"kind={p.kind.value} max={p.max_tokens}"
        if p.min_tokens != min_length(p.expr):
            attrs += f" min={p.min_tokens}"
        out.append(f"pattern {p.name} {attrs}: {render_expr(p.expr)}  # priority {p.priority}")
    return "\n".join(out) + "\n"
