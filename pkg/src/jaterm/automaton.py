"""Compile patterns into finite automata over canonical tags.

Expressions become a Thompson NFA; DFA states are built lazily by subset
construction and cached, so repeated scans over a corpus only pay for the
tag transitions they actually meet.
"""
from __future__ import annotations

import threading
from typing import Sequence

from .corpus import CanonicalTag
from .grammar import Atom, Expr, Group, Pattern, Term


class _NFA:
    def __init__(self) -> None:
        self.eps: list[list[int]] = []
        self.edges: list[list[tuple[frozenset[CanonicalTag], int]]] = []

    def state(self) -> int:
        self.eps.append([])
        self.edges.append([])
        return len(self.eps) - 1

    def node(self, node: Atom | Group, src: int) -> int:
        dst = self.state()
        if isinstance(node, Atom):
            self.edges[src].append((node.tags, dst))
        else:
            for alt in node.alternatives:
                self.eps[self.seq(alt, src)].append(dst)
        return dst

    def term(self, t: Term, src: int) -> int:
        cur = src
        for _ in range(t.lo):
            cur = self.node(t.node, cur)
        if t.hi is None:
            loop = self.state()
            self.eps[cur].append(loop)
            self.eps[self.node(t.node, loop)].append(loop)
            return loop
        end = self.state()
        self.eps[cur].append(end)
        for _ in range(t.hi - t.lo):
            cur = self.node(t.node, cur)
            self.eps[cur].append(end)
        return end

    def seq(self, expr: Expr, src: int) -> int:
        cur = src
        for t in expr:
            cur = self.term(t, cur)
        return cur

    def closure(self, states: set[int]) -> frozenset[int]:
        stack = list(states)
        seen = set(states)
        while stack:
            for nxt in self.eps[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return frozenset(seen)


class CompiledPattern:
    """Matcher automaton for one pattern, honoring its token length bounds."""

    def __init__(self, pattern: Pattern):
        self.pattern = pattern
        nfa = _NFA()
        start = nfa.state()
        self._final = nfa.seq(pattern.expr, start)
        self._nfa = nfa
        self._ids: dict[frozenset[int], int] = {}
        self._sets: list[frozenset[int]] = []
        self._accepting: list[bool] = []
        self._delta: dict[tuple[int, CanonicalTag], int] = {}
        self._lock = threading.Lock()
        self._start = self._intern(nfa.closure({start}))
        self._dead = self._intern(frozenset())

    def _intern(self, states: frozenset[int]) -> int:
        sid = self._ids.get(states)
        if sid is None:
            sid = len(self._sets)
            self._sets.append(states)
            self._accepting.append(self._final in states)
            self._ids[states] = sid
        return sid

    def _step(self, sid: int, tag: CanonicalTag) -> int:
        key = (sid, tag)
        nxt = self._delta.get(key)
        if nxt is None:
            with self._lock:
                moved = {
                    dst
                    for s in self._sets[sid]
                    for tags, dst in self._nfa.edges[s]
                    if tag in tags
                }
                nxt = self._intern(self._nfa.closure(moved))
                self._delta[key] = nxt
        return nxt

    def match_lengths(self, tags: Sequence[CanonicalTag], start: int = 0) -> list[int]:
        """All accepted span lengths starting at ``start``, ascending."""
        p = self.pattern
        stop = min(len(tags), start + p.max_tokens)
        sid = self._start
        found = []
        for i in range(start, stop):
            sid = self._step(sid, tags[i])
            if sid == self._dead:
                break
            length = i - start + 1
            if self._accepting[sid] and length >= p.min_tokens:
                found.append(length)
        return found

    def match_at(self, tags: Sequence[CanonicalTag], start: int = 0) -> int | None:
        """Longest accepted span length at ``start``, or None."""
        lengths = self.match_lengths(tags, start)
        return lengths[-1] if lengths else None

    def accepts(self, tags: Sequence[CanonicalTag]) -> bool:
        if not self.pattern.min_tokens <= len(tags) <= self.pattern.max_tokens:
            return False
        sid = self._start
        for tag in tags:
            sid = self._step(sid, tag)
            if sid == self._dead:
                return False
        return self._accepting[sid]


def compile_pattern(pattern: Pattern) -> CompiledPattern:
    return CompiledPattern(pattern)
