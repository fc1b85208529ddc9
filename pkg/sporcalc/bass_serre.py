# -*- coding: utf-8 -*-
"""Free products A * B of free groups, their Bass-Serre tree, and
staggered orderings of relators in a free group."""

import logging
import itertools
from dataclasses import dataclass
from typing import Optional, Tuple

from .exceptions import CapExceededError, CertificateError, PreconditionError
from .words import GeneratorSymbol, Word, cyclic_reduce, invert, multiply


logger = logging.getLogger(__name__)

A = "A"
B = "B"


@dataclass(frozen=True)
class FPElement(object):
    entries: Tuple[Tuple[str, Word], ...] = ()

    def __post_init__(self):
        for (t1, _), (t2, _) in zip(self.entries, self.entries[1:]):
            if t1 == t2:
                raise PreconditionError("Adjacent entries must alternate between A and B")
        for tag, w in self.entries:
            if tag not in (A, B):
                raise ValueError(f"Factor tag {tag} is not supported")
            if not w:
                raise PreconditionError("Entries must be nontrivial")

    def __len__(self):
        return len(self.entries)

    def __mul__(self, other):
        return fp_normal_form(self.entries + other.entries)

    def inverse(self):
        return FPElement(tuple((t, invert(w)) for t, w in reversed(self.entries)))

    def __pow__(self, e):
        result = FPElement()
        for _ in range(e):
            result = result * self
        return result

    def __str__(self):
        return " ".join(f"({t}: {w})" for t, w in self.entries) or "1"


def fp_normal_form(raw):
    stack = []
    for tag, w in raw:
        if not w:
            continue
        if stack and stack[-1][0] == tag:
            merged = multiply(stack.pop()[1], w)
            if merged:
                stack.append((tag, merged))
        else:
            stack.append((tag, w))
    return FPElement(tuple(stack))


@dataclass(frozen=True)
class VertexDescriptor(object):
    """``g`` fixes the vertex ``conjugator . tag`` of the tree."""

    conjugator: FPElement
    tag: Optional[str]


def cyclic_normal_form(g):
    """Return ``(core, c)`` with ``g = c core c^-1`` and core cyclically
    reduced, starting with A when its length is at least 2."""
    core = g
    c = FPElement()
    while len(core) >= 2 and core.entries[0][0] == core.entries[-1][0]:
        last = FPElement((core.entries[-1],))
        c = c * last.inverse()
        core = last * FPElement(core.entries[:-1])
    if len(core) >= 2 and core.entries[0][0] == B:
        first = FPElement((core.entries[0],))
        c = c * first
        core = FPElement(core.entries[1:]) * first
    return core, c


def fixes_vertex(g):
    core, c = cyclic_normal_form(g)
    if len(core) > 1:
        return None
    tag = core.entries[0][0] if core.entries else None
    return VertexDescriptor(c, tag)


@dataclass(frozen=True)
class AxisDescriptor(object):
    cyclic_normal_form: FPElement
    conjugator: FPElement
    period_m: int
    log: int
    root: FPElement

    def to_json(self):
        return {
            "cyclic_normal_form": str(self.cyclic_normal_form),
            "conjugator": str(self.conjugator),
            "period": self.period_m,
            "root": str(self.root),
            "log": self.log,
        }


def fp_root(g):
    if fixes_vertex(g) is not None:
        raise PreconditionError(f"{g} fixes a vertex of the Bass-Serre tree")
    core, c = cyclic_normal_form(g)
    pairs = [core.entries[2 * i : 2 * i + 2] for i in range(len(core) // 2)]
    n = len(pairs)
    m = next(
        d
        for d in range(1, n + 1)
        if n % d == 0 and all(pairs[i] == pairs[i + d] for i in range(n - d))
    )
    root = FPElement(tuple(e for pair in pairs[:m] for e in pair))
    return AxisDescriptor(core, c, m, n // m, root)


def factor_generators(tag, rank):
    prefix = tag.lower()
    return tuple(GeneratorSymbol(f"{prefix}{i}") for i in range(1, rank + 1))


def support(r):
    if not r:
        raise PreconditionError("The trivial word has no support")
    c, _ = cyclic_reduce(r)
    return frozenset(c.symbols)


def conjugacy_key(r):
    """Equal for r1, r2 iff r1 is conjugate to r2 or to r2^-1."""
    c, _ = cyclic_reduce(r)
    return min(c.canonical.key, c.inverse().canonical.key)


@dataclass(frozen=True)
class StaggerProblem(object):
    relators: Tuple[Word, ...]
    generators: Tuple[GeneratorSymbol, ...] = ()

    def __post_init__(self):
        for r in self.relators:
            if not r:
                raise PreconditionError("Relators must be nontrivial")
        if not self.generators:
            gens = set().union(*(r.symbols for r in self.relators)) if self.relators else set()
            object.__setattr__(self, "generators", tuple(sorted(gens, key=lambda g: g.key)))

    @property
    def supports(self):
        return tuple(support(r) for r in self.relators)

    @property
    def classes(self):
        return tuple(conjugacy_key(r) for r in self.relators)


@dataclass(frozen=True)
class OrderWitness(object):
    order: Optional[Tuple[GeneratorSymbol, ...]]
    verdict: bool
    visited: int = 0

    def to_json(self):
        return {
            "staggerable": self.verdict,
            "order": [str(g) for g in self.order] if self.order else None,
        }


def _conditions(s1, s2, pos):
    lo1, hi1 = min(pos[g] for g in s1), max(pos[g] for g in s1)
    lo2, hi2 = min(pos[g] for g in s2), max(pos[g] for g in s2)
    return (lo1 < lo2 and hi1 < hi2), (lo2 < lo1 and hi2 < hi1)


def staggered_check(problem, order):
    pos = {g: i for i, g in enumerate(order)}
    supports = problem.supports
    missing = set().union(*supports) - set(pos) if supports else set()
    if missing:
        raise PreconditionError(f"Order does not rank {sorted(map(str, missing))[0]}")
    classes = problem.classes
    n = len(problem.relators)
    for i, j in itertools.combinations(range(n), 2):
        same = classes[i] == classes[j]
        below, above = _conditions(supports[i], supports[j], pos)
        held = same + below + above
        if held > 1:
            raise CertificateError(f"Relators {i} and {j} satisfy {held} conditions")
        if held == 0:
            return False
    return True


def _compare(a, b):
    """Sign of a - b, with None for a value that is not placed yet.

    Unplaced values come after every placed one; two unplaced values are
    undetermined.
    """
    if a is None and b is None:
        return None
    if a is None:
        return 1
    if b is None:
        return -1
    return (a > b) - (a < b)


def staggerable_search(problem, cap=3628800):
    """Backtracking search for the lexicographically least staggered order."""
    supports = problem.supports
    classes = problem.classes
    n = len(supports)
    pairs = [
        (i, j)
        for i, j in itertools.combinations(range(n), 2)
        if classes[i] != classes[j]
    ]
    relevant = sorted(set().union(*supports) if supports else set(), key=lambda g: g.key)
    rest = [g for g in problem.generators if g not in set(relevant)]
    visited = 0

    lo = [None] * n
    hi = [None] * n
    placed = [0] * n
    order = []

    def feasible():
        for i, j in pairs:
            c_lo, c_hi = _compare(lo[i], lo[j]), _compare(hi[i], hi[j])
            below = c_lo in (-1, None) and c_hi in (-1, None)
            above = c_lo in (1, None) and c_hi in (1, None)
            if not (below or above):
                return False
        return True

    def place(g, p, undo):
        for i, s in enumerate(supports):
            if g in s:
                undo.append((i, lo[i], hi[i]))
                placed[i] += 1
                if lo[i] is None:
                    lo[i] = p
                if placed[i] == len(s):
                    hi[i] = p

    def unplace(g, undo):
        for i, old_lo, old_hi in reversed(undo):
            placed[i] -= 1
            lo[i], hi[i] = old_lo, old_hi

    def search(remaining):
        nonlocal visited
        if not remaining:
            return True
        for g in remaining:
            visited += 1
            if visited > cap:
                raise CapExceededError(f"Stagger search exceeded {cap} nodes")
            undo = []
            place(g, len(order), undo)
            order.append(g)
            if feasible() and search([h for h in remaining if h != g]):
                return True
            order.pop()
            unplace(g, undo)
        return False

    found = search(relevant)
    logger.debug("stagger search visited %d nodes", visited)
    if not found:
        return OrderWitness(None, False, visited)
    witness = tuple(order) + tuple(rest)
    if not staggered_check(problem, witness):
        raise CertificateError("Search returned an order that is not staggered")
    return OrderWitness(witness, True, visited)


def enumerate_orders(problem):
    """Every staggered order, by brute force over permutations."""
    for order in itertools.permutations(problem.generators):
        if staggered_check(problem, order):
            yield order
