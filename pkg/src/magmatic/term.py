"""Terms of the free magma over a set of atoms.

A term is a full binary tree whose leaves carry atoms.  ``graft`` is the free
magma operation: it joins two terms under one new bracket pair.  Trees are
immutable and hashable, so they can be used as set members and dict keys.

Text form::

    term  := atom | "(" term SP term ")"
    atom  := symbol | tuple
    symbol:= [A-Za-z_][A-Za-z0-9_]*
    tuple := "<" index ("," index)* ">"
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence, Union

from .errors import LimitExceeded, NotComposite, ParseError

MAX_ENUMERATION = 12

_SYMBOL_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TUPLE_RE = re.compile(r"<[0-9]+(?:,[0-9]+)*>")
_WORD_RE = re.compile(r"[A-Za-z0-9_]+")


@dataclass(frozen=True, order=True)
class Symbol:
    label: str

    def __post_init__(self):
        if not isinstance(self.label, str) or not _SYMBOL_RE.match(self.label):
            raise ValueError(f"invalid symbol label {self.label!r}")

    def __str__(self):
        return self.label


@dataclass(frozen=True, order=True)
class TupleAtom:
    """A state of a composite system: one element index per component."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords or any(not isinstance(c, int) or c < 0 for c in coords):
            raise ValueError(f"invalid tuple coordinates {self.coords!r}")
        object.__setattr__(self, "coords", coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def replace(self, j: int, value: int) -> TupleAtom:
        coords = list(self.coords)
        coords[j] = value
        return TupleAtom(tuple(coords))

    def __str__(self):
        return "<" + ",".join(map(str, self.coords)) + ">"


Atom = Union[Symbol, TupleAtom]


def atom(text: str) -> Atom:
    """Parse a single atom, e.g. ``atom("x")`` or ``atom("<0,1>")``."""
    t = parse(text)
    if not isinstance(t, Leaf):
        raise ParseError("expected a single atom", 0)
    return t.atom


class Term:
    """Common base of :class:`Leaf` and :class:`Pair`."""

    __slots__ = ()
    size: int

    @cached_property
    def text(self) -> str:
        return format_term(self)

    def __str__(self):
        return self.text


@dataclass(frozen=True, eq=True)
class Leaf(Term):
    atom: Atom
    size: int = field(default=1, init=False, compare=False, repr=False)

    def __hash__(self):
        return hash(self.atom)


@dataclass(frozen=True, eq=True)
class Pair(Term):
    left: Term
    right: Term
    size: int = field(default=0, init=False, compare=False, repr=False)
    _hash: int = field(default=0, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "size", self.left.size + self.right.size)
        object.__setattr__(self, "_hash", hash((self.left, self.right)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Pair) or self._hash != other._hash:
            return False
        return self.left == other.left and self.right == other.right


def atom_term(a: Atom) -> Leaf:
    return Leaf(a)


def graft(u: Term, v: Term) -> Pair:
    return Pair(u, v)


def leafcount(t: Term) -> int:
    return t.size


def internal_count(t: Term) -> int:
    """Number of bracket pairs in ``t``."""
    count = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Pair):
            count += 1
            stack.append(node.left)
            stack.append(node.right)
    return count


def leaves(t: Term) -> list[Atom]:
    """Left-to-right leaf atoms (brackets discarded)."""
    out = []
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            out.append(node.atom)
        else:
            stack.append(node.right)
            stack.append(node.left)
    return out


def top_split(t: Term) -> tuple[Term, Term]:
    if not isinstance(t, Pair):
        raise NotComposite(f"{format_term(t)} is a single atom and has no top split")
    return t.left, t.right


def canonical_key(t: Term) -> tuple[int, str]:
    """Total order used for representatives: leaf count, then text."""
    return (t.size, t.text)


# -- text boundary ----------------------------------------------------------

def format_term(t: Term) -> str:
    parts = []
    stack: list = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, str):
            parts.append(node)
        elif isinstance(node, Leaf):
            parts.append(str(node.atom))
        else:
            stack.extend((")", node.right, " ", node.left))
            parts.append("(")
    return "".join(parts)


def parse(s: str) -> Term:
    """Parse term text.  Any run of whitespace separates factors.

    Raises :class:`ParseError` carrying the offset of the first problem.
    """
    # each frame: [offset of "(", factors so far]
    stack: list[tuple[int, list[Term]]] = []
    result: Term | None = None
    i, n = 0, len(s)
    while i < n:
        c = s[i]
        if c.isspace():
            i += 1
            continue
        if c == ")" and not stack:
            raise ParseError("unmatched ')'", i)
        if result is not None:
            raise ParseError("unexpected input after complete term", i)
        if c == "(":
            stack.append((i, []))
            i += 1
            continue
        if c == ")":
            start, factors = stack.pop()
            if len(factors) != 2:
                raise ParseError(f"bracket pair encloses {len(factors)} factors", start)
            node: Term = Pair(factors[0], factors[1])
            i += 1
        elif c == "<":
            m = _TUPLE_RE.match(s, i)
            if not m:
                raise ParseError("invalid tuple atom", i)
            node = Leaf(TupleAtom(tuple(int(v) for v in s[i + 1:m.end() - 1].split(","))))
            i = m.end()
        else:
            m = _WORD_RE.match(s, i)
            if not m:
                raise ParseError(f"invalid character {c!r}", i)
            if c.isdigit():
                raise ParseError(f"invalid atom {m.group()!r}", i)
            node = Leaf(Symbol(m.group()))
            i = m.end()
        if stack:
            stack[-1][1].append(node)
        else:
            result = node
    if stack:
        raise ParseError("unmatched '('", stack[-1][0])
    if result is None:
        raise ParseError("empty input", 0)
    return result


# -- shapes and enumeration -------------------------------------------------

HOLE = Leaf(Symbol("_"))


def shape_of(t: Term) -> Term:
    """The bracket skeleton of ``t``: every leaf replaced by ``_``."""
    if isinstance(t, Leaf):
        return HOLE
    return Pair(shape_of(t.left), shape_of(t.right))


def fill(shape: Term, atoms: Sequence[Atom]) -> Term:
    """Place ``atoms`` into the leaves of ``shape`` left to right."""
    if len(atoms) != shape.size:
        raise ValueError(f"shape has {shape.size} leaves, got {len(atoms)} atoms")
    it = iter(atoms)

    def go(node: Term) -> Term:
        if isinstance(node, Leaf):
            return Leaf(next(it))
        left = go(node.left)
        return Pair(left, go(node.right))

    return go(shape)


def _check_limit(n: int, limit: int):
    if n < 1:
        raise ValueError("need at least one leaf")
    if n > limit:
        raise LimitExceeded(f"enumeration of {n} leaves exceeds the limit {limit}")


@lru_cache(maxsize=None)
def _shapes(n: int) -> tuple[Term, ...]:
    if n == 1:
        return (HOLE,)
    return tuple(
        Pair(l, r)
        for p in range(1, n)
        for l in _shapes(p)
        for r in _shapes(n - p)
    )


def enumerate_shapes(n: int, limit: int = MAX_ENUMERATION) -> tuple[Term, ...]:
    """All bracket skeletons with ``n`` leaves.

    Order: split size of the left factor ascending, then left shapes before
    right shapes recursively.  The result has ``catalan(n - 1)`` entries.
    """
    _check_limit(n, limit)
    return _shapes(n)


def fiber(atoms: Sequence[Atom], limit: int = MAX_ENUMERATION) -> list[Term]:
    """Every term whose leaf sequence is ``atoms``, in shape order."""
    atoms = list(atoms)
    _check_limit(len(atoms), limit)
    return [fill(s, atoms) for s in _shapes(len(atoms))]


_catalan_cache = [1]


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan index must be nonnegative")
    c = _catalan_cache
    while len(c) <= n:
        k = len(c) - 1
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return c[n]


def iter_terms(n: int, atoms: Sequence[Atom]) -> Iterator[Term]:
    """All terms with exactly ``n`` leaves drawn from ``atoms``."""
    from itertools import product

    for shape in enumerate_shapes(n):
        for labels in product(atoms, repeat=n):
            yield fill(shape, labels)


def random_term(rng: random.Random, n: int, atoms: Sequence[Atom]) -> Term:
    """A random term with ``n`` leaves; the split point is uniform at each node."""
    if n == 1:
        return Leaf(rng.choice(atoms))
    p = rng.randint(1, n - 1)
    return Pair(random_term(rng, p, atoms), random_term(rng, n - p, atoms))
