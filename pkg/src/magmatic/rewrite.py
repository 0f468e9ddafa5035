"""One-step replacement: expand a leaf into an adjacent pair of atoms.

Every existing bracket pair is kept and exactly one is added.  The new pair
must sit inside the bracket that used to hold the leaf, which then holds three
factors ``d1 d2 d3``.  It can group them only as ``((d1 d2) d3)`` (LEFT) or
``(d1 (d2 d3))`` (RIGHT).  A lone atom becomes ``(x' x'')`` (ROOT).
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator

from .errors import ArityMismatch, InvalidStep
from .product import ProductSpace, SplitTable, build_split_table, coordinate_splits
from .term import Atom, Leaf, Pair, Term, TupleAtom, leaves


class Grouping(enum.Enum):
    ROOT = "Root"
    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True)
class ReplacementStep:
    """Split leaf ``h`` (1-based) at coordinate ``j`` as ``(a, b)``."""

    h: int
    j: int
    a: int
    b: int
    grouping: Grouping

    def render(self) -> str:
        return f"h={self.h} j={self.j} split=({self.a},{self.b}) group={self.grouping.value}"

    def __str__(self):
        return self.render()


_STEP_RE = re.compile(r"h=(\d+) j=(\d+) split=\((\d+),(\d+)\) group=(Root|L|R)\Z")


def parse_step(text: str) -> ReplacementStep:
    m = _STEP_RE.match(text.strip())
    if not m:
        raise ValueError(f"not a step rendering: {text!r}")
    h, j, a, b = (int(g) for g in m.groups()[:4])
    return ReplacementStep(h, j, a, b, Grouping(m.group(5)))


def expand_leaf(xi: Term, h: int, left: Atom, right: Atom, grouping: Grouping) -> Term:
    """Replace leaf ``h`` of ``xi`` by the atoms ``left right`` under ``grouping``.

    Works on any atoms; no magma is consulted.
    """
    if not 1 <= h <= xi.size:
        raise InvalidStep(f"leaf position {h} outside 1..{xi.size}")
    l, r = Leaf(left), Leaf(right)
    if isinstance(xi, Leaf):
        if grouping is not Grouping.ROOT:
            raise InvalidStep("a single atom can only be split with grouping Root")
        return Pair(l, r)
    if grouping is Grouping.ROOT:
        raise InvalidStep("grouping Root applies only to single-atom terms")

    def rebuild(node: Pair, h: int) -> Pair:
        c1, c2 = node.left, node.right
        if h == 1 and isinstance(c1, Leaf):
            if grouping is Grouping.LEFT:
                return Pair(Pair(l, r), c2)
            return Pair(l, Pair(r, c2))
        if h == c1.size + 1 and isinstance(c2, Leaf):
            if grouping is Grouping.LEFT:
                return Pair(Pair(c1, l), r)
            return Pair(c1, Pair(l, r))
        if h <= c1.size:
            return Pair(rebuild(c1, h), c2)
        return Pair(c1, rebuild(c2, h - c1.size))

    return rebuild(xi, h)


def replacements_at(xi: Term, h: int, left: Atom, right: Atom) -> list[Term]:
    """All terms obtained by expanding leaf ``h`` into ``left right``."""
    if xi.size == 1:
        return [expand_leaf(xi, h, left, right, Grouping.ROOT)]
    return [expand_leaf(xi, h, left, right, g) for g in (Grouping.LEFT, Grouping.RIGHT)]


def _tuple_leaves(xi: Term, p: ProductSpace) -> list[TupleAtom]:
    out = leaves(xi)
    for x in out:
        p.check_atom(x)
    return out


def split_atoms(x: TupleAtom, step: ReplacementStep) -> tuple[TupleAtom, TupleAtom]:
    return x.replace(step.j, step.a), x.replace(step.j, step.b)


def check_step(xi: Term, step: ReplacementStep, p: ProductSpace) -> TupleAtom:
    """Validate ``step`` against ``xi`` and return the leaf it splits."""
    n = xi.size
    if not 1 <= step.h <= n:
        raise InvalidStep(f"leaf position {step.h} outside 1..{n}")
    if (step.grouping is Grouping.ROOT) != (n == 1):
        raise InvalidStep(f"grouping {step.grouping.value} invalid for a term with {n} leaves")
    if not 0 <= step.j < p.arity:
        raise InvalidStep(f"component {step.j} outside 0..{p.arity - 1}")
    try:
        x = p.check_atom(leaves(xi)[step.h - 1])
    except (ArityMismatch, IndexError) as e:
        raise InvalidStep(str(e)) from None
    m = p.components[step.j]
    if not (0 <= step.a < m.size and 0 <= step.b < m.size):
        raise InvalidStep(f"split ({step.a},{step.b}) outside {m.name}")
    if m.table[step.a][step.b] != x[step.j]:
        raise InvalidStep(
            f"{step.a}*{step.b} = {m.table[step.a][step.b]} in {m.name}, not {x[step.j]}"
        )
    return x


def apply_replacement(xi: Term, step: ReplacementStep, p: ProductSpace) -> Term:
    x = check_step(xi, step, p)
    left, right = split_atoms(x, step)
    return expand_leaf(xi, step.h, left, right, step.grouping)


def verify_step(xi: Term, step: ReplacementStep, eta: Term, p: ProductSpace) -> bool:
    try:
        return apply_replacement(xi, step, p) == eta
    except InvalidStep:
        return False


def successors(
    xi: Term, p: ProductSpace, st: SplitTable | None = None
) -> list[tuple[ReplacementStep, Term]]:
    """Every one-step replacement of ``xi``.

    Order: leaf position, component, split pair, then LEFT before RIGHT.
    """
    st = st or build_split_table(p)
    groupings = (Grouping.ROOT,) if xi.size == 1 else (Grouping.LEFT, Grouping.RIGHT)
    out = []
    for h, x in enumerate(_tuple_leaves(xi, p), 1):
        for j, left, right in coordinate_splits(p, st, x):
            for g in groupings:
                step = ReplacementStep(h, j, left[j], right[j], g)
                out.append((step, expand_leaf(xi, h, left, right, g)))
    return out


def _internal_nodes(t: Term) -> Iterator[tuple[tuple[int, ...], Pair, int]]:
    """Preorder walk yielding (path, node, index of first leaf below node - 1)."""
    stack: list[tuple[tuple[int, ...], Term, int]] = [((), t, 0)]
    while stack:
        path, node, offset = stack.pop()
        if isinstance(node, Pair):
            yield path, node, offset
            stack.append((path + (1,), node.right, offset + node.left.size))
            stack.append((path + (0,), node.left, offset))


def _replace_at(t: Term, path: tuple[int, ...], new: Term) -> Term:
    if not path:
        return new
    if path[0] == 0:
        return Pair(_replace_at(t.left, path[1:], new), t.right)
    return Pair(t.left, _replace_at(t.right, path[1:], new))


def _merges(p: ProductSpace, x1: TupleAtom, x2: TupleAtom) -> Iterator[tuple[int, TupleAtom]]:
    """(j, merged atom) for every coordinate where ``x1`` and ``x2`` may be joined."""
    for j, m in enumerate(p.components):
        if all(x1[i] == x2[i] for i in range(p.arity) if i != j):
            yield j, x1.replace(j, m.table[x1[j]][x2[j]])


def predecessors(
    eta: Term, p: ProductSpace, st: SplitTable | None = None
) -> list[tuple[Term, ReplacementStep]]:
    """Every ``(xi, step)`` whose replacement gives ``eta``.

    Candidates come from the three local patterns a replacement can leave
    behind; each one is kept only if re-applying its step reproduces ``eta``.
    """
    _tuple_leaves(eta, p)
    out = []
    seen = set()
    for path, node, offset in _internal_nodes(eta):
        candidates = []
        if isinstance(node.left, Leaf) and isinstance(node.right, Leaf):
            # (x' x'') is the whole term, or the new pair next to a sibling
            if not path:
                g = Grouping.ROOT
            elif path[-1] == 0:
                g = Grouping.LEFT
            else:
                g = Grouping.RIGHT
            x1, x2 = node.left.atom, node.right.atom
            for j, x in _merges(p, x1, x2):
                candidates.append((_replace_at(eta, path, Leaf(x)), offset + 1, j, x1, x2, g))
        if isinstance(node.left, Leaf) and isinstance(node.right, Pair) and isinstance(node.right.left, Leaf):
            # (x' (x'' c))
            x1, x2 = node.left.atom, node.right.left.atom
            for j, x in _merges(p, x1, x2):
                xi = _replace_at(eta, path, Pair(Leaf(x), node.right.right))
                candidates.append((xi, offset + 1, j, x1, x2, Grouping.RIGHT))
        if isinstance(node.right, Leaf) and isinstance(node.left, Pair) and isinstance(node.left.right, Leaf):
            # ((c x') x'')
            x1, x2 = node.left.right.atom, node.right.atom
            for j, x in _merges(p, x1, x2):
                xi = _replace_at(eta, path, Pair(node.left.left, Leaf(x)))
                candidates.append((xi, offset + node.left.size, j, x1, x2, Grouping.LEFT))
        for xi, h, j, x1, x2, g in candidates:
            step = ReplacementStep(h, j, x1[j], x2[j], g)
            key = (xi, step)
            if key in seen:
                continue
            if verify_step(xi, step, eta, p):
                seen.add(key)
                out.append(key)
    return out


def lift_step(step: ReplacementStep, context: Term, side: str) -> ReplacementStep:
    """The step that performs ``step`` on the ``side`` factor of a graft with ``context``.

    ``side="left"`` places the rewritten term on the left: ``(t context)``;
    ``side="right"`` gives ``(context t)``.
    """
    if side == "left":
        g = Grouping.LEFT if step.grouping is Grouping.ROOT else step.grouping
        return ReplacementStep(step.h, step.j, step.a, step.b, g)
    if side == "right":
        g = Grouping.RIGHT if step.grouping is Grouping.ROOT else step.grouping
        return ReplacementStep(step.h + context.size, step.j, step.a, step.b, g)
    raise ValueError("side must be 'left' or 'right'")
