"""The equivalence generated by replacements, explored with explicit bounds.

Equivalence classes are usually infinite (a value with a factorization can
be split forever), so every query here is bounded by an
:class:`ExplorationCaps` and answers in three values.  It returns
``Equivalent`` with a checked path, ``NotEquivalentCertified`` when the
whole connected component was enumerated, or ``Unknown``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .algebra import FiniteMagma
from .errors import CapTooSmall
from .product import ProductSpace, SplitTable, build_split_table, is_splittable, space_of
from .rewrite import ReplacementStep, lift_step, predecessors, successors, verify_step
from .term import Leaf, Pair, Term, TupleAtom, canonical_key, graft, leaves, random_term

SIZE_CAP = 5
NODE_CAP = 2000


@dataclass(frozen=True)
class ExplorationCaps:
    size_cap: int = SIZE_CAP
    node_cap: int = NODE_CAP

    def __post_init__(self):
        if self.size_cap < 1 or self.node_cap < 1:
            raise ValueError("exploration caps must be positive")

    def enlarged(self, extra_size: int, node_factor: int = 1) -> ExplorationCaps:
        return ExplorationCaps(self.size_cap + extra_size, self.node_cap * node_factor)


@dataclass(frozen=True)
class MagmaticProduct:
    """A product space with its split table and default exploration caps."""

    space: ProductSpace
    splits: SplitTable
    caps: ExplorationCaps

    @property
    def arity(self) -> int:
        return self.space.arity


def magmatic_product(p: ProductSpace | Sequence[FiniteMagma], caps: ExplorationCaps | None = None) -> MagmaticProduct:
    if not isinstance(p, ProductSpace):
        p = space_of(p)
    return MagmaticProduct(p, build_split_table(p), caps or ExplorationCaps())


def self_magmatic(m: FiniteMagma, caps: ExplorationCaps | None = None) -> MagmaticProduct:
    return magmatic_product(space_of(m), caps)


@dataclass(frozen=True)
class PathStep:
    """One edge of a path.

    ``+`` means ``target`` is a replacement of ``source`` via ``step``; ``-``
    means ``source`` is a replacement of ``target`` (a merge).
    """

    direction: str
    step: ReplacementStep
    source: Term
    target: Term

    def render(self) -> str:
        return self.direction + self.step.render()

    def verify(self, space: ProductSpace) -> bool:
        if self.direction == "+":
            return verify_step(self.source, self.step, self.target, space)
        if self.direction == "-":
            return verify_step(self.target, self.step, self.source, space)
        return False

    def reversed(self) -> PathStep:
        return PathStep("-" if self.direction == "+" else "+", self.step, self.target, self.source)


def verify_path(path: Sequence[PathStep], start: Term, end: Term, space: ProductSpace) -> bool:
    current = start
    for e in path:
        if e.source != current or not e.verify(space):
            return False
        current = e.target
    return current == end


def render_path(path: Iterable[PathStep]) -> str:
    return "".join(e.render() + "\n" for e in path)


@dataclass(frozen=True, eq=False)
class ClassHandle:
    """The explored part of the class of ``origin``."""

    origin: Term
    representative: Term
    members: frozenset
    exhausted: bool
    caps: ExplorationCaps
    limit: str | None = None
    parents: Mapping = field(default_factory=dict, repr=False)
    depths: Mapping = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.members)

    def __contains__(self, t):
        return t in self.members

    def path_to(self, member: Term) -> list[PathStep]:
        """Path from ``origin`` to ``member`` along the exploration tree."""
        path = []
        node = member
        while node != self.origin:
            e = self.parents[node]
            path.append(e)
            node = e.source
        path.reverse()
        return path


@dataclass(frozen=True)
class Equivalent:
    path: tuple[PathStep, ...]


@dataclass(frozen=True)
class NotEquivalentCertified:
    explored: int


@dataclass(frozen=True)
class Unknown:
    reason: str
    explored: int


EquivalenceVerdict = Union[Equivalent, NotEquivalentCertified, Unknown]


def _check_term(t: Term, ctx: MagmaticProduct, caps: ExplorationCaps):
    for x in leaves(t):
        ctx.space.check_atom(x)
    if t.size > caps.size_cap:
        raise CapTooSmall(f"{t} has {t.size} leaves, above size cap {caps.size_cap}")


def _neighbours(u: Term, ctx: MagmaticProduct, caps: ExplorationCaps) -> tuple[list[PathStep], bool]:
    """Edges out of ``u`` within the size cap, and whether any were cut by it."""
    edges = []
    pruned = False
    if u.size < caps.size_cap:
        edges = [PathStep("+", s, u, v) for s, v in successors(u, ctx.space, ctx.splits)]
    else:
        pruned = any(is_splittable(ctx.splits, x) for x in leaves(u))
    if u.size > 1:
        edges += [PathStep("-", s, u, xi) for xi, s in predecessors(u, ctx.space, ctx.splits)]
    return edges, pruned


def _explore(start: Term, ctx: MagmaticProduct, caps: ExplorationCaps, target: Term | None = None):
    parents: dict[Term, PathStep] = {}
    depths = {start: 0}
    limit = None
    pruned = False
    found = start == target
    layer = [start]
    depth = 0
    while layer and not found and limit is None:
        depth += 1
        nxt = []
        for u in sorted(layer, key=canonical_key):
            edges, cut = _neighbours(u, ctx, caps)
            pruned |= cut
            for e in edges:
                v = e.target
                if v in depths:
                    continue
                if len(depths) >= caps.node_cap:
                    limit = "node_cap"
                    break
                parents[v] = e
                depths[v] = depth
                nxt.append(v)
                if v == target:
                    found = True
                    break
            if found or limit:
                break
        layer = nxt
    if limit is None and pruned:
        limit = "size_cap"
    # a search that stopped at its target has not enumerated the component
    exhausted = limit is None and not found
    return parents, depths, exhausted, limit, found


def class_of(t: Term, ctx: MagmaticProduct, caps: ExplorationCaps | None = None) -> ClassHandle:
    """Breadth-first exploration of the class of ``t`` within ``caps``.

    Each frontier is expanded in canonical order, so results are reproducible.
    """
    caps = caps or ctx.caps
    _check_term(t, ctx, caps)
    parents, depths, exhausted, limit, _ = _explore(t, ctx, caps)
    members = frozenset(depths)
    return ClassHandle(
        origin=t,
        representative=min(members, key=canonical_key),
        members=members,
        exhausted=exhausted,
        caps=caps,
        limit=limit,
        parents=parents,
        depths=depths,
    )


def equivalent(a: Term, b: Term, ctx: MagmaticProduct, caps: ExplorationCaps | None = None) -> EquivalenceVerdict:
    """Search for a replacement path from ``a`` to ``b``.

    A negative answer is certified only when the class of ``a`` was
    enumerated completely without meeting ``b``.
    """
    caps = caps or ctx.caps
    _check_term(a, ctx, caps)
    _check_term(b, ctx, caps)
    if a == b:
        return Equivalent(())
    parents, depths, exhausted, limit, found = _explore(a, ctx, caps, target=b)
    if found:
        path = []
        node = b
        while node != a:
            e = parents[node]
            path.append(e)
            node = e.source
        path.reverse()
        assert verify_path(path, a, b, ctx.space), "unverifiable equivalence path"
        return Equivalent(tuple(path))
    if exhausted:
        return NotEquivalentCertified(len(depths))
    return Unknown(limit or "node_cap", len(depths))


def delta(A: ClassHandle, B: ClassHandle, ctx: MagmaticProduct, caps: ExplorationCaps | None = None) -> ClassHandle:
    """The induced product of two classes, computed on their representatives."""
    return class_of(graft(A.representative, B.representative), ctx, caps)


def embed(x: TupleAtom, ctx: MagmaticProduct, caps: ExplorationCaps | None = None) -> ClassHandle:
    ctx.space.check_atom(x)
    return class_of(Leaf(x), ctx, caps)


def replacement_edges(handle: ClassHandle, ctx: MagmaticProduct) -> list[PathStep]:
    """Forward replacement edges between members of ``handle``, in canonical order."""
    out = []
    for u in sorted(handle.members, key=canonical_key):
        if u.size >= handle.caps.size_cap:
            continue
        for s, v in successors(u, ctx.space, ctx.splits):
            if v in handle.members:
                out.append(PathStep("+", s, u, v))
    return out


# -- congruence --------------------------------------------------------------

@dataclass
class CongruenceReport:
    trials: int = 0
    trivial: int = 0
    lifted_verified: int = 0
    searched_found: int = 0
    searched_unknown: int = 0
    violations: list = field(default_factory=list)


def lift_path(path: Sequence[PathStep], context: Term, side: str) -> list[PathStep]:
    def wrap(t):
        return Pair(t, context) if side == "left" else Pair(context, t)

    return [
        PathStep(e.direction, lift_step(e.step, context, side), wrap(e.source), wrap(e.target))
        for e in path
    ]


def check_congruence(
    ctx: MagmaticProduct,
    trials: int = 100,
    caps: ExplorationCaps | None = None,
    seed: int = 0,
    max_path: int = 3,
    max_leaves: int = 3,
    search: bool = True,
) -> CongruenceReport:
    """Sample ``a`` equivalent to ``a'`` and check both sides of a graft context.

    The path from ``a`` to ``a'`` is lifted through ``(a c)`` and ``(c a)`` and
    every lifted step is re-verified.  A step that fails is a violation.  With
    ``search`` the lifted endpoints are also fed to :func:`equivalent`.  A miss
    there is counted as unknown, not as a violation.
    """
    caps = caps or ExplorationCaps(max_leaves + 1, 200)
    rng = random.Random(seed)
    atoms = list(ctx.space.atoms())
    report = CongruenceReport()
    for trial in range(trials):
        report.trials += 1
        a = random_term(rng, rng.randint(1, max_leaves), atoms)
        handle = class_of(a, ctx, ExplorationCaps(max(caps.size_cap, a.size), caps.node_cap))
        near = sorted(
            (m for m in handle.members if handle.depths[m] <= max_path), key=canonical_key
        )
        a2 = rng.choice(near)
        path = handle.path_to(a2)
        c = random_term(rng, rng.randint(1, 2), atoms)
        if a2 == a:
            report.trivial += 1
        for side in ("left", "right"):
            lifted = lift_path(path, c, side)
            lhs = Pair(a, c) if side == "left" else Pair(c, a)
            rhs = Pair(a2, c) if side == "left" else Pair(c, a2)
            if not verify_path(lifted, lhs, rhs, ctx.space):
                report.violations.append(f"trial {trial}: lifted path {side} of {c} fails for {a} ~ {a2}")
                continue
            report.lifted_verified += 1
            if search and a2 != a:
                big = ExplorationCaps(max(lhs.size, rhs.size, caps.size_cap + c.size), caps.node_cap)
                verdict = equivalent(lhs, rhs, ctx, big)
                if isinstance(verdict, Equivalent):
                    report.searched_found += 1
                elif isinstance(verdict, NotEquivalentCertified):
                    report.violations.append(f"trial {trial}: {lhs} and {rhs} certified inequivalent")
                else:
                    report.searched_unknown += 1
    return report


# -- witnesses ---------------------------------------------------------------

COMMUTATIVITY = "commutativity"
ASSOCIATIVITY = "associativity"


@dataclass(frozen=True)
class Witness:
    property: str
    lhs: Term
    rhs: Term
    explored: int

    def details(self) -> str:
        return f"{self.lhs} is not equivalent to {self.rhs} (class of {self.explored} terms exhausted)"


@dataclass
class WitnessUnknown:
    property: str
    checked: int = 0
    equivalent: int = 0
    unknown: int = 0
    transcript: list = field(default_factory=list)


def _candidates(prop: str, atoms: Sequence[TupleAtom]):
    if prop == COMMUTATIVITY:
        for i, x in enumerate(atoms):
            for y in atoms[i + 1:]:
                yield Pair(Leaf(x), Leaf(y)), Pair(Leaf(y), Leaf(x))
    elif prop == ASSOCIATIVITY:
        for x in atoms:
            for y in atoms:
                for z in atoms:
                    yield (Pair(Leaf(x), Pair(Leaf(y), Leaf(z))),
                           Pair(Pair(Leaf(x), Leaf(y)), Leaf(z)))
    else:
        raise ValueError(f"unknown property {prop!r}")


def witness_atoms(ctx: MagmaticProduct, max_atoms: int) -> list[TupleAtom]:
    """Atoms most likely to sit in small classes first: fewest splittable coordinates."""
    st = ctx.splits

    def key(x):
        return (sum(bool(st.factorizations(j, v)) for j, v in enumerate(x.coords)), x.coords)

    return sorted(ctx.space.atoms(), key=key)[:max_atoms]


def witness_search(
    ctx: MagmaticProduct,
    prop: str,
    caps: ExplorationCaps | None = None,
    atoms: Sequence[TupleAtom] | None = None,
    max_atoms: int = 6,
    max_candidates: int = 64,
) -> Witness | WitnessUnknown:
    """Look for a certified failure of ``prop`` in the quotient.

    A witness is reported only from a ``NotEquivalentCertified`` verdict,
    tried in both directions.
    """
    caps = caps or ctx.caps
    if atoms is None:
        atoms = witness_atoms(ctx, max_atoms)
    result = WitnessUnknown(prop)
    for n, (lhs, rhs) in enumerate(_candidates(prop, list(atoms))):
        if n >= max_candidates:
            break
        result.checked += 1
        verdict = equivalent(lhs, rhs, ctx, caps)
        if isinstance(verdict, Unknown):
            back = equivalent(rhs, lhs, ctx, caps)
            if isinstance(back, NotEquivalentCertified):
                return Witness(prop, rhs, lhs, back.explored)
        if isinstance(verdict, NotEquivalentCertified):
            return Witness(prop, lhs, rhs, verdict.explored)
        if isinstance(verdict, Equivalent):
            result.equivalent += 1
            result.transcript.append(f"{lhs} ~ {rhs}: EQUIVALENT ({len(verdict.path)} steps)")
        else:
            result.unknown += 1
            result.transcript.append(f"{lhs} ? {rhs}: UNKNOWN ({verdict.reason}, {verdict.explored} explored)")
    return result


def free_witness(prop: str, atoms: Sequence) -> tuple[Term, Term] | None:
    """In the free magma itself, distinct bracketings are distinct terms."""
    for lhs, rhs in _candidates(prop, list(atoms)):
        if lhs != rhs:
            return lhs, rhs
    return None
