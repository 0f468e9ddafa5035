"""Composite state spaces: ordered families of finite magmas whose states are
coordinate tuples, plus the precomputed preimages of each component operation."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator, NamedTuple, Sequence

from .algebra import FiniteMagma, const0, cyclic, load_table
from .errors import ArityMismatch, IndexOutOfRange, TableFormatError
from .term import TupleAtom

MAX_COMPONENT_SIZE = 64


@dataclass(frozen=True)
class ProductSpace:
    components: tuple[FiniteMagma, ...]

    def __post_init__(self):
        components = tuple(self.components)
        if not components:
            raise ValueError("a product space needs at least one component")
        object.__setattr__(self, "components", components)

    @property
    def arity(self) -> int:
        return len(self.components)

    @property
    def name(self) -> str:
        return " x ".join(c.name for c in self.components)

    def check_atom(self, x) -> TupleAtom:
        if not isinstance(x, TupleAtom) or len(x) != self.arity:
            raise ArityMismatch(f"atom {x} is not a {self.arity}-tuple for {self.name}")
        for c, m in zip(x.coords, self.components):
            if c >= m.size:
                raise IndexOutOfRange(f"coordinate {c} of {x} outside {m.name}")
        return x

    def atoms(self) -> Iterator[TupleAtom]:
        """All states, in lexicographic coordinate order."""
        for coords in product(*(range(m.size) for m in self.components)):
            yield TupleAtom(coords)


class Split(NamedTuple):
    j: int
    left: TupleAtom
    right: TupleAtom


@dataclass(frozen=True)
class SplitTable:
    """``pairs[j][v]`` lists every ``(a, b)`` with ``a * b = v`` in component ``j``."""

    pairs: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]

    def factorizations(self, j: int, v: int) -> tuple[tuple[int, int], ...]:
        return self.pairs[j][v]


def build_split_table(p: ProductSpace) -> SplitTable:
    per_component = []
    for m in p.components:
        found: list[list[tuple[int, int]]] = [[] for _ in range(m.size)]
        # row-major scan emits pairs already in lexicographic order
        for a in range(m.size):
            for b in range(m.size):
                found[m.table[a][b]].append((a, b))
        per_component.append(tuple(tuple(v) for v in found))
    return SplitTable(tuple(per_component))


def coordinate_splits(p: ProductSpace, st: SplitTable, x: TupleAtom) -> list[Split]:
    """Every way to write ``x`` as a product in exactly one coordinate.

    For a split at ``j`` via ``(a, b)``, both halves copy ``x`` and then set
    coordinate ``j`` to ``a`` and ``b`` respectively.
    """
    p.check_atom(x)
    out = []
    for j, v in enumerate(x.coords):
        for a, b in st.factorizations(j, v):
            out.append(Split(j, x.replace(j, a), x.replace(j, b)))
    return out


def is_splittable(st: SplitTable, x: TupleAtom) -> bool:
    return any(st.factorizations(j, v) for j, v in enumerate(x.coords))


def parse_component(spec: str, base_dir: str | Path | None = None) -> FiniteMagma:
    spec = spec.strip()
    if spec.startswith("table:"):
        path = Path(spec[len("table:"):])
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        try:
            m = load_table(path)
        except OSError as e:
            raise TableFormatError(f"cannot read table {path}: {e.strerror}") from None
    elif spec.startswith("const0:"):
        size = spec[len("const0:"):]
        if not size.isdigit():
            raise TableFormatError(f"bad component {spec!r}: const0 needs a size")
        m = const0(int(size))
    elif spec.startswith("Z") and spec[1:].isdigit():
        m = cyclic(int(spec[1:]))
    else:
        raise TableFormatError(f"unknown component {spec!r} (expected Zn, const0:m or table:path)")
    if m.size > MAX_COMPONENT_SIZE:
        raise TableFormatError(f"component {spec!r} has {m.size} elements, above {MAX_COMPONENT_SIZE}")
    return m


def parse_components(spec: str, base_dir: str | Path | None = None) -> ProductSpace:
    """Build a space from ``"Z2,Z3,const0:2,table:path.tbl"``."""
    parts = [s for s in spec.split(",") if s.strip()]
    if not parts:
        raise TableFormatError("empty component list")
    return ProductSpace(tuple(parse_component(s, base_dir) for s in parts))


def space_of(components: Sequence[FiniteMagma] | FiniteMagma) -> ProductSpace:
    if isinstance(components, FiniteMagma):
        components = (components,)
    return ProductSpace(tuple(components))
