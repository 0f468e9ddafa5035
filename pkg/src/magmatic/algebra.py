"""Finite magmas given by Cayley tables, morphism checks, and evaluation of
free-magma terms through the unique morphism extending a generator map."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Mapping, Sequence

from .errors import IndexOutOfRange, ParseError, TableFormatError, UnmappedAtom
from .term import Atom, Leaf, Term, atom as parse_atom


@dataclass(frozen=True)
class FiniteMagma:
    """A carrier ``0..size-1`` with ``table[a][b]`` the product of ``a`` and ``b``."""

    name: str
    names: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        names = tuple(self.names)
        table = tuple(tuple(row) for row in self.table)
        m = len(names)
        if m == 0:
            raise TableFormatError(f"{self.name}: carrier must be nonempty")
        if len(set(names)) != m:
            raise TableFormatError(f"{self.name}: element names are not distinct")
        if len(table) != m or any(len(row) != m for row in table):
            raise TableFormatError(f"{self.name}: table must be {m}x{m}")
        for row in table:
            for v in row:
                if not isinstance(v, int) or not 0 <= v < m:
                    raise TableFormatError(f"{self.name}: table entry {v!r} outside carrier")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "table", table)

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise TableFormatError(f"{self.name}: no element named {name!r}") from None

    def __call__(self, a: int, b: int) -> int:
        return apply(self, a, b)


@dataclass(frozen=True)
class Classification:
    commutative: bool
    associative: bool


def apply(m: FiniteMagma, a: int, b: int) -> int:
    size = m.size
    if not (0 <= a < size and 0 <= b < size):
        raise IndexOutOfRange(f"{m.name}: ({a}, {b}) outside carrier of size {size}")
    return m.table[a][b]


def classify(m: FiniteMagma) -> Classification:
    t, r = m.table, range(m.size)
    commutative = all(t[a][b] == t[b][a] for a in r for b in r)
    associative = all(t[t[a][b]][c] == t[a][t[b][c]] for a in r for b in r for c in r)
    return Classification(commutative, associative)


def is_morphism(f: Sequence[int] | Mapping[int, int], src: FiniteMagma, dst: FiniteMagma) -> bool:
    """True iff ``f(a b) = f(a) f(b)`` for every pair of ``src`` elements."""
    r = range(src.size)
    for a in r:
        if not 0 <= f[a] < dst.size:
            raise IndexOutOfRange(f"image {f[a]} of {a} outside {dst.name}")
    return all(f[src.table[a][b]] == dst.table[f[a]][f[b]] for a, b in product(r, r))


def eval_universal(f: Mapping[Atom, int], target: FiniteMagma, t: Term) -> int:
    """Value of ``t`` under the morphism that sends each leaf atom ``x`` to ``f[x]``."""
    if isinstance(t, Leaf):
        try:
            v = f[t.atom]
        except KeyError:
            raise UnmappedAtom(t.atom) from None
        if not 0 <= v < target.size:
            raise IndexOutOfRange(f"image {v} of {t.atom} outside {target.name}")
        return v
    return target.table[eval_universal(f, target, t.left)][eval_universal(f, target, t.right)]


# -- builtins ---------------------------------------------------------------

def cyclic(n: int) -> FiniteMagma:
    """Addition modulo ``n``."""
    if n < 1:
        raise TableFormatError("Zn needs n >= 1")
    return FiniteMagma(
        f"Z{n}",
        tuple(str(i) for i in range(n)),
        tuple(tuple((a + b) % n for b in range(n)) for a in range(n)),
    )


def const0(m: int) -> FiniteMagma:
    """The ``m``-element magma whose every product is ``0``."""
    if m < 1:
        raise TableFormatError("const0 needs m >= 1")
    return FiniteMagma(
        f"const0:{m}",
        tuple(str(i) for i in range(m)),
        tuple(tuple(0 for _ in range(m)) for _ in range(m)),
    )


def _content_lines(text: str):
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped.split()


def parse_table(text: str, name: str = "table") -> FiniteMagma:
    """Read the Cayley-table format: a header of element names, then one row each."""
    lines = list(_content_lines(text))
    if not lines:
        raise TableFormatError(f"{name}: empty table file")
    names = lines[0][1]
    m = len(names)
    if len(set(names)) != m:
        raise TableFormatError(f"{name}: duplicate element names in header")
    rows = lines[1:]
    if len(rows) != m:
        raise TableFormatError(f"{name}: expected {m} rows, found {len(rows)}")
    lookup = {s: i for i, s in enumerate(names)}
    table = []
    for lineno, row in rows:
        if len(row) != m:
            raise TableFormatError(f"{name}: line {lineno} has {len(row)} entries, expected {m}")
        try:
            table.append(tuple(lookup[s] for s in row))
        except KeyError as e:
            raise TableFormatError(f"{name}: line {lineno}: unknown element {e.args[0]!r}") from None
    return FiniteMagma(name, tuple(names), tuple(table))


def format_table(m: FiniteMagma) -> str:
    lines = [" ".join(m.names)]
    lines += [" ".join(m.names[v] for v in row) for row in m.table]
    return "\n".join(lines) + "\n"


def load_table(path: str | Path) -> FiniteMagma:
    path = Path(path)
    return parse_table(path.read_text(encoding="utf-8"), name=path.stem)


def parse_generator_map(text: str, target: FiniteMagma) -> dict[Atom, int]:
    """Read ``atom element-name`` lines into a generator map."""
    f: dict[Atom, int] = {}
    for lineno, fields in _content_lines(text):
        if len(fields) != 2:
            raise TableFormatError(f"generator map line {lineno}: expected 'atom element-name'")
        try:
            a = parse_atom(fields[0])
        except (ParseError, ValueError) as e:
            raise TableFormatError(f"generator map line {lineno}: {e}") from None
        if a in f:
            raise TableFormatError(f"generator map line {lineno}: atom {a} mapped twice")
        f[a] = target.index(fields[1])
    return f


def load_generator_map(path: str | Path, target: FiniteMagma) -> dict[Atom, int]:
    return parse_generator_map(Path(path).read_text(encoding="utf-8"), target)
