import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from magmatic import Leaf, Pair, Symbol, TupleAtom, const0, cyclic, magmatic_product

ACCEPTANCE = {}


def record_criterion(number, title, passed, detail=""):
    ACCEPTANCE[number] = (title, passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[number]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] {number:2d}. {title}" + (f" ({detail})" if detail else ""))


symbols = st.sampled_from([Symbol(s) for s in ("x", "y", "z", "w", "a_1", "B2")])
tuples = st.lists(st.integers(0, 12), min_size=1, max_size=3).map(lambda c: TupleAtom(tuple(c)))
atoms = symbols | tuples


def terms_over(atom_strategy, max_leaves=30):
    return st.recursive(
        atom_strategy.map(Leaf),
        lambda children: st.builds(Pair, children, children),
        max_leaves=max_leaves,
    )


terms = terms_over(atoms)


@pytest.fixture(scope="session")
def z2():
    return magmatic_product([cyclic(2)])


@pytest.fixture(scope="session")
def c02():
    return magmatic_product([const0(2)])


@pytest.fixture(scope="session")
def z2z3():
    return magmatic_product([cyclic(2), cyclic(3)])
