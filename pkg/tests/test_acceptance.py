"""Exit criteria.  Each test records one PASS/FAIL line, printed in the
pytest terminal summary under "acceptance criteria"."""

import contextlib
import random
import subprocess
import sys
import time
from itertools import product

from magmatic import (
    Equivalent,
    NotEquivalentCertified,
    Symbol,
    catalan,
    check_congruence,
    class_of,
    const0,
    cyclic,
    enumerate_shapes,
    equivalent,
    eval_universal,
    fiber,
    format_term,
    graft,
    leaves,
    parse,
    predecessors,
    replacements_at,
    self_magmatic,
    space_of,
    successors,
)
from magmatic.product import build_split_table
from magmatic.quotient import verify_path
from magmatic.term import iter_terms, random_term

from conftest import record_criterion
from oracles import fold_eval, insertion_oracle, nested


@contextlib.contextmanager
def criterion(number, title):
    detail = {}
    try:
        yield detail
    except BaseException as e:
        record_criterion(number, title, False, f"{type(e).__name__}: {e}"[:200])
        raise
    record_criterion(number, title, True, detail.get("note", ""))


def test_c01_catalan_enumeration():
    with criterion(1, "shape counts equal Catalan numbers, n = 1..10") as d:
        t0 = time.perf_counter()
        counts = [len(enumerate_shapes(n)) for n in range(1, 11)]
        assert counts == [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862]
        assert counts == [catalan(n - 1) for n in range(1, 11)]
        x = [Symbol(f"x{i}") for i in range(1, 5)]
        assert [format_term(t) for t in fiber(x)] == [
            "(x1 (x2 (x3 x4)))",
            "(x1 ((x2 x3) x4))",
            "((x1 x2) (x3 x4))",
            "((x1 (x2 x3)) x4)",
            "(((x1 x2) x3) x4)",
        ]
        elapsed = time.perf_counter() - t0
        assert elapsed < 5.0
        d["note"] = f"{elapsed:.2f}s"


def test_c02_replacement_examples():
    with criterion(2, "replacement examples (x y) and (x (y z))"):
        xp, xpp = Symbol("xp"), Symbol("xpp")
        got = {format_term(t) for t in replacements_at(parse("(x y)"), 1, xp, xpp)}
        assert got == {"(xp (xpp y))", "((xp xpp) y)"}
        got = {format_term(t) for t in replacements_at(parse("(x (y z))"), 1, xp, xpp)}
        assert got == {"(xp (xpp (y z)))", "((xp xpp) (y z))"}
        # same examples through a product space: x=<0>, x'=x''=<1>, y=<1>, z=<0> in Z2
        z2 = space_of(cyclic(2))
        for xi, expected in (
            ("(<0> <1>)", {"(<1> (<1> <1>))", "((<1> <1>) <1>)"}),
            ("(<0> (<1> <0>))", {"(<1> (<1> (<1> <0>)))", "((<1> <1>) (<1> <0>))"}),
        ):
            got = {format_term(eta) for s, eta in successors(parse(xi), z2)
                   if s.h == 1 and (s.a, s.b) == (1, 1)}
            assert got == expected


def test_c03_insertion_oracle():
    with criterion(3, "string-insertion oracle equals {GroupLeft, GroupRight}") as d:
        t0 = time.perf_counter()
        rng = random.Random(2024)
        spaces = [space_of(cyclic(2)), space_of(const0(2))]
        checked = discrepancies = 0
        while checked < 600:
            p = spaces[checked % 2]
            xi = random_term(rng, rng.randint(1, 6), list(p.atoms()))
            succ = successors(xi, p)
            if not succ:
                continue
            step, _ = rng.choice(succ)
            ours = {nested(format_term(eta)) for s, eta in succ
                    if (s.h, s.j, s.a, s.b) == (step.h, step.j, step.a, step.b)}
            x = leaves(xi)[step.h - 1]
            oracle = insertion_oracle(format_term(xi), step.h,
                                      str(x.replace(step.j, step.a)), str(x.replace(step.j, step.b)))
            discrepancies += ours != oracle
            checked += 1
        elapsed = time.perf_counter() - t0
        assert discrepancies == 0
        assert elapsed < 30.0
        d["note"] = f"{checked} triples, {elapsed:.2f}s"


def test_c04_leaf_law():
    with criterion(4, "leaf law on randomized steps") as d:
        rng = random.Random(77)
        spaces = [space_of(cyclic(2)), space_of(const0(2)), space_of(cyclic(3)),
                  space_of([cyclic(2), const0(2)]), space_of([cyclic(3), cyclic(2), const0(3)])]
        steps = failures = 0
        while steps < 10_000:
            p = spaces[steps % len(spaces)]
            xi = random_term(rng, rng.randint(1, 6), list(p.atoms()))
            src = leaves(xi)
            for step, eta in successors(xi, p):
                x = src[step.h - 1]
                xl = x.replace(step.j, step.a)
                xr = x.replace(step.j, step.b)
                ok = (
                    leaves(eta) == src[:step.h - 1] + [xl, xr] + src[step.h:]
                    and p.components[step.j].table[step.a][step.b] == x[step.j]
                    and all(xl[i] == xr[i] == x[i] for i in range(p.arity) if i != step.j)
                    and eta.size == xi.size + 1
                )
                failures += not ok
                steps += 1
        assert failures == 0
        d["note"] = f"{steps} steps"


def test_c05_duality():
    with criterion(5, "successors and predecessors are mutually inverse") as d:
        rng = random.Random(99)
        spaces = [space_of(cyclic(2)), space_of(const0(2)), space_of([cyclic(2), const0(2)])]
        tables = {id(p): build_split_table(p) for p in spaces}
        failures = 0
        for i in range(1000):
            p = spaces[i % len(spaces)]
            st = tables[id(p)]
            atoms = list(p.atoms())
            xi = random_term(rng, rng.randint(1, 5), atoms)
            for step, eta in successors(xi, p, st):
                failures += (xi, step) not in predecessors(eta, p, st)
            eta = random_term(rng, rng.randint(2, 6), atoms)
            for xi2, step in predecessors(eta, p, st):
                failures += (step, eta) not in successors(xi2, p, st)
        assert failures == 0
        d["note"] = "1000 terms each way"


def test_c06_universal_morphism():
    with criterion(6, "universal morphism law and uniqueness into Z3") as d:
        t0 = time.perf_counter()
        z3 = cyclic(3)
        gens = [Symbol("x"), Symbol("y")]
        terms = [t for n in range(1, 5) for t in iter_terms(n, gens)]
        assert len(terms) == sum(2 ** n * catalan(n - 1) for n in range(1, 5))
        checks = 0
        for fx, fy in product(range(3), repeat=2):
            f = {gens[0]: fx, gens[1]: fy}
            value = {t: eval_universal(f, z3, t) for t in terms}
            for u in terms:
                for v in terms:
                    if u.size + v.size <= 4:
                        assert value[graft(u, v)] == z3.table[value[u]][value[v]]
                        checks += 1
            for t in terms:
                assert value[t] == fold_eval(format_term(t), {"x": fx, "y": fy}, z3.table)
            for g in gens:
                assert eval_universal(f, z3, parse(str(g))) == f[g]
        elapsed = time.perf_counter() - t0
        assert elapsed < 10.0
        d["note"] = f"{checks} graft checks, {elapsed:.2f}s"


def test_c07_certified_negative():
    with criterion(7, "certified negative and 2-step zigzag in const0(2)"):
        ctx = self_magmatic(const0(2))
        h = class_of(parse("<1>"), ctx)
        assert h.exhausted and h.members == {parse("<1>")}
        assert isinstance(equivalent(parse("<1>"), parse("<0>"), ctx), NotEquivalentCertified)
        a, b = parse("(<1> <0>)"), parse("(<0> <1>)")
        v = equivalent(a, b, ctx)
        assert isinstance(v, Equivalent) and len(v.path) == 2
        assert v.path[0].target == parse("<0>")
        assert [e.direction for e in v.path] == ["-", "+"]
        assert all(e.verify(ctx.space) for e in v.path)
        assert verify_path(v.path, a, b, ctx.space)


def test_c08_congruence():
    with criterion(8, "congruence: no violations in const0(2) and Z2") as d:
        notes = []
        for name, ctx in (("const0(2)", self_magmatic(const0(2))), ("Z2", self_magmatic(cyclic(2)))):
            r = check_congruence(ctx, trials=100, seed=8, max_path=3)
            assert r.trials == 100
            assert r.violations == []
            assert r.lifted_verified == 200
            notes.append(f"{name}: {r.lifted_verified} lifted paths verified")
        d["note"] = "; ".join(notes)


SCENARIOS = [
    ["parse", "(x (y z))"],
    ["parse", "(x y z)"],
    ["shapes", "4"],
    ["shapes", "7"],
    ["catalan", "30"],
    ["explore", "--components", "const0:2", "<1>"],
    ["explore", "--components", "const0:2", "--size-cap", "2", "<0>"],
    ["explore", "--components", "const0:2", "--size-cap", "3", "--format", "dot", "<0>"],
    ["explore", "--components", "Z2,Z3", "--size-cap", "3", "--node-cap", "300", "<1,2>"],
    ["equiv", "--components", "const0:2", "<1>", "<0>"],
    ["equiv", "--components", "const0:2", "(<1> <0>)", "(<0> <1>)"],
    ["equiv", "--components", "Z2", "(<0> <0>)", "<0>"],
    ["equiv", "--components", "Z2", "--node-cap", "100", "<0>", "<1>"],
    ["delta", "--components", "const0:2", "--size-cap", "3", "<1>", "<1>"],
    ["witness", "commutativity", "--components", "Z2", "--size-cap", "3", "--node-cap", "200"],
    ["witness", "associativity", "--components", "const0:3,const0:3", "--size-cap", "4"],
    ["witness", "associativity", "--free"],
    ["congruence", "--components", "Z2", "--trials", "15", "--seed", "5"],
]


def _cli(argv):
    proc = subprocess.run([sys.executable, "-m", "magmatic", *argv], capture_output=True, timeout=120)
    return proc.returncode, proc.stdout, proc.stderr


def test_c09_cli_determinism():
    with criterion(9, "CLI scenarios are byte-identical across runs") as d:
        for argv in SCENARIOS:
            first, second = _cli(argv), _cli(argv)
            assert first == second, argv
        d["note"] = f"{len(SCENARIOS)} scenarios"


def test_c10_roundtrip():
    with criterion(10, "parse/format round trip on random terms") as d:
        rng = random.Random(10)
        pool = [Symbol(s) for s in ("x", "y", "z", "abc", "_t1")]
        pool += [parse(s).atom for s in ("<0>", "<1,2>", "<10,0,3>")]
        failures = 0
        for _ in range(10_000):
            t = random_term(rng, rng.randint(1, 8), pool)
            text = format_term(t)
            failures += parse(text) != t
            spaced = text.replace(" ", "   ").replace("(", "( ")
            failures += format_term(parse(spaced)) != text
        assert failures == 0
        d["note"] = "10000 terms"
