"""Reference implementations used only by the tests.

None of these import the code paths they check: bracket strings are parsed
by a separate stack parser into nested tuples, shapes are grown by leaf
expansion rather than split recursion, and term evaluation is an explicit
post-order fold.
"""

import re
from math import comb

_TOKEN = re.compile(r"\(|\)|<[0-9,]+>|[A-Za-z_][A-Za-z0-9_']*")


def tokens(text):
    return _TOKEN.findall(text)


def to_nested(toks):
    """Nested-tuple tree of a token list, or None if not a well-formed binary term."""
    stack = [[]]
    for tok in toks:
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) < 2:
                return None
            inner = stack.pop()
            if len(inner) != 2:
                return None
            stack[-1].append((inner[0], inner[1]))
        else:
            stack[-1].append(tok)
    if len(stack) != 1 or len(stack[0]) != 1:
        return None
    return stack[0][0]


def nested(text):
    return to_nested(tokens(text))


def insertion_oracle(xi_text, h, left, right):
    """Every well-formed way to add one bracket pair after substituting leaf h.

    Leaf ``h`` (1-based) of the bracket string is replaced by the two atoms
    ``left right``.  One "(" and one ")" are then inserted at every pair of
    token positions.  All original brackets survive by construction, and
    the well-formed results are kept.
    """
    toks = tokens(xi_text)
    out, seen = [], 0
    for tok in toks:
        if tok not in "()":
            seen += 1
            if seen == h:
                out += [left, right]
                continue
        out.append(tok)
    results = set()
    for i in range(len(out) + 1):
        for k in range(i, len(out) + 1):
            cand = out[:i] + ["("] + out[i:k] + [")"] + out[k:]
            tree = to_nested(cand)
            if tree is not None:
                results.add(tree)
    return results


def shapes_by_growth(n):
    """All full binary trees with n leaves, grown by expanding leaves one at a time."""
    level = {"_"}
    for _ in range(n - 1):
        nxt = set()
        for t in level:
            nxt |= _expansions(t)
        level = nxt
    return level


def _expansions(t):
    if t == "_":
        return {("_", "_")}
    l, r = t
    return {(x, r) for x in _expansions(l)} | {(l, y) for y in _expansions(r)}


def catalan_closed(n):
    return comb(2 * n, n) // (n + 1)


def fold_eval(text, f, table):
    """Evaluate a term string with an explicit operand stack (no recursion)."""
    stack = []
    for tok in tokens(text):
        if tok == "(":
            continue
        if tok == ")":
            b = stack.pop()
            a = stack.pop()
            stack.append(table[a][b])
        else:
            stack.append(f[tok])
    (v,) = stack
    return v


def split_pairs(table, value):
    return [(a, b) for a in range(len(table)) for b in range(len(table)) if table[a][b] == value]
