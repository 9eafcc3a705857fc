"""Independent brute-force oracles used to freeze expected test values.

These deliberately avoid the library's closure-based enumeration and
criterion shortcuts: subrings are found by scanning all subsets, ideals by
scanning all ideal joins, so the main code paths are checked against a
different computation.
"""

import itertools

import numpy as np

from ringlattice import finring as fr


def brute_force_subrings(S, base):
    """Every subring of S containing base, by exhaustive subset scan.
    Only usable when |S - base| is small (2^k subsets)."""
    base = frozenset(base)
    rest = sorted(set(range(S.size)) - base)
    assert len(rest) <= 16, "oracle only meant for tiny ambient rings"
    out = []
    base_arr = sorted(base)
    for r in range(len(rest) + 1):
        for combo in itertools.combinations(rest, r):
            cand = np.array(base_arr + list(combo), dtype=np.int32)
            cand.sort()
            if np.isin(S.add[np.ix_(cand, cand)], cand).all() and \
                    np.isin(S.mul[np.ix_(cand, cand)], cand).all():
                out.append(frozenset(int(x) for x in cand))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def largest_common_ideal(S, base):
    """The largest ideal of S contained in base, by scanning all ideals."""
    best = frozenset([S.zero])
    for ideal in S.all_ideals(np.arange(S.size, dtype=np.int32)):
        if ideal <= base and len(ideal) > len(best):
            best = ideal
    return best


def distributive_by_definition(nodes):
    """Triple scan over frozensets with set ops only (no tables)."""
    nodes = list(nodes)

    def join(a, b):
        cands = [c for c in nodes if a <= c and b <= c]
        best = min(cands, key=len)
        assert all(best <= c for c in cands)
        return best

    for x in nodes:
        for y in nodes:
            for z in nodes:
                lhs = x & join(y, z)
                rhs = join(x & y, x & z)
                if lhs != rhs:
                    return False
    return True
