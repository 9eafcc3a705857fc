"""Named structural checks run by the verification harness.

Every check evaluates the two sides of a characterization (or the
hypothesis and conclusion of an implication) by independent computations
and compares them.  Hypotheses unmet produce an ``n/a`` result with the
reason; failures carry a minimal witness.  For iff-shaped checks the
``side`` field records which side of the equivalence the instance
exercised, so the harness can report one-sided coverage.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import extension as ex
from . import finring as fr
from .lattice import LatticeError
from .verify import Analysis, CheckResult, check

_B2_INTERVAL_CAP = 80
_PAIR_SAMPLE_CAP = 150


def _na(reason):
    return CheckResult("", "", "n/a", reason=reason)


def _iff(lhs, rhs, witness):
    status = "pass" if bool(lhs) == bool(rhs) else "fail"
    return CheckResult("", "", status,
                       witness=None if status == "pass" else witness,
                       side="lhs_true" if lhs else "lhs_false")


def _implies(hyp_ok, conclusion, witness, reason="hypotheses not satisfied"):
    if not hyp_ok:
        return _na(reason)
    return CheckResult("", "", "pass" if conclusion else "fail",
                       witness=None if conclusion else witness)


def _proper(a: Analysis):
    return not a.E.trivial


# ----------------------------------------------------------------------
# minimal-extension structure along chains

@check("chain_type_profile",
       "closure predicates match the multiset of minimal types along every "
       "maximal chain (ramified <-> subintegral, decomposed <-> seminormal "
       "infra-integral, both <-> infra-integral, inert <-> t-closed)")
def chain_type_profile(a):
    if not _proper(a):
        return _na("trivial extension")
    f = a.flags
    chains = a.L.maximal_chains(0, a.L.top, cap=2000)
    for chain in chains:
        types = {a.cover_types[(u, v)].value for u, v in zip(chain, chain[1:])}
        rules = [
            (f.subintegral, types <= {"ramified"}),
            (f.seminormal and f.infra_integral, types <= {"decomposed"}),
            (f.infra_integral, types <= {"ramified", "decomposed"}),
            (f.t_closed, types <= {"inert"}),
        ]
        for k, (flag, chain_side) in enumerate(rules):
            if bool(flag) != chain_side:
                return CheckResult("", "", "fail", witness={
                    "chain": chain, "types": sorted(types), "rule": k})
        if (types <= {"ramified"} or types <= {"inert"}) and not f.i_extension:
            return CheckResult("", "", "fail", witness={
                "chain": chain, "types": sorted(types),
                "rule": "isotopic chains force an i-extension"})
    return CheckResult("", "", "pass")


@check("isotopic_chain_suffices",
       "all covering pairs share one minimal type iff some maximal chain "
       "is monotype")
def isotopic_chain_suffices(a):
    if not _proper(a):
        return _na("trivial extension")
    all_types = {t.value for t in a.cover_types.values()}
    chains = a.L.maximal_chains(0, a.L.top, cap=2000)
    exists_monotype = any(
        len({a.cover_types[(u, v)].value for u, v in zip(c, c[1:])}) == 1
        for c in chains)
    return _iff(len(all_types) == 1, exists_monotype,
                {"cover_types": sorted(all_types)})


@check("support_via_chain_conductors",
       "the support equals the set of contracted step conductors along any "
       "maximal chain")
def support_via_chain_conductors(a):
    if not _proper(a):
        return _na("trivial extension")
    msupp = set(a.profile.msupp)
    chains = a.L.maximal_chains(0, a.L.top, cap=2000)
    sample = chains if len(chains) <= 50 else chains[:50]
    for chain in sample:
        contracted = set()
        for u, v in zip(chain, chain[1:]):
            cond = ex.conductor_pair(a.S, a.nodes[u], a.nodes[v])
            contracted.add(frozenset(cond) & a.E.base)
        if contracted != msupp:
            return CheckResult("", "", "fail", witness={
                "chain": chain,
                "contracted_sizes": sorted(len(c) for c in contracted),
                "msupp_sizes": sorted(len(m) for m in msupp)})
    return CheckResult("", "", "pass")


@check("cover_minimality_consistency",
       "lattice covers are exactly the pairs passing the definitional "
       "no-intermediate-ring search, and the type classifier agrees with it")
def cover_minimality_consistency(a):
    if not _proper(a):
        return _na("trivial extension")
    L = a.L
    n = len(L.nodes)
    pairs = [(i, j) for i in range(n) for j in range(n)
             if i != j and L.leq[i, j]]
    if len(pairs) > _PAIR_SAMPLE_CAP:
        pairs = pairs[:_PAIR_SAMPLE_CAP]
    for i, j in pairs:
        minimal = ex.is_minimal_pair(a.S, L.nodes[i], L.nodes[j])
        if minimal != bool(L.covers[i, j]):
            return CheckResult("", "", "fail",
                               witness={"pair": [i, j], "cover": bool(L.covers[i, j]),
                                        "definitional": minimal})
        got = ex.classify_minimal_pair(a.S, L.nodes[i], L.nodes[j])
        if minimal != (got is not None):
            return CheckResult("", "", "fail",
                               witness={"pair": [i, j], "classifier": got and got.value})
    return CheckResult("", "", "pass")


@check("i_extension_iff_no_decomposed_part",
       "injective spectrum map iff seminormalization equals t-closure")
def i_extension_iff_no_decomposed_part(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    return _iff(a.flags.i_extension, d.plus == d.t,
                {"plus_size": len(d.plus), "t_size": len(d.t)})


@check("u_closed_iff_i_extension",
       "the idempotent-style element condition for the whole extension "
       "matches injectivity of the spectrum map")
def u_closed_iff_i_extension(a):
    if not _proper(a):
        return _na("trivial extension")
    return _iff(a.flags.u_closed, a.flags.i_extension, {})


@check("canonical_diagram_types",
       "base <= u-meet-plus is subintegral, u-meet-plus <= u is seminormal "
       "infra-integral, u <= t is subintegral, t <= top is t-closed")
def canonical_diagram_types(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    mid = d.u & d.plus
    checks = [
        ("base<=u^plus subintegral",
         ex.is_subintegral_pair(a.E.sub(a.E.base, mid))),
        ("u^plus<=u seminormal",
         ex.is_seminormal(a.S, mid, d.u)),
        ("u^plus<=u infra-integral",
         ex.is_infra_integral_pair(a.E.sub(mid, d.u))),
        ("u<=t subintegral",
         ex.is_subintegral_pair(a.E.sub(d.u, d.t))),
        ("t<=top t-closed",
         ex.is_t_closed(a.S, d.t, a.E.top)),
    ]
    bad = [name for name, ok in checks if not ok]
    return CheckResult("", "", "pass" if not bad else "fail",
                       witness={"failed": bad} if bad else None)


@check("u_closure_from_t_closure",
       "the u-closure is the least ring over which the t-closure is "
       "subintegral; for infra-integral extensions it is the least ring "
       "over which the whole top is subintegral")
def u_closure_from_t_closure(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    if d.t == a.E.base:
        inner = a.E.base
    else:
        inner = a.sub(a.E.base, d.t).decomp.cosub
    if inner != d.u:
        return CheckResult("", "", "fail",
                           witness={"u_size": len(d.u),
                                    "cosub_in_t_size": inner and len(inner)})
    if a.flags.infra_integral and d.cosub != d.u:
        return CheckResult("", "", "fail",
                           witness={"u_size": len(d.u),
                                    "cosub_size": d.cosub and len(d.cosub)})
    return CheckResult("", "", "pass")


# ----------------------------------------------------------------------
# transfer rules

@check("localization_equivalence",
       "distributive iff every localization at a support ideal is "
       "distributive (independent enumeration per localization)")
def localization_equivalence(a):
    if not _proper(a):
        return _na("trivial extension")
    locs = {tuple(sorted(M)): a.loc(M).verdict.distributive
            for M in a.profile.msupp}
    return _iff(a.verdict.distributive, all(locs.values()),
                {"local_verdicts": {str(k[:3]) + "...": v
                                    for k, v in locs.items()}})


@check("shared_ideal_quotient_equivalence",
       "distributive iff the quotient modulo any (equivalently some) common "
       "ideal is distributive")
def shared_ideal_quotient_equivalence(a):
    if not _proper(a):
        return _na("trivial extension")
    S = a.S
    shared = [I for I in S.all_ideals(np.arange(S.size, dtype=np.int32))
              if I <= a.E.base]
    verdicts = []
    for I in shared[:40]:
        quo, proj = fr.quotient_of_subring(S, np.arange(S.size, dtype=np.int32),
                                           fr.as_index_array(I))
        base_img = frozenset(int(proj[x]) for x in a.E.base)
        sub = Analysis(a.name + "/I", ex.Extension(quo, base_img))
        verdicts.append(sub.verdict.distributive)
    ok = all(v == a.verdict.distributive for v in verdicts)
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"verdicts": verdicts,
                                                "full": a.verdict.distributive},
                       side="lhs_true" if a.verdict.distributive else "lhs_false")


@check("quotient_transfer",
       "a distributive extension stays distributive modulo any ideal of the "
       "top ring (contracted to the base on the left)")
def quotient_transfer(a):
    if not _proper(a) or not a.verdict.distributive:
        return _na("extension not distributive")
    S = a.S
    ideals = S.all_ideals(a.E.top_arr if len(a.E.top) != S.size
                          else np.arange(S.size, dtype=np.int32))
    for J in ideals[:40]:
        if J == a.E.top:
            continue
        quo, proj = fr.quotient_of_subring(S, a.E.top_arr, fr.as_index_array(J))
        base_img = frozenset(int(proj[x]) for x in a.E.base)
        sub = Analysis(a.name + "/J", ex.Extension(quo, base_img))
        if not sub.verdict.distributive:
            return CheckResult("", "", "fail",
                               witness={"ideal_size": len(J)})
    return CheckResult("", "", "pass")


@check("product_transfer",
       "when the base contains every primitive idempotent of the top ring, "
       "distributivity holds iff it holds on each factor")
def product_transfer(a):
    if not _proper(a):
        return _na("trivial extension")
    dec_top = a.E.top_decomposition()
    if len(dec_top.idempotents) < 2 or \
            not all(e in a.E.base for e in dec_top.idempotents):
        return _na("base does not decompose along the top ring's factors")
    S = a.S
    verdicts = []
    for e in dec_top.idempotents:
        eS = np.unique(S.mul[e, a.E.top_arr])
        eR = np.unique(S.mul[e, a.E.base_arr])
        ring, old = S.subset_ring(eS, e)
        pos = {int(x): i for i, x in enumerate(old.tolist())}
        base = frozenset(pos[int(x)] for x in eR.tolist())
        verdicts.append(Analysis(a.name + "@factor",
                                 ex.Extension(ring, base)).verdict.distributive)
    return _iff(a.verdict.distributive, all(verdicts),
                {"factor_verdicts": verdicts})


@check("idealization_transfer",
       "distributivity is preserved and reflected by gluing a square-zero "
       "copy of the top ring onto both sides")
def idealization_transfer(a):
    if not _proper(a):
        return _na("trivial extension")
    S = a.S
    n = len(a.E.top)
    if n > 16:
        return _na("top ring too large for the doubled construction")
    top = sorted(a.E.top)
    pos = {x: i for i, x in enumerate(top)}
    m = n * n
    add = np.empty((m, m), dtype=np.int32)
    mul = np.empty((m, m), dtype=np.int32)
    for i, (r1, m1) in enumerate(itertools.product(top, top)):
        for j, (r2, m2) in enumerate(itertools.product(top, top)):
            add[i, j] = pos[S.a(r1, r2)] * n + pos[S.a(m1, m2)]
            mul[i, j] = pos[S.m(r1, r2)] * n + \
                pos[S.a(S.m(r1, m2), S.m(r2, m1))]
    one = pos[S.one] * n + pos[S.zero]
    big = fr.FiniteRing.from_tables(add, mul, one, label=f"{S.label}(+)M",
                                    kind="derived", size_cap=max(m, S.size_cap))
    base = frozenset(pos[r] * n + pos[mm] for r in sorted(a.E.base) for mm in top)
    sub = Analysis(a.name + "(+)M", ex.Extension(big, base))
    return _iff(a.verdict.distributive, sub.verdict.distributive,
                {"doubled_verdict": sub.verdict.distributive})


# ----------------------------------------------------------------------
# lattice criteria

@check("b2_iff_length2_card4",
       "Boolean of length 2 iff length 2 with exactly 4 nodes")
def b2_iff_length2_card4(a):
    if not _proper(a):
        return _na("trivial extension")
    v = a.verdict
    lhs = v.boolean_lattice and v.length == 2
    rhs = v.length == 2 and len(a.nodes) == 4
    return _iff(lhs, rhs, {"length": v.length, "nodes": len(a.nodes)})


@check("distributive_implies_catenarian",
       "a distributive interval is catenarian (and finite)")
def distributive_implies_catenarian(a):
    if not _proper(a):
        return _na("trivial extension")
    v = a.verdict
    return _implies(v.distributive, v.catenarian,
                    {"catenarian": v.catenarian},
                    reason="extension not distributive")


@check("catenarian_length2_rule",
       "a catenarian interval is distributive iff every length-2 "
       "subinterval has at most 4 nodes")
def catenarian_length2_rule(a):
    if not _proper(a):
        return _na("trivial extension")
    v = a.verdict
    if not v.catenarian:
        return _na("extension not catenarian")
    ok, wit = a.L.check_length2_rule()   # internally asserted against verdict
    return _iff(v.distributive, ok, {"rule_witness": wit})


@check("length2_card_rule",
       "a length-2 extension is distributive iff it has at most 4 nodes")
def length2_card_rule(a):
    if not _proper(a):
        return _na("trivial extension")
    if a.L.length != 2:
        return _na("length is not 2")
    return _iff(a.verdict.distributive, len(a.nodes) <= 4,
                {"nodes": len(a.nodes)})


@check("covering_pair_criterion",
       "the three distributivity routes (law scan, forbidden sublattice, "
       "covering-pair intervals) agree")
def covering_pair_criterion(a):
    dist, wit = a.L.check_distributive()   # raises on route disagreement
    return CheckResult("", "", "pass",
                       side="lhs_true" if dist else "lhs_false")


@check("hereditary_distributivity",
       "distributive iff every subinterval is distributive")
def hereditary_distributivity(a):
    if not _proper(a):
        return _na("trivial extension")
    L = a.L
    n = len(L.nodes)
    dist = a.verdict.distributive
    if n > 40:
        return _na("too many nodes for the full subinterval sweep")
    for i in range(n):
        for j in range(n):
            if not L.leq[i, j]:
                continue
            sub_ok, _ = L.interval(i, j).check_distributive()
            if dist and not sub_ok:
                return CheckResult("", "", "fail",
                                   witness={"interval": [i, j]})
            if not dist and (i, j) == (0, n - 1) and sub_ok:
                return CheckResult("", "", "fail",
                                   witness={"interval": [i, j]})
    return CheckResult("", "", "pass",
                       side="lhs_true" if dist else "lhs_false")


@check("pinched_segment_rule",
       "an interval pinched at a chain is distributive iff every segment "
       "between consecutive chain members is distributive")
def pinched_segment_rule(a):
    if not _proper(a):
        return _na("trivial extension")
    L = a.L
    candidates = [[t] for t in range(1, len(L.nodes) - 1)]
    loewy = [t for t in L.loewy_series() if t not in (0, L.top)]
    if loewy:
        candidates.append(loewy)
    tested = 0
    for chain in candidates:
        try:
            pinched = L.is_pinched_at(chain)
        except LatticeError:
            continue
        if not pinched:
            continue
        tested += 1
        pts = [0] + list(chain) + [L.top]
        segs = [L.interval(u, v).check_distributive()[0]
                for u, v in zip(pts, pts[1:])]
        if a.verdict.distributive != all(segs):
            return CheckResult("", "", "fail",
                               witness={"chain": list(chain), "segments": segs})
    if tested == 0:
        return _na("no pinch chain found")
    return CheckResult("", "", "pass",
                       side="lhs_true" if a.verdict.distributive else "lhs_false")


@check("loewy_boolean_steps",
       "an interval pinched at its Loewy series is distributive iff every "
       "Loewy step is Boolean")
def loewy_boolean_steps(a):
    if not _proper(a):
        return _na("trivial extension")
    L = a.L
    series = L.loewy_series()
    interior = [t for t in series if t not in (0, L.top)]
    if interior and not L.is_pinched_at(interior):
        return _na("not pinched at the Loewy series")
    steps = [L.interval(u, v).check_boolean()[0]
             for u, v in zip(series, series[1:])]
    return _iff(a.verdict.distributive, all(steps), {"steps": steps})


@check("atom_join_is_simple",
       "in a distributive interval the join of distinct atoms is generated "
       "by the sum of their generators")
def atom_join_is_simple(a):
    if not _proper(a) or not a.verdict.distributive:
        return _na("extension not distributive")
    L = a.L
    atoms = L.atoms()
    if len(atoms) < 2:
        return _na("fewer than two atoms")
    S = a.S
    gens = {}
    for t in atoms:
        gens[t] = min(a.nodes[t] - a.E.base)
    subsets = [c for r in range(2, len(atoms) + 1)
               for c in itertools.combinations(atoms, r)][:32]
    for combo in subsets:
        join = combo[0]
        for t in combo[1:]:
            join = int(L.join[join, t])
        s = S.zero
        for t in combo:
            s = S.a(s, gens[t])
        gen = ex.generated_subring(S, a.E.base, [s])
        if gen != a.nodes[join]:
            return CheckResult("", "", "fail",
                               witness={"atoms": list(combo),
                                        "join_size": len(a.nodes[join]),
                                        "generated_size": len(gen)})
    return CheckResult("", "", "pass")


@check("chained_implies_simple",
       "a chained extension is generated by one element")
def chained_implies_simple(a):
    if not _proper(a):
        return _na("trivial extension")
    return _implies(a.verdict.chained, a.flags.simple, {},
                    reason="extension not chained")


@check("arithmetic_implies_distributive",
       "locally chained extensions are distributive")
def arithmetic_implies_distributive(a):
    if not _proper(a):
        return _na("trivial extension")
    return _implies(a.flags.arithmetic, a.verdict.distributive,
                    {"distributive": a.verdict.distributive},
                    reason="extension not arithmetic")


@check("locally_minimal_implies_distributive",
       "locally minimal extensions are distributive")
def locally_minimal_implies_distributive(a):
    if not _proper(a):
        return _na("trivial extension")
    return _implies(a.flags.locally_minimal, a.verdict.distributive,
                    {"distributive": a.verdict.distributive},
                    reason="extension not locally minimal")


@check("two_atom_composite_profile",
       "two minimal steps compose to a 4-node square when their crucial "
       "ideals differ; over a shared crucial ideal, inert plus non-inert "
       "breaks catenarity while two non-inert steps give an infra-integral "
       "catenarian composite of length 2 or 3 decided by the ideal product")
def two_atom_composite_profile(a):
    if not _proper(a):
        return _na("trivial extension")
    L = a.L
    atoms = L.atoms()
    if len(atoms) < 2:
        return _na("fewer than two atoms")
    S = a.S
    for t, u in itertools.combinations(atoms, 2):
        T, U = a.nodes[t], a.nodes[u]
        j = int(L.join[t, u])
        M = frozenset(ex.conductor_pair(S, a.E.base, T))
        N = frozenset(ex.conductor_pair(S, a.E.base, U))
        typ_t = a.cover_types[(0, t)]
        typ_u = a.cover_types[(0, u)]
        sub = L.interval(0, j)
        if M != N:
            if len(sub.nodes) != 4:
                return CheckResult("", "", "fail", witness={
                    "atoms": [t, u], "case": "distinct crucial ideals",
                    "interval_size": len(sub.nodes)})
            continue
        inert_t = typ_t is ex.MinimalType.INERT
        inert_u = typ_u is ex.MinimalType.INERT
        if inert_t != inert_u:
            if sub.check_catenarian()[0]:
                return CheckResult("", "", "fail", witness={
                    "atoms": [t, u], "case": "inert vs non-inert",
                    "catenarian": True})
            continue
        if inert_t and inert_u:
            continue  # no claim for two inert steps over one ideal
        cat_ok = sub.check_catenarian()[0]
        infra = ex.is_infra_integral_pair(a.E.sub(a.E.base, a.nodes[j]))
        if not cat_ok or not infra:
            return CheckResult("", "", "fail", witness={
                "atoms": [t, u], "case": "two non-inert",
                "catenarian": cat_ok, "infra_integral": infra})
        over_t = [Q for Q in fr.maximal_ideals(S, fr.as_index_array(T))
                  if frozenset(Q) & a.E.base == M]
        over_u = [Q for Q in fr.maximal_ideals(S, fr.as_index_array(U))
                  if frozenset(Q) & a.E.base == M]
        prod_in = False
        for P in over_t:
            for Q in over_u:
                Pa, Qa = fr.as_index_array(P), fr.as_index_array(Q)
                span = S.additive_closure(np.unique(S.mul[np.ix_(Pa, Qa)]))
                if frozenset(int(x) for x in span.tolist()) <= M:
                    prod_in = True
        want = 2 if prod_in else 3
        if sub.length != want:
            return CheckResult("", "", "fail", witness={
                "atoms": [t, u], "case": "two non-inert",
                "product_inside": prod_in, "length": sub.length,
                "expected": want})
    return CheckResult("", "", "pass")


@check("b2_structure_cases",
       "a length-2 subinterval is Boolean-of-length-2 exactly when it has "
       "two-point support, or is infra-integral crucial with a proper "
       "seminormalization and conductor equal to the crucial ideal, or is "
       "t-closed crucial with a 4-node residue-field interval")
def b2_structure_cases(a):
    if not _proper(a):
        return _na("trivial extension")
    L = a.L
    pairs = []
    for v in range(len(L.nodes)):
        lev = L.levels_from(v)
        pairs.extend((v, int(w)) for w in np.flatnonzero(lev == 2))
    if not pairs:
        return _na("no length-2 subinterval")
    if len(pairs) > _B2_INTERVAL_CAP:
        pairs = pairs[:_B2_INTERVAL_CAP]
    S = a.S
    for v, w in pairs:
        V, W = a.nodes[v], a.nodes[w]
        sub = L.interval(v, w)
        lhs = sub.check_boolean()[0]
        pa = a.sub(V, W)
        prof = pa.profile
        cond = prof.conductor
        rhs = False
        if len(prof.msupp) == 2:
            rhs = True
        elif len(prof.msupp) == 1:
            M = prof.crucial
            if pa.flags.infra_integral:
                plus = pa.decomp.plus
                if plus not in (V, W) and cond == M:
                    rhs = True
            if not rhs and pa.flags.t_closed and cond == M:
                # residue interval must have exactly 4 subfields
                Wq, projW = fr.quotient_of_subring(S, fr.as_index_array(W),
                                                   fr.as_index_array(M))
                if fr.is_field(Wq):
                    img = frozenset(int(projW[x]) for x in V)
                    res = Analysis(a.name + "@res", ex.Extension(Wq, img))
                    if len(res.nodes) == 4:
                        rhs = True
        if lhs != rhs:
            return CheckResult("", "", "fail", witness={
                "interval": [v, w], "b2": lhs, "cases": rhs})
    return CheckResult("", "", "pass")


# ----------------------------------------------------------------------
# isotype families over a local base

@check("local_atoms_distinct_types",
       "over a local base, a distributive infra-integral extension has no "
       "two distinct minimal subextensions of the same type")
def local_atoms_distinct_types(a):
    if not _proper(a):
        return _na("trivial extension")
    if not (a.flags.infra_integral and a.verdict.distributive
            and len(a.E.max_ideals_base()) == 1):
        return _na("needs a distributive infra-integral extension over a local base")
    types = [a.cover_types[(0, t)].value for t in a.L.atoms()]
    ok = len(types) == len(set(types))
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"atom_types": types})


@check("subintegral_distributive_iff_arithmetic",
       "a subintegral extension is distributive iff it is locally chained")
def subintegral_distributive_iff_arithmetic(a):
    if not _proper(a) or not a.flags.subintegral:
        return _na("extension not subintegral")
    return _iff(a.verdict.distributive, a.flags.arithmetic,
                {"arithmetic": a.flags.arithmetic})


@check("seminormal_infra_iff_locally_minimal",
       "a seminormal infra-integral extension is distributive iff it is "
       "locally minimal")
def seminormal_infra_iff_locally_minimal(a):
    if not _proper(a) or not (a.flags.seminormal and a.flags.infra_integral):
        return _na("extension not seminormal infra-integral")
    return _iff(a.verdict.distributive, a.flags.locally_minimal,
                {"locally_minimal": a.flags.locally_minimal})


@check("t_closed_residual_distributivity",
       "a t-closed extension is distributive iff all its residue-field "
       "extensions are distributive")
def t_closed_residual_distributivity(a):
    if not _proper(a) or not a.flags.t_closed:
        return _na("extension not t-closed")
    res = [r.verdict.distributive for _, r in a.residual_analyses()]
    return _iff(a.verdict.distributive, all(res), {"residual_verdicts": res})


@check("module_lattice_correspondence",
       "when the top splits as base plus a square-zero ideal, intermediate "
       "rings correspond to submodules, and distributivity says every "
       "localized submodule lattice is a chain")
def module_lattice_correspondence(a):
    if not _proper(a):
        return _na("trivial extension")
    S = a.S
    sq_zero = [s for s in sorted(a.E.top) if S.m(s, s) == S.zero]
    N = frozenset(int(x) for x in
                  S.ideal_closure(a.E.top_arr, sq_zero).tolist())
    Na = fr.as_index_array(N)
    prods = S.mul[np.ix_(Na, Na)]
    if (prods != S.zero).any() or \
            (a.E.base & N) != {S.zero} or \
            len(a.E.base) * len(N) != len(a.E.top):
        return _na("top is not base plus a square-zero complement")
    # enumerate submodules: join-closure of cyclic module closures
    base_arr = a.E.base_arr

    def mod_closure(gens):
        cur = fr.as_index_array(list(gens) + [S.zero])
        while True:
            cur = S.additive_closure(cur)
            nxt = np.union1d(cur, np.unique(S.mul[np.ix_(cur, base_arr)]))
            if nxt.size == cur.size:
                return frozenset(int(x) for x in cur.tolist())
            cur = nxt

    subs = {mod_closure([v]) for v in N.__iter__()}
    subs.add(frozenset({S.zero}))
    frontier = list(subs)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(subs):
                z = mod_closure(x | y)
                if z not in subs:
                    subs.add(z)
                    fresh.append(z)
        frontier = fresh
    mapped = {frozenset(S.additive_closure(sorted(a.E.base | V)).tolist())
              for V in subs}
    if mapped != set(a.nodes):
        return CheckResult("", "", "fail",
                           witness={"submodules": len(subs),
                                    "nodes": len(a.nodes)})
    # distributive iff every localized submodule lattice is a chain:
    # equivalently, localized at each base ideal, the interval is a chain
    chains = all(a.loc(M).verdict.chained for M in a.profile.msupp)
    return _iff(a.verdict.distributive, chains, {"localized_chains": chains})


# ----------------------------------------------------------------------
# unbranched / branched structure over a local base

def _locally_unbranched(a):
    return all(len(a.loc(M).E.max_ideals_top()) == 1 for M in a.profile.msupp)


@check("unbranched_characterization",
       "a locally unbranched extension is distributive iff at every support "
       "ideal the localized interval has a chained lower closure part, a "
       "distributive upper part, and is pinched at the local t-closure")
def unbranched_characterization(a):
    if not _proper(a):
        return _na("trivial extension")
    if not _locally_unbranched(a):
        return _na("extension branches at some support ideal")
    for M in a.profile.msupp:
        loc = a.loc(M)
        L = loc.L
        d = loc.decomp
        t_idx = L.index[d.t]
        lower = (d.t == loc.E.base) or L.interval(0, t_idx).is_chain()
        upper = L.interval(t_idx, L.top).check_distributive()[0]
        pinched = (d.t in (loc.E.base, loc.E.top)
                   or L.is_pinched_at([t_idx]))
        rhs = lower and upper and pinched
        if loc.verdict.distributive != rhs:
            return CheckResult("", "", "fail", witness={
                "ideal_size": len(M), "lower_chain": lower,
                "upper_distributive": upper, "pinched": pinched,
                "local_distributive": loc.verdict.distributive})
    return CheckResult("", "", "pass",
                       side="lhs_true" if a.verdict.distributive else "lhs_false")


@check("unbranched_locally_minimal_step_arithmetic",
       "a distributive locally unbranched extension whose t-closure sits "
       "locally minimally under the top is locally chained")
def unbranched_locally_minimal_step_arithmetic(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    hyp = (a.verdict.distributive and _locally_unbranched(a)
           and (d.t == a.E.top
                or a.sub(d.t, a.E.top).flags.locally_minimal))
    return _implies(hyp, a.flags.arithmetic,
                    {"arithmetic": a.flags.arithmetic},
                    reason="needs distributive locally unbranched with locally "
                           "minimal upper step")


@check("branched_infra_pinch_partition",
       "an infra-integral branched extension with chained lower part and a "
       "two-point top spectrum splits as the lower interval plus the "
       "u-closure interval, pinched at their meet")
def branched_infra_pinch_partition(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    L = a.L
    if not (a.flags.infra_integral and a.flags.branched
            and len(a.E.max_ideals_top()) == 2
            and L.interval(0, L.index[d.plus]).is_chain()):
        return _na("needs infra-integral branched with chained lower part and "
                   "two maximal ideals on top")
    lower = set(L.interval_nodes(0, L.index[d.plus]))
    upper = set(L.interval_nodes(L.index[d.u], L.top))
    partition_ok = (lower | upper == set(range(len(L.nodes)))
                    and not (lower & upper))
    mid = L.index[d.u & d.plus]
    pinched = (mid in (0, L.top)) or L.is_pinched_at([mid])
    ok = partition_ok and pinched
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"partition": partition_ok,
                                                "pinched": pinched})


@check("branched_infra_characterization",
       "an infra-integral branched extension with a proper lower closure is "
       "distributive iff the lower part is a chain, the top has exactly two "
       "maximal ideals, and joining with the u-closure is an order "
       "isomorphism onto the upper interval")
def branched_infra_characterization(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    if not (a.flags.infra_integral and a.flags.branched and d.plus != a.E.base):
        return _na("needs infra-integral branched with nontrivial lower closure")
    L = a.L
    cond1 = L.interval(0, L.index[d.plus]).is_chain()
    cond2 = len(a.E.max_ideals_top()) == 2
    mid = L.index[d.u & d.plus]
    u_idx = L.index[d.u]
    dom = L.interval_nodes(mid, L.index[d.plus])
    rng = L.interval_nodes(u_idx, L.top)
    images = [int(L.join[u_idx, t]) for t in dom]
    cond3 = (sorted(set(images)) == sorted(rng)
             and len(set(images)) == len(dom)
             and all(bool(L.leq[x, y]) == bool(L.leq[images[i], images[j]])
                     for i, x in enumerate(dom)
                     for j, y in enumerate(dom)))
    rhs = cond1 and cond2 and cond3
    res = _iff(a.verdict.distributive, rhs,
               {"lower_chain": cond1, "two_max": cond2, "join_iso": cond3})
    if res.status == "fail" or not a.verdict.distributive:
        return res
    # consequence: single u-level support with chained top part, or a chain
    usub = a.sub(d.u, a.E.top)
    single = len(usub.profile.msupp) == 1 and \
        L.interval(u_idx, L.top).is_chain()
    chain_all = a.verdict.chained and d.u == a.E.top
    if not (single or chain_all):
        return CheckResult("", "", "fail",
                           witness={"usupp": len(usub.profile.msupp),
                                    "upper_chain": L.interval(u_idx, L.top).is_chain()})
    return res


@check("branched_infra_loewy_shape",
       "a distributive infra-integral branched non-chained extension has "
       "the two-ladder shape, and its Loewy series climbs the lower chain "
       "then the u-closure translates")
def branched_infra_loewy_shape(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    if not (a.verdict.distributive and a.flags.infra_integral
            and a.flags.branched and not a.verdict.chained):
        return _na("needs distributive infra-integral branched, not chained")
    L = a.L
    lower = L.interval_nodes(0, L.index[d.plus])
    upper = L.interval_nodes(L.index[d.u], L.top)
    partition_ok = (set(lower) | set(upper) == set(range(len(L.nodes)))
                    and not (set(lower) & set(upper)))
    u_idx = L.index[d.u]
    translates = sorted({int(L.join[u_idx, t]) for t in lower})
    if not partition_ok or translates != sorted(upper):
        return CheckResult("", "", "fail",
                           witness={"partition": partition_ok})
    chain = sorted(lower, key=lambda t: len(a.nodes[t]))
    mid = L.index[d.u & d.plus]
    k = chain.index(mid)
    expected = chain[:k + 1] + [int(L.join[u_idx, t]) for t in chain[k + 1:]]
    got = L.loewy_series()
    ok = got == expected
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"loewy": got,
                                                "expected": expected})


@check("seminormal_branched_rule",
       "a seminormal branched extension is distributive iff the part above "
       "the t-closure is distributive and nothing lies strictly between the "
       "base and the t-closure")
def seminormal_branched_rule(a):
    if not _proper(a):
        return _na("trivial extension")
    if not (a.flags.seminormal and a.flags.branched):
        return _na("extension not seminormal branched")
    L = a.L
    d = a.decomp
    t_idx = L.index[d.t]
    upper_dist = L.interval(t_idx, L.top).check_distributive()[0]
    shape = set(L.interval_nodes(t_idx, L.top)) | {0} == set(range(len(L.nodes)))
    return _iff(a.verdict.distributive, upper_dist and shape,
                {"upper_distributive": upper_dist, "no_side_nodes": shape})


@check("splitter_existence",
       "for every support subset there is exactly one intermediate ring "
       "splitting the support there, with the complementary splitter as its "
       "unique lattice complement, and localization separates the interval")
def splitter_existence(a):
    if not _proper(a):
        return _na("trivial extension")
    ms = a.profile.msupp
    L = a.L
    if ex.splitter(a.E, []) != a.E.base or ex.splitter(a.E, ms) != a.E.top:
        return CheckResult("", "", "fail", witness={"case": "endpoints"})
    for r in range(1, len(ms)):
        for X in itertools.combinations(ms, r):
            T = ex.splitter(a.E, list(X))
            rest = [m for m in ms if m not in X]
            To = ex.splitter(a.E, rest)
            comps = L.complements(L.index[T])
            if comps != [L.index[To]]:
                return CheckResult("", "", "fail", witness={
                    "X_sizes": [len(m) for m in X],
                    "complements": comps})
    # the localization map separates intermediate rings and fills the product
    S = a.S
    dec = a.E.base_decomposition()
    idems = [e for e, M in zip(dec.idempotents, dec.maximal_ideals) if M in ms]
    seen = set()
    for T in a.nodes:
        key = tuple(tuple(np.unique(S.mul[e, fr.as_index_array(T)]).tolist())
                    for e in idems)
        if key in seen:
            return CheckResult("", "", "fail",
                               witness={"case": "localization map not injective"})
        seen.add(key)
    expected = 1
    for M in ms:
        expected *= len(a.loc(M).nodes)
    if len(a.nodes) != expected:
        return CheckResult("", "", "fail",
                           witness={"nodes": len(a.nodes), "product": expected})
    return CheckResult("", "", "pass")


@check("split_complement_distributivity",
       "an extension split at an intermediate ring is distributive iff both "
       "complementary legs under the base are distributive")
def split_complement_distributivity(a):
    if not _proper(a):
        return _na("trivial extension")
    ms = a.profile.msupp
    if len(ms) < 2:
        return _na("support too small to split")
    L = a.L
    for r in range(1, len(ms)):
        for X in itertools.combinations(ms, r):
            T = ex.splitter(a.E, list(X))
            To = ex.splitter(a.E, [m for m in ms if m not in X])
            left = L.interval(0, L.index[T]).check_distributive()[0]
            right = L.interval(0, L.index[To]).check_distributive()[0]
            if a.verdict.distributive != (left and right):
                return CheckResult("", "", "fail", witness={
                    "legs": [left, right],
                    "full": a.verdict.distributive})
    return CheckResult("", "", "pass",
                       side="lhs_true" if a.verdict.distributive else "lhs_false")


@check("branched_chained_lower_rule",
       "a branched extension with proper closures and chained lower "
       "interval is distributive iff the upper interval is distributive and "
       "the whole interval is pinched at the t-closure")
def branched_chained_lower_rule(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    if not (a.flags.branched and d.plus not in (a.E.base, a.E.top)
            and d.t not in (a.E.base, a.E.top)
            and a.L.interval(0, a.L.index[d.t]).is_chain()):
        return _na("needs branched with proper closures and chained lower part")
    L = a.L
    t_idx = L.index[d.t]
    upper = L.interval(t_idx, L.top).check_distributive()[0]
    pinched = L.is_pinched_at([t_idx])
    return _iff(a.verdict.distributive, upper and pinched,
                {"upper": upper, "pinched": pinched})


@check("pinch_lifts_from_lower_part",
       "in a distributive branched extension, pinching of the lower part at "
       "the seminormalization lifts to pinching at the t-closure")
def pinch_lifts_from_lower_part(a):
    if not _proper(a):
        return _na("trivial extension")
    if not (a.verdict.distributive and a.flags.branched):
        return _na("needs a distributive branched extension")
    d = a.decomp
    L = a.L
    lowerL = L.interval(0, L.index[d.t])
    if d.plus in (a.E.base, d.t):
        lower_pinched = True
    else:
        lower_pinched = lowerL.is_pinched_at([lowerL.index[d.plus]])
    if not lower_pinched:
        return _na("lower part not pinched at the seminormalization")
    pinched = d.t in (a.E.base, a.E.top) or L.is_pinched_at([L.index[d.t]])
    return CheckResult("", "", "pass" if pinched else "fail",
                       witness=None if pinched else {"pinched": False})


@check("branched_characterization",
       "a branched extension is distributive iff both closure parts are "
       "distributive, the top and the u-closure have exactly two maximal "
       "ideals, and the interval is either pinched at the t-closure or "
       "carries the splitter ladder structure")
def branched_characterization(a):
    if not _proper(a) or not a.flags.branched:
        return _na("extension not branched")
    L = a.L
    d = a.decomp
    t_idx = L.index[d.t]
    two_max = (len(a.E.max_ideals_top()) == 2
               and len(fr.maximal_ideals(a.S, fr.as_index_array(d.u))) == 2)
    lower_dist = L.interval(0, t_idx).check_distributive()[0]
    upper_dist = L.interval(t_idx, L.top).check_distributive()[0]
    pinched = d.t in (a.E.base, a.E.top) or L.is_pinched_at([t_idx])
    case2 = False
    if not pinched:
        usub = a.sub(d.u, a.E.top)
        ut = a.sub(d.u, d.t)
        case2 = (len(ut.profile.msupp) == 1
                 and len(usub.profile.msupp) == 2)
    rhs = two_max and lower_dist and upper_dist and (pinched or case2)
    return _iff(a.verdict.distributive, rhs,
                {"two_max": two_max, "lower": lower_dist, "upper": upper_dist,
                 "pinched": pinched, "split_case": case2})


@check("branched_splitter_ladder",
       "in the non-pinched distributive branched case the splitter ladder "
       "exists: the splitter above the off-support ideal is the "
       "co-subintegral closure of its own square, both ladders are chains "
       "of equal length, crossing back with the t-closure, and the interval "
       "partitions into the two closure parts plus the rungs")
def branched_splitter_ladder(a):
    if not _proper(a) or not a.flags.branched:
        return _na("extension not branched")
    if not a.verdict.distributive:
        return _na("extension not distributive")
    L = a.L
    d = a.decomp
    t_idx = L.index[d.t]
    pinched = d.t in (a.E.base, a.E.top) or L.is_pinched_at([t_idx])
    if pinched:
        return _na("pinched at the t-closure (ladder case not exercised)")
    usub = a.sub(d.u, a.E.top)
    ut = a.sub(d.u, d.t)
    if len(ut.profile.msupp) != 1 or len(usub.profile.msupp) != 2:
        return CheckResult("", "", "fail", witness={
            "usupp_t": len(ut.profile.msupp),
            "usupp_top": len(usub.profile.msupp)})
    M = ut.profile.msupp[0]
    others = [m for m in usub.profile.msupp if m != M]
    if len(others) != 1:
        return CheckResult("", "", "fail",
                           witness={"case": "support ideals do not separate"})
    V = ex.splitter(usub.E, [others[0]])
    W = a.nodes[L.join[L.index[V], t_idx]]
    wsub = a.sub(d.u, W)
    if wsub.decomp.cosub != V:
        return CheckResult("", "", "fail",
                           witness={"case": "splitter is not the co-subintegral "
                                            "closure of the crossed square"})
    vw = L.interval_nodes(L.index[V], L.index[W])
    utn = L.interval_nodes(L.index[d.u], t_idx)
    chain_vw = L.interval(L.index[V], L.index[W]).is_chain()
    chain_ut = L.interval(L.index[d.u], t_idx).is_chain()
    if not (chain_vw and chain_ut and len(vw) == len(utn)):
        return CheckResult("", "", "fail", witness={
            "ladders": [len(vw), len(utn)],
            "chains": [chain_vw, chain_ut]})
    # rungs: V_i cap t = U_i, and the partition of the whole interval
    vw_sorted = sorted(vw, key=lambda i: len(a.nodes[i]))
    ut_sorted = sorted(utn, key=lambda i: len(a.nodes[i]))
    for vi, ui in zip(vw_sorted, ut_sorted):
        if int(L.meet[vi, t_idx]) != ui:
            return CheckResult("", "", "fail",
                               witness={"rung": [vi, ui]})
    parts = set(L.interval_nodes(0, L.index[d.plus])) | \
        set(L.interval_nodes(t_idx, L.top))
    for vi in vw_sorted[:-1]:
        parts |= set(L.interval_nodes(int(L.meet[vi, t_idx]), vi))
    ok = parts == set(range(len(L.nodes)))
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"covered": len(parts),
                                                "nodes": len(L.nodes)})


@check("branched_splitter_consistency",
       "non-pinched distributive branched: the t-closure has two maximal "
       "ideals, and when the support above it has two points, the "
       "co-subintegral closure of the off-support splitter crosses back to "
       "the u-closure")
def branched_splitter_consistency(a):
    if not _proper(a) or not a.flags.branched or not a.verdict.distributive:
        return _na("needs a distributive branched extension")
    L = a.L
    d = a.decomp
    t_idx = L.index[d.t]
    pinched = d.t in (a.E.base, a.E.top) or L.is_pinched_at([t_idx])
    if pinched:
        return _na("pinched at the t-closure")
    maxT = fr.maximal_ideals(a.S, fr.as_index_array(d.t))
    if len(maxT) != 2:
        return CheckResult("", "", "fail", witness={"max_t": len(maxT)})
    tsub = a.sub(d.t, a.E.top)
    if len(tsub.profile.msupp) != 2:
        return CheckResult("", "", "pass")
    ut = a.sub(d.u, d.t)
    M = ut.profile.msupp[0]
    over = [N for N in maxT if frozenset(N) & d.u == M]
    prime_n = [N for N in maxT if N not in over]
    if len(prime_n) != 1:
        return CheckResult("", "", "fail", witness={"case": "no unique off ideal"})
    Wp = ex.splitter(tsub.E, [prime_n[0]])
    wsub = a.sub(a.E.base, Wp)
    V = wsub.decomp.cosub
    if V is None or (V & d.t) != d.u:
        return CheckResult("", "", "fail",
                           witness={"case": "cosub does not cross back to u"})
    return CheckResult("", "", "pass")


@check("pinched_iff_single_u_support",
       "a distributive branched extension with distinct u- and t-closures "
       "is pinched at the t-closure iff the u-closure supports the top at "
       "exactly one ideal")
def pinched_iff_single_u_support(a):
    if not _proper(a) or not (a.flags.branched and a.verdict.distributive):
        return _na("needs a distributive branched extension")
    d = a.decomp
    if d.u == d.t:
        return _na("u-closure equals t-closure")
    L = a.L
    t_idx = L.index[d.t]
    pinched = d.t in (a.E.base, a.E.top) or L.is_pinched_at([t_idx])
    usub = a.sub(d.u, a.E.top)
    return _iff(pinched, len(usub.profile.msupp) == 1,
                {"u_support": len(usub.profile.msupp)})


@check("split_i_extension_cosub",
       "an i-extension with proper t-closure, two-point support and split "
       "closure parts has a co-subintegral closure over which the base is "
       "t-closed; distributivity of the upper part transfers to it")
def split_i_extension_cosub(a):
    if not _proper(a):
        return _na("trivial extension")
    d = a.decomp
    if not (a.flags.i_extension and d.t not in (a.E.base, a.E.top)
            and len(a.profile.msupp) == 2):
        return _na("needs an i-extension with proper t-closure and two-point "
                   "support")
    lowsupp = set(ex.msupp_of_pair(a.E, a.E.base, d.t))
    upsupp = set(ex.msupp_of_pair(a.E, d.t, a.E.top))
    if lowsupp & upsupp:
        return _na("not split at the t-closure")
    cosub = d.cosub
    if cosub is None:
        return CheckResult("", "", "fail", witness={"case": "no co-subintegral "
                                                            "closure"})
    if not ex.is_t_closed(a.S, a.E.base, cosub):
        return CheckResult("", "", "fail",
                           witness={"case": "base not t-closed in cosub"})
    L = a.L
    upper = L.interval(L.index[d.t], L.top).check_distributive()[0]
    if upper:
        lower = L.interval(0, L.index[cosub]).check_distributive()[0]
        if not lower:
            return CheckResult("", "", "fail",
                               witness={"case": "distributivity did not transfer"})
    return CheckResult("", "", "pass")


# ----------------------------------------------------------------------
# fibers

@check("fiber_bound",
       "a distributive extension has at most two maximal ideals of the top "
       "over each maximal ideal of the base")
def fiber_bound(a):
    if not _proper(a):
        return _na("trivial extension")
    sizes = sorted(len(v) for v in a.fibers.values())
    return _implies(a.verdict.distributive, all(s <= 2 for s in sizes),
                    {"fiber_sizes": sizes},
                    reason="extension not distributive")


@check("fiber_bound_blocks_decomposed_towers",
       "when all fibers have at most two points there is no one-ideal tower "
       "of two decomposed covers")
def fiber_bound_blocks_decomposed_towers(a):
    if not _proper(a):
        return _na("trivial extension")
    if any(len(v) > 2 for v in a.fibers.values()):
        return _na("a fiber has more than two points")
    L = a.L
    for (i, j), t1 in a.cover_types.items():
        if t1 is not ex.MinimalType.DECOMPOSED:
            continue
        for (j2, k), t2 in a.cover_types.items():
            if j2 != j or t2 is not ex.MinimalType.DECOMPOSED:
                continue
            if len(ex.msupp_of_pair(a.E, a.nodes[i], a.nodes[k])) == 1:
                return CheckResult("", "", "fail",
                                   witness={"tower": [i, j, k]})
    return CheckResult("", "", "pass")


@check("fiber_bound_locally_minimal_legs",
       "when all fibers have at most two points, the seminormal-infra legs "
       "of the closure diagram are locally minimal")
def fiber_bound_locally_minimal_legs(a):
    if not _proper(a):
        return _na("trivial extension")
    if any(len(v) > 2 for v in a.fibers.values()):
        return _na("a fiber has more than two points")
    d = a.decomp
    usub = a.sub(a.E.base, d.u)
    V = usub.decomp.plus
    leg1 = V == d.u or a.sub(V, d.u).flags.locally_minimal
    leg2 = d.plus == d.t or a.sub(d.plus, d.t).flags.locally_minimal
    ok = leg1 and leg2
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"legs": [leg1, leg2]})


@check("seminormal_fiber_converse",
       "a seminormal infra-integral extension with locally maximal conductor "
       "and two-point fibers is distributive and locally minimal decomposed")
def seminormal_fiber_converse(a):
    if not _proper(a):
        return _na("trivial extension")
    if not (a.flags.seminormal and a.flags.infra_integral):
        return _na("extension not seminormal infra-integral")
    if any(len(v) > 2 for v in a.fibers.values()):
        return _na("a fiber has more than two points")
    # locally maximal conductor: each localized conductor is the local
    # maximal ideal or everything
    for M in a.profile.msupp:
        loc = a.loc(M)
        cond = ex.conductor(loc.E)
        maxi = loc.E.max_ideals_base()
        if cond != loc.E.base and cond not in maxi:
            return _na("conductor not locally maximal")
    if not a.verdict.distributive or not a.flags.locally_minimal:
        return CheckResult("", "", "fail",
                           witness={"distributive": a.verdict.distributive,
                                    "locally_minimal": a.flags.locally_minimal})
    for M in a.profile.msupp:
        loc = a.loc(M)
        if ex.classify_minimal(loc.E) is not ex.MinimalType.DECOMPOSED:
            return CheckResult("", "", "fail",
                               witness={"case": "local step not decomposed"})
    return CheckResult("", "", "pass")


@check("one_generator_idempotent_like_fibers",
       "an extension generated by one element with idempotent-style "
       "relations has fibers of at most two points and top/conductor "
       "isomorphic to a doubled base/conductor")
def one_generator_idempotent_like_fibers(a):
    if not _proper(a):
        return _na("trivial extension")
    S, E = a.S, a.E
    base_list = sorted(E.base)
    gen = None
    for s in sorted(E.top - E.base):
        s2, s3 = S.m(s, s), S.m(S.m(s, s), s)
        if S.sub(s2, s) in E.base and S.sub(s3, s2) in E.base and \
                frozenset(S.subring_closure(base_list + [s]).tolist()) == E.top:
            gen = s
            break
    if gen is None:
        return _na("no single idempotent-style generator")
    sizes = sorted(len(v) for v in a.fibers.values())
    if any(s > 2 for s in sizes):
        return CheckResult("", "", "fail", witness={"fiber_sizes": sizes})
    I = fr.as_index_array(a.profile.conductor)
    SI, _ = fr.quotient_of_subring(S, E.top_arr, I)
    RI, _ = fr.quotient_of_subring(S, E.base_arr, I)
    doubled = fr.product_ring([RI, RI], size_cap=max(S.size_cap, RI.size ** 2))
    ok = fr.rings_isomorphic(SI, doubled)
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"case": "top/conductor not a "
                                                        "doubled base/conductor"})


# ----------------------------------------------------------------------
# counting

@check("support_product_formulas",
       "node count multiplies and length adds over independently enumerated "
       "localizations at the support")
def support_product_formulas(a):
    if not _proper(a):
        return _na("trivial extension")
    ms = a.profile.msupp
    count = 1
    length = 0
    for M in ms:
        loc = a.loc(M)
        count *= len(loc.nodes)
        length += loc.L.length
    ok = count == len(a.nodes) and length == a.L.length
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {
                           "nodes": len(a.nodes), "product": count,
                           "length": a.L.length, "sum": length})


@check("length_formula_local",
       "over a local base, the length of a distributive interval is the "
       "lower closure length plus the upper closure length plus the number "
       "of top maximal ideals minus one")
def length_formula_local(a):
    if not _proper(a):
        return _na("trivial extension")
    if not (a.verdict.distributive and len(a.E.max_ideals_base()) == 1):
        return _na("needs a distributive extension over a local base")
    L = a.L
    d = a.decomp
    lhs = L.length
    rhs = (int(L.levels_from(0)[L.index[d.plus]])
           + int(L.levels_from(L.index[d.t])[L.top])
           + len(a.E.max_ideals_top()) - 1)
    ok = lhs == rhs
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"length": lhs, "formula": rhs})


@check("count_formula_local",
       "over a local base, the node count of a distributive interval "
       "follows the closure-part case formulas (with the splitter ladder "
       "term in the crossed case)")
def count_formula_local(a):
    if not _proper(a):
        return _na("trivial extension")
    if not (a.verdict.distributive and len(a.E.max_ideals_base()) == 1):
        return _na("needs a distributive extension over a local base")
    L = a.L
    d = a.decomp
    max_u = fr.maximal_ideals(a.S, fr.as_index_array(d.u))
    ut = a.sub(d.u, d.t)
    supp_ut = ut.profile.msupp
    if len(max_u) > 2 or len(supp_ut) > 1:
        return CheckResult("", "", "fail",
                           witness={"max_u": len(max_u),
                                    "supp_ut": len(supp_ut)})
    l_lower = int(L.levels_from(0)[L.index[d.plus]])
    n_upper = L.interval_size(L.index[d.t], L.top)
    total = len(L.nodes)
    if len(supp_ut) == 0:
        lam = 0 if d.plus == d.t else 1
        want = l_lower + n_upper + lam
        case = "merged"
    elif len(max_u) == 2:
        usub = a.sub(d.u, a.E.top)
        supp_us = usub.profile.msupp
        M = supp_ut[0]
        others = [m for m in supp_us if m != M]
        l_ut = int(L.levels_from(L.index[d.u])[L.index[d.t]])
        if len(supp_us) == 2:
            V = ex.splitter(usub.E, [others[0]])
            n_uv = L.interval_size(L.index[d.u], L.index[V])
            want = l_lower + n_upper + l_ut * n_uv + 1
            case = "crossed"
        else:
            want = l_lower + n_upper + l_ut + 1
            case = "pinched-crossed"
    else:
        want = l_lower + n_upper
        case = "local-u"
    ok = total == want
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"nodes": total,
                                                "formula": want, "case": case},
                       side=None)


# ----------------------------------------------------------------------
# fields and delta closure

@check("field_interval_is_divisor_lattice",
       "the subring interval of a finite field extension is the divisor "
       "lattice of the degree: distributive always, Boolean iff the degree "
       "is squarefree, nodes matching the power-map fixed subfields")
def field_interval_is_divisor_lattice(a):
    if not _proper(a):
        return _na("trivial extension")
    S = a.S
    if not fr.is_field(S) or len(a.E.top) != S.size:
        return _na("top ring is not a field")
    q = len(a.E.base)
    n = 1
    while q ** n < S.size:
        n += 1
    if q ** n != S.size:
        return CheckResult("", "", "fail",
                           witness={"case": "size not a base power"})
    divs = fr.divisors(n)
    if len(a.nodes) != len(divs):
        return CheckResult("", "", "fail",
                           witness={"nodes": len(a.nodes), "divisors": len(divs)})
    by_size = {}
    for i, node in enumerate(a.nodes):
        by_size.setdefault(len(node), []).append(i)
    for d in divs:
        if len(by_size.get(q ** d, [])) != 1:
            return CheckResult("", "", "fail",
                               witness={"case": f"no unique node of size q^{d}"})
        # independent construction: fixed points of x -> x^(q^d)
        fixed = frozenset(x for x in range(S.size) if S.power(x, q ** d) == x)
        if fixed != a.nodes[by_size[q ** d][0]]:
            return CheckResult("", "", "fail",
                               witness={"case": f"power-map subfield mismatch "
                                                f"at degree {d}"})
    L = a.L
    for d1 in divs:
        for d2 in divs:
            i, j = by_size[q ** d1][0], by_size[q ** d2][0]
            if bool(L.leq[i, j]) != (d2 % d1 == 0):
                return CheckResult("", "", "fail",
                                   witness={"case": "order mismatch",
                                            "degrees": [d1, d2]})
    if not a.verdict.distributive:
        return CheckResult("", "", "fail", witness={"case": "not distributive"})
    if a.verdict.boolean_lattice != fr.is_squarefree(n):
        return CheckResult("", "", "fail",
                           witness={"boolean": a.verdict.boolean_lattice,
                                    "squarefree": fr.is_squarefree(n)})
    return CheckResult("", "", "pass")


@check("delta_iff_upper_part_arithmetic",
       "a distributive extension has an addition-closed interval iff the "
       "part above the t-closure is locally chained")
def delta_iff_upper_part_arithmetic(a):
    if not _proper(a) or not a.verdict.distributive:
        return _na("extension not distributive")
    d = a.decomp
    upper_arith = d.t == a.E.top or a.sub(d.t, a.E.top).flags.arithmetic
    return _iff(a.flags.delta, upper_arith, {"upper_arithmetic": upper_arith})


@check("distributive_infra_is_delta",
       "a distributive infra-integral extension has an addition-closed "
       "interval")
def distributive_infra_is_delta(a):
    if not _proper(a):
        return _na("trivial extension")
    return _implies(a.verdict.distributive and a.flags.infra_integral,
                    a.flags.delta, {"delta": a.flags.delta},
                    reason="needs a distributive infra-integral extension")


@check("u_closed_delta_equivalences",
       "for u-closed extensions: distributive+addition-closed, "
       "arithmetic+addition-closed and distributive+arithmetic coincide")
def u_closed_delta_equivalences(a):
    if not _proper(a) or not a.flags.u_closed:
        return _na("extension not u-closed")
    f = a.flags
    v1 = a.verdict.distributive and f.delta
    v2 = f.arithmetic and f.delta
    v3 = a.verdict.distributive and f.arithmetic
    ok = v1 == v2 == v3
    return CheckResult("", "", "pass" if ok else "fail",
                       witness=None if ok else {"triple": [v1, v2, v3]},
                       side="lhs_true" if v1 else "lhs_false")


@check("seminormal_delta_rule",
       "a seminormal addition-closed extension over a local base is "
       "distributive iff nothing lies strictly between the base and the "
       "t-closure")
def seminormal_delta_rule(a):
    if not _proper(a):
        return _na("trivial extension")
    if not (a.flags.seminormal and a.flags.delta
            and len(a.E.max_ideals_base()) == 1):
        return _na("needs a seminormal addition-closed extension over a "
                   "local base")
    L = a.L
    d = a.decomp
    shape = set(L.interval_nodes(L.index[d.t], L.top)) | {0} == \
        set(range(len(L.nodes)))
    return _iff(a.verdict.distributive, shape, {"no_side_nodes": shape})


@check("chain_ring_quadratic_distributive",
       "one quadratic generator over a local ring with principal maximal "
       "ideal yields a distributive interval")
def chain_ring_quadratic_distributive(a):
    if not _proper(a):
        return _na("trivial extension")
    S, E = a.S, a.E
    maxR = a.E.max_ideals_base()
    if len(maxR) != 1:
        return _na("base not local")
    M = fr.as_index_array(maxR[0])
    principal = any(
        np.array_equal(S.ideal_closure(E.base_arr, [m]), M)
        for m in M.tolist())
    if not principal:
        return _na("maximal ideal of the base not principal")
    base_list = sorted(E.base)
    quad = None
    for s in sorted(E.top - E.base):
        if frozenset(S.subring_closure(base_list + [s]).tolist()) != E.top:
            continue
        lin_span = S.additive_closure(
            base_list + [S.m(s, r) for r in base_list])
        if S.m(s, s) in set(lin_span.tolist()):
            quad = s
            break
    if quad is None:
        return _na("no quadratic generator")
    return CheckResult("", "", "pass" if a.verdict.distributive else "fail",
                       witness=None if a.verdict.distributive else
                       {"distributive": False})
