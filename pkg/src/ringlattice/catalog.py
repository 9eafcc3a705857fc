"""The curated instance catalog.

Every instance is stored as DSL text plus a list of named expectations with
provenance tags:

* ``TRIVIAL``  -- immediate from the construction, asserted directly;
* ``DERIVED``  -- frozen from an independent brute-force oracle (exhaustive
  subset scan or Frobenius fixed-field enumeration; see ``verify
  --regen-expectations``);
* ``PAPER``    -- a published worked value.

The measurement registry maps expectation names to functions of an
analysis; ``verify`` compares stored values against fresh measurements on
every run.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Expectation:
    measure: str
    value: object
    tag: str  # TRIVIAL | DERIVED | PAPER


@dataclass(frozen=True)
class CatalogInstance:
    name: str
    description: str
    spec: str
    expectations: tuple


def _e(measure, value, tag):
    return Expectation(measure, value, tag)


CATALOG = [
    CatalogInstance(
        "E1", "nilpotent ramified minimal step",
        """\
ring F2 = gf(2)
ring S = quotient(F2, [x^2])
ext E1 = extension(S, base=[])
""",
        (
            _e("node_count", 2, "TRIVIAL"),
            _e("minimal_type", "ramified", "TRIVIAL"),
            _e("conductor_size", 1, "DERIVED"),
            _e("fiber_sizes", [1], "TRIVIAL"),
            _e("distributive", True, "TRIVIAL"),
            _e("subintegral", True, "TRIVIAL"),
        )),
    CatalogInstance(
        "E2", "idempotent decomposed minimal step",
        """\
ring F2 = gf(2)
ring S = product(F2, F2)
ext E2 = extension(S, base=[])
""",
        (
            _e("node_count", 2, "TRIVIAL"),
            _e("minimal_type", "decomposed", "TRIVIAL"),
            _e("conductor_size", 1, "DERIVED"),
            _e("fiber_sizes", [2], "TRIVIAL"),
            _e("seminormal", True, "TRIVIAL"),
            _e("infra_integral", True, "TRIVIAL"),
            _e("i_extension", False, "TRIVIAL"),
            _e("u_elementary", True, "TRIVIAL"),
        )),
    CatalogInstance(
        "E3", "prime-degree field step (inert)",
        """\
ring S = gf(2, 2)
ext E3 = extension(S, base=[])
""",
        (
            _e("node_count", 2, "TRIVIAL"),
            _e("minimal_type", "inert", "TRIVIAL"),
            _e("t_closed", True, "TRIVIAL"),
            _e("fiber_sizes", [1], "TRIVIAL"),
        )),
    CatalogInstance(
        "E4", "two independent nilpotents: the 5-node diamond",
        """\
ring F2 = gf(2)
ring S = idealization(F2, module([2, 2]))
ext E4 = extension(S, base=[])
""",
        (
            _e("node_count", 5, "DERIVED"),
            _e("length", 2, "DERIVED"),
            _e("distributive", False, "DERIVED"),
            _e("witness_kind", "M3", "DERIVED"),
            _e("modular", True, "DERIVED"),
            _e("subintegral", True, "DERIVED"),
            _e("arithmetic", False, "DERIVED"),
            _e("delta", True, "DERIVED"),
            _e("atom_count", 3, "DERIVED"),
        )),
    CatalogInstance(
        "E5", "nilpotent times quadratic field factor: the 6-node two-ladder",
        """\
ring F2 = gf(2)
ring Rx = quotient(F2, [x^2])
ring K4 = gf(2, 2)
ring S = product(Rx, K4)
ext E5 = extension(S, base=[])
""",
        (
            _e("node_count", 6, "PAPER"),
            _e("length", 3, "PAPER"),
            _e("distributive", True, "PAPER"),
            _e("plus_size", 4, "PAPER"),
            _e("t_size", 8, "PAPER"),
            _e("u_size", 4, "PAPER"),
            _e("cosub_size", 8, "PAPER"),
            _e("subintegral", False, "PAPER"),
            _e("seminormal", False, "PAPER"),
            _e("u_closed", False, "PAPER"),
            _e("edge_profile",
               [[2, 4, "decomposed"], [2, 4, "ramified"],
                [4, 8, "decomposed"], [4, 8, "inert"], [4, 8, "ramified"],
                [8, 16, "inert"], [8, 16, "ramified"]], "PAPER"),
            _e("branched", True, "TRIVIAL"),
        )),
    CatalogInstance(
        "E6", "non-reduced base with doubled factor and truncated variable",
        """\
ring F2 = gf(2)
ring R = quotient(F2, [t^2])
ring RX = quotient(R, [x^2, t*x])
ring S = product(R, RX)
ext E6 = extension(S, base=[(t, t)])
""",
        (
            _e("u_size", 16, "PAPER"),
            _e("fiber_sizes", [2], "PAPER"),
            _e("closure_chain_types", ["ramified", "decomposed", "ramified"],
               "PAPER"),
            _e("branched", True, "TRIVIAL"),
        )),
    CatalogInstance(
        "E6u", "doubled non-reduced ring over its diagonal",
        """\
ring F2 = gf(2)
ring R = quotient(F2, [t^2])
ring S = product(R, R)
ext E6u = extension(S, base=[(t, t)])
""",
        (
            _e("node_count", 3, "DERIVED"),
            _e("chained", True, "DERIVED"),
            _e("u_elementary", True, "TRIVIAL"),
            _e("fiber_sizes", [2], "PAPER"),
            _e("infra_integral", True, "DERIVED"),
            _e("seminormal", False, "DERIVED"),
        )),
    CatalogInstance(
        "E7", "degree-4 field tower: a 3-chain",
        """\
ring S = gf(2, 4)
ext E7 = extension(S, base=[])
""",
        (
            _e("node_count", 3, "DERIVED"),
            _e("chained", True, "DERIVED"),
            _e("distributive", True, "TRIVIAL"),
            _e("simple", True, "DERIVED"),
            _e("boolean", False, "DERIVED"),
        )),
    CatalogInstance(
        "E8", "degree-6 field: the divisor lattice of 6",
        """\
ring S = gf(2, 6)
ext E8 = extension(S, base=[])
""",
        (
            _e("node_count", 4, "DERIVED"),
            _e("length", 2, "DERIVED"),
            _e("boolean", True, "DERIVED"),
            _e("is_b2", True, "DERIVED"),
            _e("splitter_sizes", [], "TRIVIAL"),
        )),
    CatalogInstance(
        "E9", "split pair of independent minimal legs",
        """\
ring F2 = gf(2)
ring K4 = gf(2, 2)
ring Rx = quotient(F2, [x^2])
ring S = product(K4, Rx)
ext E9 = extension(S, base=[(1, 0)])
""",
        (
            _e("node_count", 4, "DERIVED"),
            _e("msupp_size", 2, "DERIVED"),
            _e("boolean", True, "DERIVED"),
            _e("is_b2", True, "DERIVED"),
            _e("i_extension", True, "DERIVED"),
            _e("u_closed", True, "DERIVED"),
            _e("locally_minimal", True, "DERIVED"),
            _e("splitter_sizes", [8, 8], "DERIVED"),
            _e("fiber_sizes", [1, 1], "DERIVED"),
        )),
    CatalogInstance(
        "E10", "quadratic field factor under a nilpotent: pentagon",
        """\
ring K4 = gf(2, 2)
ring S = quotient(K4, [y^2])
ext E10 = extension(S, base=[])
""",
        (
            _e("node_count", 7, "DERIVED"),
            _e("catenarian", False, "PAPER"),
            _e("distributive", False, "PAPER"),
            _e("witness_kind", "N5", "DERIVED"),
            _e("branched", False, "TRIVIAL"),
        )),
    CatalogInstance(
        "E11", "quadratic element over a special principal ideal ring",
        """\
ring Z4 = zmod(4)
ring S = quotient(Z4, [y^2])
ext E11 = extension(S, base=[])
""",
        (
            _e("node_count", 3, "DERIVED"),
            _e("chained", True, "DERIVED"),
            _e("distributive", True, "PAPER"),
            _e("subintegral", True, "DERIVED"),
        )),
    CatalogInstance(
        "E12", "branched but pinched: field factor plus trivial factor",
        """\
ring F2 = gf(2)
ring K4 = gf(2, 2)
ring S = product(K4, F2)
ext E12 = extension(S, base=[])
""",
        (
            _e("node_count", 3, "DERIVED"),
            _e("chained", True, "DERIVED"),
            _e("seminormal", True, "DERIVED"),
            _e("branched", True, "DERIVED"),
            _e("distributive", True, "DERIVED"),
            _e("max_top_count", 2, "TRIVIAL"),
        )),
    CatalogInstance(
        "E13", "triple product: fiber of size three, a diamond again",
        """\
ring F2 = gf(2)
ring S = product(F2, F2, F2)
ext E13 = extension(S, base=[])
""",
        (
            _e("node_count", 5, "DERIVED"),
            _e("distributive", False, "DERIVED"),
            _e("fiber_sizes", [3], "DERIVED"),
            _e("seminormal", True, "DERIVED"),
            _e("branched", True, "DERIVED"),
            _e("witness_kind", "M3", "DERIVED"),
        )),
    CatalogInstance(
        "E14", "two local blocks glued by the chinese remainder base",
        """\
ring Z6 = zmod(6)
ring S = quotient(Z6, [y^2])
ext E14 = extension(S, base=[])
""",
        (
            _e("msupp_size", 2, "TRIVIAL"),
            _e("locally_minimal", True, "DERIVED"),
        )),
    CatalogInstance(
        "E15", "length-2 nilpotent chain",
        """\
ring F2 = gf(2)
ring S = quotient(F2, [x^3])
ext E15 = extension(S, base=[])
""",
        (
            _e("node_count", 3, "DERIVED"),
            _e("chained", True, "DERIVED"),
            _e("subintegral", True, "DERIVED"),
            _e("u_closed", True, "DERIVED"),
        )),
    CatalogInstance(
        "E16", "two independent nilpotent directions over one crucial ideal",
        """\
ring F2 = gf(2)
ring Rx = quotient(F2, [x^2])
ring Ry = quotient(F2, [y^2])
ring S = product(Rx, Ry)
ext E16 = extension(S, base=[])
""",
        (
            _e("node_count", 9, "DERIVED"),
            _e("distributive", False, "DERIVED"),
            _e("infra_integral", True, "DERIVED"),
            _e("branched", True, "DERIVED"),
            _e("delta", False, "DERIVED"),
            _e("max_top_count", 2, "TRIVIAL"),
        )),
    CatalogInstance(
        "E17", "unramified quadratic extension of the 4-element chain ring",
        """\
ring Z4 = zmod(4)
ring S = quotient(Z4, [x^2 + x + 1])
ext E17 = extension(S, base=[])
""",
        (
            _e("node_count", 3, "DERIVED"),
            _e("chained", True, "DERIVED"),
            _e("t_closed", False, "DERIVED"),
            _e("u_closed", True, "DERIVED"),
            _e("distributive", True, "DERIVED"),
        )),
    CatalogInstance(
        "E18", "nilpotent factor next to a trivial factor: smallest split square",
        """\
ring F2 = gf(2)
ring Rx = quotient(F2, [x^2])
ring S = product(Rx, F2)
ext E18 = extension(S, base=[])
""",
        (
            _e("node_count", 4, "DERIVED"),
            _e("is_b2", True, "DERIVED"),
            _e("distributive", True, "DERIVED"),
            _e("branched", True, "DERIVED"),
            _e("infra_integral", True, "DERIVED"),
        )),
    CatalogInstance(
        "E19", "non-reduced factor beside a quadratic field, split base",
        """\
ring F2 = gf(2)
ring Rt = quotient(F2, [t^2])
ring K4 = gf(2, 2)
ring S = product(Rt, K4)
ext E19 = extension(S, base=[(t, 0)])
""",
        (
            _e("node_count", 3, "DERIVED"),
            _e("chained", True, "DERIVED"),
            _e("seminormal", True, "DERIVED"),
            _e("branched", True, "DERIVED"),
            _e("conductor_size", 2, "DERIVED"),
            _e("fiber_sizes", [2], "DERIVED"),
            _e("edge_profile",
               [[4, 8, "decomposed"], [8, 16, "inert"]], "DERIVED"),
        )),
    CatalogInstance(
        "G3_4", "degree-4 field over characteristic 3",
        """\
ring S = gf(3, 4)
ext G3_4 = extension(S, base=[])
""",
        (
            _e("node_count", 3, "DERIVED"),
            _e("chained", True, "DERIVED"),
            _e("boolean", False, "DERIVED"),
        )),
    CatalogInstance(
        "G3_6", "degree-6 field over characteristic 3",
        """\
ring S = gf(3, 6)
ext G3_6 = extension(S, base=[])
""",
        (
            _e("node_count", 4, "DERIVED"),
            _e("boolean", True, "DERIVED"),
            _e("is_b2", True, "DERIVED"),
        )),
]

BY_NAME = {inst.name: inst for inst in CATALOG}
