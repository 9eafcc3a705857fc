import pytest

from ringlattice import dsl, verify
from ringlattice import extension as ex


def analysis_of(name):
    from ringlattice import catalog as cat
    inst = cat.BY_NAME[name]
    return verify.Analysis(name, dsl.build_extension(inst.spec))


@pytest.fixture(scope="module")
def a5():
    return analysis_of("E5")


@pytest.fixture(scope="module")
def a4():
    return analysis_of("E4")


def test_unknown_check_id_raises(a4):
    with pytest.raises(KeyError, match="unknown check id"):
        verify.run_check("no_such_check", a4)


def test_subintegral_arithmetic_check_negative_side(a4):
    # both sides false on the diamond: not distributive, not arithmetic
    r = verify.run_check("subintegral_distributive_iff_arithmetic", a4)
    assert r.status == "pass" and r.side == "lhs_false"


def test_length_formula_on_the_flagship(a5):
    r = verify.run_check("length_formula_local", a5)
    assert r.status == "pass"
    # the numbers behind it: 3 = 1 + 1 + 2 - 1
    L, d = a5.L, a5.decomp
    assert L.length == 3
    assert int(L.levels_from(0)[L.index[d.plus]]) == 1
    assert int(L.levels_from(L.index[d.t])[L.top]) == 1
    assert len(a5.E.max_ideals_top()) == 2


def test_count_formula_on_the_flagship(a5):
    r = verify.run_check("count_formula_local", a5)
    assert r.status == "pass"


def test_checks_not_applicable_on_trivial_extension(a5):
    triv = ex.Extension(a5.S, a5.E.top, a5.E.top, name="trivial")
    for name in ["chain_type_profile", "fiber_bound", "branched_characterization",
                 "localization_equivalence", "count_formula_local"]:
        r = verify.run_check(name, triv)
        assert r.status == "n/a", name


def test_fiber_bound_contrapositive():
    a13 = analysis_of("E13")
    r = verify.run_check("fiber_bound", a13)
    assert r.status == "n/a"            # not distributive: implication untested
    assert max(len(v) for v in a13.fibers.values()) == 3


def test_branched_characterization_covers_both_sides():
    a16 = analysis_of("E16")
    r = verify.run_check("branched_characterization", a16)
    assert r.status == "pass" and r.side == "lhs_false"
    a5 = analysis_of("E5")
    r5 = verify.run_check("branched_characterization", a5)
    assert r5.status == "pass" and r5.side == "lhs_true"


def test_splitter_ladder_applicable_exactly_on_crossed_case(a5):
    r = verify.run_check("branched_splitter_ladder", a5)
    assert r.status == "pass"
    a12 = analysis_of("E12")
    r12 = verify.run_check("branched_splitter_ladder", a12)
    assert r12.status == "n/a"          # pinched case


def test_module_correspondence_on_idealization_instances(a4):
    r = verify.run_check("module_lattice_correspondence", a4)
    assert r.status == "pass" and r.side == "lhs_false"
    a1 = analysis_of("E1")
    assert verify.run_check("module_lattice_correspondence", a1).status == "pass"


def test_u_elementary_check():
    a = analysis_of("E6u")
    r = verify.run_check("one_generator_idempotent_like_fibers", a)
    assert r.status == "pass"


def test_galois_check_only_on_fields(a5):
    assert verify.run_check("field_interval_is_divisor_lattice",
                            a5).status == "n/a"
    a8 = analysis_of("E8")
    assert verify.run_check("field_interval_is_divisor_lattice",
                            a8).status == "pass"


def test_failed_check_carries_witness(a5):
    # feed a check an extension violating its conclusion through a doctored
    # analysis: the diamond is subintegral and non-distributive, so the
    # locally-minimal implication check must stay n/a, while an artificial
    # pass-through on E13 (fibers of size 3) trips the fiber bound only if
    # we force the distributive flag; instead verify that genuine failures
    # surface as fail with a witness by breaking an expectation
    from ringlattice import catalog as cat
    inst = cat.BY_NAME["E4"]
    a = verify.Analysis("E4", dsl.build_extension(inst.spec))
    broken = cat.Expectation("node_count", 6, "DERIVED")
    res = verify.expectation_results(
        cat.CatalogInstance("E4", "", inst.spec, (broken,)), a)
    assert res[0].status == "fail"
    assert res[0].witness == {"expected": 6, "measured": 5, "tag": "DERIVED"}
