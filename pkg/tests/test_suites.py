import pytest

from gapstat.base import ComputationBudgetExceeded
from gapstat.plugins import hookimpl, pm
from gapstat.suites import (
    BUILT_IN_SUITES,
    FAIL,
    INCONCLUSIVE,
    PASS,
    CaseResult,
    SuiteCase,
    SuiteOptions,
    VerificationSuite,
    VerificationSuiteResult,
    run_suites,
    verification_suites,
)


class CoinSuite(VerificationSuite):
    suite_id = "coin"
    description = "One case of each status"

    def cases(self, options):
        def refused():
            raise ComputationBudgetExceeded("too big", suggested_n=10)

        return [
            SuiteCase("b_fail", lambda: CaseResult("ignored", FAIL, -0.5, "no")),
            SuiteCase("a_pass", lambda: CaseResult("a_pass", PASS, 0.5, "yes")),
            SuiteCase("c_refused", refused),
        ]


class CoinPlugin:
    @hookimpl
    def register_verification_suites(self):
        return [CoinSuite()]


# --- Group 1: results ---


def test_suite_result_status():
    cases = (
        CaseResult("a", PASS),
        CaseResult("b", INCONCLUSIVE),
    )
    result = VerificationSuiteResult("demo", cases)
    assert (result.passed, result.failures, result.inconclusive) == (1, 0, 1)
    assert result.status == INCONCLUSIVE
    failed = VerificationSuiteResult("demo", cases + (CaseResult("c", FAIL),))
    assert failed.status == FAIL


def test_runtime_is_not_part_of_equality():
    a = VerificationSuiteResult("demo", (CaseResult("a", PASS),), runtime=1.0)
    b = VerificationSuiteResult("demo", (CaseResult("a", PASS),), runtime=2.0)
    assert a == b


def test_options_validation():
    assert SuiteOptions().trials_or(7) == 7
    assert SuiteOptions(max_n=50).max_n_or(1000) == 50
    with pytest.raises(ValueError, match="trials"):
        SuiteOptions(trials=0)
    with pytest.raises(ValueError, match="max_n"):
        SuiteOptions(max_n=1)


def test_built_in_suite_ids():
    assert sorted(BUILT_IN_SUITES) == [
        "gap_bound",
        "kronecker_low_discrepancy",
        "number_variance",
        "obstruction",
        "ostrowski",
        "pc_bound",
        "ppc_failure",
        "three_gap",
        "vdc_low_discrepancy",
    ]
    for suite_id, suite in BUILT_IN_SUITES.items():
        assert suite.suite_id == suite_id
        assert suite.description


# --- Group 2: running ---


@pytest.mark.asyncio
async def test_small_suites_pass():
    options = SuiteOptions(trials=2, max_n=1024)
    results = await run_suites(
        ["vdc_low_discrepancy", "three_gap", "ostrowski", "gap_bound"], options, threads=2
    )
    assert [result.suite_id for result in results] == [
        "gap_bound",
        "ostrowski",
        "three_gap",
        "vdc_low_discrepancy",
    ]
    for result in results:
        assert result.failures == 0, result.cases
        ids = [case.case_id for case in result.cases]
        assert ids == sorted(ids)
        assert result.runtime >= 0


@pytest.mark.asyncio
async def test_three_gap_cases():
    results = await run_suites(["three_gap"], SuiteOptions(trials=3, max_n=300))
    (result,) = results
    assert result.status == PASS
    assert [case.case_id for case in result.cases] == ["golden_window", "z000", "z001", "z002"]


@pytest.mark.asyncio
async def test_results_do_not_depend_on_threads():
    options = SuiteOptions(trials=2, max_n=500, seed=3)
    one = await run_suites(["ostrowski", "three_gap"], options, threads=1)
    four = await run_suites(["ostrowski", "three_gap"], options, threads=4)
    assert one == four


@pytest.mark.asyncio
async def test_unknown_suite():
    with pytest.raises(ValueError, match="Unknown suites"):
        await run_suites(["no_such_suite"])
    with pytest.raises(ValueError, match="threads"):
        await run_suites(["three_gap"], threads=0)


# --- Group 3: plugin suites ---


@pytest.mark.asyncio
async def test_plugin_suite(clean_plugins):
    plugin = CoinPlugin()
    pm.register(plugin, name="test-coin")
    clean_plugins.append(plugin)

    assert "coin" in verification_suites()
    (result,) = await run_suites(["coin"])
    assert [(case.case_id, case.status) for case in result.cases] == [
        ("a_pass", PASS),
        ("b_fail", FAIL),
        ("c_refused", INCONCLUSIVE),
    ]
    assert "suggested N: 10" in result.cases[2].detail
    assert result.status == FAIL


def test_plugin_suite_cannot_shadow(clean_plugins):
    class Shadow(CoinSuite):
        suite_id = "three_gap"

    class ShadowPlugin:
        @hookimpl
        def register_verification_suites(self):
            return [Shadow()]

    plugin = ShadowPlugin()
    pm.register(plugin, name="test-shadow-suite")
    clean_plugins.append(plugin)
    with pytest.raises(ValueError, match="shadows a built-in suite"):
        verification_suites()
