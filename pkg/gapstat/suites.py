"""Verification suites: theorem checks run over many sequences and N.

Each suite expands into independent cases. A case fails only when a finite,
literal statement is violated; checks of asymptotic trends or Monte Carlo
estimates report ``inconclusive`` instead of failing.
"""

from __future__ import annotations

import asyncio
import math
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

import numpy as np
from loguru import logger

from .base import (
    DEFAULT_SEED,
    DEFAULT_THREADS,
    ComputationBudgetExceeded,
    InsufficientConvergents,
    PrecisionBudgetExceeded,
    SequenceSpec,
)
from .config import NGrid
from .continued_fractions import (
    GOLDEN_MEAN,
    SQRT2,
    SQRT3,
    PreciseReal,
    cf_expand,
    convergent_bounds_hold,
    golden_intermediate_window,
    ostrowski_expand_many,
    ostrowski_valid,
)
from .discrepancy import (
    PC_BOUND_ASYMPTOTIC_N,
    gap_based_bound,
    pc_based_bound,
    random_box_lower_bound,
    star_discrepancy_md,
    star_discrepancy_prefixes,
    vdc_counting_deviation,
)
from .gaps import (
    check_obstructions,
    gap_spectrum,
    kronecker_gap_bounds,
    prediction_matches,
    three_gap_predict,
)
from .generators import generate
from .pair_correlation import alpha_trend, number_variance_curve, pair_correlation
from .plugins import pm

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"

# Dense prefix checks run over every N up to this many points
DENSE_PREFIX_LIMIT = 4096

_THREE_GAP_GROUPING = 1e-13
_THREE_GAP_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CaseResult:
    case_id: str
    status: str
    # Distance from the violated side; negative when the check did not hold
    margin: Optional[float] = None
    detail: str = ""


@dataclass(frozen=True)
class SuiteCase:
    case_id: str
    run: Callable[[], CaseResult]


@dataclass(frozen=True)
class SuiteOptions:
    """Knobs shared by every suite; None means the suite's own default."""

    trials: Optional[int] = None
    max_n: Optional[int] = None
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.trials is not None and self.trials < 1:
            raise ValueError("trials must be greater than zero")
        if self.max_n is not None and self.max_n < 2:
            raise ValueError("max_n must be at least 2")

    def trials_or(self, default: int) -> int:
        return default if self.trials is None else self.trials

    def max_n_or(self, default: int) -> int:
        return default if self.max_n is None else self.max_n


@dataclass(frozen=True)
class VerificationSuiteResult:
    suite_id: str
    cases: tuple[CaseResult, ...]
    runtime: float = field(default=0.0, compare=False)

    def count(self, status: str) -> int:
        return sum(1 for case in self.cases if case.status == status)

    @property
    def passed(self) -> int:
        return self.count(PASS)

    @property
    def failures(self) -> int:
        return self.count(FAIL)

    @property
    def inconclusive(self) -> int:
        return self.count(INCONCLUSIVE)

    @property
    def status(self) -> str:
        if self.failures:
            return FAIL
        if self.inconclusive:
            return INCONCLUSIVE
        return PASS


class VerificationSuite(ABC):
    """Abstract base for verification suites."""

    suite_id: str
    description: str = ""

    @abstractmethod
    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        """Return the independent cases of this suite."""
        ...


def _outcome(case_id: str, margin: float, detail: str, *, literal: bool = True) -> CaseResult:
    if margin >= 0:
        return CaseResult(case_id, PASS, margin, detail)
    return CaseResult(case_id, FAIL if literal else INCONCLUSIVE, margin, detail)


def _random_irrationals(seed: int, count: int, stream: int) -> list[PreciseReal]:
    rng = np.random.default_rng([seed, stream])
    return [PreciseReal.from_float(float(z)) for z in rng.uniform(0.001, 0.999, count)]


def _sampled_ns(low: int, high: int, count: int) -> list[int]:
    if high < low:
        return []
    return [int(N) for N in np.unique(np.geomspace(low, high, count).round())]


def _geometric_ns(high: int, steps: int = 5) -> tuple[int, ...]:
    low = min(1000, max(2, high // 100))
    return NGrid.parse(f"{low}:{high}:{steps}").values


class ThreeGapSuite(VerificationSuite):
    suite_id = "three_gap"
    description = "At most three gap lengths, the largest the sum of the others, as predicted"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(2000)
        values = _random_irrationals(options.seed, options.trials_or(50), 1)
        cases = [
            SuiteCase(f"z{i:03d}", lambda z=z: self._check(z, max_n))
            for i, z in enumerate(values)
        ]
        cases.append(SuiteCase("golden_window", self._golden_window))
        return cases

    @staticmethod
    def _check(z: PreciseReal, max_n: int) -> CaseResult:
        case_id = f"z={z.label()}"
        cf = cf_expand(z)
        ps = generate(SequenceSpec.kronecker(z, warn_near_rational=False), max_n)
        worst = 0.0
        for N in range(2, max_n + 1):
            spectrum = gap_spectrum(ps.head(N), _THREE_GAP_GROUPING)
            if spectrum.K > 3:
                return CaseResult(case_id, FAIL, -1.0, f"N={N} has {spectrum.K} gap lengths")
            if spectrum.K == 3:
                lengths = spectrum.lengths
                worst = max(worst, abs(lengths[2] - lengths[0] - lengths[1]))
            prediction = three_gap_predict(cf, N, validate=False)
            if not prediction_matches(prediction, spectrum, _THREE_GAP_TOLERANCE):
                return CaseResult(
                    case_id,
                    FAIL,
                    -1.0,
                    f"N={N}: predicted {prediction.spectrum_pairs()}, measured {spectrum.gaps}",
                )
        return _outcome(case_id, _THREE_GAP_TOLERANCE - worst, f"{case_id}, N=2..{max_n}")

    @staticmethod
    def _golden_window() -> CaseResult:
        cf = cf_expand(GOLDEN_MEAN)
        margin, n = Fraction(1), 1
        while n + 1 <= cf.m and cf.q(n + 1) <= 10**6:
            value = golden_intermediate_window(cf, n)
            margin = min(margin, value - Fraction(1, 2), 2 - value)
            n += 1
        return _outcome("golden_window", float(margin), f"n=1..{n - 1}")


class OstrowskiSuite(VerificationSuite):
    suite_id = "ostrowski"
    description = "Greedy Ostrowski digits reconstruct N and satisfy the digit rules"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(100_000)
        values = [GOLDEN_MEAN, SQRT2] + _random_irrationals(
            options.seed, options.trials_or(20), 2
        )
        cases = [
            SuiteCase(f"digits_{i:03d}", lambda z=z: self._digits(z, max_n))
            for i, z in enumerate(values)
        ]
        cases += [
            SuiteCase(f"convergents_{z.name}", lambda z=z: self._convergents(z))
            for z in (GOLDEN_MEAN, SQRT2, SQRT3)
        ]
        return cases

    @staticmethod
    def _digits(z: PreciseReal, max_n: int) -> CaseResult:
        cf = cf_expand(z)
        Ns = np.arange(1, max_n + 1, dtype=np.int64)
        valid = ostrowski_valid(ostrowski_expand_many(Ns, cf), Ns, cf)
        bad = np.flatnonzero(~valid)
        detail = f"z={z.label()}, N=1..{max_n}"
        if bad.size:
            detail += f", first invalid N={int(Ns[bad[0]])}"
        return _outcome(f"digits z={z.label()}", -float(bad.size), detail)

    @staticmethod
    def _convergents(z: PreciseReal) -> CaseResult:
        cf = cf_expand(z)
        failing = [n for n in range(cf.m) if not convergent_bounds_hold(cf, n)]
        return _outcome(
            f"convergents_{z.name}", -float(len(failing)), f"n=0..{cf.m - 1} {failing[:5]}"
        )


class NumberVarianceSuite(VerificationSuite):
    suite_id = "number_variance"
    description = "Pair correlations with exponent below 1 approach 1 (trend)"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(100_000)
        return [
            SuiteCase(
                "kronecker_phi",
                lambda: self._halving(SequenceSpec.kronecker(GOLDEN_MEAN), max_n),
            ),
            SuiteCase(
                "vdc_b2", lambda: self._halving(SequenceSpec.van_der_corput(2), max_n)
            ),
            SuiteCase("kronecker_sqrt2_sqrt3", lambda: self._two_dimensional(max_n)),
            SuiteCase("alpha_trend_phi", lambda: self._alpha_trend(max_n)),
        ]

    @staticmethod
    def _halving(spec: SequenceSpec, max_n: int) -> CaseResult:
        curve = number_variance_curve(spec, 0.8, [1.0], _geometric_ns(max_n))
        fit = curve.fits[0]
        detail = (
            f"|F-1| {fit.first_deviation:.3g} -> {fit.last_deviation:.3g}, slope {fit.slope}"
        )
        converging = fit.halved and fit.slope is not None and fit.slope < 0
        margin = fit.first_deviation / 2 - fit.last_deviation
        if converging:
            return CaseResult(spec.canonical(), PASS, margin, detail)
        return CaseResult(spec.canonical(), INCONCLUSIVE, margin, detail)

    @staticmethod
    def _two_dimensional(max_n: int) -> CaseResult:
        spec = SequenceSpec.kronecker(SQRT2, SQRT3)
        Ns = [N for N in (1000, 10_000, 100_000) if N <= max_n] or [max_n // 10, max_n]
        ps = generate(spec, Ns[-1])
        deviations = [abs(pair_correlation(ps.head(N), 1.0, 0.4).value - 1) for N in Ns]
        steps = [a - b for a, b in zip(deviations, deviations[1:])]
        margin = min(steps) if steps else 0.0
        status = PASS if steps and margin > 0 else INCONCLUSIVE
        return CaseResult(spec.canonical(), status, margin, f"|F-1| = {deviations}")

    @staticmethod
    def _alpha_trend(max_n: int) -> CaseResult:
        trend = alpha_trend(
            SequenceSpec.kronecker(GOLDEN_MEAN), [0.6, 0.8, 1.0], 1.0, _geometric_ns(max_n, 3)
        )
        status = PASS if trend.monotone_at_largest_n else INCONCLUSIVE
        return CaseResult("alpha_trend_phi", status, None, f"rows={len(trend.rows)}")


class PPCFailureSuite(VerificationSuite):
    suite_id = "ppc_failure"
    description = "The golden rotation has no close pairs at exponent 1; random points do"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(100_000)
        seeds = options.trials_or(20)
        cases = [SuiteCase("kronecker_phi_alpha1", lambda: self._golden(max_n))]
        for s in (0.5, 1.0, 2.0):
            cases.append(
                SuiteCase(
                    f"random_s{s:g}",
                    lambda s=s: self._random(s, min(max_n, 10_000), seeds, options.seed),
                )
            )
        return cases

    @staticmethod
    def _golden(max_n: int) -> CaseResult:
        Ns = NGrid.parse(f"fib:{max_n}").values
        ps = generate(SequenceSpec.kronecker(GOLDEN_MEAN), Ns[-1])
        largest = max(pair_correlation(ps.head(N), 0.5, 1.0).value for N in Ns)
        return _outcome("kronecker_phi_alpha1", -largest, f"max F over fib N <= {max_n}")

    @staticmethod
    def _random(s: float, N: int, seeds: int, seed: int) -> CaseResult:
        values = np.array(
            [
                pair_correlation(
                    generate(SequenceSpec.random_uniform(seed + k), N), s, 1.0
                ).value
                for k in range(seeds)
            ]
        )
        case_id = f"random_s{s:g}"
        if seeds < 2:
            return CaseResult(case_id, INCONCLUSIVE, None, "need at least 2 seeds")
        error = values.std(ddof=1) / math.sqrt(seeds)
        margin = 3 * error - abs(values.mean() - 1)
        detail = f"mean {values.mean():.4f} +- {error:.4f} over {seeds} seeds"
        return _outcome(case_id, float(margin), detail, literal=False)


class GapBoundSuite(VerificationSuite):
    suite_id = "gap_bound"
    description = "Discrepancy bound for sequences with finitely many gap lengths"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(2**14)
        Ns = [2**k for k in range(6, 15) if 2**k <= max_n] or [max_n]
        sequences = {
            "vdc_b2": SequenceSpec.van_der_corput(2),
            "vdc_b3": SequenceSpec.van_der_corput(3),
            "kronecker_phi": SequenceSpec.kronecker(GOLDEN_MEAN),
        }
        cases = [
            SuiteCase(name, lambda spec=spec, name=name: self._bound(name, spec, Ns))
            for name, spec in sequences.items()
        ]
        cases += [
            SuiteCase(
                f"{name}_log_constant",
                lambda spec=sequences[name], name=name: self._log_constant(name, spec, Ns),
            )
            for name in ("vdc_b2", "vdc_b3")
        ]
        return cases

    @staticmethod
    def _bound(name: str, spec: SequenceSpec, Ns: list[int]) -> CaseResult:
        ps = generate(spec, Ns[-1])
        reports = [gap_based_bound(ps.head(N)) for N in Ns]
        margin = min(report.bound - report.measured_star for report in reports)
        return _outcome(name, margin, f"N={Ns[0]}..{Ns[-1]}, K<={max(r.K for r in reports)}")

    @staticmethod
    def _log_constant(name: str, spec: SequenceSpec, Ns: list[int]) -> CaseResult:
        ps = generate(spec, Ns[-1])
        constants = [gap_based_bound(ps.head(N)).implied_log_constant for N in Ns]
        half = max(1, len(constants) // 2)
        margin = 2 * max(constants[:half]) - max(constants[half:] or constants)
        detail = "eps/log N = " + ", ".join(f"{c:.3g}" for c in constants)
        return _outcome(f"{name}_log_constant", margin, detail, literal=False)


class PCBoundSuite(VerificationSuite):
    suite_id = "pc_bound"
    description = "Discrepancy bound from the pair-correlation deviation statistic"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(10_000)
        Ns = [N for N in (1000, 10_000, 100_000) if N <= max_n] or [max_n]
        sequences = [
            ("kronecker_phi", SequenceSpec.kronecker(GOLDEN_MEAN)),
            ("vdc_b2", SequenceSpec.van_der_corput(2)),
        ] + [
            (f"random_{k:02d}", SequenceSpec.random_uniform(options.seed + k))
            for k in range(options.trials_or(5))
        ]
        return [
            SuiteCase(
                f"{name}_alpha{alpha:g}",
                lambda spec=spec, alpha=alpha, name=name: self._check(
                    f"{name}_alpha{alpha:g}", spec, alpha, Ns
                ),
            )
            for name, spec in sequences
            for alpha in (0.6, 0.8, 1.0)
        ]

    @staticmethod
    def _check(case_id: str, spec: SequenceSpec, alpha: float, Ns: list[int]) -> CaseResult:
        ps = generate(spec, Ns[-1])
        margins, early_violation = [], False
        for N in Ns:
            try:
                report = pc_based_bound(ps.head(N), alpha)
            except ComputationBudgetExceeded:
                continue
            margin = report.bound - report.measured
            if report.below_n0_candidate:
                early_violation = True
            elif N >= PC_BOUND_ASYMPTOTIC_N or report.satisfied:
                margins.append(margin)
        if not margins:
            return CaseResult(case_id, INCONCLUSIVE, None, "no N large enough")
        result = _outcome(case_id, min(margins), f"N in {Ns}")
        if result.status == PASS and early_violation:
            return CaseResult(case_id, INCONCLUSIVE, result.margin, "violated below N_0 candidate")
        return result


class VdcLowDiscrepancySuite(VerificationSuite):
    suite_id = "vdc_low_discrepancy"
    description = "N D*_N <= log2 N + 2 for base 2 and the counting lemma for bases 2 and 3"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(100_000)
        return [
            SuiteCase(
                "b2_magnitude",
                lambda: _magnitude(
                    "b2_magnitude",
                    SequenceSpec.van_der_corput(2),
                    max_n,
                    1,
                    lambda N: np.log2(N) + 2,
                ),
            ),
            SuiteCase("counting_b2", lambda: self._counting(2, max_n)),
            SuiteCase("counting_b3", lambda: self._counting(3, max_n)),
        ]

    @staticmethod
    def _counting(base: int, max_n: int) -> CaseResult:
        ps = generate(SequenceSpec.van_der_corput(base), max_n)
        Ns = list(range(1, min(max_n, 1024) + 1)) + _sampled_ns(1025, max_n, 50)
        checks = [vdc_counting_deviation(ps.head(N), base) for N in Ns]
        margin = min(check.bound - check.deviation for check in checks)
        return _outcome(f"counting_b{base}", margin, f"{len(Ns)} values of N")


def _magnitude(case_id, spec, max_n, low, threshold) -> CaseResult:
    """Check ``N D*_N <= threshold(N)`` densely up to 4096 and sampled beyond."""
    ps = generate(spec, max_n)
    dense_top = min(max_n, DENSE_PREFIX_LIMIT)
    dense = np.arange(low, dense_top + 1)
    sampled = np.array(_sampled_ns(dense_top + 1, max_n, 200), dtype=np.int64)
    values = np.concatenate(
        [
            star_discrepancy_prefixes(ps.head(dense_top), dense),
            star_discrepancy_prefixes(ps, sampled),
        ]
    )
    Ns = np.concatenate([dense, sampled])
    slack = threshold(Ns) - Ns * values
    worst = int(np.argmin(slack))
    return _outcome(case_id, float(slack[worst]), f"tightest at N={int(Ns[worst])}")


class KroneckerLowDiscrepancySuite(VerificationSuite):
    suite_id = "kronecker_low_discrepancy"
    description = "N D*_N <= 3 ln N for the golden rotation, gap windows, exact 2-d discrepancy"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(100_000)
        return [
            SuiteCase(
                "phi_magnitude",
                lambda: _magnitude(
                    "phi_magnitude",
                    SequenceSpec.kronecker(GOLDEN_MEAN),
                    max_n,
                    10,
                    lambda N: 3 * np.log(N),
                ),
            ),
            SuiteCase("gap_window_phi", lambda: self._gap_window(GOLDEN_MEAN, 1, max_n)),
            SuiteCase("gap_window_sqrt2", lambda: self._gap_window(SQRT2, 2, max_n)),
            SuiteCase("probe_sqrt2_sqrt3", lambda: self._probe(min(max_n, 500), options.seed)),
        ]

    @staticmethod
    def _gap_window(z: PreciseReal, R: int, max_n: int) -> CaseResult:
        ps = generate(SequenceSpec.kronecker(z), max_n)
        Ns = sorted(set(NGrid.parse(f"fib:{max_n}").values) | set(_sampled_ns(2, max_n, 60)))
        margins = []
        for N in Ns:
            window = kronecker_gap_bounds(gap_spectrum(ps.head(N)), R)
            margins.append(
                min(
                    window.smallest - window.lower,
                    window.upper - window.largest,
                )
                * N
            )
        return _outcome(f"gap_window_{z.name}", min(margins), f"R={R}, {len(Ns)} values of N")

    @staticmethod
    def _probe(N: int, seed: int) -> CaseResult:
        ps = generate(SequenceSpec.kronecker(SQRT2, SQRT3), N)
        exact = star_discrepancy_md(ps).star
        probe = random_box_lower_bound(ps, trials=4000, seed=seed).value
        return _outcome(
            "probe_sqrt2_sqrt3", exact - probe + 1e-12, f"exact {exact:.6g}, probe {probe:.6g}"
        )


class ObstructionSuite(VerificationSuite):
    suite_id = "obstruction"
    description = "Gap-family classification of the golden rotation at exponents 1 and 0.8"

    def cases(self, options: SuiteOptions) -> list[SuiteCase]:
        max_n = options.max_n_or(1_000_000)
        Ns = [N for N in NGrid.parse(f"fib:{max_n}").values if N >= 100]
        golden = SequenceSpec.kronecker(GOLDEN_MEAN)
        random = SequenceSpec.random_uniform(options.seed)
        return [
            SuiteCase("phi_alpha1", lambda: self._expect("phi_alpha1", golden, 1.0, Ns, "indicated")),
            SuiteCase(
                "phi_alpha0.8",
                lambda: self._expect("phi_alpha0.8", golden, 0.8, Ns, "not_indicated"),
            ),
            SuiteCase(
                "random_alpha1",
                lambda: self._expect("random_alpha1", random, 1.0, Ns, "inconclusive"),
            ),
        ]

    @staticmethod
    def _expect(case_id, spec, alpha, Ns, expected) -> CaseResult:
        if len(Ns) < 4:
            return CaseResult(case_id, INCONCLUSIVE, None, "fewer than 4 values of N")
        report = check_obstructions(spec, alpha, Ns)
        detail = (
            f"{report.status}: obstruction 1={report.obstruction_1}, "
            f"obstruction 2={report.obstruction_2}, labels={report.classification.labels()}"
        )
        status = PASS if report.status == expected else INCONCLUSIVE
        return CaseResult(case_id, status, None, detail)


# Built-in suites (always available, no plugin needed)
BUILT_IN_SUITES = {
    suite.suite_id: suite
    for suite in (
        ThreeGapSuite(),
        OstrowskiSuite(),
        NumberVarianceSuite(),
        PPCFailureSuite(),
        GapBoundSuite(),
        PCBoundSuite(),
        VdcLowDiscrepancySuite(),
        KroneckerLowDiscrepancySuite(),
        ObstructionSuite(),
    )
}


def verification_suites() -> dict[str, VerificationSuite]:
    """Built-in suites merged with those registered by plugins."""
    suites = dict(BUILT_IN_SUITES)
    for registered in pm.hook.register_verification_suites():
        for suite in registered or ():
            if suite.suite_id in BUILT_IN_SUITES:
                raise ValueError(f"Plugin suite '{suite.suite_id}' shadows a built-in suite")
            suites[suite.suite_id] = suite
    return suites


def _run_case(case: SuiteCase) -> CaseResult:
    try:
        result = case.run()
    except (ComputationBudgetExceeded, InsufficientConvergents, PrecisionBudgetExceeded) as ex:
        return CaseResult(case.case_id, INCONCLUSIVE, None, str(ex))
    return CaseResult(case.case_id, result.status, result.margin, result.detail)


async def run_suites(
    suite_ids: Optional[Iterable[str]] = None,
    options: Optional[SuiteOptions] = None,
    threads: int = DEFAULT_THREADS,
) -> list[VerificationSuiteResult]:
    """Run the named suites (all when None), at most ``threads`` cases at a time.

    Results are sorted by suite id and case id, so the output does not
    depend on scheduling.
    """
    if threads < 1:
        raise ValueError("threads must be greater than zero")
    options = options or SuiteOptions()
    suites = verification_suites()
    suite_ids = sorted(set(suite_ids)) if suite_ids else sorted(suites)
    unknown = [suite_id for suite_id in suite_ids if suite_id not in suites]
    if unknown:
        raise ValueError(f"Unknown suites {unknown}. Available: {sorted(suites)}")

    semaphore = asyncio.Semaphore(threads)

    async def timed(case: SuiteCase) -> tuple[CaseResult, float]:
        async with semaphore:
            start = time.perf_counter()
            result = await asyncio.to_thread(_run_case, case)
            return result, time.perf_counter() - start

    planned = {suite_id: suites[suite_id].cases(options) for suite_id in suite_ids}
    outcomes = await asyncio.gather(
        *(timed(case) for suite_id in suite_ids for case in planned[suite_id])
    )
    results, position = [], 0
    for suite_id in suite_ids:
        chunk = outcomes[position : position + len(planned[suite_id])]
        position += len(chunk)
        cases = tuple(sorted((result for result, _ in chunk), key=lambda r: r.case_id))
        runtime = sum(elapsed for _, elapsed in chunk)
        suite_result = VerificationSuiteResult(suite_id, cases, runtime)
        logger.info(
            "suite {}: {} ({} passed, {} failed, {} inconclusive)",
            suite_id,
            suite_result.status,
            suite_result.passed,
            suite_result.failures,
            suite_result.inconclusive,
        )
        results.append(suite_result)
    return results
