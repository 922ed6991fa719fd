"""Point estimators and moment evaluation for Big sampling.

Covers the inclusion-probability (HT) estimator over observed motifs, the
initial-sample (HH) estimator with weight schemes, the eligibility-modified
HT estimator for adaptive cluster sampling, Rao-Blackwellization over the
realized motif set, the variance-difference matrix between the two
estimator families, and exact or Monte Carlo moments over a design.

All estimator arithmetic is exact rational; floats appear only in the
Monte Carlo summaries.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .big import Big
from .design import (DEFAULT_ENUMERATION_CAP, Design, SampleBig, SRSWOR,
                     enumerate_design, first_order_inclusion,
                     realize_sample_big, second_order_inclusion)
from .errors import DesignError, WeightError
from .motifs import MotifSet

TOTAL = "total"
MEAN_PER_UNIT = "mean"
_SCALES = (TOTAL, MEAN_PER_UNIT)

EQUAL_SHARE = "equal-share"
INV_ALPHA = "inverse-alpha"
CUSTOM = "custom"

HT = "ht"
HH = "hh"
MODIFIED_HT = "modified-ht"


@dataclass(frozen=True)
class WeightScheme:
    """Unit-to-motif weights ω_ik with rows summing to one over ancestors.

    equal-share puts 1/|β_k| on each ancestor; inverse-alpha weights
    ancestor i proportionally to 1/|α_i|, where the successor counts come
    from the governing Big unless `alpha_sizes` supplies them (useful when
    the Big at hand is a fragment of a larger one); custom supplies the
    table directly.
    """

    kind: str
    table: Mapping[tuple[str, str], Fraction] | None = None
    alpha_sizes: Mapping[str, int] | None = None

    def __post_init__(self):
        if self.kind not in (EQUAL_SHARE, INV_ALPHA, CUSTOM):
            raise ValueError(f"unknown weight scheme {self.kind!r}")
        if self.kind == CUSTOM and self.table is None:
            raise ValueError("custom weights need a table")
        if self.kind != CUSTOM and self.table is not None:
            raise ValueError(f"{self.kind} takes no table")
        if self.kind != INV_ALPHA and self.alpha_sizes is not None:
            raise ValueError(f"{self.kind} takes no alpha sizes")

    @classmethod
    def equal_share(cls) -> "WeightScheme":
        return cls(EQUAL_SHARE)

    @classmethod
    def inverse_alpha(cls, alpha_sizes: Mapping[str, int] | None = None) -> "WeightScheme":
        return cls(INV_ALPHA, alpha_sizes=alpha_sizes)

    @classmethod
    def custom(cls, table: Mapping[tuple[str, str], object]) -> "WeightScheme":
        frozen = {(str(u), str(k)): _fraction(w) for (u, k), w in table.items()}
        return cls(CUSTOM, table=frozen)

    @classmethod
    def parse(cls, text: str) -> "WeightScheme":
        text = text.strip().lower()
        if text == EQUAL_SHARE:
            return cls.equal_share()
        if text == INV_ALPHA:
            return cls.inverse_alpha()
        raise ValueError(f"unknown weight scheme {text!r} "
                         f"(expected {EQUAL_SHARE} or {INV_ALPHA})")

    @property
    def label(self) -> str:
        return self.kind


def _fraction(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def resolve_weights(big: Big, scheme: WeightScheme) -> dict[str, dict[str, Fraction]]:
    """Materialize ω_ik per motif, checking the unit-sum constraint."""
    rows: dict[str, dict[str, Fraction]] = {}
    if scheme.kind == EQUAL_SHARE:
        for key in big.motifs.keys():
            beta = big.ancestors(key)
            share = Fraction(1, len(beta))
            rows[key] = {u: share for u in beta}
        return rows
    if scheme.kind == INV_ALPHA:
        def alpha_size(u: str) -> int:
            if scheme.alpha_sizes is not None:
                try:
                    size = int(scheme.alpha_sizes[u])
                except KeyError:
                    raise WeightError(f"no successor count supplied for unit {u!r}") from None
            else:
                size = len(big.successors(u))
            if size < 1:
                raise WeightError(f"unit {u!r} has successor count {size}; need >= 1")
            return size

        for key in big.motifs.keys():
            beta = big.ancestors(key)
            inverse = {u: Fraction(1, alpha_size(u)) for u in beta}
            norm = sum(inverse.values())
            rows[key] = {u: w / norm for u, w in inverse.items()}
        return rows
    table = scheme.table or {}
    for key in big.motifs.keys():
        rows[key] = {}
    for (u, key), w in table.items():
        if key not in rows:
            raise WeightError(f"weight given for unknown motif {key!r}")
        if u not in big.ancestors(key):
            raise WeightError(f"weight on {u!r}->{key!r}, but {u!r} is not an ancestor")
        rows[key][u] = w
    for key, row in rows.items():
        total = sum(row.values(), Fraction(0))
        if total != 1:
            raise WeightError(
                f"weights for motif {key!r} sum to {total}, must be exactly 1")
    return rows


@dataclass(frozen=True)
class EstimatorSpec:
    """Which estimator to evaluate: kind, weights, scale, Rao-Blackwell."""

    kind: str
    weights: WeightScheme | None = None
    scale: str = TOTAL
    rao_blackwell: bool = False

    def __post_init__(self):
        if self.kind not in (HT, HH, MODIFIED_HT):
            raise ValueError(f"unknown estimator kind {self.kind!r}")
        if self.kind == HH and self.weights is None:
            raise ValueError("hh estimator needs a weight scheme")
        if self.kind != HH and self.weights is not None:
            raise ValueError(f"{self.kind} estimator takes no weights")
        if self.scale not in _SCALES:
            raise ValueError(f"unknown scale {self.scale!r}")

    @classmethod
    def parse(cls, text: str, scale: str = TOTAL) -> "EstimatorSpec":
        """Parse labels like 'ht', 'hh:equal-share', 'rb:modified-ht'."""
        raw = text.strip().lower()
        body = raw
        rb = False
        if body.startswith("rb:"):
            rb = True
            body = body[3:]
        if body == HT:
            return cls(HT, scale=scale, rao_blackwell=rb)
        if body == MODIFIED_HT:
            return cls(MODIFIED_HT, scale=scale, rao_blackwell=rb)
        if body.startswith("hh:"):
            return cls(HH, weights=WeightScheme.parse(body[3:]), scale=scale,
                       rao_blackwell=rb)
        raise ValueError(f"unknown estimator {text!r} (expected ht, modified-ht, "
                         "hh:equal-share or hh:inverse-alpha, with optional rb: prefix)")

    @property
    def label(self) -> str:
        body = self.kind if self.weights is None else f"{self.kind}:{self.weights.label}"
        return f"rb:{body}" if self.rao_blackwell else body


@dataclass(frozen=True)
class EstimatorReport:
    """One evaluated estimate with its per-term breakdown.

    Each contribution row is (identifier, probability used, share of the
    estimate); identifiers are motif keys for the HT family and initial
    units for the HH family.
    """

    estimate: Fraction
    scale: str
    contributions: tuple[tuple[str, Fraction, Fraction], ...]

    def __float__(self) -> float:
        return float(self.estimate)


def _scale_divisor(big: Big, scale: str) -> int:
    if scale == TOTAL:
        return 1
    if scale == MEAN_PER_UNIT:
        return len(big.frame)
    raise ValueError(f"unknown scale {scale!r}")


def ht_estimate(sample: SampleBig, design: Design, big: Big,
                scale: str = TOTAL) -> EstimatorReport:
    """Inclusion-probability estimator: sum of y_k / π_(k) over Ω_s."""
    div = _scale_divisor(big, scale)
    rows = []
    total = Fraction(0)
    for key in sample.motifs:
        pi = first_order_inclusion(design, big, key)
        part = big.motifs.y(key) / pi / div
        rows.append((key, pi, part))
        total += part
    return EstimatorReport(total, scale, tuple(rows))


def hh_estimate(sample: SampleBig, design: Design, big: Big,
                weights: WeightScheme, scale: str = TOTAL) -> EstimatorReport:
    """Initial-sample estimator: sum of z_i / π_i over the seeds,
    with z_i the weighted share of the y-values of the successors of i."""
    div = _scale_divisor(big, scale)
    rows = []
    total = Fraction(0)
    resolved = resolve_weights(big, weights)
    frame_pos = {u: i for i, u in enumerate(big.frame)}
    for unit in sorted(sample.seeds, key=frame_pos.__getitem__):
        z = sum((resolved[key][unit] * big.motifs.y(key)
                 for key in big.successors(unit)), Fraction(0))
        pi = design.unit_inclusion(unit)
        part = z / pi / div
        rows.append((unit, pi, part))
        total += part
    return EstimatorReport(total, scale, tuple(rows))


def modified_ht_acs(sample: SampleBig, design: Design, big: Big,
                    scale: str = TOTAL) -> EstimatorReport:
    """Eligibility-modified HT for adaptive cluster sampling.

    An observed edge grid enters the sum only when selected initially,
    with the probability of that direct selection in the denominator;
    every other motif uses its ordinary inclusion probability.
    """
    if big.acs is None:
        raise DesignError("modified HT needs an adaptive-cluster Big")
    div = _scale_divisor(big, scale)
    edge_grids = big.acs.edge_grids
    rows = []
    total = Fraction(0)
    for key in sample.motifs:
        if key in edge_grids:
            if key not in sample.seeds:
                continue
            pi = 1 - design.exclusion([key])
        else:
            pi = first_order_inclusion(design, big, key)
        part = big.motifs.y(key) / pi / div
        rows.append((key, pi, part))
        total += part
    return EstimatorReport(total, scale, tuple(rows))


def _point_estimate(spec: EstimatorSpec, design: Design, big: Big,
                    sample: SampleBig) -> Fraction:
    if spec.kind == HT:
        return ht_estimate(sample, design, big, spec.scale).estimate
    if spec.kind == HH:
        return hh_estimate(sample, design, big, spec.weights, spec.scale).estimate
    return modified_ht_acs(sample, design, big, spec.scale).estimate


def rao_blackwellize(spec: EstimatorSpec, design: Design, big: Big,
                     observed: SampleBig,
                     cap: int = DEFAULT_ENUMERATION_CAP) -> EstimatorReport:
    """Average the estimator over every initial sample that realizes the
    same observed motif set, weighted by the design probabilities."""
    base = EstimatorSpec(spec.kind, spec.weights, spec.scale, rao_blackwell=False)
    target = frozenset(observed.motifs)
    num = Fraction(0)
    den = Fraction(0)
    rows = []
    for seeds, p in enumerate_design(design, cap=cap):
        sample = realize_sample_big(big, seeds)
        if frozenset(sample.motifs) != target:
            continue
        est = _point_estimate(base, design, big, sample)
        num += p * est
        den += p
        rows.append((" ".join(sorted(seeds)), p, est))
    if den == 0:
        raise DesignError("no initial sample realizes the observed motif set")
    rows = tuple((label, p / den, est) for label, p, est in rows)
    return EstimatorReport(num / den, spec.scale, rows)


def sample_evaluator(design: Design, big: Big, spec: EstimatorSpec,
                     cap: int = DEFAULT_ENUMERATION_CAP) -> Callable[[Iterable[str]], Fraction]:
    """Compile the spec into a fast seeds -> estimate function.

    Per-motif probabilities and per-unit measures are computed once up
    front; Rao-Blackwellized specs build the conditioning partition of the
    design support on first use.
    """
    div = _scale_divisor(big, spec.scale)
    keys = tuple(big.motifs.keys())

    if spec.kind == HH:
        resolved = resolve_weights(big, spec.weights)
        z = {}
        for unit in big.frame:
            z[unit] = sum((resolved[key][unit] * big.motifs.y(key)
                           for key in big.successors(unit)), Fraction(0))
        pi_unit = {unit: design.unit_inclusion(unit) for unit in big.frame}

        def base(seeds: Iterable[str]) -> Fraction:
            return sum((z[u] / pi_unit[u] for u in frozenset(seeds)), Fraction(0)) / div

    elif spec.kind == HT:
        term = {}
        for key in keys:
            pi = first_order_inclusion(design, big, key)
            term[key] = big.motifs.y(key) / pi / div
        beta = {key: big.ancestors(key) for key in keys}

        def base(seeds: Iterable[str]) -> Fraction:
            s0 = frozenset(seeds)
            return sum((term[key] for key in keys if beta[key] & s0), Fraction(0))

    else:
        if big.acs is None:
            raise DesignError("modified HT needs an adaptive-cluster Big")
        edge_grids = big.acs.edge_grids
        term = {}
        for key in keys:
            if key in edge_grids:
                pi = 1 - design.exclusion([key])
            else:
                pi = first_order_inclusion(design, big, key)
            term[key] = big.motifs.y(key) / pi / div
        beta = {key: big.ancestors(key) for key in keys}

        def base(seeds: Iterable[str]) -> Fraction:
            s0 = frozenset(seeds)
            total = Fraction(0)
            for key in keys:
                if not beta[key] & s0:
                    continue
                if key in edge_grids and key not in s0:
                    continue
                total += term[key]
            return total

    if not spec.rao_blackwell:
        return base

    alpha = {unit: big.successors(unit) for unit in big.frame}
    partition: dict[frozenset[str], Fraction] = {}

    def omega(seeds: frozenset[str]) -> frozenset[str]:
        out: set[str] = set()
        for u in seeds:
            out |= alpha[u]
        return frozenset(out)

    def conditioned(seeds: Iterable[str]) -> Fraction:
        if not partition:
            groups: dict[frozenset[str], tuple[Fraction, Fraction]] = {}
            for s0, p in enumerate_design(design, cap=cap):
                key = omega(s0)
                num, den = groups.get(key, (Fraction(0), Fraction(0)))
                groups[key] = (num + p * base(s0), den + p)
            for key, (num, den) in groups.items():
                partition[key] = num / den
        return partition[omega(frozenset(seeds))]

    return conditioned


@dataclass(frozen=True)
class MomentSummary:
    """Exact design moments of an estimator."""

    expectation: Fraction
    variance: Fraction
    mse: Fraction
    target: Fraction
    scale: str
    support: int

    @property
    def bias(self) -> Fraction:
        return self.expectation - self.target


def exact_moments(design: Design, big: Big, spec: EstimatorSpec,
                  cap: int = DEFAULT_ENUMERATION_CAP) -> MomentSummary:
    """Expectation, variance and MSE by full enumeration of the design.

    Variance is the probability-weighted second central moment over the
    design support.
    """
    evaluate = sample_evaluator(design, big, spec, cap=cap)
    target = big.theta() / _scale_divisor(big, spec.scale)
    points = []
    expectation = Fraction(0)
    for seeds, p in enumerate_design(design, cap=cap):
        est = evaluate(seeds)
        points.append((p, est))
        expectation += p * est
    variance = sum((p * (est - expectation) ** 2 for p, est in points), Fraction(0))
    mse = sum((p * (est - target) ** 2 for p, est in points), Fraction(0))
    return MomentSummary(expectation, variance, mse, target, spec.scale, len(points))


@dataclass(frozen=True)
class MonteCarloSummary:
    """Replicated estimates of the design moments, with standard errors."""

    mean: float
    variance: float
    mse: float
    se_mean: float
    se_variance: float
    se_mse: float
    target: float
    scale: str
    replicates: int
    seed: int


def monte_carlo_moments(design: Design, big: Big, spec: EstimatorSpec,
                        replicates: int, seed: int,
                        cap: int = DEFAULT_ENUMERATION_CAP) -> MonteCarloSummary:
    """Estimate the design moments from seeded replicate draws."""
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    rng = random.Random(seed)
    evaluate = sample_evaluator(design, big, spec, cap=cap)
    values = [float(evaluate(design.draw(rng))) for _ in range(replicates)]
    r = replicates
    mean = math.fsum(values) / r
    target = float(big.theta() / _scale_divisor(big, spec.scale))
    m2 = math.fsum((x - mean) ** 2 for x in values) / r
    m4 = math.fsum((x - mean) ** 4 for x in values) / r
    variance = m2 * r / (r - 1) if r > 1 else 0.0
    mse = math.fsum((x - target) ** 2 for x in values) / r
    q4 = math.fsum((x - target) ** 4 for x in values) / r
    se_mean = math.sqrt(m2 / r)
    se_variance = math.sqrt(max(m4 - m2 * m2, 0.0) / r)
    se_mse = math.sqrt(max(q4 - mse * mse, 0.0) / r)
    return MonteCarloSummary(mean, variance, mse, se_mean, se_variance, se_mse,
                             target, spec.scale, replicates, seed)


@dataclass(frozen=True)
class DeltaMatrix:
    """Motif-pair matrix whose y-weighted sum is Var(HH) - Var(HT)."""

    keys: tuple[str, ...]
    entries: Mapping[tuple[str, str], Fraction]

    def entry(self, k: str, l: str) -> Fraction:
        return self.entries[(k, l)]

    def quadratic_form(self, y: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        for (k, l), value in self.entries.items():
            total += y[k] * y[l] * value
        return total


def delta_matrix(big: Big, design: Design, weights: WeightScheme) -> DeltaMatrix:
    """Exact variance-difference matrix for the given weight scheme.

    Entry (k,l) is the double sum of π_ij ω_ik ω_jl / (π_i π_j) over the
    ancestor sets, minus π_(kl) / (π_(k) π_(l)). Pairs that can never be
    selected together are refused.
    """
    keys = tuple(big.motifs.keys())
    resolved = resolve_weights(big, weights)
    pi_unit = {u: design.unit_inclusion(u) for u in big.frame}
    ratio: dict[tuple[str, str], Fraction] = {}

    def pair_ratio(i: str, j: str) -> Fraction:
        got = ratio.get((i, j))
        if got is None:
            got = design.pair_inclusion(i, j) / (pi_unit[i] * pi_unit[j])
            ratio[(i, j)] = got
            ratio[(j, i)] = got
        return got

    entries: dict[tuple[str, str], Fraction] = {}
    for a, k in enumerate(keys):
        for l in keys[a:]:
            joint = second_order_inclusion(design, big, k, l)
            if joint == 0:
                raise DesignError(
                    f"motifs {k!r} and {l!r} have zero joint inclusion probability")
            first = Fraction(0)
            for i, w_ik in resolved[k].items():
                for j, w_jl in resolved[l].items():
                    first += pair_ratio(i, j) * w_ik * w_jl
            value = first - joint / (first_order_inclusion(design, big, k)
                                     * first_order_inclusion(design, big, l))
            entries[(k, l)] = value
            entries[(l, k)] = value
    return DeltaMatrix(keys, entries)


def srswor_equal_share_delta(big: Big, design: Design) -> DeltaMatrix:
    """Closed form of the variance-difference matrix for equal-share
    weights under simple random sampling without replacement.

    Uses only the ancestor-set sizes m_k, m_l and overlap m_kl."""
    if design.kind != SRSWOR:
        raise DesignError("closed form requires a simple random sampling design")
    n = design.n
    N = len(design.frame)
    if N < 2:
        raise DesignError("closed form needs a frame of at least 2 units")
    keys = tuple(big.motifs.keys())
    lead = Fraction(N * N, n * (N - 1)) * (1 - Fraction(n, N))
    tail = Fraction(N * (n - 1), n * (N - 1))
    entries: dict[tuple[str, str], Fraction] = {}
    for a, k in enumerate(keys):
        for l in keys[a:]:
            beta_k = big.ancestors(k)
            beta_l = big.ancestors(l)
            m_k = len(beta_k)
            m_l = len(beta_l)
            m_kl = len(beta_k & beta_l)
            joint = second_order_inclusion(design, big, k, l)
            if joint == 0:
                raise DesignError(
                    f"motifs {k!r} and {l!r} have zero joint inclusion probability")
            value = (lead * Fraction(m_kl, m_k * m_l) + tail
                     - joint / (first_order_inclusion(design, big, k)
                                * first_order_inclusion(design, big, l)))
            entries[(k, l)] = value
            entries[(l, k)] = value
    return DeltaMatrix(keys, entries)


def variance_difference(delta: DeltaMatrix, motifs: MotifSet) -> Fraction:
    """Var(HH) - Var(HT) on the total scale, from the matrix."""
    return delta.quadratic_form({key: motifs.y(key) for key in delta.keys})


def induced_inclusion(design: Design, members: frozenset[str]) -> Fraction:
    """Probability that every member is selected in the initial sample.

    This is the inclusion probability of a motif under the observation
    procedure that records only edges among initially selected nodes."""
    members = frozenset(members)
    if design.kind == SRSWOR:
        N = len(design.frame)
        n = design.n
        m = len(members)
        if m > n:
            return Fraction(0)
        return Fraction(math.comb(N - m, n - m), math.comb(N, n))
    total = Fraction(0)
    for point, p in design.points:
        if members <= point:
            total += p
    return total


def induced_ht_evaluator(motifs: MotifSet, design: Design,
                         scale: str = TOTAL) -> Callable[[Iterable[str]], Fraction]:
    """Seeds -> HT estimate when motifs are observed only if fully selected."""
    div = len(design.frame) if scale == MEAN_PER_UNIT else 1
    terms = []
    for m in motifs:
        if m.members is None:
            raise DesignError(f"motif {m.key!r} has no member set")
        pi = induced_inclusion(design, m.members)
        if pi == 0:
            raise DesignError(
                f"motif {m.key!r} can never be fully selected under this design")
        terms.append((m.members, motifs.y(m.key) / pi / div))

    def evaluate(seeds: Iterable[str]) -> Fraction:
        s0 = frozenset(seeds)
        return sum((t for members, t in terms if members <= s0), Fraction(0))

    return evaluate


def induced_ht_moments(motifs: MotifSet, design: Design,
                       scale: str = TOTAL) -> MomentSummary:
    """Exact moments of the fully-selected-motif HT estimator.

    Works from pairwise joint selection probabilities, so it stays cheap
    even when the design support is too large to enumerate."""
    div = len(design.frame) if scale == MEAN_PER_UNIT else 1
    items = []
    for m in motifs:
        if m.members is None:
            raise DesignError(f"motif {m.key!r} has no member set")
        pi = induced_inclusion(design, m.members)
        if pi == 0:
            raise DesignError(
                f"motif {m.key!r} can never be fully selected under this design")
        items.append((m.members, motifs.y(m.key), pi))
    theta = sum((y for _, y, _ in items), Fraction(0))
    second = Fraction(0)
    for members_k, y_k, pi_k in items:
        for members_l, y_l, pi_l in items:
            joint = induced_inclusion(design, members_k | members_l)
            second += y_k * y_l * joint / (pi_k * pi_l)
    variance = (second - theta * theta) / (div * div)
    target = theta / div
    return MomentSummary(target, variance, variance, target, scale, design.size)
