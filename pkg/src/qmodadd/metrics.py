"""Error-distance metrics and the input-sweep experiment harness.

An experiment builds one adder, runs every valid operand pair through
the noisy simulator, takes the most frequent readout per input, and
aggregates the error distances.  All aggregation is exact rational
arithmetic; floats only appear at serialization time.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import numpy as np

from .analyzer import ResourceReport, analyze, round2
from .builders import AdderVariant, BuiltAdder, build_qma
from .errors import EmptyInput, InvalidSMax
from .oracle import mod_add, mod_add_plus_one
from .sim import NoiseModel, most_frequent, run_noisy


def error_distance(ideal: int, observed: int) -> int:
    return abs(ideal - observed)


def aggregate(eds: list[int], s_max: int) -> tuple[Fraction, Fraction]:
    """Mean error distance and its normalization by s_max, both exact."""
    if not eds:
        raise EmptyInput("no error distances to aggregate")
    if s_max < 1:
        raise InvalidSMax(f"s_max={s_max} must be >= 1")
    med = Fraction(sum(eds), len(eds))
    return med, med / s_max


@dataclass(frozen=True)
class InputResult:
    a: int
    b: int
    ideal: int | None  # None for unscored out-of-domain rows
    observed: int
    ed: int | None


@dataclass(frozen=True)
class ErrorReport:
    variant: AdderVariant
    n: int
    per_input: tuple[InputResult, ...]
    med: Fraction
    nmed: Fraction
    n_inputs: int
    s_max: int
    shots: int
    seed: int
    noise: NoiseModel
    ideal_convention: str
    sum_med: Fraction | None = None  # only with score_sum

    def as_dict(self, include_rows: bool = True) -> dict:
        payload = {
            "variant": self.variant.name,
            "n": self.n,
            "med": str(self.med),
            "nmed": str(self.nmed),
            "nmed_float": float(self.nmed),
            "n_inputs": self.n_inputs,
            "s_max": self.s_max,
            "shots": self.shots,
            "seed": self.seed,
            "ideal_convention": self.ideal_convention,
            "sum_med": None if self.sum_med is None else str(self.sum_med),
        }
        if include_rows:
            payload["per_input"] = [
                [row.a, row.b, row.ideal, row.observed, row.ed]
                for row in self.per_input
            ]
        return payload


def _encode(built: BuiltAdder, a: int, b: int) -> list[int]:
    bits = [0] * built.circuit.width
    for i, wire in enumerate(built.layout.a_wires):
        bits[wire] = (a >> i) & 1
    for i, wire in enumerate(built.layout.b_wires):
        bits[wire] = (b >> i) & 1
    return bits


def _input_seed(seed: int, index: int) -> int:
    # One deterministic substream per input, independent of sweep order.
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def run_experiment(
    variant: AdderVariant,
    n: int,
    noise: NoiseModel,
    shots: int,
    seed: int,
    reset_model: str = "purify",
    ideal_convention: str = "plus-one",
    full_basis: bool = False,
    score_sum: bool = False,
) -> ErrorReport:
    """Sweep all valid inputs of one adder under noise and score them.

    The scored domain is 0 <= a, b <= 2^n; with full_basis=True every
    register pattern is run, but only domain-valid rows are scored.  The
    default convention scores the modulo register against
    (a + b + 1) mod (2^n + 1); "pre-decrement" decrements a (mod 2^n + 1)
    before encoding and scores against (a + b) mod (2^n + 1).
    """
    built = build_qma(variant, n)
    limit = 1 << n
    span = 2 * limit if full_basis else limit + 1

    rows: list[InputResult] = []
    eds: list[int] = []
    sum_eds: list[int] = []
    mod_wires = list(built.layout.mod_wires)
    sum_wires = list(built.layout.sum_wires)
    index = 0
    for a in range(span):
        for b in range(span):
            in_domain = a <= limit and b <= limit
            if not in_domain and not full_basis:
                continue
            if ideal_convention == "pre-decrement" and in_domain:
                encoded_a = (a + limit) % (limit + 1)
                ideal = mod_add(n, a, b)
            else:
                encoded_a = a
                ideal = mod_add_plus_one(n, a, b) if in_domain else None
            histogram = run_noisy(
                built.circuit,
                _encode(built, encoded_a, b),
                noise,
                shots,
                _input_seed(seed, index),
                readout=mod_wires + (sum_wires if score_sum else []),
                reset_model=reset_model,
            )
            winner = most_frequent(histogram)
            observed = winner & ((1 << len(mod_wires)) - 1)
            ed = error_distance(ideal, observed) if ideal is not None else None
            rows.append(InputResult(a=a, b=b, ideal=ideal, observed=observed, ed=ed))
            if ed is not None:
                eds.append(ed)
            if score_sum and in_domain:
                observed_sum = winner >> len(mod_wires)
                sum_eds.append(error_distance(encoded_a + b, observed_sum))
            index += 1

    med, nmed = aggregate(eds, limit)
    sum_med = None
    if score_sum:
        sum_med = Fraction(sum(sum_eds), len(sum_eds))
    return ErrorReport(
        variant=variant,
        n=n,
        per_input=tuple(rows),
        med=med,
        nmed=nmed,
        n_inputs=len(eds),
        s_max=limit,
        shots=shots,
        seed=seed,
        noise=noise,
        ideal_convention=ideal_convention,
        sum_med=sum_med,
    )


@dataclass(frozen=True)
class SweepRow:
    error: ErrorReport
    resources: ResourceReport
    nmed_drop_pct: Decimal | None  # None when the baseline is error-free


def run_sweep(
    variants: list[AdderVariant],
    n: int,
    noise: NoiseModel,
    shots: int,
    seed: int,
    **kwargs,
) -> list[SweepRow]:
    """Joint error/resource table; drops are relative to the first variant."""
    if not variants:
        raise EmptyInput("no variants to sweep")
    reports = [
        run_experiment(v, n, noise, shots, seed, **kwargs) for v in variants
    ]
    base = reports[0].nmed
    rows = []
    for report in reports:
        if base == 0:
            drop = None
        else:
            drop = round2(100 * (base - report.nmed) / base)
        rows.append(
            SweepRow(
                error=report,
                resources=analyze(build_qma(report.variant, n).circuit),
                nmed_drop_pct=drop,
            )
        )
    return rows
