"""One-parameter rate sweeps and availability-threshold search.

Sweeps move a single failure or repair rate across the whole chain (the
software rates jointly for all tenants) while everything else stays at its
nominal value. The threshold search bisects, in log space, for the rate at
which the chain availability under a fixed redundancy crosses the target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .chain import ChainEvaluator, ChainSpec, Redundancy
from .vnf import VnfSpec

FAILURE_PARAMETERS = ("lambda_s", "lambda_v", "lambda_h")
REPAIR_PARAMETERS = ("mu_s", "mu_v", "mu_h")
PARAMETERS = FAILURE_PARAMETERS + REPAIR_PARAMETERS

# Display units for the reciprocal forms (mean time between faults for
# failure rates, mean repair duration for repair rates).
HUMAN_UNITS = {
    "lambda_s": ("hours", 3600.0),
    "lambda_v": ("hours", 3600.0),
    "lambda_h": ("hours", 3600.0),
    "mu_s": ("minutes", 60.0),
    "mu_v": ("minutes", 60.0),
    "mu_h": ("hours", 3600.0),
}

DEFAULT_BRACKET_SPAN = 100.0
DEFAULT_REL_WIDTH = 1e-4
_AVAIL_TOL = 1e-6


class SensitivityError(ValueError):
    """Unknown parameter, unsorted values, or an unbracketed target."""


@dataclass(frozen=True)
class SweepSpec:
    """A sweep request: parameter, per-second values, fixed redundancy.

    ``target`` is carried for reporting (threshold lines in rendered
    output); it does not affect the sweep itself.
    """

    parameter: str
    values: tuple[float, ...]
    redundancy: Redundancy
    target: float | None = None

    def __post_init__(self) -> None:
        if self.parameter not in PARAMETERS:
            raise SensitivityError(
                f"unknown parameter {self.parameter!r}; expected one of {PARAMETERS}"
            )
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise SensitivityError("sweep needs at least one value")
        if any(v <= 0 for v in vals):
            raise SensitivityError("sweep values must be strictly positive")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise SensitivityError("sweep values must be strictly increasing")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "redundancy", tuple(int(x) for x in self.redundancy))


@dataclass(frozen=True)
class SweepPoint:
    parameter: str
    value: float
    human_value: float
    human_unit: str
    availability: float
    unavailability: float


@dataclass(frozen=True)
class ThresholdResult:
    """Boundary rate at which the availability target is exactly met."""

    parameter: str
    rate: float
    human_value: float
    human_unit: str
    availability: float
    target: float


def human_value(parameter: str, rate: float) -> tuple[float, str]:
    """Reciprocal display form of a rate (hours or minutes)."""
    unit, seconds = HUMAN_UNITS[parameter]
    return 1.0 / (rate * seconds), unit


def nominal_rate(spec: ChainSpec, parameter: str) -> float:
    """Nominal value of a parameter, which must agree across all nodes."""
    values = {_rate_of(node, parameter) for node in _all_nodes(spec)}
    if len(values) != 1:
        raise SensitivityError(
            f"{parameter} differs across nodes ({sorted(values)}); "
            "a joint sweep needs a single nominal value"
        )
    return values.pop()


def apply_rate(spec: ChainSpec, parameter: str, value: float) -> ChainSpec:
    """Chain spec with ``parameter`` set to ``value`` on every node.

    The software rates move jointly for all tenants.
    """
    if parameter not in PARAMETERS:
        raise SensitivityError(f"unknown parameter {parameter!r}")
    if value <= 0:
        raise SensitivityError(f"rate must be positive, got {value!r}")

    def patch(node: VnfSpec) -> VnfSpec:
        if parameter in ("lambda_s", "mu_s"):
            rates = replace(
                node.rates, **{parameter: (float(value),) * node.tenants}
            )
        else:
            rates = replace(node.rates, **{parameter: float(value)})
        return replace(node, rates=rates)

    subsystems = tuple(
        replace(
            sub,
            node_spec=patch(sub.node_spec),
            node_specs=None
            if sub.node_specs is None
            else tuple(patch(n) for n in sub.node_specs),
        )
        for sub in spec.subsystems
    )
    return ChainSpec(subsystems=subsystems, demand=spec.demand)


def sweep(spec: ChainSpec, sweep_spec: SweepSpec) -> list[SweepPoint]:
    """Chain availability at each swept value, other rates at nominal."""
    points = []
    for value in sweep_spec.values:
        a = _availability_at(spec, sweep_spec.parameter, value, sweep_spec.redundancy)
        hv, unit = human_value(sweep_spec.parameter, value)
        points.append(
            SweepPoint(
                parameter=sweep_spec.parameter,
                value=value,
                human_value=hv,
                human_unit=unit,
                availability=a,
                unavailability=1.0 - a,
            )
        )
    return points


def find_threshold(
    spec: ChainSpec,
    parameter: str,
    a0: float,
    redundancy: Redundancy,
    bracket_span: float = DEFAULT_BRACKET_SPAN,
    rel_width: float = DEFAULT_REL_WIDTH,
) -> ThresholdResult:
    """Rate at which availability degrades exactly to ``a0``.

    Failure rates are searched upward from nominal, repair rates downward
    (both directions lose availability). Bisection runs on the log of the
    rate until the bracket's relative width drops below ``rel_width``.
    Raises if the nominal point already misses ``a0`` or the crossing lies
    outside nominal divided/multiplied by ``bracket_span``.
    """
    if parameter not in PARAMETERS:
        raise SensitivityError(f"unknown parameter {parameter!r}")
    nominal = nominal_rate(spec, parameter)

    def meets(v: float) -> bool:
        return _availability_at(spec, parameter, v, redundancy) >= a0

    if not meets(nominal):
        raise SensitivityError(
            f"availability already below target at nominal {parameter}={nominal:.6e}"
        )
    if parameter in FAILURE_PARAMETERS:
        lo, hi = nominal, nominal * bracket_span  # availability falls toward hi
        lo_meets, probe = True, hi
    else:
        lo, hi = nominal / bracket_span, nominal  # availability falls toward lo
        lo_meets, probe = False, lo
    if meets(probe):
        raise SensitivityError(
            f"target not bracketed: still met at degraded {parameter}={probe:.6e}"
        )

    # Bisect past the requested width if needed until the availability at
    # the midpoint sits within _AVAIL_TOL of the target (steep curves need
    # a few extra halvings; the loop bottoms out at float resolution).
    rate = math.sqrt(lo * hi)
    a_mid = _availability_at(spec, parameter, rate, redundancy)
    for _ in range(200):
        if hi / lo - 1.0 <= rel_width and abs(a_mid - a0) <= _AVAIL_TOL:
            break
        if (a_mid >= a0) == lo_meets:
            lo = rate
        else:
            hi = rate
        nxt = math.sqrt(lo * hi)
        if nxt == rate:
            break
        rate = nxt
        a_mid = _availability_at(spec, parameter, rate, redundancy)
    hv, unit = human_value(parameter, rate)
    return ThresholdResult(
        parameter=parameter,
        rate=rate,
        human_value=hv,
        human_unit=unit,
        availability=a_mid,
        target=a0,
    )


def _availability_at(
    spec: ChainSpec, parameter: str, value: float, redundancy: Redundancy
) -> float:
    modified = apply_rate(spec, parameter, value)
    return ChainEvaluator(modified).evaluate(redundancy).availability


def _all_nodes(spec: ChainSpec):
    for sub in spec.subsystems:
        yield sub.node_spec
        if sub.node_specs:
            yield from sub.node_specs


def _rate_of(node: VnfSpec, parameter: str) -> float:
    value = getattr(node.rates, parameter)
    if parameter in ("lambda_s", "mu_s"):
        if len(set(value)) != 1:
            raise SensitivityError(
                f"{parameter} differs across tenants; joint sweep undefined"
            )
        return value[0]
    return value
