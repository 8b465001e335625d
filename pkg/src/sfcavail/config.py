"""Chain configuration files: strict JSON parsing and unit handling.

A configuration names the tenants (count and demand), the node models
(instances, capacity, layered failure/repair rates with unit tags), the
ordered chain of subsystems referencing those nodes, and the availability
target. Unknown keys are rejected with the offending path so typos fail
loudly instead of silently running a different scenario.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .chain import ChainSpec, SubsystemSpec
from .vnf import RateSet, VnfSpec

SCHEMA_VERSION = 1

RATE_UNITS = ("per_second", "per_hour", "mtbf_hours", "mttr_minutes")

_RATE_FIELDS = ("lambda_s", "mu_s", "lambda_v", "mu_v", "lambda_h", "mu_h")
_PER_TENANT_FIELDS = ("lambda_s", "mu_s")


class ConfigError(ValueError):
    """Invalid configuration document; message carries the key path."""


def to_per_second(value: float, unit: str) -> float:
    """Convert a tagged rate figure to a rate in 1/s."""
    if value <= 0:
        raise ConfigError(f"rate figures must be positive, got {value!r}")
    if unit == "per_second":
        return value
    if unit == "per_hour":
        return value / 3600.0
    if unit == "mtbf_hours":
        return 1.0 / (value * 3600.0)
    if unit == "mttr_minutes":
        return 1.0 / (value * 60.0)
    raise ConfigError(f"unknown rate unit {unit!r}; expected one of {RATE_UNITS}")


def from_per_second(rate: float, unit: str) -> float:
    """Inverse of :func:`to_per_second` (exact to roundoff)."""
    if unit == "per_second":
        return rate
    if unit == "per_hour":
        return rate * 3600.0
    if unit == "mtbf_hours":
        return 1.0 / (rate * 3600.0)
    if unit == "mttr_minutes":
        return 1.0 / (rate * 60.0)
    raise ConfigError(f"unknown rate unit {unit!r}; expected one of {RATE_UNITS}")


@dataclass(frozen=True)
class ChainConfig:
    """Parsed configuration: the chain spec, the target, and the source doc.

    ``document`` is the validated raw JSON object; serializing it back and
    re-parsing reproduces the identical internal spec.
    """

    spec: ChainSpec
    a0: float
    document: dict

    @property
    def demand(self) -> tuple[int, ...]:
        return self.spec.demand


def load_config(path: str | Path) -> ChainConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return parse_document(doc)


def serialize_config(config: ChainConfig) -> str:
    """Byte-stable JSON text for a parsed configuration."""
    return json.dumps(config.document, indent=2) + "\n"


def vims_example_path() -> Path:
    """Path of the bundled two-tenant IMS chain scenario."""
    return Path(resources.files("sfcavail").joinpath("data/vims.json"))


def parse_document(doc: dict) -> ChainConfig:
    _require_mapping(doc, "config")
    _check_keys(doc, "config", {"schema_version", "tenants", "nodes", "chain", "targets"})
    for key in ("schema_version", "tenants", "nodes", "chain", "targets"):
        if key not in doc:
            raise ConfigError(f"config: missing required key {key!r}")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ConfigError(
            f"schema_version: expected {SCHEMA_VERSION}, got {doc['schema_version']!r}"
        )

    tenants = doc["tenants"]
    _require_mapping(tenants, "tenants")
    _check_keys(tenants, "tenants", {"count", "demand"})
    count = _require_int(tenants.get("count"), "tenants.count", minimum=1)
    demand_raw = tenants.get("demand")
    if not isinstance(demand_raw, list) or len(demand_raw) != count:
        raise ConfigError(f"tenants.demand: expected a list of {count} session counts")
    demand = tuple(
        _require_int(w, f"tenants.demand[{i}]", minimum=0)
        for i, w in enumerate(demand_raw)
    )

    nodes_doc = doc["nodes"]
    _require_mapping(nodes_doc, "nodes")
    if not nodes_doc:
        raise ConfigError("nodes: at least one node block is required")
    nodes = {
        name: _parse_node(name, block, count) for name, block in nodes_doc.items()
    }

    chain_doc = doc["chain"]
    if not isinstance(chain_doc, list) or not chain_doc:
        raise ConfigError("chain: expected a non-empty list of subsystems")
    subsystems = []
    for i, entry in enumerate(chain_doc):
        path = f"chain[{i}]"
        _require_mapping(entry, path)
        _check_keys(entry, path, {"name", "node", "cost", "max_redundancy"})
        for key in ("name", "node"):
            if key not in entry:
                raise ConfigError(f"{path}: missing required key {key!r}")
        node_name = entry["node"]
        if node_name not in nodes:
            raise ConfigError(f"{path}.node: unknown node {node_name!r}")
        cost = entry.get("cost", 1.0)
        if not isinstance(cost, (int, float)) or isinstance(cost, bool) or cost < 0:
            raise ConfigError(f"{path}.cost: expected a non-negative number")
        subsystems.append(
            SubsystemSpec(
                name=str(entry["name"]),
                node_spec=nodes[node_name],
                node_cost=float(cost),
                max_redundancy=_require_int(
                    entry.get("max_redundancy", 4), f"{path}.max_redundancy", minimum=1
                ),
            )
        )

    targets = doc["targets"]
    _require_mapping(targets, "targets")
    _check_keys(targets, "targets", {"availability"})
    if "availability" not in targets:
        raise ConfigError("targets: missing required key 'availability'")
    a0 = _require_number(targets["availability"], "targets.availability")
    if not 0.0 < a0 < 1.0:
        raise ConfigError("targets.availability: expected a number in (0, 1)")

    spec = ChainSpec(subsystems=tuple(subsystems), demand=demand)
    return ChainConfig(spec=spec, a0=float(a0), document=doc)


def _parse_node(name: str, block: dict, tenants: int) -> VnfSpec:
    path = f"nodes.{name}"
    _require_mapping(block, path)
    _check_keys(
        block,
        path,
        {"instances", "capacity_per_instance", "rates", "instance_scaled_rates"},
    )
    for key in ("instances", "capacity_per_instance", "rates"):
        if key not in block:
            raise ConfigError(f"{path}: missing required key {key!r}")
    instances_raw = block["instances"]
    if not isinstance(instances_raw, list) or len(instances_raw) != tenants:
        raise ConfigError(f"{path}.instances: expected a list of {tenants} counts")
    instances = tuple(
        _require_int(n, f"{path}.instances[{i}]", minimum=1)
        for i, n in enumerate(instances_raw)
    )
    capacity = _require_int(
        block["capacity_per_instance"], f"{path}.capacity_per_instance", minimum=1
    )
    scaled = block.get("instance_scaled_rates", False)
    if not isinstance(scaled, bool):
        raise ConfigError(f"{path}.instance_scaled_rates: expected true/false")

    rates_doc = block["rates"]
    _require_mapping(rates_doc, f"{path}.rates")
    _check_keys(rates_doc, f"{path}.rates", set(_RATE_FIELDS))
    values = {}
    for field in _RATE_FIELDS:
        if field not in rates_doc:
            raise ConfigError(f"{path}.rates: missing required key {field!r}")
        values[field] = _parse_rate(
            f"{path}.rates.{field}",
            rates_doc[field],
            tenants if field in _PER_TENANT_FIELDS else None,
        )
    return VnfSpec(
        instances=instances,
        capacity_per_instance=capacity,
        rates=RateSet(**values),
        instance_scaled=scaled,
    )


def _parse_rate(path: str, entry, tenants: int | None):
    _require_mapping(entry, path)
    value_key = "values" if tenants is not None else "value"
    _check_keys(entry, path, {value_key, "unit"})
    for key in (value_key, "unit"):
        if key not in entry:
            raise ConfigError(f"{path}: missing required key {key!r}")
    unit = entry["unit"]
    if unit not in RATE_UNITS:
        raise ConfigError(
            f"{path}.unit: unknown unit {unit!r}; expected one of {RATE_UNITS}"
        )
    raw = entry[value_key]
    if tenants is None:
        return to_per_second(_require_number(raw, f"{path}.value"), unit)
    if isinstance(raw, (int, float)) and not isinstance(raw, bool):
        raw = [raw] * tenants  # scalar broadcasts to every tenant
    if not isinstance(raw, list) or len(raw) != tenants:
        raise ConfigError(f"{path}.values: expected {tenants} figures or a scalar")
    return tuple(
        to_per_second(_require_number(v, f"{path}.values[{i}]"), unit)
        for i, v in enumerate(raw)
    )


def _require_mapping(obj, path: str) -> None:
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object")


def _check_keys(obj: dict, path: str, allowed: set[str]) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ConfigError(
            f"{path}: unknown key(s) {sorted(unknown)}; allowed: {sorted(allowed)}"
        )


def _require_int(value, path: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{path}: expected an integer")
    if value < minimum:
        raise ConfigError(f"{path}: must be >= {minimum}, got {value}")
    return value


def _require_number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{path}: expected a number")
    return float(value)
