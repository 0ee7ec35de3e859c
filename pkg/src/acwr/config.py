"""Run configuration: one structured document with paper-default parameters.

Every knob defaults to the conventional choices: 1-week acute / 4-week
chronic windows, Monday anchor, decay constants lambda(7) and lambda(28)
with a 50-day burn-in, the published zone thresholds, and 0.5/2.0 clamping
bounds. Configs serialize to JSON for the CLI and the service.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path
from typing import Any

from .audit import Zone, ZoneScheme, DEFAULT_CLAMP_BOUNDS, ioc_zones
from .ewma import (
    BurnIn,
    EwmaParams,
    Fixed,
    FirstLoad,
    InitialPolicy,
    Zero,
    default_acute_params,
    default_chronic_params,
)
from .ratios import MethodConfig, RatioMethod
from .studysim import CohortSpec, ConstantHazard, HazardModel, LinearHazard, WeeklySchedule
from .timeseries import Weekday


@dataclass(frozen=True)
class RunConfig:
    method: MethodConfig = field(default_factory=MethodConfig)
    zones: ZoneScheme = field(default_factory=ioc_zones)
    clamp_bounds: tuple[float, float] = DEFAULT_CLAMP_BOUNDS
    cohort: CohortSpec | None = None
    seed: int = 0


DEFAULT_COHORT = CohortSpec(
    n_athletes=10_000,
    schedules=(WeeklySchedule((1.0,) * 7),),
    hazard=ConstantHazard(0.01),
    horizon_weeks=12,
    seed=20240101,
)


def default_config() -> RunConfig:
    return RunConfig(cohort=DEFAULT_COHORT, seed=DEFAULT_COHORT.seed)


# -- JSON encoding ------------------------------------------------------------


def _policy_to_json(policy: InitialPolicy) -> dict[str, Any]:
    if isinstance(policy, FirstLoad):
        return {"kind": "first_load"}
    if isinstance(policy, Zero):
        return {"kind": "zero"}
    if isinstance(policy, Fixed):
        return {"kind": "fixed", "value": policy.value}
    if isinstance(policy, BurnIn):
        return {"kind": "burn_in", "days": policy.days, "base": _policy_to_json(policy.base)}
    raise TypeError(f"unknown policy {policy!r}")


def _policy_from_json(doc: dict[str, Any]) -> InitialPolicy:
    kind = doc.get("kind")
    if kind == "first_load":
        return FirstLoad()
    if kind == "zero":
        return Zero()
    if kind == "fixed":
        return Fixed(float(doc["value"]))
    if kind == "burn_in":
        base = _policy_from_json(doc["base"]) if "base" in doc else FirstLoad()
        if isinstance(base, BurnIn):
            raise ValueError("burn-in policies do not nest")
        return BurnIn(int(doc["days"]), base)
    raise ValueError(f"unknown initial policy kind {kind!r}")


def _ewma_to_json(p: EwmaParams) -> dict[str, Any]:
    return {
        "lambda": p.lam,
        "n_source": p.n_source,
        "initial_policy": _policy_to_json(p.initial_policy),
    }


def _ewma_from_json(doc: dict[str, Any]) -> EwmaParams:
    policy = (
        _policy_from_json(doc["initial_policy"])
        if "initial_policy" in doc
        else BurnIn()
    )
    if "n_source" in doc and doc["n_source"] is not None:
        n = int(doc["n_source"])
        if "lambda" in doc and doc["lambda"] is not None:
            return EwmaParams(float(doc["lambda"]), n, policy)
        return EwmaParams.from_n(n, policy)
    return EwmaParams(float(doc["lambda"]), None, policy)


def method_to_json(m: MethodConfig) -> dict[str, Any]:
    return {
        "method": m.method.value,
        "acute_weeks": m.acute_weeks,
        "chronic_weeks": m.chronic_weeks,
        "acute_days": m.acute_days,
        "chronic_days": m.chronic_days,
        "acute_ewma": _ewma_to_json(m.acute_ewma),
        "chronic_ewma": _ewma_to_json(m.chronic_ewma),
        "week_anchor": m.week_anchor.name.lower(),
    }


def method_from_json(doc: dict[str, Any]) -> MethodConfig:
    base = MethodConfig()
    return MethodConfig(
        method=RatioMethod(doc.get("method", base.method.value)),
        acute_weeks=int(doc.get("acute_weeks", base.acute_weeks)),
        chronic_weeks=int(doc.get("chronic_weeks", base.chronic_weeks)),
        acute_days=int(doc.get("acute_days", base.acute_days)),
        chronic_days=int(doc.get("chronic_days", base.chronic_days)),
        acute_ewma=_ewma_from_json(doc["acute_ewma"]) if "acute_ewma" in doc else default_acute_params(),
        chronic_ewma=_ewma_from_json(doc["chronic_ewma"]) if "chronic_ewma" in doc else default_chronic_params(),
        week_anchor=Weekday[doc.get("week_anchor", "monday").upper()],
    )


def zones_to_json(scheme: ZoneScheme) -> list[dict[str, Any]]:
    return [
        {
            "label": z.label,
            "lower": z.lower,
            "upper": None if math.isinf(z.upper) else z.upper,
            "lower_inclusive": z.lower_inclusive,
            "upper_inclusive": z.upper_inclusive,
        }
        for z in scheme.zones
    ]


def zones_from_json(doc: list[dict[str, Any]]) -> ZoneScheme:
    zones = tuple(
        Zone(
            label=z["label"],
            lower=float(z["lower"]),
            upper=math.inf if z.get("upper") is None else float(z["upper"]),
            lower_inclusive=bool(z.get("lower_inclusive", True)),
            upper_inclusive=bool(z.get("upper_inclusive", False)),
        )
        for z in doc
    )
    return ZoneScheme(zones)


def _hazard_to_json(h: HazardModel) -> dict[str, Any]:
    if isinstance(h, ConstantHazard):
        return {"kind": "constant", "p": h.p}
    if isinstance(h, LinearHazard):
        return {
            "kind": "linear",
            "base": h.base,
            "per_load": h.per_load,
            "per_ratio": h.per_ratio,
        }
    raise TypeError(f"hazard {h!r} is not serializable")


def _hazard_from_json(doc: dict[str, Any]) -> HazardModel:
    kind = doc.get("kind")
    if kind == "constant":
        return ConstantHazard(float(doc["p"]))
    if kind == "linear":
        return LinearHazard(
            float(doc["base"]),
            float(doc.get("per_load", 0.0)),
            float(doc.get("per_ratio", 0.0)),
        )
    raise ValueError(f"unknown hazard kind {kind!r}")


def cohort_to_json(spec: CohortSpec) -> dict[str, Any]:
    return {
        "n_athletes": spec.n_athletes,
        "schedules": [list(s.daily_loads) for s in spec.schedules],
        "hazard": _hazard_to_json(spec.hazard),
        "horizon_weeks": spec.horizon_weeks,
        "seed": spec.seed,
        "start": spec.start.isoformat(),
        "week_anchor": spec.week_anchor.name.lower(),
    }


def cohort_from_json(doc: dict[str, Any]) -> CohortSpec:
    return CohortSpec(
        n_athletes=int(doc["n_athletes"]),
        schedules=tuple(WeeklySchedule(tuple(float(x) for x in s)) for s in doc["schedules"]),
        hazard=_hazard_from_json(doc["hazard"]),
        horizon_weeks=int(doc["horizon_weeks"]),
        seed=int(doc["seed"]),
        start=date.fromisoformat(doc.get("start", "2024-01-01")),
        week_anchor=Weekday[doc.get("week_anchor", "monday").upper()],
    )


def config_to_json(cfg: RunConfig) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "method": method_to_json(cfg.method),
        "zones": zones_to_json(cfg.zones),
        "clamp_bounds": list(cfg.clamp_bounds),
        "seed": cfg.seed,
    }
    if cfg.cohort is not None:
        doc["cohort"] = cohort_to_json(cfg.cohort)
    return doc


def config_from_json(doc: dict[str, Any]) -> RunConfig:
    return RunConfig(
        method=method_from_json(doc.get("method", {})),
        zones=zones_from_json(doc["zones"]) if "zones" in doc else ioc_zones(),
        clamp_bounds=tuple(doc.get("clamp_bounds", DEFAULT_CLAMP_BOUNDS)),  # type: ignore[arg-type]
        cohort=cohort_from_json(doc["cohort"]) if "cohort" in doc else None,
        seed=int(doc.get("seed", 0)),
    )


def load_config(path: str | Path | None) -> RunConfig:
    """Read a config file, or fall back to the defaults."""
    if path is None:
        return default_config()
    doc = json.loads(Path(path).read_text())
    return config_from_json(doc)


def save_config(cfg: RunConfig, path: str | Path) -> None:
    Path(path).write_text(json.dumps(config_to_json(cfg), indent=2) + "\n")
