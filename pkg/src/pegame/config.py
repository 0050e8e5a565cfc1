"""Scenario configuration as flat ``key = value`` text.

One field per line, ``#`` starts a comment, blank lines are ignored::

    x_P = 0.0
    y_P = 0.0
    ...
    a_P_max = 1.0
    policies = optimal-vs-optimal
    replan = OpenLoop
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .core import GameParams, GameState
from .errors import GameError
from .simulation import PolicyKind, Replan, NAMED_POLICIES

STATE_KEYS = ("x_P", "y_P", "v_Px", "v_Py", "x_E", "y_E")
PARAM_KEYS = ("a_P_max", "v_P_max", "v_E_max", "tol_speed", "capture_radius")


class ConfigError(GameError, ValueError):
    """Malformed or invalid scenario configuration."""


@dataclass(frozen=True)
class ScenarioConfig:
    state: GameState
    params: GameParams
    policies: PolicyKind = NAMED_POLICIES["optimal-vs-optimal"]
    dt: float = 1e-3
    horizon: float = 50.0
    replan: Replan = Replan.OPEN_LOOP
    seed: int = 42
    output_path: str = "out"

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ConfigError(f"dt must be positive, got {self.dt!r}")
        if not self.horizon > 0.0:
            raise ConfigError(f"horizon must be positive, got {self.horizon!r}")
        self.params.check_state(self.state)

    def replace(self, **changes) -> "ScenarioConfig":
        return dataclasses.replace(self, **changes)

    def to_text(self) -> str:
        lines = [f"{k} = {getattr(self.state, k)!r}" for k in STATE_KEYS]
        lines += [f"{k} = {getattr(self.params, k)!r}" for k in PARAM_KEYS]
        policy = next(name for name, kind in NAMED_POLICIES.items() if kind == self.policies)
        lines += [f"policies = {policy}", f"dt = {self.dt!r}", f"horizon = {self.horizon!r}",
                  f"replan = {self.replan.value}", f"seed = {self.seed}",
                  f"output_path = {self.output_path}"]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, base: "ScenarioConfig | None" = None) -> "ScenarioConfig":
        """Parse config text.  Keys missing from ``text`` are taken from ``base``."""
        raw = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if not sep or not key:
                raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
            if key in raw:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            raw[key] = value
        return cls.from_mapping(raw, base)

    @classmethod
    def from_mapping(cls, raw: dict, base: "ScenarioConfig | None" = None) -> "ScenarioConfig":
        known = set(STATE_KEYS + PARAM_KEYS) | {"policies", "dt", "horizon", "replan", "seed",
                                                "output_path"}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")

        def real(key, default):
            if key not in raw:
                if default is None:
                    raise ConfigError(f"missing required key {key!r}")
                return default
            try:
                return float(raw[key])
            except ValueError:
                raise ConfigError(f"{key} must be a real number, got {raw[key]!r}") from None

        try:
            state = GameState(*(real(k, getattr(base.state, k) if base else None)
                                for k in STATE_KEYS))
            defaults = GameParams.__dataclass_fields__
            params = GameParams(*(real(k, getattr(base.params, k) if base else
                                       (None if defaults[k].default is dataclasses.MISSING
                                        else defaults[k].default))
                                  for k in PARAM_KEYS))
            policies = (PolicyKind.parse(raw["policies"]) if "policies" in raw
                        else base.policies if base else cls.policies)
            replan = cls.replan
            if "replan" in raw:
                names = {m.value.lower(): m for m in Replan}
                names.update({m.name.lower(): m for m in Replan})
                key = raw["replan"].strip().lower().replace("-", "_")
                if key not in names:
                    raise ConfigError(f"replan must be one of "
                                      f"{[m.value for m in Replan]}, got {raw['replan']!r}")
                replan = names[key]
            elif base:
                replan = base.replan
            seed = base.seed if base else cls.seed
            if "seed" in raw:
                try:
                    seed = int(raw["seed"])
                except ValueError:
                    raise ConfigError(f"seed must be an integer, got {raw['seed']!r}") from None
            return cls(state=state, params=params, policies=policies,
                       dt=real("dt", base.dt if base else cls.dt),
                       horizon=real("horizon", base.horizon if base else cls.horizon),
                       replan=replan, seed=seed,
                       output_path=raw.get("output_path",
                                           base.output_path if base else cls.output_path))
        except ConfigError:
            raise
        except (GameError, ValueError) as err:
            raise ConfigError(str(err)) from err


SCENARIO_1 = ScenarioConfig(GameState(0.0, 0.0, 0.0, 1.0, 1.0, 1.0),
                            GameParams(a_P_max=1.0, v_P_max=10.0, v_E_max=0.5))
SCENARIO_2 = ScenarioConfig(GameState(0.0, 0.0, 0.0, 1.0, 5.0, 5.0),
                            GameParams(a_P_max=1.0, v_P_max=2.0, v_E_max=0.5))
PRESETS = {"scenario1": SCENARIO_1, "scenario2": SCENARIO_2}
