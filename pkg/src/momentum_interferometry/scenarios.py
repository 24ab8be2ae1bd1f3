"""Scenario configs and the tables they produce.

A config is a mapping (read from YAML) with a ``regime`` and its physical
parameters. Optional ``series`` entries are partial overrides of the base
mapping, each producing its own table. Phases may be numbers or strings such
as ``"pi"``, ``"1.2pi"`` or ``"0.8*pi"``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from math import pi
from typing import Any, Callable, Mapping

import numpy as np

from .basis import eigenstate, half_line_moments
from .gpe import (
    GpeParams,
    solve_ground_state,
    tf_approximations,
    tf_half_width,
    tf_momentum_density,
)
from .imprint import PhaseProfile, apply_imprint
from .manybody import (
    MANYBODY_GRID,
    NoPeak,
    fermi_momentum,
    ground_orbitals,
    imprint_orbitals,
    momentum_distribution,
    peak_shift,
    pse_orbitals,
    tg_rspdm,
)
from .momentum import excited_density, momentum_density, reference_density
from .notch import (
    AmbiguousNotch,
    NoNotch,
    approx_reference,
    find_notch,
    q0_approx_excited,
    q0_exact_reference,
)
from .wavefunction import GridSpec

__all__ = [
    "ConfigError",
    "REGIMES",
    "ScenarioConfig",
    "Table",
    "parse_phase",
    "parse_sweep",
    "load_config",
    "expand_series",
    "run_density",
    "run_sweep",
]

REGIMES = (
    "reference",
    "shifted",
    "smoothed",
    "excited",
    "gpe",
    "thomas_fermi",
    "manybody_tg",
    "manybody_fermi",
    "manybody_pse_tg",
    "manybody_pse_fermi",
)
QUANTITIES = ("notch", "peak", "moments")

_COMMON = {"regime", "phi", "q", "grid", "name", "description", "figure", "command",
           "series", "quantity", "label"}
_EXTRA = {
    "reference": set(),
    "shifted": {"y0"},
    "smoothed": {"zeta", "y0"},
    "excited": {"n", "n_max"},
    "gpe": {"g", "y0", "zeta"},
    "thomas_fermi": {"g", "d"},
    "manybody_tg": {"N", "y0", "zeta"},
    "manybody_fermi": {"N", "y0", "zeta"},
    "manybody_pse_tg": {"N", "y0", "zeta"},
    "manybody_pse_fermi": {"N", "y0", "zeta"},
}
_REQUIRED = {"shifted": ("y0",), "smoothed": ("zeta",), "excited": ("n",),
             "gpe": ("g",), "manybody_tg": ("N",), "manybody_fermi": ("N",),
             "manybody_pse_tg": ("N",), "manybody_pse_fermi": ("N",)}


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the field."""


_PI_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*\*?\s*pi\s*$")


def parse_phase(value: Any, field_name: str = "phi") -> float:
    """Number, or a multiple of pi written as ``"pi"``, ``"1.2pi"``, ``"-0.5*pi"``."""
    if isinstance(value, bool):
        raise ConfigError(f"{field_name}: expected a phase, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _PI_RE.match(value)
        if m:
            coef = m.group(1)
            if coef in (None, "+", "-"):
                coef = (coef or "") + "1"
            return float(coef) * pi
        try:
            return float(value)
        except ValueError:
            pass
    raise ConfigError(f"{field_name}: cannot read {value!r} as a phase")


def parse_sweep(text: str) -> dict:
    """``START:STOP:COUNT`` -> sweep mapping."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"--sweep: expected START:STOP:COUNT, got {text!r}")
    try:
        count = int(parts[2])
    except ValueError as exc:
        raise ConfigError(f"--sweep: COUNT must be an integer, got {parts[2]!r}") from exc
    return {"start": parts[0], "stop": parts[1], "count": count}


def _phases(value: Any) -> tuple[tuple[float, ...], bool]:
    """Phase values and whether they came from a sweep spec."""
    if value is None:
        raise ConfigError("phi: missing")
    if isinstance(value, Mapping):
        unknown = set(value) - {"start", "stop", "count"}
        if unknown:
            raise ConfigError(f"phi: unknown sweep keys {sorted(unknown)}")
        try:
            start = parse_phase(value["start"], "phi.start")
            stop = parse_phase(value["stop"], "phi.stop")
            count = value["count"]
        except KeyError as exc:
            raise ConfigError(f"phi: sweep needs {exc.args[0]!r}") from exc
        if not isinstance(count, int) or isinstance(count, bool) or count < 2:
            raise ConfigError("phi.count: sweep count must be an integer >= 2")
        return tuple(float(x) for x in np.linspace(start, stop, count)), True
    if isinstance(value, (list, tuple)):
        if not value:
            raise ConfigError("phi: empty list")
        return tuple(parse_phase(v, f"phi[{i}]") for i, v in enumerate(value)), False
    return (parse_phase(value),), False


def _number(cfg, key, kind=float, positive=False, nonneg=False):
    v = cfg[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{key}: expected a number, got {v!r}")
    if kind is int and not float(v).is_integer():
        raise ConfigError(f"{key}: expected an integer, got {v!r}")
    v = kind(v)
    if positive and not v > 0:
        raise ConfigError(f"{key}: must be positive")
    if nonneg and v < 0:
        raise ConfigError(f"{key}: must be nonnegative")
    return v


@dataclass(frozen=True)
class ScenarioConfig:
    regime: str
    phis: tuple[float, ...]
    is_sweep: bool = False
    y0: float = 0.0
    zeta: float = 0.0
    n: int = 0
    n_max: int = 20
    g: float | None = None
    d: float | None = None
    N: int | None = None
    q: tuple[float, float, int] = (-5.0, 5.0, 1001)
    grid: GridSpec | None = None
    quantity: str = "notch"
    name: str = "scenario"
    label: str = ""

    @property
    def profile(self) -> PhaseProfile:
        return PhaseProfile.from_smoothing(self.zeta, self.y0)

    @property
    def q_grid(self) -> np.ndarray:
        lo, hi, count = self.q
        return np.linspace(lo, hi, count)

    @classmethod
    def from_mapping(cls, cfg: Mapping) -> "ScenarioConfig":
        if not isinstance(cfg, Mapping):
            raise ConfigError("config: expected a mapping at the top level")
        regime = cfg.get("regime")
        if regime not in REGIMES:
            raise ConfigError(f"regime: expected one of {', '.join(REGIMES)}, got {regime!r}")
        unknown = set(cfg) - _COMMON - _EXTRA[regime]
        if unknown:
            raise ConfigError(
                f"{sorted(unknown)[0]}: not a valid field for regime {regime!r}")
        for key in _REQUIRED.get(regime, ()):
            if key not in cfg and not (key == "n" and cfg.get("quantity") == "moments"):
                raise ConfigError(f"{key}: required for regime {regime!r}")
        kw: dict[str, Any] = {"regime": regime}
        quantity = cfg.get("quantity", "notch")
        if quantity not in QUANTITIES:
            raise ConfigError(f"quantity: expected one of {', '.join(QUANTITIES)}")
        if quantity == "peak" and regime != "manybody_pse_fermi":
            raise ConfigError("quantity: 'peak' needs regime 'manybody_pse_fermi'")
        if quantity == "moments" and regime != "excited":
            raise ConfigError("quantity: 'moments' needs regime 'excited'")
        kw["quantity"] = quantity
        if quantity == "moments":
            kw["phis"], kw["is_sweep"] = (), False
        else:
            kw["phis"], kw["is_sweep"] = _phases(cfg.get("phi"))
        if "y0" in cfg:
            kw["y0"] = _number(cfg, "y0")
        if "zeta" in cfg:
            kw["zeta"] = _number(cfg, "zeta", nonneg=True)
        if regime == "smoothed" and not kw["zeta"] > 0:
            raise ConfigError("zeta: must be positive for regime 'smoothed'")
        if "n" in cfg:
            kw["n"] = _number(cfg, "n", int, nonneg=True)
        if "n_max" in cfg:
            kw["n_max"] = _number(cfg, "n_max", int, nonneg=True)
        if "g" in cfg:
            kw["g"] = _number(cfg, "g", nonneg=regime == "gpe", positive=regime != "gpe")
        if "d" in cfg:
            kw["d"] = _number(cfg, "d", positive=True)
        if regime == "thomas_fermi" and ("g" in cfg) == ("d" in cfg):
            raise ConfigError("g: regime 'thomas_fermi' takes exactly one of g or d")
        if "N" in cfg:
            kw["N"] = _number(cfg, "N", int, positive=True)
            if kw["N"] > 20:
                raise ConfigError("N: at most 20 particles")
        if "q" in cfg:
            q = cfg["q"]
            if not isinstance(q, Mapping) or set(q) != {"min", "max", "count"}:
                raise ConfigError("q: expected a mapping with min, max, count")
            lo, hi = _number(q, "min"), _number(q, "max")
            count = _number(q, "count", int, positive=True)
            if not lo < hi or count < 2:
                raise ConfigError("q: need min < max and count >= 2")
            kw["q"] = (lo, hi, count)
        if "grid" in cfg:
            gr = cfg["grid"]
            if not isinstance(gr, Mapping) or set(gr) != {"half_width", "n_points"}:
                raise ConfigError("grid: expected a mapping with half_width, n_points")
            try:
                kw["grid"] = GridSpec.symmetric(
                    _number(gr, "half_width", positive=True), _number(gr, "n_points", int))
            except ValueError as exc:
                raise ConfigError(f"grid: {exc}") from exc
        if "name" in cfg:
            kw["name"] = str(cfg["name"])
        if "label" in cfg:
            kw["label"] = str(cfg["label"])
        return cls(**kw)


_FLOAT_RE = re.compile(r"^[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?$|^[-+]?\.(?:inf|Inf|INF)$|^\.(?:nan|NaN|NAN)$")


@lru_cache(maxsize=1)
def _yaml_loader():
    import yaml

    class Loader(yaml.SafeLoader):
        """Safe loader that also reads ``5e-6`` and ``2.0e6`` as floats (YAML 1.1 does not)."""

    Loader.yaml_implicit_resolvers = {
        k: [r for r in v if r[0] != "tag:yaml.org,2002:float"]
        for k, v in yaml.SafeLoader.yaml_implicit_resolvers.items()}
    Loader.add_implicit_resolver("tag:yaml.org,2002:float", _FLOAT_RE,
                                 list("-+.0123456789"))
    return Loader


def load_config(path) -> dict:
    import yaml

    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.load(fh, Loader=_yaml_loader())
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc.strerror}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config: invalid YAML in {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config: expected a mapping at the top level")
    return data


def expand_series(cfg: Mapping) -> list[ScenarioConfig]:
    """One config per ``series`` entry (each overriding the base), or the base alone."""
    base = {k: v for k, v in cfg.items() if k != "series"}
    series = cfg.get("series")
    if series is None:
        return [ScenarioConfig.from_mapping(base)]
    if not isinstance(series, list) or not series:
        raise ConfigError("series: expected a non-empty list of mappings")
    out = []
    for i, entry in enumerate(series):
        if not isinstance(entry, Mapping) or "label" not in entry:
            raise ConfigError(f"series[{i}]: expected a mapping with a label")
        merged = dict(base)
        merged.update(entry)
        regime = merged.get("regime")
        if regime in _EXTRA and regime != base.get("regime"):
            # base keys that the new regime does not take are dropped
            for key in set(base) - set(entry) - _COMMON - _EXTRA[regime]:
                del merged[key]
        out.append(ScenarioConfig.from_mapping(merged))
    labels = [c.label for c in out]
    if len(set(labels)) != len(labels):
        raise ConfigError("series: labels must be unique")
    return out



@dataclass
class Table:
    columns: list[str]
    rows: list[list[Any]] = field(default_factory=list)
    label: str = ""


def _fmt_phi(phi: float) -> str:
    return f"{phi / pi:.6g}pi"


# ---------------------------------------------------------------- densities

@lru_cache(maxsize=8)
def _gpe_state(g: float, grid: GridSpec | None):
    params = GpeParams(g) if grid is None else GpeParams(g, grid)
    return solve_ground_state(params).psi


def _tf_d(cfg: ScenarioConfig) -> float:
    return cfg.d if cfg.d is not None else tf_half_width(cfg.g)


def _mb_grid(cfg: ScenarioConfig) -> GridSpec:
    return cfg.grid or MANYBODY_GRID


def _orbital_set(cfg: ScenarioConfig):
    if cfg.regime.startswith("manybody_pse"):
        return pse_orbitals(cfg.N)
    return ground_orbitals(cfg.N)


def density_function(cfg: ScenarioConfig, phi: float) -> Callable[[np.ndarray], np.ndarray]:
    """``q -> n(q)`` for one phase of the scenario."""
    r = cfg.regime
    if r in ("reference", "shifted"):
        return lambda q: reference_density(q, phi, cfg.y0)
    if r == "thomas_fermi":
        d = _tf_d(cfg)
        return lambda q: tf_momentum_density(q, phi, d)
    if r == "excited" and cfg.y0 == 0 and cfg.zeta == 0:
        return lambda q: excited_density(q, phi, cfg.n)
    if r in ("smoothed", "excited", "gpe"):
        if r == "gpe":
            base = _gpe_state(cfg.g, cfg.grid)
        else:
            base = eigenstate(cfg.n, cfg.grid) if cfg.grid else eigenstate(cfg.n)
        psi = apply_imprint(base, phi, cfg.profile)
        return lambda q: momentum_density(psi, q).values
    orbs = imprint_orbitals(_orbital_set(cfg), phi, cfg.profile, _mb_grid(cfg))
    if r.endswith("_fermi"):
        return lambda q: fermi_momentum(orbs, q)
    rho = tg_rspdm(orbs)
    return lambda q: momentum_distribution(rho, q).values


def run_density(cfg: ScenarioConfig) -> Table:
    q = cfg.q_grid
    cols = ["q [dimensionless]"] + [
        f"n(q) phi={_fmt_phi(p)} [dimensionless]" for p in cfg.phis]
    data = [q] + [np.asarray(density_function(cfg, p)(q), dtype=float) for p in cfg.phis]
    return Table(cols, [list(r) for r in zip(*data)], cfg.label)


# ------------------------------------------------------------------- sweeps

_NOTCH_COLS = ["phi [rad]", "q0 [dimensionless]", "q_minus [dimensionless]",
               "q_plus [dimensionless]", "width [dimensionless]", "visibility [1]"]


def _approx_row(cfg: ScenarioConfig, phi: float) -> tuple[list[str], list[float]]:
    r = cfg.regime
    if r in ("reference", "shifted", "smoothed"):
        a = approx_reference(phi)
        cols = ["q0_approx [dimensionless]", "width_approx [dimensionless]",
                "visibility_approx [1]"]
        vals = [a.q0, a.width, a.visibility]
        if r == "reference":
            cols.append("q0_zero_condition [dimensionless]")
            try:
                vals.append(q0_exact_reference(phi))
            except ValueError:
                vals.append(None)
        return cols, vals
    if r in ("gpe", "thomas_fermi"):
        d = tf_half_width(cfg.g) if r == "gpe" else _tf_d(cfg)
        a = tf_approximations(phi, d)
        return (["q0_tf_approx [dimensionless]", "width_tf_approx [dimensionless]",
                 "visibility_tf_approx [1]"], [a.q0, a.width, a.visibility])
    if r == "excited":
        return ["q0_approx [dimensionless]"], [q0_approx_excited(phi, cfg.n)]
    return [], []


def _notch_row(cfg: ScenarioConfig, phi: float):
    cols, approx = _approx_row(cfg, phi)
    try:
        m = find_notch(density_function(cfg, phi))
        metrics = [m.q0, m.q_minus, m.q_plus, m.width, m.visibility]
        status = "ok"
    except NoNotch:
        metrics, status = [None] * 5, "no_notch"
    except AmbiguousNotch:
        metrics, status = [None] * 5, "ambiguous_notch"
    return cols, [phi, *metrics, *approx, status]


def _peak_row(cfg: ScenarioConfig, phi: float):
    try:
        return [phi, peak_shift(pse_orbitals(cfg.N), phi, cfg.profile, _mb_grid(cfg)), "ok"]
    except NoPeak:
        return [phi, None, "no_peak"]


def run_sweep(cfg: ScenarioConfig, jobs: int = 1) -> Table:
    """Metric table over the phase sweep; failed rows are flagged, never dropped."""
    if cfg.quantity == "moments":
        rows = []
        for n in range(cfg.n_max + 1):
            a, b = half_line_moments(n)
            rows.append([n, a, b, a / b, "ok"])
        return Table(["n [1]", "A_n [1]", "B_n [1]", "A_n/B_n [1]", "status"], rows, cfg.label)
    if not cfg.is_sweep:
        raise ConfigError("phi: sweep needs a {start, stop, count} phase spec")
    if cfg.quantity == "peak":
        rows = _map(lambda p: _peak_row(cfg, p), cfg.phis, jobs)
        return Table(["phi [rad]", "q_peak [dimensionless]", "status"], rows, cfg.label)
    results = _map(lambda p: _notch_row(cfg, p), cfg.phis, jobs)
    approx_cols = results[0][0]
    return Table(_NOTCH_COLS + approx_cols + ["status"], [r for _, r in results], cfg.label)


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def with_overrides(cfg: Mapping, phi=None, sweep=None, regime=None) -> dict:
    """Apply the command-line overrides to a raw config mapping."""
    out = dict(cfg)
    if regime is not None:
        out["regime"] = regime
    if phi is not None:
        out["phi"] = phi
    if sweep is not None:
        out["phi"] = parse_sweep(sweep)
    return out


def scenario_name(cfg: ScenarioConfig) -> str:
    return cfg.name if not cfg.label else f"{cfg.name}_{cfg.label}"


__all__ += ["density_function", "with_overrides", "scenario_name"]
