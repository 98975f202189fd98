"""Scenario configuration: YAML loading and field-level validation.

Configs are plain mappings. ``validate`` never raises; it returns a list of
``"<field path>: <problem>"`` strings, empty when the config can run.
"""
from __future__ import annotations

import hashlib
import json
import numbers
from pathlib import Path

import yaml

EXPERIMENTS = ("fig-siso", "miso-region", "relay-sweep", "wpcn-sweep", "wpcn-three-slot")
MAX_SEED = 2**64 - 1

_PARAM_KEYS = {"power_dbm", "eta", "noise_dbm", "path_loss_exponent", "reference_gain", "alpha"}
_GEOMETRY_KEYS = {
    "fig-siso": {"in", "er"},
    "miso-region": {"in", "er", "antennas", "channel_model"},
    "relay-sweep": {"links_m"},
    "wpcn-sweep": {"links_m"},
    "wpcn-three-slot": {"links_m"},
}
_LINK_KEYS = {
    "relay-sweep": ({"ap_hn", "hn_in", "hn_er"}, set()),
    "wpcn-sweep": ({"ap_in", "ap_hn", "in_er", "hn_er"}, {"far_ap_in"}),
    "wpcn-three-slot": ({"ap_in", "ap_hn", "in_hn", "in_er", "hn_er"}, {"hn_ap"}),
}
_GRID_KEYS = {
    "fig-siso": set(),
    "miso-region": {"alpha_points"},
    "relay-sweep": {"gamma_step", "beta_step"},
    "wpcn-sweep": {"tau_points", "taus"},
    "wpcn-three-slot": {"tau_points", "taus", "simplex_step", "beta_step"},
}


class ConfigError(Exception):
    """Unreadable or invalid scenario file."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def load_config(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError([f"<file>: cannot read {path}: {exc.strerror}"]) from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError([f"<file>: not valid YAML: {exc}"]) from exc
    if not isinstance(data, dict):
        raise ConfigError(["<root>: expected a mapping of fields"])
    return data


def config_digest(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def _is_number(x):
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


def _is_int(x):
    return isinstance(x, numbers.Integral) and not isinstance(x, bool)


class _Checker:
    def __init__(self):
        self.violations = []

    def add(self, path, msg):
        self.violations.append(f"{path}: {msg}")

    def mapping(self, value, path, allowed, required=()):
        if not isinstance(value, dict):
            self.add(path, "expected a mapping")
            return {}
        for key in value:
            if key not in allowed:
                self.add(f"{path}.{key}", f"unknown field (allowed: {', '.join(sorted(allowed))})")
        for key in required:
            if key not in value:
                self.add(f"{path}.{key}", "required field is missing")
        return value

    def number(self, value, path, lo=None, hi=None, lo_open=False, hi_open=False):
        if not _is_number(value):
            self.add(path, f"expected a number, got {value!r}")
            return False
        too_low = lo is not None and (value <= lo if lo_open else value < lo)
        too_high = hi is not None and (value >= hi if hi_open else value > hi)
        if too_low or too_high:
            left = "(" if lo_open else "["
            right = ")" if hi_open else "]"
            lo_s = "-inf" if lo is None else f"{lo:g}"
            hi_s = "inf" if hi is None else f"{hi:g}"
            kind = "open interval" if (lo_open and hi_open) else "interval"
            self.add(path, f"must lie in the {kind} {left}{lo_s}, {hi_s}{right}, got {value!r}")
            return False
        return True

    def integer(self, value, path, lo=None, hi=None):
        if not _is_int(value):
            self.add(path, f"expected an integer, got {value!r}")
            return False
        return self.number(value, path, lo, hi)

    def distance(self, value, path):
        return self.number(value, path, lo=0, lo_open=True)


def _check_power(c, value, path, sweep):
    if sweep:
        if isinstance(value, list):
            if not value:
                c.add(path, "sweep list is empty")
            for i, v in enumerate(value):
                c.number(v, f"{path}[{i}]")
            return
        bounds = c.mapping(value, path, {"start", "stop", "points"}, ("start", "stop", "points"))
        ends_ok = [c.number(bounds[k], f"{path}.{k}") for k in ("start", "stop") if k in bounds]
        if "points" in bounds:
            c.integer(bounds["points"], f"{path}.points", lo=1)
        if len(ends_ok) == 2 and all(ends_ok) and bounds["start"] > bounds["stop"]:
            c.add(path, f"start ({bounds['start']}) must not exceed stop ({bounds['stop']})")
    else:
        c.number(value, path)


def _check_placement(c, value, path):
    node = c.mapping(value, path, {"distance_m", "angle_deg"}, ("distance_m",))
    if "distance_m" in node:
        c.distance(node["distance_m"], f"{path}.distance_m")
    if "angle_deg" in node:
        c.number(node["angle_deg"], f"{path}.angle_deg")


def validate(config) -> list[str]:
    """Field-level violations of ``config``; empty iff ``run`` can proceed."""
    c = _Checker()
    root = c.mapping(config, "<root>",
                     {"experiment", "seed", "output", "params", "geometry", "grids", "description"},
                     ("experiment", "params", "geometry"))
    if not isinstance(config, dict):
        return c.violations
    exp = root.get("experiment")
    if exp not in EXPERIMENTS:
        c.add("experiment", f"must be one of {', '.join(EXPERIMENTS)}, got {exp!r}")
        return c.violations

    if "seed" in root:
        c.integer(root["seed"], "seed", lo=0, hi=MAX_SEED)
    if "output" in root and not isinstance(root["output"], str):
        c.add("output", "expected a path string")

    params = c.mapping(root.get("params", {}), "params", _PARAM_KEYS,
                       ("power_dbm", "noise_dbm", "path_loss_exponent"))
    if "power_dbm" in params:
        _check_power(c, params["power_dbm"], "params.power_dbm", sweep=exp == "fig-siso")
    if "noise_dbm" in params:
        c.number(params["noise_dbm"], "params.noise_dbm")
    if "eta" in params:
        c.number(params["eta"], "params.eta", lo=0, hi=1, lo_open=True)
    if "path_loss_exponent" in params:
        c.number(params["path_loss_exponent"], "params.path_loss_exponent", lo=0)
    if "reference_gain" in params:
        c.number(params["reference_gain"], "params.reference_gain", lo=0, lo_open=True)
    if "alpha" in params:
        c.number(params["alpha"], "params.alpha", lo=0, hi=1)

    geo = c.mapping(root.get("geometry", {}), "geometry", _GEOMETRY_KEYS[exp])
    if exp in ("fig-siso", "miso-region"):
        for node in ("in", "er"):
            if node not in geo:
                c.add(f"geometry.{node}", "required field is missing")
            else:
                _check_placement(c, geo[node], f"geometry.{node}")
        if exp == "miso-region":
            if "antennas" not in geo:
                c.add("geometry.antennas", "required field is missing")
            else:
                c.integer(geo["antennas"], "geometry.antennas", lo=2)
            model = geo.get("channel_model", "los")
            if model not in ("los", "rayleigh"):
                c.add("geometry.channel_model", f"must be 'los' or 'rayleigh', got {model!r}")
    else:
        required, optional = _LINK_KEYS[exp]
        if "links_m" not in geo:
            c.add("geometry.links_m", "required field is missing")
        else:
            links = c.mapping(geo["links_m"], "geometry.links_m", required | optional, sorted(required))
            for key, value in links.items():
                path = f"geometry.links_m.{key}"
                if key == "hn_er" and exp == "wpcn-sweep":
                    if not isinstance(value, list) or not value:
                        c.add(path, "expected a non-empty list of HN-to-ER distances")
                        continue
                    for i, v in enumerate(value):
                        c.distance(v, f"{path}[{i}]")
                elif key in required | optional:
                    c.distance(value, path)
            if exp == "wpcn-sweep" and _is_number(links.get("far_ap_in")) and \
                    _is_number(links.get("ap_in")) and links["far_ap_in"] < links["ap_in"]:
                c.add("geometry.links_m.far_ap_in",
                      f"far IN must be at least as distant as ap_in ({links['ap_in']})")

    grids = c.mapping(root.get("grids", {}) or {}, "grids", _GRID_KEYS[exp])
    if "alpha_points" in grids:
        c.integer(grids["alpha_points"], "grids.alpha_points", lo=2)
    for key in ("gamma_step", "beta_step"):
        if key in grids:
            c.number(grids[key], f"grids.{key}", lo=0, hi=1, lo_open=True)
    if "simplex_step" in grids:
        c.number(grids["simplex_step"], "grids.simplex_step", lo=0, hi=1 / 3, lo_open=True)
    if "tau_points" in grids:
        c.integer(grids["tau_points"], "grids.tau_points", lo=1)
    if "taus" in grids:
        taus = grids["taus"]
        if not isinstance(taus, list) or not taus:
            c.add("grids.taus", "expected a non-empty list")
        else:
            for i, t in enumerate(taus):
                c.number(t, f"grids.taus[{i}]", lo=0, hi=1, lo_open=True, hi_open=True)
    return c.violations
