"""Experiment runners producing plot-ready result tables."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .channel import (NodePlacement, PathLossModel, dbm_to_watts, los_channel,
                      path_loss_gain, power_gain, rayleigh_channel)
from .config import ConfigError, config_digest, validate
from .optim import grid_points
from .relay import RelayProtocol, RelayTopology, classify_mode, ModeClassificationError, \
    HelperSchedule, optimize_schedule, rate_grid
from .swipt_miso import BeamStrategy, rate_energy_region
from .swipt_siso import ReceiverType, SystemParams, optimize_alpha, siso_rate_curve
from .wpcn import (JammingMode, ThreeSlotTopology, WpcnTopology, default_tau_grid,
                   doubly_near_far_report, optimize_tau, optimize_three_slot, uplink_rate_curve)

DEFAULTS = {
    "eta": 0.5,
    "reference_gain": 1.0,
    "alpha": 0.5,
    "alpha_points": 201,
    "gamma_step": 0.01,
    "beta_step": 0.01,
    "tau_points": 999,
    "three_slot_tau_points": 99,
    "simplex_step": 0.01,
}

STRATEGY_RX = {
    BeamStrategy.AN_TYPE_I: ReceiverType.TYPE_I,
    BeamStrategy.AN_TYPE_II: ReceiverType.TYPE_II,
    BeamStrategy.NO_AN_TIME_SHARING: ReceiverType.TYPE_I,
}


@dataclass
class ResultTable:
    columns: list
    rows: list
    metadata: list = field(default_factory=list)  # (key, value) pairs

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(f"row {i} has {len(row)} values for {len(self.columns)} columns")
            for v in row:
                if isinstance(v, float) and not math.isfinite(v):
                    raise ValueError(f"row {i} contains a non-finite value")

    def column(self, name):
        k = self.columns.index(name)
        return [row[k] for row in self.rows]

    def to_csv(self) -> str:
        lines = [f"# {key}: {value}" for key, value in self.metadata]
        lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(_fmt(v) for v in row))
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def _pmap(fn, items, threads):
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))  # map keeps input order


def _params(cfg, power_dbm):
    p = cfg["params"]
    return SystemParams(power=dbm_to_watts(power_dbm), noise=dbm_to_watts(p["noise_dbm"]),
                        eta=p.get("eta", DEFAULTS["eta"]), alpha=p.get("alpha", 0.0))


def _path_loss(cfg):
    p = cfg["params"]
    return PathLossModel(p["path_loss_exponent"], p.get("reference_gain", DEFAULTS["reference_gain"]))


def _placement(node):
    return NodePlacement(node["distance_m"], node.get("angle_deg", 0.0))


def _power_sweep(sweep):
    if isinstance(sweep, list):
        return sorted(float(x) for x in sweep)
    return [float(x) for x in np.linspace(sweep["start"], sweep["stop"], sweep["points"])]


def run_fig_siso(cfg, seed, threads):
    model = _path_loss(cfg)
    h_info = power_gain(los_channel(_placement(cfg["geometry"]["in"]), 1, model))
    h_eve = power_gain(los_channel(_placement(cfg["geometry"]["er"]), 1, model))

    def point(p_dbm):
        params = _params(cfg, p_dbm)
        no_an = float(siso_rate_curve(params, h_info, h_eve, ReceiverType.TYPE_I, 0.0))
        type2 = optimize_alpha(params, h_info, h_eve, ReceiverType.TYPE_II)
        type1 = optimize_alpha(params, h_info, h_eve, ReceiverType.TYPE_I)
        return (p_dbm, no_an, type2.rate, type1.rate, type1.alpha)

    rows = _pmap(point, _power_sweep(cfg["params"]["power_dbm"]), threads)
    meta = [("h_I", repr(h_info)), ("h_E", repr(h_eve))]
    return ResultTable(["P_dBm", "R_noAN", "R_typeII", "R_typeI", "alpha_star"], rows, meta)


def miso_channels(cfg, seed):
    geo = cfg["geometry"]
    n = geo["antennas"]
    model = _path_loss(cfg)
    nodes = [_placement(geo["in"]), _placement(geo["er"])]
    if geo.get("channel_model", "los") == "rayleigh":
        return [rayleigh_channel((seed + k) % 2**64, n, path_loss_gain(node.distance, model) / n)
                for k, node in enumerate(nodes)]
    return [los_channel(node, n, model) for node in nodes]


def run_miso_region(cfg, seed, threads):
    params = _params(cfg, cfg["params"]["power_dbm"])
    h_info, h_eve = miso_channels(cfg, seed)
    alphas = np.linspace(0.0, 1.0, cfg.get("grids", {}).get("alpha_points", DEFAULTS["alpha_points"]))

    def region(strategy):
        pts = rate_energy_region(params, h_info, h_eve, strategy, STRATEGY_RX[strategy], alphas)
        return [(strategy.value, p.energy, p.rate) for p in pts]

    rows = [row for part in _pmap(region, list(BeamStrategy), threads) for row in part]
    return ResultTable(["strategy", "Q_watts", "R_s"], rows)


def _mode_label(gamma, beta):
    try:
        return classify_mode(HelperSchedule(gamma, beta, RelayProtocol.DF)).value
    except ModeClassificationError:
        return "unclassified"


def relay_topology(cfg):
    links = cfg["geometry"]["links_m"]
    model = _path_loss(cfg)
    return RelayTopology(g_ap_hn=path_loss_gain(links["ap_hn"], model),
                         g_hn_in=path_loss_gain(links["hn_in"], model),
                         g_hn_er=path_loss_gain(links["hn_er"], model))


def relay_inputs(cfg):
    """``(SystemParams, RelayTopology)`` for a relay-sweep config."""
    params = _params(cfg, cfg["params"]["power_dbm"]).with_alpha(
        cfg["params"].get("alpha", DEFAULTS["alpha"]))
    return params, relay_topology(cfg)


def run_relay_sweep(cfg, seed, threads):
    params, topo = relay_inputs(cfg)
    grids = cfg.get("grids", {})
    g_step = grids.get("gamma_step", DEFAULTS["gamma_step"])
    b_step = grids.get("beta_step", DEFAULTS["beta_step"])
    gammas = grid_points(0.0, 1.0, g_step)
    betas = grid_points(0.0, 1.0, b_step)

    def row_block(gamma):
        af = rate_grid(params, topo, RelayProtocol.AF, [gamma], betas)[0]
        df = rate_grid(params, topo, RelayProtocol.DF, [gamma], betas)[0]
        return [(float(gamma), float(b), _mode_label(float(gamma), float(b)), float(ra), float(rd))
                for b, ra, rd in zip(betas, af, df)]

    rows = [r for block in _pmap(row_block, gammas, threads) for r in block]
    meta = []
    for proto in (RelayProtocol.AF, RelayProtocol.DF):
        best = optimize_schedule(params, topo, proto, step=g_step, beta_step=b_step)
        mode = best.mode.value if best.mode else "unclassified"
        meta.append((f"best_{proto.value}",
                     f"gamma={best.schedule.gamma!r} beta={best.schedule.beta!r} "
                     f"mode={mode} rate={best.rate!r}"))
    return ResultTable(["gamma", "beta", "mode", "R_AF", "R_DF"], rows, meta)


def _taus(cfg, default_points):
    grids = cfg.get("grids", {})
    if "taus" in grids:
        return np.array(sorted(float(t) for t in grids["taus"]))
    return default_tau_grid(grids.get("tau_points", default_points))


def wpcn_topology(cfg, ap_in_key="ap_in"):
    links = cfg["geometry"]["links_m"]
    model = _path_loss(cfg)
    g = lambda d: path_loss_gain(d, model)  # noqa: E731
    hn_er = links["hn_er"] if isinstance(links["hn_er"], list) else [links["hn_er"]]
    return WpcnTopology(g_ap_in=g(links[ap_in_key]), g_ap_hn=g(links["ap_hn"]),
                        g_in_er=g(links["in_er"]), g_hn_er=tuple(g(d) for d in hn_er))


def _wpcn_rows(params, topo, taus, threads):
    modes = list(JammingMode)
    curves = _pmap(lambda m: uplink_rate_curve(taus, params, topo, m), modes, threads)
    return [(float(t), *(float(c[k]) for c in curves)) for k, t in enumerate(taus)]


def wpcn_inputs(cfg):
    """``(SystemParams, WpcnTopology)`` for the near IN of a WPCN config."""
    return _params(cfg, cfg["params"]["power_dbm"]), wpcn_topology(cfg)


def run_wpcn_sweep(cfg, seed, threads):
    params, topo = wpcn_inputs(cfg)
    taus = _taus(cfg, DEFAULTS["tau_points"])
    rows = _wpcn_rows(params, topo, taus, threads)
    meta = []
    for mode in JammingMode:
        best = optimize_tau(params, topo, mode, taus)
        meta.append((f"best_{mode.value}", f"tau={best.tau!r} rate={best.rate!r}"))
    if "far_ap_in" in cfg["geometry"]["links_m"]:
        far = wpcn_topology(cfg, "far_ap_in")
        for mode in JammingMode:
            rep = doubly_near_far_report(params, topo, far, mode, taus)
            meta.append((f"near_far_{mode.value}",
                         f"near_tau={rep.near.tau!r} near_rate={rep.near.rate!r} "
                         f"far_tau={rep.far.tau!r} far_rate={rep.far.rate!r}"))
    return ResultTable(["tau", "R_off", "R_incoherent", "R_coherent"], rows, meta)


def three_slot_topology(cfg):
    links = cfg["geometry"]["links_m"]
    model = _path_loss(cfg)
    g = lambda d: path_loss_gain(d, model)  # noqa: E731
    return ThreeSlotTopology(g_ap_in=g(links["ap_in"]), g_ap_hn=g(links["ap_hn"]),
                             g_in_hn=g(links["in_hn"]), g_in_er=g(links["in_er"]),
                             g_hn_er=g(links["hn_er"]), g_hn_ap=g(links.get("hn_ap", links["ap_hn"])))


def run_wpcn_three_slot(cfg, seed, threads):
    params, topo2 = wpcn_inputs(cfg)
    topo3 = three_slot_topology(cfg)
    grids = cfg.get("grids", {})
    step = grids.get("simplex_step", DEFAULTS["simplex_step"])
    b_step = grids.get("beta_step", DEFAULTS["beta_step"])
    taus = _taus(cfg, DEFAULTS["three_slot_tau_points"])
    two = _wpcn_rows(params, topo2, taus, threads)
    three = _pmap(lambda t: optimize_three_slot(params, topo3, step, b_step, tau1=float(t)).rate,
                  taus, threads)
    rows = [(*r, float(r3)) for r, r3 in zip(two, three)]
    best = optimize_three_slot(params, topo3, step, b_step)
    s = best.schedule
    meta = [("best_three_slot", f"tau1={s.tau1!r} tau2={s.tau2!r} tau3={s.tau3!r} "
                                f"beta_hn={s.beta_hn!r} rate={best.rate!r}")]
    return ResultTable(["tau", "R_off", "R_incoherent", "R_coherent", "R_three_slot"], rows, meta)


RUNNERS = {
    "fig-siso": run_fig_siso,
    "miso-region": run_miso_region,
    "relay-sweep": run_relay_sweep,
    "wpcn-sweep": run_wpcn_sweep,
    "wpcn-three-slot": run_wpcn_three_slot,
}


def run(cfg: dict, seed: int | None = None, threads: int = 1) -> ResultTable:
    """Validate ``cfg`` and execute its experiment.

    Raises ``ConfigError`` listing every violation if the config is invalid.
    Output is identical for a given config and seed whatever ``threads`` is.
    """
    violations = validate(cfg)
    if violations:
        raise ConfigError(violations)
    seed = cfg.get("seed", 0) if seed is None else seed
    table = RUNNERS[cfg["experiment"]](cfg, seed, threads)
    header = [("secwipt", __version__), ("experiment", cfg["experiment"]),
              ("config_sha256", config_digest(cfg)), ("seed", seed)]
    table.metadata = header + table.metadata
    return table
