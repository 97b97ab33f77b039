"""Experiment runners: compute each study's observables, write the CSV
tables, and render companion images next to them."""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import __version__, plotting
from .analytic import (
    ClosedFormDensity,
    HalfSpaceFree,
    halfspace_observables,
)
from .bouncer_grav import (
    ClassicalBouncer,
    autocorrelation,
    classical_averages,
    evolve_grid,
    expand_gaussian,
    position_expectation,
)
from .bouncer_harm import HarmonicBouncerState, position_expectation_closed
from .regime import GaussianMixedParams, Regime
from .report import TimeSeries, parse_float_list

# classical acceleration in the bouncer's dimensionless units (m g = 1, m = 1/2)
GRAV_UNITS_ACCEL = 2.0

FIG_DEFAULTS = {
    "fig1": {
        "hbar": 1.0, "mass": 1.0, "sigma0": 1.0, "x0": 5.0, "p0": -1.0,
        "lams": "0,0.7", "eps": "1", "t_max": 12.0, "samples": 241,
    },
    "fig2": {"sigma0": 1.0, "z0": 5.0, "eps": "0.01,0.1,0.5,0.8", "tol": 1e-6},
    "fig3": {
        "sigma0": 1.0, "z0": 5.0, "eps": "0.1,0.5,1", "times": "5,10,15,20",
        "z_max": 16.0, "samples": 801, "tol": 1e-6,
    },
    "fig4": {
        "sigma0": 1.0, "z0": 5.0, "eps": "0.01,0.5,1", "bounces": 6.0,
        "samples": 481, "tol": 1e-6,
    },
    "fig5": {
        "sigma0": 1.0, "z0": 5.0, "eps": "1,0.5,0.01", "omega": 0.5,
        "t_max": 6.0, "samples": 601,
    },
}


def _meta(experiment, settings):
    meta = {"experiment": experiment, "generator": f"scaledqm {__version__}"}
    for key in sorted(settings):
        meta[key] = settings[key]
    return meta


def _eps_label(eps: float) -> str:
    return f"eps{eps:g}"


def resolve_settings(experiment, config=None, **overrides):
    """Defaults < config file values < explicit flags, all stringly typed."""
    settings = dict(FIG_DEFAULTS[experiment])
    for src in (config or {}), {k: v for k, v in overrides.items() if v is not None}:
        for key, value in src.items():
            settings[key] = value
    return settings


def run_fig1(out_dir, config=None, **overrides):
    """Half-space reflection: <x> and dispersion, classical vs scaled kinds."""
    s = resolve_settings("fig1", config, **overrides)
    lams = parse_float_list(s["lams"])
    eps = parse_float_list(s["eps"])[0]
    t = np.linspace(0.0, float(s["t_max"]), int(s["samples"]))
    meta = _meta("fig1", s)
    out_dir = Path(out_dir)

    panels = {}
    written = []
    for kind, regime in (("classical", None), ("quantum", Regime(eps, float(s["hbar"]), float(s["mass"])))):
        cols_x = [t]
        cols_d = [t]
        names = ["t"]
        for lam in lams:
            params = GaussianMixedParams(
                x0=float(s["x0"]), sigma0=float(s["sigma0"]), p0=float(s["p0"]), lam=lam
            )
            cfd = ClosedFormDensity(HalfSpaceFree(), params, regime)
            pairs = [halfspace_observables(cfd, float(tj)) for tj in t]
            cols_x.append(np.array([p[0] for p in pairs]))
            cols_d.append(np.array([p[1] for p in pairs]))
            names.append(f"lam{lam:g}")
        for tag, cols in (("xav", cols_x), ("dx", cols_d)):
            series = TimeSeries(columns=names, rows=np.column_stack(cols), metadata=meta)
            written.append(series.write_csv(out_dir / f"fig1_{kind}_{tag}.csv"))
            panels[f"{kind} {tag}"] = series
    written.append(plotting.render_panels(panels, out_dir / "fig1.png",
                                          suptitle="half-space reflection", xlabel="t"))
    return written


def run_fig2(out_dir, config=None, **overrides):
    """Expansion weights |C_n|^2 of the bouncer packet per quantumness."""
    s = resolve_settings("fig2", config, **overrides)
    eps_list = parse_float_list(s["eps"])
    packet = GaussianMixedParams(x0=float(s["z0"]), sigma0=float(s["sigma0"]))
    out_dir = Path(out_dir)
    written = []
    panels = {}
    for eps in eps_list:
        state = expand_gaussian(eps, packet, tol=float(s["tol"]))
        n = np.arange(1, state.n_modes + 1, dtype=float)
        series = TimeSeries(
            columns=["n", "weight"],
            rows=np.column_stack([n, state.coeffs**2]),
            metadata={**_meta("fig2", s), "eps": f"{eps:g}",
                      "captured_norm": f"{state.captured_norm:.17g}"},
        )
        written.append(series.write_csv(out_dir / f"fig2_{_eps_label(eps)}.csv"))
        panels[f"eps = {eps:g}"] = series
    written.append(plotting.render_panels(panels, out_dir / "fig2.png",
                                          suptitle="expansion weights", xlabel="n",
                                          stem=True))
    return written


def run_fig3(out_dir, config=None, **overrides):
    """Bouncer probability density snapshots |psi(z, t)|^2."""
    s = resolve_settings("fig3", config, **overrides)
    eps_list = parse_float_list(s["eps"])
    times = parse_float_list(s["times"])
    packet = GaussianMixedParams(x0=float(s["z0"]), sigma0=float(s["sigma0"]))
    z = np.linspace(0.0, float(s["z_max"]), int(s["samples"]))
    out_dir = Path(out_dir)
    written = []
    panels = {}
    for eps in eps_list:
        state = expand_gaussian(eps, packet, tol=float(s["tol"]))
        psi = evolve_grid(state, z, np.asarray(times))
        dens = psi.real**2 + psi.imag**2
        series = TimeSeries(
            columns=["z"] + [f"t{tj:g}" for tj in times],
            rows=np.column_stack([z, dens]),
            metadata={**_meta("fig3", s), "eps": f"{eps:g}"},
        )
        written.append(series.write_csv(out_dir / f"fig3_{_eps_label(eps)}.csv"))
        panels[f"eps = {eps:g}"] = series
    written.append(plotting.render_panels(panels, out_dir / "fig3.png",
                                          suptitle="probability density snapshots",
                                          xlabel="z"))
    return written


def run_fig4(out_dir, config=None, **overrides):
    """Bouncer <z>(t) and squared autocorrelation over several bounces."""
    s = resolve_settings("fig4", config, **overrides)
    eps_list = parse_float_list(s["eps"])
    z0 = float(s["z0"])
    packet = GaussianMixedParams(x0=z0, sigma0=float(s["sigma0"]))
    tau = ClassicalBouncer(z0, g=GRAV_UNITS_ACCEL).period
    t = np.linspace(0.0, float(s["bounces"]) * tau, int(s["samples"]))
    out_dir = Path(out_dir)

    _, ensemble_ref = classical_averages(packet)
    zav_cols = [t]
    ac_cols = [t]
    names = ["t"]
    for eps in eps_list:
        state = expand_gaussian(eps, packet, tol=float(s["tol"]))
        zav_cols.append(np.atleast_1d(position_expectation(state, t)))
        ac_cols.append(np.abs(autocorrelation(state, t)) ** 2)
        names.append(_eps_label(eps))
    zav_cols.append(np.full_like(t, ensemble_ref))
    zav = TimeSeries(columns=names + ["classical_mean"],
                     rows=np.column_stack(zav_cols), metadata=_meta("fig4", s))
    ac = TimeSeries(columns=names, rows=np.column_stack(ac_cols), metadata=_meta("fig4", s))
    written = [
        zav.write_csv(out_dir / "fig4_zav.csv"),
        ac.write_csv(out_dir / "fig4_autocorr.csv"),
        plotting.render_panels(
            {"position expectation": zav, "autocorrelation squared": ac},
            out_dir / "fig4.png", xlabel="t"),
    ]
    return written


def run_fig5(out_dir, config=None, **overrides):
    """Harmonic bouncer <z>(t) per quantumness, in trap units."""
    s = resolve_settings("fig5", config, **overrides)
    eps_list = parse_float_list(s["eps"])
    omega = float(s["omega"])
    length_unit = math.sqrt(1.0 / (2.0 * omega))     # hbar = mass = 1
    time_unit = 2.0 / omega
    t_ts = np.linspace(0.0, float(s["t_max"]), int(s["samples"]))
    out_dir = Path(out_dir)

    cols = [t_ts]
    names = ["t"]
    for eps in eps_list:
        state = HarmonicBouncerState(
            Regime(eps),
            omega,
            GaussianMixedParams(x0=float(s["z0"]) * length_unit,
                                sigma0=float(s["sigma0"]) * length_unit),
        )
        zav = position_expectation_closed(state, t_ts * time_unit) / length_unit
        cols.append(np.atleast_1d(zav))
        names.append(_eps_label(eps))
    series = TimeSeries(columns=names, rows=np.column_stack(cols),
                        metadata=_meta("fig5", s))
    written = [
        series.write_csv(out_dir / "fig5_zav.csv"),
        plotting.render_lines(series, out_dir / "fig5.png",
                              title="harmonic bouncer position expectation",
                              xlabel="t (trap units)", ylabel="<z> (trap units)"),
    ]
    return written


RUNNERS = {
    "fig1": run_fig1,
    "fig2": run_fig2,
    "fig3": run_fig3,
    "fig4": run_fig4,
    "fig5": run_fig5,
}
