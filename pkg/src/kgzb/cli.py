"""Command-line driver: figure data reproduction, verification suites,
parameter sweeps, and all file I/O.

Every data-producing command writes CSV traces through :class:`kgzb.core.Trace`
(17-significant-digit formatting, deterministic) plus a JSON run manifest
listing the command, the fully resolved configuration, the tool version, the
output files, and the wall-clock duration.  The CSV ``#`` headers carry a
digest of the resolved configuration so renderers can check provenance.

Exit codes: 0 success, 2 configuration/usage error, 3 numeric-verification
failure.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import sys
import time as _time
from pathlib import Path
from typing import Callable, NamedTuple

import click
import numpy as np

from kgzb import __version__
from kgzb.core import (
    ConfigError,
    DomainError,
    GaussianPacket,
    Trace,
    load_config,
)
from kgzb.quadrature import ConvergenceError, riemann_oracle

OUT_DIR_ENV = "ZB_OUT_DIR"
EXIT_CONFIG_ERROR = 2
EXIT_VERIFY_FAILURE = 3

__all__ = [
    "main",
    "OUT_DIR_ENV",
    "EXIT_CONFIG_ERROR",
    "EXIT_VERIFY_FAILURE",
    "run_figure",
    "run_verify",
    "run_sweep",
    "config_digest",
]


# ---------------------------------------------------------------------------
# run plumbing


class Output(NamedTuple):
    """One CSV product of a run."""

    filename: str
    trace: Trace
    time_column: str = "t"


def config_digest(config: dict) -> str:
    """Short hex digest of the canonical JSON form of a resolved config."""
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:12]


def _resolve_out_dir(out_dir: str | None) -> Path:
    path = Path(out_dir or os.environ.get(OUT_DIR_ENV) or "zb_out")
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_run(
    command: str,
    config: dict,
    outputs: list[Output],
    out_dir: Path,
    started: float,
) -> list[Path]:
    digest = config_digest(config)
    written: list[Path] = []
    for out in outputs:
        out.trace.header.setdefault("command", command)
        out.trace.header.setdefault("version", __version__)
        out.trace.header.setdefault("config_digest", digest)
        path = out_dir / out.filename
        out.trace.write_csv(path, time_column=out.time_column)
        written.append(path)
    manifest = {
        "command": command,
        "config": config,
        "config_digest": digest,
        "version": __version__,
        "outputs": [out.filename for out in outputs],
        "duration_seconds": _time.perf_counter() - started,
    }
    manifest_path = out_dir / f"{command.replace(' ', '_')}_manifest.json"
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    written.append(manifest_path)
    return written


def _time_grid(cfg: dict, start: float, stop: float, num: int) -> np.ndarray:
    spec = cfg.get("time", {})
    return np.linspace(
        spec.get("start", start), spec.get("stop", stop), spec.get("num", num)
    )


# ---------------------------------------------------------------------------
# figure profiles

# Built-in defaults for each figure; a user config overlays them.  Widths and
# momenta are stated in the natural units (lengths in lambda_c, momenta in
# 1/lambda_c) except in the magnetic profiles where they scale with the
# magnetic length L = sqrt(B_s/B) lambda_c.
FIELD_RATIOS = (0.0045, 0.45, 4.5)
MAGNETIC_WIDTH_FACTORS = (0.91, 0.82, 0.68)
MAGNETIC_K0X_FACTOR = 0.7


def _magnetic_packet(b_ratio: float, cfg: dict, k0_axis: str = "x") -> tuple:
    """Packet with widths proportional to the magnetic length (documented
    reading of the printed panel parameters) and the default transverse
    momentum 0.7/L, except the strong-field panel which uses k0x = 1."""
    from kgzb.magnetic import LandauContext

    mag = cfg.get("magnetic", {})
    ctx = LandauContext(b_ratio, charge_sign=mag.get("charge_sign", 1))
    length = ctx.magnetic_length
    widths = cfg.get(
        "widths", tuple(f * length for f in MAGNETIC_WIDTH_FACTORS)
    )
    k0_mag = MAGNETIC_K0X_FACTOR / length
    if k0_axis == "x" and b_ratio >= 4.5:
        k0_mag = 1.0
    default_k0 = (k0_mag, 0.0, 0.0) if k0_axis == "x" else (0.0, 0.0, k0_mag)
    packet = GaussianPacket(
        widths=tuple(widths), k0=tuple(cfg.get("k0", default_k0))
    )
    return packet, ctx


def _figure_1(cfg: dict) -> list[Output]:
    """Transient velocity oscillations for three packet widths."""
    from kgzb.freefield import packet_velocity

    times = _time_grid(cfg, 0.0, 12.0, 241)
    k0 = tuple(cfg.get("k0", (0.0, 0.0, 0.8)))
    d_list = (cfg["widths"][2],) if "widths" in cfg else (1.0, 2.0, 4.0)
    rows, columns = [], []
    for d in d_list:
        packet = GaussianPacket.isotropic(d, k0z=k0[2])
        rows.append([packet_velocity(packet, float(t)) for t in times])
        columns.append(f"v_z_d{d:g}")
    trace = Trace(
        times=times,
        values=np.array(rows),
        label="fig1",
        columns=tuple(columns),
        header={"k0z": k0[2], "widths": ",".join(f"{d:g}" for d in d_list)},
    )
    return [Output("fig1.csv", trace)]


def _figure_2(cfg: dict) -> list[Output]:
    """|phi(x)| snapshots showing the split into two sub-packets."""
    from kgzb.waveform import evolve_packet_1d

    d = cfg.get("widths", (2.0, 2.0, 2.0))[2]
    k0 = tuple(cfg.get("k0", (0.0, 0.0, 0.8)))
    spec = cfg.get("time", {})
    snapshots = np.linspace(
        spec.get("start", 0.0), spec.get("stop", 18.0), spec.get("num", 7)
    )
    half = float(np.max(snapshots)) + 8.0 * d
    x = np.linspace(-half, half, 1281)
    field = evolve_packet_1d(
        GaussianPacket.isotropic(d, k0z=k0[2]), snapshots, x
    )
    trace = Trace(
        times=x,
        values=np.abs(field.values),
        label="fig2",
        columns=tuple(f"absphi_t{t:g}" for t in snapshots),
        header={"d": d, "k0z": k0[2]},
    )
    return [Output("fig2.csv", trace, time_column="x")]


def _magnetic_trace(
    b_ratio: float, cfg: dict, times: np.ndarray, name: str
) -> Output:
    from kgzb.magnetic import velocity_components

    packet, ctx = _magnetic_packet(b_ratio, cfg)
    comps = velocity_components(packet, ctx, times)
    trace = Trace(
        times=times,
        values=comps[:2],
        label=name,
        columns=("v_x", "v_y"),
        header={
            "b_ratio": b_ratio,
            "widths": ",".join(f"{w:.6g}" for w in packet.widths),
            "k0x": packet.k0[0],
        },
    )
    return Output(f"{name}.csv", trace)


def _figure_3(cfg: dict) -> list[Output]:
    """Transverse velocity in a magnetic field, weak to strong."""
    mag = cfg.get("magnetic", {})
    if "b_ratio" in mag:
        b = mag["b_ratio"]
        times = _time_grid(cfg, 0.0, 2.0 * math.pi / b, 701)
        return [_magnetic_trace(b, cfg, times, "fig3")]
    spans = {0.0045: 2.0 * math.pi / 0.0045, 0.45: 100.0, 4.5: 30.0}
    outputs = []
    for panel, b in zip("abc", FIELD_RATIOS):
        times = _time_grid(cfg, 0.0, spans[b], 701)
        outputs.append(_magnetic_trace(b, cfg, times, f"fig3{panel}"))
    return outputs


def _figure_4(cfg: dict) -> list[Output]:
    """Long-horizon transverse velocity: collapse and revival."""
    from kgzb.magnetic import LandauContext, velocity_components

    b = cfg.get("magnetic", {}).get("b_ratio", 0.45)
    ctx = LandauContext(b)
    length = ctx.magnetic_length
    widths = tuple(cfg.get("widths", (2.0 * length,) * 3))
    k0 = tuple(cfg.get("k0", (MAGNETIC_K0X_FACTOR / length, 0.0, 0.0)))
    packet = GaussianPacket(widths=widths, k0=k0)
    times = _time_grid(cfg, 0.0, 300.0, 2401)
    comps = velocity_components(packet, ctx, times)
    trace = Trace(
        times=times,
        values=comps[:2],
        label="fig4",
        columns=("v_x", "v_y"),
        header={"b_ratio": b, "widths": ",".join(f"{w:.6g}" for w in widths)},
    )
    return [Output("fig4.csv", trace)]


def _figure_5(cfg: dict) -> list[Output]:
    """Longitudinal velocity across field strengths: approach to the
    non-relativistic (oscillation-free) limit."""
    from kgzb.magnetic import velocity_components

    ratios = (0.0045, 0.045, 0.45, 4.5)
    times = _time_grid(cfg, 0.0, 20.0, 801)
    rows, columns, meta = [], [], []
    for b in ratios:
        packet, ctx = _magnetic_packet(b, cfg, k0_axis="z")
        rows.append(velocity_components(packet, ctx, times)[2])
        columns.append(f"v_z_b{b:g}")
        meta.append(f"{b:g}")
    trace = Trace(
        times=times,
        values=np.array(rows),
        label="fig5",
        columns=tuple(columns),
        header={"b_ratios": ",".join(meta)},
    )
    return [Output("fig5.csv", trace)]


def _figure_7(cfg: dict) -> list[Output]:
    """String-analogy variance: oscillating and non-oscillating parts,
    with the finite-difference oracle total alongside."""
    from kgzb.string_sim import pde_oracle, variance_terms

    d = cfg.get("string", {}).get("d", 5.0)
    spec = cfg.get("time", {})
    t_end = spec.get("stop", 100.0)
    num = spec.get("num", 401)
    times = np.linspace(spec.get("start", 0.0), t_end, num)
    if times[0] != 0.0:
        raise ConfigError("fig7 requires the trace to start at t = 0")
    terms = [variance_terms(d, float(t)) for t in times]
    pde = pde_oracle(d, t_end=t_end, dx=0.04, n_samples=num)
    values = np.array(
        [
            [b.v1c for b in terms],
            [b.v1osc for b in terms],
            [b.v2c for b in terms],
            [b.v2osc for b in terms],
            [b.v3 for b in terms],
            [b.total for b in terms],
            pde.raw,
        ]
    )
    trace = Trace(
        times=times,
        values=values,
        label="fig7",
        columns=("v1c", "v1osc", "v2c", "v2osc", "v3", "total", "pde_total"),
        header={"d": d},
    )
    return [Output("fig7.csv", trace)]


_FIGURES: dict[int, Callable[[dict], list[Output]]] = {
    1: _figure_1,
    2: _figure_2,
    3: _figure_3,
    4: _figure_4,
    5: _figure_5,
    7: _figure_7,
}


def run_figure(figure_id: int, config: dict, out_dir: Path) -> list[Path]:
    if figure_id == 6:
        raise ConfigError("schematic figure, no data")
    if figure_id not in _FIGURES:
        raise ConfigError(
            f"unknown figure id {figure_id}; choose from "
            f"{sorted(_FIGURES)} (6 is a schematic)"
        )
    started = _time.perf_counter()
    outputs = _FIGURES[figure_id](config)
    return _write_run(f"figure {figure_id}", config, outputs, out_dir, started)


# ---------------------------------------------------------------------------
# verification suites


class Check(NamedTuple):
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance


def _suite_identities() -> list[Check]:
    from kgzb.freefield import packet_velocity, subpacket_decompose
    from kgzb.operator_exact import TMAT, spin_block_identity
    from kgzb.waveform import packet_charge

    packet = GaussianPacket.isotropic(2.0, k0z=0.8)
    sub = subpacket_decompose(packet)
    dev = max(
        abs(sub.v_plus + sub.v_minus + sub.v_osc(t) - packet_velocity(packet, t))
        for t in (0.0, 2.0, 5.0)
    )
    checks = [Check("subpacket recomposition", dev, 1e-9)]
    checks.append(Check("charge normalization", abs(packet_charge(packet) - 1.0), 1e-8))
    checks.append(Check("two-space T nilpotent", float(np.max(np.abs(TMAT @ TMAT))), 1e-15))
    block = spin_block_identity(0.7)
    checks.append(
        Check("spin block completeness", float(np.max(np.abs(block - 4.0 * np.eye(2)))), 1e-12)
    )
    return checks


def _suite_equivalence() -> list[Check]:
    from kgzb.freefield import packet_velocity
    from kgzb.waveform import average_current

    packet = GaussianPacket.isotropic(2.0, k0z=0.8)
    dev = max(
        abs(average_current(packet, float(t)) - packet_velocity(packet, float(t)))
        for t in np.linspace(0.0, 6.0, 13)
    )
    return [Check("wave current vs velocity average", dev, 1e-8)]


def _suite_sumrules() -> list[Check]:
    from kgzb.magnetic import LandauContext, compute_u_table, sum_rules

    checks = []
    for b in FIELD_RATIOS:
        ctx = LandauContext(b)
        length = ctx.magnetic_length
        packet = GaussianPacket(
            widths=tuple(f * length for f in MAGNETIC_WIDTH_FACTORS),
            k0=(MAGNETIC_K0X_FACTOR / length, 0.0, 0.0),
        )
        s1, s2 = sum_rules(compute_u_table(packet, ctx), ctx)
        expected = -packet.k0[0] * length / math.sqrt(2.0)
        checks.append(Check(f"ladder sum rule b={b:g}", abs(s1 - expected), 1e-8))
        checks.append(Check(f"weight sum rule b={b:g}", abs(s2 - 1.0), 1e-8))
    return checks


def _suite_operator() -> list[Check]:
    from kgzb.magnetic import LandauContext
    from kgzb.operator_exact import (
        exact_current_element,
        heisenberg_current_element,
        random_pseudo_hermitian,
        verify_tau3_exponential,
        verify_unity_resolution,
    )

    ctx = LandauContext(0.5)
    dev = 0.0
    flip = 0.0
    for n in range(21):
        for k_z in (0.0, 0.7):
            for s in (1, -1):
                for z in (1, -1):
                    for t in (0.3, 2.0):
                        h = heisenberg_current_element(n, s, z, t, ctx, k_z=k_z)
                        plus = exact_current_element(n, s, z, t, ctx, k_z=k_z, eta=1)
                        minus = exact_current_element(n, s, z, t, ctx, k_z=k_z, eta=-1)
                        dev = max(dev, abs(plus - h), abs(minus - h))
                        flip = max(flip, abs(plus - minus))
    checks = [
        Check("exact vs Heisenberg current element", dev, 1e-12),
        Check("branch-parameter independence", flip, 1e-14),
        Check("unity resolution (n_max=100)", verify_unity_resolution(ctx, 100), 1e-6),
    ]
    rng = np.random.default_rng(20260826)
    exp_dev = max(
        verify_tau3_exponential(random_pseudo_hermitian(rng)) for _ in range(100)
    )
    checks.append(Check("pseudo-Hermitian exponential identity", exp_dev, 1e-12))
    return checks


def _suite_oracle() -> list[Check]:
    from kgzb.string_sim import pde_oracle, variance_terms

    dev = abs(riemann_oracle(lambda x: np.exp(-x * x), -12.0, 12.0) - math.sqrt(math.pi))
    checks = [Check("Riemann oracle on Gaussian integral", dev, 1e-8)]
    d = 5.0
    pde = pde_oracle(d, t_end=20.0, dx=0.04, n_samples=41)
    spectral = np.array([variance_terms(d, float(t)).total for t in pde.times])
    rel = float(np.max(np.abs(spectral - pde.raw) / np.abs(spectral)))
    checks.append(Check("string variance: spectral vs finite-difference", rel, 1e-2))
    return checks


_SUITES: dict[str, Callable[[], list[Check]]] = {
    "identities": _suite_identities,
    "equivalence": _suite_equivalence,
    "sumrules": _suite_sumrules,
    "operator": _suite_operator,
    "oracle": _suite_oracle,
}


def run_verify(suite: str) -> tuple[list[Check], bool]:
    if suite not in _SUITES:
        raise ConfigError(f"unknown suite {suite!r}; choose from {sorted(_SUITES)}")
    checks = _SUITES[suite]()
    return checks, all(c.passed for c in checks)


# ---------------------------------------------------------------------------
# sweeps

SWEEP_PARAMETERS = ("d", "k0z", "b-ratio")
SWEEP_OBSERVABLES = ("n-osc", "decay-time", "zb-ratio")


def _zb_weight_ratio(b: float) -> float:
    """Interband-to-intraband spectral weight ratio of the transverse
    velocity series at k_z = 0; grows with the field strength."""
    from kgzb.magnetic import LandauContext, compute_u_table, landau_energy

    ctx = LandauContext(b)
    length = ctx.magnetic_length
    packet = GaussianPacket(
        widths=tuple(f * length for f in MAGNETIC_WIDTH_FACTORS),
        k0=(MAGNETIC_K0X_FACTOR / length, 0.0, 0.0),
    )
    table = compute_u_table(packet, ctx)
    sub = np.diagonal(table.coefficients, offset=-1)
    n = np.arange(sub.size)
    c = np.abs(np.sqrt(n + 1.0) * sub)
    nu2_prod = 1.0 / (landau_energy(n, 0.0, ctx) * landau_energy(n + 1, 0.0, ctx))
    inter = float(np.sum(c * (1.0 - nu2_prod)))
    intra = float(np.sum(c * (1.0 + nu2_prod)))
    return inter / intra


def run_sweep(
    parameter: str, start: float, stop: float, num: int, observable: str, out_dir: Path
) -> list[Path]:
    if parameter not in SWEEP_PARAMETERS:
        raise ConfigError(f"unknown parameter {parameter!r}; choose from {SWEEP_PARAMETERS}")
    if observable not in SWEEP_OBSERVABLES:
        raise ConfigError(
            f"unknown observable {observable!r}; choose from {SWEEP_OBSERVABLES}"
        )
    if num < 2:
        raise ConfigError("sweep needs at least two grid points")
    if not (0.0 < start < stop):
        raise ConfigError("sweep range must satisfy 0 < start < stop")
    if observable == "zb-ratio" and parameter != "b-ratio":
        raise ConfigError("zb-ratio is defined only for a b-ratio sweep")
    if observable != "zb-ratio" and parameter == "b-ratio":
        raise ConfigError(f"{observable} is defined only for d or k0z sweeps")

    if parameter == "b-ratio":
        grid = np.geomspace(start, stop, num)
    else:
        grid = np.linspace(start, stop, num)

    from kgzb.freefield import decay_time, oscillation_count

    values = []
    for value in grid:
        if parameter == "b-ratio":
            values.append(_zb_weight_ratio(float(value)))
            continue
        if parameter == "d":
            packet = GaussianPacket.isotropic(float(value), k0z=0.8)
        else:
            packet = GaussianPacket.isotropic(2.0, k0z=float(value))
        fn = oscillation_count if observable == "n-osc" else decay_time
        values.append(fn(packet))

    config = {
        "parameter": parameter,
        "start": start,
        "stop": stop,
        "num": num,
        "observable": observable,
    }
    trace = Trace(
        times=grid,
        values=np.array(values),
        label="sweep",
        columns=(observable,),
        header={"parameter": parameter, "observable": observable},
    )
    started = _time.perf_counter()
    return _write_run(
        "sweep", config, [Output("sweep.csv", trace, time_column=parameter)], out_dir, started
    )


# ---------------------------------------------------------------------------
# click wiring


def _load_user_config(config_path: str | None) -> dict:
    if config_path is None:
        return {}
    return load_config(config_path)


def _guard(fn: Callable[[], int]) -> None:
    """Run a command body, mapping domain errors to the config exit code."""
    try:
        code = fn()
    except (ConfigError, DomainError, ConvergenceError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_CONFIG_ERROR)
    except Exception as exc:  # numeric machinery failed mid-run
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_VERIFY_FAILURE)
    sys.exit(code)


@click.group()
@click.version_option(__version__, prog_name="zb")
def main() -> None:
    """Numerical laboratory for trembling-motion wave-packet dynamics."""


@main.command()
@click.argument("figure_id", type=int)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", type=click.Path(file_okay=False))
def figure(figure_id: int, config_path: str | None, out_dir: str | None) -> None:
    """Reproduce the data behind figure FIGURE_ID (1-5, 7)."""

    def body() -> int:
        cfg = _load_user_config(config_path)
        paths = run_figure(figure_id, cfg, _resolve_out_dir(out_dir))
        for path in paths:
            click.echo(f"wrote {path}")
        return 0

    _guard(body)


@main.command()
@click.argument("suite")
def verify(suite: str) -> None:
    """Run a named verification suite and report pass/fail per check."""

    def body() -> int:
        checks, ok = run_verify(suite)
        for check in checks:
            status = "PASS" if check.passed else "FAIL"
            click.echo(
                f"{status}  {check.name}  max_deviation={check.deviation:.3e}"
                f"  tolerance={check.tolerance:.0e}"
            )
        return 0 if ok else EXIT_VERIFY_FAILURE

    _guard(body)


@main.command()
@click.option("--parameter", required=True, type=str)
@click.option("--start", required=True, type=float)
@click.option("--stop", required=True, type=float)
@click.option("--num", required=True, type=int)
@click.option("--observable", required=True, type=str)
@click.option("--out", "out_dir", type=click.Path(file_okay=False))
def sweep(
    parameter: str,
    start: float,
    stop: float,
    num: int,
    observable: str,
    out_dir: str | None,
) -> None:
    """Evaluate an observable over a parameter grid, one CSV + manifest."""

    def body() -> int:
        paths = run_sweep(
            parameter, start, stop, num, observable, _resolve_out_dir(out_dir)
        )
        for path in paths:
            click.echo(f"wrote {path}")
        return 0

    _guard(body)


@main.group()
def string() -> None:
    """String-on-an-elastic-substrate analogy utilities."""


@string.command("params")
@click.option("--linear-density", default=2.81e-2, show_default=True, type=float)
@click.option("--elastic-constant", default=5.0e7, show_default=True, type=float)
@click.option("--tension", default=1.0e3, show_default=True, type=float)
def string_params(linear_density: float, elastic_constant: float, tension: float) -> None:
    """Print the derived SI parameters of the mechanical analogue."""

    def body() -> int:
        from kgzb.string_sim import string_parameters

        sc = string_parameters(linear_density, elastic_constant, tension)
        rows = [
            ("wave speed u", sc.wave_speed, "m/s"),
            ("simulated Compton length", sc.sim_compton, "m"),
            ("rest frequency omega_0", sc.sim_freq, "1/s"),
            ("trembling angular frequency 2 omega_0", 2.0 * sc.sim_freq, "1/s"),
            ("characteristic time 1/omega_0", sc.sim_time, "s"),
            ("audible trembling frequency f_0", sc.audible_freq, "Hz"),
        ]
        for name, value, unit in rows:
            click.echo(f"{name:40s} {value:.6g} {unit}")
        return 0

    _guard(body)


@main.command()
@click.option("--b-ratio", required=True, type=float)
@click.option("--n-max", default=64, show_default=True, type=int)
@click.option("--out", "out_dir", type=click.Path(file_okay=False))
def table(b_ratio: float, n_max: int, out_dir: str | None) -> None:
    """Dump the Landau-level expansion coefficients of the default packet."""

    def body() -> int:
        from kgzb.magnetic import LandauContext, compute_u_table

        ctx = LandauContext(b_ratio)
        length = ctx.magnetic_length
        packet = GaussianPacket(
            widths=tuple(f * length for f in MAGNETIC_WIDTH_FACTORS),
            k0=(MAGNETIC_K0X_FACTOR / length, 0.0, 0.0),
        )
        tab = compute_u_table(packet, ctx, n_max=n_max)
        config = {"b_ratio": b_ratio, "n_max": n_max}
        coeff = tab.coefficients
        rows = np.nonzero(np.abs(coeff) > 0.0)
        trace = Trace(
            times=rows[0].astype(float),
            values=np.array([rows[1].astype(float), coeff[rows]]),
            label="utable",
            columns=("n", "u"),
            header={"b_ratio": b_ratio, "n_max": tab.n_max},
        )
        started = _time.perf_counter()
        paths = _write_run(
            "table", config, [Output("utable.csv", trace, time_column="m")],
            _resolve_out_dir(out_dir), started,
        )
        for path in paths:
            click.echo(f"wrote {path}")
        return 0

    _guard(body)


if __name__ == "__main__":  # pragma: no cover
    main()
