"""Batch experiments: eigenstate study, quenches, analytics, separation, fits.

Every experiment writes plain CSV files with pinned headers plus a JSON
manifest carrying the configuration echo, the seed, wall-clock, and a sha256
checksum per output, so a rerun with the same config and seed reproduces the
numerical columns byte for byte.

The `lambda` column of eigenstudy outputs is the mixing parameter of the
figure convention: 0 is the pure scar, 1 the pure thermal state (the
interpolation constructor itself uses the opposite orientation).
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .analytics import transfer_analytics
from .dynamics import quench_series, steady_average
from .entanglement import entropy_of, mutual_information, qfi_density, tripartite_mi
from .ergotropy import ergotropy
from .fits import extrapolate_ergotropy_density, fit_entropy_scaling, fit_sq_over_q
from .hilbert import (
    build_chain_basis,
    half_chain_geometry,
    inversion_permutation,
    quarter_intervals,
    translation_permutation,
)
from .operators import pxp_hamiltonian
from .scars import fsa_basis, separate_scar
from .spectra import dense_eigh, shell_stability_check, zero_energy_shell
from .states import StateVector, interpolate, rotated_state, z2_config

__all__ = [
    "RunConfig",
    "run_eigenstudy",
    "run_quench",
    "run_analytics",
    "run_separation",
    "refit",
    "parse_config_file",
    "EIGEN_HEADER",
    "TRAJ_HEADER",
    "SUMMARY_HEADER",
    "ANALYTICS_HEADER",
    "SEPARATION_HEADER",
]

EIGEN_HEADER = "L,lambda,thermal_index,E,W,Q,S_vN,f_Q,I2,I3"
TRAJ_HEADER = "L,theta,t,E_A,W,Q,S_vN"
SUMMARY_HEADER = "L,theta,W_bar,Q_bar,S_bar,max_dE_A"
ANALYTICS_HEADER = "theta,f,lambda1,lambda2,xi,h,p1,p2,p3,p4,e_analytic,e_numeric,L_numeric"
SEPARATION_HEADER = "L,rank,fsa_weight,z2_overlap,S_half,T_residual,I_residual,is_scar"
FIT_SQ_HEADER = "lambda,n,m,r2,resid,m_drop_smallest"
FIT_ENTROPY_HEADER = "lambda,a,v,c,r2,resid,v_drop_smallest"
FIT_LIMIT_HEADER = "lambda,regime,w_inf,w_inf_se,r2,resid,w_inf_drop_smallest"


@dataclass
class RunConfig:
    experiment: str = ""
    L_list: tuple = (10, 12, 14, 16)
    lambda_grid: tuple = tuple(np.linspace(0.0, 1.0, 21))
    theta_grid: tuple = tuple(np.linspace(0.0, np.pi / 2, 9))
    dt: float = 0.5
    t_max: float = 1000.0
    window: tuple = (100.0, 1000.0)
    shell_tol: float = 1e-10
    max_thermal: int = 200
    seed: int = 1
    out_dir: str = "runs"
    L_numeric: int = 16
    workers: int = 1

    def validate(self, quench: bool = False):
        if not self.L_list or not self.lambda_grid or not self.theta_grid:
            raise ValueError("grids must be nonempty")
        for L in self.L_list:
            if L % 2:
                raise ValueError(f"L = {L} must be even")
            if quench and L % 4:
                raise ValueError(f"quench sizes must be multiples of 4, got {L}")


def _fmt(x) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: Path, header: str, rows) -> None:
    lines = [header]
    for row in rows:
        lines.append(",".join(_fmt(v) if not isinstance(v, str) else v for v in row))
    path.write_text("\n".join(lines) + "\n")


def _config_digest(config: RunConfig) -> str:
    blob = json.dumps(asdict(config), sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


class _Manifest:
    """Sidecar record written before the run and finalized after it."""

    def __init__(self, config: RunConfig, experiment: str):
        self.out = Path(config.out_dir)
        self.out.mkdir(parents=True, exist_ok=True)
        self.path = self.out / f"{experiment}_manifest.json"
        self.record = {
            "experiment": experiment,
            "artifact_version": __version__,
            "run_id": _config_digest(config),
            "config": asdict(config),
            "status": "running",
            "started_unix": time.time(),
            "outputs": {},
        }
        self._flush()

    def _flush(self):
        self.path.write_text(json.dumps(self.record, indent=2, default=str) + "\n")

    def finalize(self, paths):
        for p in paths:
            digest = hashlib.sha256(Path(p).read_bytes()).hexdigest()
            self.record["outputs"][Path(p).name] = digest
        self.record["status"] = "done"
        self.record["wall_clock_s"] = time.time() - self.record["started_unix"]
        self._flush()


# ---------------------------------------------------------------------------
# eigenstate study
# ---------------------------------------------------------------------------

def _separated_shell(L: int, shell_tol: float, max_thermal: int, seed: int):
    basis = build_chain_basis(L, "periodic")
    dec = dense_eigh(pxp_hamiltonian(basis))
    shell_stability_check(dec)
    shell = zero_energy_shell(dec, shell_tol)
    split = separate_scar(dec.eigenvectors[:, shell], fsa_basis(L))
    thermal = split.thermal
    if len(thermal) > max_thermal:
        rng = np.random.default_rng([seed, L])
        pick = np.sort(rng.choice(len(thermal), size=max_thermal, replace=False))
        thermal = [thermal[int(i)] for i in pick]
    return basis, split, thermal


def _eigen_observables(state: StateVector, geometry, quarters):
    qa, qb, qc, _ = quarters
    br = ergotropy(state, geometry)
    return (
        br.E,
        br.W,
        br.Q,
        entropy_of(state, geometry),
        qfi_density(state),
        mutual_information(state, [qa], [qc]),
        tripartite_mi(state, [qa], [qb], [qc]),
    )


def run_eigenstudy(config: RunConfig) -> list[Path]:
    config.validate()
    manifest = _Manifest(config, "eigenstudy")
    out = Path(config.out_dir)
    paths = []
    mean_table = {}        # (L, lam) -> dict of ensemble means
    for L in config.L_list:
        basis, split, thermal = _separated_shell(L, config.shell_tol, config.max_thermal, config.seed)
        geometry = half_chain_geometry(L)
        quarters = quarter_intervals(L)
        rows = []
        for lam in config.lambda_grid:
            block = []
            for n, th_state in enumerate(thermal):
                state = interpolate(split.scar, th_state, 1.0 - lam)
                obs = _eigen_observables(state, geometry, quarters)
                block.append(obs)
                if lam == 0.0:
                    break   # the scar does not depend on the thermal index
            if lam == 0.0 and len(thermal) > 1:
                block = block * len(thermal)
            for n, obs in enumerate(block):
                rows.append((L, lam, n) + obs)
            means = tuple(np.mean([b[i] for b in block]) for i in range(7))
            rows.append((L, lam, -1) + means)
            mean_table[(L, float(lam))] = means
        path = out / f"eigenstudy_L{L}.csv"
        _write_csv(path, EIGEN_HEADER, rows)
        paths.append(path)
    paths.extend(_write_fits(out, config, mean_table))
    manifest.finalize(paths)
    return paths


def _write_fits(out: Path, config: RunConfig, mean_table) -> list[Path]:
    """Fit files derived from ensemble means; skipped with < 4 sizes.

    Each row also reports the headline coefficient refit with the smallest
    size dropped, so sensitivity to the fit window stays visible.
    """
    sizes = sorted({L for (L, _) in mean_table})
    if len(sizes) < 4:
        return []
    lams = sorted({lam for (_, lam) in mean_table})
    sq_rows, ent_rows, lim_rows = [], [], []
    for lam in lams:
        ws = [(L, mean_table[(L, lam)][1] / L) for L in sizes]
        ss = [(L, mean_table[(L, lam)][3]) for L in sizes]
        rq = [(L, mean_table[(L, lam)][3] ** 2 / mean_table[(L, lam)][2]) for L in sizes]
        fq = fit_sq_over_q(rq)
        m_drop = fit_sq_over_q(rq[1:]).params["m"] if len(rq) > 3 else np.nan
        sq_rows.append((lam, fq.params["n"], fq.params["m"], fq.r2, fq.residual_norm, m_drop))
        fe = fit_entropy_scaling(ss)
        v_drop = fit_entropy_scaling(ss[1:]).params["v"] if len(ss) > 4 else np.nan
        ent_rows.append(
            (lam, fe.params["a"], fe.params["v"], fe.params["c"], fe.r2, fe.residual_norm, v_drop)
        )
        fl = extrapolate_ergotropy_density(ws, "scar")
        w_drop = (
            extrapolate_ergotropy_density(ws[1:], "scar").extras["limit"] if len(ws) > 4 else np.nan
        )
        lim_rows.append(
            (lam, "scar", fl.extras["limit"], fl.extras["limit_se"], fl.r2, fl.residual_norm, w_drop)
        )
        if lam == lams[-1] and lam > 0.99:
            ft = extrapolate_ergotropy_density(ws, "thermal")
            lim_rows.append(
                (lam, "thermal", ft.extras["limit"], ft.extras["limit_se"], ft.r2, ft.residual_norm, np.nan)
            )
    paths = []
    for name, header, rows in (
        ("fit_sq_over_q.csv", FIT_SQ_HEADER, sq_rows),
        ("fit_entropy.csv", FIT_ENTROPY_HEADER, ent_rows),
        ("fit_ergotropy_limit.csv", FIT_LIMIT_HEADER, lim_rows),
    ):
        path = out / name
        _write_csv(path, header, rows)
        paths.append(path)
    return paths


# ---------------------------------------------------------------------------
# quench dynamics
# ---------------------------------------------------------------------------

def run_quench(config: RunConfig) -> list[Path]:
    config.validate(quench=True)
    manifest = _Manifest(config, "quench")
    out = Path(config.out_dir)
    cells = [(L, i, th) for L in config.L_list for i, th in enumerate(config.theta_grid)]

    def one(cell):
        L, i, th = cell
        try:
            return cell, quench_series(L, th, t_max=config.t_max, dt=config.dt)
        except RuntimeError as err:       # Krylov non-convergence kills one cell only
            return cell, err

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            done = dict(pool.map(lambda c: one(c), cells))
    else:
        done = dict(one(c) for c in cells)

    paths, summary = [], []
    failed = {}
    for L, i, th in cells:
        series = done[(L, i, th)]
        if isinstance(series, Exception):
            failed[f"L{L}_th{i:02d}"] = str(series)
            continue
        rows = [
            (L, th, t, series.E_A[j], series.W[j], series.Q[j], series.S_vN[j])
            for j, t in enumerate(series.times)
        ]
        path = out / f"quench_traj_L{L}_th{i:02d}.csv"
        _write_csv(path, TRAJ_HEADER, rows)
        paths.append(path)
        w, q, s = steady_average(series, config.window)
        max_dev = float(np.abs(series.E_A - series.E_A[0]).max())
        summary.append((L, th, w, q, s, max_dev))
    spath = out / "quench_summary.csv"
    _write_csv(spath, SUMMARY_HEADER, summary)
    paths.append(spath)
    if failed:
        manifest.record["failed_cells"] = failed
    manifest.finalize(paths)
    return paths


# ---------------------------------------------------------------------------
# transfer-matrix analytics
# ---------------------------------------------------------------------------

def run_analytics(config: RunConfig) -> list[Path]:
    manifest = _Manifest(config, "analytics")
    out = Path(config.out_dir)
    L = config.L_numeric
    basis = build_chain_basis(L, "periodic")
    H = pxp_hamiltonian(basis)
    rows = []
    for th in config.theta_grid:
        ana = transfer_analytics(th, L)
        st, _ = rotated_state(basis, th)
        e_num = float(np.vdot(st.amplitudes, H @ st.amplitudes).real) / L
        rows.append(
            (th, ana.f, ana.lambda1, ana.lambda2, ana.xi, ana.h)
            + ana.two_cut
            + (ana.energy_density, e_num, L)
        )
    path = out / "analytics.csv"
    _write_csv(path, ANALYTICS_HEADER, rows)
    manifest.finalize([path])
    return [path]


# ---------------------------------------------------------------------------
# scar separation report
# ---------------------------------------------------------------------------

def run_separation(config: RunConfig) -> list[Path]:
    config.validate()
    manifest = _Manifest(config, "separation")
    out = Path(config.out_dir)
    paths = []
    for L in config.L_list:
        basis, split, _ = _separated_shell(L, config.shell_tol, config.max_thermal, config.seed)
        geometry = half_chain_geometry(L)
        tperm = translation_permutation(basis)
        iperm = inversion_permutation(basis)
        z2_idx = basis.index(z2_config(L))
        rows = []
        members = [split.scar] + split.thermal
        for rank, state in enumerate(members):
            v = state.amplitudes
            tv = np.zeros_like(v)
            tv[tperm] = v
            iv = np.zeros_like(v)
            iv[iperm] = v
            t_res = min(np.linalg.norm(tv - v), np.linalg.norm(tv + v))
            i_res = min(np.linalg.norm(iv - v), np.linalg.norm(iv + v))
            rows.append(
                (
                    L,
                    rank,
                    split.fsa_weights[rank],
                    float(np.abs(v[z2_idx]) ** 2),
                    entropy_of(state, geometry),
                    t_res,
                    i_res,
                    int(rank == 0),
                )
            )
        path = out / f"separation_L{L}.csv"
        _write_csv(path, SEPARATION_HEADER, rows)
        paths.append(path)
    manifest.finalize(paths)
    return paths


# ---------------------------------------------------------------------------
# refitting from existing outputs
# ---------------------------------------------------------------------------

def read_csv(path) -> tuple[list[str], np.ndarray]:
    """Header names and a float matrix (strings mapped to nan)."""
    lines = Path(path).read_text().strip().splitlines()
    header = lines[0].split(",")
    data = []
    for line in lines[1:]:
        row = []
        for tok in line.split(","):
            try:
                row.append(float(tok))
            except ValueError:
                row.append(np.nan)
        data.append(row)
    return header, np.array(data)


def refit(config: RunConfig, csv_paths) -> list[Path]:
    """Recompute the fit files from existing eigenstudy CSVs (mean rows)."""
    manifest = _Manifest(config, "fit")
    mean_table = {}
    for path in csv_paths:
        header, data = read_csv(path)
        if header != EIGEN_HEADER.split(","):
            raise ValueError(f"{path}: expected eigenstudy schema {EIGEN_HEADER!r}")
        for row in data:
            if int(row[2]) == -1:
                mean_table[(int(row[0]), float(row[1]))] = tuple(row[3:])
    paths = _write_fits(Path(config.out_dir), config, mean_table)
    if not paths:
        raise ValueError("need mean rows for at least 4 sizes to refit")
    manifest.finalize(paths)
    return paths


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

def _parse_grid(text: str):
    if ":" in text:
        start, stop, num = text.split(":")
        return tuple(np.linspace(float(start), float(stop), int(num)))
    return tuple(float(t) for t in text.split(",") if t)


def parse_config_file(path) -> dict:
    """key = value lines mirroring RunConfig; '#' starts a comment."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key in ("L", "L_list"):
            out["L_list"] = tuple(int(v) for v in value.split(",") if v)
        elif key in ("lambda_grid", "theta_grid"):
            out[key] = _parse_grid(value)
        elif key == "window":
            a, b = value.split(",")
            out["window"] = (float(a), float(b))
        elif key in ("dt", "t_max", "shell_tol"):
            out[key] = float(value)
        elif key in ("max_thermal", "seed", "workers", "L_numeric"):
            out[key] = int(value)
        elif key in ("out", "out_dir"):
            out["out_dir"] = value
        else:
            raise ValueError(f"unknown config key {key!r}")
    return out
