"""Render paper-style figures from the batch CSV outputs.

The figure layer performs no physics: every plotted number is read from a
CSV row, with nothing beyond axis transforms (ratios against the L column,
squaring an entropy column) applied here.  Fit curves come from the fit
output files, never recomputed.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = ["render", "FIGURE_IDS", "SchemaError", "load_csv"]

EIGEN_HEADER = "L,lambda,thermal_index,E,W,Q,S_vN,f_Q,I2,I3"
TRAJ_HEADER = "L,theta,t,E_A,W,Q,S_vN"
SUMMARY_HEADER = "L,theta,W_bar,Q_bar,S_bar,max_dE_A"
ANALYTICS_HEADER = "theta,f,lambda1,lambda2,xi,h,p1,p2,p3,p4,e_analytic,e_numeric,L_numeric"
SEPARATION_HEADER = "L,rank,fsa_weight,z2_overlap,S_half,T_residual,I_residual,is_scar"
FIT_SQ_HEADER = "lambda,n,m,r2,resid"
FIT_LIMIT_HEADER = "lambda,regime,w_inf,w_inf_se,r2,resid"

FIGURE_IDS = ("fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "sep", "analytics")

FIT2B_LAMBDAS = (0.0, 0.2, 0.3, 1.0)


class SchemaError(ValueError):
    """An input CSV does not conform to the documented schema."""


class Table:
    def __init__(self, columns: dict, path: str):
        self.columns = columns
        self.path = path

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    def rows(self) -> int:
        return len(next(iter(self.columns.values())))


def load_csv(path, expected_header: str) -> Table:
    """Read a CSV and verify it carries the expected schema and data."""
    text = Path(path).read_text().strip()
    if not text:
        raise SchemaError(f"{path}: file is empty, expected header {expected_header!r}")
    lines = text.splitlines()
    names = lines[0].split(",")
    expected = expected_header.split(",")
    missing = [c for c in expected if c not in names]
    if missing:
        raise SchemaError(
            f"{path}: missing columns {missing}; expected schema {expected_header!r}"
        )
    if len(lines) < 2:
        raise SchemaError(f"{path}: no data rows")
    raw = []
    for line in lines[1:]:
        toks = line.split(",")
        raw.append([_tofloat(t) for t in toks])
    data = np.array(raw)
    return Table({name: data[:, j] for j, name in enumerate(names)}, str(path))


def _tofloat(tok: str) -> float:
    try:
        return float(tok)
    except ValueError:
        return np.nan


def _classify(paths, expected_header: str, minimum: int = 1):
    tables = [load_csv(p, expected_header) for p in paths]
    if len(tables) < minimum:
        raise SchemaError(f"need at least {minimum} input file(s) with schema {expected_header!r}")
    return tables


def _split_inputs(paths, headers):
    """Partition input files by which known schema each one matches."""
    groups = {h: [] for h in headers}
    for p in paths:
        names = Path(p).read_text().strip().splitlines()[0] if Path(p).read_text().strip() else ""
        for h in headers:
            if set(h.split(",")).issubset(set(names.split(","))):
                groups[h].append(p)
                break
        else:
            raise SchemaError(f"{p}: header {names!r} matches none of the expected schemas {headers}")
    return groups


def _mean_rows(table: Table) -> dict:
    mask = table["thermal_index"] == -1
    return {k: v[mask] for k, v in table.columns.items()}


def _style():
    plt.rcParams.update(
        {
            "figure.dpi": 120,
            "savefig.dpi": 150,
            "font.size": 9,
            "axes.grid": True,
            "grid.alpha": 0.3,
            "svg.hashsalt": "pxp-figures",
        }
    )


def _save(fig, output):
    meta = {"Date": None} if str(output).endswith(".svg") else {}
    fig.savefig(output, metadata=meta)
    plt.close(fig)


# ---------------------------------------------------------------------------
# individual figures
# ---------------------------------------------------------------------------

def _fig2a(inputs, output):
    groups = _split_inputs(inputs, (EIGEN_HEADER, FIT_LIMIT_HEADER))
    tables = _classify(groups[EIGEN_HEADER], EIGEN_HEADER)
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    for t in tables:
        m = _mean_rows(t)
        L = m["L"][0]
        order = np.argsort(m["lambda"])
        ax.plot(m["lambda"][order], m["W"][order] / L, "o-", ms=3, label=f"L={int(L)}")
    for p in groups[FIT_LIMIT_HEADER]:
        load_csv(p, FIT_LIMIT_HEADER)   # schema check
        scar_rows = _scar_rows(p)
        if scar_rows is None:
            continue
        lam, winf = scar_rows
        order = np.argsort(lam)
        ax.plot(lam[order], winf[order], "k--", lw=1.2, label="extrapolated")
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel(r"$W/L$")
    ax.legend(fontsize=7)
    fig.tight_layout()
    _save(fig, output)


def _scar_rows(path):
    """(lambda, w_inf) arrays of the scar-form rows in a fit-limit CSV."""
    lines = Path(path).read_text().strip().splitlines()
    names = lines[0].split(",")
    i_lam, i_reg, i_w = names.index("lambda"), names.index("regime"), names.index("w_inf")
    lam, winf = [], []
    for line in lines[1:]:
        toks = line.split(",")
        if toks[i_reg] == "scar":
            lam.append(float(toks[i_lam]))
            winf.append(float(toks[i_w]))
    if not lam:
        return None
    return np.array(lam), np.array(winf)


def _fig2b(inputs, output):
    groups = _split_inputs(inputs, (EIGEN_HEADER, FIT_SQ_HEADER))
    tables = _classify(groups[EIGEN_HEADER], EIGEN_HEADER)
    fits = {}
    for p in groups[FIT_SQ_HEADER]:
        ft = load_csv(p, FIT_SQ_HEADER)
        for lam, n, m in zip(ft["lambda"], ft["n"], ft["m"]):
            fits[round(lam, 6)] = (n, m)
    fig, ax = plt.subplots(figsize=(4.0, 3.2))
    cmap = plt.get_cmap("viridis")
    shown = [l for l in FIT2B_LAMBDAS if any(np.isclose(_mean_rows(t)["lambda"], l).any() for t in tables)]
    if not shown:
        shown = sorted({round(l, 6) for t in tables for l in _mean_rows(t)["lambda"]})[:4]
    for j, lam in enumerate(shown):
        Q, S2, Ls = [], [], []
        for t in tables:
            m = _mean_rows(t)
            sel = np.isclose(m["lambda"], lam)
            if sel.any():
                Q.append(m["Q"][sel][0])
                S2.append(m["S_vN"][sel][0] ** 2)
                Ls.append(m["L"][sel][0])
        color = cmap(j / max(len(shown) - 1, 1))
        order = np.argsort(Q)
        Q, S2, Ls = np.array(Q)[order], np.array(S2)[order], np.array(Ls)[order]
        label = rf"$\lambda$={lam:g}"
        key = round(lam, 6)
        if key in fits:
            n, m = fits[key]
            ax.plot(Q, (n + m * Ls) * Q, "-", color=color, lw=1.0, label=label + rf", m={m:.3f}")
        ax.plot(Q, S2, "o", color=color, ms=4, label=None if key in fits else label)
    ax.set_xlabel(r"$Q$")
    ax.set_ylabel(r"$S_{\mathrm{vN}}^2$")
    ax.legend(fontsize=7)
    fig.tight_layout()
    _save(fig, output)


def _fig2c(inputs, output):
    tables = _classify(inputs, EIGEN_HEADER)
    fig, ax = plt.subplots(figsize=(4.0, 3.2))
    for t in tables:
        m = _mean_rows(t)
        order = np.argsort(m["lambda"])
        ax.plot(m["lambda"][order], m["f_Q"][order], "s-", ms=3, label=f"L={int(m['L'][0])}")
    ax.set_xlabel(r"$\lambda$")
    ax.set_ylabel(r"$f_Q$")
    ax.legend(fontsize=7)
    fig.tight_layout()
    _save(fig, output)


def _fig3a(inputs, output):
    tables = _classify(inputs, TRAJ_HEADER)
    fig, ax = plt.subplots(figsize=(4.6, 3.2))
    for t in tables:
        theta = t["theta"][0]
        ax.plot(t["t"], t["W"], lw=0.9, label=rf"$\theta$={theta:.3f}")
    ax.set_xlabel(r"$t$")
    ax.set_ylabel(r"$W(t)$")
    ax.set_xscale("symlog", linthresh=1.0)
    ax.legend(fontsize=7)
    fig.tight_layout()
    _save(fig, output)


def _summary_panel(inputs, output, column, ylabel):
    tables = _classify(inputs, SUMMARY_HEADER)
    fig, ax = plt.subplots(figsize=(4.0, 3.2))
    for t in tables:
        for L in sorted(set(t["L"])):
            sel = t["L"] == L
            order = np.argsort(t["theta"][sel])
            ax.plot(t["theta"][sel][order], t[column][sel][order], "o-", ms=3, label=f"L={int(L)}")
    ax.set_xlabel(r"$\theta$")
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=7)
    fig.tight_layout()
    _save(fig, output)


def _sep(inputs, output):
    tables = _classify(inputs, SEPARATION_HEADER)
    fig, axes = plt.subplots(1, 2, figsize=(6.4, 2.8))
    for t in tables:
        L = int(t["L"][0])
        axes[0].semilogy(t["rank"], np.clip(t["fsa_weight"], 1e-18, None), "o", ms=3, label=f"L={L}")
        axes[1].semilogy(t["rank"], np.clip(t["z2_overlap"], 1e-18, None), "s", ms=3, label=f"L={L}")
    axes[0].set_xlabel("rank")
    axes[0].set_ylabel("tower weight")
    axes[1].set_xlabel("rank")
    axes[1].set_ylabel(r"$|\langle Z_2|v\rangle|^2$")
    axes[0].legend(fontsize=7)
    fig.tight_layout()
    _save(fig, output)


def _analytics(inputs, output):
    tables = _classify(inputs, ANALYTICS_HEADER)
    fig, axes = plt.subplots(1, 2, figsize=(6.8, 2.8))
    for t in tables:
        order = np.argsort(t["theta"])
        th = t["theta"][order]
        axes[0].plot(th, t["e_analytic"][order], "-", lw=1.2, label="analytic")
        axes[0].plot(th, t["e_numeric"][order], "o", ms=3, mfc="none",
                     label=f"numeric L={int(t['L_numeric'][0])}")
        for name in ("p1", "p2", "p3", "p4"):
            axes[1].plot(th, t[name][order], lw=1.0, label=name)
    axes[0].set_xlabel(r"$\theta$")
    axes[0].set_ylabel(r"$E/L$")
    axes[0].legend(fontsize=7)
    axes[1].set_xlabel(r"$\theta$")
    axes[1].set_ylabel("two-cut spectrum")
    axes[1].legend(fontsize=6)
    fig.tight_layout()
    _save(fig, output)


_RENDERERS = {
    "fig2a": _fig2a,
    "fig2b": _fig2b,
    "fig2c": _fig2c,
    "fig3a": _fig3a,
    "fig3b": lambda i, o: _summary_panel(i, o, "W_bar", r"$\bar{W}$"),
    "fig3c": lambda i, o: _summary_panel(i, o, "S_bar", r"$\bar{S}_{\mathrm{vN}}$"),
    "sep": _sep,
    "analytics": _analytics,
}


def render(figure_id: str, inputs, output) -> Path:
    """Render one figure id from CSV inputs; raises before writing on bad input."""
    if figure_id not in _RENDERERS:
        raise ValueError(f"unknown figure id {figure_id!r}; known: {FIGURE_IDS}")
    if not inputs:
        raise SchemaError("no input CSVs given")
    _style()
    _RENDERERS[figure_id](list(inputs), output)
    return Path(output)
