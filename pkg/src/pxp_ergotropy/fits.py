"""Least-squares scaling fits and thermodynamic-limit extrapolations."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FitResult",
    "fit_entropy_scaling",
    "fit_sq_over_q",
    "extrapolate_ergotropy_density",
]


@dataclass(frozen=True)
class FitResult:
    model: str
    params: dict
    stderr: dict
    r2: float
    residual_norm: float
    extras: dict = field(default_factory=dict)


def _canonical(pairs) -> np.ndarray:
    """Sort rows by (L, value) so permuted inputs refit to identical numbers."""
    pairs = np.asarray(pairs, dtype=float)
    order = np.lexsort((pairs[:, 1], pairs[:, 0]))
    return pairs[order]


def _least_squares(X: np.ndarray, y: np.ndarray, names, model: str, extras=None) -> FitResult:
    if X.shape[0] < X.shape[1]:
        raise ValueError(f"{model}: need at least {X.shape[1]} points, got {X.shape[0]}")
    if np.linalg.matrix_rank(X) < X.shape[1]:
        raise ValueError(f"{model}: rank-deficient design matrix")
    coef, *_ = np.linalg.lstsq(X, y, rcond=None)
    resid = y - X @ coef
    ss_res = float(np.dot(resid, resid))
    ss_tot = float(np.dot(y - y.mean(), y - y.mean()))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    dof = X.shape[0] - X.shape[1]
    if dof > 0:
        cov = ss_res / dof * np.linalg.inv(X.T @ X)
        errs = np.sqrt(np.diag(cov))
    else:
        errs = np.full(X.shape[1], np.nan)
    return FitResult(
        model=model,
        params=dict(zip(names, map(float, coef))),
        stderr=dict(zip(names, map(float, errs))),
        r2=float(min(max(r2, 0.0), 1.0)),
        residual_norm=float(np.sqrt(ss_res)),
        extras=extras or {},
    )


def fit_entropy_scaling(pairs) -> FitResult:
    """S_vN = a + v L + c ln(L)/3 over (L, S) pairs; needs >= 4 sizes."""
    pairs = _canonical(pairs)
    if pairs.shape[0] < 4:
        raise ValueError("entropy scaling fit needs at least 4 sizes")
    L, S = pairs[:, 0], pairs[:, 1]
    X = np.column_stack([np.ones_like(L), L, np.log(L) / 3.0])
    return _least_squares(X, S, ("a", "v", "c"), "entropy_scaling")


def fit_sq_over_q(pairs) -> FitResult:
    """Linear law S_vN^2 / Q = n + m L over (L, value) pairs; needs >= 3 sizes."""
    pairs = _canonical(pairs)
    if pairs.shape[0] < 3:
        raise ValueError("S^2/Q fit needs at least 3 sizes")
    L, r = pairs[:, 0], pairs[:, 1]
    X = np.column_stack([np.ones_like(L), L])
    return _least_squares(X, r, ("n", "m"), "sq_over_q")


def extrapolate_ergotropy_density(pairs, regime: str = "scar") -> FitResult:
    """Thermodynamic-limit estimate of W/L from finite sizes.

    scar regime:    W/L = w_inf + beta ln(L)^2 / L^2
    thermal regime: W/L = c / L^2 + d / L, with a companion intercept fit
                    quantifying how compatible the data is with w_inf = 0.
    """
    pairs = _canonical(pairs)
    if pairs.shape[0] < 4:
        raise ValueError("ergotropy extrapolation needs at least 4 sizes")
    L, w = pairs[:, 0], pairs[:, 1]
    if regime == "scar":
        X = np.column_stack([np.ones_like(L), np.log(L) ** 2 / L**2])
        out = _least_squares(X, w, ("w_inf", "beta"), "ergotropy_scar")
        return FitResult(
            out.model, out.params, out.stderr, out.r2, out.residual_norm,
            {"limit": out.params["w_inf"], "limit_se": out.stderr["w_inf"]},
        )
    if regime == "thermal":
        X = np.column_stack([1.0 / L**2, 1.0 / L])
        out = _least_squares(X, w, ("c", "d"), "ergotropy_thermal")
        # intercept-augmented companion fit reports the distance from w_inf = 0
        Xa = np.column_stack([np.ones_like(L), 1.0 / L**2, 1.0 / L])
        aug = _least_squares(Xa, w, ("w_inf", "c", "d"), "ergotropy_thermal_intercept")
        return FitResult(
            out.model, out.params, out.stderr, out.r2, out.residual_norm,
            {"limit": aug.params["w_inf"], "limit_se": aug.stderr["w_inf"]},
        )
    raise ValueError(f"unknown regime {regime!r}")
