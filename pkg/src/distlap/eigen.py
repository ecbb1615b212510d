"""Largest eigenpairs of the distance Laplacian and signless Laplacian.

The production path is power iteration with residual certification; the
cyclic Jacobi method supplies full spectra as an independent oracle and as
the fallback when power iteration stalls.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import NoConvergence, TooSmall
from .graph import Graph, build_L, build_Q, distance_stack, laplacian_stacks

__all__ = [
    "Method",
    "Ordering",
    "SpectralSummary",
    "FullSpectrum",
    "jacobi_spectrum",
    "power_iteration",
    "rho_L",
    "rho_Q",
    "compare_rho",
    "eps_cmp",
    "EPS_CMP",
    "BatchSpectra",
    "batch_rho",
    "rho_many",
]

EPS_CMP = 1e-8
RQ_TOL = 1e-13
RQ_STREAK = 3
RESIDUAL_TOL = 1e-9
MAX_ITER = 100_000
STALL_WINDOW = 1000
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


class Method(str, enum.Enum):
    POWER = "PowerIteration"
    JACOBI = "JacobiFull"


class Ordering(enum.Enum):
    LESS = -1
    TIE = 0
    GREATER = 1


@dataclass(frozen=True)
class SpectralSummary:
    rho: float
    vector: np.ndarray
    residual: float
    iterations: int
    method: Method


@dataclass(frozen=True)
class FullSpectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    off_diag_norm: float


def jacobi_spectrum(m) -> FullSpectrum:
    """Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps until the off-diagonal Frobenius norm is at most
    ``1e-12 * ||M||_F``; raises ``NoConvergence`` after 100 sweeps.
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    norm = math.sqrt(float(np.sum(a * a)))
    target = JACOBI_TOL * norm

    def off(a):
        return float(np.linalg.norm(a - np.diag(np.diag(a))))

    sweeps = 0
    while off(a) > target:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise NoConvergence(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return FullSpectrum(eigenvalues=w[order], eigenvectors=v[:, order], off_diag_norm=off(a))


def _start_vector(n: int) -> np.ndarray:
    x = 1.0 + np.arange(n) / n
    return x / np.linalg.norm(x)


def power_iteration(m, project_ones: bool = False, max_iter: int = MAX_ITER):
    """Dominant eigenpair of a symmetric matrix by power iteration.

    With ``project_ones`` the all-ones direction is removed at every step,
    which is how the largest distance Laplacian eigenvalue is isolated from
    the zero eigenvalue. Returns ``(rho, x, residual, iterations)`` or
    ``None`` when the iteration cap is hit.
    """
    a = np.asarray(m, dtype=float)
    n = a.shape[0]
    x = _start_vector(n)
    if project_ones:
        x = x - x.mean()
        x /= np.linalg.norm(x)
    y = a @ x
    rho = float(x @ y)
    streak = 0
    mark = math.inf
    for it in range(1, max_iter + 1):
        if project_ones:
            y = y - y.mean()
        norm = np.linalg.norm(y)
        if norm == 0.0:
            return None
        x = y / norm
        y = a @ x
        new = float(x @ y)
        residual = float(np.linalg.norm(y - new * x))
        if abs(new - rho) <= RQ_TOL * abs(new):
            streak += 1
        else:
            streak = 0
        rho = new
        tol = RESIDUAL_TOL * max(1.0, abs(rho))
        if streak >= RQ_STREAK and residual <= tol:
            return rho, x, residual, it
        if it % STALL_WINDOW == 0:
            if _stalled(residual, mark, tol, max_iter - it):
                return None
            mark = residual
    return None


def _stalled(residual, mark, tol, remaining):
    """True when the residual decay seen over the last window cannot reach
    ``tol`` within the remaining iterations. Works elementwise on arrays."""
    with np.errstate(divide="ignore", invalid="ignore"):
        rate = np.log(np.asarray(residual) / mark) / STALL_WINDOW
        needed = np.log(tol / np.asarray(residual)) / rate
    return (residual > tol) & np.isfinite(mark) & ((rate >= 0) | (needed > remaining))


def _summary(m, kind: str) -> SpectralSummary:
    a = np.asarray(m, dtype=float)
    result = power_iteration(a, project_ones=(kind == "L"))
    if result is not None:
        rho, x, residual, iterations = result
        method = Method.POWER
    else:
        spec = jacobi_spectrum(a)
        rho = float(spec.eigenvalues[-1])
        x = spec.eigenvectors[:, -1].copy()
        x /= np.linalg.norm(x)
        residual = float(np.linalg.norm(a @ x - rho * x))
        iterations = 0
        method = Method.JACOBI
    x = _fix_sign(x, kind)
    x.setflags(write=False)
    return SpectralSummary(rho=rho, vector=x, residual=residual, iterations=iterations, method=method)


def _fix_sign(x: np.ndarray, kind: str) -> np.ndarray:
    if kind == "Q":
        return -x if x.sum() < 0 else x
    nz = np.flatnonzero(np.abs(x) > 1e-12)
    if nz.size and x[nz[0]] < 0:
        return -x
    return x


def rho_L(g: Graph) -> SpectralSummary:
    """Distance Laplacian spectral radius with its unit eigenvector (orthogonal to 1)."""
    if g.n < 2:
        raise TooSmall("rho_L needs at least two vertices")
    return _summary(build_L(g), "L")


def rho_Q(g: Graph) -> SpectralSummary:
    """Distance signless Laplacian spectral radius with the positive Perron vector."""
    if g.n < 2:
        raise TooSmall("rho_Q needs at least two vertices")
    return _summary(build_Q(g), "Q")


def eps_cmp(a: float, b: float) -> float:
    return EPS_CMP * max(1.0, abs(a), abs(b))


Rho = Union[float, SpectralSummary]


def compare_rho(a: Rho, b: Rho) -> Ordering:
    """Order two spectral radii, reporting ``TIE`` inside the comparison tolerance."""
    ra = a.rho if isinstance(a, SpectralSummary) else float(a)
    rb = b.rho if isinstance(b, SpectralSummary) else float(b)
    if abs(ra - rb) <= eps_cmp(ra, rb):
        return Ordering.TIE
    return Ordering.GREATER if ra > rb else Ordering.LESS


@dataclass(frozen=True)
class BatchSpectra:
    rho: np.ndarray
    residual: np.ndarray
    iterations: np.ndarray
    fallback: np.ndarray


def batch_rho(mats: np.ndarray, kind: str, max_iter: int = MAX_ITER) -> BatchSpectra:
    """Largest eigenvalues of a stack of symmetric matrices, shape ``(B, n, n)``.

    Runs the same power iteration and stopping rule as :func:`rho_L` /
    :func:`rho_Q` on every matrix at once, retiring each one as soon as it
    converges. Matrices still running at the cap go through Jacobi.
    ``kind`` is ``"L"`` (project out the all-ones direction) or ``"Q"``.
    """
    a = np.asarray(mats, dtype=float)
    b, n = a.shape[0], a.shape[1]
    rho_out = np.zeros(b)
    res_out = np.zeros(b)
    it_out = np.zeros(b, dtype=np.int64)
    fallback = np.zeros(b, dtype=bool)
    if b == 0:
        return BatchSpectra(rho_out, res_out, it_out, fallback)
    project = kind == "L"
    x = np.tile(_start_vector(n), (b, 1))
    if project:
        x -= x.mean(axis=1, keepdims=True)
        x /= np.linalg.norm(x, axis=1, keepdims=True)
    idx = np.arange(b)
    y = np.einsum("bij,bj->bi", a, x)
    rho = np.einsum("bi,bi->b", x, y)
    streak = np.zeros(b, dtype=np.int64)
    mark = np.full(b, np.inf)
    for it in range(1, max_iter + 1):
        if project:
            y -= y.mean(axis=1, keepdims=True)
        norm = np.linalg.norm(y, axis=1, keepdims=True)
        dead = norm[:, 0] == 0.0
        norm[dead] = 1.0
        x = y / norm
        y = np.einsum("bij,bj->bi", a, x)
        new = np.einsum("bi,bi->b", x, y)
        residual = np.linalg.norm(y - new[:, None] * x, axis=1)
        close = np.abs(new - rho) <= RQ_TOL * np.abs(new)
        streak = np.where(close, streak + 1, 0)
        rho = new
        tol = RESIDUAL_TOL * np.maximum(1.0, np.abs(rho))
        done = (streak >= RQ_STREAK) & (residual <= tol)
        done &= ~dead
        if it % STALL_WINDOW == 0:
            dead |= _stalled(residual, mark, tol, max_iter - it) & ~done
            mark = residual
        if dead.any():
            fallback[idx[dead]] = True
        if done.any():
            rho_out[idx[done]] = rho[done]
            res_out[idx[done]] = residual[done]
            it_out[idx[done]] = it
        keep = ~(done | dead)
        if not keep.all():
            a, x, y, rho, streak, mark, idx = (
                a[keep], x[keep], y[keep], rho[keep], streak[keep], mark[keep], idx[keep])
            if idx.size == 0:
                break
    fallback[idx] = True
    for i in np.flatnonzero(fallback):
        spec = jacobi_spectrum(mats[i])
        rho_out[i] = spec.eigenvalues[-1]
        v = spec.eigenvectors[:, -1]
        res_out[i] = np.linalg.norm(np.asarray(mats[i], dtype=float) @ v - rho_out[i] * v)
        it_out[i] = 0
    return BatchSpectra(rho_out, res_out, it_out, fallback)


def rho_many(graphs, kind: str) -> np.ndarray:
    """Spectral radii of many graphs, batched by order; ``kind`` is ``"L"`` or ``"Q"``."""
    graphs = list(graphs)
    out = np.zeros(len(graphs))
    by_order: dict[int, list[int]] = {}
    for i, g in enumerate(graphs):
        by_order.setdefault(g.n, []).append(i)
    for n, idx in sorted(by_order.items()):
        if n < 2:
            raise TooSmall("spectral radii need at least two vertices")
        adj = np.stack([graphs[i].adjacency_matrix() for i in idx])
        lap, sig = laplacian_stacks(distance_stack(adj))
        out[idx] = batch_rho(lap if kind == "L" else sig, kind).rho
    return out
