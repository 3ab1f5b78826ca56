"""Pure numpy implementation of the hot comparison kernels.

The compiled backend (``_speed.pyx``) implements the same functions with
the same floating-point evaluation order; reductions here are written as
explicit columnwise accumulations (not BLAS calls) so both backends make
bit-identical decisions.
"""

from __future__ import annotations

import numpy as np


def dominates(a, b) -> bool:
    """Strict Pareto dominance of ``a`` over ``b`` (minimization)."""
    return bool(np.all(a <= b) and np.any(a < b))


def eps_dominates(a, b, eps) -> bool:
    """Additive epsilon-dominance: a_i - eps_i <= b_i for all i."""
    return bool(np.all(a - eps <= b))


def _lambda_rows(z, inv):
    # lam[r, i] = sum_j inv[i, j] * z[r, j], accumulated column by column
    m = inv.shape[0]
    lam = z[:, 0, None] * inv[None, :, 0]
    for j in range(1, m):
        lam += z[:, j, None] * inv[None, :, j]
    return lam


def cone_dominates(a, b, eps, inv, tol) -> bool:
    """Cone epsilon-dominance: Pareto branch, else all cone weights >= -tol."""
    if dominates(a, b):
        return True
    z = (b - (a - eps))[None, :]
    return bool(np.all(_lambda_rows(z, inv) >= -tol))


def scan_pareto(F, y):
    """(any member of F dominates y, mask of members dominated by y)."""
    le = F <= y
    lt = F < y
    any_dom = bool(np.any(le.all(axis=1) & lt.any(axis=1)))
    ge = F >= y
    gt = F > y
    mask = (ge.all(axis=1) & gt.any(axis=1)).astype(np.uint8)
    return any_dom, mask


def scan_eps(F, y, eps):
    """(any member eps-dominates y, mask of members eps-dominated by y)."""
    any_dom = bool(np.any(np.all(F - eps <= y, axis=1)))
    mask = np.all(y - eps <= F, axis=1).astype(np.uint8)
    return any_dom, mask


def scan_cone(F, y, eps, inv, tol):
    """(any member cone-dominates y, mask of members cone-dominated by y)."""
    le = F <= y
    lt = F < y
    pareto_dom_y = le.all(axis=1) & lt.any(axis=1)
    lam = _lambda_rows(y - (F - eps), inv)
    cone_dom_y = pareto_dom_y | np.all(lam >= -tol, axis=1)

    ge = F >= y
    gt = F > y
    y_pareto_dom = ge.all(axis=1) & gt.any(axis=1)
    lam = _lambda_rows(F - (y - eps), inv)
    y_cone_dom = y_pareto_dom | np.all(lam >= -tol, axis=1)
    return bool(np.any(cone_dom_y)), y_cone_dom.astype(np.uint8)


def scan_archive(F, C, fy, cy, inv, tol):
    """Archive acceptance scan against members with objectives F and box
    corners C: a member relates to the candidate (and vice versa) when it
    Pareto-dominates on raw objectives, or when the other's box corner
    lies in the cone anchored at its own corner (different boxes only).

    Returns (any member dominates candidate, mask of members dominated
    by the candidate).
    """
    le = F <= fy
    lt = F < fy
    pareto_in = le.all(axis=1) & lt.any(axis=1)
    ge = F >= fy
    gt = F > fy
    pareto_out = ge.all(axis=1) & gt.any(axis=1)
    same = np.all(C == cy, axis=1)
    lam_in = _lambda_rows(cy - C, inv)
    lam_out = _lambda_rows(C - cy, inv)
    dom_in = pareto_in | (~same & np.all(lam_in >= -tol, axis=1))
    dom_out = pareto_out | (~same & np.all(lam_out >= -tol, axis=1))
    return bool(np.any(dom_in)), dom_out.astype(np.uint8)


def _dominance_matrix(F):
    # D[i, j] = row i dominates row j
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return le & lt


def nondominated_rank(F):
    """Front index (0-based) per row: 0 = nondominated, then peeled layers."""
    n = F.shape[0]
    D = _dominance_matrix(F)
    count = D.sum(axis=0)
    rank = np.full(n, -1, dtype=np.int64)
    alive = np.ones(n, dtype=bool)
    level = 0
    while alive.any():
        front = alive & (count == 0)
        rank[front] = level
        alive &= ~front
        count = count - D[front].sum(axis=0)
        level += 1
    return rank


def spea2_raw(F):
    """Raw strength fitness per row: sum of strengths of its dominators."""
    D = _dominance_matrix(F)
    S = D.sum(axis=1).astype(np.int64)
    return (D.astype(np.int64).T @ S).astype(np.float64)
