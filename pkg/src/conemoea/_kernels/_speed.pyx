# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled comparison kernels; same contracts as ``pure.py``.

Floating-point evaluation order matches the pure backend (columnwise
accumulation, no reassociation); the extension is built with
-ffp-contract=off so no fused multiply-adds creep in.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


cdef inline bint _dom(const double[:] a, const double[:] b) noexcept:
    cdef Py_ssize_t i, m = a.shape[0]
    cdef bint strict = 0
    for i in range(m):
        if a[i] > b[i]:
            return 0
        if a[i] < b[i]:
            strict = 1
    return strict


cdef inline bint _eps_dom(const double[:] a, const double[:] b, const double[:] eps) noexcept:
    cdef Py_ssize_t i, m = a.shape[0]
    for i in range(m):
        if a[i] - eps[i] > b[i]:
            return 0
    return 1


cdef inline bint _cone_tail(const double[:] a, const double[:] b, const double[:] eps,
                            const double[:, :] inv, double tol) noexcept:
    # all components of inv @ (b - (a - eps)) >= -tol
    cdef Py_ssize_t i, j, m = a.shape[0]
    cdef double lam, zj
    for i in range(m):
        lam = 0.0
        for j in range(m):
            zj = b[j] - (a[j] - eps[j])
            lam += zj * inv[i, j]
        if lam < -tol:
            return 0
    return 1


def dominates(const double[:] a, const double[:] b):
    return bool(_dom(a, b))


def eps_dominates(const double[:] a, const double[:] b, const double[:] eps):
    return bool(_eps_dom(a, b, eps))


def cone_dominates(const double[:] a, const double[:] b, const double[:] eps,
                   const double[:, :] inv, double tol):
    if _dom(a, b):
        return True
    return bool(_cone_tail(a, b, eps, inv, tol))


def scan_pareto(const double[:, :] F, const double[:] y):
    cdef Py_ssize_t r, n = F.shape[0]
    cdef bint any_dom = 0
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] mask = mask_arr
    for r in range(n):
        if not any_dom and _dom(F[r], y):
            any_dom = 1
        if _dom(y, F[r]):
            mask[r] = 1
    return bool(any_dom), mask_arr


def scan_eps(const double[:, :] F, const double[:] y, const double[:] eps):
    cdef Py_ssize_t r, n = F.shape[0]
    cdef bint any_dom = 0
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] mask = mask_arr
    for r in range(n):
        if not any_dom and _eps_dom(F[r], y, eps):
            any_dom = 1
        if _eps_dom(y, F[r], eps):
            mask[r] = 1
    return bool(any_dom), mask_arr


def scan_cone(const double[:, :] F, const double[:] y, const double[:] eps,
              const double[:, :] inv, double tol):
    cdef Py_ssize_t r, n = F.shape[0]
    cdef bint any_dom = 0
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] mask = mask_arr
    for r in range(n):
        if not any_dom and (_dom(F[r], y) or _cone_tail(F[r], y, eps, inv, tol)):
            any_dom = 1
        if _dom(y, F[r]) or _cone_tail(y, F[r], eps, inv, tol):
            mask[r] = 1
    return bool(any_dom), mask_arr


cdef inline bint _corner_cone(const double[:] ca, const double[:] cb,
                              const double[:, :] inv, double tol) noexcept:
    # all components of inv @ (cb - ca) >= -tol, with ca != cb
    cdef Py_ssize_t i, j, m = ca.shape[0]
    cdef bint same = 1
    cdef double lam
    for i in range(m):
        if ca[i] != cb[i]:
            same = 0
            break
    if same:
        return 0
    for i in range(m):
        lam = 0.0
        for j in range(m):
            lam += (cb[j] - ca[j]) * inv[i, j]
        if lam < -tol:
            return 0
    return 1


def scan_archive(const double[:, :] F, const double[:, :] C,
                 const double[:] fy, const double[:] cy,
                 const double[:, :] inv, double tol):
    cdef Py_ssize_t r, n = F.shape[0]
    cdef bint any_dom = 0
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[:] mask = mask_arr
    for r in range(n):
        if not any_dom and (_dom(F[r], fy) or _corner_cone(C[r], cy, inv, tol)):
            any_dom = 1
        if _dom(fy, F[r]) or _corner_cone(cy, C[r], inv, tol):
            mask[r] = 1
    return bool(any_dom), mask_arr


def nondominated_rank(const double[:, :] F):
    cdef Py_ssize_t i, j, n = F.shape[0]
    rank_arr = np.full(n, -1, dtype=np.int64)
    count_arr = np.zeros(n, dtype=np.int64)
    cdef long long[:] rank = rank_arr
    cdef long long[:] count = count_arr
    cdef list dominated = [[] for _ in range(n)]
    cdef list front, nxt
    cdef Py_ssize_t p, q
    cdef long long level = 0

    for i in range(n):
        for j in range(n):
            if i != j and _dom(F[i], F[j]):
                dominated[i].append(j)
                count[j] += 1

    front = [i for i in range(n) if count[i] == 0]
    while front:
        nxt = []
        for p in front:
            rank[p] = level
            for q in dominated[p]:
                count[q] -= 1
                if count[q] == 0:
                    nxt.append(q)
        level += 1
        front = nxt
    return rank_arr


def spea2_raw(const double[:, :] F):
    cdef Py_ssize_t i, j, n = F.shape[0]
    strength_arr = np.zeros(n, dtype=np.int64)
    raw_arr = np.zeros(n, dtype=np.float64)
    cdef long long[:] strength = strength_arr
    cdef double[:] raw = raw_arr
    for i in range(n):
        for j in range(n):
            if i != j and _dom(F[i], F[j]):
                strength[i] += 1
    for i in range(n):
        for j in range(n):
            if i != j and _dom(F[i], F[j]):
                raw[j] += strength[i]
    return raw_arr
