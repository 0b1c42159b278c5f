"""Hot loops, each in a numba-compiled and a pure numpy flavour.

The public names (``merge_level``, ``sweep_integral``, ``aberth``) dispatch to
the numba version unless ``GARSIA_DISABLE_NUMBA`` is set. Both flavours are
importable directly so they can be compared in tests and benchmarks.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit

# ---------------------------------------------------------------------------
# level merge: one step of the enumeration convolution
#
# keys are sorted, unique, packed int64 class keys; w are the integer weight
# numerators. Every class spawns m children key + offsets[j] with weight
# w * wj[j]; children with equal keys are merged.


@njit(cache=True)
def merge_level_numba(keys, w, offsets, wj):
    n = keys.shape[0]
    m = offsets.shape[0]
    out_k = np.empty(n * m, dtype=np.int64)
    out_w = np.empty(n * m, dtype=np.int64)
    ptr = np.zeros(m, dtype=np.int64)
    count = 0
    remaining = n * m
    while remaining > 0:
        best = -1
        best_key = 0
        for j in range(m):
            if ptr[j] < n:
                k = keys[ptr[j]] + offsets[j]
                if best < 0 or k < best_key:
                    best = j
                    best_key = k
        acc = 0
        for j in range(m):
            if ptr[j] < n and keys[ptr[j]] + offsets[j] == best_key:
                acc += w[ptr[j]] * wj[j]
                ptr[j] += 1
                remaining -= 1
        out_k[count] = best_key
        out_w[count] = acc
        count += 1
    return out_k[:count].copy(), out_w[:count].copy()


def merge_level_numpy(keys, w, offsets, wj):
    cand = (keys[None, :] + offsets[:, None]).ravel()
    cw = (w[None, :] * wj[:, None]).ravel()
    order = np.argsort(cand, kind="stable")
    cand = cand[order]
    cw = cw[order]
    if cand.size == 0:
        return cand, cw
    starts = np.concatenate(([0], np.flatnonzero(np.diff(cand)) + 1))
    return cand[starts], np.add.reduceat(cw, starts)


# ---------------------------------------------------------------------------
# scale-entropy sweep
#
# Cells are compacted to 0..C-1. Event e moves mass pm[e] from cell src[e] to
# dst[e]; events are grouped by breakpoint, group g ending at ends[g]. The
# piece before the first group has length lengths[0], the piece after group g
# has length lengths[g + 1].


@njit(cache=True)
def _xlogx(x):
    return x * np.log(x) if x > 0.0 else 0.0


@njit(cache=True)
def sweep_integral_numba(mass0, src, dst, pm, ends, lengths):
    mass = mass0.copy()
    h = 0.0
    for c in range(mass.shape[0]):
        h -= _xlogx(mass[c])
    total = lengths[0] * h
    start = 0
    for g in range(ends.shape[0]):
        for e in range(start, ends[g]):
            a = src[e]
            b = dst[e]
            h += _xlogx(mass[a]) + _xlogx(mass[b])
            mass[a] -= pm[e]
            mass[b] += pm[e]
            if mass[a] < 1e-300:
                mass[a] = 0.0
            h -= _xlogx(mass[a]) + _xlogx(mass[b])
        start = ends[g]
        total += lengths[g + 1] * h
    return total


def sweep_integral_numpy(mass0, src, dst, pm, ends, lengths):
    # Each piece is evaluated independently from cumulative mass transfers.
    ngroups = ends.shape[0]
    C = mass0.shape[0]
    delta = np.zeros((ngroups + 1, C))
    group_of = np.searchsorted(ends, np.arange(src.shape[0]), side="right") + 1
    np.add.at(delta, (group_of, src), -pm)
    np.add.at(delta, (group_of, dst), pm)
    masses = mass0[None, :] + np.cumsum(delta, axis=0)
    masses = np.where(masses > 1e-300, masses, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(masses > 0, masses * np.log(np.where(masses > 0, masses, 1.0)), 0.0)
    return float(np.dot(lengths, -terms.sum(axis=1)))


# ---------------------------------------------------------------------------
# Aberth-Ehrlich simultaneous root iteration in complex128
#
# coeffs ascending, leading coefficient nonzero, z0 the starting points.


@njit(cache=True)
def aberth_numba(coeffs, z0, maxiter, tol):
    n = z0.shape[0]
    z = z0.copy()
    d = coeffs.shape[0] - 1
    dc = np.empty(d, dtype=np.complex128)
    for k in range(d):
        dc[k] = coeffs[k + 1] * (k + 1)
    for _ in range(maxiter):
        worst = 0.0
        for i in range(n):
            p = coeffs[d]
            for k in range(d - 1, -1, -1):
                p = p * z[i] + coeffs[k]
            dp = dc[d - 1]
            for k in range(d - 2, -1, -1):
                dp = dp * z[i] + dc[k]
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else p
            s = 0.0 + 0.0j
            for j in range(n):
                if j != i:
                    diff = z[i] - z[j]
                    if diff != 0:
                        s += 1.0 / diff
            denom = 1.0 - ratio * s
            step = ratio / denom if denom != 0 else ratio
            z[i] -= step
            a = abs(step) / max(abs(z[i]), 1.0)
            if a > worst:
                worst = a
        if worst < tol:
            break
    return z


def aberth_numpy(coeffs, z0, maxiter, tol):
    z = z0.astype(np.complex128).copy()
    rev = coeffs[::-1]
    drev = np.polyder(rev) if rev.shape[0] > 1 else np.zeros(1, dtype=np.complex128)
    n = z.shape[0]
    eye = np.eye(n, dtype=bool)
    for _ in range(maxiter):
        p = np.polyval(rev, z)
        dp = np.polyval(drev, z)
        safe = dp != 0
        ratio = np.where(safe, p / np.where(safe, dp, 1), p)
        diff = z[:, None] - z[None, :]
        diff[eye] = 1.0
        inv = np.where(diff != 0, 1.0 / np.where(diff != 0, diff, 1.0), 0.0)
        inv[eye] = 0.0
        s = inv.sum(axis=1)
        denom = 1.0 - ratio * s
        step = np.where(denom != 0, ratio / np.where(denom != 0, denom, 1), ratio)
        step = np.where(p == 0, 0.0, step)
        z = z - step
        if np.max(np.abs(step) / np.maximum(np.abs(z), 1.0)) < tol:
            break
    return z


if USE_NUMBA:
    merge_level = merge_level_numba
    sweep_integral = sweep_integral_numba
    aberth = aberth_numba
else:
    merge_level = merge_level_numpy
    sweep_integral = sweep_integral_numpy
    aberth = aberth_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"
