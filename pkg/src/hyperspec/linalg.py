"""Dense eigensolvers used by every spectral check in the package.

The symmetric solver is a cyclic Jacobi method with round-robin (parallel)
ordering, so that each sweep is ``n - 1`` rounds of ``n / 2`` disjoint plane
rotations applied as vectorised row/column updates.  The nonsymmetric solver
is Householder reduction to upper Hessenberg form followed by the Francis
double-shift QR iteration; it only returns eigenvalues and is meant as an
oracle for moderately sized matrices.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ConvergenceError, DimensionTooLarge, NotSquare, NotSymmetric

SYMMETRY_TOL = 1e-12
JACOBI_TOL = 1e-12
MAX_NONSYMMETRIC_DIM = 600
RANK_TOL = 1e-8


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings for one Jacobi sweep; every index pair appears exactly once.

    For odd ``n`` a dummy index ``n`` is added and pairs touching it are dropped.
    """
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        ps, qs = [], []
        for i in range(size // 2):
            p, q = players[i], players[size - 1 - i]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotate_rows(a: np.ndarray, p, q, c, s) -> None:
    rp, rq = a[p, :], a[q, :]
    c_col, s_col = c[:, None], s[:, None]
    a[p, :] = c_col * rp - s_col * rq
    a[q, :] = s_col * rp + c_col * rq


def _jacobi(m, tol: float, max_sweeps: int, vectors: bool):
    a = as_matrix(m)
    if np.max(np.abs(a - a.T), initial=0.0) > SYMMETRY_TOL:
        raise NotSymmetric("matrix is not symmetric within 1e-12")
    a = np.ascontiguousarray(0.5 * (a + a.T))
    n = a.shape[0]
    # rows of vt are the eigenvectors
    vt = np.eye(n) if vectors else None
    off0 = _off_norm(a)
    if n > 1 and off0 > 0.0:
        target = tol * off0
        # entries this small cannot move the off-diagonal norm across the target
        negligible = 0.1 * target / n
        rounds = _round_robin(n)
        for _ in range(max_sweeps):
            if _off_norm(a) <= target:
                break
            for p, q in rounds:
                apq = a[p, q]
                active = np.abs(apq) > negligible
                if not np.any(active):
                    continue
                p, q, apq = p[active], q[active], apq[active]
                app, aqq = a[p, p], a[q, q]
                theta = (aqq - app) / (2.0 * apq)
                # for huge |theta| the rotation is t ~ 1/(2 theta); avoids overflow in theta**2
                big = np.abs(theta) > 1e150
                safe = np.where(big, 0.0, theta)
                t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
                t[big] = 0.5 / theta[big]
                t[theta == 0.0] = 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # A <- J^T A J done as two row passes; the transpose keeps rows contiguous.
                _rotate_rows(a, p, q, c, s)
                a = np.ascontiguousarray(a.T)
                _rotate_rows(a, p, q, c, s)
                a[p, q] = 0.0
                a[q, p] = 0.0
                if vectors:
                    _rotate_rows(vt, p, q, c, s)
        else:
            if _off_norm(a) > target:
                raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], (vt[order].T if vectors else None)


def jacobi_eigh(m, tol: float = JACOBI_TOL, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors (as columns) of a symmetric matrix.

    Iterates until the off-diagonal Frobenius mass drops below ``tol`` times its
    initial value.
    """
    return _jacobi(m, tol, max_sweeps, vectors=True)


def symmetric_eigenvalues(m) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, sorted descending."""
    return _jacobi(m, JACOBI_TOL, 60, vectors=False)[0]


def _hessenberg(a: np.ndarray) -> np.ndarray:
    h = a.copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        if x[0] > 0:
            alpha = -alpha
        x[0] -= alpha
        vnorm = np.linalg.norm(x)
        if vnorm == 0.0:
            continue
        u = x / vnorm
        h[k + 1 :, k:] -= 2.0 * np.outer(u, u @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ u, u)
        h[k + 2 :, k] = 0.0
    return h


def _francis_qr(h: np.ndarray, max_iter: int = 60) -> np.ndarray:
    """Eigenvalues of an upper Hessenberg matrix by double-shift QR with deflation."""
    n = h.shape[0]
    eps = np.finfo(float).eps
    wr = np.zeros(n)
    wi = np.zeros(n)
    anorm = float(np.sum(np.abs(h)))
    nn = n - 1
    shift = 0.0
    while nn >= 0:
        its = 0
        while True:
            l = nn
            while l >= 1:
                s = abs(h[l - 1, l - 1]) + abs(h[l, l])
                if s == 0.0:
                    s = anorm
                if abs(h[l, l - 1]) <= eps * s:
                    h[l, l - 1] = 0.0
                    break
                l -= 1
            x = h[nn, nn]
            if l == nn:
                wr[nn] = x + shift
                nn -= 1
                break
            y = h[nn - 1, nn - 1]
            w = h[nn, nn - 1] * h[nn - 1, nn]
            if l == nn - 1:
                p = 0.5 * (y - x)
                q = p * p + w
                z = math.sqrt(abs(q))
                x += shift
                if q >= 0.0:
                    z = p + math.copysign(z, p)
                    wr[nn - 1] = wr[nn] = x + z
                    if z != 0.0:
                        wr[nn] = x - w / z
                else:
                    wr[nn - 1] = wr[nn] = x + p
                    wi[nn - 1] = -z
                    wi[nn] = z
                nn -= 2
                break
            if its == max_iter:
                raise ConvergenceError("QR iteration did not converge")
            if its in (10, 20):
                # exceptional shift
                shift += x
                idx = np.arange(nn + 1)
                h[idx, idx] -= x
                s = abs(h[nn, nn - 1]) + abs(h[nn - 1, nn - 2])
                x = y = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            m = nn - 2
            while m >= l:
                z = h[m, m]
                r = x - z
                s = y - z
                p = (r * s - w) / h[m + 1, m] + h[m, m + 1]
                q = h[m + 1, m + 1] - z - r - s
                r = h[m + 2, m + 1]
                s = abs(p) + abs(q) + abs(r)
                p, q, r = p / s, q / s, r / s
                if m == l:
                    break
                u = abs(h[m, m - 1]) * (abs(q) + abs(r))
                v = abs(p) * (abs(h[m - 1, m - 1]) + abs(z) + abs(h[m + 1, m + 1]))
                if u <= eps * v:
                    break
                m -= 1
            for i in range(m + 2, nn + 1):
                h[i, i - 2] = 0.0
                if i != m + 2:
                    h[i, i - 3] = 0.0
            for k in range(m, nn):
                if k != m:
                    p = h[k, k - 1]
                    q = h[k + 1, k - 1]
                    r = h[k + 2, k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(q) + abs(r)
                    if x != 0.0:
                        p, q, r = p / x, q / x, r / x
                s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                if s == 0.0:
                    continue
                if k == m:
                    if l != m:
                        h[k, k - 1] = -h[k, k - 1]
                else:
                    h[k, k - 1] = -s * x
                p += s
                x, y, z = p / s, q / s, r / s
                q, r = q / p, r / p
                last = k != nn - 1
                rows = h[k, k : nn + 1] + q * h[k + 1, k : nn + 1]
                if last:
                    rows += r * h[k + 2, k : nn + 1]
                    h[k + 2, k : nn + 1] -= rows * z
                h[k + 1, k : nn + 1] -= rows * y
                h[k, k : nn + 1] -= rows * x
                top = min(nn, k + 3)
                cols = x * h[l : top + 1, k] + y * h[l : top + 1, k + 1]
                if last:
                    cols += z * h[l : top + 1, k + 2]
                    h[l : top + 1, k + 2] -= cols * r
                h[l : top + 1, k + 1] -= cols * q
                h[l : top + 1, k] -= cols
    return wr + 1j * wi


def sort_complex(values) -> np.ndarray:
    """Sort by descending modulus, ties broken by descending real part."""
    vals = np.asarray(values, dtype=complex)
    mod = np.round(np.abs(vals), 10)
    order = np.lexsort((-vals.imag, -vals.real, -mod))
    return vals[order]


def nonsymmetric_eigenvalues_small(m, max_dim: int = MAX_NONSYMMETRIC_DIM) -> np.ndarray:
    """All complex eigenvalues of a real square matrix of dimension at most ``max_dim``."""
    a = as_matrix(m)
    n = a.shape[0]
    if n > max_dim:
        raise DimensionTooLarge(f"dimension {n} exceeds oracle cap {max_dim}")
    if n == 0:
        return np.zeros(0, dtype=complex)
    if n == 1:
        return np.array([complex(a[0, 0])])
    return sort_complex(_francis_qr(_hessenberg(a)))


def singular_values(m) -> np.ndarray:
    """Singular values (descending) from the eigenvectors of the smaller Gram matrix.

    Each value is taken as the norm of the image of its Gram eigenvector rather than the
    square root of the eigenvalue: a null eigenvalue carries an error of order
    ``eps * |G|``, whose square root would sit near ``1e-8`` relative and blur the rank.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ValueError("expected a 2-D array")
    if min(a.shape) == 0:
        return np.zeros(0)
    wide = a.shape[0] <= a.shape[1]
    gram = a @ a.T if wide else a.T @ a
    _, v = jacobi_eigh(gram)
    image = a.T @ v if wide else a @ v
    return np.sort(np.linalg.norm(image, axis=0))[::-1]


def numeric_rank(m, tol: float = RANK_TOL) -> int:
    """Number of singular values above ``tol`` times the largest one."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = singular_values(m)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def matrix_power(m, l: int) -> np.ndarray:
    a = np.asarray(m)
    if l < 0:
        raise ValueError("negative power")
    result = np.eye(a.shape[0], dtype=a.dtype)
    base = a
    while l:
        if l & 1:
            result = result @ base
        base = base @ base
        l >>= 1
    return result


def matrix_function(m, f) -> np.ndarray:
    """``V f(W) V^T`` for a symmetric matrix with eigenpairs ``(W, V)``; ``f`` acts elementwise."""
    w, v = jacobi_eigh(m)
    return (v * np.asarray(f(w), dtype=float)) @ v.T
