"""Dense symmetric eigendecomposition and eigenvalue-degeneracy clustering.

The solver is a cyclic Jacobi sweep: provably convergent for real symmetric
input, with rotation-product eigenvectors whose orthogonality is essentially
at machine precision, more than enough for the n <= a few hundred matrices
this package targets.  Degenerate eigenvalues are grouped into classes by a
greedy gap threshold; every downstream long-time-average formula consumes the
same class partition, so "degenerate" can never mean two different things.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_DEG_TOL = 1e-8

# Sweep until the off-diagonal Frobenius mass falls below this fraction of
# the full Frobenius norm.
_OFFDIAG_TARGET = 1e-14
_MAX_SWEEPS = 100


class ConvergenceError(RuntimeError):
    """Raised when the Jacobi sweep budget is exhausted; carries the residual."""


@dataclass(frozen=True)
class DegeneracyClass:
    """One cluster of numerically equal eigenvalues."""

    value: float
    members: tuple[int, ...]

    @property
    def multiplicity(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues (ascending), orthonormal eigenvectors (column j pairs with
    eigenvalue j), and the degeneracy-class partition of indices 0..n-1."""

    n: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    classes: tuple[DegeneracyClass, ...]
    deg_tol: float

    def __post_init__(self):
        for name in ("eigenvalues", "eigenvectors"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def jacobi_eigh(matrix: np.ndarray, max_sweeps: int = _MAX_SWEEPS):
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Parameters
    ----------
    matrix : (n, n) array_like, symmetric
    max_sweeps : int
        Full (p, q) sweep budget before giving up.

    Returns
    -------
    (eigenvalues, eigenvectors) : unsorted; column i of the eigenvector
        matrix pairs with eigenvalue i.

    Raises
    ------
    ConvergenceError
        If the off-diagonal mass has not dropped below 1e-14 of the Frobenius
        norm within the sweep budget.
    """
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return np.array([a[0, 0]]), v

    target = _OFFDIAG_TARGET * np.linalg.norm(a)
    off_mask = ~np.eye(n, dtype=bool)

    def offdiag(m):
        # direct off-diagonal Frobenius mass; subtracting norms would lose
        # everything below sqrt(eps)*||a|| to cancellation
        return float(np.linalg.norm(m[off_mask]))

    for _ in range(max_sweeps):
        if offdiag(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) <= 1e-300 * abs(diff):
                    # coupling at underflow scale: flush without rotating
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = diff / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta  # asymptotic tangent; theta**2 would overflow
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                app, aqq = a[p, p], a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = a[q, p] = 0.0
                for i in range(n):
                    if i == p or i == q:
                        continue
                    aip, aiq = a[i, p], a[i, q]
                    a[i, p] = a[p, i] = c * aip - s * aiq
                    a[i, q] = a[q, i] = s * aip + c * aiq
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    residual = offdiag(a)
    if residual > target:
        raise ConvergenceError(
            f"Jacobi sweep budget ({max_sweeps}) exhausted; "
            f"off-diagonal residual {residual:.3e} > target {target:.3e}"
        )
    return np.diag(a).copy(), v


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Deterministic sign convention: the first component of largest magnitude
    in each column is made positive (ties resolved by np.argmax's lowest
    index)."""
    out = vectors.copy()
    for j in range(out.shape[1]):
        lead = np.argmax(np.abs(out[:, j]))
        if out[lead, j] < 0:
            out[:, j] = -out[:, j]
    return out


def cluster_degeneracies(eigenvalues, deg_tol: float = DEFAULT_DEG_TOL):
    """Greedy left-to-right clustering of an ascending eigenvalue array: a new
    class starts whenever the gap to the previous eigenvalue exceeds deg_tol.
    Class value is the mean of its members."""
    w = np.asarray(eigenvalues, dtype=float)
    if deg_tol <= 0:
        raise ValueError("deg_tol must be positive")
    if w.size == 0:
        return []
    if np.any(np.diff(w) < 0):
        raise ValueError("eigenvalues must be sorted ascending")
    classes = []
    start = 0
    for i in range(1, w.size):
        if w[i] - w[i - 1] > deg_tol:
            members = tuple(range(start, i))
            classes.append(DegeneracyClass(float(np.mean(w[start:i])), members))
            start = i
    classes.append(DegeneracyClass(float(np.mean(w[start:])), tuple(range(start, w.size))))
    return classes


def eigendecompose(matrix, deg_tol: float = DEFAULT_DEG_TOL) -> Spectrum:
    """Full spectrum of a symmetric matrix (a LabeledMatrix or a plain array).

    Eigenvalues come back ascending with sign-fixed orthonormal eigenvectors
    and the degeneracy-class partition at tolerance ``deg_tol``.  ``deg_tol``
    also bounds the accepted input asymmetry.
    """
    a = np.asarray(getattr(matrix, "entries", matrix), dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if deg_tol <= 0:
        raise ValueError("deg_tol must be positive")
    asym = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asym > deg_tol:
        raise ValueError(f"matrix is not symmetric (max asymmetry {asym:.3e})")
    a = 0.5 * (a + a.T)

    w, v = jacobi_eigh(a)
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = _fix_signs(v[:, order])
    classes = tuple(cluster_degeneracies(w, deg_tol))
    return Spectrum(n=a.shape[0], eigenvalues=w, eigenvectors=v, classes=classes, deg_tol=deg_tol)


def symmetry_degree(spectrum: Spectrum) -> int:
    """Multiplicity of the degeneracy class sitting at eigenvalue 1, or 0 if
    that class is absent or non-degenerate (a simple eigenvalue 1 confers no
    symmetry degree)."""
    best = None
    for cls in spectrum.classes:
        dist = abs(cls.value - 1.0)
        if dist <= spectrum.deg_tol and (best is None or dist < abs(best.value - 1.0)):
            best = cls
    if best is None or best.multiplicity < 2:
        return 0
    return best.multiplicity


def format_spectrum(spectrum: Spectrum) -> str:
    """Plain-text dump for debugging and golden tests: eigenvalues to 15
    significant digits plus the (value, multiplicity) class table."""
    lines = [f"n {spectrum.n}", f"deg_tol {spectrum.deg_tol:.15g}", "eigenvalues"]
    lines += [f"{w:.15g}" for w in spectrum.eigenvalues]
    lines.append("classes value multiplicity")
    lines += [f"{c.value:.15g} {c.multiplicity}" for c in spectrum.classes]
    return "\n".join(lines) + "\n"
