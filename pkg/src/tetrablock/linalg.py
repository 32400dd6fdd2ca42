"""Dense complex linear algebra used throughout the package.

Everything here works on square complex matrices held as
``numpy.ndarray`` with dtype ``complex128``.  The Hermitian eigensolver
has two backends: the LAPACK path (``numpy.linalg.eigh``) used by
default, and a self-contained cyclic Jacobi iteration that serves as an
independent cross-check in the test suite.  Both enforce the same gate:
the input must be Hermitian up to a stated tolerance, and is
symmetrized before factoring.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NonSquareError,
    NotHermitianError,
    NotPSDError,
)

__all__ = [
    "as_matrix",
    "matrix_to_json",
    "matrix_from_json",
    "op_norm",
    "HermEig",
    "herm_eig",
    "sqrt_psd",
    "numerical_radius",
    "spectral_radius_estimate",
]

#: Relative off-diagonal target for the Jacobi backend.
JACOBI_OFF_TOL = 1e-13

#: Sweep budget for the Jacobi backend before giving up.
JACOBI_MAX_SWEEPS = 100


def as_matrix(obj, *, square: bool = False, name: str = "matrix") -> np.ndarray:
    """Coerce ``obj`` to a 2-D complex128 array, copying if needed.

    Parameters
    ----------
    obj:
        Anything ``numpy.asarray`` accepts: nested lists, an ndarray,
        a scalar wrapped in ``[[...]]``.
    square:
        When True, reject rectangular input with NonSquareError.
    name:
        Label used in error messages.
    """
    a = np.asarray(obj, dtype=np.complex128)
    if a.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-D, got ndim={a.ndim}")
    if square and a.shape[0] != a.shape[1]:
        raise NonSquareError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def matrix_to_json(a) -> dict:
    """Serialize a matrix to the interchange dict form.

    The format is ``{"rows": m, "cols": n, "data": [[re, im], ...]}``
    with entries in row-major order.
    """
    a = as_matrix(a)
    m, n = a.shape
    flat = a.reshape(-1)
    data = [[float(z.real), float(z.imag)] for z in flat]
    return {"rows": m, "cols": n, "data": data}


def matrix_from_json(obj: dict) -> np.ndarray:
    """Inverse of :func:`matrix_to_json`, with shape validation."""
    try:
        m = int(obj["rows"])
        n = int(obj["cols"])
        data = obj["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if m < 0 or n < 0:
        raise ValueError("matrix dimensions must be nonnegative")
    if len(data) != m * n:
        raise DimensionMismatchError(
            f"expected {m * n} entries for a {m}x{n} matrix, got {len(data)}"
        )
    out = np.empty(m * n, dtype=np.complex128)
    for i, pair in enumerate(data):
        re, im = pair
        out[i] = complex(re, im)
    return out.reshape(m, n)


def op_norm(a) -> float:
    """Operator (spectral) norm: the largest singular value."""
    a = as_matrix(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


@dataclass(frozen=True)
class HermEig:
    """Eigendecomposition of a Hermitian matrix.

    ``values`` are real and ascending; ``vectors[:, k]`` is the unit
    eigenvector for ``values[k]``, so ``vectors @ diag(values) @
    vectors.conj().T`` reconstructs the symmetrized input.
    """

    values: np.ndarray
    vectors: np.ndarray


def _hermitian_gate(h, tol: float) -> np.ndarray:
    h = as_matrix(h, square=True, name="hermitian input")
    asym = np.linalg.norm(h - h.conj().T, 2) if h.size else 0.0
    if asym > tol:
        raise NotHermitianError(
            f"asymmetry {asym:.3e} exceeds tolerance {tol:.3e}"
        )
    return 0.5 * (h + h.conj().T)


def _jacobi_eigh(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic complex Jacobi iteration on a Hermitian matrix.

    Each rotation annihilates one off-diagonal pair exactly; sweeps
    repeat until the off-diagonal Frobenius mass falls below
    ``JACOBI_OFF_TOL`` relative to the input, or the sweep budget runs
    out.
    """
    n = h.shape[0]
    a = h.astype(np.complex128, copy=True)
    v = np.eye(n, dtype=np.complex128)
    fro = np.linalg.norm(a)
    if fro == 0.0 or n < 2:
        values = np.zeros(n) if fro == 0.0 else a.diagonal().real.copy()
        return values, v

    def _off(m: np.ndarray) -> float:
        # Norm of the off-diagonal part, formed explicitly: the
        # difference of squared norms cancels catastrophically once
        # the mass is small.
        return float(np.linalg.norm(m - np.diag(m.diagonal())))

    target = JACOBI_OFF_TOL * fro
    for _ in range(JACOBI_MAX_SWEEPS):
        if _off(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                beta = a[p, q]
                b = abs(beta)
                if b <= target / (n * n):
                    continue
                phase = beta / b
                tau = (a[q, q].real - a[p, p].real) / (2.0 * b)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Plane rotation J: J[p,p]=c*phase, J[p,q]=s*phase,
                # J[q,p]=-s, J[q,q]=c, acting as a <- J* a J.
                col_p = c * phase * a[:, p] - s * a[:, q]
                col_q = s * phase * a[:, p] + c * a[:, q]
                a[:, p] = col_p
                a[:, q] = col_q
                row_p = c * np.conj(phase) * a[p, :] - s * a[q, :]
                row_q = s * np.conj(phase) * a[p, :] + c * a[q, :]
                a[p, :] = row_p
                a[q, :] = row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vcol_p = c * phase * v[:, p] - s * v[:, q]
                vcol_q = s * phase * v[:, p] + c * v[:, q]
                v[:, p] = vcol_p
                v[:, q] = vcol_q
    else:
        if _off(a) > target:
            raise NoConvergenceError(
                f"Jacobi sweeps exhausted ({JACOBI_MAX_SWEEPS}) "
                f"above target {target:.3e}"
            )

    values = a.diagonal().real.copy()
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order]


def herm_eig(h, *, tol: float = 1e-9, backend: str = "lapack") -> HermEig:
    """Eigendecomposition of a Hermitian matrix with a symmetry gate.

    The input must satisfy ``|h - h*| <= tol`` in operator norm, else
    NotHermitianError; it is then symmetrized so both backends factor
    exactly the same matrix.

    Parameters
    ----------
    h:
        Square complex matrix, Hermitian up to ``tol``.
    tol:
        Asymmetry gate.
    backend:
        ``"lapack"`` (default) uses ``numpy.linalg.eigh``; ``"jacobi"``
        runs the self-contained cyclic Jacobi iteration.  Both return
        ascending eigenvalues.
    """
    hs = _hermitian_gate(h, tol)
    if backend == "lapack":
        try:
            values, vectors = np.linalg.eigh(hs)
        except np.linalg.LinAlgError as exc:
            raise NoConvergenceError(f"eigh failed to converge: {exc}") from exc
        return HermEig(values=np.asarray(values, dtype=float), vectors=vectors)
    if backend == "jacobi":
        values, vectors = _jacobi_eigh(hs)
        return HermEig(values=np.asarray(values, dtype=float), vectors=vectors)
    raise ValueError(f"unknown backend {backend!r}; expected 'lapack' or 'jacobi'")


def sqrt_psd(h, *, tol: float = 1e-9, backend: str = "lapack") -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues below ``-tol`` raise NotPSDError; small negatives
    within the tolerance are clamped to zero before the square root.
    """
    eig = herm_eig(h, tol=tol, backend=backend)
    lo = float(eig.values[0]) if eig.values.size else 0.0
    if lo < -tol:
        raise NotPSDError(f"eigenvalue {lo:.3e} below -tol ({-tol:.3e})")
    vals = np.sqrt(np.clip(eig.values, 0.0, None))
    return (eig.vectors * vals) @ eig.vectors.conj().T


def _rotation_tops(t: np.ndarray, thetas: np.ndarray) -> np.ndarray:
    """Largest eigenvalue of Re(e^{i theta} T) for each theta, batched."""
    z = np.exp(1j * thetas)
    stack = 0.5 * (
        z[:, None, None] * t[None, :, :]
        + np.conj(z)[:, None, None] * t.conj().T[None, :, :]
    )
    return np.linalg.eigvalsh(stack)[:, -1]


def numerical_radius(t, *, grid: int = 720, refine: int = 40) -> tuple[float, float]:
    """Numerical radius of a square matrix, with the maximizing angle.

    Uses the rotation formula: the numerical radius equals the maximum
    over theta of the top eigenvalue of ``(e^{i theta} T + e^{-i theta}
    T*) / 2``.  A uniform scan over ``grid`` angles is followed by
    ``refine`` rounds of bracket shrinking around the best angle.

    Returns
    -------
    (value, theta):
        The numerical radius and an angle attaining it.
    """
    t = as_matrix(t, square=True)
    if t.shape[0] == 0:
        return 0.0, 0.0
    if grid < 4:
        raise ValueError("grid must be at least 4")
    thetas = 2.0 * np.pi * np.arange(grid) / grid
    tops = _rotation_tops(t, thetas)
    k = int(np.argmax(tops))
    best_val = float(tops[k])
    best_theta = float(thetas[k])

    width = 2.0 * np.pi / grid
    center = best_theta
    for _ in range(refine):
        if width < 1e-13:
            break
        local = np.linspace(center - width, center + width, 9)
        vals = _rotation_tops(t, local)
        j = int(np.argmax(vals))
        if vals[j] > best_val:
            best_val = float(vals[j])
            best_theta = float(local[j]) % (2.0 * np.pi)
        center = float(local[j])
        width *= 0.25
    return best_val, best_theta


def spectral_radius_estimate(t, *, iters: int = 200, seed: int = 7) -> float:
    """Power-iteration estimate of the spectral radius.

    This is an approximation: it converges to the dominant eigenvalue
    magnitude for generic starts but can undershoot when the dominant
    eigenvalue is defective or degenerate.  The returned Rayleigh
    magnitude never exceeds the numerical radius.
    """
    t = as_matrix(t, square=True)
    n = t.shape[0]
    if n == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x /= np.linalg.norm(x)
    for _ in range(iters):
        y = t @ x
        ny = np.linalg.norm(y)
        if ny < 1e-300:
            return 0.0
        x = y / ny
    return float(abs(np.vdot(x, t @ x)))
