"""Geometry of a bounded domain in C^3 defined by a bilinear pencil.

The closed domain consists of the points (x1, x2, x3) admitting a
parameter pair (b1, b2) with |b1| + |b2| <= 1 such that

    x1 = b1 + conj(b2) * x3,      x2 = b2 + conj(b1) * x3,

together with |x3| <= 1.  For |x3| < 1 the pair is unique and solvable
in closed form, which gives a fast membership test; an independent
route evaluates the defining function 1 - z*x1 - w*x2 + z*w*x3 over
the closed bidisk and checks for zeros.  The distinguished boundary is
the set |x3| = 1, x1 = conj(x2) * x3, |x2| <= 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .poly3 import Poly3, eval_scalar_many
from .rng import as_generator

__all__ = [
    "MembershipReport",
    "classify_point",
    "point_to_json",
    "point_from_json",
    "on_distinguished_boundary",
    "boundary_point",
    "sample_distinguished_boundary",
    "defining_abs_min",
    "sup_on_closure",
]


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of the closed-form membership test.

    ``beta`` is the parameter pair when one exists (None otherwise);
    ``beta_sum`` is |b1| + |b2|; ``residual`` is the reconstruction
    error of (x1, x2) from beta, which is zero up to rounding whenever
    the solve is well posed.  ``consistency`` is only meaningful on the
    |x3| = 1 face, where membership requires x1 = conj(x2) * x3.
    """

    in_closure: bool
    distinguished: bool
    x3_abs: float
    beta: tuple[complex, complex] | None
    beta_sum: float
    residual: float
    consistency: float


def point_to_json(x1: complex, x2: complex, x3: complex) -> dict:
    """Serialize a point to ``{"x1": [re, im], ...}``."""
    return {
        "x1": [float(complex(x1).real), float(complex(x1).imag)],
        "x2": [float(complex(x2).real), float(complex(x2).imag)],
        "x3": [float(complex(x3).real), float(complex(x3).imag)],
    }


def point_from_json(obj: dict) -> tuple[complex, complex, complex]:
    """Inverse of :func:`point_to_json`."""
    out = []
    for key in ("x1", "x2", "x3"):
        re, im = obj[key]
        out.append(complex(re, im))
    return tuple(out)


def classify_point(
    x1: complex, x2: complex, x3: complex, *, tol: float = 1e-9
) -> MembershipReport:
    """Membership test via the closed-form parameter pair.

    For |x3| < 1 the defining system has the unique solution

        b1 = (x1 - x3 * conj(x2)) / (1 - |x3|^2),
        b2 = (x2 - x3 * conj(x1)) / (1 - |x3|^2),

    and the point is in the closed domain iff |b1| + |b2| <= 1.  On the
    face |x3| = 1 membership forces x1 = conj(x2) * x3, and then holds
    iff |x2| <= 1, which is exactly the distinguished boundary.
    """
    x1, x2, x3 = complex(x1), complex(x2), complex(x3)
    a3 = abs(x3)
    if a3 > 1.0 + tol:
        return MembershipReport(
            in_closure=False,
            distinguished=False,
            x3_abs=a3,
            beta=None,
            beta_sum=float("inf"),
            residual=0.0,
            consistency=abs(x1 - np.conj(x2) * x3),
        )
    if a3 < 1.0 - tol:
        denom = 1.0 - a3 * a3
        b1 = (x1 - x3 * np.conj(x2)) / denom
        b2 = (x2 - x3 * np.conj(x1)) / denom
        s = abs(b1) + abs(b2)
        residual = max(
            abs(x1 - (b1 + np.conj(b2) * x3)),
            abs(x2 - (b2 + np.conj(b1) * x3)),
        )
        return MembershipReport(
            in_closure=bool(s <= 1.0 + tol),
            distinguished=False,
            x3_abs=a3,
            beta=(complex(b1), complex(b2)),
            beta_sum=float(s),
            residual=float(residual),
            consistency=abs(x1 - np.conj(x2) * x3),
        )
    # |x3| = 1 within tolerance: degenerate face.
    consistency = abs(x1 - np.conj(x2) * x3)
    if consistency > tol:
        return MembershipReport(
            in_closure=False,
            distinguished=False,
            x3_abs=a3,
            beta=None,
            beta_sum=float("inf"),
            residual=0.0,
            consistency=float(consistency),
        )
    ok = abs(x2) <= 1.0 + tol
    beta = (0.0 + 0.0j, complex(x2)) if ok else None
    return MembershipReport(
        in_closure=bool(ok),
        distinguished=bool(ok),
        x3_abs=a3,
        beta=beta,
        beta_sum=float(abs(x2)) if ok else float("inf"),
        residual=0.0,
        consistency=float(consistency),
    )


def on_distinguished_boundary(
    x1: complex, x2: complex, x3: complex, *, tol: float = 1e-9
) -> bool:
    """True when the point satisfies the three boundary identities."""
    x1, x2, x3 = complex(x1), complex(x2), complex(x3)
    return (
        abs(abs(x3) - 1.0) <= tol
        and abs(x1 - np.conj(x2) * x3) <= tol
        and abs(x2) <= 1.0 + tol
    )


def boundary_point(theta: float, phi: float, radius: float) -> tuple[complex, complex, complex]:
    """Distinguished-boundary point from angle/radius coordinates.

    ``x3 = exp(i theta)``, ``x2 = radius * exp(i phi)`` with
    0 <= radius <= 1, and ``x1 = conj(x2) * x3``.
    """
    if not 0.0 <= radius <= 1.0:
        raise ValueError("radius must lie in [0, 1]")
    x3 = complex(np.exp(1j * theta))
    x2 = complex(radius * np.exp(1j * phi))
    x1 = complex(np.conj(x2) * x3)
    return x1, x2, x3


def sample_distinguished_boundary(
    n: int, *, seed=None
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Draw n points on the distinguished boundary.

    Angles are uniform; the modulus of x2 is sqrt(uniform), which
    spreads samples evenly over the parameter disk.  The underlying
    draw is a single ``random((n, 3))`` call, so for a fixed seed the
    first n points of a larger sample reproduce a smaller one.
    """
    rng = as_generator(seed)
    u = rng.random((n, 3))
    theta = 2.0 * np.pi * u[:, 0]
    phi = 2.0 * np.pi * u[:, 1]
    r = np.sqrt(u[:, 2])
    x3 = np.exp(1j * theta)
    x2 = r * np.exp(1j * phi)
    x1 = np.conj(x2) * x3
    return x1, x2, x3


def defining_abs_min(
    x1: complex,
    x2: complex,
    x3: complex,
    *,
    grid: int = 24,
    refine_iters: int = 60,
) -> float:
    """Minimum of |1 - z*x1 - w*x2 + z*w*x3| over the closed bidisk.

    For fixed z the function is affine in w, so the inner minimum has
    the closed form max(|1 - z*x1| - |x2 - z*x3|, 0).  Only the outer
    z variable needs searching: a polar grid scan seeds compass
    refinements from the best few cells.  A strictly positive result
    certifies no bidisk zero was found; (near) zero indicates the
    point is outside the open domain or on its boundary.
    """
    x1, x2, x3 = complex(x1), complex(x2), complex(x3)
    nr = max(2, grid // 4 + 1)
    radii = np.linspace(0.0, 1.0, nr)
    angles = 2.0 * np.pi * np.arange(grid) / grid
    disk = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()

    def gap(z):
        return np.abs(1.0 - z * x1) - np.abs(x2 - z * x3)

    vals = gap(disk)
    order = np.argsort(vals)
    best = float(vals[order[0]])

    # Compass refinement in normalized (radius, angle), multi-start.
    for idx in order[:4]:
        z0 = disk[idx]
        p = np.array([abs(z0), (np.angle(z0) / (2.0 * np.pi)) % 1.0])
        cur = float(gap(z0))
        step = 0.25
        for _ in range(refine_iters):
            if step < 1e-9:
                break
            improved = False
            for j in range(2):
                for sign in (1.0, -1.0):
                    q = p.copy()
                    q[j] += sign * step
                    if j == 0:
                        q[j] = min(1.0, max(0.0, q[j]))
                    else:
                        q[j] %= 1.0
                    val = float(gap(q[0] * np.exp(2j * np.pi * q[1])))
                    if val < cur:
                        cur = val
                        p = q
                        improved = True
            if not improved:
                step *= 0.5
        best = min(best, cur)
        if best <= 0.0:
            break
    return max(best, 0.0)


def sup_on_closure(
    p: Poly3,
    *,
    n_samples: int = 4096,
    seed=None,
    refine_iters: int = 60,
    top_k: int = 5,
) -> float:
    """Estimate sup |p| over the closed domain.

    The modulus of a polynomial attains its sup over the closure on
    the distinguished boundary, so sampling is restricted there.  The
    raw sample maximum (one ``random((n, 3))`` draw, hence monotone in
    ``n_samples`` for a fixed seed when ``refine_iters=0``) is then
    improved by a batched compass pattern search started from the
    ``top_k`` best samples.  The result never drops below the raw
    sample maximum.
    """
    rng = as_generator(seed)
    u = rng.random((n_samples, 3))

    def points(params: np.ndarray):
        theta = 2.0 * np.pi * params[..., 0]
        phi = 2.0 * np.pi * params[..., 1]
        r = np.sqrt(params[..., 2])
        x3 = np.exp(1j * theta)
        x2 = r * np.exp(1j * phi)
        return np.conj(x2) * x3, x2, x3

    x1, x2, x3 = points(u)
    vals = np.abs(eval_scalar_many(p, x1, x2, x3))
    raw = float(vals.max()) if n_samples else 0.0
    if refine_iters <= 0 or n_samples == 0:
        return raw

    k = min(top_k, n_samples)
    starts = u[np.argsort(vals)[-k:]]
    current = starts.copy()
    fcur = np.abs(eval_scalar_many(p, *points(current)))
    steps = np.full(k, 0.1)
    offsets = np.zeros((6, 3))
    for j in range(3):
        offsets[2 * j, j] = 1.0
        offsets[2 * j + 1, j] = -1.0

    for _ in range(refine_iters):
        if np.all(steps < 1e-9):
            break
        probes = current[:, None, :] + steps[:, None, None] * offsets[None, :, :]
        probes[..., 0] %= 1.0
        probes[..., 1] %= 1.0
        probes[..., 2] = np.clip(probes[..., 2], 0.0, 1.0)
        fp = np.abs(eval_scalar_many(p, *points(probes.reshape(-1, 3)))).reshape(k, 6)
        bidx = np.argmax(fp, axis=1)
        bval = fp[np.arange(k), bidx]
        gain = bval > fcur
        current[gain] = probes[np.arange(k), bidx][gain]
        fcur[gain] = bval[gain]
        steps[~gain] *= 0.5
    return max(raw, float(fcur.max()))
