"""Distinguishability times for fixed-axis qubit evolution.

Along the orbit of rho(r) under H = omega0 * n . sigma the Helstrom error
probability is

    p_err(t) = 1/2 - |n x r| |sin(omega0 t)| / 2,

so a level delta is reachable iff 1 - 2*delta <= |n x r| (equivalently
2 * (1 - 2*delta) <= sqrt(F) / omega0 in terms of the quantum Fisher
information), and the first crossing is arcsin((1-2*delta)/|n x r|)/omega0.
This module has the exact time, the Mandelstam-Tamm (variance) and
Margolus-Levitin (mean energy) lower bounds, a reachability report, the
"at least as fast" membership test, and a ball scan of the fast ring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bloch import NORM_EPS, HamiltonianSpec, as_bloch, qfi
from .errors import DegenerateOrbit, GroundState, NotReachable

__all__ = [
    "REACH_SLACK",
    "ReachabilityReport",
    "RingScan",
    "check_delta",
    "classify",
    "faster_set_contains",
    "perp_norm",
    "scan_ring",
    "tau_exact",
    "tau_ml",
    "tau_mt",
]

# absolute slack accepting boundary cases |n x r| = 1 - 2*delta as reachable
REACH_SLACK = 1e-12
_DEGENERATE_TOL = 1e-12


def check_delta(delta) -> float:
    """Validate an error level in the closed interval [0, 1/2]."""
    d = float(delta)
    if not 0.0 <= d <= 0.5:
        raise ValueError(f"delta must lie in [0, 1/2], got {delta!r}")
    return d


def perp_norm(r, ham: HamiltonianSpec) -> float:
    """|n x r|, the radius of the orbit around the rotation axis."""
    return float(np.linalg.norm(np.cross(ham.axis, as_bloch(r))))


def tau_exact(r, ham: HamiltonianSpec, delta) -> float:
    """First time at which the evolved state reaches error level delta.

    Returns arcsin((1 - 2*delta) / |n x r|) / omega0, the smallest
    nonnegative crossing. p_err is periodic with period pi/omega0; later
    crossings are not reported. delta = 1/2 short-circuits to 0.
    """
    d = check_delta(delta)
    if d == 0.5:
        return 0.0
    s = perp_norm(r, ham)
    target = 1.0 - 2.0 * d
    if s <= _DEGENERATE_TOL:
        raise DegenerateOrbit("state commutes with the Hamiltonian; p_err stays 1/2")
    if target > s + REACH_SLACK:
        raise NotReachable(
            f"delta={d:.17g} needs |n x r| >= {target:.17g}, orbit has {s:.17g}"
        )
    return float(np.arcsin(min(target / s, 1.0)) / ham.omega0)


def tau_mt(r, ham: HamiltonianSpec, delta) -> float:
    """Mandelstam-Tamm lower bound 2 * arcsin(1 - 2*delta) / sqrt(F).

    Tight exactly on pure equator states (|r| = 1, r . n = 0), where the
    exact crossing time coincides with the bound for every delta.
    """
    d = check_delta(delta)
    if d == 0.5:
        return 0.0
    fisher = qfi(r, ham)
    if fisher <= (2.0 * ham.omega0 * _DEGENERATE_TOL) ** 2:
        raise DegenerateOrbit("zero quantum Fisher information on this orbit")
    return float(2.0 * np.arcsin(1.0 - 2.0 * d) / np.sqrt(fisher))


def tau_ml(r, ham: HamiltonianSpec, delta, symmetrized: bool = False) -> float:
    """Margolus-Levitin-type bound from the mean energy above the ground state.

        pi * (1 - sqrt(1 - (1-2*delta)^2)) / (2 * omega0 * (n . r + 1))

    Requires the identity-shifted Hamiltonian (nonnegative spectrum).
    With symmetrized=True, |n . r| replaces n . r; that variant respects
    the r -> -r symmetry of the dynamics and is the one that provably
    never exceeds the Mandelstam-Tamm bound.
    """
    d = check_delta(delta)
    if not ham.identity_shift:
        raise ValueError("the mean-energy bound requires identity_shift=True")
    if d == 0.5:
        return 0.0
    c = float(np.dot(ham.axis, as_bloch(r)))
    if symmetrized:
        c = abs(c)
    denom = c + 1.0
    if denom <= 1e-12:
        raise GroundState("state sits at the bottom of the spectrum")
    x = 1.0 - 2.0 * d
    return float(np.pi * (1.0 - np.sqrt(1.0 - x * x)) / (2.0 * ham.omega0 * denom))


@dataclass(frozen=True, eq=False)
class ReachabilityReport:
    """Everything classify() knows about one (state, Hamiltonian, delta).

    Times are raw (multiply by omega0 for dimensionless units). tau_exact
    is None when the level is unreachable; diverging bounds are reported
    as inf rather than raised.
    """

    reachable: bool
    tau_exact: float | None
    tau_mt: float
    tau_ml: float
    fisher: float
    perp_norm: float
    min_perr: float


def classify(r, ham: HamiltonianSpec, delta, ml_symmetrized: bool = False) -> ReachabilityReport:
    """Reachability report; never raises for in-range inputs.

    The smallest error on the orbit is min_perr = 1/2 - |n x r| / 2,
    attained at omega0 * t = pi/2. The mean-energy bound is evaluated
    for the identity-shifted spectrum regardless of the flag on ``ham``
    (the shift does not change its value).
    """
    d = check_delta(delta)
    vec = as_bloch(r)
    s = perp_norm(vec, ham)
    fisher = 4.0 * (ham.omega0 * s) ** 2
    target = 1.0 - 2.0 * d
    reachable = target <= s + REACH_SLACK
    min_perr = max(0.0, 0.5 - 0.5 * s)

    if d == 0.5:
        t_exact: float | None = 0.0
        t_mt = 0.0
        t_ml = 0.0
    else:
        if reachable:
            t_exact = float(np.arcsin(min(target / max(s, 1e-300), 1.0)) / ham.omega0)
        else:
            t_exact = None
        if s > _DEGENERATE_TOL:
            t_mt = float(2.0 * np.arcsin(target) / np.sqrt(fisher))
        else:
            t_mt = float("inf")
        c = float(np.dot(ham.axis, vec))
        if ml_symmetrized:
            c = abs(c)
        if c + 1.0 > 1e-12:
            t_ml = float(
                np.pi * (1.0 - np.sqrt(1.0 - target * target)) / (2.0 * ham.omega0 * (c + 1.0))
            )
        else:
            t_ml = float("inf")

    return ReachabilityReport(
        reachable=bool(reachable),
        tau_exact=t_exact,
        tau_mt=t_mt,
        tau_ml=t_ml,
        fisher=fisher,
        perp_norm=s,
        min_perr=min_perr,
    )


def faster_set_contains(r_ref, sigma, ham: HamiltonianSpec) -> bool:
    """True iff sigma's orbit reaches every level at least as fast as r_ref's.

    Membership only depends on the orbit radius: the set is the ring
    |n x r| >= |n x r_ref|, which contains mixed states whenever the
    reference is not a pure equator state.
    """
    return perp_norm(sigma, ham) >= perp_norm(r_ref, ham)


@dataclass(frozen=True, eq=False)
class RingScan:
    """Lattice samples of a fast ring, in lexicographic grid order.

    points[i] is a Bloch vector, tau_exact[i] its raw crossing time at
    the scan's implied level, fisher[i] its QFI.
    """

    points: np.ndarray
    tau_exact: np.ndarray
    fisher: np.ndarray
    theta_psi: float
    delta: float


def scan_ring(ham: HamiltonianSpec, theta_psi: float, grid: int) -> RingScan:
    """Scan a cubic Bloch-ball lattice for the ring |n x r| >= sin(theta_psi).

    theta_psi in [0, pi/2] is the polar angle of a reference pure state
    measured from the axis; the implied level is delta = (1 - sin
    theta_psi) / 2, and every sample satisfies tau_exact <= pi / (2 *
    omega0), with equality on the ring boundary. On-axis degenerate
    orbits are excluded. Output order is deterministic (lexicographic in
    the lattice indices), so results do not depend on how callers
    parallelize downstream work.
    """
    theta = float(theta_psi)
    if not 0.0 <= theta <= np.pi / 2.0:
        raise ValueError(f"theta_psi must lie in [0, pi/2], got {theta_psi!r}")
    res = int(grid)
    if res < 2:
        raise ValueError("grid resolution must be at least 2")

    ticks = np.linspace(-1.0, 1.0, res)
    gx, gy, gz = np.meshgrid(ticks, ticks, ticks, indexing="ij")
    pts = np.column_stack([gx.ravel(), gy.ravel(), gz.ravel()])
    inside = np.einsum("ij,ij->i", pts, pts) <= (1.0 + NORM_EPS) ** 2
    pts = pts[inside]

    s = np.linalg.norm(np.cross(pts, np.broadcast_to(ham.axis, pts.shape)), axis=1)
    sin_ref = float(np.sin(theta))
    keep = (s >= sin_ref - 1e-12) & (s > _DEGENERATE_TOL)
    pts, s = pts[keep], s[keep]

    delta = 0.5 * (1.0 - sin_ref)
    x = np.clip((1.0 - 2.0 * delta) / s, 0.0, 1.0)
    return RingScan(
        points=pts,
        tau_exact=np.arcsin(x) / ham.omega0,
        fisher=4.0 * (ham.omega0 * s) ** 2,
        theta_psi=theta,
        delta=delta,
    )
