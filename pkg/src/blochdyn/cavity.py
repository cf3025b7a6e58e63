"""Reduced qubit dynamics from resonant coupling to a single field mode.

The Jaynes-Cummings generator (hbar = 1)

    H = omega0 * (a'a + sigma_z / 2) + g * (a' sigma_- + a sigma_+)

conserves the excitation number a'a + (sigma_z + 1)/2, so on a Fock space
truncated at n_max the propagator V(t) factorizes over 2x2 blocks
span{|e,n>, |g,n+1>} for n = 0 .. n_max-1, plus the uncoupled |g,0> and
|e,n_max>. Each block is solved in closed form at the generalized Rabi
frequency sqrt(detuning^2 / 4 + g^2 (n+1)); a nonzero detuning shifts the
qubit splitting to omega0 + detuning while the mode stays at omega0.

For a pure initial field |psi> = sum_n c_n |n> the reduced qubit state is

    rho_S(t) = sum_n E_n(t) rho_S(0) E_n(t)',   E_n(t) = <n| V(t) |psi>,

with n = 0 .. n_max. Because V(t) is unitary on the truncated joint space
this Kraus family is complete to machine precision; fidelity to the
untruncated model is the field constructors' job, which reject cutoffs
whose analytic photon-number tail reaches 1e-10.

Frames: "lab" keeps the full phases of H; "rotating" removes the free
evolution omega0 * (a'a + sigma_z / 2). The two reduced states are related
by the local unitary exp(-i omega0 t sigma_z / 2), so they share
populations but generally differ in p_err.

Qubit basis: |e> = |0> is the +z pole of the Bloch ball.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaln

from .bloch import as_bloch, bloch_to_density, check_density
from .errors import NonphysicalOutput, TruncationTooSmall
from .speedlimits import check_delta

__all__ = [
    "TAIL_LIMIT",
    "CavityConfig",
    "DistinguishabilitySeries",
    "FieldState",
    "KrausSet",
    "cat_field",
    "coherent_field",
    "coherent_tail",
    "custom_field",
    "e0_field",
    "fock_field",
    "jc_propagate",
    "kraus_support",
    "make_field",
    "mean_photon",
    "nonunitary_tau",
    "perr_series",
    "photon_number_expectation",
    "reduced_series",
]

TAIL_LIMIT = 1e-10
_PHYS_TOL = 1e-8
_CHUNK = 4096


@dataclass(frozen=True, eq=False)
class CavityConfig:
    """Mode frequency, coupling, detuning, Fock cutoff, and frame choice.

    g defaults to omega0 / 20 when omitted. frame is "lab" or "rotating".
    """

    omega0: float = 1.0
    g: float | None = None
    detuning: float = 0.0
    n_max: int = 100
    frame: str = "lab"

    def __post_init__(self):
        if not self.omega0 > 0.0:
            raise ValueError("omega0 must be positive")
        g = self.omega0 / 20.0 if self.g is None else float(self.g)
        if not g > 0.0:
            raise ValueError("g must be positive")
        if int(self.n_max) < 1:
            raise ValueError("n_max must be at least 1")
        if self.frame not in ("lab", "rotating"):
            raise ValueError(f'frame must be "lab" or "rotating", got {self.frame!r}')
        object.__setattr__(self, "omega0", float(self.omega0))
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "detuning", float(self.detuning))
        object.__setattr__(self, "n_max", int(self.n_max))


@dataclass(frozen=True, eq=False)
class FieldState:
    """Truncated Fock expansion of the initial field state (unit norm)."""

    label: str
    amplitudes: np.ndarray
    alpha: complex | None = None

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size < 2:
            raise ValueError("amplitudes must be a 1-d array with n_max >= 1")
        if abs(np.linalg.norm(amps) - 1.0) > 1e-10:
            raise ValueError("amplitudes must have unit norm")
        object.__setattr__(self, "amplitudes", amps)

    @property
    def n_max(self) -> int:
        return self.amplitudes.size - 1


def mean_photon(field: FieldState) -> float:
    """<a'a> of the field state."""
    n = np.arange(field.amplitudes.size)
    return float(np.sum(n * np.abs(field.amplitudes) ** 2))


def _coherent_amplitudes(alpha: complex, n_max: int) -> np.ndarray:
    # log-domain magnitudes keep alpha^n / sqrt(n!) finite for any cutoff
    n = np.arange(n_max + 1)
    mag2 = abs(alpha) ** 2
    if mag2 == 0.0:
        amps = np.zeros(n_max + 1, dtype=complex)
        amps[0] = 1.0
        return amps
    logmag = -0.5 * mag2 + 0.5 * (n * np.log(mag2) - gammaln(n + 1.0))
    return np.exp(logmag) * np.exp(1j * n * np.angle(alpha))


def coherent_tail(alpha: complex, n_max: int) -> float:
    """Photon-number mass above n_max of the untruncated coherent state.

    This is the upper tail of a Poisson(|alpha|^2) distribution, written
    through the regularized incomplete gamma function, so no cancellation
    occurs even when the tail is far below machine epsilon.
    """
    return float(gammainc(n_max + 1, abs(alpha) ** 2))


def _check_tail(tail: float, detail: str) -> float:
    if tail >= TAIL_LIMIT:
        raise TruncationTooSmall(tail, detail)
    return tail


def coherent_field(alpha, n_max: int = 100) -> FieldState:
    """Coherent state c_n = exp(-|a|^2/2) a^n / sqrt(n!), truncated, renormalized."""
    alpha = complex(alpha)
    _check_tail(coherent_tail(alpha, n_max), f"coherent alpha={alpha}")
    amps = _coherent_amplitudes(alpha, n_max)
    return FieldState("coherent", amps / np.linalg.norm(amps), alpha)


def cat_field(alpha, n_max: int = 100, parity: str = "even") -> FieldState:
    """Even or odd coherent superposition |a> +/- |-a>, renormalized.

    Support sits on even (odd) photon numbers only, so adjacent Fock
    amplitudes never coexist; the zeros are exact by construction.
    """
    alpha = complex(alpha)
    if parity not in ("even", "odd"):
        raise ValueError(f'parity must be "even" or "odd", got {parity!r}')
    if parity == "odd" and alpha == 0:
        raise ValueError("the odd cat state vanishes at alpha = 0")
    base = _coherent_amplitudes(alpha, n_max)
    n = np.arange(n_max + 1)
    mask = n % 2 == 0 if parity == "even" else n % 2 == 1
    amps = np.where(mask, 2.0 * base, 0.0 + 0.0j)
    mag2 = abs(alpha) ** 2
    # untruncated norm^2 of the masked 2*c_n vector: 4 e^-m cosh(m) or 4 e^-m sinh(m)
    total = 2.0 * (1.0 + np.exp(-2.0 * mag2)) if parity == "even" else 2.0 * (
        1.0 - np.exp(-2.0 * mag2)
    )
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)) / total)
    _check_tail(tail, f"cat_{parity} alpha={alpha}")
    return FieldState(f"cat_{parity}", amps / np.linalg.norm(amps), alpha)


def e0_field(alpha, n_max: int = 100) -> FieldState:
    """Four-component superposition |a> + |-a> + |ia> + |-ia>, renormalized.

    The four quarter-turn phases add to 4 on photon numbers divisible by
    4 and cancel exactly elsewhere, so the support is n = 0 mod 4.
    """
    alpha = complex(alpha)
    base = _coherent_amplitudes(alpha, n_max)
    n = np.arange(n_max + 1)
    amps = np.where(n % 4 == 0, 4.0 * base, 0.0 + 0.0j)
    mag2 = abs(alpha) ** 2
    # untruncated norm^2: 16 e^-m sum_{4|n} m^n/n! = 4 (1 + e^-2m + 2 e^-m cos m)
    total = 4.0 * (1.0 + np.exp(-2.0 * mag2) + 2.0 * np.exp(-mag2) * np.cos(mag2))
    tail = max(0.0, 1.0 - float(np.sum(np.abs(amps) ** 2)) / total)
    _check_tail(tail, f"e0 alpha={alpha}")
    return FieldState("e0", amps / np.linalg.norm(amps), alpha)


def fock_field(n, n_max: int = 100) -> FieldState:
    """Single Fock component |n>. n = 0 is the vacuum."""
    k = int(n)
    if k < 0:
        raise ValueError("Fock index must be nonnegative")
    if k > n_max:
        raise TruncationTooSmall(1.0, f"Fock index {k} above cutoff {n_max}")
    amps = np.zeros(n_max + 1, dtype=complex)
    amps[k] = 1.0
    return FieldState("fock", amps, complex(k))


def custom_field(amplitudes) -> FieldState:
    """Wrap raw Fock amplitudes (normalized within 1e-10) as a field state."""
    amps = np.asarray(amplitudes, dtype=complex)
    if amps.ndim != 1 or amps.size < 2:
        raise ValueError("amplitudes must be a 1-d array with n_max >= 1")
    norm = float(np.linalg.norm(amps))
    if abs(norm - 1.0) > 1e-10:
        raise ValueError("custom amplitudes must be normalized within 1e-10")
    return FieldState("custom", amps / norm, None)


def make_field(label: str, alpha=0j, n_max: int = 100) -> FieldState:
    """Dispatch on a field label. For "fock", alpha is the occupation index."""
    if label == "coherent":
        return coherent_field(alpha, n_max)
    if label == "cat_even":
        return cat_field(alpha, n_max, "even")
    if label == "cat_odd":
        return cat_field(alpha, n_max, "odd")
    if label == "e0":
        return e0_field(alpha, n_max)
    if label == "fock":
        alpha = complex(alpha)
        if alpha.imag != 0.0 or alpha.real != round(alpha.real):
            raise ValueError("the fock label needs an integer occupation in alpha")
        return fock_field(int(alpha.real), n_max)
    raise ValueError(f"unknown field label {label!r} (custom states: custom_field)")


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Family of 2x2 qubit operators E_n(t) = <n|V(t)|psi>, n = 0 .. n_max."""

    t: float
    operators: np.ndarray

    def completeness_error(self) -> float:
        """Spectral norm of sum_n E_n' E_n - I. Machine-level for unit-norm fields."""
        s = np.einsum("nij,nik->jk", self.operators.conj(), self.operators)
        return float(np.abs(np.linalg.eigvalsh(s - np.eye(2))).max())

    def norms(self) -> np.ndarray:
        """Operator (spectral) norm of each E_n."""
        return np.linalg.svd(self.operators, compute_uv=False)[:, 0]


def _check_field(field: FieldState, cfg: CavityConfig) -> None:
    if field.n_max != cfg.n_max:
        raise ValueError(
            f"field cutoff {field.n_max} does not match config n_max {cfg.n_max}"
        )


def _block_coefficients(cfg: CavityConfig, times: np.ndarray):
    # Closed-form entries of exp(-i t M_n) on block n = 0 .. n_max-1, with
    # M_n = [[d/2, g_n], [g_n, -d/2]], g_n = g sqrt(n+1), d the detuning:
    #   u = cos(Om t) - i (d / 2 Om) sin(Om t),  v = -i (g_n / Om) sin(Om t)
    # so the block propagator is [[u, v], [v, conj(u)]] times a free phase.
    t = np.asarray(times, dtype=float).reshape(-1, 1)
    n = np.arange(cfg.n_max)
    gn = cfg.g * np.sqrt(n + 1.0)
    half_d = 0.5 * cfg.detuning
    om = np.hypot(half_d, gn)
    st = np.sin(om * t)
    ct = np.cos(om * t)
    u = ct - 1j * (half_d / om) * st
    v = -1j * (gn / om) * st

    tcol = t[:, 0]
    wq = cfg.omega0 + cfg.detuning  # qubit splitting
    if cfg.frame == "lab":
        ph = np.exp(-1j * cfg.omega0 * (n + 0.5) * t)
        ph_g0 = np.exp(0.5j * wq * tcol)
        ph_etop = np.exp(-1j * (cfg.n_max * cfg.omega0 + 0.5 * wq) * tcol)
    else:
        ph = np.ones_like(u)
        ph_g0 = np.exp(0.5j * cfg.detuning * tcol)
        ph_etop = np.exp(-0.5j * cfg.detuning * tcol)
    return u, v, ph, ph_g0, ph_etop


def _kraus_entries(field: FieldState, cfg: CavityConfig, times):
    # Entries of E_m(t), stacked over times; column m runs over 0 .. n_max.
    # A = <e|E|e>, B = <e|E|g>, C = <g|E|e>, D = <g|E|g>.
    c = field.amplitudes
    u, v, ph, ph_g0, ph_etop = _block_coefficients(cfg, times)
    nt = u.shape[0]
    n_max = cfg.n_max
    A = np.zeros((nt, n_max + 1), dtype=complex)
    B = np.zeros_like(A)
    C = np.zeros_like(A)
    D = np.zeros_like(A)
    A[:, :n_max] = c[:n_max] * ph * u
    A[:, n_max] = c[n_max] * ph_etop
    B[:, :n_max] = c[1:] * ph * v
    C[:, 1:] = c[:n_max] * ph * v
    D[:, 0] = c[0] * ph_g0
    D[:, 1:] = c[1:] * ph * np.conj(u)
    return A, B, C, D


def _reduced_entries(A, B, C, D, rho0):
    p = rho0[0, 0].real
    q = rho0[1, 1].real
    b = rho0[0, 1]
    ee = (
        p * np.sum(np.abs(A) ** 2, axis=1)
        + q * np.sum(np.abs(B) ** 2, axis=1)
        + 2.0 * np.real(b * np.sum(A * np.conj(B), axis=1))
    )
    gg = (
        p * np.sum(np.abs(C) ** 2, axis=1)
        + q * np.sum(np.abs(D) ** 2, axis=1)
        + 2.0 * np.real(b * np.sum(C * np.conj(D), axis=1))
    )
    eg = (
        p * np.sum(A * np.conj(C), axis=1)
        + q * np.sum(B * np.conj(D), axis=1)
        + b * np.sum(A * np.conj(D), axis=1)
        + np.conj(b) * np.sum(B * np.conj(C), axis=1)
    )
    return ee, eg, gg


def _check_physical(ee, eg, gg) -> None:
    tr_dev = np.abs(ee + gg - 1.0)
    # smallest eigenvalue of [[ee, eg], [conj(eg), gg]]
    lo = 0.5 * (ee + gg - np.sqrt((ee - gg) ** 2 + 4.0 * np.abs(eg) ** 2))
    if tr_dev.max() > _PHYS_TOL or lo.min() < -_PHYS_TOL:
        raise NonphysicalOutput(
            f"reduced state broke physicality: |tr-1| up to {tr_dev.max():.3e}, "
            f"min eigenvalue {lo.min():.3e}"
        )


def reduced_series(field: FieldState, qubit, cfg: CavityConfig, times, workers: int = 1):
    """Reduced qubit states at the given times, shape (len(times), 2, 2).

    Evaluation is chunked; with workers > 1 the fixed-size chunks are
    fanned out to a thread pool and reassembled in order, so the output
    is bit-identical for any worker count.
    """
    rho0 = check_density(qubit)
    _check_field(field, cfg)
    tgrid = np.asarray(times, dtype=float)
    if tgrid.ndim != 1:
        raise ValueError("times must be one-dimensional")
    if tgrid.size and float(tgrid.min()) < 0.0:
        raise ValueError("times must be nonnegative")

    def eval_chunk(lo: int):
        hi = min(lo + _CHUNK, tgrid.size)
        A, B, C, D = _kraus_entries(field, cfg, tgrid[lo:hi])
        return _reduced_entries(A, B, C, D, rho0)

    starts = range(0, tgrid.size, _CHUNK)
    if workers and int(workers) > 1:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            parts = list(pool.map(eval_chunk, starts))
    else:
        parts = [eval_chunk(lo) for lo in starts]

    ee = np.concatenate([p[0] for p in parts]) if parts else np.empty(0)
    eg = np.concatenate([p[1] for p in parts]) if parts else np.empty(0, complex)
    gg = np.concatenate([p[2] for p in parts]) if parts else np.empty(0)
    _check_physical(ee, eg, gg)

    out = np.empty((tgrid.size, 2, 2), dtype=complex)
    out[:, 0, 0] = ee
    out[:, 0, 1] = eg
    out[:, 1, 0] = np.conj(eg)
    out[:, 1, 1] = gg
    return out


def jc_propagate(field: FieldState, qubit, cfg: CavityConfig, t: float):
    """Reduced qubit state and Kraus family at a single time.

    The evolution is exact on the truncated joint space, so the family is
    complete and the map trace preserving to machine precision; at t = 0
    every E_n is c_n times the identity. NonphysicalOutput signals a
    numerically broken amplitude vector, not roundoff.
    """
    rho0 = check_density(qubit)
    _check_field(field, cfg)
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    A, B, C, D = _kraus_entries(field, cfg, [float(t)])
    ops = np.empty((cfg.n_max + 1, 2, 2), dtype=complex)
    ops[:, 0, 0] = A[0]
    ops[:, 0, 1] = B[0]
    ops[:, 1, 0] = C[0]
    ops[:, 1, 1] = D[0]
    ee, eg, gg = _reduced_entries(A, B, C, D, rho0)
    _check_physical(ee, eg, gg)
    rho_t = np.array([[ee[0], eg[0]], [np.conj(eg[0]), gg[0]]])
    return rho_t, KrausSet(t=float(t), operators=ops)


def kraus_support(field: FieldState, cfg: CavityConfig, t: float, tol: float = 1e-12):
    """Indices n with operator norm ||E_n(t)|| > tol, ascending."""
    _check_field(field, cfg)
    if t < 0.0:
        raise ValueError("t must be nonnegative")
    A, B, C, D = _kraus_entries(field, cfg, [float(t)])
    ops = np.empty((cfg.n_max + 1, 2, 2), dtype=complex)
    ops[:, 0, 0] = A[0]
    ops[:, 0, 1] = B[0]
    ops[:, 1, 0] = C[0]
    ops[:, 1, 1] = D[0]
    norms = np.linalg.svd(ops, compute_uv=False)[:, 0]
    return np.flatnonzero(norms > tol)


def photon_number_expectation(kraus: KrausSet, qubit) -> float:
    """<a'a> at the KrausSet's time: sum_n n tr(E_n rho E_n')."""
    rho0 = check_density(qubit)
    weights = np.einsum(
        "nij,jk,nik->n", kraus.operators, rho0, kraus.operators.conj()
    ).real
    return float(np.sum(np.arange(weights.size) * weights))


@dataclass(frozen=True, eq=False)
class DistinguishabilitySeries:
    """Sampled curve t -> p_err(rho_S(0), rho_S(t)) with its provenance.

    times are raw; multiply by config.omega0 for dimensionless units.
    """

    times: np.ndarray
    p_err: np.ndarray
    config: CavityConfig
    qubit_r: np.ndarray
    field_label: str
    field_alpha: complex | None

    @property
    def samples(self):
        """Iterator of (t, p_err) pairs."""
        return zip(self.times.tolist(), self.p_err.tolist())


def perr_series(
    field: FieldState,
    qubit_r,
    cfg: CavityConfig,
    t_max: float | None = None,
    steps: int = 10_000,
    workers: int = 1,
) -> DistinguishabilitySeries:
    """Helstrom error of the evolved vs initial qubit on a uniform grid.

    The grid is ``steps`` samples spanning [0, t_max] inclusive, with
    t_max defaulting to 100 / omega0. The first sample is always
    (0, 1/2). Deterministic for fixed inputs and any worker count.
    """
    r0 = as_bloch(qubit_r)
    if t_max is None:
        t_max = 100.0 / cfg.omega0
    if float(t_max) <= 0.0:
        raise ValueError("t_max must be positive")
    if int(steps) < 2:
        raise ValueError("steps must be at least 2")
    times = np.linspace(0.0, float(t_max), int(steps))
    rho = reduced_series(field, bloch_to_density(r0), cfg, times, workers=workers)

    dx = 2.0 * rho[:, 0, 1].real - r0[0]
    dy = -2.0 * rho[:, 0, 1].imag - r0[1]
    dz = (rho[:, 0, 0] - rho[:, 1, 1]).real - r0[2]
    pe = np.clip(0.5 - 0.25 * np.sqrt(dx * dx + dy * dy + dz * dz), 0.0, 0.5)
    return DistinguishabilitySeries(
        times=times,
        p_err=pe,
        config=cfg,
        qubit_r=r0,
        field_label=field.label,
        field_alpha=field.alpha,
    )


def nonunitary_tau(series: DistinguishabilitySeries, delta, atol: float = 1e-9):
    """First time the sampled curve reaches p_err <= delta, or None.

    The crossing is located by linear interpolation between the two
    bracketing grid samples. ``atol`` widens the test to delta + atol so
    tangential dips that touch the level between samples (for example a
    delta = 0 minimum) are still caught on a fine enough grid; pass
    atol=0 for the strict test. Quadratic refinement is deliberately not
    attempted; near oscillation extrema it is spurious.
    """
    d = check_delta(delta)
    hits = np.flatnonzero(series.p_err <= d + atol)
    if hits.size == 0:
        return None
    i = int(hits[0])
    if i == 0:
        return float(series.times[0])
    t0, t1 = float(series.times[i - 1]), float(series.times[i])
    p0, p1 = float(series.p_err[i - 1]), float(series.p_err[i])
    if p0 <= p1:
        return t1
    frac = min(max((p0 - d) / (p0 - p1), 0.0), 1.0)
    return t0 + frac * (t1 - t0)
