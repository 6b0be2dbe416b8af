"""Closed-form sensitivity expressions and their optimizers.

Covers the rotation-estimator variances of designs C, S, D, P, E, the
optimal laser/squeezer energy split, the optimal fiber length for each
design (via Lambert-W exponents), the optimal interferometer count under a
total-fiber-length constraint, and the quantum-over-classical sensitivity
ratios with their infinite-squeezing limits.

Normalization conventions
-------------------------
Raw estimator variances carry units rad^2/s^2 and take the per-
interferometer time factor ``T`` explicitly.  Length-resolved quantities
are reported "normalized": multiplied by n_v / V^2 where ``n_v`` is the
per-fiber laser photon budget and ``V = L / T`` the (length-independent)
length-to-time ratio of the coil geometry.  Normalized variances have units
1/km^2 and depend only on the fiber loss coefficient, lengths, the
interferometer count, and the squeezed photon number.

Infinite squeezing is supported as ``math.inf`` photons; the Lambert-W
exponents and ratios take their analytic limits rather than evaluating
hyperbolic functions at infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LN10 = math.log(10.0)

#: Branch point of the principal Lambert-W branch.
_W_BRANCH = -math.exp(-1.0)

#: Residual tolerance of :func:`lambert_w0` relative to max(1, |x|).
W_RESIDUAL_TOL = 1e-13


# ---------------------------------------------------------------------------
# Lambert W, principal branch
# ---------------------------------------------------------------------------

def _w_branch_series(p: float) -> float:
    # Expansion around the branch point in p = sqrt(2 (1 + e x)).
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0 - p * 43.0 / 540.0)))


def lambert_w0(x: float) -> float:
    """Principal branch of w * exp(w) = x, defined for x >= -1/e.

    Guarded Halley iteration from a regime-appropriate initial guess
    (branch-point series near -1/e, log asymptotics for large x), with a
    bisection fallback whenever a step leaves the current sign-change
    bracket.  The residual |w e^w - x| is at most 1e-13 * max(1, |x|).
    """
    if math.isnan(x):
        raise ValueError("lambert_w0 argument must be a number")
    if x < _W_BRANCH - 1e-12:
        raise ValueError(f"lambert_w0 argument {x} below the branch point -1/e")
    x = max(x, _W_BRANCH)
    if x == 0.0:
        return 0.0

    p_sq = 2.0 * (1.0 + math.e * x)
    p = math.sqrt(max(p_sq, 0.0))
    if p < 1e-4:
        # So close to the branch point that the series is already exact to
        # double precision and Halley would divide by a vanishing slope.
        return _w_branch_series(p)

    if x > math.e:
        log_x = math.log(x)
        w = log_x - math.log(log_x)
    else:
        w = _w_branch_series(p)

    # w e^w is increasing on [-1, inf); keep a sign-change bracket for safety.
    lo, hi = -1.0, max(1.0, w + 1.0)
    while hi * math.exp(hi) < x:
        hi *= 2.0
    w = min(max(w, lo), hi)

    tol = W_RESIDUAL_TOL * max(1.0, abs(x))
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        if abs(f) <= 0.1 * tol:
            return w
        if f > 0.0:
            hi = w
        else:
            lo = w
        fp = ew * (1.0 + w)
        fpp = ew * (2.0 + w)
        denominator = fp - 0.5 * f * fpp / fp if fp != 0.0 else 0.0
        if denominator != 0.0:
            step = f / denominator
            candidate = w - step
        else:
            candidate = math.nan
        if not (lo < candidate < hi) or not math.isfinite(candidate):
            candidate = 0.5 * (lo + hi)
        if candidate == w:
            return w
        w = candidate
    if abs(w * math.exp(w) - x) > tol:
        raise ArithmeticError(f"lambert_w0 failed to converge for x = {x}")
    return w


# ---------------------------------------------------------------------------
# Squeezing helpers and Lambert-W exponents
# ---------------------------------------------------------------------------

def squeeze_factor(n_squeezed: float) -> float:
    """Quantum-noise division factor (sqrt(1 + N_s) + sqrt(N_s))^2.

    Equals 10^(sigma/10) for sigma dB of squeezing; the squeezed-quadrature
    variance is the vacuum variance divided by this factor.
    """
    if n_squeezed < 0:
        raise ValueError("squeezed photon number must be nonnegative")
    if math.isinf(n_squeezed):
        return math.inf
    return (math.sqrt(1.0 + n_squeezed) + math.sqrt(n_squeezed)) ** 2


def inverse_squeeze_factor(n_squeezed: float) -> float:
    """1 / squeeze_factor, evaluating to 0 in the infinite-squeezing limit."""
    if n_squeezed < 0:
        raise ValueError("squeezed photon number must be nonnegative")
    if math.isinf(n_squeezed):
        return 0.0
    return 1.0 / (math.sqrt(1.0 + n_squeezed) + math.sqrt(n_squeezed)) ** 2


def length_exponent(n_squeezed: float) -> float:
    """Lambert-W exponent governing the optimal fiber length with one squeezer.

    W(4 (x - sqrt(x (1 + x))) / e^2); lies in (W(-2/e^2), 0] and tends to
    W(-2/e^2) = -0.4064 as the squeezing grows.
    """
    if n_squeezed < 0:
        raise ValueError("squeezed photon number must be nonnegative")
    if math.isinf(n_squeezed):
        return lambert_w0(-2.0 / math.e**2)
    x = n_squeezed
    return lambert_w0(4.0 * (x - math.sqrt(x * (1.0 + x))) / math.e**2)


def length_exponent_product(n_squeezed: float, m: int) -> float:
    """Optimal-length exponent for M interferometers with independent squeezers.

    W(4 (x - sqrt(x (M + x))) / (M e^2)); reduces to ``length_exponent`` at
    M = 1.
    """
    if n_squeezed < 0:
        raise ValueError("squeezed photon number must be nonnegative")
    if m < 1:
        raise ValueError("interferometer count must be at least 1")
    if math.isinf(n_squeezed):
        return lambert_w0(-2.0 / math.e**2)
    x = n_squeezed
    return lambert_w0(4.0 * (x - math.sqrt(x * (m + x))) / (m * math.e**2))


def array_size_exponent(n_squeezed: float) -> float:
    """Lambert-W exponent governing the optimal interferometer count.

    W(2 (x - sqrt(x (1 + x))) / e) = W((1/g - 1) / e) with
    g = squeeze_factor(x).  This is the exponent that actually solves the
    fixed-total-length stationarity condition d(variance)/dM = 0 for the
    entangled design: substituting u = c L / M gives
    (u - 1) e^(u - 1) = (1/g - 1)/e.  It runs from 0 (no squeezing) to -1
    (infinite squeezing), where the branch point of W is reached.
    """
    if n_squeezed < 0:
        raise ValueError("squeezed photon number must be nonnegative")
    if math.isinf(n_squeezed):
        return -1.0
    x = n_squeezed
    return lambert_w0(2.0 * (x - math.sqrt(x * (1.0 + x))) / math.e)


# ---------------------------------------------------------------------------
# Estimator variances (fixed transmissivity)
# ---------------------------------------------------------------------------

def classical_variance(time_factor_s: float, eta: float, n_photons: float) -> float:
    """Rotation-estimator variance of the laser-only single interferometer."""
    _check_positive(time_factor_s, "time factor")
    _check_eta(eta, allow_zero=False)
    _check_positive(n_photons, "photon number")
    return 1.0 / (time_factor_s**2 * eta * n_photons)


def squeezed_variance(
    time_factor_s: float, eta: float, n_v: float, n_squeezed: float
) -> float:
    """Estimator variance with squeezed vacuum in the dark port.

    classical_variance * (eta / g + 1 - eta) with g the squeeze factor.
    """
    return classical_variance(time_factor_s, eta, n_v) * (
        eta * inverse_squeeze_factor(n_squeezed) + 1.0 - eta
    )


def distributed_variance(
    time_factor_s: float, eta: float, m: int, n_v: float
) -> float:
    """Laser-only array of M interferometers, per-fiber budget ``n_v``."""
    return classical_variance(time_factor_s, eta, m * n_v)


def product_variance(
    time_factor_s: float, eta: float, m: int, n_v: float, n_squeezed: float
) -> float:
    """Array with an independent squeezer per interferometer.

    The per-port squeezed photon number is n_squeezed / M, which makes the
    quantum term eta * M / (sqrt(M + N_s) + sqrt(N_s))^2.
    """
    if math.isinf(n_squeezed):
        quantum = 0.0
    else:
        quantum = eta * m / (math.sqrt(m + n_squeezed) + math.sqrt(n_squeezed)) ** 2
    return classical_variance(time_factor_s, eta, m * n_v) * (quantum + 1.0 - eta)


def entangled_variance(
    time_factor_s: float, eta: float, m: int, n_v: float, n_squeezed: float
) -> float:
    """Array fed by a single squeezer split into an M-mode entangled probe.

    Identical to the single-squeezer form with the full ``n_squeezed``,
    regardless of M.
    """
    return classical_variance(time_factor_s, eta, m * n_v) * (
        eta * inverse_squeeze_factor(n_squeezed) + 1.0 - eta
    )


def design_variance(
    variant: str,
    time_factor_s: float,
    eta: float,
    m: int = 1,
    n_v: float = 1.0,
    n_squeezed: float = 0.0,
) -> float:
    """Estimator variance of any design at fixed transmissivity.

    ``time_factor_s`` is the per-interferometer time factor and ``n_v`` the
    per-fiber laser photon budget (equal to the total for C and S).
    """
    if variant == "C":
        return classical_variance(time_factor_s, eta, n_v)
    if variant == "S":
        return squeezed_variance(time_factor_s, eta, n_v, n_squeezed)
    if variant == "D":
        return distributed_variance(time_factor_s, eta, m, n_v)
    if variant == "P":
        return product_variance(time_factor_s, eta, m, n_v, n_squeezed)
    if variant == "E":
        return entangled_variance(time_factor_s, eta, m, n_v, n_squeezed)
    raise ValueError(f"unknown design variant {variant!r}")


# ---------------------------------------------------------------------------
# Length-resolved (normalized) variances
# ---------------------------------------------------------------------------

def classical_variance_vs_length(
    b: float, length_km: float, n_photons: float = 1.0, velocity_scale: float = 1.0
) -> float:
    """Classical estimator variance as a function of fiber length.

    (V^2 / N_v) / (L^2 * 10^(-b L / 10)); with the default unit arguments
    this is the normalized variance in 1/km^2.
    """
    _check_positive(b, "loss coefficient")
    _check_positive(length_km, "fiber length")
    eta = 10.0 ** (-b * length_km / 10.0)
    return velocity_scale**2 / (n_photons * length_km**2 * eta)


def variance_vs_length(
    variant: str,
    b: float,
    length_km: float,
    m: int = 1,
    n_squeezed: float = 0.0,
) -> float:
    """Normalized estimator variance (units 1/km^2) of any design.

    ``length_km`` is the total fiber budget, shared as L/M per
    interferometer, so the per-interferometer transmissivity is
    10^(-b L / (10 M)).  The same expression serves both the
    unconstrained-length optimization (minimize over L at fixed M) and the
    fixed-length optimization (minimize over M at fixed L).
    """
    _check_positive(b, "loss coefficient")
    _check_positive(length_km, "fiber length")
    if m < 1:
        raise ValueError("interferometer count must be at least 1")
    inverse_eta = math.exp(b * LN10 / 10.0 * length_km / m)
    if variant in ("C", "D"):
        quantum = 1.0
        if n_squeezed != 0:
            raise ValueError(f"design {variant} takes no squeezed light")
    elif variant in ("S", "E"):
        quantum = inverse_squeeze_factor(n_squeezed)
    elif variant == "P":
        if math.isinf(n_squeezed):
            quantum = 0.0
        else:
            quantum = m / (math.sqrt(m + n_squeezed) + math.sqrt(n_squeezed)) ** 2
    else:
        raise ValueError(f"unknown design variant {variant!r}")
    if variant in ("C", "S") and m != 1:
        raise ValueError(f"design {variant} uses a single interferometer")
    return m * (quantum - 1.0 + inverse_eta) / length_km**2


# ---------------------------------------------------------------------------
# Optimal energy split between laser and squeezer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnergySplit:
    """Optimal allocation of a fixed photon budget between laser and squeezer."""

    n_squeezed: float
    variance: float


def optimal_energy_split(
    n_total: float, eta: float, time_factor_s: float = 1.0
) -> EnergySplit:
    """Minimize the squeezed-design variance over the laser/squeezer split.

    With z = sqrt(1 + 4 eta (1 - eta) N) the optimal squeezed photon number
    is 2 eta^2 N^2 / (1 + z + 2 eta N (2 - eta + z)).  The minimum variance
    is evaluated in the cancellation-free equivalent form
    (1 + 2 (1 - eta) N + z) / (2 T^2 eta N (N + 1)), which continues
    analytically to 1 / (T^2 N (N + 1)) at eta = 1.
    """
    _check_positive(n_total, "total photon number")
    _check_eta(eta, allow_zero=False)
    _check_positive(time_factor_s, "time factor")
    loss = 1.0 - eta
    z = math.sqrt(1.0 + 4.0 * eta * loss * n_total)
    n_s = (
        2.0 * eta**2 * n_total**2
        / (1.0 + z + 2.0 * eta * n_total * (2.0 - eta + z))
    )
    variance = (1.0 + 2.0 * loss * n_total + z) / (
        2.0 * time_factor_s**2 * eta * n_total * (n_total + 1.0)
    )
    return EnergySplit(n_squeezed=n_s, variance=variance)


# ---------------------------------------------------------------------------
# Optimal fiber length (unconstrained total length)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LengthOptimum:
    """Optimal total fiber length and the normalized variance it achieves.

    ``variance_normalized`` is in units of V^-2 n_v (1/km^2 for unit
    geometry), i.e. per-fiber photon budget; for the distributed designs it
    therefore equals the single-interferometer value divided by M.
    """

    length_km: float
    variance_normalized: float


def optimal_length(
    variant: str, b: float, n_squeezed: float = 0.0, m: int = 1
) -> LengthOptimum:
    """Fiber length minimizing the normalized estimator variance.

    Classical designs: L = 20 / (ln(10) b) (times M for the array), with
    variance e^2 ln(10)^2 b^2 / 400 per fiber budget.  Squeezed designs
    shorten the fiber through the length exponent lam:
    L = 10 (2 + lam) / (ln(10) b) and variance
    e^(2 + lam) ln(10)^2 b^2 / (200 (2 + lam)), again scaled by M for the
    arrays (with the per-port exponent for design P).
    """
    _check_positive(b, "loss coefficient")
    if m < 1:
        raise ValueError("interferometer count must be at least 1")
    if variant in ("C", "S") and m != 1:
        raise ValueError(f"design {variant} uses a single interferometer")
    if variant in ("C", "D"):
        if n_squeezed != 0:
            raise ValueError(f"design {variant} takes no squeezed light")
        length = 20.0 / (LN10 * b)
        variance = math.e**2 * LN10**2 * b**2 / 400.0
    elif variant in ("S", "E"):
        lam = length_exponent(n_squeezed)
        length = 10.0 * (2.0 + lam) / (LN10 * b)
        variance = math.exp(2.0 + lam) * LN10**2 * b**2 / (200.0 * (2.0 + lam))
    elif variant == "P":
        lam = length_exponent_product(n_squeezed, m)
        length = 10.0 * (2.0 + lam) / (LN10 * b)
        variance = math.exp(2.0 + lam) * LN10**2 * b**2 / (200.0 * (2.0 + lam))
    else:
        raise ValueError(f"unknown design variant {variant!r}")
    if variant in ("D", "P", "E"):
        length *= m
        variance /= m
    return LengthOptimum(length_km=length, variance_normalized=variance)


# ---------------------------------------------------------------------------
# Optimal interferometer count (fixed total length)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntegerOptimum:
    """Continuous optimum of the interferometer count and its integer choice.

    The integer is picked by evaluating the variance at the floor and the
    ceiling of the continuous optimum and keeping the smaller;
    ``below_threshold`` flags a continuous optimum under 1, in which case a
    single interferometer is reported.
    """

    continuous: float
    variance_continuous: float
    floor_candidate: int
    ceil_candidate: int
    variance_floor: float
    variance_ceil: float
    chosen: int
    variance_chosen: float
    below_threshold: bool = False


def optimal_m(
    variant: str, b: float, length_km: float, n_squeezed: float = 0.0
) -> IntegerOptimum:
    """Interferometer count minimizing the variance at fixed total length.

    Laser-only array: M = b L ln(10) / 10 with normalized variance
    b e ln(10) / (10 L).  Entangled array: the denominator gains
    (1 + array_size_exponent(N_s)) and the variance the factor
    e^(array_size_exponent); at zero squeezing both reduce to the laser-only
    values.
    """
    _check_positive(b, "loss coefficient")
    _check_positive(length_km, "fiber length")
    c = b * LN10 / 10.0
    if variant == "D":
        if n_squeezed != 0:
            raise ValueError("design D takes no squeezed light")
        continuous = c * length_km
        variance_continuous = c * math.e / length_km
    elif variant == "E":
        if math.isinf(n_squeezed):
            raise ValueError(
                "the continuous optimum diverges at infinite squeezing; "
                "evaluate the ratio limit instead"
            )
        exponent = array_size_exponent(n_squeezed)
        continuous = c * length_km / (1.0 + exponent)
        variance_continuous = c * math.exp(1.0 + exponent) / length_km
    else:
        raise ValueError("closed-form count optimization covers designs D and E")

    below = continuous < 1.0
    floor_candidate = max(1, math.floor(continuous))
    ceil_candidate = max(1, math.ceil(continuous))
    variance_floor = variance_vs_length(variant, b, length_km, floor_candidate, n_squeezed)
    variance_ceil = variance_vs_length(variant, b, length_km, ceil_candidate, n_squeezed)
    if variance_floor <= variance_ceil:
        chosen, variance_chosen = floor_candidate, variance_floor
    else:
        chosen, variance_chosen = ceil_candidate, variance_ceil
    return IntegerOptimum(
        continuous=continuous,
        variance_continuous=variance_continuous,
        floor_candidate=floor_candidate,
        ceil_candidate=ceil_candidate,
        variance_floor=variance_floor,
        variance_ceil=variance_ceil,
        chosen=chosen,
        variance_chosen=variance_chosen,
        below_threshold=below,
    )


# ---------------------------------------------------------------------------
# Sensitivity ratios against the matched classical baseline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioSet:
    """Quantum-over-classical variance ratios (smaller is better).

    ``fixed_eta`` compares at equal transmissivity and is shared by the
    single-squeezer, entangled, and per-port-budget product designs; it is
    None when no transmissivity was supplied.  ``optimal_length`` compares
    length-optimized sensors (limit 0.836) and ``optimal_m`` compares
    count-optimized sensors at fixed total length (limit 1/e).
    """

    n_squeezed: float
    fixed_eta: float | None
    optimal_length: float
    optimal_m: float


def ratio_fixed_eta(n_squeezed: float, eta: float) -> float:
    """eta / g + 1 - eta; tends to 1 - eta with infinite squeezing."""
    _check_eta(eta, allow_zero=False)
    return eta * inverse_squeeze_factor(n_squeezed) + 1.0 - eta


def ratio_product_fixed_eta(n_squeezed: float, eta: float, m: int) -> float:
    """Fixed-transmissivity ratio for the product design with a shared budget."""
    _check_eta(eta, allow_zero=False)
    if m < 1:
        raise ValueError("interferometer count must be at least 1")
    if math.isinf(n_squeezed):
        quantum = 0.0
    else:
        quantum = eta * m / (math.sqrt(m + n_squeezed) + math.sqrt(n_squeezed)) ** 2
    return quantum + 1.0 - eta


def ratio_optimal_length(n_squeezed: float) -> float:
    """2 e^lam / (2 + lam) with lam the length exponent; limit 0.836."""
    lam = length_exponent(n_squeezed)
    return 2.0 * math.exp(lam) / (2.0 + lam)


def ratio_optimal_m(n_squeezed: float) -> float:
    """e^(array size exponent); independent of b and L, limit 1/e."""
    return math.exp(array_size_exponent(n_squeezed))


def sensitivity_ratios(n_squeezed: float, eta: float | None = None) -> RatioSet:
    """All three sensitivity ratios for a given squeezed photon number."""
    return RatioSet(
        n_squeezed=n_squeezed,
        fixed_eta=None if eta is None else ratio_fixed_eta(n_squeezed, eta),
        optimal_length=ratio_optimal_length(n_squeezed),
        optimal_m=ratio_optimal_m(n_squeezed),
    )


@dataclass(frozen=True)
class SensitivityReport:
    """Variance plus optional optimization metadata, tagged with provenance."""

    variance_normalized: float
    provenance: str
    optimal_length_km: float | None = None
    optimal_m: IntegerOptimum | None = None
    ratio: float | None = None

    def __post_init__(self) -> None:
        if not self.variance_normalized > 0:
            raise ValueError("normalized variance must be positive")
        if self.provenance not in ("analytic", "simulated", "numeric-optimum"):
            raise ValueError(f"unknown provenance {self.provenance!r}")


# ---------------------------------------------------------------------------
# Small argument checks
# ---------------------------------------------------------------------------

def _check_positive(value: float, name: str) -> None:
    if not value > 0:
        raise ValueError(f"{name} must be positive, got {value}")


def _check_eta(eta: float, allow_zero: bool = True) -> None:
    low_ok = eta >= 0.0 if allow_zero else eta > 0.0
    if not (low_ok and eta <= 1.0):
        raise ValueError(f"transmissivity must lie in {'[0, 1]' if allow_zero else '(0, 1]'}, got {eta}")
