"""Dual conserved-charge hierarchies from the Riccati dressing expansions.

Writing the half-line solution as R = (1 + Gamma) e^Y / sqrt(2) with Gamma
off-diagonal and Y diagonal turns the auxiliary problem into a Riccati
equation for Gamma and a quadrature for Y.  Expanding at large lambda gives
coefficients Gamma_n local in the field; their (2,1) components q_n obey

    q_{n+1} = -(2i/m) q_n' - (beta/m) w q_n + s (i/2) e_+ delta_{n,1}
              + (i/2) sum_{p=1}^{n} q_p q_{n+1-p}
              + s (i/2) e_- sum_{p=0}^{n-1} q_p q_{n-1-p},      q_0 = i,

with w = phi_t + phi_x (the on-shell value of both pi + phi_x and
phi_t - Pi), e_pm = exp(+-i beta phi), and the sign s = -1 in the space
picture, s = +1 in the time picture.  The (1,1) components decouple the same
way and are not needed for the charges.  The small-lambda side follows from
the substitution symmetry "flip phi, keep the momentum": primed coefficients
are the same recursion evaluated with w -> phi_t - phi_x (space picture,
times -1 in the time picture) and e_+ <-> e_-.

Charge densities, all verified here by conservation and by cross-checking
against the monodromy logarithm ln a (space) / ln fa (time):

    space, large lambda: y_n'   = (i m/4) (q_{n+1} - e_- q_{n-1} + i d_{n1})
    time,  large lambda: Y_n'   = (i m/4) (q_{n+1} + e_- q_{n-1} - i d_{n1})
    space, small lambda: y'_n'  = (i m/4) (-1)^(n+1) (e_+ q'_{n-1} - q'_{n+1})
                                  + (m/4) d_{n1}; order 0: -(beta/2) phi_x
    time,  small lambda: Y'_n'  = (i m/4) (e_+ q'_{n-1} + q'_{n+1} - i d_{n1});
                                  order 0: -(beta/2) phi_t

I_n (space) is time-conserved, J_n (time) space-conserved;
I_{-1} - I_1 = (beta^2/2m) H_S and J_1 + J_{-1} = (beta^2/2m) H_T.

Field dependence enters through truncated Taylor jets along the running
coordinate, so the q_n' derivatives are exact to roundoff; no nested finite
differences anywhere.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from .fields import FieldEvaluator, GridWindow, hamiltonian_S, hamiltonian_T, simpson_uniform
from .lax import build_U_hat, build_V_hat, spectral
from .transition import default_nsteps, monodromy

__all__ = [
    "RiccatiCoefficients",
    "ChargeLedger",
    "IdentityReport",
    "LnaFitReport",
    "UnwindingError",
    "riccati_coeffs",
    "charges_infinity",
    "charges_zero",
    "build_ledger",
    "energy_identity_S",
    "energy_identity_T",
    "lna_asymptotic_fit",
    "fit_charges_from_monodromy",
]

MAX_ORDER = 6  # higher coefficients are numerically noisy and out of scope


class UnwindingError(ValueError):
    """Branch continuity of the complex logarithm could not be enforced."""


# ---------------------------------------------------------------------------
# truncated Taylor jets: arrays (npts, deg+1) of coefficients f^(j)/j!
# ---------------------------------------------------------------------------


def _jet_mul(a, b):
    deg = a.shape[1] - 1
    out = np.zeros_like(a)
    for k in range(deg + 1):
        out[:, k] = np.einsum("ij,ij->i", a[:, : k + 1], b[:, k::-1])
    return out


def _jet_exp(g):
    out = np.zeros_like(g, dtype=complex)
    out[:, 0] = np.exp(g[:, 0])
    for k in range(1, g.shape[1]):
        acc = 0.0
        for j in range(1, k + 1):
            acc = acc + j * g[:, j] * out[:, k - j]
        out[:, k] = acc / k
    return out


def _jet_deriv(a):
    out = np.zeros_like(a)
    deg = a.shape[1] - 1
    out[:, :deg] = a[:, 1:] * np.arange(1, deg + 1)
    return out


def _jet_const(value, npts, deg):
    out = np.zeros((npts, deg + 1), dtype=complex)
    out[:, 0] = value
    return out


def _phi_jets(field: FieldEvaluator, picture: str, fixed: float, svals: np.ndarray, deg: int):
    """Jets of phi, phi_t + phi_x and phi_t - phi_x along the running axis."""
    npts = svals.size
    phi = np.zeros((npts, deg + 1), dtype=complex)
    wp = np.zeros((npts, deg + 1), dtype=complex)
    wm = np.zeros((npts, deg + 1), dtype=complex)
    fact = 1.0
    for j in range(deg + 1):
        if j:
            fact *= j
        if picture == "space":
            base = field.derivative(svals, np.full_like(svals, fixed), j, 0)
            d_t = field.derivative(svals, np.full_like(svals, fixed), j, 1)
            d_x = field.derivative(svals, np.full_like(svals, fixed), j + 1, 0)
        elif picture == "time":
            base = field.derivative(np.full_like(svals, fixed), svals, 0, j)
            d_t = field.derivative(np.full_like(svals, fixed), svals, 0, j + 1)
            d_x = field.derivative(np.full_like(svals, fixed), svals, 1, j)
        else:
            raise ValueError(f"unknown picture {picture!r}")
        phi[:, j] = np.asarray(base) / fact
        wp[:, j] = (np.asarray(d_t) + np.asarray(d_x)) / fact
        wm[:, j] = (np.asarray(d_t) - np.asarray(d_x)) / fact
    return phi, wp, wm


class RiccatiCoefficients:
    """Off-diagonal dressing coefficients along one line of the spacetime.

    ``flipped=True`` selects the substituted branch used by the small-lambda
    expansions (phi -> -phi with the momentum kept).  Coefficient 0 is
    i*sigma1 everywhere; for order n the jets stay exact to degree
    (requested degree) - n, which the constructor sizes so that values and
    first derivatives of every requested order are exact.
    """

    def __init__(self, field: FieldEvaluator, picture: str, fixed: float, order: int, flipped: bool = False):
        if order > MAX_ORDER:
            raise ValueError(f"order {order} beyond supported maximum {MAX_ORDER}")
        self.field = field
        self.picture = picture
        self.fixed = fixed
        self.order = order
        self.flipped = flipped

    def _inputs(self, svals, deg):
        beta = self.field.params.beta
        phi, wp, wm = _phi_jets(self.field, self.picture, self.fixed, svals, deg)
        if not self.flipped:
            w = wp
            ep = _jet_exp(1j * beta * phi)
            em = _jet_exp(-1j * beta * phi)
        else:
            w = wm if self.picture == "space" else -wm
            ep = _jet_exp(-1j * beta * phi)
            em = _jet_exp(1j * beta * phi)
        return w, ep, em

    def _chain(self, svals, n_max, component):
        """Jets of the (2,1) chain q_n or the mirrored (1,2) chain p_n.

        The two components decouple; p obeys the same recursion with the
        derivative sign and the two exponential factors swapped.
        """
        m, beta = self.field.params.m, self.field.params.beta
        deg = n_max + 2
        w, ep, em = self._inputs(svals, deg)
        sign_b = -1.0 if self.picture == "space" else 1.0
        d_sign = -1.0 if component == "q" else 1.0
        e_delta, e_sum = (ep, em) if component == "q" else (em, ep)
        out = [_jet_const(1j, svals.size, deg)]
        for n in range(n_max):
            nxt = d_sign * (2j / m) * _jet_deriv(out[n]) - (beta / m) * _jet_mul(w, out[n])
            if n == 1:
                nxt = nxt + sign_b * 0.5j * e_delta
            for p in range(1, n + 1):
                nxt = nxt + 0.5j * _jet_mul(out[p], out[n + 1 - p])
            for p in range(0, n):
                nxt = nxt + sign_b * 0.5j * _jet_mul(e_sum, _jet_mul(out[p], out[n - 1 - p]))
            out.append(nxt)
        return out

    def component_jets(self, svals: np.ndarray, n_max: int | None = None):
        """q_n jets at the given points, n = 0 .. n_max (default order+1)."""
        if n_max is None:
            n_max = self.order + 1
        return self._chain(np.asarray(svals, dtype=float), n_max, "q")

    def gamma(self, n: int, svals) -> np.ndarray:
        """Gamma_n values as (npts, 2, 2) off-diagonal matrices."""
        svals = np.atleast_1d(np.asarray(svals, dtype=float))
        q = self._chain(svals, n, "q")
        p = self._chain(svals, n, "p")
        out = np.zeros((svals.size, 2, 2), dtype=complex)
        out[:, 1, 0] = q[n][:, 0]
        out[:, 0, 1] = p[n][:, 0]
        return out

    def riccati_residual(self, lam: complex, svals) -> float:
        """Max norm of the truncated-series residual in the matrix Riccati ODE.

        Scales as lambda^-order at large lambda; the independent gate that a
        transcription error in the recursion cannot pass.
        """
        svals = np.atleast_1d(np.asarray(svals, dtype=float))
        if self.flipped:
            raise ValueError("residual oracle applies to the large-lambda branch")
        sp = spectral(lam, self.field.params)
        q = self._chain(svals, self.order, "q")
        p = self._chain(svals, self.order, "p")
        gamma = np.zeros((svals.size, 2, 2), dtype=complex)
        gamma_s = np.zeros_like(gamma)
        for n in range(self.order + 1):
            gamma[:, 1, 0] += q[n][:, 0] * lam ** (-n)
            gamma[:, 0, 1] += p[n][:, 0] * lam ** (-n)
            gamma_s[:, 1, 0] += _jet_deriv(q[n])[:, 0] * lam ** (-n)
            gamma_s[:, 0, 1] += _jet_deriv(p[n])[:, 0] * lam ** (-n)
        if self.picture == "space":
            gen = build_U_hat(self.field, svals, np.full_like(svals, self.fixed), sp)
        else:
            gen = build_V_hat(self.field, np.full_like(svals, self.fixed), svals, sp)
        gen_d = np.zeros_like(gen)
        gen_d[:, 0, 0] = gen[:, 0, 0]
        gen_d[:, 1, 1] = gen[:, 1, 1]
        gen_o = gen - gen_d
        rhs = gen_o + gen_d @ gamma - gamma @ gen_d - gamma @ gen_o @ gamma
        return float(np.max(np.abs(gamma_s - rhs)))


def riccati_coeffs(field, picture, fixed, order, flipped=False) -> RiccatiCoefficients:
    return RiccatiCoefficients(field, picture, fixed, order, flipped)


@dataclass
class ChargeLedger:
    """Finite charge sets keyed by integer order.

    Positive keys hold the large-lambda charges (I_n or J_n), key 0 and the
    negative keys hold the small-lambda side (I_{-n}, J_{-n}).
    """

    picture: str
    entries: dict = dc_field(default_factory=dict)
    provenance: str = "recursion"
    drift: dict = dc_field(default_factory=dict)

    def value(self, n: int) -> complex:
        return self.entries[n]

    def series_large(self, lam: complex, n_terms: int) -> complex:
        """i * sum_{n=1..n_terms} entry_n / lam^n."""
        return 1j * sum(self.entries[n] * lam ** (-n) for n in range(1, n_terms + 1))

    def series_small(self, lam: complex, n_terms: int) -> complex:
        """i * sum_{n=0..n_terms} entry_{-n} lam^n."""
        return 1j * sum(self.entries[-n] * lam**n for n in range(0, n_terms + 1))

    def merged_with(self, other: "ChargeLedger") -> "ChargeLedger":
        if other.picture != self.picture:
            raise ValueError("cannot merge ledgers from different pictures")
        entries = dict(self.entries)
        entries.update(other.entries)
        drift = dict(self.drift)
        drift.update(other.drift)
        return ChargeLedger(self.picture, entries, self.provenance, drift)

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["picture", "n", "value_re", "value_im", "provenance", "drift"])
            for n in sorted(self.entries):
                val = complex(self.entries[n])
                writer.writerow(
                    [self.picture, n, f"{val.real:.15g}", f"{val.imag:.15g}",
                     self.provenance, f"{self.drift.get(n, float('nan')):.6g}"]
                )


def _axis(window: GridWindow, picture: str):
    return (window.xs() if picture == "space" else window.ts())


def charges_infinity(field, picture, fixed, order, window) -> ChargeLedger:
    """Large-lambda charges n = 1..order by quadrature of the local densities."""
    m = field.params.m
    svals = _axis(window, picture)
    h = svals[1] - svals[0]
    rc = riccati_coeffs(field, picture, fixed, order)
    q = rc.component_jets(svals, n_max=order + 1)
    beta = field.params.beta
    phi = q_phi = None  # phi enters only through e_-
    phi_vals = (
        field.derivative(svals, np.full_like(svals, fixed), 0, 0)
        if picture == "space"
        else field.derivative(np.full_like(svals, fixed), svals, 0, 0)
    )
    em = np.exp(-1j * beta * np.asarray(phi_vals))
    entries = {}
    sign = 1.0 if picture == "space" else -1.0
    for n in range(1, order + 1):
        density = q[n + 1][:, 0] - sign * em * q[n - 1][:, 0]
        if n == 1:
            density = density + sign * 1j
        entries[n] = (0.25j * m) * simpson_uniform(density, h)
    return ChargeLedger(picture, entries)


def charges_zero(field, picture, fixed, order, window) -> ChargeLedger:
    """Small-lambda charges n = 0..-order from the flipped-branch recursion."""
    m, beta = field.params.m, field.params.beta
    svals = _axis(window, picture)
    h = svals[1] - svals[0]
    rc = riccati_coeffs(field, picture, fixed, order, flipped=True)
    q = rc.component_jets(svals, n_max=order + 1)
    if picture == "space":
        phi_x = field.derivative(svals, np.full_like(svals, fixed), 1, 0)
        phi_vals = field.derivative(svals, np.full_like(svals, fixed), 0, 0)
        zero_density = -0.5 * beta * np.asarray(phi_x)
    else:
        phi_t = field.derivative(np.full_like(svals, fixed), svals, 0, 1)
        phi_vals = field.derivative(np.full_like(svals, fixed), svals, 0, 0)
        zero_density = -0.5 * beta * np.asarray(phi_t)
    ep = np.exp(1j * beta * np.asarray(phi_vals))
    entries = {0: complex(simpson_uniform(zero_density, h))}
    for n in range(1, order + 1):
        if picture == "space":
            density = (-1.0) ** (n + 1) * (ep * q[n - 1][:, 0] - q[n + 1][:, 0])
        else:
            density = ep * q[n - 1][:, 0] + q[n + 1][:, 0]
        if n == 1:
            density = density - 1j
        entries[-n] = (0.25j * m) * simpson_uniform(density, h)
    return ChargeLedger(picture, entries)


def build_ledger(field, picture, fixed, order, window) -> ChargeLedger:
    return charges_infinity(field, picture, fixed, order, window).merged_with(
        charges_zero(field, picture, fixed, order, window)
    )


@dataclass(frozen=True)
class IdentityReport:
    lhs: float
    rhs: float

    @property
    def gap(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def relative_gap(self) -> float:
        scale = max(abs(self.lhs), abs(self.rhs), 1e-30)
        return self.gap / scale


def energy_identity_S(field, t, window, ledger: ChargeLedger) -> IdentityReport:
    """I_{-1} - I_1 against (beta^2 / 2m) H_S."""
    m, beta = field.params.m, field.params.beta
    lhs = ledger.value(-1) - ledger.value(1)
    rhs = (beta * beta / (2.0 * m)) * float(hamiltonian_S(field, t, window))
    return IdentityReport(float(lhs.real), rhs)


def energy_identity_T(field, x, window, ledger: ChargeLedger) -> IdentityReport:
    """J_1 + J_{-1} against (beta^2 / 2m) H_T.

    The time-picture identity integrates over t; conservation in x is what
    the drift checks probe.
    """
    m, beta = field.params.m, field.params.beta
    lhs = ledger.value(1) + ledger.value(-1)
    rhs = (beta * beta / (2.0 * m)) * float(hamiltonian_T(field, x, window))
    return IdentityReport(float(lhs.real), rhs)


@dataclass
class LnaFitReport:
    picture: str
    lambdas: np.ndarray
    log_mono: np.ndarray
    series: np.ndarray
    remainders: np.ndarray
    slope: float
    n_terms: int


def _unwrap_log(values: np.ndarray) -> np.ndarray:
    """Continuous log along an ascending lambda ray, anchored at the far end.

    ln a -> 0 as lambda -> infinity, so the principal branch is correct at
    the largest lambda; branch counts are then walked downwards.
    """
    logs = np.log(values.astype(complex))
    for k in range(len(logs) - 2, -1, -1):
        jump = (logs[k] - logs[k + 1]).imag
        logs[k] -= 2j * math.pi * round(jump / (2.0 * math.pi))
        if abs((logs[k] - logs[k + 1]).imag) > 0.5 * math.pi:
            raise UnwindingError(
                f"branch jump of {abs((logs[k] - logs[k+1]).imag):.3f} rad "
                "after unwinding; refine the lambda grid"
            )
    return logs


def lna_asymptotic_fit(
    field,
    picture,
    fixed,
    lambdas,
    ledger: ChargeLedger,
    half_width: float,
    n_terms: int = 3,
    step_density: float = 200.0,
) -> LnaFitReport:
    """Remainder exponent of ln a (or ln fa) minus the n_terms-term series.

    Lambda must be a real ascending ray inside [10, 100] so the branch anchor
    at the far end is trustworthy.  The slope is the least-squares exponent
    of |remainder| vs lambda on a log-log scale.
    """
    lambdas = np.asarray(sorted(float(l) for l in lambdas))
    if lambdas.size < 2:
        raise ValueError("need at least two lambda values to fit a slope")
    if lambdas[0] < 10.0 or lambdas[-1] > 100.0:
        raise ValueError("fit window is the real ray between 10 and 100")
    a_vals = []
    for lam in lambdas:
        sp = spectral(lam, field.params)
        nsteps = default_nsteps(half_width, sp, density=step_density)
        a_vals.append(monodromy(field, picture, fixed, half_width, sp, nsteps).a_entry)
    log_mono = _unwrap_log(np.asarray(a_vals))
    series = np.asarray([ledger.series_large(lam, n_terms) for lam in lambdas])
    remainders = np.abs(log_mono - series)
    mask = remainders > 0
    slope = float(-np.polyfit(np.log10(lambdas[mask]), np.log10(remainders[mask]), 1)[0])
    return LnaFitReport(picture, lambdas, log_mono, series, remainders, slope, n_terms)


def fit_charges_from_monodromy(
    field,
    picture,
    fixed,
    lambdas,
    n_terms: int,
    half_width: float,
    step_density: float = 200.0,
) -> ChargeLedger:
    """Charges by least squares of ln a against the inverse-power series.

    Fully independent of the Riccati recursion: only the monodromy pipeline
    enters.  Fitting a couple of orders beyond the ones of interest keeps the
    tail from biasing the low coefficients.
    """
    lambdas = np.asarray(sorted(float(l) for l in lambdas))
    a_vals = []
    for lam in lambdas:
        sp = spectral(lam, field.params)
        nsteps = default_nsteps(half_width, sp, density=step_density)
        a_vals.append(monodromy(field, picture, fixed, half_width, sp, nsteps).a_entry)
    log_mono = _unwrap_log(np.asarray(a_vals))
    design = np.column_stack([lambdas ** (-float(n)) for n in range(1, n_terms + 1)])
    coeffs, *_ = np.linalg.lstsq(design, (log_mono / 1j), rcond=None)
    entries = {n: complex(coeffs[n - 1]) for n in range(1, n_terms + 1)}
    return ChargeLedger(picture, entries, provenance="monodromy_fit")
