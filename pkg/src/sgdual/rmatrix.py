"""Classical r-matrix and lattice checks of both canonical Poisson algebras.

The same fixed 4x4 matrix

    r(lam, mu) = f (1x1 - s3xs3) + g (s1xs1 + s2xs2),
    f = -gamma (lam^2 + mu^2)/(lam^2 - mu^2),  g = 2 gamma lam mu/(lam^2 - mu^2),
    gamma = beta^2 / 16,

governs the equal-time bracket of the space Lax matrix and, with one overall
sign flipped, the equal-space bracket of the time Lax matrix:

    {U_1(x), U_2(y)}_S = +delta(x - y) [r, U_1 + U_2]
    {V_1(t), V_2(tau)}_T = -delta(t - tau) [r, V_1 + V_2]

Both are pointwise algebraic identities once the delta function is realised
as the standard lattice regularisation (Kronecker delta over the spacing),
so the checks here demand machine zero: any gap is a transcription error in
U, V or r, not a discretisation artifact.  Setting lam = e^{i a}, mu = e^{i b}
collapses r to a difference kernel; the prefactor consistent with the
rational form is 2 i gamma / sin(a - b) on the inner block (note the inner
entries are then 2f and 2g, since the projector 1x1 - s3xs3 carries a 2).

Bracket functionals are assembled with analytic derivatives of the Lax
entries with respect to the canonical pair at each site -- never by
finite-differencing a functional -- and lattice sums reduce in a fixed
order, so reports are bit-stable.

The infinite-volume kernel r_pm, whose diagonal blocks involve principal
values and delta distributions, is provided as tagged coefficient data only;
its distributional bracket is deliberately not evaluated numerically.  The
finite-lattice involution proxy tests the conclusion that matters --
{fa(lam), fa(mu)}_T -> 0 -- without it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import FieldEvaluator, FieldSample, ModelParams, topological_charges
from .lax import SpectralPoint, build_V, ce_charged
from .matcore import ID2, ID4, SIGMA1, SIGMA2, SIGMA3, expm2, inv2, tensor

__all__ = [
    "RMatrixValue",
    "InfiniteVolumeKernel",
    "r_matrix",
    "r_matrix_trig",
    "r_infinite_volume",
    "lax_derivatives",
    "ultralocal_check",
    "transition_bracket_check",
    "involution_check",
    "BracketReport",
]

_PROJ = ID4 - tensor(SIGMA3, SIGMA3)
_SWAP = tensor(SIGMA1, SIGMA1) + tensor(SIGMA2, SIGMA2)


@dataclass(frozen=True)
class RMatrixValue:
    lam: complex
    mu: complex
    f: complex
    g: complex
    gamma_const: float
    matrix: np.ndarray


def r_matrix(lam: complex, mu: complex, params: ModelParams) -> RMatrixValue:
    lam, mu = complex(lam), complex(mu)
    den = lam * lam - mu * mu
    if abs(den) < 1e-12 * max(abs(lam * lam), abs(mu * mu), 1.0):
        raise ZeroDivisionError("r-matrix is singular at lambda^2 = mu^2")
    gamma = params.beta**2 / 16.0
    f = -gamma * (lam * lam + mu * mu) / den
    g = 2.0 * gamma * lam * mu / den
    return RMatrixValue(lam, mu, f, g, gamma, f * _PROJ + g * _SWAP)


def r_matrix_trig(alpha: float, params: ModelParams) -> np.ndarray:
    """Difference form at lam = e^{i a}, mu = e^{i b}, alpha = a - b."""
    gamma = params.beta**2 / 16.0
    core = np.zeros((4, 4), dtype=complex)
    core[1, 1] = core[2, 2] = math.cos(alpha)
    core[1, 2] = core[2, 1] = -1.0
    return (2j * gamma / math.sin(alpha)) * core


@dataclass(frozen=True)
class InfiniteVolumeKernel:
    """r_pm as tagged coefficient data: regular + p.v. + delta pieces.

    ``regular`` is an honest 4x4 value; ``pv_coeff`` multiplies the formal
    principal value of 1/(lam - mu); ``delta_coeff`` multiplies delta(lam - mu).
    No numerical bracket is attempted against this object.
    """

    sign: int
    regular: np.ndarray
    pv_coeff: np.ndarray
    delta_coeff: np.ndarray


def r_infinite_volume(lam: float, mu: float, params: ModelParams, sign: int) -> InfiniteVolumeKernel:
    if sign not in (+1, -1):
        raise ValueError("sign selects the +/- kernel")
    gamma = params.beta**2 / 16.0
    pref = -0.5 * gamma
    regular = np.zeros((4, 4), dtype=complex)
    regular[0, 0] = regular[3, 3] = pref * (lam - mu) / (lam + mu)
    pv = np.zeros((4, 4), dtype=complex)
    pv[1, 1] = pv[2, 2] = pref * (lam + mu)
    delta = np.zeros((4, 4), dtype=complex)
    delta[1, 2] = pref * (-sign) * 1j * math.pi * (lam + mu)
    delta[2, 1] = pref * (+sign) * 1j * math.pi * (lam + mu)
    return InfiniteVolumeKernel(sign, regular, pv, delta)


def lax_derivatives(picture: str, sample: FieldSample, sp: SpectralPoint, params: ModelParams):
    """Analytic partials of the Lax matrix wrt the canonical pair.

    Space picture: A = U, pair (phi, pi).  Time picture: A = V, pair
    (phi, Pi).  Only phi enters nonlinearly.
    """
    beta = params.beta
    half = 0.5 * beta * sample.phi
    if picture == "space":
        d_phi = -0.5j * beta * (sp.k0 * math.cos(half) * SIGMA1 - sp.k1 * math.sin(half) * SIGMA2)
        d_mom = -0.25j * beta * SIGMA3
    elif picture == "time":
        d_phi = -0.5j * beta * (sp.k1 * math.cos(half) * SIGMA1 - sp.k0 * math.sin(half) * SIGMA2)
        d_mom = 0.25j * beta * SIGMA3
    else:
        raise ValueError(f"unknown picture {picture!r}")
    return d_phi, d_mom


def _lax_matrix(picture: str, sample: FieldSample, sp: SpectralPoint, params: ModelParams):
    beta = params.beta
    half = 0.5 * beta * sample.phi
    if picture == "space":
        diag = -0.25j * beta * sample.pi * SIGMA3
        ks, kc = sp.k0, sp.k1
    else:
        diag = 0.25j * beta * sample.Pi * SIGMA3
        ks, kc = sp.k1, sp.k0
    return diag - 1j * ks * math.sin(half) * SIGMA1 - 1j * kc * math.cos(half) * SIGMA2


def ultralocal_check(
    picture: str,
    sample: FieldSample,
    sp1: SpectralPoint,
    sp2: SpectralPoint,
    params: ModelParams,
    delta: float = 0.1,
    flip_sign: bool = False,
) -> float:
    """Same-site lattice bracket against the r-matrix commutator; max-abs gap.

    The identity is exact, so the gap is machine zero when the transcription
    is right.  ``flip_sign`` applies the wrong overall sign on purpose (the
    two pictures differ by exactly that sign, so the flipped check must fail
    at order one).
    """
    d1_phi, d1_mom = lax_derivatives(picture, sample, sp1, params)
    d2_phi, d2_mom = lax_derivatives(picture, sample, sp2, params)
    lhs = (tensor(d1_phi, d2_mom) - tensor(d1_mom, d2_phi)) / delta
    a1 = _lax_matrix(picture, sample, sp1, params)
    a2 = _lax_matrix(picture, sample, sp2, params)
    r = r_matrix(sp1.lam, sp2.lam, params).matrix
    sign = 1.0 if picture == "space" else -1.0
    if flip_sign:
        sign = -sign
    big = tensor(a1, ID2) + tensor(ID2, a2)
    rhs = (sign / delta) * (r @ big - big @ r)
    return float(np.max(np.abs(lhs - rhs)))


def _batched_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    return np.einsum("nij,nkl->nikjl", a, b).reshape(n, 4, 4)


def _site_products(field, fixed: float, t_sites, sp, delta):
    """Per-site transfer factors and their prefix/suffix partial products."""
    n = t_sites.size
    v = build_V(field, np.full_like(t_sites, fixed), t_sites, sp)
    steps = expm2(delta * v)
    prefix = np.empty((n, 2, 2), dtype=complex)  # product of steps below site i
    suffix = np.empty((n, 2, 2), dtype=complex)  # product of steps above site i
    acc = np.eye(2, dtype=complex)
    for i in range(n):
        prefix[i] = acc
        acc = steps[i] @ acc
    total = acc
    acc = np.eye(2, dtype=complex)
    for i in range(n - 1, -1, -1):
        suffix[i] = acc
        acc = acc @ steps[i]
    return v, steps, prefix, suffix, total


@dataclass(frozen=True)
class BracketReport:
    gap: float
    lhs_norm: float
    rhs_norm: float
    n_sites: int


def transition_bracket_check(
    field: FieldEvaluator,
    fixed_x: float,
    interval: tuple[float, float],
    sp1: SpectralPoint,
    sp2: SpectralPoint,
    n_sites: int,
) -> BracketReport:
    """Equal-space bracket of the discrete time-transition matrix.

    The Leibniz sum with the exact same-site brackets is compared against
    -[r, T x T] built from the same discrete transfer product; the two agree
    up to O(delta) from the first-order splitting of the site exponentials.
    """
    if n_sites < 100:
        raise ValueError("the lattice needs at least 100 sites")
    params = field.params
    a, b = interval
    delta = (b - a) / n_sites
    t_sites = a + (np.arange(n_sites) + 0.5) * delta
    v1, _, pre1, suf1, tot1 = _site_products(field, fixed_x, t_sites, sp1, delta)
    v2, _, pre2, suf2, tot2 = _site_products(field, fixed_x, t_sites, sp2, delta)
    r = r_matrix(sp1.lam, sp2.lam, params).matrix
    big = _batched_kron(v1, np.broadcast_to(ID2, v1.shape)) + _batched_kron(
        np.broadcast_to(ID2, v2.shape), v2
    )
    site_bracket = -delta * (r @ big - big @ r)
    lhs = np.einsum(
        "nab,nbc,ncd->ad", _batched_kron(suf1, suf2), site_bracket, _batched_kron(pre1, pre2)
    )
    big_tot = tensor(tot1, tot2)
    rhs = -(r @ big_tot - big_tot @ r)
    return BracketReport(
        float(np.max(np.abs(lhs - rhs))),
        float(np.max(np.abs(lhs))),
        float(np.max(np.abs(rhs))),
        n_sites,
    )


def involution_check(
    field_or_pair,
    x_probe: float,
    sp_pair: tuple[SpectralPoint, SpectralPoint],
    n_sites: int,
    interval: tuple[float, float],
) -> float:
    """Finite-lattice proxy for |{fa(lam), fa(mu)}_T| at fixed x.

    fa is the end-corrected (1,1) entry of the discrete time-transition
    product; its functional derivatives with respect to the site variables
    (phi_i, Pi_i) are assembled analytically and summed in site order.  The
    proxy vanishes identically on the vacuum and tends to zero under lattice
    refinement on decaying fields.  For a defect pair the probe side selects
    the bulk field; the constant connection factors are field-independent
    and drop out of the bracket.
    """
    field = field_or_pair
    if hasattr(field_or_pair, "left") and hasattr(field_or_pair, "right"):
        field = field_or_pair.right if x_probe > 0 else field_or_pair.left
    a, b = interval
    delta = (b - a) / n_sites
    t_sites = a + (np.arange(n_sites) + 0.5) * delta
    qm, qp = topological_charges(field, x_probe, "time")
    grads = []
    for sp in sp_pair:
        v, steps, prefix, suffix, total = _site_products(field, x_probe, t_sites, sp, delta)
        left_cap = inv2(ce_charged(b, sp, qp))
        right_cap = ce_charged(a, sp, qm)
        samples = field.sample(np.full_like(t_sites, x_probe), t_sites)
        d_phi = np.empty((n_sites, 2, 2), dtype=complex)
        d_mom = np.empty((n_sites, 2, 2), dtype=complex)
        for i in range(n_sites):
            si = FieldSample(
                float(np.asarray(samples.phi)[i]),
                float(np.asarray(samples.phi_x)[i]),
                float(np.asarray(samples.phi_t)[i]),
            )
            d_phi[i], d_mom[i] = lax_derivatives("time", si, sp, field.params)
        head = left_cap @ suffix
        tail = prefix @ right_cap
        da_dphi = delta * np.einsum("nab,nbc,ncd->nad", head, d_phi, tail)[:, 0, 0]
        da_dmom = delta * np.einsum("nab,nbc,ncd->nad", head, d_mom, tail)[:, 0, 0]
        grads.append((da_dphi, da_dmom))
    (dphi1, dmom1), (dphi2, dmom2) = grads
    bracket = np.sum(dphi1 * dmom2 - dmom1 * dphi2) / delta
    return float(abs(bracket))
