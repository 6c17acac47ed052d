"""Lax matrices for sine-Gordon in laboratory coordinates.

The auxiliary problem is Psi_x = U Psi, Psi_t = V Psi with

    U = -i(beta/4) pi  s3 - i k0 sin(beta phi/2) s1 - i k1 cos(beta phi/2) s2
    V = +i(beta/4) Pi  s3 - i k1 sin(beta phi/2) s1 - i k0 cos(beta phi/2) s2

and k0 = (m/4)(lambda + 1/lambda), k1 = (m/4)(lambda - 1/lambda).  The gauge
Omega = exp(i beta phi s3 / 4) removes the winding at infinity and produces

    U_hat = -i(beta/4)(phi_x + pi) s3 - i lambda (m/4) s2 + i (m/4 lambda) s2 E
    V_hat = -i(beta/4)(phi_t - Pi) s3 - i lambda (m/4) s2 - i (m/4 lambda) s2 E

with E = exp(i beta phi s3).  Both tend to the constant matrices
U_inf = -i k1 s2, V_inf = -i k0 s2 on decaying fields; N = (1 + i s1)/sqrt(2)
diagonalises s2 (N^-1 s2 N = s3), which is what makes the plane-wave
normalisers E0(x) = N exp(-i k1 x s3), cE0(t) = N exp(-i k0 t s3) solve the
asymptotic problems.

The gauged matrices are built from the explicit formulas above; the gauge
consistency U_hat = Om^-1 U Om - Om^-1 Om_x is a test, not the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import FieldEvaluator, ModelParams
from .matcore import SIGMA1, SIGMA2, comm, frob

__all__ = [
    "SpectralPoint",
    "spectral",
    "build_U",
    "build_V",
    "build_U_hat",
    "build_V_hat",
    "u_inf",
    "v_inf",
    "n_matrix",
    "e0",
    "ce0",
    "e_charged",
    "ce_charged",
    "omega",
    "zero_curvature_residual",
]


@dataclass(frozen=True)
class SpectralPoint:
    """Spectral parameter with cached k0, k1 (and the mass that set them)."""

    lam: complex
    m: float
    k0: complex
    k1: complex

    @property
    def is_real(self) -> bool:
        return abs(complex(self.lam).imag) == 0.0


def spectral(lam: complex, params: ModelParams) -> SpectralPoint:
    lam = complex(lam)
    if lam == 0:
        raise ValueError("lambda = 0 is excluded; use the small-lambda charge expansions")
    m = params.m
    return SpectralPoint(lam, m, (m / 4.0) * (lam + 1.0 / lam), (m / 4.0) * (lam - 1.0 / lam))


def _stack22(a00, a01, a10, a11) -> np.ndarray:
    """Assemble (..., 2, 2) from broadcastable entries."""
    a00, a01, a10, a11 = np.broadcast_arrays(
        np.asarray(a00, dtype=complex),
        np.asarray(a01, dtype=complex),
        np.asarray(a10, dtype=complex),
        np.asarray(a11, dtype=complex),
    )
    out = np.empty(a00.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = a00
    out[..., 0, 1] = a01
    out[..., 1, 0] = a10
    out[..., 1, 1] = a11
    return out


def _uv_entries(field: FieldEvaluator, x, t, sp: SpectralPoint, which: str) -> np.ndarray:
    beta = field.params.beta
    s = field.sample(x, t)
    half = 0.5 * beta * np.asarray(s.phi)
    sin_h, cos_h = np.sin(half), np.cos(half)
    if which == "U":
        d = -0.25j * beta * np.asarray(s.pi)
        ks, kc = sp.k0, sp.k1
    else:
        d = 0.25j * beta * np.asarray(s.Pi)
        ks, kc = sp.k1, sp.k0
    return _stack22(d, -1j * ks * sin_h - kc * cos_h, -1j * ks * sin_h + kc * cos_h, -d)


def build_U(field: FieldEvaluator, x, t, sp: SpectralPoint) -> np.ndarray:
    """Space Lax matrix U(x, t, lambda); traceless."""
    return _uv_entries(field, x, t, sp, "U")


def build_V(field: FieldEvaluator, x, t, sp: SpectralPoint) -> np.ndarray:
    """Time Lax matrix V(x, t, lambda); traceless."""
    return _uv_entries(field, x, t, sp, "V")


def _hat_entries(field: FieldEvaluator, x, t, sp: SpectralPoint, which: str) -> np.ndarray:
    m, beta = field.params.m, field.params.beta
    lam = sp.lam
    s = field.sample(x, t)
    phi = np.asarray(s.phi)
    if which == "U":
        d = -0.25j * beta * (np.asarray(s.phi_x) + np.asarray(s.pi))
        zeta = m / (4.0 * lam)  # coefficient of the s2 E term: +i zeta s2 E
    else:
        d = -0.25j * beta * (np.asarray(s.phi_t) - np.asarray(s.Pi))
        zeta = -m / (4.0 * lam)
    # -i lam (m/4) s2 + i zeta s2 E, with (s2 E)[0,1] = -i e^{-i beta phi}
    e_minus = np.exp(-1j * beta * phi)
    e_plus = np.exp(1j * beta * phi)
    a01 = -lam * (m / 4.0) + zeta * e_minus
    a10 = lam * (m / 4.0) - zeta * e_plus
    return _stack22(d, a01, a10, -d)


def build_U_hat(field: FieldEvaluator, x, t, sp: SpectralPoint) -> np.ndarray:
    """Gauged space generator; tends to u_inf on decaying fields."""
    return _hat_entries(field, x, t, sp, "U")


def build_V_hat(field: FieldEvaluator, x, t, sp: SpectralPoint) -> np.ndarray:
    """Gauged time generator; tends to v_inf on decaying fields."""
    return _hat_entries(field, x, t, sp, "V")


def u_inf(sp: SpectralPoint) -> np.ndarray:
    return -1j * sp.k1 * SIGMA2


def v_inf(sp: SpectralPoint) -> np.ndarray:
    return -1j * sp.k0 * SIGMA2


def n_matrix() -> np.ndarray:
    return (np.eye(2) + 1j * SIGMA1) / math.sqrt(2.0)


def _phase_diag(z) -> np.ndarray:
    return _stack22(np.exp(z), 0.0, 0.0, np.exp(-np.asarray(z, dtype=complex)))


def e0(x, sp: SpectralPoint) -> np.ndarray:
    """Plane-wave normaliser N exp(-i k1 x s3) for the space problem."""
    return n_matrix() @ _phase_diag(-1j * sp.k1 * np.asarray(x, dtype=complex))


def ce0(t, sp: SpectralPoint) -> np.ndarray:
    """Plane-wave normaliser N exp(-i k0 t s3) for the time problem."""
    return n_matrix() @ _phase_diag(-1j * sp.k0 * np.asarray(t, dtype=complex))


def e_charged(x, sp: SpectralPoint, q: int) -> np.ndarray:
    """Charge-dressed normaliser exp(i pi q s3 / 2) E0(x)."""
    return _phase_diag(0.5j * math.pi * q) @ e0(x, sp)


def ce_charged(t, sp: SpectralPoint, q: int) -> np.ndarray:
    return _phase_diag(0.5j * math.pi * q) @ ce0(t, sp)


def omega(beta: float, phi) -> np.ndarray:
    """Gauge factor exp(i beta phi s3 / 4)."""
    return _phase_diag(0.25j * beta * np.asarray(phi, dtype=complex))


def zero_curvature_residual(field: FieldEvaluator, x: float, t: float, sp: SpectralPoint, h: float) -> float:
    """Frobenius norm of U_t - V_x + [U, V] with central-difference derivatives."""
    if not h > 0:
        raise ValueError("step h must be positive")
    u_t = (build_U(field, x, t + h, sp) - build_U(field, x, t - h, sp)) / (2.0 * h)
    v_x = (build_V(field, x + h, t, sp) - build_V(field, x - h, t, sp)) / (2.0 * h)
    u = build_U(field, x, t, sp)
    v = build_V(field, x, t, sp)
    return frob(u_t - v_x + comm(u, v))
