"""Symplectic structure, Hamiltonian vector fields, and Poisson brackets.

Conventions (pinned; flipping any one breaks the bracket identities):
  Omega = i g_{ab'} dz^a ^ dzbar^b,  i_{X_f} Omega = -df,  {f, g} = X_f(g).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import (
    ANTIHOLOMORPHIC,
    HOLOMORPHIC,
    OscillatorParams,
    PhasePoint,
    ScalarField,
    metric_at,
    wirtinger,
)


@dataclass(frozen=True)
class TangentVector:
    """Complexified tangent vector: holo[a] along d/dz^a, anti[a] along d/dzbar^a."""

    holo: tuple
    anti: tuple

    def __init__(self, holo, anti):
        object.__setattr__(self, "holo", tuple(complex(c) for c in holo))
        object.__setattr__(self, "anti", tuple(complex(c) for c in anti))

    @property
    def m(self) -> int:
        return len(self.holo)


VectorField = Callable[[PhasePoint], TangentVector]


def omega_at(
    params: OscillatorParams, p: PhasePoint, X: TangentVector, Y: TangentVector
) -> complex:
    """Fundamental 2-form Omega(X, Y) = i g_{ab'} (X^a Ybar^b - Y^a Xbar^b)."""
    g = metric_at(params, p).g
    Xh = np.asarray(X.holo)
    Yh = np.asarray(Y.holo)
    Xa = np.asarray(X.anti)
    Ya = np.asarray(Y.anti)
    return 1j * (Xh @ g @ Ya - Yh @ g @ Xa)


def _holo_components(f: ScalarField, params: OscillatorParams, p: PhasePoint) -> np.ndarray:
    """Holomorphic components of X_f: i * sum_b ginv[b][a] dbar_b f."""
    g_inv = metric_at(params, p).g_inv
    dbar = np.array(
        [wirtinger(f, p, b, ANTIHOLOMORPHIC) for b in range(params.m)], dtype=complex
    )
    return 1j * (g_inv.T @ dbar)


def hamiltonian_field(
    f: ScalarField, params: OscillatorParams, p: PhasePoint
) -> TangentVector:
    """Hamiltonian vector field of f at p, from i_{X_f} Omega = -df.

    Componentwise: holo[a] = i ginv[b][a] dbar_b f, anti[b] = -i ginv[b][a] d_a f,
    with the Wirtinger derivatives taken numerically.
    """
    g_inv = metric_at(params, p).g_inv
    d = np.array([wirtinger(f, p, a, HOLOMORPHIC) for a in range(params.m)], dtype=complex)
    dbar = np.array(
        [wirtinger(f, p, b, ANTIHOLOMORPHIC) for b in range(params.m)], dtype=complex
    )
    holo = 1j * (g_inv.T @ dbar)
    anti = -1j * (g_inv @ d)
    return TangentVector(holo, anti)


def poisson_bracket(
    f: ScalarField, g: ScalarField, params: OscillatorParams, p: PhasePoint
) -> complex:
    """{f, g}(p) = i ginv[b][a] (dbar_b f d_a g - d_a f dbar_b g) = X_f(g)(p)."""
    g_inv = metric_at(params, p).g_inv
    m = params.m
    df = np.array([wirtinger(f, p, a, HOLOMORPHIC) for a in range(m)], dtype=complex)
    dbf = np.array([wirtinger(f, p, b, ANTIHOLOMORPHIC) for b in range(m)], dtype=complex)
    dg = np.array([wirtinger(g, p, a, HOLOMORPHIC) for a in range(m)], dtype=complex)
    dbg = np.array([wirtinger(g, p, b, ANTIHOLOMORPHIC) for b in range(m)], dtype=complex)
    return 1j * (dbf @ g_inv @ dg - dbg @ g_inv @ df).item()


def apply_field(X: VectorField, h: ScalarField, p: PhasePoint) -> complex:
    """Directional derivative X(h)(p) = X^a d_a h + Xbar^b dbar_b h."""
    Xp = X(p)
    total = 0.0 + 0.0j
    for a in range(len(p.z)):
        total += Xp.holo[a] * wirtinger(h, p, a, HOLOMORPHIC)
        total += Xp.anti[a] * wirtinger(h, p, a, ANTIHOLOMORPHIC)
    return total


def lie_bracket_fields(X: VectorField, Y: VectorField, p: PhasePoint) -> TangentVector:
    """Commutator [X, Y] at p, componentwise X(Y^k) - Y(X^k) by numerical
    directional differentiation of the component functions."""
    m = len(p.z)
    holo = [
        apply_field(X, lambda q, k=k: Y(q).holo[k], p)
        - apply_field(Y, lambda q, k=k: X(q).holo[k], p)
        for k in range(m)
    ]
    anti = [
        apply_field(X, lambda q, k=k: Y(q).anti[k], p)
        - apply_field(Y, lambda q, k=k: X(q).anti[k], p)
        for k in range(m)
    ]
    return TangentVector(holo, anti)
