"""The observable algebra F(m): exact structure constants, evaluation,
polarization checks, and decompositions into holomorphic data.

Elements are complex-rational combinations of the moment-map functions
N^{ab'} = u' z^a zbar^b plus a constant, with the exact bracket
{N^{ab'}, N^{cd'}} = i (delta_bc N^{ad'} - delta_ad N^{cb'}).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch
from .exact import ComplexRational, ZERO, _coerce
from .geometry import (
    ANTIHOLOMORPHIC,
    OscillatorParams,
    PhasePoint,
    ScalarField,
    radial_profile,
    wirtinger,
)
from .symplectic import TangentVector, _holo_components


@dataclass(frozen=True)
class AlgebraElement:
    """sum_ab coeff[a][b] N^{ab'} + constant, coefficients exact."""

    coeff: tuple
    constant: ComplexRational = ZERO

    def __init__(self, coeff, constant=ZERO):
        rows = tuple(tuple(_coerce(c) for c in row) for row in coeff)
        m = len(rows)
        if any(len(row) != m for row in rows):
            raise ValueError("coefficient matrix must be square")
        object.__setattr__(self, "coeff", rows)
        object.__setattr__(self, "constant", _coerce(constant))

    @property
    def m(self) -> int:
        return len(self.coeff)

    @classmethod
    def zero(cls, m: int) -> "AlgebraElement":
        return cls([[ZERO] * m for _ in range(m)])

    @classmethod
    def basis(cls, m: int, alpha: int, beta: int) -> "AlgebraElement":
        """N^{alpha beta'} (indices 0-based)."""
        if not (0 <= alpha < m and 0 <= beta < m):
            raise IndexError(f"basis indices ({alpha}, {beta}) out of range for m = {m}")
        coeff = [[ZERO] * m for _ in range(m)]
        coeff[alpha][beta] = ComplexRational.of(1)
        return cls(coeff)

    @classmethod
    def hamiltonian(cls, m: int) -> "AlgebraElement":
        """H = sum_a N^{aa'}, the generalized-oscillator energy."""
        coeff = [[ComplexRational.of(1 if i == j else 0) for j in range(m)] for i in range(m)]
        return cls(coeff)

    @classmethod
    def const(cls, m: int, value) -> "AlgebraElement":
        return cls([[ZERO] * m for _ in range(m)], _coerce(value))

    @property
    def is_real(self) -> bool:
        """True iff the element represents a real-valued function."""
        if self.constant.im:
            return False
        return all(
            self.coeff[i][j] == self.coeff[j][i].conjugate()
            for i in range(self.m)
            for j in range(self.m)
        )

    @property
    def is_zero(self) -> bool:
        return not self.constant and not any(c for row in self.coeff for c in row)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        return AlgebraElement(
            [
                [self.coeff[i][j] + other.coeff[i][j] for j in range(self.m)]
                for i in range(self.m)
            ],
            self.constant + other.constant,
        )

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-1) * other

    def __rmul__(self, scalar) -> "AlgebraElement":
        s = _coerce(scalar)
        return AlgebraElement(
            [[s * c for c in row] for row in self.coeff], s * self.constant
        )

    def _check(self, other: "AlgebraElement"):
        if self.m != other.m:
            raise DimensionMismatch(f"elements over m = {self.m} and m = {other.m}")

    def as_field(self, params: OscillatorParams) -> ScalarField:
        return lambda p: evaluate(self, params, p)


def evaluate(e: AlgebraElement, params: OscillatorParams, p: PhasePoint) -> complex:
    """Pointwise value sum c[a][b] u' z^a zbar^b + constant."""
    if e.m != params.m:
        raise DimensionMismatch(f"element over m = {e.m}, params have m = {params.m}")
    p.require_admissible(params)
    u_prime = radial_profile(params, p.r).u_prime
    total = complex(e.constant)
    for a in range(e.m):
        for b in range(e.m):
            c = e.coeff[a][b]
            if c:
                total += complex(c) * u_prime * p.z[a] * p.z[b].conjugate()
    return total


def structure_bracket(e1: AlgebraElement, e2: AlgebraElement) -> AlgebraElement:
    """Exact Poisson bracket on F(m).

    Bilinear extension of {N^{ab'}, N^{cd'}} = i(delta_bc N^{ad'} - delta_ad N^{cb'}),
    which collapses to i (C1 C2 - C2 C1) on coefficient matrices; constants are
    central.
    """
    e1._check(e2)
    m = e1.m
    i = ComplexRational.of(0, 1)
    out = [[ZERO] * m for _ in range(m)]
    for a in range(m):
        for d in range(m):
            acc = ZERO
            for b in range(m):
                acc = acc + e1.coeff[a][b] * e2.coeff[b][d] - e2.coeff[a][b] * e1.coeff[b][d]
            out[a][d] = i * acc
    return AlgebraElement(out)


def closed_form_field(alpha: int, beta: int, p: PhasePoint) -> TangentVector:
    """The Hamiltonian field of N^{alpha beta'} in closed form:
    i (z^alpha d_beta - zbar^beta d_alphabar).  Independent of a."""
    m = len(p.z)
    if not (0 <= alpha < m and 0 <= beta < m):
        raise IndexError(f"indices ({alpha}, {beta}) out of range for m = {m}")
    holo = [0j] * m
    anti = [0j] * m
    holo[beta] = 1j * p.z[alpha]
    anti[alpha] = -1j * p.z[beta].conjugate()
    return TangentVector(holo, anti)


@dataclass(frozen=True)
class PolarizationReport:
    passed: bool
    max_residual: float


def preserves_polarization(
    f: ScalarField,
    params: OscillatorParams,
    samples: list[PhasePoint],
    tol: float,
) -> PolarizationReport:
    """Test whether f preserves the antiholomorphic polarization.

    At each sample the holomorphic components of X_f must be antiholomorphically
    constant; the residual is max over components and directions of
    |dbar_b (X_f)^a_holo|.
    """
    worst = 0.0
    for p in samples:
        for a in range(params.m):
            comp = lambda q, a=a: _holo_components(f, params, q)[a]
            for b in range(params.m):
                res = float(abs(wirtinger(comp, p, b, ANTIHOLOMORPHIC)))
                if res > worst:
                    worst = res
    return PolarizationReport(passed=bool(worst <= tol), max_residual=worst)


@dataclass(frozen=True)
class ObservableDecomposition:
    """f = u' sum_s zbar^s phi_s(z) + chi(z), with phi_s and chi stored as
    multi-index -> coefficient maps."""

    phi: tuple
    chi: dict

    def evaluate(self, params: OscillatorParams, p: PhasePoint) -> complex:
        u_prime = radial_profile(params, p.r).u_prime
        total = _eval_poly(self.chi, p.z)
        for s, poly in enumerate(self.phi):
            total += u_prime * p.z[s].conjugate() * _eval_poly(poly, p.z)
        return total


def _eval_poly(poly: dict, z: tuple) -> complex:
    total = 0j
    for k, c in poly.items():
        term = complex(c)
        for a, e in enumerate(k):
            term *= z[a] ** e
        total += term
    return total


def basis_decomposition(m: int, alpha: int, beta: int) -> ObservableDecomposition:
    """Holomorphic decomposition of N^{alpha beta'}: phi_s = z^alpha delta_bs,
    chi = 0."""
    if not (0 <= alpha < m and 0 <= beta < m):
        raise IndexError(f"indices ({alpha}, {beta}) out of range for m = {m}")
    mono = tuple(1 if a == alpha else 0 for a in range(m))
    phi = tuple({mono: ComplexRational.of(1)} if s == beta else {} for s in range(m))
    return ObservableDecomposition(phi=phi, chi={})
