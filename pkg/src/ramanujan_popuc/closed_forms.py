"""Closed-form generators for the explicit families, used as independent
fixtures against the moment-driven engine.

Every family is generated symbolically from its parameter (no lookup
tables), so the fixtures scale to any odd prime for property sweeps.
Where a printed closed form is internally inconsistent, the recurrence is
authoritative: the interior formula for the equal-mass anti-cyclotomic
family is used only up to degree p-1; the top rungs follow from the
coefficient sequence by forward recurrence and are verified against the
engine in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InternalInconsistencyError, InvalidModulusError, NonPrimeError
from .number_theory import is_odd_prime
from .opuc_core import (
    MomentSequence,
    PopucSystem,
    VerblunskySequence,
    moments_from_ladder,
    szego_step,
)
from .polynomials import Poly


class FamilyKind(str, Enum):
    RAMANUJAN_PRIME = "ramanujan-prime"
    RAMANUJAN_2P = "ramanujan-2p"
    SINGLE_MOMENT = "single-moment"
    STURMIAN_ANTI_2P = "sturmian-anti-2p"
    RAMANUJAN_ANTI_2P = "ramanujan-anti-2p"


_PRIME_KINDS = {
    FamilyKind.RAMANUJAN_PRIME,
    FamilyKind.RAMANUJAN_2P,
    FamilyKind.STURMIAN_ANTI_2P,
    FamilyKind.RAMANUJAN_ANTI_2P,
}


@dataclass(frozen=True)
class FamilyId:
    """Which explicit family, and its parameter (odd prime p, or the
    ladder size N for the single-moment family)."""

    kind: FamilyKind
    parameter: int

    def __post_init__(self):
        if self.kind in _PRIME_KINDS:
            if not is_odd_prime(self.parameter):
                raise NonPrimeError(f"{self.kind.value} needs an odd prime, got {self.parameter}")
        elif self.parameter < 0:
            raise InvalidModulusError(f"single-moment size must be >= 0, got {self.parameter}")

    @property
    def label(self) -> str:
        return f"{self.kind.value}:{self.parameter}"


def _norms_from_coeffs(a: list[Fraction]) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """h_0..h_N as running products of (1 - a_k^2), and the determinants
    Delta_1..Delta_{N+1} as their cumulative products."""
    h = [Fraction(1)]
    for a_k in a[:-1]:
        h.append(h[-1] * (1 - a_k * a_k))
    delta = []
    acc = Fraction(1)
    for v in h:
        acc *= v
        delta.append(acc)
    return tuple(h), tuple(delta)


def _assemble(
    family: FamilyId,
    phis: list[Poly],
    a: list[Fraction],
    moments: MomentSequence,
    delta: tuple[Fraction, ...] | None = None,
) -> PopucSystem:
    h, delta_products = _norms_from_coeffs(a)
    return PopucSystem(
        family=family.label,
        moments=moments,
        phis=tuple(phis),
        verblunsky=VerblunskySequence(tuple(a)),
        h=h,
        delta=delta if delta is not None else delta_products,
    )


def cf_ramanujan_prime(p: int) -> PopucSystem:
    """Equal-mass family on the primitive p-th roots of unity, p an odd
    prime, entirely from closed formulas (no moment computation):

        Phi_n = z^n + (z^{n-1} + ... + 1) / (N - n + 2),   N = p - 2,
        a_n   = -1 / (N - n + 1),
        Delta_n = p^{n-1} (p - n) / (p - 1)^n,
        sigma_n = -1 / (p - 1)  for 1 <= n <= p - 1.

    The determinants are taken from their closed form; consistency with
    the product formula for h_n is re-derived at construction time.
    """
    family = FamilyId(FamilyKind.RAMANUJAN_PRIME, p)
    n_max = p - 2
    phis = [
        Poly([Fraction(1, n_max - n + 2)] * n + [1])
        for n in range(n_max + 2)
    ]
    a = [Fraction(-1, n_max - n + 1) for n in range(n_max + 1)]
    delta = tuple(
        Fraction(p ** (n - 1) * (p - n), (p - 1) ** n) for n in range(1, n_max + 2)
    )
    sigma = (Fraction(1),) + (Fraction(-1, p - 1),) * (p - 1)
    moments = MomentSequence(sigma=sigma, provenance=family.label)
    return _assemble(family, phis, a, moments, delta=delta)


def cf_ramanujan_2p(p: int) -> PopucSystem:
    """Equal-mass family on the primitive 2p-th roots of unity: the
    moments alternate in sign, sigma_n = (-1)^{n+1} / (p - 1), and

        a_n = (-1)^n / (N - n + 1),   N = p - 2.

    The ladder is generated by forward recurrence from Phi_0 = 1; the
    test suite pins its terminal rung to the 2p-th cyclotomic polynomial.
    """
    family = FamilyId(FamilyKind.RAMANUJAN_2P, p)
    n_max = p - 2
    a = [Fraction((-1) ** n, n_max - n + 1) for n in range(n_max + 1)]
    phis = [Poly.one()]
    for a_n in a:
        phis.append(szego_step(phis[-1], a_n))
    sigma = (Fraction(1),) + tuple(Fraction((-1) ** (n + 1), p - 1) for n in range(1, p))
    moments = MomentSequence(sigma=sigma, provenance=family.label)
    return _assemble(family, phis, a, moments)


def cf_single_moment(n_max: int) -> PopucSystem:
    """The Sturmian ladder dual to the odd-prime equal-mass family,
    written monically:

        Phi_n = z^n + sum_{k<n} ((k+1)/(n+1)) z^k,
        a_n = -1/(n+2) for n < N,  a_N = -1.

    The terminal rung is z*Phi_N + Phi_N^* = z^{N+1} + ... + z + 1.
    Moments are recovered from the ladder itself.
    """
    family = FamilyId(FamilyKind.SINGLE_MOMENT, n_max)
    phis = [
        Poly([Fraction(k + 1, n + 1) for k in range(n)] + [1])
        for n in range(n_max + 1)
    ]
    a = [Fraction(-1, n + 2) for n in range(n_max)] + [Fraction(-1)]
    phis.append(szego_step(phis[-1], a[-1]))
    moments = moments_from_ladder(phis, provenance=family.label)
    return _assemble(family, phis, a, moments)


def cf_sturmian_anti2p(p: int) -> PopucSystem:
    """Sturmian family under the anti-cyclotomic polynomial of order 2p,
    A = z^{p+1} + z^p - z - 1 (p an odd prime), with N = p:

        Phi_N = A' / (p + 1),
        Phi_1 = z + 1 - 1/p,
        Phi_n = z^n + ((2p-n)/(2p-n+1)) z^{n-1} + (-1)^n/(2p-n+1),  2 <= n <= p,
        a_0 = (1-p)/p,  a_n = (-1)^n/(2p-n) for 1 <= n <= p-1,  a_p = 1.

    Note the irregular a_0, which breaks the pattern of the later terms.
    """
    family = FamilyId(FamilyKind.STURMIAN_ANTI_2P, p)
    terminal = Poly([-1, -1] + [0] * (p - 2) + [1, 1])
    phis = [Poly.one(), Poly([1 - Fraction(1, p), 1])]
    for n in range(2, p + 1):
        phis.append(
            Poly(
                [Fraction((-1) ** n, 2 * p - n + 1)]
                + [0] * (n - 2)
                + [Fraction(2 * p - n, 2 * p - n + 1), 1]
            )
        )
    phis.append(terminal)
    if phis[p] * Fraction(p + 1) != terminal.derivative():
        raise InternalInconsistencyError("next-to-last rung is not the normalized derivative")
    a = (
        [Fraction(1 - p, p)]
        + [Fraction((-1) ** n, 2 * p - n) for n in range(1, p)]
        + [Fraction(1)]
    )
    moments = moments_from_ladder(phis, provenance=family.label)
    return _assemble(family, phis, a, moments)


def cf_ramanujan_anti2p(p: int) -> PopucSystem:
    """Equal-mass family on the roots of the order-2p anti-cyclotomic
    polynomial (the 2p-th roots of unity that are not primitive), N = p.

    Coefficients mirror the Sturmian ones: a_n = (-1)^{n+1}/(p+n+1) for
    n <= p-2, a_{p-1} = (p-1)/p, a_p = 1.  The interior rungs have the
    closed form

        Phi_n = z^n + (z^n - (-1)^n) / ((n + p)(z + 1)),   n <= p - 1,

    an exact polynomial division; the two top rungs follow by forward
    recurrence (the printed closed form does not extend to n = p: it
    breaks orthogonality there, see the test suite).
    """
    family = FamilyId(FamilyKind.RAMANUJAN_ANTI_2P, p)
    z_plus_1 = Poly([1, 1])
    phis = []
    for n in range(p):
        # (z^n - (-1)^n) / (z + 1) = z^{n-1} - z^{n-2} + ... -/+ 1
        folded = (Poly.monomial(n) - Poly([(-1) ** n])).divexact(z_plus_1)
        phis.append(Poly.monomial(n) + folded * Fraction(1, n + p))
    a = (
        [Fraction((-1) ** (n + 1), p + n + 1) for n in range(p - 1)]
        + [Fraction(p - 1, p), Fraction(1)]
    )
    phis.append(szego_step(phis[-1], a[p - 1]))
    phis.append(szego_step(phis[-1], a[p]))
    expected_terminal = Poly([-1, -1] + [0] * (p - 2) + [1, 1])
    if phis[-1] != expected_terminal:
        raise InternalInconsistencyError("ladder does not close on the anti-cyclotomic polynomial")
    sigma = [Fraction(1)] + [
        Fraction(p - 1, p + 1) if n == p else Fraction((-1) ** n, p + 1)
        for n in range(1, p + 2)
    ]
    moments = MomentSequence(sigma=tuple(sigma), provenance=family.label)
    return _assemble(family, phis, a, moments)
