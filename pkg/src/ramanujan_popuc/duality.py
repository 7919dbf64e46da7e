"""Mirror duality between equal-mass and Sturmian para-orthogonal families.

Two finite ladders sharing the same terminal polynomial are mirror-dual
when their reflection coefficients satisfy

    ta_n = -a_N * a_{N-n-1},   n = 0..N,   with a_{-1} = -1.

The equal-mass (Ramanujan) system on the roots of a Kronecker polynomial
is mirror-dual to the Sturmian system, whose next-to-last rung is the
normalized derivative of the terminal polynomial and whose masses are
proportional to 1/|Phi'_{N+1}(z_s)|^2.  Everything provable in Q is
checked with exact rational equality; the per-root weight identities live
at irrational spectral points and are corroborated in floating point
(double precision by default, mpmath at any requested precision).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .errors import (
    DualityViolationError,
    InteriorCoefficientOutOfRangeError,
    InternalInconsistencyError,
    InvalidCharacteristicError,
    TerminalMassError,
    UnimodularConstantTermError,
    WeightCheckFailureError,
)
from .opuc_core import (
    PopucSystem,
    VerblunskySequence,
    determinant_formula_poly,
    inverse_szego_step,
    leading_toeplitz_minors,
    moments_from_kronecker,
    moments_from_ladder,
    popuc_from_moments,
    szego_step,
)
from .polynomials import KroneckerSpec, Poly, kronecker_poly


def mirror_dual(v: VerblunskySequence) -> VerblunskySequence:
    """The mirror map ta_n = -a_N * a_{N-n-1} with a_{-1} = -1.

    Real case: conjugation is the identity.  The map is an involution
    because a_N^2 = 1, and it fixes the terminal coefficient."""
    a_terminal = v[v.n_max]
    if abs(a_terminal) != 1:
        raise TerminalMassError("mirror map needs |a_N| = 1")
    n = v.n_max
    mirrored = [
        -a_terminal * (v[n - k - 1] if k < n else Fraction(-1)) for k in range(n + 1)
    ]
    return VerblunskySequence(tuple(mirrored))


def sturmian_from_charpoly(
    charpoly: Poly, family: str | None = None, paranoid: bool = False
) -> PopucSystem:
    """The Sturmian ladder under a given characteristic polynomial.

    Phi_{N+1} is the input, Phi_N is its derivative divided by N+1, and
    the remaining rungs follow by inverse recurrence descent.  The input
    must be monic with simple unit-circle roots (in practice a
    kronecker_poly output); anything else surfaces as
    InvalidCharacteristicError or InteriorCoefficientOutOfRangeError.
    With paranoid=True every rung is re-derived from the reconstructed
    moments through the bordered-determinant formula.
    """
    n1 = charpoly.degree  # N + 1
    if n1 < 1 or not charpoly.is_monic:
        raise InvalidCharacteristicError("characteristic polynomial must be monic, degree >= 1")
    if abs(charpoly[0]) != 1:
        raise InvalidCharacteristicError(
            f"|constant term| = {abs(charpoly[0])} != 1: roots cannot all lie on the circle"
        )
    a_terminal = -charpoly[0]
    phi_n = charpoly.derivative() * Fraction(1, n1)
    # The terminal step must regenerate the characteristic polynomial;
    # this pins down a_N and is where a non-self-inversive input fails.
    if szego_step(phi_n, a_terminal) != charpoly:
        raise InvalidCharacteristicError(
            "derivative condition is inconsistent with the terminal recurrence step"
        )
    ladder = [charpoly, phi_n]
    coeffs = [a_terminal]
    current = phi_n
    try:
        for _ in range(n1 - 1):
            current, a_k = inverse_szego_step(current)
            ladder.append(current)
            coeffs.append(a_k)
    except (UnimodularConstantTermError, InternalInconsistencyError) as exc:
        raise InvalidCharacteristicError(
            f"descent failed below degree {current.degree}: {exc}"
        ) from exc
    for a_k in coeffs[1:]:
        if abs(a_k) >= 1:
            raise InteriorCoefficientOutOfRangeError(
                f"interior coefficient {a_k} has |a| >= 1: not a positive system"
            )
    ladder.reverse()
    coeffs.reverse()

    moments = moments_from_ladder(ladder, provenance=family or "sturmian")
    delta = leading_toeplitz_minors(moments, n1)
    h = [Fraction(1)]
    for a_k in coeffs[:-1]:
        h.append(h[-1] * (1 - a_k * a_k))
    if paranoid:
        for n in range(1, n1 + 1):
            det_poly = determinant_formula_poly(moments, n)
            if det_poly != ladder[n]:
                raise InternalInconsistencyError(
                    f"rung {n}: descent gives {ladder[n]}, determinant formula {det_poly}"
                )
    return PopucSystem(
        family=family or "sturmian",
        moments=moments,
        phis=tuple(ladder),
        verblunsky=VerblunskySequence(tuple(coeffs)),
        h=tuple(h),
        delta=tuple(delta),
    )


def ramanujan_from_charpoly(spec: KroneckerSpec, paranoid: bool = False) -> PopucSystem:
    """The equal-mass ladder on the roots of kronecker_poly(spec), built
    from Ramanujan-sum moments.  The terminal rung must reproduce the
    Kronecker polynomial exactly; a mismatch is an implementation bug."""
    moments = moments_from_kronecker(spec)
    system = popuc_from_moments(
        moments,
        spec.total_degree,
        family=f"ramanujan:{spec.label}",
        paranoid=paranoid,
    )
    expected = kronecker_poly(spec)
    if system.terminal != expected:
        raise InternalInconsistencyError(
            f"terminal polynomial {system.terminal} != Kronecker product {expected}"
        )
    return system


@dataclass(frozen=True)
class DualPair:
    """An equal-mass system and its Sturmian mirror image over one shared
    characteristic polynomial."""

    spec: KroneckerSpec
    ramanujan: PopucSystem
    sturmian: PopucSystem
    charpoly: Poly
    checks: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "spec": list(self.spec.orders),
            "charpoly": self.charpoly.to_json_list(),
            "ramanujan": self.ramanujan.to_json_dict(),
            "sturmian": self.sturmian.to_json_dict(),
            "checks": dict(self.checks),
        }


def build_dual_pair(spec: KroneckerSpec, paranoid: bool = False) -> DualPair:
    """Construct both systems and enforce the exact duality assertions:
    shared terminal polynomial, the mirror map between the coefficient
    sequences, the derivative condition on the Sturmian side, and
    equality of the terminal norms h_N."""
    ram = ramanujan_from_charpoly(spec, paranoid=paranoid)
    charpoly = kronecker_poly(spec)
    stu = sturmian_from_charpoly(charpoly, family=f"sturmian:{spec.label}")

    checks = {}
    checks["shared_charpoly"] = ram.terminal == stu.terminal == charpoly
    checks["mirror_map"] = mirror_dual(ram.verblunsky) == stu.verblunsky
    n1 = charpoly.degree
    checks["sturm_condition"] = stu.phis[n1 - 1] * Fraction(n1) == charpoly.derivative()
    checks["h_terminal_equal"] = ram.h[-1] == stu.h[-1]
    if not all(checks.values()):
        failed = [k for k, ok in checks.items() if not ok]
        raise DualityViolationError(f"exact duality assertions failed: {failed}")
    return DualPair(spec=spec, ramanujan=ram, sturmian=stu, charpoly=charpoly, checks=checks)


# ---------------------------------------------------------------------------
# Floating-point corroboration at the spectral points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NumericRootSet:
    """The roots of a Kronecker polynomial, enumerated by exact angle
    2*pi*s/m over s coprime to m for each order m (never by iterative
    root finding), then evaluated to the working precision."""

    roots: tuple
    source: Poly

    def __len__(self):
        return len(self.roots)


def _root_angles(spec: KroneckerSpec) -> list[tuple[int, int]]:
    """(s, m) pairs with gcd(s, m) = 1, one per root e^{2*pi*i*s/m}."""
    return [(s, m) for m in spec.orders for s in range(1, m + 1) if gcd(s, m) == 1]


def numeric_roots(spec: KroneckerSpec, digits: int | None = None) -> NumericRootSet:
    """Roots of kronecker_poly(spec) at double precision, or at `digits`
    significant digits via mpmath when requested."""
    angles = _root_angles(spec)
    if digits is None:
        roots = tuple(cmath.exp(2j * cmath.pi * s / m) for s, m in angles)
    else:
        import mpmath

        with mpmath.workdps(digits):
            roots = tuple(
                mpmath.exp(2j * mpmath.pi * mpmath.mpf(s) / m) for s, m in angles
            )
    return NumericRootSet(roots=roots, source=kronecker_poly(spec))


@dataclass
class WeightReport:
    """Per-root residuals of the weight identities of a dual pair.

    rows: one entry per root with the evaluated masses and residuals
    for (i) equal masses on the Ramanujan side, (ii) positivity of the
    Sturmian masses, (iii) the product relation
    w_s * tw_s * |Phi'_{N+1}(z_s)|^2 = h_N, and (iv) agreement of the
    two routes to the Sturmian mass.
    """

    tol: float
    rows: list[dict] = field(default_factory=list)
    sturmian_mass_sum_residual: float = 0.0
    max_residual: float = 0.0
    passed: bool = True

    def to_json_dict(self) -> dict:
        return {
            "tol": self.tol,
            "passed": self.passed,
            "max_residual": self.max_residual,
            "sturmian_mass_sum_residual": self.sturmian_mass_sum_residual,
            "roots_checked": len(self.rows),
        }


def verify_weights(pair: DualPair, tol: float = 1e-12, digits: int | None = None) -> WeightReport:
    """Check the weight identities of a dual pair at every spectral point.

    At each root z_s of the shared characteristic polynomial:

    * the equal-mass formula w_s = h_N / (conj(Phi'_{N+1}(z_s)) * Phi_N(z_s))
      (Ramanujan ladder's Phi_N) must give 1/(N+1);
    * the Sturmian mass tw_s = Phi_N(z_s) / Phi'_{N+1}(z_s), again with the
      Ramanujan ladder's Phi_N, must be a positive real, the masses must
      sum to 1, and the same value must come out of the Sturmian ladder's
      own mass formula h_N * (N+1) / |Phi'_{N+1}(z_s)|^2;
    * the product relation w_s * tw_s * |Phi'_{N+1}(z_s)|^2 = h_N closes
      the loop.

    Residuals are relative.  Raises WeightCheckFailureError (with the
    report attached) when any residual exceeds tol.
    """
    if digits is not None:
        import mpmath

        with mpmath.workdps(digits):
            return _verify_weights_impl(
                pair,
                tol,
                digits,
                lambda fr: mpmath.mpf(fr.numerator) / fr.denominator,
            )
    return _verify_weights_impl(pair, tol, None, float)


def _verify_weights_impl(pair: DualPair, tol: float, digits, to_num) -> WeightReport:
    n1 = pair.charpoly.degree
    h_terminal = pair.ramanujan.h[-1]
    phi_n_ram = pair.ramanujan.phis[n1 - 1]
    deriv = pair.charpoly.derivative()
    roots = numeric_roots(pair.spec, digits=digits)

    h_num = to_num(h_terminal)
    equal_mass = 1 / to_num(Fraction(n1))
    report = WeightReport(tol=tol)
    mass_sum = 0
    worst = 0.0
    for z in roots.roots:
        d_val = deriv(z)
        p_val = phi_n_ram(z)
        w = h_num / (d_val.conjugate() * p_val)
        tw = p_val / d_val
        speed2 = (d_val * d_val.conjugate()).real
        tw_sturm_route = h_num * n1 / speed2
        row = {
            "root": z,
            "ramanujan_mass": w,
            "sturmian_mass": tw,
            "equal_mass_residual": float(abs(w - equal_mass) / equal_mass),
            "ramanujan_imag_residual": float(abs(w.imag)),
            "sturmian_imag_residual": float(abs(tw.imag)),
            "sturmian_positive": tw.real > 0,
            "product_residual": float(abs(w * tw * speed2 - h_num) / h_num),
            "two_route_residual": float(abs(tw.real - tw_sturm_route) / tw_sturm_route),
        }
        mass_sum += tw.real
        worst = max(
            worst,
            row["equal_mass_residual"],
            row["ramanujan_imag_residual"],
            row["sturmian_imag_residual"],
            row["product_residual"],
            row["two_route_residual"],
        )
        if not row["sturmian_positive"]:
            worst = max(worst, 1.0)
        report.rows.append(row)

    report.sturmian_mass_sum_residual = float(abs(mass_sum - 1))
    worst = max(worst, report.sturmian_mass_sum_residual)
    report.max_residual = worst
    report.passed = worst < tol
    if not report.passed:
        bad = [
            (i, r)
            for i, r in enumerate(report.rows)
            if not r["sturmian_positive"]
            or max(
                r["equal_mass_residual"],
                r["ramanujan_imag_residual"],
                r["sturmian_imag_residual"],
                r["product_residual"],
                r["two_route_residual"],
            )
            >= tol
        ]
        detail = "; ".join(
            f"root {i}: z={r['root']}, residuals "
            f"(equal={r['equal_mass_residual']:.3e}, product={r['product_residual']:.3e}, "
            f"two-route={r['two_route_residual']:.3e}, positive={r['sturmian_positive']})"
            for i, r in bad[:5]
        )
        raise WeightCheckFailureError(
            f"weight identities exceeded tol={tol}: max residual {worst:.3e}; {detail}",
            report=report,
        )
    return report
