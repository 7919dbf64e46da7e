"""Moment sequences, Toeplitz determinants, and the recurrence ladder of
monic polynomials orthogonal on the unit circle.

Everything is exact: moments are rationals, determinants are computed by
fraction-free Bareiss elimination on an integer-scaled matrix, and the
ladder is built by a Levinson-style update of the fundamental recurrence

    Phi_{n+1}(z) = z * Phi_n(z) - a_n * Phi_n^*(z),

where Phi^* is coefficient reversal (all scalars are real rationals, so
conjugation is the identity).  A finite para-orthogonal family is a
ladder whose reflection coefficients satisfy |a_k| < 1 for k < N and
|a_N| = 1; the terminal polynomial then has simple roots on the unit
circle carrying a discrete orthogonality measure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import (
    InsufficientMomentsError,
    InternalInconsistencyError,
    InvalidCharacteristicError,
    InvalidModulusError,
    SingularMomentError,
    TerminalMassError,
    UnimodularConstantTermError,
)
from .number_theory import euler_totient, ramanujan_table
from .polynomials import KroneckerSpec, Poly


@dataclass(frozen=True)
class MomentSequence:
    """Trigonometric moments sigma_0..sigma_L of a positive measure on the
    unit circle, with the real-measure symmetry sigma_{-n} = sigma_n."""

    sigma: tuple[Fraction, ...]
    provenance: str = "explicit"

    def __post_init__(self):
        if not self.sigma:
            raise InsufficientMomentsError("a moment sequence needs sigma_0")
        if self.sigma[0] <= 0:
            raise SingularMomentError(f"sigma_0 must be positive, got {self.sigma[0]}")

    @property
    def max_index(self) -> int:
        return len(self.sigma) - 1

    def at(self, n: int) -> Fraction:
        k = abs(n)
        if k > self.max_index:
            raise InsufficientMomentsError(
                f"moment sigma_{n} requested but only indices up to "
                f"{self.max_index} are available ({self.provenance})"
            )
        return self.sigma[k]

    def to_json_list(self) -> list[str]:
        return [str(s) for s in self.sigma]


def moments_from_cyclotomic(m: int, length: int | None = None) -> MomentSequence:
    """Moments of the equal-mass measure on the primitive m-th roots of
    unity: sigma_n = c_m(n) / phi(m), so sigma_0 = 1.

    The default length phi(m) is exactly what the ladder builder needs.
    """
    phi = euler_totient(m)
    if length is None:
        length = phi
    table = ramanujan_table(m, length)
    sigma = tuple(Fraction(v, phi) for v in table.values)
    return MomentSequence(sigma=sigma, provenance=f"cyclotomic:{m}")


def moments_from_kronecker(spec: KroneckerSpec, length: int | None = None) -> MomentSequence:
    """Moments of the equal-mass measure on all roots of the Kronecker
    product polynomial: sigma_n = (c_{m_1}(n) + ... + c_{m_k}(n)) / M
    with M the total degree.  Reduces to the cyclotomic case for a
    singleton spec."""
    total = spec.total_degree
    if length is None:
        length = total
    tables = [ramanujan_table(m, length) for m in spec.orders]
    sigma = tuple(
        Fraction(sum(t.values[n] for t in tables), total) for n in range(length + 1)
    )
    return MomentSequence(sigma=sigma, provenance=f"kronecker:{spec.label}")


def moments_from_power_sums(charpoly: Poly, length: int) -> MomentSequence:
    """Equal-mass moments of the roots of a monic polynomial, computed
    from its coefficients alone via Newton's identities.

    sigma_n = (sum of n-th powers of the roots) / degree.  This never
    touches the roots themselves, which makes it an oracle independent
    of the Ramanujan-sum route.
    """
    if not charpoly.is_monic:
        raise InvalidCharacteristicError("power sums need a monic polynomial")
    if charpoly[0] == 0:
        raise InvalidCharacteristicError("roots must be nonzero (constant term is 0)")
    d = charpoly.degree
    # e[i] = i-th elementary symmetric function of the roots
    e = [(-1) ** i * charpoly[d - i] for i in range(d + 1)]
    p = [Fraction(d)]
    for k in range(1, length + 1):
        acc = Fraction(0)
        for i in range(1, min(k, d) + 1):
            if i == k:
                acc += (-1) ** (k - 1) * k * e[k]
            else:
                acc += (-1) ** (i - 1) * e[i] * p[k - i]
        p.append(acc)
    sigma = tuple(s / d for s in p)
    return MomentSequence(sigma=sigma, provenance="power-sums")


# ---------------------------------------------------------------------------
# Exact Toeplitz determinants (fraction-free Bareiss)
# ---------------------------------------------------------------------------


def _scaled_toeplitz(m: MomentSequence, n: int) -> tuple[list[list[int]], int]:
    """n x n matrix with entry (i, j) = D * sigma_{j-i}, D the common
    denominator of the moments involved."""
    if n - 1 > m.max_index:
        raise InsufficientMomentsError(
            f"Toeplitz determinant of size {n} needs moments up to sigma_{n - 1}"
        )
    vals = [m.at(k) for k in range(n)]
    scale = lcm(*(v.denominator for v in vals)) if vals else 1
    ints = [int(v * scale) for v in vals]
    return [[ints[abs(j - i)] for j in range(n)] for i in range(n)], scale


def _bareiss_det(rows: list[list[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination with
    row pivoting; all intermediate values stay integers."""
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * rows[n - 1][n - 1]


def toeplitz_det(m: MomentSequence, n: int) -> Fraction:
    """Delta_n, the determinant of the n x n moment matrix; Delta_0 = 1."""
    if n < 0:
        raise InvalidModulusError(f"determinant size must be >= 0, got {n}")
    if n == 0:
        return Fraction(1)
    rows, scale = _scaled_toeplitz(m, n)
    return Fraction(_bareiss_det(rows), scale**n)


def leading_toeplitz_minors(m: MomentSequence, n: int) -> list[Fraction]:
    """[Delta_1, ..., Delta_n] in one fraction-free elimination pass.

    In Bareiss elimination without row swaps the pivot after step k - 1
    equals the k-th leading principal minor of the integer matrix, so a
    single O(n^3) sweep yields the whole sequence.  Raises
    SingularMomentError as soon as a minor fails to be positive, which is
    also the point where the swap-free elimination could not continue.
    """
    rows, scale = _scaled_toeplitz(m, n)
    minors: list[Fraction] = []
    prev = 1
    for k in range(n):
        pivot = rows[k][k]
        minors.append(Fraction(pivot, scale ** (k + 1)))
        if pivot <= 0:
            raise SingularMomentError(
                f"Delta_{k + 1} = {minors[-1]} is not positive ({m.provenance})"
            )
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = pivot
    return minors


# ---------------------------------------------------------------------------
# Inner product and the recurrence
# ---------------------------------------------------------------------------


def inner_product(m: MomentSequence, f: Poly, g: Poly) -> Fraction:
    """The sesquilinear form of the measure realized through its moments:
    <f, g> = sum_{j,k} f_j * g_k * sigma_{j-k}.

    With real coefficients this equals the integral of
    f(e^{i theta}) * g(e^{-i theta}) against the measure, evaluated
    without materializing any root."""
    if max(f.degree, g.degree) > m.max_index:
        raise InsufficientMomentsError(
            f"inner product of degrees {f.degree}, {g.degree} needs moments up "
            f"to index {max(f.degree, g.degree)}"
        )
    acc = Fraction(0)
    for j, fj in enumerate(f.coeffs):
        if not fj:
            continue
        for k, gk in enumerate(g.coeffs):
            if gk:
                acc += fj * gk * m.at(j - k)
    return acc


def szego_step(phi: Poly, a: Fraction) -> Poly:
    """One forward recurrence step: z * phi - a * phi^* (real case)."""
    if not phi.is_monic:
        raise InvalidCharacteristicError("recurrence steps need a monic polynomial")
    a = Fraction(a)
    return phi.shift(1) - a * phi.reversed()


def inverse_szego_step(phi_next: Poly) -> tuple[Poly, Fraction]:
    """Recover (phi, a) from phi_{next} = z*phi - a*phi^*.

    a is read off the constant term as a = -phi_next(0); the descent is
    exact for |a| != 1 because phi = (phi_next + a*phi_next^*) / ((1-a^2) z).
    """
    if not phi_next.is_monic or phi_next.degree < 1:
        raise InvalidCharacteristicError(
            "descent needs a monic polynomial of degree >= 1"
        )
    a = -phi_next[0]
    if abs(a) == 1:
        raise UnimodularConstantTermError(
            f"|constant term| = 1 in {phi_next}; descent cannot continue"
        )
    num = phi_next + a * phi_next.reversed()
    if num[0] != 0:
        raise InternalInconsistencyError("descent numerator kept a constant term")
    phi = Poly(num.coeffs[1:]) * (1 / (1 - a * a))
    return phi, a


# ---------------------------------------------------------------------------
# The assembled system
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VerblunskySequence:
    """Reflection coefficients a_0..a_N of a finite para-orthogonal
    family: |a_k| < 1 strictly for k < N and |a_N| = 1."""

    a: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.a:
            raise TerminalMassError("need at least the terminal coefficient")
        for k, v in enumerate(self.a[:-1]):
            if abs(v) >= 1:
                raise SingularMomentError(f"|a_{k}| = {abs(v)} >= 1 below the terminal index")
        if abs(self.a[-1]) != 1:
            raise TerminalMassError(f"terminal coefficient {self.a[-1]} is not unimodular")

    @property
    def n_max(self) -> int:
        return len(self.a) - 1

    def __iter__(self):
        return iter(self.a)

    def __len__(self):
        return len(self.a)

    def __getitem__(self, k):
        return self.a[k]

    def to_json_list(self) -> list[str]:
        return [str(v) for v in self.a]


@dataclass(frozen=True)
class PopucSystem:
    """A complete finite para-orthogonal ladder.

    Carries the monic polynomials Phi_0..Phi_{N+1}, the reflection
    coefficients a_0..a_N, the squared norms h_0..h_N, the Toeplitz
    determinants Delta_1..Delta_{N+1}, the generating moments, and a
    provenance label.  Construction re-checks the cheap structural
    invariants; orthogonality itself is enforced by the builders.
    """

    family: str
    moments: MomentSequence
    phis: tuple[Poly, ...]
    verblunsky: VerblunskySequence
    h: tuple[Fraction, ...]
    delta: tuple[Fraction, ...]

    def __post_init__(self):
        n1 = self.verblunsky.n_max + 1  # N + 1
        if len(self.phis) != n1 + 1:
            raise InternalInconsistencyError("ladder length does not match coefficients")
        if len(self.h) != n1 or len(self.delta) != n1:
            raise InternalInconsistencyError("h/delta lengths do not match coefficients")
        for n, phi in enumerate(self.phis):
            if phi.degree != n or not phi.is_monic:
                raise InternalInconsistencyError(f"rung {n} is not monic of degree {n}")
        if self.moments.at(0) != 1:
            raise InternalInconsistencyError("systems are normalized to sigma_0 = 1")
        # h_n = Delta_{n+1} / Delta_n (Delta_0 = 1) and the running product
        # of (1 - a_k^2) must agree term by term.
        running = Fraction(1)
        prev_delta = Fraction(1)
        for n in range(n1):
            if self.delta[n] <= 0:
                raise SingularMomentError(f"Delta_{n + 1} = {self.delta[n]} is not positive")
            if self.h[n] != self.delta[n] / prev_delta:
                raise InternalInconsistencyError(f"h_{n} disagrees with Delta_{n + 1}/Delta_{n}")
            if self.h[n] != running:
                raise InternalInconsistencyError(f"h_{n} disagrees with prod(1 - a_k^2)")
            running *= 1 - self.verblunsky[n] ** 2
            prev_delta = self.delta[n]

    @property
    def n_max(self) -> int:
        """N: index of the last interior-normed polynomial Phi_N."""
        return self.verblunsky.n_max

    @property
    def terminal(self) -> Poly:
        """Phi_{N+1}, the characteristic polynomial carrying the spectrum."""
        return self.phis[-1]

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "N": self.n_max,
            "verblunsky": self.verblunsky.to_json_list(),
            "phis": [p.to_json_list() for p in self.phis],
            "h": [str(v) for v in self.h],
            "delta": [str(v) for v in self.delta],
            "moments": self.moments.to_json_list(),
        }

    @staticmethod
    def from_json_dict(d: dict) -> "PopucSystem":
        return PopucSystem(
            family=d["family"],
            moments=MomentSequence(
                sigma=tuple(Fraction(s) for s in d["moments"]),
                provenance=d["family"],
            ),
            phis=tuple(Poly.from_json_list(p) for p in d["phis"]),
            verblunsky=VerblunskySequence(tuple(Fraction(s) for s in d["verblunsky"])),
            h=tuple(Fraction(s) for s in d["h"]),
            delta=tuple(Fraction(s) for s in d["delta"]),
        )


def _verify_annihilation(m: MomentSequence, phis: list[Poly]) -> None:
    """Every rung must kill z^j for j below its degree; this is the moment
    characterization of the ladder and holds for the terminal rung too
    (it vanishes on the support)."""
    for n in range(1, len(phis)):
        phi = phis[n]
        for j in range(n):
            val = sum(c * m.at(k - j) for k, c in enumerate(phi.coeffs) if c)
            if val != 0:
                raise InternalInconsistencyError(
                    f"<Phi_{n}, z^{j}> = {val} != 0 ({m.provenance})"
                )


def determinant_formula_poly(m: MomentSequence, n: int) -> Poly:
    """Phi_n by the bordered-determinant formula: expand the matrix whose
    top n rows are the moments sigma_{j-i} (j = 0..n) and whose last row
    is 1, z, ..., z^n along that last row, then divide by Delta_n.

    Brute force on purpose: this is the independent cross-check for the
    recurrence-built ladder."""
    if n == 0:
        return Poly.one()
    delta_n = toeplitz_det(m, n)
    if delta_n == 0:
        raise SingularMomentError(f"Delta_{n} = 0; determinant formula undefined")
    vals = {k: m.at(k) for k in range(-n, n + 1)}
    scale = lcm(*(v.denominator for v in vals.values()))
    ints = {k: int(v * scale) for k, v in vals.items()}
    coeffs = []
    for j in range(n + 1):
        rows = [[ints[c - i] for c in range(n + 1) if c != j] for i in range(n)]
        minor = Fraction(_bareiss_det(rows), scale**n)
        coeffs.append((-1) ** (n + j) * minor / delta_n)
    return Poly(coeffs)


def popuc_from_moments(
    m: MomentSequence,
    n_plus_1: int,
    family: str | None = None,
    paranoid: bool = False,
) -> PopucSystem:
    """Build the full ladder Phi_0..Phi_{N+1} from moments, N+1 = n_plus_1.

    The reflection coefficients come from a Levinson-style update
    a_n = <z Phi_n, 1> / h_n; each rung is then verified to annihilate
    z^0..z^{n-1} through the moment functional, and the Toeplitz minors
    are computed independently by fraction-free elimination and matched
    against the running product formula for h_n.  With paranoid=True
    every rung is additionally compared against the bordered-determinant
    formula, coefficient by coefficient.

    Raises SingularMomentError when some Delta_k <= 0 for k <= N+1, and
    TerminalMassError when |a_N| != 1 (the moments do not close into an
    (N+1)-point measure).
    """
    if n_plus_1 < 1:
        raise InvalidModulusError("need n_plus_1 >= 1")
    n_terminal = n_plus_1  # degree of the characteristic polynomial
    if m.max_index < n_terminal:
        raise InsufficientMomentsError(
            f"building {n_terminal + 1} rungs needs sigma_0..sigma_{n_terminal}, "
            f"got up to sigma_{m.max_index}"
        )
    if m.at(0) != 1:
        raise SingularMomentError("ladder construction expects sigma_0 = 1")

    # Positivity of Delta_1..Delta_N+1 up front (one Bareiss sweep).
    minors = leading_toeplitz_minors(m, n_terminal)

    phis = [Poly.one()]
    a: list[Fraction] = []
    h = [Fraction(1)]
    for n in range(n_terminal):
        phi = phis[n]
        num = sum(c * m.at(k + 1) for k, c in enumerate(phi.coeffs) if c)
        a_n = num / h[n]
        if n < n_terminal - 1:
            if abs(a_n) >= 1:
                raise SingularMomentError(
                    f"|a_{n}| = {abs(a_n)} >= 1: moments are not positive-definite "
                    f"through order {n + 2} ({m.provenance})"
                )
        elif abs(a_n) != 1:
            raise TerminalMassError(
                f"|a_{n_terminal - 1}| = {abs(a_n)} != 1: moments do not describe an "
                f"{n_terminal}-point measure ({m.provenance})"
            )
        a.append(a_n)
        phis.append(szego_step(phi, a_n))
        h.append(h[n] * (1 - a_n * a_n))

    h = h[:n_terminal]  # h_0..h_N; h_{N+1} would be 0
    for n in range(n_terminal):
        ratio = minors[n] / (minors[n - 1] if n else Fraction(1))
        if h[n] != ratio:
            raise InternalInconsistencyError(
                f"h_{n}: product route {h[n]} != determinant route {ratio}"
            )

    _verify_annihilation(m, phis)
    if paranoid:
        for n in range(1, n_terminal + 1):
            det_poly = determinant_formula_poly(m, n)
            if det_poly != phis[n]:
                raise InternalInconsistencyError(
                    f"rung {n}: recurrence gives {phis[n]}, determinant formula {det_poly}"
                )

    return PopucSystem(
        family=family or m.provenance,
        moments=m,
        phis=tuple(phis),
        verblunsky=VerblunskySequence(tuple(a)),
        h=tuple(h),
        delta=tuple(minors),
    )


def moments_from_ladder(phis: list[Poly], provenance: str) -> MomentSequence:
    """Recover sigma_0..sigma_{N+1} from a monic ladder by solving the
    annihilation conditions <Phi_n, 1> = 0 upward: each rung determines
    the next moment because it is monic.  Used for systems defined by
    descent, whose measure is known only implicitly."""
    sigma = [Fraction(1)]
    for n in range(1, len(phis)):
        phi = phis[n]
        sigma.append(-sum(phi[k] * sigma[k] for k in range(n)))
    return MomentSequence(sigma=tuple(sigma), provenance=provenance)


def gram_matrix(m: MomentSequence, polys: list[Poly]) -> list[list[Fraction]]:
    """All pairwise inner products <p_i, p_j>, computed as P * S * P^T so
    the cost stays cubic in the ladder size."""
    deg = max((p.degree for p in polys), default=0)
    if deg > m.max_index:
        raise InsufficientMomentsError("Gram matrix needs moments up to the max degree")
    rows = [[p[k] for k in range(deg + 1)] for p in polys]
    # mid[i][k] = sum_j p_i[j] * sigma_{j-k}
    mid = [
        [sum(r[j] * m.at(j - k) for j in range(deg + 1) if r[j]) for k in range(deg + 1)]
        for r in rows
    ]
    return [
        [sum(mid[i][k] * rows[j][k] for k in range(deg + 1)) for j in range(len(polys))]
        for i in range(len(polys))
    ]
