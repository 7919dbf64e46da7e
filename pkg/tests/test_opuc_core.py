"""The moment-to-ladder engine: determinants, recurrence, orthogonality."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramanujan_popuc.errors import (
    InsufficientMomentsError,
    InvalidCharacteristicError,
    SingularMomentError,
    TerminalMassError,
    UnimodularConstantTermError,
)
from ramanujan_popuc.number_theory import euler_totient
from ramanujan_popuc.opuc_core import (
    MomentSequence,
    PopucSystem,
    VerblunskySequence,
    determinant_formula_poly,
    gram_matrix,
    inner_product,
    inverse_szego_step,
    leading_toeplitz_minors,
    moments_from_cyclotomic,
    moments_from_kronecker,
    moments_from_ladder,
    moments_from_power_sums,
    popuc_from_moments,
    szego_step,
    toeplitz_det,
)
from ramanujan_popuc.polynomials import KroneckerSpec, Poly, cyclotomic, kronecker_poly


def P(*ascending):
    return Poly(ascending)


def det_gaussian(rows):
    """Independent determinant oracle: plain fraction Gaussian elimination
    with partial pivoting (no Bareiss)."""
    rows = [[F(x) for x in r] for r in rows]
    n = len(rows)
    det = F(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot_row is None:
            return F(0)
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            det = -det
        det *= rows[k][k]
        inv = 1 / rows[k][k]
        for i in range(k + 1, n):
            f = rows[i][k] * inv
            if f:
                for j in range(k, n):
                    rows[i][j] -= f * rows[k][j]
    return det


def toeplitz_rows(m: MomentSequence, n: int):
    return [[m.at(j - i) for j in range(n)] for i in range(n)]


# -- moment constructors -----------------------------------------------------


def test_moments_from_cyclotomic_examples():
    assert moments_from_cyclotomic(5, 4).sigma == (1, F(-1, 4), F(-1, 4), F(-1, 4), F(-1, 4))
    assert moments_from_cyclotomic(1, 2).sigma == (1, 1, 1)
    # frozen from the direct-summation oracle: c_10(0..4) = 4, 1, -1, 1, -1,
    # i.e. the sign-alternating pattern (-1)^(n+1)/4 for n >= 1
    assert moments_from_cyclotomic(10, 4).sigma == (1, F(1, 4), F(-1, 4), F(1, 4), F(-1, 4))


def test_moments_from_kronecker_examples():
    assert moments_from_kronecker(KroneckerSpec([1, 2]), 2).sigma == (1, 0, 1)
    # frozen from the oracle (c_1 + c_2 + c_3)(n) / 4 for n = 0..3:
    # (1+1+2, 1-1-1, 1+1-1, 1-1+2) / 4
    assert moments_from_kronecker(KroneckerSpec([1, 2, 3]), 3).sigma == (
        1, F(-1, 4), F(1, 4), F(1, 2),
    )
    assert moments_from_kronecker(KroneckerSpec([5]), 1).sigma == (1, F(-1, 4))
    assert moments_from_kronecker(KroneckerSpec([5]), 4).sigma == moments_from_cyclotomic(5, 4).sigma


def test_moments_from_power_sums_examples():
    assert moments_from_power_sums(P(-1, 0, 1), 2).sigma == (1, 0, 1)
    assert (
        moments_from_power_sums(cyclotomic(5), 2).sigma
        == moments_from_cyclotomic(5, 2).sigma
        == (1, F(-1, 4), F(-1, 4))
    )
    assert (
        moments_from_power_sums(P(-1, -1, 0, 1, 1), 1).sigma
        == moments_from_kronecker(KroneckerSpec([1, 2, 3]), 1).sigma
    )


def test_moments_from_power_sums_rejects():
    with pytest.raises(InvalidCharacteristicError):
        moments_from_power_sums(P(1, 2), 3)  # not monic
    with pytest.raises(InvalidCharacteristicError):
        moments_from_power_sums(P(0, 1), 3)  # root at zero


def test_power_sum_double_oracle_sweep():
    for orders in ([1], [2], [4], [1, 2], [2, 3], [1, 2, 3], [3, 4, 5], [1, 6, 10], [12]):
        spec = KroneckerSpec(orders)
        L = spec.total_degree + 2
        assert (
            moments_from_power_sums(kronecker_poly(spec), L).sigma
            == moments_from_kronecker(spec, L).sigma
        )


def test_moment_sequence_validation():
    with pytest.raises(SingularMomentError):
        MomentSequence(sigma=(F(-1),))
    m = MomentSequence(sigma=(F(1), F(1, 2)))
    assert m.at(-1) == m.at(1) == F(1, 2)
    with pytest.raises(InsufficientMomentsError):
        m.at(2)


# -- Toeplitz determinants ----------------------------------------------------


def test_toeplitz_examples():
    m5 = moments_from_cyclotomic(5)
    assert toeplitz_det(m5, 2) == F(15, 16)
    assert toeplitz_det(m5, 1) == 1
    assert toeplitz_det(m5, 0) == 1  # empty determinant convention
    assert toeplitz_det(moments_from_cyclotomic(5, 5), 5) == 0
    with pytest.raises(InsufficientMomentsError):
        toeplitz_det(m5, 6)


def test_toeplitz_against_gaussian_oracle():
    for m in (
        moments_from_cyclotomic(5),
        moments_from_cyclotomic(12),
        moments_from_kronecker(KroneckerSpec([2, 3, 8])),
        MomentSequence(sigma=(F(1), F(1, 3), F(-1, 7), F(2, 5), F(0))),
    ):
        for n in range(0, m.max_index + 2):
            if n - 1 > m.max_index:
                continue
            assert toeplitz_det(m, n) == det_gaussian(toeplitz_rows(m, n))


def test_leading_minors_match_single_determinants():
    m = moments_from_cyclotomic(7)
    minors = leading_toeplitz_minors(m, 6)
    assert minors == [toeplitz_det(m, n) for n in range(1, 7)]
    sing = MomentSequence(sigma=(F(1), F(1), F(1)))
    with pytest.raises(SingularMomentError):
        leading_toeplitz_minors(sing, 2)


# -- inner product ------------------------------------------------------------


def test_inner_product_examples():
    m5 = moments_from_cyclotomic(5)
    sys5 = popuc_from_moments(m5, 4)
    phi0, phi1, phi2 = sys5.phis[0], sys5.phis[1], sys5.phis[2]
    assert inner_product(m5, phi1, phi0) == 0
    assert inner_product(m5, phi1, phi1) == F(15, 16)
    assert inner_product(m5, phi2, phi2) == F(5, 6)
    with pytest.raises(InsufficientMomentsError):
        inner_product(m5, Poly.monomial(6), phi0)


def test_gram_matrix_is_diag_h():
    for m, count in (
        (moments_from_cyclotomic(7), 6),
        (moments_from_kronecker(KroneckerSpec([1, 2, 5])), 6),
    ):
        system = popuc_from_moments(m, count)
        g = gram_matrix(m, list(system.phis[:-1]))
        for i in range(count):
            for j in range(count):
                assert g[i][j] == (system.h[i] if i == j else 0)
                assert g[i][j] == inner_product(m, system.phis[i], system.phis[j])


# -- recurrence steps ---------------------------------------------------------


def test_szego_step_examples():
    assert szego_step(Poly.one(), F(-1, 4)) == P(F(1, 4), 1)
    assert szego_step(Poly.one(), F(0)) == P(0, 1)
    # Frozen via the bordered-determinant oracle below: stepping z + 1/2
    # with coefficient -1/3 lands on the degree-2 rung of the ladder whose
    # moments are reconstructed from [1, z+1/2, ...], NOT on z^2+(1/3)(z+1).
    stepped = szego_step(P(F(1, 2), 1), F(-1, 3))
    assert stepped == P(F(1, 3), F(2, 3), 1)
    ladder = [Poly.one(), P(F(1, 2), 1), stepped]
    m = moments_from_ladder(ladder, provenance="test")
    assert determinant_formula_poly(m, 2) == stepped


def test_inverse_szego_examples():
    assert inverse_szego_step(P(F(1, 4), 1)) == (Poly.one(), F(-1, 4))
    assert inverse_szego_step(P(F(-1, 5), F(1, 5), 1)) == (P(F(1, 4), 1), F(1, 5))
    with pytest.raises(UnimodularConstantTermError):
        inverse_szego_step(P(-1, 0, 1))


@settings(deadline=None, max_examples=200)
@given(
    coeffs=st.lists(
        st.fractions(min_value=-2, max_value=2, max_denominator=9), min_size=0, max_size=5
    ),
    a=st.fractions(min_value=-3, max_value=3, max_denominator=7),
)
def test_inverse_szego_round_trip(coeffs, a):
    if abs(a) == 1:
        return
    phi = Poly(list(coeffs) + [1])  # random monic
    recovered, a_rec = inverse_szego_step(szego_step(phi, a))
    assert recovered == phi and a_rec == a


# -- the ladder builder -------------------------------------------------------


def test_popuc_prime_example():
    sys5 = popuc_from_moments(moments_from_cyclotomic(5), 4, paranoid=True)
    assert sys5.verblunsky.a == (F(-1, 4), F(-1, 3), F(-1, 2), F(-1))
    assert sys5.terminal == cyclotomic(5)
    assert sys5.h == (1, F(15, 16), F(5, 6), F(5, 8))
    assert sys5.delta == (1, F(15, 16), F(25, 32), F(125, 256))


def test_popuc_two_point_example():
    system = popuc_from_moments(moments_from_kronecker(KroneckerSpec([1, 2])), 2)
    assert system.phis[1] == P(0, 1)
    assert system.phis[2] == P(-1, 0, 1)
    assert system.verblunsky.a == (0, 1)


def test_popuc_anti_cyclotomic_example():
    system = popuc_from_moments(moments_from_kronecker(KroneckerSpec([1, 2, 3])), 4)
    assert system.verblunsky.a == (F(-1, 4), F(1, 5), F(2, 3), 1)


def test_popuc_rejects_singular_and_open_moments():
    # sigma == 1 forever is a single point mass: Delta_2 = 0 kills N+1 = 2
    with pytest.raises(SingularMomentError):
        popuc_from_moments(MomentSequence(sigma=(F(1), F(1), F(1))), 2)
    # normalized arc measure: all |a_n| would be 0, never unimodular
    with pytest.raises(TerminalMassError):
        popuc_from_moments(MomentSequence(sigma=(F(1), 0, 0, 0)), 3)
    with pytest.raises(InsufficientMomentsError):
        popuc_from_moments(moments_from_cyclotomic(5, 2), 4)


def test_determinant_formula_matches_recurrence():
    for m, count in (
        (moments_from_cyclotomic(9), euler_totient(9)),
        (moments_from_kronecker(KroneckerSpec([3, 4])), 4),
    ):
        system = popuc_from_moments(m, count, paranoid=True)
        for n in range(count + 1):
            assert determinant_formula_poly(m, n) == system.phis[n]


def test_terminal_is_cyclotomic_sweep():
    for m in range(1, 61):
        system = popuc_from_moments(
            moments_from_cyclotomic(m), euler_totient(m), family=f"sweep:{m}"
        )
        assert system.terminal == cyclotomic(m)


def test_singular_extension_of_finite_measures():
    for orders in ([1], [2], [5], [6], [1, 2], [1, 2, 3], [3, 4]):
        spec = KroneckerSpec(orders)
        n1 = spec.total_degree
        m = moments_from_kronecker(spec, n1 + 1)
        assert toeplitz_det(m, n1 + 1) == 0  # Delta_{N+2}
        assert all(toeplitz_det(m, k) > 0 for k in range(1, n1 + 1))


def test_moments_from_ladder_inverts_construction():
    m = moments_from_cyclotomic(7)
    system = popuc_from_moments(m, 6)
    rebuilt = moments_from_ladder(list(system.phis), provenance="rebuilt")
    assert rebuilt.sigma == m.sigma


# -- data types ---------------------------------------------------------------


def test_verblunsky_validation():
    with pytest.raises(TerminalMassError):
        VerblunskySequence((F(1, 2),))
    with pytest.raises(SingularMomentError):
        VerblunskySequence((F(3, 2), F(1)))
    v = VerblunskySequence((F(-1, 2), F(1)))
    assert v.n_max == 1 and list(v) == [F(-1, 2), F(1)]


def test_popuc_system_json_round_trip():
    system = popuc_from_moments(moments_from_kronecker(KroneckerSpec([1, 2, 3])), 4)
    clone = PopucSystem.from_json_dict(system.to_json_dict())
    assert clone.phis == system.phis
    assert clone.verblunsky == system.verblunsky
    assert clone.h == system.h
    assert clone.delta == system.delta
    assert clone.moments.sigma == system.moments.sigma
