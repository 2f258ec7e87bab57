import pytest

from app.error.exceptions import FactorizationInfeasibleError
from app.util.factorization import Factorizer


def test_small_numbers():
    factorizer = Factorizer()
    assert factorizer.factorize(1) == {}
    assert factorizer.factorize(2047) == {23: 1, 89: 1}
    assert factorizer.factorize(360) == {2: 3, 3: 2, 5: 1}


def test_large_prime_cofactor():
    assert Factorizer().factorize(2**64 - 1) == {
        3: 1, 5: 1, 17: 1, 257: 1, 641: 1, 65537: 1, 6700417: 1,
    }


def test_pollard_rho_splits_composite_cofactor():
    assert Factorizer(trial_bound=100).factorize(1009 * 1013) == {1009: 1, 1013: 1}


def test_perfect_power_cofactor():
    assert Factorizer(trial_bound=10).factorize(4 * 1000003**2) == {2: 2, 1000003: 2}


def test_prime_divisors_are_sorted():
    assert Factorizer().prime_divisors(2**11 - 1) == [23, 89]


def test_cofactor_beyond_rho_budget_is_refused():
    factorizer = Factorizer(trial_bound=10, max_rho_bits=8)
    with pytest.raises(FactorizationInfeasibleError, match="rho budget"):
        factorizer.factorize(1000003 * 1000033)


def test_non_positive_input_is_refused():
    with pytest.raises(FactorizationInfeasibleError):
        Factorizer().factorize(0)
