from __future__ import annotations

import logging
from typing import Dict

import galois

from app.error.exceptions import FactorizationInfeasibleError

TRIAL_DIVISION_BOUND = 10**6
MAX_RHO_BITS = 128
RHO_CONSTANTS = (1, 2, 3, 5, 7)

logger = logging.getLogger(__name__)

"""
   Deterministic integer factorization for primitivity tests.

   Small prime factors are stripped by trial division up to
   TRIAL_DIVISION_BOUND; the remaining cofactor is split with Pollard's rho.
   Cofactors wider than MAX_RHO_BITS, or that resist every rho constant,
   are refused with FactorizationInfeasibleError rather than guessed.
"""

class Factorizer:

    def __init__(self, trial_bound: int = TRIAL_DIVISION_BOUND, max_rho_bits: int = MAX_RHO_BITS):
        self.trial_bound = trial_bound
        self.max_rho_bits = max_rho_bits

    """
       Returns the prime factorization of n as {prime: multiplicity}.

       Parameters
       ----------
       n : int
           Positive integer, typically q^M - 1.

       Raises
       ------
       FactorizationInfeasibleError
           When n < 1 or a composite cofactor cannot be split within budget.
    """

    def factorize(self, n: int) -> Dict[int, int]:
        if n < 1:
            raise FactorizationInfeasibleError(f"Cannot factorize non-positive integer {n}.")
        if n == 1:
            return {}

        primes, exponents, residual = galois.trial_division(n, self.trial_bound)
        factors = {int(p): int(e) for p, e in zip(primes, exponents)}

        pending = [int(residual)] if residual > 1 else []
        while pending:
            r = pending.pop()
            if galois.is_prime(r):
                factors[r] = factors.get(r, 0) + 1
                continue

            base, power = galois.perfect_power(r)
            if power > 1:
                pending.extend([int(base)] * int(power))
                continue

            pending.extend(self._split(r))

        logger.debug("Factorized %d into %s", n, factors)
        return dict(sorted(factors.items()))

    def prime_divisors(self, n: int) -> list[int]:
        return list(self.factorize(n).keys())

    def _split(self, r: int) -> list[int]:
        if r.bit_length() > self.max_rho_bits:
            raise FactorizationInfeasibleError(
                f"Composite cofactor of {r.bit_length()} bits exceeds the {self.max_rho_bits}-bit rho budget."
            )

        for c in RHO_CONSTANTS:
            try:
                d = int(galois.pollard_rho(r, c=c))
            except RuntimeError:
                continue
            if 1 < d < r:
                return [d, r // d]

        raise FactorizationInfeasibleError(f"Pollard rho failed to split {r}.")
