from __future__ import annotations

import logging
from typing import Dict, List, Sequence, Type

import galois
import numpy as np

from app.domain.field_dto import FieldSpec, NormalBasis
from app.error.exceptions import (
    FieldDivisionByZeroError,
    FieldMismatchError,
    InvalidFieldSpecError,
    NotNormalElementError,
    NotPrimitiveDomainError,
)
from app.util.factorization import Factorizer
from app.util.matrix_calculator import MatrixCalculator

# galois builds exp/log lookup tables up to this order; beyond it arithmetic
# is computed directly and no primitive element is needed.
LOOKUP_TABLE_ORDER = 2**20

ARITH_OPS = ("add", "sub", "mul", "div", "inv", "pow")

logger = logging.getLogger(__name__)

"""
   Service bound to a single extension field F_{q^M}.

   Elements are galois FieldArray scalars; their polynomial-basis coordinates
   (lowest degree first) are the base-q digits of the integer representation.
   The service provides arithmetic, Frobenius maps, primitive and normal
   element machinery and the phi_n map to ground-field matrices.

   Attributes
   ----------
   spec : FieldSpec
       The field description.
   assume_primitive : bool
       Skip irreducibility and primitivity certification. Required for fields
       whose multiplicative order cannot be factorized within budget.
   factorizer : Factorizer
       Used for q^M - 1 in primitivity tests.
   ground : type[galois.FieldArray]
       F_q.
   field : type[galois.FieldArray]
       F_{q^M}.
"""

class FieldService:

    def __init__(self, spec: FieldSpec, assume_primitive: bool = False, factorizer: Factorizer | None = None):
        self.spec = spec
        self.assume_primitive = assume_primitive
        self.factorizer = factorizer or Factorizer()
        self.ground = galois.GF(spec.q)
        self.field = self._build_field()
        logger.info("Constructed %s (assume_primitive=%s)", spec.describe(), assume_primitive)

    def _build_field(self) -> Type[galois.FieldArray]:
        if self.spec.m == 1:
            return self.ground

        if not self.assume_primitive and not self.spec.is_irreducible():
            raise InvalidFieldSpecError(f"Modulus {self.spec.poly_string()} is not irreducible over F_{self.spec.q}.")

        if self.spec.order <= LOOKUP_TABLE_ORDER:
            try:
                return galois.GF(self.spec.q ** self.spec.m, irreducible_poly=self.spec.poly)
            except ValueError as e:
                raise InvalidFieldSpecError(f"Cannot construct {self.spec.describe()}: {e}")

        x = galois.Poly([1, 0], field=self.ground)
        return galois.GF(
            self.spec.q ** self.spec.m,
            irreducible_poly=self.spec.poly,
            primitive_element=x,
            verify=False,
        )

    # ------------------------------------------------------------------
    # element conversion

    def element(self, coords: Sequence[int]) -> galois.FieldArray:
        coords = [int(c) for c in coords]
        if len(coords) != self.spec.m:
            raise FieldMismatchError(f"Expected {self.spec.m} coordinates, got {len(coords)}.")
        if any(c < 0 or c >= self.spec.q for c in coords):
            raise FieldMismatchError(f"Coordinates must lie in [0, {self.spec.q}).")

        value = 0
        for c in reversed(coords):
            value = value * self.spec.q + c
        return self.field(value)

    def coords(self, a: galois.FieldArray) -> List[int]:
        self._require_member(a)
        value = int(a)
        digits = []
        for _ in range(self.spec.m):
            value, digit = divmod(value, self.spec.q)
            digits.append(digit)
        return digits

    def vector(self, values: Sequence) -> galois.FieldArray:
        return self.field([int(v) for v in values])

    def poly_coords(self, x: galois.FieldArray) -> galois.FieldArray:
        """M x n ground matrix whose column j holds the polynomial coordinates of x_j."""
        self._require_member(x)
        flat = np.atleast_1d(x)
        if self.spec.m == 1:
            return self.ground(np.asarray(flat, dtype=np.int64)).reshape(1, -1)
        return flat.vector()[:, ::-1].T.copy()

    # ------------------------------------------------------------------
    # arithmetic

    def elem_arith(self, a: galois.FieldArray, b, op: str) -> galois.FieldArray:
        if op not in ARITH_OPS:
            raise ValueError(f"Unsupported operation '{op}', expected one of {ARITH_OPS}.")

        self._require_member(a)
        if op == "inv":
            return self._inverse(a)
        if op == "pow":
            return self.power(a, int(b))

        self._require_member(b)
        if op == "add":
            return a + b
        if op == "sub":
            return a - b
        if op == "mul":
            return a * b
        return a * self._inverse(b)

    def power(self, a: galois.FieldArray, exponent: int) -> galois.FieldArray:
        if exponent < 0:
            a, exponent = self._inverse(a), -exponent

        result = self.field(1)
        base = a
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def frobenius(self, a: galois.FieldArray, s: int) -> galois.FieldArray:
        """a^{q^s}; works element-wise on arrays."""
        result = a
        for _ in range(s % self.spec.m):
            result = result ** self.spec.q
        return result

    def conjugates(self, a: galois.FieldArray, count: int | None = None) -> galois.FieldArray:
        count = self.spec.m if count is None else count
        values = []
        current = a
        for _ in range(count):
            values.append(int(current))
            current = current ** self.spec.q
        return self.vector(values)

    # ------------------------------------------------------------------
    # primitive and normal elements

    def is_primitive(self, a: galois.FieldArray) -> bool:
        self._require_member(a)
        if a == 0:
            raise NotPrimitiveDomainError("Zero is never a primitive element.")

        group_order = self.spec.order - 1
        for p in self.factorizer.prime_divisors(group_order):
            if self.power(a, group_order // p) == 1:
                return False
        return True

    def is_normal(self, a: galois.FieldArray) -> bool:
        self._require_member(a)
        if a == 0:
            return False
        return MatrixCalculator.ground_rank(self.poly_coords(self.conjugates(a))) == self.spec.m

    """
       First element, in integer order of the polynomial coordinates
       (constant term fastest-varying), that is both primitive and normal.
    """

    def find_primitive_normal(self) -> galois.FieldArray:
        for value in range(1, self.spec.order):
            candidate = self.field(value)
            if self.is_normal(candidate) and self.is_primitive(candidate):
                logger.info("Primitive normal element found: %s", self.describe(candidate))
                return candidate

        raise InvalidFieldSpecError(f"No primitive normal element in {self.spec.describe()}.")

    def normal_basis(self, alpha: galois.FieldArray) -> NormalBasis:
        self._require_member(alpha)
        basis_matrix = self.poly_coords(self.conjugates(alpha))
        if MatrixCalculator.ground_rank(basis_matrix) != self.spec.m:
            raise NotNormalElementError(f"{self.describe(alpha)} is not a normal element.")

        inverse_matrix = np.linalg.inv(basis_matrix)
        return NormalBasis(alpha=alpha, basis_matrix=basis_matrix, inverse_matrix=inverse_matrix)

    # ------------------------------------------------------------------
    # normal coordinates and phi_n

    def normal_coords(self, a: galois.FieldArray, basis: NormalBasis) -> galois.FieldArray:
        return basis.inverse_matrix @ self.poly_coords(a)[:, 0]

    def from_normal_coords(self, c: Sequence[int], basis: NormalBasis) -> galois.FieldArray:
        coords = basis.basis_matrix @ self.ground(np.asarray(c, dtype=np.int64))
        return self.element(coords)

    def qdeg(self, a: galois.FieldArray, basis: NormalBasis) -> int | None:
        support = np.nonzero(self.normal_coords(a, basis))[0]
        if support.size == 0:
            return None
        return int(support[-1])

    def phi_n(self, x: galois.FieldArray, basis: NormalBasis) -> galois.FieldArray:
        if np.size(x) == 0:
            return self.ground.Zeros((self.spec.m, 0))
        return basis.inverse_matrix @ self.poly_coords(x)

    """
       Rank over F_q of a packet. The rank of phi_n(x) does not depend on the
       basis, so without one the polynomial coordinates are used directly.
    """

    def packet_rank(self, x: galois.FieldArray, basis: NormalBasis | None = None) -> int:
        if np.size(x) == 0:
            return 0
        coords = self.poly_coords(x) if basis is None else self.phi_n(x, basis)
        return MatrixCalculator.ground_rank(coords)

    # ------------------------------------------------------------------

    def factorize(self, n: int | None = None) -> Dict[int, int]:
        return self.factorizer.factorize(self.spec.order - 1 if n is None else n)

    def describe(self, a: galois.FieldArray) -> str:
        coords = self.coords(a)
        terms = []
        for degree in range(len(coords) - 1, -1, -1):
            c = coords[degree]
            if c == 0:
                continue
            coeff = "" if (c == 1 and degree > 0) else str(c)
            if degree == 0:
                terms.append(str(c))
            elif degree == 1:
                terms.append(f"{coeff}X")
            else:
                terms.append(f"{coeff}X^{degree}")
        return "+".join(terms) if terms else "0"

    def _inverse(self, a: galois.FieldArray) -> galois.FieldArray:
        if a == 0:
            raise FieldDivisionByZeroError("Zero has no multiplicative inverse.")
        return self.field(1) / a

    def _require_member(self, a) -> None:
        if not isinstance(a, self.field):
            raise FieldMismatchError(
                f"Operand does not belong to {self.spec.describe()}."
            )

    def display_field(
        self,
        alpha: galois.FieldArray,
        factorization: Dict[int, int] | None,
        primitive: bool | None,
        normal: bool,
    ) -> None:
        print(f"Field: {self.spec.describe()}")
        if factorization is None:
            print("Factorization of q^M-1: skipped (assume-primitive)")
        else:
            factors = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in factorization.items())
            print(f"Factorization of q^M-1: {factors or '1'}")
        print(f"alpha: {self.describe(alpha)}")
        print(f"Primitive: {'assumed' if primitive is None else primitive}")
        print(f"Normal: {normal}")
