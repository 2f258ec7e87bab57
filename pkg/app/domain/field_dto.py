from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import galois

from app.error.exceptions import InvalidFieldSpecError

"""
    Data Transfer Object (DTO) describing an extension field F_{q^M}
    built as F_q[X] / <modulus>.

    The ground field is restricted to a prime q. Elements of the extension
    field are handled as polynomial-basis coordinates relative to the
    modulus, lowest degree first.

    Attributes
    ----------
    q : int
        Prime size of the ground field F_q.
    m : int
        Extension degree M >= 1.
    modulus : Tuple[int, ...]
        Monic polynomial of degree exactly M, coefficients c_0..c_M,
        lowest degree first. Irreducibility is certified by FieldService.
"""


@dataclass(frozen=True)
class FieldSpec:
    q: int
    m: int
    modulus: Tuple[int, ...]

    def __post_init__(self):
        if not galois.is_prime(self.q):
            raise InvalidFieldSpecError(f"Ground field size q={self.q} is not prime.")

        if self.m < 1:
            raise InvalidFieldSpecError(f"Extension degree M={self.m} must be at least 1.")

        modulus = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", modulus)

        if len(modulus) != self.m + 1:
            raise InvalidFieldSpecError(
                f"Modulus must have degree exactly M={self.m}, got {len(modulus) - 1}."
            )

        if any(c < 0 or c >= self.q for c in modulus):
            raise InvalidFieldSpecError(f"Modulus coefficients must lie in [0, {self.q}).")

        if modulus[-1] != 1:
            raise InvalidFieldSpecError("Modulus must be monic.")

    @property
    def order(self) -> int:
        return self.q ** self.m

    @property
    def poly(self) -> galois.Poly:
        return galois.Poly(list(reversed(self.modulus)), field=galois.GF(self.q))

    def is_irreducible(self) -> bool:
        return self.poly.is_irreducible()

    def describe(self) -> str:
        return f"F_{self.q}^{self.m} mod {self.poly_string()}"

    def poly_string(self) -> str:
        terms = []
        for degree in range(self.m, -1, -1):
            c = self.modulus[degree]
            if c == 0:
                continue
            coeff = "" if (c == 1 and degree > 0) else str(c)
            if degree == 0:
                terms.append(str(c))
            elif degree == 1:
                terms.append(f"{coeff}X")
            else:
                terms.append(f"{coeff}X^{degree}")
        return "+".join(terms)

    @classmethod
    def from_poly_string(cls, q: int, m: int, poly: str) -> FieldSpec:
        try:
            parsed = galois.Poly.Str(poly.replace("X", "x"), field=galois.GF(q))
        except (ValueError, TypeError) as e:
            raise InvalidFieldSpecError(f"Cannot parse modulus '{poly}': {e}")

        coeffs = [int(c) for c in parsed.coeffs]
        return cls(q=q, m=m, modulus=tuple(reversed(coeffs)))

    @classmethod
    def default(cls, q: int, m: int) -> FieldSpec:
        if not galois.is_prime(q):
            raise InvalidFieldSpecError(f"Ground field size q={q} is not prime.")
        poly = galois.primitive_poly(q, m)
        return cls(q=q, m=m, modulus=tuple(reversed([int(c) for c in poly.coeffs])))


"""
    Normal basis {alpha^[0], ..., alpha^[M-1]} of F_{q^M} over F_q.

    Column i of basis_matrix holds the polynomial-basis coordinates of
    alpha^[i]; inverse_matrix maps polynomial coordinates to normal
    coordinates. Both are M x M matrices over F_q.
"""


@dataclass(frozen=True, eq=False)
class NormalBasis:
    alpha: galois.FieldArray
    basis_matrix: galois.FieldArray
    inverse_matrix: galois.FieldArray

    @property
    def size(self) -> int:
        return self.basis_matrix.shape[0]
