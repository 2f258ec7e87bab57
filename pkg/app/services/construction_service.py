from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

import galois
import numpy as np

from app.domain.code_dto import ConvolutionalCode
from app.domain.field_dto import NormalBasis
from app.error.exceptions import ConstructionError, DimensionError, LinearDependenceError
from app.services.field_service import FieldService
from app.util.matrix_calculator import MatrixCalculator

logger = logging.getLogger(__name__)

"""
   Service building codes over the field of a FieldService:
   Gabidulin (MRD) block codes, the block Hankel / Toeplitz super-regular
   matrices made of Frobenius powers of a primitive normal element, and
   MSR convolutional codes extracted from them.

   Attributes
   ----------
   field_service : FieldService
       Field all constructed matrices live in.
"""

class ConstructionService:

    def __init__(self, field_service: FieldService):
        self.field_service = field_service

    """
       Generator of the Gabidulin code with evaluation vector g: row i holds
       the i-th Frobenius power of every entry of g.

       Raises
       ------
       ConstructionError
           If k > n, n > M or the entries of g are dependent over F_q.
    """

    def gabidulin_generator(self, g: galois.FieldArray, k: int) -> galois.FieldArray:
        fs = self.field_service
        n = len(g)
        if not 1 <= k <= n:
            raise ConstructionError(f"Gabidulin dimension must satisfy 1 <= k <= n, got k={k}, n={n}.")
        if n > fs.spec.m:
            raise ConstructionError(f"Gabidulin length n={n} exceeds the extension degree M={fs.spec.m}.")
        if fs.packet_rank(g) != n:
            raise ConstructionError("Evaluation points must be linearly independent over the ground field.")

        rows = [fs.frobenius(g, i) for i in range(k)]
        return fs.field(np.stack([np.asarray(r) for r in rows]))

    """
       True iff G A has rank k for every n x k ground matrix A of full rank,
       checked on one representative per column space.
    """

    def check_mrd(self, g_mat: galois.FieldArray) -> bool:
        k, n = g_mat.shape
        for a in MatrixCalculator.enumerate_subspaces(n, k, self.field_service.spec.q):
            product = g_mat @ MatrixCalculator.embed(a, self.field_service.field)
            if np.linalg.matrix_rank(product) < k:
                logger.info("Rank drop of the generator under channel %s", a.tolist())
                return False
        return True

    """
       Blocks T_0..T_m, each n x n, with T_j(r, s) = alpha^[nj + r + s].
    """

    def build_T_blocks(self, n: int, m: int, alpha: galois.FieldArray) -> List[galois.FieldArray]:
        fs = self.field_service
        needed = n * (m + 2) - 1
        if needed > fs.spec.m:
            logger.warning(
                "Frobenius exponents up to %d wrap modulo M=%d; super-regularity is not guaranteed",
                needed - 1, fs.spec.m,
            )

        conj = fs.conjugates(alpha, min(needed, fs.spec.m))
        offsets = np.arange(n)[:, np.newaxis] + np.arange(n)[np.newaxis, :]
        return [conj[(n * j + offsets) % fs.spec.m] for j in range(m + 1)]

    def build_hankel(self, blocks: Sequence[galois.FieldArray]) -> galois.FieldArray:
        """Block (i, c) is T_{i+c-m} when i + c >= m, zero otherwise."""
        n, m = self._check_blocks(blocks)
        result = type(blocks[0]).Zeros((n * (m + 1), n * (m + 1)))
        for i in range(m + 1):
            for c in range(m + 1):
                if i + c >= m:
                    result[i * n:(i + 1) * n, c * n:(c + 1) * n] = blocks[i + c - m]
        return result

    def build_toeplitz(self, blocks: Sequence[galois.FieldArray]) -> galois.FieldArray:
        """Block (i, c) is T_{c-i} when c >= i, zero otherwise."""
        n, m = self._check_blocks(blocks)
        result = type(blocks[0]).Zeros((n * (m + 1), n * (m + 1)))
        for i in range(m + 1):
            for c in range(i, m + 1):
                result[i * n:(i + 1) * n, c * n:(c + 1) * n] = blocks[c - i]
        return result

    """
       Builds the code whose block G_i consists of rows i_1..i_k of T_i,
       read from the first block row of the Toeplitz matrix.

       Parameters
       ----------
       toeplitz : galois.FieldArray
           n(m+1) x n(m+1) block Toeplitz matrix.
       n, k, m : int
           Code parameters.
       basis : NormalBasis
           Normal basis the resulting code carries.
       row_indices : Sequence[int] | None
           Strictly increasing indices in [0, n); defaults to 0..k-1.
    """

    def extract_msr_generator(
        self,
        toeplitz: galois.FieldArray,
        n: int,
        k: int,
        m: int,
        basis: NormalBasis,
        row_indices: Sequence[int] | None = None,
    ) -> ConvolutionalCode:
        rows = list(range(k)) if row_indices is None else [int(i) for i in row_indices]
        if len(rows) != k:
            raise ConstructionError(f"Expected {k} row indices, got {len(rows)}.")
        if any(a >= b for a, b in zip(rows, rows[1:])) or rows[0] < 0 or rows[-1] >= n:
            raise ConstructionError(f"Row indices must be strictly increasing in [0, {n}), got {rows}.")
        if toeplitz.shape != (n * (m + 1), n * (m + 1)):
            raise DimensionError(f"Toeplitz matrix has shape {toeplitz.shape}, expected side {n * (m + 1)}.")

        blocks = [toeplitz[rows, i * n:(i + 1) * n] for i in range(m + 1)]
        code = ConvolutionalCode(n=n, k=k, m=m, blocks=blocks, spec=self.field_service.spec, basis=basis, rows=rows)
        logger.info("Extracted MSR generator %s with rows %s", code.label(), rows)
        return code

    def build_msr_code(
        self,
        alpha: galois.FieldArray,
        n: int,
        k: int,
        m: int,
        row_indices: Sequence[int] | None = None,
    ) -> ConvolutionalCode:
        basis = self.field_service.normal_basis(alpha)
        toeplitz = self.build_toeplitz(self.build_T_blocks(n, m, alpha))
        return self.extract_msr_generator(toeplitz, n, k, m, basis, row_indices)

    """
       Extended generator G^EX_j: k(j+1) x n(j+1) block upper-triangular
       Toeplitz matrix with block (r, c) = G_{c-r}, zero beyond the memory.
    """

    def extended_generator(self, code: ConvolutionalCode, j: int) -> galois.FieldArray:
        if j < 0:
            raise DimensionError(f"Depth must be non-negative, got {j}.")

        n, k = code.n, code.k
        result = code.field.Zeros((k * (j + 1), n * (j + 1)))
        for r in range(j + 1):
            for c in range(r, min(j, r + code.m) + 1):
                result[r * k:(r + 1) * k, c * n:(c + 1) * n] = code.blocks[c - r]
        return result

    """
       Finds a full-rank ground matrix M such that the q-degrees of f M are
       strictly increasing, via the reduced echelon form of the reversed
       normal coordinates.

       Returns
       -------
       Tuple[galois.FieldArray, galois.FieldArray]
           (M over F_q, transformed polynomials f M over F_{q^M}).

       Raises
       ------
       LinearDependenceError
           If the polynomials are linearly dependent over F_q.
    """

    def echelon_sort_transform(
        self,
        polys: Sequence[galois.FieldArray],
        basis: NormalBasis,
    ) -> Tuple[galois.FieldArray, galois.FieldArray]:
        fs = self.field_service
        f = fs.vector([int(p) for p in polys])
        count = len(f)

        reversed_coords = fs.phi_n(f, basis)[::-1, :]
        augmented = np.hstack([reversed_coords.T.copy(), fs.ground.Identity(count)])
        reduced = augmented.row_reduce(ncols=fs.spec.m)

        echelon, ops = reduced[:, :fs.spec.m], reduced[:, fs.spec.m:]
        if np.any(np.all(echelon == 0, axis=1)):
            raise LinearDependenceError("Polynomials are linearly dependent over the ground field.")

        transform = ops.T[:, ::-1].copy()
        return transform, f @ MatrixCalculator.embed(transform, fs.field)

    @staticmethod
    def _check_blocks(blocks: Sequence[galois.FieldArray]) -> Tuple[int, int]:
        if not blocks:
            raise DimensionError("At least one block is required.")

        n = blocks[0].shape[0]
        for i, block in enumerate(blocks):
            if block.shape != (n, n):
                raise DimensionError(f"Block {i} has shape {block.shape}, expected ({n}, {n}).")
        return n, len(blocks) - 1

    def display_code(self, code: ConvolutionalCode) -> None:
        fs = self.field_service
        print(f"Code: {code.label()} rate {code.k}/{code.n} over {code.spec.describe()}")
        print(f"alpha: {fs.describe(code.basis.alpha)}")
        if code.rows is not None:
            print(f"Rows: {list(code.rows)}")
        for i, block in enumerate(code.blocks):
            print(f"G_{i}:")
            for row in block:
                print("  " + "  ".join(fs.describe(entry).rjust(8) for entry in row))
