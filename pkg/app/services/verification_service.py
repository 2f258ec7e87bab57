from __future__ import annotations

import logging
from itertools import product
from typing import Dict, List, Sequence, Tuple

import galois
import numpy as np

from app.domain.code_dto import ConvolutionalCode, DistanceKind, DistanceProfile, RankProfile, singleton_bound
from app.domain.verdict_dto import MsrVerdict, SuperRegularVerdict
from app.error.exceptions import BudgetExceededError, PreconditionError
from app.services.construction_service import ConstructionService
from app.services.field_service import FieldService
from app.util.matrix_calculator import MatrixCalculator

DEFAULT_ENUMERATION_BUDGET = 10**8

logger = logging.getLogger(__name__)

"""
   Service computing distances of convolutional codes and certifying the
   MSR property.

   Attributes
   ----------
   field_service : FieldService
       Field the verified codes live in.
   construction_service : ConstructionService
       Provides extended generators.
   budget : int
       Largest number of source sequences the brute-force distance search
       may enumerate.
"""

class VerificationService:

    def __init__(
        self,
        field_service: FieldService,
        construction_service: ConstructionService | None = None,
        budget: int = DEFAULT_ENUMERATION_BUDGET,
    ):
        self.field_service = field_service
        self.construction_service = construction_service or ConstructionService(field_service)
        self.budget = budget

    """
       All rank profiles (rho_0..rho_j), each in [0, n], with prefix sums
       bounded by k(t+1) and total k(j+1), in lexicographic order.
    """

    def enumerate_rank_profiles(self, n: int, k: int, j: int) -> List[RankProfile]:
        profiles: List[RankProfile] = []
        target = k * (j + 1)

        def extend(prefix: List[int], total: int) -> None:
            t = len(prefix)
            if t == j + 1:
                if total == target:
                    profiles.append(RankProfile(tuple(prefix)))
                return
            remaining_slots = j - t
            for rho in range(n + 1):
                running = total + rho
                if running > k * (t + 1):
                    break
                if target - running > n * remaining_slots:
                    continue
                extend(prefix + [rho], running)

        extend([], 0)
        return profiles

    """
       Checks that G^EX_j A*_{[0,j]} is non-singular for every admissible
       rank profile and every choice of canonical subspace representatives.

       Returns
       -------
       MsrVerdict
           verified, or the first counterexample in enumeration order
           (profile, then representative indices in lexicographic order).
    """

    def verify_msr(self, code: ConvolutionalCode, j: int | None = None) -> MsrVerdict:
        j = code.m if j is None else j
        n, k = code.n, code.k
        q = code.spec.q
        extended = self.construction_service.extended_generator(code, j)

        representatives: Dict[int, List[galois.FieldArray]] = {}
        partial: Dict[Tuple[int, int, int], galois.FieldArray] = {}
        checked = 0

        for profile in self.enumerate_rank_profiles(n, k, j):
            for rho in profile.rhos:
                if rho not in representatives:
                    representatives[rho] = MatrixCalculator.enumerate_subspaces(n, rho, q)

            choices = [range(len(representatives[rho])) for rho in profile.rhos]
            for indices in product(*choices):
                parts = []
                for t, (rho, idx) in enumerate(zip(profile.rhos, indices)):
                    if rho == 0:
                        continue
                    key = (t, rho, idx)
                    if key not in partial:
                        channel = MatrixCalculator.embed(representatives[rho][idx], code.field)
                        partial[key] = extended[:, t * n:(t + 1) * n] @ channel
                    parts.append(partial[key])

                checked += 1
                system = np.hstack(parts)
                # no perfect matching of non-zero entries: singular without elimination
                if not MatrixCalculator.has_nontrivial_det(system) or MatrixCalculator.ext_det(system) == 0:
                    logger.info(
                        "MSR test of %s fails at depth %d: profile %s, subspaces %s",
                        code.label(), j, profile.rhos, indices,
                    )
                    return MsrVerdict(False, j, checked, profile, tuple(indices))

        logger.info("MSR test of %s passed at depth %d after %d determinants", code.label(), j, checked)
        return MsrVerdict(True, j, checked)

    def check_preservation(
        self,
        hankel: galois.FieldArray,
        a_blocks: Sequence[galois.FieldArray],
        max_minor: int | None = None,
    ) -> SuperRegularVerdict:
        return MatrixCalculator.is_superregular(self.channel_product(hankel, a_blocks), max_minor)

    """
       F = T diag(A_0, ..., A_m) for non-singular n x n ground blocks A_t.

       Raises
       ------
       PreconditionError
           If a block is not square or is singular.
    """

    def channel_product(self, hankel: galois.FieldArray, a_blocks: Sequence[galois.FieldArray]) -> galois.FieldArray:
        for t, a in enumerate(a_blocks):
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise PreconditionError(f"Channel block A_{t} must be square, got shape {a.shape}.")
            if MatrixCalculator.ground_rank(a) != a.shape[0]:
                raise PreconditionError(f"Channel block A_{t} is singular.")

        diagonal = MatrixCalculator.block_diag(list(a_blocks))
        if diagonal.shape[0] != hankel.shape[1]:
            raise PreconditionError(
                f"Block-diagonal channel of side {diagonal.shape[0]} does not match matrix width {hankel.shape[1]}."
            )
        return hankel @ MatrixCalculator.embed(diagonal, type(hankel))

    # ------------------------------------------------------------------
    # brute-force column distances

    def column_distance_bruteforce(self, code: ConvolutionalCode, j: int, kind: DistanceKind) -> DistanceProfile:
        best, _ = self._search(code, j, DistanceKind(kind))
        return DistanceProfile(values=best, kind=DistanceKind(kind), exhaustive=True)

    """
       Minimum weight of a codeword prefix x_{[0,j]} with s_0 != 0 together
       with the first minimizing source sequence s_0..s_j in odometer order.
    """

    def codeword_search(
        self,
        code: ConvolutionalCode,
        j: int,
        kind: DistanceKind = DistanceKind.SUM_RANK,
    ) -> Tuple[int, List[galois.FieldArray]]:
        best, sequences = self._search(code, j, DistanceKind(kind))
        return best[j], sequences[j]

    def _search(
        self,
        code: ConvolutionalCode,
        j: int,
        kind: DistanceKind,
    ) -> Tuple[List[int], List[List[galois.FieldArray]]]:
        if j < 0:
            raise PreconditionError(f"Depth must be non-negative, got {j}.")

        fs = self.field_service
        n, k, m = code.n, code.k, code.m
        sequences_total = code.spec.order ** (k * (j + 1))
        if sequences_total > self.budget:
            raise BudgetExceededError(
                f"Brute force over {sequences_total} source sequences exceeds the budget of {self.budget}."
            )

        field = code.field
        odometer = np.array(list(product(range(code.spec.order), repeat=k)), dtype=np.int64)
        candidates = field(np.ascontiguousarray(odometer[:, ::-1]))
        images = [candidates @ block for block in code.blocks]
        zero_index = 0

        weights: Dict[Tuple[int, ...], int] = {}

        def weight(x: galois.FieldArray) -> int:
            key = tuple(int(v) for v in x)
            if key not in weights:
                if kind == DistanceKind.HAMMING:
                    weights[key] = int(np.count_nonzero(x))
                else:
                    weights[key] = fs.packet_rank(x)
            return weights[key]

        best = [n * (j + 1) + 1] * (j + 1)
        minimizers: List[List[int]] = [[] for _ in range(j + 1)]

        def memory_is_zero(chosen: List[int], t: int) -> bool:
            return all(chosen[u] == zero_index for u in range(max(0, t - m), t))

        def visit(chosen: List[int], total: int) -> None:
            depth = len(chosen) - 1
            if total < best[depth]:
                best[depth] = total
                minimizers[depth] = list(chosen)
            if depth == j:
                return

            t = depth + 1
            if kind == DistanceKind.ACTIVE_SUM_RANK and m >= 1 and t >= 2 and memory_is_zero(chosen, t - 1):
                return

            ceiling = max(best[t:])
            base = field.Zeros(n)
            for i in range(1, min(m, t) + 1):
                base = base + images[i][chosen[t - i]]

            for idx in range(len(candidates)):
                x = base + images[0][idx]
                running = total + weight(x)
                if running >= ceiling:
                    continue
                visit(chosen + [idx], running)
                ceiling = max(best[t:])

        for idx in range(1, len(candidates)):
            initial = weight(images[0][idx])
            if initial >= max(best):
                continue
            visit([idx], initial)

        sequences = [[candidates[i] for i in minimizers[d]] for d in range(j + 1)]
        logger.debug("Column %s distances of %s up to depth %d: %s", kind.value, code.label(), j, best)
        return best, sequences

    def display_verification(
        self,
        code: ConvolutionalCode,
        verdict: MsrVerdict,
        superregular: SuperRegularVerdict | None,
    ) -> None:
        print(f"Code: {code.label()} over {code.spec.describe()}")
        if verdict.verified:
            print(f"MSR at depth {verdict.depth}: verified ({verdict.determinants_checked} determinants)")
        else:
            print(f"MSR at depth {verdict.depth}: FAILED")
            print(f"  profile {list(verdict.profile.rhos)}, subspaces {list(verdict.subspace_indices)}")

        if superregular is not None:
            print(f"Super-regular Hankel matrix: {superregular.status.value} ({superregular.minors_checked} minors)")
            if superregular.rows:
                print(f"  singular minor rows {list(superregular.rows)}, cols {list(superregular.cols)}")

    def display_profiles(self, code: ConvolutionalCode, profiles: List[DistanceProfile]) -> None:
        print(f"Code: {code.label()} over {code.spec.describe()}")
        bounds = [singleton_bound(code.n, code.k, i) for i in range(len(profiles[0].values))] if profiles else []
        print(f"{'Kind':<18}" + "".join(f"d({i})".ljust(7) for i in range(len(bounds))))
        for profile in profiles:
            print(f"{profile.kind.value:<18}" + "".join(str(v).ljust(7) for v in profile.values))
        print(f"{'bound':<18}" + "".join(str(b).ljust(7) for b in bounds))
