from __future__ import annotations

from typing import Any, List

import galois
import numpy as np

from app.domain.code_dto import ConvolutionalCode
from app.domain.field_dto import FieldSpec
from app.error.exceptions import ArtifactError, MsrError

"""
   JSON shapes of the domain objects.

   FieldSpec       {"q": int, "m": int, "modulus": [c_0, ..., c_M]}
   element         [c_0, ..., c_{M-1}]   polynomial coordinates, low degree first
   ground matrix   [[int, ...], ...]     row-major
   ext matrix      [[element, ...], ...] row-major
   code            {"n", "k", "m", "field", "alpha", "rows", "blocks"}

   Decoding a malformed payload raises ArtifactError.
"""

class JsonCodec:

    @staticmethod
    def field_to_json(spec: FieldSpec) -> dict:
        return {"q": spec.q, "m": spec.m, "modulus": list(spec.modulus)}

    @staticmethod
    def field_from_json(payload: Any) -> FieldSpec:
        try:
            return FieldSpec(q=int(payload["q"]), m=int(payload["m"]), modulus=tuple(payload["modulus"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactError(f"Malformed field description: {e}")

    @staticmethod
    def ground_matrix_to_json(a: galois.FieldArray) -> List[List[int]]:
        return np.asarray(a, dtype=np.int64).tolist()

    @staticmethod
    def ground_matrix_from_json(payload: Any, q: int) -> galois.FieldArray:
        try:
            values = np.array(payload, dtype=np.int64)
            if values.ndim != 2:
                raise ValueError(f"expected a 2-D array, got {values.ndim} dimensions")
            return galois.GF(q)(values)
        except (TypeError, ValueError) as e:
            raise ArtifactError(f"Malformed ground matrix: {e}")

    @staticmethod
    def ext_matrix_to_json(a: galois.FieldArray, field_service) -> List[List[List[int]]]:
        return [[field_service.coords(entry) for entry in row] for row in a]

    @staticmethod
    def ext_matrix_from_json(payload: Any, field_service) -> galois.FieldArray:
        try:
            rows = [[int(field_service.element(entry)) for entry in row] for row in payload]
            return field_service.field(rows)
        except (TypeError, ValueError, MsrError) as e:
            raise ArtifactError(f"Malformed extension-field matrix: {e}")

    @staticmethod
    def code_to_json(code: ConvolutionalCode, field_service) -> dict:
        return {
            "n": code.n,
            "k": code.k,
            "m": code.m,
            "field": JsonCodec.field_to_json(code.spec),
            "alpha": field_service.coords(code.basis.alpha),
            "rows": list(code.rows) if code.rows is not None else None,
            "blocks": [JsonCodec.ext_matrix_to_json(block, field_service) for block in code.blocks],
        }
