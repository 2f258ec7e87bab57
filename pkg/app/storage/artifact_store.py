from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any, List, Sequence, Tuple

from app.domain.code_dto import ConvolutionalCode
from app.error.exceptions import ArtifactError
from app.services.field_service import FieldService
from app.util.json_codec import JsonCodec

logger = logging.getLogger(__name__)

"""
    File boundary of the application: reads and writes JSON and CSV
    artifacts and maps them to domain objects.

    I/O and parsing failures are translated into ArtifactError so callers
    only ever see the application's own exceptions. JSON is written with
    sorted keys, so identical payloads give byte-identical files.
"""

class ArtifactStore:

    def load_json(self, path: str | Path) -> Any:
        try:
            with open(path, encoding="utf-8") as handle:
                return json.load(handle)
        except OSError as e:
            raise ArtifactError(f"Cannot read '{path}': {e}")
        except json.JSONDecodeError as e:
            raise ArtifactError(f"'{path}' is not valid JSON: {e}")

    def dumps(self, payload: Any) -> str:
        return json.dumps(payload, sort_keys=True, indent=2)

    def save_json(self, payload: Any, path: str | Path) -> None:
        try:
            Path(path).write_text(self.dumps(payload) + "\n", encoding="utf-8")
        except OSError as e:
            raise ArtifactError(f"Cannot write '{path}': {e}")
        logger.info("Wrote %s", path)

    def save_csv(self, header: Sequence[str], rows: List[List], path: str | Path) -> None:
        try:
            with open(path, "w", newline="", encoding="utf-8") as handle:
                writer = csv.writer(handle)
                writer.writerow(header)
                writer.writerows(rows)
        except OSError as e:
            raise ArtifactError(f"Cannot write '{path}': {e}")
        logger.info("Wrote %s", path)

    def save_code(self, code: ConvolutionalCode, field_service: FieldService, path: str | Path) -> None:
        self.save_json(JsonCodec.code_to_json(code, field_service), path)

    """
        Rebuilds a code descriptor, re-deriving the normal basis from the
        stored alpha. Invariant violations (e.g. a rank-deficient G_0)
        surface as InvalidCodeError.

        Returns
        -------
        Tuple[ConvolutionalCode, FieldService]
    """

    def load_code(self, path: str | Path, assume_primitive: bool = False) -> Tuple[ConvolutionalCode, FieldService]:
        payload = self.load_json(path)
        if not isinstance(payload, dict):
            raise ArtifactError(f"'{path}' does not hold a code descriptor.")

        try:
            n, k, m = int(payload["n"]), int(payload["k"]), int(payload["m"])
            spec = JsonCodec.field_from_json(payload["field"])
            field_service = FieldService(spec, assume_primitive=assume_primitive)
            alpha = field_service.element(payload["alpha"])
            blocks = [JsonCodec.ext_matrix_from_json(b, field_service) for b in payload["blocks"]]
            rows = payload.get("rows")
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactError(f"Malformed code descriptor '{path}': {e}")

        code = ConvolutionalCode(
            n=n,
            k=k,
            m=m,
            blocks=blocks,
            spec=spec,
            basis=field_service.normal_basis(alpha),
            rows=rows,
        )
        return code, field_service
