from functools import lru_cache

from app.domain.field_dto import FieldSpec
from app.services.construction_service import ConstructionService
from app.services.field_service import FieldService
from app.services.table_service import TABLE_ROWS

F4 = FieldSpec(q=2, m=2, modulus=(1, 1, 1))
F2_5 = FieldSpec.from_poly_string(2, 5, "x^5+x^2+1")
F2_7 = FieldSpec.from_poly_string(2, 7, "x^7+x^3+1")
F2_11 = FieldSpec.from_poly_string(2, 11, "x^11+x^2+1")


@lru_cache(maxsize=None)
def field_service(spec: FieldSpec) -> FieldService:
    """Field services are cached so that tests share galois field classes and lookup tables."""
    return FieldService(spec)


@lru_cache(maxsize=None)
def field_service_2_32() -> FieldService:
    return FieldService(FieldSpec.default(2, 32))


def element(fs: FieldService, coords):
    """Element from low-degree-first coefficients, zero padded to M."""
    coords = list(coords)
    return fs.element(coords + [0] * (fs.spec.m - len(coords)))


def alpha_x_plus_1(fs: FieldService):
    return element(fs, [1, 1])


@lru_cache(maxsize=None)
def table_code(n: int, k: int, m: int):
    """
    Code of an achievable-field table row, built with the row's field,
    alpha and extraction rows. Returns (code, field_service).
    """
    for entry in TABLE_ROWS:
        if (entry.n, entry.k, entry.m) == (n, k, m):
            fs = field_service(FieldSpec.from_poly_string(entry.q, entry.degree, entry.modulus))
            code = ConstructionService(fs).build_msr_code(element(fs, entry.alpha), n, k, m, entry.rows)
            return code, fs
    raise KeyError(f"No table row [{n},{k},{m}]")


@lru_cache(maxsize=None)
def alpha_2_32():
    """First primitive normal element of F_2^32; the field meets the construction bound for n=2, m=1."""
    return field_service_2_32().find_primitive_normal()


@lru_cache(maxsize=None)
def listed_modulus_421_code():
    """
    [4,2,1] code with alpha = X+1 and rows (0,1) under X^11+X^2+1, the modulus
    the reference table lists. Its extended generator is singular at one
    channel realization. Returns (code, field_service).
    """
    fs = field_service(F2_11)
    return ConstructionService(fs).build_msr_code(alpha_x_plus_1(fs), 4, 2, 1, (0, 1)), fs
