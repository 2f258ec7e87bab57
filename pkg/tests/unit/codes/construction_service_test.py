import galois
import numpy as np
import pytest

from app.domain.code_dto import ConvolutionalCode
from app.domain.field_dto import FieldSpec
from app.error.exceptions import ConstructionError, DimensionError, InvalidCodeError, LinearDependenceError
from app.services.construction_service import ConstructionService
from app.services.field_service import FieldService
from app.util.matrix_calculator import MatrixCalculator

from tests.unit.mock.field_mocks import F2_5, F2_11, alpha_x_plus_1, field_service, table_code
from tests.unit.mock.oracles import convolve


def frob(fs, alpha, e):
    return fs.frobenius(alpha, e)


# ==========================================
# GABIDULIN CODES
# ==========================================

def test_gabidulin_full_dimension_is_moore_matrix():
    fs = field_service(F2_5)
    alpha = alpha_x_plus_1(fs)
    g = fs.conjugates(alpha, 3)
    gen = ConstructionService(fs).gabidulin_generator(g, 3)
    for i in range(3):
        for j in range(3):
            assert gen[i, j] == frob(fs, alpha, i + j)


def test_gabidulin_dimension_one_is_evaluation_vector():
    fs = field_service(F2_5)
    g = fs.conjugates(alpha_x_plus_1(fs), 3)
    gen = ConstructionService(fs).gabidulin_generator(g, 1)
    assert gen.shape == (1, 3)
    assert np.array_equal(gen[0], g)


def test_gabidulin_rows_have_full_rank():
    fs = field_service(F2_5)
    gen = ConstructionService(fs).gabidulin_generator(fs.conjugates(alpha_x_plus_1(fs), 3), 2)
    assert all(fs.packet_rank(gen[i]) == 3 for i in range(2))


def test_gabidulin_rejects_dependent_points():
    fs = field_service(F2_5)
    a = alpha_x_plus_1(fs)
    with pytest.raises(ConstructionError, match="linearly independent"):
        ConstructionService(fs).gabidulin_generator(fs.vector([int(a), int(a), 1]), 2)


def test_gabidulin_rejects_length_beyond_extension_degree():
    fs = field_service(F2_5)
    with pytest.raises(ConstructionError, match="exceeds"):
        ConstructionService(fs).gabidulin_generator(fs.field.Random(6, seed=1), 2)


def test_gabidulin_code_is_mrd():
    fs = field_service(F2_5)
    construction = ConstructionService(fs)
    gen = construction.gabidulin_generator(fs.conjugates(alpha_x_plus_1(fs), 3), 2)
    assert len(MatrixCalculator.enumerate_subspaces(3, 2, 2)) == 7
    assert construction.check_mrd(gen)


def test_corrupted_generator_is_not_mrd():
    fs = field_service(F2_5)
    construction = ConstructionService(fs)
    gen = construction.gabidulin_generator(fs.conjugates(alpha_x_plus_1(fs), 3), 2)
    gen[:, 2] = gen[:, 0] + gen[:, 1]
    assert not construction.check_mrd(gen)


def test_equal_columns_at_full_dimension_are_not_mrd():
    fs = field_service(F2_5)
    gen = fs.field.Random((2, 2), seed=4)
    gen[:, 1] = gen[:, 0]
    assert not ConstructionService(fs).check_mrd(gen)


def test_ground_field_generator_is_not_mrd():
    fs = FieldService(FieldSpec(q=2, m=1, modulus=(1, 1)))
    gen = fs.field([[1, 0, 1], [0, 1, 1]])
    assert not ConstructionService(fs).check_mrd(gen)


# ==========================================
# SUPER-REGULAR BLOCKS
# ==========================================

def test_t_blocks_for_single_symbol_packets():
    fs = field_service(F2_11)
    alpha = alpha_x_plus_1(fs)
    blocks = ConstructionService(fs).build_T_blocks(1, 3, alpha)
    assert [b.shape for b in blocks] == [(1, 1)] * 4
    assert all(blocks[j][0, 0] == frob(fs, alpha, j) for j in range(4))


def test_t_blocks_entries_are_frobenius_powers():
    fs = field_service(F2_11)
    alpha = alpha_x_plus_1(fs)
    blocks = ConstructionService(fs).build_T_blocks(4, 1, alpha)
    assert blocks[1][0, 0] == frob(fs, alpha, 4)
    for j, block in enumerate(blocks):
        for r in range(4):
            for s in range(4):
                assert block[r, s] == frob(fs, alpha, 4 * j + r + s)


def test_t_block_degrees_increase_down_and_right():
    fs = field_service(F2_11)
    alpha = alpha_x_plus_1(fs)
    basis = fs.normal_basis(alpha)
    for block in ConstructionService(fs).build_T_blocks(3, 2, alpha):
        degrees = np.array([[fs.qdeg(block[r, s], basis) for s in range(3)] for r in range(3)])
        assert np.all(np.diff(degrees, axis=0) > 0)
        assert np.all(np.diff(degrees, axis=1) > 0)


def test_t_blocks_warn_when_exponents_wrap(caplog):
    fs = field_service(F2_5)
    with caplog.at_level("WARNING"):
        ConstructionService(fs).build_T_blocks(3, 1, alpha_x_plus_1(fs))
    assert "wrap modulo M=5" in caplog.text


def test_hankel_and_toeplitz_without_memory():
    fs = field_service(F2_11)
    construction = ConstructionService(fs)
    blocks = construction.build_T_blocks(3, 0, alpha_x_plus_1(fs))
    assert np.array_equal(construction.build_hankel(blocks), blocks[0])
    assert np.array_equal(construction.build_toeplitz(blocks), blocks[0])


def test_hankel_layout():
    fs = field_service(F2_11)
    construction = ConstructionService(fs)
    blocks = construction.build_T_blocks(4, 1, alpha_x_plus_1(fs))
    hankel = construction.build_hankel(blocks)
    assert hankel.shape == (8, 8)
    assert not np.any(hankel[:4, :4])
    assert np.array_equal(hankel[:4, 4:], blocks[0])
    assert np.array_equal(hankel[4:, :4], blocks[0])
    assert np.array_equal(hankel[4:, 4:], blocks[1])


def test_toeplitz_is_block_row_reversed_hankel():
    fs = field_service(F2_11)
    construction = ConstructionService(fs)
    blocks = construction.build_T_blocks(2, 2, alpha_x_plus_1(fs))
    hankel = construction.build_hankel(blocks)
    toeplitz = construction.build_toeplitz(blocks)
    reversed_rows = np.concatenate([hankel[4:6], hankel[2:4], hankel[0:2]])
    assert np.array_equal(toeplitz, reversed_rows)


def test_mismatched_blocks_raise():
    fs = field_service(F2_11)
    with pytest.raises(DimensionError):
        ConstructionService(fs).build_hankel([fs.field.Zeros((2, 2)), fs.field.Zeros((3, 3))])


# ==========================================
# MSR EXTRACTION
# ==========================================

def test_extracted_421_generator_matches_displayed_layout():
    code, fs = table_code(4, 2, 1)
    alpha = code.basis.alpha
    extended = ConstructionService(fs).extended_generator(code, 1)
    assert extended.shape == (4, 8)
    for r in range(2):
        for s in range(4):
            assert extended[r, s] == frob(fs, alpha, r + s)
            assert extended[r, 4 + s] == frob(fs, alpha, 4 + r + s)
            assert extended[2 + r, 4 + s] == frob(fs, alpha, r + s)
            assert extended[2 + r, s] == 0


def test_extracted_322_generator_matches_displayed_layout():
    code, fs = table_code(3, 2, 2)
    alpha = code.basis.alpha
    assert code.rows == (0, 2)
    extended = ConstructionService(fs).extended_generator(code, 2)
    assert extended.shape == (6, 9)
    for block_row in range(3):
        for block_col in range(3):
            for a, row in enumerate(code.rows):
                for s in range(3):
                    entry = extended[2 * block_row + a, 3 * block_col + s]
                    if block_col < block_row:
                        assert entry == 0
                    else:
                        assert entry == frob(fs, alpha, 3 * (block_col - block_row) + row + s)


def test_full_rate_extraction_keeps_t_blocks():
    fs = field_service(F2_11)
    alpha = alpha_x_plus_1(fs)
    construction = ConstructionService(fs)
    code = construction.build_msr_code(alpha, 2, 2, 1)
    for block, t_block in zip(code.blocks, construction.build_T_blocks(2, 1, alpha)):
        assert np.array_equal(block, t_block)


@pytest.mark.parametrize("rows", [(1, 0), (0, 4), (0,), (-1, 2)])
def test_extraction_rejects_bad_rows(rows):
    fs = field_service(F2_11)
    with pytest.raises(ConstructionError):
        ConstructionService(fs).build_msr_code(alpha_x_plus_1(fs), 4, 2, 1, rows)


def test_code_requires_full_rank_first_block():
    code, fs = table_code(2, 1, 1)
    with pytest.raises(InvalidCodeError, match="full row rank"):
        ConvolutionalCode(n=2, k=1, m=1, blocks=[fs.field.Zeros((1, 2)), code.blocks[1]], spec=fs.spec, basis=code.basis)


def test_code_rejects_wrong_block_count():
    code, fs = table_code(2, 1, 1)
    with pytest.raises(InvalidCodeError, match="Expected 2"):
        ConvolutionalCode(n=2, k=1, m=1, blocks=[code.blocks[0]], spec=fs.spec, basis=code.basis)


# ==========================================
# EXTENDED GENERATOR
# ==========================================

def test_extended_generator_depth_zero_is_first_block():
    code, fs = table_code(3, 2, 2)
    assert np.array_equal(ConstructionService(fs).extended_generator(code, 0), code.blocks[0])


def test_extended_generator_beyond_memory_is_zero():
    code, fs = table_code(2, 1, 1)
    extended = ConstructionService(fs).extended_generator(code, 3)
    assert extended.shape == (4, 8)
    assert not np.any(extended[0, 4:])
    assert np.array_equal(extended[3, 6:], code.blocks[0][0])
    assert MatrixCalculator.ground_rank(extended) == 4


def test_extended_generator_reproduces_convolution():
    code, fs = table_code(3, 2, 2)
    extended = ConstructionService(fs).extended_generator(code, 4)
    rng = np.random.default_rng(2)
    for _ in range(20):
        sources = [fs.field.Random(2, seed=rng) for _ in range(5)]
        prefix = np.concatenate(sources) @ extended
        assert np.array_equal(prefix, np.concatenate(convolve(code, sources)))


def test_extended_generator_rejects_negative_depth():
    code, fs = table_code(2, 1, 1)
    with pytest.raises(DimensionError):
        ConstructionService(fs).extended_generator(code, -1)


# ==========================================
# DEGREE SORTING
# ==========================================

def test_sorted_monomials_give_identity_transform():
    fs = field_service(F2_11)
    alpha = alpha_x_plus_1(fs)
    basis = fs.normal_basis(alpha)
    polys = [frob(fs, alpha, e) for e in (0, 2, 5)]
    transform, transformed = ConstructionService(fs).echelon_sort_transform(polys, basis)
    assert np.array_equal(transform, fs.ground.Identity(3))
    assert np.array_equal(transformed, fs.vector([int(p) for p in polys]))


def test_single_polynomial_transform():
    fs = field_service(F2_11)
    alpha = alpha_x_plus_1(fs)
    transform, _ = ConstructionService(fs).echelon_sort_transform([alpha + frob(fs, alpha, 3)], fs.normal_basis(alpha))
    assert np.array_equal(transform, fs.ground([[1]]))


def test_transform_sorts_degrees():
    fs = field_service(F2_11)
    alpha = alpha_x_plus_1(fs)
    basis = fs.normal_basis(alpha)
    polys = [
        frob(fs, alpha, 4) + frob(fs, alpha, 1),
        frob(fs, alpha, 4),
        frob(fs, alpha, 0) + frob(fs, alpha, 4),
    ]
    transform, transformed = ConstructionService(fs).echelon_sort_transform(polys, basis)
    degrees = [fs.qdeg(transformed[i], basis) for i in range(3)]
    assert degrees == sorted(set(degrees))
    assert MatrixCalculator.ground_rank(transform) == 3


def test_dependent_polynomials_raise():
    fs = field_service(F2_11)
    alpha = alpha_x_plus_1(fs)
    polys = [alpha, frob(fs, alpha, 1), alpha + frob(fs, alpha, 1)]
    with pytest.raises(LinearDependenceError):
        ConstructionService(fs).echelon_sort_transform(polys, fs.normal_basis(alpha))


def test_display_code(capsys):
    code, fs = table_code(2, 1, 1)
    ConstructionService(fs).display_code(code)
    out = capsys.readouterr().out
    assert "Code: [2,1,1] rate 1/2" in out
    assert "alpha: X+1" in out
    assert "G_1:" in out
