import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from cedct import DomainError, PgmError
from cedct.errors import FormatError
from cedct.functions import tilted_ellipsoids
from cedct.image import (
    BlockPlan,
    GrayImage,
    LowPass,
    Threshold,
    block_transform,
    compress,
    load_bundled,
    load_pgm,
    parse_pgm,
    read_coefficients,
    reconstruct,
    reconstruct_field,
    render,
    save_pgm,
    synthetic_image,
    write_coefficients,
)
from cedct.multidim import CoefficientTensorND, GridFunctionND, forward_nd


def test_uniform_block_has_only_dc():
    img = GrayImage(np.full((28, 28), 128))
    (coeffs,) = block_transform(img, BlockPlan.for_image(img, 28, 28))
    expected = np.zeros((28, 28))
    expected[0, 0] = 128
    np.testing.assert_allclose(coeffs.coefficients, expected, atol=1e-10)


def test_block_round_trip(rng):
    img = GrayImage(rng.integers(0, 256, size=(28, 28)))
    plan = BlockPlan.for_image(img, 28, 28)
    np.testing.assert_array_equal(reconstruct(block_transform(img, plan), plan).pixels, img.pixels)


def test_plan_for_default_image():
    plan = BlockPlan.tile(56, 140, 28, 28)
    assert len(plan.blocks) == 10
    assert plan.blocks[0] == (0, 0, 28, 28)
    assert plan.blocks[-1] == (28, 112, 28, 28)


def test_plan_edge_blocks_shrink():
    plan = BlockPlan.tile(56, 140, 29, 29)
    assert plan.row_spans() == [(0, 29), (29, 27)]
    assert [w for _, w in plan.col_spans()] == [29, 29, 29, 29, 24]


def test_plan_folds_single_pixel_remainder():
    plan = BlockPlan.tile(29, 57, 28, 28)
    assert plan.row_spans() == [(0, 29)]
    assert plan.col_spans() == [(0, 28), (28, 29)]


@pytest.mark.parametrize("size", [(1, 1), (30, 10), (10, 30)])
def test_plan_rejects_bad_blocks(size):
    with pytest.raises(DomainError):
        BlockPlan.tile(28, 28, *size)


def test_block_transform_rejects_wrong_plan(rng):
    img = GrayImage(rng.integers(0, 256, size=(10, 10)))
    with pytest.raises(DomainError):
        block_transform(img, BlockPlan.tile(12, 10, 5, 5))


def test_block_transform_rejects_overlapping_plan(rng):
    img = GrayImage(rng.integers(0, 256, size=(4, 4)))
    plan = BlockPlan(4, 4, 4, 4, ((0, 0, 4, 4), (0, 0, 2, 2)))
    with pytest.raises(DomainError):
        block_transform(img, plan)


# compression policies


def test_lowpass_retains_400():
    img = GrayImage(np.random.default_rng(1).integers(0, 256, size=(29, 29)))
    (coeffs,) = block_transform(img, BlockPlan.for_image(img, 29, 29))
    kept, count = compress(coeffs, LowPass(19))
    assert count == 400
    assert coeffs.coefficients.size / count == pytest.approx(2.1025)
    assert np.count_nonzero(kept.coefficients[20:, :]) == 0
    assert np.count_nonzero(kept.coefficients[:, 20:]) == 0
    np.testing.assert_array_equal(kept.coefficients[:20, :20], coeffs.coefficients[:20, :20])


@pytest.mark.parametrize("m, n_max", [(27, 19), (10, 3), (5, 5), (5, 40)])
def test_lowpass_retained_formula(m, n_max):
    coeffs = CoefficientTensorND(np.ones((m + 1, m + 1)))
    assert compress(coeffs, LowPass(n_max))[1] == (min(n_max, m) + 1) ** 2


def test_threshold_on_flat_spectrum():
    a = np.full((4, 4), 2.0)
    a[0, 0] = 100.0
    kept, count = compress(CoefficientTensorND(a), Threshold(0.5))
    # Every non-DC entry equals A_max and 2 > 0.5 * 2.
    assert count == 16
    a[1, 2] = 5.0
    kept, count = compress(CoefficientTensorND(a), Threshold(0.5))
    assert count == 2
    assert kept.coefficients[0, 0] == 100.0 and kept.coefficients[1, 2] == 5.0


def test_threshold_exhaustive_scan():
    field = tilted_ellipsoids()
    coeffs = forward_nd(GridFunctionND.from_function(field, (20, 20)))
    a = coeffs.coefficients
    kept, count = compress(coeffs, Threshold(0.05))
    a_max = max(abs(a[i, j]) for i, j in itertools.product(range(21), range(21)) if (i, j) != (0, 0))
    expected = 0
    for i, j in itertools.product(range(21), range(21)):
        keep = (i, j) == (0, 0) or abs(a[i, j]) > 0.05 * a_max
        expected += keep
        assert kept.coefficients[i, j] == (a[i, j] if keep else 0.0)
    assert count == expected


def test_threshold_is_idempotent(rng):
    coeffs = CoefficientTensorND(rng.normal(size=(9, 9)))
    once, n1 = compress(coeffs, Threshold(0.3))
    twice, n2 = compress(once, Threshold(0.3))
    np.testing.assert_array_equal(once.coefficients, twice.coefficients)
    assert n1 == n2


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.1])
def test_threshold_fraction_range(fraction):
    with pytest.raises(DomainError):
        Threshold(fraction)


def test_lowpass_error_grows_as_cutoff_drops():
    img = synthetic_image()
    plan = BlockPlan.for_image(img, 28, 28)
    blocks = block_transform(img, plan)
    original = img.pixels.astype(float)
    rms = []
    for n_max in (27, 20, 12, 6, 2):
        field = reconstruct_field([compress(b, LowPass(n_max))[0] for b in blocks], plan)
        rms.append(np.sqrt(np.mean((field - original) ** 2)))
    assert rms[0] < 1e-9
    assert all(a < b for a, b in zip(rms, rms[1:]))


# reconstruction


def test_reconstruct_refined_dimensions():
    img = synthetic_image()
    plan = BlockPlan.for_image(img, 28, 28)
    out = reconstruct(block_transform(img, plan), plan, 3)
    assert (out.height, out.width) == (164, 410)
    assert plan.refined_shape(3) == (164, 410)


def test_refined_lattice_contains_original_pixels():
    img = synthetic_image()
    plan = BlockPlan.for_image(img, 28, 28)
    field = reconstruct_field(block_transform(img, plan), plan, 3)
    rows = np.concatenate([np.arange(28) * 3 + 82 * b for b in range(2)])
    cols = np.concatenate([np.arange(28) * 3 + 82 * b for b in range(5)])
    np.testing.assert_allclose(field[np.ix_(rows, cols)], img.pixels, atol=1e-9)


def test_reconstruct_all_zero():
    img = GrayImage(np.zeros((10, 12), dtype=np.uint8))
    plan = BlockPlan.for_image(img, 5, 6)
    assert not reconstruct(block_transform(img, plan), plan, 2).pixels.any()


def test_blocks_are_independent(rng):
    pixels = rng.integers(0, 256, size=(20, 20))
    img = GrayImage(pixels)
    plan = BlockPlan.for_image(img, 10, 10)
    before = block_transform(img, plan)
    pixels[:10, :10] = 0
    after = block_transform(GrayImage(pixels), plan)
    for b, a in zip(before[1:], after[1:]):
        np.testing.assert_array_equal(a.coefficients, b.coefficients)


def test_reconstruct_rejects_block_count_mismatch():
    img = GrayImage(np.zeros((10, 10), dtype=np.uint8))
    plan = BlockPlan.for_image(img, 5, 5)
    with pytest.raises(DomainError):
        reconstruct(block_transform(img, plan)[:-1], plan)


def test_render_in_range_is_rounding_only():
    field = np.array([[0.0, 0.5, 1.49], [127.5, 254.4, 255.0]])
    np.testing.assert_array_equal(render(field).pixels, [[0, 1, 1], [128, 254, 255]])


def test_render_ignores_round_off():
    field = np.array([[255 + 1e-12, 191.0], [-1e-12, 3.0]])
    np.testing.assert_array_equal(render(field).pixels, [[255, 191], [0, 3]])


def test_render_rescales_out_of_range():
    field = np.array([[-10.0, 0.0], [100.0, 290.0]])
    out = render(field).pixels
    assert out.min() == 0 and out.max() == 255
    assert out[0, 1] == 9  # 8.5 rounds away from zero


@settings(max_examples=25, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(2, 64), st.integers(2, 64))), st.integers(2, 16), st.integers(2, 16))
def test_lossless_round_trip(pixels, bh, bw):
    img = GrayImage(pixels)
    plan = BlockPlan.for_image(img, min(bh, img.height), min(bw, img.width))
    np.testing.assert_array_equal(reconstruct(block_transform(img, plan), plan).pixels, pixels)


# file formats


def test_parse_small_binary_pgm():
    img = parse_pgm(b"P5\n2 2\n255\n\x00\x80\xff\x10")
    np.testing.assert_array_equal(img.pixels, [[0, 128], [255, 16]])


def test_parse_ascii_with_comments():
    img = parse_pgm(b"P2\n# made by hand\n3 1\n# max\n255\n1 2\n3\n")
    np.testing.assert_array_equal(img.pixels, [[1, 2, 3]])


def test_save_load_is_byte_identical(tmp_path, rng):
    data = b"P5\n5 3\n255\n" + bytes(rng.integers(0, 256, size=15).astype(np.uint8))
    src = tmp_path / "a.pgm"
    src.write_bytes(data)
    save_pgm(load_pgm(src), tmp_path / "b.pgm")
    assert (tmp_path / "b.pgm").read_bytes() == data


def test_ascii_to_binary(tmp_path, rng):
    img = GrayImage(rng.integers(0, 256, size=(4, 7)))
    save_pgm(img, tmp_path / "a.pgm", ascii=True)
    assert (tmp_path / "a.pgm").read_bytes().startswith(b"P2")
    save_pgm(load_pgm(tmp_path / "a.pgm"), tmp_path / "b.pgm")
    np.testing.assert_array_equal(load_pgm(tmp_path / "b.pgm").pixels, img.pixels)


@pytest.mark.parametrize(
    "data, offset",
    [
        (b"P6\n2 2\n255\n0000", 0),
        (b"P5\n2 x\n255\n0000", 5),
        (b"P5\n2 2\n65535\n0000", 7),
        (b"P5\n2 2\n255\n\x00\x01", 13),
        (b"P5\n2 2\n255", 10),
        (b"P2\n2 2\n255\n1 2 300 4", 15),
        (b"P2\n2 2\n255\n1 2", 14),
    ],
)
def test_pgm_errors_report_offset(data, offset):
    with pytest.raises(PgmError) as info:
        parse_pgm(data)
    assert info.value.offset == offset
    assert f"byte {offset}" in str(info.value)


def test_coefficient_dump_round_trip(tmp_path, rng):
    a = rng.normal(size=(5, 8))
    write_coefficients(tmp_path / "a.bin", a)
    raw = (tmp_path / "a.bin").read_bytes()
    assert raw[:8] == b"CEDCT1\0\0"
    assert raw[8:16] == (5).to_bytes(4, "little") + (8).to_bytes(4, "little")
    assert len(raw) == 16 + 8 * 40
    np.testing.assert_array_equal(read_coefficients(tmp_path / "a.bin"), a)


def test_coefficient_dump_bad_magic(tmp_path):
    (tmp_path / "a.bin").write_bytes(b"NOTADUMP" + bytes(8))
    with pytest.raises(FormatError):
        read_coefficients(tmp_path / "a.bin")


def test_coefficient_dump_truncated(tmp_path):
    write_coefficients(tmp_path / "a.bin", np.ones((3, 3)))
    data = (tmp_path / "a.bin").read_bytes()
    (tmp_path / "a.bin").write_bytes(data[:-4])
    with pytest.raises(FormatError):
        read_coefficients(tmp_path / "a.bin")


def test_bundled_fixture_matches_generator():
    np.testing.assert_array_equal(load_bundled().pixels, synthetic_image().pixels)
