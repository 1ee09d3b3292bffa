"""Block-based grayscale image pipeline.

An image is cut into rectangular blocks.  A block of ``P x Q`` pixels is a
grid with ``(P-1) x (Q-1)`` intervals whose knots are the pixel centres, so
neighbouring blocks share no knots.  Each block is transformed with the 2-D
DCT-I, optionally compressed, and re-evaluated on a lattice refined
``r``-fold per axis; a block then covers ``r*(P-1)+1`` output rows and the
refined blocks are concatenated in plan order.
"""

from __future__ import annotations

import re
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from cedct.constants import RENDER_TOL
from cedct.errors import DomainError, FormatError, PgmError
from cedct.functions import Ellipsoid
from cedct.multidim import CoefficientTensorND, GridFunctionND, evaluate_nd_grid, forward_nd

__all__ = [
    "BlockPlan",
    "GrayImage",
    "LowPass",
    "Threshold",
    "block_transform",
    "compress",
    "load_bundled",
    "load_pgm",
    "parse_pgm",
    "read_coefficients",
    "reconstruct",
    "reconstruct_field",
    "render",
    "save_pgm",
    "synthetic_image",
    "write_coefficients",
]

DUMP_MAGIC = b"CEDCT1\0\0"


@dataclass(frozen=True)
class GrayImage:
    """8-bit grayscale raster stored as a ``(height, width)`` uint8 array."""

    pixels: np.ndarray

    def __post_init__(self):
        raw = np.asarray(self.pixels)
        if raw.ndim != 2 or raw.size == 0:
            raise DomainError(f"pixels must be a non-empty 2-D array, got shape {raw.shape}")
        if raw.dtype.kind not in "biu" and not np.array_equal(raw, np.round(raw)):
            raise DomainError("pixel values must be integers")
        if raw.min() < 0 or raw.max() > 255:
            raise DomainError("pixel values must lie in [0, 255]")
        pixels = raw.astype(np.uint8)
        pixels.flags.writeable = False
        object.__setattr__(self, "pixels", pixels)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]


def _spans(length: int, block: int) -> list[tuple[int, int]]:
    spans = [(start, min(block, length - start)) for start in range(0, length, block)]
    # A one-pixel remainder has no interval; fold it into the previous block.
    if len(spans) > 1 and spans[-1][1] == 1:
        start, size = spans[-2]
        spans[-2:] = [(start, size + 1)]
    return spans


@dataclass(frozen=True)
class BlockPlan:
    """Tiling of a ``height x width`` image into blocks.

    ``blocks`` holds ``(row, col, block_rows, block_cols)`` tuples in row-major
    order.  Blocks at the bottom and right edges shrink to fit.
    """

    height: int
    width: int
    block_height: int
    block_width: int
    blocks: tuple[tuple[int, int, int, int], ...]

    @classmethod
    def tile(cls, height: int, width: int, block_height: int, block_width: int) -> "BlockPlan":
        if min(height, width) < 2:
            raise DomainError("images need at least two pixels along each axis")
        if block_height < 2 or block_width < 2:
            raise DomainError("blocks need at least 2x2 pixels")
        if block_height > height or block_width > width:
            raise DomainError(
                f"block {block_width}x{block_height} is larger than image {width}x{height}"
            )
        blocks = tuple(
            (r, c, h, w)
            for r, h in _spans(height, block_height)
            for c, w in _spans(width, block_width)
        )
        return cls(height, width, block_height, block_width, blocks)

    @classmethod
    def for_image(cls, img: GrayImage, block_height: int, block_width: int) -> "BlockPlan":
        return cls.tile(img.height, img.width, block_height, block_width)

    def row_spans(self) -> list[tuple[int, int]]:
        return sorted({(r, h) for r, _, h, _ in self.blocks})

    def col_spans(self) -> list[tuple[int, int]]:
        return sorted({(c, w) for _, c, _, w in self.blocks})

    def refined_shape(self, refinement: int) -> tuple[int, int]:
        """Output size after refining every block ``refinement``-fold."""
        rows = sum(refinement * (h - 1) + 1 for _, h in self.row_spans())
        cols = sum(refinement * (w - 1) + 1 for _, w in self.col_spans())
        return rows, cols


def _check_plan(img: GrayImage, plan: BlockPlan) -> None:
    if (plan.height, plan.width) != (img.height, img.width):
        raise DomainError(
            f"plan is for a {plan.width}x{plan.height} image, got {img.width}x{img.height}"
        )
    covered = np.zeros((img.height, img.width), dtype=int)
    for r, c, h, w in plan.blocks:
        if h < 2 or w < 2:
            raise DomainError(f"block at ({r}, {c}) is smaller than 2x2")
        covered[r : r + h, c : c + w] += 1
    if not np.all(covered == 1):
        raise DomainError("plan blocks must cover the image exactly once")


def block_transform(img: GrayImage, plan: BlockPlan) -> list[CoefficientTensorND]:
    """2-D DCT-I coefficients of every block, in plan order."""
    _check_plan(img, plan)
    out = []
    for r, c, h, w in plan.blocks:
        grid = GridFunctionND(img.pixels[r : r + h, c : c + w].astype(float), (h - 1, w - 1))
        out.append(forward_nd(grid))
    return out


@dataclass(frozen=True)
class LowPass:
    """Zero every coefficient with either index above ``n_max``."""

    n_max: int

    def __post_init__(self):
        if self.n_max < 0:
            raise DomainError("n_max must be >= 0")

    def keep_mask(self, coefficients: np.ndarray) -> np.ndarray:
        mask = np.ones(coefficients.shape, dtype=bool)
        for axis, n in enumerate(coefficients.shape):
            index = np.arange(n).reshape([-1 if a == axis else 1 for a in range(coefficients.ndim)])
            mask &= index <= self.n_max
        return mask


@dataclass(frozen=True)
class Threshold:
    """Zero every non-DC coefficient with ``|A| <= fraction * A_max``.

    ``A_max`` is the largest non-DC magnitude; the DC term is always kept.
    """

    fraction: float

    def __post_init__(self):
        if not 0 < self.fraction < 1:
            raise DomainError("fraction must lie in (0, 1)")

    def keep_mask(self, coefficients: np.ndarray) -> np.ndarray:
        magnitude = np.abs(coefficients)
        dc = (0,) * coefficients.ndim
        others = magnitude.copy()
        others[dc] = 0.0
        mask = magnitude > self.fraction * others.max()
        mask[dc] = True
        return mask


CompressionPolicy = Union[LowPass, Threshold]


def compress(coeffs: CoefficientTensorND, policy: CompressionPolicy) -> tuple[CoefficientTensorND, int]:
    """Apply ``policy``; return the compressed tensor and the retained-term count.

    The count is the number of coefficients the policy keeps, so a low-pass
    cut at ``n_max`` on an ``M x M``-interval block always keeps
    ``(min(n_max, M) + 1)^2`` terms.
    """
    mask = policy.keep_mask(coeffs.coefficients)
    kept = np.where(mask, coeffs.coefficients, 0.0)
    return CoefficientTensorND(kept, coeffs.extents), int(mask.sum())


def reconstruct_field(
    coeff_blocks: Sequence[CoefficientTensorND], plan: BlockPlan, refinement: int = 1
) -> np.ndarray:
    """Real-valued refined field assembled from per-block evaluations."""
    if refinement < 1:
        raise DomainError("refinement must be >= 1")
    if len(coeff_blocks) != len(plan.blocks):
        raise DomainError(f"plan has {len(plan.blocks)} blocks, got {len(coeff_blocks)} coefficient blocks")
    row_at = {}
    offset = 0
    for r, h in plan.row_spans():
        row_at[r] = offset
        offset += refinement * (h - 1) + 1
    col_at = {}
    offset = 0
    for c, w in plan.col_spans():
        col_at[c] = offset
        offset += refinement * (w - 1) + 1

    field = np.zeros(plan.refined_shape(refinement))
    for coeffs, (r, c, h, w) in zip(coeff_blocks, plan.blocks):
        if coeffs.shape != (h - 1, w - 1):
            raise DomainError(f"block at ({r}, {c}) expects {(h, w)} coefficients, got {coeffs.coefficients.shape}")
        values = evaluate_nd_grid(coeffs, refinement).samples
        r0, c0 = row_at[r], col_at[c]
        field[r0 : r0 + values.shape[0], c0 : c0 + values.shape[1]] = values
    return field


def _round_half_away(values: np.ndarray) -> np.ndarray:
    return np.sign(values) * np.floor(np.abs(values) + 0.5)


def render(field: np.ndarray) -> GrayImage:
    """Map a real field to 8-bit pixels.

    The field is rescaled linearly onto ``[0, 255]`` only if some value lies
    outside that range by more than round-off; it is then rounded half away
    from zero.
    """
    field = np.asarray(field, dtype=float)
    lo, hi = field.min(), field.max()
    if lo < -RENDER_TOL or hi > 255 + RENDER_TOL:
        if hi > lo:
            field = (field - lo) * (255.0 / (hi - lo))
        else:
            field = np.clip(field, 0, 255)
    return GrayImage(np.clip(_round_half_away(field), 0, 255).astype(np.uint8))


def reconstruct(
    coeff_blocks: Sequence[CoefficientTensorND], plan: BlockPlan, refinement: int = 1
) -> GrayImage:
    """Evaluate every block on its refined lattice and render the assembled image."""
    return render(reconstruct_field(coeff_blocks, plan, refinement))


def synthetic_image(height: int = 56, width: int = 140) -> GrayImage:
    """Deterministic test image made of rotated Gaussian ellipsoids."""
    y, x = np.meshgrid(np.arange(height) / (height - 1), np.arange(width) / (height - 1), indexing="ij")
    span = (width - 1) / (height - 1)
    shapes = [
        Ellipsoid(0.18 * span, 0.45, 0.18, 0.05, 30.0),
        Ellipsoid(0.40 * span, 0.55, 0.25, 0.06, -40.0, 0.8),
        Ellipsoid(0.63 * span, 0.40, 0.12, 0.04, 80.0, 0.9),
        Ellipsoid(0.85 * span, 0.60, 0.20, 0.08, 10.0, 0.7),
    ]
    field = 0.1 + sum(shape(x, y) for shape in shapes) + 0.05 * np.cos(3 * np.pi * x / span)
    field = (field - field.min()) / (field.max() - field.min())
    return GrayImage(_round_half_away(255.0 * field).astype(np.uint8))


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _header_token(data: bytes, pos: int) -> tuple[bytes, int]:
    # Skips whitespace and comment lines; returns the token and the index after it.
    match = _TOKEN.match(data, pos)
    if match is None:
        raise PgmError("truncated header", len(data))
    return match.group(1), match.end(1)


def _header_int(data: bytes, pos: int, name: str) -> tuple[int, int]:
    token, end = _header_token(data, pos)
    try:
        value = int(token)
    except ValueError:
        raise PgmError(f"expected integer {name}, got {token[:20]!r}", end - len(token)) from None
    if value <= 0:
        raise PgmError(f"{name} must be positive, got {value}", end - len(token))
    return value, end


def parse_pgm(data: bytes) -> GrayImage:
    """Decode P5 (binary) or P2 (ASCII) PGM bytes with maxval 255."""
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise PgmError(f"expected magic P5 or P2, got {magic!r}", 0)
    width, pos = _header_int(data, 2, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if maxval != 255:
        raise PgmError(f"only maxval 255 is supported, got {maxval}", pos - len(str(maxval)))
    count = width * height

    if magic == b"P5":
        if pos >= len(data) or data[pos : pos + 1] not in (b" ", b"\t", b"\n", b"\r"):
            raise PgmError("expected a single whitespace byte after maxval", pos)
        start = pos + 1
        payload = data[start : start + count]
        if len(payload) < count:
            raise PgmError(f"truncated raster: expected {count} bytes, got {len(payload)}", start + len(payload))
        pixels = np.frombuffer(payload, dtype=np.uint8)
    else:
        values = []
        for _ in range(count):
            try:
                token, pos = _header_token(data, pos)
            except PgmError as exc:
                raise PgmError(f"truncated raster: expected {count} values, got {len(values)}", exc.offset) from None
            if not token.isdigit() or int(token) > 255:
                raise PgmError(f"bad sample {token[:20]!r}", pos - len(token))
            values.append(int(token))
        pixels = np.array(values, dtype=np.uint8)
    return GrayImage(pixels.reshape(height, width))


def load_pgm(path) -> GrayImage:
    """Read a PGM file."""
    return parse_pgm(Path(path).read_bytes())


def load_bundled(name: str = "synthetic_56x140.pgm") -> GrayImage:
    """Read one of the PGM fixtures shipped in ``cedct/data``."""
    from importlib.resources import files

    return parse_pgm(files("cedct").joinpath("data", name).read_bytes())


def save_pgm(img: GrayImage, path, ascii: bool = False) -> None:
    """Write ``img`` as P5 (default) or P2 with maxval 255."""
    if ascii:
        rows = "\n".join(" ".join(str(v) for v in row) for row in img.pixels)
        data = f"P2\n{img.width} {img.height}\n255\n{rows}\n".encode("ascii")
    else:
        data = f"P5\n{img.width} {img.height}\n255\n".encode("ascii") + img.pixels.tobytes()
    Path(path).write_bytes(data)


def write_coefficients(path, coefficients: np.ndarray) -> None:
    """Dump a 2-D array: ``CEDCT1\\0\\0``, u32 rows, u32 cols, then little-endian f64 row-major."""
    arr = np.asarray(coefficients, dtype="<f8")
    if arr.ndim != 2:
        raise DomainError(f"coefficient dumps hold 2-D arrays, got {arr.ndim} axes")
    header = DUMP_MAGIC + struct.pack("<II", *arr.shape)
    Path(path).write_bytes(header + np.ascontiguousarray(arr).tobytes())


def read_coefficients(path) -> np.ndarray:
    """Inverse of :func:`write_coefficients`."""
    data = Path(path).read_bytes()
    if data[:8] != DUMP_MAGIC:
        raise FormatError("not a coefficient dump (bad magic)", 0)
    if len(data) < 16:
        raise FormatError("truncated header", len(data))
    rows, cols = struct.unpack_from("<II", data, 8)
    need = 16 + 8 * rows * cols
    if len(data) < need:
        raise FormatError(f"truncated data: expected {need} bytes", len(data))
    return np.frombuffer(data, dtype="<f8", count=rows * cols, offset=16).reshape(rows, cols).astype(float)
