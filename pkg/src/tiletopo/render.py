"""Exact rasterization of attractor samples and pixel-component counting.

Every point-to-pixel assignment is the floor of an affine transform
evaluated in integer arithmetic, so images are bit-reproducible; a numpy
fast path performs the same integer floor-division on digit expansions in
bulk and is checked against the one-point-at-a-time path in tests.
"""

from __future__ import annotations

import os
import tempfile
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import InvalidParameterError, ResourceBudgetError
from .ifs import DEFAULT_SAMPLE_BUDGET, DigitSet, attractor_bounds, common_denominator
from .numeric import Point2

BLACK = (0, 0, 0)
WHITE = (255, 255, 255)

_INT64_LIMIT = 2**62


@dataclass(frozen=True)
class ViewBox:
    """Closed view rectangle [x0, x1] x [y0, y1] with exact corners."""

    x0: Fraction
    x1: Fraction
    y0: Fraction
    y1: Fraction

    def __post_init__(self) -> None:
        for name in ("x0", "x1", "y0", "y1"):
            if not isinstance(getattr(self, name), Fraction):
                raise InvalidParameterError(f"view corner {name} must be a Fraction")
        if self.x1 <= self.x0 or self.y1 <= self.y0:
            raise InvalidParameterError("view rectangle is degenerate")


@dataclass
class RasterImage:
    """A white canvas with black marks, kept as raw RGB bytes."""

    width: int
    height: int
    pixels: bytearray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise InvalidParameterError("image must be at least 1x1")
        if self.pixels is None:
            self.pixels = bytearray(b"\xff" * (3 * self.width * self.height))
        elif len(self.pixels) != 3 * self.width * self.height:
            raise InvalidParameterError("pixel buffer size does not match dimensions")

    def set_black(self, px: int, py: int) -> None:
        base = 3 * (py * self.width + px)
        self.pixels[base : base + 3] = b"\x00\x00\x00"

    def get(self, px: int, py: int) -> tuple[int, int, int]:
        base = 3 * (py * self.width + px)
        return (self.pixels[base], self.pixels[base + 1], self.pixels[base + 2])

    def to_ppm_bytes(self) -> bytes:
        header = f"P6\n{self.width} {self.height}\n255\n".encode("ascii")
        return header + bytes(self.pixels)

    def to_pgm_bytes(self) -> bytes:
        header = f"P5\n{self.width} {self.height}\n255\n".encode("ascii")
        mask = bytearray(self.width * self.height)
        for idx in range(self.width * self.height):
            mask[idx] = 0 if self.pixels[3 * idx] == 0 else 255
        return header + bytes(mask)


def write_ppm(image: RasterImage, path: str) -> None:
    """Atomically write the image as binary PPM."""
    _atomic_write(path, image.to_ppm_bytes())


def _atomic_write(path: str, payload: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".render-", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def pixel_of(pt: Point2, view: ViewBox, width: int, height: int) -> tuple[int, int] | None:
    """Exact pixel for a point: floor of the affine map, None if off-canvas.

    Column px = floor((x - x0) * width / (x1 - x0)); rows count down from the
    top, so row 0 holds the largest y values.
    """
    px = (pt.x - view.x0) * width / (view.x1 - view.x0)
    py = (pt.y - view.y0) * height / (view.y1 - view.y0)
    col = px.numerator // px.denominator
    row_up = py.numerator // py.denominator
    if not (0 <= col < width and 0 <= row_up < height):
        return None
    return (col, height - 1 - row_up)


def rasterize(points: Iterable[Point2], view: ViewBox, width: int, height: int) -> RasterImage:
    """Mark the pixel of every in-view point on a white canvas."""
    image = RasterImage(width, height)
    for pt in points:
        hit = pixel_of(pt, view, width, height)
        if hit is not None:
            image.set_black(*hit)
    return image


def render_attractor(
    digit_set: DigitSet,
    depth: int,
    view: ViewBox,
    width: int,
    height: int,
    budget: int = DEFAULT_SAMPLE_BUDGET,
) -> RasterImage:
    """Rasterize all depth-level digit expansions with vectorized exact math.

    Coordinates of a depth-d sample are integers over den * p^d; the pixel
    column floor((x - x0) * w / (x1 - x0)) is evaluated as a single integer
    floor division, identical to the scalar path.
    """
    import numpy as np

    if not isinstance(depth, int) or depth < 1:
        raise InvalidParameterError(f"depth must be a positive integer, got {depth!r}")
    count = len(digit_set.digits) ** depth
    if count > budget:
        raise ResourceBudgetError(f"depth {depth} would expand {count} samples, over budget {budget}")

    den = common_denominator(digit_set.digits)
    p = digit_set.p
    scale = den * p**depth
    # digit numerators over den
    dx = np.array([int(d.x * den) for d in digit_set.digits], dtype=np.int64)
    dy = np.array([int(d.y * den) for d in digit_set.digits], dtype=np.int64)

    # worst-case |numerator| for the final floor division, checked in exact ints
    max_digit = max(max(abs(int(d.x * den)), abs(int(d.y * den))) for d in digit_set.digits)
    geom = sum(abs(p) ** t for t in range(depth))
    max_coord = max_digit * geom
    span_nums = [
        (view.x1 - view.x0, view.x0),
        (view.y1 - view.y0, view.y0),
    ]
    for span, origin in span_nums:
        worst = (max_coord * abs(origin.denominator) + abs(origin.numerator) * abs(scale)) * max(
            width, height
        ) * abs(span.denominator)
        if worst >= _INT64_LIMIT:
            raise ResourceBudgetError("render magnitudes exceed the exact int64 fast path")

    xs = np.zeros(1, dtype=np.int64)
    ys = np.zeros(1, dtype=np.int64)
    weight = 1
    for _ in range(depth):
        xs = (xs[None, :] + (dx * weight)[:, None]).ravel()
        ys = (ys[None, :] + (dy * weight)[:, None]).ravel()
        weight *= p

    def floor_axis(nums: "np.ndarray", origin: Fraction, span: Fraction, size: int) -> "np.ndarray":
        # floor((n/scale - origin) * size / span) with sign-aware integers
        a = nums * (origin.denominator * span.denominator * size) - (
            origin.numerator * span.denominator * size * scale
        )
        b = span.numerator * origin.denominator * scale
        if b < 0:
            a, b = -a, -b
        return a // b

    cols = floor_axis(xs, view.x0, view.x1 - view.x0, width)
    rows_up = floor_axis(ys, view.y0, view.y1 - view.y0, height)
    keep = (cols >= 0) & (cols < width) & (rows_up >= 0) & (rows_up < height)
    cols = cols[keep]
    rows = (height - 1) - rows_up[keep]

    image = RasterImage(width, height)
    flat = np.unique(rows * width + cols)
    buf = np.frombuffer(bytes(image.pixels), dtype=np.uint8).copy()
    for offset in range(3):
        buf[3 * flat + offset] = 0
    image.pixels = bytearray(buf.tobytes())
    return image


def attractor_view(digit_set: DigitSet) -> ViewBox:
    """The exact bounding rectangle of the attractor as a view."""
    xmin, xmax, ymin, ymax = attractor_bounds(digit_set)
    return ViewBox(xmin, xmax, ymin, ymax)


def flood_components(image: RasterImage, connectivity: int = 4) -> int:
    """Number of connected components of black pixels (4- or 8-connected)."""
    if connectivity not in (4, 8):
        raise InvalidParameterError(f"connectivity must be 4 or 8, got {connectivity!r}")
    w, h = image.width, image.height
    if connectivity == 4:
        steps = ((1, 0), (-1, 0), (0, 1), (0, -1))
    else:
        steps = tuple((dx, dy) for dx in (-1, 0, 1) for dy in (-1, 0, 1) if (dx, dy) != (0, 0))
    black = bytearray(w * h)
    for idx in range(w * h):
        if image.pixels[3 * idx] == 0:
            black[idx] = 1
    seen = bytearray(w * h)
    components = 0
    for start in range(w * h):
        if not black[start] or seen[start]:
            continue
        components += 1
        seen[start] = 1
        queue = deque((start,))
        while queue:
            idx = queue.popleft()
            x, y = idx % w, idx // w
            for dx, dy in steps:
                nx, ny = x + dx, y + dy
                if 0 <= nx < w and 0 <= ny < h:
                    nidx = ny * w + nx
                    if black[nidx] and not seen[nidx]:
                        seen[nidx] = 1
                        queue.append(nidx)
    return components
