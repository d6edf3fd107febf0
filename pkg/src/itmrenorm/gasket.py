"""Rendering and sampling the parameter-space gasket.

The infinite-type parameter set is the attractor of the projective pair of
maps attached to the two admissible letters at each state: the simplex
splits into two child cylinders plus a removed hole triangle.  This module
enumerates cylinders and holes to a given depth, draws them in either the
barycentric chart or the (alpha, beta) chart, and emits point clouds for
the box-counting cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from . import kernels
from .alphabet import Letter, Perm, matrix_of
from .exact import Mat3, Vec3, mat_mul, normalize_simplex

_IDENTITY: Mat3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

# Integer vertex matrices (columns) of the removed hole at each state;
# common column scales are irrelevant after projective normalization.
_HOLE_COLUMNS = {
    Perm.P123: ((0, 1, 1), (1, 1, 0), (0, 0, 1)),
    Perm.P213: ((1, 1, 0), (0, 1, 1), (0, 0, 1)),
}


@dataclass(frozen=True)
class Cylinder:
    state: Perm
    mat: Mat3

    def vertices(self) -> Tuple[Vec3, Vec3, Vec3]:
        """Exact barycentric vertices: the normalized columns."""
        cols = tuple(
            tuple(self.mat[i][j] for i in range(3)) for j in range(3)
        )
        return tuple(normalize_simplex(c) for c in cols)


def _children(cyl: Cylinder) -> Tuple[Cylinder, Cylinder]:
    if cyl.state is Perm.P123:
        stay, swap = Letter.A, Letter.CA
    else:
        stay, swap = Letter.B, Letter.CB
    return (
        Cylinder(cyl.state, mat_mul(cyl.mat, matrix_of(stay))),
        Cylinder(cyl.state.other(), mat_mul(cyl.mat, matrix_of(swap))),
    )


def enumerate_cylinders(depth: int, start: Perm = Perm.P123) -> List[Cylinder]:
    """All 2^depth surviving cylinders of the given depth."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    level = [Cylinder(start, _IDENTITY)]
    for _ in range(depth):
        level = [child for cyl in level for child in _children(cyl)]
    return level


def enumerate_holes(depth: int, start: Perm = Perm.P123) -> List[Mat3]:
    """Vertex-column matrices of every hole removed up to the given depth:
    the image of the state's hole triangle under each surviving prefix."""
    holes: List[Mat3] = []
    level = [Cylinder(start, _IDENTITY)]
    for _ in range(depth):
        for cyl in level:
            holes.append(mat_mul(cyl.mat, _HOLE_COLUMNS[cyl.state]))
        level = [child for cyl in level for child in _children(cyl)]
    return holes


# ---------------------------------------------------------------------------
# Charts


def chart_alpha_beta(p: Sequence) -> Tuple[Fraction, Fraction]:
    """(a, b, c) on the simplex -> (alpha, beta) = (1 - a, c)."""
    a, b, c = (Fraction(x) for x in p)
    if a + b + c != 1 or min(a, b, c) < 0:
        raise ValueError("point must lie on the simplex")
    return (b + c, c)


def chart_alpha_beta_inverse(alpha, beta) -> Vec3:
    alpha, beta = Fraction(alpha), Fraction(beta)
    return (1 - alpha, alpha - beta, beta)


_SQRT3_2 = math.sqrt(3.0) / 2.0


def simplex_xy(p: Sequence) -> Tuple[float, float]:
    """Standard 2D embedding (a, b, c) -> (b + c/2, sqrt(3)/2 * c)."""
    _a, b, c = (float(x) for x in p)
    return (b + c / 2.0, _SQRT3_2 * c)


# ---------------------------------------------------------------------------
# Rendering


@dataclass(frozen=True)
class RenderConfig:
    depth: int
    resolution: int
    chart: str = "simplex"  # "simplex" | "alphabeta"
    mode: str = "fill"  # "fill" (paint cylinders) | "carve" (remove holes)

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be nonnegative")
        if self.resolution < 16:
            raise ValueError("resolution must be at least 16")
        if self.chart not in ("simplex", "alphabeta"):
            raise ValueError("unknown chart %r" % self.chart)
        if self.mode not in ("fill", "carve"):
            raise ValueError("unknown mode %r" % self.mode)


def _columns_float(mat: Mat3) -> np.ndarray:
    cols = np.asarray(mat, dtype=np.float64).T
    return cols / cols.sum(axis=1, keepdims=True)


def _to_pixels(points: np.ndarray, chart: str, resolution: int) -> np.ndarray:
    """Map (n, 3) barycentric floats to (n, 2) pixel x/y coordinates."""
    a, b, c = points[:, 0], points[:, 1], points[:, 2]
    if chart == "simplex":
        x = b + c / 2.0
        y = _SQRT3_2 * c
    else:
        x = b + c
        y = c
    return np.stack([x * resolution, (1.0 - y) * resolution], axis=1)


def _triangle_batch(mats: Sequence[Mat3], chart: str, resolution: int) -> np.ndarray:
    verts = np.stack([_columns_float(m) for m in mats])  # (n, 3, 3)
    flat = verts.reshape(-1, 3)
    return _to_pixels(flat, chart, resolution).reshape(-1, 3, 2)


def render(config: RenderConfig) -> np.ndarray:
    """Occupancy raster (uint8, 1 = in the depth-d approximation).

    "fill" paints the surviving depth-d cylinder triangles; "carve" paints
    the full simplex and erases every hole removed up to depth d.  The two
    agree except on pixels whose centers sit on triangle boundaries.
    """
    buf = np.zeros((config.resolution, config.resolution), dtype=np.uint8)
    if config.mode == "fill":
        mats = [cyl.mat for cyl in enumerate_cylinders(config.depth)]
        kernels.fill_triangles(buf, _triangle_batch(mats, config.chart, config.resolution))
        return buf
    kernels.fill_triangles(
        buf, _triangle_batch([_IDENTITY], config.chart, config.resolution)
    )
    holes = enumerate_holes(config.depth)
    if holes:
        hole_buf = np.zeros_like(buf)
        kernels.fill_triangles(
            hole_buf, _triangle_batch(holes, config.chart, config.resolution)
        )
        buf &= 1 - hole_buf
    return buf


def write_ppm(img: np.ndarray, path: str) -> None:
    """Binary PPM (P6), occupied pixels white on black."""
    h, w = img.shape
    rgb = np.repeat((img.astype(np.uint8) * 255)[:, :, None], 3, axis=2)
    with open(path, "wb") as fh:
        fh.write(b"P6\n%d %d\n255\n" % (w, h))
        fh.write(rgb.tobytes())


def write_image(img: np.ndarray, path: str) -> None:
    """PPM for .ppm paths; PNG (requires Pillow) otherwise."""
    if path.lower().endswith(".ppm"):
        write_ppm(img, path)
        return
    from PIL import Image

    Image.fromarray(img.astype(np.uint8) * 255, mode="L").save(path)


# ---------------------------------------------------------------------------
# Point sampling


def sample_points(depth: int, per_cylinder: int, seed: int = 0) -> np.ndarray:
    """(n, 3) barycentric floats: each surviving depth-d cylinder's
    barycenter plus per_cylinder - 1 seeded interior points."""
    if per_cylinder < 1:
        raise ValueError("per_cylinder must be at least 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    out = []
    for cyl in enumerate_cylinders(depth):
        verts = _columns_float(cyl.mat)
        out.append(verts.mean(axis=0))
        if per_cylinder > 1:
            weights = rng.dirichlet((2.0, 2.0, 2.0), size=per_cylinder - 1)
            out.extend(weights @ verts)
    return np.asarray(out)


def points_to_xy(points: np.ndarray, chart: str = "simplex") -> np.ndarray:
    """Map barycentric points to the unit square for box counting."""
    a, b, c = points[:, 0], points[:, 1], points[:, 2]
    if chart == "simplex":
        x = b + c / 2.0
        y = _SQRT3_2 * c
    else:
        x = b + c
        y = c
    return np.stack([x, y], axis=1)
