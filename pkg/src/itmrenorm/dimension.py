"""Singular value function, pressure, and dimension estimates.

The gasket is the attractor of the projective iterated function system of
the admissible letter products; its Hausdorff dimension equals the affinity
dimension, the unique root of the pressure function built from the singular
value function phi^s.  This module computes per-depth pressure roots, the
semigroup lemmas behind the lower bound 3/2 (simplex preservation, column
growth, distortion, Zariski density via a Lie-algebra rank computation),
the divergence diagnostic for the restricted two-generator subsemigroup,
and a box-counting cross-check on rendered rasters.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .alphabet import Letter, matrix_of
from .exact import (
    Mat3,
    adjugate,
    det3,
    inverse_unimodular,
    mat_mul,
    mat_pow,
    mat_vec,
    transpose,
)

# ---------------------------------------------------------------------------
# Singular values and the singular value function


@dataclass(frozen=True)
class SingularTriple:
    """Descending singular values; product is |det| (1 for cocycle words)."""

    a1: float
    a2: float
    a3: float


def _adjugate_float(m: np.ndarray) -> np.ndarray:
    """Batched closed-form adjugate of (..., 3, 3) arrays."""
    a = m
    out = np.empty_like(a)
    out[..., 0, 0] = a[..., 1, 1] * a[..., 2, 2] - a[..., 1, 2] * a[..., 2, 1]
    out[..., 0, 1] = a[..., 0, 2] * a[..., 2, 1] - a[..., 0, 1] * a[..., 2, 2]
    out[..., 0, 2] = a[..., 0, 1] * a[..., 1, 2] - a[..., 0, 2] * a[..., 1, 1]
    out[..., 1, 0] = a[..., 1, 2] * a[..., 2, 0] - a[..., 1, 0] * a[..., 2, 2]
    out[..., 1, 1] = a[..., 0, 0] * a[..., 2, 2] - a[..., 0, 2] * a[..., 2, 0]
    out[..., 1, 2] = a[..., 0, 2] * a[..., 1, 0] - a[..., 0, 0] * a[..., 1, 2]
    out[..., 2, 0] = a[..., 1, 0] * a[..., 2, 1] - a[..., 1, 1] * a[..., 2, 0]
    out[..., 2, 1] = a[..., 0, 1] * a[..., 2, 0] - a[..., 0, 0] * a[..., 2, 1]
    out[..., 2, 2] = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
    return out


def _batch_singular(mats: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Well-conditioned descending singular values of (n, 3, 3) matrices.

    The smallest singular value is recovered from the adjugate (a3 =
    |det|/sigma1(adj)), which avoids the absolute-error floor of a direct
    SVD when the matrices are badly conditioned; a2 then follows from the
    determinant identity.
    """
    d = np.abs(np.linalg.det(mats))
    vals = np.linalg.svd(mats, compute_uv=False)
    a1 = vals[..., 0]
    with np.errstate(divide="ignore", invalid="ignore"):
        a3 = d / np.linalg.svd(_adjugate_float(mats), compute_uv=False)[..., 0]
        a2 = d / (a1 * a3)
    # fall back to the direct values when the float determinant has
    # already lost all significance (astronomically large entries)
    bad = ~(np.isfinite(a2) & (a2 > 0))
    if np.any(bad):
        a2 = np.where(bad, vals[..., 1], a2)
        a3 = np.where(bad, vals[..., 2], a3)
    return a1, a2, a3


def singular_values(m: Union[Mat3, np.ndarray]) -> SingularTriple:
    """Descending singular values of an invertible 3x3 matrix."""
    arr = np.asarray(m, dtype=np.float64)[None, :, :]
    if np.linalg.det(arr[0]) == 0.0:
        raise ValueError("matrix is singular")
    a1, a2, a3 = _batch_singular(arr)
    if not (np.isfinite(a1[0]) and np.isfinite(a2[0]) and np.isfinite(a3[0])):
        raise ArithmeticError("singular value computation failed")
    return SingularTriple(float(a1[0]), float(a2[0]), float(a3[0]))


def phi_s_from_triple(t: SingularTriple, s: float) -> float:
    """Singular value function: branches on s in [0,1], [1,2], [2,inf)."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s <= 1:
        return (t.a2 / t.a1) ** s
    if s <= 2:
        return (t.a2 / t.a1) * (t.a3 / t.a1) ** (s - 1)
    return (t.a2 * t.a3 / t.a1**2) ** (s - 1)


def phi_s(m: Union[Mat3, np.ndarray], s: float) -> float:
    return phi_s_from_triple(singular_values(m), s)


def _phi_s_batch(a1: np.ndarray, a2: np.ndarray, a3: np.ndarray, s: float) -> np.ndarray:
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s <= 1:
        return (a2 / a1) ** s
    if s <= 2:
        return (a2 / a1) * (a3 / a1) ** (s - 1)
    return (a2 * a3 / a1**2) ** (s - 1)


# ---------------------------------------------------------------------------
# Pressure and the affinity dimension

MAX_PRESSURE_DEPTH = 20

_products_cache: Dict[int, Tuple[np.ndarray, np.ndarray]] = {}
_triples_cache: Dict[int, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}


def _admissible_products(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """All 2^n products of admissible length-n words starting at the first
    state, plus the end state of each word (0 or 1)."""
    if n in _products_cache:
        return _products_cache[n]
    if n == 0:
        out = np.eye(3)[None, :, :], np.zeros(1, dtype=np.uint8)
    else:
        mats, states = _admissible_products(n - 1)
        stay = np.where(
            states[:, None, None] == 0,
            np.asarray(matrix_of(Letter.A), dtype=np.float64),
            np.asarray(matrix_of(Letter.B), dtype=np.float64),
        )
        swap = np.where(
            states[:, None, None] == 0,
            np.asarray(matrix_of(Letter.CA), dtype=np.float64),
            np.asarray(matrix_of(Letter.CB), dtype=np.float64),
        )
        out = (
            np.concatenate([mats @ stay, mats @ swap]),
            np.concatenate([states, 1 - states]),
        )
    _products_cache[n] = out
    return out


def _depth_triples(n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if n not in _triples_cache:
        mats, _ = _admissible_products(n)
        _triples_cache[n] = _batch_singular(mats)
    return _triples_cache[n]


def pressure(n: int, s: float) -> float:
    """(1/n) log sum of phi^s over the 2^n admissible length-n words."""
    if not 1 <= n <= MAX_PRESSURE_DEPTH:
        raise ValueError("depth out of budget (1..%d)" % MAX_PRESSURE_DEPTH)
    a1, a2, a3 = _depth_triples(n)
    return float(np.log(_phi_s_batch(a1, a2, a3, s).sum()) / n)


@dataclass(frozen=True)
class AffinityEstimate:
    s_star: float
    per_depth_roots: List[Optional[float]]
    n_max: int
    tol: float


def _bisect_pressure(n: int, tol: float) -> Optional[float]:
    lo, hi = 1.0, 2.0
    plo, phi_hi = pressure(n, lo), pressure(n, hi)
    if plo <= 0 or phi_hi >= 0:
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pressure(n, mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def affinity_dimension_estimate(n_max: int, tol: float) -> AffinityEstimate:
    """Per-depth pressure roots on [1,2]; the root at n_max estimates the
    affinity dimension.  Depths without a sign change report None."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    roots = [_bisect_pressure(n, tol) for n in range(1, n_max + 1)]
    if roots[-1] is None:
        raise ValueError("no sign change of the pressure on [1,2] at n_max")
    return AffinityEstimate(roots[-1], roots, n_max, tol)


# ---------------------------------------------------------------------------
# The semigroup generated by D1 = A, D2(n) = CA B^n CB, D3 = CA CB

_A = matrix_of(Letter.A)
_CA = matrix_of(Letter.CA)
_B = matrix_of(Letter.B)
_CB = matrix_of(Letter.CB)

D1: Mat3 = _A
D3: Mat3 = mat_mul(_CA, _CB)


def D2(n: int) -> Mat3:
    if n < 1:
        raise ValueError("n must be at least 1")
    return mat_mul(_CA, mat_mul(mat_pow(_B, n), _CB))


GammaLetter = Tuple[str, int]  # ("D1", 0), ("D2", n >= 1) or ("D3", 0)
GammaWord = Tuple[GammaLetter, ...]


def gamma_letter_matrix(letter: GammaLetter) -> Mat3:
    name, n = letter
    if name == "D1":
        return D1
    if name == "D2":
        return D2(n)
    if name == "D3":
        return D3
    raise ValueError("unknown generator %r" % (name,))


def gamma_word_matrix(word: GammaWord) -> Mat3:
    m = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for letter in word:
        m = mat_mul(m, gamma_letter_matrix(letter))
    return m


def _in_closed_subsimplex(v: Sequence) -> bool:
    """Closed sub-simplex with vertices (0:1:1), (1:0:1), (1:1:0): each
    coordinate at most the sum of the other two (nonnegative input)."""
    x, y, z = v
    return x <= y + z and y <= x + z and z <= x + y


def _in_open_subsimplex(v: Sequence) -> bool:
    x, y, z = v
    return x < y + z and y < x + z and z < x + y


def _columns(m: Mat3) -> List[Tuple]:
    return [tuple(m[i][j] for i in range(3)) for j in range(3)]


def _random_gamma_word(rng: random.Random, max_len: int) -> GammaWord:
    """Random generator word with distinct last two letters."""
    length = rng.randint(2, max_len)
    names = ["D1", "D2", "D3"]

    def draw(exclude: Optional[str] = None) -> GammaLetter:
        pool = [x for x in names if x != exclude]
        name = rng.choice(pool)
        return (name, rng.randint(1, 5) if name == "D2" else 0)

    word = [draw() for _ in range(length - 1)]
    word.append(draw(exclude=word[-1][0]))
    return tuple(word)


@dataclass(frozen=True)
class GammaReport:
    simplex_preservation_ok: bool
    nesting_ok: bool
    epsilon2: float
    distortion_diam: float
    distortion_area: float
    samples: int


def _generator_panel() -> List[Mat3]:
    return [D1, D3] + [D2(n) for n in range(1, 11)]


def verify_gamma_lemmas(
    sample_size: int = 10**4, max_len: int = 40, seed: int = 0
) -> GammaReport:
    """Checks supporting the dimension lower bound.

    (i)   the transposed generators map the closed sub-simplex into itself
          and an interior point into the interior (vertex-image check);
    (ii)  for random generator words g with distinct last two letters,
          transpose(g).g maps the simplex into the closed sub-simplex and
          into the image of the simplex under the transposed last-two-
          letter product (exact rational checks on vertices);
    (iii) reported minimum over samples of ||g e_i|| / a1(g) (positive:
          columns are comparable to the top singular value);
    (iv)  reported distortion maxima diam(g.simplex) * a1/a2 and
          area(g.simplex) * a1^3 (finite).
    """
    sub_vertices = [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    pres_ok = True
    for g in _generator_panel():
        gt = transpose(g)
        for v in sub_vertices:
            if not _in_closed_subsimplex(mat_vec(gt, v)):
                pres_ok = False
        if not _in_open_subsimplex(mat_vec(gt, (1, 1, 1))):
            pres_ok = False

    rng = random.Random(seed)
    nesting_ok = True
    eps2 = math.inf
    dist_diam = 0.0
    dist_area = 0.0
    for _ in range(sample_size):
        word = _random_gamma_word(rng, max_len)
        g = gamma_word_matrix(word)
        gt = transpose(g)
        gtg = mat_mul(gt, g)
        tail = mat_mul(
            transpose(gamma_letter_matrix(word[-1])),
            transpose(gamma_letter_matrix(word[-2])),
        )
        tail_inv = inverse_unimodular(tail)
        for col in _columns(gtg):
            if not _in_closed_subsimplex(col):
                nesting_ok = False
            if any(x < 0 for x in mat_vec(tail_inv, col)):
                nesting_ok = False

        cols = np.array(g, dtype=np.float64).T
        a1, a2, _a3 = _batch_singular(np.array(g, dtype=np.float64)[None])
        a1, a2 = float(a1[0]), float(a2[0])
        eps2 = min(eps2, float(np.linalg.norm(cols, axis=1).min()) / a1)
        verts = cols / np.abs(cols).sum(axis=1, keepdims=True)
        diam = max(
            float(np.linalg.norm(verts[i] - verts[j]))
            for i in range(3)
            for j in range(i + 1, 3)
        )
        area = 0.5 * float(
            np.linalg.norm(np.cross(verts[1] - verts[0], verts[2] - verts[0]))
        )
        dist_diam = max(dist_diam, diam * a1 / a2)
        dist_area = max(dist_area, area * a1**3)

    return GammaReport(
        simplex_preservation_ok=pres_ok,
        nesting_ok=nesting_ok,
        epsilon2=eps2,
        distortion_diam=dist_diam,
        distortion_area=dist_area,
        samples=sample_size,
    )


# ---------------------------------------------------------------------------
# Zariski density: rank of the generated Lie algebra


def zariski_matrices() -> List[Mat3]:
    def comm(x: Mat3, y: Mat3) -> Mat3:
        xy = mat_mul(x, y)
        yx = mat_mul(y, x)
        return tuple(
            tuple(xy[i][j] - yx[i][j] for j in range(3)) for i in range(3)
        )

    x1 = ((1, 2, 1), (0, 0, 0), (-1, -2, -1))
    x2 = ((0, 0, 0), (1, 1, 1), (-1, -1, -1))
    x3 = ((0, 0, 0), (0, 0, 0), (1, 1, 0))
    x4 = comm(x1, x2)
    x5 = comm(x1, x3)
    x6 = comm(x2, x3)
    x7 = comm(x3, x4)
    x8 = comm(x2, x5)
    return [x1, x2, x3, x4, x5, x6, x7, x8]


def _rational_rank(rows: List[List[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0])
    for col in range(ncols):
        pivot = next(
            (r for r in range(rank, len(rows)) if rows[r][col] != 0), None
        )
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = rows[rank][col]
        rows[rank] = [x / inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def zariski_rank_check() -> bool:
    """Eight traceless matrices spanning sl(3): rank 8 over the rationals."""
    mats = zariski_matrices()
    for m in mats:
        if m[0][0] + m[1][1] + m[2][2] != 0:
            return False
    rows = [[Fraction(m[i][j]) for i in range(3) for j in range(3)] for m in mats]
    return _rational_rank(rows) == 8


# ---------------------------------------------------------------------------
# Two-generator subsemigroup series and arcs on the invariant edge

_D1_EDGE = ((1, 1), (0, 1))
_D3_EDGE = ((1, 0), (1, 1))


@dataclass(frozen=True)
class Gamma0Level:
    ell: int
    count: int
    s_sum: float  # over all words of the length
    s_sum_distinct: float  # restricted to distinct last two letters
    min_arc: Fraction
    max_arc: Fraction


def gamma0_arcs(ell: int) -> List[Tuple[Fraction, Fraction]]:
    """Parameter intervals of the length-ell images of the invariant edge
    (the edge from the first to the third vertex, parameterized by the
    weight of the third vertex)."""

    def t_of(x: int, z: int) -> Fraction:
        return Fraction(z, x + z)

    arcs = []
    for bits in range(2**ell):
        g = ((1, 0), (0, 1))
        for i in range(ell):
            step = _D1_EDGE if bits >> i & 1 == 0 else _D3_EDGE
            g = (
                (
                    g[0][0] * step[0][0] + g[0][1] * step[1][0],
                    g[0][0] * step[0][1] + g[0][1] * step[1][1],
                ),
                (
                    g[1][0] * step[0][0] + g[1][1] * step[1][0],
                    g[1][0] * step[0][1] + g[1][1] * step[1][1],
                ),
            )
        lo = t_of(g[0][0], g[1][0])
        hi = t_of(g[0][1], g[1][1])
        arcs.append((min(lo, hi), max(lo, hi)))
    return sorted(arcs)


def gamma0_series(ell_max: int) -> List[Gamma0Level]:
    """Per-length sums of phi^(3/2) over {D1, D3}-words, with the
    arc-length range as a cross-check.  S_ell sums over all 2^ell words;
    the sum restricted to words with distinct last two letters (where the
    distortion bounds apply) is reported alongside.  Bounded-away-from-
    zero sums support divergence of the zeta series at s = 3/2."""
    if ell_max > 22:
        raise ValueError("budget exceeded (ell_max > 22)")
    d1 = np.asarray(D1, dtype=np.float64)
    d3 = np.asarray(D3, dtype=np.float64)
    levels = []
    mats = np.eye(3)[None]
    last = np.zeros(1, dtype=np.int8) - 1
    prev = last.copy()
    for ell in range(1, ell_max + 1):
        prev = last
        mats = np.concatenate([mats @ d1, mats @ d3])
        last = np.concatenate(
            [np.zeros(len(prev), dtype=np.int8), np.ones(len(prev), dtype=np.int8)]
        )
        prev = np.concatenate([prev, prev])
        if ell < 2:
            levels.append(None)
            continue
        keep = prev != last
        a1, a2, a3 = _batch_singular(mats)
        phis = _phi_s_batch(a1, a2, a3, 1.5)
        s_sum = float(phis.sum())
        s_sum_distinct = float(phis[keep].sum())
        arcs = gamma0_arcs(ell) if ell <= 12 else None
        if arcs is not None:
            widths = [hi - lo for lo, hi in arcs]
            min_arc, max_arc = min(widths), max(widths)
        else:
            min_arc = max_arc = Fraction(0)
        levels.append(
            Gamma0Level(
                ell=ell,
                count=int(keep.sum()),
                s_sum=s_sum,
                s_sum_distinct=s_sum_distinct,
                min_arc=min_arc,
                max_arc=max_arc,
            )
        )
    return [lv for lv in levels if lv is not None]


# ---------------------------------------------------------------------------
# Box counting


@dataclass(frozen=True)
class BoxCountResult:
    slope: float
    stderr: float
    scales: List[float]
    counts: List[int]


def box_counting_dimension(
    data: np.ndarray, scales: Sequence
) -> BoxCountResult:
    """Least-squares slope of log N(eps) against log(1/eps).

    `data` is either a 2D occupancy raster (scales are box sizes in
    pixels) or an (n, 2) array of points in the unit square (scales are
    box side lengths in [0, 1]).
    """
    if len(scales) < 4:
        raise ValueError("need at least 4 scales")
    data = np.asarray(data)
    counts = []
    eps_list = []
    if data.ndim == 2 and data.shape[1] == 2 and data.dtype.kind == "f":
        for eps in scales:
            cells = np.unique(np.floor(data / float(eps)).astype(np.int64), axis=0)
            counts.append(len(cells))
            eps_list.append(float(eps))
    else:
        occ = data.astype(bool)
        size = occ.shape[0]
        for b in scales:
            b = int(b)
            pad = (-occ.shape[0]) % b, (-occ.shape[1]) % b
            grid = np.pad(occ, ((0, pad[0]), (0, pad[1])))
            h, w = grid.shape
            blocks = grid.reshape(h // b, b, w // b, b).any(axis=(1, 3))
            counts.append(int(blocks.sum()))
            eps_list.append(b / size)
    x = np.log(1.0 / np.asarray(eps_list))
    y = np.log(np.asarray(counts, dtype=np.float64))
    if np.allclose(x, x[0]):
        raise ValueError("degenerate regression: identical scales")
    n = len(x)
    (slope, intercept), res = np.polyfit(x, y, 1), None
    resid = y - (slope * x + intercept)
    denom = float(((x - x.mean()) ** 2).sum())
    stderr = float(np.sqrt((resid**2).sum() / max(n - 2, 1) / denom))
    return BoxCountResult(
        slope=float(slope), stderr=stderr, scales=eps_list, counts=counts
    )
