"""Cone-restricted operator norms, Lyapunov exponents, contraction bounds.

The D-seminorm ``max(v) - min(v)`` is a norm on every hyperplane orthogonal
to a nonnegative vector.  The transposed cocycle acts on such hyperplanes;
its restricted operator norm governs the second Lyapunov exponent.  This
module computes the cone-restricted supremum of that norm exactly by
hyperplane enumeration, reproduces the exhaustive case table for the block
``A*CA*B*CB``, estimates the Lyapunov spectrum by Monte Carlo, and checks
the deterministic per-word contraction certificate bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .alphabet import Letter, Word, is_admissible, matrix_of
from .backend import backend_name
from .cocycle import UNIFORM, NotContracted, Policy, _stay_probability, product
from .exact import Mat3, Vec3, mat_mul, mat_vec, transpose


def d_seminorm(v: Sequence) -> object:
    """``max(v) - min(v)``; vanishes exactly on constant vectors."""
    return max(v) - min(v)


_E = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def _spanning_set(m: Mat3) -> List[Tuple[str, Vec3]]:
    """Labelled spanning vectors: columns of M, edge differences, and their
    images under M.  Candidate hyperplane normals are cross products of
    pairs from this set."""
    me = [mat_vec(m, e) for e in _E]
    diffs = {
        "e1-e3": (1, 0, -1),
        "e1-e2": (1, -1, 0),
        "e2-e3": (0, 1, -1),
    }
    out: List[Tuple[str, Vec3]] = [
        ("Me1", me[0]),
        ("Me2", me[1]),
        ("Me3", me[2]),
    ]
    out.extend(diffs.items())
    for name in ("e1-e2", "e2-e3", "e1-e3"):
        out.append(("M(%s)" % name, mat_vec(m, diffs[name])))
    return out


def _strictly_one_signed(v: Sequence) -> bool:
    return all(x > 0 for x in v) or all(x < 0 for x in v)


@dataclass(frozen=True)
class TableRow:
    """One enumerated candidate hyperplane normal and its norm data."""

    u_label: str
    v_label: str
    z: Vec3
    mtz: Vec3
    z_dnorm: object
    mtz_dnorm: object

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.mtz_dnorm, self.z_dnorm)


def _enumerate_rows(m: Mat3, column_pairs_only: bool = False) -> List[TableRow]:
    """All surviving candidate normals z = u x v.

    A normal z is discarded when it cannot be orthogonal to any vector of
    the image cone M.R^3_{>=0}, i.e. when transpose(M).z is strictly
    positive or strictly negative, and when the D-seminorm of z vanishes.
    """
    span = _spanning_set(m)
    mt = transpose(m)
    rows: List[TableRow] = []
    for i in range(len(span)):
        if column_pairs_only and i >= 3:
            break
        for j in range(i + 1, len(span)):
            (ul, u), (vl, v) = span[i], span[j]
            z = (
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            )
            if z == (0, 0, 0):
                continue
            mtz = mat_vec(mt, z)
            if _strictly_one_signed(mtz):
                continue
            dz = d_seminorm(z)
            if dz == 0:
                continue
            rows.append(TableRow(ul, vl, z, mtz, dz, d_seminorm(mtz)))
    return rows


@dataclass(frozen=True)
class ConeNormResult:
    """Supremum over f in M.R^3_{>=0} of ||transpose(M)|_{f-perp}||_D."""

    value: Fraction
    maximizer: Optional[Vec3]
    witness: Optional[Tuple[str, str]]
    enumerated: Optional[Fraction]
    special_case: Optional[str]


def _unipotent_block(m: Mat3) -> Optional[Tuple[str, int]]:
    """Recognize M = A^k*CA or M = B^k*CB (k >= 0) by shape."""
    if (
        m[1] == (0, 1, 0)
        and m[2] == (1, 0, 1)
        and m[0][1] == m[0][2]
        and m[0][0] == m[0][1] + 1
        and m[0][1] >= 0
    ):
        return ("A^kCA", m[0][1])
    if (
        m[0] == (1, 0, 0)
        and m[2] == (0, 1, 1)
        and m[1][0] == m[1][2]
        and m[1][1] == m[1][0] + 1
        and m[1][0] >= 0
    ):
        return ("B^kCB", m[1][0])
    return None


def _verify_norm_one(m: Mat3, kind: str) -> None:
    """Direct row-reduction argument for the unipotent blocks.

    transpose(M) differs from a fixed rank-2 matrix R by a matrix with
    three identical rows; adding a constant vector leaves the D-seminorm
    unchanged, so ||transpose(M)v||_D == ||Rv||_D for every v, and the
    family v = (a, -b, 0) (resp. (-a, b, 0)) realizes ratio 1.
    """
    mt = transpose(m)
    if kind == "A^kCA":
        r = ((1, 0, 0), (0, 1, -1), (0, 0, 0))
        v = (1, -1, 0)
    else:
        r = ((1, 0, -1), (0, 1, 0), (0, 0, 0))
        v = (-1, 1, 0)
    rows = [tuple(mt[i][j] - r[i][j] for j in range(3)) for i in range(3)]
    if not (rows[0] == rows[1] == rows[2]):
        raise AssertionError("row reduction of the transpose failed")
    if d_seminorm(mat_vec(mt, v)) != d_seminorm(v):
        raise AssertionError("ratio-1 witness failed")


def cone_sup_dnorm(m: Mat3) -> ConeNormResult:
    """Cone-restricted D-operator-norm supremum by hyperplane enumeration.

    For entrywise-positive M the restricted norm, as a function of the
    hyperplane normal f, attains its supremum on a normal orthogonal to two
    vectors of the finite spanning set, so the exact maximum is a finite
    maximization over cross products.  The unipotent blocks A^k*CA and
    B^k*CB fall outside the positivity hypothesis; they are recognized by
    shape, certified to have norm exactly 1 by the direct row-reduction
    argument, and the (larger) enumerated value is kept as a diagnostic.
    """
    rows = _enumerate_rows(m)
    if not rows:
        raise ValueError("all candidate normals degenerate")
    best = max(rows, key=lambda r: r.ratio)
    block = _unipotent_block(m)
    if block is not None:
        kind, _ = block
        _verify_norm_one(m, kind)
        return ConeNormResult(
            value=Fraction(1),
            maximizer=None,
            witness=None,
            enumerated=best.ratio,
            special_case=kind,
        )
    return ConeNormResult(
        value=best.ratio,
        maximizer=best.z,
        witness=(best.u_label, best.v_label),
        enumerated=best.ratio,
        special_case=None,
    )


def table1_reproduce() -> List[TableRow]:
    """The exhaustive 21-row case table for M = A*CA*B*CB.

    Candidate normals are cross products of a column of M with another
    spanning vector, enumerated in a fixed order.  Maximum ratio over
    rows is 4/5.
    """
    m = product([Letter.A, Letter.CA, Letter.B, Letter.CB])
    rows = _enumerate_rows(m, column_pairs_only=True)
    assert len(rows) == 21
    return rows


# ---------------------------------------------------------------------------
# Restricted operator norms (exact, by polygon vertices)


def _check_f(f: Sequence[Fraction]) -> Tuple[Fraction, Fraction, Fraction]:
    f = tuple(Fraction(x) for x in f)
    if all(x == 0 for x in f):
        raise ValueError("f must be nonzero")
    if any(x < 0 for x in f):
        raise ValueError("f must be nonnegative")
    return f


# Edges of the D-seminorm unit ball (an infinite prism with axis (1,1,1))
# are the lines p + t*(1,1,1) over the six hexagon vertices p below.
_D_PRISM_EDGES = [
    (Fraction(2, 3), Fraction(-1, 3), Fraction(-1, 3)),
    (Fraction(-1, 3), Fraction(2, 3), Fraction(-1, 3)),
    (Fraction(-1, 3), Fraction(-1, 3), Fraction(2, 3)),
    (Fraction(1, 3), Fraction(1, 3), Fraction(-2, 3)),
    (Fraction(1, 3), Fraction(-2, 3), Fraction(1, 3)),
    (Fraction(-2, 3), Fraction(1, 3), Fraction(1, 3)),
]


def _dball_section_vertices(f) -> List[Tuple[Fraction, ...]]:
    """Vertices of {||v||_D <= 1} cut by the plane f.v = 0 (f >= 0, f != 0).

    Every prism edge crosses the plane exactly once since f.(1,1,1) > 0.
    """
    s = sum(f)
    verts = []
    for p in _D_PRISM_EDGES:
        t = -sum(fi * pi for fi, pi in zip(f, p)) / s
        verts.append(tuple(pi + t for pi in p))
    return verts


def restricted_dnorm(m: Mat3, f: Sequence) -> Fraction:
    """Exact operator D-norm of transpose(M) restricted to f-perp."""
    f = _check_f(f)
    mt = transpose(m)
    return max(d_seminorm(mat_vec(mt, v)) for v in _dball_section_vertices(f))


def _infball_section_vertices(f) -> List[Tuple[Fraction, ...]]:
    """Vertices of the cube {||v||_inf <= 1} cut by the plane f.v = 0."""
    verts = set()
    one = Fraction(1)
    for k in range(3):
        i, j = [x for x in range(3) if x != k]
        if f[k] == 0:
            continue
        for si in (one, -one):
            for sj in (one, -one):
                vk = -(si * f[i] + sj * f[j]) / f[k]
                if abs(vk) <= 1:
                    v = [Fraction(0)] * 3
                    v[i], v[j], v[k] = si, sj, vk
                    verts.add(tuple(v))
    for corner_bits in range(8):
        v = tuple(one if corner_bits >> b & 1 else -one for b in range(3))
        if sum(fi * vi for fi, vi in zip(f, v)) == 0:
            verts.add(v)
    return sorted(verts)


def restricted_opnorm_inf(m: Mat3, f: Sequence) -> Fraction:
    """Exact infinity-operator-norm of transpose(M) restricted to f-perp."""
    f = _check_f(f)
    mt = transpose(m)
    verts = _infball_section_vertices(f)
    if not verts:
        return Fraction(0)
    return max(max(abs(x) for x in mat_vec(mt, v)) for v in verts)


# ---------------------------------------------------------------------------
# Lyapunov spectrum


def _compound2(m) -> np.ndarray:
    """Second compound matrix (2x2 minors on index pairs 01, 02, 12)."""
    pairs = ((0, 1), (0, 2), (1, 2))
    out = np.empty((3, 3))
    for r, (i1, i2) in enumerate(pairs):
        for c, (j1, j2) in enumerate(pairs):
            out[r, c] = m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1]
    return out


def _letter_tables() -> Tuple[np.ndarray, np.ndarray]:
    """(4,3,3) letter matrices and their second compounds, indexed by
    2*state + edge with edge 0 = stay (A/B), edge 1 = swap (CA/CB)."""
    order = [Letter.A, Letter.CA, Letter.B, Letter.CB]
    mats = np.array([matrix_of(x) for x in order], dtype=np.float64)
    wedges = np.array([_compound2(matrix_of(x)) for x in order], dtype=np.float64)
    return mats, wedges


def draw_edges(policy: Policy, steps: int, trials: int, seed: int) -> np.ndarray:
    """Pre-draw the per-step edge choices (0 = stay, 1 = swap) for all
    trials; both compute backends consume the same array."""
    p_stay = _stay_probability(policy)
    if not 0.0 < p_stay < 1.0:
        raise ValueError("degenerate policy: stay probability must be in (0,1)")
    rng = np.random.Generator(np.random.PCG64(seed))
    return (rng.random((trials, steps)) >= p_stay).astype(np.uint8)


@dataclass(frozen=True)
class LyapunovResult:
    lambda1: float
    lambda2: float
    lambda3: float
    stderr1: float
    stderr2: float
    stderr3: float
    steps: int
    trials: int
    policy: Policy
    seed: int
    backend: str

    def as_dict(self) -> dict:
        return {
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "lambda3": self.lambda3,
            "stderr1": self.stderr1,
            "stderr2": self.stderr2,
            "stderr3": self.stderr3,
            "steps": self.steps,
            "trials": self.trials,
            "policy": self.policy,
            "seed": self.seed,
            "backend": self.backend,
        }


def lyapunov_estimate(
    policy: Policy = UNIFORM,
    steps: int = 10**6,
    trials: int = 32,
    seed: int = 0,
    renorm_every: int = 20,
) -> LyapunovResult:
    """Monte Carlo Lyapunov spectrum of the renormalization cocycle.

    lambda1 comes from the log-norm growth of the product, lambda1+lambda2
    from the growth of its second compound, and lambda3 = -(lambda1 +
    lambda2) since the letter matrices have determinant 1.  Products are
    rescaled every `renorm_every` steps to avoid overflow.
    """
    if steps < 1000:
        raise ValueError("steps must be at least 1000")
    if trials < 1:
        raise ValueError("trials must be positive")
    edges = draw_edges(policy, steps, trials, seed)
    mats, wedges = _letter_tables()
    log1, log12 = kernels.lyapunov_logs(edges, mats, wedges, renorm_every)
    l1 = log1 / steps
    l12 = log12 / steps
    l2 = l12 - l1
    l3 = -l12
    scale = np.sqrt(trials)

    def err(x: np.ndarray) -> float:
        return float(np.std(x, ddof=1) / scale) if trials > 1 else 0.0

    return LyapunovResult(
        lambda1=float(l1.mean()),
        lambda2=float(l2.mean()),
        lambda3=float(l3.mean()),
        stderr1=err(l1),
        stderr2=err(l2),
        stderr3=err(l3),
        steps=steps,
        trials=trials,
        policy=policy,
        seed=seed,
        backend=backend_name(),
    )


def periodic_top_exponent(word: Word) -> float:
    """Top Lyapunov exponent of the periodic sequence word^infinity:
    log of the spectral radius of the period product, divided by the
    period length."""
    if not word:
        raise ValueError("empty period")
    m = np.array(product(word), dtype=np.float64)
    radius = max(abs(np.linalg.eigvals(m)))
    return float(np.log(radius) / len(word))


# ---------------------------------------------------------------------------
# Contraction certificate

# Letter realization of the state pattern 112211221: two full tours of the
# two-state loop, then one more stay at the first state.
CONTRACTION_PATTERN: Word = (
    Letter.A,
    Letter.CA,
    Letter.B,
    Letter.CB,
    Letter.A,
    Letter.CA,
    Letter.B,
    Letter.CB,
    Letter.A,
)


def count_pattern_blocks(word: Word, min_gap: int = 8) -> int:
    """Greedy left-to-right count of occurrences of CONTRACTION_PATTERN
    whose start positions are at least `min_gap` apart."""
    pat = CONTRACTION_PATTERN
    n, k = len(word), len(pat)
    count = 0
    last = -min_gap
    i = 0
    while i + k <= n:
        if i - last >= min_gap and tuple(word[i : i + k]) == pat:
            count += 1
            last = i
            i += min_gap
        else:
            i += 1
    return count


@dataclass(frozen=True)
class Certificate:
    measured: Fraction
    bound: Fraction
    ok: bool
    pattern_count: int
    length: int


def contraction_certificate(word: Word) -> Certificate:
    """Deterministic contraction bound for the transposed cocycle.

    measured  = exact ||transpose(P)|_{f-perp}||_inf where P is the word's
                product and f = P.(1,1,1), an interior representative of
                the image cone (the word's limit direction up to
                normalization).
    bound     = (n+1) * 2 * (4/5)^#I, where #I counts a maximal 8-separated
                family of occurrences of CONTRACTION_PATTERN: each such
                block contributes a factor 4/5 to the cone-restricted
                D-norm, the seminorm/infinity-norm comparison costs a
                factor 2, and the remaining blocks have norm at most 1.
    """
    if not word:
        raise NotContracted("empty word has no limit direction")
    if not is_admissible(word):
        raise ValueError("word is not admissible from the initial state")
    m = product(word)
    f = mat_vec(m, (1, 1, 1))
    measured = restricted_opnorm_inf(m, f)
    count = count_pattern_blocks(word)
    n = len(word)
    bound = Fraction(2 * (n + 1)) * Fraction(4, 5) ** count
    return Certificate(
        measured=measured,
        bound=bound,
        ok=measured <= bound,
        pattern_count=count,
        length=n,
    )
