"""Three-interval translation maps, their renormalization, and the gasket.

Exact-rational core (induction, cone norms, simplex geometry) with numpy
numerics for Lyapunov exponents, pressure roots, and rendering; hot loops
use numba when available (set ITMRENORM_BACKEND=numpy to force the
pure-numpy fallback).
"""

from .alphabet import (
    Letter,
    Perm,
    Word,
    end_state,
    is_admissible,
    matrix_of,
    word_from_string,
    word_to_string,
)
from .backend import backend_name
from .cocycle import (
    UNIFORM,
    NotContracted,
    block_decomposition,
    cylinder,
    hole_triangle,
    limit_direction,
    product,
    random_word,
)
from .dimension import (
    AffinityEstimate,
    BoxCountResult,
    GammaReport,
    SingularTriple,
    affinity_dimension_estimate,
    box_counting_dimension,
    gamma0_arcs,
    gamma0_series,
    phi_s,
    pressure,
    singular_values,
    verify_gamma_lemmas,
    zariski_rank_check,
)
from .gasket import (
    Cylinder,
    RenderConfig,
    chart_alpha_beta,
    chart_alpha_beta_inverse,
    enumerate_cylinders,
    enumerate_holes,
    render,
    sample_points,
    simplex_xy,
    write_ppm,
)
from .itm import (
    BtParams,
    Classification,
    IntervalSet,
    attractor_iterates,
    bt_apply,
    classify,
    image_of_set,
)
from .renorm import (
    DEGENERATE,
    HOLE,
    InductionRun,
    InductionState,
    gauss_step,
    gauss_via_induction,
    induction_step,
    length_vector,
    reconstruct,
    run_induction,
)
from .simplicial import (
    SimplicialGraph,
    WinLoseState,
    arc_graph,
    check_strong_nondegeneracy_cond2,
    first_return_products,
    win_lose_step,
)
from .spectrum import (
    Certificate,
    ConeNormResult,
    LyapunovResult,
    cone_sup_dnorm,
    contraction_certificate,
    d_seminorm,
    lyapunov_estimate,
    periodic_top_exponent,
    restricted_dnorm,
    restricted_opnorm_inf,
    table1_reproduce,
)

__version__ = "1.0.0"
