"""Exact arithmetic over real Puiseux series and the Berkovich line over it.

Submodules:

* :mod:`.field` real Puiseux series, their complexification and literals
* :mod:`.poly` polynomials over either field
* :mod:`.berkovich` points, seminorms, joins and the tree metric
* :mod:`.real_locus` the Galois-fixed real subtree
* :mod:`.moebius` the PSL_2 action and translation lengths
* :mod:`.spectrum` prime cones of the real spectrum of the line
* :mod:`.slnr` Cartan distances and the symmetric space of SL_n(R)
* :mod:`.degeneration` specializing SL_2 representations over K
"""

from .berkovich import (
    GAUSS,
    INFINITY,
    BasicOpenSpec,
    BerkPoint,
    dan_distance,
    diam,
    disk,
    from_chart_w,
    in_basic_open,
    join,
    leq,
    path_point,
    seminorm_eval,
    type1,
)
from .degeneration import (
    DegenerationJob,
    convergence_table,
    exact_rep,
    specialize_rep,
    translation_spectrum,
)
from .errors import (
    DistanceInfinite,
    DivisionByZero,
    InputError,
    LadderExhausted,
    LiteralSyntaxError,
    NegativeInput,
    NonUnitDeterminant,
    NotPositiveDefinite,
    OutOfRange,
    PrecisionExhausted,
    PuiseuxTreeError,
)
from .field import (
    DEFAULT_PRECISION,
    I,
    X,
    ComplexPuiseux,
    LogValue,
    PuiseuxNumber,
    big_ball_index,
    compare,
    field_arith,
    format_literal,
    log_abs,
    parse_literal,
    specialize,
    sqrt_pos,
)
from .moebius import (
    MoebiusMap,
    apply,
    apply_disk,
    apply_point,
    axis_point,
    translation_length,
)
from .poly import Poly
from .real_locus import (
    check_max_squares,
    galois_conjugate,
    is_real_point,
    project_to_real_tree,
)
from .slnr import (
    CartanDiag,
    CoverPoint,
    RepTuple,
    cartan_delta,
    check_displacement_bound,
    cover_lift_and_act,
    d_delta,
    eta_norm,
    identity_lift,
    in_U_k,
    is_minimal_vector,
    matrix_bounds_check,
)
from .spectrum import SpectrumLinePoint, classify, sign_at

__version__ = "0.1.0"
