"""Heisenberg-Weyl diagram algebra: exact computation with diagram classes,
their Hopf structure, and the forgetful maps to operator polynomials."""

from .composition import Matching, compose, enumerate_matchings, matching_count
from .config import Limits, get_limits, set_limits, using_limits
from .corpus import corpus, corpus_level
from .diagram import (
    EMPTY,
    FREE,
    CanonicalKey,
    Diagram,
    LinePartition,
    canonical_diagram,
    canonical_form,
    disjoint_union,
    is_isomorphic,
    line_partition,
    validate,
)
from .envelope import (
    Gen,
    HWPolynomial,
    PBWMonomial,
    PBWPolynomial,
    hw_product,
    normal_order_word,
    pbw_antipode,
    pbw_coproduct,
    pbw_counit,
    pbw_product,
    project_pi,
)
from .errors import (
    BothEndsFree,
    CycleDetected,
    DiagramError,
    HWError,
    IndexOutOfRange,
    InvalidMatching,
    IsolatedVertex,
    ParseDiagnostic,
    ParseError,
    SizeGuardExceeded,
)
from .galgebra import DiagramSum, product, unit
from .hopf import (
    TensorSum,
    antipode,
    convolve,
    coproduct,
    counit,
    decompositions,
    ordered_partitions,
    restrict,
    unit_projection,
)
from .morphism import phi, phi_bar, preimage
from .textio import (
    deserialize_sum,
    format_diagram,
    parse_diagram,
    parse_word,
    read_diagram,
    render_dot,
    serialize_sum,
)

__version__ = "0.1.0"
