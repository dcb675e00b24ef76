"""Exact topology of two one-parameter families of self-affine tiles.

The parity-shift family (odd |p|, digit columns sheared by eps on odd rows)
gets interior component counts, disk-likeness, strip trichotomy, and exact
tiling membership; the diagonal-shift family (|p| > 2, diagonal digits moved
along (1,1)) gets connectivity certificates and open-set-condition failure
witnesses; translate sets of the first family get a quasi-periodicity
decision.  Everything is computed in rational arithmetic; rasterization and
flood-fill counting provide an approximate cross-check for pictures only.
"""

from __future__ import annotations

from .errors import (
    AddressError,
    CertificateError,
    DomainError,
    InvalidParameterError,
    PredicateError,
    ResourceBudgetError,
    TileTopoError,
)
from .numeric import (
    Interval,
    Overlap,
    OverlapKind,
    Point2,
    Rational,
    Segment,
    classify_overlap,
    format_rational,
    geo_tail,
    rational,
)
from .ifs import (
    AffineMap,
    DigitSet,
    attractor_bounds,
    compose,
    eval_word,
    fixed_point,
    map_equal,
    sample_attractor,
    square_digit_set,
)
from .hata import EdgeWitness, PieceGraph, build_graph, components, is_connected_hata
from .shift import (
    Membership,
    MembershipKind,
    ShiftParams,
    StripCell,
    TopologyReport,
    balanced_expansions,
    build_shift_digits,
    cell_contact,
    classify_strip_intersection,
    component_count,
    cover_translates,
    strip_adjacency_graph,
    strip_cell,
    strip_interval_pair,
    strip_translation,
    tiling_membership,
    tiling_patch,
)
from .diag import (
    ConnectivityCertificate,
    DiagParams,
    OscFailureWitness,
    adjacency_witness,
    build_diag_digits,
    connectivity_certificate,
    diag_spine,
    fixed_point_table,
    is_connected,
    osc_failure_witness,
    piece_map,
    second_level_contact_segment,
    top_contact_segment,
)
from .qp import (
    BalancedDigits,
    CensusReport,
    QpReport,
    TranslateSet,
    balanced_digits,
    census_bound,
    distinct_x_classes,
    hat,
    in_translate_set,
    irrational_witness_pairs,
    is_quasi_periodic,
    local_finiteness_census,
    self_replication_check,
    translate_set,
    write_patch_points,
)
from .render import (
    RasterImage,
    ViewBox,
    attractor_view,
    flood_components,
    pixel_of,
    rasterize,
    render_attractor,
    write_ppm,
)

__version__ = "0.1.0"
