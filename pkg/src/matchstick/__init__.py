"""Construction and certification toolkit for 4-regular planar unit-triangle
ring graphs built from flexible subgraphs closed on intersecting rails."""

from . import precision  # establishes the global context before anything else
from .geometry import (
    Line,
    Point,
    SegmentRelation,
    circle_circle_intersect,
    distance,
    point_segment_distance,
    reflect,
    rotate,
    segment_relation,
)
from .graph import RawFixture, UnitGraph, degree_histogram, ingest_fixture, unit_three_cycles
from .linkage import (
    AngleReadout,
    LinkageTemplate,
    RingSpec,
    SolveResult,
    build_template,
    continue_in_n,
    extract_angles,
    minimal_n_search,
    residuals,
    solve,
)
from .assemble import (
    axis_reflect,
    chain_assemble,
    make_adapter,
    mirror_close,
    ring_assemble,
    ring_rotation_displacement,
)
from .verify import (
    ToleranceProfile,
    VerificationReport,
    additional_triangle_scan,
    crossing_scan,
    min_separations,
    verify,
)
from .graphio import read_graph, write_graph

__version__ = "0.1.0"
