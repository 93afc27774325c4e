"""Triangulations of the real projective plane from homogeneous points."""

from .errors import (
    CollinearObstruction,
    NoSeed,
    ParseError,
    ProjtriError,
    ValidationFailed,
    WalkStuck,
)
from .kernel import (
    INSIDE,
    ON_EDGE,
    ON_VERTEX,
    OUTSIDE,
    Classification,
    DistinguishingPlane,
    ProjectiveLine,
    ProjectivePoint,
    classify,
    collinear,
    distinguishing_plane_for,
    incident,
    join,
    meet,
    plane_transform,
    s_map,
)
from .pipeline import PipelineConfig, PointSetDocument, TriangulationDocument, triangulate, validate_file
from .surface import Triangulation, ValidationReport

__version__ = "0.1.0"
