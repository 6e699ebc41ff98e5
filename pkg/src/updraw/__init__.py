"""Upward 3D grid drawings of dags, built from track and queue layouts."""
from __future__ import annotations

from .errors import UpdrawError
from .graph import Dag, VertexOrder, generate, topological_order
from .geometry import (BoundingBox, Drawing3D, GridPoint, bounding_box,
                       segments_intersect_improperly, verify_drawing)
from .layouts import (QueueLayout, TrackLayout, verify_queue_layout,
                      verify_track_layout, wrap)
from .colourings import Colouring, greedy_colouring, strong_star_colouring
from .constructions import (coloured_upward_drawing, long_path_drawing,
                            moment_curve_drawing, track_drawing_general)

__version__ = "0.1.0"

__all__ = [
    "UpdrawError", "Dag", "VertexOrder", "generate", "topological_order",
    "BoundingBox", "Drawing3D", "GridPoint", "bounding_box",
    "segments_intersect_improperly", "verify_drawing",
    "QueueLayout", "TrackLayout", "verify_queue_layout", "verify_track_layout", "wrap",
    "Colouring", "greedy_colouring", "strong_star_colouring",
    "coloured_upward_drawing", "long_path_drawing", "moment_curve_drawing",
    "track_drawing_general",
]
