"""Planar fast path: embedding, r-division, per-piece cliques and the compressed refine."""
from .embedding import NonPlanarError, PlanarEmbedding, build_embedding
from .engine import PlanarContext, default_r
from .rdivision import RDivision, build_r_division, validate_r_division

__all__ = [
    "NonPlanarError",
    "PlanarContext",
    "PlanarEmbedding",
    "RDivision",
    "build_embedding",
    "build_r_division",
    "default_r",
    "validate_r_division",
]
