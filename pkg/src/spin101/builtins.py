"""Cached constructions of the built-in configuration and its derived objects."""

from __future__ import annotations

from functools import lru_cache

from .exactgeom import (
    OrthGraph,
    RaySet,
    automorphisms,
    build_peres33,
    complete_lone_pairs,
    orthogonality_graph,
)


@lru_cache(maxsize=1)
def peres33() -> RaySet:
    return build_peres33()


@lru_cache(maxsize=1)
def peres33_graph() -> OrthGraph:
    return orthogonality_graph(peres33())


@lru_cache(maxsize=1)
def peres33_automorphisms() -> tuple[tuple[int, ...], ...]:
    return tuple(automorphisms(peres33_graph()))


@lru_cache(maxsize=1)
def extended_configuration() -> tuple[RaySet, tuple[tuple[int, int, int], ...]]:
    """The 33 rays plus their 24 pair completions, with the 40-triple family."""
    return complete_lone_pairs(peres33_graph())
