"""Minkowski causal structure in 1+1 dimensions and the two agreement regions.

Events are points (t, x) in natural units (c = 1). Relative to an apex event,
every other event is classified by the sign of the invariant interval
``s**2 = dt**2 - dx**2``. Two regions are derived from that classification:

* ``F``: everything *not* in the causal future of the apex, i.e. spacelike
  from it or on/inside its backward lightcone.
* ``B``: everything on or inside the backward lightcone of the apex.

``B`` is a subset of ``F`` pointwise, and the apex itself belongs to neither
region. Whether the null boundary counts as part of ``B`` is configurable
(``include_null_boundary``, default True); ``F`` always includes it.

Note: an event lies in ``F`` exactly when some Lorentz frame orders it
earlier than the apex, so the frame-based "occurred earlier in some frame"
reading of agreement coincides with ``F`` and is not implemented separately.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

#: |s**2| at or below this counts as lightlike for floating-point coordinates.
INTERVAL_TOLERANCE = 1e-12

#: Default for whether the null boundary belongs to region B.
INCLUDE_NULL_BOUNDARY_DEFAULT = True


@dataclass(frozen=True, slots=True)
class Event:
    """Labeled spacetime point; labels are unique within an experiment."""

    label: str
    t: float
    x: float


class CausalRelation(Enum):
    TIMELIKE_PAST = "TimelikePast"
    LIGHTLIKE_PAST = "LightlikePast"
    SPACELIKE = "Spacelike"
    LIGHTLIKE_FUTURE = "LightlikeFuture"
    TIMELIKE_FUTURE = "TimelikeFuture"
    COINCIDENT = "Coincident"

    def __str__(self) -> str:
        return self.value


class RegionKind(Enum):
    """Agreement region relative to an apex: F (not-future) or B (past)."""

    F = "F"
    B = "B"

    def __str__(self) -> str:
        return self.value


def classify(e: Event, apex: Event, tolerance: float = INTERVAL_TOLERANCE) -> CausalRelation:
    """Causal relation of ``e`` with respect to ``apex``.

    Coincident requires exact coordinate equality. With dt = 0 and dx != 0
    the interval is strictly spacelike, so the lightlike tolerance band only
    applies when there is a time direction to attach to it.
    """
    dt = e.t - apex.t
    dx = e.x - apex.x
    if dt == 0.0:
        return CausalRelation.COINCIDENT if dx == 0.0 else CausalRelation.SPACELIKE
    interval = dt * dt - dx * dx
    if abs(interval) <= tolerance:
        return CausalRelation.LIGHTLIKE_FUTURE if dt > 0 else CausalRelation.LIGHTLIKE_PAST
    if interval < 0:
        return CausalRelation.SPACELIKE
    return CausalRelation.TIMELIKE_FUTURE if dt > 0 else CausalRelation.TIMELIKE_PAST


_F_RELATIONS = frozenset(
    {CausalRelation.SPACELIKE, CausalRelation.TIMELIKE_PAST, CausalRelation.LIGHTLIKE_PAST}
)
_B_RELATIONS = frozenset({CausalRelation.TIMELIKE_PAST, CausalRelation.LIGHTLIKE_PAST})
_B_INTERIOR = frozenset({CausalRelation.TIMELIKE_PAST})


def in_region(
    e: Event,
    apex: Event,
    kind: RegionKind,
    include_null_boundary: bool = INCLUDE_NULL_BOUNDARY_DEFAULT,
) -> bool:
    """Whether ``e`` belongs to the agreement region ``kind`` around ``apex``.

    The apex itself (Coincident) is in neither region. ``include_null_boundary``
    only affects ``B``; ``F`` contains the backward null boundary by definition.
    """
    relation = classify(e, apex)
    if kind is RegionKind.F:
        return relation in _F_RELATIONS
    return relation in (_B_RELATIONS if include_null_boundary else _B_INTERIOR)
