"""Symbolic classification of extended-diagram vertices.

Given only the index J of a vertex in the extended cube of a length-n
diagram on objects A_0..A_n, the homotopy type of the vertex is readable
off the marker/stage/remainder decomposition:

* a 1 in the remainder forces a weakly contractible vertex;
* otherwise the vertex is the r(J)-fold suspension of the vertex at the
  index with remainder 2's zeroed out; with stage 0 that normal form is
  A_k for k the marker length, with stage s > 0 it is an iterated cofiber
  of cone length s.
"""

from dataclasses import dataclass

from .cube import CubeIndex, marker_decomposition
from .errors import PreconditionError


@dataclass(frozen=True)
class Contractible:
    pass


@dataclass(frozen=True)
class Suspension:
    r: int
    k: int


@dataclass(frozen=True)
class ConeStage:
    stage: int
    r: int
    marker_length: int


def classify_vertex(j: CubeIndex):
    """Return Contractible, Suspension(r, k) or ConeStage(stage, r, |M|)."""
    md = marker_decomposition(j)
    if 1 in md.remainder:
        return Contractible()
    if md.stage == 0:
        return Suspension(r=md.r, k=len(md.marker))
    return ConeStage(stage=md.stage, r=md.r, marker_length=len(md.marker))


def normal_form(j: CubeIndex) -> CubeIndex:
    """Replace all 2's in the remainder by 0's.

    Defined only when the remainder has no digit 1 (otherwise the vertex
    is contractible and has no normal form).
    """
    md = marker_decomposition(j)
    if 1 in md.remainder:
        raise PreconditionError(f"{j} is contractible; no normal form")
    tail = tuple(0 if d == 2 else d for d in md.remainder)
    return CubeIndex(md.marker + tail, j.alphabet)
