"""Field and tensor value types.

A field is an ndarray of node samples plus a backend tag.  The tag exists
so that mixing torus and sphere data raises ``BackendMismatch`` instead of
producing shape-coincidence garbage.  Most internal code works on bare
arrays; the wrapper types are the validation and I/O boundary, and the
tensor wrappers drive rank dispatch in ``weighted_divergence``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BackendMismatch

REAL_TOL = 1e-12


@dataclass(frozen=True)
class ScalarField:
    """Scalar samples in a backend's discrete representation."""

    values: np.ndarray
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "values", np.asarray(self.values))

    @property
    def is_real(self) -> bool:
        if not np.iscomplexobj(self.values):
            return True
        scale = max(np.abs(self.values).max(), 1.0)
        return float(np.abs(self.values.imag).max()) <= REAL_TOL * scale


@dataclass(frozen=True)
class VectorField:
    """(1,0)-component of a real vector field; the (0,1) part is its conjugate."""

    component: np.ndarray
    kind: str


@dataclass(frozen=True)
class OneForm:
    """dz-component of a real 1-form; the dz-bar component is its conjugate."""

    component: np.ndarray
    kind: str


@dataclass(frozen=True)
class TensorField11:
    """Mixed Hessian-type symmetric real 2-tensor, stored by its single
    independent component in the backend representation.

    Torus: the plain mixed component (a complex-capable grid field).
    Sphere: the regularized profile (component divided by the base density),
    which stays finite at the poles.
    """

    component: np.ndarray
    kind: str


@dataclass(frozen=True)
class TensorField20:
    """(2,0)-Hessian component; conjugation gives the (0,2) part."""

    component: np.ndarray
    kind: str


def field_values(psi, kind: str, shape) -> np.ndarray:
    """Coerce a ScalarField or ndarray to raw samples, checking the backend."""
    if isinstance(psi, ScalarField):
        if psi.kind != kind:
            raise BackendMismatch(f"field tagged {psi.kind!r}, state is {kind!r}")
        values = psi.values
    else:
        values = np.asarray(psi)
    if values.shape != shape:
        raise BackendMismatch(f"field shape {values.shape} != backend shape {shape}")
    return values


def as_real(values: np.ndarray) -> np.ndarray:
    """Strip a round-off imaginary part; complain if it is not round-off."""
    if not np.iscomplexobj(values):
        return values
    scale = max(np.abs(values).max(), 1.0)
    if np.abs(values.imag).max() > 1e-10 * scale:
        raise ValueError("field has a non-negligible imaginary part")
    return values.real
