"""Matrix families and their JSON representation.

A family file is a JSON object::

    {"matrices": [[[...row...], ...], ...], "nonnegative": false, "transpose_first": false}

A bare list of matrices is accepted as well.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class MatrixFamily:
    """Ordered finite family of real d x d matrices.

    ``scale`` records the factor the family was divided by (see
    :func:`jsrkit.search.normalize_family`), so normalized quantities can be
    mapped back to the original family.
    """

    matrices: tuple
    nonnegative: bool = False
    scale: float = 1.0
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        mats = []
        for a in self.matrices:
            a = np.array(a, dtype=float)
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise InputError(f"matrix of shape {a.shape} is not square")
            if not np.all(np.isfinite(a)):
                raise InputError("matrix entries must be finite")
            a.setflags(write=False)
            mats.append(a)
        if not mats:
            raise InputError("a family needs at least one matrix")
        d = mats[0].shape[0]
        if any(a.shape != (d, d) for a in mats):
            raise InputError("all matrices of a family must have the same size")
        if self.nonnegative and any((a < 0).any() for a in mats):
            raise InputError("family flagged nonnegative has negative entries")
        object.__setattr__(self, "matrices", tuple(mats))

    @property
    def m(self) -> int:
        return len(self.matrices)

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def __len__(self):
        return len(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]

    def __iter__(self):
        return iter(self.matrices)

    def is_nonnegative(self) -> bool:
        return all((a >= 0).all() for a in self.matrices)

    def transpose(self) -> "MatrixFamily":
        return MatrixFamily(tuple(a.T for a in self.matrices), self.nonnegative, self.scale)

    def scaled(self, factor: float) -> "MatrixFamily":
        """Family divided by ``factor``; the accumulated scale is recorded."""
        return MatrixFamily(tuple(a / factor for a in self.matrices), self.nonnegative,
                            self.scale * factor)

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        for a in self.matrices:
            h.update(np.ascontiguousarray(a, dtype="<f8").tobytes())
        return h.hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "matrices": [a.tolist() for a in self.matrices],
            "nonnegative": bool(self.nonnegative),
        }


def family_from_json(obj, transpose_first=None, nonnegative=None) -> MatrixFamily:
    if isinstance(obj, list):
        obj = {"matrices": obj}
    if not isinstance(obj, dict) or "matrices" not in obj:
        raise InputError("family JSON needs a 'matrices' list")
    try:
        mats = [np.array(a, dtype=float) for a in obj["matrices"]]
    except (TypeError, ValueError) as exc:
        raise InputError(f"cannot parse matrices: {exc}") from exc
    if transpose_first is None:
        transpose_first = bool(obj.get("transpose_first", False))
    if nonnegative is None:
        nonnegative = bool(obj.get("nonnegative", False))
    fam = MatrixFamily(tuple(mats), nonnegative=nonnegative)
    return fam.transpose() if transpose_first else fam


def load_family(source: str, **kwargs) -> MatrixFamily:
    """Load a family from a file path or from an inline JSON string."""
    if os.path.exists(source):
        with open(source) as fh:
            text = fh.read()
    else:
        text = source
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source!r} is neither a readable file nor valid JSON") from exc
    return family_from_json(obj, **kwargs)
