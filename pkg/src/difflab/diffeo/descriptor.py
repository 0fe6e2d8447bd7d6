"""JSON descriptors for the primitive diffeomorphisms.

``{"manifold": "interval" | "circle", "k": k, "log_derivative": <function
descriptor>, "rotation_offset": r}``.  Rigid maps carry an empty
log-derivative.  Compositions and inverses are built in code and have no
descriptor.
"""

from __future__ import annotations

from ..realfn.descriptor import from_descriptor, to_descriptor
from .core import Diffeo, ExpIntegralDiffeo, RigidMap, from_log_derivative
from .manifold import Manifold


def diffeo_to_descriptor(f: Diffeo) -> dict:
    if isinstance(f, RigidMap):
        return {"manifold": f.manifold.value, "k": f.k, "log_derivative": {}, "rotation_offset": f.shift}
    if isinstance(f, ExpIntegralDiffeo):
        return {
            "manifold": f.manifold.value,
            "k": f.k,
            "log_derivative": to_descriptor(f.G),
            "rotation_offset": f.offset,
        }
    raise TypeError(f"{type(f).__name__} has no descriptor; only primitive maps serialize")


def diffeo_from_descriptor(d: dict) -> Diffeo:
    manifold = Manifold.parse(d["manifold"])
    k = int(d.get("k", 1))
    offset = float(d.get("rotation_offset", 0.0))
    if not d.get("log_derivative"):
        return RigidMap(manifold, k, offset)
    return from_log_derivative(from_descriptor(d["log_derivative"]), manifold, offset, k)
