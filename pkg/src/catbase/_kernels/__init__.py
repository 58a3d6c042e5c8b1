"""Hot-kernel backend selection.

Two interchangeable implementations of the bitmask kernels exist:

* ``pure``   - plain Python, always available, the readable reference;
* ``_speed`` - Cython extension compiled at install time.

The compiled backend is picked automatically when importable. Set
``CATBASE_BACKEND=py`` (or ``c``) to force one; forcing ``c`` raises if the
extension is missing. All kernels are pure functions of their arguments and
produce bit-identical results on both backends.
"""

from __future__ import annotations

import os


def load_backend(name: str):
    """Import and return a kernel module by name ("pure" or "c")."""
    if name in ("py", "pure", "python"):
        from . import pure

        return pure
    if name in ("c", "cy", "speed", "compiled"):
        from . import _speed

        return _speed
    raise ValueError(f"unknown backend {name!r}")


_forced = os.environ.get("CATBASE_BACKEND")
if _forced:
    _impl = load_backend(_forced)
else:
    try:
        from . import _speed as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import pure as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND

covers = _impl.covers
is_singular = _impl.is_singular
singleton_singular_mask = _impl.singleton_singular_mask
is_baire = _impl.is_baire
classify_tables = _impl.classify_tables
cluster_points = _impl.cluster_points
cluster_table = _impl.cluster_table
fundamental_table = _impl.fundamental_table
axiom2_scan = _impl.axiom2_scan
topology_closure_witness = _impl.topology_closure_witness
interior_of = _impl.interior_of
nwd_singleton_mask = _impl.nwd_singleton_mask
topo_baire_table = _impl.topo_baire_table
tau_opens = _impl.tau_opens
