"""Hot loops with a numba and a pure-numpy implementation each.

The public names in each submodule are bound to whichever backend
:mod:`hamspec._accel` selected.  The private ``_*_numba`` / ``_*_numpy``
functions stay importable so the two can be compared directly.
"""
