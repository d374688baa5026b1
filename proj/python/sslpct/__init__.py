"""Semi-supervised predictive clustering trees.

Thin Python layer over the C++ core; see the README for the data format
and the meaning of the w parameter.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # running against a bare build tree
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__doc__ = _core_doc or __doc__
