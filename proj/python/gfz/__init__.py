"""Dual-route graph filters: spatial closed forms f(A~) X and spectral
responses U g(Lambda) U^T X, with approximation and diagnostic tooling."""

try:
    from ._gfz import *  # noqa: F401,F403
    from ._gfz import __doc__ as _core_doc  # noqa: F401
except ImportError:  # in-tree test runs put the extension on sys.path directly
    from _gfz import *  # noqa: F401,F403

__version__ = "0.1.0"
