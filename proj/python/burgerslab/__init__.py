"""Exact weak solutions of Burgers' equation with controlled entropy
production, and numerical verification of the estimates they satisfy."""

try:
    from burgerslab._core import *  # noqa: F401,F403
    from burgerslab import _core as core  # noqa: F401
except ImportError:
    # build-tree layout: the extension sits next to the package on sys.path
    from _core import *  # noqa: F401,F403
    import _core as core  # noqa: F401

__all__ = [name for name in dir(core) if not name.startswith("_")]
__version__ = "0.1.0"
