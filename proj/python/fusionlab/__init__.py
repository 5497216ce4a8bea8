"""Fusion systems of finite groups, twisted group cohomology and stable elements."""

try:
    from ._fusionlab import *  # noqa: F401,F403  (installed layout)
    from ._fusionlab import __version__  # noqa: F401
except ImportError:  # development layout: extension on PYTHONPATH
    from _fusionlab import *  # noqa: F401,F403
    from _fusionlab import __version__  # noqa: F401
