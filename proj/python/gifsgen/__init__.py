"""Attractor images of generalized iterated function systems.

Thin Python layer over the compiled ``_gifs`` extension.  In an installed
wheel the extension lives inside this package; in a build tree it sits on
``PYTHONPATH`` next to the package, so both import forms are tried.
"""

try:
    from ._gifs import *  # noqa: F401,F403
    from ._gifs import __version__  # noqa: F401
except ImportError:  # build-tree layout
    from _gifs import *  # noqa: F401,F403
    from _gifs import __version__  # noqa: F401
