"""Optical-fibre memory channel: spectra, decompositions and capacities."""

try:
    from ._dimfibre import *  # noqa: F401,F403
    from ._dimfibre import __version__  # noqa: F401
except ImportError:  # in-tree builds leave the extension at top level
    from _dimfibre import *  # noqa: F401,F403
    from _dimfibre import __version__  # noqa: F401
