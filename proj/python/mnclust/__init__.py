"""Clustering of multinomial count sequences with zero-aware model selection.

Thin wrapper around the compiled extension; see the project README for the
matching C++ API and the command-line tool.
"""

from mnclust._core import *  # noqa: F401,F403
from mnclust._core import __version__  # noqa: F401
