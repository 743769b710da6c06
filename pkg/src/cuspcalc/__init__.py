"""Exact combinatorics of weighted chains, cusp resolutions and bicuspidal curve data."""

from .chains import *  # noqa: F401,F403
from .graphs import *  # noqa: F401,F403
from .cusps import *  # noqa: F401,F403
from .classify import *  # noqa: F401,F403

__version__ = "0.1.0"
