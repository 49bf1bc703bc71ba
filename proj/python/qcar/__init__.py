"""Scenario-driven optimization of passive quarter-car suspensions.

Thin Python layer over the C++ core: quarter-car dynamics with asymmetric
damping, ISO 8608 road synthesis, frequency-weighted comfort metrics, and a
Cross-Entropy design optimizer.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
