"""Online target-event localization: confidence-scored streaming with
hysteresis thresholds and bidirectional Fibonacci traversal."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
