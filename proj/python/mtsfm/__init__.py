"""MTSFM waveform design toolkit: synthesis, ambiguity analysis, mainlobe
characterization and constrained sidelobe optimization."""

from ._mtsfm import *  # noqa: F401,F403
from ._mtsfm import __version__  # noqa: F401
