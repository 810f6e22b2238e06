"""Constant-width bodies of revolution: profiles, volumes, meshes and the variational search."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401
