"""Figure regeneration from pxp-ergotropy CSV outputs (no physics inside)."""

__version__ = "0.1.0"

from .render import FIGURE_IDS, SchemaError, render
