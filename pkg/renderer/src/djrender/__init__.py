"""Static figure panels from djtransmon study CSV files."""

from .panels import PANELS, PanelSpec
from .render import RenderError, build_figure, load_csv, render

__version__ = "0.1.0"
