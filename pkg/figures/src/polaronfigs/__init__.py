"""Static figure rendering for the impurity-in-BEC simulation CSVs."""

from .spec import FigureSpec, SchemaError, KINDS, spec_from_manifest
from .render import render

__version__ = "0.1.0"
