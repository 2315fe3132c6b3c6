"""Figure rendering for the swept-well condensate simulation data files."""

from .datafiles import FigureDataError, read_columns
from .figures import (
    FigureSpec,
    overlay_l2,
    render_all,
    render_fig1,
    render_fig2,
    render_fig3,
    render_fig4,
)

__version__ = "0.1.0"
