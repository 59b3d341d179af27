"""Figures from lattice-rule benchmark CSV files.

Reads the benchmark wire format (one header row, comma-separated values)
and renders the two experiment figures: relative-frequency histograms of
the log10 worst-case error per estimator, and log-log variance-versus-
budget panels with least-squares slope annotations.
"""

from .figures import (
    HistPanel,
    PlotSpec,
    SeriesFit,
    convergence_table,
    fit_series,
    freedman_diaconis_width,
    histogram_table,
    plot_convergence,
    plot_histogram,
    series_label,
    variance_by_m,
)
from .records import (
    CSV_HEADER,
    ESTIMATOR_ORDER,
    Record,
    check_estimators,
    filter_records,
    present_estimators,
    read_records,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "ESTIMATOR_ORDER",
    "HistPanel",
    "PlotSpec",
    "Record",
    "SeriesFit",
    "check_estimators",
    "convergence_table",
    "filter_records",
    "fit_series",
    "freedman_diaconis_width",
    "histogram_table",
    "plot_convergence",
    "plot_histogram",
    "present_estimators",
    "read_records",
    "series_label",
    "variance_by_m",
]
