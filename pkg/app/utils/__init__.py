"""
Utils package
"""
from .csv_export import CSV_COLUMNS, build_rows, marker_for, write_csv

__all__ = ["CSV_COLUMNS", "build_rows", "marker_for", "write_csv"]
