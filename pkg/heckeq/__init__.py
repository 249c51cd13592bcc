"""Exact q-series: theta functions, Appell-Lerch sums, Hecke double-sums and string functions."""

__version__ = "0.1.0"
