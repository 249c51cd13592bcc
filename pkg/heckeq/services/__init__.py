"""Exact q-series kernels, identity suites and report rendering."""
