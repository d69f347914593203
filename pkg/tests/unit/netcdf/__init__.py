"""Unit tests for :mod:`inhibhawkes.netcdf4`."""
