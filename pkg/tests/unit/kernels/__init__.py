"""Unit tests for :mod:`inhibhawkes.kernels`."""
