"""Unit tests for :mod:`inhibhawkes.utils`."""
