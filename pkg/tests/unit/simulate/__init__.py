"""Unit tests for :mod:`inhibhawkes.simulate`."""
