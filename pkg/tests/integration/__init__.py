"""Integration tests for :mod:`inhibhawkes`."""
