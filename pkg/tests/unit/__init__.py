"""Unit tests for :mod:`inhibhawkes`."""
