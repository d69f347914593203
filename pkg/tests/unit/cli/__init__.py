"""Unit tests for :mod:`inhibhawkes.cli`."""
