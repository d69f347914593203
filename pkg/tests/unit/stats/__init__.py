"""Unit tests for :mod:`inhibhawkes.stats`."""
