"""Unit tests for :mod:`inhibhawkes.longtime`."""
