"""Unit tests for :mod:`inhibhawkes.textio`."""
