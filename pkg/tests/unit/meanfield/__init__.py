"""Unit tests for :mod:`inhibhawkes.meanfield`."""
