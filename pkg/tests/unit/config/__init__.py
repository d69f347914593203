"""Unit tests for :mod:`inhibhawkes.config`."""
