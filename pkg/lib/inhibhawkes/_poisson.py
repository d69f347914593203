"""
Counter-based Poisson random measures driving the neurons.

Each neuron i carries a Poisson measure of unit intensity on
[0, inf) x [0, inf): an atom (t, z) becomes a spike of neuron i when z lies
below the neuron's intensity at time t.

The measures of one population are stored as "cells": a cell covers a mark
band [k*M, (k+1)*M) and a time block [j*L, (j+1)*L).  Its atoms are drawn
from a Philox stream keyed by (seed, population, k, j), and each atom is
given a uniformly chosen neuron of the population.  By the marking theorem
this is exactly one independent Poisson measure per neuron.  Any cell can
be regenerated on demand, so independent runs (a particle system and its
mean-field limit) see identical atoms without storing them.

"""
import math
from bisect import bisect_right
from typing import List, Tuple

import numpy as np

from .kernels import ModelSpec

#: the population indices used in cell keys
POPULATION_A = 0
POPULATION_B = 1

# Target number of atoms per cell.
_ATOMS_PER_CELL = 1024.0

_MAX_SEED = 2**64


def check_seed(seed: int) -> int:
    """Check that a seed is an unsigned 64-bit integer, and return it."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        msg = f"seed must be an integer, got {seed!r}."
        raise TypeError(msg)
    seed = int(seed)
    if not 0 <= seed < _MAX_SEED:
        msg = f"seed must lie in [0, 2**64), got {seed}."
        raise ValueError(msg)
    return seed


def band_height(model: ModelSpec, population: int) -> float:
    """
    Mark-band height used for a population.

    Depends on the model only, so that every run of the same model reads
    the same cells.
    """
    mu = model.mu_A if population == POPULATION_A else model.mu_B
    return max(mu, 1.0)


class PoissonCells:
    """
    The random measures of one population, addressed by (band, block).

    Parameters
    ----------
    seed : int
        the run seed
    population : int
        :data:`POPULATION_A` or :data:`POPULATION_B`
    n_neurons : int
        number of neurons in the population
    height : float
        mark band height M
    """

    def __init__(
        self, seed: int, population: int, n_neurons: int, height: float
    ):  # noqa: D107
        self.seed = check_seed(seed)
        self.population = population
        self.n_neurons = n_neurons
        self.height = float(height)
        #: time block length L, about _ATOMS_PER_CELL atoms per cell
        self.block_length = _ATOMS_PER_CELL / (n_neurons * self.height)

    def __repr__(self):  # noqa: D105
        return (
            f"PoissonCells(seed={self.seed}, population={self.population}, "
            f"n_neurons={self.n_neurons}, height={self.height!r})"
        )

    def cell(
        self, band: int, block: int
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        The atoms of one cell, in increasing time order.

        Returns
        -------
        times, neurons, marks : ndarray
            atom times, population-local neuron indices, and marks z
        """
        sequence = np.random.SeedSequence(
            self.seed, spawn_key=(self.population, band, block)
        )
        rng = np.random.Generator(np.random.Philox(sequence))
        length = self.block_length
        count = rng.poisson(self.n_neurons * self.height * length)
        times = block * length + length * np.sort(rng.random(count))
        neurons = rng.integers(0, self.n_neurons, size=count)
        marks = self.height * (band + rng.random(count))
        return times, neurons, marks

    def block_of(self, t: float) -> int:
        """Index of the time block containing t."""
        return int(math.floor(t / self.block_length))

    def atoms_below(
        self, n_bands: int, T: float
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        All atoms of the first ``n_bands`` bands with time in [0, T].

        Results are concatenated in (band, block) order, *not* time-sorted.
        """
        parts: List[Tuple[np.ndarray, np.ndarray, np.ndarray]] = []
        n_blocks = self.block_of(T) + 1
        for band in range(n_bands):
            for block in range(n_blocks):
                parts.append(self.cell(band, block))
        if not parts:
            empty = np.zeros(0)
            return empty, np.zeros(0, dtype=np.int64), empty
        times, neurons, marks = (
            np.concatenate(arrays) for arrays in zip(*parts)
        )
        keep = times <= T
        return times[keep], neurons[keep], marks[keep]


class BandCursor:
    """
    Sequential reader of the atoms of one mark band, across time blocks.

    Cell content is converted to Python lists, since the simulation loop
    reads it one atom at a time.
    """

    def __init__(self, cells: PoissonCells, band: int, T: float):  # noqa: D107
        self.cells = cells
        self.band = band
        self.T = T
        self._last_block = cells.block_of(T)
        self._block = -1
        self._times: List[float] = []
        self._neurons: List[int] = []
        self._marks: List[float] = []
        self._index = 0

    def _load(self, block: int) -> None:
        times, neurons, marks = self.cells.cell(self.band, block)
        self._block = block
        self._times = times.tolist()
        self._neurons = neurons.tolist()
        self._marks = marks.tolist()
        self._index = 0

    def _skip_empty(self) -> None:
        while (
            self._index >= len(self._times)
            and self._block < self._last_block
        ):
            self._load(self._block + 1)

    def seek(self, t: float) -> None:
        """Position on the first atom strictly after time t."""
        block = min(self.cells.block_of(t), self._last_block)
        if block != self._block:
            self._load(block)
        if self._times:
            self._index = bisect_right(self._times, t)
        self._skip_empty()

    def peek(self) -> float:
        """Time of the current atom, or inf when there are none left."""
        if self._index < len(self._times):
            return self._times[self._index]
        return math.inf

    def pop(self) -> Tuple[float, int, float]:
        """Return the current atom (time, neuron, mark) and advance."""
        index = self._index
        atom = (
            self._times[index],
            self._neurons[index],
            self._marks[index],
        )
        self._index = index + 1
        self._skip_empty()
        return atom
