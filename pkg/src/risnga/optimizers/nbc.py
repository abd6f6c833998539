"""Nearest-better clustering with a minimum species size."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..distance import pairwise_cycle_distances


@dataclass
class SpeciesPartition:
    """Disjoint species covering a population.

    Attributes
    ----------
    species : list of ndarray
        Population indices of each species, best species first.
    seed_of : list of int
        Best member (tree root) of each species.
    edges_cut : int
        Number of spanning-tree edges removed.
    labels : ndarray
        Species number of every individual.
    leader : ndarray
        Nearest-better neighbor of every individual in the uncut tree (-1 for the best).
    edge_distance : ndarray
        Distance to the leader (0 for the best).
    """

    species: list
    seed_of: list
    edges_cut: int
    labels: np.ndarray
    leader: np.ndarray = field(default=None, repr=False)
    edge_distance: np.ndarray = field(default=None, repr=False)

    @property
    def n_species(self) -> int:
        return len(self.species)

    @classmethod
    def single(cls, fitness) -> "SpeciesPartition":
        n = len(fitness)
        best = int(_rank_order(np.asarray(fitness))[0])
        return cls([np.arange(n)], [best], 0, np.zeros(n, dtype=np.int64))


def min_species_size(t: int, t_max: int, base: float = 5, span: float = 5) -> int:
    """Species-size floor ``base + (t / t_max) * span`` rounded half-up.

    ``t`` beyond ``t_max`` is clamped.
    """
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    t = min(max(t, 0), t_max)
    return int(np.floor(base + t / t_max * span + 0.5))


def _rank_order(fitness: np.ndarray) -> np.ndarray:
    # descending fitness; ties go to the lower population index
    return np.lexsort((np.arange(len(fitness)), -fitness))


def nearest_better_clustering(taus, fitness, n_min: int, phi: float, b: int) -> SpeciesPartition:
    """Partition a population into species by nearest-better clustering.

    Every individual except the best is linked to its nearest strictly
    better-ranked individual under the cycle-1 distance, giving a spanning
    tree. Edges longer than ``phi`` times the mean edge length are then
    examined from longest to shortest and cut only if both resulting parts
    keep at least ``n_min`` members.
    """
    taus = np.asarray(taus)
    fitness = np.asarray(fitness, dtype=float)
    n = len(fitness)
    order = _rank_order(fitness)
    if n == 1:
        return SpeciesPartition([np.arange(1)], [0], 0, np.zeros(1, dtype=np.int64),
                                np.array([-1]), np.zeros(1))

    dist = pairwise_cycle_distances(taus, b, q=1)
    leader = np.full(n, -1, dtype=np.int64)
    edge_distance = np.zeros(n)
    for r in range(1, n):
        i = order[r]
        better = order[:r]
        d = dist[i, better]
        nearest = better[d == d.min()]
        leader[i] = nearest.min()
        edge_distance[i] = d.min()

    followers = order[1:]
    mu = edge_distance[followers].mean()

    # subtree sizes; leaders always precede their followers in rank order
    follow = np.ones(n, dtype=np.int64)
    for i in followers[::-1]:
        follow[leader[i]] += follow[i]

    is_root = np.zeros(n, dtype=bool)
    is_root[order[0]] = True
    edges_cut = 0
    for e_f in followers[np.argsort(-edge_distance[followers], kind="stable")]:
        if not edge_distance[e_f] > phi * mu:
            break
        path = []
        s = leader[e_f]
        while True:
            path.append(s)
            if is_root[s]:
                break
            s = leader[s]
        e_r = path[-1]
        if follow[e_f] >= n_min and follow[e_r] - follow[e_f] >= n_min:
            is_root[e_f] = True
            edges_cut += 1
            for s in path:
                follow[s] -= follow[e_f]

    labels = np.full(n, -1, dtype=np.int64)
    seeds = []
    for i in order:
        if is_root[i]:
            labels[i] = len(seeds)
            seeds.append(int(i))
        else:
            labels[i] = labels[leader[i]]
    species = [np.flatnonzero(labels == s) for s in range(len(seeds))]
    return SpeciesPartition(species, seeds, edges_cut, labels, leader, edge_distance)
