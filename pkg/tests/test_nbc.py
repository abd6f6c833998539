import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from risnga.optimizers import SpeciesPartition, nearest_better_clustering


def two_clusters(n=20):
    """Two groups of six: a centre plus five single-step variants each.

    Centres differ by 2 in every position (cycle-1 distance 2n); each
    variant is one step from its own centre. Fitness interleaves the two
    groups so the second centre ranks second overall.
    """
    a = np.zeros((6, n), dtype=np.int64)
    c = np.full((6, n), 2, dtype=np.int64)
    for k in range(1, 6):
        a[k, k] = 1
        c[k, k] = 3
    taus = np.concatenate([a, c])
    fitness = np.concatenate([10.0 - 2 * np.arange(6), 9.0 - 2 * np.arange(6)])
    return taus, fitness


def check_partition(part, fitness, n_min):
    n = len(fitness)
    members = np.concatenate(part.species)
    assert sorted(members.tolist()) == list(range(n))
    assert len(members) == n
    for k, (sp, seed) in enumerate(zip(part.species, part.seed_of)):
        assert seed in sp
        assert np.all(fitness[seed] >= fitness[sp])
        assert np.all(part.labels[sp] == k)
        if part.edges_cut > 0:
            assert len(sp) >= n_min
    assert part.n_species == part.edges_cut + 1


def test_two_clusters_hand_trace():
    taus, fitness = two_clusters()
    part = nearest_better_clustering(taus, fitness, n_min=5, phi=1.0, b=2)
    # the only long edge joins the second centre (index 6) to the first (index 0)
    assert part.leader[6] == 0 and part.edge_distance[6] == 40
    assert np.all(part.leader[1:6] == 0) and np.all(part.leader[7:] == 6)
    assert part.edge_distance[np.arange(12) != 6][1:].tolist() == [1.0] * 10
    assert part.edges_cut == 1
    assert [sorted(s.tolist()) for s in part.species] == [list(range(6)), list(range(6, 12))]
    assert part.seed_of == [0, 6]
    check_partition(part, fitness, 5)


def test_two_clusters_size_floor_blocks_cut():
    taus, fitness = two_clusters()
    part = nearest_better_clustering(taus, fitness, n_min=7, phi=1.0, b=2)
    assert part.edges_cut == 0
    assert part.n_species == 1
    assert part.seed_of == [0]


def test_identical_population_single_species():
    taus = np.ones((8, 5), dtype=np.int64)
    fitness = np.arange(8.0)
    part = nearest_better_clustering(taus, fitness, n_min=1, phi=1.0, b=2)
    assert part.n_species == 1 and part.edges_cut == 0
    assert part.seed_of == [7]


def test_fitness_ties_break_by_index():
    taus = np.array([[0, 0], [0, 1], [1, 1]])
    part = nearest_better_clustering(taus, np.zeros(3), n_min=1, phi=1.0, b=1)
    assert part.seed_of == [0]
    assert part.leader.tolist() == [-1, 0, 1]
    reversed_rank = nearest_better_clustering(taus[::-1], np.zeros(3), n_min=1, phi=1.0, b=1)
    assert reversed_rank.leader.tolist() == [-1, 0, 1]


def test_nearest_better_distance_ties_break_by_index():
    # individual 2 is at distance 1 from both 0 and 1
    taus = np.array([[0, 0, 0], [1, 1, 0], [1, 0, 0]])
    part = nearest_better_clustering(taus, np.array([3.0, 2.0, 1.0]), n_min=1, phi=1.0, b=1)
    assert part.leader[2] == 0


def test_single_individual():
    part = nearest_better_clustering(np.zeros((1, 3), dtype=np.int64), [1.0], 5, 1.0, 2)
    assert part.n_species == 1 and part.edges_cut == 0


def test_single_partition_helper():
    part = SpeciesPartition.single([1.0, 3.0, 2.0])
    assert part.seed_of == [1] and part.n_species == 1


@st.composite
def populations(draw):
    b = draw(st.integers(1, 3))
    n = draw(st.integers(2, 30))
    length = draw(st.integers(1, 12))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    taus = rng.integers(2**b, size=(n, length))
    fitness = rng.integers(0, draw(st.integers(1, 50)), size=n).astype(float)
    return taus, fitness, b


@given(populations(), st.integers(1, 12), st.floats(0, 2))
@settings(max_examples=200)
def test_partition_invariants(pop, n_min, phi):
    taus, fitness, b = pop
    part = nearest_better_clustering(taus, fitness, n_min, phi, b)
    check_partition(part, fitness, n_min)
    # spanning tree before cuts: one root, every other node has a leader
    assert np.count_nonzero(part.leader >= 0) == len(fitness) - 1
    ranked_better = fitness[part.leader[part.leader >= 0]] >= fitness[part.leader >= 0]
    assert np.all(ranked_better)


@pytest.mark.parametrize("phi", [0.0, 0.5, 1.0])
def test_larger_floor_never_adds_species(phi):
    rng = np.random.default_rng(1)
    taus = rng.integers(4, size=(40, 30))
    fitness = rng.standard_normal(40)
    counts = [nearest_better_clustering(taus, fitness, m, phi, 2).n_species for m in range(1, 21)]
    assert counts[-1] <= counts[0]
    assert all(c * m <= 40 for c, m in zip(counts, range(1, 21)) if c > 1)
