"""Shared helpers: exact rational sampling and mixture construction."""

from fractions import Fraction

import pytest

import ctxlab as cx


def rational(rng, den_max=12):
    den = rng.randint(1, den_max)
    return Fraction(rng.randint(0, den), den)


def mix(points, weights):
    """Exact convex combination of EdgeDistributions on one space."""
    total = sum(weights, Fraction(0))
    weights = [Fraction(w) / total for w in weights]
    space = points[0].space
    values = {
        e: sum((w * p.values[e] for w, p in zip(weights, points)), Fraction(0))
        for e in space.edge_ids
    }
    return cx.EdgeDistribution(space, values)


def random_mixture(rng, points, support=3, den_max=9):
    pick = [rng.choice(points) for _ in range(support)]
    weights = [Fraction(rng.randint(1, den_max)) for _ in pick]
    return mix(pick, weights)


def deterministic_points(scenario):
    return [a.to_distribution() for a in cx.deterministic_enumerate(scenario)]


@pytest.fixture(scope="session")
def chsh():
    return cx.cone(cx.circle(4))


@pytest.fixture(scope="session")
def one_cycle():
    return cx.cone(cx.circle(1))


@pytest.fixture(scope="session")
def triangle_scenario():
    return cx.classical_disk(3).scenario
