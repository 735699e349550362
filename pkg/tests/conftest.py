import numpy as np
import pytest

from teichform.fuchsian import genus2_octagon
from teichform.geograph import from_closed_geodesic, from_multicurve


@pytest.fixture(scope="session")
def G():
    return genus2_octagon()


@pytest.fixture(scope="session")
def curves(G):
    """Weight-1 closed geodesic graphs for the four generators."""
    return {w: from_closed_geodesic(G, w, 1.0, 2) for w in ("a1", "b1", "a2", "b2")}


@pytest.fixture(scope="session")
def cross_graph(G):
    return from_multicurve(G, [("a1", 1.0), ("b1", 2.0)])


def random_isometry(rng):
    from teichform.mink import Geodesic, normalize_spacelike, rotation_about, translate_along, ORIGIN

    x = normalize_spacelike(np.array([*rng.normal(size=2), 0.0]))
    return rotation_about(ORIGIN, rng.uniform(0, 2 * np.pi)) @ translate_along(Geodesic(x), rng.uniform(-2, 2))


def random_hpoint(rng, scale=1.5):
    from teichform.mink import point_from_disk

    z = rng.normal(size=2)
    r = np.tanh(rng.uniform(0, scale) / 2) / np.linalg.norm(z)
    return point_from_disk(z * r)
