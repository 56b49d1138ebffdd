from __future__ import annotations

import pytest

from ctwalk.graphs import FAMILY_LABELS, from_edge_list, gen_family, laplacian
from ctwalk.spectral import eigendecompose


@pytest.fixture(scope="session")
def family_graphs():
    return {label: gen_family(label) for label in FAMILY_LABELS}


@pytest.fixture(scope="session")
def family_spectra(family_graphs):
    return {label: eigendecompose(laplacian(g)) for label, g in family_graphs.items()}


@pytest.fixture(scope="session")
def k2_spectrum():
    return eigendecompose(laplacian(from_edge_list(2, [(1, 2)])))
