import pathlib

import pytest

from iolap.mdcore import Catalog, Cell, Cube, Dimension, Level

FIXTURES = pathlib.Path(__file__).parent / "fixtures"
CATALOG_DIR = FIXTURES / "catalog"


@pytest.fixture(scope="session")
def catalog():
    return Catalog.load_dir(CATALOG_DIR)


@pytest.fixture(scope="session")
def work_class(catalog):
    return catalog.dimensions["work_class"]


@pytest.fixture(scope="session")
def education(catalog):
    return catalog.dimensions["education"]


@pytest.fixture(scope="session")
def co(catalog):
    return catalog.cubes["CO"]


@pytest.fixture(scope="session")
def cn(catalog):
    return catalog.cubes["CN"]


@pytest.fixture(scope="session")
def oecd(catalog):
    return catalog.cubes["OECD"]


def chain_dimension(name, level_names, parent_rows):
    """Build a Dimension directly from rows [(m0, m1, ..., m_top)]."""
    members = [[] for _ in level_names]
    seen = [set() for _ in level_names]
    parent_maps = [dict() for _ in range(len(level_names) - 1)]
    for row in parent_rows:
        for i, v in enumerate(row):
            if v not in seen[i]:
                seen[i].add(v)
                members[i].append(v)
        for i in range(len(row) - 1):
            parent_maps[i][row[i]] = row[i + 1]
    levels = [Level(n, name, i, members[i]) for i, n in enumerate(level_names)]
    return Dimension(name, levels, parent_maps)


def make_cube(name, axes, measure_names, rows):
    """rows: [(coordinates tuple, values tuple)]."""
    cells = [Cell(tuple(coords), dict(zip(measure_names, values)))
             for coords, values in rows]
    return Cube(name, axes, measure_names, cells)
