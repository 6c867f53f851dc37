"""Randomized cross-check of cube-query evaluation against a naive
brute-force group-by over the same facts."""
import random
import time

import pytest

from conftest import chain_dimension, make_cube
from iolap.mdcore import Atom, CubeQuery, eval_cube_query

import oracles

N_SCHEMAS = 200


def random_star(rng):
    """A small random star: 1-3 dimensions with chains of depth 1-3."""
    dims = []
    for d in range(rng.randint(1, 3)):
        depth = rng.randint(1, 3)
        level_names = [f"d{d}L{i}" for i in range(depth)]
        n_bottom = rng.randint(2, 5)
        rows = []
        for b in range(n_bottom):
            row = [f"d{d}m{b}"]
            for i in range(1, depth):
                row.append(f"d{d}g{i}_{rng.randint(0, max(1, n_bottom // 2) - 1)}")
            rows.append(tuple(row))
        # group members must be consistent per child: rows above already are,
        # one row per bottom member
        dims.append(chain_dimension(f"d{d}", level_names, rows))
    facts = []
    seen = set()
    for _ in range(rng.randint(1, 25)):
        coords = tuple(rng.choice(dim.bottom.members) for dim in dims)
        if coords in seen:
            continue
        seen.add(coords)
        facts.append((coords, (rng.uniform(-100, 100),)))
    cube = make_cube("facts", [(dim, dim.bottom.name) for dim in dims],
                     ["m"], facts)
    return dims, cube


def test_random_stars_match_brute_force():
    rng = random.Random(1234)
    start = time.time()
    for trial in range(N_SCHEMAS):
        dims, cube = random_star(rng)
        if len(cube) == 0:
            continue
        grouping = [(dim.name, rng.choice([lv.name for lv in dim.chain]))
                    for dim in dims]
        fn = rng.choice(["sum", "min", "max", "count", "avg"])
        # optional random equality selection on a random dimension level
        selection = None
        if rng.random() < 0.5:
            dim = rng.choice(dims)
            level = rng.choice([lv.name for lv in dim.chain])
            member = rng.choice(dim.level(level).members)
            selection = Atom(dim.name, level, "=", member)

        out = eval_cube_query(CubeQuery(cube, selection, grouping, [(fn, "m")]))

        # oracle: flatten the cube back to plain rows and brute-force it
        rows = []
        for cell in cube.cells:
            if selection is not None and not selection.evaluate(cube, cell):
                continue
            row = {dim.name: m for dim, m in zip(dims, cell.coordinates)}
            row["m"] = cell.measures["m"]
            rows.append(row)
        target = {d: l for d, l in grouping}

        def key_of(row):
            return tuple(dim.anc(dim.bottom.name, target[dim.name], row[dim.name])
                         for dim in dims)

        expected = oracles.brute_force_group_by(rows, key_of, fn, "m")
        got = {c.coordinates: c.measures["m"] for c in out.cells}
        assert set(got) == set(expected), f"trial {trial}: cell sets differ"
        for key, val in expected.items():
            if fn == "avg":
                assert got[key] == pytest.approx(val, rel=1e-9)
            else:
                assert got[key] == val, f"trial {trial}: {key}"
    assert time.time() - start < 30
