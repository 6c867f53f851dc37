"""Multidimensional core: dimension level chains, cubes, selection conditions,
cube-query evaluation, derived-measure extension, proxy relations between
cubes, and CSV/JSON ingestion into a catalog."""
from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EngineError, ExecError, PlanError

ALL_LEVEL = "ALL"
ALL_MEMBER = "all"


class Level:
    """A level of a dimension: an ordered member domain plus optional
    per-member properties. Member order is ingestion order."""

    def __init__(self, name, dimension, depth, members, properties=None):
        self.name = name
        self.dimension = dimension
        self.depth = depth
        self.members = list(members)
        self.index = {}
        for m in self.members:
            if m in self.index:
                raise PlanError(f"duplicate member {m!r} in level {dimension}.{name}")
            self.index[m] = len(self.index)
        self.properties = dict(properties or {})

    def __contains__(self, member):
        return member in self.index

    def __repr__(self):
        return f"Level({self.dimension}.{self.name})"


class Dimension:
    """A chain of levels, most detailed first, topped by the implicit ALL
    level with the single member `all`. Ancestor maps between consecutive
    levels are stored explicitly; longer hops compose them."""

    def __init__(self, name, levels, parent_maps):
        # levels: detailed -> coarse, not including ALL; parent_maps[i] maps
        # members of levels[i] to members of levels[i+1].
        self.name = name
        self.chain = list(levels)
        top = self.chain[-1]
        all_level = Level(ALL_LEVEL, name, top.depth + 1, [ALL_MEMBER])
        self.chain.append(all_level)
        self.levels = {lv.name: lv for lv in self.chain}
        if len(self.levels) != len(self.chain):
            raise PlanError(f"duplicate level name in dimension {name}")
        self._up = list(parent_maps) + [{m: ALL_MEMBER for m in top.members}]

    @property
    def bottom(self):
        return self.chain[0]

    def level(self, name):
        try:
            return self.levels[name]
        except KeyError:
            raise PlanError(f"unknown level {self.name}.{name}") from None

    def depth(self, level_name):
        return self.level(level_name).depth

    def comparable(self, a, b):
        return a in self.levels and b in self.levels

    def anc(self, from_level, to_level, member):
        """Unique ancestor of `member` from from_level up to to_level."""
        lo, hi = self.level(from_level), self.level(to_level)
        if lo.depth > hi.depth:
            raise PlanError(
                f"cannot take ancestor from {self.name}.{from_level} "
                f"to finer level {self.name}.{to_level}")
        if member not in lo:
            raise ExecError(f"unknown member {member!r} of {self.name}.{from_level}")
        m = member
        for depth in range(lo.depth, hi.depth):
            m = self._up[depth][m]
        return m

    def desc(self, from_level, to_level, member):
        """All members of to_level whose ancestor at from_level is `member`
        (the inverse image of anc); to_level must be the finer one."""
        hi, lo = self.level(from_level), self.level(to_level)
        if lo.depth > hi.depth:
            raise PlanError(
                f"cannot take descendants from {self.name}.{from_level} "
                f"to coarser level {self.name}.{to_level}")
        if member not in hi:
            raise ExecError(f"unknown member {member!r} of {self.name}.{from_level}")
        return [m for m in lo.members if self.anc(to_level, from_level, m) == member]

    def order_index(self, level_name, member):
        lv = self.level(level_name)
        if member not in lv:
            raise ExecError(f"unknown member {member!r} of {self.name}.{level_name}")
        return lv.index[member]


def load_dimension(definition, rows):
    """Build a Dimension from its definition document and a hierarchy table.

    definition: {"name": ..., "levels": [detailed, ..., coarse]}; rows are
    dicts with one column per level. Each row gives one bottom member and its
    ancestors; coarser-level members are deduplicated in first-seen order.
    """
    name = definition["name"]
    level_names = list(definition["levels"])
    if not level_names:
        raise PlanError(f"dimension {name} has no levels")
    members = [[] for _ in level_names]
    seen = [set() for _ in level_names]
    parent_maps = [dict() for _ in range(len(level_names) - 1)]
    for row in rows:
        try:
            values = [row[c] for c in level_names]
        except KeyError as exc:
            raise PlanError(f"dimension {name}: missing column {exc}") from None
        for i, v in enumerate(values):
            if v not in seen[i]:
                seen[i].add(v)
                members[i].append(v)
        for i in range(len(level_names) - 1):
            child, parent = values[i], values[i + 1]
            prev = parent_maps[i].get(child)
            if prev is not None and prev != parent:
                raise PlanError(
                    f"dimension {name}: member {child!r} of {level_names[i]} "
                    f"has two parents ({prev!r} and {parent!r})")
            parent_maps[i][child] = parent
    if not members[0]:
        raise PlanError(f"dimension {name}: empty hierarchy table")
    # one row per bottom member; a repeated bottom row is a duplicate member
    if len(members[0]) != len(rows):
        counted = {}
        for r in rows:
            v = r[level_names[0]]
            counted[v] = counted.get(v, 0) + 1
        dupes = sorted(v for v, c in counted.items() if c > 1)
        raise PlanError(f"dimension {name}: duplicate bottom member(s) {dupes}")
    levels = [Level(n, name, i, members[i]) for i, n in enumerate(level_names)]
    # dangling parents cannot occur with this table format (every parent cell
    # defines the member), but members shared between two levels can:
    domain_union = set()
    for lv in levels:
        overlap = domain_union & set(lv.members)
        if overlap:
            raise PlanError(
                f"dimension {name}: member(s) {sorted(overlap)} appear in two levels")
        domain_union |= set(lv.members)
    return Dimension(name, levels, parent_maps)


@dataclass(frozen=True)
class Cell:
    coordinates: tuple
    measures: dict

    def __getitem__(self, measure):
        return self.measures[measure]


class Cube:
    """A named set of cells under one level per dimension plus measures.
    Coordinates functionally determine measures; cells are kept in canonical
    (lexicographic coordinate) order."""

    def __init__(self, name, axes, measures, cells, validate=True,
                 provenance=None, loose_members=()):
        # axes: list of (Dimension, level_name)
        self.name = name
        self.axes = list(axes)
        self.measures = list(measures)
        self.provenance = provenance
        self.cells = sorted(cells, key=lambda c: c.coordinates)
        self.index = {}
        for cell in self.cells:
            if len(cell.coordinates) != len(self.axes):
                raise ExecError(
                    f"cube {name}: cell arity {len(cell.coordinates)} != "
                    f"{len(self.axes)} dimensions")
            if cell.coordinates in self.index:
                raise ExecError(f"cube {name}: duplicate coordinates {cell.coordinates}")
            self.index[cell.coordinates] = cell
            if validate:
                for (dim, level_name), member in zip(self.axes, cell.coordinates):
                    if member in loose_members:
                        continue
                    if member not in dim.level(level_name):
                        raise ExecError(
                            f"cube {name}: member {member!r} not in "
                            f"{dim.name}.{level_name}")

    def __len__(self):
        return len(self.cells)

    def axis_for(self, dim_name):
        for i, (dim, level_name) in enumerate(self.axes):
            if dim.name == dim_name:
                return i, dim, level_name
        raise PlanError(f"cube {self.name} has no dimension {dim_name}")

    def cell(self, coordinates):
        return self.index.get(tuple(coordinates))

    def values(self, measure):
        if measure not in self.measures:
            raise PlanError(f"cube {self.name} has no measure {measure}")
        return [c.measures[measure] for c in self.cells]

    def is_detailed(self):
        return all(level_name == dim.bottom.name for dim, level_name in self.axes)

    def schema(self):
        return [(dim.name, level_name) for dim, level_name in self.axes]

    def filter(self, condition, name=None):
        if condition is None:
            return self
        cells = [c for c in self.cells if condition.evaluate(self, c)]
        return Cube(name or self.name, self.axes, self.measures, cells,
                    validate=False, provenance=self.provenance)

    def to_json(self):
        return {
            "name": self.name,
            "schema": [{"dimension": d, "level": l} for d, l in self.schema()],
            "measures": self.measures,
            "cells": [{"coordinates": list(c.coordinates),
                       "measures": {m: c.measures[m] for m in self.measures}}
                      for c in self.cells],
        }

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow([d for d, _ in self.schema()] + self.measures)
        for cell in self.cells:
            writer.writerow(list(cell.coordinates) +
                            [cell.measures[m] for m in self.measures])
        return buf.getvalue()


# ---------------------------------------------------------------------------
# Selection conditions

class Condition:
    def evaluate(self, cube, cell):
        raise NotImplementedError


@dataclass
class TrueCond(Condition):
    def evaluate(self, cube, cell):
        return True


@dataclass
class FalseCond(Condition):
    def evaluate(self, cube, cell):
        return False


@dataclass
class Atom(Condition):
    dimension: str
    level: str
    op: str
    value: str

    def evaluate(self, cube, cell):
        i, dim, cube_level = cube.axis_for(self.dimension)
        member = cell.coordinates[i]
        atom_depth = dim.depth(self.level)
        cube_depth = dim.depth(cube_level)
        if atom_depth < cube_depth:
            raise PlanError(
                f"condition on {self.dimension}.{self.level} is finer than the "
                f"cube's level {cube_level}")
        if atom_depth > cube_depth:
            member = dim.anc(cube_level, self.level, member)
        if self.op == "=":
            return member == self.value
        if self.op == "!=":
            return member != self.value
        # Ordering comparisons use the level's member order.
        a = dim.order_index(self.level, member)
        b = dim.order_index(self.level, self.value)
        return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[self.op]


@dataclass
class And(Condition):
    left: Condition
    right: Condition

    def evaluate(self, cube, cell):
        return self.left.evaluate(cube, cell) and self.right.evaluate(cube, cell)


@dataclass
class Or(Condition):
    left: Condition
    right: Condition

    def evaluate(self, cube, cell):
        return self.left.evaluate(cube, cell) or self.right.evaluate(cube, cell)


@dataclass
class Not(Condition):
    operand: Condition

    def evaluate(self, cube, cell):
        return not self.operand.evaluate(cube, cell)


def eval_selection(cube, condition, name=None):
    return cube.filter(condition, name=name)


# ---------------------------------------------------------------------------
# Cube queries

AGGREGATES = ("sum", "min", "max", "count", "avg")


@dataclass
class CubeQuery:
    base: Cube
    selection: Condition
    grouping: list  # [(dim_name, level_name)] covering every base dimension
    aggregates: list  # [(fn, measure)]

    def output_measure_names(self):
        names = []
        measures = [m for _, m in self.aggregates]
        for fn, m in self.aggregates:
            names.append(m if measures.count(m) == 1 else f"{m}_{fn}")
        return names

    def validate(self):
        base_dims = {dim.name for dim, _ in self.base.axes}
        group_dims = {d for d, _ in self.grouping}
        if group_dims != base_dims:
            raise PlanError(
                f"grouping must name every dimension of {self.base.name} "
                f"exactly once (got {sorted(group_dims)}, "
                f"need {sorted(base_dims)})")
        for dim_name, level_name in self.grouping:
            _, dim, base_level = self.base.axis_for(dim_name)
            if dim.depth(level_name) < dim.depth(base_level):
                raise PlanError(
                    f"grouping level {dim_name}.{level_name} is finer than the "
                    f"base level {base_level}")
        for fn, m in self.aggregates:
            if fn not in AGGREGATES:
                raise PlanError(f"unknown aggregate {fn}")
            if m not in self.base.measures:
                raise PlanError(f"base cube has no measure {m}")


def eval_cube_query(query, name=None):
    """GROUP BY semantics: one output cell per nonempty group; empty groups
    are omitted."""
    query.validate()
    base = query.base
    grouping = {d: l for d, l in query.grouping}
    axes = []
    ups = []
    for dim, base_level in base.axes:
        target = grouping[dim.name]
        axes.append((dim, target))
        ups.append((dim, base_level, target))
    groups = {}
    for cell in base.cells:
        if query.selection is not None and not query.selection.evaluate(base, cell):
            continue
        key = tuple(dim.anc(base_level, target, member)
                    for (dim, base_level, target), member
                    in zip(ups, cell.coordinates))
        groups.setdefault(key, []).append(cell)
    out_names = query.output_measure_names()
    cells = []
    for key, members in groups.items():
        out = {}
        for (fn, m), out_name in zip(query.aggregates, out_names):
            values = [c.measures[m] for c in members]
            if any(not isinstance(v, (int, float)) for v in values) and fn != "count":
                raise ExecError(f"aggregate {fn} over non-numeric measure {m}")
            if fn == "sum":
                out[out_name] = sum(values)
            elif fn == "min":
                out[out_name] = min(values)
            elif fn == "max":
                out[out_name] = max(values)
            elif fn == "count":
                out[out_name] = len(values)
            else:
                out[out_name] = sum(values) / len(values)
        cells.append(Cell(key, out))
    return Cube(name or f"{base.name}'", axes, out_names, cells,
                validate=False, provenance=query)


# ---------------------------------------------------------------------------
# Derived-measure extension (functions over equivalence classes)

@dataclass
class FunctionBinding:
    """A function applied over a cube's cells. `scope` decides the
    equivalence classes handed to `fn`:

      - "cell": fn(cell) -> dict of outputs
      - "cube": fn(list of cells) -> list of output dicts (cell order)
      - ("subcube", [dim names]): like "cube" per class of cells sharing the
        named coordinates
    """
    name: str
    outputs: list
    fn: object
    scope: object = "cell"

    def eq_classes(self, cube):
        if self.scope == "cell":
            return [[c] for c in cube.cells]
        if self.scope == "cube":
            return [list(cube.cells)]
        kind, dims = self.scope
        if kind != "subcube":
            raise PlanError(f"unknown function scope {self.scope!r}")
        positions = [cube.axis_for(d)[0] for d in dims]
        classes = {}
        for cell in cube.cells:
            key = tuple(cell.coordinates[p] for p in positions)
            classes.setdefault(key, []).append(cell)
        return [classes[k] for k in sorted(classes)]


def extend_cube(cube, binding, name=None):
    """Extend every cell with the binding's outputs; existing measures and the
    cell set are untouched."""
    results = {}
    for group in binding.eq_classes(cube):
        try:
            if binding.scope == "cell":
                outs = [binding.fn(group[0])]
            else:
                outs = binding.fn(group)
        except EngineError:
            raise
        except Exception as exc:
            key = group[0].coordinates
            raise ExecError(
                f"function {binding.name} failed on class {key}: {exc}") from exc
        if len(outs) != len(group):
            raise ExecError(
                f"function {binding.name} returned {len(outs)} rows for a "
                f"class of {len(group)} cells")
        for cell, out in zip(group, outs):
            missing = [o for o in binding.outputs if o not in out]
            if missing:
                raise ExecError(
                    f"function {binding.name} omitted output(s) {missing}")
            results[cell.coordinates] = out
    new_cells = [Cell(c.coordinates, {**c.measures,
                                      **{o: results[c.coordinates][o]
                                         for o in binding.outputs}})
                 for c in cube.cells]
    return Cube(name or cube.name, cube.axes, cube.measures + binding.outputs,
                new_cells, validate=False, provenance=cube.provenance)


# ---------------------------------------------------------------------------
# Proxies

def proxies(new, old):
    """Map each cell of `new` to the old cells covering the same subspace:
    per shared dimension, members related through anc (drill-down) or desc
    (roll-up). Cells with no structural relative map to the entire old cube."""
    shared = []
    old_dims = {dim.name: (i, level) for i, (dim, level) in enumerate(old.axes)}
    for j, (dim, new_level) in enumerate(new.axes):
        if dim.name in old_dims:
            i, old_level = old_dims[dim.name]
            shared.append((j, i, dim, new_level, old_level))
    if not shared and new.axes and old.axes:
        raise PlanError(
            f"cubes {new.name} and {old.name} share no dimension")
    relation = {}
    for cell in new.cells:
        matches = []
        for old_cell in old.cells:
            ok = True
            for j, i, dim, new_level, old_level in shared:
                nm, om = cell.coordinates[j], old_cell.coordinates[i]
                nd, od = dim.depth(new_level), dim.depth(old_level)
                try:
                    if nd == od:
                        ok = nm == om
                    elif nd < od:
                        ok = dim.anc(new_level, old_level, nm) == om
                    else:
                        ok = dim.anc(old_level, new_level, om) == nm
                except (PlanError, ExecError):
                    ok = False
                if not ok:
                    break
            if ok:
                matches.append(old_cell)
        relation[cell.coordinates] = matches if matches else list(old.cells)
    return relation


# ---------------------------------------------------------------------------
# Ingestion and the catalog

def load_cube(doc, rows, dimensions, loose=False):
    """Build a cube from its catalog document and fact rows (dicts). The
    document lists (dimension, level) axes and measure columns; coordinate
    columns are named after the dimension."""
    name = doc["name"]
    axes = []
    for axis in doc["dimensions"]:
        dim_name = axis["dimension"]
        if dim_name not in dimensions:
            raise PlanError(f"cube {name}: unknown dimension {dim_name}")
        dim = dimensions[dim_name]
        axes.append((dim, dim.level(axis["level"]).name))
    measures = list(doc["measures"])
    cells = []
    for lineno, row in enumerate(rows, start=2):
        coords = []
        for dim, level_name in axes:
            if dim.name not in row:
                raise PlanError(f"cube {name}: fact row missing column {dim.name}")
            member = row[dim.name]
            if member not in dim.level(level_name):
                raise ExecError(
                    f"cube {name} row {lineno}: member {member!r} not in "
                    f"{dim.name}.{level_name}")
            coords.append(member)
        values = {}
        for m in measures:
            if m not in row or row[m] == "":
                raise ExecError(f"cube {name} row {lineno}: missing measure {m}")
            try:
                values[m] = float(row[m])
            except ValueError:
                raise ExecError(
                    f"cube {name} row {lineno}: non-numeric {m}={row[m]!r}") from None
        cells.append(Cell(tuple(coords), values))
    if not cells:
        warnings.warn(f"cube {name}: empty fact table")
    return Cube(name, axes, measures, cells)


def ingest_star(doc, rows, dimensions):
    """Like load_cube but requires the result to be a detailed cube."""
    cube = load_cube(doc, rows, dimensions)
    if not cube.is_detailed():
        raise PlanError(f"cube {cube.name} is not detailed (star facts must "
                        f"use bottom levels)")
    return cube


class Catalog:
    """Registered dimensions, cubes, stored (benchmark) query texts, and KPI
    rule sets. Immutable objects; registration rejects duplicates."""

    def __init__(self):
        self.dimensions = {}
        self.cubes = {}
        self.queries = {}
        self.kpis = {}

    def _register(self, table, kind, name, value):
        if name in table:
            raise PlanError(f"{kind} {name!r} already registered")
        table[name] = value

    def register_dimension(self, dim):
        self._register(self.dimensions, "dimension", dim.name, dim)

    def register_cube(self, cube):
        self._register(self.cubes, "cube", cube.name, cube)

    def register_query(self, name, text):
        self._register(self.queries, "benchmark query", name, text)

    def register_kpi(self, name, doc):
        for rule in doc.get("rules", []):
            if "label" not in rule:
                raise PlanError(f"kpi {name}: rule without a label")
        self._register(self.kpis, "kpi rules", name, doc)

    def to_json(self):
        return {
            "dimensions": sorted(self.dimensions),
            "cubes": sorted(self.cubes),
            "queries": sorted(self.queries),
            "kpis": sorted(self.kpis),
        }

    @classmethod
    def load_dir(cls, path):
        catalog = cls()
        path = Path(path)
        docs = {kind: [] for kind in ("dimension", "cube", "query", "kpi")}
        for p in sorted(path.glob("*.json")):
            parts = p.name.split(".")
            if len(parts) >= 3 and parts[-2] in docs:
                docs[parts[-2]].append(p)
        for p in docs["dimension"]:
            doc = json.loads(p.read_text())
            rows = _read_csv(path / doc["table"])
            catalog.register_dimension(load_dimension(doc, rows))
        for p in docs["cube"]:
            doc = json.loads(p.read_text())
            rows = _read_csv(path / doc["facts"])
            catalog.register_cube(load_cube(doc, rows, catalog.dimensions))
        for p in docs["query"]:
            doc = json.loads(p.read_text())
            catalog.register_query(doc["name"], doc["text"])
        for p in docs["kpi"]:
            doc = json.loads(p.read_text())
            catalog.register_kpi(doc["name"], doc)
        return catalog


def _read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
