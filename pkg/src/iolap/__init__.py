"""Intentional analytics over OLAP cubes: cube queries on star schemas, the
describe/assess/explain/predict/suggest operators, per-cell model components,
and surprise-based highlight selection."""

__version__ = "0.1.0"
