"""Interestingness machinery: per-cell significance, surprise against proxy
cells of a previous cube, component/model score aggregation, and selection of
the winning component as the highlight."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ExecError, PlanError
from .mdcore import proxies as structural_proxies

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# Significance functions: cube -> {coordinates: score}

def significance_zscore(cube, measure, ddof=1):
    """Unsigned number of (sample) standard deviations from the cube mean."""
    values = cube.values(measure)
    if len(values) < 2:
        raise ExecError("z-score significance needs at least 2 cells")
    mean = float(np.mean(values))
    stdev = float(np.std(values, ddof=ddof))
    if stdev == 0:
        return {c.coordinates: 0.0 for c in cube.cells}
    return {c.coordinates: abs(c.measures[measure] - mean) / stdev
            for c in cube.cells}


def significance_measure(cube, measure):
    """The raw measure value."""
    return {c.coordinates: float(c.measures[measure]) for c in cube.cells}


def significance_mean(cube, measure):
    """The cube-wide mean, replicated on every cell."""
    mean = float(np.mean(cube.values(measure)))
    return {c.coordinates: mean for c in cube.cells}


def significance_const(cube, value=0.0):
    return {c.coordinates: float(value) for c in cube.cells}


def significance_component(cube, model, component):
    """A model component's elements as significance (e.g. candidate scores)."""
    mc = model.component(component)
    return {cell.coordinates: float(e)
            for cell, e in zip(model.cube.cells, mc.elements)}


SIGNIFICANCE = {
    "zscore": significance_zscore,
    "measure": significance_measure,
    "mean": significance_mean,
    "const": significance_const,
}

# Delta (surprise contrast) functions of (new significance, proxy aggregate).
DELTAS = {
    "abs": lambda x, y: abs(x - y),
    "new_minus_proxy": lambda x, y: x - y,
    "proxy_minus_new": lambda x, y: y - x,
}

# Component-level aggregations over the surprises of the core cells.
AGGREGATIONS = {
    "mean": lambda surprises, n_cells: float(np.mean(surprises)),
    "sum": lambda surprises, n_cells: float(np.sum(surprises)),
    "max": lambda surprises, n_cells: float(np.max(surprises)),
    "min": lambda surprises, n_cells: float(np.min(surprises)),
    "count_complement": lambda surprises, n_cells: n_cells - float(np.sum(surprises)),
}


@dataclass
class ScoringPlan:
    """Everything Algorithm-style highlight selection needs besides the
    models: significance for both cubes, the surprise contrast, and the
    component/model aggregations. sig_* are (id, callable) pairs so that the
    choice is reportable."""
    sig_new: tuple
    sig_old: tuple
    delta: str = "abs"
    ac: str = "mean"
    am: str = "mean"
    proxies: dict = None  # precomputed; None -> structural with fallback

    @classmethod
    def default(cls, measure):
        return cls(sig_new=("zscore", lambda c: significance_zscore(c, measure)),
                   sig_old=("zscore", lambda c: significance_zscore(c, measure)))

    def describe_ids(self):
        return {"significance_new": self.sig_new[0],
                "significance_old": self.sig_old[0],
                "delta": self.delta, "component_agg": self.ac,
                "model_agg": self.am}


@dataclass
class Highlight:
    model_index: int
    model_type: str
    component: str
    score: float
    core_cells: list  # coordinate tuples
    component_scores: dict
    model_scores: dict
    surprise: dict  # {coordinates: score} over the new cube
    sig_new: dict
    sig_old: dict

    def to_json(self):
        return {
            "model": self.model_type,
            "component": self.component,
            "score": None if self.score is None or math.isinf(self.score)
            else self.score,
            "core_cell_coordinates": [list(c) for c in self.core_cells],
            "per_component_scores": {
                k: (None if math.isinf(v) else v)
                for k, v in self.component_scores.items()},
            "per_model_scores": self.model_scores,
        }


def surprise(new, old, relation, sig_new, sig_old, delta):
    """Per new-cell contrast between its significance and the mean
    significance of its proxy cells in the old cube."""
    d = DELTAS[delta]
    out = {}
    for cell in new.cells:
        prox = relation[cell.coordinates]
        assert prox, "proxy fallback guarantees a nonempty proxy set"
        agg = float(np.mean([sig_old[p.coordinates] for p in prox]))
        out[cell.coordinates] = d(sig_new[cell.coordinates], agg)
    return out


def component_score(mc, cube, surprises, ac):
    """Aggregate the surprises of the component's core cells; components with
    an empty core (or no core predicate) can never win."""
    mask = mc.core_mask()
    core = [surprises[cell.coordinates]
            for cell, hit in zip(cube.cells, mask) if hit]
    if not core:
        return NEG_INF
    return AGGREGATIONS[ac](core, len(cube))


def select_highlight(models, plan, old, new):
    """Significance on both cubes, surprise per new cell, score per candidate
    component and per model, then return the arg-max component. Ties break by
    (model order, component declaration order)."""
    sig_new = plan.sig_new[1](new)
    sig_old = plan.sig_old[1](old)
    relation = plan.proxies if plan.proxies is not None \
        else structural_proxies(new, old)
    surprises = surprise(new, old, relation, sig_new, sig_old, plan.delta)

    best = None
    component_scores = {}
    model_scores = {}
    for mi, model in enumerate(models):
        finite = []
        for mc in model.components:
            if mc.name not in model.candidates or not mc.has_core_predicate():
                continue
            score = component_score(mc, model.cube, surprises, plan.ac)
            key = mc.name if mc.name not in component_scores else f"{mc.name}#{mi}"
            component_scores[key] = score
            if not math.isinf(score):
                finite.append(score)
            if best is None or score > best[0]:
                best = (score, mi, mc)
        if finite:
            model_scores[model.type_name] = AGGREGATIONS[plan.am](finite, len(model.cube))
    if best is None or math.isinf(best[0]):
        raise ExecError("nothing to highlight: no candidate component has "
                        "core cells")
    score, mi, mc = best
    model = models[mi]
    core = [cell.coordinates
            for cell, hit in zip(model.cube.cells, mc.core_mask()) if hit]
    return Highlight(mi, model.type_name, mc.name, score, core,
                     component_scores, model_scores, surprises, sig_new, sig_old)


def fixed_highlight(models, model_index, component_name):
    """A highlight designated by construction (no scoring race), e.g. the
    forecast cells of a prediction."""
    model = models[model_index]
    mc = model.component(component_name)
    core = [cell.coordinates
            for cell, hit in zip(model.cube.cells, mc.core_mask()) if hit]
    return Highlight(model_index, model.type_name, component_name, None, core,
                     {}, {}, {}, {}, {})
