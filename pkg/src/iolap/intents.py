"""Execution semantics of the five intentional operators: each one is turned
into data acquisition (a cube query or materialized lookup), model
construction, and highlight selection, yielding an enhanced cube."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from . import iql, models as M
from .errors import ExecError, PlanError
from .highlights import (ScoringPlan, fixed_highlight, select_highlight,
                         significance_component, significance_const,
                         significance_mean, significance_measure,
                         significance_zscore)
from .mdcore import And, Cube, CubeQuery, eval_cube_query


@dataclass
class EnhancedCube:
    cube: Cube
    models: list
    highlight: object  # Highlight or None
    old_cube: Cube = None
    provenance: dict = field(default_factory=dict)

    def to_json(self):
        doc = {
            "cube": self.cube.to_json(),
            "models": [m.to_json() for m in self.models],
            "highlight": self.highlight.to_json() if self.highlight else None,
            "provenance": self.provenance,
        }
        hl = self.highlight
        if hl is not None and hl.surprise:
            doc["scoring"] = {
                "significance_new": _cellwise(self.cube, hl.sig_new),
                "significance_old": _cellwise(self.old_cube, hl.sig_old),
                "surprise": _cellwise(self.cube, hl.surprise),
            }
        return doc


def _cellwise(cube, mapping):
    if cube is None or not mapping:
        return []
    return [{"coordinates": list(c.coordinates), "value": mapping[c.coordinates]}
            for c in cube.cells]


class Context:
    """Name resolution for one session: session bindings shadow catalog
    cubes, which shadow stored catalog queries (evaluated on demand)."""

    def __init__(self, catalog, seed=42):
        self.catalog = catalog
        self.seed = seed
        self.bindings = {}

    def resolve_cube(self, name):
        if name in self.bindings:
            return self.bindings[name]
        if name in self.catalog.cubes:
            return self.catalog.cubes[name]
        if name in self.catalog.queries:
            spec = iql.parse_cube_query(self.catalog.queries[name])
            cube = self._eval_query(spec, name=name)
            self.bindings[name] = cube
            return cube
        raise PlanError(f"unknown cube {name!r}")

    def _eval_query(self, spec, name=None):
        base = self.resolve_cube(spec.source)
        query = CubeQuery(
            base=base,
            selection=spec.where,
            grouping=[(r.dimension, r.level) for r in spec.group],
            aggregates=list(spec.aggs))
        return eval_cube_query(query, name=name)


def execute(statement, ctx):
    """Run one parsed statement and return its EnhancedCube; assignment
    targets are bound in the context."""
    node = statement.node if isinstance(statement, iql.Statement) else statement
    target = statement.target if isinstance(statement, iql.Statement) else None
    if target and target in ctx.bindings:
        raise PlanError(f"name {target!r} already bound in this session")
    if isinstance(node, iql.CubeQuerySpec):
        cube = ctx._eval_query(node, name=target)
        result = EnhancedCube(cube, [], None,
                              provenance={"text": iql.render(node),
                                          "operator": "query"})
    elif isinstance(node, iql.Describe):
        result = exec_describe(node, ctx)
    elif isinstance(node, iql.Assess):
        result = exec_assess(node, ctx)
    elif isinstance(node, iql.Explain):
        result = exec_explain(node, ctx)
    elif isinstance(node, iql.Predict):
        result = exec_predict(node, ctx)
    elif isinstance(node, iql.Suggest):
        result = exec_suggest(node, ctx)
    else:
        raise PlanError(f"cannot execute {type(node).__name__}")
    if target:
        ctx.bindings[target] = result.cube
    return result


def _check_measures(cube, measures):
    for m in measures:
        if m not in cube.measures:
            raise PlanError(f"cube {cube.name} has no measure {m}")


def _retarget(source, by_levels, cond, ctx):
    """The data acquisition step of describe: change grouping levels and/or
    filter. Re-derives through the source's generating query when one exists;
    otherwise falls back to a registered cube whose schema matches the target
    grouping (materialized lookup)."""
    target_schema = list(source.schema())
    if by_levels:
        for ref in by_levels:
            i, dim, _ = source.axis_for(ref.dimension)
            dim.level(ref.level)  # raises on unknown level
            target_schema[i] = (dim.name, ref.level)
    if target_schema == list(source.schema()):
        return source.filter(cond)
    if source.provenance is not None and hasattr(source.provenance, "base"):
        query = source.provenance
        selection = query.selection
        if cond is not None:
            selection = cond if selection is None else And(selection, cond)
        return eval_cube_query(replace(query, grouping=target_schema,
                                       selection=selection))
    # Materialized lookup over session bindings, then the catalog.
    pools = [ctx.bindings, ctx.catalog.cubes]
    for pool in pools:
        for cube in pool.values():
            if cube.schema() == target_schema and \
                    set(source.measures) <= set(cube.measures):
                return cube.filter(cond)
    raise PlanError(
        "cannot change the aggregation level of a cube without its "
        "generating data, and no registered cube matches the target schema "
        + str(target_schema))


def exec_describe(intent, ctx):
    source = ctx.resolve_cube(intent.source)
    _check_measures(source, intent.measures)
    measure = intent.measures[0]
    new = _retarget(source, intent.by_levels, intent.cond, ctx)
    if intent.by_size is not None:
        model_list = [M.kmeans(new, intent.measures, intent.by_size,
                               seed=ctx.seed)]
    else:
        model_list = [M.topk_rank(new, measure, 5),
                      M.outliers(new, measure, 2.0)]
    plan = ScoringPlan.default(measure)
    highlight = select_highlight(model_list, plan, source, new)
    return EnhancedCube(new, model_list, highlight, old_cube=source,
                        provenance={"text": iql.render(intent),
                                    "operator": "describe",
                                    "plan": plan.describe_ids()})


def exec_assess(intent, ctx):
    source = ctx.resolve_cube(intent.source)
    _check_measures(source, intent.measures)
    measure = intent.measures[0]
    cube = source.filter(intent.cond)
    model_list = []
    old = None
    for bench_name in intent.benchmarks:
        if bench_name in ctx.catalog.kpis:
            doc = ctx.catalog.kpis[bench_name]
            kpi_measure = doc.get("measure") or measure
            for m in intent.measures:
                model_list.append(M.kpi(cube, kpi_measure if len(intent.measures) == 1
                                        else m, doc["rules"]))
        else:
            bench = ctx.resolve_cube(bench_name)
            for m in intent.measures:
                model_list.append(M.benchmark_discrepancy(cube, m, bench))
            if old is None:
                old = bench
    if old is None:
        old = cube  # KPI-only assessment: contrast the cube with itself
    plan = ScoringPlan(
        sig_new=("measure", lambda c: significance_measure(c, measure)),
        sig_old=("measure", lambda c: significance_measure(c, measure)),
        delta="proxy_minus_new", ac="count_complement")
    highlight = select_highlight(model_list, plan, old, cube)
    return EnhancedCube(cube, model_list, highlight, old_cube=old,
                        provenance={"text": iql.render(intent),
                                    "operator": "assess",
                                    "plan": plan.describe_ids()})


EXPLANATION_MODELS = ("correlation", "regression", "variance_test")


def exec_explain(intent, ctx):
    source = ctx.resolve_cube(intent.source)
    _check_measures(source, [intent.measure])
    measure = intent.measure
    cube = source.filter(intent.cond)
    against = None
    if intent.against:
        against = ctx.resolve_cube(intent.against).filter(intent.cond)
    model_list = []
    variance_only = True
    for call in intent.models:
        if call.name not in EXPLANATION_MODELS:
            raise PlanError(f"{call.name!r} is not an explanation model "
                            f"(expected one of {EXPLANATION_MODELS})")
        if call.name == "variance_test":
            if against is None:
                raise PlanError("variance_test needs an 'against' cube")
            model_list.append(M.variance_test(cube, against, measure))
        else:
            variance_only = False
            builder = M.resolve_type(call.name).builder
            if call.name == "correlation":
                if len(call.args) != 1:
                    raise PlanError("correlation takes exactly one attribute")
                mine = builder(cube, measure, call.args[0])
            else:
                if not call.args:
                    raise PlanError("regression needs at least one attribute")
                mine = builder(cube, measure, list(call.args))
            if against is not None:
                other = builder(cube=against, measure=measure,
                                attributes=list(call.args)) \
                    if call.name == "regression" \
                    else builder(against, measure, call.args[0])
                mine = _delta_model(mine, other)
            model_list.append(mine)
    if variance_only:
        plan = ScoringPlan(
            sig_new=("measure", lambda c: significance_measure(c, measure)),
            sig_old=("mean", lambda c: significance_mean(c, measure)),
            delta="new_minus_proxy", ac="count_complement")
        old = against
    else:
        plan = ScoringPlan.default(measure)
        old = against if against is not None else source
    highlight = select_highlight(model_list, plan, old, cube)
    return EnhancedCube(cube, model_list, highlight, old_cube=old,
                        provenance={"text": iql.render(intent),
                                    "operator": "explain",
                                    "plan": plan.describe_ids()})


def _delta_model(mine, other):
    """Difference of homologous components: numeric columns subtract, bitmaps
    become their symmetric difference."""
    if len(mine.cube) != len(other.cube):
        raise ExecError("cannot difference models over cubes of different size")
    components = []
    candidates = []
    for mc in mine.components:
        try:
            omc = other.component(mc.name)
        except PlanError:
            continue
        if mc.kind == "bitmap":
            elems = [abs(a - b) for a, b in zip(mc.elements, omc.elements)]
            components.append(M.ModelComponent(f"d{mc.name}", elems, "bitmap"))
            candidates.append(f"d{mc.name}")
        elif mc.kind == "numeric":
            elems = [a - b for a, b in zip(mc.elements, omc.elements)]
            components.append(M.ModelComponent(f"d{mc.name}", elems, "numeric"))
    return M.Model(f"{mine.type_name}_delta", mine.cube, mine.binding,
                   components,
                   characterization={"mine": mine.characterization,
                                     "other": other.characterization},
                   candidates=candidates)


def exec_predict(intent, ctx):
    source = ctx.resolve_cube(intent.source)
    _check_measures(source, [intent.measure])
    if intent.model not in ("ar",):
        raise PlanError(f"unknown predictive model {intent.model!r}")
    cube = source.filter(intent.cond)
    model = M.ar_predict(cube, intent.measure, intent.over, intent.k)
    highlight = fixed_highlight([model], 0, "Predicted")
    return EnhancedCube(model.cube, [model], highlight, old_cube=source,
                        provenance={"text": iql.render(intent),
                                    "operator": "predict"})


def exec_suggest(intent, ctx):
    source = ctx.resolve_cube(intent.source)
    if intent.model not in (None, "inform"):
        raise PlanError(f"unknown recommender {intent.model!r}")
    measure = source.measures[0]
    model = M.inform_suggest(source, measure)
    plan = ScoringPlan(
        sig_new=("component:Score",
                 lambda c: significance_component(c, model, "Score")),
        sig_old=("const", lambda c: significance_const(c, 0.0)),
        delta="new_minus_proxy", ac="max")
    highlight = select_highlight([model], plan, source, model.cube)
    return EnhancedCube(model.cube, [model], highlight, old_cube=source,
                        provenance={"text": iql.render(intent),
                                    "operator": "suggest",
                                    "plan": plan.describe_ids()})
