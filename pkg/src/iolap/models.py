"""Model types and the concrete model algorithms.

Every model is bound to a cube and its output is a set of components: one
value per cube cell, in the cube's canonical cell order (the data-to-model
bijection). Boolean components marked as an antagonist family partition the
cells; a component's core cells are the cells its core predicate selects.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ExecError, PlanError
from .mdcore import Cell, Cube, eval_cube_query

# ---------------------------------------------------------------------------
# Components and models


@dataclass
class ModelComponent:
    """A per-cell attribute column. kind is one of:
      - "bitmap": 0/1 elements, core = the 1-cells
      - "label":  string elements, core = elements equal to `focal`
      - "numeric": no core predicate (never a highlight candidate)
    """
    name: str
    elements: list
    kind: str = "numeric"
    focal: str = None
    characterization: dict = field(default_factory=dict)

    def core_mask(self):
        if self.kind == "bitmap":
            return [e == 1 for e in self.elements]
        if self.kind == "label":
            return [e == self.focal for e in self.elements]
        return [False] * len(self.elements)

    def has_core_predicate(self):
        return self.kind in ("bitmap", "label")

    def to_json(self):
        doc = {"name": self.name, "elements": list(self.elements),
               "core_predicate": self.kind}
        if self.focal is not None:
            doc["core_predicate"] = f"label:{self.focal}"
        if self.characterization:
            doc["characterization"] = self.characterization
        return doc


@dataclass
class Model:
    type_name: str
    cube: Cube
    binding: dict
    components: list
    characterization: dict = field(default_factory=dict)
    families: list = field(default_factory=list)  # partitioning antagonist families
    candidates: list = field(default_factory=list)  # names racing for the highlight

    def __post_init__(self):
        n = len(self.cube)
        names = set()
        for mc in self.components:
            if len(mc.elements) != n:
                raise ExecError(
                    f"model {self.type_name}: component {mc.name} has "
                    f"{len(mc.elements)} elements for {n} cells")
            if mc.name in names:
                raise ExecError(f"model {self.type_name}: duplicate component "
                                f"{mc.name}")
            names.add(mc.name)

    def component(self, name):
        for mc in self.components:
            if mc.name == name:
                return mc
        raise PlanError(f"model {self.type_name} has no component {name}")

    def to_json(self):
        return {
            "type": self.type_name,
            "binding": self.binding,
            "characterization": self.characterization,
            "components": [mc.to_json() for mc in self.components],
        }


def core_cells(model, component_name):
    """The cube cells selected by the component's core predicate."""
    mc = model.component(component_name)
    return [cell for cell, hit in zip(model.cube.cells, mc.core_mask()) if hit]


# ---------------------------------------------------------------------------
# Registry

@dataclass(frozen=True)
class ModelType:
    name: str
    builder: object
    description: str = ""


MODEL_TYPES = {}


def register_type(model_type):
    if model_type.name in MODEL_TYPES:
        raise PlanError(f"model type {model_type.name!r} already registered")
    MODEL_TYPES[model_type.name] = model_type


def resolve_type(name):
    try:
        return MODEL_TYPES[name]
    except KeyError:
        raise PlanError(f"unknown model type {name!r}") from None


# ---------------------------------------------------------------------------
# Shared numeric helpers (sample statistics use the n-1 divisor throughout)

def _mean(values):
    return float(np.mean(values))


def _stdev(values, ddof=1):
    if len(values) <= ddof:
        raise ExecError("need at least two cells for a standard deviation")
    return float(np.std(values, ddof=ddof))


# ---------------------------------------------------------------------------
# Model algorithms

def topk_rank(cube, measure, k):
    """Rank (1-based, descending) plus the Top-k / Non-top-k antagonists.
    Ties rank by coordinate lexicographic order."""
    if k < 1:
        raise PlanError("k must be at least 1")
    n = len(cube)
    if k > n:
        warnings.warn(f"top-k: k={k} exceeds {n} cells; clamping")
        k = n
    values = cube.values(measure)
    order = sorted(range(n), key=lambda i: (-values[i], cube.cells[i].coordinates))
    rank = [0] * n
    for pos, i in enumerate(order):
        rank[i] = pos + 1
    top = [1 if r <= k else 0 for r in rank]
    return Model(
        "topk", cube, {"measure": measure, "k": k},
        [ModelComponent("Rank", rank, "numeric"),
         ModelComponent(f"Top-{k}", top, "bitmap"),
         ModelComponent(f"Non-top-{k}", [1 - b for b in top], "bitmap")],
        families=[[f"Top-{k}", f"Non-top-{k}"]],
        candidates=[f"Top-{k}", f"Non-top-{k}"])


def outliers(cube, measure, threshold=2.0):
    """Signed z-score outlierness with sample stddev; outliers are the cells
    whose |score| exceeds the threshold."""
    values = cube.values(measure)
    if len(values) < 2:
        raise ExecError("outlier model needs at least 2 cells")
    m = _mean(values)
    s = _stdev(values)
    if s == 0:
        scores = [0.0] * len(values)
    else:
        scores = [(v - m) / s for v in values]
    hits = [1 if abs(z) > threshold else 0 for z in scores]
    return Model(
        "outliers", cube, {"measure": measure, "threshold": threshold},
        [ModelComponent("Outlierness", scores, "numeric"),
         ModelComponent("Outliers", hits, "bitmap"),
         ModelComponent("Non-outliers", [1 - h for h in hits], "bitmap")],
        characterization={"mean": m, "stdev": s},
        families=[["Outliers", "Non-outliers"]],
        candidates=["Outliers", "Non-outliers"])


def kmeans(cube, measures, k, seed=42):
    """Seeded Lloyd's algorithm: first centroid drawn with the seed, the rest
    by farthest-point; max 100 iterations, tolerance 1e-9. Deterministic for
    a fixed (cube, measures, k, seed)."""
    n = len(cube)
    if k < 1 or k > n:
        raise PlanError(f"k={k} out of range for {n} cells")
    X = np.array([[c.measures[m] for m in measures] for c in cube.cells], dtype=float)
    rng = np.random.default_rng(seed)
    centroid_ids = [int(rng.integers(n))]
    while len(centroid_ids) < k:
        dists = np.min(
            [np.linalg.norm(X - X[i], axis=1) for i in centroid_ids], axis=0)
        centroid_ids.append(int(np.argmax(dists)))
    centroids = X[centroid_ids].copy()
    labels = np.zeros(n, dtype=int)
    for _ in range(100):
        dist = np.linalg.norm(X[:, None, :] - centroids[None, :, :], axis=2)
        labels = np.argmin(dist, axis=1)
        new_centroids = centroids.copy()
        for j in range(k):
            members = X[labels == j]
            if len(members) == 0:
                # deterministically re-seed from the point farthest from its
                # nearest centroid
                far = int(np.argmax(np.min(dist, axis=1)))
                new_centroids[j] = X[far]
            else:
                new_centroids[j] = members.mean(axis=0)
        if np.max(np.abs(new_centroids - centroids)) < 1e-9:
            centroids = new_centroids
            break
        centroids = new_centroids
    dist = np.linalg.norm(X[:, None, :] - centroids[None, :, :], axis=2)
    labels = np.argmin(dist, axis=1)
    inertia = float(np.sum((X - centroids[labels]) ** 2))
    components = []
    rep = [0] * n
    for j in range(k):
        bitmap = [1 if labels[i] == j else 0 for i in range(n)]
        components.append(ModelComponent(f"Cluster_{j + 1}", bitmap, "bitmap"))
        member_ids = [i for i in range(n) if labels[i] == j]
        if member_ids:
            medoid = min(member_ids, key=lambda i: (dist[i, j], i))
            rep[medoid] = 1
    components.append(ModelComponent("Representative", rep, "bitmap"))
    cluster_names = [f"Cluster_{j + 1}" for j in range(k)]
    return Model(
        "kmeans", cube, {"measures": list(measures), "k": k, "seed": seed},
        components, characterization={"inertia": inertia},
        families=[cluster_names], candidates=cluster_names)


def kpi(cube, measure, rules):
    """Interval labeling. rules: [{'from': lo, 'to': hi|None, 'label': ...}]
    with half-open intervals [lo, hi); hi None means +inf. Intervals must not
    overlap and must cover every observed value."""
    parsed = []
    for rule in rules:
        lo = rule.get("from")
        hi = rule.get("to")
        lo = -math.inf if lo is None else float(lo)
        hi = math.inf if hi is None else float(hi)
        parsed.append((lo, hi, rule["label"]))
    for i, (lo1, hi1, lab1) in enumerate(parsed):
        for lo2, hi2, lab2 in parsed[i + 1:]:
            if max(lo1, lo2) < min(hi1, hi2):
                raise PlanError(f"kpi rules overlap: {lab1!r} and {lab2!r}")
    values = cube.values(measure)
    assessment = []
    for cell, v in zip(cube.cells, values):
        label = next((lab for lo, hi, lab in parsed if lo <= v < hi), None)
        if label is None:
            raise ExecError(
                f"kpi: value {v} of cell {cell.coordinates} not covered by any rule")
        assessment.append(label)
    labels = [lab for _, _, lab in parsed]
    components = [ModelComponent("Assessment", assessment, "numeric")]
    for lab in labels:
        bitmap = [1 if a == lab else 0 for a in assessment]
        components.append(ModelComponent(lab, bitmap, "bitmap"))
    return Model(
        "kpi", cube, {"measure": measure, "rules": list(rules)}, components,
        families=[labels], candidates=labels)


def benchmark_discrepancy(cube, measure, bench):
    """Discrepancy against a benchmark supplying exactly one value per cell.
    bench is a Cube with matching coordinates, a constant, or a mapping from
    coordinates to values. MC+ holds the cells above their benchmark, MC-
    the rest (a partition)."""
    bench_values = []
    for cell in cube.cells:
        if isinstance(bench, Cube):
            other = bench.cell(cell.coordinates)
            if other is None:
                raise ExecError(
                    f"benchmark {bench.name} has no cell {cell.coordinates}")
            bench_values.append(other.measures[measure])
        elif isinstance(bench, dict):
            if cell.coordinates not in bench:
                raise ExecError(f"benchmark has no value for {cell.coordinates}")
            bench_values.append(float(bench[cell.coordinates]))
        else:
            bench_values.append(float(bench))
    values = cube.values(measure)
    discrepancy = [v - b for v, b in zip(values, bench_values)]
    plus = [1 if d > 0 else 0 for d in discrepancy]
    return Model(
        "benchmark", cube,
        {"measure": measure,
         "benchmark": bench.name if isinstance(bench, Cube) else "inline"},
        [ModelComponent("BenchmarkValue", bench_values, "numeric"),
         ModelComponent("Discrepancy", discrepancy, "numeric"),
         ModelComponent("MC-", [1 - p for p in plus], "bitmap"),
         ModelComponent("MC+", plus, "bitmap")],
        families=[["MC-", "MC+"]], candidates=["MC-", "MC+"])


def variance_test(new, old, measure):
    """Variance comparison of two cubes plus per-cell deviation of the new
    cube from its own mean; AboveStdev marks cells deviating by more than one
    sample stddev."""
    new_values = new.values(measure)
    old_values = old.values(measure)
    if len(new_values) < 2 or len(old_values) < 2:
        raise ExecError("variance test needs at least 2 cells per cube")
    var_new = float(np.var(new_values, ddof=1))
    var_old = float(np.var(old_values, ddof=1))
    if var_new == 0:
        raise ExecError("variance test: new cube has zero variance")
    f = var_old / var_new
    mean_new = _mean(new_values)
    stdev_new = math.sqrt(var_new)
    discrepancy = [v - mean_new for v in new_values]
    above = [1 if abs(d) > stdev_new else 0 for d in discrepancy]
    return Model(
        "variance_test", new, {"measure": measure, "against": old.name},
        [ModelComponent("Fstat", [f] * len(new_values), "numeric"),
         ModelComponent("Discrepancy", discrepancy, "numeric"),
         ModelComponent("AboveStdev", above, "bitmap"),
         ModelComponent("BelowStdev", [1 - a for a in above], "bitmap")],
        characterization={"F": f, "F_inverse": (1 / f if f else math.inf),
                          "mean_new": mean_new, "mean_old": _mean(old_values),
                          "stdev_new": stdev_new},
        families=[["AboveStdev", "BelowStdev"]],
        candidates=["AboveStdev", "BelowStdev"])


def _series_classes(cube, time_dim):
    """Split cells into time series: one class per combination of non-time
    coordinates, each sorted by the time member's domain order."""
    t_pos, dim, level = cube.axis_for(time_dim)

    def time_key(cell):
        member = cell.coordinates[t_pos]
        lv = dim.level(level)
        # Extended cubes may carry appended members outside the domain.
        return (lv.index[member], "") if member in lv else (len(lv.members), member)

    classes = {}
    for i, cell in enumerate(cube.cells):
        key = tuple(m for j, m in enumerate(cell.coordinates) if j != t_pos)
        classes.setdefault(key, []).append(i)
    for key in classes:
        classes[key].sort(key=lambda i: time_key(cube.cells[i]))
    return t_pos, classes


def _trend(values, window):
    if window < 1 or window % 2 == 0:
        raise PlanError("trend window must be odd and positive")
    n = len(values)
    half = window // 2
    out = []
    for i in range(n):
        h = min(half, i, n - 1 - i)
        seg = values[i - h:i + h + 1]
        out.append(sum(seg) / len(seg))
    return out


def ts_decompose(cube, measure, time_dim, window=5):
    """Trend (edge-shrunk centered moving average), Seasonality (0 unless a
    period is configured; none is by default), and Noise = value - Trend -
    Seasonality, per series."""
    _, classes = _series_classes(cube, time_dim)
    n = len(cube)
    trend = [0.0] * n
    for ids in classes.values():
        if len(ids) < 2:
            raise ExecError("time series shorter than 2")
        values = [cube.cells[i].measures[measure] for i in ids]
        for i, t in zip(ids, _trend(values, window)):
            trend[i] = t
    seasonality = [0.0] * n
    noise = [cube.cells[i].measures[measure] - trend[i] - seasonality[i]
             for i in range(n)]
    return Model(
        "ts_decompose", cube,
        {"measure": measure, "time": time_dim, "window": window},
        [ModelComponent("Trend", trend, "numeric"),
         ModelComponent("Seasonality", seasonality, "numeric"),
         ModelComponent("Noise", noise, "numeric")])


def ar_predict(cube, measure, time_dim, k, order=2, window=5):
    """Least-squares AR(order) fitted on the trend of a single series; the
    cube is extended with k forecast cells. Known/Predicted bitmaps partition
    the extended cube; Trend/Seasonality/Noise cover it too (forecast cells
    have Noise 0). Falls back to drift prediction when the normal equations
    are not solvable."""
    if k < 1:
        raise PlanError("k must be at least 1")
    t_pos, classes = _series_classes(cube, time_dim)
    if len(classes) != 1:
        raise PlanError("predict expects a single series "
                        "(slice the cube down to one first)")
    ids = next(iter(classes.values()))
    values = [cube.cells[i].measures[measure] for i in ids]
    if len(values) <= max(order, 1):
        raise ExecError(f"series of {len(values)} points is too short for "
                        f"order {order}")
    trend = _trend(values, window)
    method = "ar"
    coeffs = None
    if len(trend) > order + 1:
        rows = [[1.0] + [trend[t - j] for j in range(1, order + 1)]
                for t in range(order, len(trend))]
        targets = [trend[t] for t in range(order, len(trend))]
        A = np.array(rows)
        y = np.array(targets)
        sol, residuals, rank, _ = np.linalg.lstsq(A, y, rcond=None)
        if rank == order + 1 and np.all(np.isfinite(sol)):
            coeffs = sol
        fitted = A @ sol if coeffs is not None else None
    if coeffs is None:
        method = "drift"
        step = (trend[-1] - trend[0]) / (len(trend) - 1)
        forecast = [trend[-1] + step * (i + 1) for i in range(k)]
        rmse = 0.0
    else:
        history = list(trend)
        forecast = []
        for _ in range(k):
            nxt = coeffs[0] + sum(coeffs[j] * history[-j] for j in range(1, order + 1))
            forecast.append(float(nxt))
            history.append(float(nxt))
        rmse = float(np.sqrt(np.mean((fitted - np.array(targets)) ** 2)))

    # Append k cells with successive time members.
    last_cell = cube.cells[ids[-1]]
    last_member = last_cell.coordinates[t_pos]
    try:
        t0 = int(last_member)
    except ValueError:
        raise ExecError(f"cannot extend non-integer time member {last_member!r}")
    new_cells = list(cube.cells)
    appended = []
    for i, value in enumerate(forecast):
        coords = list(last_cell.coordinates)
        coords[t_pos] = str(t0 + i + 1)
        appended.append(coords[t_pos])
        new_cells.append(Cell(tuple(coords), {measure: value}))
    extended = Cube(cube.name, cube.axes, [measure], new_cells,
                    loose_members=set(appended), provenance=cube.provenance)
    n_known = len(cube)
    known = []
    ext_trend, ext_season, ext_noise = [], [], []
    known_ids = {cube.cells[i].coordinates: pos for pos, i in enumerate(ids)}
    for cell in extended.cells:
        if cell.coordinates in known_ids:
            known.append(1)
            pos = known_ids[cell.coordinates]
            ext_trend.append(trend[pos])
            ext_noise.append(values[pos] - trend[pos])
        else:
            known.append(0)
            ext_trend.append(cell.measures[measure])
            ext_noise.append(0.0)
        ext_season.append(0.0)
    return Model(
        "ar_predict", extended,
        {"measure": measure, "time": time_dim, "k": k, "order": order,
         "window": window},
        [ModelComponent("Known", known, "bitmap"),
         ModelComponent("Predicted", [1 - b for b in known], "bitmap"),
         ModelComponent("Trend", ext_trend, "numeric"),
         ModelComponent("Seasonality", ext_season, "numeric"),
         ModelComponent("Noise", ext_noise, "numeric")],
        characterization={"method": method, "rmse": rmse,
                          "forecast": [float(v) for v in forecast]},
        families=[["Known", "Predicted"]],
        candidates=["Known", "Predicted"])


def kl_score(values):
    """KL divergence of the normalized measure distribution from uniform."""
    total = float(sum(values))
    if total <= 0:
        raise ExecError("KL score needs a positive measure total")
    if any(v < 0 for v in values):
        raise ExecError("KL score needs non-negative measure values")
    n = len(values)
    score = 0.0
    for v in values:
        p = v / total
        if p > 0:
            score += p * math.log(p * n)
    return score


def candidate_groupings(cube):
    """All one-step coarsenings/refinements of the cube's grouping: per
    dimension, move its level one step up or down the chain."""
    out = []
    for pos, (dim, level_name) in enumerate(cube.axes):
        depth = dim.depth(level_name)
        for delta in (-1, 1):
            target = depth + delta
            if 0 <= target < len(dim.chain):
                grouping = [(d.name, l) for d, l in cube.axes]
                grouping[pos] = (dim.name, dim.chain[target].name)
                out.append(grouping)
    return out


def inform_suggest(current, measure, n_candidates=8):
    """Score candidate regroupings of the current cube by KL divergence from
    uniform and build a model over the union of the candidate cubes: a Score
    column plus one bitmap per candidate."""
    query = current.provenance
    if query is None or not hasattr(query, "base"):
        raise PlanError(f"cube {current.name} has no generating query; "
                        f"cannot generate candidates")
    candidates = []
    for grouping in candidate_groupings(current)[:n_candidates]:
        cand_query = replace(query, grouping=grouping)
        label = "|".join(f"{d}.{l}" for d, l in grouping)
        try:
            cand = eval_cube_query(cand_query, name=f"{current.name}[{label}]")
            score = kl_score(cand.values(cand.measures[0]))
        except (ExecError, PlanError) as exc:
            warnings.warn(f"candidate {label} skipped: {exc}")
            continue
        if len(cand) == 0:
            warnings.warn(f"candidate {label} skipped: empty")
            continue
        candidates.append((label, cand, score))
    if not candidates:
        raise ExecError("no viable candidate cubes")
    union_cells = [cell for _, cand, _ in candidates for cell in cand.cells]
    union = Cube(f"{current.name}+candidates", current.axes,
                 [candidates[0][1].measures[0]], union_cells, validate=False)
    scores = []
    for cell in union.cells:
        for label, cand, score in candidates:
            if cand.cell(cell.coordinates) is not None:
                scores.append(score)
                break
    components = [ModelComponent("Score", scores, "numeric")]
    names = []
    for label, cand, score in candidates:
        bitmap = [1 if cand.cell(cell.coordinates) is not None else 0
                  for cell in union.cells]
        components.append(ModelComponent(
            label, bitmap, "bitmap", characterization={"kl": score}))
        names.append(label)
    return Model(
        "inform", union, {"measure": measure, "source": current.name},
        components,
        characterization={"scores": {label: score for label, _, score in candidates}},
        families=[names], candidates=names)


def _column(cube, name):
    """A numeric column: a measure or a `dimension.property` lookup."""
    if name in cube.measures:
        return cube.values(name)
    if "." in name:
        dim_name, prop = name.split(".", 1)
        i, dim, level_name = cube.axis_for(dim_name)
        table = dim.level(level_name).properties.get(prop)
        if table is not None:
            return [float(table[c.coordinates[i]]) for c in cube.cells]
    raise PlanError(f"unknown attribute {name!r}")


def correlation(cube, measure, attribute, threshold=0.05):
    """Pearson/Kendall correlation between the measure and an attribute;
    Participation is the leave-one-out delta of the Pearson coefficient."""
    from scipy import stats

    ys = np.array(cube.values(measure), dtype=float)
    xs = np.array(_column(cube, attribute), dtype=float)
    if np.std(xs) == 0 or np.std(ys) == 0:
        raise ExecError("correlation: zero variance in a variable")
    pearson = float(stats.pearsonr(xs, ys)[0])
    kendall = float(stats.kendalltau(xs, ys)[0])
    participation = []
    for i in range(len(xs)):
        mask = np.arange(len(xs)) != i
        participation.append(pearson - float(stats.pearsonr(xs[mask], ys[mask])[0]))
    influential = [1 if abs(p) > threshold else 0 for p in participation]
    return Model(
        "correlation", cube,
        {"measure": measure, "attribute": attribute, "threshold": threshold},
        [ModelComponent("Participation", participation, "numeric"),
         ModelComponent("Influential", influential, "bitmap"),
         ModelComponent("Non-influential", [1 - b for b in influential], "bitmap")],
        characterization={"pearson": pearson, "kendall": kendall},
        families=[["Influential", "Non-influential"]],
        candidates=["Influential", "Non-influential"])


def regression(cube, measure, attributes, threshold=2.0):
    """Ordinary least squares of the measure on the attributes; antagonists
    split on |residual| > threshold * residual stddev."""
    ys = np.array(cube.values(measure), dtype=float)
    cols = [np.array(_column(cube, a), dtype=float) for a in attributes]
    if len(ys) < len(attributes) + 1:
        raise ExecError("regression needs more cells than attributes")
    X = np.column_stack([np.ones(len(ys))] + cols)
    if np.linalg.matrix_rank(X) < X.shape[1]:
        raise ExecError(f"regression design is rank deficient "
                        f"(collinear attributes among {list(attributes)})")
    beta, *_ = np.linalg.lstsq(X, ys, rcond=None)
    expected = X @ beta
    residuals = ys - expected
    ss_res = float(np.sum(residuals ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1 - ss_res / ss_tot
    sigma = float(np.std(residuals, ddof=1)) if len(ys) > 1 else 0.0
    cut = threshold * sigma
    above = [1 if abs(r) > cut else 0 for r in residuals]
    return Model(
        "regression", cube,
        {"measure": measure, "attributes": list(attributes),
         "threshold": threshold},
        [ModelComponent("Expected", [float(v) for v in expected], "numeric"),
         ModelComponent("Discrepancy", [float(r) for r in residuals], "numeric"),
         ModelComponent("Above", above, "bitmap"),
         ModelComponent("Below", [1 - a for a in above], "bitmap")],
        characterization={"r2": r2, "coefficients": [float(b) for b in beta]},
        families=[["Above", "Below"]], candidates=["Above", "Below"])


# ---------------------------------------------------------------------------
# Built-in registry entries

for _name, _builder, _desc in [
    ("topk", topk_rank, "1-based descending rank with Top-k/Non-top-k"),
    ("outliers", outliers, "z-score outlier detection"),
    ("kmeans", kmeans, "seeded Lloyd's clustering"),
    ("kpi", kpi, "interval labeling against KPI rules"),
    ("benchmark", benchmark_discrepancy, "per-cell benchmark discrepancy"),
    ("variance_test", variance_test, "variance ratio + per-cell deviation"),
    ("ts_decompose", ts_decompose, "trend/seasonality/noise decomposition"),
    ("ar", ar_predict, "autoregressive forecast over the trend"),
    ("inform", inform_suggest, "KL-divergence candidate scoring"),
    ("correlation", correlation, "Pearson/Kendall with leave-one-out deltas"),
    ("regression", regression, "ordinary least squares with residual split"),
]:
    register_type(ModelType(_name, _builder, _desc))
