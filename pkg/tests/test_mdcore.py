import pytest

from conftest import chain_dimension, make_cube
from iolap.errors import ExecError, PlanError
from iolap.mdcore import (And, Atom, Catalog, Cell, Cube, CubeQuery,
                          FalseCond, FunctionBinding, Not, Or, TrueCond,
                          eval_cube_query, extend_cube, load_dimension,
                          proxies)

import oracles


# ---------------------------------------------------------------------------
# Dimensions

def test_anc_identity_and_top(work_class):
    assert work_class.anc("L0", "L0", "Private") == "Private"
    assert work_class.anc("L0", "ALL", "Self-emp-inc") == "all"
    assert work_class.anc("L0", "L1", "Federal-gov") == "Gov"
    assert work_class.anc("L1", "L2", "Self-emp") == "With-Pay"


def test_anc_composition_law(catalog):
    # anc(L1->L3) == anc(L2->L3) . anc(L1->L2) on every chain of every fixture
    for dim in catalog.dimensions.values():
        chain = dim.chain
        for i in range(len(chain)):
            for j in range(i, len(chain)):
                for k2 in range(j, len(chain)):
                    a, b, c = chain[i].name, chain[j].name, chain[k2].name
                    for m in chain[i].members:
                        direct = dim.anc(a, c, m)
                        composed = dim.anc(b, c, dim.anc(a, b, m))
                        assert direct == composed


def test_desc_is_inverse_of_anc(catalog):
    for dim in catalog.dimensions.values():
        chain = dim.chain
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                lo, hi = chain[i].name, chain[j].name
                # classes partition the finer domain
                classes = [dim.desc(hi, lo, m) for m in chain[j].members]
                flat = [m for cls in classes for m in cls]
                assert sorted(flat) == sorted(chain[i].members)
                for parent, cls in zip(chain[j].members, classes):
                    for child in cls:
                        assert dim.anc(lo, hi, child) == parent


def test_anc_direction_and_unknown_member(work_class):
    with pytest.raises(PlanError):
        work_class.anc("L1", "L0", "Gov")  # wrong direction
    with pytest.raises(ExecError):
        work_class.anc("L0", "L1", "Plumber")
    with pytest.raises(PlanError):
        work_class.level("L9")


def test_load_dimension_errors():
    doc = {"name": "d", "levels": ["A", "B"]}
    with pytest.raises(PlanError, match="two parents"):
        load_dimension(doc, [{"A": "x", "B": "p"}, {"A": "x", "B": "q"}])
    with pytest.raises(PlanError, match="duplicate bottom"):
        load_dimension(doc, [{"A": "x", "B": "p"}, {"A": "x", "B": "p"}])
    with pytest.raises(PlanError, match="two levels"):
        load_dimension(doc, [{"A": "x", "B": "x"}])
    with pytest.raises(PlanError, match="empty"):
        load_dimension(doc, [])
    with pytest.raises(PlanError, match="missing column"):
        load_dimension(doc, [{"A": "x"}])


# ---------------------------------------------------------------------------
# Cubes

def test_cube_rejects_duplicate_coordinates(education, work_class):
    axes = [(education, "L2"), (work_class, "L1")]
    cells = [Cell(("Assoc", "Gov"), {"m": 1}), Cell(("Assoc", "Gov"), {"m": 2})]
    with pytest.raises(ExecError, match="duplicate"):
        Cube("bad", axes, ["m"], cells)


def test_cube_rejects_foreign_members(education, work_class):
    axes = [(education, "L2"), (work_class, "L1")]
    with pytest.raises(ExecError, match="not in"):
        Cube("bad", axes, ["m"], [Cell(("Assoc", "Plumber"), {"m": 1})])


def test_cube_canonical_order_and_lookup(cn):
    coords = [c.coordinates for c in cn.cells]
    assert coords == sorted(coords)
    cell = cn.cell(("Post-grad", "Self-emp-inc"))
    assert cell.measures["HoursPerWeek"] == pytest.approx(53.05)
    assert cn.cell(("Nope", "Nope")) is None


def test_cube_csv_export(co):
    lines = co.to_csv().strip().splitlines()
    assert lines[0] == "education,work_class,HoursPerWeek"
    assert len(lines) == 13


# ---------------------------------------------------------------------------
# Conditions

def test_atom_equality_and_rewrite(cn, work_class):
    gov = Atom("work_class", "L1", "=", "Gov")  # coarser than the cube's L0
    picked = cn.filter(gov)
    assert len(picked) == 12
    assert all(work_class.anc("L0", "L1", c.coordinates[1]) == "Gov"
               for c in picked.cells)


def test_atom_finer_than_cube_is_an_error(co):
    with pytest.raises(PlanError, match="finer"):
        co.filter(Atom("work_class", "L0", "=", "Private"))


def test_atom_ordering_uses_member_order(oecd):
    # year members are ingested in chronological order
    early = oecd.filter(Atom("year", "L0", "<", "2003"))
    assert [c.coordinates[0] for c in early.cells] == ["2000", "2001", "2002"]
    late = oecd.filter(Atom("year", "L0", ">=", "2015"))
    assert len(late) == 2


def test_boolean_connectives(cn):
    a = Atom("education", "L2", "=", "Assoc")
    b = Atom("work_class", "L1", "=", "Gov")
    assert len(cn.filter(And(a, b))) == 3
    assert len(cn.filter(Or(a, b))) == 6 + 12 - 3
    assert len(cn.filter(Not(a))) == 18
    assert len(cn.filter(TrueCond())) == 24
    assert len(cn.filter(FalseCond())) == 0


# ---------------------------------------------------------------------------
# Cube queries

def small_star():
    d1 = chain_dimension("prod", ["item", "family"],
                         [("apple", "fruit"), ("pear", "fruit"),
                          ("bolt", "hardware")])
    d2 = chain_dimension("geo", ["city", "country"],
                         [("nice", "fr"), ("lyon", "fr"), ("turin", "it")])
    rows = [
        (("apple", "nice"), (10.0, 2.0)),
        (("apple", "lyon"), (20.0, 4.0)),
        (("pear", "nice"), (5.0, 1.0)),
        (("bolt", "turin"), (7.0, 7.0)),
    ]
    cube = make_cube("sales", [(d1, "item"), (d2, "city")],
                     ["amount", "qty"], rows)
    return d1, d2, cube


def test_group_by_rollup():
    d1, d2, cube = small_star()
    q = CubeQuery(cube, None, [("prod", "family"), ("geo", "country")],
                  [("sum", "amount")])
    out = eval_cube_query(q)
    got = {c.coordinates: c.measures["amount"] for c in out.cells}
    assert got == {("fruit", "fr"): 35.0, ("hardware", "it"): 7.0}
    # empty groups (e.g. hardware/fr) are simply absent
    assert ("hardware", "fr") not in got


def test_group_by_with_selection_and_avg():
    d1, d2, cube = small_star()
    q = CubeQuery(cube, Atom("geo", "country", "=", "fr"),
                  [("prod", "family"), ("geo", "ALL")], [("avg", "amount")])
    out = eval_cube_query(q)
    got = {c.coordinates: c.measures["amount"] for c in out.cells}
    assert got[("fruit", "all")] == pytest.approx(35.0 / 3)
    assert ("hardware", "all") not in got


def test_group_by_all_aggregates_match_direct_computation():
    d1, d2, cube = small_star()
    for fn, expected in [("sum", 35.0), ("min", 5.0), ("max", 20.0),
                         ("count", 3), ("avg", 35.0 / 3)]:
        q = CubeQuery(cube, None, [("prod", "family"), ("geo", "ALL")],
                      [(fn, "amount")])
        out = eval_cube_query(q)
        assert out.cell(("fruit", "all")).measures["amount"] == pytest.approx(expected)


def test_duplicate_measure_names_get_suffixed():
    d1, d2, cube = small_star()
    q = CubeQuery(cube, None, [("prod", "ALL"), ("geo", "ALL")],
                  [("sum", "amount"), ("avg", "amount"), ("sum", "qty")])
    out = eval_cube_query(q)
    assert out.measures == ["amount_sum", "amount_avg", "qty"]


def test_query_validation_errors():
    d1, d2, cube = small_star()
    with pytest.raises(PlanError, match="every dimension"):
        eval_cube_query(CubeQuery(cube, None, [("prod", "family")],
                                  [("sum", "amount")]))
    q = CubeQuery(eval_cube_query(CubeQuery(
        cube, None, [("prod", "family"), ("geo", "country")],
        [("sum", "amount")])), None,
        [("prod", "item"), ("geo", "country")], [("sum", "amount")])
    with pytest.raises(PlanError, match="finer"):
        eval_cube_query(q)
    with pytest.raises(PlanError, match="unknown aggregate"):
        eval_cube_query(CubeQuery(cube, None,
                                  [("prod", "family"), ("geo", "country")],
                                  [("median", "amount")]))
    with pytest.raises(PlanError, match="no measure"):
        eval_cube_query(CubeQuery(cube, None,
                                  [("prod", "family"), ("geo", "country")],
                                  [("sum", "price")]))


# ---------------------------------------------------------------------------
# Derived-measure extension

def test_extend_cell_scope():
    _, _, cube = small_star()
    binding = FunctionBinding("double", ["d"],
                              lambda cell: {"d": cell.measures["amount"] * 2})
    out = extend_cube(cube, binding)
    assert out.measures == ["amount", "qty", "d"]
    for before, after in zip(cube.cells, out.cells):
        assert after.measures["d"] == before.measures["amount"] * 2
        assert after.measures["amount"] == before.measures["amount"]


def test_extend_cube_scope_ranks():
    _, _, cube = small_star()

    def rank_all(cells):
        ranks = oracles.sort_position_ranks([c.measures["amount"] for c in cells])
        return [{"rank": r} for r in ranks]

    out = extend_cube(cube, FunctionBinding("rank", ["rank"], rank_all, "cube"))
    assert out.cell(("apple", "lyon")).measures["rank"] == 1


def test_extend_subcube_scope():
    _, _, cube = small_star()

    def share(cells):
        total = sum(c.measures["amount"] for c in cells)
        return [{"share": c.measures["amount"] / total} for c in cells]

    out = extend_cube(cube, FunctionBinding("share", ["share"], share,
                                            ("subcube", ["prod"])))
    assert out.cell(("apple", "nice")).measures["share"] == pytest.approx(10 / 30)
    assert out.cell(("bolt", "turin")).measures["share"] == pytest.approx(1.0)


def test_extend_errors():
    _, _, cube = small_star()
    bad_len = FunctionBinding("bad", ["x"], lambda cells: [{"x": 1}], "cube")
    with pytest.raises(ExecError, match="returned"):
        extend_cube(cube, bad_len)
    bad_out = FunctionBinding("bad", ["x"], lambda cell: {"y": 1})
    with pytest.raises(ExecError, match="omitted"):
        extend_cube(cube, bad_out)
    crash = FunctionBinding("crash", ["x"], lambda cell: 1 / 0)
    with pytest.raises(ExecError, match="failed"):
        extend_cube(cube, crash)


# ---------------------------------------------------------------------------
# Proxies

def test_proxies_drill_down(cn, co):
    rel = proxies(cn, co)
    assert [c.coordinates for c in rel[("Assoc", "Federal-gov")]] == \
        [("Assoc", "Gov")]
    assert [c.coordinates for c in rel[("Post-grad", "Self-emp-inc")]] == \
        [("Post-grad", "Self-emp")]


def test_proxies_roll_up(cn, co):
    rel = proxies(co, cn)
    got = sorted(c.coordinates for c in rel[("Assoc", "Gov")])
    assert got == [("Assoc", "Federal-gov"), ("Assoc", "Local-gov"),
                   ("Assoc", "State-gov")]


def test_proxies_fallback_to_whole_cube(cn, co):
    # a filtered old cube may leave some new cells with no structural relative
    sliced = co.filter(Atom("work_class", "L1", "=", "Gov"))
    rel = proxies(cn, sliced)
    assert [c.coordinates for c in rel[("Assoc", "Federal-gov")]] == \
        [("Assoc", "Gov")]
    # Self-emp cells have no Gov ancestor: proxy set falls back to all of old
    assert len(rel[("Assoc", "Self-emp-inc")]) == len(sliced)


def test_proxies_disjoint_dimensions_rejected(cn, oecd):
    with pytest.raises(PlanError, match="share no dimension"):
        proxies(cn, oecd)


# ---------------------------------------------------------------------------
# Catalog

def test_catalog_rejects_duplicates(catalog, work_class):
    with pytest.raises(PlanError, match="already registered"):
        catalog.register_dimension(work_class)


def test_catalog_contents(catalog):
    doc = catalog.to_json()
    assert doc["cubes"] == ["CN", "CO", "OECD", "q_Female"]
    assert doc["dimensions"] == ["education", "work_class", "year"]
    assert doc["kpis"] == ["hours_kpi"]
