import pytest

import surfcol


def c4(e1=True):
    return {
        "vertices": [0, 1, 2, 3],
        "edges": [{"id": i, "u": i, "v": (i + 1) % 4, "sign": 1, "e1": e1} for i in range(4)],
        "rotation": {str(v): [[(v - 1) % 4, 1], [v, 0]] for v in range(4)},
    }


def test_rho_matches_bound():
    for g in range(2, 11):
        assert surfcol.rho(g, "1/43") == str(516 * (g - 2))


def test_generate_solve_check():
    inst = surfcol.generate("torus_grid_tri", m=7, n=7, palette=30, k=9, list_seed=3)
    assert surfcol.genus(inst["graph"])["euler_genus"] == 2
    out = surfcol.solve(inst["graph"], inst["lists"])
    assert out["status"] == "ok"
    assert len(out["trace"]["steps"]) > 0
    verdict = surfcol.check(inst["graph"], out["colouring"], inst["lists"])
    assert verdict["valid"]


def test_bicoloured_c4():
    verdict = surfcol.check(c4(), {0: 1, 1: 2, 2: 1, 3: 2})
    assert verdict["proper"] and not verdict["e1_acyclic"]
    assert len(verdict["witness"]["vertices"]) == 4
    assert surfcol.check(c4(e1=False), {0: 1, 1: 2, 2: 1, 3: 2})["valid"]


def test_exact_infeasible():
    lists = {v: [1, 2] for v in range(4)}
    assert surfcol.solve(c4(), lists, exact=True)["status"] == "infeasible"


def test_edge_width_and_discharge():
    quad = surfcol.generate("torus_grid_quad", m=3, n=4, e1="none")["graph"]
    ew = surfcol.edge_width(quad, t=2)
    assert ew["status"] == "finite" and ew["width"] == 6
    assert surfcol.edge_width(quad, t=2, fast=True)["width"] == 6
    ico = surfcol.generate("icosahedron")["graph"]
    report = surfcol.discharge(ico)
    assert report["totals"] == ["-12"] * 4
    assert surfcol.find_config(ico)["kind"] == "FIVE_ADJ_6_7"


def test_errors():
    with pytest.raises(surfcol.InvalidInput):
        surfcol.edge_width({"vertices": []})
    with pytest.raises(surfcol.PreconditionError):
        surfcol.rho(3, "0")
    with pytest.raises(surfcol.SurfcolError):
        surfcol.generate("torus_grid_tri", m=2, n=2)
    code, text = surfcol.run_cli(["rho", "--genus", "4"])
    assert code == 0 and '"1032"' in text
