"""Harness behavior: reports, manifests, coloring files, self-consistency."""

import json

import numpy as np
import pytest

from pottscolor.bench import (
    GREEDY,
    PI_SAGE,
    TABUCOL,
    InstanceReport,
    load_manifest,
    parse_coloring,
    render_coloring,
    reports_csv,
    reports_json,
    render_table,
    run_bench,
    run_chromatic,
    run_color,
    run_schedule,
    schedule_by_sweep,
)
from pottscolor.errors import InputError, ParseError
from pottscolor.generators import complete_graph, random_graph
from pottscolor.gnn import BINARY
from pottscolor.instances import schedule_resource
from pottscolor.potts import Coloring, hard_energy

TINY_CONFIG = {
    "model_kind": "SAGE_STYLE",
    "embedding_dim": 6,
    "hidden_dims": [8],
    "num_colors": 3,
    "learning_rate": 0.05,
    "dropout": 0.0,
    "max_epochs": 300,
    "patience": 50,
}


@pytest.fixture
def tiny_config(tmp_path):
    p = tmp_path / "tiny.json"
    p.write_text(json.dumps(TINY_CONFIG))
    return p


class TestColoringFiles:
    def test_round_trip(self):
        c = Coloring(np.array([2, 0, 1, 1]), 3)
        text = render_coloring(c)
        assert text.splitlines()[0] == "node,color"
        assert text.splitlines()[1] == "1,3"
        back = parse_coloring(text)
        assert np.array_equal(back.assignment, c.assignment)

    def test_parse_rejects_garbage(self):
        with pytest.raises(ParseError):
            parse_coloring("nope\n1,1\n")
        with pytest.raises(ParseError):
            parse_coloring("node,color\n0,1\n")
        with pytest.raises(ParseError):
            parse_coloring("node,color\n1,1\n1,2\n")
        with pytest.raises(ParseError):
            parse_coloring("node,color\n1,1\n3,1\n")

    def test_empty_coloring(self):
        back = parse_coloring("node,color\n")
        assert len(back) == 0


class TestRunColor:
    def test_greedy_row(self):
        report, coloring = run_color("myciel5", solver=GREEDY)
        assert report.solver == GREEDY
        assert report.cost == 0 and report.epsilon == 0.0
        assert report.q == 6 and report.chi_upper == 6
        assert report.seeds_tried == 1
        assert report.n == 47 and report.edge_count == 236

    def test_tabucol_row_cost_is_recomputable(self):
        report, coloring = run_color("queen5-5", solver=TABUCOL, q=5, seeds=2)
        from pottscolor.instances import load_instance

        g = load_instance("queen5-5")
        assert report.cost == hard_energy(g, coloring)
        assert report.cost == hard_energy(g, parse_coloring(render_coloring(coloring)))
        assert report.stop_reason == "ZERO_COST"
        assert report.chi_upper == 5

    def test_gnn_row(self, tiny_config):
        g = random_graph(12, 0.3, seed=1)
        report, coloring = run_color(
            "tiny", config_spec=tiny_config, solver=PI_SAGE, seeds=3, graph=g
        )
        assert report.graph_name == "tiny"
        assert report.cost == int(hard_energy(g, coloring))
        assert report.seeds_tried <= 3

    def test_tabucol_infeasible_q_with_purify(self):
        g = complete_graph(5)
        report, coloring = run_color(
            "k5", solver=TABUCOL, q=3, seeds=1, budget=200,
            apply_purify=True, graph=g,
        )
        assert report.cost == 0
        assert hard_energy(g, coloring) == 0.0
        assert coloring.num_colors > 3

    def test_budget_caps_tabucol_iterations(self):
        g = complete_graph(6)
        report, _ = run_color("k6", solver=TABUCOL, q=2, seeds=1,
                              budget=50, graph=g)
        assert report.cost > 0
        assert report.stop_reason == "MAX_ITERATIONS"

    def test_argument_errors(self, tiny_config):
        with pytest.raises(InputError, match="unknown solver"):
            run_color("myciel5", solver="SIMPLEX")
        with pytest.raises(InputError, match="needs a config"):
            run_color("myciel5", solver=PI_SAGE)
        with pytest.raises(InputError, match="needs q"):
            run_color("myciel5", solver=TABUCOL)
        with pytest.raises(InputError, match="seeds"):
            run_color("myciel5", solver=GREEDY, seeds=0)
        with pytest.raises(InputError, match="unknown instance"):
            run_color("atlantis", solver=GREEDY)


class TestRunChromatic:
    def test_exact_oracle(self):
        report = run_chromatic("k4", exact=True, graph=complete_graph(4))
        assert report["found"] and report["chi_upper"] == 4
        assert report["strategy"] == "ENUMERATION"

    def test_search_with_attempt_log(self, tiny_config):
        g = complete_graph(3)
        report = run_chromatic("k3", config_spec=tiny_config, q_max=6, graph=g)
        assert report["found"] and report["chi_upper"] == 3
        qs = [a["q"] for a in report["attempts"]]
        assert qs == sorted(qs)  # sequential order
        assert report["attempts"][-1]["feasible"]
        assert report["coloring"] is not None

    def test_binary_strategy(self, tiny_config):
        g = complete_graph(3)
        report = run_chromatic(
            "k3", config_spec=tiny_config, strategy=BINARY, q_max=8, graph=g
        )
        assert report["found"]
        assert len(report["attempts"]) >= 2

    def test_exhausted_search_reports_not_found(self, tiny_config):
        g = complete_graph(5)
        report = run_chromatic("k5", config_spec=tiny_config, q_max=2, graph=g)
        assert not report["found"]
        assert report["chi_upper"] is None
        assert report["best_cost"] > 0

    def test_config_required_for_search(self):
        with pytest.raises(InputError, match="config"):
            run_chromatic("k3", graph=complete_graph(3))


class TestRunSchedule:
    def test_bundled_instance_needs_three_resources(self):
        out = run_schedule(schedule_resource("meetings"), solver=TABUCOL)
        assert out["resources_used"] == 3
        assert out["lower_bound"] == 3
        assert out["feasible"] and out["cost"] == 0
        assert len(out["assignment"]) == 6

    def test_single_booking(self):
        out = run_schedule("id,start,end\nA,08:00,09:00\n")
        assert out["resources_used"] == 1
        assert out["assignment"] == {"A": 0}

    def test_header_only(self):
        out = run_schedule("id,start,end\n")
        assert out["resources_used"] == 0 and out["feasible"]

    def test_greedy_solver_route(self):
        out = run_schedule(schedule_resource("meetings"), solver=GREEDY)
        assert out["feasible"]
        assert out["resources_used"] >= 3

    def test_sweep_route_matches(self):
        sweep = schedule_by_sweep(schedule_resource("meetings"))
        assert sweep["resources_used"] == 3
        assert sweep["solver"] == "SWEEP"

    def test_parse_errors_propagate(self):
        with pytest.raises(ParseError):
            run_schedule("id,start\nA,1\n")


class TestManifest:
    def test_bare_list_and_rows_object(self, tmp_path):
        rows = [{"graph": "myciel5", "solver": GREEDY}]
        assert load_manifest(rows) == rows
        assert load_manifest({"rows": rows}) == rows
        p = tmp_path / "m.json"
        p.write_text(json.dumps(rows))
        assert load_manifest(p) == rows

    def test_strictness(self, tmp_path):
        with pytest.raises(InputError, match="unknown keys"):
            load_manifest([{"graph": "x", "colour": 3}])
        with pytest.raises(InputError, match="missing graph"):
            load_manifest([{"solver": GREEDY}])
        with pytest.raises(InputError, match="not valid JSON"):
            p = tmp_path / "bad.json"
            p.write_text("{oops")
            load_manifest(p)
        with pytest.raises(InputError, match="not found"):
            load_manifest(tmp_path / "absent.json")
        with pytest.raises(InputError, match="rows"):
            load_manifest({"rows": [], "extra": 1})

    def test_empty_manifest(self):
        assert run_bench([]) == {"rows": []}


class TestRunBench:
    MANIFEST = [
        {"graph": "myciel5", "solver": GREEDY},
        {"graph": "queen5-5", "solver": TABUCOL, "q": 5, "seeds": 2},
        {"graph": "missing-instance", "solver": GREEDY},
    ]

    def test_rows_in_manifest_order_with_errors_recorded(self):
        table = run_bench(self.MANIFEST, max_workers=2)
        rows = table["rows"]
        assert len(rows) == 3
        assert rows[0]["graph_name"] == "myciel5" and rows[0]["cost"] == 0
        assert rows[1]["graph_name"] == "queen5-5"
        assert "error" in rows[2]
        assert "unknown instance" in rows[2]["error"]

    def test_costs_match_recomputed_energy(self):
        table = run_bench(self.MANIFEST[:2])
        from pottscolor.instances import load_instance

        for row in table["rows"]:
            g = load_instance(row["graph_name"])
            c = parse_coloring(row["coloring"])
            assert row["cost"] == hard_energy(g, c)

    def test_byte_stability_modulo_timing(self):
        def strip(table):
            rows = []
            for row in table["rows"]:
                row = dict(row)
                row.pop("wall_time_seconds", None)
                rows.append(row)
            return {"rows": rows}

        a = run_bench(self.MANIFEST[:2], max_workers=2)
        b = run_bench(self.MANIFEST[:2], max_workers=1)
        assert reports_json(strip(a)) == reports_json(strip(b))

    def test_out_dir_artifacts(self, tmp_path):
        run_bench(self.MANIFEST[:1], out_dir=tmp_path)
        names = sorted(p.name for p in tmp_path.iterdir())
        assert "bench.json" in names and "bench.csv" in names
        assert "000-myciel5-GREEDY.csv" in names
        saved = json.loads((tmp_path / "bench.json").read_text())
        assert saved["rows"][0]["cost"] == 0


class TestRendering:
    def test_csv_and_table(self):
        table = run_bench(self.manifest())
        text = reports_csv(table)
        header = text.splitlines()[0]
        assert header.startswith("graph_name,n,edge_count,density,q,solver")
        assert "error:" in text
        pretty = render_table(table)
        assert "myciel5" in pretty

    @staticmethod
    def manifest():
        return [
            {"graph": "myciel5", "solver": GREEDY},
            {"graph": "nowhere", "solver": GREEDY},
        ]

    def test_report_dict_shape(self):
        report, _ = run_color("myciel5", solver=GREEDY)
        d = report.to_dict()
        assert set(d) == {
            "graph_name", "n", "edge_count", "density", "q", "solver",
            "cost", "epsilon", "chi_upper", "seeds_tried",
            "wall_time_seconds", "stop_reason",
        }
        assert isinstance(report, InstanceReport)
