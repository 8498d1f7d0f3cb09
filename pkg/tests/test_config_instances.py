"""Config loading, shipped presets, and vendored benchmark instances."""

import json

import pytest

from pottscolor.config import (
    hyperparams_from_dict,
    hyperparams_to_dict,
    list_presets,
    load_config,
    load_preset,
    resolve_config,
)
from pottscolor.errors import InputError
from pottscolor.generators import myciel_graph, queens_graph
from pottscolor.gnn import ADAM, ADAMW, GCN_STYLE, SAGE_STYLE, Hyperparams
from pottscolor.instances import (
    find_instance,
    list_instances,
    load_instance,
    schedule_resource,
)

MINIMAL = {
    "model_kind": GCN_STYLE,
    "embedding_dim": 8,
    "hidden_dims": [4],
    "num_colors": 3,
}


class TestConfigDicts:
    def test_minimal_config_fills_defaults(self):
        hp = hyperparams_from_dict(MINIMAL)
        assert hp.num_colors == 3
        assert hp.hidden_dims == (4,)
        assert hp.optimizer_kind == ADAMW
        assert hp.weight_decay == 0.01

    def test_round_trip(self):
        hp = hyperparams_from_dict(dict(MINIMAL, learning_rate=0.02, seed=7))
        again = hyperparams_from_dict(hyperparams_to_dict(hp))
        assert again == hp

    def test_unknown_key_refused(self):
        with pytest.raises(InputError, match="unknown config keys: momentum"):
            hyperparams_from_dict(dict(MINIMAL, momentum=0.9))

    def test_missing_structural_key_refused(self):
        bad = dict(MINIMAL)
        del bad["num_colors"]
        with pytest.raises(InputError, match="missing config keys: num_colors"):
            hyperparams_from_dict(bad)

    def test_stub_key_zero_is_accepted(self):
        hp = hyperparams_from_dict(dict(MINIMAL, color_count_regularization=0))
        assert isinstance(hp, Hyperparams)

    def test_stub_key_nonzero_is_refused(self):
        with pytest.raises(InputError, match="stub"):
            hyperparams_from_dict(dict(MINIMAL, color_count_regularization=0.1))

    def test_non_dict_refused(self):
        with pytest.raises(InputError):
            hyperparams_from_dict([1, 2, 3])

    def test_bad_values_surface_as_input_errors(self):
        with pytest.raises(InputError):
            hyperparams_from_dict(dict(MINIMAL, num_colors=0))


class TestConfigFiles:
    def test_load_config(self, tmp_path):
        p = tmp_path / "hp.json"
        p.write_text(json.dumps(dict(MINIMAL, dropout=0.25)))
        assert load_config(p).dropout == 0.25

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError, match="not found"):
            load_config(tmp_path / "nope.json")

    def test_invalid_json(self, tmp_path):
        p = tmp_path / "hp.json"
        p.write_text("{not json")
        with pytest.raises(InputError, match="JSON"):
            load_config(p)

    def test_resolve_prefers_files_then_presets(self, tmp_path):
        p = tmp_path / "mine.json"
        p.write_text(json.dumps(dict(MINIMAL, num_colors=9)))
        assert resolve_config(p).num_colors == 9
        assert resolve_config("myciel5").num_colors == 6

    def test_resolve_unknown_name(self):
        with pytest.raises(InputError, match="unknown preset"):
            resolve_config("no-such-preset")


# name -> (colors, embedding, hidden, lr, dropout) from the published
# per-instance tuning tables
PRESET_SPOT_CHECKS = {
    "myciel5": (6, 16, (18,), 0.01333, 0.3964),
    "queen5-5": (5, 77, (32,), 0.02988, 0.3784),
    "queen13-13": (13, 112, (199,), 0.14426, 0.1571),
    "jean": (10, 50, (62,), 0.01663, 0.3185),
    "anna": (11, 43, (22,), 0.03507, 0.3298),
}


class TestPresets:
    def test_fifteen_presets_ship(self):
        names = list_presets()
        assert len(names) == 15
        assert {"myciel5", "queen8-12", "jean", "anna", "cora"} <= set(names)

    def test_all_presets_load(self):
        for name in list_presets():
            hp = load_preset(name)
            assert hp.max_epochs == 100_000
            assert hp.patience == 500
            assert hp.seed == 0

    @pytest.mark.parametrize("name,expect", sorted(PRESET_SPOT_CHECKS.items()))
    def test_published_tuning_values(self, name, expect):
        q, d0, hidden, lr, dropout = expect
        hp = load_preset(name)
        assert hp.num_colors == q
        assert hp.embedding_dim == d0
        assert hp.hidden_dims == hidden
        assert hp.learning_rate == lr
        assert hp.dropout == dropout

    def test_benchmark_presets_use_decoupled_decay(self):
        hp = load_preset("queen6-6")
        assert hp.model_kind == SAGE_STYLE
        assert hp.optimizer_kind == ADAMW
        assert hp.weight_decay == 0.01

    def test_citation_presets_use_plain_adam(self):
        hp = load_preset("cora")
        assert hp.model_kind == GCN_STYLE
        assert hp.optimizer_kind == ADAM
        assert hp.weight_decay == 0.0

    def test_unknown_preset_lists_options(self):
        with pytest.raises(InputError, match="available:"):
            load_preset("queen99-99")


class TestInstances:
    def test_vendored_listing(self):
        names = list_instances()
        expected = {
            "jean", "myciel5", "myciel6",
            "queen5-5", "queen6-6", "queen7-7", "queen8-8", "queen8-12",
            "queen9-9", "queen11-11", "queen13-13",
        }
        assert expected <= set(names)

    def test_vendored_files_match_generators(self):
        g = load_instance("myciel5")
        h = myciel_graph(5)
        assert g == h
        q = load_instance("queen8-8")
        assert q == queens_graph(8, 8)

    def test_jean_shape(self):
        g = load_instance("jean")
        assert g.node_count == 80
        assert g.edge_count == 254

    def test_load_by_path(self, tmp_path):
        p = tmp_path / "tiny.col"
        p.write_text("p edge 3 2\ne 1 2\ne 2 3\n")
        g = load_instance(p)
        assert g.node_count == 3 and g.edge_count == 2

    def test_unknown_name(self):
        with pytest.raises(InputError, match="unknown instance"):
            load_instance("zebra")

    def test_env_dir_lookup(self, tmp_path, monkeypatch):
        (tmp_path / "extra.col").write_text("p edge 2 1\ne 1 2\n")
        monkeypatch.setenv("POTTSCOLOR_INSTANCES", str(tmp_path))
        assert "extra" in list_instances()
        assert load_instance("extra").edge_count == 1
        assert find_instance("missing") is None

    def test_suffix_tolerated(self):
        assert find_instance("myciel5.col") is not None

    def test_schedule_resource(self):
        text = schedule_resource("meetings")
        assert text.splitlines()[0].strip() == "id,start,end"
        with pytest.raises(InputError, match="unknown bundled schedule"):
            schedule_resource("fig99")
