"""Regenerate the vendored data files (benchmark .col instances, presets,
bundled schedules). Run from the repo root:

    python3 tools/gen_instances.py

The queens and myciel families are constructed; the jean graph is the
les-miserables character co-appearance network (via networkx's bundled
copy of the classic dataset), padded to the conventional 80 nodes.
"""

import json
from pathlib import Path

import networkx as nx

import sys

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from pottscolor.generators import myciel_graph, queens_graph  # noqa: E402
from pottscolor.graphs import build_graph, render_dimacs  # noqa: E402

DATA = Path(__file__).resolve().parents[1] / "src" / "pottscolor" / "data"


def write_instances():
    out = DATA / "instances"
    out.mkdir(parents=True, exist_ok=True)
    queens = [(5, 5), (6, 6), (7, 7), (8, 8), (8, 12), (9, 9), (11, 11), (13, 13)]
    for rows, cols in queens:
        g = queens_graph(rows, cols)
        name = f"queen{rows}-{cols}"
        text = render_dimacs(
            g, comment=f"{rows}x{cols} queens attack graph, node = row*{cols}+col"
        )
        (out / f"{name}.col").write_text(text)
        print(f"{name}: n={g.node_count} m={g.edge_count}")
    for k in (5, 6):
        g = myciel_graph(k)
        text = render_dimacs(
            g, comment=f"triangle-free graph with chromatic number {k + 1}"
        )
        (out / f"myciel{k}.col").write_text(text)
        print(f"myciel{k}: n={g.node_count} m={g.edge_count}")
    G = nx.les_miserables_graph()
    names = list(G.nodes())
    index = {name: i for i, name in enumerate(names)}
    edges = [(index[u], index[v]) for u, v in G.edges()]
    g = build_graph(80, edges)  # pad to the conventional 80 nodes
    text = render_dimacs(g, comment="les-miserables character co-appearance graph")
    (out / "jean.col").write_text(text)
    print(f"jean: n={g.node_count} m={g.edge_count}")


# (name, model_kind, optimizer, weight_decay, q, d0, hidden, lr, dropout)
PRESETS = [
    ("anna", "SAGE_STYLE", "ADAMW", 0.01, 11, 43, [22], 0.03507, 0.3298),
    ("jean", "SAGE_STYLE", "ADAMW", 0.01, 10, 50, [62], 0.01663, 0.3185),
    ("myciel5", "SAGE_STYLE", "ADAMW", 0.01, 6, 16, [18], 0.01333, 0.3964),
    ("myciel6", "SAGE_STYLE", "ADAMW", 0.01, 7, 8, [22], 0.01779, 0.2225),
    ("queen5-5", "SAGE_STYLE", "ADAMW", 0.01, 5, 77, [32], 0.02988, 0.3784),
    ("queen6-6", "SAGE_STYLE", "ADAMW", 0.01, 7, 20, [12], 0.05105, 0.3425),
    ("queen7-7", "SAGE_STYLE", "ADAMW", 0.01, 7, 67, [12], 0.02175, 0.2339),
    ("queen8-8", "SAGE_STYLE", "ADAMW", 0.01, 9, 32, [10], 0.02728, 0.2878),
    ("queen8-12", "SAGE_STYLE", "ADAMW", 0.01, 12, 107, [23], 0.01730, 0.1796),
    ("queen9-9", "SAGE_STYLE", "ADAMW", 0.01, 10, 109, [16], 0.02636, 0.3257),
    ("queen11-11", "SAGE_STYLE", "ADAMW", 0.01, 11, 75, [25], 0.04600, 0.2974),
    ("queen13-13", "SAGE_STYLE", "ADAMW", 0.01, 13, 112, [199], 0.14426, 0.1571),
    ("cora", "GCN_STYLE", "ADAM", 0.0, 5, 2342, [3496], 0.00556, 0.0148),
    ("citeseer", "GCN_STYLE", "ADAM", 0.0, 6, 5127, [2472], 0.00983, 0.0161),
    ("pubmed", "GCN_STYLE", "ADAM", 0.0, 8, 5137, [6082], 0.02966, 0.1715),
]


def write_presets():
    out = DATA / "presets"
    out.mkdir(parents=True, exist_ok=True)
    for name, kind, opt, wd, q, d0, hidden, lr, dropout in PRESETS:
        cfg = {
            "model_kind": kind,
            "embedding_dim": d0,
            "hidden_dims": hidden,
            "num_colors": q,
            "learning_rate": lr,
            "dropout": dropout,
            "max_epochs": 100000,
            "patience": 500,
            "tolerance": 1e-4,
            "seed": 0,
            "optimizer_kind": opt,
            "weight_decay": wd,
        }
        (out / f"{name}.json").write_text(json.dumps(cfg, indent=2) + "\n")
    print(f"wrote {len(PRESETS)} presets")


MEETINGS_CSV = """\
id,start,end
A,08:00,12:00
B,09:00,11:00
C,10:00,14:00
D,13:00,17:00
E,17:00,20:00
F,15:00,22:00
"""


def write_schedules():
    out = DATA / "schedules"
    out.mkdir(parents=True, exist_ok=True)
    (out / "meetings.csv").write_text(MEETINGS_CSV)
    print("wrote meetings.csv")


if __name__ == "__main__":
    write_instances()
    write_presets()
    write_schedules()
