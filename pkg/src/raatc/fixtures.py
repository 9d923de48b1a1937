"""Named graphs, complexes and expected values used by the test-suite and by
``raatc fixtures``."""

from __future__ import annotations

import json
from importlib import resources

from .graph import Graph, parse_graph

# A 2-clique plus an isolated vertex v = 0.
FIGURE1 = "3;1-2"

# A triangle {1,2,3} with v = 0 hanging off vertex 1.
FIGURE2 = "4;0-1,1-2,1-3,2-3"

# Eight vertices: v = 0 and its star {0,1,2,3,4} form a 5-clique; 5 is adjacent
# to 1,2,3,4 (a second 5-clique {1,2,3,4,5}); the 4-cliques {1,3,5,7} and
# {2,4,5,6} make up the lower wings.
FIGURE3 = ("8;0-1,0-2,0-3,0-4,1-2,1-3,1-4,2-3,2-4,3-4,"
           "5-1,5-2,5-3,5-4,5-6,5-7,7-1,7-3,6-2,6-4")


def figure1() -> tuple[Graph, int]:
    return parse_graph(FIGURE1), 0


def figure2() -> tuple[Graph, int]:
    return parse_graph(FIGURE2), 0


def figure3() -> tuple[Graph, int]:
    return parse_graph(FIGURE3), 0


BOUNDARY_TRIANGLE = {"m": 3, "facets": [[1, 2], [1, 3], [2, 3]]}


def goldens() -> dict:
    text = resources.files("raatc").joinpath("data/goldens.json").read_text()
    return json.loads(text)
