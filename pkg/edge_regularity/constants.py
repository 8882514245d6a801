# Copyright (c) 2023 Alex Butler
#
# Permission is hereby granted, free of charge, to any person obtaining a copy of this
# software and associated documentation files (the "Software"), to deal in the Software
# without restriction, including without limitation the rights to use, copy, modify, merge,
# publish, distribute, sublicense, and/or sell copies of the Software, and to permit persons
# to whom the Software is furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in all copies or
# substantial portions of the Software.
"""Caps, defaults and exit codes shared by the workbench."""
import os

MAX_VERTICES = 64
"""One machine word per adjacency row."""

DEFAULT_VERTEX_CAP = int(os.getenv("EDGE_REGULARITY_VERTEX_CAP", "18"))
"""Largest graph whose vertex subsets the Hochster scan will enumerate."""
DEFAULT_FACE_CAP = int(os.getenv("EDGE_REGULARITY_FACE_CAP", str(2**22)))
"""Largest independence complex (face count, including the empty face) we build."""
DEFAULT_EDGE_CAP = int(os.getenv("EDGE_REGULARITY_EDGE_CAP", "64"))
"""Largest edge count accepted by the exact co-chordal cover search."""
DEFAULT_TIMEOUT_MS = int(os.getenv("EDGE_REGULARITY_TIMEOUT_MS", "60000"))
"""Per-graph budget for the exact cover searches."""

RECOMMENDED_COVER_EDGES = 28
"""Above this edge count the exact cover search usually runs into its budget."""

# Exponential solvers refuse inputs above these sizes
INDEPENDENCE_CAP = 40
CHROMATIC_CAP = 24
MATCHING_CAP = 40
MIN_MAXIMAL_MATCHING_CAP = 24
INDMATCH_EDGE_CAP = 40
SPLIT_COVER_CAP = 20
WELL_COVERED_CAP = 32
HOLE_SEARCH_CAP = 20
SANDWICH_CAP = 20
CYCLE_BOUND_CAP = 20

DEFAULT_FIELDS = [2]
PATHS_CYCLES_NMAX = 15
WHISKER_NMAX = 6
GAP_DIRECT_VERTICES = 18
GAP_AUTO_DIRECT_VERTICES = 12
"""Gap instances up to this size are scanned whole unless a mode is forced."""
SUBADDITIVITY_SAMPLES = 500
KUNNETH_SAMPLES = 200
WELL_COVERED_SAMPLES = 200
SPHERE_MMAX = 5

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3

INVARIANT_NAMES = [
    "alpha",
    "omega",
    "chi",
    "nu",
    "min_maximal_matching",
    "indmatch",
    "cycle_matching_bound",
    "regularity",
    "cochord",
]
