"""Stabilizer states as decorated graphs, with graphical Pauli measurements."""

from .clifford import apply_h, apply_s, apply_word, apply_z
from .equivalence import apply_e1, apply_e2, disconnect_hollow_measured, reduce_nodes, simplify
from .errors import *  # noqa: F401,F403
from .graph import (
    StabilizerGraph,
    advance_loop,
    flip_fill,
    flip_sign,
    local_complement_edge,
    local_complement_node,
    make_graph,
    neighbors,
    toggle_edge,
)
from .measurement import (
    Classification,
    MeasurementRecord,
    OutcomePolicy,
    TraceStep,
    classify,
    measure_pauli,
    measure_single,
    measure_z_product,
    post_transform,
)
from .pauli import PauliProduct
from .serialize import export_dot, graph_from_json, graph_to_json

__version__ = "0.1.0"
