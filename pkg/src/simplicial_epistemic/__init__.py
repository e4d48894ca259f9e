"""Chromatic simplicial models of multi-agent knowledge.

Build complexes, evolve them under communication models, evaluate epistemic
formulas (K, C, D, CD), and decide task solvability with decision maps and
logical obstructions.
"""

from .algorithms import courteous_map, knowledge_threshold_map, tas_loser_qualifies, tas_two_round_map
from .communication import (
    CommGraph,
    CommModel,
    LocalState,
    canonical_state,
    iterate_rounds,
    make_model,
    one_round,
    parse_state,
    partial_round,
)
from .complex import (
    ChromaticComplex,
    Vertex,
    build_complex,
    euler_characteristic,
    facet_intersection,
    is_k_connected,
    reachable_worlds,
)
from .duality import EpistemicFrame, complex_to_frame, frame_to_complex
from .logic import (
    eval_formula,
    is_positive,
    pair_knowledge_obstruction,
    cd_not_all,
    parse_formula,
    public_announce,
    to_sexpr,
    truth_table,
)
from .tasks import (
    Task,
    Unsolvable,
    Solved,
    binary_input_complex,
    check_obstruction,
    make_task,
    product_update,
    search_decision_map,
    validate_decision_map,
)

__version__ = "0.1.0"
