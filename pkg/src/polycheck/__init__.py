"""Spatial model checker for polyhedra given as simplicial complexes."""

from .checker import (
    CheckResults,
    run,
    sat_box,
    sat_through,
    sat_through_paths,
    through_trace,
)
from .formulas import (
    And,
    Atom,
    Box,
    Formula,
    Not,
    Or,
    Through,
    Top,
    desugar,
    elaborate,
    print_formula,
)
from .geometry import (
    CellTable,
    SimplexSpec,
    SimplicialModel,
    ValidationReport,
    barycentre,
    build_cell_table,
    canonicalize_simplex,
    face_closure,
    validate_combinatorial,
    validate_geometric,
)
from .kripke import KripkeModel, SatSet, build_kripke, in_set, out_set
from .maze import MazeLayout, MazeParams, generate_maze
from .modelio import (
    ResultsDocument,
    import_obj,
    load_model_json,
    load_results_json,
    save_model_json,
    save_results_json,
)
from .parser import Program, load_program, parse_spec, print_program
from .taskgraph import TaskGraph, build_task_graph

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "Box",
    "CellTable",
    "CheckResults",
    "Formula",
    "KripkeModel",
    "MazeLayout",
    "MazeParams",
    "Not",
    "Or",
    "Program",
    "ResultsDocument",
    "SatSet",
    "SimplexSpec",
    "SimplicialModel",
    "TaskGraph",
    "Through",
    "Top",
    "ValidationReport",
    "barycentre",
    "build_cell_table",
    "build_kripke",
    "build_task_graph",
    "canonicalize_simplex",
    "desugar",
    "elaborate",
    "face_closure",
    "generate_maze",
    "import_obj",
    "in_set",
    "load_model_json",
    "load_program",
    "load_results_json",
    "out_set",
    "parse_spec",
    "print_formula",
    "print_program",
    "run",
    "sat_box",
    "sat_through",
    "sat_through_paths",
    "save_model_json",
    "save_results_json",
    "through_trace",
    "validate_combinatorial",
    "validate_geometric",
]
