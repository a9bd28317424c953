"""Rooted spanning forests by BFS, connectivity + Euler tour, and path reversal."""
from .bfs import bfs_rst
from .connectivity import SpanningForest, cc_spanning_forest, hook_step, jump_to_convergence
from .engine import StepEngine, StepReport
from .euler import EulerStructure, cc_euler_rst, root_forest
from .forest import RootedForest, forest_depth
from .graph import EdgeList, Graph, build_csr, generate, load_edge_list
from .prrst import pr_rst
from .validate import ValidationReport, oracle_cc, oracle_root, validate_rooted_forest

ALGORITHMS = {
    "bfs": bfs_rst,
    "cc-euler": cc_euler_rst,
    "pr-rst": pr_rst,
}

__all__ = [
    "ALGORITHMS", "EdgeList", "EulerStructure", "Graph", "RootedForest", "SpanningForest",
    "StepEngine", "StepReport", "ValidationReport", "bfs_rst", "build_csr", "cc_euler_rst",
    "cc_spanning_forest", "forest_depth", "generate", "hook_step", "jump_to_convergence",
    "load_edge_list", "oracle_cc", "oracle_root", "pr_rst", "root_forest",
    "validate_rooted_forest",
]
