"""Polynomial-time pathwidth approximation from a tree decomposition, with certificates."""
from .decomp import PathDecomposition, TreeDecomposition
from .graph import Graph
from .solve import INF, Solver, SolveResult, solve_top
from .witness import Subdivision, Witness

__all__ = ["Graph", "TreeDecomposition", "PathDecomposition", "Witness", "Subdivision",
           "Solver", "SolveResult", "solve_top", "INF"]
