"""Desk-scale laboratory for domination in Cartesian products with a cograph factor."""

__version__ = "0.1.0"

from .graph import Graph, VertexSet  # noqa: E402
from .cograph import Cotree, P4Witness, build_cotree, eval_cotree, find_induced_p4, gamma_cotree  # noqa: E402
from .domination import DomSolution, CellPartition, cell_partition, gamma_exact, gamma_jk  # noqa: E402
from .product import ProductGraph, cartesian_product  # noqa: E402
from .labeling import certify, run_pipeline, verify_certificate  # noqa: E402
from .harness import SweepConfig, vizing_sweep  # noqa: E402

__all__ = [
    "Graph", "VertexSet", "Cotree", "P4Witness", "build_cotree", "eval_cotree", "find_induced_p4",
    "gamma_cotree", "DomSolution", "CellPartition", "cell_partition", "gamma_exact", "gamma_jk",
    "ProductGraph", "cartesian_product", "certify", "run_pipeline", "verify_certificate",
    "SweepConfig", "vizing_sweep",
]
