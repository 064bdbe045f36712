"""
Sample grids, functional datasets, simulation and file formats
"""

from src.data.grid import SampleGrid, make_grid, canonical_grid, uniform_random_grid
from src.data.dataset import FunctionalDataset
from src.data.simulation import OracleModel, cosine_basis, oracle_response, simulate
from src.data.io import load_csv, save_csv, load_oracle, save_oracle

__all__ = [
    "SampleGrid",
    "make_grid",
    "canonical_grid",
    "uniform_random_grid",
    "FunctionalDataset",
    "OracleModel",
    "cosine_basis",
    "oracle_response",
    "simulate",
    "load_csv",
    "save_csv",
    "load_oracle",
    "save_oracle",
]
