from src.lattice.index_map import ABSENT, LatticeIndexMap, build_lattice

__all__ = ["ABSENT", "LatticeIndexMap", "build_lattice"]
