"""Graded decomposition numbers of Hecke algebra blocks and strict-wildness certificates."""
from .partitions import Partition, conjugate, dominates, is_e_regular
from .abacus import BlockId, block_of, decode_triple, enumerate_block
from .laurent import LaurentPoly

__version__ = "0.1.0"

__all__ = ["Partition", "conjugate", "dominates", "is_e_regular", "BlockId", "block_of",
           "decode_triple", "enumerate_block", "LaurentPoly"]
