"""Pattern-avoiding flattened partitions: enumeration, bijections and identities."""

from .core import (
    DomainError, InvalidPermutation, Perm, RunDecomposition, contains,
    count_occurrences, flatten_set_partition, format_perm, inversions,
    is_flattened, is_motzkin_permutation, parse_perm, run_decompose, standardize,
)
from .enumeration import (
    CountTable, GuardError, all_flattened, count_avoiding, enumerate_avoiding,
    parse_patterns,
)

__version__ = "0.1.0"
