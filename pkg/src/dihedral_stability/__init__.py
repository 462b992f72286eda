"""Word lengths and the stability metric lambda_1 for dihedral groups
generated by three reflections."""

from .dihedral import (
    DihedralElement,
    GeneratingSet,
    canonical_form,
    conjugate,
    inverse,
    is_generating,
    multiply,
    project,
)
from .errors import InvalidArgumentError, NonGeneratingError, VerificationFailure
from .residues import ResidueSet, cyclic_subgroup, diffset, stabilizer, sumset
from .stability import LambdaReport, check_sharpness, check_sqrt_bound, lambda1
from .wordlength import WordLengthTable, bfs_lengths, sumset_lengths, w_prime_sequence

__version__ = "0.1.0"
