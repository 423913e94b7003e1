"""Exact mixed commutator lengths in wreath products ``Z wr Gamma``."""
from .abelian import FgAbelianGroup, Projection, Subgroup, intrk_abelian, quotient, sperk_genrk, subgroup_rank
from .cyclic import reduce_to_mixed, reduction_steps
from .decompose import Certificate, Factor, decompose_mixed, pair_into_commutators, split_rewrite, verify
from .errors import ConditionError, InputError, MclError, ResourceLimitError
from .length import (INFINITE, build_xr, check_conditions, cl_g_abelian, cl_gn, cl_gn_bounds,
                     cl_gn_exact, min_vanishing_subgroup)
from .linalg import IntMatrix, hermite_normal_form, smith_normal_form
from .orbit_rank import c_d, intrk_fiber, orbit_rank, orbit_rank_greedy, semidirect_rank
from .wreath import FinSupFunc, WreathElt, WreathGroup, delta

__version__ = "0.1.0"
