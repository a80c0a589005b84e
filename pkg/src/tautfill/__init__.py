"""Exact minimum fillings of triangulated 2-spheres and their ball certificates."""
from .adu import AduWitness, additivity_check, g_split, split_taut, witness
from .ball import (certify_ball, flag_check, shuck, to_ball_complex,
                   verify_freely_shellable)
from .chains import Chain, OrientedSimplex, boundary, cone, l1_norm, maxdeg, project, vert
from .fill import FillResult, coning_bound, qvol, zvol
from .oracle import enumerate_taut, oracle_zvol
from .sphere import SphereTriangulation, catalog, connected_sum, orientation_cycle

__version__ = "0.1.0"
