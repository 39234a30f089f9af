"""Exact computations for fields carrying an action of a finite group."""

__version__ = "0.1.0"

from .ff import ExtField, embed, make_field
from .groups import FiniteGroup, cyclic_group, from_cayley_table, preset
from .poly import MultiPoly, PolyRing
from .groebner import Ideal, is_prime_zero_dim, member
from .gtf import GTransformalField, extend_step, reconstruct, structure_constants
from .axioms import diagonal_instance, find_witness, norm_instance
from .closure import ClosureTower, SupernaturalNumber, certify_gclosed, closure_degree
from .cyclotomic import CycloField, extend_action, norm_solvable
