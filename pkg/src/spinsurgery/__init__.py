"""Sato and Birman-Craggs homomorphisms from framed-link surgery on mapping tori."""

from .conventions import FROZEN, Conventions
from .errors import InconsistencyError, InvalidInputError, ParseError, SpinSurgeryError
from .homology import SpinStructure, SurfaceModel, arf_form, i_z, intersect, pd, q_eval, seifert, spin_act
from .mapping import BoundingPairChain, Letter, Nonseparating, Separating, TwistWord

__version__ = "0.1.0"
