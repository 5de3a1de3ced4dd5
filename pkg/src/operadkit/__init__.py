"""Exact computations with free operads and PROPs, presented operads, operad
algebras, 2d TQFTs from Frobenius algebras, and L-infinity relations."""

from .kernels import BACKEND
from .linalg import RatMatrix, in_span, rank, rref
from .trees import (
    Forest,
    Generator,
    Leaf,
    Mode,
    Node,
    PlanarTree,
    Signature,
    act_perm,
    canonical_key,
    corolla,
    enumerate_trees,
    forest_compose,
    forest_tensor,
    gamma,
    graft,
    identity,
)
from .free import OperadElement, PropElement, braiding, lin_compose, lin_gamma, lin_tensor
from .quotient import Presentation, ideal_slice, is_member, normal_form, quotient_dim
from .presets import PresetName, preset

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "RatMatrix",
    "in_span",
    "rank",
    "rref",
    "Forest",
    "Generator",
    "Leaf",
    "Mode",
    "Node",
    "PlanarTree",
    "Signature",
    "act_perm",
    "canonical_key",
    "corolla",
    "enumerate_trees",
    "forest_compose",
    "forest_tensor",
    "gamma",
    "graft",
    "identity",
    "OperadElement",
    "PropElement",
    "braiding",
    "lin_compose",
    "lin_gamma",
    "lin_tensor",
    "Presentation",
    "ideal_slice",
    "is_member",
    "normal_form",
    "quotient_dim",
    "PresetName",
    "preset",
]
