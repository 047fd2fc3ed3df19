"""Lagrangian DSL: parsing, typing, evaluation and first variation."""

from .ast import (
    Const,
    Constitutive,
    Contract,
    ExteriorD,
    FieldRef,
    Hodge,
    Node,
    ScalarMul,
    Sum,
    Wedge,
    dump,
    to_text,
)
from .evaluate import Configuration, evaluate
from .parser import parse_lagrangian
from .typecheck import FieldDecl, NonviableLagrangianWarning, TypeInfo, typecheck
from .variation import (
    DerivedCurrents,
    EulerLagrange,
    MatterCurrents,
    NotFactorable,
    euler_lagrange,
    jet_variation,
    left_divide,
    variational_derivatives,
    variational_identity_residual,
)
