# This code is part of gdsq.
#
# (C) Copyright gdsq developers 2024-2026.
#
# This code is licensed under the Apache License, Version 2.0. You may
# obtain a copy of this license in the LICENSE.txt file in the root directory
# of this source tree or at http://www.apache.org/licenses/LICENSE-2.0.

"""User defined manifolds from coordinate expressions.

Expressions are strings in the variables ``t1, ..., tn`` built from numbers, the
constant ``pi``, the operators ``+ - * / ^`` (``**`` is accepted as well) and the
functions ``sin``, ``cos`` and ``exp``. They are parsed once with :mod:`ast` into a
closed evaluator; nothing is ever passed to ``eval``.

>>> from gdsq.manifolds import ParamDomain
>>> f = expression_manifold(["cos(t1)", "sin(t1)"], ParamDomain([0], [1]))
>>> f.evaluate([0.0]).tolist()
[1.0, 0.0]
"""

from __future__ import annotations

import ast
import operator
import re
from collections.abc import Callable, Sequence
from typing import Any

from numpy import pi

from ..exceptions import ConstructionError
from ..utils.dual import cos, exp, sin, stack_components
from .domain import ParamDomain
from .manifold import ParamManifold

Node = Callable[[Any], Any]

FUNCTIONS: dict[str, Callable[[Any], Any]] = {"sin": sin, "cos": cos, "exp": exp}
CONSTANTS: dict[str, float] = {"pi": float(pi)}
BINARY_OPERATORS: dict[type, Callable[[Any, Any], Any]] = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
    ast.BitXor: operator.pow,
}
UNARY_OPERATORS: dict[type, Callable[[Any], Any]] = {
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}
VARIABLE_PATTERN = re.compile(r"t([1-9][0-9]*)")


def expression_manifold(
    expressions: Sequence[str],
    domain: ParamDomain,
    claims_immersion: bool = False,
    claims_injective: bool = False,
    name: str = "expr",
) -> ParamManifold:
    """Manifold whose coordinates are given by expression strings.

    The Jacobian is computed exactly by dual-number differentiation.

    Raises:
        ConstructionError: on syntax errors, unknown names or variables beyond ``tn``.
    """
    if isinstance(expressions, str) or not expressions:
        raise ConstructionError("Expected a non-empty list of coordinate expressions.")
    nodes = [
        compile_expression(text, domain.dim, index=i)
        for i, text in enumerate(expressions, start=1)
    ]

    def coordinates(q):
        zero = 0.0 * q[..., 0]
        return stack_components([node(q) + zero for node in nodes])

    return ParamManifold(
        name,
        domain,
        len(nodes),
        coordinates,
        claims_immersion=claims_immersion,
        claims_injective=claims_injective,
        parameters={"expressions": list(expressions)},
    )


def compile_expression(text: str, num_variables: int, index: int = 1) -> Node:
    """Compile an expression string into a function of the parameter array."""
    if not isinstance(text, str):
        raise ConstructionError(f"Coordinate expression {index} must be a string.", index=(index,))
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as error:
        raise ConstructionError(
            f"Invalid coordinate expression {index} {text!r}: {error.msg}.", index=(index,)
        ) from error
    try:
        return _compile(tree.body, num_variables)
    except ConstructionError as error:
        raise ConstructionError(
            f"Invalid coordinate expression {index} {text!r}: {error}", index=(index,)
        ) from None


################################################################################
## IMPLEMENTATION
################################################################################
def _compile(node: ast.AST, num_variables: int) -> Node:
    # pylint: disable=too-many-return-statements
    if isinstance(node, ast.Constant):
        value = node.value
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConstructionError(f"unsupported constant {value!r}.")
        return lambda q: float(value)
    if isinstance(node, ast.Name):
        return _compile_name(node.id, num_variables)
    if isinstance(node, ast.BinOp):
        binary = BINARY_OPERATORS.get(type(node.op))
        if binary is None:
            raise ConstructionError(f"unsupported operator {type(node.op).__name__}.")
        left, right = _compile(node.left, num_variables), _compile(node.right, num_variables)
        return lambda q: binary(left(q), right(q))
    if isinstance(node, ast.UnaryOp):
        unary = UNARY_OPERATORS.get(type(node.op))
        if unary is None:
            raise ConstructionError(f"unsupported operator {type(node.op).__name__}.")
        operand = _compile(node.operand, num_variables)
        return lambda q: unary(operand(q))
    if isinstance(node, ast.Call):
        if not isinstance(node.func, ast.Name) or node.func.id not in FUNCTIONS:
            raise ConstructionError(f"unsupported function, expected one of {sorted(FUNCTIONS)}.")
        if len(node.args) != 1 or node.keywords:
            raise ConstructionError(f"function {node.func.id} takes exactly one argument.")
        function, argument = FUNCTIONS[node.func.id], _compile(node.args[0], num_variables)
        return lambda q: function(argument(q))
    raise ConstructionError(f"unsupported syntax {type(node).__name__}.")


def _compile_name(name: str, num_variables: int) -> Node:
    if name in CONSTANTS:
        constant = CONSTANTS[name]
        return lambda q: constant
    match = VARIABLE_PATTERN.fullmatch(name)
    if match is None:
        raise ConstructionError(f"unknown name {name!r}.")
    k = int(match.group(1))
    if k > num_variables:
        raise ConstructionError(f"variable {name} exceeds the domain dimension {num_variables}.")
    return lambda q: q[..., k - 1]
