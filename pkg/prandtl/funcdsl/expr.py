"""
Expression trees for the function mini-language and their evaluation.

Evaluation is vectorised: x and y may be floats or numpy arrays that
broadcast together. Results are floats for scalar inputs.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Union

import numpy as np

from prandtl.errors import DomainError

Number = Union[float, np.ndarray]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str  # "x" or "y"


@dataclass(frozen=True)
class Const:
    name: str  # "pi"


@dataclass(frozen=True)
class Unary:
    op: str  # "-"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # + - * / ^
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Const, Unary, Binary, Call]

CONSTANTS: Dict[str, float] = {"pi": float(np.pi)}


def _sgn(v: np.ndarray) -> np.ndarray:
    return np.sign(v)


def _log(v: np.ndarray) -> np.ndarray:
    if np.any(v <= 0.0):
        raise ValueError("log of a non-positive value")
    return np.log(v)


def _sqrt(v: np.ndarray) -> np.ndarray:
    if np.any(v < 0.0):
        raise ValueError("sqrt of a negative value")
    return np.sqrt(v)


FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "abs": np.abs,
    "log": _log,
    "sin": np.sin,
    "cos": np.cos,
    "sqrt": _sqrt,
    "sgn": _sgn,
    "exp": np.exp,
}


def pretty(e: Expr) -> str:
    """Fully parenthesised text that reparses to the same tree."""
    if isinstance(e, Num):
        value = float(e.value)
        if math.isinf(value):
            # repr gives "inf"; an overflowing literal reads back as infinity
            return "1e999" if value > 0 else "(-1e999)"
        return repr(value)
    if isinstance(e, (Var, Const)):
        return e.name
    if isinstance(e, Unary):
        return f"(-{pretty(e.operand)})"
    if isinstance(e, Binary):
        return f"({pretty(e.left)} {e.op} {pretty(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}({pretty(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def _power(base: np.ndarray, exponent: np.ndarray, e: Binary) -> np.ndarray:
    integral = exponent == np.round(exponent)
    if np.any((base < 0.0) & ~integral):
        raise DomainError("fractional power of a negative base", pretty(e))
    if np.any((base == 0.0) & (exponent < 0.0)):
        raise DomainError("negative power of zero", pretty(e))
    return np.power(base, exponent)


def _eval(e: Expr, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if isinstance(e, Num):
        return np.asarray(e.value, dtype=float)
    if isinstance(e, Var):
        return x if e.name == "x" else y
    if isinstance(e, Const):
        return np.asarray(CONSTANTS[e.name])
    if isinstance(e, Unary):
        return -_eval(e.operand, x, y)
    if isinstance(e, Binary):
        left = _eval(e.left, x, y)
        right = _eval(e.right, x, y)
        if e.op == "+":
            return left + right
        if e.op == "-":
            return left - right
        if e.op == "*":
            return left * right
        if e.op == "/":
            if np.any(right == 0.0):
                raise DomainError("division by zero", pretty(e))
            return left / right
        return _power(left, right, e)
    if isinstance(e, Call):
        arg = _eval(e.arg, x, y)
        try:
            return FUNCTIONS[e.func](arg)
        except ValueError as exc:
            raise DomainError(str(exc), pretty(e)) from exc
    raise TypeError(f"not an expression node: {e!r}")


def evaluate(e: Expr, x: Number = 0.0, y: Number = 0.0) -> Number:
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    with np.errstate(all="ignore"):
        out = _eval(e, xs, ys)
    out = np.broadcast_to(out, np.broadcast(xs, ys).shape)
    if out.ndim == 0:
        return float(out)
    return np.array(out, dtype=float)


def variables(e: Expr) -> frozenset:
    if isinstance(e, Var):
        return frozenset({e.name})
    if isinstance(e, Unary):
        return variables(e.operand)
    if isinstance(e, Binary):
        return variables(e.left) | variables(e.right)
    if isinstance(e, Call):
        return variables(e.arg)
    return frozenset()
