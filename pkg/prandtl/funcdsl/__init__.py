# Function mini-language: parse once, evaluate on numpy arrays
from prandtl.funcdsl.expr import Expr, evaluate, pretty, variables
from prandtl.funcdsl.parser import parse

__all__ = ["Expr", "evaluate", "parse", "pretty", "variables"]
