"""
|x - y|^mu sgn(x - y), -1 < mu < 0. Odd under reflection through y.
"""

from prandtl.kernels.base import WeakKernel


class AbsPowSgnKernel(WeakKernel):
    name = "abs_pow_sgn"
    odd = True
