"""
|x - y|^mu, -1 < mu < 0.
"""

from prandtl.kernels.base import WeakKernel


class AbsPowKernel(WeakKernel):
    name = "abs_pow"
