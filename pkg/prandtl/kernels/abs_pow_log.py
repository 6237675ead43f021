"""
|x - y|^mu log|x - y|, -1 < mu < 0.
"""

from prandtl.kernels.base import WeakKernel


class AbsPowLogKernel(WeakKernel):
    name = "abs_pow_log"
    has_log = True
