"""
log|x - y| (natural logarithm).
"""

from prandtl.kernels.base import WeakKernel


class LogKernel(WeakKernel):
    name = "log"
    has_log = True
    needs_mu = False
