from prandtl.errors import ConfigurationError
from prandtl.kernels.base import WeakKernel
from prandtl.kernels.abs_pow import AbsPowKernel
from prandtl.kernels.abs_pow_sgn import AbsPowSgnKernel
from prandtl.kernels.log import LogKernel
from prandtl.kernels.abs_pow_log import AbsPowLogKernel

WEAK_KERNELS = {
    "abs_pow": AbsPowKernel,
    "abs_pow_sgn": AbsPowSgnKernel,
    "log": LogKernel,
    "abs_pow_log": AbsPowLogKernel,
}


def get_weak_kernel(kind: str, config: dict) -> WeakKernel:
    cls = WEAK_KERNELS.get(kind)
    if not cls:
        raise ConfigurationError(f"Unknown weak kernel: {kind}")
    return cls(config)
