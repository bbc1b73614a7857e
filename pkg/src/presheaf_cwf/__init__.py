"""Presheaf models of dependent type theory over finite base categories."""

__version__ = "0.1.0"

from .kernel import BACKEND as KERNEL_BACKEND  # noqa: F401
