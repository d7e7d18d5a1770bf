"""Exact arithmetic in finitely presented models of T_log."""
from tlog.kernels import BACKEND
from tlog.scalars import Scalar, parse_scalar, format_scalar
from tlog.psi_order import PsiOrder, Omega, Copy, SCut
from tlog.couple import Model, Element, INF, Couple, DomainError

__all__ = [
    "BACKEND", "Scalar", "parse_scalar", "format_scalar", "PsiOrder", "Omega", "Copy", "SCut",
    "Model", "Element", "INF", "Couple", "DomainError",
]
