"""Exact computations with the small quantum group u_q(sl2) and its Borel part u_q^+."""

from uqplus.cyclo import CycloContext, CycloNum, ctx_new, qbinom, qint

__all__ = ["CycloContext", "CycloNum", "ctx_new", "qbinom", "qint"]
