from asm_qdet.exactalg.cyclo import SUPPORTED_ORDERS, CycloElem, zeta
from asm_qdet.exactalg.matrix import RingMatrix
from asm_qdet.exactalg.qlaurent import (
    Q,
    QLaurent,
    qlaurent_from_Qpoly,
    qlaurent_substitute_root,
    qlaurent_to_Qpoly,
)
from asm_qdet.exactalg.ring import QQ, QQ_X, QQ_X_Q, CycloRing, Ring, RingElement
from asm_qdet.exactalg.xpoly import ONE, X, XPoly, Scalar, pochhammer, xpoly_binomial

__all__ = (
    "ONE",
    "QQ",
    "QQ_X",
    "QQ_X_Q",
    "SUPPORTED_ORDERS",
    "CycloElem",
    "CycloRing",
    "Q",
    "QLaurent",
    "Ring",
    "RingElement",
    "RingMatrix",
    "Scalar",
    "X",
    "XPoly",
    "pochhammer",
    "qlaurent_from_Qpoly",
    "qlaurent_substitute_root",
    "qlaurent_to_Qpoly",
    "xpoly_binomial",
    "zeta",
)
