from fractions import Fraction

from asm_qdet.core.logging import render_exact_values
from asm_qdet.exactalg import Q, X, zeta


def test_render_exact_values():
    event = {
        "event": "Bareiss division not exact",
        "step": 2,
        "half": Fraction(3, 2),
        "divisor": X + 2,
        "laurent": Q,
        "root": zeta(3),
        "ring": "QQ[x]",
    }
    rendered = render_exact_values(None, "error", event)
    assert rendered["half"] == "3/2"
    assert rendered["divisor"] == str(X + 2)
    assert rendered["laurent"] == str(Q)
    assert rendered["root"] == str(zeta(3))
    assert rendered["step"] == 2
    assert rendered["ring"] == "QQ[x]"
