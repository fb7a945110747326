"""Built-in unitary families used in the worked examples and sweeps.

All of them are real orthogonal block constructions: a rotation acting
inside each control sector. They cover the exactly solvable cases
(every 2x2-blocked unitary has a witness proportional to the identity)
as well as the 2x3 and 3x3 families whose convex mixtures exhibit the
non-minimality of the canonical split.
"""

from __future__ import annotations

import math
from typing import Callable, Dict, Tuple

import numpy as np

from .channel import Channel, unitary_channel
from .linalg import Array, BipartiteDims


def _rotation(theta: float) -> Array:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, s], [-s, c]])


def rot22_unitary(alpha: float, beta: float) -> Array:
    """2x2 block-rotation unitary: R(alpha) on |0><0|, R(beta) on |1><1|.

    Its witness is (|sin(beta - alpha)| / 2) I, so lower and upper
    bounds coincide for every (alpha, beta); a perfect entangler at
    beta - alpha = pi/2 + n pi and PPT at beta - alpha = n pi.
    """
    u = np.zeros((4, 4))
    u[:2, :2] = _rotation(alpha)
    u[2:, 2:] = _rotation(beta)
    return u


def gencnot_unitary(alpha: float, beta: float) -> Array:
    """Generalized CNOT: witness I/2 for every (alpha, beta)."""
    c, s = math.cos(beta), math.sin(beta)
    u = np.zeros((4, 4))
    u[:2, :2] = _rotation(alpha)
    u[2:, 2:] = [[c, s], [s, -c]]
    return u


def cnot_unitary() -> Array:
    return gencnot_unitary(0.0, math.pi / 2.0)


def rot23_unitary(alpha: float, beta: float) -> Array:
    """2x3 unitary rotating inside the |1> control sector.

    Applies R(alpha) on the last two levels, then R(beta) (+) 1 on the
    sector. Not basic in general; at alpha = 2 pi/3, beta = 0 the
    witness degenerates to I/2 and the operation is a perfect entangler.
    """
    left = np.eye(6)
    left[3:5, 3:5] = _rotation(beta)
    right = np.eye(6)
    right[4:, 4:] = _rotation(alpha)
    return left @ right


def rot33_unitary(alpha: float, beta: float) -> Array:
    """3x3 analogue of ``rot23_unitary`` acting in the |2> sector."""
    left = np.eye(9)
    left[6:8, 6:8] = _rotation(beta)
    right = np.eye(9)
    right[7:, 7:] = _rotation(alpha)
    return left @ right


FAMILIES: Dict[str, Tuple[Callable[[float, float], Array], BipartiteDims]] = {
    "rot22": (rot22_unitary, BipartiteDims(2, 2)),
    "gencnot": (gencnot_unitary, BipartiteDims(2, 2)),
    "rot23": (rot23_unitary, BipartiteDims(2, 3)),
    "rot33": (rot33_unitary, BipartiteDims(3, 3)),
}

#: angle pairs of the convex-mixture counterexample, per family
MIX_PAIR_ANGLES = ((math.pi / 3.0, math.pi / 5.0), (math.pi / 4.0, math.pi / 3.0))


def family_channel(name: str, alpha: float, beta: float) -> Channel:
    builder, dims = FAMILIES[name]
    return unitary_channel(builder(alpha, beta), dims)


def mix_pair(name: str) -> Tuple[Channel, Channel]:
    """The two fixed-angle unitary channels mixed in the sweep."""
    (a1, b1), (a2, b2) = MIX_PAIR_ANGLES
    return family_channel(name, a1, b1), family_channel(name, a2, b2)


#: states saturating the bound, where known in closed form
KNOWN_OPTIMAL_FAMILIES = {
    "rot22": "theta1 = pi/4 + n pi/2 and (theta2 = m pi/2 or phi2 = p pi)",
    "gencnot": "theta1 = pi/4 + n pi/2, tan(2 theta2) = -cot(alpha+beta)/cos(phi2)",
}
