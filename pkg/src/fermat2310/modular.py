"""Explicit models: the X_0(5) j-map, twist covers of the j-line and related data.

The genus one curve X_E used for a curve E with discriminant Delta_E is

    Delta_E * y^2 = t (t^2 + 22 t + 125),

and the map to the twisted j-line is (t, y) -> z = y (t^2 - 500 t - 15625) / t^3
followed by z -> Delta_E z^2 + 1728.  Both facts rest on the identity

    (t^2 + 250 t + 3125)^3 - (t^2 - 500 t - 15625)^2 (t^2 + 22 t + 125) = 1728 t^5.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith.factor_q import factor_over_q
from .arith.poly import UniPoly
from .arith.projective import RationalMapP1
from .arith.rational import squarefree_part_rat, to_rat
from .elliptic import WeierstrassCurve, invariants
from .errors import CuspError, InvalidInput

T = UniPoly([0, 1], "t")
J5_QUADRATIC = UniPoly([3125, 250, 1], "t")        # t^2 + 250 t + 3125
OFFSET_QUADRATIC = UniPoly([-15625, -500, 1], "t")  # t^2 - 500 t - 15625
XE_QUADRATIC = UniPoly([125, 22, 1], "t")           # t^2 + 22 t + 125
XE_CUBIC = T * XE_QUADRATIC


def j5_map() -> RationalMapP1:
    """t -> (t^2 + 250 t + 3125)^3 / t^5 as a degree 6 map of P^1."""
    return RationalMapP1(J5_QUADRATIC ** 3, T ** 5, 6)


def j_map_X05(t):
    """(t^2 + 250 t + 3125)^3 / t^5; None stands for infinity (t = 0 or t = None)."""
    if t is None:
        return None
    t = to_rat(t)
    if t == 0:
        return None
    return J5_QUADRATIC(t) ** 3 / t ** 5


def offset_identity_difference() -> UniPoly:
    """(t^2+250t+3125)^3 - (t^2-500t-15625)^2 (t^2+22t+125) - 1728 t^5."""
    return J5_QUADRATIC ** 3 - OFFSET_QUADRATIC ** 2 * XE_QUADRATIC - 1728 * T ** 5


def check_offset_identity() -> bool:
    return offset_identity_difference().is_zero()


def twist_cover(delta, z):
    """z -> Delta_E z^2 + 1728."""
    delta = to_rat(delta)
    if delta == 0:
        raise InvalidInput("Delta_E must be nonzero")
    z = to_rat(z)
    return delta * z * z + 1728


@dataclass(frozen=True)
class XETwistModel:
    """Delta_E y^2 = t (t^2 + 22 t + 125) together with its Weierstrass form.

    The Weierstrass form y^2 = x^3 + 22 Delta x^2 + 125 Delta^2 x comes from
    x = Delta t, y_W = Delta^2 y.  ``delta_class`` is the squarefree
    representative of the square class of Delta_E, which is all the twist
    cover depends on up to isomorphism.
    """

    delta: Fraction
    delta_class: int
    curve: WeierstrassCurve

    def contains(self, t, y) -> bool:
        t, y = to_rat(t), to_rat(y)
        return self.delta * y * y == XE_CUBIC(t)

    def to_weierstrass(self, t, y) -> tuple[Fraction, Fraction]:
        return self.delta * to_rat(t), self.delta ** 2 * to_rat(y)

    def from_weierstrass(self, x, y) -> tuple[Fraction, Fraction]:
        return to_rat(x) / self.delta, to_rat(y) / self.delta ** 2


def xE_model(delta) -> XETwistModel:
    delta = to_rat(delta)
    if delta == 0:
        raise InvalidInput("Delta_E must be nonzero")
    curve = WeierstrassCurve(125 * delta * delta, 0, 22 * delta)
    return XETwistModel(delta, squarefree_part_rat(delta), curve)


def xE_to_XDelta(model: XETwistModel, t, y) -> Fraction:
    """z = y (t^2 - 500 t - 15625) / t^3 for a point (t, y) of the model."""
    t, y = to_rat(t), to_rat(y)
    if not model.contains(t, y):
        raise InvalidInput(f"({t}, {y}) is not on {model.delta} y^2 = t(t^2+22t+125)")
    if t == 0:
        raise CuspError("t = 0 maps to the cusp")
    return y * OFFSET_QUADRATIC(t) / t ** 3


def check_cover_identity() -> bool:
    """Delta z^2 + 1728 - j(t) vanishes modulo Delta y^2 - t(t^2+22t+125).

    After multiplying by t^6 the expression is linear in w = Delta y^2:
    w (t^2-500t-15625)^2 + 1728 t^6 - t (t^2+250t+3125)^3, so it lies in the
    ideal generated by w - t(t^2+22t+125) iff substituting w gives zero.
    """
    residue = XE_CUBIC * OFFSET_QUADRATIC ** 2 + 1728 * T ** 6 - T * J5_QUADRATIC ** 3
    return residue.is_zero()


# -- K_j ------------------------------------------------------------------------

def kj_polynomial(j) -> UniPoly:
    """f(t) = (t^2 + 250 t + 3125)^3 - j t^5."""
    if j is None:
        raise InvalidInput("j = infinity has no K_j polynomial")
    return J5_QUADRATIC ** 3 - to_rat(j) * T ** 5


def kj_irreducibility(j) -> dict:
    """Factorisation report for the K_j polynomial over Q."""
    f = kj_polynomial(j)
    facs = factor_over_q(f)
    return {
        "polynomial": f,
        "degree": f.degree,
        "irreducible": len(facs) == 1 and facs[0][1] == 1,
        "factors": facs,
    }


# -- the mod 2 family ---------------------------------------------------------------

RS2_ALLOWED_D = (1, -1, 2, -2, 3, -3, 6, -6)


@dataclass(frozen=True)
class RS2Params:
    D: int
    u: Fraction
    v: Fraction

    def __post_init__(self):
        if self.D not in RS2_ALLOWED_D:
            raise InvalidInput(f"D = {self.D} is not a squarefree divisor of 6 up to sign")
        object.__setattr__(self, "u", to_rat(self.u))
        object.__setattr__(self, "v", to_rat(self.v))


def rs2_coefficients(params: RS2Params) -> tuple[Fraction, Fraction]:
    D, u, v = params.D, params.u, params.v
    a = 3 * D * (3 * v * v - D * u * u)
    b = -2 * (9 * D * D * u * v * v - D ** 3 * u ** 3)
    return a, b


def rs2_curve(params: RS2Params) -> WeierstrassCurve:
    """y^2 = x^3 + 3D(3v^2 - Du^2) x - 2(9 D^2 u v^2 - D^3 u^3)."""
    a, b = rs2_coefficients(params)
    if 4 * a ** 3 + 27 * b ** 2 == 0:
        raise InvalidInput(f"parameters {params} give a singular curve (a, b) = ({a}, {b})")
    return WeierstrassCurve(a, b)


def rs2_stated_discriminant(params: RS2Params) -> Fraction:
    """-2^6 3^6 D (v (v^2 + D u^2) D)^2, the closed form quoted for this family."""
    D, u, v = params.D, params.u, params.v
    return -(2 ** 6) * 3 ** 6 * D * (v * (v * v + D * u * u) * D) ** 2


def rs2_disc_identity(params: RS2Params) -> dict:
    """Compare the model discriminant with the quoted closed form.

    Returns a finding rather than raising: ``match`` says whether the two
    agree exactly and ``ratio`` is their quotient.
    """
    a, b = rs2_coefficients(params)
    model = -16 * (4 * a ** 3 + 27 * b ** 2)
    stated = rs2_stated_discriminant(params)
    ratio = None if stated == 0 else model / stated
    return {"params": params, "model": model, "stated": stated, "match": model == stated, "ratio": ratio}


def rs2_disc_factored(params: RS2Params) -> Fraction:
    """The model discriminant in factored form.

    -16(4a^3 + 27b^2) = -2^6 3^5 D^3 v^2 (3 v^4 + 6 D u^2 v^2 - D^2 u^4).
    """
    D, u, v = params.D, params.u, params.v
    return -(2 ** 6) * 3 ** 5 * D ** 3 * v * v * (3 * v ** 4 + 6 * D * u * u * v * v - D * D * u ** 4)


# -- the catalog ------------------------------------------------------------------

@dataclass(frozen=True)
class CurveCatalogEntry:
    label: str
    j: Fraction | None  # only pinned where the source pairs a label with a value


CALE_LABELS = ("24A1", "27A1", "32A1", "36A1", "54A1", "96A1", "108A1", "216A1",
               "216B1", "288A1", "864A1", "864B1", "864C1")
CALE_J_SET = tuple(Fraction(x) for x in
                   ("35152/9", "0", "1728", "9261/8", "21952/9", "-3072", "-6", "-216", "-13824", "1536"))
_PINNED = {"864B1": Fraction(-13824)}


def calE_j_set() -> list[CurveCatalogEntry]:
    """The 13 labels of the catalog; j is attached where the pairing is known."""
    return [CurveCatalogEntry(label, _PINNED.get(label)) for label in CALE_LABELS]


def calE_j_values() -> list[Fraction]:
    return list(CALE_J_SET)


def catalog_curve_864b1() -> WeierstrassCurve:
    """y^2 = x^3 - 24x - 48, a twist of y^2 = x^3 - 6x - 6."""
    E = WeierstrassCurve(-24, -48)
    assert invariants(E).j == _PINNED["864B1"]
    return E
