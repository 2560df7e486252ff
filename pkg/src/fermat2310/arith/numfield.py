"""Number fields Q[a]/(m(a)) and their elements."""

from __future__ import annotations

from fractions import Fraction

from ..errors import IntegrityError, InvalidInput
from .factor_q import is_irreducible
from .poly import UniPoly, poly_xgcd
from .rational import format_rat, to_rat


class NumberField:
    """Q[a]/(modulus) for a monic irreducible rational modulus.

    Degree-1 fields (modulus ``x - c``) are allowed and behave like Q.
    """

    def __init__(self, modulus: UniPoly, name: str = "a", check: bool = True):
        if modulus.degree < 1:
            raise InvalidInput("field modulus must have positive degree")
        if modulus.leading() != 1:
            raise InvalidInput("field modulus must be monic")
        if not modulus.is_rational():
            raise InvalidInput("field modulus must have rational coefficients")
        if check and not is_irreducible(modulus):
            raise InvalidInput(f"field modulus {modulus} is reducible over Q")
        self.modulus = UniPoly(modulus.coeffs, "x")
        self.degree = modulus.degree
        self.name = name

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(("NumberField", self.modulus.coeffs))

    def __repr__(self):
        return f"NumberField({self.modulus})"

    def __call__(self, value) -> "NFElem":
        return NFElem(self, value)

    @property
    def gen(self) -> "NFElem":
        return NFElem(self, UniPoly([0, 1]))

    def zero(self) -> "NFElem":
        return NFElem(self, 0)

    def one(self) -> "NFElem":
        return NFElem(self, 1)

    def to_json(self) -> list[str]:
        return self.modulus.to_json()


class NFElem:
    __slots__ = ("field", "rep")

    def __init__(self, field: NumberField, value):
        self.field = field
        if isinstance(value, NFElem):
            if value.field != field:
                raise InvalidInput("element belongs to a different field")
            rep = value.rep
        elif isinstance(value, UniPoly):
            rep = UniPoly(value.coeffs, "x") % field.modulus
        elif isinstance(value, (list, tuple)):
            rep = UniPoly([to_rat(c) for c in value], "x") % field.modulus
        else:
            rep = UniPoly([to_rat(value)], "x")
        self.rep = rep

    def _coerce(self, other) -> "NFElem | None":
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise InvalidInput("arithmetic between elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return NFElem(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, self.rep + o.rep)

    __radd__ = __add__

    def __neg__(self):
        return NFElem(self.field, -self.rep)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, self.rep - o.rep)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, o.rep - self.rep)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElem(self.field, self.rep * o.rep)

    __rmul__ = __mul__

    def inverse(self) -> "NFElem":
        if self.rep.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        d, s, _ = poly_xgcd(self.rep, self.field.modulus)
        if d.degree != 0:
            raise IntegrityError(f"{self} is not invertible: modulus {self.field.modulus} is reducible")
        return NFElem(self.field, s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = NFElem(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field == other.field and self.rep == other.rep
        if isinstance(other, (int, Fraction)):
            return self.rep == UniPoly([other])
        return NotImplemented

    def __hash__(self):
        q = self.is_rational()
        if q is not None:
            return hash(q)
        return hash((self.field.modulus.coeffs, self.rep.coeffs))

    def is_rational(self) -> Fraction | None:
        if self.rep.degree <= 0:
            return self.rep[0]
        return None

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def to_json(self) -> list[str]:
        return self.rep.to_json()

    def __repr__(self):
        return f"NFElem({self})"

    def __str__(self):
        return str(UniPoly(self.rep.coeffs, self.field.name))


def nf_invert(x: NFElem) -> NFElem:
    return x.inverse()


def nf_is_rational(x) -> Fraction | None:
    """The rational value of x when it lies in Q, else None."""
    if isinstance(x, (int, Fraction)):
        return to_rat(x)
    return x.is_rational()


def rational_field() -> NumberField:
    """Q presented as Q[a]/(a)."""
    return NumberField(UniPoly([0, 1]), check=False)


def elem_to_json(x) -> list[str] | str:
    """Rationals as "num/den", field elements as coefficient lists."""
    if isinstance(x, NFElem):
        return x.to_json()
    return format_rat(x)
