"""Exact coefficient fields: a prime field GF(p) or the rationals."""

from fractions import Fraction

DEFAULT_PRIME = 32003


class Field:
    """Coefficient field.

    Elements of GF(p) are plain ints in ``range(p)``; elements of QQ are
    :class:`fractions.Fraction`.  ``p == 0`` means QQ.  The hot loops of the
    engine branch on ``field.p`` directly instead of calling methods here.
    """

    __slots__ = ("p",)

    def __init__(self, p=DEFAULT_PRIME):
        if p < 0 or p == 1:
            raise ValueError(f"invalid characteristic {p}")
        if p and any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def from_name(cls, name):
        name = name.lower()
        if name in ("qq", "q", "rational", "rationals"):
            return cls(0)
        if name.startswith("gf"):
            return cls(int(name[2:]))
        raise ValueError(f"unknown field {name!r}")

    @property
    def name(self):
        return f"gf{self.p}" if self.p else "qq"

    def __repr__(self):
        return f"Field({self.name})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        if isinstance(x, str):
            x = Fraction(x)
        if self.p:
            if isinstance(x, Fraction):
                if x.denominator % self.p == 0:
                    raise ZeroDivisionError(f"{x} is not defined in GF({self.p})")
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("division by zero in the coefficient field")
        return pow(a, -1, self.p) if self.p else 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_str(self, a):
        """Print a coefficient; GF(p) elements use the symmetric range."""
        if self.p:
            return str(a - self.p if a > self.p // 2 else a)
        return str(a)

    def to_json(self, a):
        if self.p:
            return a - self.p if a > self.p // 2 else a
        return str(a)
