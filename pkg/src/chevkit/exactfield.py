"""
Exact scalar fields: Q, F_p, GF(p^k) and F_p(t_1,...,t_m).

Every element carries its field and a canonical representation, so
equality of elements is equality of representations:

    Q       Fraction (reduced, positive denominator)
    F_p     int in range(p)
    GF(p^k) tuple of k residues, low degree first, reduced mod the min poly
    F(t..)  (numerator, denominator) flint polynomials, coprime, with a
            monic denominator (leading coefficient 1 in lex order)

Fields are interned: building the same description twice returns the same
object.
"""

from __future__ import annotations

import itertools
import random as _random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import flint

from .errors import BudgetError, FieldError, FieldMismatchError, ParseError, UndecidedError

__all__ = [
    "FieldDesc", "Field", "FieldElem", "field_create", "QQ", "GF", "GFq",
    "RationalFunctions", "quadratic_roots", "parse_scalar", "is_prime",
]

DEFAULT_DEGREE_CAP = 8


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldDesc:
    """Hashable description of a field.

    kind is one of "rationals", "prime", "extension", "rational_functions".
    For "extension", min_poly lists the coefficients of the monic minimal
    polynomial from the constant term up.  For "rational_functions", base is
    the FieldDesc of the coefficient field and names the variable names.
    """
    kind: str
    p: int = 0
    k: int = 1
    min_poly: tuple = ()
    base: "FieldDesc | None" = None
    names: tuple = ()
    degree_cap: int = DEFAULT_DEGREE_CAP


class FieldElem:
    """An element of an exact field.  Immutable."""

    __slots__ = ("field", "rep")

    def __init__(self, field, rep):
        self.field = field
        self.rep = rep

    def _other(self, b):
        if isinstance(b, FieldElem):
            if b.field is not self.field and b.field != self.field:
                raise FieldMismatchError("%s vs %s" % (self.field, b.field))
            return b.rep
        return self.field.convert(b).rep

    def __add__(self, b):
        F = self.field
        return F._wrap(F._add(self.rep, self._other(b)))

    __radd__ = __add__

    def __sub__(self, b):
        F = self.field
        return F._wrap(F._sub(self.rep, self._other(b)))

    def __rsub__(self, b):
        F = self.field
        return F._wrap(F._sub(self._other(b), self.rep))

    def __mul__(self, b):
        F = self.field
        return F._wrap(F._mul(self.rep, self._other(b)))

    __rmul__ = __mul__

    def __truediv__(self, b):
        F = self.field
        return F._wrap(F._mul(self.rep, F._inv(self._other(b))))

    def __rtruediv__(self, b):
        F = self.field
        return F._wrap(F._mul(self._other(b), F._inv(self.rep)))

    def __neg__(self):
        F = self.field
        return F._wrap(F._neg(self.rep))

    def __pos__(self):
        return self

    def __pow__(self, n):
        F = self.field
        if n < 0:
            return F._wrap(F._pow(F._inv(self.rep), -n))
        return F._wrap(F._pow(self.rep, n))

    def inverse(self):
        return self.field._wrap(self.field._inv(self.rep))

    def __eq__(self, b):
        if isinstance(b, FieldElem):
            return (b.field is self.field or b.field == self.field) and b.rep == self.rep
        try:
            return self.rep == self.field.convert(b).rep
        except (FieldError, TypeError):
            return NotImplemented

    def __ne__(self, b):
        r = self.__eq__(b)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash((self.field.desc, self.field._hashrep(self.rep)))

    def __bool__(self):
        return not self.field._is_zero(self.rep)

    def is_zero(self):
        return self.field._is_zero(self.rep)

    def __repr__(self):
        return self.field._str(self.rep)

    __str__ = __repr__


def _check_same(a, b):
    if a.field is not b.field and a.field != b.field:
        raise FieldMismatchError("%s vs %s" % (a.field, b.field))


class Field:
    """Common interface.  Subclasses implement the _op methods on reps."""

    desc: FieldDesc
    characteristic: int
    order: "int | None"

    def _wrap(self, rep):
        e = object.__new__(FieldElem)
        e.field = self
        e.rep = rep
        return e

    def __eq__(self, other):
        return isinstance(other, Field) and other.desc == self.desc

    def __hash__(self):
        return hash(self.desc)

    def __call__(self, value=0):
        return self.convert(value)

    @property
    def zero(self):
        return self.convert(0)

    @property
    def one(self):
        return self.convert(1)

    def is_finite(self):
        return self.order is not None

    def _pow(self, r, n):
        result = self.one.rep
        while n:
            if n & 1:
                result = self._mul(result, r)
            n >>= 1
            if n:
                r = self._mul(r, r)
        return result

    def _sub(self, a, b):
        return self._add(a, self._neg(b))

    def _hashrep(self, r):
        return r

    def elements(self):
        raise FieldError("%s is infinite" % self)

    def nonzero_elements(self):
        return [x for x in self.elements() if x]

    def is_square(self, a):
        try:
            self.sqrt(a)
            return True
        except FieldError:
            return False

    def parse(self, text):
        """Evaluate an arithmetic expression in this field."""
        return _ExprParser(text, self, self._names()).parse()

    def _names(self):
        return {}

    def __repr__(self):
        return self.name()


class Rationals(Field):

    def __init__(self, desc):
        self.desc = desc
        self.characteristic = 0
        self.order = None

    def name(self):
        return "Q"

    def convert(self, v):
        if isinstance(v, FieldElem):
            if v.field == self:
                return v
            raise FieldMismatchError("cannot coerce %s into Q" % v.field)
        if isinstance(v, (int, Fraction)):
            return self._wrap(Fraction(v))
        if isinstance(v, str):
            return self._wrap(Fraction(v))
        raise FieldError("cannot convert %r to Q" % (v,))

    def _add(self, a, b):
        return a + b

    def _sub(self, a, b):
        return a - b

    def _mul(self, a, b):
        return a * b

    def _neg(self, a):
        return -a

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / a

    def _pow(self, a, n):
        return a ** n

    def _is_zero(self, a):
        return a == 0

    def _str(self, a):
        return str(a)

    def sqrt(self, a):
        a = self.convert(a).rep
        if a < 0:
            raise FieldError("not a square")
        n, d = a.numerator, a.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn != n or rd * rd != d:
            raise FieldError("not a square")
        return self._wrap(Fraction(rn, rd))

    def random(self, rng=_random, size=10):
        num = rng.randint(-size, size)
        den = rng.randint(1, size)
        return self._wrap(Fraction(num, den))


class PrimeField(Field):

    def __init__(self, desc):
        p = desc.p
        if not is_prime(p):
            raise FieldError("p=%d is not prime" % p)
        self.desc = desc
        self.p = p
        self.characteristic = p
        self.order = p
        self._sqrt_table = None

    def name(self):
        return "F%d" % self.p

    def convert(self, v):
        if isinstance(v, FieldElem):
            if v.field == self:
                return v
            raise FieldMismatchError("cannot coerce %s into %s" % (v.field, self))
        if isinstance(v, int):
            return self._wrap(v % self.p)
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by p")
            return self._wrap(v.numerator * pow(v.denominator, -1, self.p) % self.p)
        if isinstance(v, str):
            return self.parse(v)
        if hasattr(v, "__int__"):
            return self._wrap(int(v) % self.p)
        raise FieldError("cannot convert %r to F%d" % (v, self.p))

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in F%d" % self.p)
        return pow(a, -1, self.p)

    def _pow(self, a, n):
        return pow(a, n, self.p)

    def _is_zero(self, a):
        return a == 0

    def _str(self, a):
        return str(a)

    def elements(self):
        return [self._wrap(i) for i in range(self.p)]

    def sqrt(self, a):
        if self._sqrt_table is None:
            table = {}
            for x in range(self.p):
                table.setdefault(x * x % self.p, x)
            self._sqrt_table = table
        a = self.convert(a).rep
        if a not in self._sqrt_table:
            raise FieldError("not a square")
        return self._wrap(self._sqrt_table[a])

    def random(self, rng=_random):
        return self._wrap(rng.randrange(self.p))

    def frobenius(self, a, e=1):
        return a


class ExtensionField(Field):
    """GF(p^k) = F_p[g]/(m(g)) for an irreducible monic m of degree k."""

    MAX_ORDER = 2 ** 20

    def __init__(self, desc):
        p, k, m = desc.p, desc.k, tuple(desc.min_poly)
        if not is_prime(p):
            raise FieldError("p=%d is not prime" % p)
        if len(m) != k + 1 or m[-1] % p != 1:
            raise FieldError("min_poly must be monic of degree %d" % k)
        if p ** k > self.MAX_ORDER:
            raise FieldError("field too large: %d^%d" % (p, k))
        m = tuple(c % p for c in m)
        if not _irreducible(m, p):
            raise FieldError("min_poly %s is reducible over F%d" % (m, p))
        self.desc = desc
        self.p, self.k, self.m = p, k, m
        self.characteristic = p
        self.order = p ** k
        self._sqrt_table = None

    def name(self):
        return "GF(%d^%d)" % (self.p, self.k)

    @property
    def gen(self):
        if self.k == 1:
            return self._wrap((-self.m[0] % self.p,))
        return self._wrap(tuple(1 if i == 1 else 0 for i in range(self.k)))

    def _names(self):
        return {"g": self.gen}

    def convert(self, v):
        if isinstance(v, FieldElem):
            if v.field == self:
                return v
            if isinstance(v.field, PrimeField) and v.field.p == self.p:
                return self.convert(v.rep)
            raise FieldMismatchError("cannot coerce %s into %s" % (v.field, self))
        if isinstance(v, int):
            return self._wrap((v % self.p,) + (0,) * (self.k - 1))
        if isinstance(v, Fraction):
            return self._wrap((v.numerator * pow(v.denominator, -1, self.p) % self.p,) + (0,) * (self.k - 1))
        if isinstance(v, (tuple, list)):
            v = [c % self.p for c in v]
            return self._wrap(self._reduce(v))
        if isinstance(v, str):
            return self.parse(v)
        raise FieldError("cannot convert %r to %s" % (v, self))

    def _reduce(self, c):
        p, k, m = self.p, self.k, self.m
        c = list(c)
        for d in range(len(c) - 1, k - 1, -1):
            lead = c[d] % p
            if lead:
                for i in range(k + 1):
                    c[d - k + i] = (c[d - k + i] - lead * m[i]) % p
        c = c[:k] + [0] * (k - len(c))
        return tuple(x % p for x in c)

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def _mul(self, a, b):
        k = self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def _inv(self, a):
        if not any(a):
            raise ZeroDivisionError("division by zero in %s" % self.name())
        return self._pow(a, self.order - 2)

    def _is_zero(self, a):
        return not any(a)

    def _str(self, a):
        terms = []
        for i in range(self.k - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = "g" if i == 1 else "g^%d" % i
                terms.append(mono if c == 1 else "%d*%s" % (c, mono))
        return "+".join(terms) if terms else "0"

    def elements(self):
        return [self._wrap(c) for c in itertools.product(range(self.p), repeat=self.k)]

    def sqrt(self, a):
        if self._sqrt_table is None:
            table = {}
            for x in self.elements():
                table.setdefault((x * x).rep, x)
            self._sqrt_table = table
        a = self.convert(a).rep
        if a not in self._sqrt_table:
            raise FieldError("not a square")
        return self._sqrt_table[a]

    def random(self, rng=_random):
        return self._wrap(tuple(rng.randrange(self.p) for _ in range(self.k)))

    def frobenius(self, a, e=1):
        """x -> x^(p^e)."""
        a = self.convert(a)
        return a ** (self.p ** e)


def _poly_eval(m, x, p):
    v = 0
    for c in reversed(m):
        v = (v * x + c) % p
    return v


def _poly_mod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    while len(a) >= len(b):
        lead = a[-1] * inv % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _irreducible(m, p):
    """Exhaustive test: no monic factor of degree <= k/2 divides m."""
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            f = list(low) + [1]
            if not _poly_mod(m, f, p):
                return False
    return True


class RationalFunctionField(Field):
    """Base(t_1,...,t_m) with base Q or F_p, via flint multivariate polynomials."""

    def __init__(self, desc):
        base = field_create(desc.base)
        if not isinstance(base, (PrimeField, Rationals)):
            raise FieldError("rational functions are supported over Q or F_p only")
        if not desc.names:
            raise FieldError("need at least one variable")
        self.desc = desc
        self.base = base
        self.names = tuple(desc.names)
        self.characteristic = base.characteristic
        self.order = None
        self.degree_cap = desc.degree_cap
        if isinstance(base, PrimeField):
            self.ctx = flint.nmod_mpoly_ctx.get(self.names, modulus=base.p)
        else:
            self.ctx = flint.fmpq_mpoly_ctx.get(self.names)
        self._one = self.ctx.from_dict({(0,) * len(self.names): 1})
        self._zero = self.ctx.from_dict({})

    def name(self):
        return "%s(%s)" % (self.base.name(), ",".join(self.names))

    @property
    def gens(self):
        return tuple(self._wrap((g, self._one)) for g in self.ctx.gens())

    def _names(self):
        return dict(zip(self.names, self.gens))

    def convert(self, v):
        if isinstance(v, FieldElem):
            if v.field == self:
                return v
            if v.field == self.base:
                return self.convert(v.rep)
            raise FieldMismatchError("cannot coerce %s into %s" % (v.field, self))
        if isinstance(v, int):
            return self._wrap((self._one * v, self._one))
        if isinstance(v, Fraction):
            return self._wrap(self._canon(self._one * v.numerator, self._one * v.denominator))
        if isinstance(v, str):
            return self.parse(v)
        raise FieldError("cannot convert %r to %s" % (v, self))

    def _canon(self, num, den):
        if den.is_zero():
            raise ZeroDivisionError("division by zero in %s" % self.name())
        if num.is_zero():
            return (self._zero, self._one)
        g = num.gcd(den)
        if not g.is_one():
            num = num // g
            den = den // g
        lc = den.leading_coefficient()
        if lc != 1:
            inv = 1 / lc
            num = num * inv
            den = den * inv
        cap = self.degree_cap
        if cap is not None and (num.total_degree() > cap or den.total_degree() > cap):
            raise BudgetError("rational function degree exceeds cap %d" % cap)
        return (num, den)

    def _add(self, a, b):
        if a[1] == b[1]:
            return self._canon(a[0] + b[0], a[1])
        return self._canon(a[0] * b[1] + b[0] * a[1], a[1] * b[1])

    def _sub(self, a, b):
        if a[1] == b[1]:
            return self._canon(a[0] - b[0], a[1])
        return self._canon(a[0] * b[1] - b[0] * a[1], a[1] * b[1])

    def _neg(self, a):
        return (-a[0], a[1])

    def _mul(self, a, b):
        return self._canon(a[0] * b[0], a[1] * b[1])

    def _inv(self, a):
        if a[0].is_zero():
            raise ZeroDivisionError("division by zero in %s" % self.name())
        return self._canon(a[1], a[0])

    def _is_zero(self, a):
        return a[0].is_zero()

    def _hashrep(self, a):
        return (tuple(sorted((k, int(v) if self.characteristic else str(v))
                             for k, v in a[0].to_dict().items())),
                tuple(sorted((k, int(v) if self.characteristic else str(v))
                             for k, v in a[1].to_dict().items())))

    def _str(self, a):
        num, den = a
        if den.is_one():
            return str(num)
        return "(%s)/(%s)" % (num, den)

    def numerator(self, a):
        return self.convert(a).rep[0]

    def denominator(self, a):
        return self.convert(a).rep[1]

    def degrees(self, a):
        """Per-variable degrees of numerator and denominator."""
        num, den = self.convert(a).rep
        return tuple(num.degrees()), tuple(den.degrees())

    def sqrt(self, a):
        num, den = self.convert(a).rep
        try:
            rn, rd = num.sqrt(), den.sqrt()
        except Exception:
            raise FieldError("not a square")
        return self._wrap(self._canon(rn, rd))

    def random(self, rng=_random, degree=2, terms=3):
        """A random polynomial element of small degree (never a fraction)."""
        n = len(self.names)
        d = {}
        for _ in range(terms):
            mono = [0] * n
            for _ in range(rng.randint(0, degree)):
                mono[rng.randrange(n)] += 1
            c = rng.randrange(self.characteristic) if self.characteristic else rng.randint(-3, 3)
            d[tuple(mono)] = d.get(tuple(mono), 0) + c
        if self.characteristic:
            # from_dict keeps unreduced coefficients, so reduce before building
            d = {k: v % self.characteristic for k, v in d.items()}
        d = {k: v for k, v in d.items() if v}
        return self._wrap(self._canon(self.ctx.from_dict(d), self._one))


_FIELDS = {}


def field_create(desc):
    """Build (or fetch the interned) field for a FieldDesc."""
    if desc in _FIELDS:
        return _FIELDS[desc]
    if desc.kind == "rationals":
        F = Rationals(desc)
    elif desc.kind == "prime":
        F = PrimeField(desc)
    elif desc.kind == "extension":
        F = ExtensionField(desc)
    elif desc.kind == "rational_functions":
        F = RationalFunctionField(desc)
    else:
        raise FieldError("unknown field kind %r" % desc.kind)
    _FIELDS[desc] = F
    return F


def QQ():
    return field_create(FieldDesc("rationals"))


def GF(p):
    return field_create(FieldDesc("prime", p=p))


def GFq(p, k, min_poly):
    return field_create(FieldDesc("extension", p=p, k=k, min_poly=tuple(min_poly)))


def RationalFunctions(base, names, degree_cap=DEFAULT_DEGREE_CAP):
    if isinstance(base, Field):
        base = base.desc
    if isinstance(names, str):
        names = tuple(n.strip() for n in names.split(","))
    return field_create(FieldDesc("rational_functions", base=base, names=tuple(names),
                                  degree_cap=degree_cap))


def quadratic_roots(c1, c0):
    """All roots of Y^2 + c1*Y + c0, with multiplicity.

    Finite fields are searched exhaustively.  Over Q and rational function
    fields the discriminant is tested for being a square (in characteristic
    2, the equation Y^2 = c0 by square detection); anything else over a
    function field raises UndecidedError.
    """
    if not isinstance(c1, FieldElem):
        c1 = c0.field.convert(c1)
    if not isinstance(c0, FieldElem):
        c0 = c1.field.convert(c0)
    _check_same(c1, c0)
    F = c1.field
    if F.is_finite():
        roots = [y for y in F.elements() if (y * y + c1 * y + c0).is_zero()]
        if len(roots) == 1:
            roots = roots * 2
        return roots
    if F.characteristic == 2:
        if c0.is_zero():
            return sorted([F.zero, -c1], key=str) if c1 else [F.zero, F.zero]
        if c1.is_zero():
            try:
                r = F.sqrt(c0)
            except FieldError:
                return []
            return [r, r]
        raise UndecidedError("Artin-Schreier equation over %s is not decided" % F.name())
    disc = c1 * c1 - 4 * c0
    try:
        r = F.sqrt(disc)
    except FieldError:
        return []
    two = F.convert(2)
    return [(-c1 + r) / two, (-c1 - r) / two]


# --- expression parsing --------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _ExprParser:
    """Recursive descent over + - * / ^ with integers and named constants."""

    def __init__(self, text, field, names):
        self.text = text
        self.F = field
        self.names = names
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            num, ident, op = m.groups()
            pos = m.start(m.lastindex)
            if num is not None:
                self.toks.append(("num", int(num), pos))
            elif ident is not None:
                self.toks.append(("id", ident, pos))
            else:
                self.toks.append(("op", op, pos))
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", None, len(self.text))

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ParseError("unexpected token", self.text, t[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            w = self.unary()
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise ParseError("division by zero", self.text, self.peek()[2])
                v = v / w
        return v

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        v = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            sign = 1
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            t = self.take()
            if t[0] != "num":
                raise ParseError("expected integer exponent", self.text, t[2])
            return v ** (sign * t[1])
        return v

    def atom(self):
        t = self.take()
        if t[0] == "num":
            return self.F.convert(t[1])
        if t[0] == "id":
            if t[1] not in self.names:
                raise ParseError("unknown name %r" % t[1], self.text, t[2])
            return self.names[t[1]]
        if t[:2] == ("op", "("):
            v = self.expr()
            c = self.take()
            if c[:2] != ("op", ")"):
                raise ParseError("expected ')'", self.text, c[2])
            return v
        raise ParseError("unexpected token", self.text, t[2])


def _poly_coeffs(text, p):
    """Coefficients (low first) of a univariate polynomial text over F_p."""
    var = None
    for name in re.findall(r"[A-Za-z_]\w*", text):
        if var is None:
            var = name
        elif name != var:
            raise ParseError("min poly must be univariate", text, text.find(name))
    ctx = flint.nmod_poly
    x = ctx([0, 1], p)
    pol = _ExprParser(text, _PolyRing(p), {var or "Y": x}).parse()
    return [int(c) for c in pol.coeffs()]


class _PolyRing:
    """Just enough of the Field interface to parse univariate polynomials."""

    def __init__(self, p):
        self.p = p

    def convert(self, n):
        return flint.nmod_poly([n % self.p], self.p)


def field_from_spec(spec):
    """Parse a field specification: "q", "f5", "gf 2 2: Y^2+Y+1", "fun f2: l1,l2"."""
    s = spec.strip()
    low = s.lower()
    if low in ("q", "qq", "rationals"):
        return QQ()
    m = re.fullmatch(r"f(\d+)", low)
    if m:
        return GF(int(m.group(1)))
    m = re.fullmatch(r"gf\s+(\d+)\s+(\d+)\s*:\s*(.+)", s, flags=re.I)
    if m:
        p, k = int(m.group(1)), int(m.group(2))
        coeffs = _poly_coeffs(m.group(3), p)
        if len(coeffs) != k + 1:
            raise ParseError("min poly degree differs from k", spec, m.start(3))
        return GFq(p, k, coeffs)
    m = re.fullmatch(r"fun\s+(\w+)\s*:\s*(.+)", s, flags=re.I)
    if m:
        base = field_from_spec(m.group(1))
        names = tuple(n.strip() for n in m.group(2).split(","))
        return RationalFunctions(base, names)
    raise ParseError("unknown field spec", spec, 0)


def parse_scalar(text, default=None):
    """Parse "3/4", "2 mod 5", "g^2+1 (gf 2 2: Y^2+Y+1)", "l1/(l1+l2) (fun f2: l1,l2)".

    Without a field annotation the expression is read in `default`
    (Q if none is given).
    """
    t = text.strip()
    m = re.fullmatch(r"(.*?)\s+mod\s+(\d+)", t)
    if m:
        return GF(int(m.group(2))).parse(m.group(1))
    m = re.fullmatch(r"(.*?)\s*\(((?:gf|fun)\b[^()]*)\)", t, flags=re.I)
    if m:
        return field_from_spec(m.group(2)).parse(m.group(1))
    return (default or QQ()).parse(t)
