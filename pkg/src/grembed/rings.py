"""Exact commutative ring arithmetic, selectable at runtime.

Every ring is an object carrying the arithmetic; elements are plain hashable
Python values (ints, Fractions, tuples) kept in canonical form.  Supported
rings: the integers, the rationals, prime fields F_p, dual numbers
F_p[eps]/(eps^2), and sparse multivariate polynomials over the integers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class RingError(ValueError):
    """Base class for ring construction and arithmetic errors."""


class RingMismatchError(RingError):
    """Operands or containers belong to different rings."""


class NotAUnitError(RingError):
    """Inverse requested for an element that is not a unit."""


class NotEnumerableError(RingError):
    """Element enumeration requested for an infinite ring."""


def is_prime(n) -> bool:
    """Deterministic primality test by trial division (moduli here are small)."""
    if not isinstance(n, int) or n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class Ring:
    """Abstract commutative ring.

    Subclasses fix the element payload format and must provide canon, add,
    neg, mul, from_int, is_unit, inverse, exact_div and the JSON codecs.
    All element values are immutable and safe to share.
    """

    kind: str = ""
    is_integral_domain = True
    is_field = False
    is_finite = False
    # local rings (fields and dual numbers) admit column span normal forms
    is_local = False

    zero = None
    one = None

    # -- arithmetic -----------------------------------------------------

    def canon(self, x):
        """Validate arbitrary input and return the canonical payload."""
        raise NotImplementedError

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def from_int(self, n: int):
        """Image of the integer n under the unique map from the integers."""
        raise NotImplementedError

    def pow(self, x, k: int):
        """x**k for k >= 0 by binary exponentiation."""
        if k < 0:
            raise RingError("negative exponent; use inverse() explicitly")
        result = self.one
        base = x
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def is_zero(self, x) -> bool:
        return x == self.zero

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inverse(self, x):
        raise NotImplementedError

    def exact_div(self, x, y):
        """Quotient x/y when y divides x exactly; raises otherwise."""
        raise NotImplementedError

    # -- enumeration ------------------------------------------------------

    def size(self):
        """Number of elements, or None for infinite rings."""
        return None

    def elements(self):
        """Yield every element exactly once (finite rings only)."""
        raise NotEnumerableError(f"cannot enumerate the infinite ring {self}")

    def nonunits(self):
        """Yield the non-units, i.e. the maximal ideal of a finite local ring."""
        raise NotEnumerableError(f"cannot enumerate the non-units of {self}")

    def random_element(self, rng):
        raise NotImplementedError

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        raise NotImplementedError

    def value_to_json(self, x):
        raise NotImplementedError

    def value_from_json(self, obj):
        raise NotImplementedError

    def format_value(self, x) -> str:
        return str(x)

    # -- identity ---------------------------------------------------------

    def _key(self):
        return (self.kind,)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


class IntegerRing(Ring):
    """The ring of arbitrary-precision integers."""

    kind = "Integer"
    zero = 0
    one = 1

    def canon(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingError(f"not an integer: {x!r}")
        return x

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def from_int(self, n):
        return n

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if not self.is_unit(x):
            raise NotAUnitError(f"{x} is not a unit in {self}")
        return x

    def exact_div(self, x, y):
        if y == 0:
            raise RingError("division by zero")
        q, r = divmod(x, y)
        if r != 0:
            raise RingError(f"{y} does not divide {x} exactly")
        return q

    def random_element(self, rng):
        return rng.randint(-9, 9)

    def to_json(self):
        return {"kind": self.kind}

    def value_to_json(self, x):
        return x

    def value_from_json(self, obj):
        return self.canon(obj)

    def __repr__(self):
        return "Z"


class RationalField(Ring):
    """The field of rationals; values are reduced Fractions."""

    kind = "Rational"
    is_field = True
    is_local = True
    zero = Fraction(0)
    one = Fraction(1)

    def canon(self, x):
        if isinstance(x, bool) or isinstance(x, float):
            raise RingError(f"not an exact rational: {x!r}")
        if isinstance(x, (int, str, Fraction)):
            return Fraction(x)
        raise RingError(f"not a rational: {x!r}")

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def from_int(self, n):
        return Fraction(n)

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise NotAUnitError("0 is not a unit in Q")
        return 1 / x

    def exact_div(self, x, y):
        if y == 0:
            raise RingError("division by zero")
        return x / y

    def random_element(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def to_json(self):
        return {"kind": self.kind}

    def value_to_json(self, x):
        return str(x)

    def value_from_json(self, obj):
        return self.canon(obj)

    def __repr__(self):
        return "Q"


class PrimeField(Ring):
    """F_p for a prime p; values are residues in [0, p)."""

    kind = "PrimeField"
    is_field = True
    is_finite = True
    is_local = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def canon(self, x):
        if isinstance(x, bool) or not isinstance(x, int):
            raise RingError(f"not an integer residue: {x!r}")
        return x % self.p

    def add(self, x, y):
        return (x + y) % self.p

    def neg(self, x):
        return (-x) % self.p

    def mul(self, x, y):
        return (x * y) % self.p

    def from_int(self, n):
        return n % self.p

    def is_unit(self, x):
        return x != 0

    def inverse(self, x):
        if x == 0:
            raise NotAUnitError(f"0 is not a unit in {self}")
        return pow(x, -1, self.p)

    def exact_div(self, x, y):
        return self.mul(x, self.inverse(y))

    def size(self):
        return self.p

    def elements(self):
        return iter(range(self.p))

    def nonunits(self):
        return iter((0,))

    def random_element(self, rng):
        return rng.randrange(self.p)

    def to_json(self):
        return {"kind": self.kind, "p": self.p}

    def value_to_json(self, x):
        return x

    def value_from_json(self, obj):
        return self.canon(obj)

    def _key(self):
        return (self.kind, self.p)

    def __repr__(self):
        return f"F_{self.p}"


class DualNumbers(Ring):
    """F_p[eps]/(eps^2): pairs (a, b) meaning a + b*eps with a, b in [0, p).

    The smallest non-reduced local ring.  (a, b) is a unit iff a != 0, and
    every element with a == 0 squares to zero; it is not an integral domain.
    """

    kind = "DualNumbers"
    is_integral_domain = False
    is_finite = True
    is_local = True

    def __init__(self, p: int):
        if not is_prime(p):
            raise RingError(f"{p} is not prime")
        self.p = p
        self.zero = (0, 0)
        self.one = (1 % p, 0)

    def canon(self, x):
        if isinstance(x, bool):
            raise RingError(f"not a dual number: {x!r}")
        if isinstance(x, int):
            return (x % self.p, 0)
        if isinstance(x, (tuple, list)) and len(x) == 2:
            a, b = x
            if isinstance(a, int) and isinstance(b, int):
                return (a % self.p, b % self.p)
        raise RingError(f"not a dual number: {x!r}")

    def add(self, x, y):
        return ((x[0] + y[0]) % self.p, (x[1] + y[1]) % self.p)

    def neg(self, x):
        return ((-x[0]) % self.p, (-x[1]) % self.p)

    def mul(self, x, y):
        # (a + b eps)(c + d eps) = ac + (ad + bc) eps since eps^2 = 0
        a, b = x
        c, d = y
        return ((a * c) % self.p, (a * d + b * c) % self.p)

    def from_int(self, n):
        return (n % self.p, 0)

    def is_unit(self, x):
        return x[0] != 0

    def inverse(self, x):
        a, b = x
        if a == 0:
            raise NotAUnitError(f"{self.format_value(x)} is not a unit in {self}")
        ai = pow(a, -1, self.p)
        return (ai, (-b * ai * ai) % self.p)

    def exact_div(self, x, y):
        if not self.is_unit(y):
            raise RingError(f"cannot divide by the non-unit {self.format_value(y)}")
        return self.mul(x, self.inverse(y))

    def size(self):
        return self.p * self.p

    def elements(self):
        return ((a, b) for a in range(self.p) for b in range(self.p))

    def nonunits(self):
        return ((0, b) for b in range(self.p))

    def random_element(self, rng):
        return (rng.randrange(self.p), rng.randrange(self.p))

    def to_json(self):
        return {"kind": self.kind, "p": self.p}

    def value_to_json(self, x):
        return [x[0], x[1]]

    def value_from_json(self, obj):
        return self.canon(obj)

    def format_value(self, x):
        a, b = x
        if b == 0:
            return str(a)
        eps = "eps" if b == 1 else f"{b}*eps"
        return eps if a == 0 else f"{a}+{eps}"

    def _key(self):
        return (self.kind, self.p)

    def __repr__(self):
        return f"F_{self.p}[eps]"


def _grlex_term_key(term):
    exps, _ = term
    return (sum(exps), exps)


class PolynomialRing(Ring):
    """Sparse multivariate polynomials over the integers.

    Values are tuples of (exponent tuple, nonzero int coefficient) sorted in
    descending graded-lex order (total degree first, then lex), so equal
    polynomials compare equal and print deterministically.
    """

    kind = "PolyOverInt"

    def __init__(self, variables):
        names = tuple(variables)
        if not names:
            raise RingError("polynomial ring needs at least one variable")
        if len(set(names)) != len(names):
            raise RingError(f"duplicate variable names: {names}")
        for name in names:
            if not isinstance(name, str) or not name:
                raise RingError(f"bad variable name: {name!r}")
        self.variables = names
        self.nvars = len(names)
        self.zero = ()
        self.one = (((0,) * self.nvars, 1),)

    # -- construction -----------------------------------------------------

    def _canon_terms(self, items):
        merged = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != self.nvars or any(
                not isinstance(e, int) or e < 0 for e in exps
            ):
                raise RingError(f"bad exponent vector: {exps!r}")
            if isinstance(coeff, bool) or not isinstance(coeff, int):
                raise RingError(f"bad coefficient: {coeff!r}")
            merged[exps] = merged.get(exps, 0) + coeff
        terms = [(e, c) for e, c in merged.items() if c != 0]
        terms.sort(key=_grlex_term_key, reverse=True)
        return tuple(terms)

    def canon(self, x):
        if isinstance(x, bool):
            raise RingError(f"not a polynomial: {x!r}")
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, dict):
            return self._canon_terms(x.items())
        if isinstance(x, (tuple, list)):
            return self._canon_terms(x)
        raise RingError(f"not a polynomial: {x!r}")

    def variable(self, name):
        """The polynomial X for a declared variable name X."""
        if name not in self.variables:
            raise RingError(f"unknown variable {name!r} in {self}")
        exps = tuple(1 if v == name else 0 for v in self.variables)
        return ((exps, 1),)

    def gens(self):
        return [self.variable(name) for name in self.variables]

    # -- arithmetic -------------------------------------------------------

    def add(self, x, y):
        merged = dict(x)
        for exps, coeff in y:
            c = merged.get(exps, 0) + coeff
            if c:
                merged[exps] = c
            else:
                del merged[exps]
        terms = sorted(merged.items(), key=_grlex_term_key, reverse=True)
        return tuple(terms)

    def neg(self, x):
        return tuple((exps, -coeff) for exps, coeff in x)

    def mul(self, x, y):
        if not x or not y:
            return ()
        prod = {}
        for e1, c1 in x:
            for e2, c2 in y:
                exps = tuple(a + b for a, b in zip(e1, e2))
                c = prod.get(exps, 0) + c1 * c2
                if c:
                    prod[exps] = c
                else:
                    del prod[exps]
        terms = sorted(prod.items(), key=_grlex_term_key, reverse=True)
        return tuple(terms)

    def from_int(self, n):
        if n == 0:
            return ()
        return (((0,) * self.nvars, n),)

    def is_unit(self, x):
        # units of Z[X...] are the constants 1 and -1
        return len(x) == 1 and sum(x[0][0]) == 0 and x[0][1] in (1, -1)

    def inverse(self, x):
        if not self.is_unit(x):
            raise NotAUnitError(f"{self.format_value(x)} is not a unit in {self}")
        return x

    def exact_div(self, x, y):
        """Exact division by repeated leading-term cancellation.

        Valid whenever y divides x in the polynomial ring: with a monomial
        order the leading term of x is the product of the leading terms of
        y and the quotient, so each step strips one quotient term.
        """
        if not y:
            raise RingError("division by zero polynomial")
        quotient = {}
        rem = x
        le, lc = y[0]
        while rem:
            re, rc = rem[0]
            qe = tuple(a - b for a, b in zip(re, le))
            if any(e < 0 for e in qe) or rc % lc != 0:
                raise RingError("polynomial division is not exact")
            qc = rc // lc
            quotient[qe] = quotient.get(qe, 0) + qc
            rem = self.add(rem, self.neg(self.mul(((qe, qc),), y)))
        terms = sorted(quotient.items(), key=_grlex_term_key, reverse=True)
        return tuple(terms)

    def evaluate(self, x, target: Ring, values):
        """Apply the evaluation homomorphism sending variable i to values[i]."""
        if len(values) != self.nvars:
            raise RingError(f"expected {self.nvars} values, got {len(values)}")
        total = target.zero
        for exps, coeff in x:
            term = target.from_int(coeff)
            for v, e in zip(values, exps):
                if e:
                    term = target.mul(term, target.pow(v, e))
            total = target.add(total, term)
        return total

    def total_degree(self, x):
        return sum(x[0][0]) if x else 0

    def random_element(self, rng):
        terms = []
        for _ in range(rng.randint(1, 2)):
            exps = [0] * self.nvars
            for _ in range(rng.randint(0, 2)):
                exps[rng.randrange(self.nvars)] += 1
            terms.append((tuple(exps), rng.randint(-3, 3)))
        return self._canon_terms(terms)

    # -- serialization ----------------------------------------------------

    def to_json(self):
        return {"kind": self.kind, "variables": list(self.variables)}

    def value_to_json(self, x):
        return [[coeff, list(exps)] for exps, coeff in x]

    def value_from_json(self, obj):
        if not isinstance(obj, list):
            raise RingError(f"bad polynomial JSON: {obj!r}")
        return self._canon_terms((tuple(exps), coeff) for coeff, exps in obj)

    def format_value(self, x):
        if not x:
            return "0"
        parts = []
        for exps, coeff in x:
            factors = []
            for name, e in zip(self.variables, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            mag = abs(coeff)
            if mono and mag == 1:
                text = mono
            elif mono:
                text = f"{mag}*{mono}"
            else:
                text = str(mag)
            parts.append(("-" if coeff < 0 else "+", text))
        sign, first = parts[0]
        out = ("-" if sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def _key(self):
        return (self.kind, self.variables)

    def __repr__(self):
        return "Z[" + ",".join(self.variables) + "]"


def enumerate_ring(ring: Ring):
    """Yield every element of a finite ring exactly once."""
    return ring.elements()


_RING_KINDS = {
    "Integer": lambda obj: IntegerRing(),
    "Rational": lambda obj: RationalField(),
    "PrimeField": lambda obj: PrimeField(obj["p"]),
    "DualNumbers": lambda obj: DualNumbers(obj["p"]),
    "PolyOverInt": lambda obj: PolynomialRing(obj["variables"]),
}


def ring_from_json(obj: dict) -> Ring:
    """Rebuild a ring from its JSON descriptor."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise RingError(f"bad ring descriptor: {obj!r}")
    kind = obj["kind"]
    if kind not in _RING_KINDS:
        raise RingError(f"unknown ring kind {kind!r}")
    try:
        return _RING_KINDS[kind](obj)
    except KeyError as exc:
        raise RingError(f"ring descriptor {obj!r} is missing field {exc}") from exc
