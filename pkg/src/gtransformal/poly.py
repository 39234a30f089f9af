"""Sparse polynomials in the block variables X_{i,j} and the twisted G-action.

Variables are laid out block-major: X_{i,j} (block i < e, slot j < n, both
0-based internally) sits at position i*n + j of every exponent vector. The
text form uses 1-based ``x[i][j]``.
"""

import re
from dataclasses import dataclass

from .errors import ArityMismatch, LayoutMismatch, ParseError
from .ff import ExtField, format_element

ORDERS = ("lex", "grevlex")


def lex_key(exp):
    return exp


def grevlex_key(exp):
    return (sum(exp), tuple(-x for x in reversed(exp)))


ORDER_KEYS = {"lex": lex_key, "grevlex": grevlex_key}


@dataclass(frozen=True)
class PolyRing:
    """K[X_1, ..., X_e] with n slots per block and a fixed term order."""

    field: object
    e: int
    n: int
    order: str = "grevlex"

    def __post_init__(self):
        if self.order not in ORDER_KEYS:
            raise ValueError(f"unknown term order {self.order!r}")
        if self.e < 1 or self.n < 1:
            raise ValueError("layout needs e >= 1 and n >= 1")

    @property
    def nvars(self):
        return self.e * self.n

    @property
    def key(self):
        return ORDER_KEYS[self.order]

    def with_order(self, order):
        return PolyRing(self.field, self.e, self.n, order)

    def var(self, i, j=0):
        exp = [0] * self.nvars
        exp[i * self.n + j] = 1
        return MultiPoly(self, {tuple(exp): self.field.one})

    def gens(self):
        return [self.var(i, j) for i in range(self.e) for j in range(self.n)]

    def const(self, c):
        return MultiPoly(self, {} if c == self.field.zero else {(0,) * self.nvars: c})

    def zero(self):
        return MultiPoly(self, {})

    def one(self):
        return self.const(self.field.one)

    def from_terms(self, terms):
        F = self.field
        out = {}
        for exp, c in terms:
            exp = tuple(exp)
            s = F.add(out.get(exp, F.zero), c)
            if s == F.zero:
                out.pop(exp, None)
            else:
                out[exp] = s
        return MultiPoly(self, out)

    def parse(self, text):
        return parse_poly(self, text)

    def check_same(self, other):
        if (self.field != other.field or self.e != other.e or self.n != other.n):
            raise LayoutMismatch(f"rings differ: {self} vs {other}")


class MultiPoly:
    """An immutable polynomial: a dict from exponent tuples to nonzero coefficients."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lead = None

    # -- basic protocol -----------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.terms == other.terms and self.ring.field == other.ring.field
        if isinstance(other, int):
            return self == self.ring.const(self.ring.field.from_int(other))
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({to_text(self)})"

    def __str__(self):
        return to_text(self)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(exp) for exp in self.terms)

    def total_degree(self):
        return max((sum(exp) for exp in self.terms), default=-1)

    def sorted_terms(self):
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def lead(self):
        """(exponent, coefficient) of the leading term in the ring's order."""
        if self._lead is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading term")
            key = self.ring.key
            exp = max(self.terms, key=key)
            self._lead = (exp, self.terms[exp])
        return self._lead

    def lm(self):
        return self.lead()[0]

    def lc(self):
        return self.lead()[1]

    def with_ring(self, ring):
        return MultiPoly(ring, self.terms)

    def variables_used(self):
        used = set()
        for exp in self.terms:
            used.update(i for i, x in enumerate(exp) if x)
        return sorted(used)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self.ring.check_same(other.ring)
            return other
        if isinstance(other, int):
            return self.ring.const(self.ring.field.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = F.add(out.get(exp, F.zero), c)
            if s == F.zero:
                out.pop(exp, None)
            else:
                out[exp] = s
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return MultiPoly(self.ring, {e: F.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        F = self.ring.field
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                s = F.add(out.get(exp, F.zero), F.mul(c1, c2))
                if s == F.zero:
                    out.pop(exp, None)
                else:
                    out[exp] = s
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        F = self.ring.field
        if c == F.zero:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: F.mul(x, c) for e, x in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def map_coeffs(self, phi, ring=None):
        ring = ring or self.ring
        F = ring.field
        out = {}
        for exp, c in self.terms.items():
            d = phi(c)
            if d != F.zero:
                out[exp] = d
        return MultiPoly(ring, out)


# -- evaluation and the twisted action ----------------------------------------

def evaluate(f, point):
    """f at a point of K^{ne} listed block-major."""
    ring = f.ring
    if len(point) != ring.nvars:
        raise ArityMismatch(f"expected {ring.nvars} coordinates, got {len(point)}")
    F = ring.field
    acc = F.zero
    powers = {}
    for exp, c in f.terms.items():
        t = c
        for v, a in enumerate(exp):
            if a:
                key = (v, a)
                pw = powers.get(key)
                if pw is None:
                    pw = F.pow(point[v], a)
                    powers[key] = pw
                t = F.mul(t, pw)
                if t == F.zero:
                    break
        acc = F.add(acc, t)
    return acc


@dataclass(frozen=True)
class TwistedAction:
    """G acting on K[X_1..X_e]: coefficients by sigma_k, block i -> g_k * i.

    ``sigma(k, x)`` applies the k-th field automorphism to a coefficient.
    """

    action: object
    field: object
    sigma: object

    @property
    def e(self):
        return self.action.order


def apply_twisted(A, k, f):
    ring = f.ring
    if ring.e != A.e:
        raise LayoutMismatch(f"polynomial has {ring.e} blocks, group order is {A.e}")
    n = ring.n
    perm = A.action.permutation(k)
    out = {}
    for exp, c in f.terms.items():
        new = [0] * ring.nvars
        for i in range(ring.e):
            t = perm[i] * n
            s = i * n
            new[t:t + n] = exp[s:s + n]
        out[tuple(new)] = A.sigma(k, c)
    return MultiPoly(ring, out)


def sigma_tuple(A, a):
    """(sigma_1(a), ..., sigma_e(a)) concatenated in block order."""
    out = []
    for k in range(A.e):
        out.extend(A.sigma(k, x) for x in a)
    return out


# -- text form ------------------------------------------------------------------

def format_coeff(F, c):
    if isinstance(F, ExtField):
        return format_element(F, c)
    return F.format(c)


def _monomial_text(ring, exp):
    parts = []
    for v, a in enumerate(exp):
        if a:
            i, j = divmod(v, ring.n)
            name = f"x[{i + 1}][{j + 1}]"
            parts.append(name if a == 1 else f"{name}^{a}")
    return "*".join(parts)


def to_text(f):
    """Canonical printer: terms in descending term order, joined by ' + '."""
    if not f.terms:
        return "0"
    F = f.ring.field
    out = []
    for exp, c in f.sorted_terms():
        mono = _monomial_text(f.ring, exp)
        if not mono:
            out.append(format_coeff(F, c))
        elif c == F.one:
            out.append(mono)
        else:
            out.append(f"{format_coeff(F, c)}*{mono}")
    return " + ".join(out)


_TOKEN = re.compile(r"(\d+)|(x)\s*\[\s*(\d+)\s*\]\s*\[\s*(\d+)\s*\]|(g)|(i)|([-+*^()/])")


class _Parser:
    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos]!r}", *self._loc(pos))
            self.tokens.append((m, pos))
            pos = m.end()
        self.i = 0

    def _loc(self, pos):
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def _peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, len(self.text))

    def _error(self, msg):
        _, pos = self._peek()
        raise ParseError(msg, *self._loc(pos))

    def _op(self, ch):
        m, _ = self._peek()
        return m is not None and m.group(7) == ch

    def parse(self):
        if not self.tokens:
            self._error("empty polynomial")
        f = self.expr()
        if self.i != len(self.tokens):
            self._error("unexpected trailing input")
        return f

    def expr(self):
        sign = 1
        if self._op("-"):
            self.i += 1
            sign = -1
        elif self._op("+"):
            self.i += 1
        f = self.term()
        if sign < 0:
            f = -f
        while self._op("+") or self._op("-"):
            neg = self._op("-")
            self.i += 1
            t = self.term()
            f = f - t if neg else f + t
        return f

    def term(self):
        f = self.power()
        while True:
            if self._op("*"):
                self.i += 1
                f = f * self.power()
            elif self._op("/"):
                self.i += 1
                d = self.power()
                if not d.is_constant() or d.is_zero():
                    self._error("division only by nonzero constants")
                F = self.ring.field
                inv = F.inv(d.terms[(0,) * self.ring.nvars])
                f = f.scale(inv)
            else:
                return f

    def power(self):
        base = self.atom()
        if self._op("^"):
            self.i += 1
            m, _ = self._peek()
            if m is None or m.group(1) is None:
                self._error("exponent must be a nonnegative integer")
            self.i += 1
            return base ** int(m.group(1))
        return base

    def atom(self):
        m, _ = self._peek()
        if m is None:
            self._error("unexpected end of input")
        ring = self.ring
        if m.group(1) is not None:
            self.i += 1
            return ring.const(ring.field.from_int(int(m.group(1))))
        if m.group(2) is not None:
            i, j = int(m.group(3)), int(m.group(4))
            if not (1 <= i <= ring.e and 1 <= j <= ring.n):
                self._error(f"variable x[{i}][{j}] outside layout e={ring.e}, n={ring.n}")
            self.i += 1
            return ring.var(i - 1, j - 1)
        if m.group(5) is not None:
            self.i += 1
            gen = getattr(ring.field, "gen", None)
            if gen is None:
                self._error("field has no named generator g")
            return ring.const(gen)
        if m.group(6) is not None:
            self.i += 1
            gen = getattr(ring.field, "imaginary_unit", None)
            if gen is None:
                self._error("symbol i is only defined over Q(i)")
            return ring.const(gen)
        if self._op("("):
            self.i += 1
            f = self.expr()
            if not self._op(")"):
                self._error("expected ')'")
            self.i += 1
            return f
        if self._op("-"):
            self.i += 1
            return -self.atom()
        self._error("unexpected token")


def parse_poly(ring, text):
    """Parse the text grammar (``x[i][j]``, integers, ``g``, + - * / ^, parentheses)."""
    return _Parser(ring, text).parse()
