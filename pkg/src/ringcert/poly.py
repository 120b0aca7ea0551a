"""Sparse multivariate polynomials with exact coefficients.

Coefficients live in one of five modes: the integers, the integers localized
at a prime p (represented by integer coefficients; localization only changes
membership tests downstream), the rationals, Z/p^m with canonical
representatives in [0, p^m), and the prime field GF(p).  Arithmetic never
rounds and never overflows: plain Python ints and Fraction throughout.

Terms are keyed by exponent tuples.  All public iteration and rendering is
in descending monomial order, so equal polynomials always print identically.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, isqrt

from .errors import ModeMismatchError, ParseError, UnsupportedModeError

INT = "integer"
INT_LOC = "int_loc"
RAT = "rational"
INT_MOD = "int_mod"
GF = "gf"


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Mode:
    """Coefficient mode descriptor; immutable and hashable."""

    __slots__ = ("kind", "p", "m")

    def __init__(self, kind, p=None, m=None):
        if kind not in (INT, INT_LOC, RAT, INT_MOD, GF):
            raise UnsupportedModeError(f"unknown coefficient mode {kind!r}")
        if kind in (INT_LOC, INT_MOD, GF):
            if p is None or not is_prime(p):
                raise UnsupportedModeError(f"mode {kind} needs a prime, got {p!r}")
        if kind == INT_MOD:
            if m is None or m < 1:
                raise UnsupportedModeError("int_mod needs exponent m >= 1")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", 1 if kind == GF else m)

    def __setattr__(self, *a):
        raise AttributeError("Mode is immutable")

    def __eq__(self, other):
        return (isinstance(other, Mode)
                and (self.kind, self.p, self.m) == (other.kind, other.p, other.m))

    def __hash__(self):
        return hash((self.kind, self.p, self.m))

    def __repr__(self):
        if self.kind == INT_LOC:
            return f"int_loc({self.p})"
        if self.kind == INT_MOD:
            return f"int_mod({self.p},{self.m})"
        if self.kind == GF:
            return f"gf({self.p})"
        return self.kind

    @property
    def modulus(self):
        if self.kind == INT_MOD:
            return self.p ** self.m
        if self.kind == GF:
            return self.p
        return None

    @property
    def is_field(self):
        return self.kind in (RAT, GF)

    @property
    def prime(self):
        """The distinguished prime, when the mode carries one."""
        return self.p

    def canon(self, c):
        """Canonical coefficient representative; raises on unusable input."""
        if self.kind == RAT:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ModeMismatchError(
                    f"non-integral coefficient {c} in mode {self!r}")
            c = c.numerator
        c = int(c)
        mod = self.modulus
        return c % mod if mod is not None else c


def mode_from_string(text):
    text = text.strip()
    if text == INT:
        return Mode(INT)
    if text == RAT:
        return Mode(RAT)
    for kind in (INT_LOC, INT_MOD, GF):
        if text.startswith(kind + "(") and text.endswith(")"):
            args = [int(a) for a in text[len(kind) + 1:-1].split(",")]
            return Mode(kind, *args)
    raise UnsupportedModeError(f"cannot parse mode {text!r}")


# ---------------------------------------------------------------------------
# Monomial orders


class MonomialOrder:
    """Total order on exponent tuples refining divisibility.

    kind is one of "grevlex", "lex", or "block" (elimination order whose
    first `split` variables dominate; both blocks are compared by grevlex).
    """

    __slots__ = ("kind", "split")

    def __init__(self, kind="grevlex", split=0):
        if kind not in ("grevlex", "lex", "block"):
            raise UnsupportedModeError(f"unknown monomial order {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "split", split)

    def __setattr__(self, *a):
        raise AttributeError("MonomialOrder is immutable")

    def __eq__(self, other):
        return (isinstance(other, MonomialOrder)
                and (self.kind, self.split) == (other.kind, other.split))

    def __hash__(self):
        return hash((self.kind, self.split))

    def __repr__(self):
        if self.kind == "block":
            return f"block({self.split})"
        return self.kind

    @staticmethod
    def _grevlex_key(exps):
        return (sum(exps), tuple(-e for e in reversed(exps)))

    def key(self, exps):
        """Sort key: bigger key means bigger monomial."""
        if self.kind == "grevlex":
            return self._grevlex_key(exps)
        if self.kind == "lex":
            return tuple(exps)
        head, tail = exps[: self.split], exps[self.split:]
        return (self._grevlex_key(head), self._grevlex_key(tail))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(split):
    return MonomialOrder("block", split)


def monomial_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def monomial_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def monomials_up_to(nvars, degree, order=GREVLEX):
    """All exponent tuples of total degree <= degree, ascending in `order`."""
    out = []

    def rec(prefix, remaining, slots):
        if slots == 0:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, slots - 1)

    rec([], degree, nvars)
    out.sort(key=order.key)
    return out


# ---------------------------------------------------------------------------
# Polynomials


class Polynomial:
    """Immutable sparse polynomial. Do not mutate `_terms` after creation."""

    __slots__ = ("mode", "vars", "_terms", "_hash")

    def __init__(self, mode, variables, terms):
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "vars", tuple(variables))
        clean = {}
        for exps, c in terms.items():
            c = mode.canon(c)
            if c != 0:
                clean[tuple(exps)] = c
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, mode, variables):
        return cls(mode, variables, {})

    @classmethod
    def constant(cls, mode, variables, c):
        return cls(mode, variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, mode, variables, name):
        variables = tuple(variables)
        idx = variables.index(name)
        exps = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(mode, variables, {exps: 1})

    # -- inspection --------------------------------------------------------

    def terms(self, order=GREVLEX):
        """(exponents, coefficient) pairs in descending monomial order."""
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]),
                      reverse=True)

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), 0)

    def monomials(self):
        return set(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(all(e == 0 for e in exps) for exps in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * len(self.vars), 0)

    def total_degree(self):
        if not self._terms:
            return 0
        return max(sum(exps) for exps in self._terms)

    def degree_in(self, name):
        idx = self.vars.index(name)
        if not self._terms:
            return 0
        return max(exps[idx] for exps in self._terms)

    def leading(self, order=GREVLEX):
        """(exponents, coefficient) of the leading term."""
        exps = max(self._terms, key=order.key)
        return exps, self._terms[exps]

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (self.mode == other.mode and self.vars == other.vars
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            items = tuple(sorted(self._terms.items()))
            object.__setattr__(self, "_hash", hash((self.mode, self.vars, items)))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if self.mode != other.mode or self.vars != other.vars:
            raise ModeMismatchError(
                f"operands disagree: {self.mode!r}[{','.join(self.vars)}] vs "
                f"{other.mode!r}[{','.join(other.vars)}]")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.mode, self.vars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exps, c in other._terms.items():
            terms[exps] = terms.get(exps, 0) + c
        return Polynomial(self.mode, self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.mode, self.vars,
                          {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = monomial_mul(e1, e2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return Polynomial(self.mode, self.vars, terms)

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.mode, self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def scale(self, c):
        return Polynomial(self.mode, self.vars,
                          {e: v * c for e, v in self._terms.items()})

    # -- structure changes -------------------------------------------------

    def convert(self, mode):
        """Reinterpret coefficients in another mode (exact or canonicalizing)."""
        if mode == self.mode:
            return self
        terms = {}
        for exps, c in self._terms.items():
            terms[exps] = mode.canon(c)
        return Polynomial(mode, self.vars, terms)

    def rename_vars(self, new_vars):
        """Same exponents, new variable names (arity must match)."""
        if len(new_vars) != len(self.vars):
            raise ModeMismatchError("arity mismatch in rename")
        return Polynomial(self.mode, tuple(new_vars), dict(self._terms))

    def embed(self, new_vars, mode=None):
        """Map into a superset variable tuple (by name), optionally new mode."""
        new_vars = tuple(new_vars)
        mode = mode or self.mode
        pos = []
        for v in self.vars:
            if v not in new_vars:
                raise ModeMismatchError(f"variable {v} missing from target")
            pos.append(new_vars.index(v))
        terms = {}
        for exps, c in self._terms.items():
            new_exps = [0] * len(new_vars)
            for i, e in enumerate(exps):
                new_exps[pos[i]] = e
            key = tuple(new_exps)
            terms[key] = terms.get(key, 0) + c
        return Polynomial(mode, new_vars, terms)

    def restrict(self, new_vars):
        """Drop unused variables; fails if a dropped variable occurs."""
        new_vars = tuple(new_vars)
        keep = [self.vars.index(v) for v in new_vars]
        dropped = [i for i in range(len(self.vars)) if i not in keep]
        terms = {}
        for exps, c in self._terms.items():
            if any(exps[i] != 0 for i in dropped):
                raise ModeMismatchError("polynomial uses a dropped variable")
            terms[tuple(exps[i] for i in keep)] = c
        return Polynomial(self.mode, new_vars, terms)

    def permute_vars(self, new_vars):
        """Reorder to a permutation of the current variables."""
        return self.embed(tuple(new_vars))

    def substitute(self, images, mode=None, variables=None):
        """Evaluate at var -> Polynomial (all in one common target ring)."""
        sample = next(iter(images.values()), None)
        if sample is None:
            if mode is None or variables is None:
                raise ModeMismatchError("empty substitution needs target ring")
        mode = mode or sample.mode
        variables = tuple(variables) if variables is not None else sample.vars
        out = Polynomial.zero(mode, variables)
        for exps, c in sorted(self._terms.items()):
            term = Polynomial.constant(mode, variables, mode.canon(c))
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                img = images.get(self.vars[i])
                if img is None:
                    raise ModeMismatchError(f"no image for {self.vars[i]}")
                term = term * img ** e
            out = out + term
        return out

    # -- vector form (for linear algebra passes) ----------------------------

    def to_vector(self, monomial_list):
        index = {m: i for i, m in enumerate(monomial_list)}
        vec = [0] * len(monomial_list)
        for exps, c in self._terms.items():
            if exps not in index:
                raise ValueError("monomial outside the chosen window")
            vec[index[exps]] = c
        return vec

    @classmethod
    def from_vector(cls, mode, variables, monomial_list, vec):
        return cls(mode, variables,
                   {m: c for m, c in zip(monomial_list, vec) if c != 0})

    # -- rendering -----------------------------------------------------------

    def render(self, order=GREVLEX):
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.terms(order):
            mono = "*".join(
                v if e == 1 else f"{v}^{e}"
                for v, e in zip(self.vars, exps) if e > 0)
            neg = c < 0
            ac = -c if neg else c
            if mono and ac == 1:
                body = mono
            elif mono:
                body = f"{ac}*{mono}"
            else:
                body = f"{ac}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return self.render()


def poly_vars(mode, variables):
    """Variable polynomials for a fresh ring, e.g. x, y = poly_vars(m, "x y")."""
    if isinstance(variables, str):
        variables = tuple(variables.split())
    return tuple(Polynomial.variable(mode, variables, v) for v in variables)


# ---------------------------------------------------------------------------
# Operations from the module contract


def poly_arith(a, b, op):
    """Exact add/sub/mul with mode checking."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_pow(a, e):
    """a**e by binary exponentiation; a**0 is 1."""
    return a ** e


def p_valuation(c, p):
    """Largest k with p^k dividing c; math.inf for c == 0."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if isinstance(c, Fraction):
        if c.denominator != 1:
            return p_valuation(c.numerator, p) - p_valuation(c.denominator, p)
        c = c.numerator
    if c == 0:
        return float("inf")
    c = abs(int(c))
    k = 0
    while c % p == 0:
        c //= p
        k += 1
    return k


def binomial(n, k):
    return comb(n, k)


# ---------------------------------------------------------------------------
# Text parsing (grammar documented in the README)


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(_Tok("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
        elif text.startswith("**", i):
            toks.append(_Tok("^", "^", i))
            i += 2
        elif ch in "+-*/^()":
            toks.append(_Tok(ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in polynomial", col=i)
    toks.append(_Tok("end", "", len(text)))
    return toks


class _PolyParser:
    def __init__(self, text, mode, variables):
        self.toks = _tokenize(text)
        self.i = 0
        self.mode = mode
        self.vars = tuple(variables)

    def peek(self):
        return self.toks[self.i]

    def eat(self, kind=None):
        tok = self.toks[self.i]
        if kind and tok.kind != kind:
            raise ParseError(f"expected {kind}, got {tok.text!r}", col=tok.pos)
        self.i += 1
        return tok

    def parse(self):
        p = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"trailing input {tok.text!r}", col=tok.pos)
        return p

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok.kind in ("+", "-"):
            self.eat()
            sign = -1 if tok.kind == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek().kind in ("+", "-"):
            op = self.eat().kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.factor()
        while self.peek().kind == "*":
            self.eat()
            p = p * self.factor()
        return p

    def factor(self):
        tok = self.peek()
        if tok.kind == "int":
            self.eat()
            num = int(tok.text)
            if self.peek().kind == "/":
                self.eat()
                den = int(self.eat("int").text)
                c = Fraction(num, den)
                if self.mode.kind != RAT:
                    if c.denominator != 1:
                        raise ParseError(
                            f"fraction {num}/{den} in non-rational mode",
                            col=tok.pos)
                    c = c.numerator
                return Polynomial.constant(self.mode, self.vars, c)
            return Polynomial.constant(self.mode, self.vars, num)
        if tok.kind == "name":
            self.eat()
            if tok.text not in self.vars:
                raise ParseError(f"unknown variable {tok.text!r}", col=tok.pos)
            p = Polynomial.variable(self.mode, self.vars, tok.text)
            if self.peek().kind == "^":
                self.eat()
                e = int(self.eat("int").text)
                p = p ** e
            return p
        if tok.kind == "(":
            self.eat()
            p = self.expr()
            self.eat(")")
            if self.peek().kind == "^":
                self.eat()
                e = int(self.eat("int").text)
                p = p ** e
            return p
        if tok.kind == "-":
            self.eat()
            return -self.factor()
        raise ParseError(f"unexpected token {tok.text!r}", col=tok.pos)


def parse_poly(text, mode, variables):
    """Parse canonical polynomial text, e.g. "x^2*y + 4*y^3 - 2"."""
    return _PolyParser(text, mode, variables).parse()
