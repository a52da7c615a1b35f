"""Sparse multivariate polynomials over the rationals.

A :class:`Ring` fixes an ordered list of variable names and a lexicographic
priority.  Monomials are stored internally as packed integers whose natural
integer order coincides with the ring's lex order, so sorting, comparing and
multiplying monomials are plain integer operations.  Public accessors expose
monomials as dense exponent tuples in variable order.

Coefficients are exact rationals (:class:`gmpy2.mpq`).
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import permutations as _iter_perms
from numbers import Rational as _RationalABC

import gmpy2
from gmpy2 import mpq

__all__ = [
    "Rational",
    "Ring",
    "MonomialOrder",
    "Polynomial",
    "Permutation",
    "ParseError",
    "RingMismatch",
    "S3",
    "add",
    "mul",
    "substitute",
    "apply_permutation",
    "symmetrize",
    "is_invariant",
    "parse",
    "format_poly",
    "read_poly_file",
]

Rational = type(mpq())

# bits per exponent field; the top bit of each field is a guard bit
FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1

_COLUMN_VAR = re.compile(r"^([xd])([123])$")


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    """Raised on malformed polynomial text; ``pos`` is the 0-based offset."""

    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}")


def to_rational(c):
    if isinstance(c, Rational):
        return c
    if isinstance(c, (int, gmpy2.mpz().__class__)):
        return mpq(c)
    if isinstance(c, Fraction):
        return mpq(c.numerator, c.denominator)
    if isinstance(c, _RationalABC):
        return mpq(int(c.numerator), int(c.denominator))
    if isinstance(c, str):
        return mpq(c)
    raise TypeError(f"not an exact rational: {c!r}")


class MonomialOrder:
    """Lexicographic order given by a priority list of variable indices."""

    kind = "lex"

    def __init__(self, priority):
        self.priority = tuple(priority)
        if sorted(self.priority) != list(range(len(self.priority))):
            raise ValueError(f"priority {self.priority} is not a permutation")

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.priority == other.priority

    def __hash__(self):
        return hash(("lex", self.priority))

    def __repr__(self):
        return f"MonomialOrder(lex, {list(self.priority)})"


class Ring:
    """Polynomial ring ``Q[variables]`` with a lex order.

    ``priority`` lists variable names (or indices) from greatest to least;
    by default the variables are ordered as given.
    """

    def __init__(self, variables, priority=None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.variables = variables
        self.nvars = n = len(variables)
        self.index = {v: i for i, v in enumerate(variables)}
        if priority is None:
            prio = tuple(range(n))
        else:
            prio = tuple(self.index[p] if isinstance(p, str) else int(p) for p in priority)
        self.order = MonomialOrder(prio)
        self.priority = prio
        rank = [0] * n
        for r, v in enumerate(prio):
            rank[v] = r
        self.shifts = tuple((n - 1 - rank[v]) * FIELD_BITS for v in range(n))
        self.field_mask = (1 << FIELD_BITS) - 1
        self.guard = sum(1 << (k * FIELD_BITS + FIELD_BITS - 1) for k in range(n))
        self._column_perm_cache = {}
        self._key = (variables, prio)

    # -- identity -----------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        order = ">".join(self.variables[i] for i in self.priority)
        return f"Ring({order})"

    # -- monomial packing ----------------------------------------------
    def pack(self, exps):
        if len(exps) != self.nvars:
            raise ValueError(f"exponent vector of length {len(exps)} for arity {self.nvars}")
        key = 0
        for e, s in zip(exps, self.shifts):
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            key |= e << s
        return key

    def unpack(self, key):
        m = self.field_mask
        return tuple((key >> s) & m for s in self.shifts)

    def var_key(self, name, power=1):
        return power << self.shifts[self.index[name]]

    def divides(self, a, b):
        """True iff monomial ``a`` divides monomial ``b`` (packed keys)."""
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a, b):
        g = self.guard
        t = ((a | g) - b) & g
        sel = t - (t >> (FIELD_BITS - 1))
        return (a & sel) | (b & ~sel & ~g)

    def coprime(self, a, b):
        return self.lcm(a, b) == a + b

    def degree_of_key(self, key):
        m = self.field_mask
        return sum((key >> s) & m for s in self.shifts)

    def check_keys(self, keys):
        """Raise ``OverflowError`` if any packed exponent left its field."""
        acc = 0
        for k in keys:
            acc |= k
        if acc & self.guard or acc >> (self.nvars * FIELD_BITS):
            raise OverflowError(f"exponent exceeds {MAX_EXPONENT}")

    # -- constructors -------------------------------------------------
    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {0: mpq(1)})

    def const(self, c):
        c = to_rational(c)
        return Polynomial(self, {0: c} if c else {})

    def var(self, name):
        if name not in self.index:
            raise KeyError(f"unknown variable {name!r} in {self!r}")
        return Polynomial(self, {self.var_key(name): mpq(1)})

    def gens(self):
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps, coeff=1):
        c = to_rational(coeff)
        return Polynomial(self, {self.pack(exps): c} if c else {})

    def from_terms(self, terms):
        """Build from ``(coeff, exponent tuple)`` pairs, merging duplicates."""
        d = {}
        for c, e in terms:
            k = self.pack(e)
            d[k] = d.get(k, 0) + to_rational(c)
        return Polynomial(self, {k: c for k, c in d.items() if c})

    def parse(self, text):
        return parse(text, self)

    def __call__(self, text):
        return parse(text, self)

    def convert(self, p):
        """Re-express ``p`` (from another ring) in this ring by variable name.

        Raises ``RingMismatch`` if ``p`` involves a variable absent here.
        """
        if p.ring == self:
            return p
        src = p.ring
        mapping = []
        for i, name in enumerate(src.variables):
            mapping.append((src.shifts[i], self.shifts[self.index[name]] if name in self.index else None, name))
        m = src.field_mask
        out = {}
        for k, c in p._d.items():
            nk = 0
            for s_src, s_dst, name in mapping:
                e = (k >> s_src) & m
                if e:
                    if s_dst is None:
                        raise RingMismatch(f"variable {name} not in target ring {self!r}")
                    nk |= e << s_dst
            out[nk] = c
        return Polynomial(self, out)

    # -- S3 column action -----------------------------------------------
    def column_map(self, perm):
        """Variable index map induced by a column permutation."""
        cached = self._column_perm_cache.get(perm.images)
        if cached is not None:
            return cached
        img = list(range(self.nvars))
        for i, name in enumerate(self.variables):
            m = _COLUMN_VAR.match(name)
            if m:
                target = f"{m.group(1)}{perm(int(m.group(2)))}"
                if target not in self.index:
                    raise RingMismatch(f"{self!r} lacks column variable {target}")
                img[i] = self.index[target]
        img = tuple(img)
        self._column_perm_cache[perm.images] = img
        return img


class Polynomial:
    """Immutable sparse polynomial; terms are kept in a ``{key: coeff}`` dict."""

    __slots__ = ("ring", "_d", "_sorted", "_hash")

    def __init__(self, ring, d):
        self.ring = ring
        self._d = d
        self._sorted = None
        self._hash = None

    # -- structure --------------------------------------------------------
    def keys_desc(self):
        if self._sorted is None:
            self._sorted = sorted(self._d, reverse=True)
        return self._sorted

    @property
    def terms(self):
        """``[(coeff, exponents), ...]`` sorted strictly descending."""
        d, unpack = self._d, self.ring.unpack
        return [(d[k], unpack(k)) for k in self.keys_desc()]

    def items(self):
        return self._d.items()

    def coeff(self, exps):
        return self._d.get(self.ring.pack(exps), mpq(0))

    def __len__(self):
        return len(self._d)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self):
        return not self._d

    def is_constant(self):
        return not self._d or (len(self._d) == 1 and 0 in self._d)

    def leading_key(self):
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        return self.keys_desc()[0]

    def leading_term(self):
        k = self.leading_key()
        return self._d[k], self.ring.unpack(k)

    def degree(self, var=None):
        if not self._d:
            return -1
        r = self.ring
        if var is None:
            return max(r.degree_of_key(k) for k in self._d)
        s = r.shifts[r.index[var]]
        return max((k >> s) & r.field_mask for k in self._d)

    def variables_used(self):
        r = self.ring
        acc = 0
        for k in self._d:
            acc |= k
        return [v for v, s in zip(r.variables, r.shifts) if (acc >> s) & r.field_mask]

    def monic(self):
        if not self._d:
            return self
        lc = self._d[self.leading_key()]
        if lc == 1:
            return self
        inv = 1 / lc
        return Polynomial(self.ring, {k: c * inv for k, c in self._d.items()})

    def check_normalized(self):
        """Assert the representation invariants; used by the test-suite."""
        for k, c in self._d.items():
            assert isinstance(c, Rational), c
            assert c != 0
            assert c.denominator > 0 and gmpy2.gcd(c.numerator, c.denominator) == 1
            assert k & self.ring.guard == 0
        ks = self.keys_desc()
        assert all(a > b for a, b in zip(ks, ks[1:]))
        return True

    # -- arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        if len(other._d) > len(self._d):
            a, b = other._d, self._d
        else:
            a, b = self._d, other._d
        d = dict(a)
        for k, c in b.items():
            v = d.get(k)
            if v is None:
                d[k] = c
            else:
                v = v + c
                if v:
                    d[k] = v
                else:
                    del d[k]
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {k: -c for k, c in self._d.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c):
        c = to_rational(c)
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {k: v * c for k, v in self._d.items()})

    def mul_term(self, c, key):
        c = to_rational(c)
        if not c:
            return self.ring.zero()
        d = {k + key: v * c for k, v in self._d.items()}
        self.ring.check_keys(d)
        return Polynomial(self.ring, d)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        a, b = self._d, other._d
        if len(a) < len(b):
            a, b = b, a
        d = {}
        get = d.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                d[k] = get(k, 0) + ca * cb
        self.ring.check_keys(d)
        return Polynomial(self.ring, {k: c for k, c in d.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            raise TypeError("polynomial division: use groebner.reduce")
        return self.scale(1 / to_rational(other))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self._d == other._d
        if isinstance(other, (int, Fraction, Rational)):
            return self._d == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._d.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r})"

    # -- convenience wrappers -------------------------------------------
    def subs(self, assignment, target=None):
        return substitute(self, assignment, target)

    def permute(self, perm):
        return apply_permutation(self, perm)


def _same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")


def add(a, b):
    _same_ring(a, b)
    return a + b


def mul(a, b):
    _same_ring(a, b)
    return a * b


def substitute(p, assignment, target=None):
    """Ring homomorphism sending each variable of ``p`` to ``assignment[name]``.

    Variables of ``p`` not in ``assignment`` raise ``KeyError``.  All images
    must live in one ring; ``target`` is required only when there are none.
    """
    rings = {img.ring for img in assignment.values()}
    if target is not None:
        rings.add(target)
    if len(rings) > 1:
        raise RingMismatch("substitution images live in different rings")
    if not rings:
        raise ValueError("empty substitution needs an explicit target ring")
    (tring,) = rings
    src = p.ring
    m = src.field_mask
    used = [(i, src.shifts[i]) for i, name in enumerate(src.variables)]
    powers = {}

    def power(i, e):
        key = (i, e)
        got = powers.get(key)
        if got is None:
            name = src.variables[i]
            if name not in assignment:
                raise KeyError(f"no image for variable {name}")
            got = assignment[name] ** e
            powers[key] = got
        return got

    acc = {}
    for k, c in p._d.items():
        term = {0: c}
        for i, s in used:
            e = (k >> s) & m
            if e:
                img = power(i, e)._d
                nt = {}
                for ka, ca in term.items():
                    for kb, cb in img.items():
                        kk = ka + kb
                        nt[kk] = nt.get(kk, 0) + ca * cb
                term = nt
        for kk, cc in term.items():
            acc[kk] = acc.get(kk, 0) + cc
    tring.check_keys(acc)
    return Polynomial(tring, {k: c for k, c in acc.items() if c})


class Permutation:
    """Element of S3 acting on column indices ``{1, 2, 3}``.

    ``Permutation((2, 1, 3))`` is the transposition (1 2): ``images[i-1]``
    is the image of ``i``.
    """

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != [1, 2, 3]:
            raise ValueError(f"{images} is not a permutation of (1, 2, 3)")
        self.images = images

    @classmethod
    def identity(cls):
        return cls((1, 2, 3))

    @classmethod
    def cycle(cls, *cyc):
        img = [1, 2, 3]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a - 1] = b
        return cls(img)

    def __call__(self, i):
        return self.images[i - 1]

    def compose(self, other):
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(self(other(i)) for i in (1, 2, 3))

    __matmul__ = compose

    def inverse(self):
        inv = [0, 0, 0]
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(inv)

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({self.images})"


S3 = tuple(Permutation(p) for p in _iter_perms((1, 2, 3)))
_TRANSPOSITION = Permutation((2, 1, 3))
_THREE_CYCLE = Permutation((2, 3, 1))


def apply_permutation(p, perm):
    """Rename ``x_i -> x_{perm(i)}`` and ``d_i -> d_{perm(i)}``; others are fixed."""
    r = p.ring
    img = r.column_map(perm)
    if img == tuple(range(r.nvars)):
        return p
    m = r.field_mask
    moves = [(r.shifts[i], r.shifts[j]) for i, j in enumerate(img)]
    out = {}
    for k, c in p._d.items():
        nk = 0
        for s_src, s_dst in moves:
            e = (k >> s_src) & m
            if e:
                nk |= e << s_dst
        out[nk] = c
    return Polynomial(r, out)


def symmetrize(p):
    """Average of ``p`` over the S3 column action."""
    acc = p.ring.zero()
    for perm in S3:
        acc = acc + apply_permutation(p, perm.inverse())
    return acc.scale(mpq(1, 6))


def is_invariant(p):
    return apply_permutation(p, _TRANSPOSITION) == p and apply_permutation(p, _THREE_CYCLE) == p


# -- text I/O -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("var", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^":
                raise ParseError(f"unexpected character {ch!r}", text, start)
            out.append((ch, ch, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse(text, ring):
    """Parse canonical polynomial text; see :func:`format_poly`."""
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def expect(kind):
        nonlocal i
        t = toks[i]
        if t[0] != kind:
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected {kind}, got {what}", text, t[2])
        i += 1
        return t

    def factor():
        t = expect("var")
        name = t[1]
        if name not in ring.index:
            raise ParseError(f"unknown variable {name!r}", text, t[2])
        e = 1
        if peek()[0] == "^":
            expect("^")
            e = expect("int")[1]
            if e > MAX_EXPONENT:
                raise ParseError("exponent too large", text, toks[i - 1][2])
        return ring.var_key(name, e)

    def term():
        nonlocal i
        coeff = mpq(1)
        key = 0
        t = peek()
        if t[0] == "int":
            i += 1
            num = t[1]
            den = 1
            if peek()[0] == "/":
                i += 1
                dt = expect("int")
                den = dt[1]
                if den == 0:
                    raise ParseError("zero denominator", text, dt[2])
            coeff = mpq(num, den)
            while peek()[0] in ("*", "var"):
                if peek()[0] == "*":
                    i += 1
                key += factor()
        elif t[0] == "var":
            key += factor()
            while peek()[0] == "*":
                i += 1
                key += factor()
        else:
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise ParseError(f"expected term, got {what}", text, t[2])
        return coeff, key

    d = {}
    sign = 1
    if peek()[0] in "+-":
        sign = -1 if peek()[0] == "-" else 1
        i += 1
    while True:
        c, k = term()
        d[k] = d.get(k, 0) + sign * c
        t = peek()
        if t[0] == "end":
            break
        if t[0] not in "+-":
            raise ParseError(f"unexpected {t[1]!r}", text, t[2])
        sign = -1 if t[0] == "-" else 1
        i += 1
    for k, v in d.items():
        if any(((k >> s) & ring.field_mask) > MAX_EXPONENT for s in ring.shifts):
            raise ParseError("exponent overflow", text, 0)
    return Polynomial(ring, {k: v for k, v in d.items() if v})


def _format_monomial(ring, key):
    parts = []
    m = ring.field_mask
    for v in ring.priority:
        e = (key >> ring.shifts[v]) & m
        if e == 1:
            parts.append(ring.variables[v])
        elif e:
            parts.append(f"{ring.variables[v]}^{e}")
    return "*".join(parts)


def format_poly(p):
    """Canonical text: descending terms, reduced coefficients, ``^`` powers, no spaces."""
    if not p._d:
        return "0"
    out = []
    for idx, k in enumerate(p.keys_desc()):
        c = p._d[k]
        neg = c < 0
        a = -c if neg else c
        mono = _format_monomial(p.ring, k)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if idx == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("-" if neg else "+") + body)
    return "".join(out)


def read_poly_file(path, ring):
    """One polynomial per line; blank lines and ``#`` comment lines are skipped."""
    polys = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            polys.append(parse(s, ring))
    return polys
