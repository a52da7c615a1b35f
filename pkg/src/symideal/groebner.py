"""Division with cofactors, Buchberger completion and elimination ideals.

Internally every polynomial is a ``{packed_monomial: mpq}`` dict (see
:mod:`symideal.ring`).  Basis elements are kept monic.  Each element added
during completion records how it was derived from earlier elements, as a list
of ``(coeff, monomial shift, element id)`` triples; the representation over the
original generators is expanded from these records only when requested.
"""

from __future__ import annotations

import hashlib
import heapq
import logging
import os
import random
from dataclasses import dataclass, field

from gmpy2 import mpq

from .ring import Polynomial, RingMismatch, format_poly, parse

__all__ = [
    "GroebnerBasis",
    "leading_term",
    "reduce",
    "spoly",
    "buchberger",
    "is_groebner",
    "elimination_ideal",
    "ideal_membership",
    "ideal_equal",
    "cache_key",
    "save_cache",
    "load_cache",
    "cached_buchberger",
]

log = logging.getLogger(__name__)


def leading_term(p):
    """``(coeff, exponents)`` of the lex-greatest term; ``ValueError`` on zero."""
    return p.leading_term()


# -- internal dict-level kernels ----------------------------------------------


def _lead(d):
    k = max(d)
    return k, d[k]


def _nf(d, reducers, ring, quot=None, full=True):
    """Normal form of ``d`` modulo monic ``reducers`` = ``[(lm, poly_dict), ...]``.

    The first reducer (by list position) whose leading monomial divides the
    current monomial is used.  ``quot`` collects ``(coeff, shift, position)``.
    With ``full=False`` only the leading term is reduced (top reduction).
    """
    if not d:
        return {}
    guard = ring.guard
    lms = [lm for lm, _ in reducers]
    p = dict(d)
    heap = [-k for k in p]
    heapq.heapify(heap)
    inheap = set(p)
    rem = {}
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        k = -pop(heap)
        inheap.discard(k)
        c = p.pop(k, None)
        if c is None:
            continue
        kg = k | guard
        j = 0
        for lm in lms:
            if (kg - lm) & guard == guard:
                break
            j += 1
        else:
            rem[k] = c
            if not full:
                rem.update(p)
                return rem
            continue
        lm, g = reducers[j]
        shift = k - lm
        if quot is not None:
            quot.append((c, shift, j))
        for kk, cg in g.items():
            if kk == lm:
                continue
            kk += shift
            v = p.get(kk)
            if v is None:
                p[kk] = -c * cg
                if kk not in inheap:
                    inheap.add(kk)
                    push(heap, -kk)
            else:
                v = v - c * cg
                if v:
                    p[kk] = v
                else:
                    del p[kk]
    return rem


def _monic(d):
    lm, lc = _lead(d)
    if lc == 1:
        return lm, d, lc
    inv = 1 / lc
    return lm, {k: c * inv for k, c in d.items()}, lc


def _spoly_dict(ring, f, lmf, g, lmg):
    """S-polynomial of two monic dicts plus the two monomial shifts used."""
    lcm = ring.lcm(lmf, lmg)
    sf, sg = lcm - lmf, lcm - lmg
    d = {k + sf: c for k, c in f.items() if k != lmf}
    for k, c in g.items():
        if k == lmg:
            continue
        k += sg
        v = d.get(k)
        if v is None:
            d[k] = -c
        else:
            v = v - c
            if v:
                d[k] = v
            else:
                del d[k]
    return d, sf, sg


# -- public division ----------------------------------------------------------


@dataclass
class Cofactors:
    coefficients: list

    def __iter__(self):
        return iter(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)

    def combine(self, generators):
        total = generators[0].ring.zero() if generators else None
        for a, g in zip(self.coefficients, generators):
            total = total + a * g
        return total


def _check_ring(ring, polys):
    for q in polys:
        if q.ring != ring:
            raise RingMismatch(f"{q.ring!r} vs {ring!r}")


def reduce(p, basis):
    """Full division of ``p`` by ``basis``.

    Returns ``(remainder, Cofactors)`` with ``p == sum(c*b) + remainder``.
    Ties among divisors go to the smallest basis index.
    """
    ring = p.ring
    _check_ring(ring, basis)
    reducers = []
    lcs = []
    for b in basis:
        if b.is_zero():
            raise ValueError("basis elements must be nonzero")
        lm, g, lc = _monic(b._d)
        reducers.append((lm, g))
        lcs.append(lc)
    quot = []
    rem = _nf(p._d, reducers, ring, quot)
    acc = [dict() for _ in basis]
    for c, shift, j in quot:
        q = acc[j]
        v = q.get(shift, 0) + c / lcs[j]
        if v:
            q[shift] = v
        else:
            q.pop(shift, None)
    cof = Cofactors([Polynomial(ring, q) for q in acc])
    return Polynomial(ring, rem), cof


def spoly(f, g):
    if f.is_zero() or g.is_zero():
        raise ValueError("S-polynomial of a zero polynomial")
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring!r} vs {g.ring!r}")
    ring = f.ring
    (cf, _), (cg, _) = f.leading_term(), g.leading_term()
    lf, lg = f.leading_key(), g.leading_key()
    lcm = ring.lcm(lf, lg)
    return f.mul_term(1 / cf, lcm - lf) - g.mul_term(1 / cg, lcm - lg)


# -- Buchberger ------------------------------------------------------------------


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis with (lazily expanded) cofactors over ``generators``."""

    ring: object
    elements: list
    generators: list
    reduced: bool = True
    _engine: object = field(default=None, repr=False)
    _ids: list = field(default=None, repr=False)
    _transform: list = field(default=None, repr=False)
    stats: dict = field(default_factory=dict)

    @property
    def has_transform(self):
        return self._engine is not None or self._transform is not None

    @property
    def transform(self):
        """One :class:`Cofactors` row per element, over the original generators."""
        if self._transform is None:
            if self._engine is None:
                raise ValueError("this basis carries no cofactor records")
            self._transform = [self._engine.cofactors(i) for i in self._ids]
        return self._transform

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def leading_monomials(self):
        return [g.leading_term()[1] for g in self.elements]


class _Engine:
    """Completion state.  ``polys[i]`` is monic; ``recs[i]`` its derivation."""

    def __init__(self, ring, generators, track=True):
        self.ring = ring
        self.generators = list(generators)
        self.track = track
        self.polys = []
        self.lms = []
        self.recs = []
        self.sugar = []
        self._cof_cache = {}

    def add(self, d, rec, sugar):
        lm, g, _ = _monic(d)
        self.polys.append(g)
        self.lms.append(lm)
        self.recs.append(rec if self.track else None)
        self.sugar.append(sugar)
        return len(self.polys) - 1

    def reduce_into(self, d, reducer_ids, full=True):
        reducers = [(self.lms[i], self.polys[i]) for i in reducer_ids]
        quot = [] if self.track else None
        rem = _nf(d, reducers, self.ring, quot, full=full)
        steps = None
        if quot is not None:
            steps = [(c, shift, reducer_ids[j]) for c, shift, j in quot]
        return rem, steps

    def cofactors(self, i):
        """Expand element ``i`` over the original generators (memoized)."""
        got = self._cof_cache.get(i)
        if got is not None:
            return got
        ring = self.ring
        ngen = len(self.generators)
        # iterative post-order to avoid deep recursion on long derivation chains
        stack = [i]
        while stack:
            top = stack[-1]
            if top in self._cof_cache:
                stack.pop()
                continue
            rec = self.recs[top]
            if rec is None:
                raise ValueError("cofactor tracking was disabled")
            if rec[0] == "gen":
                _, gi, scale = rec
                row = [ring.zero()] * ngen
                row[gi] = ring.const(scale)
                self._cof_cache[top] = Cofactors(row)
                stack.pop()
                continue
            missing = [e for _, _, e in rec[1] if e not in self._cof_cache]
            if missing:
                stack.extend(dict.fromkeys(missing))
                continue
            acc = [dict() for _ in range(ngen)]
            for c, shift, e in rec[1]:
                for gi, q in enumerate(self._cof_cache[e].coefficients):
                    a = acc[gi]
                    for k, v in q._d.items():
                        k += shift
                        w = a.get(k, 0) + c * v
                        if w:
                            a[k] = w
                        else:
                            a.pop(k, None)
            self._cof_cache[top] = Cofactors([Polynomial(ring, a) for a in acc])
            stack.pop()
        return self._cof_cache[i]


def _gm_update(ring, E, G, B, h):
    """Gebauer–Möller installation of element ``h``.

    ``G`` is the list of current reducer ids, ``B`` a dict of live pairs
    ``(i, j) -> lcm``.  Applies the product (coprime) and chain criteria.
    Returns the new reducer list and the pairs to add.
    """
    lms = E.lms
    lh = lms[h]
    lcm, divides, coprime = ring.lcm, ring.divides, ring.coprime
    C = [(g, lcm(lh, lms[g])) for g in G]
    D = []
    for idx, (g1, l1) in enumerate(C):
        if not coprime(lh, lms[g1]):
            if any(divides(l2, l1) for _, l2 in C[idx + 1:]):
                continue
            if any(divides(l2, l1) for _, l2 in D):
                continue
        D.append((g1, l1))
    newpairs = [(g, l) for g, l in D if not coprime(lh, lms[g])]
    drop = [
        (i, j)
        for (i, j), l in B.items()
        if divides(lh, l) and lcm(lms[i], lh) != l and lcm(lms[j], lh) != l
    ]
    for key in drop:
        del B[key]
    G2 = [g for g in G if not divides(lh, lms[g])]
    G2.append(h)
    return G2, newpairs


def buchberger(generators, *, track=True, selection="normal", seed=None, criteria=True):
    """Reduced Gröbner basis of the ideal spanned by ``generators``.

    ``selection`` is ``"normal"`` (smallest lcm first, ties by sugar degree)
    or ``"random"`` (generators taken in shuffled order, pairs with equal
    lcm popped in random order); the reduced output does not depend on it.
    ``criteria=False`` disables the product and chain criteria.
    ``track=False`` skips the derivation records, so the result has no
    ``transform``.
    """
    generators = list(generators)
    if not generators:
        raise ValueError("need at least one generator")
    ring = generators[0].ring
    _check_ring(ring, generators)
    if selection not in ("normal", "random"):
        raise ValueError(f"unknown selection strategy {selection!r}")
    E = _Engine(ring, generators, track)
    rng = random.Random(seed)
    stats = {"pairs": 0, "zero_reductions": 0}
    deg = ring.degree_of_key

    G = []
    B = {}
    heap = []
    counter = 0

    def install(h):
        nonlocal G, counter
        if criteria:
            G, newpairs = _gm_update(ring, E, G, B, h)
        else:
            newpairs = [(g, ring.lcm(E.lms[g], E.lms[h])) for g in G]
            G = G + [h]
        for g, l in newpairs:
            i, j = min(g, h), max(g, h)
            B[(i, j)] = l
            sugar = max(E.sugar[i] + deg(l - E.lms[i]), E.sugar[j] + deg(l - E.lms[j]))
            key = (l, sugar, rng.random()) if selection == "random" else (l, sugar)
            counter += 1
            heapq.heappush(heap, (key, counter, i, j))

    intake = list(enumerate(generators))
    if selection == "random":
        rng.shuffle(intake)
    for gi, f in intake:
        if f.is_zero():
            continue
        lc = f._d[f.leading_key()]
        install(E.add(dict(f._d), ("gen", gi, 1 / lc), f.degree()))

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if B.pop((i, j), None) is None:
            continue
        stats["pairs"] += 1
        s, si, sj = _spoly_dict(ring, E.polys[i], E.lms[i], E.polys[j], E.lms[j])
        sugar = max(E.sugar[i] + deg(si), E.sugar[j] + deg(sj))
        rem, steps = E.reduce_into(s, G)
        if not rem:
            stats["zero_reductions"] += 1
            continue
        rec = None
        if track:
            inv = 1 / _lead(rem)[1]
            rec = ("lin", [(inv, si, i), (-inv, sj, j)] + [(-c * inv, shift, e) for c, shift, e in steps])
        h = E.add(rem, rec, sugar)
        if E.lms[h] == 0:
            # a constant: the ideal is the whole ring
            G, B = [h], {}
            break
        install(h)
        if stats["pairs"] % 500 == 0:
            log.debug("pairs=%d reducers=%d queue=%d", stats["pairs"], len(G), len(B))

    return _finalize(E, G, stats)


def _finalize(E, G, stats):
    ring = E.ring
    # minimal basis: drop elements whose leading monomial is divisible by another
    G = sorted(set(G), key=lambda i: E.lms[i])
    minimal = []
    for i in G:
        if not any(ring.divides(E.lms[j], E.lms[i]) for j in minimal):
            minimal.append(i)
    minimal = [i for i in minimal if not any(j != i and ring.divides(E.lms[j], E.lms[i]) for j in minimal)]
    # tail-reduce each element by the others
    minimal.sort(key=lambda i: E.lms[i], reverse=True)
    final = []
    for i in minimal:
        others = [j for j in minimal if j != i]
        d = E.polys[i]
        lm = E.lms[i]
        tail = {k: c for k, c in d.items() if k != lm}
        rem, steps = E.reduce_into(tail, others)
        if steps:
            rem[lm] = mpq(1)
            rec = None
            if E.track:
                rec = ("lin", [(mpq(1), 0, i)] + [(-c, shift, e) for c, shift, e in steps])
            i = E.add(rem, rec, E.sugar[i])
        final.append(i)
    elements = [Polynomial(ring, E.polys[i]) for i in final]
    stats["size"] = len(elements)
    return GroebnerBasis(
        ring=ring,
        elements=elements,
        generators=E.generators,
        reduced=True,
        _engine=E if E.track else None,
        _ids=final,
        stats=stats,
    )


def is_groebner(polys):
    """Every S-polynomial reduces to zero (no criteria applied)."""
    polys = [p for p in polys if not p.is_zero()]
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            r, _ = reduce(spoly(polys[a], polys[b]), polys)
            if not r.is_zero():
                return False
    return True


def elimination_ideal(generators, k, gb=None, **kw):
    """Basis elements free of the ``k`` greatest variables of the lex order."""
    generators = list(generators)
    ring = generators[0].ring
    if not 0 <= k <= ring.nvars:
        raise ValueError(f"elimination index {k} outside 0..{ring.nvars}")
    if gb is None:
        gb = buchberger(generators, **kw)
    bound = 1 << ((ring.nvars - k) * 16)
    return [g for g in gb.elements if g.leading_key() < bound]


def ideal_membership(p, gb):
    """``(member, cofactors)``; cofactors are over ``gb.generators`` or ``None``."""
    if p.ring != gb.ring:
        raise RingMismatch(f"{p.ring!r} vs {gb.ring!r}")
    rem, cof = reduce(p, gb.elements)
    if not rem.is_zero():
        return False, None
    if not gb.has_transform:
        return True, None
    ngen = len(gb.generators)
    ring = p.ring
    acc = [ring.zero() for _ in range(ngen)]
    for q, row in zip(cof.coefficients, gb.transform):
        if q.is_zero():
            continue
        for gi in range(ngen):
            if not row[gi].is_zero():
                acc[gi] = acc[gi] + q * row[gi]
    return True, Cofactors(acc)


def ideal_equal(A, B, gb_a=None, gb_b=None):
    """Mutual containment of the ideals generated by ``A`` and ``B``."""
    A = [a for a in A if not a.is_zero()]
    B = [b for b in B if not b.is_zero()]
    if not A or not B:
        return not A and not B
    if gb_a is None:
        gb_a = buchberger(A, track=False)
    if gb_b is None:
        gb_b = buchberger(B, track=False)
    return all(reduce(a, gb_b.elements)[0].is_zero() for a in A) and all(
        reduce(b, gb_a.elements)[0].is_zero() for b in B
    )


# -- on-disk cache ----------------------------------------------------------------


def cache_key(generators):
    text = "\n".join(format_poly(g) for g in generators)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _headers(ring, generators):
    return {
        "vars": ",".join(ring.variables),
        "order": "lex:" + ">".join(ring.variables[i] for i in ring.priority),
        "gens-sha256": cache_key(generators),
    }


def save_cache(path, gb):
    """Write ``gb`` with ``#vars:``/``#order:``/``#gens-sha256:`` headers."""
    h = _headers(gb.ring, gb.generators)
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        for name in ("vars", "order", "gens-sha256"):
            fh.write(f"#{name}: {h[name]}\n")
        for g in gb.elements:
            fh.write(format_poly(g) + "\n")
    os.replace(tmp, path)


def load_cache(path, ring, generators):
    """Return a transform-less :class:`GroebnerBasis` on a header match, else ``None``."""
    if not os.path.exists(path):
        return None
    want = _headers(ring, generators)
    got = {}
    elements = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("#"):
                name, _, value = line[1:].partition(":")
                got[name.strip()] = value.strip()
            elif line.strip():
                elements.append(parse(line, ring))
    if any(got.get(k) != v for k, v in want.items()):
        return None
    return GroebnerBasis(ring=ring, elements=elements, generators=list(generators), reduced=True)


def cached_buchberger(generators, cache_dir=None, **kw):
    """:func:`buchberger` backed by a cache file named after the generator hash."""
    generators = list(generators)
    if cache_dir is None:
        return buchberger(generators, **kw)
    ring = generators[0].ring
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, f"gb-{cache_key(generators)[:32]}.txt")
    gb = load_cache(path, ring, generators)
    if gb is not None:
        return gb
    gb = buchberger(generators, **kw)
    save_cache(path, gb)
    return gb
