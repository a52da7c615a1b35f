"""Named polynomials of the cuboid system.

Everything here is transcribed from displayed formulas and parsed once.
Labels:

``p[0..6]``
    cuboid polynomials as printed; ``p[1]`` is the face ``{x1, x2}`` with
    diagonal ``d3``.
``c[1..3]``
    the same three face polynomials indexed by their diagonal, so that
    ``c[i]`` contains ``d_i`` and ``sigma(c[i]) == c[sigma(i)]``.  Thus
    ``c[3] = p[1]``, ``c[1] = p[2]``, ``c[2] = p[3]``.
``e[(i, j)]``
    elementary multisymmetric polynomials in the xd-ring.
``f[((i, j), k)]``
    elementary polynomials of the 2-column matrix obtained by deleting
    column ``k``; ``(0, 2)`` entries use the corrected product labels.
``q[1..7]``, ``eform_prev``
    E-ring polynomials.
``r[1..9]``
    ``E_ij - e_[i,j]`` in the 16-variable joint ring.
``ptilde[1..8]``
    the eight multisymmetric generators, expanded from their printed
    factored forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .ring import Ring, is_invariant

XD_VARS = ("x1", "x2", "x3", "d1", "d2", "d3", "L")
E_VARS = ("E21", "E12", "E11", "E30", "E03", "E20", "E02", "E10", "E01", "L")
# variable list of the joint ring, and its lex priority (greatest first)
JOINT_VARS = ("x1", "x2", "x3", "d1", "d2", "d3",
              "E10", "E20", "E30", "E01", "E02", "E03", "E21", "E11", "E12", "L")
JOINT_PRIORITY = ("x1", "x2", "x3", "d1", "d2", "d3",
                  "E21", "E12", "E11", "E30", "E03", "E20", "E02", "E10", "E01", "L")

E_INDICES = ((1, 0), (2, 0), (3, 0), (0, 1), (0, 2), (0, 3), (2, 1), (1, 1), (1, 2))
# the order r1..r9 runs through the E variables
R_ORDER = E_INDICES


def e_name(ij):
    return f"E{ij[0]}{ij[1]}"


E_TEXT = {
    (1, 0): "x1+x2+x3",
    (2, 0): "x1*x2+x2*x3+x3*x1",
    (3, 0): "x1*x2*x3",
    (0, 1): "d1+d2+d3",
    (0, 2): "d1*d2+d2*d3+d3*d1",
    (0, 3): "d1*d2*d3",
    (2, 1): "x1*x2*d3+x2*x3*d1+x3*x1*d2",
    (1, 1): "x1*d2+d1*x2+x2*d3+d2*x3+x3*d1+d3*x1",
    (1, 2): "x1*d2*d3+x2*d3*d1+x3*d1*d2",
}

P_TEXT = {
    0: "x1^2+x2^2+x3^2-L^2",
    1: "x1^2+x2^2-d3^2",
    2: "x2^2+x3^2-d1^2",
    3: "x3^2+x1^2-d2^2",
    4: "d3^2+x3^2-L^2",
    5: "d1^2+x1^2-L^2",
    6: "d2^2+x2^2-L^2",
}

# (i, j) -> {k: text}; the product rows are printed under the label [0,1]
F_TEXT = {
    (1, 0): {1: "x2+x3", 2: "x3+x1", 3: "x1+x2"},
    (2, 0): {1: "x2*x3", 2: "x3*x1", 3: "x1*x2"},
    (0, 1): {1: "d2+d3", 2: "d3+d1", 3: "d1+d2"},
    (0, 2): {1: "d2*d3", 2: "d3*d1", 3: "d1*d2"},
    (1, 1): {1: "x2*d3+x3*d2", 2: "x3*d1+x1*d3", 3: "x1*d2+x2*d1"},
}

Q_TEXT = {
    1: "4*E01*E02*E20-E02*E10^2*E01-E01^3*E20+E10*E11*E01^2-E11^2*E01-2*E10*E01*E12"
       "+3*E03*E10^2-9*E03*E20-3*E21*E02+E21*E01^2+3*E11*E12",
    2: "4*E10*E20*E02-E20*E01^2*E10-E10^3*E02+E01*E11*E10^2-E11^2*E10-2*E01*E10*E21"
       "+3*E30*E01^2-9*E30*E02-3*E12*E20+E12*E10^2+3*E11*E21",
    3: "9*E21*E12-E01^2*E10*E21-6*E10*E11*E12-6*E01*E12*E20"
       "+5*E01*E10^2*E12-3*E11^3+7*E10*E11^2*E01+12*E11*E20*E02"
       "-3*E01^2*E11*E20-3*E02*E10^2*E11-4*E01^2*E10^2*E11-81*E03*E30"
       "+18*E01*E02*E30-3*E01^3*E30+36*E20*E10*E03-9*E03*E10^3"
       "-16*E01*E02*E20*E10+4*E01^3*E10*E20+4*E01*E10^3*E02",
    4: "3*E01*E21^2-2*E01^2*E21*E20-9*E01*E12*E30"
       "+E10*E12*E01*E20-E11^2*E20*E01+3*E01^2*E30*E11+E11*E20*E01^2*E10"
       "-3*E01*E30*E02*E10+4*E01*E20^2*E02-E01^3*E20^2-E01*E20*E10^2*E02",
    5: "-27*E10*E21*E03+E10*E01^3*E21+9*E10*E12^2-E11^2*E10*E01^2"
       "-6*E02*E12*E10^2-2*E01^2*E12*E10^2-3*E02*E11^2*E10-E01^2*E10^3*E02"
       "+9*E11*E03*E10^2+3*E01*E02*E10^2*E11+E01^3*E11*E10^2-3*E10^3*E02^2"
       "+3*E10^3*E01*E03+12*E10*E20*E02^2+E02*E20*E01^2*E10"
       "-E01^4*E20*E10-18*E10*E01*E03*E20+3*E11*E01*E10*E12",
    6: "-27*E03*E21+E21*E01^3+9*E12^2+3*E12*E01*E11"
       "-2*E01^2*E10*E12-3*E02*E11^2-E01^2*E11^2+9*E03*E11*E10"
       "-3*E10^2*E02^2+3*E01*E02*E11*E10+E01^3*E11*E10"
       "-18*E20*E01*E03+3*E03*E01*E10^2-6*E02*E10*E12"
       "-E01^4*E20+12*E02^2*E20+E01^2*E02*E20-E01^2*E10^2*E02",
    7: "3*E21^2-2*E20*E01*E21-9*E30*E12+E10*E12*E20"
       "-E20*E11^2+3*E30*E11*E01+E10*E20*E11*E01"
       "-3*E02*E10*E30+4*E20^2*E02-E01^2*E20^2-E10^2*E20*E02",
}

# Printed factored forms of the eight generators: lists of (multiplier, face)
# pairs, where each face is written out as displayed.
_FACE1 = "x2^2+x3^2-d1^2"
_FACE2 = "x3^2+x1^2-d2^2"
_FACE3 = "x1^2+x2^2-d3^2"
PTILDE_MULTIPLIER = {2: "1", 3: "d1", 4: "x1", 5: "x1*d1", 6: "x1^2", 7: "d1^2", 8: "x1^2*d1^2"}
PTILDE_PRINTED = {
    1: [("1", "x1^2+x2^2+x3^2-L^2")],
    2: [("1", _FACE1), ("1", _FACE2), ("1", _FACE3)],
    3: [("d1", _FACE1), ("d2", _FACE2), ("d3", _FACE3)],
    4: [("x1", _FACE1), ("x2", _FACE2), ("x3", _FACE3)],
    5: [("x1*d1", _FACE1), ("x2*d2", _FACE2), ("x3*d3", _FACE3)],
    6: [("x1^2", _FACE1), ("x2^2", _FACE2), ("x3^2", _FACE3)],
    7: [("d1^2", _FACE1), ("d2^2", _FACE2), ("d3^2", _FACE3)],
    8: [("x1^2*d1^2", _FACE1), ("x2^2*d2^2", _FACE2), ("x3^2*d3^2", _FACE3)],
}

# The complete list of factor equations, as multipliers of p1, p2, p3 under
# the diagonal labeling.  The last one is printed with x3^3; ``None`` marks
# entries printed as p0 alone.
FACTOR_EQUATIONS = {
    1: None,
    2: ("1", "1", "1"),
    3: ("d1", "d2", "d3"),
    4: ("x1", "x2", "x3"),
    5: ("d1^2", "d2^2", "d3^2"),
    6: ("x1^2", "x2^2", "x3^2"),
    7: ("x1*d1", "x2*d2", "x3*d3"),
    8: ("x1^2*d1^2", "x2^2*d2^2", "x3^2*d3^2"),
}
FACTOR_EQUATION_TO_PTILDE = {1: 1, 2: 2, 3: 3, 4: 4, 5: 7, 6: 6, 7: 5, 8: 8}
FACTOR_EQUATION_PRINTED_8 = ("x1^2*d1^2", "x2^2*d2^2", "x3^3*d3^2")

EFORM_PREV = {
    "7.1": "E10^2-2*E20-L^2",
    "7.2": "E01^2-2*E02-2*L^2",
    "7.4": "2*E12+6*E30-2*E01*E11+E10*E01^2+3*E10*L^2-E10^3",
    "7.6": "2*E21+6*E03-2*E10*E11+E01*E10^2+5*E01*L^2-E01^3",
    "7.8": "8*E10*E12-8*E01*E21-8*E11^2+4*E01^2*E10^2-E01^4-3*E10^4"
           "+10*E10^2*L^2+4*E01^2*L^2+L^4",
    "7.10": "-8*E10*E12+8*E01*E21-8*E11^2+4*E01^2*E10^2-E10^4-3*E01^4"
            "+20*E01^2*L^2-2*E10^2*L^2-5*L^4",
    "7.12": "4*E11*E21-2*E11*E01^3+6*E12*E01^2+2*E12*E10^2-E10^3*E01^2"
            "+E10*E01^4-2*E12*L^2-E10*E01^2*L^2+2*E10^3*L^2-2*E10*L^4",
    "7.14": "4*E11*E12-2*E11*E10^3+6*E21*E10^2+2*E21*E01^2-E01^3*E10^2"
            "+E01*E10^4+2*E21*L^2-2*E11*E10*L^2+2*E01*E10^2*L^2+E01^3*L^2-3*E01*L^4",
}

# Printed xd-form combinations.  Keys of each dict index ptilde (1 = p0,
# 2 = p1+p2+p3, 3 = sum d_i p_i, 4 = sum x_i p_i, 5 = sum x_i d_i p_i,
# 6 = sum x_i^2 p_i, 7 = sum d_i^2 p_i); values are coefficients written in
# E variables standing for the e_[i,j].  ``None`` is an unreadable coefficient.
COMBINATIONS = {
    "7.2": ("7.3", {1: "2", 2: "-1"}),
    "7.4": ("7.5", {2: "E10", 1: "-3*E10", 4: "-2"}),
    "7.6": ("7.7", {2: "3*E01", 1: "-5*E01", 3: "-2"}),
    "7.8": ("7.9", {
        6: "18", 5: "6", 3: "-8*E01", 4: "-24*E10",
        2: "8*E20+3*E01^2+4*E10^2+6*E02",
        1: "2*E20-4*E01^2-11*E10^2-L^2",
    }),
    "7.10": ("7.11", {
        6: "6", 5: "18", 3: "-24*E01", 4: "-8*E10",
        2: "8*E20+9*E01^2-4*E10^2+18*E02",
        1: None,
    }),
    "7.12": ("7.13", {
        7: "-4*E10", 5: "-8*E01",
        4: "-4*E20-2*E02+2*E10^2+3*E01^2",
        3: "8*E10*E01",
        2: "3*E30-3*E11*E01+3*E20*E10-3*E02*E10-E10^3-E12+L^2*E10",
        1: "2*E12+2*E10^3-8*E20*E10+2*E02*E10+2*E10*L^2",
    }),
    "7.14": ("7.15", {
        6: "-4*E01", 5: "-8*E10", 4: "8*E10*E01",
        3: "2*E10^2+2*L^2",
        2: "-4*E11*E10-4*E20*E01+3*E01*E10^2-3*L^2*E01+2*E21",
        1: "-4*E21-6*E03+4*E20*E01+4*E11*E10+3*L^2*E01-5*E01*E10^2",
    }),
}
# the unreadable p0 coefficient of the second quartic combination, as printed
MALFORMED_7_11 = "-(10 e_[2,0] 20 e_[0,1]^2 - 7 e_[1,0]^2 - 5 L^2)"


@lru_cache(maxsize=None)
def xd_ring():
    return Ring(XD_VARS)


@lru_cache(maxsize=None)
def e_ring():
    return Ring(E_VARS)


@lru_cache(maxsize=None)
def joint_ring():
    return Ring(JOINT_VARS, priority=JOINT_PRIORITY)


@dataclass(frozen=True)
class Catalog:
    xd_ring: Ring
    e_ring: Ring
    joint_ring: Ring
    p: dict
    c: dict
    e: dict
    f: dict
    q: dict
    r: dict
    ptilde: dict
    eform_prev: dict

    def e_assignment(self):
        """``{"E10": e_[1,0], ..., "L": L}`` for the substitution homomorphism."""
        out = {e_name(ij): poly for ij, poly in self.e.items()}
        out["L"] = self.xd_ring.var("L")
        return out


def _expand_printed(R, pairs):
    total = R.zero()
    for mult, face in pairs:
        total = total + R(mult) * R(face)
    return total


def _validate(cat):
    for label, poly in _entries(cat):
        poly.check_normalized()
    for ij, poly in cat.e.items():
        if not is_invariant(poly):
            raise AssertionError(f"e{ij} is not multisymmetric")
    for i, poly in cat.ptilde.items():
        if not is_invariant(poly):
            raise AssertionError(f"ptilde{i} is not multisymmetric")


def _entries(cat):
    for name in ("p", "c", "e", "f", "q", "r", "ptilde", "eform_prev"):
        for k, v in getattr(cat, name).items():
            yield f"{name}[{k}]", v


@lru_cache(maxsize=None)
def catalog():
    """The validated catalog (built once per process)."""
    X, ER, J = xd_ring(), e_ring(), joint_ring()
    p = {i: X(t) for i, t in P_TEXT.items()}
    c = {1: p[2], 2: p[3], 3: p[1]}
    e = {ij: X(E_TEXT[ij]) for ij in E_INDICES}
    f = {(ij, k): X(t) for ij, rows in F_TEXT.items() for k, t in rows.items()}
    q = {i: ER(t) for i, t in Q_TEXT.items()}
    r = {n: J(e_name(ij)) - J(E_TEXT[ij]) for n, ij in enumerate(R_ORDER, start=1)}
    ptilde = {i: _expand_printed(X, pairs) for i, pairs in PTILDE_PRINTED.items()}
    eform_prev = {k: ER(t) for k, t in EFORM_PREV.items()}
    cat = Catalog(X, ER, J, p, c, e, f, q, r, ptilde, eform_prev)
    try:
        _validate(cat)
    except AssertionError as exc:
        raise RuntimeError(f"catalog validation failed: {exc}") from exc
    return cat
