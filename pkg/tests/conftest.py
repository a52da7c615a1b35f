import re

import pytest
import sympy

from symideal import cuboid
from symideal.ring import format_poly


def to_sympy(p):
    """Independent re-reading of canonical text through sympy."""
    names = p.ring.variables
    syms = sympy.symbols(names)
    text = format_poly(p).replace("^", "**")
    return sympy.sympify(text, locals=dict(zip(names, syms))) if text != "0" else sympy.Integer(0)


@pytest.fixture(scope="session", autouse=True)
def _memory_only_cache():
    cuboid.set_cache_dir(None)


@pytest.fixture(scope="session")
def kernel_report():
    return cuboid.verify_kernel_basis()


@pytest.fixture(scope="session")
def sym_report():
    return cuboid.verify_sym_basis(probe_draws=100, seed=0)


@pytest.fixture(scope="session")
def conversions_report():
    return cuboid.verify_factor_conversions()
