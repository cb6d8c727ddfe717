import os
import sys
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from g2trac.qm_family import FamilyParams, build_qm  # noqa: E402


_PKG_CACHE = {}


@pytest.fixture(scope="session")
def family_package():
    """Shared builder with caching; packages are immutable."""

    def build(m):
        m = Fraction(m)
        if m not in _PKG_CACHE:
            _PKG_CACHE[m] = build_qm(FamilyParams(m))
        return _PKG_CACHE[m]

    return build


@pytest.fixture(scope="session")
def pkg_half(family_package):
    return family_package(Fraction(1, 2))
