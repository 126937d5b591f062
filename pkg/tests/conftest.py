import random
from fractions import Fraction as F

import pytest

from cuspidal.germs import FrontalNormalForm, builtin
from cuspidal.jets import Jet


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def fs_plus():
    return FrontalNormalForm.from_normal_form(builtin("fs_plus"))


@pytest.fixture
def fs_minus():
    return FrontalNormalForm.from_normal_form(builtin("fs_minus"))


@pytest.fixture
def rich_germ():
    """Frontal normal form with every coefficient function switched on."""
    u, _, s = Jet.variables(8)
    return FrontalNormalForm.build(
        8, f21=1 + 2 * u, f31=F(1, 2) - u, f24=F(1, 3) + u, f34=2 - s, c0=u * s + u ** 2,
        c1=s + u * s + 4 * u ** 2 + u ** 3, c2=1 + u, c3=F(-1, 3))
