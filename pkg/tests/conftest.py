import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

from garside_homology import (
    artin_named,
    circulating_structure,
    dual_typeA_structure,
)

RANK2_FAMILIES = ["G7", "G12", "G13", "G15", "G22"]
ARTIN_NAMES = ["A2", "A3", "B3", "H3", "F4"]


def all_builtins():
    pairs = [(name, artin_named(name)) for name in ARTIN_NAMES]
    pairs += [(name, circulating_structure(name)) for name in RANK2_FAMILIES]
    pairs += [("dualA2", dual_typeA_structure(2)), ("dualA3", dual_typeA_structure(3))]
    return pairs


@pytest.fixture(scope="session")
def builtins():
    return dict(all_builtins())


FREE_CATEGORY_TWO_CYCLE = """\
GAUSSIAN-STRUCTURE v1
# free category on a two-cycle graph: one loop u v through two objects
OBJECT x
OBJECT y
ATOM u x y 2
ATOM v y x 1
BASEOBJECT x
PATHLEN x 0
PATHLEN y 3
"""

FREE_CATEGORY_COSPAN = """\
GAUSSIAN-STRUCTURE v1
# two atoms with a common target and no common left-multiple
OBJECT x
OBJECT y
OBJECT z
ATOM p x z 1
ATOM q y z 2
NOLCM p q
"""

FREE_MONOID_RANK2 = """\
GAUSSIAN-STRUCTURE v1
# free monoid on two generators; its group of fractions is free of rank 2
OBJECT *
ATOM x * * 1
ATOM y * * 1
NOLCM x y
"""


@pytest.fixture()
def free_monoid_rank2():
    from garside_homology import parse_structure

    return parse_structure(FREE_MONOID_RANK2)


@pytest.fixture()
def two_cycle_category():
    from garside_homology import parse_structure

    return parse_structure(FREE_CATEGORY_TWO_CYCLE)


@pytest.fixture()
def cospan_category():
    from garside_homology import parse_structure

    return parse_structure(FREE_CATEGORY_COSPAN)
