"""Jet-exact normal forms and invariants of deformations of cuspidal S_1 singularities.

Subpackages and modules:

* :mod:`cuspidal.jets`: truncated multivariate power series with exact rationals.
* :mod:`cuspidal.germs`: map-germs, normal forms, the normalizer and germ-spec files.
* :mod:`cuspidal.frontal`: unit normals, the identifier of singularities, frontalization.
* :mod:`cuspidal.classify`: 2-jet classes and S_k labels.
* :mod:`cuspidal.geometry`: trajectories, curvatures, bias and secondary cuspidal curvature.
* :mod:`cuspidal.verify` and :mod:`cuspidal.cli`: self-checks and the command line.
"""

from .classify import SingularityLabel, classify_origin, label_point, two_jet_class
from .errors import CuspidalError
from .frontal import identifier_lambda, is_frontal, minimal_frontalization, singular_sets, unit_normal
from .germs import (
    FrontalNormalForm,
    MapGerm,
    NormalFormS1,
    assemble,
    builtin,
    builtin_names,
    decompose_f32,
    expand_c1,
    load_germ_spec,
    normalize,
    parse_germ_spec,
    reassemble_f32,
    reduce_parameter,
)
from .jets import Jet, invert_unit, sqrt_unit

__version__ = "0.1.0"

__all__ = [
    "CuspidalError",
    "FrontalNormalForm",
    "Jet",
    "MapGerm",
    "NormalFormS1",
    "SingularityLabel",
    "assemble",
    "builtin",
    "builtin_names",
    "classify_origin",
    "decompose_f32",
    "expand_c1",
    "identifier_lambda",
    "invert_unit",
    "is_frontal",
    "label_point",
    "load_germ_spec",
    "minimal_frontalization",
    "normalize",
    "parse_germ_spec",
    "reassemble_f32",
    "reduce_parameter",
    "singular_sets",
    "sqrt_unit",
    "two_jet_class",
    "unit_normal",
]
