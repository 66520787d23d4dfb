"""Exact-arithmetic engine for finite real spectral triples.

Builds concrete triples for all sixteen KO classes, forms their graded
(and, for comparison, traditional) products with exact rational-complex
operators, and verifies the product sign laws operator by operator.
"""

from .arith import CMatrix, ExactComplex, conj_entrywise, dagger, kron
from .kosigns import (
    KOClass,
    KOSigns,
    Parity,
    VariantMismatchError,
    classify,
    derive_table_mnemonic,
    flip_variant,
    predict_even_even,
    predict_even_odd,
    predict_odd_odd,
    product_table,
    signs_of_class,
    traditional_predict,
)
from .triples import (
    AntiUnitary,
    Grading,
    RealSpectralTriple,
    extract_signs,
    flip_real_structure,
    validate,
)
from .exemplars import build_exemplar, clifford_gammas, exemplar_catalog, flat_dirac_4d
from .products import (
    DiracChoice,
    KozulConvention,
    check_convention_equivalence,
    check_dirac_square,
    graded_product,
    product_unitary,
    traditional_product,
)
from .dga import StarDGA, dga_tensor, exterior_example, validate_dga

__version__ = "0.1.0"
