"""Numerical radius bounds for block shift matrices.

    w(A'') <= w(A) <= w(A')

where A' and A'' replace each block of the shift by its operator norm and
its minimum modulus. The package evaluates both bounds, builds the witness
vector for the lower one, and certifies or refutes equality by exhibiting
A' (or A'') as a direct summand.
"""

__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    BoundsReport,
    GammaBound,
    bounds_report,
    coarse_lower,
    coarse_upper,
    gamma_lower,
    kernel_intersection_trivial,
    lower_bound,
    upper_bound,
)
from .certify import (  # noqa: E402
    EQUALITY,
    HYPOTHESIS_VIOLATED,
    NO_EQUALITY,
    EqualityCertificate,
    certify_lower_equality,
    certify_upper_equality,
)
from .documents import load_document, parse_blockshift  # noqa: E402
from .radius import (  # noqa: E402
    RadiusResult,
    jordan_radius,
    numerical_radius_blockshift,
    numerical_radius_general,
)
from .shifts import (  # noqa: E402
    BlockShift,
    ScalarShift,
    assemble,
    assemble_scalar,
    gamma_compression,
    jordan_shift,
    min_modulus_compression,
    norm_compression,
    product_chain,
    rotate_equivalence_basis,
)
from .witness import WitnessVector, lower_witness, perturb_nonzero_chain  # noqa: E402
from .fixtures import fixture_path, load_fixture  # noqa: E402
