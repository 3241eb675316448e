"""Exact ball discrepancies of codes in the binary Hamming space."""

__version__ = "0.1.0"

from .hamming import (
    Code,
    DimensionError,
    InfeasibleError,
    Word,
    antipode,
    ball_volume,
    binary_entropy,
    capped_entropy,
    complement_code,
    hamming_distance,
    read_code,
    volume_exponent_bound,
    write_code,
)
from .kernels import (
    ball_intersection,
    ball_intersection_expansion,
    distance_kernel,
    krawtchouk,
    krawtchouk_table,
    odd_krawtchouk_matrix,
)
from .discrepancy import (
    Spectrum,
    WeightVector,
    distance_distribution,
    fold_weights,
    hemisphere_discrepancy,
    hemisphere_linf,
    hemisphere_power,
    linf_discrepancy,
    local_discrepancy,
    lp_discrepancy,
    lp_power,
    macwilliams_inverse,
    macwilliams_transform,
    stolarsky_hemisphere,
    stolarsky_uniform,
)
from .constructions import (
    antipodal_code,
    coset_partition,
    hamming_code,
    jitter_exponent,
    jittered_code,
    perfect_code_complement_minimizer,
    random_uniform_code,
)
from .bounds import (
    bound_jittered,
    bound_linf_general,
    bound_linf_restricted,
    bound_random,
    linf_from_lp,
    reference_quadratic_band,
)
from .search import exhaustive_min, local_search_min, parse_objective, verify_hemisphere_characterization
