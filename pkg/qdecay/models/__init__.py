from .channels import (
    KrausChannel,
    TimeParams,
    apply_local_pair,
    compose,
    dephasing,
    depolarizing,
    gad,
    gamma_from_time,
    identity_channel,
    kraus_map,
    time_from_gamma,
)
from .states import (
    DensityMatrix,
    StateFamily,
    StateKind,
    make_schmidt_pure,
    make_werner,
    maximally_mixed,
    validate,
    x_part,
)
