from typing import Optional

import numpy as np

from errors import InvalidInputError

from .design_spec import Assignment, DesignSpec, RandomizationScheme
from .minimization import minimization
from .simple import simple_randomize
from .stratified_block import stratified_block


def assign(
    spec: DesignSpec, strata, factor_levels: Optional[np.ndarray] = None
) -> Assignment:
    """
    Dispatch to the generator named by spec.scheme.

    Minimization balances factor_levels when given, otherwise the strata.
    """
    strata = np.asarray(strata)
    if spec.scheme is RandomizationScheme.SIMPLE:
        return simple_randomize(strata.size, spec)
    if spec.scheme is RandomizationScheme.STRATIFIED_BLOCK:
        return stratified_block(strata, spec)
    if spec.scheme is RandomizationScheme.MINIMIZATION:
        factors = strata if factor_levels is None else factor_levels
        return minimization(factors, spec)
    raise InvalidInputError(f"Unknown randomization scheme {spec.scheme}")
