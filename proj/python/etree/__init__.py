"""Event-tree analysis toolkit.

Generation, reduction, partitioning and probabilistic evaluation of event
trees, with an exact-rational backend and an exponential-lifetime float
backend. The heavy lifting lives in the compiled `_etree` extension.
"""

from ._etree import (
    Error,
    Model,
    __version__,
    exp_cdf,
    exp_survival,
    grid_study,
    run,
    validate,
)

__all__ = [
    "Error",
    "Model",
    "__version__",
    "exp_cdf",
    "exp_survival",
    "grid_study",
    "run",
    "validate",
]
