from .variance import (
    VarianceComponents,
    confidence_interval,
    normal_interval,
    variance_components,
)


__all__ = [
    "VarianceComponents",
    "confidence_interval",
    "normal_interval",
    "variance_components",
]
