"""Critical-temperature prediction from chemical formulas.

Thin python surface over the C++ core: formula parsing, the 81
composition features, gradient-boosted-tree and linear regression,
model persistence, and repeated-holdout evaluation.
"""

from supercon._core import (
    Model,
    element_properties,
    feature_names,
    featurize,
    fit_gbt,
    fit_ols,
    paper_best_params,
    parse,
    predict_formula,
    render,
    repeated_holdout,
)

__all__ = [
    "Model",
    "element_properties",
    "feature_names",
    "featurize",
    "fit_gbt",
    "fit_ols",
    "paper_best_params",
    "parse",
    "predict_formula",
    "render",
    "repeated_holdout",
]

__version__ = "1.0.0"
