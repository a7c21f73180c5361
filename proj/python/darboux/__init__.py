"""Darboux transforms of killed one-dimensional diffusions."""

from ._darboux import (
    Example,
    catalog_ids,
    hermite_poly,
    make_example,
    normal_cdf,
    qn_poly,
    run_suite,
    simulate_survival,
    suite_names,
)

__all__ = [
    "Example",
    "catalog_ids",
    "hermite_poly",
    "make_example",
    "normal_cdf",
    "qn_poly",
    "run_suite",
    "simulate_survival",
    "suite_names",
]
