"""Marginal per-gene tests, FDR selection and simulation studies."""

from ._margene import (
    DataError,
    bh_select,
    cvm_limit_cdf,
    cvm_test2,
    kendall_tau,
    kolmogorov_cdf,
    ks_test2,
    mean_test,
    mean_test2,
    median_test,
    median_test2,
    sign_test,
    signed_rank_test,
    simulate,
    std_normal_cdf,
    wilcoxon_test2,
)

__all__ = [
    "DataError",
    "bh_select",
    "cvm_limit_cdf",
    "cvm_test2",
    "kendall_tau",
    "kolmogorov_cdf",
    "ks_test2",
    "mean_test",
    "mean_test2",
    "median_test",
    "median_test2",
    "sign_test",
    "signed_rank_test",
    "simulate",
    "std_normal_cdf",
    "wilcoxon_test2",
]
