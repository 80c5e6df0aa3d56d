"""kreinlab: a numerical laboratory for weighted polynomial approximation
of pure phases on the half line.

The pipeline runs from a weight specification to a verified inequality
chain: classify the weight by its logarithmic integral conditions
(weights, quad, krein); build orthonormal polynomials and Gauss rules
for it (orthopoly); compute best approximations of e^{i w T} and their
error curves (approx); construct the outer function with that modulus
and its causal time signal (hardy); and mollify, transform, and verify
the certificate chain that turns an approximation error into a lower
bound (kernels).  The cli module batches all of it behind JSON configs.
"""

from .errors import (AccuracyError, InconclusiveError, InputError,
                     KreinLabError, NumericError, UnsupportedError)
from .weights import (Domain, Family, WeightSpec, catalog, custom_weight,
                      damped_stretched_exp, even_extension, excluded_damped,
                      from_json_dict, log_squared, make_rescaled, pure_exp,
                      rational_modulus, stretched_exp, to_json_dict)
from .quad import ImproperClass, QuadResult, classify_improper, integrate
from .krein import (KreinReport, classify_weight, catalog_report, krein_value,
                    sqrt_substitution_check)
from .orthopoly import (GaussRule, RecurrenceTable, gauss_rule, moments,
                        recurrence, working_digits)
from .approx import (PolyApproximant, best_l1, best_l2, error_curve,
                     weighted_norm)
from .hardy import (OuterFunction, TimeDomainSignal, boundary_modulus_check,
                    boundary_samples, causality_defect, modulus_from_weight,
                    outer_from_modulus, time_domain_signal)
from .kernels import (CertificateReport, KernelBundle, certificate,
                      certificate_json_dict, certificate_rows,
                      hat_kernel_crosscheck, make_kernels, select_mollification,
                      sobolev_kernel, transfer_functions)
from .cli import RunConfig, main as cli_main

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "InconclusiveError", "InputError", "KreinLabError",
    "NumericError", "UnsupportedError",
    "Domain", "Family", "WeightSpec", "catalog", "custom_weight",
    "damped_stretched_exp", "even_extension", "excluded_damped",
    "from_json_dict", "log_squared", "make_rescaled", "pure_exp",
    "rational_modulus", "stretched_exp", "to_json_dict",
    "ImproperClass", "QuadResult", "classify_improper", "integrate",
    "KreinReport", "classify_weight", "catalog_report", "krein_value",
    "sqrt_substitution_check",
    "GaussRule", "RecurrenceTable", "gauss_rule", "moments", "recurrence",
    "working_digits",
    "PolyApproximant", "best_l1", "best_l2", "error_curve", "weighted_norm",
    "OuterFunction", "TimeDomainSignal", "boundary_modulus_check",
    "boundary_samples", "causality_defect", "modulus_from_weight",
    "outer_from_modulus", "time_domain_signal",
    "CertificateReport", "KernelBundle", "certificate",
    "certificate_json_dict", "certificate_rows", "hat_kernel_crosscheck",
    "make_kernels", "select_mollification", "sobolev_kernel",
    "transfer_functions",
    "RunConfig", "cli_main",
    "__version__",
]
