"""Krein-type integral conditions and membership in the admissible class.

Three weighted log-integrals decide where a weight stands:

    K0   int_R     log rho(w) / (1+w^2) dw          (full line)
    K1   int_0^inf log rho(w) / ((1+w) sqrt w) dw   (sqrt kernel)
    K2   int_0^inf log rho(w) / (1+w^2) dw          (half line)

Membership in the admissible class R+ means every moment of rho is finite
and the half-line integral K2 stays above -inf.  That combination is the
regime where best polynomial approximation of e^{iwT} must stall at a
positive error level, so the classification here is what the rest of the
package makes observable.

Every condition is decided twice: symbolically, by comparison-test
arithmetic on the weight's declared tail/endpoint/interior structure, and
numerically, by the truncation-ladder classifier.  The two routes must
agree or an InconclusiveError surfaces; there is no silent tie-break.

Convergent values are computed with the tail in log-frequency space
(v = log w): integrands like 1/(w log^2 w) carry ~1e-3 of their mass beyond
w = 1e300, unreachable by any direct double-precision abscissa, while in v
that same mass sits at v ~ 1e300 and integrates to machine accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import AccuracyError, InputError, UnsupportedError
from .quad import (
    ImproperClass,
    PointHint,
    TailHint,
    classify_improper,
    integrate,
)
from .weights import (
    Domain,
    Family,
    WeightSpec,
    eval_log_weight,
    eval_log_weight_scaled,
    even_extension,
    moments_all_finite,
    singularity_profile,
)

__all__ = [
    "VARIANTS",
    "KreinReport",
    "SubstitutionCheck",
    "krein_value",
    "classify_weight",
    "sqrt_substitution_check",
    "catalog_report",
]

VARIANTS = ("K0", "K1", "K2")

_CROSSOVER = math.e  # switch from direct to log-frequency integration here


@dataclass(frozen=True)
class KreinReport:
    """Full classification of one weight."""

    weight: WeightSpec
    k0: ImproperClass
    k1: ImproperClass
    k2: ImproperClass
    moments_finite: bool
    max_moment_checked: int
    in_R_plus: bool
    erratum_flags: Tuple[str, ...]


@dataclass(frozen=True)
class SubstitutionCheck:
    """The sqrt-kernel integral in its two printed forms.

    Substituting w = s^2 turns the sqrt-kernel integral into twice the
    half-line Cauchy integral of log rho(s^2); ratio should be 2.
    """

    direct_value: float
    substituted_value: float
    ratio: float
    expected_ratio: float = 2.0


# ---------------------------------------------------------------------------
# integrand assembly
# ---------------------------------------------------------------------------

def _kernel_power(variant: str) -> float:
    return 1.5 if variant == "K1" else 2.0


def _omega_integrand(spec: WeightSpec, variant: str) -> Callable:
    if variant == "K1":
        def f(w):
            return eval_log_weight(spec, w) / ((1.0 + w) * np.sqrt(w))
    else:
        def f(w):
            return eval_log_weight(spec, w) / (1.0 + np.square(w))
    return f


def _logspace_integrand(spec: WeightSpec, variant: str) -> Callable:
    """The same integral after w = e^v, in overflow-safe factored form.

    K2: log rho(w) dw/(1+w^2) = [log rho(e^v) e^-v] dv / (1+e^-2v)
    K1: log rho(w) dw/((1+w)sqrt w) = [log rho(e^v) e^-v] e^{v/2} dv / (1+e^-v)
    """
    if variant == "K1":
        def g(v):
            core = eval_log_weight_scaled(spec, v)
            return core * np.exp(0.5 * v) / (1.0 + np.exp(-v))
    else:
        def g(v):
            return eval_log_weight_scaled(spec, v) / (1.0 + np.exp(-2.0 * v))
    return g


def _kink_points(spec: WeightSpec, lo: float, hi: float) -> List[float]:
    """Interior points in (lo, hi) where the log-density is non-smooth."""
    pts: List[float] = []
    if spec.family in (Family.DAMPED_STRETCHED_EXP, Family.EXCLUDED_DAMPED):
        if spec.regularize_log:
            pts = [1.0 / math.e, math.e]  # damping switches on/off
        else:
            pts = [1.0]  # |log w| corner and blow-down
    return [x for x in pts if lo < x < hi]


def _half_line_value(spec: WeightSpec, variant: str, tol: float) -> Tuple[float, float]:
    """Value of the K1/K2 integral: direct below the crossover, log-space above."""
    f = _omega_integrand(spec, variant)
    near = integrate(f, 0.0, _CROSSOVER,
                     singular_points=_kink_points(spec, 0.0, _CROSSOVER), tol=tol)
    try:
        g = _logspace_integrand(spec, variant)
        far = integrate(g, math.log(_CROSSOVER), math.inf, tol=tol)
    except UnsupportedError:
        # custom weights without a fused log-space form: direct tail; may be
        # inaccurate for sub-power decay, which integrate will report
        far = integrate(f, _CROSSOVER, math.inf, tol=tol)
    value = float(np.real(near.value + far.value))
    return value, near.abs_error_estimate + far.abs_error_estimate


# ---------------------------------------------------------------------------
# condition evaluation
# ---------------------------------------------------------------------------

def krein_value(spec: WeightSpec, variant: str, corroborate: bool = True,
                tol: float = 1e-12) -> ImproperClass:
    """Classify (and when convergent, evaluate) one of the three conditions.

    K0 is the even-extended full-line integral; a half-line spec is extended
    implicitly.  The negative axis contributes the mirrored half-line value
    plus (pi/2) log(neg_scale) when the weight has been rescaled there.
    """
    if variant not in VARIANTS:
        raise InputError("unknown condition variant %r (use K0/K1/K2)" % (variant,))
    if variant == "K0":
        ext = even_extension(spec)
        half = krein_value(ext, "K2", corroborate=corroborate, tol=tol)
        if not half.convergent:
            return half
        value = 2.0 * half.value + 0.5 * math.pi * math.log(ext.neg_scale)
        return ImproperClass(True, value=value, evidence=half.evidence,
                             method=half.method + "+symmetry")

    prof = singularity_profile(spec)
    kp = _kernel_power(variant)
    tail = TailHint(prof.tail.power - kp, prof.tail.logpower)
    ep = prof.zero_endpoint
    endpoint = PointHint(0.0, ep.power - (0.5 if variant == "K1" else 0.0),
                         ep.logpower)
    points = [PointHint(ip.location, ip.exponent, 0.0)
              for ip in prof.interior_points]
    f = _omega_integrand(spec, variant)
    kinks = _kink_points(spec, 0.0, math.inf)
    return classify_improper(
        f, 0.0, math.inf,
        singular_points=kinks,
        tail_hint=tail,
        point_hints=points,
        endpoint_hint=endpoint,
        corroborate=corroborate,
        tol=tol,
        value_fn=lambda: _half_line_value(spec, variant, tol),
    )


# ---------------------------------------------------------------------------
# membership
# ---------------------------------------------------------------------------

def _moment_integrand(spec: WeightSpec, k: int) -> Callable:
    def f(w):
        return np.power(w, float(k)) * np.exp(eval_log_weight(spec, w))
    return f


def _spot_check_moments(spec: WeightSpec, max_moment: int) -> int:
    """Numerically confirm m_k < inf for k = 0..max_moment; returns the
    highest k checked.  Raises AccuracyError if a supposedly finite moment
    fails to converge."""
    checked = -1
    for k in range(max_moment + 1):
        res = integrate(_moment_integrand(spec, k), 0.0, math.inf,
                        singular_points=_kink_points(spec, 0.0, math.inf),
                        tol=1e-8)
        if not math.isfinite(float(np.real(res.value))):
            raise AccuracyError("moment %d of %s is not finite numerically"
                                % (k, spec.family.value),
                                best_estimate=res.value)
        checked = k
    return checked


def classify_weight(spec: WeightSpec, max_moment: int = 20) -> KreinReport:
    """All three conditions plus the moment test and the membership verdict.

    Moment finiteness for ALL k is a symbolic judgment from the tail class
    (no finite computation decides it); moments 0..max_moment are also
    integrated numerically as a spot check when the symbolic answer is yes.
    """
    if max_moment < 0:
        raise InputError("max_moment must be >= 0")
    prof = singularity_profile(spec)
    finite = moments_all_finite(prof)
    checked = _spot_check_moments(spec, max_moment) if finite else -1

    k0 = krein_value(spec, "K0")
    k1 = krein_value(spec, "K1")
    k2 = krein_value(spec, "K2")
    in_class = finite and k2.convergent

    flags: List[str] = []
    if (spec.family is Family.STRETCHED_EXP and spec.q == 1.0
            and not k2.convergent):
        flags.append(
            "q=1 boundary: the half-line condition fails only logarithmically "
            "at the top of the stretched-exponential range; excluded despite "
            "finite moments, unlike every q < 1 member")
    if prof.interior_points and not spec.regularize_log:
        flags.append(
            "unregularized damping: the density vanishes non-integrably at "
            "w=1, so the conditions fail there rather than at the tail")
    return KreinReport(
        weight=spec,
        k0=k0,
        k1=k1,
        k2=k2,
        moments_finite=finite,
        max_moment_checked=checked,
        in_R_plus=in_class,
        erratum_flags=tuple(flags),
    )


def catalog_report() -> List[Tuple[str, KreinReport]]:
    """classify_weight over the named catalog."""
    from .weights import catalog

    return [(name, classify_weight(spec)) for name, spec in catalog()]


# ---------------------------------------------------------------------------
# the substitution identity between the two printed sqrt-kernel forms
# ---------------------------------------------------------------------------

def sqrt_substitution_check(spec: WeightSpec, tol: float = 1e-12) -> SubstitutionCheck:
    """Verify int_0^inf log rho(w) dw/((1+w)sqrt w) = 2 int_0^inf log rho(s^2) ds/(1+s^2).

    Only meaningful when the sqrt-kernel integral converges.
    """
    direct = krein_value(spec, "K1", tol=tol)
    if not direct.convergent:
        raise InputError("substitution check needs a convergent sqrt-kernel "
                         "integral (tail exponent below 1/2)")

    def f_sub(s):
        return eval_log_weight(spec, np.square(s)) / (1.0 + np.square(s))

    sub_kinks = sorted(math.sqrt(x)
                       for x in _kink_points(spec, 0.0, _CROSSOVER ** 2))
    near = integrate(f_sub, 0.0, _CROSSOVER, singular_points=sub_kinks, tol=tol)

    def g_sub(v):
        # s = e^v, w = s^2 = e^{2v}:
        #   log rho(e^{2v}) e^v dv/(1+e^{2v}) = scaled(2v) e^v dv/(1+e^{-2v})
        core = eval_log_weight_scaled(spec, 2.0 * v)  # log rho(e^{2v}) e^{-2v}
        return core * np.exp(v) / (1.0 + np.exp(-2.0 * v))

    far = integrate(g_sub, math.log(_CROSSOVER), math.inf, tol=tol)
    substituted = float(np.real(near.value + far.value))
    return SubstitutionCheck(
        direct_value=float(direct.value),
        substituted_value=substituted,
        ratio=float(direct.value) / substituted,
    )
