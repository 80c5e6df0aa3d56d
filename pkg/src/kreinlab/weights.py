"""Weight families on the half line and their even/rescaled extensions.

A weight is a nonnegative density rho(omega) on [0, inf).  Everything
downstream (integral classification, orthogonal polynomials, outer
functions) consumes weights through ``eval_log_weight``, which returns
log rho so that extreme dynamic ranges stay representable.  The families:

    LogSquared            rho = exp(-(log w)^2)
    StretchedExp          rho = exp(-r w^q)                  r > 0, 0 < q <= 1
    DampedStretchedExp    rho = exp(-r w^q / |log w|^p)
    ExcludedDamped        rho = exp(-w / |log w|)
    PureExp               rho = exp(-r w)
    RationalModulus       rho = (1 + w^2)^(-r)
    Custom                user supplied log density

with w = |omega|.  ``regularize_log`` replaces |log w| by max(|log w|, 1),
which removes the non-integrable blow-down the damped formulas otherwise
have at w = 1 while leaving the large-w behaviour untouched.

The full-line extension used by the Hardy-space construction is the even
extension, optionally damped on the negative axis by a constant factor
``neg_scale`` (see ``make_rescaled``): evaluation always goes through |omega|,
so evenness of the unrescaled extension is exact in floating point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import InputError, UnsupportedError

__all__ = [
    "Family",
    "Domain",
    "TailClass",
    "EndpointClass",
    "InteriorSingularity",
    "SingularityProfile",
    "WeightSpec",
    "eval_log_weight",
    "eval_log_weight_mp",
    "eval_log_weight_scaled",
    "even_extension",
    "make_rescaled",
    "singularity_profile",
    "moments_all_finite",
    "to_json_dict",
    "from_json_dict",
    "log_squared",
    "stretched_exp",
    "damped_stretched_exp",
    "excluded_damped",
    "pure_exp",
    "rational_modulus",
    "custom_weight",
    "catalog",
]


class Family(str, enum.Enum):
    LOG_SQUARED = "LogSquared"
    STRETCHED_EXP = "StretchedExp"
    DAMPED_STRETCHED_EXP = "DampedStretchedExp"
    EXCLUDED_DAMPED = "ExcludedDamped"
    PURE_EXP = "PureExp"
    RATIONAL_MODULUS = "RationalModulus"
    CUSTOM = "Custom"


class Domain(str, enum.Enum):
    HALF_LINE = "HalfLine"
    FULL_LINE_EVEN = "FullLineEven"


@dataclass(frozen=True)
class TailClass:
    """Large-omega model  log rho(w) ~ -coef * w^power * (log w)^logpower.

    ``power > 0`` covers the (damped) stretched exponentials, ``power == 0``
    with ``logpower == 2`` the log-squared family and ``logpower == 1`` the
    rational moduli.
    """

    coef: float
    power: float
    logpower: float


@dataclass(frozen=True)
class EndpointClass:
    """Small-omega model  log rho(w) ~ -coef * w^power * |log w|^logpower."""

    coef: float
    power: float
    logpower: float


@dataclass(frozen=True)
class InteriorSingularity:
    """Interior point where log rho blows down like -coef*|w - location|^exponent
    (exponent < 0).  Only the unregularized damped families have one."""

    location: float
    exponent: float
    coef: float = 1.0


@dataclass(frozen=True)
class SingularityProfile:
    """Declared analytic structure of a weight.

    Integration and classification routines never hunt for singular points
    numerically; they are read off this profile.
    """

    tail: TailClass
    zero_endpoint: EndpointClass
    interior_points: Tuple[InteriorSingularity, ...] = ()


@dataclass(frozen=True)
class WeightSpec:
    family: Family
    r: Optional[float] = None
    q: Optional[float] = None
    p: Optional[float] = None
    domain: Domain = Domain.HALF_LINE
    regularize_log: bool = True
    neg_scale: float = 1.0
    custom_log_density: Optional[Callable] = field(default=None, compare=False)
    custom_profile: Optional[SingularityProfile] = None

    def __post_init__(self):
        fam = self.family
        if fam in (Family.STRETCHED_EXP, Family.DAMPED_STRETCHED_EXP):
            if self.r is None or self.r <= 0:
                raise InputError("r must be positive for %s" % fam.value)
            if self.q is None or not 0 < self.q <= 1:
                raise InputError("q must lie in (0, 1] for %s" % fam.value)
        if fam is Family.DAMPED_STRETCHED_EXP:
            if self.p is None or self.p <= 0:
                raise InputError("p must be positive for %s" % fam.value)
        if fam in (Family.PURE_EXP, Family.RATIONAL_MODULUS):
            if self.r is None or self.r <= 0:
                raise InputError("r must be positive for %s" % fam.value)
        if fam is Family.CUSTOM and self.custom_log_density is None:
            raise InputError("Custom weights need a log-density callable")
        if not (self.neg_scale > 0):
            raise InputError("neg_scale must be positive")
        if self.neg_scale != 1.0 and self.domain is Domain.HALF_LINE:
            raise InputError("neg_scale only makes sense on the full line")

    # -- hashing: the callable is compared by identity ----------------------
    def __hash__(self):
        return hash(
            (
                self.family,
                self.r,
                self.q,
                self.p,
                self.domain,
                self.regularize_log,
                self.neg_scale,
                id(self.custom_log_density),
            )
        )

    def key(self) -> tuple:
        """Stable cache key."""
        return (
            self.family.value,
            self.r,
            self.q,
            self.p,
            self.domain.value,
            self.regularize_log,
            self.neg_scale,
            id(self.custom_log_density) if self.custom_log_density else None,
        )


# ---------------------------------------------------------------------------
# catalog constructors
# ---------------------------------------------------------------------------

def log_squared(domain: Domain = Domain.HALF_LINE) -> WeightSpec:
    return WeightSpec(Family.LOG_SQUARED, domain=domain)


def stretched_exp(r: float, q: float, domain: Domain = Domain.HALF_LINE) -> WeightSpec:
    return WeightSpec(Family.STRETCHED_EXP, r=float(r), q=float(q), domain=domain)


def damped_stretched_exp(
    r: float,
    q: float,
    p: float,
    regularize_log: bool = True,
    domain: Domain = Domain.HALF_LINE,
) -> WeightSpec:
    return WeightSpec(
        Family.DAMPED_STRETCHED_EXP,
        r=float(r),
        q=float(q),
        p=float(p),
        domain=domain,
        regularize_log=regularize_log,
    )


def excluded_damped(regularize_log: bool = True, domain: Domain = Domain.HALF_LINE) -> WeightSpec:
    return WeightSpec(Family.EXCLUDED_DAMPED, domain=domain, regularize_log=regularize_log)


def pure_exp(r: float, domain: Domain = Domain.HALF_LINE) -> WeightSpec:
    return WeightSpec(Family.PURE_EXP, r=float(r), domain=domain)


def rational_modulus(r: float, domain: Domain = Domain.HALF_LINE) -> WeightSpec:
    return WeightSpec(Family.RATIONAL_MODULUS, r=float(r), domain=domain)


def custom_weight(
    log_density: Callable,
    profile: Optional[SingularityProfile] = None,
    domain: Domain = Domain.HALF_LINE,
) -> WeightSpec:
    return WeightSpec(
        Family.CUSTOM, domain=domain, custom_log_density=log_density, custom_profile=profile
    )


def catalog() -> list:
    """The named weight set exercised throughout the test battery."""
    return [
        ("log_squared", log_squared()),
        ("stretched_0.3", stretched_exp(1.0, 0.3)),
        ("stretched_0.5", stretched_exp(1.0, 0.5)),
        ("stretched_0.7", stretched_exp(1.0, 0.7)),
        ("stretched_1.0", stretched_exp(1.0, 1.0)),
        ("damped_q1_p2", damped_stretched_exp(1.0, 1.0, 2.0, regularize_log=True)),
        ("excluded_damped", excluded_damped(regularize_log=True)),
    ]


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _log_damping(w: np.ndarray, regularize: bool) -> np.ndarray:
    """|log w| or max(|log w|, 1); returns +inf at w = 0 and, unregularized,
    0 at w = 1 (the caller divides by this)."""
    with np.errstate(divide="ignore"):
        a = np.abs(np.log(w))
    if regularize:
        a = np.maximum(a, 1.0)
    return a


def _half_line_log_density(spec: WeightSpec, w: np.ndarray) -> np.ndarray:
    """log rho at w >= 0, vectorized; -inf where rho vanishes."""
    fam = spec.family
    if fam is Family.LOG_SQUARED:
        with np.errstate(divide="ignore"):
            lg = np.log(w)
        out = -np.square(lg)
        return np.where(w == 0.0, -np.inf, out)
    if fam is Family.STRETCHED_EXP:
        return -spec.r * np.power(w, spec.q)
    if fam in (Family.DAMPED_STRETCHED_EXP, Family.EXCLUDED_DAMPED):
        r = spec.r if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        q = spec.q if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        p = spec.p if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        damp = _log_damping(w, spec.regularize_log)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = -r * np.power(w, q) / np.power(damp, p)
        # w == 0: w^q -> 0 beats any damping, limit is 0
        out = np.where(w == 0.0, 0.0, out)
        return out
    if fam is Family.PURE_EXP:
        return -spec.r * w
    if fam is Family.RATIONAL_MODULUS:
        return -spec.r * np.log1p(np.square(w))
    if fam is Family.CUSTOM:
        return spec.custom_log_density(w)
    raise UnsupportedError("unhandled family %r" % fam)


def eval_log_weight(spec: WeightSpec, omega) -> np.ndarray:
    """log rho(omega); scalar in, scalar out, arrays map elementwise.

    Half-line weights reject negative omega.  Full-line (even) weights are
    evaluated through |omega|, plus log(neg_scale) on the negative axis when
    the weight has been rescaled there.
    """
    arr = np.asarray(omega, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if spec.domain is Domain.HALF_LINE:
        if np.any(arr < 0):
            raise InputError("half-line weight evaluated at negative omega")
        out = _half_line_log_density(spec, arr)
    else:
        out = _half_line_log_density(spec, np.abs(arr))
        if spec.neg_scale != 1.0:
            out = out + np.where(arr < 0, math.log(spec.neg_scale), 0.0)
    return float(out[0]) if scalar else out


def eval_log_weight_mp(spec: WeightSpec, x):
    """log rho at a single mpmath scalar, for extended-precision consumers.

    Only defined for nonnegative x of half-line/even weights; the negative
    axis never enters the moment computations.
    """
    from mpmath import mp

    if x < 0:
        raise InputError("extended-precision evaluation expects x >= 0")
    fam = spec.family
    if fam is Family.LOG_SQUARED:
        if x == 0:
            return mp.ninf
        return -mp.log(x) ** 2
    if fam is Family.STRETCHED_EXP:
        return -spec.r * x ** mp.mpf(spec.q)
    if fam in (Family.DAMPED_STRETCHED_EXP, Family.EXCLUDED_DAMPED):
        r = spec.r if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        q = spec.q if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        p = spec.p if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        if x == 0:
            return mp.mpf(0)
        a = abs(mp.log(x))
        if spec.regularize_log:
            a = max(a, mp.mpf(1))
        if a == 0:
            return mp.ninf
        return -r * x ** mp.mpf(q) / a ** mp.mpf(p)
    if fam is Family.PURE_EXP:
        return -spec.r * x
    if fam is Family.RATIONAL_MODULUS:
        return -spec.r * mp.log(1 + x * x)
    raise UnsupportedError("extended precision evaluation not available for %r" % fam)


def eval_log_weight_scaled(spec: WeightSpec, v) -> np.ndarray:
    """log rho(e^v) * e^(-v), fused so neither factor overflows.

    Tail integrals are best computed in log-frequency space, where this
    product is the natural integrand factor.  For tails like
    -log rho ~ w/(log w)^p the two factors overflow/underflow separately
    around v ~ 700 while the product is a tame v^(-p); each family therefore
    gets an explicit fused formula.
    """
    arr = np.asarray(v, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    fam = spec.family
    if fam is Family.LOG_SQUARED:
        out = -np.square(arr) * np.exp(-arr)
    elif fam is Family.STRETCHED_EXP:
        out = -spec.r * np.exp((spec.q - 1.0) * arr)
    elif fam in (Family.DAMPED_STRETCHED_EXP, Family.EXCLUDED_DAMPED):
        r = spec.r if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        q = spec.q if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        p = spec.p if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        damp = np.abs(arr)
        if spec.regularize_log:
            damp = np.maximum(damp, 1.0)
        with np.errstate(divide="ignore"):
            out = -r * np.exp((q - 1.0) * arr) / np.power(damp, p)
    elif fam is Family.PURE_EXP:
        out = np.full_like(arr, -spec.r)
    elif fam is Family.RATIONAL_MODULUS:
        # log(1 + e^{2v}) = 2v + log1p(e^{-2v}) for v > 0, log1p(e^{2v}) else
        val = np.where(
            arr > 0,
            2.0 * arr + np.log1p(np.exp(-2.0 * np.abs(arr))),
            np.log1p(np.exp(-2.0 * np.abs(arr))),
        )
        out = -spec.r * val * np.exp(-arr)
    else:
        raise UnsupportedError("no fused log-space form for %r" % fam)
    return float(out[0]) if scalar else out


# ---------------------------------------------------------------------------
# extensions and rescaling
# ---------------------------------------------------------------------------

def even_extension(spec: WeightSpec) -> WeightSpec:
    """The same weight viewed on the full line through |omega|."""
    if spec.domain is Domain.FULL_LINE_EVEN:
        return spec
    return replace(spec, domain=Domain.FULL_LINE_EVEN)


def make_rescaled(spec: WeightSpec, eps: float, L: float) -> WeightSpec:
    """Damp the negative axis by the constant factor eps/L.

    This realizes  rho_d = 1_{omega<0} * rho * (eps/L) + 1_{omega>=0} * rho.
    Half-line specs are even-extended first.  eps = L returns the plain even
    extension.
    """
    if not (eps > 0) or not (L > 0):
        raise InputError("rescaling needs eps > 0 and L > 0")
    base = even_extension(spec)
    factor = eps / L
    if factor == 1.0:
        return base
    return replace(base, neg_scale=base.neg_scale * factor)


# ---------------------------------------------------------------------------
# singularity profiles
# ---------------------------------------------------------------------------

def singularity_profile(spec: WeightSpec) -> SingularityProfile:
    """Declared tail / endpoint / interior structure of log rho.

    Raises UnsupportedError for custom weights without a user profile.
    """
    fam = spec.family
    if fam is Family.LOG_SQUARED:
        return SingularityProfile(
            tail=TailClass(1.0, 0.0, 2.0),
            zero_endpoint=EndpointClass(1.0, 0.0, 2.0),
        )
    if fam is Family.STRETCHED_EXP:
        return SingularityProfile(
            tail=TailClass(spec.r, spec.q, 0.0),
            zero_endpoint=EndpointClass(spec.r, spec.q, 0.0),
        )
    if fam in (Family.DAMPED_STRETCHED_EXP, Family.EXCLUDED_DAMPED):
        r = spec.r if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        q = spec.q if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        p = spec.p if fam is Family.DAMPED_STRETCHED_EXP else 1.0
        interior: Tuple[InteriorSingularity, ...] = ()
        if not spec.regularize_log:
            # |log w|^p ~ |w - 1|^p near w = 1, so log rho ~ -r |w - 1|^(-p)
            interior = (InteriorSingularity(location=1.0, exponent=-p, coef=r),)
        return SingularityProfile(
            tail=TailClass(r, q, -p),
            # near 0, |log w| is large either way, so the damping divides
            zero_endpoint=EndpointClass(r, q, -p),
            interior_points=interior,
        )
    if fam is Family.PURE_EXP:
        return SingularityProfile(
            tail=TailClass(spec.r, 1.0, 0.0),
            zero_endpoint=EndpointClass(spec.r, 1.0, 0.0),
        )
    if fam is Family.RATIONAL_MODULUS:
        return SingularityProfile(
            tail=TailClass(2.0 * spec.r, 0.0, 1.0),
            zero_endpoint=EndpointClass(spec.r, 2.0, 0.0),
        )
    if fam is Family.CUSTOM:
        if spec.custom_profile is None:
            raise UnsupportedError("custom weight has no singularity profile")
        return spec.custom_profile
    raise UnsupportedError("unhandled family %r" % fam)


def moments_all_finite(profile: SingularityProfile) -> bool:
    """Whether every polynomial moment of rho converges, read off the tail.

    exp(-C w^a log^b w) beats every power of w iff a > 0, or a = 0 with
    b > 1 (b = 1 is only power decay w^-C).
    """
    t = profile.tail
    if t.power > 0:
        return True
    return t.power == 0 and t.logpower > 1


# ---------------------------------------------------------------------------
# JSON interface
# ---------------------------------------------------------------------------

_JSON_FIELDS = ("family", "r", "q", "p", "domain", "regularize_log")

_APPLICABLE = {
    Family.LOG_SQUARED: (),
    Family.STRETCHED_EXP: ("r", "q"),
    Family.DAMPED_STRETCHED_EXP: ("r", "q", "p"),
    Family.EXCLUDED_DAMPED: (),
    Family.PURE_EXP: ("r",),
    Family.RATIONAL_MODULUS: ("r",),
}


def to_json_dict(spec: WeightSpec) -> dict:
    """Serializable form.  Rescaled and custom weights are in-memory objects
    and deliberately fall outside the exchange format."""
    if spec.family is Family.CUSTOM:
        raise UnsupportedError("custom weights are not serializable")
    if spec.neg_scale != 1.0:
        raise UnsupportedError("rescaled weights are not serializable")
    out = {"family": spec.family.value, "domain": spec.domain.value,
           "regularize_log": spec.regularize_log}
    for name in _APPLICABLE[spec.family]:
        out[name] = getattr(spec, name)
    return out


def from_json_dict(data: dict) -> WeightSpec:
    """Parse and validate; unknown and inapplicable fields are rejected."""
    if not isinstance(data, dict):
        raise InputError("weight must be a JSON object")
    unknown = set(data) - set(_JSON_FIELDS)
    if unknown:
        raise InputError("unknown weight fields: %s" % ", ".join(sorted(unknown)))
    if "family" not in data:
        raise InputError("weight needs a family")
    try:
        fam = Family(data["family"])
    except ValueError:
        raise InputError("unknown weight family %r" % data["family"])
    if fam is Family.CUSTOM:
        raise InputError("custom weights cannot be built from JSON")
    allowed = _APPLICABLE[fam]
    for name in ("r", "q", "p"):
        if name in data and name not in allowed:
            raise InputError("field %r does not apply to family %s" % (name, fam.value))
        if name in data and not isinstance(data[name], (int, float)):
            raise InputError("field %r must be a number" % name)
    missing = [name for name in allowed if name not in data]
    if missing:
        raise InputError("family %s needs fields: %s" % (fam.value, ", ".join(missing)))
    domain = Domain.HALF_LINE
    if "domain" in data:
        try:
            domain = Domain(data["domain"])
        except ValueError:
            raise InputError("unknown domain %r" % data["domain"])
    reg = data.get("regularize_log", True)
    if not isinstance(reg, bool):
        raise InputError("regularize_log must be a boolean")
    kwargs = {name: float(data[name]) for name in allowed}
    return WeightSpec(fam, domain=domain, regularize_log=reg, **kwargs)
