"""Canonical-form classification of constrained rational functions.

A bivariate function whose doubling map has a constrained image decomposes
through F(x) + G(y) or F(x) * G(y); a trivariate one decomposes through
r1 + r2 + r3, r1 * r2 * r3, r_i * (r_j + r_l)^n, or the twisted quotient
(r1(x) + r2(y)) / (r2(y) + r3(z)), each up to an outer Mobius change of the
value.  The fitters below recover the inner parts exactly and back every
positive verdict with a machine-checkable dependence certificate: a bivariate
polynomial A(p, q) with A(P, s) = 0 verified by exact expansion.

Fitting runs in two phases.  Cheap modular value probes ("gates") reject
wrong shapes fast -- an unequal pair of residues is an exact disproof of the
identity being probed, so gates never eliminate a true match except with
negligible probability, and a fluke pass is harmless because every positive
path ends in an exact identity check plus a verified certificate.  Recovery
then works on exact univariate specializations, so no step ever multiplies
two large multivariate polynomials except the single certificate expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

from .calculus import (
    hermite_antiderivative,
    logderiv_integrate,
    residue_profile,
    separability_identity,
)
from .dimension import image_dimension, is_nondegenerate
from .modular import DEFAULT_PRIMES, rng_for
from .oracle import annihilating_poly
from .poly import Poly
from .ratfun import (
    DegenerateSpecializationError,
    PoleError,
    RatFun,
    compose_numerator,
    partial_ratio,
)

_VN = ("x", "y", "z")
_RETRIES = 64
_GATE_PRIME = DEFAULT_PRIMES[0]

#: Mobius pre-normalizations tried by fit_twisted, as (label, (a, b, c, d))
#: with m(t) = (a*t + b) / (c*t + d).  The first six form the core schedule;
#: the last four close it under inversion, so that m(P) is re-normalizable
#: for every P that any scheduled map sends to the twisted shape.
MOBIUS_SCHEDULE: tuple[tuple[str, tuple[int, int, int, int]], ...] = (
    ("t", (1, 0, 0, 1)),
    ("1/t", (0, 1, 1, 0)),
    ("t-1", (1, -1, 0, 1)),
    ("1/(t-1)", (0, 1, 1, -1)),
    ("t/(t-1)", (1, 0, 1, -1)),
    ("(t-1)/t", (1, -1, 1, 0)),
    ("t+1", (1, 1, 0, 1)),
    ("1-t", (-1, 1, 0, 1)),
    ("1/(1-t)", (0, 1, -1, 1)),
    ("(t+1)/t", (1, 1, 1, 0)),
)


@dataclass
class DependenceCertificate:
    """Exact witness that P and the fitted s are algebraically dependent.

    annihilator is a nonzero bivariate polynomial in slots (p, q) with
    annihilator(P, s) = 0 as a function; verified records that the exact
    expansion of that composition was checked to vanish.
    """

    annihilator: Poly
    degree_bound: int
    verified: bool


@dataclass
class FormReport:
    """Outcome of classification: verdict, fitted parts, certificate.

    verdict is one of GroupAdditive, GroupMultiplicative, Field, Twisted,
    NoConstraint, Degenerate, Unresolved.  Positive verdicts always carry
    fitted parts and a verified certificate.  diagnostics maps named probe
    steps to booleans; for Field, pivot is the 1-based index of the variable
    outside the inner sum and exponent is the outer power n.
    """

    verdict: str
    fitted: dict[str, RatFun] | None
    certificate: DependenceCertificate | None
    diagnostics: dict[str, bool]
    pivot: int | None = None
    exponent: int | None = None


class GroupFit(NamedTuple):
    verdict: str
    r1: RatFun
    r2: RatFun
    r3: RatFun
    s: RatFun
    certificate: DependenceCertificate


class FieldFit(NamedTuple):
    pivot: int
    exponent: int
    r1: RatFun
    r2: RatFun
    r3: RatFun
    s: RatFun
    certificate: DependenceCertificate


class TwistedFit(NamedTuple):
    r1: RatFun
    r2: RatFun
    r3: RatFun
    s: RatFun
    certificate: DependenceCertificate
    normalization: str


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def _gradients_not_parallel(P: RatFun, s: RatFun, primes, seed: int) -> bool:
    """True when some 2x2 minor of [grad P; grad s] is provably nonzero.

    Minors are evaluated mod p at random points with the pole factors
    cleared; a nonzero residue is an exact disproof of parallelism, so a
    True return is certain while a False return only means every sampled
    minor vanished.
    """
    n = P.arity
    pn, pd, sn, sd = P.num, P.den, s.num, s.den
    dp = [(pn.derivative(i), pd.derivative(i)) for i in range(n)]
    ds = [(sn.derivative(i), sd.derivative(i)) for i in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    for p in primes:
        rng = rng_for(seed, f"minors:p{p}")
        done = 0
        tries = 0
        while done < 4 and tries < _RETRIES:
            tries += 1
            w = [rng.randrange(1, p) for _ in range(n)]
            pdv = pd.eval_mod(w, p)
            sdv = sd.eval_mod(w, p)
            if pdv == 0 or sdv == 0:
                continue
            pnv = pn.eval_mod(w, p)
            snv = sn.eval_mod(w, p)
            gp = [(dp[i][0].eval_mod(w, p) * pdv - pnv * dp[i][1].eval_mod(w, p)) % p
                  for i in range(n)]
            gs = [(ds[i][0].eval_mod(w, p) * sdv - snv * ds[i][1].eval_mod(w, p)) % p
                  for i in range(n)]
            for a, b in pairs:
                if (gp[a] * gs[b] - gp[b] * gs[a]) % p:
                    return True
            done += 1
    return False


def dependence_certificate(
    P: RatFun,
    s: RatFun,
    dmax: int | None = None,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
) -> DependenceCertificate | None:
    """Annihilating polynomial A(p, q) with A(P, s) = 0, or None.

    P and s are dependent iff their gradients are parallel, so provably
    non-parallel gradients end the search immediately.  Otherwise the
    lowest-degree relation up to dmax is located by modular linear algebra
    and verified by exact expansion before being returned; when dmax is
    defaulted (deg P + deg s) a failed search is retried once at twice the
    bound.
    """
    if P.arity != s.arity:
        raise ValueError("P and s must share one ambient variable list")
    if s.is_constant:
        raise ValueError("the fitted function s must be nonconstant")
    if P.is_constant:
        raise ValueError("P must be nonconstant")
    if _gradients_not_parallel(P, s, primes, seed):
        return None
    bound = dmax if dmax is not None else max(1, P.total_degree() + s.total_degree())
    ann = annihilating_poly([P, s], bound, primes=primes, seed=seed)
    if ann is None and dmax is None:
        ann = annihilating_poly([P, s], 2 * bound, primes=primes, seed=seed)
    if ann is None:
        return None
    # annihilating_poly only returns relations whose exact composition with
    # (P, s) vanished identically, so the certificate is born verified.
    return DependenceCertificate(ann, ann.total_degree(), True)


def verify_certificate(
    cert: DependenceCertificate,
    P: RatFun,
    s: RatFun,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
) -> bool:
    """Re-check a certificate from scratch: is annihilator(P, s) = 0 exactly?

    Modular spot evaluations run first so that a corrupted certificate fails
    in microseconds; agreement at every sample falls through to the exact
    symbolic expansion, which is the final word.
    """
    ann = cert.annihilator
    if ann.arity != 2 or ann.is_zero:
        return False
    for p in primes:
        rng = rng_for(seed, f"certcheck:p{p}")
        done = 0
        tries = 0
        while done < 4 and tries < _RETRIES:
            tries += 1
            w = [rng.randrange(1, p) for _ in range(P.arity)]
            try:
                pv = P.eval_mod(w, p)
                sv = s.eval_mod(w, p)
            except PoleError:
                continue
            if ann.eval_mod((pv, sv), p) != 0:
                return False
            done += 1
    return compose_numerator(ann, [P, s]).is_zero


# ---------------------------------------------------------------------------
# evaluation and specialization helpers
# ---------------------------------------------------------------------------


class _Fn:
    """Point-evaluation and exact-specialization views of one function.

    Wraps the raw numerator/denominator pair (which need not be reduced)
    and caches the partial-derivative polynomials; all partial values use
    (N_i D - N D_i) / D^2 so no symbolic quotient is ever formed.
    """

    __slots__ = ("num", "den", "_dn", "_dd")

    def __init__(self, f: RatFun):
        self.num = f.num
        self.den = f.den
        self._dn: dict[int, Poly] = {}
        self._dd: dict[int, Poly] = {}

    def dnum(self, i: int) -> Poly:
        if i not in self._dn:
            self._dn[i] = self.num.derivative(i)
        return self._dn[i]

    def dden(self, i: int) -> Poly:
        if i not in self._dd:
            self._dd[i] = self.den.derivative(i)
        return self._dd[i]

    def ratio_mod(self, a: int, b: int, w, p: int) -> int:
        """(f_a / f_b)(w) mod p; PoleError on any vanishing denominator."""
        dv = self.den.eval_mod(w, p)
        if dv == 0:
            raise PoleError("pole at sample point")
        nv = self.num.eval_mod(w, p)
        pb = (self.dnum(b).eval_mod(w, p) * dv - nv * self.dden(b).eval_mod(w, p)) % p
        if pb == 0:
            raise PoleError("vanishing partial at sample point")
        pa = (self.dnum(a).eval_mod(w, p) * dv - nv * self.dden(a).eval_mod(w, p)) % p
        return pa * pow(pb, p - 2, p) % p

    def logpartial_mod(self, i: int, w, p: int) -> int:
        """(f_i / f)(w) mod p."""
        dv = self.den.eval_mod(w, p)
        nv = self.num.eval_mod(w, p)
        if dv == 0 or nv == 0:
            raise PoleError("degenerate sample point")
        t = (self.dnum(i).eval_mod(w, p) * dv - nv * self.dden(i).eval_mod(w, p)) % p
        return t * pow(dv * nv % p, p - 2, p) % p

    def ratio_value(self, a: int, b: int, w) -> Fraction:
        """(f_a / f_b)(w) over Q."""
        dv = self.den.eval_q(w)
        if dv == 0:
            raise PoleError("pole at sample point")
        nv = self.num.eval_q(w)
        pb = self.dnum(b).eval_q(w) * dv - nv * self.dden(b).eval_q(w)
        if pb == 0:
            raise PoleError("vanishing partial at sample point")
        pa = self.dnum(a).eval_q(w) * dv - nv * self.dden(a).eval_q(w)
        return pa / pb

    def specialized_ratio(self, a: int, b: int, vals: dict[int, Fraction]) -> RatFun:
        """(f_a / f_b) with the variables in vals pinned, exact and reduced."""
        n = self.num.subs_scalars(vals)
        d = self.den.subs_scalars(vals)
        na = self.dnum(a).subs_scalars(vals)
        da = self.dden(a).subs_scalars(vals)
        nb = self.dnum(b).subs_scalars(vals)
        db = self.dden(b).subs_scalars(vals)
        den = nb * d - n * db
        if den.is_zero:
            raise DegenerateSpecializationError("partial ratio degenerates")
        return RatFun(na * d - n * da, den)


def _split_partial_ratio(fn: _Fn, a: int, b: int, X: int, Y: int, rng):
    """Split f_a/f_b into (u(X), v(Y)) by specialization, scale shared.

    u is the ratio on a random X-line and v = H(point)/H on a random Y-line,
    so u/v equals the ratio exactly whenever it is separable; validity for
    a non-separable ratio is *not* checked here -- downstream exact anchors
    (integration, identity checks, certificates) reject those fits.
    """
    arity = fn.num.arity
    for _ in range(_RETRIES):
        vals = {i: Fraction(rng.randrange(2, 98)) for i in range(arity)}
        try:
            u = fn.specialized_ratio(a, b, {i: c for i, c in vals.items() if i != X})
            hy = fn.specialized_ratio(a, b, {i: c for i, c in vals.items() if i != Y})
            point = tuple(vals[i] for i in range(arity))
            h0 = u.eval_q(point)
        except (DegenerateSpecializationError, PoleError, ZeroDivisionError):
            continue
        if h0 == 0 or u.is_zero or hy.is_zero:
            continue
        return u, h0 / hy
    return None


def _gate_ratio_separable(fn: _Fn, a: int, b: int, X: int, Y: int, rng, rounds: int = 2) -> bool:
    """Probe H(X,Y) H(X0,Y0) = H(X,Y0) H(X0,Y) for H = f_a/f_b mod p.

    An unequal residue pair is an exact disproof of separability; `rounds`
    agreeing probes are strong (not absolute) evidence for it.
    """
    p = _GATE_PRIME
    arity = fn.num.arity
    ok = 0
    tries = 0
    while ok < rounds and tries < _RETRIES:
        tries += 1
        w = [rng.randrange(1, p) for _ in range(arity)]
        x0 = rng.randrange(1, p)
        y0 = rng.randrange(1, p)
        wx = list(w)
        wx[X] = x0
        wy = list(w)
        wy[Y] = y0
        wxy = list(wx)
        wxy[Y] = y0
        try:
            v = fn.ratio_mod(a, b, w, p)
            v00 = fn.ratio_mod(a, b, wxy, p)
            vx = fn.ratio_mod(a, b, wx, p)
            vy = fn.ratio_mod(a, b, wy, p)
        except PoleError:
            continue
        if v * v00 % p != vy * vx % p:
            return False
        ok += 1
    return ok == rounds


def _gate_value_indep(valfn, arity: int, var: int, rng, rounds: int = 2) -> bool:
    """Probe that a mod-p value function does not depend on one variable."""
    p = _GATE_PRIME
    ok = 0
    tries = 0
    while ok < rounds and tries < _RETRIES:
        tries += 1
        w = [rng.randrange(1, p) for _ in range(arity)]
        w2 = list(w)
        w2[var] = rng.randrange(1, p)
        if w2[var] == w[var]:
            continue
        try:
            if valfn(w, p) != valfn(w2, p):
                return False
        except PoleError:
            continue
        ok += 1
    return ok == rounds


def _gate_ratio_indep(fn: _Fn, a: int, b: int, var: int, rng, rounds: int = 2) -> bool:
    return _gate_value_indep(
        lambda w, p: fn.ratio_mod(a, b, w, p), fn.num.arity, var, rng, rounds
    )


def _fraction_gcd(vals) -> Fraction:
    """Positive gcd of a nonempty set of rationals (lattice generated by them)."""
    denlcm = 1
    for v in vals:
        denlcm = lcm(denlcm, v.denominator)
    g = 0
    for v in vals:
        g = gcd(g, abs(v.numerator) * (denlcm // v.denominator))
    return Fraction(g, denlcm)


def _joint_logderiv(parts):
    """Integrate each part as a log-derivative after one shared rescaling.

    parts is a list of (candidate c * g_i'/g_i, variable).  The residues of
    every part are pooled and divided by their common rational gcd, which
    removes the shared unknown scale c while keeping the recovered exponent
    vector primitive; each rescaled part must then be a genuine logarithmic
    derivative.  Returns (functions, None) or (None, reason).
    """
    pool = []
    for f, var in parts:
        if f.is_zero:
            return None, "zero-part"
        prof = residue_profile(f, var)
        if not prof.polynomial_part.is_zero:
            return None, "nonzero-poly-part"
        if any(m > 1 for _, m in prof.squarefree_poles):
            return None, "multiple-pole"
        if any(not sp for _, _, sp in prof.residues):
            return None, "non-splitting-factor"
        pool.extend(r for _, r, _ in prof.residues if r != 0)
    if not pool:
        return None, "no-poles"
    scale = _fraction_gcd(pool)
    out = []
    for f, var in parts:
        g, reason = logderiv_integrate(f.scale(1 / scale), var)
        if g is None:
            return None, reason
        out.append(g)
    return out, None


# ---------------------------------------------------------------------------
# bivariate classification
# ---------------------------------------------------------------------------


def fit_bivariate(
    P: RatFun,
    dmax: int | None = None,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
) -> FormReport:
    """Classify a bivariate function: Q(F+G), Q(F*G), or no constraint.

    A bivariate function has a constrained doubling image iff P_x/P_y is
    separable, so an exact four-point failure already certifies
    NoConstraint.  On the separable side the split u = cF', v = cG' (or
    cF'/F, cG'/G) is integrated per branch and the verdict is backed by a
    dependence certificate; a separable function where neither branch
    integrates rationally is reported Unresolved.
    """
    if P.arity != 2:
        raise ValueError("fit_bivariate expects a bivariate function")
    P = P if P.canonical else P.reduce()
    if not is_nondegenerate(P):
        return FormReport("Degenerate", None, None, {"nondegenerate": False})
    diag: dict[str, bool] = {"nondegenerate": True}
    fn = _Fn(P)
    rng = rng_for(seed, "fit-bivariate")

    # Exact four-point separability test at rational points: any failed
    # identity proves H is not separable, hence no algebraic constraint.
    hits = 0
    tries = 0
    separable = True
    while hits < 3 and tries < _RETRIES:
        tries += 1
        w = [Fraction(rng.randrange(3, 1 << 20)) for _ in range(2)]
        x0 = Fraction(rng.randrange(3, 1 << 20))
        y0 = Fraction(rng.randrange(3, 1 << 20))
        try:
            v = fn.ratio_value(0, 1, w)
            v00 = fn.ratio_value(0, 1, (x0, y0))
            vx = fn.ratio_value(0, 1, (x0, w[1]))
            vy = fn.ratio_value(0, 1, (w[0], y0))
        except PoleError:
            continue
        if v * v00 != vy * vx:
            separable = False
            break
        hits += 1
    if not separable:
        diag["separable"] = False
        return FormReport("NoConstraint", None, None, diag)

    # Recover the split and verify H = u/v exactly before integrating.
    pair = None
    hn = fn.dnum(0) * fn.den - fn.num * fn.dden(0)
    hd = fn.dnum(1) * fn.den - fn.num * fn.dden(1)
    for _ in range(8):
        got = _split_partial_ratio(fn, 0, 1, 0, 1, rng)
        if got is None:
            break
        u, v = got
        if (hn * (u.den * v.num) - hd * (u.num * v.den)).is_zero:
            pair = got
            break
    if pair is None:
        diag["separability_verified"] = False
        return FormReport("Unresolved", None, None, diag)
    diag["separable"] = True
    u, v = pair

    F = hermite_antiderivative(u, 0)
    G = hermite_antiderivative(v, 1)
    if F is not None and G is not None:
        s = F + G
        cert = dependence_certificate(P, s, dmax=dmax, primes=primes, seed=seed)
        if cert is not None:
            diag["additive"] = True
            return FormReport("GroupAdditive", {"F": F, "G": G, "s": s}, cert, diag)
        diag["additive_certificate"] = False
    else:
        diag["additive_integrable"] = False

    parts, reason = _joint_logderiv([(u, 0), (v, 1)])
    if parts is not None:
        F, G = parts
        s = F * G
        cert = dependence_certificate(P, s, dmax=dmax, primes=primes, seed=seed)
        if cert is not None:
            diag["multiplicative"] = True
            return FormReport("GroupMultiplicative", {"F": F, "G": G, "s": s}, cert, diag)
        diag["multiplicative_certificate"] = False
    else:
        diag[f"multiplicative_{reason}"] = False
    return FormReport("Unresolved", None, None, diag)


# ---------------------------------------------------------------------------
# trivariate fitters
# ---------------------------------------------------------------------------


def test_2decomposed(P: RatFun) -> tuple[bool, dict[str, bool]]:
    """Exact separability of every partial ratio P_a/P_b, with detail.

    For each variable pair the doubled-variable identity is checked as an
    exact polynomial identity in five variables; the function is
    2-decomposed iff all three hold.
    """
    if P.arity != 3:
        raise ValueError("test_2decomposed expects a trivariate function")
    detail: dict[str, bool] = {}
    out = True
    for a, b in ((0, 1), (0, 2), (1, 2)):
        H = partial_ratio(P, a, b, reduce=False)
        ok = separability_identity(H, (a,), (b,))
        detail[f"2dec_{_VN[a]}{_VN[b]}"] = ok
        out = out and ok
    return out, detail


def _decomposed_detail(P: RatFun, seed: int) -> tuple[bool, dict[str, bool]]:
    """test_2decomposed, or its sampled analogue when P is too large."""
    if len(P.num.terms) + len(P.den.terms) <= 60:
        return test_2decomposed(P)
    fn = _Fn(P)
    detail: dict[str, bool] = {}
    out = True
    for a, b in ((0, 1), (0, 2), (1, 2)):
        rng = rng_for(seed, f"2dec:{a}{b}")
        ok = _gate_ratio_separable(fn, a, b, a, b, rng)
        detail[f"2dec_{_VN[a]}{_VN[b]}"] = ok
        out = out and ok
    return out, detail


def fit_group(
    P: RatFun,
    dmax: int | None = None,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
    diagnostics: dict[str, bool] | None = None,
) -> GroupFit | None:
    """Fit P = Q(r1 + r2 + r3) or Q(r1 * r2 * r3), certificate included.

    Every partial ratio of such a P is separable and free of the third
    variable; the splits of P_x/P_y and P_y/P_z share the middle part r2',
    which pins all three derivative parts to one common scale.  The additive
    branch integrates them directly, the multiplicative branch integrates
    them as log-derivatives after the shared residue rescaling.
    """
    diag = diagnostics if diagnostics is not None else {}
    fn = _Fn(P)
    rng = rng_for(seed, "fit-group")
    for a, b, c in ((0, 1, 2), (1, 2, 0), (0, 2, 1)):
        if not _gate_ratio_separable(fn, a, b, a, b, rng):
            diag[f"group_sep_{_VN[a]}{_VN[b]}"] = False
            return None
        if not _gate_ratio_indep(fn, a, b, c, rng):
            diag[f"group_indep_{_VN[a]}{_VN[b]}"] = False
            return None
    pair1 = _split_partial_ratio(fn, 0, 1, 0, 1, rng)
    pair2 = _split_partial_ratio(fn, 1, 2, 1, 2, rng)
    if pair1 is None or pair2 is None:
        diag["group_split"] = False
        return None
    u1, v1 = pair1  # c1*r1'(x), c1*r2'(y)
    u2, v2 = pair2  # c2*r2'(y), c2*r3'(z)
    try:
        mu = u2 / v1
    except ZeroDivisionError:
        diag["group_split"] = False
        return None
    if not mu.is_constant or mu.constant_value() == 0:
        diag["group_scale_consistent"] = False
        return None
    parts = (u1, v1, v2.scale(1 / mu.constant_value()))

    try:
        rs = [hermite_antiderivative(parts[k], k) for k in range(3)]
    except (ValueError, ZeroDivisionError):
        rs = [None]
    if all(r is not None for r in rs):
        s = rs[0] + rs[1] + rs[2]
        cert = dependence_certificate(P, s, dmax=dmax, primes=primes, seed=seed)
        if cert is not None:
            diag["group_additive"] = True
            return GroupFit("GroupAdditive", rs[0], rs[1], rs[2], s, cert)
        diag["group_additive_certificate"] = False
    else:
        diag["group_additive_integrable"] = False

    try:
        rs, reason = _joint_logderiv([(parts[k], k) for k in range(3)])
    except (ValueError, ZeroDivisionError):
        rs, reason = None, "profile-error"
    if rs is not None:
        s = rs[0] * rs[1] * rs[2]
        cert = dependence_certificate(P, s, dmax=dmax, primes=primes, seed=seed)
        if cert is not None:
            diag["group_multiplicative"] = True
            return GroupFit("GroupMultiplicative", rs[0], rs[1], rs[2], s, cert)
        diag["group_multiplicative_certificate"] = False
    else:
        diag[f"group_multiplicative_{reason}"] = False
    return None


def _solve_beta(fn: _Fn, i: int, j: int, uj: RatFun, B0: RatFun, rng) -> Fraction | None:
    """Constant beta making M/(B0 + beta) free of x_j, M = P_i * r_j' / P_j.

    Two points on an x_j-line give one linear equation for beta; a second
    independent line must reproduce the same value, otherwise no constant
    works and the pivot is rejected.
    """
    found = []
    tries = 0
    while len(found) < 2 and tries < _RETRIES:
        tries += 1
        w = tuple(Fraction(rng.randrange(3, 1 << 20)) for _ in range(3))
        w2 = list(w)
        w2[j] = Fraction(rng.randrange(3, 1 << 20))
        w2 = tuple(w2)
        if w2[j] == w[j]:
            continue
        try:
            m1 = fn.ratio_value(i, j, w) * uj.eval_q(w)
            m2 = fn.ratio_value(i, j, w2) * uj.eval_q(w2)
            b1 = B0.eval_q(w)
            b2 = B0.eval_q(w2)
        except (PoleError, ZeroDivisionError):
            continue
        if m1 == m2:
            continue
        found.append((m1 * b2 - m2 * b1) / (m2 - m1))
    if len(found) < 2 or found[0] != found[1]:
        return None
    return found[0]


def fit_field(
    P: RatFun,
    dmax: int | None = None,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
    diagnostics: dict[str, bool] | None = None,
) -> FieldFit | None:
    """Fit P = Q(r_i * (r_j + r_l)^n) over the three pivot choices.

    For the correct pivot x_i, the ratio P_j/P_l = r_j'/r_l' recovers the
    inner sum B = r_j + r_l up to scale and shift; the shift comes from the
    constancy of M * r_j'/M_j - B0 with M = P_i * r_j' / P_j, the exponent n
    from the denominators of the residues of K = M/(B0+beta) = r_i'/(n r_i),
    and r_i from integrating n*K as a log-derivative.
    """
    diag = diagnostics if diagnostics is not None else {}
    fn = _Fn(P)
    deg_cap = 2 * max(1, P.total_degree())
    for i in range(3):
        j, l = (t for t in range(3) if t != i)
        tag = f"field_pivot_{_VN[i]}"
        rng = rng_for(seed, f"fit-field:{i}")
        if not (_gate_ratio_separable(fn, j, l, j, l, rng)
                and _gate_ratio_indep(fn, j, l, i, rng)):
            diag[f"{tag}_gates"] = False
            continue
        pair = _split_partial_ratio(fn, j, l, j, l, rng)
        if pair is None:
            diag[f"{tag}_split"] = False
            continue
        uj, vl = pair
        try:
            rj = hermite_antiderivative(uj, j)
            rl = hermite_antiderivative(vl, l)
        except (ValueError, ZeroDivisionError):
            rj = rl = None
        if rj is None or rl is None:
            diag[f"{tag}_integrable"] = False
            continue
        B0 = rj + rl
        beta = _solve_beta(fn, i, j, uj, B0, rng)
        if beta is None:
            diag[f"{tag}_shift"] = False
            continue
        Bc = B0 + beta

        def kval(w, p, _bc=Bc, _uj=uj, _i=i, _j=j):
            t = fn.ratio_mod(_i, _j, w, p) * _uj.eval_mod(w, p) % p
            bv = _bc.eval_mod(w, p)
            if bv == 0:
                raise PoleError("inner sum vanishes at sample point")
            return t * pow(bv, p - 2, p) % p

        if not (_gate_value_indep(kval, 3, j, rng) and _gate_value_indep(kval, 3, l, rng)):
            diag[f"{tag}_pivot_ratio_independent"] = False
            continue
        khat = None
        for _ in range(_RETRIES):
            cj = Fraction(rng.randrange(2, 98))
            cl = Fraction(rng.randrange(2, 98))
            point = [Fraction(1)] * 3
            point[j], point[l] = cj, cl
            try:
                base = fn.specialized_ratio(i, j, {j: cj, l: cl})
                ujv = uj.eval_q(tuple(point))
                bv = Bc.eval_q(tuple(point))
            except (DegenerateSpecializationError, PoleError, ZeroDivisionError):
                continue
            if ujv == 0 or bv == 0:
                continue
            khat = base.scale(ujv / bv)
            break
        if khat is None or khat.is_zero:
            diag[f"{tag}_pivot_ratio"] = False
            continue
        try:
            prof = residue_profile(khat, i)
        except (ValueError, ZeroDivisionError):
            diag[f"{tag}_pivot_ratio"] = False
            continue
        if not prof.polynomial_part.is_zero:
            diag[f"{tag}_proper"] = False
            continue
        if any(m > 1 for _, m in prof.squarefree_poles):
            diag[f"{tag}_simple_poles"] = False
            continue
        if any(not sp for _, _, sp in prof.residues):
            diag[f"{tag}_residues_split"] = False
            continue
        res = [r for _, r, _ in prof.residues if r != 0]
        if not res:
            diag[f"{tag}_pivot_ratio"] = False
            continue
        n = 1
        for r in res:
            n = lcm(n, r.denominator)
        if n > deg_cap:
            diag[f"{tag}_exponent_bound"] = False
            continue
        ri, reason = logderiv_integrate(khat.scale(n), i)
        if ri is None:
            diag[f"{tag}_{reason}"] = False
            continue
        s = ri * Bc ** n
        cert = dependence_certificate(P, s, dmax=dmax, primes=primes, seed=seed)
        if cert is None:
            diag[f"{tag}_certificate"] = False
            continue
        diag[tag] = True
        rr: list[RatFun] = [None, None, None]  # type: ignore[list-item]
        rr[i], rr[j], rr[l] = ri, rj, rl
        return FieldFit(i + 1, n, rr[0], rr[1], rr[2], s, cert)
    return None


def _twisted_recover(P, TN, TD, fnT, rng, name, dmax, primes, seed):
    """Recover (r1, r2, r3) from T = (r1+r2)/(r2+r3) and certify, or None.

    Writing W = T/T_x = (r1+r2)/r1', the y-derivative of W is r2'/r1' with
    the variables separated; specializations of W then yield r1' and r2' at
    one shared scale, and the z-side quotient of 1/G2 = -(r2+r3)/r3' yields
    r3' at that same scale.  The additive constants are fixed by evaluating
    W and 1/G2 on specialized lines, and T = (r1+r2)/(r2+r3) is re-checked
    as an exact polynomial identity before certification.
    """
    TNx, TDx = TN.derivative(0), TD.derivative(0)
    TNz, TDz = TN.derivative(2), TD.derivative(2)
    for _ in range(8):
        cx, cy, cz = (Fraction(rng.randrange(2, 98)) for _ in range(3))
        try:
            # u(y) = d/dy [T/T_x] on the line x=cx, z=cz.
            vxz = {0: cx, 2: cz}
            n_, d_ = TN.subs_scalars(vxz), TD.subs_scalars(vxz)
            wden = TNx.subs_scalars(vxz) * d_ - n_ * TDx.subs_scalars(vxz)
            if wden.is_zero:
                continue
            u = RatFun(n_ * d_, wden).partial(1)
            if u.is_zero:
                continue
            # v(x) = u(cy) / (d/dy [T/T_x])|y=cy on the plane z=cz.
            vz = {2: cz}
            nb, db = TN.subs_scalars(vz), TD.subs_scalars(vz)
            wdb = TNx.subs_scalars(vz) * db - nb * TDx.subs_scalars(vz)
            if wdb.is_zero:
                continue
            wyb = RatFun(nb * db, wdb).partial(1)
            u0 = u.subs_scalars({1: cy}).constant_value()
            vline = wyb.subs_scalars({1: cy})
            if u0 == 0 or vline.is_zero:
                continue
            v = u0 / vline
            r2 = hermite_antiderivative(u, 1)
            if r2 is None:
                return None
            r2cy = r2.subs_scalars({1: cy}).constant_value()
            # r1(x) = W|y=cy,z=cz * v - r2(cy).
            vyz = {1: cy, 2: cz}
            n2, d2 = TN.subs_scalars(vyz), TD.subs_scalars(vyz)
            wd2 = TNx.subs_scalars(vyz) * d2 - n2 * TDx.subs_scalars(vyz)
            if wd2.is_zero:
                continue
            r1 = RatFun(n2 * d2, wd2) * v - r2cy
            # z side: V = (T/T_z)|x=cx = -(r2+r3)/r3', r3' = -u / dV/dy.
            vx = {0: cx}
            n3, d3 = TN.subs_scalars(vx), TD.subs_scalars(vx)
            vd3 = TNz.subs_scalars(vx) * d3 - n3 * TDz.subs_scalars(vx)
            if vd3.is_zero:
                continue
            V = RatFun(n3 * d3, vd3)
            dy = V.partial(1)
            if dy.is_zero:
                continue
            r3p = -(u / dy)
            if not r3p.independent_of(1):
                continue
            r3 = -(V.subs_scalars({1: cy}) * r3p) - r2cy
        except (DegenerateSpecializationError, PoleError, ZeroDivisionError, ValueError):
            continue
        s1, s2 = r1 + r2, r2 + r3
        if s2.is_zero:
            continue
        if not (TN * (s1.den * s2.num) - TD * (s1.num * s2.den)).is_zero:
            continue
        shat = s1 / s2
        cert = dependence_certificate(P, shat, dmax=dmax, primes=primes, seed=seed)
        if cert is None:
            return None
        return TwistedFit(r1, r2, r3, shat, cert, name)
    return None


def fit_twisted(
    P: RatFun,
    dmax: int | None = None,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
    diagnostics: dict[str, bool] | None = None,
) -> TwistedFit | None:
    """Fit m(P) = (r1(x) + r2(y)) / (r2(y) + r3(z)) over the Mobius schedule.

    For each normalization T = m(P) the gates check that T_x/T is free of z
    and T_z/T is free of x (both exact properties of the twisted shape);
    passing normalizations go to the full recovery, whose result must
    reproduce T exactly and certify against P.
    """
    diag = diagnostics if diagnostics is not None else {}
    N, D = P.num, P.den
    gates_passed = False
    for name, (a, b, c, d) in MOBIUS_SCHEDULE:
        TN = N * a + D * b
        TD = N * c + D * d
        if TN.is_zero or TD.is_zero:
            continue
        fnT = _Fn(RatFun.raw(TN, TD))
        rng = rng_for(seed, f"fit-twisted:{name}")
        if not _gate_value_indep(lambda w, p: fnT.logpartial_mod(0, w, p), 3, 2, rng):
            continue
        if not _gate_value_indep(lambda w, p: fnT.logpartial_mod(2, w, p), 3, 0, rng):
            continue
        gates_passed = True
        fit = _twisted_recover(P, TN, TD, fnT, rng, name, dmax, primes, seed)
        if fit is not None:
            diag["twisted"] = True
            return fit
    diag["twisted_gates"] = gates_passed
    return None


def verify_twisted_identities(
    P: RatFun,
    r1: RatFun,
    r2: RatFun,
    r3: RatFun,
    trials: int = 100,
    seed: int = 0,
) -> bool:
    """Spot-check the three value-cube identities of the fitted twisted form.

    Builds s = (r1+r2)/(r2+r3) and requires all three cube identities of
    cube_identities to hold at `trials` exact random integer cubes.  P is
    accepted alongside the parts for signature symmetry with the fitters
    but the identities are properties of s alone.
    """
    del P
    s = (r1 + r2) / (r2 + r3)
    return all(cube_identities(s, trials=trials, seed=seed))


def cube_identities(f: RatFun, trials: int = 20, seed: int = 0) -> tuple[bool, bool, bool]:
    """Exact cube-identity checks on f over random integer cubes.

    With t_ijk = f(u_i, v_j, w_k) over a random 2x2x2 cube, the twisted
    form satisfies (1) t211/t111 = t212/t112, (2) (t211-1)/(t111-1) =
    (t221-1)/(t121-1), and (3) the reciprocal variant of (2) in the last
    coordinate.  Each returned flag is the AND over all sampled cubes;
    degenerate cubes (poles or vanishing inner denominators) are resampled.
    """
    if f.arity != 3:
        raise ValueError("cube identities require a trivariate function")
    rng = rng_for(seed, "twisted-cubes")
    flags = [True, True, True]
    done = 0
    tries = 0
    while done < trials and tries < _RETRIES * max(1, trials):
        tries += 1
        us = [Fraction(rng.randrange(1, 10 ** 6 + 1)) for _ in range(2)]
        vs = [Fraction(rng.randrange(1, 10 ** 6 + 1)) for _ in range(2)]
        ws = [Fraction(rng.randrange(1, 10 ** 6 + 1)) for _ in range(2)]
        try:
            t = {(i, j, k): f.eval_q((us[i], vs[j], ws[k]))
                 for i in (0, 1) for j in (0, 1) for k in (0, 1)}
        except PoleError:
            continue
        t111, t211 = t[0, 0, 0], t[1, 0, 0]
        t112, t212 = t[0, 0, 1], t[1, 0, 1]
        t121, t221 = t[0, 1, 0], t[1, 1, 0]
        t122 = t[0, 1, 1]
        if 0 in (t111, t112, t121, t122) or 1 in (t111, t121):
            continue
        flags[0] = flags[0] and t211 / t111 == t212 / t112
        flags[1] = flags[1] and (t211 - 1) / (t111 - 1) == (t221 - 1) / (t121 - 1)
        flags[2] = flags[2] and (
            (1 / t112 - 1) / (1 / t111 - 1) == (1 / t122 - 1) / (1 / t121 - 1)
        )
        done += 1
        if not any(flags):
            break
    if done == 0:
        raise DegenerateSpecializationError("no usable cube found for identity checks")
    return flags[0], flags[1], flags[2]


def fit_polynomial_composition(
    P: RatFun, s: RatFun, degree_cap: int | None = None
) -> Poly | None:
    """Experimental probe: univariate polynomial u with P = u(s), or None.

    Interpolates u from exact rational samples with distinct s-values and
    accepts only if P - u(s) expands to the exact zero function.  Used to
    probe the conjectured polynomial-composition shape of 2-decomposed
    polynomials; a None carries no claim in either direction.
    """
    if P.arity != s.arity:
        raise ValueError("P and s must share one ambient variable list")
    if s.is_constant:
        return None
    sd = max(1, s.total_degree())
    cap = degree_cap if degree_cap is not None else max(1, P.total_degree() // sd)
    rng = rng_for(0, "conjecture-probe")
    pts: list[tuple[Fraction, Fraction]] = []
    seen: set[Fraction] = set()
    tries = 0
    while len(pts) < cap + 1 and tries < _RETRIES * (cap + 1):
        tries += 1
        w = tuple(Fraction(rng.randrange(2, 10 ** 4)) for _ in range(P.arity))
        try:
            sv = s.eval_q(w)
            pv = P.eval_q(w)
        except PoleError:
            continue
        if sv in seen:
            continue
        seen.add(sv)
        pts.append((sv, pv))
    if len(pts) < cap + 1:
        return None
    # Newton divided differences, then expansion to monomial coefficients.
    xs = [a for a, _ in pts]
    dd = [b for _, b in pts]
    for k in range(1, len(pts)):
        for i in range(len(pts) - 1, k - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k])
    coeffs = [Fraction(0)] * len(pts)
    for k in range(len(pts) - 1, -1, -1):
        for i in range(len(pts) - 1, 0, -1):
            coeffs[i] = coeffs[i - 1] - xs[k] * coeffs[i]
        coeffs[0] = dd[k] - xs[k] * coeffs[0]
    u_terms = {(k,): c for k, c in enumerate(coeffs) if c != 0}
    if not u_terms:
        return None
    u = Poly(u_terms, 1)
    relation = {(1, 0): Fraction(1)}
    for k, c in enumerate(coeffs):
        if c != 0:
            relation[(0, k)] = relation.get((0, k), Fraction(0)) - c
    A = Poly({e: c for e, c in relation.items() if c != 0}, 2)
    if not compose_numerator(A, [P, s]).is_zero:
        return None
    return u


# ---------------------------------------------------------------------------
# trivariate pipeline
# ---------------------------------------------------------------------------


def classify_trivariate(
    P: RatFun,
    dmax: int | None = None,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    samples: int = 16,
    seed: int = 0,
    dim: int | None = None,
) -> FormReport:
    """Full trivariate pipeline: degeneracy, canonical fits, dimension.

    The fitters run first (group, then field, then twisted); any certified
    fit already proves the constraint, so the image dimension is only
    measured when no form certifies, to separate NoConstraint (dimension 6)
    from a partial constraint (5) or an unrecognized full constraint (4).
    Pass dim to reuse an already-measured image dimension.
    """
    if P.arity != 3:
        raise ValueError("classify_trivariate expects a trivariate function")
    P = P if P.canonical else P.reduce()
    if not is_nondegenerate(P):
        return FormReport("Degenerate", None, None, {"nondegenerate": False})
    diag: dict[str, bool] = {"nondegenerate": True}

    gf = fit_group(P, dmax=dmax, primes=primes, seed=seed, diagnostics=diag)
    if gf is not None:
        fitted = {"r1": gf.r1, "r2": gf.r2, "r3": gf.r3, "s": gf.s}
        return FormReport(gf.verdict, fitted, gf.certificate, diag)
    ff = fit_field(P, dmax=dmax, primes=primes, seed=seed, diagnostics=diag)
    if ff is not None:
        fitted = {"r1": ff.r1, "r2": ff.r2, "r3": ff.r3, "s": ff.s}
        return FormReport("Field", fitted, ff.certificate, diag,
                          pivot=ff.pivot, exponent=ff.exponent)
    tf = fit_twisted(P, dmax=dmax, primes=primes, seed=seed, diagnostics=diag)
    if tf is not None:
        diag["twisted_cube_identities"] = verify_twisted_identities(
            P, tf.r1, tf.r2, tf.r3, trials=8, seed=seed
        )
        fitted = {"r1": tf.r1, "r2": tf.r2, "r3": tf.r3, "s": tf.s}
        return FormReport("Twisted", fitted, tf.certificate, diag)

    d = dim if dim is not None else image_dimension(P, primes=primes, samples=samples, seed=seed)
    diag["constraint"] = d < 6
    if d >= 6:
        return FormReport("NoConstraint", None, None, diag)
    if d == 5:
        diag["partial_constraint_dim5"] = True
        return FormReport("Unresolved", None, None, diag)
    two, detail = _decomposed_detail(P, seed)
    diag.update(detail)
    diag["2decomposed"] = two
    return FormReport("Unresolved", None, None, diag)
