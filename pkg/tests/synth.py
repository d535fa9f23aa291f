"""Deterministic generators of canonical-form instances for the test suite.

Every generator takes a seeded random.Random so corpora are reproducible.
Trivariate instances are built exactly as the canonical forms prescribe: a
form s0 in splitting univariate parts, wrapped in a Mobius map from the
fitter's schedule.  Frozen handwritten lists cover the cases that must not
depend on generator luck.
"""

from __future__ import annotations

import random
from fractions import Fraction

from ratforms.classify import MOBIUS_SCHEDULE
from ratforms.ratfun import RatFun

TRI = ("x", "y", "z")
BI = ("x", "y")


def apply_mobius(s0: RatFun, coeffs: tuple[int, int, int, int]) -> RatFun:
    a, b, c, d = coeffs
    return (s0 * a + b) / (s0 * c + d)


def pick_mobius(rng: random.Random) -> tuple[str, tuple[int, int, int, int]]:
    return MOBIUS_SCHEDULE[rng.randrange(len(MOBIUS_SCHEDULE))]


def nonzero_int(rng: random.Random, hi: int = 6) -> int:
    v = 0
    while v == 0:
        v = rng.randint(-hi, hi)
    return v


def splitting_part(
    rng: random.Random, var: int, arity: int = 3, max_deg: int = 3
) -> RatFun:
    """Univariate polynomial part that splits over Q: distinct linear factors.

    Simple roots keep every factor multiplicity 1, so the exponent recovery
    of the field fitter is never blocked by a shared multiplicity.
    """
    deg = rng.randint(1, max_deg)
    roots: set[Fraction] = set()
    while len(roots) < deg:
        roots.add(Fraction(rng.randint(-9, 9), rng.choice((1, 1, 2, 3))))
    x = RatFun.variable(var, arity)
    part = RatFun.const(Fraction(nonzero_int(rng), rng.choice((1, 2))), arity)
    for root in sorted(roots):
        part = part * (x - root)
    return part


def dense_poly_part(
    rng: random.Random, var: int, arity: int = 3, max_deg: int = 3
) -> RatFun:
    """Univariate polynomial part with dense random coefficients."""
    deg = rng.randint(1, max_deg)
    x = RatFun.variable(var, arity)
    part = RatFun.const(rng.randint(-9, 9), arity)
    for k in range(1, deg):
        part = part + x**k * rng.randint(-9, 9)
    return part + x**deg * nonzero_int(rng, 9)


def make_additive(rng: random.Random) -> RatFun:
    """q(r1(x) + r2(y) + r3(z)) with q in the Mobius schedule."""
    s0 = sum((splitting_part(rng, i) for i in range(1, 3)), splitting_part(rng, 0))
    return apply_mobius(s0, pick_mobius(rng)[1])


def make_multiplicative(rng: random.Random) -> RatFun:
    """q(r1(x) * r2(y) * r3(z)) with q in the Mobius schedule."""
    s0 = splitting_part(rng, 0) * splitting_part(rng, 1) * splitting_part(rng, 2)
    return apply_mobius(s0, pick_mobius(rng)[1])


def make_field(rng: random.Random) -> tuple[RatFun, int]:
    """q(r1(x) * (r2(y) + r3(z))^n) with n <= 5 and q in the schedule."""
    n = rng.randint(1, 5)
    s0 = splitting_part(rng, 0) * (splitting_part(rng, 1) + splitting_part(rng, 2)) ** n
    return apply_mobius(s0, pick_mobius(rng)[1]), n


def make_twisted(rng: random.Random) -> RatFun:
    """q((r1(x) + r2(y)) / (r2(y) + r3(z))) with q in the schedule."""
    r1 = splitting_part(rng, 0)
    r2 = splitting_part(rng, 1)
    r3 = splitting_part(rng, 2)
    s0 = (r1 + r2) / (r2 + r3)
    return apply_mobius(s0, pick_mobius(rng)[1])


def make_twisted_form(rng: random.Random) -> RatFun:
    """Bare twisted form (r1+r2)/(r2+r3) with dense random parts, no wrap."""
    r1 = dense_poly_part(rng, 0)
    r2 = dense_poly_part(rng, 1)
    r3 = dense_poly_part(rng, 2)
    if (r1 + r2).is_zero or (r2 + r3).is_zero:
        return make_twisted_form(rng)
    return (r1 + r2) / (r2 + r3)


def make_bivariate_additive(rng: random.Random) -> RatFun:
    """q(F(x) + G(y)) with splitting F, G and q in the schedule."""
    s0 = splitting_part(rng, 0, arity=2) + splitting_part(rng, 1, arity=2)
    return apply_mobius(s0, pick_mobius(rng)[1])


def make_bivariate_multiplicative(rng: random.Random) -> RatFun:
    """q(F(x) * G(y)) with splitting F, G and q in the schedule."""
    s0 = splitting_part(rng, 0, arity=2) * splitting_part(rng, 1, arity=2)
    return apply_mobius(s0, pick_mobius(rng)[1])


# Non-twisted trivariate functions on which cube identity (1) must fail:
# each couples x to z additively somewhere, so f(x2,y,z)/f(x1,y,z) genuinely
# depends on z.
NON_TWISTED = (
    "x + y + z",
    "(x + y + z)^2",
    "x + y + z + x^2*y^2*z^2",
    "x*y + z",
    "x + y*z",
    "x^2 + y^2 + z^2",
    "x + y + z^3",
    "x*y + z*y + x",
    "(x + z)/(1 + y)",
    "x + z + x*y*z",
)

# Handwritten 2-decomposed trivariate functions (all three partial ratios
# separable) with their expected classification.
HANDWRITTEN_2DEC = (
    ("x + y + z", "GroupAdditive"),
    ("x*y*z", "GroupMultiplicative"),
    ("(x + y)/(y + z)", "Twisted"),
    ("x*(y + z)^2", "Field"),
    ("(x + y + z)^2", "GroupAdditive"),
    ("1/(x*y*z)", "GroupMultiplicative"),
    ("x^2*(y^3 + z)^5", "Field"),
    ("(x*y*z - 1)/(x*y*z + 1)", "GroupMultiplicative"),
    ("(x + y + z)/(x + y + z + 1)", "GroupAdditive"),
    ("((x^2 + 1)*(y^2 + 1)*(z^2 + 1))^2", "Unresolved"),
)

# Bivariate functions with no algebraic constraint (image dimension 4):
# P_x/P_y fails the exact separability identity for each.
UNCONSTRAINED_BIVARIATE = (
    "x + y + x^2*y^3",
    "x + y^2 + x^3*y",
    "x^2 + y + x*y^3",
    "x + y + x^2*y^2 + x^3*y",
    "x*y + x + y^2 + x^2*y^3",
    "(x + y^2)/(y + x^2)",
    "x^3 + y^3 + x*y^2",
    "x + y + x*y + x^2*y^3",
    "x^2*y + x*y^3 + y",
    "(x + y)/(1 + x*y^2) + x",
)

# Rank-agreement corpus: total degree <= 4, mixed arity, mixed structure.
RANK_CORPUS_BI = (
    "x + y",
    "x*y",
    "x - y",
    "x/y",
    "x + y^2",
    "x^2 + y^2",
    "x*y + 1",
    "(x + y)^2",
    "x^2*y^2",
    "x + y + x*y",
    "x + y + x^2*y^2",
    "x + y + x^3*y",
    "x + y + x^2*y^3 - x^2*y^3",  # reduces to x + y
    "1/(x + y)",
    "(x - y)/(x + y)",
    "x^2/y",
    "x + 1/y",
    "x^2*y + x*y^2",
)

RANK_CORPUS_TRI = (
    "x + y + z",
    "x*y*z",
    "(x + y)/(y + z)",
    "x + y + z^2",
    "x*y + z",
    "x + y*z",
    "(x + y + z)^2",
    "x*(y + z)^2",
    "x^2 + y^2 + z^2",
    "1/(x + y + z)",
    "x + 2*y + 3*z",
    "x*y + y*z",
    "(x + z)/(1 + y)",
    "x + y + z + x*y*z",
    "x^2*y*z",
    "x/(y*z)",
    "x*y*z + x + 1",
    "(x*y + z)^2",
)
