"""Independent cross-checks: symbolic rank and annihilating polynomials.

These deliberately avoid the evaluation strategy of the main pipeline.
symbolic_rank eliminates the *symbolic* Jacobian with fraction-free
Bareiss steps, so its answer is exact and shares no randomness with
generic_rank.  annihilating_poly searches for an exact polynomial
relation among given functions; every returned relation is verified by
exact composition, never by sampling alone.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .modular import (
    DEFAULT_PRIMES,
    crt_pair,
    nullspace_vector_mod,
    primes_below,
    rational_reconstruct,
    rng_for,
)
from .poly import Poly, divexact, grlex_key
from .ratfun import PoleError, RatFun, compose_numerator
from .dimension import DoublingMap

MAX_ORACLE_DEGREE = 6
_POINT_RETRIES = 64


class OracleGuardError(ValueError):
    """Input outside the size range the exact oracle is willing to handle."""


def symbolic_rank(dm: DoublingMap) -> int:
    """Exact generic rank of the doubling-map Jacobian.

    Row b of the Jacobian, scaled by its own squared denominator (a
    nonzero function, so rank is preserved), has polynomial entries
    (N_i' D - N D_i') renamed through the copy pattern of b.  Bareiss
    fraction-free elimination with full pivoting then counts pivots; all
    divisions are exact, so the count is the true rank over Q(x).
    """
    f = dm.f
    if f.total_degree() > MAX_ORACLE_DEGREE:
        raise OracleGuardError(
            f"symbolic rank limited to total degree {MAX_ORACLE_DEGREE}"
        )
    n = dm.n
    m = 2 * n
    num, den = f.num, f.den
    cleared = [
        num.derivative(i) * den - num * den.derivative(i) for i in range(n)
    ]
    rows: list[list[Poly]] = []
    for b in range(1 << n):
        mapping = tuple(i + n * ((b >> i) & 1) for i in range(n))
        row = [Poly.zero(m)] * m
        for i in range(n):
            row[mapping[i]] = cleared[i].embed(m, mapping)
        rows.append(row)

    rank = 0
    prev = Poly.const(1, m)
    nrows, ncols = len(rows), m
    k = 0
    while k < min(nrows, ncols):
        pivot = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                e = rows[i][j]
                if not e.is_zero:
                    if pivot is None or len(e.terms) < len(rows[pivot[0]][pivot[1]].terms):
                        pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        rows[k], rows[pi] = rows[pi], rows[k]
        if pj != k:
            for r in rows:
                r[k], r[pj] = r[pj], r[k]
        piv = rows[k][k]
        for i in range(k + 1, nrows):
            rik = rows[i][k]
            for j in range(k + 1, ncols):
                t = rows[i][j] * piv - rik * rows[k][j]
                rows[i][j] = t if prev.is_constant and prev.constant_value() == 1 else divexact(t, prev)
            rows[i][k] = Poly.zero(m)
        prev = piv
        rank += 1
        k += 1
    return rank


# ---------------------------------------------------------------------------
# annihilating polynomial search
# ---------------------------------------------------------------------------


def _monomials(k: int, d: int) -> list[tuple[int, ...]]:
    out = [e for e in itertools.product(range(d + 1), repeat=k) if sum(e) <= d]
    out.sort(key=grlex_key)
    return out


def _sample_rows(fs, monos, d, count, p, rng):
    """Evaluation matrix of the monomials f^a at `count` pole-free points."""
    k = len(fs)
    arity = fs[0].arity
    rows = []
    for _ in range(count):
        for _try in range(_POINT_RETRIES):
            w = tuple(rng.randrange(1, p) for _ in range(arity))
            try:
                vals = [f.eval_mod(w, p) for f in fs]
            except PoleError:
                continue
            break
        else:
            return None
        pows = [[1] * (d + 1) for _ in range(k)]
        for i in range(k):
            for e in range(1, d + 1):
                pows[i][e] = pows[i][e - 1] * vals[i] % p
        rows.append([_prod_mod(pows, a, p) for a in monos])
    return rows


def _prod_mod(pows, a, p):
    v = 1
    for i, e in enumerate(a):
        if e:
            v = v * pows[i][e] % p
    return v


def _normalize_coeffs(vec: list[Fraction], monos) -> dict | None:
    """Integer-primitive coefficients with positive leading (grlex) sign."""
    support = [(a, c) for a, c in zip(monos, vec) if c]
    if not support:
        return None
    from math import gcd, lcm

    den = lcm(*(c.denominator for _, c in support))
    ints = [(a, int(c * den)) for a, c in support]
    g = 0
    for _, c in ints:
        g = gcd(g, c)
    ints = [(a, c // g) for a, c in ints]
    # sign convention: positive coefficient on the lex-greatest monomial,
    # first slot dominant (so relations read "p ... = ...")
    lead = max(ints, key=lambda t: t[0])
    if lead[1] < 0:
        ints = [(a, -c) for a, c in ints]
    return dict(ints)


def annihilating_poly(
    fs: list[RatFun],
    dmax: int,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    seed: int = 0,
) -> Poly | None:
    """Lowest-degree polynomial relation A with A(f_1,...,f_k) = 0, or None.

    Degrees are tried incrementally.  Candidate relations come from the
    nullspace of a modular evaluation matrix, are lifted to Q by CRT plus
    rational reconstruction, and count only if exact composition vanishes
    identically.  A full-rank evaluation matrix modulo any prime is an
    exact proof that no relation of that degree exists.
    """
    k = len(fs)
    if not 2 <= k <= 8:
        raise ValueError("relation search supports between 2 and 8 functions")
    arity = fs[0].arity
    if any(f.arity != arity for f in fs):
        raise ValueError("functions must share one ambient variable list")
    pool = list(primes)
    for q in primes_below(min(pool), 6):
        if q not in pool:
            pool.append(q)
        if len(pool) >= 6:
            break

    for d in range(1, dmax + 1):
        monos = _monomials(k, d)
        count = len(monos) + 8
        vecs = []
        dead = False
        for p in pool[: len(primes)]:
            rng = rng_for(seed, f"ann:d{d}:p{p}")
            rows = _sample_rows(fs, monos, d, count, p, rng)
            if rows is None:
                dead = True
                break
            v = nullspace_vector_mod(rows, p)
            if v is None:
                dead = True  # full rank: no degree-d relation, proven
                break
            vecs.append((p, v))
        if dead:
            continue
        cand = _lift_and_verify(fs, monos, d, vecs, pool, seed, count)
        if cand is not None:
            return cand
    return None


def _lift_and_verify(fs, monos, d, vecs, pool, seed, count):
    """CRT-combine per-prime kernel vectors, reconstruct over Q, verify.

    A failed reconstruction or a nonzero composition only ever means an
    unlucky prime; more primes are drawn until the pool runs dry, after
    which the degree is abandoned (soundness never depends on this path).
    """
    k = len(fs)
    used = list(vecs)
    while True:
        acc = list(used[0][1])
        m = used[0][0]
        for p, v in used[1:]:
            acc = [crt_pair(a, m, b, p) for a, b in zip(acc, v)]
            m *= p
        rat = [rational_reconstruct(a % m, m) for a in acc]
        if all(r is not None for r in rat):
            coeffs = _normalize_coeffs(rat, monos)
            if coeffs:
                cand = Poly({a: Fraction(c) for a, c in coeffs.items()}, k)
                if compose_numerator(cand, fs).is_zero:
                    return cand
        nxt = len(used)
        if nxt >= len(pool):
            return None
        p = pool[nxt]
        rng = rng_for(seed, f"ann:d{d}:p{p}")
        rows = _sample_rows(fs, monos, d, count, p, rng)
        if rows is None:
            return None
        v = nullspace_vector_mod(rows, p)
        if v is None:
            return None
        used.append((p, v))
