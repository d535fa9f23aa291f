"""Zariski dimension of the image of the doubling map.

For r in n variables, the doubling map L_r sends a 2n-tuple
(v_1^0..v_n^0, v_1^1..v_n^1) to the 2^n values of r obtained by choosing,
for every variable independently, either the 0-copy or the 1-copy.  The
dimension of the closure of its image equals the generic rank of its
Jacobian, which we measure exactly-with-high-confidence by evaluating the
Jacobian at random points modulo large primes.

Modular evaluation only ever *underestimates* the characteristic-zero
rank (a vanishing minor stays zero under reduction), so the maximum
observed rank is a certified lower bound; unanimity of fresh confirmation
samples is the evidence that it is also the generic rank.
"""

from __future__ import annotations

from dataclasses import dataclass

from .modular import DEFAULT_PRIMES, inv_mod, rank_mod, rng_for
from .ratfun import RatFun

MAX_DOUBLING_VARS = 6
_RESAMPLE_LIMIT = 64


class InconclusiveRankError(RuntimeError):
    """Rank samples refused to stabilize; caller should treat as unresolved."""


class AllPolesError(RuntimeError):
    """Every sampled point hit a pole of the function."""


@dataclass(frozen=True)
class RankEstimate:
    rank: int
    samples: int
    primes: tuple[int, ...]
    unanimous: bool


@dataclass(frozen=True)
class DoublingMap:
    """The map L_r together with the data needed to evaluate its Jacobian."""

    f: RatFun
    n: int
    components: tuple[RatFun, ...]

    @property
    def ambient_arity(self) -> int:
        return 2 * self.n


def doubling_map(f: RatFun) -> DoublingMap:
    """All 2^n copy-choice renamings of f, in ambient arity 2n.

    Component index b uses the 1-copy of variable i exactly when bit i of
    b is set; ambient slots 0..n-1 are the 0-copies, n..2n-1 the 1-copies.
    """
    n = f.arity
    if n > MAX_DOUBLING_VARS:
        raise ValueError(f"doubling map limited to {MAX_DOUBLING_VARS} variables")
    comps = []
    for b in range(1 << n):
        mapping = tuple(i + n * ((b >> i) & 1) for i in range(n))
        comps.append(f.embed(2 * n, mapping))
    return DoublingMap(f=f, n=n, components=tuple(comps))


class _JacobianEvaluator:
    """Evaluates the doubling-map Jacobian at points mod p.

    Row b of the Jacobian is supported on columns i + n*bit_i(b) only, and
    the entry there is (dr/dx_i) at the b-renamed sub-point, so one set of
    partials of r serves all 2^n rows; power tables for the 2n coordinate
    values are shared by every sub-point evaluation.
    """

    def __init__(self, dm: DoublingMap):
        f = dm.f
        self.n = dm.n
        self.polys = [f.num, f.den]
        for i in range(dm.n):
            self.polys.append(f.num.derivative(i))
            self.polys.append(f.den.derivative(i))
        self.maxdeg = [
            max(q.degree_in(i) for q in self.polys) for i in range(dm.n)
        ]

    def _eval(self, terms, slots, pows, p):
        acc = 0
        for e, c in terms.items():
            v = c
            for i, ei in enumerate(e):
                if ei:
                    v = v * pows[slots[i]][ei]
            acc += v
        return acc % p

    def rows_at(self, w: list[int], p: int) -> list[list[int]] | None:
        n = self.n
        pows = []
        for slot in range(2 * n):
            deg = self.maxdeg[slot % n]
            row = [1] * (deg + 1)
            x = w[slot] % p
            for e in range(1, deg + 1):
                row[e] = row[e - 1] * x % p
            pows.append(row)
        mods = [q.mod_terms(p) for q in self.polys]
        rows: list[list[int]] = []
        for b in range(1 << n):
            slots = [i + n * ((b >> i) & 1) for i in range(n)]
            dv = self._eval(mods[1], slots, pows, p)
            if dv == 0:
                return None
            nv = self._eval(mods[0], slots, pows, p)
            inv2 = inv_mod(dv * dv % p, p)
            row = [0] * (2 * n)
            for i in range(n):
                niv = self._eval(mods[2 + 2 * i], slots, pows, p)
                div = self._eval(mods[3 + 2 * i], slots, pows, p)
                row[slots[i]] = (niv * dv - nv * div) * inv2 % p
            rows.append(row)
        return rows


def _rank_at_random(ev: _JacobianEvaluator, p: int, rng) -> int | None:
    arity = 2 * ev.n
    for _ in range(_RESAMPLE_LIMIT):
        w = [rng.randrange(1, p) for _ in range(arity)]
        rows = ev.rows_at(w, p)
        if rows is not None:
            return rank_mod(rows, p)
    return None


def generic_rank(
    dm: DoublingMap,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    samples: int = 16,
    seed: int = 0,
) -> RankEstimate:
    """Generic Jacobian rank of the doubling map (= dim of the image closure).

    Takes the max rank over `samples` random points for each prime, then
    re-checks the value on a fresh confirmation round.  Full rank 2n ends
    the search immediately: observed ranks never exceed the generic rank,
    so full rank is already proof.
    """
    full = dm.ambient_arity
    ev = _JacobianEvaluator(dm)
    for attempt in range(2):
        ns = samples << attempt
        best = 0
        saw_point = False
        for p in primes:
            rng = rng_for(seed, f"rank:a{attempt}:p{p}")
            for _ in range(ns):
                r = _rank_at_random(ev, p, rng)
                if r is None:
                    continue
                saw_point = True
                if r > best:
                    best = r
                if best == full:
                    return RankEstimate(best, ns, tuple(primes), True)
        if not saw_point:
            raise AllPolesError(
                "all sampled points hit poles; function too degenerate to sample"
            )
        confirm = max(4, ns // 4)
        unanimous = True
        checked = 0
        for p in primes:
            rng = rng_for(seed, f"rank-confirm:a{attempt}:p{p}")
            for _ in range(confirm):
                r = _rank_at_random(ev, p, rng)
                if r is None:
                    continue
                checked += 1
                if r != best:
                    unanimous = False
                    break
            if not unanimous:
                break
        if unanimous and checked > 0:
            return RankEstimate(best, ns, tuple(primes), True)
    raise InconclusiveRankError(
        "generic rank did not stabilize after doubling the sample budget"
    )


def image_dimension(
    f: RatFun,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    samples: int = 16,
    seed: int = 0,
) -> int:
    """dim of the closure of the image of the doubling map of f."""
    return generic_rank(doubling_map(f), primes=primes, samples=samples, seed=seed).rank


def has_algebraic_constraint(
    f: RatFun,
    primes: tuple[int, ...] = DEFAULT_PRIMES,
    samples: int = 16,
    seed: int = 0,
) -> bool:
    """True iff the doubled values satisfy a nontrivial algebraic relation.

    Defined for 2 or 3 variables; the image is constrained exactly when
    its dimension falls below the ambient 2n.
    """
    if f.arity not in (2, 3):
        raise ValueError("constraint detection is defined for 2 or 3 variables")
    return image_dimension(f, primes=primes, samples=samples, seed=seed) < 2 * f.arity


def is_nondegenerate(f: RatFun) -> bool:
    """True iff f genuinely depends on every one of its variables (exact)."""
    if f.arity not in (2, 3):
        raise ValueError("nondegeneracy is defined for 2 or 3 variables")
    n, d = f.num, f.den
    for i in range(f.arity):
        t = n.derivative(i) * d - n * d.derivative(i)
        if t.is_zero:
            return False
    return True
