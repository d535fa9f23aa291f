"""Sparse multivariate polynomials over the rationals.

Terms are stored as a map from exponent tuples to nonzero Fraction
coefficients; the canonical term order is graded lexicographic.  The gcd
stack used for rational-function reduction works on integer-primitive
images and combines three layers:

* a sound coprimality fast path (random line specialization over GF(p)
  with a degree-preservation check, which makes the "gcd = 1" conclusion
  exact, not heuristic);
* a heuristic evaluation gcd (single large-integer substitution per
  variable, candidate verified by exact trial division and closed up by
  a cofactor-coprimality pass, so the result is always the true gcd);
* a subresultant PRS fallback that is unconditionally correct.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd as igcd
from operator import add as _add

Term = tuple[int, ...]

# RNG for the gcd fast paths.  Fixed seed: the *result* of every gcd is
# independent of these draws (they only pick which sound shortcut fires),
# so this never affects output determinism.
_GCD_RNG = random.Random(0x5EED)
_LINE_P = 2147483647

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ExponentOverflowError(ValueError):
    pass


def grlex_key(exps: Term):
    return (sum(exps), exps)


# ---------------------------------------------------------------------------
# integer term-dict helpers (coefficients are plain ints, no zeros stored)
# ---------------------------------------------------------------------------


def _iadd_into(acc: dict, other: dict, sign: int = 1) -> None:
    for k, c in other.items():
        v = acc.get(k, 0) + sign * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _imul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out: dict = {}
    bi = list(b.items())
    get = out.get
    for ea, ca in a.items():
        for eb, cb in bi:
            k = tuple(map(_add, ea, eb))
            v = get(k, 0) + ca * cb
            if v:
                out[k] = v
            else:
                del out[k]
    return out


def _iscale(a: dict, c: int) -> dict:
    if c == 0:
        return {}
    return {k: v * c for k, v in a.items()}


def _ishift(a: dict, var: int, k: int) -> dict:
    """Multiply by var**k."""
    out = {}
    for e, c in a.items():
        e2 = list(e)
        e2[var] += k
        out[tuple(e2)] = c
    return out


def _int_content(a: dict) -> int:
    g = 0
    for c in a.values():
        g = igcd(g, c)
        if g == 1:
            return 1
    return g or 1


def _max_exps(a: dict, arity: int) -> list[int]:
    mx = [0] * arity
    for e in a:
        for i, v in enumerate(e):
            if v > mx[i]:
                mx[i] = v
    return mx


def _deg_in(a: dict, i: int) -> int:
    d = 0
    for e in a:
        if e[i] > d:
            d = e[i]
    return d


def _total_deg(a: dict) -> int:
    return max((sum(e) for e in a), default=0)


def _lead_key(a: dict) -> Term:
    return max(a, key=grlex_key)


def _mono_content(a: dict, arity: int) -> Term:
    mins = None
    for e in a:
        if mins is None:
            mins = list(e)
        else:
            for i, v in enumerate(e):
                if v < mins[i]:
                    mins[i] = v
        if mins is not None and not any(mins):
            break
    return tuple(mins or [0] * arity)


def _mono_divide(a: dict, mins: Term) -> dict:
    if not any(mins):
        return a
    return {tuple(x - m for x, m in zip(e, mins)): c for e, c in a.items()}


def _idivexact(f: dict, h: dict, step_cap: int = 200000) -> dict | None:
    """Exact division of integer term dicts; None when h does not divide f."""
    if not h:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return {}
    lh = _lead_key(h)
    ch = h[lh]
    rem = dict(f)
    q: dict = {}
    steps = 0
    while rem:
        steps += 1
        if steps > step_cap:
            return None
        lr = _lead_key(rem)
        ke = tuple(a - b for a, b in zip(lr, lh))
        if any(x < 0 for x in ke):
            return None
        cr = rem[lr]
        if cr % ch:
            return None
        cq = cr // ch
        q[ke] = cq
        _iadd_into(rem, _imul({ke: cq}, h), -1)
    return q


# ---------------------------------------------------------------------------
# gcd: line-test fast path, heuristic gcd, subresultant PRS fallback
# ---------------------------------------------------------------------------


def _conv_mod(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return out


def _line_image(f: dict, avec, bvec, p: int, arity: int) -> list[int] | None:
    """f restricted to the line x_i = a_i t + b_i, as a coeff list mod p."""
    mx = _max_exps(f, arity)
    pows: list[list[list[int]]] = []
    for i in range(arity):
        base = [bvec[i] % p, avec[i] % p]
        cur = [[1]]
        for _ in range(mx[i]):
            cur.append(_conv_mod(cur[-1], base, p))
        pows.append(cur)
    acc = [0] * (_total_deg(f) + 1)
    for e, c in f.items():
        conv = [c % p]
        for i, ei in enumerate(e):
            if ei:
                conv = _conv_mod(conv, pows[i][ei], p)
        for j, v in enumerate(conv):
            if v:
                acc[j] = (acc[j] + v) % p
    while acc and acc[-1] == 0:
        acc.pop()
    return acc


def _uni_gcd_mod(a: list[int], b: list[int], p: int) -> int:
    """Degree of gcd of two univariate coeff lists over GF(p)."""
    a, b = a[:], b[:]
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            off = len(a) - len(b)
            for i, c in enumerate(b):
                a[off + i] = (a[off + i] - f * c) % p
            while a and a[-1] == 0:
                a.pop()
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _line_coprime(f: dict, g: dict, arity: int) -> bool:
    """Sound one-sided test: True means gcd(f, g) is constant, exactly.

    If the specialized degree equals the total degree for both inputs,
    the top forms did not vanish, so any nonconstant common factor would
    survive with positive degree on the line; a constant line gcd then
    certifies coprimality.  A False return is merely inconclusive.
    """
    df, dg = _total_deg(f), _total_deg(g)
    if df == 0 or dg == 0:
        return True
    p = _LINE_P
    for _ in range(2):
        avec = [_GCD_RNG.randrange(1, p) for _ in range(arity)]
        bvec = [_GCD_RNG.randrange(0, p) for _ in range(arity)]
        fu = _line_image(f, avec, bvec, p, arity)
        if len(fu) - 1 != df:
            continue
        gu = _line_image(g, avec, bvec, p, arity)
        if len(gu) - 1 != dg:
            continue
        if _uni_gcd_mod(fu, gu, p) == 0:
            return True
    return False


def _smod(c: int, m: int) -> int:
    r = c % m
    if r > m // 2:
        r -= m
    return r


def _eval_at_int(f: dict, var: int, xi: int) -> dict:
    out: dict = {}
    for e, c in f.items():
        k = list(e)
        k[var] = 0
        k = tuple(k)
        v = out.get(k, 0) + c * xi ** e[var]
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _height(f: dict) -> int:
    return max(abs(c) for c in f.values())


def _heu_gcd(f: dict, g: dict, arity: int, depth: int = 0) -> dict | None:
    """Heuristic gcd by big-integer evaluation; verified by trial division.

    Returns a *common divisor* that trial division has certified; the
    caller closes it up to the full gcd via the cofactor pass.  None on
    budget exhaustion (caller falls back to PRS).
    """
    active = [i for i in range(arity) if _deg_in(f, i) or _deg_in(g, i)]
    if not active:
        a = f.get(tuple([0] * arity), 0)
        b = g.get(tuple([0] * arity), 0)
        v = igcd(a, b)
        return {tuple([0] * arity): v} if v else {}
    var = active[0]
    for i in active:
        if min(_deg_in(f, i), _deg_in(g, i)) > min(_deg_in(f, var), _deg_in(g, var)):
            var = i
    dbound = min(_deg_in(f, var), _deg_in(g, var))
    xi = 2 * min(_height(f), _height(g)) + 29
    for _ in range(6):
        if xi.bit_length() * (dbound + 1) > 4_000_000:
            return None
        F = _eval_at_int(f, var, xi)
        G = _eval_at_int(g, var, xi)
        if F and G:
            h = _heu_gcd(F, G, arity, depth + 1)
            if h:
                digits = []
                gam = dict(h)
                ok = True
                while gam:
                    dig = {}
                    nxt = {}
                    for k, c in gam.items():
                        s = _smod(c, xi)
                        if s:
                            dig[k] = s
                        r = (c - s) // xi
                        if r:
                            nxt[k] = r
                    digits.append(dig)
                    gam = nxt
                    if len(digits) > dbound + 1:
                        ok = False
                        break
                if ok:
                    # no primitive-part here: at inner levels the integer
                    # content still encodes the outer evaluation digits
                    cand: dict = {}
                    for i, dig in enumerate(digits):
                        _iadd_into(cand, _ishift(dig, var, i))
                    if cand:
                        if _idivexact(f, cand) is not None and _idivexact(g, cand) is not None:
                            return cand
        xi = xi * 73794 // 27011
    return None


def _coeffs_in(f: dict, var: int) -> dict[int, dict]:
    """Split f by the degree of `var`; coefficient dicts have var-slot 0."""
    out: dict[int, dict] = {}
    for e, c in f.items():
        d = e[var]
        k = list(e)
        k[var] = 0
        out.setdefault(d, {})[tuple(k)] = c
    return out


def _prem(a: dict, b: dict, var: int) -> dict:
    """Pseudo-remainder of a by b with respect to var."""
    db = _deg_in(b, var)
    bc = _coeffs_in(b, var)
    lb = bc[db]
    r = dict(a)
    e = _deg_in(a, var) - db + 1
    while r:
        dr = _deg_in(r, var)
        if dr < db:
            break
        rc = _coeffs_in(r, var)
        lr = rc[dr]
        r = _imul(lb, r)
        _iadd_into(r, _imul(_ishift(lr, var, dr - db), b), -1)
        e -= 1
    for _ in range(e):
        r = _imul(lb, r)
    return r


def _content_wrt(f: dict, var: int, arity: int) -> dict:
    cs = list(_coeffs_in(f, var).values())
    acc = cs[0]
    for c in cs[1:]:
        acc = gcd_int(acc, c, arity)
        if _total_deg(acc) == 0 and _int_content(acc) == 1:
            break
    return acc


def _divide_coeffwise(f: dict, d: dict, var: int, arity: int) -> dict:
    """Exact division of f by a var-free dict d."""
    out: dict = {}
    for k, cf in _coeffs_in(f, var).items():
        q = _idivexact(cf, d)
        assert q is not None, "inexact content division"
        _iadd_into(out, _ishift(q, var, k))
    return out


def _prs_gcd(f: dict, g: dict, var: int, arity: int) -> dict:
    """Subresultant PRS gcd of primitive (wrt var) inputs."""
    if _deg_in(f, var) < _deg_in(g, var):
        f, g = g, f
    one = {tuple([0] * arity): 1}
    gcoef, h = one, one
    a, b = f, g
    while True:
        delta = _deg_in(a, var) - _deg_in(b, var)
        r = _prem(a, b, var)
        if not r:
            break
        if _deg_in(r, var) == 0:
            return one
        denom = gcoef
        for _ in range(delta):
            denom = _imul(denom, h)
        a, b = b, _idivexact(r, denom)
        assert b is not None, "subresultant division failed"
        gcoef = _coeffs_in(a, var)[_deg_in(a, var)]
        if delta == 0:
            pass
        elif delta == 1:
            h = gcoef
        else:
            num = gcoef
            for _ in range(delta - 1):
                num = _imul(num, gcoef)
            hden = h
            for _ in range(delta - 2):
                hden = _imul(hden, h)
            h = _idivexact(num, hden)
            assert h is not None
    cont = _content_wrt(b, var, arity)
    return _divide_coeffwise(b, cont, var, arity)


def gcd_int(f: dict, g: dict, arity: int) -> dict:
    """Exact gcd of integer term dicts, primitive with positive lead."""
    zero_key = tuple([0] * arity)
    if not f and not g:
        return {}
    if not f:
        res = dict(g)
    elif not g:
        res = dict(f)
    else:
        mf = _mono_content(f, arity)
        mg = _mono_content(g, arity)
        mono = tuple(min(a, b) for a, b in zip(mf, mg))
        f1 = _mono_divide(f, mf)
        g1 = _mono_divide(g, mg)
        cf = _int_content(f1)
        cg = _int_content(g1)
        c = igcd(cf, cg)
        f1 = {k: v // cf for k, v in f1.items()}
        g1 = {k: v // cg for k, v in g1.items()}
        if f1 == g1:
            core = f1
        elif _total_deg(f1) == 0 or _total_deg(g1) == 0:
            core = {zero_key: 1}
        else:
            shared = [
                i
                for i in range(arity)
                if _deg_in(f1, i) > 0 and _deg_in(g1, i) > 0
            ]
            if not shared or _line_coprime(f1, g1, arity):
                core = {zero_key: 1}
            else:
                core = _heu_gcd(f1, g1, arity)
                if core is not None and _total_deg(core) > 0:
                    # close the heuristic divisor up to the true gcd; each
                    # pass strictly shrinks the cofactors, so it terminates
                    while True:
                        c1 = _idivexact(f1, core)
                        c2 = _idivexact(g1, core)
                        extra = gcd_int(c1, c2, arity)
                        if _total_deg(extra) == 0:
                            break
                        core = _imul(core, extra)
                else:
                    # a constant heuristic answer certifies nothing about
                    # the polynomial part; settle it by subresultants
                    var = min(shared, key=lambda i: min(_deg_in(f1, i), _deg_in(g1, i)))
                    contf = _content_wrt(f1, var, arity)
                    contg = _content_wrt(g1, var, arity)
                    fp = _divide_coeffwise(f1, contf, var, arity)
                    gp = _divide_coeffwise(g1, contg, var, arity)
                    core = _imul(gcd_int(contf, contg, arity), _prs_gcd(fp, gp, var, arity))
        cc = _int_content(core)
        if cc > 1:
            core = {k: v // cc for k, v in core.items()}
        res = _imul(_iscale(core, c), {mono: 1})
    if res and res[_lead_key(res)] < 0:
        res = {k: -v for k, v in res.items()}
    cr = _int_content(res)
    if cr > 1:
        res = {k: v // cr for k, v in res.items()}
    return res


# ---------------------------------------------------------------------------
# Poly
# ---------------------------------------------------------------------------


class Poly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms", "arity", "_mods", "_intcache")

    def __init__(self, terms: dict[Term, Fraction], arity: int, _clean: bool = False):
        if not _clean:
            terms = {
                e: Fraction(c)
                for e, c in terms.items()
                if c
            }
            for e in terms:
                if len(e) != arity or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent tuple {e} for arity {arity}")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "_mods", {})
        object.__setattr__(self, "_intcache", None)

    def __setattr__(self, *a):  # pragma: no cover - guard rail
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> "Poly":
        return cls({}, arity, _clean=True)

    @classmethod
    def const(cls, c, arity: int) -> "Poly":
        c = Fraction(c)
        if not c:
            return cls.zero(arity)
        return cls({tuple([0] * arity): c}, arity, _clean=True)

    @classmethod
    def variable(cls, i: int, arity: int) -> "Poly":
        e = [0] * arity
        e[i] = 1
        return cls({tuple(e): _ONE}, arity, _clean=True)

    # -- basic queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        if len(self.terms) > 1:
            raise ValueError("not a constant polynomial")
        ((e, c),) = self.terms.items()
        if any(e):
            raise ValueError("not a constant polynomial")
        return c

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=0)

    def active_vars(self) -> tuple[int, ...]:
        mx = [0] * self.arity
        for e in self.terms:
            for i, v in enumerate(e):
                if v:
                    mx[i] = 1
        return tuple(i for i, v in enumerate(mx) if v)

    def leading(self) -> tuple[Term, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        k = max(self.terms, key=grlex_key)
        return k, self.terms[k]

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.arity)
        return None

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, _ZERO) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(out, self.arity, _clean=True)

    def __radd__(self, other) -> "Poly":
        return self.__add__(other)

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, _ZERO) - c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(out, self.arity, _clean=True)

    def __rsub__(self, other) -> "Poly":
        return (-self).__add__(other)

    def __neg__(self) -> "Poly":
        return Poly({e: -c for e, c in self.terms.items()}, self.arity, _clean=True)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Poly.zero(self.arity)
        fa, ca = self.int_parts()
        fb, cb = other.int_parts()
        prod = _imul(fa, fb)
        scale = ca * cb
        return Poly({e: scale * c for e, c in prod.items()}, self.arity, _clean=True)

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if not c:
            return Poly.zero(self.arity)
        return Poly({e: c * v for e, v in self.terms.items()}, self.arity, _clean=True)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.const(1, self.arity)
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Poly)
            and self.arity == other.arity
            and self.terms == other.terms
        )

    __hash__ = None  # mutable-dict backed; identity hashing would mislead

    # -- calculus / structure -----------------------------------------------

    def derivative(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                k = list(e)
                k[i] -= 1
                out[tuple(k)] = c * e[i]
        return Poly(out, self.arity, _clean=True)

    def embed(self, new_arity: int, mapping: tuple[int, ...]) -> "Poly":
        """Rename variables: old index i becomes mapping[i]."""
        out = {}
        for e, c in self.terms.items():
            k = [0] * new_arity
            for i, v in enumerate(e):
                if v:
                    k[mapping[i]] += v
            out[tuple(k)] = c
        return Poly(out, new_arity, _clean=True)

    def subs_scalars(self, values: dict[int, Fraction]) -> "Poly":
        """Substitute exact scalars for some variables (arity preserved)."""
        if not values:
            return self
        pw: dict[tuple[int, int], Fraction] = {}
        out: dict[Term, Fraction] = {}
        for e, c in self.terms.items():
            k = list(e)
            for i, val in values.items():
                ei = e[i]
                if ei:
                    f = pw.get((i, ei))
                    if f is None:
                        f = Fraction(val) ** ei
                        pw[(i, ei)] = f
                    c = c * f
                    k[i] = 0
            if c:
                kk = tuple(k)
                v = out.get(kk, _ZERO) + c
                if v:
                    out[kk] = v
                else:
                    del out[kk]
        return Poly(out, self.arity, _clean=True)

    # -- evaluation ----------------------------------------------------------

    def eval_q(self, point) -> Fraction:
        mx = [0] * self.arity
        for e in self.terms:
            for i, v in enumerate(e):
                if v > mx[i]:
                    mx[i] = v
        pows = []
        for i in range(self.arity):
            row = [_ONE]
            x = Fraction(point[i])
            for _ in range(mx[i]):
                row.append(row[-1] * x)
            pows.append(row)
        acc = _ZERO
        for e, c in self.terms.items():
            v = c
            for i, ei in enumerate(e):
                if ei:
                    v = v * pows[i][ei]
            acc += v
        return acc

    def int_parts(self) -> tuple[dict, Fraction]:
        """(primitive integer term dict, rational content) with dict * content == self."""
        cached = self._intcache
        if cached is not None:
            return cached
        if not self.terms:
            res = ({}, _ONE)
        else:
            denlcm = 1
            for c in self.terms.values():
                d = c.denominator
                denlcm = denlcm // igcd(denlcm, d) * d
            ints = {e: int(c * denlcm) for e, c in self.terms.items()}
            g = _int_content(ints)
            if g > 1:
                ints = {e: c // g for e, c in ints.items()}
            res = (ints, Fraction(g, denlcm))
        object.__setattr__(self, "_intcache", res)
        return res

    def mod_terms(self, p: int) -> dict[Term, int]:
        cached = self._mods.get(p)
        if cached is None:
            ints, cont = self.int_parts()
            num = cont.numerator % p
            den = cont.denominator % p
            if den == 0:
                raise ZeroDivisionError(f"content denominator vanishes mod {p}")
            scale = num * pow(den, p - 2, p) % p
            cached = {}
            for e, c in ints.items():
                v = c * scale % p
                if v:
                    cached[e] = v
            self._mods[p] = cached
        return cached

    def eval_mod(self, point, p: int) -> int:
        terms = self.mod_terms(p)
        mx = [0] * self.arity
        for e in terms:
            for i, v in enumerate(e):
                if v > mx[i]:
                    mx[i] = v
        pows = []
        for i in range(self.arity):
            row = [1]
            x = point[i] % p
            for _ in range(mx[i]):
                row.append(row[-1] * x % p)
            pows.append(row)
        acc = 0
        for e, c in terms.items():
            v = c
            for i, ei in enumerate(e):
                if ei:
                    v = v * pows[i][ei] % p
            acc = (acc + v) % p
        return acc

    # -- formatting -----------------------------------------------------------

    def to_str(self, names: tuple[str, ...] | None = None) -> str:
        if not self.terms:
            return "0"
        if names is None:
            names = tuple(f"x{i}" for i in range(self.arity))
        parts = []
        for e in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                names[i] if v == 1 else f"{names[i]}^{v}"
                for i, v in enumerate(e)
                if v
            )
            if not mono:
                piece = str(abs(c))
            elif abs(c) == 1:
                piece = mono
            else:
                piece = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, piece))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, piece in parts[1:]:
            out += f" {sign} {piece}"
        return out

    def __repr__(self):
        return f"Poly({self.to_str()})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd (positive leading coefficient) of the integer images."""
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    fa, _ = a.int_parts()
    fb, _ = b.int_parts()
    g = gcd_int(fa, fb, a.arity)
    return Poly({e: Fraction(c) for e, c in g.items()}, a.arity, _clean=True)


def divexact(a: Poly, b: Poly) -> Poly:
    """Exact polynomial division; raises if b does not divide a."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero:
        return Poly.zero(a.arity)
    fa, ca = a.int_parts()
    fb, cb = b.int_parts()
    q = _idivexact(fa, fb)
    if q is None:
        raise ValueError("inexact polynomial division")
    scale = ca / cb
    return Poly({e: scale * c for e, c in q.items()}, a.arity, _clean=True)
