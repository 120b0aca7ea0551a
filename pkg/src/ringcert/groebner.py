"""Groebner bases over fields and strong Groebner bases over the integers.

Over Q and GF(p) this is textbook Buchberger with monic reduced bases.
Over Z we complete with both S-polynomials and G-polynomials (gcd
combinations), which yields a *strong* basis: the leading term of every
ideal element is divisible, monomial and coefficient alike, by the leading
term of some basis element, so normal forms decide membership.  Z/p^m
ideals are realized as their integer lifts with p^m adjoined, which keeps
all Euclidean computation inside Z.

Pair selection is the normal strategy (smallest lcm in the order) with a
sugar-degree tie-break; combined with canonical generator sorting and full
inter-reduction this makes every basis byte-reproducible.
"""

from __future__ import annotations

from math import gcd

from . import certify
from .errors import (CapExceededError, ModeMismatchError, StaleBasisError,
                     UnsupportedModeError)
from .poly import (GF, GREVLEX, INT, INT_LOC, INT_MOD, RAT, Mode,
                   MonomialOrder, Polynomial, block_order, monomial_divides,
                   monomial_lcm, monomial_mul, monomial_sub)

DEFAULT_PAIR_BUDGET = 200000


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _bezout_multi(values):
    """gcd g and coefficients u with sum(u_i * values_i) == g > 0."""
    g = values[0]
    coeffs = [1] + [0] * (len(values) - 1)
    for i in range(1, len(values)):
        g2, u, v = _xgcd(g, values[i])
        coeffs = [c * u for c in coeffs]
        coeffs[i] = v
        g = g2
    if g < 0:
        g = -g
        coeffs = [-c for c in coeffs]
    return g, coeffs


def _shift(poly, exps):
    return Polynomial(poly.mode, poly.vars,
                      {monomial_mul(e, exps): c for e, c in poly._terms.items()})


def _normalize(poly, order):
    """Positive leading coefficient over Z, monic over a field."""
    if poly.is_zero():
        return poly
    _, lc = poly.leading(order)
    mode = poly.mode
    if mode.is_field:
        if mode.kind == GF:
            inv = pow(lc, mode.p - 2, mode.p)
            return poly.scale(inv)
        return poly.scale(1 / lc)
    if lc < 0:
        return poly.scale(-1)
    return poly


def reduce_poly(f, basis, order):
    """Full normal form of f against a list of nonzero polynomials.

    Over a field any applicable reducer cancels a term completely.  Over Z
    the coefficient is reduced modulo the gcd of all applicable leading
    coefficients via an extended-Euclid combination, leaving the canonical
    representative in [0, gcd).
    """
    mode = f.mode
    leads = [g.leading(order) for g in basis]
    work = dict(f._terms)
    remainder = {}
    while work:
        exps = max(work, key=order.key)
        c = work.pop(exps)
        if c == 0:
            continue
        hits = [i for i, (lm, _) in enumerate(leads)
                if monomial_divides(lm, exps)]
        if not hits:
            remainder[exps] = c
            continue
        if mode.is_field:
            i = hits[0]
            lm, lc = leads[i]
            if mode.kind == GF:
                q = (c * pow(lc, mode.p - 2, mode.p)) % mode.p
            else:
                q = c / lc
            shifted = _shift(basis[i], monomial_sub(exps, lm))
            for e2, c2 in shifted._terms.items():
                if e2 == exps:
                    continue
                nc = work.get(e2, 0) - q * c2
                nc = mode.canon(nc)
                if nc == 0:
                    work.pop(e2, None)
                else:
                    work[e2] = nc
            continue
        # Euclidean coefficient reduction over Z.
        lcs = [leads[i][1] for i in hits]
        d, combo = _bezout_multi(lcs)
        q, r = divmod(c, d)
        if q:
            for u, i in zip(combo, hits):
                if u == 0:
                    continue
                lm, _ = leads[i]
                shifted = _shift(basis[i], monomial_sub(exps, lm))
                for e2, c2 in shifted._terms.items():
                    if e2 == exps:
                        continue
                    nc = work.get(e2, 0) - q * u * c2
                    if nc == 0:
                        work.pop(e2, None)
                    else:
                        work[e2] = nc
        if r:
            remainder[exps] = r
    return Polynomial(mode, f.vars, remainder)


def _s_poly(f, g, order):
    (ef, cf), (eg, cg) = f.leading(order), g.leading(order)
    l = monomial_lcm(ef, eg)
    mode = f.mode
    if mode.is_field:
        a = _shift(f, monomial_sub(l, ef)).scale(1)
        b = _shift(g, monomial_sub(l, eg))
        if mode.kind == GF:
            return a.scale(pow(cf, mode.p - 2, mode.p)) - b.scale(
                pow(cg, mode.p - 2, mode.p))
        return a.scale(1 / cf) - b.scale(1 / cg)
    m = cf * cg // gcd(cf, cg)
    return (_shift(f, monomial_sub(l, ef)).scale(m // cf)
            - _shift(g, monomial_sub(l, eg)).scale(m // cg))


def _g_poly(f, g, order):
    """gcd-combination with leading term gcd(lc_f, lc_g) * lcm(lm_f, lm_g)."""
    (ef, cf), (eg, cg) = f.leading(order), g.leading(order)
    l = monomial_lcm(ef, eg)
    d, u, v = _xgcd(cf, cg)
    if d < 0:
        d, u, v = -d, -u, -v
    return (_shift(f, monomial_sub(l, ef)).scale(u)
            + _shift(g, monomial_sub(l, eg)).scale(v))


def _interreduce(basis, order):
    work = [p for p in basis if not p.is_zero()]
    changed = True
    while changed:
        changed = False
        out = []
        for i, g in enumerate(work):
            others = out + work[i + 1:]
            if others:
                r = reduce_poly(g, others, order)
            else:
                r = g
            r = _normalize(r, order)
            if r.is_zero():
                changed = True
                continue
            if r != g:
                changed = True
            out.append(r)
        work = out
    work.sort(key=lambda p: (order.key(p.leading(order)[0]), p.render()))
    return tuple(work)


def _buchberger(gens, order, mode, max_pairs):
    basis = []
    for g in gens:
        if not g.is_zero():
            basis.append(_normalize(g, order))
    basis = list(dict.fromkeys(basis))
    basis.sort(key=lambda p: (order.key(p.leading(order)[0]), p.render()))
    sugar = [p.total_degree() for p in basis]
    euclid = not mode.is_field

    pairs = []

    def push_pairs(j):
        for i in range(j):
            lm_i = basis[i].leading(order)[0]
            lm_j = basis[j].leading(order)[0]
            l = monomial_lcm(lm_i, lm_j)
            s = max(sugar[i] + sum(monomial_sub(l, lm_i)),
                    sugar[j] + sum(monomial_sub(l, lm_j)))
            pairs.append((order.key(l), s, i, j))

    for j in range(len(basis)):
        push_pairs(j)

    steps = 0
    while pairs:
        pairs.sort()
        lkey, s, i, j = pairs.pop(0)
        steps += 1
        if max_pairs is not None and steps > max_pairs:
            raise CapExceededError("pair budget exhausted in Buchberger",
                                   {"pairs": max_pairs})
        f, g = basis[i], basis[j]
        lm_i, lc_i = f.leading(order)
        lm_j, lc_j = g.leading(order)
        candidates = []
        if mode.is_field:
            # Product criterion.
            if monomial_lcm(lm_i, lm_j) != monomial_mul(lm_i, lm_j):
                candidates.append(_s_poly(f, g, order))
        else:
            candidates.append(_s_poly(f, g, order))
            if lc_j % lc_i != 0 and lc_i % lc_j != 0:
                candidates.append(_g_poly(f, g, order))
        for cand in candidates:
            r = reduce_poly(cand, basis, order)
            if r.is_zero():
                continue
            r = _normalize(r, order)
            basis.append(r)
            sugar.append(s)
            push_pairs(len(basis) - 1)
    return _interreduce(basis, order)


def is_complete_basis(basis, order):
    """Independent completeness oracle: every S- and G-polynomial of every
    pair reduces to zero against the basis."""
    basis = [p for p in basis if not p.is_zero()]
    if not basis:
        return True
    mode = basis[0].mode
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not reduce_poly(_s_poly(basis[i], basis[j], order),
                               basis, order).is_zero():
                return False
            if not mode.is_field:
                lc_i = basis[i].leading(order)[1]
                lc_j = basis[j].leading(order)[1]
                if lc_j % lc_i != 0 and lc_i % lc_j != 0:
                    if not reduce_poly(_g_poly(basis[i], basis[j], order),
                                       basis, order).is_zero():
                        return False
    return True


# ---------------------------------------------------------------------------
# Ideals


class Ideal:
    """An ideal with a monomial order and a lazily computed cached basis.

    Immutable after construction.  A basis supplied at construction time
    (for example when deserializing a report) is verified against the
    generators; a mismatch raises StaleBasisError.
    """

    __slots__ = ("mode", "vars", "gens", "order", "_basis")

    def __init__(self, mode, variables, gens, order=GREVLEX, basis=None):
        object.__setattr__(self, "mode", mode)
        object.__setattr__(self, "vars", tuple(variables))
        cleaned = []
        for g in gens:
            if g.mode != mode or g.vars != self.vars:
                raise ModeMismatchError("generator outside the ambient ring")
            if not g.is_zero():
                cleaned.append(g)
        cleaned = list(dict.fromkeys(cleaned))
        cleaned.sort(key=lambda p: (order.key(p.leading(order)[0]), p.render()))
        object.__setattr__(self, "gens", tuple(cleaned))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_basis", None)
        if basis is not None:
            self._verify_supplied_basis(tuple(basis))
            object.__setattr__(self, "_basis", tuple(basis))

    def __setattr__(self, *a):
        raise AttributeError("Ideal is immutable")

    def __repr__(self):
        return "Ideal(" + ", ".join(g.render() for g in self.gens) + ")"

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return (self.mode == other.mode and self.vars == other.vars
                and self.order == other.order
                and self.basis() == other.basis())

    def __hash__(self):
        return hash((self.mode, self.vars, self.gens, self.order))

    def _computation_parts(self):
        """(generators over the computation mode, computation mode)."""
        mode = self.mode
        if mode.kind == INT_MOD:
            lift = Mode(INT)
            gens = [g.convert(lift) for g in self.gens]
            gens.append(Polynomial.constant(lift, self.vars, mode.modulus))
            return gens, lift
        if mode.kind == INT_LOC:
            lift = Mode(INT)
            return [g.convert(lift) for g in self.gens], lift
        return list(self.gens), mode

    def basis(self, max_pairs=DEFAULT_PAIR_BUDGET):
        """The reduced (strong) Groebner basis, in the ideal's own mode."""
        if self._basis is None:
            gens, cmode = self._computation_parts()
            if cmode.kind not in (INT, RAT, GF):
                raise UnsupportedModeError(
                    f"no Groebner engine for mode {cmode!r}")
            raw = _buchberger(gens, self.order, cmode, max_pairs)
            if self.mode.kind == INT_MOD:
                conv = tuple(p.convert(self.mode) for p in raw
                             if not p.convert(self.mode).is_zero())
                object.__setattr__(self, "_basis", conv)
            else:
                object.__setattr__(self, "_basis", raw)
        return self._basis

    def _verify_supplied_basis(self, basis):
        object.__setattr__(self, "_basis", None)
        recomputed = self.basis()
        object.__setattr__(self, "_basis", None)
        if tuple(basis) != recomputed:
            raise StaleBasisError("cached basis does not match the generators")
        for g in self.gens:
            if not normal_form(g, Ideal(self.mode, self.vars, basis,
                                        self.order)).is_zero():
                raise StaleBasisError("a generator fails to reduce to zero")

    def is_zero_ideal(self):
        return not self.basis()

    def contains_one(self):
        return normal_form(
            Polynomial.constant(self.mode, self.vars, 1), self).is_zero()


def groebner_basis(ideal, max_pairs=DEFAULT_PAIR_BUDGET):
    """Same ideal with the cached (strong) basis computed."""
    basis = ideal.basis(max_pairs)
    out = Ideal(ideal.mode, ideal.vars, ideal.gens, ideal.order)
    object.__setattr__(out, "_basis", basis)
    return out


def normal_form(f, ideal, max_pairs=DEFAULT_PAIR_BUDGET):
    """Canonical remainder of f; zero iff f is a member, for fields, Z and
    Z/p^m.  For int_loc mode this is the plain integer normal form; use
    member_localized for true localized membership."""
    if f.vars != ideal.vars:
        raise ModeMismatchError("polynomial outside the ideal's ring")
    basis = ideal.basis(max_pairs)
    mode = ideal.mode
    if mode.kind == INT_MOD:
        lift = Mode(INT)
        lifted = [b.convert(lift) for b in basis]
        lifted.append(Polynomial.constant(lift, ideal.vars, mode.modulus))
        r = reduce_poly(f.convert(lift), lifted, ideal.order)
        return r.convert(mode)
    if mode.kind == INT_LOC:
        lift = Mode(INT)
        lifted = [b.convert(lift) for b in basis]
        if not lifted:
            return f
        r = reduce_poly(f.convert(lift), lifted, ideal.order)
        return r.convert(mode)
    if not basis:
        return f
    return reduce_poly(f, list(basis), ideal.order)


def member(f, ideal):
    """Exact membership for fields, Z, and Z/p^m."""
    if ideal.mode.kind == INT_LOC:
        raise UnsupportedModeError("use member_localized for int_loc ideals")
    return normal_form(f, ideal).is_zero()


def eliminate(ideal, keep):
    """Intersection of the ideal with the subring in the kept variables.

    Returns an ideal of the same ambient ring whose generators only involve
    the kept variables.  Realized by a block elimination order: eliminated
    variables are moved to the dominant block and a (strong) basis is cut.
    """
    keep = [v for v in ideal.vars if v in set(keep)]
    front = [v for v in ideal.vars if v not in keep]
    if not front:
        return groebner_basis(ideal)
    perm = tuple(front + keep)
    permuted = [g.permute_vars(perm) for g in ideal.gens]
    work = Ideal(ideal.mode, perm, permuted, block_order(len(front)))
    selected = []
    nfront = len(front)
    for b in work.basis():
        if all(all(e == 0 for e in exps[:nfront]) for exps in b.monomials()):
            selected.append(b.permute_vars(ideal.vars))
    return Ideal(ideal.mode, ideal.vars, selected, ideal.order)


def saturate(ideal, f, max_pairs=DEFAULT_PAIR_BUDGET):
    """(ideal : f^infinity) by the inverse-variable trick.

    Exact in one elimination over fields and over Z (the strong basis gives
    the elimination property).  A blown pair budget raises CapExceededError,
    which callers convert to an inconclusive certificate.
    """
    if f.vars != ideal.vars:
        raise ModeMismatchError("polynomial outside the ideal's ring")
    fresh = "_s"
    while fresh in ideal.vars:
        fresh = "_" + fresh
    ext = (fresh,) + ideal.vars
    gens = [g.embed(ext) for g in ideal.gens]
    t = Polynomial.variable(ideal.mode, ext, fresh)
    gens.append(t * f.embed(ext) - 1)
    extended = Ideal(ideal.mode, ext, gens, block_order(1))
    extended.basis(max_pairs)
    cut = eliminate(extended, keep=ideal.vars)
    restricted = [g.restrict(ideal.vars) for g in cut.gens]
    return Ideal(ideal.mode, ideal.vars, restricted, ideal.order)


def _radical_member_field(f, ideal, max_pairs=DEFAULT_PAIR_BUDGET):
    """Rabinowitsch: f in sqrt(I) iff 1 in I + (t*f - 1), over a field."""
    fresh = "_r"
    while fresh in ideal.vars:
        fresh = "_" + fresh
    ext = (fresh,) + ideal.vars
    gens = [g.embed(ext) for g in ideal.gens]
    t = Polynomial.variable(ideal.mode, ext, fresh)
    gens.append(t * f.embed(ext) - 1)
    trick = Ideal(ideal.mode, ext, gens, GREVLEX)
    trick.basis(max_pairs)
    return trick.contains_one()


def nilpotency_index(f, ideal, cap=16, max_pairs=DEFAULT_PAIR_BUDGET):
    """Least r with f^(r+1) in the ideal, as a certificate.

    Refutation uses a radical-membership test: Rabinowitsch over fields,
    reduction mod p plus the field-level test for Z/p^m, and the rational
    level for Z and int_loc (sound both ways it is used: a power falling
    into the ideal survives every such projection).
    """
    caps = {"exponent_cap": cap}
    mode = ideal.mode
    for r in range(cap):
        power = f ** (r + 1)
        if mode.kind == INT_LOC:
            verdict, _ = member_localized(power, ideal, mode.p)
            hit = verdict == certify.PROVED
        else:
            hit = member(power, ideal)
        if hit:
            return certify.proved("nilpotency_index",
                                  {"index": r, "power": r + 1,
                                   "element": f.render()}, caps)
    # Refutation by radical membership in a field quotient.
    try:
        if mode.is_field:
            if not _radical_member_field(f, ideal, max_pairs):
                return certify.refuted(
                    "nilpotency_index",
                    {"reason": "not in the radical (Rabinowitsch)",
                     "element": f.render()}, caps)
        elif mode.kind == INT_MOD:
            gmode = Mode(GF, mode.p)
            red = Ideal(gmode, ideal.vars,
                        [g.convert(gmode) for g in ideal.gens], ideal.order)
            if not _radical_member_field(f.convert(gmode), red, max_pairs):
                return certify.refuted(
                    "nilpotency_index",
                    {"reason": f"not in the radical mod {mode.p}",
                     "element": f.render()}, caps)
        elif mode.kind in (INT, INT_LOC):
            qmode = Mode(RAT)
            red = Ideal(qmode, ideal.vars,
                        [g.convert(qmode) for g in ideal.gens], ideal.order)
            if not red.contains_one() and not _radical_member_field(
                    f.convert(qmode), red, max_pairs):
                return certify.refuted(
                    "nilpotency_index",
                    {"reason": "not in the radical over Q",
                     "element": f.render()}, caps)
    except CapExceededError:
        pass
    return certify.inconclusive("nilpotency_index",
                                {"element": f.render()}, caps)


def _trial_factor_primes(n, bound=10000):
    """Distinct small prime factors of |n| plus any large leftover cofactor."""
    n = abs(n)
    out = []
    d = 2
    while d <= bound and d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def member_localized(f, ideal, p, passes=3, max_pairs=DEFAULT_PAIR_BUDGET):
    """Membership of f in ideal * Z_(p)[x], tri-state.

    f is a member iff q*f lies in the integer ideal for some q coprime to p.
    We saturate by the product q0 of the non-p primes occurring in the strong
    basis' leading coefficients and repeat until no such primes remain; at
    that fixpoint the integer normal form decides membership exactly.
    """
    lift_mode = Mode(INT)
    work = Ideal(lift_mode, ideal.vars,
                 [g.convert(lift_mode) for g in ideal.gens], ideal.order)
    caps = {"saturation_passes": passes}
    for pass_no in range(passes + 1):
        try:
            basis = work.basis(max_pairs)
        except CapExceededError:
            return certify.INCONCLUSIVE, caps
        if reduce_poly(f.convert(lift_mode), list(basis),
                       work.order).is_zero() if basis else f.is_zero():
            return certify.PROVED, {"passes_used": pass_no, **caps}
        q0 = 1
        for b in basis:
            lc = b.leading(work.order)[1]
            for q in _trial_factor_primes(lc):
                if q != p and q0 % q != 0:
                    q0 *= q
        if q0 == 1:
            # Fixpoint: all leading coefficients are powers of p (or 1), so
            # multiplying f by a unit mod p cannot create new reductions.
            return certify.REFUTED, {"passes_used": pass_no, **caps}
        if pass_no == passes:
            break
        try:
            work = saturate(work,
                            Polynomial.constant(lift_mode, work.vars, q0),
                            max_pairs)
        except CapExceededError:
            return certify.INCONCLUSIVE, caps
    return certify.INCONCLUSIVE, caps
