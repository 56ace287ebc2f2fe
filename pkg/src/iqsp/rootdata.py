"""Cartan data, root data, Satake data with admissibility, parameter
constraints, and the i-weight lattice X_i = X / {l - theta(l)}.

Conventions: nodes are 0-based; <i, j'> = a_ij; simple reflections act on X
by s_i(l) = l - <i, l> a_i and on Y by s_i(m) = m - <m, a_i> a_i^vee.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .linalg import smith_normal_form
from .ring import LaurentPoly, parse_laurent


class InvalidDatum(Exception):
    pass


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


class ValidationReport:
    def __init__(self, checks=None):
        self.checks = list(checks or [])

    def add(self, name, ok, detail=""):
        self.checks.append(Check(name, bool(ok), detail))

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.ok]

    def as_dict(self):
        return {
            "ok": self.ok,
            "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks],
        }

    def __repr__(self):
        return f"ValidationReport(ok={self.ok}, checks={len(self.checks)})"


def _symmetrizers(a):
    """Minimal positive integers d with d_i a_ij = d_j a_ji."""
    n = len(a)
    d = [0] * n
    for start in range(n):
        if d[start]:
            continue
        d[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if a[i][j] and not d[j]:
                    # d_j / d_i = a_ij / a_ji
                    f = Fraction(d[i]) * Fraction(a[i][j], a[j][i])
                    if f <= 0:
                        raise InvalidDatum("non-symmetrizable sign pattern")
                    d[j] = f
                    stack.append(j)
    # clear denominators per component
    from math import lcm

    m = lcm(*[Fraction(x).denominator for x in d]) if n else 1
    d = [int(Fraction(x) * m) for x in d]
    from math import gcd

    g = 0
    for x in d:
        g = gcd(g, x)
    return [x // g for x in d]


class CartanDatum:
    """Symmetric integer pairing i.j on a node set, with d_i = (i.i)/2 and
    Cartan integers a_ij = 2 (i.j)/(i.i)."""

    def __init__(self, dot):
        self.n = len(dot)
        self.dot = [list(map(int, row)) for row in dot]
        for i in range(self.n):
            if self.dot[i][i] <= 0 or self.dot[i][i] % 2:
                raise InvalidDatum(f"i.i must be a positive even integer at node {i}")
            for j in range(self.n):
                if self.dot[i][j] != self.dot[j][i]:
                    raise InvalidDatum("pairing not symmetric")
                if i != j and self.dot[i][j] > 0:
                    raise InvalidDatum("i.j must be <= 0 for i != j")
        self.d = [self.dot[i][i] // 2 for i in range(self.n)]
        self.a = [[_exact_ratio(2 * self.dot[i][j], self.dot[i][i]) for j in range(self.n)]
                  for i in range(self.n)]

    @staticmethod
    def from_cartan(a, d=None):
        n = len(a)
        for i in range(n):
            if a[i][i] != 2:
                raise InvalidDatum("Cartan matrix needs 2 on the diagonal")
        if d is None:
            d = _symmetrizers(a)
        dot = [[d[i] * a[i][j] for j in range(n)] for i in range(n)]
        return CartanDatum(dot)

    def nodes(self):
        return range(self.n)

    def dot_root(self, u, v):
        """Extend i.j bilinearly to Z[I] coordinate vectors."""
        s = 0
        for i, x in enumerate(u):
            if x:
                for j, y in enumerate(v):
                    if y:
                        s += x * y * self.dot[i][j]
        return s

    def is_finite_type(self, subset=None):
        """Positive-definiteness of the dot matrix on the subset."""
        idx = sorted(subset) if subset is not None else list(range(self.n))
        m = [[Fraction(self.dot[i][j]) for j in idx] for i in idx]
        for k in range(len(idx)):
            det = _det_fraction([row[: k + 1] for row in m[: k + 1]])
            if det <= 0:
                return False
        return True

    def max_offdiag(self):
        return max((abs(self.a[i][j]) for i in range(self.n) for j in range(self.n) if i != j),
                   default=0)


def _exact_ratio(p, q):
    if p % q:
        raise InvalidDatum("Cartan integers must be integers")
    return p // q


def _det_fraction(m):
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = None
        for r in range(c, n):
            if m[r][c]:
                p = r
                break
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


class RootDatum:
    """Lattices Y, X with a perfect pairing and embedded simple (co)roots.

    pairing[k][l] = <e_k^Y, e_l^X>; roots[j] is j' in X coordinates,
    coroots[i] is the coroot in Y coordinates, and the pairing of coroot i
    with root j must reproduce a_ij.
    """

    def __init__(self, cartan: CartanDatum, pairing, roots, coroots):
        self.cartan = cartan
        self.pairing = [list(map(int, r)) for r in pairing]
        self.x_rank = len(self.pairing[0]) if self.pairing else 0
        self.y_rank = len(self.pairing)
        self.roots = [tuple(map(int, r)) for r in roots]
        self.coroots = [tuple(map(int, r)) for r in coroots]
        for i in cartan.nodes():
            for j in cartan.nodes():
                if self.pair(self.coroots[i], self.roots[j]) != cartan.a[i][j]:
                    raise InvalidDatum("pairing does not reproduce the Cartan matrix")

    @staticmethod
    def simply_connected(cartan: CartanDatum):
        """X = Z^n in fundamental weight coordinates, Y = Z^n on coroots."""
        n = cartan.n
        pairing = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        roots = [tuple(cartan.a[i][j] for i in range(n)) for j in range(n)]
        coroots = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        return RootDatum(cartan, pairing, roots, coroots)

    def pair(self, mu, lam):
        """<mu, lam> for mu in Y, lam in X."""
        s = 0
        for k, m in enumerate(mu):
            if m:
                row = self.pairing[k]
                s += m * sum(row[l] * lam[l] for l in range(self.x_rank) if lam[l])
        return s

    def pair_node(self, i, lam):
        """<i, lam> for a node's coroot."""
        return self.pair(self.coroots[i], lam)

    def reflect_x(self, i, lam):
        c = self.pair_node(i, lam)
        return tuple(lam[k] - c * self.roots[i][k] for k in range(self.x_rank))

    def reflect_y(self, i, mu):
        c = self.pair(mu, self.roots[i])
        return tuple(mu[k] - c * self.coroots[i][k] for k in range(self.y_rank))

    def act_word_x(self, word, lam):
        """Apply w = s_{word[0]} ... s_{word[-1]} to lam (leftmost outermost)."""
        for i in reversed(word):
            lam = self.reflect_x(i, lam)
        return lam

    def act_word_y(self, word, mu):
        for i in reversed(word):
            mu = self.reflect_y(i, mu)
        return mu

    def root_vector(self, coords):
        """Z[I] coordinates -> X vector."""
        out = [0] * self.x_rank
        for i, c in enumerate(coords):
            if c:
                for k in range(self.x_rank):
                    out[k] += c * self.roots[i][k]
        return tuple(out)

    def zero_x(self):
        return (0,) * self.x_rank

    def fundamental_weight(self, i):
        """Some lam with <k, lam> = delta_ki; requires it to exist in X."""
        for trial in range(self.x_rank):
            pass
        # solve the integer system coroot-pairing(lam) = e_i
        from .linalg import smith_normal_form as snf

        a = [[self.pair(self.coroots[k], tuple(1 if t == l else 0 for t in range(self.x_rank)))
              for l in range(self.x_rank)] for k in range(self.cartan.n)]
        u, d, v = snf(a)
        # a = u^-1 d v^-1; solve a x = e_i  =>  d (v^-1 x) = u e_i
        rhs = [u[k][i] for k in range(len(u))]
        y = [0] * self.x_rank
        for k in range(min(len(d), self.x_rank)):
            dk = d[k][k] if k < len(d) and k < len(d[k]) else 0
            r = rhs[k] if k < len(rhs) else 0
            if dk == 0:
                if r:
                    raise InvalidDatum("fundamental weight does not exist in X")
                continue
            if r % dk:
                raise InvalidDatum("fundamental weight does not exist in X")
            y[k] = r // dk
        for k in range(self.x_rank, len(rhs)):
            if rhs[k]:
                raise InvalidDatum("fundamental weight does not exist in X")
        x = [sum(v[r][c] * y[c] for c in range(self.x_rank)) for r in range(self.x_rank)]
        return tuple(x)

    def dominant(self, coeffs):
        """Integer combination of fundamental weights."""
        lam = [0] * self.x_rank
        for i, c in enumerate(coeffs):
            if c:
                w = self.fundamental_weight(i)
                lam = [a + c * b for a, b in zip(lam, w)]
        return tuple(lam)


def positive_roots(cartan: CartanDatum, subset):
    """Positive roots of the finite-type subsystem on `subset`, as pairs
    (root Z[I]-coords, coroot Z[I]-coords)."""
    n = cartan.n
    seen = {}
    frontier = []
    for j in subset:
        r = tuple(1 if k == j else 0 for k in range(n))
        c = tuple(1 if k == j else 0 for k in range(n))
        seen[r] = c
        frontier.append(r)
    while frontier:
        nxt = []
        for r in frontier:
            c = seen[r]
            for k in subset:
                # s_k on root coords and coroot coords
                pr = sum(cartan.a[k][j] * r[j] for j in range(n))
                rr = tuple(r[j] - (pr if j == k else 0) for j in range(n))
                pc = sum(cartan.a[j][k] * c[j] for j in range(n))
                cc = tuple(c[j] - (pc if j == k else 0) for j in range(n))
                if all(x >= 0 for x in rr) and rr not in seen:
                    seen[rr] = cc
                    nxt.append(rr)
        frontier = nxt
    return sorted(seen.items())


@dataclass
class SatakeDatum:
    """Cartan + root datum + black subset + diagram involution tau.

    Derived data (w_black, rho vectors, theta, X_i projection) is computed
    eagerly; admissibility is checked by validate_satake, not the constructor,
    so that invalid inputs can be reported rather than rejected.
    """

    cartan: CartanDatum
    root_datum: RootDatum
    black: frozenset
    tau: tuple
    tau_x: list = None  # matrix rows, acts on X; default permutes sc coordinates
    tau_y: list = None
    name: str = ""

    def __post_init__(self):
        n = self.cartan.n
        self.black = frozenset(self.black)
        self.white = tuple(sorted(set(range(n)) - self.black))
        self.tau = tuple(self.tau)
        if sorted(self.tau) != list(range(n)):
            raise InvalidDatum("tau is not a permutation of the nodes")
        if self.tau_x is None:
            if self.root_datum.x_rank != n:
                raise InvalidDatum("tau_x must be supplied for custom root data")
            self.tau_x = [[1 if self.tau[r] == c else 0 for c in range(n)] for r in range(n)]
        if self.tau_y is None:
            if self.root_datum.y_rank != n:
                raise InvalidDatum("tau_y must be supplied for custom root data")
            self.tau_y = [[1 if self.tau[r] == c else 0 for c in range(n)] for r in range(n)]
        self._derive()

    def _derive(self):
        rd = self.root_datum
        self.pos_roots_black = positive_roots(self.cartan, self.black) if self.black else []
        self.w_black = self._compute_w_black()
        # 2 rho and 2 rho^vee of the black subsystem, in X / Y coordinates
        x = [0] * rd.x_rank
        y = [0] * rd.y_rank
        for rc, cc in self.pos_roots_black:
            rv = rd.root_vector(rc)
            for k in range(rd.x_rank):
                x[k] += rv[k]
            for i, c in enumerate(cc):
                if c:
                    for k in range(rd.y_rank):
                        y[k] += c * rd.coroots[i][k]
        self.two_rho_black = tuple(x)
        self.two_rho_vee_black = tuple(y)
        self._theta_x_cache = {}
        self._ilattice = None

    def _compute_w_black(self):
        """Reduced word for the longest element of the black parabolic, by a
        greedy walk from the dominant to the antidominant chamber."""
        if not self.black:
            return ()
        if not self.cartan.is_finite_type(self.black):
            return None
        black = sorted(self.black)
        f = {j: 1 for j in black}
        word = []
        guard = 4 * len(self.pos_roots_black) + 8
        while True:
            j = next((k for k in black if f[k] > 0), None)
            if j is None:
                break
            word.append(j)
            fj = f[j]
            for k in black:
                f[k] -= fj * self.cartan.a[k][j]
            if len(word) > guard:
                raise InvalidDatum("black subsystem walk did not terminate")
        word.reverse()  # composition order: w = s_{word[0]} ... s_{word[-1]}
        return tuple(word)

    # -- actions -----------------------------------------------------------

    def tau_on_x(self, lam):
        return tuple(sum(self.tau_x[r][c] * lam[c] for c in range(len(lam)))
                     for r in range(len(self.tau_x)))

    def tau_on_y(self, mu):
        return tuple(sum(self.tau_y[r][c] * mu[c] for c in range(len(mu)))
                     for r in range(len(self.tau_y)))

    def w_black_on_x(self, lam):
        return self.root_datum.act_word_x(self.w_black, lam)

    def w_black_on_y(self, mu):
        return self.root_datum.act_word_y(self.w_black, mu)

    def theta_x(self, lam):
        """theta = -w_black o tau on X."""
        v = self.w_black_on_x(self.tau_on_x(lam))
        return tuple(-a for a in v)

    def theta_y(self, mu):
        v = self.w_black_on_y(self.tau_on_y(mu))
        return tuple(-a for a in v)

    def w_black_on_root_coords(self, coords):
        """w_black in Z[I] root coordinates."""
        coords = list(coords)
        n = self.cartan.n
        for i in reversed(self.w_black):
            p = sum(self.cartan.a[i][j] * coords[j] for j in range(n))
            coords[i] -= p
        return tuple(coords)

    def theta_root_coords(self, coords):
        t = [0] * self.cartan.n
        for j, c in enumerate(coords):
            t[self.tau[j]] += c
        return tuple(-a for a in self.w_black_on_root_coords(t))

    # -- i-weight lattice ---------------------------------------------------

    def ilattice(self):
        if self._ilattice is None:
            self._ilattice = IWeightLattice(self)
        return self._ilattice

    def iweight(self, lam):
        return self.ilattice().project(lam)

    # -- misc ---------------------------------------------------------------

    def q_i(self, i):
        return self.cartan.d[i]

    def is_tau_fixed(self, i):
        return self.tau[i] == i

    def w_black_fixes_alpha(self, i):
        a = self.root_datum.roots[i]
        return self.w_black_on_x(a) == a

    def coideal_class(self, i):
        """Rank-one class of a white node: 'black' for black nodes,
        else 'tau-split' (tau i != i), 'w-moved' (w_black alpha_i != alpha_i,
        tau i = i), or 'quasi-split' (both fixed)."""
        if i in self.black:
            return "black"
        if self.tau[i] != i:
            return "tau-split"
        if not self.w_black_fixes_alpha(i):
            return "w-moved"
        return "quasi-split"


class IWeightLattice:
    """X_i = X / {l - theta(l)}, with a decidable equality test through the
    Smith normal form of the matrix with columns e_k - theta(e_k)."""

    def __init__(self, datum: SatakeDatum):
        n = datum.root_datum.x_rank
        cols = []
        for k in range(n):
            e = tuple(1 if t == k else 0 for t in range(n))
            th = datum.theta_x(e)
            cols.append([e[t] - th[t] for t in range(n)])
        m = [[cols[c][r] for c in range(n)] for r in range(n)]
        u, d, v = smith_normal_form(m)
        self.u = u
        self.diag = [d[k][k] if k < len(d[k]) else 0 for k in range(len(d))]
        self.n = n

    def project(self, lam):
        w = [sum(self.u[r][c] * lam[c] for c in range(self.n)) for r in range(self.n)]
        out = []
        for k in range(self.n):
            dk = self.diag[k] if k < len(self.diag) else 0
            out.append(w[k] % dk if dk else w[k])
        return tuple(out)

    def equal(self, lam, mu):
        return self.project(lam) == self.project(mu)


@dataclass
class ParameterSet:
    """Coideal parameters sigma_i, kappa_i in Z[q,q^-1] for white nodes."""

    sigma: dict
    kappa: dict

    @staticmethod
    def from_lists(datum: SatakeDatum, sigma_list, kappa_list):
        sg, kp = {}, {}
        for i in datum.white:
            s = sigma_list[i]
            k = kappa_list[i] if kappa_list else "0"
            sg[i] = s if isinstance(s, LaurentPoly) else parse_laurent(s)
            kp[i] = k if isinstance(k, LaurentPoly) else parse_laurent(k)
        return ParameterSet(sg, kp)


def validate_satake(datum: SatakeDatum) -> ValidationReport:
    rep = ValidationReport()
    ca, rd = datum.cartan, datum.root_datum

    rep.add("tau-diagram", all(ca.a[datum.tau[i]][datum.tau[j]] == ca.a[i][j]
                               for i in ca.nodes() for j in ca.nodes()),
            "tau preserves the Cartan matrix")
    rep.add("tau-involution", all(datum.tau[datum.tau[i]] == i for i in ca.nodes()))
    # tau invariance of the pairing
    ok_pair = True
    for k in range(rd.y_rank):
        ek = tuple(1 if t == k else 0 for t in range(rd.y_rank))
        for l in range(rd.x_rank):
            el = tuple(1 if t == l else 0 for t in range(rd.x_rank))
            if rd.pair(datum.tau_on_y(ek), datum.tau_on_x(el)) != rd.pair(ek, el):
                ok_pair = False
    rep.add("tau-pairing-invariant", ok_pair)

    finite = ca.is_finite_type(datum.black) if datum.black else True
    rep.add("black-finite-type", finite)
    if not finite or datum.w_black is None:
        rep.add("w-black", False, "longest element not computable")
        return rep

    npos = len(datum.pos_roots_black)
    rep.add("w-black-length", len(datum.w_black) == npos,
            f"length {len(datum.w_black)} vs {npos} positive roots")
    idx = rd.zero_x()
    rep.add("w-black-involution",
            all(datum.w_black_on_x(datum.w_black_on_x(rd.roots[j])) == rd.roots[j]
                for j in ca.nodes()))
    rep.add("w-black-negates",
            all(all(c <= 0 for c in datum.w_black_on_root_coords(
                tuple(1 if t == j else 0 for t in range(ca.n))))
                for j in datum.black))

    rep.add("adm-1-tau-black", all(datum.tau[j] in datum.black for j in datum.black))
    # (2): tau on black = -w_black
    ok2 = True
    for j in datum.black:
        img = datum.w_black_on_root_coords(tuple(1 if t == j else 0 for t in range(ca.n)))
        target = tuple(-1 if t == datum.tau[j] else 0 for t in range(ca.n))
        if img != target:
            ok2 = False
    rep.add("adm-2-tau-is-minus-w", ok2)
    # (3): tau-fixed white nodes pair integrally with rho_black^vee
    ok3 = True
    bad = []
    for j in datum.white:
        if datum.tau[j] == j:
            v = rd.pair(datum.two_rho_vee_black, rd.roots[j])
            if v % 2:
                ok3 = False
                bad.append(j)
    rep.add("adm-3-rho-pairing", ok3, f"odd at nodes {bad}" if bad else "")

    # theta is an involution on X and Y
    okx = all(datum.theta_x(datum.theta_x(tuple(1 if t == k else 0 for t in range(rd.x_rank))))
              == tuple(1 if t == k else 0 for t in range(rd.x_rank))
              for k in range(rd.x_rank))
    oky = all(datum.theta_y(datum.theta_y(tuple(1 if t == k else 0 for t in range(rd.y_rank))))
              == tuple(1 if t == k else 0 for t in range(rd.y_rank))
              for k in range(rd.y_rank))
    rep.add("theta-involution", okx and oky)

    bound_ok = ca.max_offdiag() <= 3 or not datum.black
    rep.add("cartan-bound", bound_ok, "|a_ij| <= 3 required when black nodes are present")
    return rep


def validate_parameters(datum: SatakeDatum, params: ParameterSet) -> ValidationReport:
    rep = ValidationReport()
    ca, rd = datum.cartan, datum.root_datum
    for i in datum.white:
        si = params.sigma.get(i, LaurentPoly.zero())
        ki = params.kappa.get(i, LaurentPoly.zero())
        ti = datum.tau[i]

        # kappa support condition
        if ki:
            support_ok = datum.tau[i] == i
            support_ok = support_ok and all(ca.a[i][j] == 0 for j in datum.black)
            if support_ok:
                for k in datum.white:
                    if datum.tau[k] == k and all(ca.a[k][j] == 0 for j in datum.black):
                        if ca.a[k][i] % 2:
                            support_ok = False
            rep.add(f"kappa-support[{i}]", support_ok)
        rep.add(f"kappa-bar[{i}]", ki.bar() == ki)

        # sigma_i = sigma_{tau i} when i . theta(i) = 0
        e_i = tuple(1 if t == i else 0 for t in range(ca.n))
        th = datum.theta_root_coords(e_i)
        if ca.dot_root(e_i, th) == 0:
            rep.add(f"sigma-equal[{i}]", si == params.sigma.get(ti, LaurentPoly.zero()))

        # sigma_{tau i} = (-1)^{<2rho_vee, a_i>} q_i^{-<i, 2rho + w tau(a_i)>} bar(sigma_i)
        sign_exp = rd.pair(datum.two_rho_vee_black, rd.roots[i])
        wtau = datum.w_black_on_x(rd.roots[ti])
        e = rd.pair_node(i, tuple(a + b for a, b in zip(datum.two_rho_black, wtau)))
        factor = LaurentPoly.q_power(-e * ca.d[i], -1 if sign_exp % 2 else 1)
        lhs = params.sigma.get(ti, LaurentPoly.zero())
        rep.add(f"sigma-bar[{i}]", lhs == factor * si.bar(),
                f"need sigma_tau(i) = {(factor * si.bar()).to_text()}")
        rep.add(f"sigma-integral[{i}]", True)  # sigma is a LaurentPoly by type
    return rep


def dominance_leq(rd: RootDatum, lam, mu):
    """lam <= mu iff mu - lam is an N-combination of simple roots.

    Simple roots must be linearly independent in X (true for all bundled
    data); raises otherwise since the order would be ill-defined.
    """
    n = rd.cartan.n
    diff = [mu[k] - lam[k] for k in range(rd.x_rank)]
    cols = [rd.roots[i] for i in range(n)]
    m = [[Fraction(cols[i][k]) for i in range(n)] for k in range(rd.x_rank)]
    rhs = [Fraction(d) for d in diff]
    sol = _solve_fraction(m, rhs)
    if sol is None:
        return False
    if sol == "underdetermined":
        raise InvalidDatum("simple roots are linearly dependent in X")
    return all(c.denominator == 1 and c >= 0 for c in sol)


def _solve_fraction(m, rhs):
    rows = len(m)
    cols = len(m[0]) if rows else 0
    aug = [m[r][:] + [rhs[r]] for r in range(rows)]
    piv = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if aug[i][c]), None)
        if p is None:
            continue
        aug[r], aug[p] = aug[p], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv.append(c)
        r += 1
    for i in range(r, rows):
        if aug[i][cols]:
            return None
    if len(piv) < cols:
        return "underdetermined"
    sol = [Fraction(0)] * cols
    for k, c in enumerate(piv):
        sol[c] = aug[k][cols]
    return sol


# -- config loading ----------------------------------------------------------


def satake_from_config(cfg: dict):
    """Build (SatakeDatum, ParameterSet) from the JSON schema.

    Keys: cartan (required), dot (optional), black, tau, X_rank/pairing/roots/
    coroots (optional custom root datum), tau_X/tau_Y (required with custom
    root data when tau != id), params.sigma / params.kappa (Laurent text,
    arrays over all nodes; black entries ignored).
    """
    if "dot" in cfg and cfg["dot"]:
        ca = CartanDatum(cfg["dot"])
    else:
        ca = CartanDatum.from_cartan(cfg["cartan"])
    if cfg.get("pairing"):
        rd = RootDatum(ca, cfg["pairing"], cfg["roots"], cfg["coroots"])
    else:
        rd = RootDatum.simply_connected(ca)
    datum = SatakeDatum(
        cartan=ca,
        root_datum=rd,
        black=frozenset(cfg.get("black", [])),
        tau=tuple(cfg.get("tau", list(range(ca.n)))),
        tau_x=cfg.get("tau_X"),
        tau_y=cfg.get("tau_Y"),
        name=cfg.get("name", ""),
    )
    params = None
    if "params" in cfg:
        sigma = cfg["params"].get("sigma", ["0"] * ca.n)
        kappa = cfg["params"].get("kappa", ["0"] * ca.n)
        params = ParameterSet.from_lists(datum, sigma, kappa)
    return datum, params
