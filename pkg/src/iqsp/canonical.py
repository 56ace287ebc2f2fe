"""Canonical bases: PBW scaffolding and the bar matrix in finite type,
the triangular correction algorithm, canonical bases of L(lambda) and of
tensor products, the quasi-R-matrix, and based submodules L(w lambda, mu).
"""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import invert, rank, solve
from .ring import LaurentPoly, NotDivisible, RatFunc
from .rootdata import RootDatum, dominance_leq
from .uq import UAlgebra, UExpression
from .modules import (FSpace, SimpleModule, TensorModule, VermaModel,
                      WeightModule, braid_word_T_plus, vec_add, vec_eq,
                      vec_scale)


class LatticeError(Exception):
    """A bar image left the A-lattice (upstream bug or truncation)."""


# -- reduced word for the longest element -------------------------------------


def longest_word(cartan, subset=None):
    """Reduced word for w_0 of a finite-type (sub)system, by the greedy walk
    from the dominant to the antidominant chamber."""
    nodes = sorted(subset) if subset is not None else list(range(cartan.n))
    if not nodes:
        return ()
    if not cartan.is_finite_type(nodes):
        raise ValueError("longest element needs finite type")
    f = {j: 1 for j in nodes}
    word = []
    while True:
        j = next((k for k in nodes if f[k] > 0), None)
        if j is None:
            break
        word.append(j)
        fj = f[j]
        for k in nodes:
            f[k] -= fj * cartan.a[k][j]
    word.reverse()
    return tuple(word)


# -- PBW bases -----------------------------------------------------------------


class PBWBasis:
    """Root vectors E_beta = T_{i_1}...T_{i_{k-1}}(E_{i_k}) for a reduced word
    of w_0, and their divided-power monomials per weight."""

    def __init__(self, alg: UAlgebra, word):
        self.alg = alg
        self.word = tuple(word)
        self.roots = []       # Z[I] coordinates of the positive roots, in word order
        self.root_vectors = []
        self.d_beta = []
        n = alg.n
        for k, ik in enumerate(self.word):
            coords = [0] * n
            coords[ik] = 1
            # beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k})
            for j in reversed(self.word[:k]):
                p = sum(alg.rd.cartan.a[j][t] * coords[t] for t in range(n))
                coords[j] -= p
            ev = braid_word_T_plus(alg, self.word[:k], alg.E(ik))
            self.roots.append(tuple(coords))
            self.root_vectors.append(ev)
            self.d_beta.append(alg.d[ik])
        self._dp_cache = {}

    def exponents_of_weight(self, nu):
        """All tuples (n_1..n_N) with sum n_k beta_k = nu."""
        nu = tuple(nu)
        out = []
        N = len(self.roots)

        def rec(k, rem, acc):
            if k == N:
                if all(c == 0 for c in rem):
                    out.append(tuple(acc))
                return
            beta = self.roots[k]
            cap = min((rem[t] // beta[t] for t in range(len(rem)) if beta[t]),
                      default=0)
            for m in range(cap + 1):
                rec(k + 1, tuple(rem[t] - m * beta[t] for t in range(len(rem))),
                    acc + [m])

        rec(0, nu, [])
        return out

    def _dp(self, k, m):
        key = (k, m)
        if key not in self._dp_cache:
            self._dp_cache[key] = self.root_vectors[k].divided_power(m, self.d_beta[k])
        return self._dp_cache[key]

    def monomial(self, exps) -> UExpression:
        out = self.alg.one()
        for k, m in enumerate(exps):
            if m:
                out = out * self._dp(k, m)
        return out


# -- the generic bar-triangular algorithm ---------------------------------------


def bar_triangularize(labels, bar_coords):
    """Given a standard basis indexed by `labels` and the coordinates of each
    bar image in that basis (bar_coords: label -> {label: RatFunc}), return
    (cb_columns, corrections): cb_columns[label] = {label': coeff} with diagonal
    1 and corrections in q^-1 Z[q^-1].

    The processing order is read off the dependency digraph, so no external
    partial order has to be supplied; a cycle means the bar matrix is not
    triangularizable and raises LatticeError.
    """
    deps = {}
    for j in labels:
        row = bar_coords[j]
        dj = row.get(j)
        if dj is None or dj != RatFunc.one():
            raise LatticeError(f"bar matrix not unitriangular at {j}")
        deps[j] = [l for l, c in row.items() if l != j and c]
    order = _topo_order(labels, deps)
    position = {l: k for k, l in enumerate(order)}
    cb = {}
    for j in order:
        # gamma: coordinates of bar(p_j) - p_j in the finished cb elements
        r = {l: c for l, c in bar_coords[j].items() if l != j and c}
        gamma = {}
        while r:
            l = max(r, key=lambda t: position[t])
            if position[l] >= position[j]:
                raise LatticeError("bar matrix dependency is not triangular")
            g = r.pop(l)
            gamma[l] = g
            for m, c in cb[l].items():
                if m != l and c:
                    cur = r.get(m, RatFunc.zero()) - g * RatFunc.from_poly(c)
                    if cur:
                        r[m] = cur
                    else:
                        r.pop(m, None)
        col = {j: LaurentPoly.one()}
        for l, g in gamma.items():
            try:
                gl = g.as_laurent()
            except NotDivisible as e:
                raise LatticeError(f"bar correction not integral at {j}: {g.to_text()}") from e
            if gl.bar() != -gl or gl.coeff(0):
                raise LatticeError(f"bar correction not antisymmetric at {j}")
            t = LaurentPoly({e: v for e, v in gl.c.items() if e < 0})
            # b_j += t * b_l
            for m, c in cb[l].items():
                cur = col.get(m, LaurentPoly.zero()) + t * c
                if cur:
                    col[m] = cur
                else:
                    col.pop(m, None)
        cb[j] = col
    return cb


def _topo_order(labels, deps):
    state = {l: 0 for l in labels}
    out = []

    def visit(l):
        if state[l] == 1:
            raise LatticeError("cyclic bar dependency")
        if state[l] == 2:
            return
        state[l] = 1
        for m in deps[l]:
            visit(m)
        state[l] = 2
        out.append(l)

    for l in labels:
        visit(l)
    return out


# -- canonical basis of f --------------------------------------------------------


class CanonicalBasisF:
    """Canonical basis slices of f for a finite-type datum of small rank."""

    def __init__(self, alg: UAlgebra, word=None):
        self.alg = alg
        self.word = tuple(word) if word else longest_word(alg.rd.cartan)
        self.pbw = PBWBasis(alg, self.word)
        self.fs = FSpace.get(alg)
        self._slices = {}

    def slice(self, nu):
        """List of (exponent-label, expression, f-coordinates) per weight."""
        nu = tuple(nu)
        if nu in self._slices:
            return self._slices[nu]
        exps = self.pbw.exponents_of_weight(nu)
        basis_f = self.fs.basis(nu)
        if len(exps) != len(basis_f):
            raise AssertionError("PBW monomial count disagrees with dim f_nu")
        if not exps:
            self._slices[nu] = []
            return []
        mons = {e: self.pbw.monomial(e) for e in exps}
        cols = {e: self.fs.coords(mons[e], nu) for e in exps}
        cmat = [[cols[e][r] for e in exps] for r in range(len(basis_f))]
        if rank(cmat) != len(exps):
            raise AssertionError("PBW monomials are not independent")
        cinv = invert(cmat)
        bar_coords = {}
        for e in exps:
            bar_c = self.fs.coords(mons[e].bar(), nu)
            sol = [sum((cinv[r][k] * bar_c[k] for k in range(len(exps)) if bar_c[k]),
                       RatFunc.zero()) for r in range(len(exps))]
            bar_coords[e] = {exps[r]: sol[r] for r in range(len(exps)) if sol[r]}
        cb_cols = bar_triangularize(exps, bar_coords)
        out = []
        for e in exps:
            expr = self.alg.zero()
            fc = [RatFunc.zero()] * len(basis_f)
            for l, c in cb_cols[e].items():
                expr = expr + mons[l].scale(c)
                lc = cols[l]
                fc = [a + RatFunc.from_poly(c) * b for a, b in zip(fc, lc)]
            out.append((e, expr, fc))
        self._slices[nu] = out
        return out

    def elements(self, nu):
        return [expr for _, expr, _ in self.slice(nu)]


def omega_transport(alg: UAlgebra, x: UExpression) -> UExpression:
    """E-words to F-words (the omega twist used to move f into U-)."""
    out = {}
    for w, c in x.terms.items():
        nw = tuple(("F", l[1], l[2]) if l[0] == "E" else
                   (("K", tuple(-t for t in l[1])) if l[0] == "K" else l)
                   for l in w)
        out[nw] = c
    return UExpression(alg, out)


# -- based modules ----------------------------------------------------------------


@dataclass
class BasedElement:
    label: tuple
    weight: tuple
    vec: dict


class BasedModule:
    """A weight module with a distinguished basis, a bar involution operator,
    and lattice membership tests through the distinguished coordinates."""

    def __init__(self, mod: WeightModule, elements, bar_op, name=""):
        self.mod = mod
        self.elements = list(elements)
        self.bar_op = bar_op
        self.name = name
        self.by_weight = {}
        for k, el in enumerate(self.elements):
            self.by_weight.setdefault(el.weight, []).append(k)
        self._mats = {}
        self._inv = {}
        for w, idxs in self.by_weight.items():
            dim = mod.dim(w)
            if len(idxs) != dim:
                raise AssertionError("distinguished basis has the wrong size")
            m = [[self.elements[j].vec.get(w, [RatFunc.zero()] * dim)[r]
                  for j in idxs] for r in range(dim)]
            self._mats[w] = m
            self._inv[w] = invert(m)

    def labels(self):
        return [el.label for el in self.elements]

    def element(self, label):
        for el in self.elements:
            if el.label == label:
                return el
        raise KeyError(label)

    def coords(self, vec):
        """Coordinates in the distinguished basis: {label: RatFunc}."""
        out = {}
        for w, col in vec.items():
            idxs = self.by_weight.get(w)
            if idxs is None:
                if any(col):
                    raise AssertionError("vector outside the based span")
                continue
            inv = self._inv[w]
            for r, j in enumerate(idxs):
                v = sum((inv[r][c] * col[c] for c in range(len(col)) if col[c]),
                        RatFunc.zero())
                if v:
                    out[self.elements[j].label] = v
        return out

    def from_coords(self, coords):
        vec = {}
        for label, c in coords.items():
            vec = vec_add(vec, vec_scale(self.element(label).vec, c))
        return vec

    def bar(self, vec):
        return self.bar_op(vec)

    def is_bar_fixed(self, vec):
        return vec_eq(self.bar_op(vec), vec)

    def a_integral(self, vec):
        return all(c.is_integral() for c in self.coords(vec).values())

    def conj_coords(self, vec):
        """Anti-linear coordinate conjugation in the distinguished basis."""
        coords = self.coords(vec)
        out = {}
        for label, c in coords.items():
            out = _dacc(out, label, c.bar())
        return self.from_coords(out)


def _dacc(d, k, v):
    cur = d.get(k)
    cur = v if cur is None else cur + v
    if cur:
        d[k] = cur
    else:
        d.pop(k, None)
    return d


def canonical_basis_L(alg: UAlgebra, lam, cbf: CanonicalBasisF = None) -> BasedModule:
    """L(lambda) with its canonical basis {b eta != 0} and the bar involution
    fixing it (coordinate conjugation in the F-word basis)."""
    mod = SimpleModule(alg, lam)
    cbf = cbf or CanonicalBasisF(alg)
    eta = mod.highest_vector()
    elements = [BasedElement(("cb", (0,) * alg.n, 0), mod.lam, eta)]
    for w in mod.labels:
        if w == mod.lam:
            continue
        nu = _nu_of(alg, mod.lam, w)
        k = 0
        for e, expr, _ in cbf.slice(nu):
            vec = mod.act(omega_transport(alg, expr), eta)
            if vec:
                elements.append(BasedElement(("cb", nu, k), w, vec))
                k += 1
        if k != mod.dim(w):
            raise AssertionError("canonical basis misses a weight space")

    def bar_op(vec):
        return {w: [c.bar() for c in col] for w, col in vec.items()}

    return BasedModule(mod, elements, bar_op, name=f"L{tuple(lam)}")


def _nu_of(alg, lam, w):
    from .modules import _root_coords

    return _root_coords(alg.rd, tuple(a - b for a, b in zip(lam, w)))


# -- quasi-R matrix ----------------------------------------------------------------


class QuasiR:
    """Height-truncated quasi-R-matrix: layers[nu] = {(w1, w2): coeff} with
    w1 an f-word for the U- leg and w2 an f-word for the U+ leg."""

    def __init__(self, alg: UAlgebra, height):
        self.alg = alg
        self.height = height
        self.layers = {}

    def layer_ops(self, nu):
        """List of (U- expression, U+ expression, coeff)."""
        out = []
        for (w1, w2), c in self.layers.get(tuple(nu), {}).items():
            e1 = omega_transport(self.alg,
                                 UExpression(self.alg, {w1: RatFunc.one()}, normalized=True))
            e2 = UExpression(self.alg, {w2: RatFunc.one()}, normalized=True)
            out.append((e1, e2, c))
        return out

    def apply(self, tmod: TensorModule, vec, conj_first=False):
        """Theta applied to a tensor module vector (optionally after
        coordinate conjugation, giving the tensor bar when factors have
        bar-fixed bases)."""
        if conj_first:
            vec = {w: [c.bar() for c in col] for w, col in vec.items()}
        out = dict(vec)
        for nu in self.layers:
            for e1, e2, c in self.layer_ops(nu):
                piece = _apply_pure(tmod, e1, e2, vec)
                if piece:
                    out = vec_add(out, vec_scale(piece, c))
        return out


def _apply_pure(tmod: TensorModule, xexpr, yexpr, vec):
    """(x (x) y) applied to a tensor module vector."""
    out = {}
    for w, col in vec.items():
        for c, coeff in enumerate(col):
            if not coeff:
                continue
            w1, k1, w2, k2 = tmod.labels[w][c]
            lv = tmod.left.act(xexpr, tmod.left.basis_vector(w1, k1))
            if not lv:
                continue
            rv = tmod.right.act(yexpr, tmod.right.basis_vector(w2, k2))
            if not rv:
                continue
            out = vec_add(out, vec_scale(tmod.pure(lv, rv), coeff))
    return out


def solve_quasi_R(alg: UAlgebra, height, pad=2) -> QuasiR:
    """Solve the intertwining identity
    Delta(E_i) Theta = Theta (E_i (x) 1 + K_{-i} (x) E_i) layer by layer on a
    pair of Verma models; uniqueness of each layer is asserted.
    """
    theta = QuasiR(alg, height)
    fs = FSpace.get(alg)
    H = height + pad
    lam = alg.rd.dominant([H] * alg.n)
    vml = VermaModel(alg, lam)
    vmr = VermaModel(alg, lam)
    from .modules import _nus_up_to

    layers_by_h = {}
    for nu in _nus_up_to(alg.n, height):
        layers_by_h.setdefault(sum(nu), []).append(nu)
    for h in range(1, height + 1):
        unknowns = []
        for nu in layers_by_h.get(h, []):
            basis = fs.basis(nu)
            for w1 in basis:
                for w2 in basis:
                    unknowns.append((tuple(nu), w1, w2))
        if not unknowns:
            continue
        rows = []
        rhs = []
        # test vectors: eta (x) u for u a basis word of depth h (per nu')
        for nup in layers_by_h.get(h, []):
            for u in fs.basis(nup):
                uvec = vmr.word_vector(u)
                for i in range(alg.n):
                    eqs = {}
                    cols = []
                    for (nu, w1, w2) in unknowns:
                        res = _theta_eq_lhs(alg, vml, vmr, i, nu, w1, w2, uvec)
                        cols.append(res)
                    known = _theta_eq_rhs(alg, vml, vmr, theta, i, uvec, h)
                    # collect all output keys
                    keys = set(known)
                    for res in cols:
                        keys |= set(res)
                    for key in sorted(keys):
                        rows.append([res.get(key, RatFunc.zero()) for res in cols])
                        rhs.append(known.get(key, RatFunc.zero()))
        if rank(rows) != len(unknowns):
            raise AssertionError("quasi-R layer system is not determined")
        sol = solve(rows, rhs)
        if sol is None:
            raise AssertionError("quasi-R layer system inconsistent")
        for (nu, w1, w2), c in zip(unknowns, sol):
            if c:
                theta.layers.setdefault(nu, {})[(w1, w2)] = c
    return theta


def _pair_key(lvec, rvec):
    out = {}
    for nu1, c1 in lvec.items():
        for k1, x1 in enumerate(c1):
            if x1:
                for nu2, c2 in rvec.items():
                    for k2, x2 in enumerate(c2):
                        if x2:
                            out[(nu1, k1, nu2, k2)] = out.get(
                                (nu1, k1, nu2, k2), RatFunc.zero()) + x1 * x2
    return {k: v for k, v in out.items() if v}


def _pair_acc(store, piece, sign=1):
    for k, v in piece.items():
        cur = store.get(k, RatFunc.zero()) + (v if sign > 0 else -v)
        if cur:
            store[k] = cur
        else:
            store.pop(k, None)
    return store


def _theta_eq_lhs(alg, vml, vmr, i, nu, w1, w2, uvec):
    """[(E_i x 1), w1- x w2+] applied to eta (x) u, as pair coordinates."""
    e1 = omega_transport(alg, UExpression(alg, {w1: RatFunc.one()}, normalized=True))
    e2 = UExpression(alg, {w2: RatFunc.one()}, normalized=True)
    eta = vml.highest()
    out = {}
    # (E_i (x) 1) Theta_term (eta (x) u)
    lv = vml.act(e1, eta)
    rv = vmr.act(e2, uvec)
    if lv and rv:
        lv2 = vml.apply_E(i, 1, lv)
        if lv2:
            _pair_acc(out, _pair_key(lv2, rv))
    # - Theta_term (E_i (x) 1)(eta (x) u): E_i eta = 0 in a Verma
    return out


def _theta_eq_rhs(alg, vml, vmr, theta, i, uvec, h):
    """[Theta_{<h} (E_i (x) 1 + K_{-i} (x) E_i) - (E_i (x) 1 + K_i (x) E_i) Theta_{<h}]
    applied to eta (x) u, keeping only what the layer-h equation sees."""
    eta = vml.highest()
    out = {}
    ktilde = tuple(alg.d[i] * c for c in alg.rd.coroots[i])
    for nu, terms in theta.layers.items():
        for (w1, w2), c in terms.items():
            e1 = omega_transport(alg, UExpression(alg, {w1: RatFunc.one()}, normalized=True))
            e2 = UExpression(alg, {w2: RatFunc.one()}, normalized=True)
            # Theta (E_i x 1): E_i eta = 0 -> drops
            # Theta (K_{-i} x E_i)
            lv = vml.act(e1, vml.apply_K(tuple(-x for x in ktilde), eta))
            rv = vmr.act(e2, vmr.apply_E(i, 1, uvec))
            if lv and rv:
                _pair_acc(out, _pair_key(lv, rv))
            # -(K_i x E_i) Theta
            lv = vml.act(e1, eta)
            rv = vmr.act(e2, uvec)
            if lv and rv:
                lv2 = vml.apply_K(ktilde, lv)
                rv2 = vmr.apply_E(i, 1, rv)
                if lv2 and rv2:
                    _pair_acc(out, _pair_key(lv2, rv2), sign=-1)
    return out


# -- based tensor products -----------------------------------------------------------


def tensor_based(left: BasedModule, right: BasedModule, theta: QuasiR,
                 name="") -> BasedModule:
    """(M (x) N, B_M (x) B_N) made into a based module: the bar is
    Theta o (psi (x) psi) and the distinguished basis is corrected by the
    triangular algorithm."""
    tmod = TensorModule(left.mod, right.mod)

    def bar_op(vec):
        legwise = _legwise_bar(tmod, left, right, vec)
        return theta.apply(tmod, legwise)

    pre = []
    for el1 in left.elements:
        for el2 in right.elements:
            w = tuple(a + b for a, b in zip(el1.weight, el2.weight))
            vec = tmod.pure(el1.vec, el2.vec)
            pre.append(BasedElement((el1.label, el2.label), w, vec))
    std = BasedModule(tmod, pre, bar_op, name=name or "tensor")
    cb_elements = correct_basis(std)
    return BasedModule(tmod, cb_elements, bar_op, name=name or "tensor")


def _legwise_bar(tmod, left, right, vec):
    out = {}
    cache = {}
    for w, col in vec.items():
        for c, coeff in enumerate(col):
            if not coeff:
                continue
            lab = tmod.labels[w][c]
            piece = cache.get(lab)
            if piece is None:
                w1, k1, w2, k2 = lab
                lv = left.bar(left.mod.basis_vector(w1, k1))
                rv = right.bar(right.mod.basis_vector(w2, k2))
                piece = tmod.pure(lv, rv)
                cache[lab] = piece
            out = vec_add(out, vec_scale(piece, coeff.bar()))
    return out


def correct_basis(std: BasedModule):
    """Run the bar-triangular correction on a based module whose basis is not
    yet bar-fixed; returns new BasedElements (same labels)."""
    labels = std.labels()
    bar_coords = {}
    for el in std.elements:
        bar_coords[el.label] = std.coords(std.bar(el.vec))
    cb_cols = bar_triangularize(labels, bar_coords)
    out = []
    for el in std.elements:
        vec = {}
        for l, c in cb_cols[el.label].items():
            vec = vec_add(vec, vec_scale(std.element(l).vec, RatFunc.from_poly(c)))
        out.append(BasedElement(el.label, el.weight, vec))
    return out


def transition_entries(std: BasedModule, corrected):
    """t_{b;b'} entries of the corrected basis in the standard one."""
    out = {}
    for el in corrected:
        coords = std.coords(el.vec)
        out[el.label] = coords
    return out


# -- based submodules L(w lambda, mu) --------------------------------------------------


def weyl_apply(rd: RootDatum, word, lam):
    return rd.act_word_x(word, lam)


def extremal_cb_element(based: BasedModule, weight):
    """The unique distinguished basis element in an extremal (1-dim) weight
    space."""
    idxs = based.by_weight.get(tuple(weight), [])
    if len(idxs) != 1:
        raise ValueError("weight space is not a line")
    return based.elements[idxs[0]]


class Submodule:
    """A U-stable subspace given by per-weight spanning columns (module
    coordinates), with membership tests."""

    def __init__(self, mod: WeightModule, seeds):
        self.mod = mod
        self.span = {}
        self._closure(seeds)

    def _closure(self, seeds):
        frontier = []
        for v in seeds:
            if self._insert(v):
                frontier.append(v)
        while frontier:
            nxt = []
            for v in frontier:
                for i in range(self.mod.alg.n):
                    for image in (self.mod.apply_E(i, v), self.mod.apply_F(i, v)):
                        if image and self._insert(image):
                            nxt.append(image)
            frontier = nxt

    def _insert(self, vec):
        grew = False
        for w, col in vec.items():
            rows = self.span.setdefault(w, [])
            cand = list(col)
            for piv_col, piv_idx in rows:
                if cand[piv_idx]:
                    f = cand[piv_idx] / piv_col[piv_idx]
                    cand = [a - f * b for a, b in zip(cand, piv_col)]
            if any(cand):
                idx = next(k for k, x in enumerate(cand) if x)
                rows.append((cand, idx))
                grew = True
        return grew

    def dim(self, w=None):
        if w is None:
            return sum(len(r) for r in self.span.values())
        return len(self.span.get(w, ()))

    def contains(self, vec):
        for w, col in vec.items():
            rows = self.span.get(w, [])
            cand = list(col)
            for piv_col, piv_idx in rows:
                if cand[piv_idx]:
                    f = cand[piv_idx] / piv_col[piv_idx]
                    cand = [a - f * b for a, b in zip(cand, piv_col)]
            if any(cand):
                return False
        return True


def based_submodule(tensor_cb: BasedModule, seed_vec):
    """U(seed) inside a based tensor module, with the check that it is
    spanned by the distinguished basis elements it contains."""
    sub = Submodule(tensor_cb.mod, [seed_vec])
    members = [el for el in tensor_cb.elements if sub.contains(el.vec)]
    by_w = {}
    for el in members:
        by_w[el.weight] = by_w.get(el.weight, 0) + 1
    for w in set(list(sub.span) + list(by_w)):
        if by_w.get(w, 0) != sub.dim(w):
            raise AssertionError("submodule is not spanned by basis elements")
    return sub, members
