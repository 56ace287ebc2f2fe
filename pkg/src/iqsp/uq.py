"""The quantum group as an operator algebra of formal words.

UExpression is a Q(q)-linear combination of words in divided-power letters
E_i^(a), F_i^(a) and torus letters K_mu (mu in Y).  Words are lightly
normalized (adjacent equal-node divided powers merged, K letters pushed to
the right and fused), but no straightening across E/F happens here: equality
is decided semantically, by the bilinear form on the positive part or by
module action.
"""

from __future__ import annotations

from functools import lru_cache

from .linalg import rank, solve, invert
from .ring import LaurentPoly, RatFunc, q_binomial, q_factorial, q_integer
from .rootdata import RootDatum, SatakeDatum


class TruncationError(Exception):
    pass


class NotPositive(Exception):
    """Operation defined only on the positive part U+."""


# letters: ("E", i, a) | ("F", i, a) | ("K", mu-tuple)


def _k_letter(mu):
    return ("K", tuple(mu))


class UAlgebra:
    """Context object carrying the root datum; expressions are built from it
    so that weight bookkeeping and K-commutation are available."""

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.n = rd.cartan.n
        self.d = rd.cartan.d

    # -- constructors --------------------------------------------------------

    def zero(self):
        return UExpression(self, {})

    def one(self):
        return UExpression(self, {(): RatFunc.one()})

    def E(self, i, a=1):
        if a == 0:
            return self.one()
        return UExpression(self, {(("E", i, a),): RatFunc.one()})

    def F(self, i, a=1):
        if a == 0:
            return self.one()
        return UExpression(self, {(("F", i, a),): RatFunc.one()})

    def K(self, mu):
        mu = tuple(mu)
        if not any(mu):
            return self.one()
        return UExpression(self, {(_k_letter(mu),): RatFunc.one()})

    def K_tilde(self, i, power=1):
        mu = tuple(power * self.d[i] * c for c in self.rd.coroots[i])
        return self.K(mu)

    def word(self, letters, coeff=None):
        e = self.one() if coeff is None else UExpression(self, {(): coeff})
        for kind, i, a in letters:
            e = e * (self.E(i, a) if kind == "E" else self.F(i, a))
        return e

    # -- letter data ---------------------------------------------------------

    def letter_x_weight(self, letter):
        if letter[0] == "E":
            return tuple(letter[2] * c for c in self.rd.roots[letter[1]])
        if letter[0] == "F":
            return tuple(-letter[2] * c for c in self.rd.roots[letter[1]])
        return self.rd.zero_x()

    def word_x_weight(self, word):
        out = [0] * self.rd.x_rank
        for letter in word:
            w = self.letter_x_weight(letter)
            for k in range(len(out)):
                out[k] += w[k]
        return tuple(out)

    def word_nu(self, word):
        """Z[I] weight (E positive, F negative); K letters contribute 0."""
        nu = [0] * self.n
        for letter in word:
            if letter[0] == "E":
                nu[letter[1]] += letter[2]
            elif letter[0] == "F":
                nu[letter[1]] -= letter[2]
        return tuple(nu)

    def serre_relator(self, i, j, positive=True):
        """Divided-power Serre relator sum_s (-1)^s X_i^(s) X_j X_i^(1-a_ij-s)."""
        a_ij = self.rd.cartan.a[i][j]
        gen = self.E if positive else self.F
        out = self.zero()
        m = 1 - a_ij
        for s in range(m + 1):
            term = gen(i, s) * gen(j, 1) * gen(i, m - s)
            out = out + (term if s % 2 == 0 else -term)
        return out


class UExpression:
    """Immutable formal sum {word: RatFunc} over a UAlgebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms, normalized=False):
        self.alg = alg
        if normalized:
            self.terms = terms
        else:
            out = {}
            for word, coeff in terms.items():
                if not coeff:
                    continue
                w, extra = _normalize_word(alg, word)
                if extra is not None:
                    coeff = coeff * extra
                if not coeff:
                    continue
                acc = out.get(w)
                acc = coeff if acc is None else acc + coeff
                if acc:
                    out[w] = acc
                else:
                    out.pop(w, None)
            self.terms = out

    # -- algebra -------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w)
            acc = c if acc is None else acc + c
            if acc:
                out[w] = acc
            else:
                out.pop(w, None)
        return UExpression(self.alg, out, normalized=True)

    def __neg__(self):
        return UExpression(self.alg, {w: -c for w, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly, RatFunc)):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w, extra = _normalize_word(self.alg, w1 + w2)
                c = c1 * c2
                if extra is not None:
                    c = c * extra
                if not c:
                    continue
                acc = out.get(w)
                acc = c if acc is None else acc + c
                if acc:
                    out[w] = acc
                else:
                    out.pop(w, None)
        return UExpression(self.alg, out, normalized=True)

    def __rmul__(self, other):
        if isinstance(other, (int, LaurentPoly, RatFunc)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c):
        if isinstance(c, int):
            c = RatFunc(c)
        elif isinstance(c, LaurentPoly):
            c = RatFunc.from_poly(c)
        if not c:
            return self.alg.zero()
        return UExpression(self.alg, {w: v * c for w, v in self.terms.items()}, normalized=True)

    def __pow__(self, n):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def divided_power(self, n, d):
        """self^n / [n]_d!; valid when self is a root-vector-like element."""
        return (self ** n).scale(RatFunc.one() / RatFunc.from_poly(q_factorial(n, d)))

    # -- structure -----------------------------------------------------------

    def is_positive_part(self):
        return all(all(l[0] == "E" for l in w) for w in self.terms)

    def x_weights(self):
        return {self.alg.word_x_weight(w) for w in self.terms}

    def nu_components(self):
        """Split into Z[I]-weight-homogeneous pieces."""
        buckets = {}
        for w, c in self.terms.items():
            nu = self.alg.word_nu(w)
            buckets.setdefault(nu, {})[w] = c
        return {nu: UExpression(self.alg, t, normalized=True) for nu, t in buckets.items()}

    def bar(self):
        """Bar involution: q -> q^-1, E, F fixed, K_mu -> K_-mu."""
        out = {}
        for w, c in self.terms.items():
            nw = tuple(("K", tuple(-x for x in l[1])) if l[0] == "K" else l for l in w)
            out[nw] = c.bar()
        return UExpression(self.alg, out)

    def coefficient(self, word):
        return self.terms.get(word, RatFunc.zero())

    def expand_plain(self):
        """Rewrite divided powers as plain letters with 1/[a]! coefficients."""
        out = {}
        for w, c in self.terms.items():
            nw = []
            for l in w:
                if l[0] in "EF" and l[2] > 1:
                    c = c / RatFunc.from_poly(q_factorial(l[2], self.alg.d[l[1]]))
                    nw.extend((l[0], l[1], 1) for _ in range(l[2]))
                else:
                    nw.append(l)
            key = tuple(nw)
            acc = out.get(key)
            acc = c if acc is None else acc + c
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return out

    def map_coefficients(self, fn):
        return UExpression(self.alg, {w: fn(c) for w, c in self.terms.items()})

    def to_text(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), str(w))):
            c = self.terms[w]
            body = "*".join(_letter_text(l) for l in w) if w else "1"
            parts.append(f"({c.to_text()})*{body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"UExpression({self.to_text()})"


def _letter_text(l):
    if l[0] == "K":
        return f"K{list(l[1])}"
    sup = f"^({l[2]})" if l[2] != 1 else ""
    return f"{l[0]}{l[1]}{sup}"


def _normalize_word(alg, word):
    """Merge adjacent equal-node divided powers, push K letters right.

    Returns (normal word, scalar or None).  The scalar collects q-binomials
    from merges and q-powers from K commutation.
    """
    coeff = None
    out = []
    pending_k = [0] * alg.rd.y_rank
    have_k = False
    for letter in word:
        if letter[0] == "K":
            for t, x in enumerate(letter[1]):
                pending_k[t] += x
            have_k = any(pending_k)
            continue
        kind, i, a = letter
        if a == 0:
            continue
        if have_k:
            # K(mu) X_i^(a) = q^{+-a <mu, a_i>} X_i^(a) K(mu)
            p = alg.rd.pair(tuple(pending_k), alg.rd.roots[i]) * a
            if kind == "F":
                p = -p
            if p:
                f = RatFunc.q_power(p)
                coeff = f if coeff is None else coeff * f
        if out and out[-1][0] == kind and out[-1][1] == i:
            b = out[-1][2]
            f = RatFunc.from_poly(q_binomial(a + b, a, alg.d[i]))
            coeff = f if coeff is None else coeff * f
            out[-1] = (kind, i, a + b)
        else:
            out.append((kind, i, a))
    if have_k:
        out.append(_k_letter(pending_k))
    return tuple(out), coeff


# -- r-maps on the positive part ---------------------------------------------


def r_map(alg: UAlgebra, i, x: UExpression, left=False) -> UExpression:
    """r_i (or _i r when left=True) on U+ expressions, via the twisted
    Leibniz rules with r_i(E_j^{(a)}) = delta_ij q_i^{a-1} E_i^{(a-1)}."""
    if not x.is_positive_part():
        raise NotPositive("r-maps are defined on U+ only")
    out = {}
    for w, c in x.terms.items():
        for term_word, term_coeff in _r_word(alg, i, w, left):
            cc = c * term_coeff
            if not cc:
                continue
            nw, extra = _normalize_word(alg, term_word)
            if extra is not None:
                cc = cc * extra
            acc = out.get(nw)
            acc = cc if acc is None else acc + cc
            if acc:
                out[nw] = acc
            else:
                out.pop(nw, None)
    return UExpression(alg, out, normalized=True)


def _r_word(alg, i, word, left):
    """Yield (word, coeff) pieces of r_i(word). Letters are E-only."""
    dot = alg.rd.cartan.dot
    pieces = []
    # r_i(x x') = x r_i(x') + q^{i . |x'|} r_i(x) x'   (right version)
    # _i r(x x') = q^{i . |x|} x _i r(x') + _i r(x) x'  (left version)
    for pos, letter in enumerate(word):
        _, j, a = letter
        if j != i:
            continue
        di = alg.d[i]
        # r_i on the single letter E_i^{(a)}: q_i^{a-1} E_i^{(a-1)}
        stub = (("E", j, a - 1),) if a > 1 else ()
        base = RatFunc.q_power(di * (a - 1))
        prefix = word[:pos]
        suffix = word[pos + 1:]
        if left:
            p = 0
            for l in prefix:
                p += l[2] * dot[i][l[1]]
            pieces.append((prefix + stub + suffix, base * RatFunc.q_power(p)))
        else:
            p = 0
            for l in suffix:
                p += l[2] * dot[i][l[1]]
            pieces.append((prefix + stub + suffix, base * RatFunc.q_power(p)))
    return pieces


# -- the bilinear form on U+ --------------------------------------------------


class PositiveForm:
    """Lusztig's symmetric bilinear form on U+ ~ f, computed by the
    adjunction (E_i x, y) = (E_i, E_i)(x, _i r(y)) with
    (E_i, E_i) = (1 - q_i^-2)^-1.  Memoized per algebra."""

    def __init__(self, alg: UAlgebra):
        self.alg = alg
        one = LaurentPoly.one()
        self.norm = {
            i: RatFunc(one, one - LaurentPoly.q_power(-2 * alg.d[i]))
            for i in range(alg.n)
        }
        self._word_cache = {}

    def form(self, x: UExpression, y: UExpression) -> RatFunc:
        xs = x.expand_plain()
        ys = y.expand_plain()
        total = RatFunc.zero()
        for wx, cx in xs.items():
            if any(l[0] != "E" for l in wx):
                raise NotPositive("form defined on U+ only")
            for wy, cy in ys.items():
                v = self._form_words(wx, wy)
                if v:
                    total = total + cx * cy * v
        return total

    def _form_words(self, wx, wy):
        if len(wx) != len(wy):
            return RatFunc.zero()
        if not wx:
            return RatFunc.one()
        key = (wx, wy)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        i = wx[0][1]
        rest = wx[1:]
        # (E_i rest, wy) = (E_i,E_i) * (rest, _i r(wy))
        total = RatFunc.zero()
        y = UExpression(self.alg, {wy: RatFunc.one()}, normalized=True)
        ry = r_map(self.alg, i, y, left=True)
        for w2, c2 in ry.expand_plain().items():
            v = self._form_words(rest, w2)
            if v:
                total = total + c2 * v
        total = total * self.norm[i]
        self._word_cache[key] = total
        return total


_FORM_CACHE = {}


def positive_form(alg: UAlgebra) -> PositiveForm:
    f = _FORM_CACHE.get(id(alg))
    if f is None:
        f = PositiveForm(alg)
        _FORM_CACHE[id(alg)] = f
    return f


def words_of_weight(alg: UAlgebra, nu):
    """All plain E-words of Z[I]-weight nu (multiset permutations)."""
    letters = []
    for i, m in enumerate(nu):
        letters += [i] * m
    seen = set()
    out = []

    def rec(prefix, remaining):
        if not remaining:
            w = tuple(("E", i, 1) for i in prefix)
            out.append(w)
            return
        used = set()
        for k, i in enumerate(remaining):
            if i in used:
                continue
            used.add(i)
            rec(prefix + [i], remaining[:k] + remaining[k + 1:])

    rec([], letters)
    return out


_DIM_CACHE = {}


def dim_f(alg: UAlgebra, nu):
    """dim f_nu = rank of the Gram matrix of all words of weight nu."""
    key = (id(alg), nu)
    if key in _DIM_CACHE:
        return _DIM_CACHE[key]
    ws = words_of_weight(alg, nu)
    pf = positive_form(alg)
    gram = [[pf._form_words(a, b) for b in ws] for a in ws]
    r = rank(gram)
    _DIM_CACHE[key] = r
    return r


def semantic_eq_positive(x: UExpression, y: UExpression) -> bool:
    """Equality in U+ via the nondegenerate form: x = y iff (x - y, w) = 0
    for every word w of the relevant weights."""
    alg = x.alg
    diff = x - y
    if not diff:
        return True
    pf = positive_form(alg)
    for nu, comp in diff.nu_components().items():
        if any(c < 0 for c in nu):
            return False
        for w in words_of_weight(alg, nu):
            probe = UExpression(alg, {w: RatFunc.one()}, normalized=True)
            if pf.form(comp, probe):
                return False
    return True


# -- symmetries ----------------------------------------------------------------


class Symmetry:
    """A (possibly anti-) homomorphism given by images of E_i, F_i, K_mu,
    with an optional coefficient conjugation."""

    def __init__(self, alg, name, e_img, f_img, k_img, reverse, conj):
        self.alg = alg
        self.name = name
        self.e_img = e_img  # i -> UExpression
        self.f_img = f_img
        self.k_img = k_img  # mu-tuple -> UExpression
        self.reverse = reverse
        self.conj = conj
        self._letter_cache = {}

    def __call__(self, x: UExpression) -> UExpression:
        out = self.alg.zero()
        for w, c in x.terms.items():
            if self.conj:
                c = c.bar()
            letters = reversed(w) if self.reverse else w
            term = UExpression(self.alg, {(): c}, normalized=True)
            for l in letters:
                term = term * self._letter_image(l)
            out = out + term
        return out

    def _letter_image(self, l):
        hit = self._letter_cache.get(l)
        if hit is not None:
            return hit
        if l[0] == "K":
            img = self.k_img(l[1])
        else:
            base = self.e_img(l[1]) if l[0] == "E" else self.f_img(l[1])
            img = base.divided_power(l[2], self.alg.d[l[1]]) if l[2] > 1 else base
        self._letter_cache[l] = img
        return img


def symmetry(alg: UAlgebra, kind: str, datum: SatakeDatum = None) -> Symmetry:
    """Factory for omega, wp, sigma, tau, psi_bar, vartheta."""
    rd = alg.rd

    def k_of(mu):
        return alg.K(mu)

    def k_neg(mu):
        return alg.K(tuple(-x for x in mu))

    if kind == "omega":
        return Symmetry(alg, kind, lambda i: alg.F(i), lambda i: alg.E(i), k_neg,
                        reverse=False, conj=False)
    if kind == "sigma":
        return Symmetry(alg, kind, lambda i: alg.E(i), lambda i: alg.F(i), k_neg,
                        reverse=True, conj=False)
    if kind == "psi_bar":
        return Symmetry(alg, kind, lambda i: alg.E(i), lambda i: alg.F(i), k_neg,
                        reverse=False, conj=True)
    if kind == "wp":
        return Symmetry(
            alg, kind,
            lambda i: alg.F(i).scale(RatFunc.q_power(-alg.d[i])) * alg.K_tilde(i),
            lambda i: alg.E(i).scale(RatFunc.q_power(-alg.d[i])) * alg.K_tilde(i, -1),
            k_of, reverse=True, conj=False)
    if kind == "tau":
        if datum is None:
            raise ValueError("tau needs a Satake datum")
        return Symmetry(
            alg, kind,
            lambda i: alg.E(datum.tau[i]),
            lambda i: alg.F(datum.tau[i]),
            lambda mu: alg.K(datum.tau_on_y(mu)),
            reverse=False, conj=False)
    if kind == "vartheta":
        if datum is None:
            raise ValueError("vartheta needs a Satake datum")

        def e_img(i):
            ti = datum.tau[i]
            return alg.F(ti).scale(RatFunc.q_power(alg.d[ti])) * alg.K_tilde(ti, -1)

        def f_img(i):
            ti = datum.tau[i]
            return alg.E(ti).scale(RatFunc.q_power(alg.d[ti])) * alg.K_tilde(ti)

        return Symmetry(alg, kind, e_img, f_img,
                        lambda mu: alg.K(tuple(-x for x in datum.tau_on_y(mu))),
                        reverse=False, conj=False)
    raise ValueError(f"unknown symmetry {kind!r}")


# -- braid operators on U+ ------------------------------------------------------


def braid_T_letterwise(alg: UAlgebra, i, x: UExpression) -> UExpression:
    """T_i = T''_{i,+1} applied letter by letter; valid only when no E_i
    letters occur in x (then each letter image stays in U+)."""
    out = alg.zero()
    for w, c in x.terms.items():
        term = UExpression(alg, {(): c}, normalized=True)
        for l in w:
            if l[0] != "E":
                raise NotPositive("letterwise braid is for U+ words")
            if l[1] == i:
                raise NotPositive("letterwise braid hit an E_i letter")
            img = _braid_image_other(alg, i, l[1])
            term = term * (img.divided_power(l[2], alg.d[l[1]]) if l[2] > 1 else img)
        out = out + term
    return out


_BRAID_IMG = {}


def _braid_image_other(alg, i, j):
    """T_i(E_j) = sum_{r+s=-<i,j'>} (-1)^r q_i^{-r} E_i^(s) E_j E_i^(r), j != i."""
    key = (id(alg), i, j)
    hit = _BRAID_IMG.get(key)
    if hit is not None:
        return hit
    m = -alg.rd.cartan.a[i][j]
    out = alg.zero()
    for r in range(m + 1):
        s = m - r
        term = alg.E(i, s) * alg.E(j) * alg.E(i, r)
        term = term.scale(RatFunc.q_power(-r * alg.d[i]) * RatFunc((-1) ** r))
        out = out + term
    _BRAID_IMG[key] = out
    return out
