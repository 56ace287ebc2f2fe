import pytest

from iqsp.ring import LaurentPoly, RatFunc, q_integer
from iqsp.rootdata import CartanDatum, RootDatum
from iqsp.uq import UAlgebra, semantic_eq_positive
from iqsp.modules import (FSpace, SimpleModule, VermaModel, braid_on_module,
                          braid_inverse_on_module, braid_word_on_module,
                          braid_T_plus, braid_word_T_plus, express_in_positive,
                          freudenthal, semantic_eq_module, tensor, vec_add,
                          vec_eq, vec_scale)

B2_DOT = [[4, -2], [-2, 2]]
A2 = [[2, -1], [-1, 2]]


def alg_of(cartan=None, dot=None):
    ca = CartanDatum(dot) if dot else CartanDatum.from_cartan(cartan)
    return UAlgebra(RootDatum.simply_connected(ca))


A1 = alg_of(cartan=[[2]])
A2ALG = alg_of(cartan=A2)
B2ALG = alg_of(dot=B2_DOT)


def test_freudenthal_a1():
    m = freudenthal(A1.rd, (2,))
    assert m == {(2,): 1, (0,): 1, (-2,): 1}


def test_freudenthal_a2_adjoint():
    m = freudenthal(A2ALG.rd, (1, 1))
    assert sum(m.values()) == 8
    assert m[(0, 0)] == 2


def test_freudenthal_b2():
    assert sum(freudenthal(B2ALG.rd, (1, 0)).values()) == 5
    assert sum(freudenthal(B2ALG.rd, (0, 1)).values()) == 4


def test_build_L_a1_string():
    mod = SimpleModule(A1, (2,))
    assert sorted(mod.labels) == [(-2,), (0,), (2,)]
    assert all(mod.dim(w) == 1 for w in mod.labels)
    assert mod.labels[(0,)] == [(("F", 0, 1),)]
    assert mod.labels[(-2,)] == [(("F", 0, 2),)]


def test_build_L_a2_fundamental():
    mod = SimpleModule(A2ALG, (1, 0))
    assert mod.dim() == 3
    ws = set(mod.labels)
    lam = (1, 0)
    a0, a1 = A2ALG.rd.roots
    assert ws == {lam,
                  tuple(x - y for x, y in zip(lam, a0)),
                  tuple(x - y - z for x, y, z in zip(lam, a0, a1))}


def test_build_L_b2_dims():
    mod = SimpleModule(B2ALG, (1, 0))
    assert mod.dim() == 5
    mod2 = SimpleModule(B2ALG, (0, 1))
    assert mod2.dim() == 4


def test_act_highest_weight_string():
    mod = SimpleModule(A1, (3,))
    eta = mod.highest_vector()
    v = mod.apply_F(0, eta)
    w = mod.apply_E(0, v)
    assert vec_eq(w, vec_scale(eta, RatFunc.from_poly(q_integer(3, 1))))


def test_serre_annihilates_module():
    mod = SimpleModule(A2ALG, (2, 1))
    s_pos = A2ALG.serre_relator(0, 1)
    s_neg = A2ALG.serre_relator(0, 1, positive=False)
    for w in mod.labels:
        for k in range(mod.dim(w)):
            v = mod.basis_vector(w, k)
            assert not mod.act(s_pos, v)
            assert not mod.act(s_neg, v)


def test_commutator_relation_on_module():
    mod = SimpleModule(B2ALG, (1, 1))
    qi = [LaurentPoly.q_power(2 * d) - LaurentPoly.q_power(-2 * d) for d in (0,)]
    for i in range(2):
        di = B2ALG.d[i]
        den = RatFunc.from_poly(
            LaurentPoly.q_power(di) - LaurentPoly.q_power(-di))
        for j in range(2):
            for w in mod.labels:
                for k in range(mod.dim(w)):
                    v = mod.basis_vector(w, k)
                    lhs = vec_add(mod.apply_E(i, mod.apply_F(j, v)),
                                  vec_scale(mod.apply_F(j, mod.apply_E(i, v)), RatFunc(-1)))
                    if i != j:
                        assert not lhs
                    else:
                        kt = tuple(di * c for c in B2ALG.rd.coroots[i])
                        rhs = vec_add(mod.apply_K(kt, v),
                                      vec_scale(mod.apply_K(tuple(-c for c in kt), v),
                                                RatFunc(-1)))
                        rhs = vec_scale(rhs, RatFunc.one() / den)
                        assert vec_eq(lhs, rhs)


def test_tensor_coproduct_example():
    # F(eta x eta) = eta x F eta + F eta x q^-1 eta in L(1) x L(1)
    mod = SimpleModule(A1, (1,))
    t = tensor(mod, mod)
    eta = mod.highest_vector()
    feta = mod.apply_F(0, eta)
    v = t.apply_F(0, t.pure(eta, eta))
    want = vec_add(t.pure(eta, feta),
                   vec_scale(t.pure(feta, eta), RatFunc.q_power(-1)))
    assert vec_eq(v, want)


def test_tensor_dims_are_convolutions():
    m1 = SimpleModule(A2ALG, (1, 0))
    m2 = SimpleModule(A2ALG, (0, 1))
    t = tensor(m1, m2)
    assert t.dim() == 9
    for w in t.labels:
        n = sum(m1.dim(w1) * m2.dim(tuple(a - b for a, b in zip(w, w1)))
                for w1 in m1.labels)
        assert t.dim(w) == n


def test_tensor_k_action():
    m1 = SimpleModule(A1, (1,))
    t = tensor(m1, m1)
    v = t.pure(m1.highest_vector(), m1.apply_F(0, m1.highest_vector()))
    got = t.apply_K((1,), v)
    assert vec_eq(got, vec_scale(v, RatFunc.q_power(0 * 1 + 0)))  # weight 0 total? no:
    # weights: 1 + (-1) = 0, so K acts trivially
    assert vec_eq(got, v)


# -- module braid operators ------------------------------------------------------


def test_braid_rank_one_reflection():
    mod = SimpleModule(A1, (1,))
    eta = mod.highest_vector()
    img = braid_on_module(mod, 0, eta)
    # T''_{0,+1} eta = -q F eta
    want = vec_scale(mod.apply_F(0, eta), RatFunc.q_power(1) * RatFunc(-1))
    assert vec_eq(img, want)
    low = mod.apply_F(0, eta)
    assert vec_eq(braid_on_module(mod, 0, low), eta)


def test_braid_inverse():
    mod = SimpleModule(A2ALG, (1, 1))
    for w in list(mod.labels)[:4]:
        v = mod.basis_vector(w, 0)
        img = braid_on_module(mod, 0, v)
        back = braid_on_module(mod, 0, img, "T'", -1)
        assert vec_eq(back, v)


def test_braid_weight_reflection():
    mod = SimpleModule(B2ALG, (1, 1))
    eta = mod.highest_vector()
    img = braid_word_on_module(mod, (0, 1), eta)
    (w,) = img.keys()
    want = B2ALG.rd.act_word_x((0, 1), mod.lam)
    assert w == want


def test_braid_algebra_module_compatibility():
    mod = SimpleModule(A2ALG, (1, 1))
    x = A2ALG.E(1)
    tx = braid_T_plus(A2ALG, 0, x)
    for w in list(mod.labels)[:5]:
        v = mod.basis_vector(w, 0)
        lhs = braid_on_module(mod, 0, mod.act(x, v))
        rhs = mod.act(tx, braid_on_module(mod, 0, v))
        assert vec_eq(lhs, rhs)


# -- algebra braid and straightening ------------------------------------------------


def test_braid_b2_paper_image():
    # T_1(E_0) = E_1^(2) E_0 - q^-1 E_1 E_0 E_1 + q^-2 E_0 E_1^(2)
    got = braid_T_plus(B2ALG, 1, B2ALG.E(0))
    want = B2ALG.E(1, 2) * B2ALG.E(0) \
        + (B2ALG.E(1) * B2ALG.E(0) * B2ALG.E(1)).scale(RatFunc.q_power(-1) * RatFunc(-1)) \
        + (B2ALG.E(0) * B2ALG.E(1, 2)).scale(RatFunc.q_power(-2))
    assert (got - want).terms == {}


def test_braid_trivial_when_orthogonal():
    alg = alg_of(cartan=[[2, 0], [0, 2]])
    got = braid_T_plus(alg, 0, alg.E(1))
    assert got.terms == alg.E(1).terms


def test_braid_straightening_a2():
    # s_0 s_1 (a_0) = a_1, so T_0 T_1 (E_0) = E_1 up to the known normalization
    got = braid_word_T_plus(A2ALG, (0, 1), A2ALG.E(0))
    assert semantic_eq_positive(got, A2ALG.E(1))


def test_braid_relation_a2_on_module():
    mod = SimpleModule(A2ALG, (1, 1))
    for w in list(mod.labels):
        for k in range(mod.dim(w)):
            v = mod.basis_vector(w, k)
            lhs = braid_word_on_module(mod, (0, 1, 0), v)
            rhs = braid_word_on_module(mod, (1, 0, 1), v)
            assert vec_eq(lhs, rhs)


def test_braid_relation_b2_algebra():
    # s_0 s_1 s_0 fixes a_1 and s_1 s_0 s_1 fixes a_0, so the corresponding
    # braid words act as the identity on the matching generator
    got = braid_word_T_plus(B2ALG, (0, 1, 0), B2ALG.E(1))
    assert semantic_eq_positive(got, B2ALG.E(1))
    got = braid_word_T_plus(B2ALG, (1, 0, 1), B2ALG.E(0))
    assert semantic_eq_positive(got, B2ALG.E(0))


def test_express_in_positive_roundtrip():
    x = B2ALG.E(1) * B2ALG.E(0) + B2ALG.E(0).scale(RatFunc.q_power(2)) * B2ALG.E(1)
    nu = (1, 1)
    u = express_in_positive(B2ALG, x, nu)
    assert semantic_eq_positive(u, x)


def test_semantic_eq_module_agrees_with_form():
    s = A2ALG.serre_relator(0, 1)
    assert semantic_eq_module(A2ALG, s, A2ALG.zero())
    assert not semantic_eq_module(A2ALG, A2ALG.E(0) * A2ALG.E(1),
                                  A2ALG.E(1) * A2ALG.E(0))


def test_verma_model_matches_simple_module_at_top():
    vm = VermaModel(A2ALG, (3, 3))
    mod = SimpleModule(A2ALG, (3, 3), height_cap=2, check_dims=False)
    eta_v = vm.highest()
    eta_m = mod.highest_vector()
    # E_0 F_0 F_1 eta agrees in both models
    v1 = vm.apply_E(0, 1, vm.apply_F(1, 1, vm.apply_F(0, 1, eta_v)))
    m1 = mod.apply_E(0, mod.apply_F(1, mod.apply_F(0, eta_m)))
    # compare coordinates through the word pairing: both are multiples of F_1 eta
    (nu, coords), = v1.items()
    assert nu == (0, 1)
    (w, col), = m1.items()
    assert w == tuple(a - b for a, b in zip((3, 3), A2ALG.rd.roots[1]))
