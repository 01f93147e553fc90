#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes da torre de anéis: Z_p, O_K com Frobenius e níveis ciclotômicos.
"""

import random
from fractions import Fraction

import pytest

from config import Precision
from ring_tower import (
    PAdicScalar, anel_ciclotomico, anel_nao_ramificado, discrete_log_gamma,
    frobenius, log_padico, teichmuller, teichmuller_int, trace_K_Qp, trace_Kn_K, zeta,
)


@pytest.fixture
def rng():
    return random.Random(7)


def aleatorio(anel, rng):
    return anel.elemento([rng.randrange(anel.pN) for _ in range(anel.f)])


# ----------------------------------------------------------------- Z_p

def teste_teichmuller_exemplo():
    assert teichmuller(2, Precision(p=5, N=3)).para_inteiro() == 57


def teste_teichmuller_menos_um():
    prec = Precision(p=7, N=5)
    assert teichmuller(6, prec).para_inteiro() == 7 ** 5 - 1
    assert teichmuller(1, prec).para_inteiro() == 1
    assert teichmuller(0, prec).e_zero()


@pytest.mark.parametrize("p", [3, 5, 7])
def teste_teichmuller_multiplicativo(p):
    N = 6
    mod = p ** N
    for a in range(1, p):
        w = teichmuller_int(a, p, N)
        assert pow(w, p - 1, mod) == 1
        assert w % p == a
        for b in range(1, p):
            assert teichmuller_int(a * b, p, N) == (w * teichmuller_int(b, p, N)) % mod


def teste_padic_fracoes():
    meio = PAdicScalar.de_fracao(5, Fraction(1, 2), 8)
    assert meio * 2 == 1
    inv_p = PAdicScalar.de_fracao(5, Fraction(1, 5), 8)
    assert inv_p.valuacao == -1
    assert inv_p * 5 == 1


def teste_padic_cancelamento_e_zero():
    a = PAdicScalar.de_inteiro(5, 5, 8)
    b = PAdicScalar.de_inteiro(5, -5, 8)
    soma = a + b
    assert soma.e_zero()
    assert soma.prec == 8
    # zero · p ganha um dígito de precisão absoluta
    assert (soma * a).prec == 9


def teste_padic_divisao_perde_precisao():
    a = PAdicScalar.de_inteiro(3, 9 * 2, 6)
    q = a / PAdicScalar.de_inteiro(3, 3, 6)
    assert q.valuacao == 1
    assert q.prec <= 6


def teste_log_padico_homomorfismo():
    p, N = 5, 8
    l1 = log_padico(1 + p, p, N)
    l2 = log_padico((1 + p) ** 3 % p ** N, p, N)
    assert l1.valuacao == 1
    assert l2 == l1 * 3


@pytest.mark.parametrize("s", [0, 1, 7, 30])
def teste_discrete_log_gamma(s):
    p, N = 3, 8
    a = pow(1 + p, s, p ** N)
    assert discrete_log_gamma(a, p, N) == s % p ** (N - 1)


# ----------------------------------------------------------------- O_K

@pytest.mark.parametrize("p,f", [(3, 2), (5, 2), (3, 3), (5, 3)])
def teste_frobenius_ordem_f(p, f, rng):
    anel = anel_nao_ramificado(p, 6, f)
    for _ in range(200):
        x = aleatorio(anel, rng)
        assert x.frobenius(f) == x
        assert frobenius(x.frobenius(f - 1)) == x
        diferenca = frobenius(x) - x ** p
        assert all(c % p == 0 for c in diferenca.coefs)


def teste_frobenius_fixa_zp():
    anel = anel_nao_ramificado(5, 6, 2)
    for c in (0, 1, 17, 5 ** 6 - 3):
        x = anel.de_inteiro(c)
        assert frobenius(x) == x


def teste_frobenius_de_u_p5_f2():
    anel = anel_nao_ramificado(5, 6, 2)
    u = anel.gerador()
    su = frobenius(u)
    # m(u) = u² + 4u + 2: as raízes somam −4
    assert su == -4 - u
    assert su * su + su * 4 + 2 == 0
    assert all(c % 5 == 0 for c in (su - u ** 5).coefs)


def teste_traco():
    anel = anel_nao_ramificado(5, 6, 2)
    assert trace_K_Qp(anel.um()) == 2
    assert trace_K_Qp(anel.gerador()) == -4


def teste_traco_invariante(rng):
    anel = anel_nao_ramificado(3, 6, 3)
    for _ in range(20):
        x = aleatorio(anel, rng)
        assert trace_K_Qp(frobenius(x)) == trace_K_Qp(x)


@pytest.mark.parametrize("p,f", [(3, 2), (5, 3)])
def teste_axiomas_anel(p, f, rng):
    anel = anel_nao_ramificado(p, 6, f)
    for _ in range(50):
        a, b, c = (aleatorio(anel, rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert frobenius(a * b) == frobenius(a) * frobenius(b)


def teste_inverso_unidade(rng):
    anel = anel_nao_ramificado(5, 6, 2)
    for _ in range(30):
        x = aleatorio(anel, rng)
        if x.e_unidade():
            assert x * x.inverso() == 1


# ----------------------------------------------------------------- níveis

@pytest.fixture
def prec3():
    return Precision(p=3, N=6, n_max=2)


def teste_tracos_nivel1():
    prec = Precision(p=5, N=6, n_max=2)
    anel1 = anel_ciclotomico(5, 6, 1, 1)
    assert trace_Kn_K(anel1.um()) == 4
    assert trace_Kn_K(zeta(prec, 1)) == -1


def teste_compatibilidade_zetas(prec3):
    assert zeta(prec3, 1).mergulhar(2) == zeta(prec3, 2) ** 3


def teste_polinomio_minimo(prec3):
    z2 = zeta(prec3, 2)
    soma = z2.anel.zero()
    for j in range(3):
        soma = soma + z2 ** (3 * j)
    assert soma.e_zero()


@pytest.mark.parametrize("p", [3, 5])
def teste_norma_zeta_menos_um(p):
    prec = Precision(p=p, N=6, n_max=1)
    norma = (zeta(prec, 1) - 1).norma()
    assert norma == p


def teste_nivel_excedido(prec3):
    from erros import NivelExcedido
    with pytest.raises(NivelExcedido):
        zeta(prec3, 3)


def teste_traco_formula_vs_galois(rng):
    anel = anel_ciclotomico(3, 5, 2, 2)
    for _ in range(5):
        linhas = [[rng.randrange(3 ** 5) for _ in range(anel.grau)] for _ in range(2)]
        x = anel.elemento(linhas)
        assert x.traco().mergulhar(2) == x.traco_por_galois()


def teste_galois_composicao(rng):
    anel = anel_ciclotomico(5, 5, 1, 2)
    x = anel.elemento([[rng.randrange(5 ** 5) for _ in range(anel.grau)]])
    for a, b in [(2, 3), (7, 11), (24, 2)]:
        assert x.galois(b).galois(a) == x.galois(a * b)


def teste_frobenius_nivel_comuta_com_galois(rng):
    anel = anel_ciclotomico(3, 5, 2, 1)
    x = anel.elemento([[rng.randrange(3 ** 5) for _ in range(anel.grau)] for _ in range(2)])
    assert x.frobenius().galois(2) == x.galois(2).frobenius()


def teste_valuacao_z():
    anel = anel_ciclotomico(5, 6, 1, 1)
    assert anel.z().valuacao() == Fraction(1, 4)
