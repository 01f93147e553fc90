#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes de caracteres de G_n, somas de Gauss, constantes ε e do elemento β.
"""

from fractions import Fraction

import pytest

from config import Precision
from epsilon import (
    CharacterOfGn, GroupRingElem, anel_do_grupo, beta_element, caracteres, conductor,
    conductor_por_nucleo, e_eta, epsilon_abelian, epsilon_crystalline, gamma_star, gamma_star_V,
    gauss_sum, lambda_unramified, racional_em, tate_integral_oracle, x_n_componente,
)
from erros import RepresentacaoInvalida
from ring_tower import anel_ciclotomico
from wach import FilteredPhiModule


@pytest.fixture
def prec3():
    return Precision(p=3, N=8, n_max=2)


# ----------------------------------------------------------------- caracteres

@pytest.mark.parametrize("p", [3, 5])
def teste_condutor_por_nucleo(p):
    prec = Precision(p=p, N=6, n_max=2)
    for eta in caracteres(prec, 2):
        assert conductor(eta) == conductor_por_nucleo(eta)


def teste_condutores_exemplo(prec3):
    assert CharacterOfGn(prec3, 2, 0, 0).conductor() == 0
    assert CharacterOfGn(prec3, 2, 1, 0).conductor() == 1
    assert CharacterOfGn(prec3, 2, 0, 1).conductor() == 2
    assert CharacterOfGn(prec3, 2, 1, 2).conductor() == 2


def teste_numero_de_caracteres(prec3):
    assert len(list(caracteres(prec3, 2))) == 6
    assert len(list(caracteres(prec3, 0))) == 1


def teste_caracter_multiplicativo(prec3):
    anel = anel_ciclotomico(3, prec3.N, 1, 1)
    eta = CharacterOfGn(prec3, 2, 1, 1)
    for g in (2, 4, 5, 7):
        for h in (2, 4, 8):
            assert eta.valor(g * h % 9, anel) == eta.valor(g, anel) * eta.valor(h, anel)


def teste_projecoes_somam_identidade(prec3):
    anel = anel_ciclotomico(3, prec3.N, 1, 2)
    x = anel.um() + anel.z()
    total = anel.zero()
    for eta in caracteres(prec3, 2):
        total = total + e_eta(x, eta)
    assert total == x


# ----------------------------------------------------------------- Gauss / ε

@pytest.mark.parametrize("p", [3, 5])
def teste_gauss_produto(p):
    prec = Precision(p=p, N=8, n_max=2)
    for eta in caracteres(prec, 2):
        if eta.e_trivial():
            continue
        a = eta.conductor()
        tau = gauss_sum(eta)
        anel = tau.anel
        esperado = eta.valor(p ** 2 - 1, anel) * racional_em(p ** a, anel)
        assert tau * gauss_sum(eta.inverso()) == esperado


def teste_gauss_trivial(prec3):
    assert gauss_sum(CharacterOfGn(prec3, 2, 0, 0)) == 1


@pytest.mark.parametrize("f", [1, 2])
@pytest.mark.parametrize("n", [1, 2])
def teste_epsilon_abeliano_integral_tate(f, n):
    prec = Precision(p=3, N=6, n_max=2)
    for eta in caracteres(prec, n):
        assert epsilon_abelian(eta, f) == tate_integral_oracle(eta, f)


def teste_lambda_nao_ramificado():
    assert lambda_unramified(2, 1) == -1
    assert lambda_unramified(3, 1) == 1
    assert lambda_unramified(2, 0) == 1
    with pytest.raises(RepresentacaoInvalida):
        lambda_unramified(2, 1, ramificado=True)


# ----------------------------------------------------------------- Γ*

def teste_gamma_estrela():
    assert gamma_star(3) == 2
    assert gamma_star(1) == 1
    assert gamma_star(0) == 1
    assert gamma_star(-2) == Fraction(1, 2)
    assert gamma_star(-3) == Fraction(-1, 6)


def teste_gamma_estrela_V():
    assert gamma_star_V(FilteredPhiModule.tate(3, 2)) == Fraction(1, 2)
    soma = FilteredPhiModule.tate(5, 1).soma(FilteredPhiModule.tate(5, 3))
    assert gamma_star_V(soma) == Fraction(1, 6)
    assert gamma_star_V(FilteredPhiModule.tate(5, 1, f=2)) == 1


# ----------------------------------------------------------------- anel de grupo

def teste_idempotentes_ortogonais(prec3):
    etas = list(caracteres(prec3, 1))
    e = {eta: GroupRingElem.idempotente(eta) for eta in etas}
    total = GroupRingElem.zero(prec3, 1)
    for eta in etas:
        assert e[eta] * e[eta] == e[eta]
        for outro in etas:
            if outro != eta:
                assert (e[eta] * e[outro]).e_zero()
        total = total + e[eta]
    assert total == GroupRingElem.grupo(prec3, 1, 1)


def teste_componente_do_idempotente(prec3):
    anel = anel_do_grupo(prec3, 2)
    for eta in caracteres(prec3, 2):
        e = GroupRingElem.idempotente(eta)
        for chi in caracteres(prec3, 2):
            esperado = anel.um() if chi == eta else anel.zero()
            assert e.componente(chi) == esperado


def teste_epsilon_cristalino_nivel_zero(prec3):
    fil = FilteredPhiModule.tate(3, 1)
    eps = epsilon_crystalline(fil, 0, prec3)
    assert eps.componente(CharacterOfGn(prec3, 0, 0, 0)) == 1


def teste_epsilon_cristalino_componentes(prec3):
    fil = FilteredPhiModule.tate(3, 1)
    eps = epsilon_crystalline(fil, 1, prec3)
    anel = anel_do_grupo(prec3, 1)
    for eta in caracteres(prec3, 1):
        a = eta.conductor()
        esperado = gauss_sum(eta.inverso()).mergulhar(anel.n) * racional_em(Fraction(3) ** a, anel)
        assert eps.componente(eta.inverso()) == esperado


def teste_beta_nivel_zero(prec3):
    fil = FilteredPhiModule.tate(3, 1)
    beta = beta_element(fil, 0, prec3)
    anel = anel_do_grupo(prec3, 0)
    assert beta.componente(CharacterOfGn(prec3, 0, 0, 0)) == racional_em(3, anel)


def teste_beta_componentes_nivel_um(prec3):
    fil = FilteredPhiModule.tate(3, 1)
    beta = beta_element(fil, 1, prec3)
    anel = anel_do_grupo(prec3, 1)
    trivial = CharacterOfGn(prec3, 1, 0, 0)
    mansa = CharacterOfGn(prec3, 1, 1, 0)
    assert beta.componente(trivial) == 1
    # η(−1)·Γ*(V)·q^{−1}·det^{−1} = (−1)(−1)/9
    assert beta.componente(mansa) == racional_em(Fraction(1, 9), anel)


def teste_beta_sem_alpha(prec3):
    fil = FilteredPhiModule(3, [[Fraction(3)]], [1])
    with pytest.raises(RepresentacaoInvalida):
        beta_element(fil, 1, prec3)


def teste_x_n_trivial(prec3):
    anel = anel_do_grupo(prec3, 1)
    assert x_n_componente(CharacterOfGn(prec3, 1, 0, 0)) == racional_em(Fraction(-1, 2), anel)
