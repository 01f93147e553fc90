#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes das séries (φ, Γ)-módulo: φ, ψ, ∂, Γ, resíduos e avaliação.
Usa polinômios exatos de grau < 12 para que nenhuma truncagem interfira.
"""

import random

import pytest

from config import Precision
from erros import NivelExcedido, PoloExcedido, SerieNaoPsiZero
from ring_tower import zeta
from series_phigamma import (
    AnelSeries, PsiZeroSeries, eval_at_level, gamma_act, partial, partial_inv, phi, psi,
    residue, residue_dlog,
)

CONFIGS = [(3, 1), (3, 2), (5, 1), (5, 2)]


@pytest.fixture
def rng():
    return random.Random(11)


def anel_series(p, f, n_max=2):
    return AnelSeries(Precision(p=p, N=8, M=64, f=f, n_max=n_max))


# ----------------------------------------------------------------- φ e ψ

@pytest.mark.parametrize("p,f", CONFIGS)
def teste_psi_inverte_phi(p, f, rng):
    S = anel_series(p, f)
    for _ in range(40):
        g = S.aleatoria(rng, grau=12)
        assert psi(phi(g)) == g


def teste_phi_de_x():
    S = anel_series(5, 1)
    esperado = S.Y(5) - 1
    assert phi(S.X()) == esperado


def teste_psi_de_1_mais_x_e_zero():
    S = anel_series(3, 2)
    assert psi(S.Y(1)).e_zero()


@pytest.mark.parametrize("p,f", CONFIGS)
def teste_psi_monomio_pj(p, f, rng):
    S = anel_series(p, f)
    for j in range(4):
        c = S.anel.elemento([rng.randrange(S.anel.pN) for _ in range(f)])
        entrada = S.Y(p * j).escalar(c)
        esperado = S.Y(j).escalar(c.frobenius(-1))
        assert psi(entrada) == esperado


def teste_phi_de_t_e_p_t():
    S = anel_series(3, 1)
    t = S.t()
    assert phi(t) == t.escalar(3)


# ----------------------------------------------------------------- Γ

@pytest.mark.parametrize("p,f", CONFIGS)
def teste_gamma_composicao(p, f, rng):
    S = anel_series(p, f)
    g = S.aleatoria(rng, grau=6)
    a, b = 2, p + 1
    assert gamma_act(a, gamma_act(b, g)) == gamma_act(a * b, g)


def teste_gamma_de_t():
    S = anel_series(5, 1)
    t = S.t()
    assert gamma_act(6, t) == t.escalar(6)


@pytest.mark.parametrize("p,f", CONFIGS)
def teste_gamma_comuta_com_phi_e_psi(p, f, rng):
    S = anel_series(p, f)
    for _ in range(10):
        g = S.aleatoria(rng, grau=8)
        assert phi(gamma_act(2, g)) == gamma_act(2, phi(g))
        assert psi(gamma_act(2, g)) == gamma_act(2, psi(g))


def teste_gamma_menos_um_involucao():
    S = anel_series(3, 1)
    g = S.de_coefs([1, 2, 0, 5], exata=True)
    assert gamma_act(-1, gamma_act(-1, g)) == g


# ----------------------------------------------------------------- ∂

def teste_partial_de_potencia():
    S = anel_series(5, 1)
    for a in (1, 2, 7):
        assert partial(S.Y(a)) == S.Y(a).escalar(a)


@pytest.mark.parametrize("p,f", CONFIGS)
def teste_partial_phi(p, f, rng):
    S = anel_series(p, f)
    for _ in range(10):
        g = S.aleatoria(rng, grau=10)
        assert partial(phi(g)) == phi(partial(g)).escalar(p)


def teste_partial_inv_em_medida():
    S = anel_series(5, 2)
    u = S.anel.gerador()
    m = PsiZeroSeries.de_dict(S.anel, {1: 3, 2: u, 7: 1, 13: u * 2})
    assert partial_inv(m.partial(1)) == m
    assert partial(m.para_serie(20)) == m.partial(1).para_serie(20)


def teste_medida_de_serie():
    S = anel_series(3, 1)
    m = PsiZeroSeries.de_dict(S.anel, {1: 4, 2: 1, 5: 2})
    serie = m.para_serie(12)
    assert psi(serie).e_zero()
    assert PsiZeroSeries.de_serie(serie) == m


def teste_de_serie_rejeita_psi_nao_nulo():
    S = anel_series(3, 1)
    with pytest.raises(SerieNaoPsiZero):
        PsiZeroSeries.de_serie(S.Y(3))


def teste_medida_rejeita_expoente_divisivel():
    S = anel_series(5, 1)
    with pytest.raises(SerieNaoPsiZero):
        PsiZeroSeries.de_dict(S.anel, {10: 1})


# ----------------------------------------------------------------- resíduo

def teste_residuo_monomios():
    S = anel_series(5, 1)
    assert residue(S.monomio(-1)) == 1
    assert residue(S.monomio(-2)).e_zero()
    assert residue_dlog(S.monomio(-1)) == 1


def teste_residuo_de_derivada_e_nulo(rng):
    S = anel_series(3, 2)
    for polo in (1, 2, 4):
        coefs = [S.anel.elemento([rng.randrange(S.anel.pN) for _ in range(2)]) for _ in range(9)]
        g = S.de_coefs(coefs, polo=polo, exata=True)
        assert residue_dlog(partial(g)).e_zero()


def teste_residuo_gamma_twist():
    S = anel_series(5, 1)
    g = S.monomio(-1)
    a = 6
    # res(γ_a(g)·dX/(1+X)) = a^{-1}·res(g·dX/(1+X))
    valor = residue_dlog(gamma_act(a, g)) * a
    assert valor == residue_dlog(g)


def teste_psi_rejeita_polo():
    S = anel_series(3, 1)
    with pytest.raises(PoloExcedido):
        psi(S.monomio(-1))


# ----------------------------------------------------------------- avaliação

def teste_eval_de_x():
    prec = Precision(p=3, N=8, M=64, n_max=2)
    S = AnelSeries(prec)
    assert eval_at_level(S.X(), 1, prec) == zeta(prec, 1) - 1


@pytest.mark.parametrize("p,f", [(3, 1), (3, 2), (5, 1)])
def teste_eval_de_phi(p, f, rng):
    S = anel_series(p, f)
    for _ in range(5):
        g = S.aleatoria(rng, grau=10)
        esquerda = eval_at_level(phi(g), 2, S.prec)
        direita = eval_at_level(g, 1, S.prec).frobenius().mergulhar(2)
        assert esquerda == direita


def teste_projetor_de_media(rng):
    # p·φψ(g)(ζ_{p^n} − 1) = Σ_{ζ^p = 1} g(ζ·ζ_{p^n} − 1)
    p, n = 3, 2
    S = anel_series(p, 2)
    for _ in range(5):
        g = S.aleatoria(rng, grau=12)
        esquerda = eval_at_level(phi(psi(g)), n, S.prec) * p
        valor = eval_at_level(g, n, S.prec)
        direita = valor.anel.zero()
        for j in range(p):
            direita = direita + valor.galois(1 + j * p ** (n - 1))
        assert esquerda == direita


def teste_eval_nivel_excedido():
    S = anel_series(3, 1, n_max=1)
    with pytest.raises(NivelExcedido):
        eval_at_level(S.X(), 2, S.prec)
