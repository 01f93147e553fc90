#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes do complexo de Herr, da cohomologia por descida, de TR_n,
do produto cup e das classes cl(x_n, α).
"""

from fractions import Fraction

import pytest

import herr
from config import Precision
from erros import RepresentacaoInvalida
from herr import (
    _padic_em, chi_gamma_n, coboundary, cohomology, corestricao, cup_product, dualidade_postos,
    equivariant_pairing, gerador_psi_um, gram_cup, herr_complex, invariantes_bloco, inversa_q, iwasawa_h1_class,
    para_modelo_reescalado, phi_laurent, psi_laurent, tr_map,
)
from lambda_descent import log_chi_gamma_n
from ring_tower import PAdicScalar
from series_phigamma import AnelSeries, phi
from wach import FilteredPhiModule, soma_direta, tate_twist_wach


@pytest.fixture
def prec3():
    return Precision(p=3, N=6, M=16, M_lambda=32)


# ----------------------------------------------------------------- complexo truncado

@pytest.mark.parametrize("r,lam,n,k", [(0, 1, 1, 0), (1, 1, 1, 0), (2, 2, 1, 1), (1, 1, 2, 0)])
def teste_complexo_d1_d0_nulo(prec3, r, lam, n, k):
    W = tate_twist_wach(r, lam, prec3)
    assert herr_complex(W, n, k, L=5).composicao_nula()


def teste_complexo_soma_direta(prec3):
    W = soma_direta(tate_twist_wach(0, 1, prec3), tate_twist_wach(1, 1, prec3))
    assert herr_complex(W, 1, L=4).composicao_nula()


def teste_h0_constantes(prec3):
    geradores = herr_complex(tate_twist_wach(0, 1, prec3), 1, L=5).h0_livre()
    assert len(geradores) == 1
    v = geradores[0]
    assert v[0] % 3 != 0
    assert all(x == 0 for x in v[1:])


@pytest.mark.parametrize("r,lam", [(0, 2), (1, 1)])
def teste_h0_nulo(prec3, r, lam):
    assert herr_complex(tate_twist_wach(r, lam, prec3), 1, L=5).h0_livre() == []


def teste_torcao_multiplica_gamma(prec3):
    W = tate_twist_wach(1, 1, prec3)
    L, mod = 4, prec3.pN
    c0 = herr_complex(W, 1, 0, L)
    c1 = herr_complex(W, 1, 1, L)
    a = chi_gamma_n(1, 3)
    for lin in range(L):
        for col in range(L):
            delta = int(lin == col)
            g0 = c0.d0[L + lin][col] + delta
            g1 = c1.d0[L + lin][col] + delta
            assert (g1 - a * g0) % mod == 0


# ----------------------------------------------------------------- cohomologia

def teste_cohomologia_qp(prec3):
    resumo = cohomology(FilteredPhiModule.tate(3, 0), 1, prec3)
    assert resumo.como_tupla() == (1, 3, 0)
    assert resumo.torcao[2] == [1]
    assert resumo.euler_confere()


def teste_cohomologia_qp1(prec3):
    resumo = cohomology(FilteredPhiModule.tate(3, -1), 1, prec3)
    assert resumo.como_tupla() == (0, 3, 1)
    assert resumo.torcao[1] == [1]
    assert resumo.euler_confere()


@pytest.mark.parametrize("n", [1, 2])
def teste_h0_trivial_todo_nivel(prec3, n):
    assert cohomology(FilteredPhiModule.tate(3, 0), n, prec3).postos[0] == 1


@pytest.mark.parametrize("p,n,r,lam", [(3, 2, 0, 1), (3, 2, -1, 1), (5, 1, 2, 1), (5, 2, 1, 2), (3, 1, 3, 1)])
def teste_euler(p, n, r, lam):
    prec = Precision(p=p, N=6, M_lambda=32)
    resumo = cohomology(FilteredPhiModule.tate(p, r, lam=lam), n, prec)
    assert resumo.euler_confere()
    assert resumo.euler() == -(p - 1) * p ** (n - 1)


def teste_cohomologia_nivel_dois_torcao(prec3):
    resumo = cohomology(FilteredPhiModule.tate(3, 0), 2, prec3)
    assert resumo.como_tupla() == (1, 7, 0)
    assert resumo.torcao[2] == [2]


def teste_cohomologia_soma(prec3):
    fil = FilteredPhiModule.tate(3, 0).soma(FilteredPhiModule.tate(3, -1))
    resumo = cohomology(fil, 1, prec3)
    assert resumo.como_tupla() == (1, 6, 1)
    assert resumo.euler() == -4


@pytest.mark.parametrize("r,lam", [(0, 1), (-1, 1), (1, 1), (0, 2), (2, 1)])
def teste_dualidade_postos(prec3, r, lam):
    for i, direto, dual in dualidade_postos(FilteredPhiModule.tate(3, r, lam=lam), 1, prec3):
        assert direto == dual, i


def teste_cohomologia_nao_diagonal(prec3):
    fil = FilteredPhiModule(3, [[1, 1], [0, 1]], [0, 0])
    with pytest.raises(RepresentacaoInvalida):
        cohomology(fil, 1, prec3)


@pytest.mark.parametrize("j,lam,n,e", [(0, 1, 1, 6), (1, 1, 1, 1), (0, 4, 1, 1), (3, 1, 1, 2), (1, 1, 2, 2), (0, 10, 1, 2)])
def teste_invariantes_bloco(prec3, j, lam, n, e):
    assert invariantes_bloco(j, lam, n, prec3) == e


@pytest.mark.parametrize("lam,tor1,tor2", [(4, [1], [1]), (10, [2], [1])])
def teste_cohomologia_lambda_congruente(prec3, lam, tor1, tor2):
    resumo = cohomology(FilteredPhiModule.tate(3, 0, lam=lam), 1, prec3)
    assert resumo.como_tupla() == (0, 2, 0)
    assert resumo.torcao[1] == tor1
    assert resumo.torcao[2] == tor2
    assert resumo.modelo_confere and resumo.estavel


def teste_cohomologia_segue_o_complexo(prec3, monkeypatch):
    original = herr.herr_complex

    def escalado(*args, **kwargs):
        c = original(*args, **kwargs)
        c.d0 = [[3 * x % prec3.pN for x in linha] for linha in c.d0]
        return c

    monkeypatch.setattr(herr, "herr_complex", escalado)
    resumo = cohomology(FilteredPhiModule.tate(3, -1), 1, prec3)
    assert resumo.torcao[1] == [2]
    assert not resumo.modelo_confere


@pytest.mark.parametrize("r", [0, -1, 2])
def teste_cohomologia_estavel_em_l(prec3, r):
    curto = cohomology(FilteredPhiModule.tate(3, r), 1, prec3, L=4)
    longo = cohomology(FilteredPhiModule.tate(3, r), 1, prec3, L=7)
    assert curto.estavel and longo.estavel
    assert curto.torcao == longo.torcao
    assert curto.como_tupla() == longo.como_tupla()


# ----------------------------------------------------------------- Laurent

def teste_inversa_q(prec3):
    S = AnelSeries(prec3)
    assert S.q() * inversa_q(S) == S.um()


def teste_phi_laurent_inverte_phi_x(prec3):
    S = AnelSeries(prec3)
    phi_x = S.X() * S.q()
    assert phi_laurent(S.monomio(-1), S) * phi_x == S.um()


def teste_psi_laurent_um_sobre_x(prec3):
    S = AnelSeries(prec3)
    assert psi_laurent(S.monomio(-1), S) == S.monomio(-1)


# ----------------------------------------------------------------- TR_n

@pytest.mark.parametrize("n", [1, 2])
def teste_tr_um_sobre_x(prec3, n):
    S = AnelSeries(prec3)
    esperado = -(3 ** n) / log_chi_gamma_n(n, prec3)
    assert tr_map(S.monomio(-1), n, prec3) == esperado


def teste_tr_residuo_nulo(prec3):
    S = AnelSeries(prec3)
    assert tr_map(S.X() + S.um(), 1, prec3).e_zero()


def teste_tr_linear(prec3):
    S = AnelSeries(prec3)
    h = S.monomio(-1) * 2 + S.monomio(-2)
    assert tr_map(h, 1, prec3) == tr_map(S.monomio(-1), 1, prec3)
    assert tr_map(S.monomio(-2), 1, prec3) == -tr_map(S.monomio(-1), 1, prec3)


# ----------------------------------------------------------------- cociclos

def teste_classe_alpha_zero(prec3):
    S = AnelSeries(prec3)
    c = iwasawa_h1_class(S.zero(), 1, prec3)
    assert c.x.e_zero()
    assert c.e_cociclo()


def teste_classe_phi_fixo(prec3):
    # λ = 1 e α = 1 ⇒ (φ − 1)α = 0
    S = AnelSeries(prec3)
    c = iwasawa_h1_class(S.um(), 1, prec3)
    assert c.x.e_zero()


def teste_classe_condicao_cociclo(prec3):
    S = AnelSeries(prec3)
    c = iwasawa_h1_class(S.monomio(-1), 1, prec3)
    assert c.e_cociclo()
    assert c.y == S.monomio(-1)


def teste_corestricao_e_cociclo(prec3):
    S = AnelSeries(prec3)
    c2 = iwasawa_h1_class(S.monomio(-1), 2, prec3)
    c1 = corestricao(c2)
    assert c1.n == 1
    assert c1.e_cociclo()
    assert c1.y == S.monomio(-1)


def teste_cobordo_e_cociclo(prec3):
    S = AnelSeries(prec3)
    z = S.de_coefs([1, 2, 0, 1], exata=True)
    assert coboundary(z, 1, prec3).e_cociclo()
    assert coboundary(z, 1, prec3, peso=1, lam=2).e_cociclo()


def teste_cup_cobordo_nulo(prec3):
    S = AnelSeries(prec3)
    z = S.de_coefs([1, 2, 0, 1], exata=True)
    c2 = iwasawa_h1_class(S.monomio(-1), 1, prec3, r=-1)
    assert cup_product(coboundary(z, 1, prec3), c2).e_zero()


def teste_cup_bilinear(prec3):
    S = AnelSeries(prec3)
    z = S.de_coefs([2, 0, 1], exata=True)
    c1 = iwasawa_h1_class(S.monomio(-1), 1, prec3)
    c2 = iwasawa_h1_class(S.monomio(-1), 1, prec3, r=-1)
    soma = c1 + coboundary(z, 1, prec3)
    assert cup_product(soma, c2) == cup_product(c1, c2)
    assert cup_product(c1.escalar(2), c2) == cup_product(c1, c2) * 2


def teste_cup_exige_dualidade(prec3):
    S = AnelSeries(prec3)
    c = iwasawa_h1_class(S.zero(), 1, prec3)
    with pytest.raises(RepresentacaoInvalida):
        cup_product(c, c)


def teste_modelos_nao_se_misturam(prec3):
    S = AnelSeries(prec3)
    c = iwasawa_h1_class(S.zero(), 1, prec3)
    with pytest.raises(RepresentacaoInvalida):
        c + para_modelo_reescalado(c)


# ----------------------------------------------------------------- emparelhamento

def teste_emparelhamento_classe_nula(prec3):
    S = AnelSeries(prec3)
    zero = iwasawa_h1_class(S.zero(), 1, prec3)
    c2 = iwasawa_h1_class(S.monomio(-1), 1, prec3, r=-1)
    assert equivariant_pairing(zero, c2).e_zero()


def teste_emparelhamento_coeficiente_identidade(prec3):
    S = AnelSeries(prec3)
    c1 = iwasawa_h1_class(S.monomio(-1), 1, prec3)
    c2 = iwasawa_h1_class(S.monomio(-1), 1, prec3, r=-1)
    par = equivariant_pairing(c1, c2)
    assert set(par.coefs) == {1, 2}
    assert par.coefs[1] == _padic_em(cup_product(c1, c2), par.anel)


# ----------------------------------------------------------------- K = Q_{p^2}

@pytest.fixture
def prec_f2():
    return Precision(p=3, N=6, M=16, f=2, M_lambda=32)


def teste_phi_laurent_frobenius_no_polo(prec_f2):
    S = AnelSeries(prec_f2)
    u = S.anel.gerador()
    phi_x = S.X() * S.q()
    assert phi_laurent(S.monomio(-1, u), S) * phi_x == S.um() * u.frobenius()
    assert not phi_laurent(S.monomio(-1, u), S) * phi_x == S.um() * u


def teste_psi_laurent_frobenius_inverso(prec_f2):
    S = AnelSeries(prec_f2)
    u = S.anel.gerador()
    assert psi_laurent(S.monomio(-1, u), S) == S.monomio(-1, u.frobenius(-1))


def teste_tr_usa_o_traco(prec_f2):
    S = AnelSeries(prec_f2)
    u = S.anel.gerador()
    assert tr_map(S.monomio(-1, u), 1, prec_f2) == tr_map(S.monomio(-1), 1, prec_f2) * u.traco()


def teste_cobordo_laurent_nao_ramificado(prec_f2):
    S = AnelSeries(prec_f2)
    u = S.anel.gerador()
    z = S.monomio(-1, u) + S.monomio(2, u * u) + S.um()
    assert coboundary(z, 1, prec_f2).e_cociclo()
    assert coboundary(z, 1, prec_f2, peso=1, lam=2).e_cociclo()


def teste_cup_f2_dobra_o_de_qp(prec3, prec_f2):
    S1, S2 = AnelSeries(prec3), AnelSeries(prec_f2)
    c1 = iwasawa_h1_class(S2.monomio(-1), 1, prec_f2)
    c2 = iwasawa_h1_class(S2.monomio(-1), 1, prec_f2, r=-1)
    assert c1.e_cociclo() and c2.e_cociclo()
    base = cup_product(iwasawa_h1_class(S1.monomio(-1), 1, prec3),
                       iwasawa_h1_class(S1.monomio(-1), 1, prec3, r=-1))
    assert cup_product(c1, c2) == base * 2


# ----------------------------------------------------------------- Gram do cup

def teste_gram_cup_circulante(prec3):
    S = AnelSeries(prec3)
    c1 = iwasawa_h1_class(S.monomio(-1), 1, prec3)
    c2 = iwasawa_h1_class(S.monomio(-1), 1, prec3, r=-1)
    gram = gram_cup(c1, c2)
    M = gram.matriz
    assert gram.elementos == [1, 2]
    assert M[0][0] == cup_product(c1, c2)
    assert M[0][0] == M[1][1] and M[0][1] == M[1][0]
    par = equivariant_pairing(c1, c2)
    assert par.coefs[2] == _padic_em(M[0][1], par.anel)


@pytest.mark.parametrize("fora_da_diagonal,nao_degenerado", [(2, False), (3, True)])
def teste_gram_cup_decide_por_smith(prec3, monkeypatch, fora_da_diagonal, nao_degenerado):
    valores = {1: PAdicScalar.de_inteiro(3, 1, 6), 2: PAdicScalar.de_inteiro(3, fora_da_diagonal, 6)}
    monkeypatch.setattr(herr, "_cups_girados", lambda c1, c2: valores)
    c = iwasawa_h1_class(AnelSeries(prec3).zero(), 1, prec3)
    gram = gram_cup(c, c)
    # det [[1, 2], [2, 1]] = −3, det [[1, 3], [3, 1]] = −8
    assert sorted(gram.valuacoes) == ([0, 0] if nao_degenerado else [0, 1])
    assert gram.nao_degenerado() is nao_degenerado


@pytest.mark.parametrize("lam", [2, -1])
def teste_gerador_psi_um(prec3, lam):
    S = AnelSeries(prec3)
    alpha = gerador_psi_um(lam, prec3)
    assert alpha - phi(alpha, prec3).escalar(lam) == S.um() + S.X()


def teste_gerador_psi_um_exige_lambda_diferente_de_um(prec3):
    with pytest.raises(RepresentacaoInvalida):
        gerador_psi_um(4, prec3)
