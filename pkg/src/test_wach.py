#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes dos módulos de Wach, de D_cris e dos pontos fixos de ψ.
"""

import dataclasses
from fractions import Fraction

import pytest

from config import Precision
from erros import PrecisaoInsuficiente, RepresentacaoInvalida
from lambda_descent import gerador_wach_lambda
from wach import (
    FilteredPhiModule, dcris_from_wach, gerador_lambda_wach, psi_fixed_points, soma_direta, tate_twist_wach,
    validate_wach, wach_de_matrizes, wach_quotient_char_ideal,
)


@pytest.fixture
def prec3():
    return Precision(p=3, N=6, M=16, M_lambda=32)


# ----------------------------------------------------------------- φ-módulos filtrados

def teste_filtrado_tate():
    fil = FilteredPhiModule.tate(3, 2)
    assert fil.phi == [[Fraction(9)]]
    assert fil.saltos == [2]
    assert fil.admissivel()
    assert fil.dim_fil(2) == 1 and fil.dim_fil(3) == 0
    assert fil.t_H() == 2


def teste_filtrado_autoespacos():
    assert FilteredPhiModule.tate(3, 0).dim_phi_um() == 1
    assert FilteredPhiModule.tate(3, 1).dim_phi_um() == 0
    assert FilteredPhiModule.tate(3, -1).dim_phi_p_inv() == 1


def teste_filtrado_torcao_e_soma():
    fil = FilteredPhiModule.tate(5, 1).twist(1)
    assert fil.phi == [[Fraction(1)]]
    assert fil.saltos == [0]
    soma = FilteredPhiModule.tate(5, 1).soma(FilteredPhiModule.tate(5, 2, lam=2))
    assert soma.d == 2
    assert soma.det_phi_racional() == 250
    assert soma.diagonal() == [5, 50]
    with pytest.raises(RepresentacaoInvalida):
        FilteredPhiModule.tate(5, 1).soma(FilteredPhiModule.tate(3, 1))


def teste_filtrado_invalido():
    with pytest.raises(RepresentacaoInvalida):
        FilteredPhiModule(3, [[1, 0], [0, 1]], [0])
    with pytest.raises(RepresentacaoInvalida):
        FilteredPhiModule(3, [[0]], [0])


# ----------------------------------------------------------------- validação

@pytest.mark.parametrize("p,r,lam", [(3, 0, 1), (3, 1, 1), (3, 2, 2), (5, 1, 2)])
def teste_tate_valida(p, r, lam):
    W = tate_twist_wach(r, lam, Precision(p=p, N=6, M=16))
    rel = validate_wach(W)
    assert rel.passou, rel.violacoes
    assert rel.expoente_q == r
    assert rel.igualdade


def teste_soma_direta_valida(prec3):
    W = soma_direta(tate_twist_wach(1, 1, prec3), tate_twist_wach(2, 1, prec3))
    rel = validate_wach(W)
    assert rel.passou, rel.violacoes
    assert rel.expoente_q == 3
    assert W.altura == 2
    assert not rel.igualdade


def teste_soma_mesma_altura_igualdade(prec3):
    W = soma_direta(tate_twist_wach(1, 1, prec3), tate_twist_wach(1, 2, prec3))
    rel = validate_wach(W)
    assert rel.passou
    assert rel.igualdade


def teste_tate_invalida(prec3):
    with pytest.raises(RepresentacaoInvalida):
        tate_twist_wach(-1, 1, prec3)
    with pytest.raises(RepresentacaoInvalida):
        tate_twist_wach(1, 3, prec3)


def teste_bruta_nao_comuta(prec3):
    W = wach_de_matrizes(prec3, [[[1, 1]]], [[[1]]])
    rel = validate_wach(W)
    assert not rel.passou
    assert "phi_gamma_comutam" in {v[0] for v in rel.violacoes}


def teste_bruta_gamma_nao_trivial_mod_X(prec3):
    W = wach_de_matrizes(prec3, [[[1]]], [[[2]]])
    rel = validate_wach(W)
    assert "trivial_mod_X" in {v[0] for v in rel.violacoes}


def teste_bruta_nao_ramificada(prec3):
    W = wach_de_matrizes(prec3, [[[2]]], [[[1]]])
    rel = validate_wach(W)
    assert rel.passou
    fil = dcris_from_wach(W)
    assert fil.saltos == [0]
    assert fil.phi == [[Fraction(2)]]


# ----------------------------------------------------------------- D_cris

@pytest.mark.parametrize("p,r,lam,phi", [(3, 1, 1, 3), (3, 2, 1, 9), (5, 1, 2, 10), (3, 1, -1, -3)])
def teste_dcris_tate(p, r, lam, phi):
    fil = dcris_from_wach(tate_twist_wach(r, lam, Precision(p=p, N=6, M=16)))
    assert fil.saltos == [r]
    assert fil.phi == [[Fraction(phi)]]
    assert fil.admissivel()


def teste_dcris_soma(prec3):
    W = soma_direta(tate_twist_wach(1, 1, prec3), tate_twist_wach(0, 2, prec3))
    fil = dcris_from_wach(W)
    assert fil.saltos == [1, 0]
    assert fil.diagonal() == [3, 2]


# ----------------------------------------------------------------- ψ e quociente

def teste_psi_constantes(prec3):
    info = psi_fixed_points(tate_twist_wach(0, 1, prec3))
    assert info.contem_constantes
    assert info.estavel
    assert info.geradores[0] == 1
    assert len(info.nucleo_polinomial[0]) == 1


def teste_psi_sem_pontos_fixos(prec3):
    info = psi_fixed_points(tate_twist_wach(0, 2, prec3))
    assert not info.contem_constantes
    assert info.nucleo_polinomial[0] == []


def teste_psi_gerador(prec3):
    info = psi_fixed_points(tate_twist_wach(1, 1, prec3))
    assert info.posto == 1
    assert info.geradores[0] == gerador_wach_lambda(1, prec3)


def teste_psi_modulo_bruto(prec3):
    info = psi_fixed_points(wach_de_matrizes(prec3, [[[2]]], [[[1]]]))
    assert info.geradores[0] == 2
    assert info.pesos == [0]
    assert not info.contem_constantes


def teste_gerador_lido_das_matrizes(prec3):
    # P = q e G_γ = (γ(X)/X)·4^{−1} escritos à mão: o mesmo N(Z_3(−1))
    bruto = wach_de_matrizes(prec3, [[[3, 3, 1]]], [[[1, 366, 1, 547]]])
    bloco = gerador_lambda_wach(bruto, 0)
    assert bloco.s == 1 and bloco.lam == 1
    assert bloco.gerador == gerador_wach_lambda(1, prec3)


def teste_gerador_g_incompativel(prec3):
    with pytest.raises(RepresentacaoInvalida):
        gerador_lambda_wach(wach_de_matrizes(prec3, [[[3, 3, 1]]], [[[1]]]), 0)


def teste_gerador_fora_da_diagonal(prec3):
    S = [[[3, 3, 1], [1]], [[0], [1]]]
    with pytest.raises(RepresentacaoInvalida):
        gerador_lambda_wach(wach_de_matrizes(prec3, S, [[[1], [0]], [[0], [1]]]), 0)


def teste_psi_depende_de_m_lambda():
    curto = Precision(p=3, N=6, M=16, M_lambda=8)
    with pytest.raises(PrecisaoInsuficiente):
        psi_fixed_points(tate_twist_wach(2, 1, curto))


@pytest.mark.parametrize("p,pesos", [(3, [2]), (5, [1, 2]), (5, [0, 1])])
def teste_quociente_ideal_caracteristico(p, pesos):
    prec = Precision(p=p, N=6, M=16, M_lambda=32)
    W = tate_twist_wach(pesos[0], 1, prec)
    for r in pesos[1:]:
        W = soma_direta(W, tate_twist_wach(r, 1, prec))
    rel = wach_quotient_char_ideal(W)
    assert rel.divide
    assert rel.igual
    assert rel.injetivo


def teste_quociente_modulo_bruto(prec3):
    bruto = wach_de_matrizes(prec3, [[[3, 3, 1]]], [[[1, 366, 1, 547]]])
    rel = wach_quotient_char_ideal(bruto)
    assert rel.calculado == wach_quotient_char_ideal(tate_twist_wach(1, 1, prec3)).calculado
    assert rel.igual


def teste_quociente_segue_as_matrizes(prec3):
    real = tate_twist_wach(1, 1, prec3)
    W3 = tate_twist_wach(3, 1, prec3)
    # matrizes de Z_3(−3) com os blocos declarados de Z_3(−1)
    trocado = dataclasses.replace(real, P=W3.P, G_gamma=W3.G_gamma, G_delta=W3.G_delta, altura=3)
    rel = wach_quotient_char_ideal(trocado)
    assert not rel.calculado == wach_quotient_char_ideal(real).calculado
    assert rel.calculado == wach_quotient_char_ideal(W3).calculado
    assert not rel.igual
