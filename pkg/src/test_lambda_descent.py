#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes de Λ: elementos de grupo, Weierstrass, ideais característicos,
ℓ_m e Γ_h, lema de descida, oráculo de κ e checagens de índice.
"""

from fractions import Fraction

import pytest

import perrin_riou
from config import Precision
from erros import PrecisaoInsuficiente, RepresentacaoInvalida
from lambda_descent import (
    CharIdeal, LambdaElem, avaliar_torcao, c_iw_check, char_ideal, char_ideal_tate, congruente_mod_omega,
    delta_em_tate, descent_check, ell_operator, ell_zero_expansao, elemento_grupo,
    gamma_h_congruencia, gamma_h_fatorial, gerador_wach_lambda, idempotente_por_soma, idempotents,
    indices_dualidade, kappa_lattice_image, kappa_oraculo, lambda_T, lambda_component_correction,
    lambda_um, lambda_zero, omega_det_smith, omega_polinomio, weierstrass, xi_telescopado_unitario,
)
from perrin_riou import DModuleElem
from wach import FilteredPhiModule


@pytest.fixture
def prec5():
    return Precision(p=5, N=8, M_lambda=32)


@pytest.fixture
def prec_log():
    return Precision(p=3, N=20, M_lambda=64, n_max=2)


# ----------------------------------------------------------------- elementos

def teste_elemento_grupo_multiplicativo(prec5):
    for a, b in ((2, 4), (3, 7), (6, 11)):
        assert elemento_grupo(a, prec5) * elemento_grupo(b, prec5) == elemento_grupo(a * b, prec5)


def teste_gerador_gamma_e_um_mais_T(prec5):
    assert elemento_grupo(6, prec5) == lambda_um(prec5) + lambda_T(prec5)


def teste_omega_polinomio(prec5):
    um_mais_T = lambda_um(prec5) + lambda_T(prec5)
    assert omega_polinomio(1, prec5) == um_mais_T ** 5 - 1
    assert omega_polinomio(0, prec5) == lambda_T(prec5)


def teste_avaliar_caracter(prec5):
    g = elemento_grupo(6, prec5)
    assert g.avaliar(2) == 36
    assert g.avaliar(-1) == Fraction(1, 6)


@pytest.mark.parametrize("p", [3, 5, 7])
def teste_idempotentes_por_soma(p):
    prec = Precision(p=p, N=6, M_lambda=16)
    for i, delta in enumerate(idempotents(prec)):
        assert idempotente_por_soma(i, prec) == delta


def teste_delta_em_tate(prec5):
    for i in range(4):
        for j in range(-3, 6):
            esperado = 1 if (i - j) % 4 == 0 else 0
            assert delta_em_tate(i, j, prec5) == esperado


# ----------------------------------------------------------------- Weierstrass

def teste_weierstrass_grau_um(prec5):
    coefs = LambdaElem.de_coefs(prec5, [5, 1]).componente(0)
    w = weierstrass(coefs, 5, 8)
    assert w.mu == 0
    assert w.P == (5, 1)
    assert w.grau == 1


def teste_weierstrass_mu(prec5):
    coefs = LambdaElem.de_coefs(prec5, [10, 5]).componente(0)
    w = weierstrass(coefs, 5, 8)
    assert w.mu == 1
    assert w.P == (1,)


def teste_char_ideal_de_T(prec5):
    assert char_ideal([[lambda_T(prec5)]]) == char_ideal_tate(0, prec5, todas=True)


@pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 1), (5, 2), (5, 3)])
def teste_char_ideal_gerador_wach(p, r):
    prec = Precision(p=p, N=8, M_lambda=32)
    calculado = CharIdeal.de_elemento(gerador_wach_lambda(r, prec))
    previsto = CharIdeal.unitario(p, prec.N)
    for m in range(1, r + 1):
        previsto = previsto * char_ideal_tate(-m, prec, todas=True)
    assert calculado == previsto
    assert calculado.lambda_invariante(0) == r


def teste_char_ideal_divide(prec5):
    produto = char_ideal_tate(-1, prec5, todas=True) * char_ideal_tate(-2, prec5, todas=True)
    assert char_ideal_tate(-1, prec5, todas=True).divide(produto)
    assert not char_ideal_tate(-3, prec5, todas=True).divide(produto)
    assert CharIdeal.unitario(5, 8).e_unitario()


# ----------------------------------------------------------------- ℓ_m e Γ_h

def teste_ell_denominador(prec_log):
    assert ell_operator(0, prec_log).den == 4


def teste_ell_zero_expansao(prec_log):
    assert congruente_mod_omega(ell_zero_expansao(2, prec_log), 2, 2)
    assert not congruente_mod_omega(ell_operator(0, prec_log), 2, 2)


def teste_gamma_h_congruencia(prec_log):
    assert gamma_h_congruencia(FilteredPhiModule.tate(3, 1), 1, 2, prec_log)


@pytest.mark.parametrize("r,h", [(1, 2), (2, 3), (0, 1)])
def teste_gamma_h_fatorial(r, h):
    esquerda, direita = gamma_h_fatorial(FilteredPhiModule.tate(5, r), h)
    assert abs(esquerda) == abs(direita)


# ----------------------------------------------------------------- descida

def teste_descida_T(prec5):
    res = descent_check([[lambda_T(prec5)]], 1, prec5)
    assert res.r == 1
    assert res.semi_simple
    assert res.i_f_lambda == 1
    assert res.i_f_lambda_kernel == 1


def teste_descida_omega(prec5):
    res = descent_check([[omega_polinomio(1, prec5)]], 2, prec5)
    assert res.semi_simple
    assert res.i_f_lambda == 1
    assert res.i_f_lambda_kernel == 1


def teste_descida_nao_semi_simples(prec5):
    res = descent_check([[lambda_T(prec5) ** 2]], 1, prec5)
    assert res.r == 1
    assert not res.semi_simple
    assert res.i_f_lambda is None


def teste_descida_diagonal(prec5):
    zero = lambda_zero(prec5)
    fmap = [[lambda_T(prec5), zero], [zero, lambda_um(prec5) + lambda_T(prec5)]]
    res = descent_check(fmap, 1, prec5)
    assert res.r == 1
    assert res.semi_simple
    assert res.i_f_lambda == res.i_f_lambda_kernel == 1


def teste_descida_caracter_nao_trivial():
    prec = Precision(p=3, N=8, M_lambda=32, n_max=2)
    res = descent_check([[omega_polinomio(1, prec)]], 2, prec, w=1)
    assert res.r == 1
    assert res.semi_simple
    assert res.i_f_lambda is None


# ----------------------------------------------------------------- κ

def teste_kappa_formula_fechada():
    prec = Precision(p=3, N=12, n_max=2)
    imagem = kappa_lattice_image(FilteredPhiModule.tate(3, 1), 1, prec)
    assert imagem[(0, 0)] == -1
    assert imagem[(1, 0)] == Fraction(1, 9)


@pytest.mark.parametrize("p,n", [(3, 1), (3, 2), (5, 1)])
def teste_kappa_oraculo(p, n):
    prec = Precision(p=p, N=12, n_max=2)
    resultado = kappa_oraculo(FilteredPhiModule.tate(p, 1), n, prec)
    assert all(resultado.values())


def teste_kappa_exige_phi_sem_um():
    prec = Precision(p=3, N=12, n_max=2)
    with pytest.raises(RepresentacaoInvalida):
        xi_telescopado_unitario(FilteredPhiModule.tate(3, 0), 1, prec)


@pytest.mark.parametrize("m", [1, 2])
def teste_correcao_componente_trivial(m):
    assert lambda_component_correction(m, Precision(p=3, N=8)) == (-m, True)


# ----------------------------------------------------------------- unidade e índices

def teste_unidade_exemplo(prec5):
    rel = c_iw_check(FilteredPhiModule.tate(5, 1), 3, prec5)
    assert rel.passou
    assert rel.a[0] == Fraction(-7, 72)
    assert rel.alvo_valuacao == 1


def teste_unidade_k_zero(prec5):
    rel = c_iw_check(FilteredPhiModule.tate(5, 1), 0, prec5)
    assert rel.passou
    assert all(a == -1 for a in rel.a)


def teste_unidade_k_proibido(prec5):
    with pytest.raises(RepresentacaoInvalida):
        c_iw_check(FilteredPhiModule.tate(5, 2), 2, prec5)


def teste_omega_det_smith(prec5):
    obtido, alvo = omega_det_smith(FilteredPhiModule.tate(5, 1), 3, prec5)
    assert obtido == alvo == 4


@pytest.mark.parametrize("p,r,h,k", [(5, 1, 2, 3), (5, 1, 1, 0), (3, 1, 1, 0), (5, 2, 3, -1)])
def teste_indices_dualidade(p, r, h, k):
    prec = Precision(p=p, N=8, M_lambda=32)
    lado_v, lado_dual, alvo = indices_dualidade(FilteredPhiModule.tate(p, r), k, h, prec)
    assert lado_v + lado_dual == alvo


def teste_unidade_lida_de_omega(prec5):
    rel = c_iw_check(FilteredPhiModule.tate(5, 1), 3, prec5)
    assert rel.fonte == "omega"
    assert rel.omega_confere
    assert c_iw_check(FilteredPhiModule.tate(5, 1), 0, prec5).fonte == "wach"


@pytest.mark.parametrize("k", [-1, 0, 2, 3])
def teste_unidade_dos_dois_lados(prec5, k):
    assert c_iw_check(FilteredPhiModule.tate(5, 1), k, prec5).passou


def teste_unidade_segue_omega(prec5, monkeypatch):
    original = perrin_riou.omega_map

    def ignora_alpha(alpha, k, n, prec):
        return original(DModuleElem.de_medidas(alpha.fil, prec, [{1: 1}]), k, n, prec)

    monkeypatch.setattr(perrin_riou, "omega_map", ignora_alpha)
    rel = c_iw_check(FilteredPhiModule.tate(5, 1), 3, prec5)
    assert rel.omega_confere is False
    assert not rel.passou


def teste_det_omega_nulo(prec5, monkeypatch):
    def nula(alpha, k, n, prec):
        return perrin_riou._classe_nula(prec, n, k, 1, 1)

    monkeypatch.setattr(perrin_riou, "omega_map", nula)
    with pytest.raises(PrecisaoInsuficiente):
        omega_det_smith(FilteredPhiModule.tate(5, 1), 3, prec5)


def teste_det_omega_exige_k_acima_do_salto(prec5):
    with pytest.raises(RepresentacaoInvalida):
        omega_det_smith(FilteredPhiModule.tate(5, 1), 0, prec5)


def teste_avaliar_torcao(prec5):
    (valor, *_) = avaliar_torcao(gerador_wach_lambda(1, prec5), 3, prec5)
    assert valor == Fraction(-35, 36)
