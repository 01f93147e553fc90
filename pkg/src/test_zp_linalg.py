#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes da álgebra linear sobre Z/p^N.
"""

import random

import pytest

from zp_linalg import (
    comprimento, identidade, invariantes_homologia, mat_mul, mat_vec, nucleo, resolver, smith,
)


@pytest.fixture
def rng():
    return random.Random(3)


def matriz_aleatoria(rng, m, n, mod):
    return [[rng.randrange(mod) for _ in range(n)] for _ in range(m)]


@pytest.mark.parametrize("p,m,n", [(3, 3, 3), (5, 2, 4), (3, 4, 2)])
def teste_smith_fatoracao(p, m, n, rng):
    N = 5
    mod = p ** N
    for _ in range(20):
        A = matriz_aleatoria(rng, m, n, mod)
        # força valuações variadas
        A = [[x * p ** rng.randrange(3) % mod for x in linha] for linha in A]
        fs = smith(A, p, N)
        S = mat_mul(mat_mul(fs.U, A, mod), fs.V, mod)
        for i in range(m):
            for j in range(n):
                esperado = p ** fs.valuacoes[i] % mod if i == j and i < len(fs.valuacoes) else 0
                assert S[i][j] == esperado
        assert mat_mul(fs.V, fs.Vinv, mod) == identidade(n)
        assert fs.valuacoes == sorted(fs.valuacoes)


def teste_smith_diagonal_conhecida():
    fs = smith([[9, 0], [0, 3]], 3, 4)
    assert fs.valuacoes == [1, 2]
    assert fs.invariantes_cokernel() == [1, 2]
    assert fs.determinante_valuacao() == 3


def teste_smith_matriz_nula():
    fs = smith([[0, 0], [0, 0]], 5, 3)
    assert fs.valuacoes == [3, 3]
    assert fs.posto == 0
    assert fs.comprimento_nucleo() == 6


def teste_nucleo(rng):
    p, N = 3, 4
    mod = p ** N
    A = [[3, 6, 0], [0, 9, 27]]
    geradores = nucleo(A, p, N)
    for vetor, e in geradores:
        assert mat_vec(A, vetor, mod) == [0, 0]
        assert all(x * p ** e % mod == 0 for x in vetor)
    assert comprimento([e for _, e in geradores]) == smith(A, p, N).comprimento_nucleo()


def teste_resolver(rng):
    p, N = 5, 4
    mod = p ** N
    for _ in range(20):
        A = matriz_aleatoria(rng, 3, 3, mod)
        x = [rng.randrange(mod) for _ in range(3)]
        b = mat_vec(A, x, mod)
        sol = resolver(A, b, p, N)
        assert sol is not None
        assert mat_vec(A, sol, mod) == b


def teste_resolver_sem_solucao():
    assert resolver([[3, 0], [0, 3]], [1, 0], 3, 4) is None


def teste_homologia_complexo_simples():
    # Z/p^N --p--> Z/p^N --0--> : H = Z/p
    assert invariantes_homologia([[3]], [[0]], 1, 3, 5) == [1]
    # Z/p^N --0--> Z/p^N --p^2--> Z/p^N: H = núcleo de p^2 = Z/p^2
    assert invariantes_homologia([[0]], [[9]], 1, 3, 5) == [2]
    # sem diferencial de saída: H = cokernel
    assert invariantes_homologia([[3, 0], [0, 1]], [], 2, 3, 5) == [1]


def teste_homologia_exige_complexo():
    with pytest.raises(ValueError):
        invariantes_homologia([[1]], [[3]], 1, 3, 4)
