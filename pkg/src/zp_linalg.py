#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Álgebra linear exata sobre Z/p^N: forma de Smith com matrizes de passagem,
núcleo, resolução de sistemas e invariantes de homologia.

Z/p^N é um anel local de ideais principais: todo pivô é p^v·unidade, então a
eliminação escolhe sempre a entrada de menor valuação.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

Matriz = List[List[int]]

_LIMITE_INT64 = 2 ** 62


def identidade(n: int) -> Matriz:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def valuacao_mod(x: int, p: int, N: int) -> int:
    """Valuação de x em Z/p^N (N para o zero)."""
    x %= p ** N
    if x == 0:
        return N
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def mat_mul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], mod: int) -> Matriz:
    """Produto A·B mod `mod` (numpy int64 quando não há overflow)."""
    if not A or not B:
        return [[] for _ in A]
    interno = len(B)
    if mod * mod * max(interno, 1) < _LIMITE_INT64:
        r = (np.asarray(A, dtype=np.int64) % mod) @ (np.asarray(B, dtype=np.int64) % mod)
        return [[int(x) % mod for x in linha] for linha in r]
    res = [[0] * len(B[0]) for _ in A]
    for i, linha in enumerate(A):
        for k, a in enumerate(linha):
            if a:
                for j, b in enumerate(B[k]):
                    res[i][j] += a * b
    return [[x % mod for x in linha] for linha in res]


def mat_vec(A: Sequence[Sequence[int]], x: Sequence[int], mod: int) -> List[int]:
    return [sum(a * b for a, b in zip(linha, x)) % mod for linha in A]


def transposta(A: Sequence[Sequence[int]]) -> Matriz:
    if not A:
        return []
    return [list(c) for c in zip(*A)]


@dataclass
class FormaSmith:
    """
    S = U·A·V diagonal com entradas p^{valuacoes[i]} (N indica zero).

    Vinv é a inversa de V, mantida durante a eliminação.
    """
    p: int
    N: int
    linhas: int
    colunas: int
    U: Matriz
    V: Matriz
    Vinv: Matriz
    valuacoes: List[int]

    @property
    def posto(self) -> int:
        """Número de fatores invariantes não nulos."""
        return sum(1 for v in self.valuacoes if v < self.N)

    def posto_mod_p(self) -> int:
        return sum(1 for v in self.valuacoes if v == 0)

    def comprimento_imagem(self) -> int:
        """log_p |im A|."""
        return sum(self.N - v for v in self.valuacoes)

    def comprimento_nucleo(self) -> int:
        """log_p |ker A| em (Z/p^N)^colunas."""
        return self.N * self.colunas - self.comprimento_imagem()

    def invariantes_cokernel(self) -> List[int]:
        """Expoentes e dos somandos Z/p^e do conúcleo (e > 0)."""
        vals = list(self.valuacoes) + [self.N] * (self.linhas - len(self.valuacoes))
        return sorted(v for v in vals if v > 0)

    def determinante_valuacao(self) -> int:
        """v_p(det A) para A quadrada (N se o determinante some a esta precisão)."""
        if self.linhas != self.colunas:
            raise ValueError("determinante só para matriz quadrada")
        return min(sum(self.valuacoes), self.N)


def smith(A: Sequence[Sequence[int]], p: int, N: int) -> FormaSmith:
    """
    Forma normal de Smith sobre Z/p^N.

    Args:
        A: Matriz m×n de inteiros
        p: Primo
        N: Precisão

    Returns:
        FormaSmith: U, V, Vinv e as valuações da diagonal
    """
    mod = p ** N
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[x % mod for x in linha] for linha in A]
    U = identidade(m)
    V = identidade(n)
    Vinv = identidade(n)
    valuacoes: List[int] = []

    for k in range(min(m, n)):
        melhor, pos = N, None
        for i in range(k, m):
            for j in range(k, n):
                if M[i][j]:
                    v = valuacao_mod(M[i][j], p, N)
                    if v < melhor:
                        melhor, pos = v, (i, j)
                        if v == 0:
                            break
            if melhor == 0:
                break
        if pos is None:
            break
        i, j = pos
        M[k], M[i] = M[i], M[k]
        U[k], U[i] = U[i], U[k]
        for linha in M:
            linha[k], linha[j] = linha[j], linha[k]
        for linha in V:
            linha[k], linha[j] = linha[j], linha[k]
        Vinv[k], Vinv[j] = Vinv[j], Vinv[k]

        pk = p ** melhor
        u_inv = pow(M[k][k] // pk, -1, mod)
        for i in range(k + 1, m):
            if M[i][k]:
                fator = (M[i][k] // pk) * u_inv % mod
                M[i] = [(a - fator * b) % mod for a, b in zip(M[i], M[k])]
                U[i] = [(a - fator * b) % mod for a, b in zip(U[i], U[k])]
        for j in range(k + 1, n):
            if M[k][j]:
                fator = (M[k][j] // pk) * u_inv % mod
                for linha in M:
                    linha[j] = (linha[j] - fator * linha[k]) % mod
                for linha in V:
                    linha[j] = (linha[j] - fator * linha[k]) % mod
                Vinv[k] = [(a + fator * b) % mod for a, b in zip(Vinv[k], Vinv[j])]
        M[k] = [(x * u_inv) % mod for x in M[k]]
        U[k] = [(x * u_inv) % mod for x in U[k]]
        valuacoes.append(melhor)

    valuacoes += [N] * (min(m, n) - len(valuacoes))
    return FormaSmith(p, N, m, n, U, V, Vinv, valuacoes)


def nucleo(A: Sequence[Sequence[int]], p: int, N: int, colunas: Optional[int] = None) -> List[Tuple[List[int], int]]:
    """
    Geradores do núcleo de A em (Z/p^N)^n, com a ordem p^e de cada um.

    Args:
        colunas: Número de colunas (obrigatório quando A não tem linhas)

    Returns:
        Lista de pares (vetor, e)
    """
    n = colunas if colunas is not None else len(A[0])
    if not A:
        return [([int(i == j) for j in range(n)], N) for i in range(n)]
    fs = smith(A, p, N)
    mod = p ** N
    geradores = []
    for i in range(n):
        v = fs.valuacoes[i] if i < len(fs.valuacoes) else N
        if v == 0:
            continue
        escala = p ** (N - v)
        geradores.append(([(linha[i] * escala) % mod for linha in fs.V], v))
    return geradores


def resolver(A: Sequence[Sequence[int]], b: Sequence[int], p: int, N: int) -> Optional[List[int]]:
    """Uma solução de A·x ≡ b (mod p^N), ou None se não existe."""
    mod = p ** N
    fs = smith(A, p, N)
    c = mat_vec(fs.U, b, mod)
    y = [0] * fs.colunas
    for i, ci in enumerate(c):
        v = fs.valuacoes[i] if i < len(fs.valuacoes) else N
        if v == N:
            if ci % mod:
                return None
            continue
        if ci % p ** v:
            return None
        y[i] = ci // p ** v
    return mat_vec(fs.V, y, mod)


def invariantes_homologia(d_entrada: Sequence[Sequence[int]], d_saida: Sequence[Sequence[int]],
                          dim: int, p: int, N: int) -> List[int]:
    """
    Invariantes de ker(d_saida)/im(d_entrada) num módulo livre (Z/p^N)^dim.

    d_entrada: matriz dim×a (pode ter zero colunas); d_saida: matriz b×dim
    (pode ter zero linhas). Exige d_saida·d_entrada ≡ 0.

    Returns:
        Expoentes e dos somandos Z/p^e (ordenados, e > 0)
    """
    mod = p ** N
    if d_saida:
        fs = smith(d_saida, p, N)
        Vinv = fs.Vinv
        ordens = [fs.valuacoes[i] if i < len(fs.valuacoes) else N for i in range(dim)]
    else:
        Vinv = identidade(dim)
        ordens = [N] * dim
    indices = [i for i in range(dim) if ordens[i] > 0]
    if not indices:
        return []
    colunas_img = transposta(d_entrada) if d_entrada and d_entrada[0] else []
    relacoes: Matriz = [[] for _ in indices]
    for coluna in colunas_img:
        y = mat_vec(Vinv, coluna, mod)
        for pos, i in enumerate(indices):
            escala = p ** (N - ordens[i])
            if y[i] % escala:
                raise ValueError("d_saida·d_entrada ≠ 0")
            relacoes[pos].append((y[i] // escala) % mod)
    for pos, i in enumerate(indices):
        for outro in range(len(indices)):
            relacoes[outro].append(p ** ordens[i] % mod if outro == pos else 0)
    fs_h = smith(relacoes, p, N)
    vals = list(fs_h.valuacoes) + [N] * (len(indices) - len(fs_h.valuacoes))
    return sorted(v for v in vals if v > 0)


def comprimento(invariantes: Sequence[int]) -> int:
    """log_p da ordem de ⊕ Z/p^e."""
    return sum(invariantes)
