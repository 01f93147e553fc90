#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Torre de anéis de coeficientes com precisão controlada.

Z_p (PAdicScalar, precisão absoluta limitada), O_K = Z_p[u]/(m(u)) com o
Frobenius σ (UnramifiedScalar) e os níveis ciclotômicos O_K[ζ_{p^n}]
(CycloScalar, na base de potências de z = ζ_{p^n} − 1).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from config import Precision, modulo_para
from erros import NivelExcedido, PrecisaoInsuficiente

INFINITO = math.inf

# Produtos int64 seguros abaixo deste limite
_LIMITE_INT64 = 2 ** 62


def valuacao_p(x: int, p: int) -> Union[int, float]:
    """Valuação p-ádica de um inteiro (INFINITO para 0)."""
    if x == 0:
        return INFINITO
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def convolucao_mod(a: Sequence[int], b: Sequence[int], modulo: int) -> List[int]:
    """
    Produto de polinômios inteiros mod `modulo`.

    Usa numpy.convolve em int64 quando não há risco de overflow.
    """
    if not len(a) or not len(b):
        return []
    if modulo * modulo * min(len(a), len(b)) < _LIMITE_INT64:
        r = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)) % modulo
        return [int(x) for x in r]
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] += x * y
    return [x % modulo for x in res]


def reduzir_monico(linha: List[int], modulo_coefs: Sequence[int], mod: int) -> List[int]:
    """Resto da divisão de `linha` por um polinômio mônico (coeficientes do grau 0 ao topo)."""
    g = len(modulo_coefs) - 1
    linha = list(linha)
    for i in range(len(linha) - 1, g - 1, -1):
        c = linha[i] % mod
        if c:
            base = i - g
            for j in range(g):
                linha[base + j] -= c * modulo_coefs[j]
        linha[i] = 0
    res = [x % mod for x in linha[:g]]
    return res + [0] * (g - len(res))


# ============================================================
# Z_p
# ============================================================

@dataclass(frozen=True, eq=False)
class PAdicScalar:
    """
    Elemento de Q_p com precisão absoluta: p^valuacao · unidade + O(p^prec).

    O zero canônico tem valuacao = INFINITO e guarda a precisão absoluta.
    """
    p: int
    valuacao: Union[int, float]
    unidade: int
    prec: int

    @classmethod
    def zero(cls, p: int, prec: int) -> "PAdicScalar":
        return cls(p, INFINITO, 0, prec)

    @classmethod
    def de_inteiro(cls, p: int, x: int, prec: int) -> "PAdicScalar":
        """Inteiro conhecido mod p^prec."""
        if prec <= 0:
            return cls.zero(p, prec)
        x %= p ** prec
        if x == 0:
            return cls.zero(p, prec)
        v = valuacao_p(x, p)
        return cls(p, v, (x // p ** v) % p ** (prec - v), prec)

    @classmethod
    def de_fracao(cls, p: int, valor: Union[int, Fraction], rel: int) -> "PAdicScalar":
        """Racional exato com `rel` dígitos de precisão relativa."""
        valor = Fraction(valor)
        if valor == 0:
            return cls.zero(p, rel)
        num, den = valor.numerator, valor.denominator
        vn, vd = valuacao_p(num, p), valuacao_p(den, p)
        num //= p ** vn
        den //= p ** vd
        mod = p ** rel
        v = vn - vd
        return cls(p, v, (num * pow(den, -1, mod)) % mod, v + rel)

    @property
    def relativa(self) -> Union[int, float]:
        """Precisão relativa (dígitos conhecidos da unidade)."""
        if self.e_zero():
            return 0
        return self.prec - self.valuacao

    def e_zero(self) -> bool:
        return self.valuacao == INFINITO

    def reduzir(self, prec: int) -> "PAdicScalar":
        """Reduz a precisão absoluta para `prec` (nunca aumenta)."""
        prec = min(prec, self.prec)
        if self.e_zero() or self.valuacao >= prec:
            return PAdicScalar.zero(self.p, prec)
        return PAdicScalar(self.p, self.valuacao, self.unidade % self.p ** (prec - self.valuacao), prec)

    def _coagir(self, outro) -> "PAdicScalar":
        if isinstance(outro, PAdicScalar):
            if outro.p != self.p:
                raise ValueError("primos diferentes")
            return outro
        if not isinstance(outro, (int, Fraction)):
            raise TypeError(f"não coage {type(outro).__name__} em PAdicScalar")
        # racionais exatos entram com folga de precisão acima da própria
        valor = Fraction(outro)
        folga = 0
        if valor:
            folga = abs(valuacao_p(valor.numerator, self.p) - valuacao_p(valor.denominator, self.p))
        return PAdicScalar.de_fracao(self.p, valor, 2 * max(self.prec, 1) + folga + 2)

    def __add__(self, outro) -> "PAdicScalar":
        outro = self._coagir(outro)
        p = self.p
        prec = min(self.prec, outro.prec)
        if self.e_zero():
            return outro.reduzir(prec)
        if outro.e_zero():
            return self.reduzir(prec)
        v = min(self.valuacao, outro.valuacao)
        if v >= prec:
            return PAdicScalar.zero(p, prec)
        mod = p ** (prec - v)
        x = (self.unidade * p ** (self.valuacao - v) + outro.unidade * p ** (outro.valuacao - v)) % mod
        if x == 0:
            return PAdicScalar.zero(p, prec)
        w = valuacao_p(x, p)
        return PAdicScalar(p, v + w, (x // p ** w) % p ** (prec - v - w), prec)

    __radd__ = __add__

    def __neg__(self) -> "PAdicScalar":
        if self.e_zero():
            return self
        return PAdicScalar(self.p, self.valuacao, (-self.unidade) % self.p ** self.relativa, self.prec)

    def __sub__(self, outro) -> "PAdicScalar":
        return self + (-self._coagir(outro))

    def __rsub__(self, outro) -> "PAdicScalar":
        return self._coagir(outro) - self

    def __mul__(self, outro) -> "PAdicScalar":
        outro = self._coagir(outro)
        p = self.p
        if self.e_zero() and outro.e_zero():
            return PAdicScalar.zero(p, self.prec + outro.prec)
        if self.e_zero():
            return PAdicScalar.zero(p, self.prec + outro.valuacao)
        if outro.e_zero():
            return PAdicScalar.zero(p, outro.prec + self.valuacao)
        v = self.valuacao + outro.valuacao
        rel = min(self.relativa, outro.relativa)
        return PAdicScalar(p, v, (self.unidade * outro.unidade) % p ** rel, v + rel)

    __rmul__ = __mul__

    def inverso(self) -> "PAdicScalar":
        if self.e_zero():
            raise ZeroDivisionError("inverso de zero p-ádico")
        rel = self.relativa
        return PAdicScalar(self.p, -self.valuacao, pow(self.unidade, -1, self.p ** rel), -self.valuacao + rel)

    def __truediv__(self, outro) -> "PAdicScalar":
        return self * self._coagir(outro).inverso()

    def __rtruediv__(self, outro) -> "PAdicScalar":
        return self._coagir(outro) * self.inverso()

    def __pow__(self, k: int) -> "PAdicScalar":
        if k < 0:
            return self.inverso() ** (-k)
        if self.e_zero():
            res = PAdicScalar.de_inteiro(self.p, 1, max(self.prec, 1))
        else:
            res = PAdicScalar(self.p, 0, 1 % self.p ** self.relativa, self.relativa)
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def __eq__(self, outro) -> bool:
        try:
            return (self - outro).e_zero()
        except (ValueError, TypeError):
            return NotImplemented

    __hash__ = None

    def para_inteiro(self) -> int:
        """Representante inteiro mod p^prec (exige valuação ≥ 0)."""
        if self.e_zero():
            return 0
        if self.valuacao < 0:
            raise ValueError("elemento não inteiro")
        return (self.unidade * self.p ** self.valuacao) % self.p ** self.prec

    def digitos(self) -> List[int]:
        """Dígitos em base p do representante inteiro."""
        x = self.para_inteiro()
        digs = []
        for _ in range(max(self.prec, 0)):
            digs.append(x % self.p)
            x //= self.p
        return digs

    def __repr__(self) -> str:
        if self.e_zero():
            return f"O({self.p}^{self.prec})"
        return f"{self.unidade}·{self.p}^{self.valuacao} + O({self.p}^{self.prec})"


def teichmuller_int(a: int, p: int, N: int) -> int:
    """Levantamento de Teichmüller de a mod p, como inteiro mod p^N."""
    x = a % p
    if x == 0:
        return 0
    mod = p ** N
    for _ in range(N):
        x = pow(x, p, mod)
    return x


def teichmuller(a: int, prec: Precision) -> PAdicScalar:
    """
    Raiz (p−1)-ésima da unidade congruente a `a` mod p.

    Args:
        a: Resíduo 0 ≤ a < p
        prec: Precisão de trabalho

    Returns:
        PAdicScalar: ω(a) mod p^N
    """
    return PAdicScalar.de_inteiro(prec.p, teichmuller_int(a, prec.p, prec.N), prec.N)


def raiz_primitiva(p: int) -> int:
    """Menor raiz primitiva mod p."""
    fatores = [q for q in range(2, p) if (p - 1) % q == 0 and all(q % r for r in range(2, q))]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fatores):
            return g
    return 1


def log_padico(x: Union[int, Fraction], p: int, N: int) -> PAdicScalar:
    """
    Logaritmo p-ádico de x ≡ 1 mod p, com precisão absoluta N.

    Args:
        x: Inteiro (ou racional p-inteiro) congruente a 1 mod p
        p: Primo
        N: Precisão absoluta do resultado

    Returns:
        PAdicScalar: log(x) mod p^N
    """
    mod = p ** N
    if isinstance(x, Fraction):
        x = (x.numerator * pow(x.denominator, -1, mod)) % mod
    y = (x - 1) % mod
    if y % p:
        raise ValueError(f"log p-ádico exige x ≡ 1 mod {p}")
    if y == 0:
        return PAdicScalar.zero(p, N)
    vy = valuacao_p(y, p)
    total = 0
    k = 1
    # termos y^k/k com valuação k·v(y) − v(k) < N
    while k * vy - math.log(k, p) < N + 1:
        vk = valuacao_p(k, p)
        if k * vy - vk < N:
            termo = y ** k // p ** vk
            termo = termo * pow(k // p ** vk, -1, mod)
            total += termo if k % 2 else -termo
        k += 1
    return PAdicScalar.de_inteiro(p, total % mod, N)


def discrete_log_gamma(a: int, p: int, N: int) -> int:
    """
    Expoente s ∈ Z_p com a = (1+p)^s, para a ≡ 1 mod p.

    Returns:
        int: s mod p^(N−1)
    """
    num = log_padico(a, p, N + 1)
    den = log_padico(1 + p, p, N + 1)
    if num.e_zero():
        return 0
    s = num / den
    return s.para_inteiro() % p ** (N - 1) if N > 1 else 0


# ============================================================
# O_K não ramificado
# ============================================================

class UnramifiedRing:
    """
    O_K = Z_p[u]/(m(u)) mod p^N, com m tabelado em data/moduli.txt.
    """

    def __init__(self, p: int, N: int, f: int):
        self.p = p
        self.N = N
        self.f = f
        self.pN = p ** N
        self.modulo = modulo_para(p, f)
        self._frob: Optional[List[List[int]]] = None

    def __repr__(self) -> str:
        return f"UnramifiedRing(p={self.p}, N={self.N}, f={self.f})"

    def reduzir_poly(self, coefs: Sequence[int]) -> Tuple[int, ...]:
        """Reduz um polinômio em u módulo m(u) e p^N."""
        if len(coefs) <= self.f:
            res = [c % self.pN for c in coefs]
            return tuple(res + [0] * (self.f - len(res)))
        return tuple(reduzir_monico(list(coefs), self.modulo, self.pN))

    def elemento(self, coefs: Sequence[int]) -> "UnramifiedScalar":
        return UnramifiedScalar(self, self.reduzir_poly(coefs))

    def de_inteiro(self, x: int) -> "UnramifiedScalar":
        return UnramifiedScalar(self, tuple([x % self.pN] + [0] * (self.f - 1)))

    def zero(self) -> "UnramifiedScalar":
        return self.de_inteiro(0)

    def um(self) -> "UnramifiedScalar":
        return self.de_inteiro(1)

    def gerador(self) -> "UnramifiedScalar":
        """A classe de u."""
        if self.f == 1:
            return self.de_inteiro(-self.modulo[0])
        return self.elemento([0, 1])

    def matriz_frobenius(self) -> List[List[int]]:
        """Matriz de σ na base 1, u, ..., u^{f−1} (colunas = σ(u^i))."""
        if self._frob is None:
            self._frob = self._calcular_frobenius()
        return self._frob

    def _calcular_frobenius(self) -> List[List[int]]:
        f = self.f
        if f == 1:
            return [[1]]
        u = self.gerador()
        r = u ** self.p
        derivada = [(i * c) for i, c in enumerate(self.modulo)][1:]
        # Newton no polinômio m, partindo de u^p
        for _ in range(2 * self.N + 4):
            m_r = _avaliar_poly(self.modulo, r)
            if m_r.e_zero():
                break
            r = r - m_r * _avaliar_poly(derivada, r).inverso()
        if not _avaliar_poly(self.modulo, r).e_zero():
            raise PrecisaoInsuficiente("Newton do Frobenius não estabilizou")
        colunas = [self.um().coefs]
        potencia = self.um()
        for _ in range(1, f):
            potencia = potencia * r
            colunas.append(potencia.coefs)
        return [[colunas[i][j] for i in range(f)] for j in range(f)]

    def aplicar_frobenius(self, coefs: Sequence[int], vezes: int = 1) -> Tuple[int, ...]:
        """σ^vezes num vetor de coeficientes (vezes pode ser negativo)."""
        f = self.f
        vezes %= f
        if vezes == 0 or f == 1:
            return tuple(coefs)
        mat = self.matriz_frobenius()
        atual = list(coefs)
        for _ in range(vezes):
            atual = [sum(mat[j][i] * atual[i] for i in range(f)) % self.pN for j in range(f)]
        return tuple(atual)


def _avaliar_poly(coefs: Sequence[int], x: "UnramifiedScalar") -> "UnramifiedScalar":
    """Horner de um polinômio inteiro em um elemento de O_K."""
    acc = x.anel.zero()
    for c in reversed(coefs):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def anel_nao_ramificado(p: int, N: int, f: int) -> UnramifiedRing:
    """Instância compartilhada de O_K para (p, N, f)."""
    return UnramifiedRing(p, N, f)


def anel_de(prec: Precision) -> UnramifiedRing:
    return anel_nao_ramificado(prec.p, prec.N, prec.f)


@dataclass(frozen=True, eq=False)
class UnramifiedScalar:
    """Elemento de O_K mod p^N: coeficientes na base de potências de u."""
    anel: UnramifiedRing
    coefs: Tuple[int, ...]

    def _coagir(self, outro) -> "UnramifiedScalar":
        if isinstance(outro, UnramifiedScalar):
            return outro
        if isinstance(outro, PAdicScalar):
            return self.anel.de_inteiro(outro.para_inteiro())
        return self.anel.de_inteiro(int(outro))

    def __add__(self, outro) -> "UnramifiedScalar":
        if not isinstance(outro, (UnramifiedScalar, PAdicScalar, int)):
            return NotImplemented
        outro = self._coagir(outro)
        mod = self.anel.pN
        return UnramifiedScalar(self.anel, tuple((a + b) % mod for a, b in zip(self.coefs, outro.coefs)))

    __radd__ = __add__

    def __neg__(self) -> "UnramifiedScalar":
        mod = self.anel.pN
        return UnramifiedScalar(self.anel, tuple((-a) % mod for a in self.coefs))

    def __sub__(self, outro) -> "UnramifiedScalar":
        return self + (-self._coagir(outro))

    def __rsub__(self, outro) -> "UnramifiedScalar":
        return self._coagir(outro) - self

    def __mul__(self, outro) -> "UnramifiedScalar":
        anel = self.anel
        if not isinstance(outro, (UnramifiedScalar, PAdicScalar, int)):
            return NotImplemented
        if not isinstance(outro, UnramifiedScalar):
            if isinstance(outro, PAdicScalar):
                outro = outro.para_inteiro()
            c = int(outro)
            return UnramifiedScalar(anel, tuple((a * c) % anel.pN for a in self.coefs))
        if anel.f == 1:
            return UnramifiedScalar(anel, ((self.coefs[0] * outro.coefs[0]) % anel.pN,))
        prod = [0] * (2 * anel.f - 1)
        for i, a in enumerate(self.coefs):
            if a:
                for j, b in enumerate(outro.coefs):
                    prod[i + j] += a * b
        return UnramifiedScalar(anel, anel.reduzir_poly(prod))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UnramifiedScalar":
        if k < 0:
            return self.inverso() ** (-k)
        res = self.anel.um()
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def e_zero(self) -> bool:
        return all(c == 0 for c in self.coefs)

    def e_unidade(self) -> bool:
        return any(c % self.anel.p for c in self.coefs)

    def valuacao(self) -> Union[int, float]:
        return min(valuacao_p(c, self.anel.p) for c in self.coefs)

    def __eq__(self, outro) -> bool:
        try:
            return (self - outro).e_zero()
        except (ValueError, TypeError):
            return NotImplemented

    __hash__ = None

    def inverso(self) -> "UnramifiedScalar":
        """Inverso de uma unidade de O_K (Newton a partir do inverso mod p)."""
        if not self.e_unidade():
            raise ZeroDivisionError("elemento não é unidade em O_K")
        anel = self.anel
        if anel.f == 1:
            return UnramifiedScalar(anel, (pow(self.coefs[0], -1, anel.pN),))
        x = self ** (anel.p ** anel.f - 2)
        precisao = 1
        while precisao < anel.N:
            x = x * (2 - self * x)
            precisao *= 2
        return x

    def dividir_por_p(self, k: int = 1) -> "UnramifiedScalar":
        """Divisão exata por p^k (exige valuação ≥ k); os k dígitos do topo ficam indeterminados (zerados)."""
        p = self.anel.p
        if self.valuacao() < k:
            raise ValueError("divisão por p não exata")
        return UnramifiedScalar(self.anel, tuple(c // p ** k for c in self.coefs))

    def frobenius(self, vezes: int = 1) -> "UnramifiedScalar":
        return UnramifiedScalar(self.anel, self.anel.aplicar_frobenius(self.coefs, vezes))

    def traco(self) -> int:
        """Tr_{K/Q_p} como inteiro mod p^N."""
        total = self
        atual = self
        for _ in range(self.anel.f - 1):
            atual = atual.frobenius()
            total = total + atual
        return total.coefs[0]

    def norma(self) -> int:
        """N_{K/Q_p} como inteiro mod p^N."""
        total = self
        atual = self
        for _ in range(self.anel.f - 1):
            atual = atual.frobenius()
            total = total * atual
        return total.coefs[0]

    def para_padic(self) -> PAdicScalar:
        """Elemento de Z_p (exige coeficientes de u^i, i ≥ 1, nulos)."""
        if any(self.coefs[1:]):
            raise ValueError("elemento fora de Z_p")
        return PAdicScalar.de_inteiro(self.anel.p, self.coefs[0], self.anel.N)

    def __repr__(self) -> str:
        if self.anel.f == 1:
            return f"{self.coefs[0]}"
        termos = [f"{c}·u^{i}" for i, c in enumerate(self.coefs) if c]
        return " + ".join(termos) if termos else "0"


def frobenius(x: UnramifiedScalar) -> UnramifiedScalar:
    """σ(x)."""
    return x.frobenius()


def trace_K_Qp(x: UnramifiedScalar) -> PAdicScalar:
    """Tr_{K/Q_p}(x) como PAdicScalar."""
    return PAdicScalar.de_inteiro(x.anel.p, x.traco(), x.anel.N)


# ============================================================
# Níveis ciclotômicos O_K[ζ_{p^n}]
# ============================================================

def mult_linhas(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], anel: UnramifiedRing) -> List[List[int]]:
    """
    Produto de polinômios (numa variável z ou X) com coeficientes em O_K,
    guardados como f linhas (uma por potência de u).
    """
    f, mod = anel.f, anel.pN
    bruto: List[Optional[List[int]]] = [None] * (2 * f - 1)
    for i in range(f):
        if not any(A[i]):
            continue
        for k in range(f):
            if not any(B[k]):
                continue
            c = convolucao_mod(A[i], B[k], mod)
            if bruto[i + k] is None:
                bruto[i + k] = c
            else:
                bruto[i + k] = [x + y for x, y in zip(bruto[i + k], c)]
    comprimento = len(A[0]) + len(B[0]) - 1
    bruto = [linha if linha is not None else [0] * comprimento for linha in bruto]
    m = anel.modulo
    for grau in range(2 * f - 2, f - 1, -1):
        linha = bruto[grau]
        for l in range(f):
            if m[l]:
                alvo = bruto[grau - f + l]
                bruto[grau - f + l] = [x - m[l] * y for x, y in zip(alvo, linha)]
    return [[x % mod for x in bruto[i]] for i in range(f)]


class CycloRing:
    """O_K[ζ_{p^n}] = O_K[z]/(Φ_{p^n}(1+z)) mod p^N; o nível 0 é O_K."""

    def __init__(self, anel: UnramifiedRing, n: int):
        self.anel = anel
        self.n = n
        self.p = anel.p
        self.modulo = _modulo_ciclotomico(anel.p, n)
        self.grau = len(self.modulo) - 1
        self._tracos: Optional[List[int]] = None

    def __repr__(self) -> str:
        return f"CycloRing(p={self.p}, n={self.n}, f={self.anel.f})"

    def elemento(self, linhas: Sequence[Sequence[int]], den: int = 0) -> "CycloScalar":
        mod = self.anel.pN
        res = []
        for linha in linhas:
            linha = list(linha)
            if len(linha) > self.grau:
                linha = reduzir_monico(linha, self.modulo, mod)
            res.append(tuple([x % mod for x in linha] + [0] * (self.grau - len(linha))))
        return CycloScalar(self, tuple(res), den)

    def de_unramified(self, x: UnramifiedScalar, den: int = 0) -> "CycloScalar":
        return self.elemento([[c] for c in x.coefs], den)

    def de_inteiro(self, x: int) -> "CycloScalar":
        return self.de_unramified(self.anel.de_inteiro(x))

    def zero(self) -> "CycloScalar":
        return self.de_inteiro(0)

    def um(self) -> "CycloScalar":
        return self.de_inteiro(1)

    def z(self) -> "CycloScalar":
        """z = ζ_{p^n} − 1."""
        if self.n == 0:
            return self.zero()
        linhas = [[0] * self.grau for _ in range(self.anel.f)]
        linhas[0][1 % self.grau] = 1
        return self.elemento(linhas)

    def tracos_potencias(self) -> List[int]:
        """Tr_{K_n/K}(z^k) para k < grau, via somas de Ramanujan."""
        if self._tracos is None:
            p, n = self.p, self.n
            if n == 0:
                self._tracos = [1]
            else:
                def ramanujan(i):
                    if i % p ** n == 0:
                        return (p - 1) * p ** (n - 1)
                    if i % p ** (n - 1) == 0:
                        return -p ** (n - 1)
                    return 0
                self._tracos = [
                    sum(math.comb(k, i) * (-1) ** (k - i) * ramanujan(i) for i in range(k + 1))
                    for k in range(self.grau)
                ]
        return self._tracos


@lru_cache(maxsize=None)
def _modulo_ciclotomico(p: int, n: int) -> Tuple[int, ...]:
    """Coeficientes (grau 0 ao topo) de Φ_{p^n}(1+z)."""
    x, z = symbols("x z")
    phi = cyclotomic_poly(p ** n, x)
    coefs = Poly(phi.subs(x, 1 + z), z).all_coeffs()
    return tuple(int(c) for c in reversed(coefs))


@lru_cache(maxsize=None)
def anel_ciclotomico(p: int, N: int, f: int, n: int) -> CycloRing:
    return CycloRing(anel_nao_ramificado(p, N, f), n)


@dataclass(frozen=True, eq=False)
class CycloScalar:
    """
    Elemento p^{−den}·(num) de O_K[ζ_{p^n}], num nas linhas (potências de u)
    e colunas (potências de z). Precisão efetiva: N − den.
    """
    anel: CycloRing
    linhas: Tuple[Tuple[int, ...], ...]
    den: int = 0

    @property
    def nivel(self) -> int:
        return self.anel.n

    @property
    def precisao(self) -> int:
        return self.anel.anel.N - self.den

    def _alinhar(self, outro: "CycloScalar") -> Tuple[List[List[int]], List[List[int]], int]:
        if outro.anel is not self.anel:
            raise ValueError("níveis ciclotômicos diferentes")
        p, mod = self.anel.p, self.anel.anel.pN
        den = max(self.den, outro.den)
        a = [[(x * p ** (den - self.den)) % mod for x in linha] for linha in self.linhas]
        b = [[(x * p ** (den - outro.den)) % mod for x in linha] for linha in outro.linhas]
        return a, b, den

    def _coagir(self, outro) -> "CycloScalar":
        if isinstance(outro, CycloScalar):
            return outro
        if isinstance(outro, UnramifiedScalar):
            return self.anel.de_unramified(outro)
        return self.anel.de_inteiro(int(outro))

    def __add__(self, outro) -> "CycloScalar":
        a, b, den = self._alinhar(self._coagir(outro))
        return self.anel.elemento([[x + y for x, y in zip(la, lb)] for la, lb in zip(a, b)], den)

    __radd__ = __add__

    def __neg__(self) -> "CycloScalar":
        return self.anel.elemento([[-x for x in linha] for linha in self.linhas], self.den)

    def __sub__(self, outro) -> "CycloScalar":
        return self + (-self._coagir(outro))

    def __rsub__(self, outro) -> "CycloScalar":
        return self._coagir(outro) - self

    def __mul__(self, outro) -> "CycloScalar":
        if isinstance(outro, int):
            return self.anel.elemento([[x * outro for x in linha] for linha in self.linhas], self.den)
        outro = self._coagir(outro)
        if outro.anel is not self.anel:
            raise ValueError("níveis ciclotômicos diferentes")
        prod = mult_linhas(self.linhas, outro.linhas, self.anel.anel)
        return self.anel.elemento(prod, self.den + outro.den)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CycloScalar":
        res = self.anel.um()
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def dividir_por_p(self, k: int = 1) -> "CycloScalar":
        """Multiplica por p^{−k} (aumenta o denominador)."""
        return CycloScalar(self.anel, self.linhas, self.den + k)

    def e_zero(self) -> bool:
        mod = self.anel.p ** max(self.precisao, 0)
        return all(x % mod == 0 for linha in self.linhas for x in linha)

    def __eq__(self, outro) -> bool:
        try:
            return (self - self._coagir(outro)).e_zero()
        except (ValueError, TypeError):
            return NotImplemented

    __hash__ = None

    def valuacao(self) -> Union[Fraction, float]:
        """
        Valuação normalizada (v(p) = 1): min v(c_j) + j/[K_n:K] − den.
        Os termos têm partes fracionárias distintas, então não há cancelamento.
        """
        e = Fraction(1, self.anel.grau) if self.nivel else Fraction(1)
        melhor = INFINITO
        for linha in self.linhas:
            for j, x in enumerate(linha):
                if x:
                    melhor = min(melhor, valuacao_p(x, self.anel.p) + j * e)
        return melhor - self.den if melhor != INFINITO else INFINITO

    def coeficiente(self, j: int) -> UnramifiedScalar:
        """Coeficiente em O_K de z^j (numerador)."""
        return UnramifiedScalar(self.anel.anel, tuple(linha[j] for linha in self.linhas))

    def _substituir(self, w: "CycloScalar") -> "CycloScalar":
        """Horner: Σ c_j z^j ↦ Σ c_j w^j no anel de w."""
        alvo = w.anel
        acc = alvo.zero()
        for j in range(self.anel.grau - 1, -1, -1):
            acc = acc * w + alvo.de_unramified(self.coeficiente(j))
        return CycloScalar(alvo, acc.linhas, self.den + acc.den)

    def galois(self, a: int) -> "CycloScalar":
        """Ação de a ∈ (Z/p^n)^×: ζ ↦ ζ^a (coeficientes intactos)."""
        if self.nivel == 0:
            return self
        a %= self.anel.p ** self.nivel
        if a % self.anel.p == 0:
            raise ValueError("a precisa ser unidade")
        zeta_a = (self.anel.um() + self.anel.z()) ** a
        return self._substituir(zeta_a - 1)

    def conjugado(self) -> "CycloScalar":
        """Conjugação complexa ζ ↦ ζ^{−1}."""
        return self.galois(-1)

    def frobenius(self, vezes: int = 1) -> "CycloScalar":
        """σ nos coeficientes em O_K (fixa ζ)."""
        anel_k = self.anel.anel
        colunas = [anel_k.aplicar_frobenius(tuple(linha[j] for linha in self.linhas), vezes)
                   for j in range(self.anel.grau)]
        linhas = [[colunas[j][i] for j in range(self.anel.grau)] for i in range(anel_k.f)]
        return self.anel.elemento(linhas, self.den)

    def mergulhar(self, n: int) -> "CycloScalar":
        """Imersão no nível n ≥ nível atual: z ↦ (1+z)^{p^{n−m}} − 1."""
        if n == self.nivel:
            return self
        if n < self.nivel:
            raise ValueError("imersão só sobe de nível")
        alvo = anel_ciclotomico(self.anel.p, self.anel.anel.N, self.anel.anel.f, n)
        w = (alvo.um() + alvo.z()) ** (self.anel.p ** (n - self.nivel)) - 1
        return self._substituir(w)

    def traco(self) -> "CycloScalar":
        """Tr_{K_n/K}, como elemento do nível 0 (preserva den)."""
        tracos = self.anel.tracos_potencias()
        anel_k = self.anel.anel
        linhas = [[sum(t * x for t, x in zip(tracos, linha))] for linha in self.linhas]
        nivel0 = anel_ciclotomico(anel_k.p, anel_k.N, anel_k.f, 0)
        return nivel0.elemento(linhas, self.den)

    def traco_por_galois(self) -> "CycloScalar":
        """Tr_{K_n/K} como soma explícita dos conjugados (oráculo)."""
        p, n = self.anel.p, self.nivel
        total = self.anel.zero()
        for a in range(1, p ** n):
            if a % p:
                total = total + self.galois(a)
        return total

    def norma(self) -> "CycloScalar":
        """N_{K_n/K}: produto dos conjugados, no nível n (constante em z)."""
        p, n = self.anel.p, self.nivel
        total = self.anel.um()
        for a in range(1, p ** n):
            if a % p:
                total = total * self.galois(a)
        return total

    def para_unramified(self) -> UnramifiedScalar:
        """Elemento de O_K (exige den = 0 e termos em z nulos)."""
        if self.den:
            raise PrecisaoInsuficiente("elemento com denominador p^den")
        if any(x for linha in self.linhas for x in linha[1:]):
            raise ValueError("elemento fora de O_K")
        return self.coeficiente(0)

    def __repr__(self) -> str:
        return f"CycloScalar(n={self.nivel}, den={self.den}, {self.linhas})"


def zeta(prec: Precision, n: int) -> CycloScalar:
    """ζ_{p^n} = 1 + z no nível n."""
    if n > prec.n_max:
        raise NivelExcedido(f"nível {n} > n_max={prec.n_max}")
    anel = anel_ciclotomico(prec.p, prec.N, prec.f, n)
    return anel.um() + anel.z()


def trace_Kn_K(x: CycloScalar) -> UnramifiedScalar:
    """Tr_{K_n/K}(x) ∈ O_K."""
    return x.traco().para_unramified()
