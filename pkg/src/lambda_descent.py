#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Álgebra de Iwasawa truncada Λ = Z_p[Δ] ⊗ Z_p[[T]], T = γ_1 − 1, χ(γ_1) = 1 + p.

Cada elemento guarda uma série truncada por componente δ_i (i = 0..p−2).
Aqui ficam a preparação de Weierstrass, ideais característicos, os
operadores ℓ_m e Γ_h(V), o lema de descida, a imagem de κ_{V,n} com oráculo
por força bruta e a checagem de unidade dos a_i.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, floor
from typing import TYPE_CHECKING, Dict, List, Optional, Sequence, Tuple

from sympy import Matrix

from config import Precision
from epsilon import caracteres, e_eta, gamma_star, gamma_star_V, racional_em
from erros import PrecisaoInsuficiente, RepresentacaoInvalida
from ring_tower import (
    CycloScalar, PAdicScalar, anel_ciclotomico, convolucao_mod, discrete_log_gamma, log_padico,
    reduzir_monico, teichmuller_int, valuacao_p, zeta, _modulo_ciclotomico,
)
from zp_linalg import nucleo, smith, valuacao_mod

if TYPE_CHECKING:
    from wach import FilteredPhiModule


def _folga_binomial(p: int, M: int) -> int:
    """v_p((M−1)!): dígitos extras de s para C(s, k) correto mod p^N, k < M."""
    return sum((M - 1) // p ** e for e in range(1, 64) if p ** e <= M - 1)


def binomiais_gamma(s: int, M: int, mod: int) -> List[int]:
    """C(s, k) mod `mod` para k < M, com s inteiro (representante p-ádico)."""
    res, atual = [], Fraction(1)
    for k in range(M):
        res.append((atual.numerator * pow(atual.denominator, -1, mod)) % mod)
        atual = atual * (s - k) / (k + 1)
    return res


# ============================================================
# Elementos de Λ (e de H(Γ), com denominador)
# ============================================================

@dataclass(frozen=True, eq=False)
class LambdaElem:
    """
    Elemento p^{−den}·(num_i(T))_i de Λ ⊗ Q_p, truncado mod T^M.

    h_gamma marca elementos de H(Γ) (ℓ_m, Γ_h): coeficientes com
    denominadores limitados por den.
    """
    p: int
    N: int
    M: int
    componentes: Tuple[Tuple[int, ...], ...]
    den: int = 0
    h_gamma: bool = False

    @classmethod
    def de_coefs(cls, prec: Precision, coefs: Sequence[int], componente: Optional[int] = None,
                 den: int = 0, h_gamma: bool = False) -> "LambdaElem":
        """Série Σ c_k T^k numa componente (ou em todas, se componente=None)."""
        p, mod, M = prec.p, prec.pN, prec.M_lambda
        linha = tuple((list(int(c) % mod for c in coefs) + [0] * M)[:M])
        zero = (0,) * M
        comps = tuple(linha if componente is None or i == componente % (p - 1) else zero
                      for i in range(p - 1))
        return cls(p, prec.N, M, comps, den, h_gamma)

    @property
    def mod(self) -> int:
        return self.p ** self.N

    @property
    def precisao(self) -> int:
        return self.N - self.den

    def _mesmo(self, comps, den: int, h_gamma: bool) -> "LambdaElem":
        return LambdaElem(self.p, self.N, self.M, tuple(tuple(c) for c in comps), den, h_gamma)

    def _alinhar(self, outro: "LambdaElem"):
        den = max(self.den, outro.den)
        ea, eb = self.p ** (den - self.den), self.p ** (den - outro.den)
        a = [[x * ea for x in c] for c in self.componentes]
        b = [[x * eb for x in c] for c in outro.componentes]
        return a, b, den

    def _coagir(self, outro) -> "LambdaElem":
        if isinstance(outro, LambdaElem):
            return outro
        comps = tuple(((int(outro) % self.mod,) + (0,) * (self.M - 1)) for _ in self.componentes)
        return LambdaElem(self.p, self.N, self.M, comps)

    def __add__(self, outro) -> "LambdaElem":
        outro = self._coagir(outro)
        a, b, den = self._alinhar(outro)
        mod = self.mod
        comps = [[(x + y) % mod for x, y in zip(ca, cb)] for ca, cb in zip(a, b)]
        return self._mesmo(comps, den, self.h_gamma or outro.h_gamma)

    __radd__ = __add__

    def __neg__(self) -> "LambdaElem":
        return self._mesmo([[(-x) % self.mod for x in c] for c in self.componentes], self.den, self.h_gamma)

    def __sub__(self, outro) -> "LambdaElem":
        return self + (-self._coagir(outro))

    def __rsub__(self, outro) -> "LambdaElem":
        return self._coagir(outro) - self

    def __mul__(self, outro) -> "LambdaElem":
        if isinstance(outro, int):
            return self._mesmo([[(x * outro) % self.mod for x in c] for c in self.componentes],
                               self.den, self.h_gamma)
        outro = self._coagir(outro)
        comps = [convolucao_mod(ca, cb, self.mod)[:self.M] for ca, cb in zip(self.componentes, outro.componentes)]
        return self._mesmo(comps, self.den + outro.den, self.h_gamma or outro.h_gamma)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LambdaElem":
        res = self._coagir(1)
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def dividir_por_p(self, k: int = 1) -> "LambdaElem":
        return LambdaElem(self.p, self.N, self.M, self.componentes, self.den + k, self.h_gamma)

    def e_zero(self) -> bool:
        mod = self.p ** max(self.precisao, 0)
        return all(x % mod == 0 for c in self.componentes for x in c)

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, (LambdaElem, int)):
            return NotImplemented
        return (self - outro).e_zero()

    __hash__ = None

    def componente(self, i: int) -> List[int]:
        return list(self.componentes[i % (self.p - 1)])

    def derivada(self) -> "LambdaElem":
        """d/dT em cada componente (perde o último coeficiente)."""
        comps = [[(k * c[k]) % self.mod for k in range(1, self.M)] + [0] for c in self.componentes]
        return self._mesmo(comps, self.den, self.h_gamma)

    # ----------------------------------------------------------- avaliação

    def avaliar(self, j: int) -> PAdicScalar:
        """
        Valor em χ^j: componente j mod (p−1), T ↦ (1+p)^j − 1.

        O corte em T^M custa no máximo M − den dígitos (v(T) ≥ 1 para j ≠ 0).
        """
        p, mod = self.p, self.mod
        t = (pow(1 + p, j, mod) - 1) % mod
        acc = 0
        for c in reversed(self.componente(j)):
            acc = (acc * t + c) % mod
        prec = self.N if j == 0 else min(self.N, self.M)
        return PAdicScalar.de_inteiro(p, acc, prec) / p ** self.den

    def avaliar_raiz(self, i: int, rho: CycloScalar) -> CycloScalar:
        """Componente i avaliada em T = rho (rho de valuação positiva)."""
        acc = rho.anel.zero()
        for c in reversed(self.componente(i)):
            acc = acc * rho + c
        return acc.dividir_por_p(self.den) if self.den else acc

    def avaliar_caracter(self, j: int, m: int = 0, w: int = 0) -> CycloScalar:
        """Valor em χ^j·η' com η'(γ_1) = ζ_{p^m}^w (anel ciclotômico de nível m)."""
        anel = anel_ciclotomico(self.p, self.N, 1, m)
        z = anel.um() + anel.z()
        rho = (z ** (w % self.p ** m if m else 0)) * pow(1 + self.p, j, self.mod) - 1
        return self.avaliar_raiz(j, rho)

    def __repr__(self) -> str:
        escala = f"p^-{self.den}·" if self.den else ""
        return f"LambdaElem({escala}{[c[:4] for c in self.componentes]}...)"


def lambda_zero(prec: Precision) -> LambdaElem:
    return LambdaElem.de_coefs(prec, [0])


def lambda_um(prec: Precision) -> LambdaElem:
    return LambdaElem.de_coefs(prec, [1])


def lambda_T(prec: Precision) -> LambdaElem:
    return LambdaElem.de_coefs(prec, [0, 1])


def omega_polinomio(k: int, prec: Precision) -> LambdaElem:
    """ω_k(T) = (1+T)^{p^k} − 1 (γ_{k+1} − 1)."""
    grau = prec.p ** k
    return LambdaElem.de_coefs(prec, [0] + [comb(grau, i) for i in range(1, grau + 1)])


def elemento_grupo(a: int, prec: Precision) -> LambdaElem:
    """
    [a] para a ∈ Z_p^× (inteiro): ω(a)^i na componente i vezes (1+T)^s, ⟨a⟩ = (1+p)^s.

    Args:
        a: Representante inteiro (p ∤ a)
        prec: Precisão (usa N e M_lambda)
    """
    p, N, M = prec.p, prec.N, prec.M_lambda
    if a % p == 0:
        raise ValueError("a precisa ser unidade")
    extra = N + _folga_binomial(p, M) + 2
    mod_extra = p ** extra
    w = teichmuller_int(a, p, extra)
    principal = (a * pow(w, -1, mod_extra)) % mod_extra
    s = discrete_log_gamma(principal, p, extra)
    binoms = binomiais_gamma(s, M, prec.pN)
    mod = prec.pN
    comps = []
    for i in range(p - 1):
        wi = pow(w, i, mod)
        comps.append(tuple((wi * b) % mod for b in binoms))
    return LambdaElem(p, N, M, tuple(comps))


# ============================================================
# Idempotentes δ_i
# ============================================================

def idempotents(prec: Precision) -> List[LambdaElem]:
    """δ_0, …, δ_{p−2}: indicadores das componentes."""
    return [LambdaElem.de_coefs(prec, [1], componente=i) for i in range(prec.p - 1)]


def idempotente_por_soma(i: int, prec: Precision) -> LambdaElem:
    """δ_i = (1/#Δ) Σ_{g∈Δ} χ^i(g^{−1})·[g], somando elementos de grupo."""
    p, mod = prec.p, prec.pN
    extra = prec.N + _folga_binomial(p, prec.M_lambda) + 2
    total = lambda_zero(prec)
    for a in range(1, p):
        w = teichmuller_int(a, p, extra)
        coef = pow(pow(w, i, mod), -1, mod)
        total = total + elemento_grupo(w, prec) * coef
    return total * pow(p - 1, -1, mod)


def delta_em_tate(i: int, j: int, prec: Precision) -> int:
    """Ação de δ_i em Z_p(j): 1 se i ≡ j mod (p−1), senão 0 (mod p^N)."""
    p, mod = prec.p, prec.pN
    soma = 0
    for a in range(1, p):
        w = teichmuller_int(a, p, prec.N)
        soma += pow(pow(w, i, mod), -1, mod) * pow(w, j % (p - 1), mod)
    return (soma * pow(p - 1, -1, mod)) % mod


# ============================================================
# Weierstrass e ideais característicos
# ============================================================

def _inversa_serie(c: Sequence[int], L: int, mod: int) -> List[int]:
    inv0 = pow(c[0], -1, mod)
    b = [inv0]
    for k in range(1, L):
        acc = sum(c[i] * b[k - i] for i in range(1, min(k, len(c) - 1) + 1))
        b.append((-acc * inv0) % mod)
    return b


@dataclass(frozen=True)
class Weierstrass:
    """g = p^mu · P(T) · u(T): P distinguido (mônico, coeficientes baixos em pZ_p)."""
    mu: int
    P: Tuple[int, ...]
    unidade: Tuple[int, ...]
    precisao: int

    @property
    def grau(self) -> int:
        return len(self.P) - 1


def weierstrass(coefs: Sequence[int], p: int, N: int, den: int = 0) -> Weierstrass:
    """
    Preparação de Weierstrass de p^{−den}·Σ c_k T^k sobre Z/p^N[[T]]/(T^M).

    Itera q ← B^{−1}(1 − τ_λ(q·A)) com g = A + T^λ B; então P = q·g.

    Raises:
        PrecisaoInsuficiente: série nula à precisão ou truncamento curto demais
    """
    M = len(coefs)
    mod = p ** N
    vals = [valuacao_mod(c, p, N) for c in coefs]
    v_min = min(vals) if vals else N
    if v_min >= N:
        raise PrecisaoInsuficiente("série nula à precisão de trabalho", necessario=N + 1)
    efetiva = N - v_min
    mod_ef = p ** efetiva
    g = [(c // p ** v_min) % mod_ef for c in coefs]
    lam = next(k for k, c in enumerate(g) if c % p)
    if lam == 0:
        return Weierstrass(v_min - den, (1,), tuple(g), efetiva)
    if M < lam * (efetiva + 2):
        raise PrecisaoInsuficiente(f"Weierstrass com λ={lam} exige M_lambda ≥ {lam * (efetiva + 2)}",
                                   necessario=lam * (efetiva + 2))
    A = g[:lam]
    B = g[lam:]
    L = len(B)
    B_inv = _inversa_serie(B, L, mod_ef)
    q = list(B_inv)
    for _ in range(efetiva + 1):
        qa = convolucao_mod(q, A, mod_ef)
        tau = (qa[lam:] + [0] * L)[:L]
        um_menos = [(-x) % mod_ef for x in tau]
        um_menos[0] = (um_menos[0] + 1) % mod_ef
        q = convolucao_mod(B_inv, um_menos, mod_ef)[:L]
    qa = convolucao_mod(q, A, mod_ef)
    P = tuple((qa + [0] * lam)[:lam]) + (1,)
    u = tuple(_inversa_serie(q, L, mod_ef))
    return Weierstrass(v_min - den, P, u, efetiva)


@dataclass(frozen=True)
class CharIdeal:
    """Gerador normalizado p^mu·P(T) por componente δ_i."""
    p: int
    componentes: Tuple[Tuple[int, Tuple[int, ...]], ...]
    precisao: int

    @classmethod
    def de_elemento(cls, g: LambdaElem) -> "CharIdeal":
        comps, prec = [], g.N
        for c in g.componentes:
            w = weierstrass(c, g.p, g.N, g.den)
            comps.append((w.mu, w.P))
            prec = min(prec, w.precisao)
        return cls(g.p, tuple(comps), prec)

    @classmethod
    def unitario(cls, p: int, N: int) -> "CharIdeal":
        return cls(p, tuple((0, (1,)) for _ in range(p - 1)), N)

    def __mul__(self, outro: "CharIdeal") -> "CharIdeal":
        prec = min(self.precisao, outro.precisao)
        mod = self.p ** prec
        comps = tuple((ma + mb, tuple(convolucao_mod(Pa, Pb, mod)))
                      for (ma, Pa), (mb, Pb) in zip(self.componentes, outro.componentes))
        return CharIdeal(self.p, comps, prec)

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, CharIdeal):
            return NotImplemented
        mod = self.p ** min(self.precisao, outro.precisao)
        for (ma, Pa), (mb, Pb) in zip(self.componentes, outro.componentes):
            if ma != mb or len(Pa) != len(Pb):
                return False
            if any((x - y) % mod for x, y in zip(Pa, Pb)):
                return False
        return True

    __hash__ = None

    def e_unitario(self) -> bool:
        return all(m == 0 and len(P) == 1 for m, P in self.componentes)

    def lambda_invariante(self, i: int = 0) -> int:
        return len(self.componentes[i][1]) - 1

    def divide(self, outro: "CharIdeal") -> bool:
        """self | outro: compara μ e testa divisão exata dos polinômios distinguidos."""
        mod = self.p ** min(self.precisao, outro.precisao)
        for (ma, Pa), (mb, Pb) in zip(self.componentes, outro.componentes):
            if ma > mb or len(Pa) > len(Pb):
                return False
            resto = reduzir_monico(list(Pb), Pa, mod) if len(Pa) > 1 else [0]
            if any(x % mod for x in resto):
                return False
        return True


def char_ideal_tate(j: int, prec: Precision, todas: bool = False) -> CharIdeal:
    """
    car_Λ(Z_p(j)): gerador (χ(γ_1)^j − 1) − T na componente δ_{j mod p−1}.

    todas=True dá car_Λ(Z_p[Δ] ⊗ Z_p(j)), o mesmo fator em toda componente.
    """
    p, mod = prec.p, prec.pN
    raiz = (pow(1 + p, j, mod) - 1) % mod
    P = ((-raiz) % mod, 1)
    comps = tuple((0, P) if todas or i == j % (p - 1) else (0, (1,)) for i in range(p - 1))
    return CharIdeal(p, comps, prec.N)


def determinante(matriz: Sequence[Sequence]):
    """Determinante por expansão de Laplace (qualquer anel com +, −, ·)."""
    n = len(matriz)
    if n == 1:
        return matriz[0][0]
    if n == 2:
        return matriz[0][0] * matriz[1][1] - matriz[0][1] * matriz[1][0]
    total = None
    for j in range(n):
        menor = [linha[:j] + linha[j + 1:] for linha in matriz[1:]]
        termo = matriz[0][j] * determinante(menor)
        if j % 2:
            termo = -termo
        total = termo if total is None else total + termo
    return total


def char_ideal(apresentacao: Sequence[Sequence[LambdaElem]]) -> CharIdeal:
    """
    Ideal característico de coker(apresentação) via Weierstrass do determinante.

    Raises:
        PrecisaoInsuficiente: determinante nulo à precisão de trabalho
    """
    linhas = [list(l) for l in apresentacao]
    if any(len(l) != len(linhas) for l in linhas):
        raise ValueError("apresentação precisa ser quadrada")
    return CharIdeal.de_elemento(determinante(linhas))


# ============================================================
# Gerador de Wach em Λ
# ============================================================

def gerador_wach_lambda(r: int, prec: Precision) -> LambdaElem:
    """
    Coordenada Λ de φ(X)^r(1+X) relativa a (1+X)ε' no modelo de posto 1:
    c_r = Σ_i C(r,i)(−1)^{r−i}(1+pi)^r·[1+pi].
    """
    p, mod = prec.p, prec.pN
    total = lambda_zero(prec)
    for i in range(r + 1):
        a = 1 + p * i
        coef = comb(r, i) * (-1) ** (r - i) * pow(a, r, mod)
        total = total + elemento_grupo(a, prec) * (coef % mod)
    return total


# ============================================================
# ℓ_m, Γ_h(V) e congruências mod ω_{n−1}
# ============================================================

def _log_chi_gamma1(p: int, N: int) -> PAdicScalar:
    return log_padico(1 + p, p, N + 1)


def ell_operator(m: int, prec: Precision) -> LambdaElem:
    """
    ℓ_m = m − log(1+T)/log χ(γ_1) em H(Γ), truncado em T^M_lambda.

    O coeficiente de T^k tem denominador p^{1+v_p(k)}.
    """
    p, N, M, mod = prec.p, prec.N, prec.M_lambda, prec.pN
    log_chi = _log_chi_gamma1(p, N)
    u_inv = pow(log_chi.unidade, -1, mod)
    den = 1 + max(valuacao_p(k, p) for k in range(1, max(M, 2)))
    coefs = [(m * p ** den) % mod]
    for k in range(1, M):
        vk = valuacao_p(k, p)
        inv_k = pow(k // p ** vk, -1, mod)
        # −(−1)^{k+1}/(k·log χ) = (−1)^k u^{-1}/(p^{1+vk} k')
        c = (-1) ** k * u_inv * inv_k * p ** (den - 1 - vk)
        coefs.append(c % mod)
    return LambdaElem.de_coefs(prec, coefs, den=den, h_gamma=True)


def gamma_h_factor(fil: "FilteredPhiModule", h: int, prec: Precision) -> LambdaElem:
    """
    Γ_h(V) = Π_{j>−h} ℓ_{−j}^{dim_{Q_p} Fil^j}.

    Raises:
        RepresentacaoInvalida: Fil^{−h} não é tudo
    """
    if fil.dim_fil(-h) != fil.d:
        raise RepresentacaoInvalida(f"Fil^{-h} precisa ser D_cris inteiro")
    total = lambda_um(prec)
    for j in range(-h + 1, fil.salto_maximo() + 1):
        a_j = fil.f * fil.dim_fil(j)
        if a_j:
            total = total * ell_operator(-j, prec) ** a_j
    return LambdaElem(total.p, total.N, total.M, total.componentes, total.den, True)



def _valuacao_raiz(p: int, m: int) -> Fraction:
    """v_p(ζ_{p^m} − 1)."""
    return Fraction(1, p ** (m - 1) * (p - 1)) if m else Fraction(0)


def congruente_mod_omega(g: LambdaElem, n: int, ordem: int, componente: int = 0) -> bool:
    """
    g ≡ 0 mod ω_{n−1}(T)^ordem: g e suas derivadas até ordem−1 somem em todas
    as raízes ζ_{p^m} − 1, m ≤ n−1 (basta uma por órbita de Galois).

    O corte em T^M só é invisível até a valuação (M − ordem)·v(ζ_{p^m} − 1) − 2·den;
    a comparação usa o menor entre esse limite e a precisão de g.

    Raises:
        PrecisaoInsuficiente: limite de comparação não positivo
    """
    derivadas = [g]
    for _ in range(ordem - 1):
        derivadas.append(derivadas[-1].derivada())
    for m in range(n):
        anel = anel_ciclotomico(g.p, g.N, 1, m)
        rho = anel.z()
        limite = g.precisao
        if m:
            limite = min(limite, floor((g.M - ordem) * _valuacao_raiz(g.p, m)) - 2 * g.den)
        if limite <= 0:
            raise PrecisaoInsuficiente(f"comparação mod ω_{n - 1} sem dígitos no nível {m}",
                                       necessario=g.M + 2 * g.den * g.p ** m)
        for d in derivadas:
            if d.avaliar_raiz(componente, rho).valuacao() < limite:
                return False
    return True


def log_chi_gamma_n(n: int, prec: Precision) -> PAdicScalar:
    """log χ(γ_n) = p^{n−1} log(1+p)."""
    return _log_chi_gamma1(prec.p, prec.N) * prec.p ** (n - 1)


def _vezes_racional(g: LambdaElem, x: Fraction) -> LambdaElem:
    """g·x para x racional (a potência de p vai para den)."""
    p, mod = g.p, g.mod
    num, dnm = x.numerator, x.denominator
    v = valuacao_p(num, p) - valuacao_p(dnm, p)
    unidade = (num // p ** valuacao_p(num, p)) * pow(dnm // p ** valuacao_p(dnm, p), -1, mod)
    res = g * (unidade % mod)
    return res * p ** v if v >= 0 else res.dividir_por_p(-v)


def ell_zero_expansao(n: int, prec: Precision) -> LambdaElem:
    """ℓ_0 + ω_{n−1}(T)/log χ(γ_n): deve ser ≡ 0 mod ω_{n−1}²."""
    lc = log_chi_gamma_n(n, prec)
    termo = (omega_polinomio(n - 1, prec) * pow(lc.unidade, -1, prec.pN)).dividir_por_p(lc.valuacao)
    return ell_operator(0, prec) + termo


def gamma_h_estrela(fil: "FilteredPhiModule", h: int, n: int, prec: Precision) -> LambdaElem:
    """
    Γ_h^*(V)·ω_{n−1}^{a_0} com Γ_h^* = (−1)^{a_0}(log χ(γ_n))^{−a_0} Π_{j>−h, j≠0} (−j)^{a_j}.
    """
    a0 = fil.f * fil.dim_fil(0)
    constante = Fraction((-1) ** a0)
    for j in range(-h + 1, fil.salto_maximo() + 1):
        if j != 0:
            constante *= Fraction(-j) ** (fil.f * fil.dim_fil(j))
    lc = log_chi_gamma_n(n, prec)
    base = omega_polinomio(n - 1, prec) ** a0 * pow(lc.unidade, -a0, prec.pN)
    base = base.dividir_por_p(lc.valuacao * a0)
    res = _vezes_racional(base, constante)
    return LambdaElem(res.p, res.N, res.M, res.componentes, res.den, True)


def gamma_h_congruencia(fil: "FilteredPhiModule", h: int, n: int, prec: Precision) -> bool:
    """Γ_h(V) ≡ Γ_h^*(V)ω_{n−1}^{a_0} mod ω_{n−1}^{a_0+1}."""
    a0 = fil.f * fil.dim_fil(0)
    diferenca = gamma_h_factor(fil, h, prec) - gamma_h_estrela(fil, h, n, prec)
    return congruente_mod_omega(diferenca, n, a0 + 1)


def gamma_h_fatorial(fil: "FilteredPhiModule", h: int) -> Tuple[Fraction, Fraction]:
    """
    Os dois lados de (h−1)!^{dim D} = ±Π_{j>−h, j≠0} j^{a_j}·Γ*(V), como racionais.
    """
    esquerda = Fraction(factorial(h - 1)) ** (fil.f * fil.d)
    direita = Fraction(1)
    for j in range(-h + 1, fil.salto_maximo() + 1):
        if j != 0:
            direita *= Fraction(j) ** (fil.f * fil.dim_fil(j))
    return esquerda, direita * gamma_star_V(fil)


# ============================================================
# Lema de descida
# ============================================================

@dataclass
class DescentResult:
    """
    r = dim ker f_λ; i_f_lambda pelo determinante, i_f_lambda_kernel pelos
    levantamentos de núcleo e conúcleo (só λ trivial).
    """
    r: int
    semi_simple: bool
    admissible: bool
    i_f_lambda: Optional[PAdicScalar]
    i_f_lambda_kernel: Optional[PAdicScalar] = None


def _dividir_monico(coefs: Sequence[int], divisor: Sequence[int], mod: int) -> Tuple[List[int], List[int]]:
    """Divisão de série truncada por polinômio mônico (quociente truncado, resto)."""
    g = len(divisor) - 1
    resto = list(coefs)
    quoc = [0] * len(coefs)
    for i in range(len(resto) - 1, g - 1, -1):
        c = resto[i] % mod
        if c:
            quoc[i - g] = c
            for j in range(g + 1):
                resto[i - g + j] -= c * divisor[j]
    return [x % mod for x in quoc], [x % mod for x in resto[:g]]


def _posto(M: Sequence[Sequence[CycloScalar]]) -> int:
    """Posto sobre o corpo de frações, por menores (matrizes pequenas)."""
    n = len(M)
    for k in range(n, 0, -1):
        for linhas in combinations(range(n), k):
            for colunas in combinations(range(n), k):
                menor = [[M[i][j] for j in colunas] for i in linhas]
                if not determinante(menor).e_zero():
                    return k
    return 0


def descent_check(fmap: Sequence[Sequence[LambdaElem]], n: int, prec: Precision,
                  componente: int = 0, w: int = 0) -> DescentResult:
    """
    Lema de descida na componente δ_i, no caracter λ de Γ_1/Γ_n com λ(γ_1) = ζ_{p^{n−1}}^w.

    f é semi-simples em λ quando det f se anula em λ com ordem exatamente
    r = dim ker f_λ; então i_{f,λ} = (det f/(γ_n − 1)^r)(λ).

    Args:
        fmap: Matriz d×d de elementos de Λ
        n: Nível (γ_n − 1 = ω_{n−1}(T))
        componente: Componente δ_i
        w: Expoente do caracter finito (0 = λ trivial)
    """
    p, N, mod = prec.p, prec.N, prec.pN
    d = len(fmap)
    w %= p ** max(n - 1, 0)
    m = 0 if w == 0 else (n - 1) - valuacao_p(w, p)
    # as raízes de Φ_{p^m}(1+T) são conjugadas: basta avaliar em ζ_{p^m} − 1
    nu = list(_modulo_ciclotomico(p, m)) if m else [0, 1]
    rho = anel_ciclotomico(p, N, 1, m).z()

    det = determinante([list(linha) for linha in fmap])
    coefs = det.componente(componente)
    s = 0
    while s <= d:
        valor = LambdaElem.de_coefs(prec, coefs, componente).avaliar_raiz(componente, rho)
        if not valor.e_zero():
            break
        quociente, resto = _dividir_monico(coefs, nu, mod)
        if any(resto):
            break
        coefs = quociente
        s += 1

    avaliada = [[e.avaliar_raiz(componente, rho) for e in linha] for linha in fmap]
    r = d - _posto(avaliada)
    if s != r:
        return DescentResult(r, False, False, None)
    if m:
        return DescentResult(r, True, True, None)

    # λ trivial: ν = T e (γ_n − 1)/T vale p^{n−1} em T = 0
    u_val = PAdicScalar.de_inteiro(p, coefs[0], N) / p ** ((n - 1) * r)
    rota_nucleo = _descida_por_levantamentos(fmap, n, prec, componente, r)
    return DescentResult(r, True, True, u_val, rota_nucleo)


def _descida_por_levantamentos(fmap, n: int, prec: Precision, componente: int, r: int) -> PAdicScalar:
    """
    i_{f,λ} para λ trivial: com U·f(0)·V = S (Smith), as colunas de V sobre
    pivôs nulos levantam o núcleo; f(V e_i)/T em 0, lido nas linhas nulas de
    U·S, dá a matriz B(0) e i = det(S')·det B(0)/(det U·det V·p^{(n−1)r}).
    """
    p, N, mod = prec.p, prec.N, prec.pN
    d = len(fmap)
    f0 = [[e.componente(componente)[0] for e in linha] for linha in fmap]
    fs = smith(f0, p, N)
    nucleo_idx = [i for i in range(d) if fs.valuacoes[i] == N]
    if len(nucleo_idx) != r:
        raise PrecisaoInsuficiente("núcleo de f(0) com dimensão instável", necessario=N + 2)
    B = []
    for i in nucleo_idx:
        X_i = [fs.V[k][i] for k in range(d)]
        # coeficiente de T em f(X_i)
        linear = [sum(fmap[a][b].componente(componente)[1] * X_i[b] for b in range(d)) % mod
                  for a in range(d)]
        B.append([sum(fs.U[j][a] * linear[a] for a in range(d)) % mod for j in nucleo_idx])
    det_B = int(Matrix(B).det()) % mod if B else 1
    pivos = 1
    for i in range(d):
        if i not in nucleo_idx:
            pivos *= p ** fs.valuacoes[i]
    det_UV = int(Matrix(fs.U).det() * Matrix(fs.V).det()) % mod
    valor = PAdicScalar.de_inteiro(p, det_B * pivos, N) / PAdicScalar.de_inteiro(p, det_UV, N)
    return valor / p ** ((n - 1) * r)


# ============================================================
# κ_{V,n}: fórmula fechada e oráculo por projeção em e_η
# ============================================================

def kappa_lattice_image(fil: "FilteredPhiModule", n: int, prec: Precision) -> Dict[Tuple[int, int], Fraction]:
    """
    Coeficientes da imagem de κ_{V,n} por caracter η = (i, w) de G_n:
    p^{−nd} det(φ)^{−a(η)} para η ≠ η_0 e (−1)^d p^{(1−n)d + n·dim D^{φ=1}} em η_0.
    """
    d = fil.d
    det = fil.det_phi_racional()
    res = {}
    for eta in caracteres(prec, n):
        if eta.e_trivial():
            res[(eta.i, eta.w)] = Fraction((-1) ** d) * Fraction(prec.p) ** ((1 - n) * d + n * fil.dim_phi_um())
        else:
            res[(eta.i, eta.w)] = Fraction(prec.p) ** (-n * d) * det ** (-eta.conductor())
    return res


def xi_telescopado_unitario(fil: "FilteredPhiModule", n: int, prec: Precision) -> CycloScalar:
    """
    Ξ((1+X)⊗1) = p^{−n}(Σ_{k=1}^n ζ_{p^k}·φ^{−k}(1) + (1−φ)^{−1}(1)) em posto 1.

    Raises:
        RepresentacaoInvalida: posto ≠ 1 ou D^{φ=1} ≠ 0
    """
    if fil.d != 1:
        raise RepresentacaoInvalida("oráculo de κ só em posto 1")
    det = fil.det_phi_racional()
    if det == 1:
        raise RepresentacaoInvalida("D^{φ=1} ≠ 0: use lambda_component_correction")
    base = prec.com(f=1)
    anel = anel_ciclotomico(prec.p, prec.N, 1, n)
    total = anel.zero()
    for k in range(1, n + 1):
        total = total + zeta(base, k).mergulhar(n) * racional_em(det ** (-k), anel)
    total = total + racional_em(1 / (1 - det), anel)
    return total.dividir_por_p(n)


def kappa_oraculo(fil: "FilteredPhiModule", n: int, prec: Precision) -> Dict[Tuple[int, int], bool]:
    """
    Compara, para cada η, e_η(Ξ((1+X)⊗1)) com a fórmula fechada.

    η ≠ η_0: e_η(Ξ) = p^{−n}det^{−a(η)}·e_η(ζ_{p^{a(η)}});
    η_0: e_{η_0}(Ξ)·(1−p)(1−φ)(1−p^{−1}φ^{−1})^{−1} = −p^{1−n}.
    """
    p = prec.p
    xi = xi_telescopado_unitario(fil, n, prec)
    anel = xi.anel
    formula = kappa_lattice_image(fil, n, prec)
    det = fil.det_phi_racional()
    base = prec.com(f=1)
    res = {}
    for eta in caracteres(prec, n):
        proj = e_eta(xi, eta)
        chave = (eta.i, eta.w)
        if eta.e_trivial():
            correcao = Fraction(1 - p) * (1 - det) / (1 - 1 / (p * det))
            res[chave] = proj * racional_em(correcao, anel) == racional_em(formula[chave], anel)
        else:
            ponto = e_eta(zeta(base, eta.conductor()).mergulhar(n), eta)
            res[chave] = proj == ponto * racional_em(formula[chave], anel)
    return res


def lambda_component_correction(m: int, prec: Precision) -> Tuple[int, bool]:
    """
    Índice p^{−m} de e_{η_0}Z_p[Γ_1/Γ_{m+1}] relativo ao núcleo de T.

    O núcleo da multiplicação por T em Z_p[T]/(ω_m) é gerado pelo elemento
    norma ω_m(T)/T e e_{η_0} = p^{−m}·norma.

    Returns:
        (−m, True se o gerador do núcleo é unidade × elemento norma)
    """
    p, N, mod = prec.p, prec.N, prec.pN
    grau = p ** m
    omega = [comb(grau, i) % mod for i in range(grau + 1)]
    omega[0] = 0
    # matriz de T· na base 1, T, …, T^{grau−1}
    mult_T = [[0] * grau for _ in range(grau)]
    for j in range(grau):
        vetor = [0] * (grau + 1)
        vetor[j + 1] = 1
        reduzido = reduzir_monico(vetor, omega, mod)
        for i in range(grau):
            mult_T[i][j] = reduzido[i]
    geradores = [v for v, e in nucleo(mult_T, p, N) if e == N]
    if len(geradores) != 1:
        return -m, False
    g = geradores[0]
    norma = [comb(grau, i + 1) % mod for i in range(grau)]
    escala = g[grau - 1]
    proporcional = escala % p != 0 and all((g[i] - escala * norma[i]) % mod == 0 for i in range(grau))
    return -m, proporcional


# ============================================================
# Checagem de unidade (a_i) e índices de determinante
# ============================================================

def _produto_kms(k: int, r: int) -> int:
    """Π_{m=1}^r (k − m)."""
    res = 1
    for m in range(1, r + 1):
        res *= k - m
    return res


def avaliar_torcao(g: LambdaElem, k: int, prec: Precision) -> List[PAdicScalar]:
    """g em T = χ(γ_1)^{−k} − 1, componente a componente δ_i."""
    p, mod = prec.p, prec.pN
    t = (pow(1 + p, -k, mod) - 1) % mod
    valores = []
    for i in range(p - 1):
        acc = 0
        for x in reversed(g.componente(i)):
            acc = (acc * t + x) % mod
        valores.append(PAdicScalar.de_inteiro(p, acc, min(prec.N, g.M)) / p ** g.den)
    return valores


def _coinvariantes(fil: "FilteredPhiModule", k: int, prec: Precision):
    # perrin_riou importa este módulo
    from perrin_riou import omega_coinvariantes
    return omega_coinvariantes(fil, k, prec)


@dataclass
class UnitReport:
    """
    Resultado da checagem a_i ∈ Z_p^× numa torção k.

    fonte diz de onde veio o determinante ("omega" ou "wach"); omega_confere
    compara o valor de Ω com o do gerador de Wach quando os dois existem.
    """
    k: int
    a: List[PAdicScalar]
    valuacoes: List[int]
    alvo_valuacao: int
    passou: bool
    fonte: str = "wach"
    omega_confere: Optional[bool] = None


def c_iw_check(fil: "FilteredPhiModule", k: int, prec: Precision) -> UnitReport:
    """
    a_i = (determinante de Ω nas coinvariantes)/(p^r·Π_{m=1}^r (k−m)) para cada δ_i.

    Para k > r o determinante sai dos cociclos Ω_{T,k−r,1}; para k ≤ 0 do
    gerador de Wach avaliado em χ^{−k}.

    Args:
        fil: Módulo filtrado de posto 1 com salto r ≥ 0
        k: Torção, fora de [1, r]

    Raises:
        RepresentacaoInvalida: posto ≠ 1, salto negativo ou k em [1, r]
        PrecisaoInsuficiente: valor nulo ou valuação ambígua à precisão
    """
    if fil.d != 1:
        raise RepresentacaoInvalida("checagem de unidade implementada em posto 1")
    r = fil.salto_maximo()
    if r < 0:
        raise RepresentacaoInvalida("representação precisa ser positiva")
    if 1 <= k <= r:
        raise RepresentacaoInvalida(f"k={k} está em [1, {r}]")
    p = prec.p
    alvo = p ** r * _produto_kms(k, r)
    alvo_val = valuacao_p(alvo, p)
    coinv = _coinvariantes(fil, k, prec)
    a, vals = [], []
    for valor in coinv.valores:
        if valor.e_zero():
            raise PrecisaoInsuficiente(f"Ω(χ^{-k}) nulo à precisão", necessario=alvo_val + 2)
        ai = valor / alvo
        if ai.relativa <= 0:
            raise PrecisaoInsuficiente("valuação de a_i ambígua", necessario=prec.N + alvo_val)
        a.append(ai)
        vals.append(ai.valuacao)
    passou = all(v == 0 for v in vals) and coinv.confere is not False
    return UnitReport(k, a, vals, alvo_val, passou, coinv.fonte, coinv.confere)


def omega_det_smith(fil: "FilteredPhiModule", k: int, prec: Precision) -> Tuple[int, int]:
    """
    (v_p do determinante de Ω sobre as coinvariantes, v_p do alvo
    (p^r Π(k−m))^{[K_1:Q_p]·f}).

    O determinante é a forma de Smith da diagonal com o índice de Ω por
    componente δ_i, repetido f vezes (O_K ⊗ Z_p).

    Raises:
        RepresentacaoInvalida: k ≤ r (Ω exige k − r ≥ 1)
    """
    r = fil.salto_maximo()
    if k <= r:
        raise RepresentacaoInvalida(f"determinante de Ω exige k > {r}")
    p, N = prec.p, prec.N
    coinv = _coinvariantes(fil, k, prec)
    diag = [p ** coinv.indice] * ((p - 1) * fil.f)
    tam = len(diag)
    matriz = [[diag[i] if i == j else 0 for j in range(tam)] for i in range(tam)]
    obtido = smith(matriz, p, N).determinante_valuacao()
    alvo = (p - 1) * fil.f * valuacao_p(p ** r * _produto_kms(k, r), p)
    return obtido, alvo


def _indice_lado(fil: "FilteredPhiModule", k: int, prec: Precision) -> int:
    coinv = _coinvariantes(fil, k, prec)
    if coinv.indice is not None:
        return (prec.p - 1) * coinv.indice
    return sum(v.valuacao for v in coinv.valores)


def indices_dualidade(fil: "FilteredPhiModule", k: int, h: int, prec: Precision) -> Tuple[int, int, int]:
    """
    Índices do lado V (salto r, torção k), do lado dual V*(h) (salto h − r,
    torção 1 − k + h) e o expoente alvo de (p^h Γ*(k)/Γ*(k−h))^{[K_1:Q_p]·d}.

    Cada lado usa Ω quando a torção passa o salto e o gerador de Wach caso
    contrário; λ entra só como unidade e o lado dual reaproveita o de V.

    Raises:
        RepresentacaoInvalida: h menor que o salto ou k em [1, h]
    """
    r = fil.salto_maximo()
    if h < r:
        raise RepresentacaoInvalida("h precisa ser ≥ salto máximo")
    if 1 <= k <= h:
        raise RepresentacaoInvalida(f"k={k} está em [1, {h}]")
    p = prec.p
    lam = fil.phi[0][0] / Fraction(p) ** r
    dual = type(fil).tate(p, h - r, lam.numerator, fil.f)
    lado_v = fil.f * _indice_lado(fil, k, prec)
    lado_dual = fil.f * _indice_lado(dual, 1 - k + h, prec)
    razao = Fraction(p ** h) * gamma_star(k) / gamma_star(k - h)
    alvo = (p - 1) * fil.f * fil.d * (valuacao_p(razao.numerator, p) - valuacao_p(razao.denominator, p))
    return lado_v, lado_dual, alvo
