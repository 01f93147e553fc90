#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Caracteres de G_n = Gal(K_n/K) ≅ (Z/p^n)^×, somas de Gauss, constantes ε
abelianas e cristalinas, fatores Γ* e o elemento de trivialização β.

Os valores dos caracteres vivem em Z_p[ζ_{p^m}] (CycloScalar com f = 1); o
anel de grupo é representado pelos coeficientes em cada g ∈ G_n.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import TYPE_CHECKING, Dict, Iterator, List, Optional, Union

from config import Precision
from erros import RepresentacaoInvalida
from ring_tower import (
    CycloRing, CycloScalar, anel_ciclotomico, anel_nao_ramificado, teichmuller_int, valuacao_p,
)

if TYPE_CHECKING:
    from wach import FilteredPhiModule


def elementos_Gn(p: int, n: int) -> List[int]:
    """Representantes de (Z/p^n)^× (n = 0: grupo trivial)."""
    if n == 0:
        return [1]
    return [a for a in range(1, p ** n) if a % p]


@lru_cache(maxsize=None)
def _log_selvagem(g: int, p: int, n: int) -> int:
    """ℓ(g) mod p^{n−1} com g = ω(g)·(1+p)^{ℓ(g)} mod p^n (busca exaustiva)."""
    if n <= 1:
        return 0
    mod = p ** n
    u = (g * pow(teichmuller_int(g, p, n), -1, mod)) % mod
    atual = 1
    for s in range(p ** (n - 1)):
        if atual == u:
            return s
        atual = (atual * (1 + p)) % mod
    raise ValueError(f"{g} fora de (Z/{mod})^×")


def racional_em(x: Union[int, Fraction], anel: CycloRing) -> CycloScalar:
    """Racional p-ádico como CycloScalar (potência negativa de p vai para den)."""
    x = Fraction(x)
    p = anel.p
    if x == 0:
        return anel.zero()
    v = valuacao_p(x.numerator, p) - valuacao_p(x.denominator, p)
    unidade = x / Fraction(p) ** v
    mod = anel.anel.pN
    elem = anel.de_inteiro((unidade.numerator * pow(unidade.denominator, -1, mod)) % mod)
    return elem * p ** v if v >= 0 else elem.dividir_por_p(-v)


# ============================================================
# Caracteres de G_n
# ============================================================

@dataclass(frozen=True)
class CharacterOfGn:
    """
    η = ω^i · (caracter selvagem γ_1 ↦ ζ_{p^{n−1}}^w).

    i: expoente mod p−1 da potência de Teichmüller
    w: expoente selvagem mod p^{n−1}
    """
    prec: Precision = field(compare=False)
    n: int
    i: int
    w: int

    def __post_init__(self):
        p = self.prec.p
        object.__setattr__(self, "i", self.i % (p - 1))
        object.__setattr__(self, "w", self.w % p ** (self.n - 1) if self.n >= 1 else 0)
        if self.n == 0 and self.i:
            raise ValueError("G_0 só tem o caracter trivial")

    @property
    def p(self) -> int:
        return self.prec.p

    def e_trivial(self) -> bool:
        return self.i == 0 and self.w == 0

    def conductor(self) -> int:
        """a(η): 0 se trivial, 1 se só a parte mansa é não trivial, senão n − v_p(w)."""
        if self.e_trivial():
            return 0
        if self.w == 0:
            return 1
        return self.n - valuacao_p(self.w, self.p)

    def inverso(self) -> "CharacterOfGn":
        return CharacterOfGn(self.prec, self.n, -self.i, -self.w)

    def __mul__(self, outro: "CharacterOfGn") -> "CharacterOfGn":
        return CharacterOfGn(self.prec, self.n, self.i + outro.i, self.w + outro.w)

    def nivel_valores(self) -> int:
        return max(self.n - 1, 0)

    def valor(self, g: int, anel: Optional[CycloRing] = None) -> CycloScalar:
        """
        η(g) num anel ciclotômico de nível ≥ n−1.

        Args:
            g: Inteiro primo com p (representante em (Z/p^n)^×)
            anel: Anel alvo (padrão: Z_p[ζ_{p^{n−1}}])
        """
        p = self.p
        if anel is None:
            anel = anel_ciclotomico(p, self.prec.N, 1, self.nivel_valores())
        if g % p == 0:
            raise ValueError("g precisa ser unidade")
        mod = anel.anel.pN
        manso = pow(teichmuller_int(g, p, anel.anel.N), self.i, mod)
        if self.w == 0:
            return anel.de_inteiro(manso)
        if anel.n < self.n - 1:
            raise ValueError("anel de valores abaixo do nível do caracter")
        expo = (self.w * _log_selvagem(g % p ** self.n, p, self.n)) % p ** (self.n - 1)
        zeta = (anel.um() + anel.z()) ** (p ** (anel.n - self.n + 1))
        return (zeta ** expo) * manso

    def __repr__(self) -> str:
        return f"η(n={self.n}, i={self.i}, w={self.w})"


def caracteres(prec: Precision, n: int) -> Iterator[CharacterOfGn]:
    """Todos os caracteres de G_n."""
    if n == 0:
        yield CharacterOfGn(prec, 0, 0, 0)
        return
    for i in range(prec.p - 1):
        for w in range(prec.p ** (n - 1)):
            yield CharacterOfGn(prec, n, i, w)


def conductor(eta: CharacterOfGn) -> int:
    return eta.conductor()


def conductor_por_nucleo(eta: CharacterOfGn) -> int:
    """Menor k com η trivial em {g ≡ 1 mod p^k} (k = 0: G_n inteiro)."""
    p, n = eta.p, eta.n
    anel = anel_ciclotomico(p, eta.prec.N, 1, eta.nivel_valores())
    um = anel.um()
    for k in range(n + 1):
        subgrupo = [g for g in elementos_Gn(p, n) if (g - 1) % p ** k == 0]
        if all(eta.valor(g, anel) == um for g in subgrupo):
            return k
    return n


def e_eta(x: CycloScalar, eta: CharacterOfGn) -> CycloScalar:
    """
    Projeção e_η(x) = (1/#G_n) Σ_g η^{−1}(g)·g(x) para x em K_m, m ≤ n.
    """
    p, n = eta.p, eta.n
    if x.nivel > max(n, 0):
        raise ValueError("x acima do nível de G_n")
    x = x.mergulhar(max(x.nivel, eta.nivel_valores()))
    anel = x.anel
    inv = eta.inverso()
    total = anel.zero()
    for g in elementos_Gn(p, n):
        total = total + inv.valor(g, anel) * x.galois(g)
    total = total * pow(p - 1, -1, anel.anel.pN)
    return total.dividir_por_p(n - 1) if n >= 1 else total


# ============================================================
# Somas de Gauss e constantes ε abelianas
# ============================================================

def _anel_gauss(eta: CharacterOfGn, k: int) -> CycloRing:
    return anel_ciclotomico(eta.p, eta.prec.N, 1, max(eta.nivel_valores(), k))


def gauss_sum(eta: CharacterOfGn, torcao: int = 1) -> CycloScalar:
    """
    τ(η) = Σ_{g∈G_k} η^{−1}(g)·ζ_{p^k}^{g}, k = a(η); τ(trivial) = 1.

    Args:
        torcao: a ∈ Z_p^×, troca ζ_{p^k} por ζ_{p^k}^a (dá η(a)·τ(η))
    """
    p = eta.p
    k = eta.conductor()
    anel = _anel_gauss(eta, k)
    if k == 0:
        return anel.um()
    zeta_k = (anel.um() + anel.z()) ** (p ** (anel.n - k))
    potencias = [anel.um()]
    for _ in range(p ** k - 1):
        potencias.append(potencias[-1] * zeta_k)
    inv = eta.inverso()
    total = anel.zero()
    for g in elementos_Gn(p, k):
        total = total + inv.valor(g, anel) * potencias[(torcao * g) % p ** k]
    return total


def epsilon_abelian(eta: CharacterOfGn, f: Optional[int] = None) -> CycloScalar:
    """ε(η, ψ_K, μ_K) = (−1)^{(f−1)a(η)}·τ(η)^f (K não ramificado de grau f)."""
    f = eta.prec.f if f is None else f
    a = eta.conductor()
    valor = gauss_sum(eta) ** f
    return -valor if (f - 1) * a % 2 else valor


def tate_integral_oracle(eta: CharacterOfGn, f: Optional[int] = None) -> CycloScalar:
    """
    Integral de Tate ∫ η^{−1}(x)ψ_K(x)dμ_K como soma finita:
    Σ_{u ∈ (O_K/p^a)^×} η^{−1}(N u)·ζ_{p^a}^{Tr u}; vale 1 para η não ramificado.
    """
    f = eta.prec.f if f is None else f
    p = eta.p
    k = eta.conductor()
    anel = _anel_gauss(eta, k)
    if k == 0:
        return anel.um()
    base = anel_nao_ramificado(p, eta.prec.N, f)
    zeta_k = (anel.um() + anel.z()) ** (p ** (anel.n - k))
    potencias = [anel.um()]
    for _ in range(p ** k - 1):
        potencias.append(potencias[-1] * zeta_k)
    inv = eta.inverso()
    valores: Dict[int, CycloScalar] = {}
    total = anel.zero()
    for coefs in product(range(p ** k), repeat=f):
        u = base.elemento(coefs)
        if not u.e_unidade():
            continue
        norma = u.norma() % p ** k
        if norma not in valores:
            valores[norma] = inv.valor(norma, anel)
        total = total + valores[norma] * potencias[u.traco() % p ** k]
    return total


def lambda_unramified(f: int, n_psi: int, ramificado: bool = False) -> int:
    """
    λ(L/K, ψ) = (−1)^{(f−1)n(ψ)} para L/K não ramificada de grau f.

    Raises:
        RepresentacaoInvalida: extensão ramificada
    """
    if ramificado:
        raise RepresentacaoInvalida("constante λ só para extensões não ramificadas")
    return -1 if (f - 1) * n_psi % 2 else 1


# ============================================================
# Fatores Γ*
# ============================================================

def gamma_star(i: int) -> Fraction:
    """Γ*(i) = (i−1)! para i > 0 e (−1)^i/(−i)! para i ≤ 0."""
    if i > 0:
        return Fraction(factorial(i - 1))
    return Fraction((-1) ** (-i), factorial(-i))


def gamma_star_V(fil: "FilteredPhiModule") -> Fraction:
    """Γ*(V) = Π_j Γ*(−j)^{[K:Q_p]} sobre os saltos j da filtração (com multiplicidade)."""
    total = Fraction(1)
    for j in fil.saltos:
        total *= gamma_star(-j) ** fil.f
    return total


# ============================================================
# Anel de grupo Z_p[ζ][G_n]
# ============================================================

@dataclass(frozen=True, eq=False)
class GroupRingElem:
    """Σ_g c_g·[g] com g ∈ G_n e c_g no anel de valores de nível n."""
    prec: Precision
    n: int
    coefs: Dict[int, CycloScalar]

    @property
    def anel(self) -> CycloRing:
        return anel_do_grupo(self.prec, self.n)

    @classmethod
    def zero(cls, prec: Precision, n: int) -> "GroupRingElem":
        anel = anel_do_grupo(prec, n)
        return cls(prec, n, {g: anel.zero() for g in elementos_Gn(prec.p, n)})

    @classmethod
    def grupo(cls, prec: Precision, n: int, g: int) -> "GroupRingElem":
        """Elemento [g]."""
        base = cls.zero(prec, n)
        chave = g % prec.p ** n if n else 1
        coefs = dict(base.coefs)
        coefs[chave] = base.anel.um()
        return cls(prec, n, coefs)

    @classmethod
    def idempotente(cls, eta: CharacterOfGn) -> "GroupRingElem":
        """e_η = (1/#G_n) Σ η^{−1}(g)·[g]."""
        prec, n, p = eta.prec, eta.n, eta.p
        anel = anel_do_grupo(prec, n)
        inv = eta.inverso()
        escala = pow(p - 1, -1, anel.anel.pN) if n else 1
        coefs = {}
        for g in elementos_Gn(p, n):
            c = inv.valor(g, anel) * escala
            coefs[g] = c.dividir_por_p(n - 1) if n >= 1 else c
        return cls(prec, n, coefs)

    @classmethod
    def de_componentes(cls, prec: Precision, n: int,
                       componentes: Dict[CharacterOfGn, CycloScalar]) -> "GroupRingElem":
        """Σ_η c_η·e_η."""
        total = cls.zero(prec, n)
        for eta, c in componentes.items():
            total = total + cls.idempotente(eta).escalar(c)
        return total

    def __add__(self, outro: "GroupRingElem") -> "GroupRingElem":
        return GroupRingElem(self.prec, self.n, {g: c + outro.coefs[g] for g, c in self.coefs.items()})

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem(self.prec, self.n, {g: -c for g, c in self.coefs.items()})

    def __sub__(self, outro: "GroupRingElem") -> "GroupRingElem":
        return self + (-outro)

    def __mul__(self, outro: "GroupRingElem") -> "GroupRingElem":
        if not isinstance(outro, GroupRingElem):
            return self.escalar(outro)
        mod = self.prec.p ** self.n if self.n else 1
        res = {g: self.anel.zero() for g in self.coefs}
        for g, a in self.coefs.items():
            if a.e_zero():
                continue
            for h, b in outro.coefs.items():
                if not b.e_zero():
                    chave = (g * h) % mod if self.n else 1
                    res[chave] = res[chave] + a * b
        return GroupRingElem(self.prec, self.n, res)

    def escalar(self, c: Union[int, Fraction, CycloScalar]) -> "GroupRingElem":
        if not isinstance(c, CycloScalar):
            c = racional_em(c, self.anel)
        return GroupRingElem(self.prec, self.n, {g: x * c for g, x in self.coefs.items()})

    def involucao(self) -> "GroupRingElem":
        """ι: [g] ↦ [g^{−1}]."""
        mod = self.prec.p ** self.n if self.n else 1
        return GroupRingElem(self.prec, self.n,
                             {(pow(g, -1, mod) if self.n else 1): c for g, c in self.coefs.items()})

    def componente(self, eta: CharacterOfGn) -> CycloScalar:
        """Escalar pelo qual o elemento age em e_η: Σ_g c_g·η(g)."""
        total = self.anel.zero()
        for g, c in self.coefs.items():
            total = total + c * eta.valor(g, self.anel)
        return total

    def e_zero(self) -> bool:
        return all(c.e_zero() for c in self.coefs.values())

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, GroupRingElem):
            return NotImplemented
        return (self - outro).e_zero()

    __hash__ = None


def anel_do_grupo(prec: Precision, n: int) -> CycloRing:
    return anel_ciclotomico(prec.p, prec.N, 1, n)


# ============================================================
# ε cristalino e β
# ============================================================

def epsilon_crystalline(fil: "FilteredPhiModule", n: int, prec: Precision) -> GroupRingElem:
    """
    ε(K_n/K, V) = Σ_η det(φ|D_cris)^{a(η)}·τ(η^{−1})^{fd}·e_η^ι.

    Args:
        fil: Módulo filtrado (det φ racional)
        n: Nível (n = 0 dá o caso L = K)
    """
    anel = anel_do_grupo(prec, n)
    det = fil.det_phi_racional()
    expo = fil.f * fil.d
    total = GroupRingElem.zero(prec, n)
    for eta in caracteres(prec, n):
        a = eta.conductor()
        tau = gauss_sum(eta.inverso()).mergulhar(anel.n) ** expo
        coef = tau * racional_em(det ** a, anel)
        total = total + GroupRingElem.idempotente(eta).involucao().escalar(coef)
    return total


def beta_element(fil: "FilteredPhiModule", n: int, prec: Precision,
                 alpha: Optional[Union[int, Fraction]] = None) -> GroupRingElem:
    """
    β_{V,K_n/K} = c^{fd}·Γ*(V)·q^{−nd}·(Σ_{η≠1} det^{−a(η)} e_η + (−1)^{fd} q^d e_1)·α.

    Args:
        alpha: Unidade α_{V,K}(M, T); obrigatória para representações fora da
            família de torções (fil.alpha_padrao() fornece a das torções)

    Raises:
        RepresentacaoInvalida: α ausente e não calculável
    """
    if alpha is None:
        alpha = fil.alpha_padrao()
    if alpha is None:
        raise RepresentacaoInvalida("β exige α_{V,K}(M, T) para esta representação")
    d, f = fil.d, fil.f
    q = Fraction(prec.p) ** f
    det = fil.det_phi_racional()
    sinal = (-1) ** (f * d)
    escala = gamma_star_V(fil) * q ** (-n * d) * Fraction(alpha)
    total = GroupRingElem.zero(prec, n)
    for eta in caracteres(prec, n):
        if eta.e_trivial():
            c = Fraction(sinal) * q ** d
        else:
            c = det ** (-eta.conductor())
        total = total + GroupRingElem.idempotente(eta).escalar(c * escala)
    conj = GroupRingElem.grupo(prec, n, -1)
    potencia = GroupRingElem.grupo(prec, n, 1)
    for _ in range(f * d):
        potencia = potencia * conj
    return potencia * total


def x_n_componente(eta: CharacterOfGn) -> CycloScalar:
    """e_η(x_n) com x_n = Σ ζ_{p^k}: e_η(ζ_{p^{a(η)}}) para η ≠ 1, (1−p)^{−1} para η = 1."""
    anel = anel_do_grupo(eta.prec, eta.n)
    if eta.e_trivial():
        return racional_em(Fraction(1, 1 - eta.p), anel)
    a = eta.conductor()
    zeta_a = (anel.um() + anel.z()) ** (eta.p ** (anel.n - a))
    return e_eta(zeta_a, eta)
