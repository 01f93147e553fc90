#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Séries de Laurent truncadas sobre O_K com os operadores φ, ψ, ∂, ∂⁻¹,
a ação de Γ, resíduo e avaliação em ζ_{p^n} − 1.

Uma TruncSeries vale p^{−den}·X^{−polo}·Σ_j num_j X^j e é conhecida
mod X^{comprimento − polo} (ou exatamente, se `exata`). φ, ψ e Γ passam
pela base Y = 1 + X, onde agem por monômios.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config import Precision
from erros import NivelExcedido, PoloExcedido, PrecisaoInsuficiente, SerieNaoPsiZero
from ring_tower import (
    INFINITO, CycloScalar, UnramifiedRing, UnramifiedScalar, anel_ciclotomico,
    anel_nao_ramificado, mult_linhas, reduzir_monico, valuacao_p,
)

Linhas = List[List[int]]


def binom_generalizado(n: int, k: int) -> int:
    """C(n, k) para n inteiro qualquer (negativo inclusive) e k ≥ 0."""
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    # C(n, k) = (−1)^k C(k − n − 1, k)
    return (-1) ** k * math.comb(k - n - 1, k)


@lru_cache(maxsize=64)
def _matriz_x_para_y(L: int, mod: int) -> Tuple[Tuple[int, ...], ...]:
    """T[k][j] = C(j, k)(−1)^{j−k}: coeficientes em X → coeficientes em Y."""
    return tuple(
        tuple((math.comb(j, k) * (-1) ** (j - k)) % mod if j >= k else 0 for j in range(L))
        for k in range(L)
    )


def _para_base_y(linhas: Sequence[Sequence[int]], mod: int) -> Linhas:
    """Converte um polinômio em X (linhas por potência de u) para a base de potências de Y."""
    L = len(linhas[0])
    T = _matriz_x_para_y(L, mod)
    res = []
    for linha in linhas:
        if not any(linha):
            res.append([0] * L)
            continue
        res.append([sum(T[k][j] * linha[j] for j in range(k, L)) % mod for k in range(L)])
    return res


def _de_base_y(termos: Dict[int, Sequence[int]], f: int, L: int, mod: int) -> Linhas:
    """Σ_e b_e Y^e (e inteiro qualquer) truncado mod X^L, em linhas."""
    res = [[0] * L for _ in range(f)]
    for e, vetor in termos.items():
        if not any(x % mod for x in vetor):
            continue
        binoms = [binom_generalizado(e, i) % mod for i in range(L)]
        for r in range(f):
            b = vetor[r] % mod
            if b:
                linha = res[r]
                for i in range(L):
                    if binoms[i]:
                        linha[i] += b * binoms[i]
    return [[x % mod for x in linha] for linha in res]


@dataclass(frozen=True, eq=False)
class TruncSeries:
    """
    Série de Laurent truncada sobre O_K.

    anel: O_K; linhas: numerador (f linhas × comprimento); polo: ordem de polo v;
    den: denominador p^den; exata: polinômio conhecido exatamente.
    """
    anel: UnramifiedRing
    linhas: Tuple[Tuple[int, ...], ...]
    polo: int = 0
    den: int = 0
    exata: bool = False

    # ----------------------------------------------------------- precisões

    @property
    def comprimento(self) -> int:
        return len(self.linhas[0])

    @property
    def precisao_p(self) -> int:
        """Dígitos p-ádicos confiáveis (N − den)."""
        return self.anel.N - self.den

    @property
    def precisao_x(self) -> Union[int, float]:
        """Expoente e tal que a série é conhecida mod X^e."""
        if self.exata:
            return INFINITO
        return self.comprimento - self.polo

    def precisao(self) -> Tuple[int, Union[int, float]]:
        """Par (precisão p-ádica, precisão em X)."""
        return self.precisao_p, self.precisao_x

    # ----------------------------------------------------------- acesso

    def coeficiente(self, e: int) -> UnramifiedScalar:
        """Numerador do coeficiente de X^e."""
        j = e + self.polo
        if j < 0 or j >= self.comprimento:
            if not self.exata and j >= self.comprimento:
                raise PrecisaoInsuficiente(f"coeficiente de X^{e} além da precisão", necessario=j + 1)
            return self.anel.zero()
        return UnramifiedScalar(self.anel, tuple(linha[j] for linha in self.linhas))

    def coeficientes(self) -> List[UnramifiedScalar]:
        return [self.coeficiente(e) for e in range(-self.polo, self.comprimento - self.polo)]

    def e_zero(self) -> bool:
        mod = self.anel.p ** max(self.precisao_p, 0)
        return all(x % mod == 0 for linha in self.linhas for x in linha)

    def valuacao_x(self) -> Union[int, float]:
        """Menor expoente com coeficiente não nulo (à precisão p-ádica efetiva)."""
        mod = self.anel.p ** max(self.precisao_p, 0)
        for j in range(self.comprimento):
            if any(linha[j] % mod for linha in self.linhas):
                return j - self.polo
        return INFINITO

    def normalizar(self) -> "TruncSeries":
        """Remove termos nulos do polo (polo cancelado vira série de potências)."""
        if self.polo == 0:
            return self
        v = self.valuacao_x()
        if v == INFINITO:
            if self.exata:
                return TruncSeries(self.anel, tuple((0,) for _ in self.linhas), 0, 0, True)
            return self
        corte = self.polo if v >= 0 else self.polo + v
        if corte == 0:
            return self
        linhas = tuple(tuple(linha[corte:]) for linha in self.linhas)
        return TruncSeries(self.anel, linhas, self.polo - corte, self.den, self.exata)

    # ----------------------------------------------------------- aritmética

    def _coagir(self, outro) -> "TruncSeries":
        if isinstance(outro, TruncSeries):
            if outro.anel is not self.anel:
                raise ValueError("anéis de coeficientes diferentes")
            return outro
        if isinstance(outro, UnramifiedScalar):
            return TruncSeries(self.anel, tuple((c,) for c in outro.coefs), 0, 0, True)
        return TruncSeries(self.anel, tuple(((int(outro) if r == 0 else 0) % self.anel.pN,)
                                            for r in range(self.anel.f)), 0, 0, True)

    def _alinhado(self, polo: int, den: int, comprimento: int) -> Linhas:
        """Numerador reescrito com outro polo/den/comprimento (pad com zeros)."""
        p, mod = self.anel.p, self.anel.pN
        desloc = polo - self.polo
        escala = p ** (den - self.den)
        res = []
        for linha in self.linhas:
            nova = [0] * desloc + [(x * escala) % mod for x in linha]
            nova = nova[:comprimento] + [0] * max(0, comprimento - len(nova))
            res.append(nova)
        return res

    def __add__(self, outro) -> "TruncSeries":
        if not isinstance(outro, (TruncSeries, UnramifiedScalar, int)):
            return NotImplemented
        outro = self._coagir(outro)
        polo = max(self.polo, outro.polo)
        den = max(self.den, outro.den)
        exata = self.exata and outro.exata
        if exata:
            comprimento = max(self.comprimento - self.polo, outro.comprimento - outro.polo) + polo
        else:
            comprimento = min(self.precisao_x, outro.precisao_x) + polo
        a = self._alinhado(polo, den, comprimento)
        b = outro._alinhado(polo, den, comprimento)
        mod = self.anel.pN
        linhas = tuple(tuple((x + y) % mod for x, y in zip(la, lb)) for la, lb in zip(a, b))
        return TruncSeries(self.anel, linhas, polo, den, exata)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        mod = self.anel.pN
        return TruncSeries(self.anel, tuple(tuple((-x) % mod for x in linha) for linha in self.linhas),
                           self.polo, self.den, self.exata)

    def __sub__(self, outro) -> "TruncSeries":
        if not isinstance(outro, (TruncSeries, UnramifiedScalar, int)):
            return NotImplemented
        return self + (-self._coagir(outro))

    def __rsub__(self, outro) -> "TruncSeries":
        return self._coagir(outro) - self

    def escalar(self, c: Union[int, UnramifiedScalar]) -> "TruncSeries":
        """Multiplicação por constante de O_K."""
        return self * self._coagir(c)

    def __mul__(self, outro) -> "TruncSeries":
        if not isinstance(outro, (TruncSeries, UnramifiedScalar, int)):
            return NotImplemented
        outro = self._coagir(outro)
        polo = self.polo + outro.polo
        exata = self.exata and outro.exata
        if exata:
            comprimento = self.comprimento + outro.comprimento - 1
        else:
            # a mod X^A, b mod X^B ⇒ ab mod X^{min(A − v_b, B − v_a)}
            conhecido = min(self.precisao_x - outro.polo, outro.precisao_x - self.polo)
            comprimento = max(conhecido + polo, 1)
        prod = mult_linhas(self.linhas, outro.linhas, self.anel)
        linhas = tuple(tuple(linha[:comprimento] + [0] * max(0, comprimento - len(linha))) for linha in prod)
        return TruncSeries(self.anel, linhas, polo, self.den + outro.den, exata).normalizar()

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.inverso() ** (-k)
        res = self._coagir(1)
        base = self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, (TruncSeries, UnramifiedScalar, int)):
            return NotImplemented
        return (self - outro).e_zero()

    __hash__ = None

    def truncar(self, e: int) -> "TruncSeries":
        """Esquece os termos a partir de X^e."""
        comprimento = max(min(self.comprimento, e + self.polo), 1)
        linhas = tuple(tuple(linha[:comprimento]) for linha in self.linhas)
        exata = self.exata and e + self.polo >= self.comprimento
        return TruncSeries(self.anel, linhas, self.polo, self.den, exata)

    def dividir_por_p(self, k: int = 1) -> "TruncSeries":
        """Multiplica por p^{−k}."""
        return TruncSeries(self.anel, self.linhas, self.polo, self.den + k, self.exata)

    def vezes_x(self, k: int) -> "TruncSeries":
        """Multiplica por X^k (k pode ser negativo: aumenta o polo)."""
        if k >= 0:
            linhas = tuple(tuple([0] * k + list(linha)) for linha in self.linhas)
            return TruncSeries(self.anel, linhas, self.polo, self.den, self.exata).normalizar()
        return TruncSeries(self.anel, self.linhas, self.polo - k, self.den, self.exata)

    def inverso(self, comprimento: Optional[int] = None) -> "TruncSeries":
        """
        Inversa de uma série X^v·(unidade); o polo troca de lado.

        Args:
            comprimento: Termos calculados da parte unitária (padrão: os disponíveis)
        """
        s = self.normalizar()
        v = s.valuacao_x()
        if v == INFINITO:
            raise ZeroDivisionError("série nula")
        desloc = v + s.polo
        linhas = [list(linha[desloc:]) for linha in s.linhas]
        L = comprimento or len(linhas[0])
        if not s.exata and L > len(linhas[0]):
            raise PrecisaoInsuficiente("inversa além da precisão da série", necessario=L + desloc)
        linhas = [(linha + [0] * L)[:L] for linha in linhas]
        a = [UnramifiedScalar(s.anel, tuple(linha[j] for linha in linhas)) for j in range(L)]
        a0_inv = a[0].inverso()
        b = [a0_inv]
        for k in range(1, L):
            acc = s.anel.zero()
            for i in range(1, k + 1):
                if not a[i].e_zero():
                    acc = acc + a[i] * b[k - i]
            b.append(-(acc * a0_inv))
        res = TruncSeries(s.anel, tuple(tuple(c.coefs[r] for c in b) for r in range(s.anel.f)), 0, 0, False)
        if s.den:
            res = res * s.anel.de_inteiro(s.anel.p ** s.den)
        return res.vezes_x(-v)

    def frobenius_coefs(self, vezes: int = 1) -> "TruncSeries":
        """σ^vezes nos coeficientes."""
        linhas = _frob_linhas(self.linhas, self.anel, vezes)
        return TruncSeries(self.anel, linhas, self.polo, self.den, self.exata)

    def __repr__(self) -> str:
        termos = []
        for e in range(-self.polo, min(self.comprimento - self.polo, 6)):
            c = self.coeficiente(e)
            if not c.e_zero():
                termos.append(f"({c})X^{e}")
        cauda = "" if self.exata else f" + O(X^{self.precisao_x})"
        escala = f"p^-{self.den}·" if self.den else ""
        return escala + (" + ".join(termos) or "0") + cauda


def _frob_linhas(linhas, anel: UnramifiedRing, vezes: int) -> Tuple[Tuple[int, ...], ...]:
    if anel.f == 1 or vezes % anel.f == 0:
        return tuple(tuple(l) for l in linhas)
    L = len(linhas[0])
    colunas = [anel.aplicar_frobenius(tuple(linha[j] for linha in linhas), vezes) for j in range(L)]
    return tuple(tuple(colunas[j][r] for j in range(L)) for r in range(anel.f))


# ============================================================
# Construtores
# ============================================================

class AnelSeries:
    """Fábrica de séries para uma Precision fixa."""

    def __init__(self, prec: Precision):
        self.prec = prec
        self.anel = anel_nao_ramificado(prec.p, prec.N, prec.f)
        self.M = prec.M

    def de_coefs(self, coefs: Sequence[Union[int, UnramifiedScalar]], polo: int = 0,
                 exata: bool = False, den: int = 0) -> TruncSeries:
        """Série a partir da lista de coeficientes de X^{−polo}, X^{−polo+1}, ..."""
        f, mod = self.anel.f, self.anel.pN
        linhas = [[0] * max(len(coefs), 1) for _ in range(f)]
        for j, c in enumerate(coefs):
            if isinstance(c, UnramifiedScalar):
                for r in range(f):
                    linhas[r][j] = c.coefs[r]
            else:
                linhas[0][j] = int(c) % mod
        return TruncSeries(self.anel, tuple(tuple(l) for l in linhas), polo, den, exata)

    def zero(self) -> TruncSeries:
        return self.de_coefs([0], exata=True)

    def um(self) -> TruncSeries:
        return self.de_coefs([1], exata=True)

    def X(self) -> TruncSeries:
        return self.de_coefs([0, 1], exata=True)

    def Y(self, a: int = 1) -> TruncSeries:
        """(1+X)^a; exato para a ≥ 0, truncado em M para a < 0."""
        if a >= 0:
            return self.de_coefs([binom_generalizado(a, i) for i in range(a + 1)], exata=True)
        return self.de_coefs([binom_generalizado(a, i) for i in range(self.M)])

    def q(self) -> TruncSeries:
        """q = φ(X)/X = Σ_{k=1}^p C(p,k) X^{k−1}."""
        p = self.prec.p
        return self.de_coefs([math.comb(p, k) for k in range(1, p + 1)], exata=True)

    def t(self) -> TruncSeries:
        """t = log(1+X) truncado em M, com denominador p^den."""
        return serie_t(self.anel, self.M)

    def monomio(self, e: int, c: Union[int, UnramifiedScalar] = 1) -> TruncSeries:
        """c·X^e (e pode ser negativo)."""
        if e >= 0:
            return self.de_coefs([0] * e + [c], exata=True)
        return self.de_coefs([c], polo=-e, exata=True)

    def aleatoria(self, rng, grau: Optional[int] = None, exata: bool = True) -> TruncSeries:
        """Polinômio aleatório de grau < grau (padrão: M)."""
        grau = grau or self.M
        coefs = [self.anel.elemento([rng.randrange(self.anel.pN) for _ in range(self.anel.f)])
                 for _ in range(grau)]
        return self.de_coefs(coefs, exata=exata)


# ============================================================
# Operadores
# ============================================================

def _exigir_sem_polo(f: TruncSeries, nome: str) -> TruncSeries:
    f = f.normalizar()
    if f.polo > 0:
        raise PoloExcedido(f"{nome} não aceita série com polo de ordem {f.polo}")
    return f


def _comprimento_imagem(f: TruncSeries, grau_exato: int, prec: Optional[Precision]) -> Tuple[int, bool]:
    """Comprimento de saída para uma substituição monomial (φ, Γ)."""
    limite = f.comprimento * max(f.anel.p, 4)
    if prec is not None:
        limite = max(limite, prec.M * f.anel.p)
    if f.exata and grau_exato + 1 <= limite:
        return grau_exato + 1, True
    return f.comprimento, False


def phi(f: TruncSeries, prec: Optional[Precision] = None) -> TruncSeries:
    """
    φ(f) = f^σ((1+X)^p − 1).

    Args:
        f: Série sem polo
        prec: Precision (opcional) para limitar o crescimento de polinômios exatos

    Returns:
        TruncSeries: φ(f), conhecida mod X^L quando f é mod X^L
    """
    f = _exigir_sem_polo(f, "φ")
    p, mod, L = f.anel.p, f.anel.pN, f.comprimento
    b = _para_base_y(_frob_linhas(f.linhas, f.anel, 1), mod)
    Lout, exata = _comprimento_imagem(f, p * (L - 1), prec)
    termos = {p * k: [b[r][k] for r in range(f.anel.f)] for k in range(L)}
    linhas = _de_base_y(termos, f.anel.f, Lout, mod)
    return TruncSeries(f.anel, tuple(tuple(l) for l in linhas), 0, f.den, exata)


def gamma_act(a: int, f: TruncSeries, prec: Optional[Precision] = None) -> TruncSeries:
    """
    Ação de a ∈ Z_p^× (inteiro representante): X ↦ (1+X)^a − 1.

    Os coeficientes binomiais são inteiros exatos; nada passa por exp/log.
    """
    if a % f.anel.p == 0:
        raise ValueError("a precisa ser unidade")
    f = f.normalizar()
    mod, L = f.anel.pN, f.comprimento
    if f.polo > 0:
        # γ(X^{−v} g) = X^{−v} (γ(X)/X)^{−v} γ(g)
        if f.exata:
            # polinômio exato: estende o numerador para cobrir a parte polar
            L = L + f.polo
        linhas = tuple(tuple(linha) + (0,) * (L - len(linha)) for linha in f.linhas)
        g = TruncSeries(f.anel, linhas, 0, f.den, False)
        anel_s = _AnelLocal(f.anel)
        quociente = anel_s.de_coefs([binom_generalizado(a, i + 1) for i in range(L)])
        fator = quociente.inverso() ** f.polo
        return (fator * gamma_act(a, g, prec)).vezes_x(-f.polo)
    b = _para_base_y(f.linhas, mod)
    grau = a * (L - 1) if a > 0 else -1
    if a > 0:
        Lout, exata = _comprimento_imagem(f, grau, prec)
    else:
        Lout, exata = L, False
    termos = {a * k: [b[r][k] for r in range(f.anel.f)] for k in range(L)}
    linhas = _de_base_y(termos, f.anel.f, Lout, mod)
    return TruncSeries(f.anel, tuple(tuple(l) for l in linhas), 0, f.den, exata)


def psi(f: TruncSeries) -> TruncSeries:
    """
    ψ pela regra monomial: Y^{pj} ↦ σ^{−1}(c)Y^j, Y^k ↦ 0 se p ∤ k.

    Para f conhecida mod X^L a saída vale mod X^{⌊L/p⌋ − (N − den) + 1};
    polinômios exatos continuam exatos.
    """
    f = _exigir_sem_polo(f, "ψ")
    p, mod, L = f.anel.p, f.anel.pN, f.comprimento
    if not f.exata and L < p:
        raise PrecisaoInsuficiente("ψ exige truncamento M ≥ p", necessario=p)
    b = _para_base_y(f.linhas, mod)
    termos = {k // p: [b[r][k] for r in range(f.anel.f)] for k in range(0, L, p)}
    if f.exata:
        Lout, exata = (L - 1) // p + 1, True
    else:
        Lout, exata = L // p - f.precisao_p + 1, False
        if Lout < 1:
            raise PrecisaoInsuficiente("ψ sem termos confiáveis", necessario=p * f.precisao_p)
    linhas = _de_base_y(termos, f.anel.f, Lout, mod)
    linhas = _frob_linhas(linhas, f.anel, -1)
    return TruncSeries(f.anel, tuple(tuple(l) for l in linhas), 0, f.den, exata)


def partial(f: TruncSeries) -> TruncSeries:
    """∂ = (1+X) d/dX."""
    mod, L, v = f.anel.pN, f.comprimento, f.polo
    novo_polo = v + 1 if v > 0 else 0
    # índice j ↔ expoente j − v; saída indexada a partir de −novo_polo
    saida = [[0] * (L + 1) for _ in range(f.anel.f)]
    for r, linha in enumerate(f.linhas):
        for j, c in enumerate(linha):
            e = j - v
            if c == 0 or e == 0:
                continue
            ec = e * c
            saida[r][e - 1 + novo_polo] += ec
            saida[r][e + novo_polo] += ec
    comprimento = L + 1 if f.exata else L - v + novo_polo - 1
    comprimento = max(comprimento, 1)
    linhas = tuple(tuple(x % mod for x in linha[:comprimento]) for linha in saida)
    return TruncSeries(f.anel, linhas, novo_polo, f.den, f.exata).normalizar()


def residue(f: TruncSeries) -> UnramifiedScalar:
    """Coeficiente de X^{−1} (numerador; exige den = 0)."""
    if f.den:
        raise PrecisaoInsuficiente("resíduo de série com denominador: use residue_scaled")
    return f.coeficiente(-1)


def residue_scaled(f: TruncSeries) -> Tuple[UnramifiedScalar, int]:
    """Par (numerador do resíduo, den)."""
    return f.coeficiente(-1), f.den


def residue_dlog(f: TruncSeries) -> UnramifiedScalar:
    """res(f · dX/(1+X))."""
    serie = _AnelLocal(f.anel)
    comprimento = max(f.polo + 1, 1)
    geom = serie.de_coefs([(-1) ** k for k in range(comprimento)])
    return residue(f * geom)


class _AnelLocal(AnelSeries):
    """AnelSeries mínima a partir de um UnramifiedRing (sem Precision)."""

    def __init__(self, anel: UnramifiedRing):
        self.prec = None
        self.anel = anel
        self.M = 0


def eval_at_level(f: TruncSeries, n: int, prec: Optional[Precision] = None) -> CycloScalar:
    """
    Substitui X ↦ ζ_{p^n} − 1.

    A cauda desconhecida do numerador tem valuação ≥ L/[K_n:K]; exige-se L ≥ N·[K_n:K]
    para séries truncadas.
    """
    if prec is not None and n > prec.n_max:
        raise NivelExcedido(f"nível {n} > n_max={prec.n_max}")
    f = _exigir_sem_polo(f, "eval_at_level")
    anel_k = f.anel
    alvo = anel_ciclotomico(anel_k.p, anel_k.N, anel_k.f, n)
    if not f.exata:
        necessario = anel_k.N * alvo.grau
        if f.comprimento < necessario and n > 0:
            raise PrecisaoInsuficiente(f"eval no nível {n} exige M ≥ {necessario}", necessario=necessario)
    linhas = [reduzir_monico(list(linha) + [0], alvo.modulo, anel_k.pN) for linha in f.linhas]
    return alvo.elemento(linhas, f.den)


# ============================================================
# Séries com ψ = 0 como medidas em Z_p^×
# ============================================================

@dataclass(frozen=True, eq=False)
class PsiZeroSeries:
    """
    Série Σ_a c_a (1+X)^a com p ∤ a (ψ = 0 por construção).

    medida: dicionário expoente → coeficientes em O_K (tupla de f inteiros).
    """
    anel: UnramifiedRing
    medida: Tuple[Tuple[int, Tuple[int, ...]], ...]
    certificado: bool = True

    @classmethod
    def de_dict(cls, anel: UnramifiedRing, medida: Dict[int, Union[int, UnramifiedScalar]]) -> "PsiZeroSeries":
        mod = anel.pN
        itens = {}
        for a, c in medida.items():
            if a % anel.p == 0:
                raise SerieNaoPsiZero(f"expoente {a} divisível por p")
            vetor = c.coefs if isinstance(c, UnramifiedScalar) else anel.de_inteiro(int(c)).coefs
            anterior = itens.get(a, (0,) * anel.f)
            soma = tuple((x + y) % mod for x, y in zip(anterior, vetor))
            if any(soma):
                itens[a] = soma
            else:
                itens.pop(a, None)
        return cls(anel, tuple(sorted(itens.items())))

    def como_dict(self) -> Dict[int, UnramifiedScalar]:
        return {a: UnramifiedScalar(self.anel, c) for a, c in self.medida}

    def e_zero(self) -> bool:
        return not self.medida

    def __add__(self, outro: "PsiZeroSeries") -> "PsiZeroSeries":
        d = self.como_dict()
        for a, c in outro.como_dict().items():
            d[a] = d[a] + c if a in d else c
        return PsiZeroSeries.de_dict(self.anel, d)

    def __neg__(self) -> "PsiZeroSeries":
        return PsiZeroSeries.de_dict(self.anel, {a: -c for a, c in self.como_dict().items()})

    def __sub__(self, outro: "PsiZeroSeries") -> "PsiZeroSeries":
        return self + (-outro)

    def escalar(self, c: Union[int, UnramifiedScalar]) -> "PsiZeroSeries":
        return PsiZeroSeries.de_dict(self.anel, {a: v * c for a, v in self.como_dict().items()})

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, PsiZeroSeries):
            return NotImplemented
        return (self - outro).e_zero()

    __hash__ = None

    def gamma(self, b: int) -> "PsiZeroSeries":
        """Ação de b ∈ Z_p^×: (1+X)^a ↦ (1+X)^{ab}."""
        return PsiZeroSeries.de_dict(self.anel, {a * b: c for a, c in self.como_dict().items()})

    def frobenius_coefs(self, vezes: int = 1) -> "PsiZeroSeries":
        return PsiZeroSeries.de_dict(self.anel, {a: c.frobenius(vezes) for a, c in self.como_dict().items()})

    def partial(self, j: int = 1) -> "PsiZeroSeries":
        """∂^j (j negativo: ∂^{−|j|}, exato pois p ∤ a)."""
        mod = self.anel.pN
        return PsiZeroSeries.de_dict(self.anel, {a: c * pow(a, j, mod) for a, c in self.como_dict().items()})

    def valor_em_zero(self) -> UnramifiedScalar:
        """f(0) = Σ c_a."""
        total = self.anel.zero()
        for c in self.como_dict().values():
            total = total + c
        return total

    def para_serie(self, L: int) -> TruncSeries:
        """A série Σ c_a (1+X)^a mod X^L (exata se todos os a ≥ 0 e grau < L)."""
        termos = {a: c for a, c in self.medida}
        linhas = _de_base_y(termos, self.anel.f, L, self.anel.pN)
        exata = all(a >= 0 for a, _ in self.medida) and max((a for a, _ in self.medida), default=0) < L
        return TruncSeries(self.anel, tuple(tuple(l) for l in linhas), 0, 0, exata)

    def projetar(self, m: int) -> Dict[int, UnramifiedScalar]:
        """Elemento do anel de grupo O_K[(Z/p^m)^×] (soma dos c_a por classe de a)."""
        mod_g = self.anel.p ** m
        res: Dict[int, UnramifiedScalar] = {}
        for a, c in self.como_dict().items():
            chave = a % mod_g
            res[chave] = res[chave] + c if chave in res else c
        return res

    @classmethod
    def de_serie(cls, f: TruncSeries) -> "PsiZeroSeries":
        """
        Resolve f = λ·(1+X) com λ no anel de grupo (f polinomial exata, ψ(f) = 0).

        Raises:
            SerieNaoPsiZero: se algum coeficiente em Y^{pj} não se anula
        """
        f = _exigir_sem_polo(f, "de_serie")
        if not f.exata:
            raise PrecisaoInsuficiente("de_serie exige polinômio exato")
        if f.den:
            raise SerieNaoPsiZero("série com denominador")
        b = _para_base_y(f.linhas, f.anel.pN)
        medida = {}
        for k in range(f.comprimento):
            vetor = tuple(b[r][k] for r in range(f.anel.f))
            if not any(vetor):
                continue
            if k % f.anel.p == 0:
                raise SerieNaoPsiZero(f"coeficiente não nulo em (1+X)^{k}")
            medida[k] = UnramifiedScalar(f.anel, vetor)
        return cls.de_dict(f.anel, medida)


def partial_inv(g: Union[PsiZeroSeries, TruncSeries]) -> PsiZeroSeries:
    """∂⁻¹ numa série com ψ = 0 (a constante fica fixada por ψ = 0)."""
    if isinstance(g, TruncSeries):
        g = PsiZeroSeries.de_serie(g)
    if not g.certificado:
        raise SerieNaoPsiZero("entrada sem certificado ψ = 0")
    return g.partial(-1)


# ============================================================
# Séries com polo em t
# ============================================================

@dataclass(frozen=True, eq=False)
class TPoloSerie:
    """t^{−expoente_t}·serie: polos em t ficam simbólicos até cancelarem."""
    serie: TruncSeries
    expoente_t: int = 0

    def __add__(self, outro: "TPoloSerie") -> "TPoloSerie":
        e = max(self.expoente_t, outro.expoente_t)
        return TPoloSerie(self._elevar(e) + outro._elevar(e), e)

    def _elevar(self, e: int) -> TruncSeries:
        """Numerador relativo a t^{−e} (multiplica por t^{e − expoente})."""
        extra = e - self.expoente_t
        if extra == 0:
            return self.serie
        t = serie_t(self.serie.anel, max(self.serie.comprimento, 2))
        return self.serie * t ** extra

    def vezes_t(self, k: int) -> "TPoloSerie":
        """Multiplica por t^k, cancelando polo simbolicamente primeiro."""
        cancela = min(k, self.expoente_t)
        resto = k - cancela
        serie = self.serie
        if resto > 0:
            serie = serie * serie_t(serie.anel, max(serie.comprimento, 2)) ** resto
        return TPoloSerie(serie, self.expoente_t - cancela)

    def cancelar(self) -> TruncSeries:
        """A série, exigindo que não reste polo em t."""
        if self.expoente_t:
            raise PoloExcedido(f"resta polo t^{-self.expoente_t}")
        return self.serie


def serie_t(anel: UnramifiedRing, L: int) -> TruncSeries:
    """t = log(1+X) mod X^L, com den = maior v_p(k), k < L."""
    p, mod = anel.p, anel.pN
    L = max(L, 2)
    den = max(valuacao_p(k, p) for k in range(1, L))
    coefs = [0]
    for k in range(1, L):
        vk = valuacao_p(k, p)
        c = p ** (den - vk) * pow(k // p ** vk, -1, mod)
        coefs.append(c if k % 2 else -c)
    return _AnelLocal(anel).de_coefs(coefs, den=den)
