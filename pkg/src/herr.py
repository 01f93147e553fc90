#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Complexos de Herr C_{φ,γ_n}(K_n, T), sua cohomologia, a aplicação traço TR_n,
produtos cup e classes de cohomologia de Iwasawa cl(x_n, α).

As classes explícitas trabalham na base ε' dos módulos de posto 1
(φ(ε') = λ·ε', γ(ε') = χ(γ)^w·ε'); a cohomologia junta o Smith de d0 por bloco
(invariantes e torção) com o posto livre da descida de H¹_Iw.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import zip_longest
from typing import Dict, List, Optional, Tuple

from config import Precision
from epsilon import GroupRingElem, anel_do_grupo, elementos_Gn
from erros import PrecisaoInsuficiente, RepresentacaoInvalida
from lambda_descent import _inversa_serie, log_chi_gamma_n, omega_polinomio, weierstrass
from ring_tower import CycloScalar, PAdicScalar, convolucao_mod, valuacao_p
from series_phigamma import AnelSeries, TruncSeries, binom_generalizado, gamma_act, phi, psi
from wach import FilteredPhiModule, WachModule, mat_mul_series, tate_twist_wach
from zp_linalg import mat_mul, nucleo, resolver, smith, valuacao_mod

logger = logging.getLogger(__name__)


def chi_gamma_n(n: int, p: int) -> int:
    """χ(γ_n) = (1+p)^{p^{n−1}} como inteiro."""
    if n < 1:
        raise ValueError("γ_n definido para n ≥ 1")
    return (1 + p) ** (p ** (n - 1))


# ============================================================
# Complexo truncado em N(T) ⊗ A^+/X^L
# ============================================================

@dataclass
class HerrComplex:
    """
    Complexo 0 → D → D ⊕ D → D → 0 truncado mod X^L, como matrizes sobre Z/p^N.

    d0(x) = ((φ−1)x, (γ_n−1)x); d1(y, z) = (γ_n−1)y − (φ−1)z.
    Coordenadas: (componente i, expoente j, coordenada de O_K r).
    """
    prec: Precision
    n: int
    k: int
    L: int
    d: int
    d0: List[List[int]]
    d1: List[List[int]]

    @property
    def dimensao(self) -> int:
        return self.d * self.L * self.prec.f

    def composicao_nula(self) -> bool:
        """d1∘d0 ≡ 0 mod p^N."""
        produto = mat_mul(self.d1, self.d0, self.prec.pN)
        return all(x == 0 for linha in produto for x in linha)

    def h0_livre(self) -> List[List[int]]:
        """Geradores livres de ker d0 (invariantes sob φ e γ_n)."""
        N = self.prec.N
        return [v for v, e in nucleo(self.d0, self.prec.p, N, colunas=self.dimensao) if e == N]


def matriz_gamma_n(W: WachModule, n: int, L: int) -> List[List[TruncSeries]]:
    """Matriz de γ_n = γ_1^{p^{n−1}} em N(T), mod X^L: G_m = G·γ(G_{m−1})."""
    prec = W.prec
    G = [[x.truncar(L) for x in linha] for linha in W.G_gamma]
    atual = G
    for _ in range(prec.p ** (n - 1) - 1):
        girado = [[gamma_act(W.a_gamma, x, prec).truncar(L) for x in linha] for linha in atual]
        atual = [[x.truncar(L) for x in linha] for linha in mat_mul_series(G, girado)]
    return atual


def _base(S: AnelSeries, j: int, r: int) -> TruncSeries:
    unidade = S.anel.elemento(tuple(int(s == r) for s in range(S.anel.f)))
    return S.monomio(j, unidade)


def _coordenadas(xs: List[TruncSeries], L: int, f: int) -> List[int]:
    vetor = []
    for x in xs:
        for j in range(L):
            c = x.coeficiente(j)
            vetor.extend(c.coefs[r] for r in range(f))
    return vetor


def herr_complex(W: WachModule, n: int, k: int = 0, L: int = 6) -> HerrComplex:
    """
    Monta C_{φ,γ_n} em N(T) ⊗ A^+/X^L, torcido por ε^{⊗k}.

    Args:
        W: Módulo de Wach
        n: Nível (n ≥ 1)
        k: Torção de Tate
        L: Truncamento em X

    Returns:
        HerrComplex: As duas matrizes de bordo
    """
    prec = W.prec
    S = W.series
    p, mod, f, d = prec.p, prec.pN, prec.f, W.d
    if n < 1:
        raise ValueError("complexo de Herr definido para n ≥ 1")
    G = matriz_gamma_n(W, n, L)
    fator = pow(chi_gamma_n(n, p), k, mod)
    P = [[x.truncar(L) for x in linha] for linha in W.P]

    def aplicar(matriz, xs, operador):
        imagens = [operador(x) for x in xs]
        saida = []
        for linha in matriz:
            acc = S.zero()
            for m_ki, y in zip(linha, imagens):
                acc = acc + m_ki * y
            saida.append(acc.truncar(L))
        return saida

    def op_phi(x):
        return phi(x, prec).truncar(L)

    def op_gamma(x):
        return gamma_act(chi_gamma_n(n, p), x, prec).truncar(L) * fator

    colunas_phi, colunas_gamma = [], []
    for i in range(d):
        for j in range(L):
            for r in range(f):
                xs = [_base(S, j, r) if s == i else S.zero() for s in range(d)]
                fx = aplicar(P, xs, op_phi)
                gx = aplicar(G, xs, op_gamma)
                colunas_phi.append([(a - b) % mod for a, b in zip(_coordenadas(fx, L, f), _coordenadas(xs, L, f))])
                colunas_gamma.append([(a - b) % mod for a, b in zip(_coordenadas(gx, L, f), _coordenadas(xs, L, f))])

    D = d * L * f
    phi_menos_1 = [[colunas_phi[c][l] for c in range(D)] for l in range(D)]
    gamma_menos_1 = [[colunas_gamma[c][l] for c in range(D)] for l in range(D)]
    d0 = phi_menos_1 + gamma_menos_1
    d1 = [gamma_menos_1[l] + [(-x) % mod for x in phi_menos_1[l]] for l in range(D)]
    logger.debug("complexo de Herr: n=%d k=%d L=%d dimensão=%d", n, k, L, D)
    return HerrComplex(prec, n, k, L, d, d0, d1)


# ============================================================
# Cohomologia: Smith do complexo e descida
# ============================================================

@dataclass
class CohomologySummary:
    """
    Postos livres e divisores elementares de torção de H⁰, H¹, H².

    modelo_confere: as invariantes lidas de d0 batem com a fórmula fechada;
    estavel: o Smith de d0 não muda ao aumentar o truncamento L.
    """
    n: int
    d: int
    grau: int
    postos: Dict[int, int] = field(default_factory=dict)
    torcao: Dict[int, List[int]] = field(default_factory=dict)
    modelo_confere: bool = True
    estavel: bool = True

    def euler(self) -> int:
        return self.postos[0] - self.postos[1] + self.postos[2]

    def euler_esperado(self) -> int:
        """−[K_n:Q_p]·d."""
        return -self.grau * self.d

    def euler_confere(self) -> bool:
        return self.euler() == self.euler_esperado()

    def como_tupla(self) -> Tuple[int, int, int]:
        return self.postos[0], self.postos[1], self.postos[2]


def blocos_filtrado(fil: FilteredPhiModule) -> List[Tuple[int, Fraction]]:
    """
    Blocos (j, λ) de um D_cris diagonal: V = Q_p(j) ⊗ ur(λ), φ = λ·p^{−j}.

    Raises:
        RepresentacaoInvalida: φ não diagonal ou λ não unidade
    """
    diag = fil.diagonal()
    if diag is None:
        raise RepresentacaoInvalida("cohomologia por descida exige φ diagonal")
    blocos = []
    for valor, salto in zip(diag, fil.saltos):
        lam = valor / Fraction(fil.p) ** salto
        if valuacao_p(lam.numerator, fil.p) or valuacao_p(lam.denominator, fil.p):
            raise RepresentacaoInvalida(f"autovalor {valor} incompatível com o salto {salto}")
        blocos.append((-salto, lam))
    return blocos


def _grau_coinvariantes(n: int, prec: Precision) -> int:
    """Posto de Λ/ω_{n−1}: soma dos graus de Weierstrass por componente."""
    omega = omega_polinomio(n - 1, prec)
    total = 0
    for i in range(prec.p - 1):
        w = weierstrass(omega.componente(i), prec.p, 1)
        if w.mu:
            raise PrecisaoInsuficiente("ω_{n−1} com μ > 0: truncamento curto demais")
        total += w.grau
    return total


def _inteiro_mod(x: Fraction, mod: int) -> int:
    return (x.numerator * pow(x.denominator, -1, mod)) % mod


def invariantes_bloco(j: int, lam: int, n: int, prec: Precision, L: int = 6) -> int:
    """
    Expoente e de H⁰(K_n, T/p^N) = Z/p^e, T = Z_p(j) ⊗ ur(λ), pela forma de
    Smith de d0 no complexo de Herr truncado (e = N: invariantes livres).
    """
    complexo = herr_complex(tate_twist_wach(0, lam, prec), n, j, L)
    return max(smith(complexo.d0, prec.p, prec.N).valuacoes)


def _invariantes_modelo(j: int, lam: int, n: int, f: int, prec: Precision) -> int:
    """min(v_p(λ^f − 1), v_p(χ(γ_n)^j − 1), N)."""
    p, N, mod = prec.p, prec.N, prec.pN
    v_lam = valuacao_mod((pow(lam, f, mod) - 1) % mod, p, N)
    v_chi = valuacao_mod((pow(chi_gamma_n(n, p), j, mod) - 1) % mod, p, N)
    return min(v_lam, v_chi)


def cohomology(fil: FilteredPhiModule, n: int, prec: Precision, L: int = 6) -> CohomologySummary:
    """
    H^i(K_n, T) para T soma de Z_p(j) ⊗ ur(λ).

    Por bloco, H⁰ e a torção de H¹ saem do Smith de d0 (H⁰(K_n, T/p^N) = Z/p^e);
    H² e sua torção, do Smith de d0 no bloco Z_p(1 − j) ⊗ ur(λ^{−1}), pela
    dualidade local. O posto livre de H¹ vem da descida de H¹_Iw ≅ Λ^{d·f}:
    posto de Λ/ω_{n−1}, mais as partes livres de H⁰ e H². A característica
    de Euler confronta as duas origens.

    Raises:
        PrecisaoInsuficiente: invariantes livres onde só pode haver torção
    """
    if n < 1:
        raise ValueError("cohomologia por descida definida para n ≥ 1")
    p, N, mod = prec.p, prec.N, prec.pN
    grau = (p - 1) * p ** (n - 1)
    livre = _grau_coinvariantes(n, prec) * fil.f
    resumo = CohomologySummary(n, fil.d, grau * fil.f, {0: 0, 1: 0, 2: 0}, {0: [], 1: [], 2: []})
    for j, lam in blocos_filtrado(fil):
        resumo.postos[1] += livre
        for grau_h, jj, mu in ((0, j, lam), (2, 1 - j, 1 / lam)):
            mu_int = _inteiro_mod(mu, mod)
            e = invariantes_bloco(jj, mu_int, n, prec, L)
            if invariantes_bloco(jj, mu_int, n, prec, L + 2) != e:
                resumo.estavel = False
            if e != _invariantes_modelo(jj, mu_int, n, fil.f, prec):
                resumo.modelo_confere = False
            if e == N:
                if jj != 0 or mu != 1:
                    raise PrecisaoInsuficiente(f"Z_p({jj}) ⊗ ur({mu}) sem torção visível mod p^{N}",
                                               necessario=n + valuacao_p(jj, p) + 1 if jj else N + 1)
                resumo.postos[grau_h] += 1
                resumo.postos[1] += 1
            elif e > 0:
                resumo.torcao[1 if grau_h == 0 else 2].append(e)
    for i in resumo.torcao:
        resumo.torcao[i].sort()
    logger.debug("cohomologia n=%d: postos %s torção %s", n, resumo.postos, resumo.torcao)
    return resumo


def dualidade_postos(fil: FilteredPhiModule, n: int, prec: Precision) -> List[Tuple[int, int, int]]:
    """Triplas (i, posto H^i(V), posto H^{2−i}(V*(1)))."""
    direto = cohomology(fil, n, prec)
    dual = cohomology(fil.dual().twist(1), n, prec)
    return [(i, direto.postos[i], dual.postos[2 - i]) for i in range(3)]

# ============================================================
# φ e ψ em séries de Laurent
# ============================================================

def inversa_q(S: AnelSeries) -> TruncSeries:
    """
    q^{−1} em A_K/p^N como polinômio de Laurent exato em X^{−1}.

    q = X^{p−1}(1 + w(Y)), Y = X^{−1}, w ≡ 0 mod p: N termos da série geométrica bastam.
    """
    p, N, mod = S.prec.p, S.prec.N, S.prec.pN
    w = [0] * p
    for i in range(p - 1):
        w[p - 1 - i] = math.comb(p, i + 1)
    menos_w = [(-c) % mod for c in w]
    soma, potencia = [1], [1]
    for _ in range(N - 1):
        potencia = convolucao_mod(potencia, menos_w, mod)
        soma = [(a + b) % mod for a, b in zip_longest(soma, potencia, fillvalue=0)]
    grau = len(soma) - 1 + (p - 1)
    coefs = [soma[grau - t - (p - 1)] for t in range(grau - (p - 1) + 1)]
    return S.de_coefs(coefs, polo=grau, exata=True)


def _partes(f: TruncSeries) -> Tuple[List, TruncSeries]:
    """Coeficientes de X^{−1}, ..., X^{−v} e a parte sem polo."""
    f = f.normalizar()
    v = f.polo
    negativos = [f.coeficiente(-m) for m in range(1, v + 1)]
    if f.comprimento > v:
        linhas = tuple(tuple(linha[v:]) for linha in f.linhas)
        positiva = TruncSeries(f.anel, linhas, 0, f.den, f.exata)
    elif not f.exata:
        raise PrecisaoInsuficiente("série de Laurent sem termos conhecidos fora do polo", necessario=v + 1)
    else:
        linhas = tuple((0,) for _ in f.linhas)
        positiva = TruncSeries(f.anel, linhas, 0, f.den, f.exata)
    return negativos, positiva


def phi_laurent(f: TruncSeries, S: AnelSeries) -> TruncSeries:
    """
    φ em séries de Laurent: φ(X^{−m}) = (X^{−1}q^{−1})^m.

    Semilinear: o coeficiente c de X^{−m} vai para σ(c).
    """
    negativos, positiva = _partes(f)
    res = phi(positiva, S.prec)
    if not negativos:
        return res
    base = inversa_q(S).vezes_x(-1)
    potencia = S.um()
    parte_polar = S.zero()
    for c in negativos:
        potencia = potencia * base
        if not c.e_zero():
            parte_polar = parte_polar + potencia * c.frobenius()
    return res + parte_polar.dividir_por_p(f.den)


def psi_laurent(f: TruncSeries, S: AnelSeries) -> TruncSeries:
    """ψ em séries de Laurent: ψ(cX^{−m}) = σ^{−1}(c)X^{−m}·ψ(q^m)."""
    negativos, positiva = _partes(f)
    res = psi(positiva)
    q = S.q()
    potencia = S.um()
    parte_polar = S.zero()
    for m, c in enumerate(negativos, start=1):
        potencia = potencia * q
        if not c.e_zero():
            parte_polar = parte_polar + psi(potencia).vezes_x(-m) * c.frobenius(-1)
    return res + parte_polar.dividir_por_p(f.den)


def _estender_laurent(f: TruncSeries, precisao_x: int) -> TruncSeries:
    """Versão não exata de f, conhecida mod X^{precisao_x}."""
    f = f.normalizar()
    if not f.exata:
        return f
    comprimento = max(precisao_x + f.polo, f.comprimento, 1)
    linhas = tuple(tuple(linha) + (0,) * (comprimento - len(linha)) for linha in f.linhas)
    return TruncSeries(f.anel, linhas, f.polo, f.den, False)


# ============================================================
# Cociclos
# ============================================================

@dataclass
class HerrCocycle:
    """
    1-cociclo (x, y) de C_{φ,γ_n}(K_n, T(k)) na base ε': (cγ_n − 1)x = (λφ − 1)y,
    com c = χ(γ_n)^peso.

    normalizado marca o modelo reescalado φ^{−n}(C_{φ,γ_n}); cociclos de modelos
    diferentes não se misturam.
    """
    prec: Precision
    n: int
    k: int
    x: TruncSeries
    y: TruncSeries
    lam: int = 1
    peso: int = 0
    normalizado: bool = False

    @property
    def series(self) -> AnelSeries:
        return AnelSeries(self.prec)

    def _fator(self) -> int:
        return pow(chi_gamma_n(self.n, self.prec.p), self.peso, self.prec.pN)

    def gamma(self, f: TruncSeries) -> TruncSeries:
        """c·γ_n(f)."""
        return gamma_act(chi_gamma_n(self.n, self.prec.p), f, self.prec) * self._fator()

    def phi(self, f: TruncSeries) -> TruncSeries:
        """λ·φ(f)."""
        return phi_laurent(f, self.series) * (self.lam % self.prec.pN)

    def residuo(self) -> TruncSeries:
        return (self.gamma(self.x) - self.x) - (self.phi(self.y) - self.y)

    def e_cociclo(self) -> bool:
        return self.residuo().e_zero()

    def _compativel(self, outro: "HerrCocycle"):
        if (self.n, self.k, self.lam, self.peso, self.normalizado) != \
                (outro.n, outro.k, outro.lam, outro.peso, outro.normalizado):
            raise RepresentacaoInvalida("cociclos de complexos diferentes")

    def __add__(self, outro: "HerrCocycle") -> "HerrCocycle":
        self._compativel(outro)
        return HerrCocycle(self.prec, self.n, self.k, self.x + outro.x, self.y + outro.y,
                           self.lam, self.peso, self.normalizado)

    def escalar(self, c: int) -> "HerrCocycle":
        return HerrCocycle(self.prec, self.n, self.k, self.x * c, self.y * c,
                           self.lam, self.peso, self.normalizado)

    def acao(self, b: int, precisao_x: Optional[int] = None) -> "HerrCocycle":
        """σ_b com χ(σ_b) = b: (x, y) ↦ (b^peso·γ_b(x), b^peso·γ_b(y))."""
        p, mod = self.prec.p, self.prec.pN
        if b % p == 0:
            raise ValueError("b precisa ser unidade")
        fator = pow(b, self.peso, mod)
        alvo = precisao_x if precisao_x is not None else _precisao_trabalho(self.x)
        x = gamma_act(b, _estender_laurent(self.x, alvo), self.prec) * fator
        y = gamma_act(b, _estender_laurent(self.y, alvo), self.prec) * fator
        return HerrCocycle(self.prec, self.n, self.k, x, y, self.lam, self.peso, self.normalizado)


def _precisao_trabalho(f: TruncSeries) -> int:
    if f.exata:
        return f.comprimento - f.polo + 1
    return int(f.precisao_x)


def coboundary(z: TruncSeries, n: int, prec: Precision, k: int = 0, lam: int = 1, peso: int = 0) -> HerrCocycle:
    """Cobordo ((λφ − 1)z, (cγ_n − 1)z) de um elemento z."""
    base = HerrCocycle(prec, n, k, z, z, lam, peso)
    return HerrCocycle(prec, n, k, base.phi(z) - z, base.gamma(z) - z, lam, peso)


def corestricao(c: HerrCocycle) -> HerrCocycle:
    """
    Cor_{K_n/K_{n−1}}: x ↦ Σ_{i<p} (cγ_{n−1})^i x, y inalterado.

    Raises:
        ValueError: nível 1 (Γ_0 contém Δ)
    """
    if c.n < 2:
        raise ValueError("corestrição implementada entre níveis ≥ 1")
    abaixo = HerrCocycle(c.prec, c.n - 1, c.k, c.x, c.y, c.lam, c.peso, c.normalizado)
    total = c.x
    termo = c.x
    for _ in range(c.prec.p - 1):
        termo = abaixo.gamma(termo)
        total = total + termo
    abaixo.x = total
    return abaixo


def restricao(c: HerrCocycle) -> HerrCocycle:
    """Res_{K_{n+1}/K_n}: y ↦ Σ_{i<p} (cγ_n)^i y, x inalterado."""
    acima = HerrCocycle(c.prec, c.n + 1, c.k, c.x, c.y, c.lam, c.peso, c.normalizado)
    termo = _estender_laurent(c.y, _precisao_trabalho(c.x))
    total = termo
    for _ in range(c.prec.p - 1):
        termo = c.gamma(termo)
        total = total + termo
    acima.y = total
    return acima


def para_modelo_reescalado(c: HerrCocycle) -> HerrCocycle:
    """φ^{−n}(C_{φ,γ_n}): renomeia X ↦ X_n e aplica σ^{−n} nos coeficientes."""
    if c.normalizado:
        return c
    return HerrCocycle(c.prec, c.n, c.k, c.x.frobenius_coefs(-c.n), c.y.frobenius_coefs(-c.n),
                       c.lam, c.peso, True)


def mesma_classe(c1: HerrCocycle, c2: HerrCocycle, digitos: int) -> bool:
    """Mesmo y e x_1 ≡ x_2 mod p^digitos (representantes ψ-normalizados)."""
    c1._compativel(c2)
    if not (c1.y - c2.y).e_zero():
        return False
    dif = (c1.x - c2.x).normalizar()
    p = c1.prec.p
    alvo = p ** min(dif.den + digitos, c1.prec.N)
    return all(x % alvo == 0 for linha in dif.linhas for x in linha)


# ============================================================
# Classes cl(x_n, α)
# ============================================================

def _matriz_gamma_bloco(a: int, c: int, P: int, L: int, mod: int) -> List[List[int]]:
    """cγ_a − 1 em X^{−P}A^+/X^L; coluna j: c·X^j·Q^j, Q = γ_a(X)/X."""
    T = P + L
    Q = [binom_generalizado(a, i + 1) % mod for i in range(T)]
    Qinv = _inversa_serie(Q, T, mod)
    colunas = []
    for j in range(-P, L):
        base = Q if j >= 0 else Qinv
        potencia = [1] + [0] * (T - 1)
        for _ in range(abs(j)):
            potencia = convolucao_mod(potencia, base, mod)[:T]
        coluna = [0] * T
        for e in range(j, L):
            coluna[e + P] = (c * potencia[e - j]) % mod
        coluna[j + P] = (coluna[j + P] - 1) % mod
        colunas.append(coluna)
    return [[colunas[col][lin] for col in range(T)] for lin in range(T)]


def _normalizar_psi(x: TruncSeries, S: AnelSeries) -> TruncSeries:
    """Ajusta a constante para que ψ(x) tenha termo constante nulo."""
    constante = psi_laurent(x, S).coeficiente(0)
    return x - S.de_coefs([constante], den=x.den, exata=True)


def iwasawa_h1_class(alpha: TruncSeries, n: int, prec: Precision, r: int = 0, lam: int = 1,
                     k: int = 0, L: Optional[int] = None) -> HerrCocycle:
    """
    Classe cl(x_n, α) com (cγ_n − 1)x_n = (λφ − 1)α no bloco X^{−P}A^+/X^L.

    Args:
        alpha: Elemento com ψ(α) = α (coordenada na base ε')
        n: Nível
        prec: Precisão
        r: T = Z_p(−r) ⊗ ur(λ)
        lam: Autovalor de φ na base ε'
        k: Torção; o peso de γ é w = k − r
        L: Truncamento em X (padrão p·(N+1))

    Raises:
        PrecisaoInsuficiente: sistema sem solução ao truncamento (aumente L)
    """
    S = AnelSeries(prec)
    p, N, mod = prec.p, prec.N, prec.pN
    peso = k - r
    a = chi_gamma_n(n, p)
    c = pow(a, peso, mod)
    alvo = phi_laurent(alpha, S) * (lam % mod) - alpha
    if alvo.e_zero():
        logger.debug("(φ−1)α = 0: classe com x_n = 0")
        return HerrCocycle(prec, n, k, S.zero(), alpha, lam, peso)
    alvo = alvo.normalizar()
    P = alvo.polo + (p - 1) * N
    L = L or p * (N + 1)
    if alvo.precisao_x < L:
        L = int(alvo.precisao_x)
    A = _matriz_gamma_bloco(a, c, P, L, mod)
    # γ_n é O_K-linear: uma coordenada de O_K por vez
    lados = [[alvo.coeficiente(e).coefs[i] for e in range(-P, L)] for i in range(prec.f)]

    for efetiva in range(N, 0, -1):
        solucoes = [resolver(A, b, p, efetiva) for b in lados]
        if all(sol is not None for sol in solucoes):
            break
    else:
        raise PrecisaoInsuficiente(f"γ_{n} − 1 sem solução no bloco [−{P}, {L})", necessario=L + p)
    if efetiva < N:
        logger.info("cl(x_%d, α) resolvida mod p^%d (de %d)", n, efetiva, N)
    escala = p ** (N - efetiva)
    numerador = [S.anel.elemento([(sol[j] * escala) % mod for sol in solucoes]) for j in range(P + L)]
    x = S.de_coefs(numerador, polo=P, den=alvo.den + N - efetiva)
    if peso == 0:
        x = _normalizar_psi(x, S)
    return HerrCocycle(prec, n, k, x, alpha, lam, peso)


# ============================================================
# TR_n, cup e emparelhamento equivariante
# ============================================================

def tr_map(h: TruncSeries, n: int, prec: Precision) -> PAdicScalar:
    """
    TR_n(h ⊗ ε) = −p^n / log χ(γ_n) · Tr_{K/Q_p} res(h·dX/(1+X)).

    Raises:
        PrecisaoInsuficiente: nenhum dígito sobra após dividir por log χ(γ_n)
    """
    p = prec.p
    h = h.normalizar()
    S = AnelSeries(prec)
    geom = S.de_coefs([(-1) ** i for i in range(max(h.polo + 1, 1))])
    residuo = (h * geom).coeficiente(-1)
    traco = PAdicScalar.de_inteiro(p, residuo.traco(), prec.N) * Fraction(1, p ** h.den)
    valor = traco * (-(p ** n)) / log_chi_gamma_n(n, prec)
    if valor.prec <= 0:
        raise PrecisaoInsuficiente(f"TR_{n} sem dígitos confiáveis", necessario=prec.N + n + h.den)
    return valor


def cup_product(c1: HerrCocycle, c2: HerrCocycle) -> PAdicScalar:
    """
    TR_n(y_1·cγ(x_2) − x_1·λφ(y_2)) para c1 em T(k) e c2 em T*(1−k).

    Raises:
        RepresentacaoInvalida: níveis, pesos ou autovalores sem emparelhamento
    """
    if c1.n != c2.n:
        raise RepresentacaoInvalida("cup exige o mesmo nível")
    if c1.peso + c2.peso != 1 or (c1.lam * c2.lam - 1) % c1.prec.pN:
        raise RepresentacaoInvalida("cup exige T(k) e T*(1−k): pesos somando 1 e λ_1λ_2 = 1")
    h = c1.y * c2.gamma(c2.x) - c1.x * c2.phi(c2.y)
    return tr_map(h, c1.n, c1.prec)


def _padic_em(x: PAdicScalar, anel) -> CycloScalar:
    if x.e_zero():
        return anel.zero()
    elem = anel.de_inteiro(x.unidade)
    if x.valuacao >= 0:
        return elem * x.p ** x.valuacao
    return elem.dividir_por_p(-x.valuacao)


def _cups_girados(c1: HerrCocycle, c2: HerrCocycle) -> Dict[int, PAdicScalar]:
    """(τ^{−1}c1, c2) para τ ∈ G_n."""
    prec, n = c1.prec, c1.n
    modulo = prec.p ** n
    alcance = c2.x.normalizar().polo + _precisao_trabalho(c2.x) + c1.y.normalizar().polo
    return {tau: cup_product(c1.acao(pow(tau, -1, modulo), alcance), c2) for tau in elementos_Gn(prec.p, n)}


def equivariant_pairing(c1: HerrCocycle, c2: HerrCocycle) -> GroupRingElem:
    """⟨x, y⟩ = Σ_{τ ∈ G_n} (τ^{−1}x, y)·[τ]."""
    anel = anel_do_grupo(c1.prec, c1.n)
    coefs = {tau: _padic_em(v, anel) for tau, v in _cups_girados(c1, c2).items()}
    return GroupRingElem(c1.prec, c1.n, coefs)


# ============================================================
# Não degenerescência do cup em H¹
# ============================================================

@dataclass
class GramCup:
    """
    Gram do cup nas bases {σ_a c1} × {σ_b c2}, a, b ∈ G_n.

    valuacoes: diagonal de Smith da matriz (já descontado o fator p^{−den});
    efetiva: dígitos com que a matriz é conhecida.
    """
    elementos: List[int]
    matriz: List[List[PAdicScalar]]
    valuacoes: List[int]
    efetiva: int

    def nao_degenerado(self) -> bool:
        return self.efetiva > 0 and all(v == 0 for v in self.valuacoes)


def gram_cup(c1: HerrCocycle, c2: HerrCocycle) -> GramCup:
    """
    (σ_a c1, σ_b c2) = (σ_{b^{−1}a} c1, c2), o coeficiente de τ = a^{−1}b em ⟨c1, c2⟩.

    Raises:
        PrecisaoInsuficiente: nenhum dígito da matriz sobrevive
    """
    p, modulo = c1.prec.p, c1.prec.p ** c1.n
    valores = _cups_girados(c1, c2)
    elementos = sorted(valores)
    matriz = [[valores[(pow(a, -1, modulo) * b) % modulo] for b in elementos] for a in elementos]
    entradas = [v for linha in matriz for v in linha]
    den = max([0] + [-v.valuacao for v in entradas if not v.e_zero()])
    efetiva = min(v.prec for v in entradas) + den
    if efetiva <= 0:
        raise PrecisaoInsuficiente("Gram do cup sem dígitos", necessario=c1.prec.N - efetiva + 1)
    inteira = [[(v * p ** den).para_inteiro() for v in linha] for linha in matriz]
    valuacoes = [min(v, efetiva) - den for v in smith(inteira, p, efetiva).valuacoes]
    logger.debug("Gram do cup em G_%d: Smith %s mod p^%d", c1.n, valuacoes, efetiva)
    return GramCup(elementos, matriz, valuacoes, efetiva)


def gerador_psi_um(lam: int, prec: Precision, L: Optional[int] = None) -> TruncSeries:
    """
    (1 − λφ)^{−1}(1 + X) = 1/(1 − λ) + Σ_i λ^i((1+X)^{p^i} − 1) mod X^L, λ ≢ 1 mod p.

    Gera D(T)^{ψ=1} sobre Λ na base ε' para todo T = Z_p(−r) ⊗ ur(λ).

    Raises:
        RepresentacaoInvalida: λ ≡ 1 mod p
    """
    p, N, mod = prec.p, prec.N, prec.pN
    if (lam - 1) % p == 0:
        raise RepresentacaoInvalida("gerador de D(T)^{ψ=1} por (1 − λφ)^{−1} exige λ ≢ 1 mod p")
    L = L or p * (N + 2)
    # C(p^i, j) ≡ 0 mod p^N para 0 < j < L quando i ≥ N + v_p(j)
    iteracoes = N
    while p ** (iteracoes - N) < L:
        iteracoes += 1
    coefs = [pow(1 - lam, -1, mod)] + [0] * (L - 1)
    for i in range(iteracoes):
        peso = pow(lam, i, mod)
        e = p ** i
        for j in range(1, L):
            coefs[j] = (coefs[j] + peso * math.comb(e, j)) % mod
    return AnelSeries(prec).de_coefs(coefs)


def classes_geradoras(r: int, lam: int, n: int, prec: Precision) -> Tuple[HerrCocycle, HerrCocycle]:
    """cl(x_n, α) para T = Z_p(−r) ⊗ ur(λ) e para T*(1) = Z_p(1 + r) ⊗ ur(λ^{−1})."""
    lam_dual = pow(lam, -1, prec.pN)
    c1 = iwasawa_h1_class(gerador_psi_um(lam, prec), n, prec, r=r, lam=lam)
    c2 = iwasawa_h1_class(gerador_psi_um(lam_dual, prec), n, prec, r=-1 - r, lam=lam_dual)
    return c1, c2


def cup_nao_degenerado(r: int, lam: int, n: int, prec: Precision) -> GramCup:
    """Gram do cup em H¹(K_n, T) × H¹(K_n, T*(1)) nas G_n-translações dos geradores."""
    return gram_cup(*classes_geradoras(r, lam, n, prec))
