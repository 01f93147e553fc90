#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Módulos de Wach N(T) e φ-módulos filtrados D_cris(V).

As representações embutidas são torções Z_p(−r) ⊗ ur(λ), r ≥ 0, e somas
diretas delas; matrizes brutas (JSON) passam pela validação das condições
de Wach. Aqui também ficam D_cris a partir de N(T), os pontos fixos de ψ no
modelo Λ e o ideal característico do quociente D(T)^{ψ=1}/(φ*N(T))^{ψ=1}.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Rational, eye

from config import Precision
from erros import PrecisaoInsuficiente, RepresentacaoInvalida
from lambda_descent import (
    CharIdeal, LambdaElem, _folga_binomial, char_ideal_tate, determinante, elemento_grupo,
    lambda_zero,
)
from ring_tower import PAdicScalar, UnramifiedScalar, convolucao_mod, raiz_primitiva, teichmuller_int, valuacao_p
from series_phigamma import AnelSeries, PsiZeroSeries, TruncSeries, binom_generalizado, gamma_act, phi, psi
from zp_linalg import nucleo

MatrizSeries = List[List[TruncSeries]]


# ============================================================
# φ-módulos filtrados
# ============================================================

@dataclass
class FilteredPhiModule:
    """
    D_cris(V) sobre K: matriz de φ (racional), saltos da filtração com
    multiplicidade e o grau f = [K:Q_p].

    dim Fil^j = #{saltos ≥ j}; t_H(V) = Σ saltos.
    """
    p: int
    phi: List[List[Fraction]]
    saltos: List[int]
    f: int = 1
    alpha: Optional[Fraction] = None

    def __post_init__(self):
        self.phi = [[Fraction(x) for x in linha] for linha in self.phi]
        self.saltos = list(self.saltos)
        if len(self.phi) != len(self.saltos) or any(len(l) != len(self.saltos) for l in self.phi):
            raise RepresentacaoInvalida("matriz de φ e saltos com dimensões incompatíveis")
        if self.det_phi_racional() == 0:
            raise RepresentacaoInvalida("φ precisa ser invertível")

    @classmethod
    def tate(cls, p: int, r: int, lam: int = 1, f: int = 1) -> "FilteredPhiModule":
        """D_cris(Z_p(−r) ⊗ ur(λ)): φ = λp^r e salto r (r pode ser negativo)."""
        return cls(p, [[Fraction(lam) * Fraction(p) ** r]], [r], f, Fraction(1))

    @property
    def d(self) -> int:
        return len(self.saltos)

    def dim_fil(self, j: int) -> int:
        return sum(1 for s in self.saltos if s >= j)

    def h_i(self, i: int) -> int:
        """Multiplicidade h_i(V) do salto i."""
        return sum(1 for s in self.saltos if s == i)

    def t_H(self) -> int:
        return sum(self.saltos)

    def salto_maximo(self) -> int:
        return max(self.saltos) if self.saltos else 0

    def salto_minimo(self) -> int:
        return min(self.saltos) if self.saltos else 0

    def _matriz(self) -> Matrix:
        return Matrix([[Rational(x.numerator, x.denominator) for x in linha] for linha in self.phi])

    def det_phi_racional(self) -> Fraction:
        det = Rational(self._matriz().det())
        return Fraction(int(det.p), int(det.q))

    def valuacao_det(self) -> int:
        det = self.det_phi_racional()
        return valuacao_p(det.numerator, self.p) - valuacao_p(det.denominator, self.p)

    def admissivel(self) -> bool:
        """v_p(det φ) = t_H(V) (contabilidade de admissibilidade em posto 1)."""
        return self.valuacao_det() == self.t_H()

    def dim_autoespaco(self, valor: Fraction) -> int:
        """dim D^{φ=valor}."""
        alvo = Rational(Fraction(valor).numerator, Fraction(valor).denominator)
        return self.d - (self._matriz() - alvo * eye(self.d)).rank()

    def dim_phi_um(self) -> int:
        return self.dim_autoespaco(Fraction(1))

    def dim_phi_p_inv(self) -> int:
        """dim D^{φ=p^{−1}} (controla H²)."""
        return self.dim_autoespaco(Fraction(1, self.p))

    def alpha_padrao(self) -> Optional[Fraction]:
        return self.alpha

    def soma(self, outro: "FilteredPhiModule") -> "FilteredPhiModule":
        """Soma direta (φ em blocos, saltos concatenados)."""
        if self.f != outro.f or self.p != outro.p:
            raise RepresentacaoInvalida("soma direta exige o mesmo K")
        d1, d2 = self.d, outro.d
        phi = ([list(l) + [Fraction(0)] * d2 for l in self.phi]
               + [[Fraction(0)] * d1 + list(l) for l in outro.phi])
        alpha = self.alpha * outro.alpha if self.alpha is not None and outro.alpha is not None else None
        return FilteredPhiModule(self.p, phi, self.saltos + outro.saltos, self.f, alpha)

    def twist(self, k: int) -> "FilteredPhiModule":
        """D_cris(V(k)): φ·p^{−k} e saltos deslocados de −k."""
        fator = Fraction(self.p) ** (-k)
        phi = [[x * fator for x in linha] for linha in self.phi]
        return FilteredPhiModule(self.p, phi, [s - k for s in self.saltos], self.f, self.alpha)

    def dual(self) -> "FilteredPhiModule":
        """D_cris(V*): φ^{−T} e saltos com sinal trocado."""
        inversa = self._matriz().inv().T
        phi = [[Fraction(int(inversa[i, j].p), int(inversa[i, j].q)) for j in range(self.d)]
               for i in range(self.d)]
        return FilteredPhiModule(self.p, phi, [-s for s in self.saltos], self.f)

    def diagonal(self) -> Optional[List[Fraction]]:
        """Autovalores de φ se a matriz é diagonal."""
        if any(self.phi[i][j] for i in range(self.d) for j in range(self.d) if i != j):
            return None
        return [self.phi[i][i] for i in range(self.d)]


# ============================================================
# Módulos de Wach
# ============================================================

@dataclass
class WachModule:
    """
    N(T) de posto d: φ(n) = n·P, γ_a(n) = n·G_γ (a = 1+p) e δ(n) = n·G_δ
    (δ = levantamento de Teichmüller de uma raiz primitiva mod p).

    blocos guarda (r, λ) quando o módulo é soma de torções embutidas.
    """
    prec: Precision
    P: MatrizSeries
    G_gamma: MatrizSeries
    G_delta: MatrizSeries
    a_gamma: int
    a_delta: int
    altura: int
    blocos: Optional[List[Tuple[int, int]]] = None

    @property
    def d(self) -> int:
        return len(self.P)

    @property
    def series(self) -> AnelSeries:
        return AnelSeries(self.prec)


def gerador_delta(prec: Precision) -> int:
    """Levantamento de Teichmüller da menor raiz primitiva, com folga para os binomiais."""
    extra = prec.N + _folga_binomial(prec.p, prec.M) + 2
    return teichmuller_int(raiz_primitiva(prec.p), prec.p, extra)


def _estender(s: TruncSeries, L: int) -> TruncSeries:
    """Polinômio exato visto como série truncada de comprimento L."""
    if not s.exata or s.comprimento >= L:
        return s
    linhas = tuple(tuple(linha) + (0,) * (L - len(linha)) for linha in s.linhas)
    return TruncSeries(s.anel, linhas, s.polo, s.den, False)


def _quociente_gamma(a: int, S: AnelSeries, exato: bool) -> TruncSeries:
    """γ_a(X)/X = Σ_{i≥0} C(a, i+1) X^i (polinômio para a > 0 pequeno)."""
    if exato:
        return S.de_coefs([binom_generalizado(a, i + 1) for i in range(a)], exata=True)
    return S.de_coefs([binom_generalizado(a, i + 1) for i in range(S.M)])


def tate_twist_wach(r: int, lam: int, prec: Precision) -> WachModule:
    """
    N(Z_p(−r) ⊗ ur(λ)) na base n = X^r e: P = λq^r e G_a = (γ_a(X)/X)^r·a^{−r}.

    Args:
        r: Peso (r ≥ 0)
        lam: Unidade λ (inteiro primo com p)
        prec: Precisão

    Raises:
        RepresentacaoInvalida: r negativo ou λ não unidade
    """
    p, mod = prec.p, prec.pN
    if r < 0:
        raise RepresentacaoInvalida("módulo de Wach embutido exige r ≥ 0 (representação positiva)")
    if lam % p == 0:
        raise RepresentacaoInvalida("λ precisa ser unidade")
    S = AnelSeries(prec)
    P = S.q() ** r * (lam % mod)
    a_gamma = 1 + p
    G_gamma = _quociente_gamma(a_gamma, S, True) ** r * pow(a_gamma, -r, mod)
    a_delta = gerador_delta(prec)
    G_delta = _quociente_gamma(a_delta, S, False) ** r * pow(a_delta, -r, mod)
    return WachModule(prec, [[P]], [[G_gamma]], [[G_delta]], a_gamma, a_delta, r, [(r, lam)])


def soma_direta(W1: WachModule, W2: WachModule) -> WachModule:
    """N(T_1 ⊕ T_2) em blocos."""
    if W1.prec != W2.prec:
        raise RepresentacaoInvalida("somas diretas exigem a mesma precisão")
    S = W1.series
    zero = S.zero()

    def bloco(A, B):
        d1, d2 = len(A), len(B)
        return ([list(l) + [zero] * d2 for l in A] + [[zero] * d1 + list(l) for l in B])

    blocos = W1.blocos + W2.blocos if W1.blocos is not None and W2.blocos is not None else None
    return WachModule(W1.prec, bloco(W1.P, W2.P), bloco(W1.G_gamma, W2.G_gamma),
                      bloco(W1.G_delta, W2.G_delta), W1.a_gamma, W1.a_delta,
                      max(W1.altura, W2.altura), blocos)


def wach_de_matrizes(prec: Precision, P: Sequence[Sequence[Sequence[int]]],
                     G_gamma: Sequence[Sequence[Sequence[int]]],
                     G_delta: Optional[Sequence[Sequence[Sequence[int]]]] = None,
                     altura: Optional[int] = None) -> WachModule:
    """
    Módulo de Wach bruto: cada entrada é a lista de coeficientes (em Z) de um
    polinômio em X. Sem G_δ, usa-se a identidade (só válido se Δ age trivialmente).
    """
    S = AnelSeries(prec)
    d = len(P)

    def converter(M):
        linhas = [[S.de_coefs(list(c) or [0], exata=True) for c in linha] for linha in M]
        if len(linhas) != d or any(len(l) != d for l in linhas):
            raise RepresentacaoInvalida("matrizes precisam ser d×d")
        return linhas

    identidade = [[S.um() if i == j else S.zero() for j in range(d)] for i in range(d)]
    Gd = converter(G_delta) if G_delta is not None else identidade
    Pm = converter(P)
    h = altura if altura is not None else _altura_estimada(Pm, prec)
    return WachModule(prec, Pm, converter(G_gamma), Gd, 1 + prec.p, gerador_delta(prec), h)


def _altura_estimada(P: MatrizSeries, prec: Precision) -> int:
    det = determinante(P)
    s, _ = _fatorar_q(_coefs_exatos(det), prec)
    return s


# ----------------------------------------------------------- matrizes de séries

def mat_mul_series(A: MatrizSeries, B: MatrizSeries) -> MatrizSeries:
    n, m = len(A), len(B[0])
    res = []
    for i in range(n):
        linha = []
        for j in range(m):
            acc = A[i][0] * B[0][j]
            for k in range(1, len(B)):
                acc = acc + A[i][k] * B[k][j]
            linha.append(acc)
        res.append(linha)
    return res


def phi_mat(A: MatrizSeries, prec: Precision) -> MatrizSeries:
    return [[phi(x, prec) for x in linha] for linha in A]


def gamma_mat(a: int, A: MatrizSeries, prec: Precision) -> MatrizSeries:
    """γ_a entrada a entrada; para a grande os polinômios viram séries mod X^M."""
    if a > prec.M:
        return [[gamma_act(a, _estender(x, prec.M), prec) for x in linha] for linha in A]
    return [[gamma_act(a, x, prec) for x in linha] for linha in A]


def adjunta(A: MatrizSeries, um: TruncSeries) -> MatrizSeries:
    """Matriz adjunta (cofatores transpostos)."""
    n = len(A)
    if n == 1:
        return [[um]]
    res = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            menor = [linha[:j] + linha[j + 1:] for k, linha in enumerate(A) if k != i]
            c = determinante(menor)
            res[j][i] = c if (i + j) % 2 == 0 else -c
    return res


# ----------------------------------------------------------- divisão por q

def _coefs_exatos(s: TruncSeries) -> List[UnramifiedScalar]:
    s = s.normalizar()
    if not s.exata or s.polo or s.den:
        raise PrecisaoInsuficiente("contenção q^h exige entradas polinomiais exatas")
    return s.coeficientes()


def _fatorar_q(coefs: List[UnramifiedScalar], prec: Precision) -> Tuple[int, List[UnramifiedScalar]]:
    """Maior s com q^s | g (divisão mônica exata), e o cofator."""
    p = prec.p
    q = [math.comb(p, k) for k in range(1, p + 1)]
    g = list(coefs)
    s = 0
    while len(g) >= len(q) and any(not c.e_zero() for c in g):
        quoc, resto = _dividir_por_monico(g, q)
        if any(not c.e_zero() for c in resto):
            break
        g = quoc
        s += 1
    return s, g


def _dividir_por_monico(g: List[UnramifiedScalar], m: Sequence[int]) -> Tuple[List[UnramifiedScalar], List[UnramifiedScalar]]:
    grau = len(m) - 1
    resto = list(g)
    quoc = [resto[0].anel.zero() for _ in range(max(len(g) - grau, 1))]
    for i in range(len(resto) - 1, grau - 1, -1):
        c = resto[i]
        if c.e_zero():
            continue
        quoc[i - grau] = c
        for j in range(grau + 1):
            resto[i - grau + j] = resto[i - grau + j] - c * m[j]
    return quoc, resto[:grau]


# ============================================================
# Validação
# ============================================================

@dataclass
class RelatorioWach:
    """Condições de Wach: violacoes lista (condição, entrada, detalhe)."""
    passou: bool
    violacoes: List[Tuple[str, Tuple[int, int], str]] = field(default_factory=list)
    expoente_q: Optional[int] = None
    igualdade: bool = False


def validate_wach(W: WachModule) -> RelatorioWach:
    """
    (i) G ≡ I mod X para γ e δ; (ii) P·φ(G) = G·γ(P) e G_γ·γ(G_δ) = G_δ·δ(G_γ);
    (iii) q^h·N ⊂ φ*N: det P = q^s·u com u(0) unidade e s ≤ h.
    """
    prec, d = W.prec, W.d
    violacoes = []

    for nome, G in (("gamma", W.G_gamma), ("delta", W.G_delta)):
        for i in range(d):
            for j in range(d):
                c = G[i][j].normalizar()
                if c.polo:
                    violacoes.append(("trivial_mod_X", (i, j), f"G_{nome} com polo"))
                    continue
                esperado = 1 if i == j else 0
                if not (c.coeficiente(0) - esperado).e_zero():
                    violacoes.append(("trivial_mod_X", (i, j), f"G_{nome}(0) = {c.coeficiente(0)}"))

    for nome, G, a in (("gamma", W.G_gamma, W.a_gamma), ("delta", W.G_delta, W.a_delta)):
        esquerda = mat_mul_series(W.P, phi_mat(G, prec))
        direita = mat_mul_series(G, gamma_mat(a, W.P, prec))
        for i in range(d):
            for j in range(d):
                if not esquerda[i][j] == direita[i][j]:
                    violacoes.append(("phi_gamma_comutam", (i, j), f"P·φ(G_{nome}) ≠ G_{nome}·γ(P)"))

    esquerda = mat_mul_series(W.G_gamma, gamma_mat(W.a_gamma, W.G_delta, prec))
    direita = mat_mul_series(W.G_delta, gamma_mat(W.a_delta, W.G_gamma, prec))
    for i in range(d):
        for j in range(d):
            if not esquerda[i][j] == direita[i][j]:
                violacoes.append(("cociclo_gamma", (i, j), "G_γ·γ(G_δ) ≠ G_δ·δ(G_γ)"))

    expoente, igualdade = None, False
    try:
        s, cofator = _fatorar_q(_coefs_exatos(determinante(W.P)), prec)
        expoente = s
        if not cofator or not cofator[0].e_unidade():
            violacoes.append(("contencao_q", (0, 0), "det P/q^s não é unidade de A_K^+"))
        elif s > W.altura:
            # q^h·P^{−1} = q^{h−s}·adj(P)/u: integral sse q^{s−h} divide a adjunta
            adj = adjunta(W.P, W.series.um())
            for i in range(d):
                for j in range(d):
                    e, _ = _fatorar_q(_coefs_exatos(adj[i][j]), prec)
                    if e < s - W.altura and not adj[i][j].normalizar().e_zero():
                        violacoes.append(("contencao_q", (i, j), f"q^{W.altura}·N ⊄ φ*N"))
        # q^h·N = φ*N sse P = q^h·(matriz invertível)
        igualdade = s == d * W.altura and all(
            W.P[i][j].normalizar().e_zero() or _fatorar_q(_coefs_exatos(W.P[i][j]), prec)[0] >= W.altura
            for i in range(d) for j in range(d))
    except PrecisaoInsuficiente as e:
        violacoes.append(("contencao_q", (0, 0), str(e)))

    return RelatorioWach(not violacoes, violacoes, expoente, igualdade and not violacoes)


# ============================================================
# D_cris a partir de N(T)
# ============================================================

def _t_sobre_x(K: int, s: int) -> List[Fraction]:
    """Coeficientes exatos de (t/X)^s até X^{K−1}, t = log(1+X)."""
    base = [Fraction((-1) ** k, k + 1) for k in range(K)]
    res = [Fraction(1)] + [Fraction(0)] * (K - 1)
    for _ in range(s):
        novo = [Fraction(0)] * K
        for i, a in enumerate(res):
            if a:
                for j in range(K - i):
                    novo[i + j] += a * base[j]
        res = novo
    return res


def vetor_invariante(G: TruncSeries, a: int, prec: Precision, K: Optional[int] = None) -> List[PAdicScalar]:
    """
    Solução f = Σ f_k X^k, f_0 = 1, de γ_a(f)·G = f (posto 1, coeficientes em Z_p):
    f_k = −Σ_{j<k} f_j·c_{jk}/(a^k − 1), c_{jk} = [X^k] γ_a(X^j)·G.
    """
    p, N, mod = prec.p, prec.N, prec.pN
    # f_1 = −s/2 já separa os saltos; cada passo custa 1 + v_p(k) dígitos
    K = K or min(prec.M, 4)
    try:
        g = [G.coeficiente(k).para_padic().para_inteiro() for k in range(K)]
    except ValueError:
        raise RepresentacaoInvalida("D_cris só para G com coeficientes em Z_p")
    gamma_x = [binom_generalizado(a, i) % mod for i in range(K)]  # (1+X)^a − 1
    gamma_x[0] = 0
    potencia = [1] + [0] * (K - 1)
    c = []
    for j in range(K):
        c.append(convolucao_mod(potencia, g, mod)[:K])
        potencia = convolucao_mod(potencia, gamma_x, mod)[:K]
    f = [PAdicScalar.de_inteiro(p, 1, N)]
    for k in range(1, K):
        soma = PAdicScalar.zero(p, N)
        for j in range(k):
            soma = soma + f[j] * PAdicScalar.de_inteiro(p, c[j][k], N)
        f.append(-soma / PAdicScalar.de_inteiro(p, pow(a, k) - 1, N + 2 * k))
    return f


def dcris_from_wach(W: WachModule) -> FilteredPhiModule:
    """
    D_cris(V) = (B^+ ⊗ N(T))^Γ para somas de blocos de posto 1: o vetor
    invariante de cada bloco é comparado com (t/X)^s, s ≤ h, e φ = P(0).

    Raises:
        RepresentacaoInvalida: matrizes não diagonais
        PrecisaoInsuficiente: nenhum (ou mais de um) s compatível
    """
    prec, d = W.prec, W.d
    for M in (W.P, W.G_gamma):
        if any(not M[i][j].normalizar().e_zero() for i in range(d) for j in range(d) if i != j):
            raise RepresentacaoInvalida("D_cris implementado para somas de blocos de posto 1")
    p = prec.p
    phis, saltos = [], []
    for i in range(d):
        f = vetor_invariante(W.G_gamma[i][i], W.a_gamma, prec)
        candidatos = []
        for s in range(W.altura + 1):
            alvo = _t_sobre_x(len(f), s)
            if all(fk == ak for fk, ak in zip(f, alvo)):
                candidatos.append(s)
        if len(candidatos) != 1:
            raise PrecisaoInsuficiente(f"bloco {i}: saltos compatíveis {candidatos}", necessario=prec.N + 2)
        s = candidatos[0]
        p0 = W.P[i][i].coeficiente(0).para_padic()
        if p0.e_zero():
            raise RepresentacaoInvalida(f"bloco {i}: P(0) nulo")
        v = int(p0.valuacao)
        phis.append(_centrado(p0.unidade, p ** (prec.N - v)) * Fraction(p) ** v)
        saltos.append(s)
    phi_matriz = [[phis[i] if i == j else Fraction(0) for j in range(d)] for i in range(d)]
    return FilteredPhiModule(p, phi_matriz, saltos, prec.f, Fraction(1))


def _centrado(x: int, mod: int) -> Fraction:
    x %= mod
    return Fraction(x - mod if x > mod // 2 else x)


# ============================================================
# Pontos fixos de ψ no modelo Λ
# ============================================================

def medida_wach(r: int, S: AnelSeries) -> PsiZeroSeries:
    """φ(X)^r(1+X) = Σ_i C(r,i)(−1)^{r−i}(1+X)^{1+pi}, como medida."""
    p = S.prec.p
    return PsiZeroSeries.de_dict(S.anel, {1 + p * i: math.comb(r, i) * (-1) ** (r - i) for i in range(r + 1)})


def coordenada_lambda(medida: PsiZeroSeries, r: int, prec: Precision) -> LambdaElem:
    """
    Coordenada Λ de Σ c_a (1+X)^a ε relativa a (1+X)ε, com γ(ε) = χ(γ)^{−r}ε:
    (1+X)^a ε = a^r·[a]((1+X)ε).
    """
    mod = prec.pN
    total = lambda_zero(prec)
    for a, c in medida.como_dict().items():
        coef = c.para_padic().para_inteiro()
        total = total + elemento_grupo(a, prec) * ((coef * pow(a, r, mod)) % mod)
    return total


@dataclass
class GeradorWach:
    """Bloco de posto 1 lido de P = λ·q^s: medida de (1+X)φ(n) e sua coordenada Λ."""
    s: int
    lam: int
    medida: PsiZeroSeries
    gerador: LambdaElem


def gerador_lambda_wach(W: WachModule, i: int, prec: Optional[Precision] = None) -> GeradorWach:
    """
    Gerador de (φ*N)^{ψ=0} no bloco i, lido das matrizes de N(T).

    P_ii = λ·q^s dá n = X^s ε' com φ(ε') = λε'; G_γ precisa valer
    (γ(X)/X)^s·χ(γ)^{−s}, isto é γ(ε') = χ(γ)^{−s}ε'. O gerador (1+X)φ(n)
    tem coordenada λ·c_s relativa a (1+X)ε'.

    Args:
        W: Módulo de Wach (brutos incluídos)
        i: Índice do bloco
        prec: Precisão Λ alternativa (para a checagem de estabilidade)

    Raises:
        RepresentacaoInvalida: bloco fora da diagonal, P fora da forma λq^s ou G_γ incompatível
    """
    prec = prec or W.prec
    d = W.d
    if any(not M[i][j].normalizar().e_zero() for M in (W.P, W.G_gamma) for j in range(d) if j != i):
        raise RepresentacaoInvalida(f"bloco {i}: matrizes fora da diagonal")
    s, cofator = _fatorar_q(_coefs_exatos(W.P[i][i]), W.prec)
    if not cofator or not cofator[0].e_unidade() or any(not c.e_zero() for c in cofator[1:]):
        raise RepresentacaoInvalida(f"bloco {i}: P não é da forma λ·q^s")
    try:
        lam = cofator[0].para_padic().para_inteiro()
    except ValueError:
        raise RepresentacaoInvalida(f"bloco {i}: λ fora de Z_p")
    a = W.a_gamma
    esperado = _quociente_gamma(a, W.series, True) ** s * pow(a, -s, W.prec.pN)
    if not W.G_gamma[i][i] == esperado:
        raise RepresentacaoInvalida(f"bloco {i}: G_γ incompatível com P = λ·q^{s}")
    medida = medida_wach(s, AnelSeries(prec)).escalar(lam)
    gerador = coordenada_lambda(medida, s, prec)
    return GeradorWach(s, lam, medida, gerador)


@dataclass
class PsiFixedLattice:
    """
    Descrição de (φ*N)^{ψ=1} bloco a bloco: posto como Λ-módulo, o gerador
    Λ da imagem por 1 − φ em (φ*N)^{ψ=0}, o núcleo polinomial de ψ − λ^{±}
    e a estabilidade do ideal gerado ao aumentar M_lambda.
    """
    posto: int
    geradores: List[LambdaElem]
    nucleo_polinomial: List[List[Tuple[List[int], int]]]
    contem_constantes: bool
    estavel: bool
    pesos: List[int] = field(default_factory=list)

    def dim_nucleo(self) -> int:
        return sum(len(ker) for ker in self.nucleo_polinomial)


def _matriz_psi(L: int, S: AnelSeries) -> List[List[int]]:
    """Matriz de ψ no bloco de polinômios de grau < L (K = Q_p)."""
    colunas = []
    for j in range(L):
        imagem = psi(S.monomio(j))
        colunas.append([imagem.coeficiente(i).coefs[0] if i < imagem.comprimento else 0 for i in range(L)])
    return [[colunas[j][i] for j in range(L)] for i in range(L)]


def psi_fixed_points(W: WachModule, L: int = 12) -> PsiFixedLattice:
    """
    Para cada bloco: gerador λ·c_s de (φ*N)^{ψ=0} lido de P e G_γ, núcleo de
    ψ − λ no bloco polinomial de grau < L e a checagem de que o ideal
    característico do gerador não muda com M_lambda + 8.

    Raises:
        RepresentacaoInvalida: bloco que não é de posto 1 da forma λq^s
        PrecisaoInsuficiente: Weierstrass curto demais ou ideal instável
    """
    prec = W.prec
    p, N, mod = prec.p, prec.N, prec.pN
    maior = prec.com(M_lambda=prec.M_lambda + 8)
    geradores, nucleos, pesos = [], [], []
    estavel = True
    contem_constantes = False
    matriz_psi = _matriz_psi(L, AnelSeries(prec.com(f=1)))
    for i in range(W.d):
        bloco = gerador_lambda_wach(W, i)
        g_maior = gerador_lambda_wach(W, i, maior).gerador
        if not CharIdeal.de_elemento(bloco.gerador) == CharIdeal.de_elemento(g_maior):
            estavel = False
        geradores.append(bloco.gerador)
        pesos.append(bloco.s)
        # ψ(x e) = λ^{−1}ψ(x) e: ψ = 1 em D(T) ⇔ ψ(x) = λx
        lam = bloco.lam
        operador = [[(matriz_psi[i][j] - (lam if i == j else 0)) % mod for j in range(L)] for i in range(L)]
        ker = [(v, e) for v, e in nucleo(operador, p, N) if e == N]
        nucleos.append(ker)
        if bloco.s == 0 and lam % mod == 1 and any(v[0] % p and not any(v[1:]) for v, _ in ker):
            contem_constantes = True
    if not estavel:
        raise PrecisaoInsuficiente("ideal do gerador de (φ*N)^{ψ=0} instável", necessario=prec.M_lambda + 8)
    return PsiFixedLattice(W.d, geradores, nucleos, contem_constantes, estavel, pesos)


# ============================================================
# Ideal característico do quociente
# ============================================================

@dataclass
class QuotientReport:
    calculado: CharIdeal
    previsto: CharIdeal
    divide: bool
    igual: bool
    injetivo: bool
    pontos_fixos_polinomiais: int = 0


def wach_quotient_char_ideal(W: WachModule) -> QuotientReport:
    """
    car_Λ(D(T)^{ψ=1}/(φ*N(T))^{ψ=1}) pelo Weierstrass dos geradores lidos de
    P e G_γ, comparado a Π_{k=1}^h car_Λ(Z_p[Δ] ⊗ Z_p(−k))^{dim Fil^k}, com os
    saltos vindos de D_cris (dos blocos embutidos ou de dcris_from_wach).

    A divisibilidade é verificada antes da igualdade; a injetividade de
    φ^{−1} no quociente equivale ao grau de Weierstrass ser Σ_k dim Fil^k.
    Os pontos fixos polinomiais de ψ estão nos dois reticulados e não
    contribuem ao quociente.
    """
    prec = W.prec
    info = psi_fixed_points(W)
    calculado = CharIdeal.unitario(prec.p, prec.N)
    for g in info.geradores:
        calculado = calculado * CharIdeal.de_elemento(g)
    previsto = CharIdeal.unitario(prec.p, prec.N)
    grau_previsto = 0
    for s in filtered_de_wach_blocos(W).saltos:
        for k in range(1, s + 1):
            previsto = previsto * char_ideal_tate(-k, prec, todas=True)
            grau_previsto += 1
    divide = calculado.divide(previsto)
    igual = divide and calculado == previsto
    injetivo = all(calculado.lambda_invariante(i) == grau_previsto for i in range(prec.p - 1))
    return QuotientReport(calculado, previsto, divide, igual, injetivo, info.dim_nucleo())


def filtered_de_wach_blocos(W: WachModule) -> FilteredPhiModule:
    """D_cris direto dos blocos (r, λ) embutidos (sem resolver o sistema de Γ)."""
    if W.blocos is None:
        return dcris_from_wach(W)
    fil = None
    for r, lam in W.blocos:
        atual = FilteredPhiModule.tate(W.prec.p, r, lam, W.prec.f)
        fil = atual if fil is None else fil.soma(atual)
    return fil
