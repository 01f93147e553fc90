#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Núcleo da exponencial de Perrin-Riou em nível finito: aplicações Δ_k,
o solver de (1 − φ)F = f, Ξ_{V,n} (definição e forma telescópica),
a série E_{k,n} e as construções de cociclos Ω e Σ.

D(V) = O_K[[X]]^{ψ=0} ⊗ D_cris(V) é representado na base que diagonaliza φ
(autovalores racionais μ_i); cada coordenada é uma PsiZeroSeries.
As construções Ω/Σ vivem no modelo reescalado φ^{−n}(C_{φ,γ_n}), na variável
X_n, com t_n = log(1 + X_n) e t = p^n·t_n.
"""

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from config import Precision
from epsilon import GroupRingElem, racional_em
from erros import (
    DeltaNaoNulo, NaoConvergiu, PrecisaoInsuficiente, RepresentacaoInvalida, SerieNaoPsiZero,
)
from herr import HerrCocycle, _estender_laurent, chi_gamma_n, equivariant_pairing, iwasawa_h1_class
from lambda_descent import _produto_kms, avaliar_torcao
from ring_tower import INFINITO, CycloScalar, PAdicScalar, anel_ciclotomico, anel_de, valuacao_p
from series_phigamma import (
    AnelSeries, PsiZeroSeries, TPoloSerie, TruncSeries, eval_at_level, gamma_act, phi, serie_t,
)
from wach import FilteredPhiModule, gerador_lambda_wach, tate_twist_wach
from zp_linalg import smith

logger = logging.getLogger(__name__)


def _v(x: Fraction, p: int):
    x = Fraction(x)
    if x == 0:
        return INFINITO
    return valuacao_p(x.numerator, p) - valuacao_p(x.denominator, p)


def _exigir_qp_fil(fil: FilteredPhiModule):
    if fil.f != 1:
        raise RepresentacaoInvalida("núcleo de Perrin-Riou implementado para K = Q_p")


# ============================================================
# Elementos de D(V)
# ============================================================

@dataclass(frozen=True, eq=False)
class DModuleElem:
    """
    Elemento Σ_i f_i ⊗ d_i de D(V), com d_i a base em que φ é diagonal.

    fil: D_cris(V) (φ diagonal); coords: uma PsiZeroSeries por vetor da base.
    """
    fil: FilteredPhiModule
    coords: Tuple[PsiZeroSeries, ...]

    def __post_init__(self):
        if len(self.coords) != self.fil.d:
            raise RepresentacaoInvalida(f"{len(self.coords)} coordenadas para dimensão {self.fil.d}")
        if any(not c.certificado for c in self.coords):
            raise SerieNaoPsiZero("coordenada sem certificado ψ = 0")
        if self.fil.diagonal() is None:
            raise RepresentacaoInvalida("D(V) exige φ diagonal na base escolhida")

    @classmethod
    def de_medidas(cls, fil: FilteredPhiModule, prec: Precision,
                   medidas: Sequence[Dict[int, int]]) -> "DModuleElem":
        anel = anel_de(prec)
        return cls(fil, tuple(PsiZeroSeries.de_dict(anel, m) for m in medidas))

    @property
    def autovalores(self) -> List[Fraction]:
        return self.fil.diagonal()

    @property
    def p(self) -> int:
        return self.fil.p

    def e_zero(self) -> bool:
        return all(c.e_zero() for c in self.coords)

    def __add__(self, outro: "DModuleElem") -> "DModuleElem":
        return DModuleElem(self.fil, tuple(a + b for a, b in zip(self.coords, outro.coords)))

    def escalar(self, c: int) -> "DModuleElem":
        return DModuleElem(self.fil, tuple(a.escalar(c) for a in self.coords))

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, DModuleElem):
            return NotImplemented
        return all(a == b for a, b in zip(self.coords, outro.coords))

    __hash__ = None


@dataclass(frozen=True)
class TwistData:
    """Torção por e_k = base de D_cris(Q_p(k)) associada a ε."""
    k: int

    def inverso(self) -> "TwistData":
        return TwistData(-self.k)

    def compor(self, outro: "TwistData") -> "TwistData":
        return TwistData(self.k + outro.k)


def twist_delem(alpha: DModuleElem, j: int) -> DModuleElem:
    """α ⊗ e_j ∈ D(V(j)): coordenadas intactas, φ·p^{−j}."""
    return DModuleElem(alpha.fil.twist(j), alpha.coords)


def twist_class(c: HerrCocycle, j: int) -> HerrCocycle:
    """
    Tw_j: x ↦ x ⊗ ε^{⊗j} na base ε' ⊗ ε^{⊗j}.

    A coordenada y fica; o peso de γ sobe de j e x é resolvido de novo em
    (χ(γ_n)^{peso+j}γ_n − 1)x = (λφ − 1)y.
    """
    torcida = iwasawa_h1_class(c.y, c.n, c.prec, r=c.k - c.peso, lam=c.lam, k=c.k + j)
    return replace(torcida, normalizado=c.normalizado)


def derivada_torcida(alpha: DModuleElem) -> DModuleElem:
    """(∂ ⊗ e_1)α."""
    return DModuleElem(alpha.fil.twist(1), tuple(c.partial(1) for c in alpha.coords))


def exp_twist_iterate(alpha: DModuleElem, i: int) -> Tuple[int, DModuleElem]:
    """
    Lado direito de Exp_{V(i),h+i} = (−1)^i Tw ∘ Exp ∘ (∂^i ⊗ e_i): o sinal e (∂^i ⊗ e_i)α.

    Returns:
        ((−1)^i, elemento de D(V(i)))
    """
    if i < 0:
        raise ValueError("iterado exige i ≥ 0")
    resultado = alpha
    for _ in range(i):
        resultado = derivada_torcida(resultado)
    return (-1) ** i, resultado


# ============================================================
# Δ_k
# ============================================================

@dataclass
class DeltaValor:
    """Δ_k na componente i, com valor em Z/p^expoente (expoente = N: quociente livre)."""
    k: int
    componente: int
    expoente: int
    valor: int

    @property
    def nulo(self) -> bool:
        return self.valor == 0


def delta_map(alpha: DModuleElem, prec: Precision) -> List[DeltaValor]:
    """
    Δ_k(f) = (∂^k f)(0) mod (1 − p^kφ)D_cris, nos índices k ≥ 0 em que 1 − p^kφ
    não é invertível em alguma componente (μ_i = λp^{−k}, λ ≡ 1 mod p).

    Returns:
        Lista de DeltaValor; Δ(f) = 0 ⇔ todos nulos
    """
    _exigir_qp_fil(alpha.fil)
    p, N = prec.p, prec.N
    valores = []
    for i, mu in enumerate(alpha.autovalores):
        k = -_v(mu, p)
        if k < 0:
            continue
        obstrucao = 1 - mu * Fraction(p) ** k
        if obstrucao == 0:
            expoente = N
        else:
            v = _v(obstrucao, p)
            if v <= 0:
                continue
            expoente = min(v, N)
        valor = alpha.coords[i].partial(k).valor_em_zero().coefs[0] % p ** expoente
        valores.append(DeltaValor(k, i, expoente, valor))
    return valores


def delta_nulo(alpha: DModuleElem, prec: Precision) -> bool:
    return all(d.nulo for d in delta_map(alpha, prec))


# ============================================================
# (1 − φ)F = f
# ============================================================

@lru_cache(maxsize=None)
def _colunas_phi(p: int, L: int) -> Tuple[Tuple[int, ...], ...]:
    """Coluna j: coeficientes exatos de φ(X^j) = ((1+X)^p − 1)^j mod X^L."""
    base = [0] + [math.comb(p, i) for i in range(1, p + 1)]
    colunas = []
    potencia = [1] + [0] * (L - 1)
    for _ in range(L):
        colunas.append(tuple(potencia))
        nova = [0] * L
        for a, x in enumerate(potencia):
            if x:
                for b, y in enumerate(base):
                    if a + b >= L:
                        break
                    nova[a + b] += x * y
        potencia = nova
    return tuple(colunas)


def _serie_para_padics(s: TruncSeries, L: int) -> List[PAdicScalar]:
    p, N = s.anel.p, s.anel.N
    res = []
    for e in range(L):
        x = PAdicScalar.de_inteiro(p, s.coeficiente(e).coefs[0], N)
        res.append(x / p ** s.den if s.den else x)
    return res


def _padics_para_serie(S: AnelSeries, valores: Sequence[PAdicScalar], exata: bool = False) -> TruncSeries:
    p, mod = S.prec.p, S.prec.pN
    vals = [x.valuacao for x in valores if not x.e_zero()]
    den = max(0, -min(vals)) if vals else 0
    nums = [0 if x.e_zero() else (x.unidade * p ** (x.valuacao + den)) % mod for x in valores]
    return S.de_coefs(nums or [0], den=den, exata=exata)


def _resolver_triangular(rhs: Sequence[PAdicScalar], mu: Fraction, p: int, N: int) -> List[PAdicScalar]:
    """
    Substituição direta em (1 − μφ)F = rhs na base X^e (φ é triangular inferior,
    diagonal p^e). Pivô nulo: exige lado direito nulo e fixa F_e = 0.

    Raises:
        DeltaNaoNulo: sistema inconsistente no pivô nulo
    """
    L = len(rhs)
    colunas = _colunas_phi(p, L)
    F: List[PAdicScalar] = []
    for e in range(L):
        acc = rhs[e]
        for j in range(e):
            c = colunas[j][e]
            if c and not F[j].e_zero():
                acc = acc + F[j] * (mu * c)
        pivo = 1 - mu * p ** e
        if pivo == 0:
            if not acc.e_zero():
                raise DeltaNaoNulo(f"(1 − φ)F = f sem solução: obstrução em X^{e}")
            F.append(PAdicScalar.zero(p, N))
        else:
            F.append(acc / pivo)
    return F


@dataclass
class SolucaoPhi:
    """F com (1 − φ)F = f, uma série por componente (conhecida mod X^L)."""
    fil: FilteredPhiModule
    componentes: List[TruncSeries]
    prec: Precision

    def residuo(self, alpha: DModuleElem) -> List[TruncSeries]:
        """(1 − μ_i φ)F_i − f_i, por componente."""
        res = []
        for mu, F, f in zip(self.fil.diagonal(), self.componentes, alpha.coords):
            L = int(F.precisao_x)
            res.append(F - _vezes_racional(phi(F, self.prec), mu) - f.para_serie(L))
        return res

    def verificar(self, alpha: DModuleElem) -> bool:
        return all(r.e_zero() for r in self.residuo(alpha))


def _vezes_racional(s: TruncSeries, q: Fraction) -> TruncSeries:
    """q·s para q ∈ Q (potência de p negativa vai para den)."""
    q = Fraction(q)
    if q == 0:
        return s * 0
    p, mod = s.anel.p, s.anel.pN
    v = _v(q, p)
    u = q / Fraction(p) ** v
    unidade = (u.numerator * pow(u.denominator, -1, mod)) % mod
    res = s * unidade
    return res * p ** v if v >= 0 else res.dividir_por_p(-v)


def _iterar(f: TruncSeries, mu: Fraction, prec: Precision, S: AnelSeries) -> TruncSeries:
    """Ponto fixo F ← f + μφ(F), com a constante fixada por F(0)(1 − μ) = f(0)."""
    p, N = prec.p, prec.N
    if _v(mu, p) < 0:
        raise NaoConvergiu(f"F ← f + μφ(F) diverge para v_p(μ) = {_v(mu, p)}")
    f0 = _serie_para_padics(f, 1)[0]
    if mu == 1:
        if not f0.e_zero():
            raise DeltaNaoNulo("Δ_0(f) ≠ 0")
        constante = S.zero()
    else:
        constante = _padics_para_serie(S, [f0 / (1 - mu)], exata=True)
    g = f - _padics_para_serie(S, [f0], exata=True)
    F = g
    limite = N * f.comprimento
    for passo in range(limite):
        novo = g + _vezes_racional(phi(F, prec), mu)
        if novo == F:
            logger.debug("ponto fixo estabilizou em %d passos", passo + 1)
            return F + constante
        F = novo
    raise NaoConvergiu(f"sem estabilizar em {limite} passos")


def solve_one_minus_phi(alpha: DModuleElem, prec: Precision, metodo: str = "triangular") -> SolucaoPhi:
    """
    Resolve (1 − φ)F = f em cada componente (φ = μ_i·φ_série).

    Args:
        alpha: Elemento de D(V) com Δ(f) = 0
        prec: Precisão (F é calculada mod X^M)
        metodo: "triangular" (substituição direta) ou "iteracao" (ponto fixo)

    Returns:
        SolucaoPhi; F é única módulo D_cris^{φ=1} (componente fixada em zero)

    Raises:
        DeltaNaoNulo: Δ(f) ≠ 0
        NaoConvergiu: iteração sem estabilizar (ou divergente)
    """
    _exigir_qp_fil(alpha.fil)
    obstrucoes = [d for d in delta_map(alpha, prec) if not d.nulo]
    if obstrucoes:
        d = obstrucoes[0]
        raise DeltaNaoNulo(f"Δ_{d.k} ≠ 0 na componente {d.componente} (valor {d.valor} mod p^{d.expoente})")
    S = AnelSeries(prec)
    L = prec.M
    componentes = []
    for mu, f in zip(alpha.autovalores, alpha.coords):
        serie = f.para_serie(L)
        if metodo == "iteracao":
            componentes.append(_iterar(_estender_laurent(serie, L).truncar(L), mu, prec, S))
        elif metodo == "triangular":
            F = _resolver_triangular(_serie_para_padics(serie, L), mu, prec.p, prec.N)
            componentes.append(_padics_para_serie(S, F))
        else:
            raise ValueError(f"método desconhecido: {metodo}")
    return SolucaoPhi(alpha.fil, componentes, prec)


# ============================================================
# Ξ_{V,n}
# ============================================================

def xi_map(alpha: DModuleElem, n: int, prec: Precision) -> List[CycloScalar]:
    """
    Ξ_{V,n}(f) = p^{−n}(σ ⊗ φ)^{−n}(F)(ζ_{p^n} − 1), com (1 − φ)F = f.

    Raises:
        PrecisaoInsuficiente: M < N·[K_n:K] ou nenhum dígito após p^{−n}φ^{−n}
    """
    if n < 1:
        raise ValueError("Ξ definido para n ≥ 1")
    solucao = solve_one_minus_phi(alpha, prec)
    res = []
    for mu, F in zip(alpha.autovalores, solucao.componentes):
        valor = eval_at_level(F, n, prec)
        valor = valor * racional_em(Fraction(1, prec.p ** n) * mu ** (-n), valor.anel)
        if valor.precisao <= 0:
            raise PrecisaoInsuficiente(f"Ξ_{n} sem dígitos confiáveis", necessario=prec.N + valor.den)
        res.append(valor)
    return res


def _serie_exata(f: PsiZeroSeries, prec: Precision) -> TruncSeries:
    maior = max((a for a, _ in f.medida), default=0)
    return f.para_serie(max(maior + 1, prec.M))


def xi_telescopado(alpha: DModuleElem, n: int, prec: Precision) -> List[CycloScalar]:
    """
    p^{−n}(Σ_{k=1}^n (σ ⊗ φ)^{−k} f(ζ_{p^k} − 1) + (1 − φ)^{−1} f(0)).

    Na componente com μ = 1 o último termo é a constante fixada (zero).
    """
    _exigir_qp_fil(alpha.fil)
    p = prec.p
    anel = anel_ciclotomico(p, prec.N, 1, n)
    res = []
    for mu, f in zip(alpha.autovalores, alpha.coords):
        serie = _serie_exata(f, prec)
        total = anel.zero()
        for k in range(1, n + 1):
            total = total + eval_at_level(serie, k, prec).mergulhar(n) * racional_em(mu ** (-k), anel)
        f0 = f.valor_em_zero().coefs[0]
        if mu == 1:
            if f0 % prec.pN:
                raise DeltaNaoNulo("Δ_0(f) ≠ 0")
        else:
            total = total + racional_em(Fraction(f0) / (1 - mu), anel)
        res.append(total.dividir_por_p(n))
    return res


def xi_kernel_element(d: Sequence[int], fil: FilteredPhiModule, n: int, prec: Precision) -> DModuleElem:
    """d ⊗ (γ_n − 1)(1 + X) = d ⊗ ((1+X)^{χ(γ_n)} − (1+X))."""
    a = chi_gamma_n(n, prec.p)
    return DModuleElem.de_medidas(fil, prec, [{a: di, 1: -di} for di in d])


@dataclass
class CokerValor:
    """(1 − φ)Tr_{K_n/K}(α) na componente i, em D_cris/(1 − p^{−1}φ^{−1}) ≅ Z/p^expoente."""
    componente: int
    expoente: int
    valor: PAdicScalar


def coker_xi_map(valores: Sequence[CycloScalar], fil: FilteredPhiModule, prec: Precision) -> List[CokerValor]:
    """α ↦ (1 − φ)Tr_{K_n/K}(α) no quociente D_cris/(1 − p^{−1}φ^{−1})D_cris."""
    _exigir_qp_fil(fil)
    p, N = prec.p, prec.N
    res = []
    for i, (mu, alpha) in enumerate(zip(fil.diagonal(), valores)):
        traco = alpha.traco()
        x = PAdicScalar.de_inteiro(p, traco.coeficiente(0).coefs[0], N)
        if traco.den:
            x = x / p ** traco.den
        imagem = x * (1 - mu)
        quociente = 1 - 1 / (p * mu)
        expoente = N if quociente == 0 else max(0, min(_v(quociente, p), N))
        res.append(CokerValor(i, expoente, imagem))
    return res


@dataclass
class CokerIndice:
    """Posto do quociente, posto da imagem e índices (calculado × fórmula) por componente."""
    componente: int
    posto_quociente: int
    posto_imagem: int
    indice: Optional[int]
    indice_esperado: Optional[int]

    @property
    def confere(self) -> bool:
        return self.posto_quociente == self.posto_imagem and self.indice == self.indice_esperado


def coker_xi_posto(fil: FilteredPhiModule, n: int, prec: Precision) -> List[CokerIndice]:
    """
    Imagem de O_{K_n} ⊗ M por (1 − φ)Tr_{K_n/K}: gerada por p^{v}, v = min v_p(Tr(z^j))
    + v_p(1 − μ); a fórmula fechada é Tr(O_{K_n}) = p^{n−1}Z_p.
    """
    _exigir_qp_fil(fil)
    p = prec.p
    tracos = anel_ciclotomico(p, prec.N, 1, n).tracos_potencias()
    v_traco = min(valuacao_p(t, p) for t in tracos if t)
    res = []
    for i, mu in enumerate(fil.diagonal()):
        posto_q = 1 if mu == Fraction(1, p) else 0
        if mu == 1:
            res.append(CokerIndice(i, posto_q, 0, None, None))
            continue
        v_fator = _v(1 - mu, p)
        posto_i = posto_q
        res.append(CokerIndice(i, posto_q, posto_i, v_traco + v_fator, (n - 1) + v_fator))
    return res


# ============================================================
# E_{k,n}
# ============================================================

def _pochhammer(j: int, k: int) -> int:
    """(1 − k)(2 − k)⋯(j − 1 − k)."""
    res = 1
    for m in range(1, j):
        res *= m - k
    return res


@dataclass(frozen=True, eq=False)
class ESerie:
    """
    E_{k,n}(f) = Σ_j C_j p^{n(j−1)} ∂^{−j}f(X_n) / t^j, C_j = (1−k)⋯(j−1−k).

    termos: (j, C_j, ∂^{−j}f) com p^{n(j−1)}C_j ≢ 0 mod p^N.
    """
    k: int
    n: int
    prec: Precision
    termos: Tuple[Tuple[int, int, PsiZeroSeries], ...]

    def escalar(self, j: int) -> int:
        """p^{n(j−1)}·C_j mod p^N."""
        for jj, c, _ in self.termos:
            if jj == j:
                return (self.prec.p ** (self.n * (j - 1)) * c) % self.prec.pN
        return 0

    @property
    def polo_t(self) -> int:
        return max((j for j, _, _ in self.termos), default=0)

    def e_zero(self) -> bool:
        return not self.termos

    def __eq__(self, outro) -> bool:
        if not isinstance(outro, ESerie):
            return NotImplemented
        js = {j for j, _, _ in self.termos} | {j for j, _, _ in outro.termos}
        series = {j: h for j, _, h in self.termos}
        series_o = {j: h for j, _, h in outro.termos}
        return all(self.escalar(j) == outro.escalar(j) and series.get(j) == series_o.get(j) for j in js)

    __hash__ = None

    def para_tpolo(self, L: Optional[int] = None) -> TPoloSerie:
        """
        Modelo reescalado: p^{n(j−1)}/t^j = p^{−n}/t_n^j, logo
        E = t_n^{−J}·p^{−n}Σ_j C_j ∂^{−j}f(X_n)·t_n^{J−j}.
        """
        S = AnelSeries(self.prec)
        L = L or self.prec.M
        J = self.polo_t
        if not self.termos:
            return TPoloSerie(S.zero(), 0)
        t = serie_t(S.anel, L)
        total = S.zero()
        for j, c, h in self.termos:
            total = total + h.para_serie(L) * c * t ** (J - j)
        return TPoloSerie(total.dividir_por_p(self.n), J)


def e_series(f: PsiZeroSeries, k: int, n: int, prec: Precision) -> ESerie:
    """
    Série E_{k,n}(f) truncada em J_max.

    Para k ≥ 1 a soma termina em j = k (C_j = 0 depois); para k ≤ 0 a cauda
    começa com p^{nJ_max}, que precisa ser ≡ 0 mod p^N.

    Raises:
        PrecisaoInsuficiente: J_max insuficiente (necessario = J exigido)
    """
    J = prec.J_max
    if k <= 0 and n * J < prec.N:
        raise PrecisaoInsuficiente(f"E_{{{k},{n}}} exige J_max ≥ {-(-prec.N // n)}",
                                   necessario=-(-prec.N // n))
    if k >= 1 and J < k:
        raise PrecisaoInsuficiente(f"E_{{{k},{n}}} exige J_max ≥ {k}", necessario=k)
    termos = []
    if not f.e_zero():
        for j in range(1, J + 1):
            c = _pochhammer(j, k)
            if c == 0:
                break
            if (prec.p ** (n * (j - 1)) * c) % prec.pN:
                termos.append((j, c, f.partial(-j)))
    return ESerie(k, n, prec, tuple(termos))


def residuo_e_series(f: PsiZeroSeries, g: Dict[int, int], k: int, m: int, prec: Precision) -> PAdicScalar:
    """
    res(E_{k,1}(f)·t^m·g(X_1) dt), com g(X_1) = Σ_b d_b (1+X_1)^b.

    Como (1+X_1)^s = exp(st/p), o termo j de E só contribui quando q = j − m > 0,
    com C_j·p^m/(q−1)!·Σ_{a,b} c_a a^{−j} d_b (a+b)^{q−1}.

    Raises:
        RepresentacaoInvalida: k < 1 ou K ≠ Q_p
    """
    if k < 1:
        raise RepresentacaoInvalida("resíduo de E_{k,1} implementado para k ≥ 1")
    if f.anel.f != 1:
        raise RepresentacaoInvalida("resíduo de E_{k,1} implementado para K = Q_p")
    p, N, mod = prec.p, prec.N, prec.pN
    total = PAdicScalar.zero(p, N)
    for j in range(m + 1, k + 1):
        q = j - m
        soma = sum(c.coefs[0] * d * pow(a + b, q - 1, mod)
                   for a, c in f.partial(-j).como_dict().items() for b, d in g.items())
        termo = PAdicScalar.de_inteiro(p, _pochhammer(j, k) * p ** m * soma, N)
        total = total + termo / math.factorial(q - 1)
    return total


def cota_residuo(k: int, m: int, p: int) -> Optional[int]:
    """v_p(p^m·Γ*(k)/Γ*(k−m)) = m + v_p(Π_{i=1}^m (k − i)); None quando o produto é nulo."""
    produto = _produto_kms(k, m)
    if produto == 0:
        return None
    return m + valuacao_p(abs(produto), p)


def congruencia_residuo(f: PsiZeroSeries, g: Dict[int, int], k: int, m: int, prec: Precision) -> bool:
    """O resíduo de E_{k,1} cai em p^m·Γ*(k)/Γ*(k−m) (e some quando k ∈ [1, m])."""
    valor = residuo_e_series(f, g, k, m, prec)
    cota = cota_residuo(k, m, prec.p)
    if valor.e_zero():
        return True
    if cota is None:
        logger.warning("resíduo de E_{%d,1} não nulo com Π(k − i) = 0: %s", k, valor)
        return False
    return valor.valuacao >= cota


# ============================================================
# Ω e Σ
# ============================================================

def _potencia_t_sobre_x(e: int, grau: int) -> List[Fraction]:
    """Coeficientes de (t/X)^e até X^grau (e inteiro qualquer)."""
    base = [Fraction((-1) ** m, m + 1) for m in range(grau + 1)]
    if e < 0:
        inversa = [Fraction(1)]
        for m in range(1, grau + 1):
            inversa.append(-sum(base[i] * inversa[m - i] for i in range(1, m + 1)))
        base, e = inversa, -e
    res = [Fraction(1)] + [Fraction(0)] * grau
    for _ in range(e):
        res = [sum(res[i] * base[m - i] for i in range(m + 1)) for m in range(grau + 1)]
    return res


def serie_racional(S: AnelSeries, coefs: Sequence[Fraction], menor_expoente: int = 0) -> TruncSeries:
    """Polinômio de Laurent exato Σ c_i X^{menor + i} com c_i ∈ Q (den = maior p-denominador)."""
    p, mod = S.prec.p, S.prec.pN
    vals = [_v(c, p) for c in coefs if c]
    den = max(0, -min(vals)) if vals else 0
    nums = []
    for c in coefs:
        x = Fraction(c) * Fraction(p) ** den
        nums.append((x.numerator * pow(x.denominator, -1, mod)) % mod if x else 0)
    if menor_expoente > 0:
        nums = [0] * menor_expoente + nums
    return S.de_coefs(nums or [0], polo=max(0, -menor_expoente), exata=True, den=den)


def _dados_posto_um(fil: FilteredPhiModule, prec: Precision) -> Tuple[int, int]:
    """(r, λ) com φ = λp^r, T = Z_p(−r) ⊗ ur(λ)."""
    _exigir_qp_fil(fil)
    if fil.d != 1:
        raise RepresentacaoInvalida("Ω/Σ implementados em posto 1")
    r = fil.saltos[0]
    if r < 0:
        raise RepresentacaoInvalida(f"representação não positiva (salto {r})")
    lam = fil.phi[0][0] / Fraction(prec.p) ** r
    if lam.denominator != 1 or lam.numerator % prec.p == 0:
        raise RepresentacaoInvalida(f"φ = {fil.phi[0][0]} não é λp^{r} com λ unidade inteira")
    return r, lam.numerator


def _classe_nula(prec: Precision, n: int, k: int, r: int, lam: int) -> HerrCocycle:
    S = AnelSeries(prec)
    return HerrCocycle(prec, n, k, S.zero(), S.zero(), lam, k - r, True)


def e_cociclo_x(alpha: DModuleElem, k: int, n: int, prec: Precision) -> TruncSeries:
    """
    𝓔_{T,k,n}(α) na base ε' do modelo reescalado:
    p^{−n}Σ_j C_j ∂^{−j}f · X^r·[X^{−j}(t_n/X)^{r−j}]_{≤0},
    com a série a/t^j truncada módulo X (só sobram os termos de grau ≤ 0).
    """
    r, _ = _dados_posto_um(alpha.fil, prec)
    S = AnelSeries(prec)
    f = alpha.coords[0]
    E = e_series(f, k, n, prec)
    x = S.zero()
    for j, c, h in E.termos:
        fator = serie_racional(S, _potencia_t_sobre_x(r - j, j), r - j)
        x = x + _serie_exata(h, prec) * fator * c
    return x.dividir_por_p(n)


def _resolver_lambda_phi(g: TruncSeries, lam: int, prec: Precision) -> TruncSeries:
    """y ∈ A^+ com (λφ − 1)y = g (g sem polo), por substituição direta."""
    S = AnelSeries(prec)
    g = g.normalizar()
    if g.polo > 0:
        raise PrecisaoInsuficiente("(cγ_n − 1)𝓔 com polo residual", necessario=prec.N + g.den + 1)
    L = int(min(g.precisao_x, prec.M))
    rhs = [-x for x in _serie_para_padics(g, L)]
    return _padics_para_serie(S, _resolver_triangular(rhs, Fraction(lam), prec.p, prec.N))


def omega_map(alpha: DModuleElem, k: int, n: int, prec: Precision) -> HerrCocycle:
    """
    Ω_{T,k,n}(α) = (𝓔, 𝓕) com (1 − φ)𝓕 = (1 − γ_n)𝓔, no modelo reescalado
    (normalizado=True) da torção T(k), T = Z_p(−r) ⊗ ur(λ).

    Args:
        alpha: Elemento de D(T) em posto 1
        k: Torção (k ≥ 1: E_{k,n} é soma finita)
        n: Nível

    Raises:
        RepresentacaoInvalida: posto ≠ 1, representação não positiva, k < 1 ou V^{H_K} ≠ 0
        PrecisaoInsuficiente: polos que não cancelam à precisão de trabalho
    """
    r, lam = _dados_posto_um(alpha.fil, prec)
    if alpha.e_zero():
        return _classe_nula(prec, n, k, r, lam)
    if k < 1:
        raise RepresentacaoInvalida("Ω implementado para k ≥ 1")
    if r == 0 and lam == 1:
        raise RepresentacaoInvalida("V^{H_K} ≠ 0: use sigma_map")
    peso = k - r
    a = chi_gamma_n(n, prec.p)
    c = pow(a, peso, prec.pN)
    x = e_cociclo_x(alpha, k, n, prec)
    estendida = _estender_laurent(x, prec.M)
    g = gamma_act(a, estendida, prec) * c - estendida
    y = _resolver_lambda_phi(g, lam, prec)
    logger.debug("Ω(α): k=%d n=%d, den(x)=%d den(y)=%d", k, n, x.den, y.den)
    return HerrCocycle(prec, n, k, x, y, lam, peso, True)


def sigma_map(alpha: TruncSeries, fil: FilteredPhiModule, k: int, n: int, prec: Precision) -> HerrCocycle:
    """
    Σ_{T,k,n}(α) = Ω_{T,k,n}((1 − φ)α) para α ∈ O_K[[X]] ⊗ M com ψ(α) = α.

    Raises:
        SerieNaoPsiZero: (1 − φ)α sem ψ = 0 (α não certificado)
        PrecisaoInsuficiente: α não é polinômio exato
    """
    r, lam = _dados_posto_um(fil, prec)
    mu = fil.phi[0][0]
    f = alpha - _vezes_racional(phi(alpha, prec), mu)
    medida = PsiZeroSeries.de_serie(f.normalizar())
    if medida.e_zero():
        return _classe_nula(prec, n, k, r, lam)
    return omega_map(DModuleElem(fil, (medida,)), k, n, prec)


def _cociclo_racional(c: HerrCocycle, q: Fraction) -> HerrCocycle:
    return HerrCocycle(c.prec, c.n, c.k, _vezes_racional(c.x, q), _vezes_racional(c.y, q),
                       c.lam, c.peso, c.normalizado)


def bk_exp_finite(alpha: DModuleElem, k: int, n: int, prec: Precision) -> HerrCocycle:
    """
    exp_{V(k),K_n} em nível finito: Ω_{T,k,n}(α)·(−1)^k/(k−1)!, com α uma pré-imagem
    por Ξ do vetor de D_dR desejado.

    Raises:
        RepresentacaoInvalida: k < 1 ou n < 1
    """
    if k < 1 or n < 1:
        raise RepresentacaoInvalida("exponencial em nível finito exige k ≥ 1 e n ≥ 1")
    fator = Fraction((-1) ** k, math.factorial(k - 1))
    if _v(fator, prec.p) < 0:
        logger.info("(k−1)! consome %d dígitos", -_v(fator, prec.p))
    return _cociclo_racional(omega_map(alpha, k, n, prec), fator)


# ============================================================
# Ω nas coinvariantes de Γ_1
# ============================================================

@dataclass
class OmegaIndice:
    """
    Termo de X^{r−k} em 𝓔 de Ω_{T,k,n}, para o gerador de Wach e para (1+X).

    indice: v_p do índice de Ω(Λ·g) em Ω(Λ·(1+X)), pela forma de Smith dos
    termos dominantes das translações por γ_1; valor: razão dos termos dominantes.
    """
    k: int
    n: int
    indice: int
    valor: PAdicScalar


@dataclass
class Coinvariantes:
    """
    Ω nas coinvariantes de Γ_1 torcidas por χ^k, por componente δ_i.

    fonte: "omega" (lido dos cociclos Ω) ou "wach" (gerador de Wach avaliado,
    quando k − r < 1 ou V^{H_K} ≠ 0); confere: o valor de Ω coincide com o
    do gerador de Wach em toda componente.
    """
    k: int
    valores: List[PAdicScalar]
    fonte: str
    indice: Optional[int] = None
    confere: Optional[bool] = None


def _termo_dominante(medida: PsiZeroSeries, fil: FilteredPhiModule, k: int, n: int,
                     prec: Precision) -> Tuple[int, int]:
    """(numerador mod p^N, den) do coeficiente de X^{r−k} em 𝓔 de Ω_{T,k,n}(medida)."""
    e = fil.saltos[0] - k
    x = omega_map(DModuleElem(fil, (medida,)), k, n, prec).x.normalizar()
    if x.e_zero():
        return 0, 0
    if x.valuacao_x() < e:
        raise PrecisaoInsuficiente(f"𝓔 com termo abaixo de X^{e}", necessario=prec.N + x.den + 1)
    return x.coeficiente(e).coefs[0] % prec.pN, x.den


def _valuacao_smith(termos: Sequence[Tuple[int, int]], p: int, N: int) -> int:
    """v_p do divisor elementar de uma linha de números p^{−den}·num."""
    D = max(den for _, den in termos)
    linha = [num * p ** (D - den) for num, den in termos]
    v = smith([linha], p, N).valuacoes[0]
    if v >= N:
        raise PrecisaoInsuficiente("Ω nulo nas coinvariantes", necessario=N + D + 1)
    return v - D


def _escalar_de(termo: Tuple[int, int], p: int, N: int) -> PAdicScalar:
    num, den = termo
    return PAdicScalar.de_inteiro(p, num, N) / p ** den


def omega_lattice_index(fil: FilteredPhiModule, medida: PsiZeroSeries, k: int, n: int,
                        prec: Precision) -> OmegaIndice:
    """
    Índice de Ω_{T,k,n}(Λ·medida) em Ω_{T,k,n}(Λ·(1+X)) nas coinvariantes de Γ_1.

    O termo de X^{r−k} em 𝓔 vale p^{−n}C_k·∂^{−k}f(0), e ∂^{−k}(Σ c_a(1+X)^a)(0)
    = Σ c_a a^{−k}: a razão contra (1+X) é a medida avaliada em χ^{−k}.

    Raises:
        RepresentacaoInvalida: k < 1 ou V^{H_K} ≠ 0
        PrecisaoInsuficiente: termo de (1+X) ausente mod p^N ou Ω nulo
    """
    p, N = prec.p, prec.N
    b = 1 + p
    unidade = PsiZeroSeries.de_dict(medida.anel, {1: 1})
    base = [_termo_dominante(m, fil, k, n, prec) for m in (unidade, unidade.gamma(b))]
    if base[0][0] % p ** N == 0:
        raise PrecisaoInsuficiente(f"p^{{n(k−1)}}C_k some mod p^{N} (k={k})", necessario=N + n * k)
    gerados = [_termo_dominante(m, fil, k, n, prec) for m in (medida, medida.gamma(b))]
    indice = _valuacao_smith(gerados, p, N) - _valuacao_smith(base, p, N)
    valor = _escalar_de(gerados[0], p, N) / _escalar_de(base[0], p, N)
    logger.debug("índice de Ω: k=%d n=%d índice=%d", k, n, indice)
    return OmegaIndice(k, n, indice, valor)


def omega_coinvariantes(fil: FilteredPhiModule, k: int, prec: Precision, n: int = 1) -> Coinvariantes:
    """
    Ω do gerador de (φ*N)^{ψ=0} nas coinvariantes torcidas por χ^k.

    O gerador sai das matrizes de N(T) (módulo de Wach embutido de salto r,
    com O_K ⊗ Z_p quando f > 1). Para k − r ≥ 1 o valor é lido dos cociclos
    Ω_{T,k−r,n} e comparado ao gerador avaliado em χ^{−k}; para k ≤ r, ou
    V^{H_K} ≠ 0, só a avaliação do gerador está disponível.

    Raises:
        RepresentacaoInvalida: posto ≠ 1, salto negativo ou λ não inteiro
    """
    p = prec.p
    if fil.d != 1:
        raise RepresentacaoInvalida("Ω nas coinvariantes implementado em posto 1")
    r = fil.saltos[0]
    if r < 0:
        raise RepresentacaoInvalida("representação precisa ser positiva")
    lam = fil.phi[0][0] / Fraction(p) ** r
    if lam.denominator != 1 or lam.numerator % p == 0:
        raise RepresentacaoInvalida(f"φ = {fil.phi[0][0]} não é λp^{r} com λ unidade inteira")
    base = prec.com(f=1)
    bloco = gerador_lambda_wach(tate_twist_wach(r, lam.numerator, base), 0)
    pelo_gerador = avaliar_torcao(bloco.gerador, k, base)
    kk = k - r
    if kk < 1 or (r == 0 and lam == 1):
        return Coinvariantes(k, pelo_gerador, "wach")
    idx = omega_lattice_index(FilteredPhiModule.tate(p, r, lam.numerator), bloco.medida, kk, n, base)
    confere = all(v == idx.valor for v in pelo_gerador)
    if not confere:
        logger.warning("Ω e gerador de Wach divergem em χ^%d: %s contra %s", k, idx.valor, pelo_gerador)
    return Coinvariantes(k, [idx.valor] * (p - 1), "omega", idx.indice, confere)


# ============================================================
# Emparelhamento de classes Ω
# ============================================================

def _exigir_dual(alpha: DModuleElem, beta: DModuleElem) -> int:
    """h com α ∈ D(T), T de salto h, e β ∈ D(T*(−h)): salto 0 e φ_α·φ_β = p^h."""
    for elem in (alpha, beta):
        _exigir_qp_fil(elem.fil)
        if elem.fil.d != 1:
            raise RepresentacaoInvalida("emparelhamento de Ω implementado em posto 1")
    h = alpha.fil.saltos[0]
    if h < 0 or beta.fil.saltos != [0] or alpha.fil.phi[0][0] * beta.fil.phi[0][0] != Fraction(alpha.p) ** h:
        raise RepresentacaoInvalida("β precisa estar em D(T*(−h))")
    return h


def pareamento_residuo(alpha: DModuleElem, beta: DModuleElem, k: int, n: int, prec: Precision) -> PAdicScalar:
    """
    (−1)^k p^{nh} Π_{m=1}^h (k − m)·Tr_{K/Q_p}(∂^{−k}α(0)·∂^{k−h−1}β(0)).

    O resíduo em X_n de (1/X_n)·G·dX_n/(1+X_n) é G(0), com [d, d*] = 1.
    """
    h = _exigir_dual(alpha, beta)
    p, N = prec.p, prec.N
    produto = (-1) ** k * _produto_kms(k, h)
    a0 = alpha.coords[0].partial(-k).valor_em_zero()
    b0 = beta.coords[0].partial(k - h - 1).valor_em_zero()
    return PAdicScalar.de_inteiro(p, produto * (a0 * b0).traco(), N) * p ** (n * h)


def cota_pareamento(k: int, h: int, n: int, p: int) -> Optional[int]:
    """v_p(p^{nh}·Γ*(k)/Γ*(k−h)); None quando k ∈ [1, h] (o emparelhamento some)."""
    produto = _produto_kms(k, h)
    if produto == 0:
        return None
    return n * h + valuacao_p(abs(produto), p)


def pareamento_omega(alpha: DModuleElem, beta: DModuleElem, k: int, n: int, prec: Precision) -> GroupRingElem:
    """
    ⟨Ω_{T,k,n}(α), Ω_{T*(−h),h−k+1,n}(β)⟩ pelo produto cup de Herr.

    As duas torções precisam ser ≥ 1, o que restringe k a [1, h].

    Raises:
        RepresentacaoInvalida: β fora de D(T*(−h)) ou k fora de [1, h]
    """
    h = _exigir_dual(alpha, beta)
    if not 1 <= k <= h:
        raise RepresentacaoInvalida(f"Ω dos dois lados exige 1 ≤ k ≤ h (k={k}, h={h})")
    c1 = omega_map(alpha, k, n, prec)
    c2 = omega_map(beta, h - k + 1, n, prec)
    logger.debug("⟨Ω, Ω⟩: k=%d h=%d n=%d", k, h, n)
    return equivariant_pairing(c1, c2)
