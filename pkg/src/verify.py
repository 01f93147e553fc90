#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Orquestração das suítes de verificação pela linha de comando.

Exemplo:
    python verify.py --p 5 --f 1 --rep tate:-1 --n 2 --prec-p 8 --prec-x 64 \
        --suite all --seed 7 --out report.jsonl

Códigos de saída: 0 se todas as checagens selecionadas passam, 2 se alguma
falha (ou dá erro), 3 em erro de configuração.
"""

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from config import Precision, precisao_padrao
from epsilon import caracteres, epsilon_abelian, gauss_sum, racional_em, tate_integral_oracle
from erros import ConfiguracaoInvalida, IwasawaErro, RepresentacaoInvalida, VerificacaoDesconhecida
from herr import _padic_em, cohomology, cup_nao_degenerado, dualidade_postos, herr_complex
from lambda_descent import (
    CharIdeal, c_iw_check, char_ideal_tate, congruente_mod_omega, ell_zero_expansao,
    indices_dualidade, kappa_oraculo, omega_det_smith,
)
from log_utils import banner, log_aviso, log_erro, log_info, log_ok
from perrin_riou import (
    DModuleElem, coker_xi_posto, congruencia_residuo, cota_pareamento, delta_map, omega_coinvariantes,
    omega_map, pareamento_omega, pareamento_residuo, residuo_e_series, solve_one_minus_phi,
    xi_kernel_element, xi_map, xi_telescopado,
)
from relatorio import ERRO, FALHOU, NAO_APLICAVEL, PASSOU, RunReport
from ring_tower import anel_ciclotomico, anel_de, teichmuller_int
from series_phigamma import AnelSeries, PsiZeroSeries, eval_at_level, gamma_act, partial, phi, psi, residue_dlog
from wach import (
    FilteredPhiModule, WachModule, dcris_from_wach, gerador_lambda_wach, soma_direta, tate_twist_wach,
    validate_wach, wach_de_matrizes, wach_quotient_char_ideal,
)

SUITES = ["ring", "series", "wach", "herr", "perrin-riou", "epsilon", "lambda", "c-iw"]

EXIT_OK = 0
EXIT_FALHA = 2
EXIT_CONFIG = 3


# ============================================================
# Representações
# ============================================================

@dataclass
class Representacao:
    """
    Representação cristalina escolhida na linha de comando.

    blocos: lista (r, λ) de torções Z_p(−r) ⊗ ur(λ) quando a representação é soma delas;
    wach_bruto: módulo de Wach lido de um arquivo raw.
    """
    descricao: str
    fil: FilteredPhiModule
    blocos: Optional[List[Tuple[int, int]]] = None
    wach_bruto: Optional[WachModule] = None

    def wach(self, prec: Precision) -> WachModule:
        """N(T) na precisão pedida (só para representações positivas)."""
        if self.wach_bruto is not None:
            return self.wach_bruto
        if self.blocos is None or any(r < 0 for r, _ in self.blocos):
            raise RepresentacaoInvalida(f"{self.descricao}: sem módulo de Wach embutido (pesos negativos)")
        W = None
        for r, lam in self.blocos:
            atual = tate_twist_wach(r, lam, prec)
            W = atual if W is None else soma_direta(W, atual)
        return W

    @property
    def posto_um(self) -> bool:
        return self.fil.d == 1

    @property
    def salto_maximo(self) -> int:
        return self.fil.salto_maximo()


def _digitos_base_p(texto: str, p: int) -> int:
    """λ escrito em base p, dígito mais significativo primeiro."""
    valor = 0
    for c in texto.strip():
        d = int(c, 36)
        if d >= p:
            raise ConfiguracaoInvalida(f"dígito {c!r} fora da base {p}")
        valor = valor * p + d
    if valor % p == 0:
        raise ConfiguracaoInvalida(f"λ = {valor} não é unidade")
    return valor


def _dividir_argumentos(texto: str) -> List[str]:
    """Separa 'a,b' no nível zero de parênteses."""
    partes, nivel, atual = [], 0, []
    for c in texto:
        if c == "(":
            nivel += 1
        elif c == ")":
            nivel -= 1
        if c == "," and nivel == 0:
            partes.append("".join(atual))
            atual = []
        else:
            atual.append(c)
    partes.append("".join(atual))
    return [p.strip() for p in partes]


def _ler_raw(caminho: str, prec: Precision) -> Representacao:
    """
    Arquivo JSON com chave kind:
      - "tate": r, lambda
      - "filtrado": phi (matriz de racionais em texto), r (lista de saltos)
      - "wach": phi, gamma, delta (matrizes de listas de coeficientes em X)
    """
    try:
        with open(caminho, "r", encoding="utf-8") as fh:
            dados = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfiguracaoInvalida(f"raw:{caminho}: {e}")
    tipo = dados.get("kind")
    p, f = prec.p, prec.f
    if tipo == "tate":
        r, lam = int(dados["r"]), int(dados.get("lambda", 1))
        return Representacao(f"raw:{caminho}", FilteredPhiModule.tate(p, r, lam, f), [(r, lam)])
    if tipo == "filtrado":
        phi_m = [[Fraction(x) for x in linha] for linha in dados["phi"]]
        return Representacao(f"raw:{caminho}", FilteredPhiModule(p, phi_m, list(dados["r"]), f))
    if tipo == "wach":
        W = wach_de_matrizes(prec, dados["phi"], dados["gamma"], dados.get("delta"))
        return Representacao(f"raw:{caminho}", dcris_from_wach(W), None, W)
    raise ConfiguracaoInvalida(f"raw:{caminho}: kind desconhecido {tipo!r}")


def parse_representacao(spec: str, prec: Precision) -> Representacao:
    """
    Gramática:
      tate:<j>[*unramified:<λ em base p>]   Z_p(j) ⊗ ur(λ)
      sum(<spec>,<spec>)                     soma direta
      raw:<caminho>                          arquivo JSON

    Raises:
        ConfiguracaoInvalida: especificação mal formada
    """
    spec = spec.strip()
    p, f = prec.p, prec.f
    if spec.startswith("sum(") and spec.endswith(")"):
        partes = _dividir_argumentos(spec[4:-1])
        if len(partes) < 2:
            raise ConfiguracaoInvalida(f"{spec}: sum exige ao menos duas parcelas")
        reps = [parse_representacao(parte, prec) for parte in partes]
        fil = reps[0].fil
        for rep in reps[1:]:
            fil = fil.soma(rep.fil)
        blocos = None
        if all(rep.blocos is not None for rep in reps):
            blocos = [b for rep in reps for b in rep.blocos]
        return Representacao(spec, fil, blocos)
    if spec.startswith("raw:"):
        return _ler_raw(spec[4:], prec)
    if spec.startswith("tate:"):
        corpo = spec[5:]
        lam = 1
        if "*" in corpo:
            corpo, resto = corpo.split("*", 1)
            if not resto.startswith("unramified:"):
                raise ConfiguracaoInvalida(f"{spec}: esperado '*unramified:<dígitos>'")
            lam = _digitos_base_p(resto[len("unramified:"):], p)
        try:
            j = int(corpo)
        except ValueError:
            raise ConfiguracaoInvalida(f"{spec}: torção {corpo!r} não é inteira")
        return Representacao(spec, FilteredPhiModule.tate(p, -j, lam, f), [(-j, lam)])
    raise ConfiguracaoInvalida(f"representação desconhecida: {spec!r}")


# ============================================================
# Configuração da execução
# ============================================================

@dataclass
class RunConfig:
    prec: Precision
    rep: str = "tate:-1"
    suites: List[str] = field(default_factory=lambda: list(SUITES))
    n: int = 1
    seed: int = 0
    saida: Optional[str] = None
    verbose: bool = True

    def validar(self):
        desconhecidas = [s for s in self.suites if s not in SUITES]
        if desconhecidas:
            raise ConfiguracaoInvalida(f"suítes desconhecidas: {', '.join(desconhecidas)}")
        if self.n < 1:
            raise ConfiguracaoInvalida("nível n precisa ser ≥ 1")
        if self.n > self.prec.n_max:
            raise ConfiguracaoInvalida(f"n={self.n} > n_max={self.prec.n_max}")

    def como_dict(self) -> Dict[str, Any]:
        prec = self.prec
        return {
            "p": prec.p, "f": prec.f, "N": prec.N, "M": prec.M, "J_max": prec.J_max,
            "M_lambda": prec.M_lambda, "n": self.n, "rep": self.rep, "suites": self.suites,
            "seed": self.seed,
        }


@dataclass
class Contexto:
    config: RunConfig
    rep: Representacao
    rng: random.Random

    @property
    def prec(self) -> Precision:
        return self.config.prec

    @property
    def p(self) -> int:
        return self.prec.p

    @property
    def n(self) -> int:
        return self.config.n


# ============================================================
# Registro de checagens
# ============================================================

@dataclass
class Resultado:
    esperado: Any
    calculado: Any
    passou: bool
    precisao: Optional[int] = None
    entradas: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class Verificacao:
    check_id: str
    suite: str
    ancora: str
    formula: str
    funcao: Callable[[Contexto], Resultado]


REGISTRO: Dict[str, Verificacao] = {}


def verificacao(check_id: str, suite: str, ancora: str, formula: str):
    """Decorador que registra uma checagem."""
    def registrar(funcao: Callable[[Contexto], Resultado]) -> Callable[[Contexto], Resultado]:
        REGISTRO[check_id] = Verificacao(check_id, suite, ancora, formula, funcao)
        return funcao
    return registrar


def _todas(valores) -> Resultado:
    valores = list(valores)
    return Resultado(True, all(valores), all(valores))


# ----- ring

@verificacao("ring-teichmuller", "ring", "levantamento de Teichmüller",
             "ω(a)^{p−1} = 1 e ω(a) ≡ a mod p para a = 1, …, p−1")
def _check_teichmuller(ctx: Contexto) -> Resultado:
    p, N = ctx.p, ctx.prec.N
    mod = p ** N
    ws = [teichmuller_int(a, p, N) for a in range(1, p)]
    return _todas(pow(w, p - 1, mod) == 1 and w % p == a for a, w in zip(range(1, p), ws))


@verificacao("ring-frobenius", "ring", "Frobenius em O_K",
             "σ^f = id e σ(xy) = σ(x)σ(y) em elementos aleatórios")
def _check_frobenius(ctx: Contexto) -> Resultado:
    anel = anel_de(ctx.prec)
    resultados = []
    for _ in range(5):
        x = anel.elemento([ctx.rng.randrange(anel.pN) for _ in range(anel.f)])
        y = anel.elemento([ctx.rng.randrange(anel.pN) for _ in range(anel.f)])
        resultados.append(x.frobenius(anel.f) == x and (x * y).frobenius() == x.frobenius() * y.frobenius())
    return _todas(resultados)


@verificacao("ring-traco", "ring", "traço na torre ciclotômica",
             "Tr_{K_n/K} pela fórmula das potências = soma dos conjugados de Galois")
def _check_traco(ctx: Contexto) -> Resultado:
    anel = anel_ciclotomico(ctx.p, ctx.prec.N, ctx.prec.f, ctx.n)
    resultados = []
    for _ in range(3):
        linhas = [[ctx.rng.randrange(anel.anel.pN) for _ in range(anel.grau)] for _ in range(ctx.prec.f)]
        x = anel.elemento(linhas)
        resultados.append(x.traco().mergulhar(ctx.n) == x.traco_por_galois())
    return _todas(resultados)


# ----- series

def _aleatorias(ctx: Contexto, quantidade: int, grau: int):
    S = AnelSeries(ctx.prec)
    return S, [S.aleatoria(ctx.rng, grau=grau) for _ in range(quantidade)]


@verificacao("series-psi-phi", "series", "ψ é inversa à esquerda de φ", "ψ(φ(g)) = g")
def _check_psi_phi(ctx: Contexto) -> Resultado:
    _, gs = _aleatorias(ctx, 10, 12)
    return _todas(psi(phi(g)) == g for g in gs)


@verificacao("series-partial-phi", "series", "∂ e φ", "∂∘φ = p·φ∘∂")
def _check_partial_phi(ctx: Contexto) -> Resultado:
    _, gs = _aleatorias(ctx, 5, 10)
    return _todas(partial(phi(g)) == phi(partial(g)).escalar(ctx.p) for g in gs)


@verificacao("series-gamma", "series", "Γ-equivariância", "γ∘φ = φ∘γ e γ∘ψ = ψ∘γ (γ = σ_2)")
def _check_gamma(ctx: Contexto) -> Resultado:
    _, gs = _aleatorias(ctx, 5, 8)
    return _todas(phi(gamma_act(2, g)) == gamma_act(2, phi(g)) and psi(gamma_act(2, g)) == gamma_act(2, psi(g))
                  for g in gs)


@verificacao("series-residuo", "series", "resíduo de derivadas", "res(∂g·dX/(1+X)) = 0")
def _check_residuo(ctx: Contexto) -> Resultado:
    S = AnelSeries(ctx.prec)
    resultados = []
    for polo in (1, 2, 3):
        coefs = [S.anel.elemento([ctx.rng.randrange(S.anel.pN) for _ in range(S.anel.f)]) for _ in range(9)]
        resultados.append(residue_dlog(partial(S.de_coefs(coefs, polo=polo, exata=True))).e_zero())
    return _todas(resultados)


@verificacao("series-eval-phi", "series", "avaliação em ζ_{p^n} − 1",
             "φ(g)(ζ_{p^2} − 1) = g^σ(ζ_p − 1)")
def _check_eval_phi(ctx: Contexto) -> Resultado:
    prec = ctx.prec.com(n_max=max(ctx.prec.n_max, 2))
    S = AnelSeries(prec)
    gs = [S.aleatoria(ctx.rng, grau=10) for _ in range(3)]
    return _todas(eval_at_level(phi(g), 2, prec) == eval_at_level(g, 1, prec).frobenius().mergulhar(2)
                  for g in gs)


# ----- wach

def _prec_wach(ctx: Contexto) -> Precision:
    return ctx.prec.com(M=min(ctx.prec.M, 16))


@verificacao("wach-condicoes", "wach", "condições de Wach",
             "G ≡ I mod X, P·φ(G) = G·γ(P), det P = q^s·unidade com s ≤ h")
def _check_wach(ctx: Contexto) -> Resultado:
    prec = _prec_wach(ctx)
    rel = validate_wach(ctx.rep.wach(prec))
    return Resultado(True, rel.passou, rel.passou, prec.N, {"violacoes": rel.violacoes})


@verificacao("wach-dcris", "wach", "D_cris a partir de N(T)",
             "saltos de D_cris(N) = pesos de Hodge–Tate e v_p(det φ) = t_H")
def _check_dcris(ctx: Contexto) -> Resultado:
    prec = _prec_wach(ctx)
    fil = dcris_from_wach(ctx.rep.wach(prec))
    esperado = sorted(ctx.rep.fil.saltos)
    calculado = sorted(fil.saltos)
    return Resultado(esperado, calculado, esperado == calculado and fil.admissivel(), prec.N)


@verificacao("wach-char-ideal", "wach", "ideal característico do quociente de Wach",
             "car(D(T)^{ψ=1}/(φ*N)^{ψ=1}) = Π_k car(Z_p[Δ] ⊗ Z_p(−k))^{dim Fil^k}")
def _check_quociente(ctx: Contexto) -> Resultado:
    prec = _prec_wach(ctx)
    rel = wach_quotient_char_ideal(ctx.rep.wach(prec))
    return Resultado(repr(rel.previsto), repr(rel.calculado), rel.igual and rel.injetivo, prec.N)


# ----- herr

@verificacao("herr-euler", "herr", "característica de Euler",
             "χ(K_n, V) = −[K_n:Q_p]·dim V")
def _check_euler(ctx: Contexto) -> Resultado:
    resumo = cohomology(ctx.rep.fil, ctx.n, ctx.prec)
    passou = resumo.euler_confere() and resumo.modelo_confere and resumo.estavel
    return Resultado(resumo.euler_esperado(), resumo.euler(), passou, ctx.prec.N,
                     {"postos": resumo.como_tupla(), "torcao": resumo.torcao,
                      "modelo_confere": resumo.modelo_confere, "estavel": resumo.estavel})


@verificacao("herr-dualidade", "herr", "dualidade local",
             "posto H^i(K_n, V) = posto H^{2−i}(K_n, V*(1))")
def _check_dualidade(ctx: Contexto) -> Resultado:
    triplas = dualidade_postos(ctx.rep.fil, ctx.n, ctx.prec)
    return Resultado([t[2] for t in triplas], [t[1] for t in triplas], all(t[1] == t[2] for t in triplas))


@verificacao("herr-complexo", "herr", "complexo de Herr", "d¹∘d⁰ = 0 em C_{φ,γ_n}(N(T) ⊗ A^+/X^L)")
def _check_complexo(ctx: Contexto) -> Resultado:
    prec = _prec_wach(ctx)
    return _todas([herr_complex(ctx.rep.wach(prec), ctx.n, L=5).composicao_nula()])


@verificacao("herr-cup", "herr", "não degenerescência do cup",
             "Gram (σ_a c, σ_b c*)_{a,b ∈ G_n} unimodular, c gerando H¹_Iw(T), c* gerando H¹_Iw(T*(1))")
def _check_cup(ctx: Contexto) -> Resultado:
    if not ctx.rep.posto_um or ctx.prec.f != 1:
        raise RepresentacaoInvalida("Gram do cup implementado em posto 1 sobre Q_p")
    r = ctx.rep.salto_maximo
    lam = ctx.rep.fil.phi[0][0] / Fraction(ctx.p) ** r
    if lam.denominator != 1 or lam.numerator % ctx.p == 0 or (lam.numerator - 1) % ctx.p == 0:
        raise RepresentacaoInvalida("exige φ = λp^r com λ unidade inteira, λ ≢ 1 mod p")
    prec = ctx.prec.com(M=min(ctx.prec.M, 32))
    gram = cup_nao_degenerado(r, lam.numerator, ctx.n, prec)
    return Resultado([0] * len(gram.valuacoes), gram.valuacoes, gram.nao_degenerado(), gram.efetiva,
                     {"r": r, "lam": lam.numerator})


# ----- perrin-riou

def _prec_xi(ctx: Contexto) -> Precision:
    grau = (ctx.p - 1) * ctx.p ** (ctx.n - 1)
    return ctx.prec.com(M=max(ctx.prec.M, ctx.prec.N * grau))


def _elemento_delta_nulo(ctx: Contexto, prec: Precision) -> DModuleElem:
    """
    Elemento aleatório com Δ = 0: na componente com índice k usa h − 2^{−k}γ_2(h),
    pois ∂^k(γ_2 h)(0) = 2^k·∂^k h(0).
    """
    anel = anel_de(prec)
    fil = ctx.rep.fil
    vazio = DModuleElem(fil, tuple(PsiZeroSeries.de_dict(anel, {}) for _ in range(fil.d)))
    indices = {d.componente: d.k for d in delta_map(vazio, prec)}
    coords = []
    for i in range(fil.d):
        expoentes = [a for a in range(1, 4 * ctx.p) if a % ctx.p]
        h = PsiZeroSeries.de_dict(anel, {a: ctx.rng.randrange(prec.pN) for a in ctx.rng.sample(expoentes, 3)})
        if i in indices:
            h = h - h.gamma(2).escalar(pow(2, -indices[i], prec.pN))
        coords.append(h)
    return DModuleElem(fil, tuple(coords))


@verificacao("xi-telescope", "perrin-riou", "Ξ pela definição e pela soma telescópica",
             "p^{−n}φ^{−n}F(ζ_{p^n} − 1) = p^{−n}(Σ_{k=1}^n φ^{−k}f(ζ_{p^k} − 1) + (1 − φ)^{−1}f(0))")
def _check_xi(ctx: Contexto) -> Resultado:
    prec = _prec_xi(ctx)
    alpha = _elemento_delta_nulo(ctx, prec)
    definicao = xi_map(alpha, ctx.n, prec)
    telescopado = xi_telescopado(alpha, ctx.n, prec)
    efetiva = min(x.precisao for x in definicao + telescopado)
    return Resultado(repr(telescopado), repr(definicao), definicao == telescopado, efetiva)


@verificacao("xi-kernel", "perrin-riou", "núcleo de Ξ", "Ξ(d ⊗ (γ_n − 1)(1+X)) = 0")
def _check_xi_nucleo(ctx: Contexto) -> Resultado:
    prec = _prec_xi(ctx)
    d = [ctx.rng.randrange(1, prec.pN) for _ in range(ctx.rep.fil.d)]
    valores = xi_telescopado(xi_kernel_element(d, ctx.rep.fil, ctx.n, prec), ctx.n, prec)
    return _todas(v.e_zero() for v in valores)


@verificacao("solver-phi", "perrin-riou", "solver de (1 − φ)F = f", "(1 − φ)F − f ≡ 0 mod (p^N, X^M)")
def _check_solver(ctx: Contexto) -> Resultado:
    alpha = _elemento_delta_nulo(ctx, ctx.prec)
    return _todas([solve_one_minus_phi(alpha, ctx.prec).verificar(alpha)])


@verificacao("omega-cocycle", "perrin-riou", "Ω produz cociclos",
             "(χ(γ_n)^{k−r}γ_n − 1)𝓔 = (λφ − 1)𝓕 para k = h + 1")
def _check_omega(ctx: Contexto) -> Resultado:
    prec = ctx.prec.com(M=min(ctx.prec.M, 32))
    alpha = _elemento_delta_nulo(ctx, prec)
    k = max(ctx.rep.salto_maximo, 0) + 1
    c = omega_map(alpha, k, ctx.n, prec)
    return Resultado(True, c.e_cociclo(), c.e_cociclo(), prec.N - max(c.x.den, c.y.den), {"k": k})


@verificacao("coker-xi", "perrin-riou", "cokernel de Ξ",
             "índice de (1 − φ)Tr(O_{K_n}) = n − 1 + v_p(1 − φ) em D_cris/(1 − p^{−1}φ^{−1})")
def _check_coker(ctx: Contexto) -> Resultado:
    indices = coker_xi_posto(ctx.rep.fil, ctx.n, ctx.prec)
    return Resultado([i.indice_esperado for i in indices], [i.indice for i in indices],
                     all(i.confere for i in indices))


def _medida_aleatoria(ctx: Contexto, anel, termos: int = 3) -> PsiZeroSeries:
    expoentes = [a for a in range(1, 4 * ctx.p) if a % ctx.p]
    return PsiZeroSeries.de_dict(anel, {a: ctx.rng.randrange(anel.pN) for a in ctx.rng.sample(expoentes, termos)})


@verificacao("pareamento", "perrin-riou", "⟨Ω, Ω⟩ pelo cup e pelo resíduo",
             "⟨Ω_{T,k}(α), Ω_{T*(−h),h−k+1}(β)⟩ = (−1)^k p^{nh}Π_{m=1}^h (k − m)·Tr(∂^{−k}α(0)∂^{k−h−1}β(0)) "
             "∈ p^{nh}Γ*(k)/Γ*(k − h)")
def _check_pareamento(ctx: Contexto) -> Resultado:
    if ctx.prec.f != 1:
        raise RepresentacaoInvalida("emparelhamento de Ω implementado para K = Q_p")
    h = max(ctx.rep.salto_maximo, 1)
    prec = ctx.prec.com(M=min(ctx.prec.M, 32))
    anel = anel_de(prec)
    T, dual = FilteredPhiModule.tate(ctx.p, h, -1), FilteredPhiModule.tate(ctx.p, 0, -1)
    resultados = []
    for k in range(1, h + 3):
        alpha = DModuleElem(T, (_medida_aleatoria(ctx, anel),))
        beta = DModuleElem(dual, (_medida_aleatoria(ctx, anel),))
        residuo = pareamento_residuo(alpha, beta, k, ctx.n, prec)
        cota = cota_pareamento(k, h, ctx.n, ctx.p)
        resultados.append(residuo.e_zero() or (cota is not None and residuo.valuacao >= cota))
        if k > h:
            continue
        par = pareamento_omega(alpha, beta, k, ctx.n, prec)
        resultados.append(par.coefs[1] == _padic_em(residuo, par.anel))
        resultados.append(all(c.e_zero() or (cota is not None and c.valuacao() >= cota)
                              for c in par.coefs.values()))
    return Resultado(True, all(resultados), all(resultados), prec.N, {"h": h})


@verificacao("e-residuo", "perrin-riou", "resíduos de E_{k,1}",
             "res(E_{k,1}(f)t^m g dt) ∈ p^m Γ*(k)/Γ*(k − m), 1 ≤ k ≤ 3, 1 ≤ m ≤ 2")
def _check_e_residuo(ctx: Contexto) -> Resultado:
    if ctx.prec.f != 1:
        raise RepresentacaoInvalida("resíduo de E_{k,1} implementado para K = Q_p")
    anel = anel_de(ctx.prec)
    resultados = []
    for k in range(1, 4):
        for m in (1, 2):
            f = _medida_aleatoria(ctx, anel)
            g = {b: ctx.rng.randrange(ctx.prec.pN) for b in ctx.rng.sample(range(2 * ctx.p), 3)}
            resultados.append(congruencia_residuo(f, g, k, m, ctx.prec))
    return _todas(resultados)


def _precisao_fina(prec: Precision) -> Precision:
    return prec.com(N=prec.N + 2, M=2 * prec.M, J_max=prec.J_max + 2)


@verificacao("estabilidade", "perrin-riou", "estabilidade em precisão",
             "Ω nas coinvariantes e resíduos de E_{k,1} em (N, M, J_max) ≡ em (N + 2, 2M, J_max + 2) mod p^N")
def _check_estabilidade(ctx: Contexto) -> Resultado:
    h = _exigir_posto_um_positivo(ctx)
    base = ctx.prec.com(M=min(ctx.prec.M, 32), f=1)
    fina = _precisao_fina(base)
    k = h + 1
    pares = list(zip(omega_coinvariantes(ctx.rep.fil, k, base).valores,
                     omega_coinvariantes(ctx.rep.fil, k, fina).valores))
    expoentes = [a for a in range(1, 4 * ctx.p) if a % ctx.p]
    medida = {a: ctx.rng.randrange(base.pN) for a in ctx.rng.sample(expoentes, 3)}
    g = {b: ctx.rng.randrange(base.pN) for b in ctx.rng.sample(range(2 * ctx.p), 3)}
    pares.append(tuple(residuo_e_series(PsiZeroSeries.de_dict(anel_de(P), medida), g, k + 1, 1, P)
                       for P in (base, fina)))
    return Resultado([repr(b) for _, b in pares], [repr(a) for a, _ in pares], all(a == b for a, b in pares),
                     base.N, {"k": k})


# ----- epsilon

@verificacao("epsilon-gauss", "epsilon", "somas de Gauss", "τ(η)τ(η^{−1}) = η(−1)·p^{a(η)}")
def _check_gauss(ctx: Contexto) -> Resultado:
    resultados = []
    for eta in caracteres(ctx.prec, ctx.n):
        if eta.e_trivial():
            continue
        tau = gauss_sum(eta)
        anel = tau.anel
        esperado = eta.valor(ctx.p ** ctx.n - 1, anel) * racional_em(ctx.p ** eta.conductor(), anel)
        resultados.append(tau * gauss_sum(eta.inverso()) == esperado)
    return _todas(resultados)


@verificacao("epsilon-tate", "epsilon", "ε-constante abeliana",
             "(−1)^{(f−1)a(η)}τ(η)^f = integral de Tate ∫η^{−1}ψ_K dμ_K")
def _check_epsilon(ctx: Contexto) -> Resultado:
    return _todas(epsilon_abelian(eta) == tate_integral_oracle(eta) for eta in caracteres(ctx.prec, ctx.n))


# ----- lambda

def _exigir_posto_um_positivo(ctx: Contexto) -> int:
    if not ctx.rep.posto_um or ctx.rep.salto_maximo < 0:
        raise RepresentacaoInvalida("exige posto 1 e salto ≥ 0")
    return ctx.rep.salto_maximo


@verificacao("lambda-char-wach", "lambda", "ideal característico do gerador de Wach",
             "car(c_r) = Π_{m=1}^r car(Z_p[Δ] ⊗ Z_p(−m))")
def _check_char_wach(ctx: Contexto) -> Resultado:
    prec = _prec_wach(ctx)
    W = ctx.rep.wach(prec)
    resultados = []
    for i in range(W.d):
        bloco = gerador_lambda_wach(W, i)
        if bloco.s < 1:
            raise RepresentacaoInvalida("exige blocos Z_p(−r) com r ≥ 1")
        previsto = CharIdeal.unitario(ctx.p, prec.N)
        for m in range(1, bloco.s + 1):
            previsto = previsto * char_ideal_tate(-m, prec, todas=True)
        resultados.append(CharIdeal.de_elemento(bloco.gerador) == previsto)
    return _todas(resultados)


@verificacao("lambda-ell", "lambda", "expansão de ℓ_0",
             "ℓ_0 ≡ −(γ_n − 1)/log χ(γ_n) mod (γ_n − 1)^2")
def _check_ell(ctx: Contexto) -> Resultado:
    prec = ctx.prec.com(N=max(ctx.prec.N, 20), M_lambda=max(ctx.prec.M_lambda, 64))
    return _todas([congruente_mod_omega(ell_zero_expansao(ctx.n, prec), ctx.n, 2)])


@verificacao("lambda-det-omega", "lambda", "determinante de Ω nas coinvariantes",
             "Smith dos termos de Ω_{T,k−r,1} = v_p((p^r Π_m (k − m))^{[K_1:Q_p]·f}), k > h")
def _check_det(ctx: Contexto) -> Resultado:
    k = _exigir_posto_um_positivo(ctx) + 2
    obtido, alvo = omega_det_smith(ctx.rep.fil, k, ctx.prec)
    return Resultado(alvo, obtido, obtido == alvo, ctx.prec.N, {"k": k})


@verificacao("lambda-indices", "lambda", "índices de V e V*(1)",
             "produto dos índices de V e V*(1) = fórmula fechada com Γ*")
def _check_indices(ctx: Contexto) -> Resultado:
    h = max(_exigir_posto_um_positivo(ctx), 1)
    lado_v, lado_dual, alvo = indices_dualidade(ctx.rep.fil, 0, h, ctx.prec)
    return Resultado(alvo, lado_v + lado_dual, lado_v + lado_dual == alvo, ctx.prec.N, {"h": h})


# ----- c-iw

@verificacao("ciw-unit", "c-iw", "constante C_Iw é unidade",
             "v_p(a_i) = 0 para todo i, em k = −1, 0 (gerador de Wach) e k = h + 1, h + 2 (Ω)")
def _check_unidade(ctx: Contexto) -> Resultado:
    h = ctx.rep.salto_maximo
    ks = (-1, 0, h + 1, h + 2)
    relatorios = [c_iw_check(ctx.rep.fil, k, ctx.prec) for k in ks]
    return Resultado([0], sorted({v for rel in relatorios for v in rel.valuacoes}),
                     all(rel.passou for rel in relatorios), ctx.prec.N,
                     {"k": list(ks), "fontes": [rel.fonte for rel in relatorios]})


@verificacao("ciw-kappa", "c-iw", "imagem do reticulado por κ",
             "fórmula fechada de κ = oráculo telescópico em cada componente")
def _check_kappa(ctx: Contexto) -> Resultado:
    prec = ctx.prec.com(N=max(ctx.prec.N, 12))
    return _todas(kappa_oraculo(ctx.rep.fil, ctx.n, prec).values())


# ============================================================
# Execução
# ============================================================

def explain(check_id: str) -> str:
    """
    Texto explicativo de uma checagem.

    Raises:
        VerificacaoDesconhecida: id fora do registro
    """
    if check_id not in REGISTRO:
        raise VerificacaoDesconhecida(f"checagem desconhecida: {check_id}")
    v = REGISTRO[check_id]
    return f"{v.check_id} [{v.suite}]\n  {v.ancora}\n  {v.formula}"


def listar() -> List[str]:
    return sorted(REGISTRO)


def run_suite(config: RunConfig) -> RunReport:
    """
    Executa as suítes selecionadas. Erros por checagem ficam no relatório.

    Raises:
        ConfiguracaoInvalida: configuração ou representação inválidas
    """
    config.validar()
    try:
        rep = parse_representacao(config.rep, config.prec)
    except (RepresentacaoInvalida, KeyError, ValueError) as e:
        raise ConfiguracaoInvalida(f"--rep {config.rep}: {e}")
    relatorio = RunReport(config.como_dict())
    selecionadas = [v for _, v in sorted(REGISTRO.items()) if v.suite in config.suites]
    banner(f"Verificação: {rep.descricao}, p={config.prec.p}, n={config.n}", config.verbose)

    for v in selecionadas:
        # cada checagem tem seu próprio gerador: o resultado não depende da seleção
        ctx = Contexto(config, rep, random.Random(f"{config.seed}:{v.check_id}"))
        entradas = config.como_dict()
        try:
            res = v.funcao(ctx)
            entradas.update(res.entradas)
            status = PASSOU if res.passou else FALHOU
            relatorio.registrar(v.check_id, v.suite, v.ancora, entradas, res.esperado, res.calculado,
                                res.precisao, status)
            if res.passou:
                log_ok(f"{v.check_id}", config.verbose)
            else:
                log_erro(f"{v.check_id}: esperado {res.esperado}, obtido {res.calculado}", config.verbose)
        except RepresentacaoInvalida as e:
            relatorio.registrar(v.check_id, v.suite, v.ancora, entradas, status=NAO_APLICAVEL, detalhe=str(e))
            log_aviso(f"{v.check_id}: não se aplica ({e})", config.verbose)
        except IwasawaErro as e:
            detalhe = f"{type(e).__name__}: {e}"
            relatorio.registrar(v.check_id, v.suite, v.ancora, entradas, status=ERRO, detalhe=detalhe)
            log_erro(f"{v.check_id}: {detalhe}", config.verbose)
        except Exception as e:
            detalhe = f"{type(e).__name__}: {e}"
            relatorio.registrar(v.check_id, v.suite, v.ancora, entradas, status=ERRO, detalhe=detalhe)
            log_erro(f"{v.check_id}: erro inesperado {detalhe}", config.verbose)

    if config.saida:
        destino = relatorio.salvar_jsonl(config.saida)
        log_info(f"relatório salvo em {destino}", config.verbose)
    return relatorio


# ============================================================
# Linha de comando
# ============================================================

def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Verificação numérica da exponencial de Perrin-Riou")
    parser.add_argument("--p", type=int, help="Primo ímpar")
    parser.add_argument("--f", type=int, help="Grau [K:Q_p] (default: 1)")
    parser.add_argument("--rep", type=str, help="Representação (tate:<j>, sum(...), raw:<arquivo>)")
    parser.add_argument("--n", type=int, help="Nível ciclotômico (default: 1)")
    parser.add_argument("--prec-p", type=int, help="Precisão p-ádica N")
    parser.add_argument("--prec-x", type=int, help="Truncamento em X (M)")
    parser.add_argument("--j-max", type=int, help="Corte da série E_{k,n}")
    parser.add_argument("--suite", type=str, help="Suítes separadas por vírgula, ou 'all'")
    parser.add_argument("--seed", type=int, help="Semente dos testes aleatórios (default: 0)")
    parser.add_argument("--out", type=str, help="Arquivo JSON Lines de saída")
    parser.add_argument("--config", type=str, help="Arquivo JSON com as mesmas chaves")
    parser.add_argument("--list", action="store_true", help="Listar as checagens")
    parser.add_argument("--explain", type=str, metavar="CHECK_ID", help="Explicar uma checagem")
    parser.add_argument("--quiet", action="store_true", help="Modo silencioso")
    return parser


def _mesclar_arquivo(args: argparse.Namespace) -> Dict[str, Any]:
    """Valores da linha de comando têm prioridade sobre o arquivo de configuração."""
    valores: Dict[str, Any] = {}
    if args.config:
        try:
            valores = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ConfiguracaoInvalida(f"--config {args.config}: {e}")
        valores = {k.replace("-", "_"): v for k, v in valores.items()}
    for chave, valor in vars(args).items():
        if valor is not None and chave not in ("config", "list", "explain", "quiet"):
            valores[chave] = valor
    return valores


def config_de_argumentos(argv: Optional[Sequence[str]] = None) -> Tuple[argparse.Namespace, Optional[RunConfig]]:
    """Monta a RunConfig (None quando só --list/--explain foram pedidos)."""
    args = _parser().parse_args(argv)
    if args.list or args.explain:
        return args, None
    valores = _mesclar_arquivo(args)
    if "p" not in valores:
        raise ConfiguracaoInvalida("--p é obrigatório")
    n = int(valores.get("n", 1))
    base = precisao_padrao(int(valores["p"]), int(valores.get("f", 1)), n_max=max(n, 2))
    mudancas = {}
    if "prec_p" in valores:
        mudancas["N"] = int(valores["prec_p"])
    if "prec_x" in valores:
        mudancas["M"] = int(valores["prec_x"])
    if "j_max" in valores:
        mudancas["J_max"] = int(valores["j_max"])
    prec = base.com(**mudancas) if mudancas else base
    suite = valores.get("suite", "all")
    if isinstance(suite, list):
        suites = suite
    elif suite == "all":
        suites = list(SUITES)
    else:
        suites = [s.strip() for s in str(suite).split(",") if s.strip()]
    config = RunConfig(prec, valores.get("rep", "tate:-1"), suites, n, int(valores.get("seed", 0)),
                       valores.get("out"), not args.quiet)
    return args, config


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Ponto de entrada; devolve o código de saída."""
    try:
        args, config = config_de_argumentos(argv)
        if args.list:
            for check_id in listar():
                print(f"{check_id:20s} {REGISTRO[check_id].suite:12s} {REGISTRO[check_id].ancora}")
            return EXIT_OK
        if args.explain:
            print(explain(args.explain))
            return EXIT_OK
        relatorio = run_suite(config)
    except (ConfiguracaoInvalida, VerificacaoDesconhecida) as e:
        log_erro(str(e))
        return EXIT_CONFIG

    if config.verbose:
        print("\n" + relatorio.tabela())
        resumo = relatorio.resumo()
        print(f"\n📊 {resumo['passou']}/{resumo['total']} passaram, {resumo['falhou']} falharam, "
              f"{resumo['erro']} com erro, {resumo['nao_aplicavel']} não aplicáveis")
    return EXIT_OK if relatorio.todos_passaram else EXIT_FALHA


if __name__ == "__main__":
    sys.exit(main())
