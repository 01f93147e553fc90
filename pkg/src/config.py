#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Configuração de precisão do toolkit.
Carrega valores padrão do ambiente (.env) e a tabela de módulos m(u).
"""

import os
from dataclasses import dataclass, replace
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from dotenv import load_dotenv
from sympy import Poly, isprime, symbols

from erros import ConfiguracaoInvalida

load_dotenv()

# Caminho da tabela versionada de polinômios de Conway
ARQUIVO_MODULOS = Path(__file__).resolve().parent.parent / "data" / "moduli.txt"


def _env_int(nome: str, padrao: int) -> int:
    """Lê um inteiro do ambiente, com fallback."""
    valor = os.getenv(nome)
    if valor is None or valor.strip() == "":
        return padrao
    try:
        return int(valor)
    except ValueError:
        raise ConfiguracaoInvalida(f"variável {nome}={valor!r} não é inteira")


@dataclass(frozen=True)
class Precision:
    """
    Disciplina de truncamento compartilhada por todos os módulos.

    p: primo ímpar; N: precisão p-ádica (mod p^N); M: truncamento em X;
    f: grau [K:Q_p]; n_max: maior nível ciclotômico; J_max: corte da série E_{k,n};
    M_lambda: truncamento em T para elementos de Λ.
    """
    p: int
    N: int = 8
    M: int = 64
    f: int = 1
    n_max: int = 2
    J_max: int = 12
    M_lambda: int = 32

    def __post_init__(self):
        if self.p < 3 or not isprime(self.p):
            raise ConfiguracaoInvalida(f"p={self.p} precisa ser primo ímpar")
        for campo in ("N", "M", "f", "n_max", "J_max", "M_lambda"):
            if getattr(self, campo) < 1:
                raise ConfiguracaoInvalida(f"{campo} precisa ser ≥ 1")

    @property
    def q(self) -> int:
        """Cardinal do corpo residual q_K = p^f."""
        return self.p ** self.f

    @property
    def pN(self) -> int:
        return self.p ** self.N

    def com(self, **mudancas) -> "Precision":
        """Cópia com campos alterados (a checagem de estabilidade refaz os cálculos em N + 2, 2M e J_max + 2)."""
        return replace(self, **mudancas)


def precisao_padrao(p: int, f: int = 1, n_max: int = 2) -> Precision:
    """
    Monta a Precision padrão a partir do ambiente.

    Args:
        p: Primo
        f: Grau da extensão não ramificada
        n_max: Maior nível ciclotômico

    Returns:
        Precision: Configuração com N, M, J_max, M_lambda vindos do .env
    """
    return Precision(
        p=p,
        N=_env_int("IWASAWA_PREC_P", 8),
        M=_env_int("IWASAWA_PREC_X", 64),
        f=f,
        n_max=n_max,
        J_max=_env_int("IWASAWA_J_MAX", 12),
        M_lambda=_env_int("IWASAWA_PREC_LAMBDA", 32),
    )


@lru_cache(maxsize=None)
def carregar_modulos(caminho: Optional[str] = None) -> Dict[Tuple[int, int], Tuple[int, ...]]:
    """
    Lê a tabela (p, f) → coeficientes de m(u), do grau 0 ao grau f.

    Args:
        caminho: Arquivo alternativo (padrão: data/moduli.txt)

    Returns:
        Dict: Mapa (p, f) → tupla de coeficientes
    """
    arquivo = Path(caminho) if caminho else ARQUIVO_MODULOS
    tabela = {}
    u = symbols("u")

    with open(arquivo, "r", encoding="utf-8") as fh:
        for numero, linha in enumerate(fh, start=1):
            linha = linha.strip()
            if not linha or linha.startswith("#"):
                continue
            partes = [int(x) for x in linha.split()]
            p, f, coefs = partes[0], partes[1], tuple(partes[2:])
            if len(coefs) != f + 1 or coefs[-1] != 1:
                raise ConfiguracaoInvalida(f"{arquivo}:{numero}: polinômio não mônico de grau {f}")
            if any(not 0 <= c < p for c in coefs):
                raise ConfiguracaoInvalida(f"{arquivo}:{numero}: coeficiente fora de [0, p)")
            if not Poly(list(reversed(coefs)), u, modulus=p).is_irreducible:
                raise ConfiguracaoInvalida(f"{arquivo}:{numero}: m(u) redutível mod {p}")
            tabela[(p, f)] = coefs

    return tabela


def modulo_para(p: int, f: int) -> Tuple[int, ...]:
    """Coeficientes de m(u) para (p, f), ou erro se a tabela não cobre o par."""
    tabela = carregar_modulos()
    if (p, f) not in tabela:
        raise ConfiguracaoInvalida(f"sem módulo tabelado para p={p}, f={f}")
    return tabela[(p, f)]


def pares_suportados() -> List[Tuple[int, int]]:
    """Lista os pares (p, f) presentes na tabela."""
    return sorted(carregar_modulos().keys())
