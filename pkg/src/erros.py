#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Hierarquia de exceções do toolkit.
A CLI (verify.py) captura IwasawaErro por checagem e registra no relatório.
"""

from typing import Optional


class IwasawaErro(Exception):
    """Raiz de todos os erros do toolkit."""


class ConfiguracaoInvalida(IwasawaErro):
    """Configuração, tabela de módulos ou RunConfig inválidos."""


class RepresentacaoInvalida(IwasawaErro):
    """Especificação de representação mal formada ou não suportada."""


class PrecisaoInsuficiente(IwasawaErro):
    """
    A precisão de trabalho não basta para o resultado pedido.

    Args:
        mensagem: Descrição
        necessario: Valor de N, M ou J que resolveria o problema (se conhecido)
    """

    def __init__(self, mensagem: str, necessario: Optional[int] = None):
        super().__init__(mensagem)
        self.necessario = necessario


class NivelExcedido(IwasawaErro):
    """Nível ciclotômico acima de n_max."""


class PoloExcedido(IwasawaErro):
    """Ordem de polo fora da capacidade da representação."""


class SerieNaoPsiZero(IwasawaErro):
    """Entrada que deveria satisfazer ψ = 0 e não satisfaz."""


class DeltaNaoNulo(IwasawaErro):
    """Δ(f) ≠ 0: a equação (1 − φ)F = f não tem solução."""


class NaoConvergiu(IwasawaErro):
    """Iteração de ponto fixo sem convergência no limite configurado."""


class NaoAdmissivel(IwasawaErro):
    """Mapa não admissível para a descida (lema de descida)."""


class VerificacaoDesconhecida(IwasawaErro):
    """Identificador de checagem desconhecido."""
