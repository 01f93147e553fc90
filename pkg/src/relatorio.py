#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Relatório de execução das suítes de verificação.
Uma linha por checagem (JSON Lines) e uma tabela-resumo via pandas.
"""

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd

VERSAO = "0.3.0"

# Status possíveis de uma linha
PASSOU = "passou"
FALHOU = "falhou"
ERRO = "erro"
NAO_APLICAVEL = "nao_aplicavel"


def _serializavel(valor: Any) -> Any:
    """Converte valores matemáticos para algo estável em JSON."""
    if valor is None or isinstance(valor, (bool, int, str)):
        return valor
    if isinstance(valor, Fraction):
        return str(valor)
    if isinstance(valor, dict):
        return {str(k): _serializavel(v) for k, v in sorted(valor.items(), key=lambda kv: str(kv[0]))}
    if isinstance(valor, (list, tuple)):
        return [_serializavel(v) for v in valor]
    return repr(valor)


def digest_entradas(entradas: Dict[str, Any]) -> str:
    """Hash curto e determinístico das entradas de uma checagem."""
    bruto = json.dumps(_serializavel(entradas), sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(bruto.encode("utf-8")).hexdigest()[:16]


class RunReport:
    """
    Registros por checagem e contagens de resumo.

    Não há carimbo de tempo nas linhas: a mesma (config, seed) gera o mesmo arquivo.
    """

    COLUNAS = ["check_id", "suite", "ancora", "digest", "esperado", "calculado",
               "precisao_efetiva", "status", "detalhe"]

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = _serializavel(config or {})
        self.linhas: List[Dict[str, Any]] = []

    def registrar(self, check_id: str, suite: str, ancora: str, entradas: Dict[str, Any],
                  esperado: Any = None, calculado: Any = None, precisao_efetiva: Optional[int] = None,
                  status: str = PASSOU, detalhe: str = ""):
        """
        Adiciona uma linha ao relatório.

        Args:
            check_id: Identificador da checagem
            suite: Suíte de origem
            ancora: Descrição curta do resultado verificado
            entradas: Entradas (entram apenas pelo digest)
            esperado: Valor esperado
            calculado: Valor obtido
            precisao_efetiva: Dígitos p-ádicos efetivamente comparados
            status: passou, falhou, erro ou nao_aplicavel
            detalhe: Mensagem de erro ou observação
        """
        self.linhas.append({
            "check_id": check_id,
            "suite": suite,
            "ancora": ancora,
            "digest": digest_entradas(entradas),
            "esperado": _serializavel(esperado),
            "calculado": _serializavel(calculado),
            "precisao_efetiva": precisao_efetiva,
            "status": status,
            "detalhe": detalhe,
        })

    def ordenadas(self) -> List[Dict[str, Any]]:
        return sorted(self.linhas, key=lambda linha: (linha["check_id"], linha["digest"]))

    def resumo(self) -> Dict[str, int]:
        contagem = {PASSOU: 0, FALHOU: 0, ERRO: 0, NAO_APLICAVEL: 0}
        for linha in self.linhas:
            contagem[linha["status"]] += 1
        contagem["total"] = len(self.linhas)
        return contagem

    @property
    def todos_passaram(self) -> bool:
        """Nenhuma linha falhou ou deu erro (linhas não aplicáveis não contam)."""
        resumo = self.resumo()
        return resumo[FALHOU] == 0 and resumo[ERRO] == 0

    def para_dataframe(self) -> pd.DataFrame:
        if not self.linhas:
            return pd.DataFrame(columns=self.COLUNAS)
        return pd.DataFrame(self.ordenadas(), columns=self.COLUNAS)

    def tabela(self) -> str:
        """Tabela humana: uma linha por checagem e as contagens por suíte/status."""
        df = self.para_dataframe()
        if df.empty:
            return "(nenhuma checagem selecionada)"
        visivel = df[["check_id", "suite", "status", "precisao_efetiva", "detalhe"]]
        por_suite = df.groupby(["suite", "status"]).size().unstack(fill_value=0)
        return visivel.to_string(index=False) + "\n\n" + por_suite.to_string()

    def linhas_jsonl(self) -> List[str]:
        cabecalho = {"tipo": "config", "versao": VERSAO, "config": self.config}
        saida = [json.dumps(cabecalho, sort_keys=True, ensure_ascii=False)]
        for linha in self.ordenadas():
            saida.append(json.dumps({"tipo": "check", **linha}, sort_keys=True, ensure_ascii=False))
        saida.append(json.dumps({"tipo": "resumo", **self.resumo()}, sort_keys=True))
        return saida

    def salvar_jsonl(self, caminho: str) -> Path:
        """Grava o relatório, uma linha por registro."""
        destino = Path(caminho)
        if destino.parent and not destino.parent.exists():
            destino.parent.mkdir(parents=True, exist_ok=True)
        with open(destino, "w", encoding="utf-8") as fh:
            for linha in self.linhas_jsonl():
                fh.write(linha + "\n")
        return destino
