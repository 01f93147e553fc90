#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes do relatório de execução.
"""

import json
from fractions import Fraction

from relatorio import ERRO, FALHOU, NAO_APLICAVEL, PASSOU, RunReport, digest_entradas


def _relatorio():
    rel = RunReport({"p": 3, "rep": "tate:-1"})
    rel.registrar("b-check", "series", "âncora b", {"x": 1}, True, True, 8, PASSOU)
    rel.registrar("a-check", "ring", "âncora a", {"x": Fraction(1, 3)}, 1, 2, 8, FALHOU)
    rel.registrar("c-check", "lambda", "âncora c", {}, status=NAO_APLICAVEL, detalhe="posto 2")
    return rel


def teste_digest_deterministico():
    assert digest_entradas({"a": 1, "b": [1, 2]}) == digest_entradas({"b": [1, 2], "a": 1})
    assert digest_entradas({"a": 1}) != digest_entradas({"a": 2})
    assert len(digest_entradas({})) == 16


def teste_resumo_e_status():
    rel = _relatorio()
    resumo = rel.resumo()
    assert resumo[PASSOU] == 1 and resumo[FALHOU] == 1 and resumo[NAO_APLICAVEL] == 1
    assert resumo[ERRO] == 0 and resumo["total"] == 3
    assert not rel.todos_passaram


def teste_nao_aplicavel_nao_reprova():
    rel = RunReport()
    rel.registrar("x", "ring", "", {}, status=PASSOU)
    rel.registrar("y", "ring", "", {}, status=NAO_APLICAVEL)
    assert rel.todos_passaram


def teste_erro_reprova():
    rel = RunReport()
    rel.registrar("x", "ring", "", {}, status=ERRO, detalhe="PrecisaoInsuficiente: M")
    assert not rel.todos_passaram


def teste_jsonl_ordenado():
    linhas = [json.loads(l) for l in _relatorio().linhas_jsonl()]
    assert linhas[0]["tipo"] == "config" and linhas[0]["config"]["p"] == 3
    assert [l["check_id"] for l in linhas[1:-1]] == ["a-check", "b-check", "c-check"]
    assert linhas[-1]["tipo"] == "resumo" and linhas[-1]["total"] == 3


def teste_jsonl_reprodutivel():
    assert _relatorio().linhas_jsonl() == _relatorio().linhas_jsonl()


def teste_fracoes_serializadas():
    linhas = [json.loads(l) for l in _relatorio().linhas_jsonl()]
    assert linhas[1]["esperado"] == 1 and linhas[1]["calculado"] == 2
    rel = RunReport()
    rel.registrar("x", "ring", "", {}, Fraction(1, 3), [Fraction(2, 5)])
    linha = json.loads(rel.linhas_jsonl()[1])
    assert linha["esperado"] == "1/3" and linha["calculado"] == ["2/5"]


def teste_dataframe_e_tabela():
    rel = _relatorio()
    df = rel.para_dataframe()
    assert list(df.columns) == RunReport.COLUNAS
    assert list(df["check_id"]) == ["a-check", "b-check", "c-check"]
    texto = rel.tabela()
    assert "a-check" in texto and "falhou" in texto


def teste_tabela_vazia():
    assert RunReport().para_dataframe().empty
    assert "nenhuma" in RunReport().tabela()


def teste_salvar_jsonl(tmp_path):
    destino = _relatorio().salvar_jsonl(str(tmp_path / "saida" / "report.jsonl"))
    conteudo = destino.read_text(encoding="utf-8").splitlines()
    assert len(conteudo) == 5
    assert json.loads(conteudo[-1])["falhou"] == 1
