#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Testes da CLI de verificação: gramática de representações, configuração,
registro de checagens e códigos de saída.
"""

import json
import random
from fractions import Fraction
from types import SimpleNamespace

import pytest

import verify
from config import Precision
from erros import ConfiguracaoInvalida, RepresentacaoInvalida, VerificacaoDesconhecida
from relatorio import ERRO, FALHOU, NAO_APLICAVEL, PASSOU
from ring_tower import PAdicScalar
from verify import (
    EXIT_CONFIG, EXIT_FALHA, EXIT_OK, REGISTRO, SUITES, Contexto, Resultado, RunConfig, Verificacao,
    config_de_argumentos, explain, listar, main, parse_representacao, run_suite,
)


@pytest.fixture
def prec3():
    return Precision(p=3, N=5, M=16)


def _config(prec, rep="tate:-1", suites=("ring",), seed=3):
    return RunConfig(prec, rep, list(suites), 1, seed, None, False)


# ----------------------------------------------------------------- representações

def teste_parse_tate(prec3):
    rep = parse_representacao("tate:-1", prec3)
    assert rep.fil.saltos == [1]
    assert rep.fil.phi == [[Fraction(3)]]
    assert rep.blocos == [(1, 1)]


def teste_parse_tate_positivo(prec3):
    rep = parse_representacao("tate:2", prec3)
    assert rep.fil.saltos == [-2]
    assert rep.fil.phi == [[Fraction(1, 9)]]


def teste_parse_nao_ramificado(prec3):
    rep = parse_representacao("tate:0*unramified:2", prec3)
    assert rep.fil.phi == [[Fraction(2)]]
    assert rep.blocos == [(0, 2)]
    # 12 em base 3 = 5
    assert parse_representacao("tate:-1*unramified:12", prec3).blocos == [(1, 5)]


@pytest.mark.parametrize("spec", ["tate:0*unramified:3", "tate:0*unramified:10", "tate:x", "sym2:1",
                                  "tate:0*ramified:1", "sum(tate:0)"])
def teste_parse_invalido(prec3, spec):
    with pytest.raises(ConfiguracaoInvalida):
        parse_representacao(spec, prec3)


def teste_parse_soma_aninhada(prec3):
    rep = parse_representacao("sum(tate:-1,sum(tate:0,tate:1))", prec3)
    assert rep.fil.d == 3
    assert rep.blocos == [(1, 1), (0, 1), (-1, 1)]
    assert rep.salto_maximo == 1


def teste_parse_raw(prec3, tmp_path):
    arquivo = tmp_path / "rep.json"
    arquivo.write_text(json.dumps({"kind": "tate", "r": 2, "lambda": 2}), encoding="utf-8")
    rep = parse_representacao(f"raw:{arquivo}", prec3)
    assert rep.fil.saltos == [2]
    assert rep.blocos == [(2, 2)]


def teste_parse_raw_filtrado(prec3, tmp_path):
    arquivo = tmp_path / "rep.json"
    arquivo.write_text(json.dumps({"kind": "filtrado", "phi": [["3", "0"], ["0", "1/3"]], "r": [1, -1]}),
                       encoding="utf-8")
    rep = parse_representacao(f"raw:{arquivo}", prec3)
    assert rep.fil.d == 2 and rep.blocos is None


def teste_parse_raw_invalido(prec3, tmp_path):
    arquivo = tmp_path / "rep.json"
    arquivo.write_text(json.dumps({"kind": "sym2"}), encoding="utf-8")
    with pytest.raises(ConfiguracaoInvalida):
        parse_representacao(f"raw:{arquivo}", prec3)
    with pytest.raises(ConfiguracaoInvalida):
        parse_representacao(f"raw:{tmp_path / 'nao_existe.json'}", prec3)


def teste_wach_exige_pesos_positivos(prec3):
    rep = parse_representacao("tate:1", prec3)
    with pytest.raises(RepresentacaoInvalida):
        rep.wach(prec3)
    assert parse_representacao("sum(tate:-1,tate:-2)", prec3).wach(prec3).d == 2


# ----------------------------------------------------------------- configuração

def teste_config_suites_desconhecidas(prec3):
    with pytest.raises(ConfiguracaoInvalida):
        _config(prec3, suites=["ring", "motivic"]).validar()


def teste_config_nivel(prec3):
    with pytest.raises(ConfiguracaoInvalida):
        RunConfig(prec3, n=3).validar()
    with pytest.raises(ConfiguracaoInvalida):
        RunConfig(prec3, n=0).validar()


def teste_config_de_argumentos():
    _, config = config_de_argumentos(["--p", "5", "--prec-p", "6", "--prec-x", "20", "--suite", "ring,series",
                                      "--seed", "7", "--n", "1", "--quiet"])
    assert config.prec.p == 5 and config.prec.N == 6 and config.prec.M == 20
    assert config.suites == ["ring", "series"]
    assert config.seed == 7 and not config.verbose


def teste_config_suite_all():
    _, config = config_de_argumentos(["--p", "3"])
    assert config.suites == SUITES
    assert config.rep == "tate:-1"


def teste_config_arquivo(tmp_path):
    arquivo = tmp_path / "cfg.json"
    arquivo.write_text(json.dumps({"p": 5, "prec-p": 6, "suite": ["herr"], "seed": 1}), encoding="utf-8")
    _, config = config_de_argumentos(["--config", str(arquivo), "--seed", "9"])
    assert config.prec.p == 5 and config.prec.N == 6
    assert config.suites == ["herr"]
    # linha de comando prevalece
    assert config.seed == 9


def teste_config_sem_primo():
    with pytest.raises(ConfiguracaoInvalida):
        config_de_argumentos(["--suite", "ring"])


# ----------------------------------------------------------------- registro

def teste_registro_cobre_suites():
    assert {v.suite for v in REGISTRO.values()} == set(SUITES)
    assert listar() == sorted(listar())


def teste_explain():
    texto = explain("xi-telescope")
    assert texto.startswith("xi-telescope [perrin-riou]")
    with pytest.raises(VerificacaoDesconhecida):
        explain("nao-existe")


def teste_checagem_nao_aplicavel(prec3):
    rep = parse_representacao("sum(tate:-1,tate:-2)", prec3)
    ctx = Contexto(_config(prec3), rep, random.Random(0))
    with pytest.raises(RepresentacaoInvalida):
        REGISTRO["lambda-det-omega"].funcao(ctx)


def _ctx_estabilidade(rep="tate:-1"):
    prec = Precision(p=3, N=6, M=32)
    return Contexto(_config(prec, rep=rep, suites=["perrin-riou"]), parse_representacao(rep, prec), random.Random(1))


def teste_estabilidade_passa():
    resultado = REGISTRO["estabilidade"].funcao(_ctx_estabilidade())
    assert resultado.passou
    assert resultado.entradas == {"k": 2}


def teste_estabilidade_detecta_deriva(monkeypatch):
    def dependente(fil, k, prec, n=1):
        return SimpleNamespace(valores=[PAdicScalar.de_inteiro(3, prec.N, prec.N)])

    monkeypatch.setattr(verify, "omega_coinvariantes", dependente)
    assert not REGISTRO["estabilidade"].funcao(_ctx_estabilidade()).passou


def teste_estabilidade_exige_salto_positivo():
    with pytest.raises(RepresentacaoInvalida):
        REGISTRO["estabilidade"].funcao(_ctx_estabilidade("tate:1"))


# ----------------------------------------------------------------- execução

def teste_run_suite_ring(prec3):
    relatorio = run_suite(_config(prec3))
    assert relatorio.todos_passaram
    assert relatorio.resumo()["total"] == len([v for v in REGISTRO.values() if v.suite == "ring"])


def teste_run_suite_reprodutivel(prec3):
    a = run_suite(_config(prec3, suites=["ring", "series"])).linhas_jsonl()
    b = run_suite(_config(prec3, suites=["ring", "series"])).linhas_jsonl()
    assert a == b


def teste_run_suite_nao_aplicavel(prec3):
    relatorio = run_suite(_config(prec3, rep="tate:1", suites=["wach"]))
    assert relatorio.resumo()[NAO_APLICAVEL] == relatorio.resumo()["total"]
    assert relatorio.todos_passaram


def teste_run_suite_falha_e_erro(prec3, monkeypatch):
    def quebrada(ctx):
        raise ValueError("quebrou")

    monkeypatch.setitem(REGISTRO, "zz-falsa", Verificacao("zz-falsa", "ring", "", "",
                                                          lambda ctx: Resultado(1, 2, False)))
    monkeypatch.setitem(REGISTRO, "zz-quebrada", Verificacao("zz-quebrada", "ring", "", "", quebrada))
    relatorio = run_suite(_config(prec3))
    status = {l["check_id"]: l["status"] for l in relatorio.linhas}
    assert status["zz-falsa"] == FALHOU
    assert status["zz-quebrada"] == ERRO
    assert status["ring-teichmuller"] == PASSOU
    assert not relatorio.todos_passaram


# ----------------------------------------------------------------- main

def teste_main_list(capsys):
    assert main(["--list"]) == EXIT_OK
    assert "xi-telescope" in capsys.readouterr().out


def teste_main_explain_desconhecida():
    assert main(["--explain", "nao-existe"]) == EXIT_CONFIG


@pytest.mark.parametrize("argv", [["--p", "4"], ["--p", "3", "--rep", "sym2:1"], ["--p", "3", "--suite", "motivic"]])
def teste_main_erro_de_configuracao(argv):
    assert main(argv + ["--quiet"]) == EXIT_CONFIG


def teste_main_passa(tmp_path):
    destino = tmp_path / "report.jsonl"
    argv = ["--p", "3", "--prec-p", "5", "--prec-x", "16", "--suite", "ring", "--quiet", "--out", str(destino)]
    assert main(argv) == EXIT_OK
    linhas = destino.read_text(encoding="utf-8").splitlines()
    assert json.loads(linhas[0])["config"]["suites"] == ["ring"]


def teste_main_selecao_vazia():
    assert main(["--p", "3", "--suite", "", "--quiet"]) == EXIT_OK
    assert run_suite(RunConfig(Precision(p=3), suites=[], verbose=False)).resumo()["total"] == 0


def teste_main_falha(monkeypatch):
    monkeypatch.setitem(REGISTRO, "zz-falsa", Verificacao("zz-falsa", "ring", "", "",
                                                          lambda ctx: Resultado(1, 2, False)))
    assert main(["--p", "3", "--prec-p", "5", "--suite", "ring", "--quiet"]) == EXIT_FALHA
