#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Funções de log para console, no estilo verbose do projeto.
"""

from datetime import datetime

from colorama import Fore, Style, init

init(autoreset=True)


def _hora() -> str:
    return datetime.now().strftime('%H:%M:%S')


def log_info(mensagem: str, verbose: bool = True):
    """Mensagem informativa."""
    if verbose:
        print(f"[{_hora()}] 🔍 {mensagem}")


def log_ok(mensagem: str, verbose: bool = True):
    """Mensagem de sucesso."""
    if verbose:
        print(f"{Fore.GREEN}[{_hora()}] ✅ {mensagem}")


def log_aviso(mensagem: str, verbose: bool = True):
    """Aviso (precisão limítrofe, resultado ambíguo)."""
    if verbose:
        print(f"{Fore.YELLOW}[{_hora()}] ⚠️  {mensagem}")


def log_erro(mensagem: str, verbose: bool = True):
    """Falha de checagem ou erro capturado."""
    if verbose:
        print(f"{Fore.RED}[{_hora()}] ❌ {mensagem}")


def banner(titulo: str, verbose: bool = True):
    """Cabeçalho de seção com linhas de '='."""
    if verbose:
        print("\n" + "=" * 50)
        print(f"{Style.BRIGHT}{titulo}")
        print("=" * 50)
