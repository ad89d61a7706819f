"""
Módulo: CLI
Subcomandos verify, variation, classify, solve e catalog.

Uso:
    python main.py verify problema.json
    python main.py variation --entry su2_round --m 1 --t-grid 0.5:0.5:3 --csv saida.csv
    python main.py classify --entry nil
    python main.py solve su2.json --m 1 --starts 64 --seed 7
    python main.py catalog --out problemas/

Códigos de saída: 0 sucesso, 1 verificação falhou, 2 erro de entrada,
3 pré-condição matemática não satisfeita.
"""

import argparse
import sys
from typing import List, Optional, Sequence

import numpy as np

from fibrados.variacao_canonica import STATUS_NAO_QE
from nucleo.analisador import AnalisadorGeometria
from nucleo.erros import ErroEntrada, ErroGeometria
from nucleo.politica import POLITICA_PADRAO
from otimizacao.resolvedor import PARAMETRIZACOES, ConfiguracaoResolvedor
from relatorio.emissor import EmissorRelatorio


SAIDA_OK = 0
SAIDA_FALHOU = 1
SAIDA_ENTRADA = 2
SAIDA_PRECONDICAO = 3


def ler_grade(texto: str) -> List[float]:
    """
    "início:passo:fim" (fim incluído) ou lista separada por vírgulas.
    """
    try:
        if ":" in texto:
            partes = [float(p) for p in texto.split(":")]
            if len(partes) != 3:
                raise ValueError(texto)
            inicio, passo, fim = partes
            if not passo > 0 or fim < inicio:
                raise ValueError(texto)
            n = int(np.floor((fim - inicio) / passo + 1e-9)) + 1
            return [inicio + i * passo for i in range(n)]
        return [float(p) for p in texto.split(",") if p.strip()]
    except ValueError:
        raise ErroEntrada(f"❌ Grade inválida: '{texto}' (use início:passo:fim ou a,b,c)")


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qe-kit",
        description="Métricas quasi-Einstein invariantes à esquerda em referenciais de Lie",
    )
    sub = parser.add_subparsers(dest="comando", required=True)

    comum = argparse.ArgumentParser(add_help=False)
    comum.add_argument("arquivo", nargs="?", default=None, help="Arquivo JSON de problema")
    comum.add_argument("--entry", default=None, help="Entrada do catálogo no lugar do arquivo")
    comum.add_argument("--m", type=float, default=None)
    comum.add_argument("--tol", type=float, default=None, help="Sobrescreve as tolerâncias")
    comum.add_argument("--json", default=None, help="Grava o relatório JSON neste caminho")
    comum.add_argument("--quiet", action="store_true", help="Sem mensagens em stderr")

    verify = sub.add_parser("verify", parents=[comum], help="Verifica um triplo quasi-Einstein")
    verify.add_argument("--lambda", dest="lam", type=float, default=None)

    variation = sub.add_parser("variation", parents=[comum], help="Variação canônica de uma submersão")
    variation.add_argument("--t-grid", dest="t_grid", default="0.5:0.25:4")
    variation.add_argument("--lambda", dest="lam", type=float, default=None)
    variation.add_argument("--csv", default=None, help="Grava o CSV neste caminho")

    classify = sub.add_parser("classify", parents=[comum], help="Balde de Thurston em dimensão 3")
    classify.add_argument("--lambda", dest="lam", type=float, default=None)

    solve = sub.add_parser("solve", parents=[comum], help="Busca multistart de soluções")
    solve.add_argument("--starts", type=int, default=64)
    solve.add_argument("--seed", type=int, default=7)
    solve.add_argument("--param", choices=PARAMETRIZACOES, default="diagonal")
    solve.add_argument("--workers", type=int, default=1)
    solve.add_argument("--t-grid", dest="t_grid", default=None, help="Varredura do sinal de λ_t")

    catalog = sub.add_parser("catalog", help="Exporta o catálogo como arquivos de problema")
    catalog.add_argument("--out", default="problemas")
    catalog.add_argument("--quiet", action="store_true")
    return parser


def _emitir_json(emissor: EmissorRelatorio, dados, caminho: Optional[str]) -> None:
    texto = emissor.escrever_json(dados, caminho)
    if caminho is None:
        print(texto)


def executar(args: argparse.Namespace) -> int:
    emissor = EmissorRelatorio()
    politica = POLITICA_PADRAO if getattr(args, "tol", None) is None else POLITICA_PADRAO.com_tolerancia(args.tol)
    analisador = AnalisadorGeometria(politica, verboso=not args.quiet)

    if args.comando == "catalog":
        for nome in analisador.exportar_catalogo(args.out):
            print(nome)
        return SAIDA_OK

    problema = analisador.carregar(args.arquivo, args.entry)

    if args.comando == "verify":
        relatorio = analisador.verificar(problema, args.m, args.lam)
        _emitir_json(emissor, relatorio, args.json)
        return SAIDA_OK if relatorio["verified"] else SAIDA_FALHOU

    if args.comando == "variation":
        tabela, relatorio = analisador.variacao_canonica(problema, ler_grade(args.t_grid), args.m, args.lam)
        texto = emissor.escrever_csv(tabela, args.csv)
        if args.csv is None:
            sys.stdout.write(texto)
        if args.json is not None:
            emissor.escrever_json(relatorio, args.json)
        falhou = (tabela["status"] == STATUS_NAO_QE).any() or not relatorio["lambda_matches"]
        return SAIDA_FALHOU if falhou else SAIDA_OK

    if args.comando == "classify":
        _emitir_json(emissor, analisador.classificar(problema, args.m, args.lam), args.json)
        return SAIDA_OK

    if args.comando == "solve":
        m = args.m if args.m is not None else problema.m
        if m is None:
            raise ErroEntrada("❌ Parâmetro m ausente (use --m ou o campo do arquivo)")
        config = ConfiguracaoResolvedor(
            m=m,
            parametrizacao=args.param,
            inicios=args.starts,
            semente=args.seed,
            trabalhadores=args.workers,
        )
        grade = None if args.t_grid is None else ler_grade(args.t_grid)
        _emitir_json(emissor, analisador.resolver(problema, config, grade), args.json)
        return SAIDA_OK

    raise ErroEntrada(f"❌ Comando desconhecido: {args.comando}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return executar(args)
    except ErroEntrada as e:
        print(e, file=sys.stderr)
        return SAIDA_ENTRADA
    except ErroGeometria as e:
        print(e, file=sys.stderr)
        return SAIDA_PRECONDICAO
    except OSError as e:
        print(f"❌ Erro de arquivo: {e}", file=sys.stderr)
        return SAIDA_ENTRADA
