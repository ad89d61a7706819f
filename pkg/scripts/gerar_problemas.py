"""
Script: Gerador de Arquivos de Problema
Exporta o catálogo verificado e uma família de Berger como arquivos JSON
prontos para a CLI.

Uso:
    python scripts/gerar_problemas.py [pasta]
"""

import json
import sys
from pathlib import Path

import pandas as pd

# Adiciona o diretório raiz ao path para imports funcionarem
BASE_DIR = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(BASE_DIR))

from dados.catalogo import CatalogoExemplos, berger


class GeradorProblemas:
    """
    Grava o catálogo e membros extras da família de Berger.
    """

    VALORES_T = (1.25, 1.5, 2.0, 3.0, 4.0)
    VALORES_M = (1.0, 2.0, 5.0)

    def __init__(self, pasta: Path):
        self.pasta = Path(pasta)
        self.catalogo = CatalogoExemplos()

    def gerar(self) -> pd.DataFrame:
        caminhos = self.catalogo.exportar(str(self.pasta))
        registros = [[nome, "catalogo", str(caminho)] for nome, caminho in caminhos.items()]

        pasta_berger = self.pasta / "berger"
        pasta_berger.mkdir(parents=True, exist_ok=True)
        for m in self.VALORES_M:
            for t in self.VALORES_T:
                entrada = berger(t, m)
                self.catalogo.verificar(entrada)
                caminho = pasta_berger / f"berger_t{t:g}_m{m:g}.json"
                caminho.write_text(
                    json.dumps(entrada.para_problema().para_json(), indent=2, ensure_ascii=False),
                    encoding="utf-8",
                )
                registros.append([caminho.stem, "berger", str(caminho)])

        tabela = pd.DataFrame(registros, columns=["nome", "origem", "caminho"])
        print(f"\n✅ {len(tabela)} arquivos gerados em {self.pasta}")
        print("\n📊 Arquivos por origem:")
        print(tabela["origem"].value_counts())
        return tabela


if __name__ == "__main__":
    print("=" * 70)
    print("📚 GERADOR DE ARQUIVOS DE PROBLEMA")
    print("=" * 70 + "\n")

    pasta = Path(sys.argv[1]) if len(sys.argv) > 1 else BASE_DIR / "problemas"
    tabela = GeradorProblemas(pasta).gerar()

    print("\n👀 Preview:")
    print(tabela.head(10))
    print("\n✅ Processo concluído!")
