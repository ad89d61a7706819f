"""
Módulo: Carregador de Problemas
Lê o arquivo JSON de problema e devolve o modelo validado.
Segue o princípio da responsabilidade única (SRP): a validação do caminho
fica separada do carregamento e a do conteúdo fica no modelo pydantic.

Índices de referencial no arquivo são 1-based (e_1, e_2, e_3);
internamente tudo é 0-based.
"""

import json
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from geometria.referencial import MetricaReferencial, Referencial, VetorReferencial
from nucleo.erros import ErroEntrada
from nucleo.politica import POLITICA_PADRAO


class Colchete(BaseModel):
    """[e_i, e_j] tem componente c em e_k."""

    model_config = ConfigDict(extra="forbid")

    i: int = Field(ge=1)
    j: int = Field(ge=1)
    k: int = Field(ge=1)
    c: float


class ArquivoProblema(BaseModel):
    """Esquema do arquivo de problema."""

    model_config = ConfigDict(populate_by_name=True, extra="forbid")

    nome: Optional[str] = Field(default=None, alias="name")
    notas: Optional[str] = Field(default=None, alias="notes")
    dim: int = Field(ge=1)
    brackets: List[Colchete] = Field(default_factory=list)
    metric: List[List[float]]
    X: Optional[List[float]] = None
    m: Optional[float] = None
    lam: Optional[float] = Field(default=None, alias="lambda")
    vertical: Optional[int] = Field(default=None, ge=1)
    compact: Optional[bool] = None

    @field_validator("m")
    @classmethod
    def _m_nao_nulo(cls, valor: Optional[float]) -> Optional[float]:
        if valor is not None and valor == 0:
            raise ValueError("m precisa ser não nulo")
        return valor

    @model_validator(mode="after")
    def _dimensoes(self) -> "ArquivoProblema":
        for colchete in self.brackets:
            if max(colchete.i, colchete.j, colchete.k) > self.dim:
                raise ValueError(
                    f"índice fora do intervalo 1..{self.dim} em "
                    f"({colchete.i}, {colchete.j}, {colchete.k})"
                )
        if len(self.metric) != self.dim or any(len(linha) != self.dim for linha in self.metric):
            raise ValueError(f"metric precisa ser {self.dim}x{self.dim}")
        if self.X is not None and len(self.X) != self.dim:
            raise ValueError(f"X precisa ter {self.dim} componentes")
        if self.vertical is not None and self.vertical > self.dim:
            raise ValueError(f"vertical fora do intervalo 1..{self.dim}")
        return self

    # -------------------------------------------------------------
    def para_referencial(self, tolerancia: float = POLITICA_PADRAO.validacao) -> Referencial:
        return Referencial.a_partir_de_lista(
            self.dim, [(b.i - 1, b.j - 1, b.k - 1, b.c) for b in self.brackets], tolerancia
        )

    def para_metrica(self, tolerancia: float = POLITICA_PADRAO.validacao) -> MetricaReferencial:
        return MetricaReferencial(self.metric, tolerancia)

    def para_vetor(self) -> VetorReferencial:
        """X do arquivo, ou o campo nulo quando ausente."""
        if self.X is None:
            return VetorReferencial.nulo(self.dim)
        return VetorReferencial(self.X)

    @property
    def indice_vertical(self) -> Optional[int]:
        return None if self.vertical is None else self.vertical - 1

    def para_json(self) -> dict:
        return self.model_dump(by_alias=True, exclude_none=True)

    @classmethod
    def de_texto(cls, texto: str) -> "ArquivoProblema":
        try:
            return cls.model_validate(json.loads(texto))
        except json.JSONDecodeError as e:
            raise ErroEntrada(f"❌ JSON inválido: {e}")
        except ValidationError as e:
            raise ErroEntrada(f"❌ Arquivo de problema inválido:\n{e}")


class CarregadorProblema:
    """
    Carrega arquivos de problema (.json).

    A validação de caminho é separada do carregamento, como no carregador
    de dados original; os erros viram ErroEntrada com mensagem ❌.
    """

    def __init__(self, caminho_arquivo: str):
        self.caminho_arquivo = Path(caminho_arquivo)
        self.avisos: List[str] = []

    def validar_arquivo(self) -> bool:
        """True se o arquivo existe e é um arquivo comum."""
        if not self.caminho_arquivo.exists():
            return False
        if not self.caminho_arquivo.is_file():
            return False

        # Aviso se não for JSON (mas não bloqueia)
        if self.caminho_arquivo.suffix.lower() != ".json":
            self.avisos.append(
                f"⚠️ Aviso: arquivo não tem extensão .json ({self.caminho_arquivo.suffix})"
            )
        return True

    def carregar(self) -> ArquivoProblema:
        """
        Raises:
            ErroEntrada: arquivo ausente, ilegível, JSON inválido ou fora do esquema
        """
        if not self.validar_arquivo():
            raise ErroEntrada(f"❌ Arquivo inválido ou não encontrado: {self.caminho_arquivo}")

        try:
            texto = self.caminho_arquivo.read_text(encoding="utf-8")
        except UnicodeDecodeError:
            raise ErroEntrada(f"❌ Arquivo não está em UTF-8: {self.caminho_arquivo}")
        except OSError as e:
            raise ErroEntrada(f"❌ Erro ao ler o arquivo: {e}")

        if not texto.strip():
            raise ErroEntrada("❌ O arquivo de problema está vazio!")
        return ArquivoProblema.de_texto(texto)

    def info_arquivo(self) -> dict:
        if not self.caminho_arquivo.exists():
            return {"status": "Arquivo não existe"}

        return {
            "nome": self.caminho_arquivo.name,
            "caminho_completo": str(self.caminho_arquivo.absolute()),
            "tamanho_kb": round(self.caminho_arquivo.stat().st_size / 1024, 2),
            "extensao": self.caminho_arquivo.suffix,
        }
