"""
Módulo: Emissor de Relatórios
Saídas legíveis por máquina: JSON (stdout ou arquivo) e CSV da variação
canônica.

Floats saem com a representação mais curta que reconstrói o double
(repr do Python) no JSON, e com %.17g no CSV. Valores não finitos viram
null / campo vazio.
"""

import io
import json
import math
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd


class EmissorRelatorio:
    """Serializa relatórios em JSON e tabelas em CSV (UTF-8, separador '.', CRLF)."""

    FORMATO_FLOAT_CSV = "%.17g"

    # ==================== Helpers ==================== #

    def _limpar(self, valor: Any) -> Any:
        """Converte tipos numpy/pandas em tipos JSON e não finitos em None."""
        if isinstance(valor, dict):
            return {str(k): self._limpar(v) for k, v in valor.items()}
        if isinstance(valor, (list, tuple)):
            return [self._limpar(v) for v in valor]
        if isinstance(valor, np.ndarray):
            return self._limpar(valor.tolist())
        if isinstance(valor, (bool, np.bool_)):
            return bool(valor)
        if isinstance(valor, (int, np.integer)):
            return int(valor)
        if isinstance(valor, (float, np.floating)):
            valor = float(valor)
            return valor if math.isfinite(valor) else None
        if isinstance(valor, pd.DataFrame):
            return self._limpar(valor.to_dict(orient="records"))
        if isinstance(valor, Path):
            return str(valor)
        return valor

    # ==================== JSON ==================== #

    def para_json(self, dados: Any) -> str:
        return json.dumps(self._limpar(dados), indent=2, ensure_ascii=False, allow_nan=False)

    def escrever_json(self, dados: Any, caminho: Optional[str] = None) -> str:
        """Grava em `caminho` se dado; devolve o texto de qualquer forma."""
        texto = self.para_json(dados)
        if caminho is not None:
            destino = Path(caminho)
            destino.parent.mkdir(parents=True, exist_ok=True)
            destino.write_text(texto + "\n", encoding="utf-8")
        return texto

    # ==================== CSV ==================== #

    def para_csv(self, tabela: pd.DataFrame) -> str:
        buffer = io.StringIO()
        tabela.to_csv(
            buffer,
            index=False,
            float_format=self.FORMATO_FLOAT_CSV,
            lineterminator="\r\n",
            na_rep="",
        )
        return buffer.getvalue()

    def escrever_csv(self, tabela: pd.DataFrame, caminho: Optional[str] = None) -> str:
        texto = self.para_csv(tabela)
        if caminho is not None:
            destino = Path(caminho)
            destino.parent.mkdir(parents=True, exist_ok=True)
            with open(destino, "w", encoding="utf-8", newline="") as arquivo:
                arquivo.write(texto)
        return texto
