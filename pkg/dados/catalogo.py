"""
Módulo: Catálogo de Exemplos
Referenciais, métricas e soluções conhecidas usados nos testes e na CLI.

SU(2) usa c[i][j][k] = 2ε_ijk, de modo que g = I é a esfera redonda unitária
(Sec = 1) e a fibração de Hopf tem |A|² = 2.
"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from analise.quasi_einstein import AnalisadorQE, TriploQE
from analise.sasaki3 import GeometriaThurston
from dados.carregador import ArquivoProblema
from geometria.referencial import MetricaReferencial, Referencial, VetorReferencial
from nucleo.erros import ErroEntrada, ErroInvariante, ErroParametro
from nucleo.politica import POLITICA_PADRAO, PoliticaNumerica


# ============================================================
# Referenciais
# ============================================================

def referencial_su2() -> Referencial:
    """[e_1, e_2] = 2e_3 e permutações cíclicas."""
    return Referencial.a_partir_de_lista(3, [(0, 1, 2, 2.0), (1, 2, 0, 2.0), (2, 0, 1, 2.0)])


def referencial_heisenberg() -> Referencial:
    """[e_1, e_2] = e_3."""
    return Referencial.a_partir_de_lista(3, [(0, 1, 2, 1.0)])


def referencial_h2_r() -> Referencial:
    """[e_1, e_2] = e_2, e_3 central."""
    return Referencial.a_partir_de_lista(3, [(0, 1, 1, 1.0)])


# ============================================================
# Tipos
# ============================================================

@dataclass(frozen=True)
class SolucaoConhecida:
    X: VetorReferencial
    m: float
    lam: float


@dataclass
class EntradaCatalogo:
    nome: str
    referencial: Referencial
    metrica: MetricaReferencial
    solucoes: List[SolucaoConhecida] = field(default_factory=list)
    vertical: Optional[int] = None
    geometria_esperada: Optional[GeometriaThurston] = None
    compacto: bool = True
    notas: str = ""

    def triplo(self, indice: int = 0) -> TriploQE:
        s = self.solucoes[indice]
        return TriploQE(self.referencial, self.metrica, s.X, s.m, s.lam, self.compacto)

    def para_problema(self, indice: int = 0) -> ArquivoProblema:
        """Arquivo de problema (índices 1-based) com a solução `indice`, se houver."""
        dados = {
            "name": self.nome,
            "notes": self.notas or None,
            "dim": self.referencial.dim,
            "brackets": [
                {"i": i + 1, "j": j + 1, "k": k + 1, "c": c}
                for i, j, k, c in self.referencial.para_lista()
            ],
            "metric": self.metrica.gram.tolist(),
            "vertical": None if self.vertical is None else self.vertical + 1,
            "compact": self.compacto,
        }
        if self.solucoes:
            s = self.solucoes[indice]
            dados.update({"X": s.X.coefs.tolist(), "m": s.m, "lambda": s.lam})
        return ArquivoProblema.model_validate({k: v for k, v in dados.items() if v is not None})


# ============================================================
# Fábricas
# ============================================================

def abeliano(dim: int = 3) -> EntradaCatalogo:
    return EntradaCatalogo(
        nome="abelian" if dim == 3 else f"abelian{dim}",
        referencial=Referencial.abeliano(dim),
        metrica=MetricaReferencial(np.eye(dim)),
        solucoes=[SolucaoConhecida(VetorReferencial.nulo(dim), 1.0, 0.0)],
        vertical=0,
        notas="Toro plano: só a solução trivial.",
    )


def su2_redonda() -> EntradaCatalogo:
    return EntradaCatalogo(
        nome="su2_round",
        referencial=referencial_su2(),
        metrica=MetricaReferencial(np.eye(3)),
        solucoes=[SolucaoConhecida(VetorReferencial.nulo(3), 1.0, 2.0)],
        vertical=0,
        notas="Esfera redonda unitária, Ric = 2g; vertical e_1 é a fibração de Hopf.",
    )


def berger(t: float = 2.0, m: float = 1.0) -> EntradaCatalogo:
    """
    g = diag(t, 1, 1), X = c_t·e_1 com c_t² = 4m(t - 1)/t e λ = 4 - 2t.
    """
    if not t > 0:
        raise ErroParametro(f"❌ Berger exige t > 0 (t = {t})")
    if m == 0:
        raise ErroParametro("❌ Parâmetro m inválido: 0")
    c2 = 4.0 * m * (t - 1.0) / t
    if c2 < 0:
        raise ErroParametro(f"❌ c_t² = {c2:.6g} < 0 para t = {t}, m = {m}")
    return EntradaCatalogo(
        nome="berger",
        referencial=referencial_su2(),
        metrica=MetricaReferencial(np.diag([t, 1.0, 1.0])),
        solucoes=[SolucaoConhecida(VetorReferencial.base(3, 0, np.sqrt(c2)), m, 4.0 - 2.0 * t)],
        vertical=0,
        geometria_esperada=None if c2 == 0 else GeometriaThurston.ESFERICA,
        notas=f"Esfera de Berger t = {t:g}, variação canônica de Hopf.",
    )


def nil(a: float = 4.0, m: float = 1.0) -> EntradaCatalogo:
    """g = diag(1, 1, a), X = √m·e_3, λ = -a/2."""
    if not a > 0:
        raise ErroParametro(f"❌ Nil exige a > 0 (a = {a})")
    if not m > 0:
        raise ErroParametro(f"❌ Nil exige m > 0 para X real (m = {m})")
    return EntradaCatalogo(
        nome="nil",
        referencial=referencial_heisenberg(),
        metrica=MetricaReferencial(np.diag([1.0, 1.0, a])),
        solucoes=[SolucaoConhecida(VetorReferencial.base(3, 2, np.sqrt(m)), m, -a / 2.0)],
        vertical=2,
        geometria_esperada=GeometriaThurston.NIL,
        notas=f"Heisenberg com a = {a:g}: |X|²/m = a.",
    )


def h2_r(m: float = 1.0) -> EntradaCatalogo:
    """X = √m·e_3 central e paralelo, λ = -1."""
    if not m > 0:
        raise ErroParametro(f"❌ H²×ℝ exige m > 0 para X real (m = {m})")
    return EntradaCatalogo(
        nome="h2_r",
        referencial=referencial_h2_r(),
        metrica=MetricaReferencial(np.eye(3)),
        solucoes=[SolucaoConhecida(VetorReferencial.base(3, 2, np.sqrt(m)), m, -1.0)],
        geometria_esperada=GeometriaThurston.PRODUTO,
        compacto=False,
        notas="H² × ℝ, dX♭ = 0; não compacto.",
    )


def su2_perturbada(eps: float = 0.1) -> EntradaCatalogo:
    """Base de Hopf perturbada: diag(1, 1 + ε, 1); sem solução conhecida."""
    return EntradaCatalogo(
        nome="su2_perturbed",
        referencial=referencial_su2(),
        metrica=MetricaReferencial(np.diag([1.0, 1.0 + eps, 1.0])),
        vertical=0,
        notas=f"Base de Hopf perturbada por ε = {eps:g}: e_1 não é Killing.",
    )


# ============================================================
# Catálogo
# ============================================================

class CatalogoExemplos:
    """
    Entradas verificadas na carga: cada solução conhecida passa pelo resíduo
    QE, pelo teste de Killing e pela identidade de Bochner.
    """

    def __init__(self, politica: PoliticaNumerica = POLITICA_PADRAO):
        self.politica = politica
        self.qe = AnalisadorQE(politica)
        self._entradas: Optional[List[EntradaCatalogo]] = None

    def verificar(self, entrada: EntradaCatalogo) -> None:
        """Levanta ErroInvariante se alguma solução da entrada falha o resíduo QE ou Bochner."""
        for indice in range(len(entrada.solucoes)):
            triplo = entrada.triplo(indice)
            _, residuo = self.qe.residuo_qe(triplo)
            if residuo > self.politica.estrutural:
                raise ErroInvariante(
                    f"❌ Catálogo '{entrada.nome}': solução {indice} com resíduo {residuo:.3e}"
                )
            if triplo.eh_trivial():
                continue
            bochner = self.qe.verificar_bochner(entrada.referencial, entrada.metrica, triplo.X)
            if abs(bochner) > self.politica.estrutural:
                raise ErroInvariante(
                    f"❌ Catálogo '{entrada.nome}': Bochner com resíduo {bochner:.3e}"
                )

    def entradas(self) -> List[EntradaCatalogo]:
        if self._entradas is None:
            entradas = [abeliano(), su2_redonda(), berger(), nil(), h2_r(), su2_perturbada()]
            for entrada in entradas:
                self.verificar(entrada)
            self._entradas = entradas
        return list(self._entradas)

    def nomes(self) -> List[str]:
        return [e.nome for e in self.entradas()]

    def por_nome(self, nome: str) -> EntradaCatalogo:
        for entrada in self.entradas():
            if entrada.nome == nome:
                return entrada
        raise ErroEntrada(f"❌ Entrada desconhecida no catálogo: '{nome}' (disponíveis: {self.nomes()})")

    def exportar(self, pasta: str) -> Dict[str, Path]:
        """Grava cada entrada como <nome>.json; devolve nome -> caminho."""
        destino = Path(pasta)
        destino.mkdir(parents=True, exist_ok=True)
        caminhos = {}
        for entrada in self.entradas():
            caminho = destino / f"{entrada.nome}.json"
            caminho.write_text(
                json.dumps(entrada.para_problema().para_json(), indent=2, ensure_ascii=False),
                encoding="utf-8",
            )
            caminhos[entrada.nome] = caminho
        return caminhos
