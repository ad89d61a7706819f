"""
Módulo: Quasi-Einstein
Avalia a equação Ric + ½L_Xg - (1/m)X♭⊗X♭ = λg no nível do referencial,
ajusta λ, e verifica as identidades de Bochner e a estrutura espectral
de Ricci em que os argumentos de classificação se apoiam.

Soluções com X = 0 são aceitas em toda parte, mas marcadas como triviais.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from geometria.curvatura import GeometriaReferencial
from geometria.referencial import MetricaReferencial, Referencial, VetorReferencial, Vetorial, coeficientes
from nucleo.erros import (
    ErroEntrada,
    ErroInvariante,
    ErroNaoKilling,
    ErroNaoQuasiEinstein,
    ErroParametro,
    ErroSolucaoTrivial,
)
from nucleo.politica import POLITICA_PADRAO, PoliticaNumerica


# ============================================================
# Tipos
# ============================================================

@dataclass(frozen=True, eq=False)
class TriploQE:
    """Candidato (g, X, m, λ) sobre um referencial."""

    referencial: Referencial
    metrica: MetricaReferencial
    X: VetorReferencial
    m: float
    lam: float
    compacto: Optional[bool] = None  # metadado informado pelo usuário, nunca verificado

    def __post_init__(self):
        if not isinstance(self.X, VetorReferencial):
            object.__setattr__(self, "X", VetorReferencial(self.X))
        if self.m == 0 or not np.isfinite(self.m):
            raise ErroParametro(f"❌ Parâmetro m inválido: {self.m}")
        if not np.isfinite(self.lam):
            raise ErroParametro(f"❌ λ não finito: {self.lam}")
        if not (self.referencial.dim == self.metrica.dim == self.X.dim):
            raise ErroEntrada(
                f"❌ Dimensões incompatíveis: referencial {self.referencial.dim}, "
                f"métrica {self.metrica.dim}, X {self.X.dim}"
            )
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "lam", float(self.lam))

    @property
    def norma_x_quadrada(self) -> float:
        return self.metrica.norma_quadrada(self.X)

    @property
    def positividade(self) -> float:
        """λ + |X|²/m."""
        return self.lam + self.norma_x_quadrada / self.m

    def eh_trivial(self, tol: float = 0.0) -> bool:
        return self.X.eh_nulo(tol)

    def reescalado(self, s2: float) -> "TriploQE":
        """(s²g, X/s², m, λ/s²): solução se e somente se a original é."""
        return TriploQE(
            self.referencial,
            self.metrica.escalar(s2),
            self.X.escalar(1.0 / s2),
            self.m,
            self.lam / s2,
            self.compacto,
        )


class Tricotomia(Enum):
    PRODUTO_PARALELO = "ParallelProduct"
    ESTRITAMENTE_POSITIVO = "StrictlyPositive"


@dataclass
class RelatorioQE:
    residuo: float
    lambda_ajustado: float
    residuo_killing: float
    norma_x: float
    bakry_emery: np.ndarray
    escalar: float
    positividade: float
    trivial: bool

    def para_dict(self) -> Dict[str, Any]:
        return {
            "residual_norm": self.residuo,
            "lambda_fit": self.lambda_ajustado,
            "killing_residual": self.residuo_killing,
            "x_norm": self.norma_x,
            "bakry_emery": self.bakry_emery.tolist(),
            "scal": self.escalar,
            "positivity": self.positividade,
            "trivial": self.trivial,
        }


@dataclass
class EstruturaRicci:
    """Autovalores de Ric·v = μ·g·v, agrupados por multiplicidade."""

    autovalores: np.ndarray
    autovetores: np.ndarray
    grupos: List[Tuple[float, int]]
    autovalor_x: Optional[float] = None
    multiplicidade_x: Optional[int] = None

    @property
    def x_simples(self) -> Optional[bool]:
        if self.multiplicidade_x is None:
            return None
        return self.multiplicidade_x == 1


@dataclass
class RelatorioKillingComutante:
    hipotese: bool
    produto_xk: float
    colchete_xk: float
    killing_k: bool


# ============================================================
# Analisador
# ============================================================

class AnalisadorQE:
    """Operações sobre triplos quasi-Einstein."""

    def __init__(self, politica: PoliticaNumerica = POLITICA_PADRAO):
        self.politica = politica

    # -------------------------------------------------------------
    def _geometria(self, referencial, metrica) -> GeometriaReferencial:
        return GeometriaReferencial(referencial, metrica, self.politica)

    @staticmethod
    def _validar_m(m: float) -> float:
        if m == 0 or not np.isfinite(m):
            raise ErroParametro(f"❌ Parâmetro m inválido: {m}")
        return float(m)

    def tensor_bakry_emery(self, geo: GeometriaReferencial, X: Vetorial, m: float) -> np.ndarray:
        """Ric + ½L_Xg - (1/m)X♭⊗X♭."""
        m = self._validar_m(m)
        x_baixo = geo.metrica.abaixar(X)
        return (
            geo.ricci
            + 0.5 * geo.derivada_lie_metrica(X)
            - np.outer(x_baixo, x_baixo) / m
        )

    # -------------------------------------------------------------
    def residuo_qe(self, triplo: TriploQE) -> Tuple[np.ndarray, float]:
        geo = self._geometria(triplo.referencial, triplo.metrica)
        residuo = (
            self.tensor_bakry_emery(geo, triplo.X, triplo.m)
            - triplo.lam * triplo.metrica.gram
        )
        return residuo, triplo.metrica.norma_tensor(residuo)

    def ajustar_lambda(
        self,
        referencial: Referencial,
        metrica: MetricaReferencial,
        X: Vetorial,
        m: float,
    ) -> Tuple[float, float]:
        """λ = tr_g(Bakry-Émery)/d, a projeção L² sobre múltiplos de g."""
        geo = self._geometria(referencial, metrica)
        tensor = self.tensor_bakry_emery(geo, X, m)
        lam = float(np.einsum("ij,ij->", metrica.inversa, tensor)) / metrica.dim
        return lam, metrica.norma_tensor(tensor - lam * metrica.gram)

    def exigir_qe(self, triplo: TriploQE) -> float:
        _, norma = self.residuo_qe(triplo)
        if norma > self.politica.precondicao_qe:
            raise ErroNaoQuasiEinstein(
                f"❌ Triplo não é quasi-Einstein (resíduo {norma:.3e})"
            )
        return norma

    # -------------------------------------------------------------
    def verificar_bochner(
        self,
        referencial: Referencial,
        metrica: MetricaReferencial,
        K: Vetorial,
    ) -> float:
        """|∇K|² - Ric(K,K); nulo para campos de Killing de norma constante."""
        geo = self._geometria(referencial, metrica)
        killing, residuo = geo.eh_killing(K)
        if not killing:
            raise ErroNaoKilling(f"❌ K não é Killing (|L_K g| = {residuo:.3e})")
        k = coeficientes(K)
        return geo.norma_nabla_quadrada(k) - float(k @ geo.ricci @ k)

    def bochner_modificado(self, triplo: TriploQE, K: Vetorial) -> float:
        """
        |∇K|² + ½(L_Xg)(K,K) - g(X,K)²/m - λ|K|², que se anula quando K é
        Killing de norma constante e o triplo é quasi-Einstein.
        """
        self.exigir_qe(triplo)
        geo = self._geometria(triplo.referencial, triplo.metrica)
        killing, residuo = geo.eh_killing(K)
        if not killing:
            raise ErroNaoKilling(f"❌ K não é Killing (|L_K g| = {residuo:.3e})")
        k = coeficientes(K)
        g = triplo.metrica
        return (
            geo.norma_nabla_quadrada(k)
            + 0.5 * float(k @ geo.derivada_lie_metrica(triplo.X) @ k)
            - g.produto(triplo.X, k) ** 2 / triplo.m
            - triplo.lam * g.norma_quadrada(k)
        )

    def verificar_killing_comutante(self, triplo: TriploQE, K: Vetorial) -> RelatorioKillingComutante:
        """
        Com λ < 0, todo Killing K que comuta com X tem g(X, K) ≠ 0.
        Falha de invariante se a hipótese vale e g(X, K) se anula.
        """
        self.exigir_qe(triplo)
        geo = self._geometria(triplo.referencial, triplo.metrica)
        killing, _ = geo.eh_killing(K)
        colchete = float(np.linalg.norm(triplo.referencial.colchete(triplo.X, K)))
        produto = triplo.metrica.produto(triplo.X, K)
        hipotese = (
            triplo.lam < 0
            and killing
            and colchete <= self.politica.estrutural
            and not VetorReferencial(coeficientes(K)).eh_nulo(self.politica.estrutural)
        )
        if hipotese and abs(produto) <= self.politica.estrutural:
            raise ErroInvariante(
                f"❌ λ = {triplo.lam:.6g} < 0 mas g(X, K) se anula para um Killing que comuta com X"
            )
        return RelatorioKillingComutante(hipotese, produto, colchete, killing)

    # -------------------------------------------------------------
    def tricotomia_positividade(self, triplo: TriploQE) -> Tuple[Tricotomia, float]:
        """
        Para X Killing não nulo, λ + |X|²/m = |∇(X/|X|)|² >= 0; o caso nulo é
        o produto com fator paralelo.
        """
        if triplo.eh_trivial():
            raise ErroSolucaoTrivial("❌ X = 0: solução trivial, tricotomia indefinida")
        self.exigir_qe(triplo)
        geo = self._geometria(triplo.referencial, triplo.metrica)
        killing, residuo = geo.eh_killing(triplo.X)
        if not killing:
            raise ErroNaoKilling(f"❌ X não é Killing (|L_X g| = {residuo:.3e})")

        valor = triplo.positividade
        unitario = triplo.X.coefs / np.sqrt(triplo.norma_x_quadrada)
        nabla_unitario = geo.norma_nabla_quadrada(unitario)
        if abs(valor - nabla_unitario) > self.politica.precondicao_qe * max(1.0, abs(valor)):
            raise ErroInvariante(
                f"❌ λ + |X|²/m = {valor:.12g} difere de |∇K̂|² = {nabla_unitario:.12g}"
            )

        nabla_x = np.sqrt(max(geo.norma_nabla_quadrada(triplo.X), 0.0))
        if nabla_x <= self.politica.estrutural:
            return Tricotomia.PRODUTO_PARALELO, valor
        return Tricotomia.ESTRITAMENTE_POSITIVO, valor

    @staticmethod
    def verificar_exclusao(m: float, lam: float) -> bool:
        """False (excluído) exatamente quando m < 0 e λ < 0."""
        return not (m < 0 and lam < 0)

    # -------------------------------------------------------------
    def estrutura_ricci(
        self,
        referencial: Referencial,
        metrica: MetricaReferencial,
        triplo: Optional[TriploQE] = None,
    ) -> EstruturaRicci:
        geo = self._geometria(referencial, metrica)
        autovalores, autovetores = scipy.linalg.eigh(geo.ricci, metrica.gram)
        grupos = self._agrupar(autovalores)
        estrutura = EstruturaRicci(autovalores, autovetores, grupos)

        if triplo is not None and not triplo.eh_trivial():
            _, residuo = self.residuo_qe(triplo)
            if residuo <= self.politica.precondicao_qe:
                mu = triplo.positividade
                estrutura.autovalor_x = mu
                estrutura.multiplicidade_x = next(
                    (mult for valor, mult in grupos if self._mesmo_valor(valor, mu)),
                    0,
                )
        return estrutura

    def _mesmo_valor(self, a: float, b: float) -> bool:
        return abs(a - b) <= self.politica.multiplicidade * max(1.0, abs(a), abs(b))

    def _agrupar(self, autovalores: np.ndarray) -> List[Tuple[float, int]]:
        grupos: List[List[float]] = []
        for valor in np.sort(autovalores):
            if grupos and self._mesmo_valor(grupos[-1][0], valor):
                grupos[-1].append(float(valor))
            else:
                grupos.append([float(valor)])
        return [(float(np.mean(g)), len(g)) for g in grupos]

    # -------------------------------------------------------------
    def relatorio(self, triplo: TriploQE) -> RelatorioQE:
        geo = self._geometria(triplo.referencial, triplo.metrica)
        tensor = self.tensor_bakry_emery(geo, triplo.X, triplo.m)
        _, residuo = self.residuo_qe(triplo)
        lam_ajustado, _ = self.ajustar_lambda(
            triplo.referencial, triplo.metrica, triplo.X, triplo.m
        )
        _, residuo_killing = geo.eh_killing(triplo.X)
        return RelatorioQE(
            residuo=residuo,
            lambda_ajustado=lam_ajustado,
            residuo_killing=residuo_killing,
            norma_x=float(np.sqrt(triplo.norma_x_quadrada)),
            bakry_emery=tensor,
            escalar=geo.escalar,
            positividade=triplo.positividade,
            trivial=triplo.eh_trivial(),
        )
